//! Registry contents, exchange partners, displayed accessories and report plumbing.

mod common;

use common::sym;
use qheun::algebra::vars::{F1, G, G1, Z};
use qheun::algebra::{Family, RatFn, Var};
use qheun::error::Error;
use qheun::normalform::registry::{catalog, derive, find, registry, run_heun, select, Body, ClaimSet};
use qheun::normalform::Status;
use qheun::qdiff::proj_equal;
use qheun::runner::{emit_report, parse_report, run_case, run_suite, Format, RunConfig};

#[test]
fn case_counts_and_order() {
    let ids: Vec<&str> = registry().iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids.len(), 44);
    assert_eq!(select("D5:*").len(), 12);
    assert_eq!(select("E6:*").len(), 14);
    assert_eq!(select("E7:*").len(), 16);
    assert_eq!(select("E8:*").len(), 2);
    assert_eq!(ids[0], "D5:P1");
    assert_eq!(ids[43], "E8:thm32");
    for i in 1..=8 {
        assert!(find(&format!("D5:P{i}")).is_ok());
    }
    for id in ["D5:f=k1/nu7", "D5:f=k1/nu8", "D5:f=nu3", "D5:f=nu4", "E6:f=nu2", "E7:f=k1/nu6"] {
        assert!(find(id).is_ok(), "{id}");
    }
    assert!(matches!(find("nope"), Err(Error::UnknownCase(_))));
}

#[test]
fn catalog_has_one_record_per_case() {
    let cat = catalog(ClaimSet::Literal);
    let lines: Vec<&str> = cat.lines().collect();
    assert_eq!(lines.len(), registry().len());
    for (line, case) in lines.iter().zip(registry()) {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[0], case.id);
    }
    assert!(lines[4].contains("chart f-direction at (0, m5^2*k2^-2)"), "{}", lines[4]);
}

#[test]
fn exchange_partners_are_swapped_detailed_cases() {
    let mut pairs = 0;
    for (n, case) in registry().iter().enumerate() {
        let Body::Heun(h) = &case.body else { continue };
        let Some(of) = &h.partner_of else { continue };
        let Body::Heun(d) = &find(of).unwrap().body else { panic!("{of} is not a Heun case") };
        let s = sym(case.family, 500 + n as u64);
        let t = s.swapped(&h.swap);
        let (pe, _) = derive(h, &s).unwrap();
        let (de, _) = derive(d, &t).unwrap();
        assert!(proj_equal(&pe, &de).unwrap(), "{} vs {}", case.id, of);
        let (pv, _) = run_heun(h, &s, ClaimSet::Corrected);
        let (dv, _) = run_heun(d, &t, ClaimSet::Corrected);
        assert_eq!(pv.status, Status::Ok, "{}", case.id);
        assert!(pv.accessory.unwrap().eq_val(&dv.accessory.unwrap()), "{}", case.id);
        pairs += 1;
    }
    assert!(pairs >= 20, "{pairs}");
}

fn free_degree(r: &RatFn, v: Var) -> u32 {
    let (n, _) = r.reduced_pair();
    n.degree(v).unwrap_or(0)
}

#[test]
fn d5_p5_accessory_carries_g1() {
    let Body::Heun(h) = &find("D5:P5").unwrap().body else { unreachable!() };
    let s = sym(Family::D5, 7);
    let (v, _) = run_heun(h, &s, ClaimSet::Corrected);
    assert_eq!(v.status, Status::Ok);
    let e = v.accessory.unwrap();
    assert!(e.contains_var(G1) && !e.contains_var(Z));
    assert_eq!(free_degree(&e, G1), 1);
}

#[test]
fn accessories_are_free_of_z() {
    let cfg = RunConfig { claims: ClaimSet::Corrected, seeds: 1, timing: false, ..RunConfig::default() };
    for case in registry() {
        let Body::Heun(h) = &case.body else { continue };
        let r = run_case(&case.id, &cfg).unwrap();
        assert_eq!(r.status, Status::Ok, "{}", case.id);
        let s = sym(case.family, 9);
        let (v, _) = run_heun(h, &s, ClaimSet::Corrected);
        let e = v.accessory.unwrap();
        assert!(!e.contains_var(Z), "{}", case.id);
        let free = h.entry.free();
        assert!(free == F1 || free == G1 || free == G);
        assert!(e.contains_var(free), "{}: E should move with {}", case.id, free);
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let cfg = RunConfig { cases: "D5:*".into(), timing: false, ..RunConfig::default() };
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    let ja = emit_report(&a, Format::Json);
    assert_eq!(ja, emit_report(&b, Format::Json));
    assert_eq!(emit_report(&parse_report(&ja).unwrap(), Format::Json), ja);
    let ids: Vec<&str> = a.cases.iter().map(|c| c.id.as_str()).collect();
    let want: Vec<&str> = select("D5:*").iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, want);
    let md = emit_report(&a, Format::Markdown);
    let rows: Vec<&str> = md.lines().filter(|l| l.starts_with("| D5:")).collect();
    assert_eq!(rows.len(), 12);
    for (row, id) in rows.iter().zip(&want) {
        assert!(row.starts_with(&format!("| {id} |")));
    }
    assert_eq!(a.suite.total, 12);
    assert_eq!(a.suite.ok + a.suite.failed, 12);
    assert_eq!(a.exit_code() == 0, a.cases.iter().all(|c| c.status == Status::Ok));
}

#[test]
fn seed_changes_bindings_not_verdicts() {
    let base = RunConfig { cases: "E6:P?".into(), claims: ClaimSet::Corrected, timing: false, seeds: 1, ..RunConfig::default() };
    let a = run_suite(&base).unwrap();
    let b = run_suite(&RunConfig { seed: 2, ..base }).unwrap();
    assert!(a.all_ok() && b.all_ok());
    assert_ne!(a.cases[0].accessory, b.cases[0].accessory);
}

#[test]
fn unknown_and_empty() {
    assert!(matches!(run_case("nope", &RunConfig::default()), Err(Error::UnknownCase(_))));
    let r = run_suite(&RunConfig { cases: "Q9:*".into(), ..RunConfig::default() }).unwrap();
    assert_eq!(r.suite.total, 0);
    assert_eq!(r.exit_code(), 0);
    let json = emit_report(&r, Format::Json);
    assert!(json.contains("\"cases\": []"));
}

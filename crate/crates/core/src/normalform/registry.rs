//! The case registry: every blow-up and f-substitution pipeline with its claimed correspondence.

use super::{verify_correspondence, DisplayCheck, Kind, Verification};
use crate::algebra::vars::{F1, G, G1, Z};
use crate::algebra::{q, Family, PMono, RatFn, Sym, Var};
use crate::blowup::{restrict_to_exceptional, BlowupChart, Center, Direction};
use crate::error::{Error, Result};
use crate::lax;
use crate::qdiff::{clear_and_primitive, gauge_pochhammer, gauge_power, gauge_rational, ThreeTermEq};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Which set of claimed parameters and displays to check against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimSet {
    /// As printed.
    #[default]
    Literal,
    /// With the known misprints repaired.
    Corrected,
}

#[derive(Clone, Debug)]
pub enum CenterSpec {
    At(PMono),
    Infinity,
}

/// How (f, g) enters L1.
#[derive(Clone, Debug)]
pub enum Entry {
    Chart { f0: CenterSpec, g0: CenterSpec, dir: Direction },
    SubstF(PMono),
}

#[derive(Clone, Debug)]
pub enum Gauge {
    /// y = r(z) u with r = sum c_k z^k.
    Rat(Vec<(PMono, u32)>),
    Poch(PMono),
    Pow(PMono),
    /// Power gauge whose multiplier is read off the leading coefficients; the PMono is the expected value.
    PowWitness(PMono),
    Clear,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub h: Vec<PMono>,
    pub l: Vec<PMono>,
}

pub type DisplayFn = fn(&Sym) -> RatFn;

#[derive(Clone, Debug)]
pub struct Display {
    pub check: DisplayCheck,
    pub literal: DisplayFn,
    pub corrected: Option<DisplayFn>,
}

#[derive(Clone, Debug)]
pub struct HeunCase {
    pub kind: Kind,
    pub entry: Entry,
    pub gauges: Vec<Gauge>,
    pub literal: Claim,
    pub corrected: Option<Claim>,
    pub display: Option<Display>,
    /// Root exchanges relative to the detailed case (empty for a detailed case).
    pub swap: Vec<(usize, usize)>,
    pub partner_of: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Body {
    Heun(HeunCase),
    Theorem31,
    Theorem32,
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: String,
    pub family: Family,
    pub provenance: String,
    pub body: Body,
}

fn swap_mono(m: &PMono, sw: &[(usize, usize)]) -> PMono {
    m.swapped(sw)
}

fn swap_center(c: &CenterSpec, sw: &[(usize, usize)]) -> CenterSpec {
    match c {
        CenterSpec::At(m) => CenterSpec::At(swap_mono(m, sw)),
        CenterSpec::Infinity => CenterSpec::Infinity,
    }
}

impl Claim {
    fn swapped(&self, sw: &[(usize, usize)]) -> Claim {
        Claim {
            h: self.h.iter().map(|m| swap_mono(m, sw)).collect(),
            l: self.l.iter().map(|m| swap_mono(m, sw)).collect(),
        }
    }
}

impl Entry {
    fn swapped(&self, sw: &[(usize, usize)]) -> Entry {
        match self {
            Entry::Chart { f0, g0, dir } => Entry::Chart { f0: swap_center(f0, sw), g0: swap_center(g0, sw), dir: *dir },
            Entry::SubstF(m) => Entry::SubstF(swap_mono(m, sw)),
        }
    }

    /// The coordinate left free on the exceptional line (g for a substitution).
    pub fn free(&self) -> Var {
        match self {
            Entry::Chart { dir: Direction::F, .. } => G1,
            Entry::Chart { dir: Direction::G, .. } => F1,
            Entry::SubstF(_) => G,
        }
    }
}

impl Gauge {
    fn swapped(&self, sw: &[(usize, usize)]) -> Gauge {
        match self {
            Gauge::Rat(cs) => Gauge::Rat(cs.iter().map(|(m, k)| (swap_mono(m, sw), *k)).collect()),
            Gauge::Poch(m) => Gauge::Poch(swap_mono(m, sw)),
            Gauge::Pow(m) => Gauge::Pow(swap_mono(m, sw)),
            Gauge::PowWitness(m) => Gauge::PowWitness(swap_mono(m, sw)),
            Gauge::Clear => Gauge::Clear,
        }
    }
}

impl HeunCase {
    /// The exchange partner: every parameter in the pipeline and claims swapped.
    pub fn partner(&self, of: &str, sw: &[(usize, usize)]) -> HeunCase {
        HeunCase {
            kind: self.kind,
            entry: self.entry.swapped(sw),
            gauges: self.gauges.iter().map(|g| g.swapped(sw)).collect(),
            literal: self.literal.swapped(sw),
            corrected: self.corrected.as_ref().map(|c| c.swapped(sw)),
            display: self.display.clone(),
            swap: sw.to_vec(),
            partner_of: Some(of.to_string()),
        }
    }

    /// Fully symbolic parameters, eliminating the root the exchange moved m8 to.
    pub fn symbolic_sym(&self, family: Family) -> Sym {
        let slot = self.swap.iter().fold(8, |i, &(a, b)| if i == a { b } else if i == b { a } else { i });
        Sym::symbolic_eliminating(family, slot - 1)
    }

    pub fn claim(&self, set: ClaimSet) -> &Claim {
        match set {
            ClaimSet::Corrected => self.corrected.as_ref().unwrap_or(&self.literal),
            ClaimSet::Literal => &self.literal,
        }
    }

    /// The displayed E for this case, with the partner's exchange applied.
    pub fn display_value(&self, set: ClaimSet, s: &Sym) -> Option<(DisplayCheck, RatFn)> {
        let d = self.display.as_ref()?;
        let f = match set {
            ClaimSet::Corrected => d.corrected.unwrap_or(d.literal),
            ClaimSet::Literal => d.literal,
        };
        Some((d.check, f(&s.swapped(&self.swap))))
    }

    pub fn has_errata(&self) -> bool {
        self.corrected.is_some() || self.display.as_ref().is_some_and(|d| d.corrected.is_some())
    }
}

fn center(c: &CenterSpec, s: &Sym) -> Center {
    match c {
        CenterSpec::At(m) => Center::At(m.eval(s)),
        CenterSpec::Infinity => Center::Infinity,
    }
}

fn zpoly(cs: &[(PMono, u32)], s: &Sym) -> Result<RatFn> {
    let z = RatFn::var(Z);
    let mut acc = RatFn::zero();
    for (m, k) in cs {
        acc = &acc + &(&m.eval(s) * &z.pow(*k as i32)?);
    }
    Ok(acc)
}

fn z_leading(r: &RatFn) -> Result<RatFn> {
    let cs = super::coeffs_in(r, Z)?;
    cs.into_iter().rev().find(|c| !c.is_zero()).ok_or(Error::ZeroEquation)
}

/// Family-specific names of the eleven square-root level symbols.
pub fn root_names(family: Family) -> [String; 11] {
    std::array::from_fn(|i| family.root_vars()[i].name())
}

fn render_poly(cs: &[(PMono, u32)], names: &[String; 11]) -> String {
    let parts: Vec<String> = cs
        .iter()
        .map(|(m, k)| match k {
            0 => m.render(names),
            1 => format!("{}*z", m.render(names)),
            _ => format!("{}*z^{}", m.render(names), k),
        })
        .collect();
    parts.join(" + ")
}

/// Runs the pipeline; returns the cleared, primitive equation and the gauge steps taken.
pub fn derive(case: &HeunCase, s: &Sym) -> Result<(ThreeTermEq, Vec<String>)> {
    let names = root_names(s.family);
    let mut witness = Vec::new();
    let mut e = match &case.entry {
        Entry::Chart { f0, g0, dir } => {
            let chart = BlowupChart::new(center(f0, s), center(g0, s), *dir);
            let (f, g) = chart.coords();
            let e = lax::l1_triple(s, &f, &g)?;
            restrict_to_exceptional(&e, chart.exceptional())?
        }
        Entry::SubstF(v) => lax::l1_triple(s, &v.eval(s), &RatFn::var(G))?,
    };
    let qv = s.q();
    for g in &case.gauges {
        match g {
            Gauge::Rat(cs) => {
                e = gauge_rational(&e, &zpoly(cs, s)?, &qv)?;
                witness.push(format!("rational {}", render_poly(cs, &names)));
            }
            Gauge::Poch(a) => {
                e = gauge_pochhammer(&e, &a.eval(s), &qv)?;
                witness.push(format!("pochhammer alpha = {}", a.render(&names)));
            }
            Gauge::Pow(m) => {
                e = gauge_power(&e, &m.eval(s))?;
                witness.push(format!("power Q = {}", m.render(&names)));
            }
            Gauge::PowWitness(expected) => {
                e = clear_and_primitive(&e)?;
                let (lm, l0, lp) = (z_leading(&e.a_minus)?, z_leading(&e.a_zero)?, z_leading(&e.a_plus)?);
                let p = s.p();
                let pp = &p + &RatFn::one().div_ref(&p)?;
                let qm = (-&l0).div_ref(&(&lm * &pp))?.reduce();
                if !(&qm * &qm).eq_val(&lp.div_ref(&lm)?) {
                    return Err(Error::ShapeMismatch("no power gauge balances the leading coefficients".into()));
                }
                let tag = if qm.eq_val(&expected.eval(s)) { "=" } else { "differs from" };
                witness.push(format!("power Q = {} (witness, {} {})", qm, tag, expected.render(&names)));
                e = gauge_power(&e, &qm)?;
            }
            Gauge::Clear => {
                e = clear_and_primitive(&e)?;
                witness.push("clear".into());
            }
        }
    }
    Ok((clear_and_primitive(&e)?, witness))
}

/// Pipeline plus verification of one Heun-type case.
pub fn run_heun(case: &HeunCase, s: &Sym, set: ClaimSet) -> (Verification, Vec<String>) {
    let (derived, witness) = match derive(case, s) {
        Ok(d) => d,
        Err(e) => return (Verification::failed(super::Status::from_error(&e), e.to_string()), Vec::new()),
    };
    let claim = case.claim(set);
    let shown = case.display_value(set, s);
    let v = verify_correspondence(&derived, case.kind, &claim.h, &claim.l, Some(case.entry.free()), shown, s);
    (v, witness)
}

// ---------------------------------------------------------------------------
// parameter shorthands

fn nu(i: usize) -> PMono {
    PMono::nu(i)
}

fn ka(j: usize) -> PMono {
    PMono::ka(j)
}

/// p^e * prod(num) / prod(den).
fn pm(e: i32, num: &[PMono], den: &[PMono]) -> PMono {
    let mut acc = PMono::p().pow(e).expect("p is a monomial");
    for m in num {
        acc = &acc * m;
    }
    for m in den {
        acc = &acc / m;
    }
    acc
}

fn neg(m: PMono) -> PMono {
    m.scale(q(-1))
}

fn zero() -> PMono {
    PMono::constant(q(0))
}

fn at(m: PMono) -> CenterSpec {
    CenterSpec::At(m)
}

fn chart(f0: CenterSpec, g0: CenterSpec, dir: Direction) -> Entry {
    Entry::Chart { f0, g0, dir }
}

fn claim(h: Vec<PMono>, l: Vec<PMono>) -> Claim {
    Claim { h, l }
}

fn exact(f: DisplayFn) -> Option<Display> {
    Some(Display { check: DisplayCheck::Exact, literal: f, corrected: None })
}

// display evaluation shorthands
fn n(s: &Sym, i: usize) -> RatFn {
    s.nu(i)
}
fn k1(s: &Sym) -> RatFn {
    s.ka(1)
}
fn k2(s: &Sym) -> RatFn {
    s.ka(2)
}
fn c(v: i64) -> RatFn {
    RatFn::int(v)
}
fn v(x: Var) -> RatFn {
    RatFn::var(x)
}
fn inv(r: RatFn) -> RatFn {
    c(1) / r
}
fn n4(s: &Sym) -> RatFn {
    n(s, 1) * n(s, 2) * n(s, 3) * n(s, 4)
}

fn d5_p5_e(s: &Sym) -> RatFn {
    let qv = s.q();
    &qv * v(G1) * n(s, 3) * n(s, 4) * (c(1) - n(s, 6) / n(s, 5)) - &qv * n(s, 5) * (n(s, 3) + n(s, 4)) / k2(s)
        - k1(s) * k2(s) * (n(s, 7) + n(s, 8)) / (n(s, 1) * n(s, 2) * n(s, 5) * n(s, 7) * n(s, 8))
}

fn d5_p7_e(s: &Sym) -> RatFn {
    let qv = s.q();
    &qv * v(F1) / (n(s, 1) * n(s, 2)) * (c(1) - n(s, 7) / n(s, 8))
        - k1(s) * &qv / n(s, 7) * (inv(n(s, 1)) + inv(n(s, 2)))
        - &qv * &qv * n(s, 3) * n(s, 4) * n(s, 7) * (n(s, 5) + n(s, 6)) / (k1(s) * k2(s))
}

fn d5_p1_e(s: &Sym) -> RatFn {
    let qv = s.q();
    v(G1) * &qv * (c(1) - n(s, 1) / n(s, 2))
        - &qv / n(s, 1) * (n(s, 3) + n(s, 4))
        - k1(s) * &qv / n(s, 2) * (inv(n(s, 7)) + inv(n(s, 8)))
}

fn d5_p3_e(s: &Sym) -> RatFn {
    let qv = s.q();
    &qv * &qv
        * (v(F1) * (c(1) - n(s, 4) / n(s, 3))
            - n(s, 3) * (inv(n(s, 1)) + inv(n(s, 2)))
            - n(s, 4) / k2(s) * (n(s, 5) + n(s, 6)))
}

fn d5_f_k1nu7_e(s: &Sym) -> RatFn {
    let qv = s.q();
    &qv * (n(s, 3) * n(s, 7) - k1(s)) * (n(s, 4) * n(s, 7) - k1(s)) / (n(s, 7) * k1(s)) * v(G)
        - k1(s) * &qv / n(s, 7) * (inv(n(s, 1)) + inv(n(s, 2)))
        - &qv * n(s, 3) * n(s, 4) * n(s, 7) * (n(s, 5) + n(s, 6)) / (k1(s) * k2(s))
}

fn d5_f_nu3_tail(s: &Sym) -> RatFn {
    let qv = s.q();
    n(s, 3) / n(s, 1) + n(s, 3) / n(s, 2) + &qv * n(s, 4) * n(s, 5) / k2(s) + &qv * n(s, 4) * n(s, 6) / k2(s)
}

fn d5_f_nu3_e(s: &Sym) -> RatFn {
    let pole = (n(s, 3) * n(s, 7) - k1(s)) * (n(s, 4) * n(s, 7) - k1(s))
        / (n(s, 1) * n(s, 2) * n(s, 3) * n(s, 7) * n(s, 7))
        / v(G);
    -(pole + d5_f_nu3_tail(s))
}

fn d5_f_nu3_e_fixed(s: &Sym) -> RatFn {
    let pole = (n(s, 3) * n(s, 7) - k1(s)) * (n(s, 3) * n(s, 8) - k1(s))
        / (n(s, 1) * n(s, 2) * n(s, 3) * n(s, 7) * n(s, 8))
        / v(G);
    pole - d5_f_nu3_tail(s)
}

fn e6_p5_e(s: &Sym) -> RatFn {
    let p = s.p();
    let p3 = &p * &p * &p;
    let qv = s.q();
    let sum_inv = (1..=4).fold(c(0), |a, i| a + inv(n(s, i)));
    p3 * (n4(s) * (n(s, 6) / n(s, 5) - c(1)) * (inv(v(F1)) + n(s, 5) * n(s, 5) / (k2(s) * k2(s)))
        + n4(s) * n(s, 5) / k2(s) * sum_inv
        + k2(s) / (&qv * n(s, 5)) * (k1(s) / n(s, 7) + k1(s) / n(s, 8)))
}

fn e6_p7_e(s: &Sym) -> RatFn {
    s.p()
        * ((v(F1) + k1(s) * k1(s) / (n(s, 7) * n(s, 7))) * (n(s, 7) / n(s, 8) - c(1))
            + k1(s) / n(s, 7) * (n(s, 1) + n(s, 2) + n(s, 3) + n(s, 4))
            + k1(s) / n(s, 8) * (k2(s) / n(s, 5) + k2(s) / n(s, 6)))
}

fn e6_p1_e(s: &Sym) -> RatFn {
    let p = s.p();
    let p3 = &p * &p * &p;
    let n1 = n(s, 1);
    p3 * (&n1 * (n(s, 2) - &n1) * (n(s, 3) - &n1) * (n(s, 4) - &n1) / (v(F1) + &n1 * &n1)
        + &n1 * (k1(s) / n(s, 7) + k1(s) / n(s, 8))
        + n(s, 2)
            * n(s, 3)
            * n(s, 4)
            * (-inv(n1.clone()) + inv(n(s, 2)) + inv(n(s, 3)) + inv(n(s, 4)) + n(s, 5) / k2(s) + n(s, 6) / k2(s)))
}

fn e7_k2_71(s: &Sym) -> RatFn {
    let n1 = n(s, 1);
    k1(s) * &n1 * ((-n1.clone() + n(s, 2) + n(s, 3) + n(s, 4)) / k2(s) + (5..=8).fold(c(0), |a, i| a + inv(n(s, i))))
        + n(s, 2)
            * n(s, 3)
            * n(s, 4)
            * (-inv(n1.clone())
                + inv(n(s, 2))
                + inv(n(s, 3))
                + inv(n(s, 4))
                + (n(s, 5) + n(s, 6) + n(s, 7) + n(s, 8)) / k2(s))
}

fn e7_p1_e(s: &Sym) -> RatFn {
    let p = s.p();
    let p3 = &p * &p * &p;
    let n1 = n(s, 1);
    let k1v = &n1 * (k1(s) - k2(s)) * (&n1 - n(s, 2)) * (&n1 - n(s, 3)) * (&n1 - n(s, 4));
    -(p3 * (k1v / (k2(s) * (v(F1) + &n1 * &n1)) + e7_k2_71(s)))
}

fn e7_p5_e(s: &Sym) -> RatFn {
    let qv = s.q();
    let n5 = n(s, 5);
    let k1v = &qv * n4(s) * (k1(s) - k2(s)) * (&n5 - n(s, 6)) * (&n5 - n(s, 7)) * (&n5 - n(s, 8));
    let k2v = k1(s) * k2(s) / &n5
        * ((n(s, 1) + n(s, 2) + n(s, 3) + n(s, 4)) / k2(s) - inv(n5.clone()) + inv(n(s, 6)) + inv(n(s, 7)) + inv(n(s, 8)))
        + &qv * n4(s) * &n5 / k2(s)
            * ((1..=4).fold(c(0), |a, i| a + inv(n(s, i))) + (-n5.clone() + n(s, 6) + n(s, 7) + n(s, 8)) / k2(s));
    -(s.p() * (k1v / (k2(s) * &n5 * (v(F1) * &n5 * &n5 + k1(s) * k2(s))) + k2v))
}

fn e7_f_nu1_e(s: &Sym) -> RatFn {
    let n1 = n(s, 1);
    let prod = (5..=8).fold(c(1), |a, i| a * (&n1 - k1(s) / n(s, i)));
    -(s.p() * prod * (k1(s) - k2(s)) / (&n1 * &n1 * (v(G) * &n1 * k2(s) - k1(s))))
}

fn e7_f_k1nu5_common(s: &Sym, prod: RatFn) -> RatFn {
    let p = s.p();
    let p3 = &p * &p * &p;
    -(p3 * (k1(s) - k2(s)) * prod / (k1(s) * k1(s) * k2(s) * n(s, 5) * (n(s, 5) - k1(s) * v(G))))
}

fn e7_f_k1nu5_e(s: &Sym) -> RatFn {
    let prod = (5..=8).fold(c(1), |a, i| a * (k1(s) - n(s, 1) * n(s, i)));
    e7_f_k1nu5_common(s, prod)
}

fn e7_f_k1nu5_e_fixed(s: &Sym) -> RatFn {
    let prod = (1..=4).fold(c(1), |a, i| a * (k1(s) - n(s, i) * n(s, 5)));
    e7_f_k1nu5_common(s, prod)
}

// ---------------------------------------------------------------------------

fn heun(id: &str, family: Family, provenance: &str, case: HeunCase) -> CaseSpec {
    CaseSpec { id: id.into(), family, provenance: provenance.into(), body: Body::Heun(case) }
}

fn partner(base: &CaseSpec, id: &str, provenance: &str, sw: &[(usize, usize)]) -> CaseSpec {
    let Body::Heun(h) = &base.body else { unreachable!("partners are Heun cases") };
    heun(id, base.family, provenance, h.partner(&base.id, sw))
}

fn detailed(
    kind: Kind,
    entry: Entry,
    gauges: Vec<Gauge>,
    literal: Claim,
    corrected: Option<Claim>,
    display: Option<Display>,
) -> HeunCase {
    HeunCase { kind, entry, gauges, literal, corrected, display, swap: Vec::new(), partner_of: None }
}

fn d5_cases() -> Vec<CaseSpec> {
    use Direction::{F as DF, G as DG};
    let fam = Family::D5;
    let kind = Kind::QHeun2;
    let h_std = || vec![pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(0, &[nu(6)], &[nu(5)])];
    let p5 = heun(
        "D5:P5",
        fam,
        "D5 blow-up at P5 = (0, nu5/kappa2), f-direction chart",
        detailed(
            kind,
            chart(at(zero()), at(pm(0, &[nu(5)], &[ka(2)])), DF),
            vec![],
            claim(
                vec![pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(2, &[nu(6)], &[nu(5)])],
                vec![pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(0, &[], &[nu(1)]), pm(0, &[], &[nu(2)])],
            ),
            Some(claim(
                vec![pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(2, &[nu(5)], &[nu(6)])],
                vec![pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(0, &[], &[nu(1)]), pm(0, &[], &[nu(2)])],
            )),
            exact(d5_p5_e),
        ),
    );
    let p7 = heun(
        "D5:P7",
        fam,
        "D5 blow-up at P7 = (kappa1/nu7, 0), g-direction chart, gauge by (nu7 z - kappa1)",
        detailed(
            kind,
            chart(at(pm(0, &[ka(1)], &[nu(7)])), at(zero()), DG),
            vec![Gauge::Rat(vec![(nu(7), 1), (neg(ka(1)), 0)])],
            claim(
                h_std(),
                vec![pm(-1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(2, &[], &[nu(1)]), pm(2, &[], &[nu(2)])],
            ),
            None,
            exact(d5_p7_e),
        ),
    );
    let p1 = heun(
        "D5:P1",
        fam,
        "D5 blow-up at P1 = (inf, 1/nu1) after inverting f",
        detailed(
            kind,
            chart(CenterSpec::Infinity, at(pm(0, &[], &[nu(1)])), DF),
            vec![],
            claim(
                h_std(),
                vec![pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(0, &[], &[nu(1)]), pm(2, &[], &[nu(2)])],
            ),
            None,
            exact(d5_p1_e),
        ),
    );
    let p3 = heun(
        "D5:P3",
        fam,
        "D5 blow-up at P3 = (nu3, inf) after inverting g, gauge by (z - q nu3)",
        detailed(
            kind,
            chart(at(nu(3)), CenterSpec::Infinity, DG),
            vec![Gauge::Rat(vec![(PMono::one(), 1), (neg(pm(2, &[nu(3)], &[])), 0)])],
            claim(
                vec![pm(3, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(0, &[nu(6)], &[nu(5)])],
                vec![pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(2, &[], &[nu(1)]), pm(2, &[], &[nu(2)])],
            ),
            None,
            exact(d5_p3_e),
        ),
    );
    let fk7 = heun(
        "D5:f=k1/nu7",
        fam,
        "D5 substitution f = kappa1/nu7",
        detailed(
            kind,
            Entry::SubstF(pm(0, &[ka(1)], &[nu(7)])),
            vec![],
            claim(
                h_std(),
                vec![pm(3, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(0, &[], &[nu(1)]), pm(0, &[], &[nu(2)])],
            ),
            None,
            exact(d5_f_k1nu7_e),
        ),
    );
    let fn3 = heun(
        "D5:f=nu3",
        fam,
        "D5 substitution f = nu3",
        detailed(
            kind,
            Entry::SubstF(nu(3)),
            vec![],
            claim(
                vec![pm(-1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(0, &[nu(6)], &[nu(5)])],
                vec![pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)]), pm(0, &[], &[nu(1)]), pm(0, &[], &[nu(2)])],
            ),
            None,
            Some(Display { check: DisplayCheck::Exact, literal: d5_f_nu3_e, corrected: Some(d5_f_nu3_e_fixed) }),
        ),
    );
    vec![
        p1.clone(),
        partner(&p1, "D5:P2", "D5 blow-up at P2, exchange nu1 <-> nu2 of P1", &[(1, 2)]),
        p3.clone(),
        partner(&p3, "D5:P4", "D5 blow-up at P4, exchange nu3 <-> nu4 of P3", &[(3, 4)]),
        p5.clone(),
        partner(&p5, "D5:P6", "D5 blow-up at P6, exchange nu5 <-> nu6 of P5", &[(5, 6)]),
        p7.clone(),
        partner(&p7, "D5:P8", "D5 blow-up at P8, exchange nu7 <-> nu8 of P7", &[(7, 8)]),
        fk7.clone(),
        partner(&fk7, "D5:f=k1/nu8", "D5 substitution f = kappa1/nu8, exchange nu7 <-> nu8", &[(7, 8)]),
        fn3.clone(),
        partner(&fn3, "D5:f=nu4", "D5 substitution f = nu4, exchange nu3 <-> nu4", &[(3, 4)]),
    ]
}

fn e6_cases() -> Vec<CaseSpec> {
    use Direction::G as DG;
    let fam = Family::E6;
    let kind = Kind::Variant3;
    let h234 = |last: PMono| vec![pm(1, &[nu(2)], &[]), pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), last];
    let poch_q = || Gauge::Poch(pm(-2, &[], &[nu(1)]));
    let p5 = heun(
        "E6:P5",
        fam,
        "E6 blow-up at P5 = (0, nu5/kappa2), Pochhammer and power gauges",
        detailed(
            kind,
            chart(at(zero()), at(pm(0, &[nu(5)], &[ka(2)])), DG),
            vec![poch_q(), Gauge::Pow(pm(1, &[], &[nu(1)]))],
            claim(
                h234(pm(2, &[nu(5)], &[nu(6)])),
                vec![pm(1, &[nu(1)], &[]), pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])],
            ),
            None,
            exact(e6_p5_e),
        ),
    );
    let l7 = || vec![pm(1, &[nu(1)], &[]), pm(-1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])];
    let p7 = heun(
        "E6:P7",
        fam,
        "E6 blow-up at P7 = (kappa1/nu7, 0), rational, Pochhammer and power gauges",
        detailed(
            kind,
            chart(at(pm(0, &[ka(1)], &[nu(7)])), at(zero()), DG),
            vec![
                Gauge::Rat(vec![(PMono::one(), 1), (neg(pm(0, &[ka(1)], &[nu(7)])), 0)]),
                poch_q(),
                Gauge::Pow(pm(3, &[], &[nu(1)])),
            ],
            claim(
                vec![pm(1, &[nu(1)], &[]), pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[]), pm(0, &[nu(5)], &[nu(6)])],
                l7(),
            ),
            Some(claim(h234(pm(0, &[nu(5)], &[nu(6)])), l7())),
            exact(e6_p7_e),
        ),
    );
    let p1 = heun(
        "E6:P1",
        fam,
        "E6 blow-up at P1 = (nu1, 1/nu1), Pochhammer and power gauges",
        detailed(
            kind,
            chart(at(nu(1)), at(pm(0, &[], &[nu(1)])), DG),
            vec![Gauge::Clear, poch_q(), Gauge::Pow(pm(1, &[], &[nu(1)]))],
            claim(
                h234(pm(0, &[nu(5)], &[nu(6)])),
                vec![pm(3, &[nu(1)], &[]), pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])],
            ),
            None,
            exact(e6_p1_e),
        ),
    );
    let fk7 = heun(
        "E6:f=k1/nu7",
        fam,
        "E6 substitution f = kappa1/nu7, power gauge found from leading coefficients",
        detailed(
            kind,
            Entry::SubstF(pm(0, &[ka(1)], &[nu(7)])),
            vec![Gauge::Clear, poch_q(), Gauge::PowWitness(pm(1, &[], &[nu(1)]))],
            claim(
                h234(pm(0, &[nu(5)], &[nu(6)])),
                vec![pm(1, &[nu(1)], &[]), pm(3, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])],
            ),
            None,
            None,
        ),
    );
    let fn1 = heun(
        "E6:f=nu1",
        fam,
        "E6 substitution f = nu1, power gauge found from leading coefficients",
        detailed(
            kind,
            Entry::SubstF(nu(1)),
            vec![Gauge::Clear, Gauge::Poch(pm(0, &[], &[nu(1)])), Gauge::PowWitness(pm(3, &[], &[nu(1)]))],
            claim(
                h234(pm(0, &[nu(5)], &[nu(6)])),
                vec![pm(-1, &[nu(1)], &[]), pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])],
            ),
            None,
            None,
        ),
    );
    let mut out = vec![p1.clone()];
    for i in 2..=4 {
        out.push(partner(
            &p1,
            &format!("E6:P{}", i),
            &format!("E6 blow-up at P{}, exchange nu1 <-> nu{} of P1", i, i),
            &[(1, i)],
        ));
    }
    out.push(p5.clone());
    out.push(partner(&p5, "E6:P6", "E6 blow-up at P6, exchange nu5 <-> nu6 of P5", &[(5, 6)]));
    out.push(p7.clone());
    out.push(partner(&p7, "E6:P8", "E6 blow-up at P8, exchange nu7 <-> nu8 of P7", &[(7, 8)]));
    out.push(fk7.clone());
    out.push(partner(&fk7, "E6:f=k1/nu8", "E6 substitution f = kappa1/nu8, exchange nu7 <-> nu8", &[(7, 8)]));
    out.push(fn1.clone());
    for i in 2..=4 {
        out.push(partner(
            &fn1,
            &format!("E6:f=nu{}", i),
            &format!("E6 substitution f = nu{}, exchange nu1 <-> nu{}", i, i),
            &[(1, i)],
        ));
    }
    out
}

fn e7_cases() -> Vec<CaseSpec> {
    use Direction::G as DG;
    let fam = Family::E7;
    let kind = Kind::Variant4;
    let l_std = |first: PMono| vec![first, pm(1, &[ka(1)], &[nu(6)]), pm(1, &[ka(1)], &[nu(7)]), pm(1, &[ka(1)], &[nu(8)])];
    let h_std = |first: PMono| vec![first, pm(1, &[nu(2)], &[]), pm(1, &[nu(3)], &[]), pm(1, &[nu(4)], &[])];
    let pow3 = || Gauge::Pow(pm(3, &[ka(2)], &[ka(1)]));
    let pow1 = || Gauge::Pow(pm(1, &[ka(2)], &[ka(1)]));
    let p1 = heun(
        "E7:P1",
        fam,
        "E7 blow-up at P1 = (nu1, 1/nu1), power and rational gauges",
        detailed(
            kind,
            chart(at(nu(1)), at(pm(0, &[], &[nu(1)])), DG),
            vec![pow3(), Gauge::Rat(vec![(pm(2, &[nu(1)], &[]), 0), (neg(PMono::one()), 1)])],
            claim(h_std(pm(3, &[nu(1)], &[])), l_std(pm(1, &[ka(1)], &[nu(5)]))),
            None,
            exact(e7_p1_e),
        ),
    );
    let p5 = heun(
        "E7:P5",
        fam,
        "E7 blow-up at P5 = (kappa1/nu5, nu5/kappa2), power and rational gauges",
        detailed(
            kind,
            chart(at(pm(0, &[ka(1)], &[nu(5)])), at(pm(0, &[nu(5)], &[ka(2)])), DG),
            vec![pow3(), Gauge::Rat(vec![(ka(1), 0), (neg(nu(5)), 1)])],
            claim(h_std(pm(1, &[nu(1)], &[])), l_std(pm(-1, &[ka(1)], &[nu(5)]))),
            None,
            exact(e7_p5_e),
        ),
    );
    let fn1 = heun(
        "E7:f=nu1",
        fam,
        "E7 substitution f = nu1, power gauge; remainder K2 free of z and g",
        detailed(
            kind,
            Entry::SubstF(nu(1)),
            vec![pow1()],
            claim(h_std(pm(-1, &[nu(1)], &[])), l_std(pm(1, &[ka(1)], &[nu(5)]))),
            None,
            Some(Display { check: DisplayCheck::UpToConstant, literal: e7_f_nu1_e, corrected: None }),
        ),
    );
    let fk5 = heun(
        "E7:f=k1/nu5",
        fam,
        "E7 substitution f = kappa1/nu5, power gauge; remainder K2 free of z and g",
        detailed(
            kind,
            Entry::SubstF(pm(0, &[ka(1)], &[nu(5)])),
            vec![pow1()],
            claim(h_std(pm(1, &[nu(1)], &[])), l_std(pm(3, &[ka(1)], &[nu(5)]))),
            None,
            Some(Display {
                check: DisplayCheck::UpToConstant,
                literal: e7_f_k1nu5_e,
                corrected: Some(e7_f_k1nu5_e_fixed),
            }),
        ),
    );
    let mut out = vec![p1.clone()];
    for i in 2..=4 {
        out.push(partner(
            &p1,
            &format!("E7:P{}", i),
            &format!("E7 blow-up at P{}, exchange nu1 <-> nu{} of P1", i, i),
            &[(1, i)],
        ));
    }
    out.push(p5.clone());
    for i in 6..=8 {
        out.push(partner(
            &p5,
            &format!("E7:P{}", i),
            &format!("E7 blow-up at P{}, exchange nu5 <-> nu{} of P5", i, i),
            &[(5, i)],
        ));
    }
    out.push(fn1.clone());
    for i in 2..=4 {
        out.push(partner(
            &fn1,
            &format!("E7:f=nu{}", i),
            &format!("E7 substitution f = nu{}, exchange nu1 <-> nu{}", i, i),
            &[(1, i)],
        ));
    }
    out.push(fk5.clone());
    for i in 6..=8 {
        out.push(partner(
            &fk5,
            &format!("E7:f=k1/nu{}", i),
            &format!("E7 substitution f = kappa1/nu{}, exchange nu5 <-> nu{}", i, i),
            &[(5, i)],
        ));
    }
    out
}

fn e8_cases() -> Vec<CaseSpec> {
    vec![
        CaseSpec {
            id: "E8:thm31".into(),
            family: Family::E8,
            provenance: "E8 limit eps -> 0 of L1 at f = f(u1 + eps c1), g = g(u1 + eps c2)".into(),
            body: Body::Theorem31,
        },
        CaseSpec {
            id: "E8:thm32".into(),
            family: Family::E8,
            provenance: "E8 limit equation against the degenerate Ruijsenaars-van Diejen operator".into(),
            body: Body::Theorem32,
        },
    ]
}

/// All cases in report order.
pub fn registry() -> &'static [CaseSpec] {
    static REG: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v = d5_cases();
        v.extend(e6_cases());
        v.extend(e7_cases());
        v.extend(e8_cases());
        v
    })
}

pub fn find(id: &str) -> Result<&'static CaseSpec> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.into()))
}

/// Shell-style match with `*` and `?`.
pub fn glob_match(pat: &str, s: &str) -> bool {
    let (p, t): (Vec<char>, Vec<char>) = (pat.chars().collect(), s.chars().collect());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut star, mut mark) = (None, 0usize);
    while j < t.len() {
        if i < p.len() && (p[i] == '?' || p[i] == t[j]) {
            i += 1;
            j += 1;
        } else if i < p.len() && p[i] == '*' {
            star = Some(i);
            mark = j;
            i += 1;
        } else if let Some(si) = star {
            i = si + 1;
            mark += 1;
            j = mark;
        } else {
            return false;
        }
    }
    while i < p.len() && p[i] == '*' {
        i += 1;
    }
    i == p.len()
}

pub fn select(pat: &str) -> Vec<&'static CaseSpec> {
    registry().iter().filter(|c| glob_match(pat, &c.id)).collect()
}

fn render_entry(e: &Entry, names: &[String; 11]) -> String {
    let cs = |c: &CenterSpec| match c {
        CenterSpec::At(m) => m.render(names),
        CenterSpec::Infinity => "inf".into(),
    };
    match e {
        Entry::Chart { f0, g0, dir } => {
            let (d, r) = match dir {
                Direction::F => ("f", "f1"),
                Direction::G => ("g", "g1"),
            };
            format!("chart {}-direction at ({}, {}); restrict {} = 0", d, cs(f0), cs(g0), r)
        }
        Entry::SubstF(m) => format!("substitute f = {}", m.render(names)),
    }
}

fn render_gauge(g: &Gauge, names: &[String; 11]) -> String {
    match g {
        Gauge::Rat(cs) => format!("rational {}", render_poly(cs, names)),
        Gauge::Poch(m) => format!("pochhammer {}", m.render(names)),
        Gauge::Pow(m) => format!("power {}", m.render(names)),
        Gauge::PowWitness(m) => format!("power (witness, expect {})", m.render(names)),
        Gauge::Clear => "clear".into(),
    }
}

/// One tab-separated record per case: id, kind, provenance, pipeline, claims.
pub fn catalog(set: ClaimSet) -> String {
    let mut out = String::new();
    for c in registry() {
        let names = root_names(c.family);
        let (kind, steps, claims) = match &c.body {
            Body::Heun(h) => {
                let mut steps = vec![render_entry(&h.entry, &names)];
                steps.extend(h.gauges.iter().map(|g| render_gauge(g, &names)));
                let cl = h.claim(set);
                let r = |v: &[PMono]| v.iter().map(|m| m.render(&names)).collect::<Vec<_>>().join(", ");
                (h.kind.name(), steps.join("; "), format!("h = [{}]; l = [{}]", r(&cl.h), r(&cl.l)))
            }
            Body::Theorem31 => (
                "limit equation",
                "expand in eps; gauge (z - q u1)(u1 z - h1)/z; eps^0 term".to_string(),
                "B-, B+, B0, C0 as displayed".to_string(),
            ),
            Body::Theorem32 => (
                Kind::RvD1.name(),
                "z = P H1 x; u1 = H1 v1 / q; uj = H1 vj".to_string(),
                "dictionary x = e^{2 pi i z}, q = e^{-2 pi a}, v = e^{2 pi i h}".to_string(),
            ),
        };
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", c.id, kind, c.provenance, steps, claims));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_counts() {
        assert_eq!(select("D5:*").len(), 12);
        assert_eq!(select("E6:*").len(), 14);
        assert_eq!(select("E7:*").len(), 16);
        assert_eq!(select("E8:*").len(), 2);
        assert_eq!(registry().len(), 44);
        assert!(select("nope").is_empty());
    }

    #[test]
    fn glob_examples() {
        assert!(glob_match("D5:P?", "D5:P5"));
        assert!(glob_match("*", "E8:thm31"));
        assert!(!glob_match("D5:P?", "D5:f=nu3"));
        assert!(glob_match("*nu*", "E6:f=k1/nu7"));
    }

    #[test]
    fn unknown_case() {
        assert!(matches!(find("nope"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn partner_swaps_chart() {
        let c = find("D5:P6").unwrap();
        let Body::Heun(h) = &c.body else { panic!() };
        let Entry::Chart { g0: CenterSpec::At(m), .. } = &h.entry else { panic!() };
        assert_eq!(*m, &PMono::nu(6) / &PMono::ka(2));
    }
}

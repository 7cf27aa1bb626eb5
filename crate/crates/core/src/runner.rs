//! Batch runner: executes registry cases under random or symbolic bindings and emits reports.

use crate::algebra::{Family, ParamBinding, Sym, Q};
use crate::e8_limit::{check_theorem31, check_theorem32_rvd, E8LimitInput, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::normalform::registry::{find, run_heun, select, Body, CaseSpec, ClaimSet, HeunCase};
use crate::normalform::Status;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

/// Draws allowed per binding before giving up.
pub const MAX_ATTEMPTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Specialized,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Glob over case ids.
    pub cases: String,
    pub mode: Mode,
    pub seeds: usize,
    pub seed: u64,
    pub claims: ClaimSet,
    /// Highest eps power kept in the E8 expansion.
    pub truncation: i64,
    /// Record wall-clock time per case; off gives byte-identical reports across runs.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cases: "*".into(),
            mode: Mode::Specialized,
            seeds: 3,
            seed: 1,
            claims: ClaimSet::Literal,
            truncation: DEFAULT_TRUNCATION,
            timing: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds == 0 {
            return Err(Error::InvalidConfig("seeds must be at least 1".into()));
        }
        if self.truncation < 3 {
            return Err(Error::InvalidConfig(format!("truncation {} does not reach eps^0", self.truncation)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    /// Solved accessory parameter on the first binding.
    pub accessory: Option<String>,
    pub gauge_witness: Vec<String>,
    pub millis: Option<u64>,
    /// Bindings that were checked.
    pub bindings: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub ok: usize,
    pub failed: usize,
    pub seed: u64,
    pub mode: Mode,
    pub claims: ClaimSet,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: SuiteSummary,
    pub cases: Vec<CaseReport>,
}

impl VerificationReport {
    pub fn new(cfg: &RunConfig, cases: Vec<CaseReport>) -> Self {
        let failures: Vec<String> = cases.iter().filter(|c| c.status != Status::Ok).map(|c| c.id.clone()).collect();
        let suite = SuiteSummary {
            total: cases.len(),
            ok: cases.len() - failures.len(),
            failed: failures.len(),
            seed: cfg.seed,
            mode: cfg.mode,
            claims: cfg.claims,
            failures,
        };
        VerificationReport { suite, cases }
    }

    pub fn all_ok(&self) -> bool {
        self.suite.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_ok() {
            0
        } else {
            1
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Per-case generator, independent of which other cases run.
pub fn case_rng(id: &str, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(id))
}

/// True when some product of at most `max_len` roots, each to the power 1 or -1, equals 1.
fn short_relation(vals: &[Q], max_len: usize) -> bool {
    fn go(vals: &[Q], start: usize, left: usize, acc: &Q, used: bool) -> bool {
        if used && acc == &Q::from_integer(1.into()) {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..vals.len()).any(|i| {
            let up = go(vals, i + 1, left - 1, &(acc * &vals[i]), true);
            // the first factor keeps exponent 1 so each relation is met once
            up || (used && go(vals, i + 1, left - 1, &(acc / &vals[i]), true))
        })
    }
    go(vals, 0, max_len, &Q::from_integer(1.into()), false)
}

/// Rules out bindings where special points collide, e.g. k1 = m4 m7 puts kappa1/nu7 on nu4.
pub fn generic(b: &ParamBinding) -> bool {
    if short_relation(&b.values, 4) {
        return false;
    }
    if b.family == Family::E8 {
        let sq: Vec<Q> = b.values.iter().map(|v| v * v).collect();
        let u1sq = &sq[0] * &sq[0];
        return u1sq != sq[8] && u1sq != sq[9];
    }
    true
}

struct Outcome {
    status: Status,
    accessory: Option<String>,
    witness: Vec<String>,
    note: Option<String>,
}

/// `None` asks for another binding.
fn attempt(spec: &CaseSpec, s: &Sym, cfg: &RunConfig) -> Option<Outcome> {
    match &spec.body {
        Body::Heun(h) => heun_outcome(h, s, cfg.claims),
        Body::Theorem31 | Body::Theorem32 => {
            let mut input = E8LimitInput::new(s.clone());
            input.truncation = cfg.truncation;
            e8_outcome(&spec.body, &input, cfg.claims)
        }
    }
}

fn heun_outcome(h: &HeunCase, s: &Sym, set: ClaimSet) -> Option<Outcome> {
    let (v, witness) = run_heun(h, s, set);
    if v.status == Status::Error {
        return None;
    }
    Some(Outcome { status: v.status, accessory: v.accessory.map(|a| a.to_string()), witness, note: v.note })
}

fn e8_outcome(body: &Body, input: &E8LimitInput, set: ClaimSet) -> Option<Outcome> {
    let witness = vec![
        "expand L1 to eps^3".to_string(),
        "rational (z - q u1)(u1 z - h1)/z".to_string(),
        "eps^0 coefficient".to_string(),
    ];
    let done = |ok: bool, accessory: String, failed: Vec<&str>| Outcome {
        status: if ok { Status::Ok } else { Status::Mismatch },
        accessory: Some(accessory),
        witness: witness.clone(),
        note: (!ok).then(|| format!("fails: {}", failed.join(", "))),
    };
    let res = match body {
        Body::Theorem31 => check_theorem31(input, set).map(|r| done(r.holds(), r.residual_c0_prime.clone(), r.failures())),
        _ => check_theorem32_rvd(input).map(|r| {
            let failed: Vec<&str> = [
                (r.limit_outer_match, "outer coefficients"),
                (r.accessory_free_of_x, "accessory free of x"),
                (r.accessory_c_dependence, "accessory c-dependence"),
                (r.rvd_equivalent, "operator equivalence"),
            ]
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, n)| *n)
            .collect();
            done(r.holds(), r.accessory.clone(), failed)
        }),
    };
    match res {
        Ok(o) => Some(o),
        Err(Error::Algebra(_)) => None,
        Err(e) => Some(Outcome {
            status: Status::from_error(&e),
            accessory: None,
            witness: Vec::new(),
            note: Some(e.to_string()),
        }),
    }
}

fn symbolic_sym(spec: &CaseSpec) -> Sym {
    match &spec.body {
        Body::Heun(h) => h.symbolic_sym(spec.family),
        _ => Sym::symbolic(spec.family),
    }
}

fn run_spec(spec: &CaseSpec, cfg: &RunConfig) -> CaseReport {
    let start = Instant::now();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut exhausted: Option<String> = None;
    match cfg.mode {
        Mode::Symbolic => match attempt(spec, &symbolic_sym(spec), cfg) {
            Some(o) => outcomes.push(o),
            None => exhausted = Some("degenerate denominator under symbolic parameters".into()),
        },
        Mode::Specialized => {
            let mut rng = case_rng(&spec.id, cfg.seed);
            'bindings: for _ in 0..cfg.seeds {
                for _ in 0..MAX_ATTEMPTS {
                    let b = ParamBinding::sample(spec.family, &mut rng);
                    if !generic(&b) {
                        continue;
                    }
                    if let Some(o) = attempt(spec, &Sym::numeric(&b), cfg) {
                        outcomes.push(o);
                        continue 'bindings;
                    }
                }
                exhausted = Some(Error::ResamplingExhausted(MAX_ATTEMPTS).to_string());
                break;
            }
        }
    }
    let millis = cfg.timing.then(|| start.elapsed().as_millis() as u64);
    let bindings = outcomes.len();
    let first_bad = outcomes.iter().position(|o| o.status != Status::Ok);
    let (status, note) = match (first_bad, exhausted) {
        (Some(i), _) => (outcomes[i].status, outcomes[i].note.clone().map(|n| format!("binding {}: {}", i + 1, n))),
        (None, Some(msg)) => (Status::Error, Some(msg)),
        (None, None) => (Status::Ok, None),
    };
    let first = outcomes.into_iter().next();
    CaseReport {
        id: spec.id.clone(),
        status,
        accessory: first.as_ref().and_then(|o| o.accessory.clone()),
        gauge_witness: first.map(|o| o.witness).unwrap_or_default(),
        millis,
        bindings,
        note,
    }
}

pub fn run_case(id: &str, cfg: &RunConfig) -> Result<CaseReport> {
    cfg.validate()?;
    Ok(run_spec(find(id)?, cfg))
}

/// Runs every case matching the filter; the result keeps registry order.
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let cases: Vec<CaseReport> = select(&cfg.cases).par_iter().map(|c| run_spec(c, cfg)).collect();
    Ok(VerificationReport::new(cfg, cases))
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(r: &VerificationReport) -> String {
    let s = &r.suite;
    let mode = match s.mode {
        Mode::Specialized => "specialized",
        Mode::Symbolic => "symbolic",
    };
    let claims = match s.claims {
        ClaimSet::Literal => "literal",
        ClaimSet::Corrected => "corrected",
    };
    let mut out = String::new();
    let _ = writeln!(out, "# Verification report\n");
    let _ = writeln!(out, "| total | ok | failed | seed | mode | claims |");
    let _ = writeln!(out, "|---|---|---|---|---|---|");
    let _ = writeln!(out, "| {} | {} | {} | {} | {} | {} |\n", s.total, s.ok, s.failed, s.seed, mode, claims);
    let _ = writeln!(out, "| id | status | accessory | gauge witness | millis | bindings | note |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|");
    for c in &r.cases {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            cell(&c.id),
            c.status,
            cell(c.accessory.as_deref().unwrap_or("")),
            cell(&c.gauge_witness.join("; ")),
            c.millis.map(|m| m.to_string()).unwrap_or_default(),
            c.bindings,
            cell(c.note.as_deref().unwrap_or("")),
        );
    }
    out
}

pub fn emit_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report is plain data");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(r),
    }
}

pub fn parse_report(json: &str) -> Result<VerificationReport> {
    serde_json::from_str(json).map_err(|e| Error::Io(e.to_string()))
}

/// Writes to `path`, or standard output when absent.
pub fn write_report(r: &VerificationReport, format: Format, path: Option<&Path>) -> Result<()> {
    let doc = emit_report(r, format);
    match path {
        Some(p) => std::fs::write(p, doc).map_err(|e| Error::Io(format!("{}: {}", p.display(), e))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(doc.as_bytes()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

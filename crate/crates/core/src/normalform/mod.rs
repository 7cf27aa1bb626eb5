//! Target normal forms and the matcher that reads off the accessory parameter.

pub mod registry;

use crate::algebra::vars::{X, Z};
use crate::algebra::{PMono, RatFn, Sym, Var};
use crate::error::{Error, Result};
use crate::qdiff::{proj_equal, ThreeTermEq};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    QHeun2,
    Variant3,
    Variant4,
    RvD1,
}

impl Kind {
    /// Common z-degree of the three coefficients.
    pub fn degree(self) -> Option<usize> {
        match self {
            Kind::QHeun2 => Some(2),
            Kind::Variant3 => Some(3),
            Kind::Variant4 => Some(4),
            Kind::RvD1 => None,
        }
    }

    /// Number of h and l parameters.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Kind::QHeun2 => (3, 4),
            Kind::Variant3 => (4, 3),
            Kind::Variant4 => (4, 4),
            Kind::RvD1 => (8, 0),
        }
    }

    /// The independent variable of the normal form.
    pub fn var(self) -> Var {
        match self {
            Kind::RvD1 => X,
            _ => Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::QHeun2 => "q-Heun",
            Kind::Variant3 => "q-Heun variant of degree 3",
            Kind::Variant4 => "q-Heun variant of degree 4",
            Kind::RvD1 => "degenerate Ruijsenaars-van Diejen",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// h and l at square-root level together with the accessory parameter E.
/// For RvD1 the eight v_j go in `h` and `l` is empty.
#[derive(Clone, Debug)]
pub struct HeunParams {
    pub h: Vec<PMono>,
    pub l: Vec<PMono>,
    pub e: RatFn,
}

impl HeunParams {
    pub fn new(h: Vec<PMono>, l: Vec<PMono>, e: RatFn) -> Self {
        HeunParams { h, l, e }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    ShapeMismatch,
    ScaleNotConstant,
    BranchMismatch,
    SlotInconsistent,
    Mismatch,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ShapeMismatch => "shape-mismatch",
            Status::ScaleNotConstant => "scale-not-constant",
            Status::BranchMismatch => "branch-mismatch",
            Status::SlotInconsistent => "slot-inconsistent",
            Status::Mismatch => "mismatch",
            Status::Error => "error",
        }
    }

    pub fn from_error(e: &Error) -> Status {
        match e {
            Error::ShapeMismatch(_) => Status::ShapeMismatch,
            Error::ScaleNotConstant => Status::ScaleNotConstant,
            Error::BranchMismatch => Status::BranchMismatch,
            Error::SlotInconsistent(_) => Status::SlotInconsistent,
            Error::Mismatch(_) => Status::Mismatch,
            _ => Status::Error,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_arity(kind: Kind, h: &[PMono], l: &[PMono]) -> Result<()> {
    let (nh, nl) = kind.arity();
    if h.len() != nh || l.len() != nl {
        return Err(Error::ArityMismatch {
            kind: kind.name().into(),
            expected: format!("{} h, {} l", nh, nl),
            got: format!("{} h, {} l", h.len(), l.len()),
        });
    }
    Ok(())
}

fn product(ms: &[PMono]) -> PMono {
    ms.iter().fold(PMono::one(), |a, b| &a * b)
}

fn sum_eval(ms: &[PMono], s: &Sym) -> RatFn {
    ms.iter().fold(RatFn::zero(), |a, b| &a + &b.eval(s))
}

fn sqrt_eval(m: &PMono, s: &Sym) -> Result<RatFn> {
    Ok(m.sqrt()?.eval(s))
}

/// Normal form with the square-root term multiplied by `branch` (+1 or -1).
fn build_branch(kind: Kind, h: &[PMono], l: &[PMono], e: &RatFn, s: &Sym, branch: i64) -> Result<ThreeTermEq> {
    check_arity(kind, h, l)?;
    let x = RatFn::var(kind.var());
    let p = s.p();
    let one = RatFn::one();
    let pp = &p + &one.div_ref(&p)?;
    let sgn = RatFn::int(branch);
    let hv: Vec<RatFn> = h.iter().map(|m| m.eval(s)).collect();
    let lv: Vec<RatFn> = l.iter().map(|m| m.eval(s)).collect();
    let lower = |n: usize| -> RatFn { hv[..n].iter().fold(one.clone(), |a, hi| &a * &(&x - &(hi * &p))) };
    let upper = |n: usize| -> Result<RatFn> {
        let mut a = one.clone();
        for li in &lv[..n] {
            a = &a * &(&x - &li.div_ref(&p)?);
        }
        Ok(a)
    };
    match kind {
        Kind::QHeun2 => {
            let root = &sqrt_eval(&product(&[&l[..], &h[..2]].concat()), s)? * &sgn;
            let r3 = sqrt_eval(&h[2], s)?;
            let cst = &root * &(&r3 + &one.div_ref(&r3)?);
            let a0 = -&(&(&(&(&lv[2] + &lv[3]) * &(&x * &x)) + &(e * &x)) + &cst);
            let ap = &(&lv[2] * &lv[3]) * &upper(2)?;
            Ok(ThreeTermEq::new(lower(2), a0, ap))
        }
        Kind::Variant3 => {
            let root = &sqrt_eval(&product(&[&l[..], &h[..3]].concat()), s)? * &sgn;
            let r4 = sqrt_eval(&h[3], s)?;
            let cst = &root * &(&r4 + &one.div_ref(&r4)?);
            let x2 = &x * &x;
            let top = &(&pp * &x2) * &x;
            let mid = &(&sum_eval(&h[..3], s) + &sum_eval(l, s)) * &x2;
            let a0 = &(&(&mid - &top) - &(e * &x)) + &cst;
            Ok(ThreeTermEq::new(lower(3), a0, upper(3)?))
        }
        Kind::Variant4 => {
            let root = &sqrt_eval(&product(&[&l[..], &h[..]].concat()), s)? * &sgn;
            let mut inv_sum = RatFn::zero();
            for v in hv.iter().chain(lv.iter()) {
                inv_sum = &inv_sum + &one.div_ref(v)?;
            }
            let x2 = &x * &x;
            let x3 = &x2 * &x;
            let top = &pp * &(&x2 * &x2);
            let mid = &(&sum_eval(h, s) + &sum_eval(l, s)) * &x3;
            let tail = &root * &(&(&inv_sum * &x) - &pp);
            let a0 = &(&(&mid - &top) + &(e * &x2)) + &tail;
            Ok(ThreeTermEq::new(lower(4), a0, upper(4)?))
        }
        Kind::RvD1 => {
            let q = s.q();
            let x2 = &x * &x;
            let ip = one.div_ref(&p)?;
            let mut am = one.clone();
            let mut ap = one.clone();
            let mut minus = one.clone();
            let mut plus = one.clone();
            let mut vsum = RatFn::zero();
            for v in &hv {
                let pv = &p * v;
                am = &am * &(&x - &pv);
                ap = &ap * &(&(&pv * &x) - &one);
                minus = &minus * &(&one - v);
                plus = &plus * &(&one + v);
                vsum = &(&vsum + v) + &one.div_ref(v)?;
            }
            let den_m = &(&(&q * &x2) * &(&x2 - &one)) * &(&x2 - &q);
            let den_p = &(&(&q * &x2) * &(&x2 - &one)) * &(&(&q * &x2) - &one);
            let two = RatFn::int(2);
            let t1 = (&(&p * &x) * &minus).div_ref(&(&(&two * &(&x - &ip)) * &(&x - &p)))?;
            let t2 = (&(&p * &x) * &plus).div_ref(&(&(&two * &(&x + &ip)) * &(&x + &p)))?;
            let root = &sqrt_eval(&product(h), s)? * &sgn;
            let ix = one.div_ref(&x)?;
            let bracket = &(&(&q + &one) * &(&x2 + &(&ix * &ix))) - &(&(&p * &(&x + &ix)) * &vsum);
            let b0 = &(&t2 - &t1) - &(&root * &bracket);
            Ok(ThreeTermEq::new(am.div_ref(&den_m)?, &b0 - e, ap.div_ref(&den_p)?))
        }
    }
}

pub fn build_normal_form(kind: Kind, params: &HeunParams, s: &Sym) -> Result<ThreeTermEq> {
    build_branch(kind, &params.h, &params.l, &params.e, s, 1)
}

/// Coefficients in `v` of a rational function whose denominator is free of `v`.
pub fn coeffs_in(r: &RatFn, v: Var) -> Result<Vec<RatFn>> {
    let r = if r.denom().contains_var(v) { r.reduce() } else { r.clone() };
    let d = r.denom();
    if d.contains_var(v) {
        return Err(Error::ShapeMismatch(format!("coefficient is not polynomial in {}", v)));
    }
    let d = RatFn::from_poly(d);
    r.numer().coeffs_in(v).into_iter().map(|c| Ok(RatFn::from_poly(c).div_ref(&d)?)).collect()
}

fn degree_in(r: &RatFn, v: Var) -> Result<Option<usize>> {
    let cs = coeffs_in(r, v)?;
    Ok(cs.iter().rposition(|c| !c.is_zero()))
}

fn is_free_of(r: &RatFn, v: Var) -> bool {
    r.derivative(v).is_zero()
}

/// Reads off E from a derived equation, given the claimed h and l.
pub fn extract_accessory(derived: &ThreeTermEq, kind: Kind, h: &[PMono], l: &[PMono], s: &Sym) -> Result<RatFn> {
    check_arity(kind, h, l)?;
    let v = kind.var();
    if let Some(d) = kind.degree() {
        let degs: Vec<Option<usize>> =
            derived.as_array().iter().map(|c| degree_in(c, v)).collect::<Result<_>>()?;
        if degs.iter().any(|g| *g != Some(d)) {
            let shown: Vec<String> = degs.iter().map(|g| g.map_or("-".into(), |k| k.to_string())).collect();
            return Err(Error::ShapeMismatch(format!("degrees ({}) instead of {}", shown.join(","), d)));
        }
    }
    let zero = RatFn::zero();
    let nf0 = build_branch(kind, h, l, &zero, s, 1)?;
    let rho = derived.a_minus.div_ref(&nf0.a_minus)?;
    if !is_free_of(&rho, v) {
        let rho_p = derived.a_plus.div_ref(&nf0.a_plus)?;
        if rho.eq_val(&rho_p) {
            return Err(Error::ScaleNotConstant);
        }
        return Err(Error::Mismatch("y(z/q) coefficient does not match the claimed h".into()));
    }
    let sc = rho.reduce();
    if !derived.a_plus.eq_val(&(&sc * &nf0.a_plus)) {
        return Err(Error::Mismatch("y(qz) coefficient does not match the claimed l".into()));
    }
    let mid = derived.a_zero.div_ref(&sc)?;
    let solve = |nf: &ThreeTermEq| -> Result<std::result::Result<RatFn, String>> {
        let diff = &mid - &nf.a_zero;
        if kind == Kind::RvD1 {
            return Ok(if is_free_of(&diff, v) { Ok(-&diff) } else { Err("remainder depends on x".into()) });
        }
        let cs = coeffs_in(&diff, v)?;
        let (slot, sign) = match kind {
            Kind::Variant4 => (2, 1),
            _ => (1, -1),
        };
        for (k, c) in cs.iter().enumerate() {
            if k != slot && !c.is_zero() {
                return Ok(Err(format!("{}^{} slot off by {}", v, k, c.reduce())));
            }
        }
        let e = cs.get(slot).cloned().unwrap_or_else(RatFn::zero);
        Ok(Ok(if sign < 0 { -&e } else { e }))
    };
    match solve(&nf0)? {
        Ok(e) => Ok(e.reduce()),
        Err(why) => {
            let flipped = build_branch(kind, h, l, &zero, s, -1)?;
            match solve(&flipped)? {
                Ok(_) => Err(Error::BranchMismatch),
                Err(_) => Err(Error::SlotInconsistent(why)),
            }
        }
    }
}

/// Outcome of matching one derived equation against one claimed correspondence.
#[derive(Clone, Debug)]
pub struct Verification {
    pub status: Status,
    pub accessory: Option<RatFn>,
    pub note: Option<String>,
}

impl Verification {
    pub fn failed(status: Status, note: impl Into<String>) -> Self {
        Verification { status, accessory: None, note: Some(note.into()) }
    }
}

/// How a displayed accessory value is compared with the solved one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisplayCheck {
    /// E equals the display.
    Exact,
    /// E minus the display is free of z and of the free coordinate.
    UpToConstant,
}

/// Solves E, rebuilds the normal form, compares with the display and checks E is Moebius in `free`.
pub fn verify_correspondence(
    derived: &ThreeTermEq,
    kind: Kind,
    h: &[PMono],
    l: &[PMono],
    free: Option<Var>,
    display: Option<(DisplayCheck, RatFn)>,
    s: &Sym,
) -> Verification {
    let e = match extract_accessory(derived, kind, h, l, s) {
        Ok(e) => e,
        Err(err) => return Verification::failed(Status::from_error(&err), err.to_string()),
    };
    let rebuilt = build_normal_form(kind, &HeunParams::new(h.to_vec(), l.to_vec(), e.clone()), s);
    match rebuilt.and_then(|nf| proj_equal(derived, &nf)) {
        Ok(true) => {}
        Ok(false) => {
            return Verification { status: Status::Mismatch, accessory: Some(e), note: Some("rebuilt form differs".into()) }
        }
        Err(err) => return Verification::failed(Status::Error, err.to_string()),
    }
    if let Some((check, shown)) = display {
        let diff = (&e - &shown).reduce();
        let fine = match check {
            DisplayCheck::Exact => diff.is_zero(),
            DisplayCheck::UpToConstant => {
                is_free_of(&diff, kind.var()) && free.is_none_or(|v| is_free_of(&diff, v))
            }
        };
        if !fine {
            return Verification {
                status: Status::Mismatch,
                accessory: Some(e),
                note: Some(format!("solved E differs from the displayed value by {}", diff)),
            };
        }
    }
    if let Some(v) = free {
        let (n, d) = e.reduced_pair();
        if n.degree(v).unwrap_or(0) > 1 || d.degree(v).unwrap_or(0) > 1 {
            return Verification {
                status: Status::Mismatch,
                accessory: Some(e),
                note: Some(format!("E is not a Moebius function of {}", v)),
            };
        }
    }
    Verification { status: Status::Ok, accessory: Some(e), note: None }
}

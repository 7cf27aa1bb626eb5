//! Three-term q-difference equations and their gauge transformations.

use crate::algebra::gcd;
use crate::algebra::vars::{T, Z};
use crate::algebra::{MPoly, RatFn, Var};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// sum_k c_k(z) T_z^k with T_z : z -> qz.
#[derive(Clone, Debug, Default)]
pub struct ShiftOperator {
    terms: BTreeMap<i32, RatFn>,
}

impl ShiftOperator {
    pub fn new() -> Self {
        ShiftOperator::default()
    }

    pub fn shift(k: i32) -> Self {
        ShiftOperator::from_terms([(k, RatFn::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, RatFn)>) -> Self {
        let mut out = ShiftOperator::new();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: i32, c: RatFn) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(RatFn::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i32) -> RatFn {
        self.terms.get(&k).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn support(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn add(&self, o: &ShiftOperator) -> ShiftOperator {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    /// Left multiplication by a function of z.
    pub fn scale(&self, c: &RatFn) -> ShiftOperator {
        ShiftOperator::from_terms(self.terms.iter().map(|(k, a)| (*k, c * a)))
    }

    /// Operator product, using T_z c(z) = c(qz) T_z.
    pub fn compose(&self, o: &ShiftOperator, q: &RatFn) -> Result<ShiftOperator> {
        let mut out = ShiftOperator::new();
        for (i, a) in &self.terms {
            let zi = &RatFn::var(Z) * &q.pow(*i)?;
            for (j, b) in &o.terms {
                out.add_term(i + j, a * &b.subs(Z, &zi)?);
            }
        }
        Ok(out)
    }

    /// Applies the operator to y, given the values y(q^k z) for every shift in the support.
    pub fn apply(&self, y: &BTreeMap<i32, RatFn>) -> Option<RatFn> {
        let mut acc = RatFn::zero();
        for (k, c) in &self.terms {
            acc = &acc + &(c * y.get(k)?);
        }
        Some(acc)
    }

    pub fn subs(&self, v: Var, r: &RatFn) -> Result<ShiftOperator> {
        let mut out = ShiftOperator::new();
        for (k, c) in &self.terms {
            out.add_term(*k, c.subs(v, r)?);
        }
        Ok(out)
    }
}

/// Coefficients of y(z/q), y(z), y(qz), meaningful up to an overall factor.
#[derive(Clone, Debug)]
pub struct ThreeTermEq {
    pub a_minus: RatFn,
    pub a_zero: RatFn,
    pub a_plus: RatFn,
}

impl ThreeTermEq {
    pub fn new(a_minus: RatFn, a_zero: RatFn, a_plus: RatFn) -> Self {
        ThreeTermEq { a_minus, a_zero, a_plus }
    }

    pub fn as_array(&self) -> [&RatFn; 3] {
        [&self.a_minus, &self.a_zero, &self.a_plus]
    }

    pub fn map<F>(&self, mut f: F) -> Result<ThreeTermEq>
    where
        F: FnMut(&RatFn) -> Result<RatFn>,
    {
        Ok(ThreeTermEq::new(f(&self.a_minus)?, f(&self.a_zero)?, f(&self.a_plus)?))
    }

    pub fn is_zero(&self) -> bool {
        self.as_array().iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &RatFn) -> ThreeTermEq {
        ThreeTermEq::new(&self.a_minus * s, &self.a_zero * s, &self.a_plus * s)
    }

    pub fn to_operator(&self) -> ShiftOperator {
        ShiftOperator::from_terms([(-1, self.a_minus.clone()), (0, self.a_zero.clone()), (1, self.a_plus.clone())])
    }

    pub fn subs(&self, v: Var, r: &RatFn) -> Result<ThreeTermEq> {
        self.map(|c| Ok(c.subs(v, r)?))
    }
}

impl fmt::Display for ThreeTermEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] y(z/q) + [{}] y(z) + [{}] y(qz)", self.a_minus, self.a_zero, self.a_plus)
    }
}

pub fn collect_three_term(op: &ShiftOperator) -> Result<ThreeTermEq> {
    if let Some(k) = op.support().into_iter().find(|k| !(-1..=1).contains(k)) {
        return Err(Error::UnsupportedShift(k));
    }
    Ok(ThreeTermEq::new(op.coeff(-1), op.coeff(0), op.coeff(1)))
}

/// Polynomial coefficients with no common factor, integer-primitive, y(z/q) coefficient with positive leading term.
pub fn clear_and_primitive(e: &ThreeTermEq) -> Result<ThreeTermEq> {
    if e.is_zero() {
        return Err(Error::ZeroEquation);
    }
    let ns = RatFn::clear_denominators(&e.as_array());
    let mut g = MPoly::zero();
    for n in &ns {
        g = gcd::gcd(&g, n);
        if g.is_one() {
            break;
        }
    }
    let mut out: Vec<MPoly> = ns.iter().map(|n| n.div_exact(&g).expect("gcd divides")).collect();
    let lead = out.iter().find(|p| !p.is_zero()).unwrap().clone();
    let mut content = MPoly::zero();
    for p in &out {
        if !p.is_zero() {
            content = MPoly::constant(if content.is_zero() {
                p.rational_content()
            } else {
                gcd_rational(&content.lc(), &p.rational_content())
            });
        }
    }
    let mut c = content.lc();
    if lead.lc() < num_traits::Zero::zero() {
        c = -c;
    }
    let inv = c.recip();
    for p in out.iter_mut() {
        *p = p.scale(&inv);
    }
    let [a, b, d]: [MPoly; 3] = out.try_into().unwrap();
    Ok(ThreeTermEq::new(RatFn::from_poly(a), RatFn::from_poly(b), RatFn::from_poly(d)))
}

fn gcd_rational(a: &crate::algebra::Q, b: &crate::algebra::Q) -> crate::algebra::Q {
    use num_integer::Integer;
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    crate::algebra::Q::new(n, d)
}

/// h(x) = x^lambda y(x) with q^lambda = Q.
pub fn gauge_power(e: &ThreeTermEq, qmul: &RatFn) -> Result<ThreeTermEq> {
    if qmul.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    Ok(ThreeTermEq::new(&e.a_minus * qmul, e.a_zero.clone(), e.a_plus.div_ref(qmul)?))
}

/// u(x) = (alpha q x; q)_inf y(x).
pub fn gauge_pochhammer(e: &ThreeTermEq, alpha: &RatFn, q: &RatFn) -> Result<ThreeTermEq> {
    let z = RatFn::var(Z);
    let lin = &RatFn::one() - &(alpha * &z);
    if alpha.is_zero() {
        return Err(Error::FactorAbsent("alpha = 0".into()));
    }
    let root = &(&RatFn::one() / alpha) + &RatFn::var(T);
    let local = e.a_minus.subs(Z, &root)?;
    match local.valuation(T) {
        Some(v) if v >= 1 => {}
        None => {}
        _ => return Err(Error::FactorAbsent(format!("{}", alpha))),
    }
    let lin_q = &RatFn::one() - &(&(alpha * q) * &z);
    Ok(ThreeTermEq::new(e.a_minus.div_ref(&lin)?, e.a_zero.clone(), &lin_q * &e.a_plus))
}

/// y(z) = r(z) u(z).
pub fn gauge_rational(e: &ThreeTermEq, r: &RatFn, q: &RatFn) -> Result<ThreeTermEq> {
    if r.is_zero() {
        return Err(Error::ZeroGauge);
    }
    let z = RatFn::var(Z);
    let r_down = r.subs(Z, &z.div_ref(q)?)?;
    let r_up = r.subs(Z, &(&z * q))?;
    Ok(ThreeTermEq::new(&e.a_minus * &r_down, &e.a_zero * r, &e.a_plus * &r_up))
}

/// Proportionality of the coefficient triples.
pub fn proj_equal(e1: &ThreeTermEq, e2: &ThreeTermEq) -> Result<bool> {
    if e1.is_zero() || e2.is_zero() {
        return Err(Error::ZeroEquation);
    }
    let a = e1.as_array();
    let b = e2.as_array();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !(a[i] * b[j]).eq_val(&(a[j] * b[i])) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars::*;

    fn z() -> RatFn {
        RatFn::var(Z)
    }

    #[test]
    fn collect_examples() {
        let t = collect_three_term(&ShiftOperator::shift(1)).unwrap();
        assert!(t.a_minus.is_zero() && t.a_zero.is_zero() && t.a_plus == RatFn::one());
        let op = ShiftOperator::from_terms([(-1, z()), (0, RatFn::int(3))]);
        let t = collect_three_term(&op).unwrap();
        assert_eq!(t.a_minus, z());
        assert_eq!(t.a_zero, RatFn::int(3));
        assert!(matches!(collect_three_term(&ShiftOperator::shift(2)), Err(Error::UnsupportedShift(2))));
    }

    #[test]
    fn clear_z_denominator() {
        let e = ThreeTermEq::new(&RatFn::one() / &z(), RatFn::one(), z());
        let c = clear_and_primitive(&e).unwrap();
        assert_eq!(c.a_minus, RatFn::one());
        assert_eq!(c.a_zero, z());
        assert_eq!(c.a_plus, &z() * &z());
    }

    #[test]
    fn content_removed() {
        let s = &RatFn::var(K1) + &RatFn::int(2);
        let e = ThreeTermEq::new(z(), RatFn::one(), &z() + &RatFn::one());
        let a = clear_and_primitive(&e).unwrap();
        let b = clear_and_primitive(&e.scale(&s)).unwrap();
        for (x, y) in a.as_array().iter().zip(b.as_array().iter()) {
            assert_eq!(*x, *y);
        }
    }

    #[test]
    fn pochhammer_direct() {
        let a = RatFn::var(K1);
        let qv = RatFn::var(P_);
        let lin = &RatFn::one() - &(&a * &z());
        let e = ThreeTermEq::new(lin, RatFn::var(F), RatFn::var(G));
        let out = gauge_pochhammer(&e, &a, &qv).unwrap();
        assert_eq!(out.a_minus, RatFn::one());
        assert_eq!(out.a_plus, &(&RatFn::one() - &(&(&a * &qv) * &z())) * &RatFn::var(G));
        let bad = ThreeTermEq::new(RatFn::one(), RatFn::one(), RatFn::one());
        assert!(matches!(gauge_pochhammer(&bad, &RatFn::one(), &qv), Err(Error::FactorAbsent(_))));
    }

    #[test]
    fn compose_moves_coefficients() {
        let qv = RatFn::var(P_);
        let t = ShiftOperator::shift(1);
        let c = ShiftOperator::from_terms([(0, z())]);
        let tc = t.compose(&c, &qv).unwrap();
        assert_eq!(tc.coeff(1), &qv * &z());
    }
}

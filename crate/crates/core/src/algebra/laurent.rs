use super::mpoly::MPoly;
use super::ratfn::RatFn;
use super::var::Var;
use super::AlgebraError;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in one variable with rational-function coefficients.
#[derive(Clone, Default, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, RatFn>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(c: RatFn, k: i32) -> Self {
        let mut out = LaurentPoly::zero();
        out.add_term(k, c);
        out
    }

    pub fn constant(c: RatFn) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// Reads p as a polynomial in v with coefficients in the other indeterminates.
    pub fn from_poly(p: &MPoly, v: Var) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in p.coeffs_in(v).into_iter().enumerate() {
            out.add_term(k as i32, RatFn::from_poly(c));
        }
        out
    }

    /// Polynomial with the given roots: prod (v - r).
    pub fn from_roots(roots: &[RatFn]) -> Self {
        let mut out = LaurentPoly::constant(RatFn::one());
        for r in roots {
            let lin = &LaurentPoly::monomial(RatFn::one(), 1) - &LaurentPoly::constant(r.clone());
            out = &out * &lin;
        }
        out
    }

    fn add_term(&mut self, k: i32, c: RatFn) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(RatFn::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn top(&self) -> Option<(i32, &RatFn)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn bottom(&self) -> Option<(i32, &RatFn)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> RatFn {
        self.terms.get(&k).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &RatFn)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, a) in &self.terms {
            out.add_term(*k, a * c);
        }
        out
    }

    /// Multiplies by v^s.
    pub fn shift(&self, s: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k + s, c.clone())).collect() }
    }

    /// The substitution v -> c / v.
    pub fn reflect(&self, c: &RatFn) -> Result<Self, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for (k, a) in &self.terms {
            out.add_term(-k, a * &c.pow(*k)?);
        }
        Ok(out)
    }

    /// The substitution v -> c * v.
    pub fn dilate(&self, c: &RatFn) -> Result<Self, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for (k, a) in &self.terms {
            out.add_term(*k, a * &c.pow(*k)?);
        }
        Ok(out)
    }

    pub fn to_ratfn(&self, v: Var) -> RatFn {
        let mut acc = RatFn::zero();
        for (k, c) in &self.terms {
            acc = &acc + &(c * &RatFn::var(v).pow(*k).expect("nonzero variable"));
        }
        acc
    }

    /// Exact quotient n / d; fails with the remainder when d does not divide n.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        let (dt, dc) = d.top().ok_or(AlgebraError::DivisionByZero)?;
        let (db, _) = d.bottom().unwrap();
        let mut r = self.clone();
        let mut quo = LaurentPoly::zero();
        let floor = match self.bottom() {
            None => return Ok(quo),
            Some((b, _)) => b - db,
        };
        while let Some((rt, rc)) = r.top() {
            let k = rt - dt;
            if k < floor {
                break;
            }
            let c = rc.div_ref(dc)?;
            r = &r - &d.scale(&c).shift(k);
            quo.add_term(k, c);
        }
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible(format!("{}", r)));
        }
        Ok(quo)
    }

    /// True when L(c / v) = L(v).
    pub fn is_reflection_symmetric(&self, c: &RatFn) -> Result<bool, AlgebraError> {
        Ok(self.reflect(c)? == *self)
    }

    /// Writes a reflection-symmetric L as P(v + c/v); returns the coefficients of P.
    pub fn to_w_poly(&self, c: &RatFn) -> Result<WPoly, AlgebraError> {
        if !self.is_reflection_symmetric(c)? {
            return Err(AlgebraError::NotSymmetric);
        }
        let w1 = &LaurentPoly::monomial(RatFn::one(), 1) + &LaurentPoly::monomial(c.clone(), -1);
        let mut l = self.clone();
        let mut out: Vec<RatFn> = Vec::new();
        while let Some((d, lc)) = l.top() {
            if d < 0 {
                return Err(AlgebraError::NotSymmetric);
            }
            let lc = lc.clone();
            let d = d as usize;
            if out.len() <= d {
                out.resize(d + 1, RatFn::zero());
            }
            out[d] = &out[d] + &lc;
            if d == 0 {
                l = &l - &LaurentPoly::constant(lc);
                if !l.is_zero() {
                    return Err(AlgebraError::NotSymmetric);
                }
                break;
            }
            l = &l - &w1.pow(d as u32).scale(&lc);
        }
        Ok(WPoly(out))
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(RatFn::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(k, c)| format!("({})*v^{}", c, k)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense univariate polynomial sum c_k w^k with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WPoly(pub Vec<RatFn>);

impl WPoly {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    /// Horner evaluation at a rational function.
    pub fn eval(&self, w: &RatFn) -> RatFn {
        let mut acc = RatFn::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * w) + c;
        }
        acc
    }

    /// Evaluation at a Laurent polynomial.
    pub fn eval_laurent(&self, w: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * w) + &LaurentPoly::constant(c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var::vars::*;

    fn h2() -> RatFn {
        RatFn::var(H2)
    }

    #[test]
    fn divide_by_z_minus_h2_over_z() {
        let n = &LaurentPoly::monomial(RatFn::one(), 2) - &LaurentPoly::constant(h2());
        let d = &LaurentPoly::monomial(RatFn::one(), 1) - &LaurentPoly::monomial(h2(), -1);
        let q = n.divide_exact(&d).unwrap();
        assert_eq!(q, LaurentPoly::monomial(RatFn::one(), 1));
    }

    #[test]
    fn difference_of_squares() {
        let h = h2();
        let n = &LaurentPoly::monomial(RatFn::one(), 4) - &LaurentPoly::constant(&h * &h);
        let d = &LaurentPoly::monomial(RatFn::one(), 2) - &LaurentPoly::constant(h.clone());
        let q = n.divide_exact(&d).unwrap();
        assert_eq!(q, &LaurentPoly::monomial(RatFn::one(), 2) + &LaurentPoly::constant(h));
    }

    #[test]
    fn not_divisible_reports_remainder() {
        let n = &LaurentPoly::monomial(RatFn::one(), 2) + &LaurentPoly::constant(RatFn::one());
        let d = &LaurentPoly::monomial(RatFn::one(), 1) - &LaurentPoly::constant(RatFn::one());
        assert!(matches!(n.divide_exact(&d), Err(AlgebraError::NotDivisible(_))));
    }

    #[test]
    fn to_w_examples() {
        let h = h2();
        let l = &LaurentPoly::monomial(RatFn::one(), 2) + &LaurentPoly::monomial(&h * &h, -2);
        let w = l.to_w_poly(&h).unwrap();
        assert_eq!(w.0.len(), 3);
        assert_eq!(w.0[2], RatFn::one());
        assert_eq!(w.0[1], RatFn::zero());
        assert_eq!(w.0[0], &RatFn::int(-2) * &h);
        let one = LaurentPoly::constant(RatFn::one()).to_w_poly(&h).unwrap();
        assert_eq!(one.0, vec![RatFn::one()]);
    }

    #[test]
    fn asymmetric_rejected() {
        let l = LaurentPoly::monomial(RatFn::one(), 1);
        assert!(matches!(l.to_w_poly(&h2()), Err(AlgebraError::NotSymmetric)));
    }
}

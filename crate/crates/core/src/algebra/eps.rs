use super::mpoly::MPoly;
use super::ratfn::RatFn;
use super::var::Var;
use super::AlgebraError;
use std::fmt;

/// Order used for quantities known exactly.
pub const EXACT: i64 = i64::MAX / 4;
const MAX_TERMS: i64 = 4096;

/// Truncated Laurent series sum_{k=val}^{order-1} c_k eps^k + O(eps^order).
#[derive(Clone, PartialEq)]
pub struct EpsLaurent {
    val: i64,
    order: i64,
    coeffs: Vec<RatFn>,
}

impl EpsLaurent {
    /// O(eps^order).
    pub fn zero(order: i64) -> Self {
        EpsLaurent { val: order, order, coeffs: Vec::new() }
    }

    /// A quantity free of eps, known to absolute order `order`.
    pub fn constant(c: RatFn, order: i64) -> Self {
        EpsLaurent::from_coeffs(0, order, vec![c])
    }

    /// eps^k c, known to absolute order `order`.
    pub fn monomial(c: RatFn, k: i64, order: i64) -> Self {
        EpsLaurent::from_coeffs(k, order, vec![c])
    }

    /// An eps-free quantity with no truncation.
    pub fn exact(c: RatFn) -> Self {
        EpsLaurent::from_coeffs(0, EXACT, vec![c])
    }

    /// Coefficients from eps^val upward; entries past the end are zero, entries at or past order are dropped.
    pub fn from_coeffs(val: i64, order: i64, mut coeffs: Vec<RatFn>) -> Self {
        if order <= val {
            return EpsLaurent::zero(order);
        }
        let room = (order - val).min(i64::from(u32::MAX)) as usize;
        coeffs.truncate(room);
        let mut s = EpsLaurent { val, order, coeffs };
        s.strip();
        s
    }

    /// Expands a polynomial in v.
    pub fn from_poly(p: &MPoly, v: Var, order: i64) -> Self {
        let cs: Vec<RatFn> = p.coeffs_in(v).into_iter().map(RatFn::from_poly).collect();
        EpsLaurent::from_coeffs(0, order, cs)
    }

    /// Expands a rational function in v around v = 0 up to absolute order.
    pub fn from_ratfn(r: &RatFn, v: Var, order: i64) -> Result<Self, AlgebraError> {
        let val = match r.valuation(v) {
            None => return Ok(EpsLaurent::zero(order)),
            Some(x) => x,
        };
        let rel = order - val;
        if rel <= 0 {
            return Ok(EpsLaurent::zero(order));
        }
        let d0 = r.den_monomial().degree(v) as i64;
        let nval = val + d0;
        let num = EpsLaurent::from_poly(r.numer(), v, nval + rel);
        let mut acc = num;
        for (f, e) in r.den_factors() {
            if !f.contains_var(v) {
                let inv = RatFn::new(MPoly::one(), f.clone())?.pow(e as i32)?;
                acc = acc.scale(&inv);
                continue;
            }
            let fs = EpsLaurent::from_poly(f, v, rel).inv()?;
            for _ in 0..e {
                acc = &acc * &fs;
            }
        }
        let rest = r.den_monomial().split(v).1;
        if !rest.is_one() {
            let inv = RatFn::new(MPoly::one(), MPoly::term(rest, super::mpoly::q(1)))?;
            acc = acc.scale(&inv);
        }
        Ok(acc.shift(-d0))
    }

    fn strip(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.val = self.order;
                self.coeffs.clear();
            }
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(0..i);
                    self.val += i as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    /// Lowest retained power with a nonzero coefficient; None if the series is O(eps^order).
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of eps^k; None when k is beyond the known precision.
    pub fn coeff(&self, k: i64) -> Option<RatFn> {
        if k >= self.order {
            return None;
        }
        if k < self.val {
            return Some(RatFn::zero());
        }
        Some(self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(RatFn::zero))
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self, s: i64) -> Self {
        EpsLaurent { val: self.val + s, order: self.order + s, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        EpsLaurent::from_coeffs(self.val, self.order, coeffs)
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&RatFn) -> Result<RatFn, AlgebraError>,
    {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(EpsLaurent::from_coeffs(self.val, self.order, coeffs))
    }

    fn add_impl(&self, o: &EpsLaurent, negate: bool) -> EpsLaurent {
        let order = self.order.min(o.order);
        let ends = |x: &EpsLaurent| (!x.coeffs.is_empty()).then(|| (x.val, x.val + x.coeffs.len() as i64));
        let (lo, hi) = match (ends(self), ends(o)) {
            (None, None) => return EpsLaurent::zero(order),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        let val = lo.min(order);
        let top = hi.min(order);
        let mut coeffs = vec![RatFn::zero(); (top - val).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k < order {
                coeffs[(k - val) as usize] = c.clone();
            }
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            let k = o.val + i as i64;
            if k < order {
                let slot = &mut coeffs[(k - val) as usize];
                *slot = if negate { &*slot - c } else { &*slot + c };
            }
        }
        EpsLaurent::from_coeffs(val, order, coeffs)
    }

    /// Multiplicative inverse; needs a nonzero leading coefficient.
    pub fn inv(&self) -> Result<EpsLaurent, AlgebraError> {
        if self.coeffs.is_empty() {
            return Err(AlgebraError::PrecisionLost);
        }
        let c0inv = self.coeffs[0].inv()?;
        if self.coeffs.len() == 1 {
            return Ok(EpsLaurent::from_coeffs(-self.val, self.order - 2 * self.val, vec![c0inv]));
        }
        if self.order - self.val > MAX_TERMS {
            return Err(AlgebraError::PrecisionLost);
        }
        let rel = (self.order - self.val) as usize;
        let mut out: Vec<RatFn> = Vec::with_capacity(rel);
        out.push(c0inv.clone());
        for k in 1..rel {
            let mut acc = RatFn::zero();
            for i in 1..=k {
                if let Some(ci) = self.coeffs.get(i).filter(|c| !c.is_zero()) {
                    acc = &acc + &(ci * &out[k - i]);
                }
            }
            out.push(-&(&acc * &c0inv));
        }
        Ok(EpsLaurent::from_coeffs(-self.val, -self.val + rel as i64, out))
    }

    pub fn div_ref(&self, o: &EpsLaurent) -> Result<EpsLaurent, AlgebraError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: u32) -> EpsLaurent {
        let mut acc = EpsLaurent::exact(RatFn::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient, demanding that the series starts at or after `at`; returns the eps^at term.
    pub fn term_at(&self, at: i64) -> Result<RatFn, AlgebraError> {
        if at >= self.order {
            return Err(AlgebraError::PrecisionLost);
        }
        if let Some(v) = self.valuation() {
            if v < at {
                return Err(AlgebraError::NegativeValuation { var: "eps".into(), valuation: v });
            }
        }
        Ok(self.coeff(at).unwrap())
    }
}

impl std::ops::Add for &EpsLaurent {
    type Output = EpsLaurent;
    fn add(self, o: &EpsLaurent) -> EpsLaurent {
        self.add_impl(o, false)
    }
}

impl std::ops::Sub for &EpsLaurent {
    type Output = EpsLaurent;
    fn sub(self, o: &EpsLaurent) -> EpsLaurent {
        self.add_impl(o, true)
    }
}

impl std::ops::Neg for &EpsLaurent {
    type Output = EpsLaurent;
    fn neg(self) -> EpsLaurent {
        EpsLaurent { val: self.val, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Mul for &EpsLaurent {
    type Output = EpsLaurent;
    fn mul(self, o: &EpsLaurent) -> EpsLaurent {
        let val = self.val + o.val;
        let order = (self.order + o.val).min(o.order + self.val);
        if order <= val {
            return EpsLaurent::zero(order);
        }
        let n = ((order - val) as usize).min(self.coeffs.len() + o.coeffs.len());
        let mut coeffs = vec![RatFn::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        EpsLaurent::from_coeffs(val, order, coeffs)
    }
}

impl fmt::Display for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "({})*eps^{} + ", c, self.val + i as i64)?;
            }
        }
        if self.order >= EXACT {
            return write!(f, "exact");
        }
        write!(f, "O(eps^{})", self.order)
    }
}

impl fmt::Debug for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var::vars::*;

    fn e() -> RatFn {
        RatFn::var(EPS)
    }

    #[test]
    fn exact_zero_is_additive_identity() {
        let x = EpsLaurent::from_coeffs(0, 3, vec![RatFn::int(2), RatFn::var(Z)]);
        let zero = EpsLaurent::exact(RatFn::zero());
        assert_eq!(&(&zero * &x) + &x, x);
        assert_eq!(&x + &zero, x);
    }

    #[test]
    fn geometric_series() {
        let r = &RatFn::one() / &(&RatFn::one() - &e());
        let s = EpsLaurent::from_ratfn(&r, EPS, 4).unwrap();
        for k in 0..4 {
            assert_eq!(s.coeff(k).unwrap(), RatFn::one());
        }
        assert!(s.coeff(4).is_none());
    }

    #[test]
    fn pole_and_precision() {
        let r = &(&RatFn::one() + &e()) / &(&e() * &(&RatFn::int(2) - &e()));
        let s = EpsLaurent::from_ratfn(&r, EPS, 2).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1).unwrap(), RatFn::constant(crate::algebra::qr(1, 2)));
        assert_eq!(s.coeff(0).unwrap(), RatFn::constant(crate::algebra::qr(3, 4)));
    }

    #[test]
    fn inverse_round_trip() {
        let z = RatFn::var(Z);
        let a = EpsLaurent::from_coeffs(1, 4, vec![z.clone(), RatFn::one(), &z * &z]);
        let b = a.inv().unwrap();
        assert_eq!(b.valuation(), Some(-1));
        let one = &a * &b;
        assert_eq!(one.order(), 3);
        assert_eq!(one.coeff(0).unwrap(), RatFn::one());
        assert_eq!(one.coeff(1).unwrap(), RatFn::zero());
        assert_eq!(one.coeff(2).unwrap(), RatFn::zero());
    }

    #[test]
    fn product_order_rule() {
        let a = EpsLaurent::from_coeffs(-1, 2, vec![RatFn::one()]);
        let b = EpsLaurent::from_coeffs(1, 3, vec![RatFn::one()]);
        let c = &a * &b;
        assert_eq!(c.order(), 2.min(3 - 1));
    }
}

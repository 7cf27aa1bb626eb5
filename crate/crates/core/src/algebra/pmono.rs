use super::binding::Sym;
use super::mpoly::{fmt_q, q, Q};
use super::ratfn::RatFn;
use super::AlgebraError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

const NAMES: [&str; 11] = ["r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "s1", "s2", "p"];

/// Rational multiple of a Laurent monomial in the eleven square-root level parameters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PMono {
    pub coeff: Q,
    pub exps: [i32; 11],
}

impl PMono {
    pub fn one() -> Self {
        PMono { coeff: Q::one(), exps: [0; 11] }
    }

    pub fn constant(c: Q) -> Self {
        PMono { coeff: c, exps: [0; 11] }
    }

    fn root(slot: usize, e: i32) -> Self {
        let mut exps = [0; 11];
        exps[slot] = e;
        PMono { coeff: Q::one(), exps }
    }

    /// nu_i (u_i in the E8 family).
    pub fn nu(i: usize) -> Self {
        PMono::root(i - 1, 2)
    }

    pub fn m(i: usize) -> Self {
        PMono::root(i - 1, 1)
    }

    /// kappa_j (h_j in the E8 family).
    pub fn ka(j: usize) -> Self {
        PMono::root(7 + j, 2)
    }

    pub fn p() -> Self {
        PMono::root(10, 1)
    }

    pub fn q() -> Self {
        PMono::root(10, 2)
    }

    pub fn mul(&self, o: &PMono) -> PMono {
        PMono { coeff: &self.coeff * &o.coeff, exps: std::array::from_fn(|i| self.exps[i] + o.exps[i]) }
    }

    pub fn inv(&self) -> Result<PMono, AlgebraError> {
        if self.coeff.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(PMono { coeff: self.coeff.recip(), exps: self.exps.map(|e| -e) })
    }

    pub fn div(&self, o: &PMono) -> Result<PMono, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<PMono, AlgebraError> {
        let c = if k >= 0 { self.coeff.pow(k) } else { self.inv()?.coeff.pow(-k) };
        Ok(PMono { coeff: c, exps: self.exps.map(|e| e * k) })
    }

    /// Positive square root; all exponents must be even and the coefficient a rational square.
    pub fn sqrt(&self) -> Result<PMono, AlgebraError> {
        if self.exps.iter().any(|e| e % 2 != 0) || self.coeff.is_negative() {
            return Err(AlgebraError::OddExponent);
        }
        let rt = |n: &BigInt| -> Option<BigInt> {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        let c = match (rt(self.coeff.numer()), rt(self.coeff.denom())) {
            (Some(a), Some(b)) => Q::new(a, b),
            _ => return Err(AlgebraError::OddExponent),
        };
        Ok(PMono { coeff: c, exps: self.exps.map(|e| e / 2) })
    }

    /// Exchanges root slots (1-based) pairwise, applied in order.
    pub fn swapped(&self, swaps: &[(usize, usize)]) -> PMono {
        let mut out = self.clone();
        for &(a, b) in swaps {
            out.exps.swap(a - 1, b - 1);
        }
        out
    }

    pub fn scale(&self, c: Q) -> PMono {
        PMono { coeff: &self.coeff * c, exps: self.exps }
    }

    /// Value under the given parameter assignment.
    pub fn eval(&self, s: &Sym) -> RatFn {
        let mut acc = RatFn::constant(self.coeff.clone());
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                acc = &acc * &s.root(i).pow(e).expect("parameters are nonzero");
            }
        }
        acc
    }

    /// Exponent-array form with the family's symbol names, e.g. `p^3*m3^2`.
    pub fn render(&self, names: &[String; 11]) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.coeff.is_one() || self.exps.iter().all(|e| *e == 0) {
            parts.push(fmt_q(&self.coeff));
        }
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl std::ops::Mul for &PMono {
    type Output = PMono;
    fn mul(self, o: &PMono) -> PMono {
        PMono::mul(self, o)
    }
}

impl std::ops::Div for &PMono {
    type Output = PMono;
    fn div(self, o: &PMono) -> PMono {
        PMono::div(self, o).expect("nonzero monomial")
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [String; 11] = std::array::from_fn(|i| NAMES[i].to_string());
        f.write_str(&self.render(&names))
    }
}

impl fmt::Debug for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for an integer constant monomial.
pub fn pint(n: i64) -> PMono {
    PMono::constant(q(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binding::Family;

    #[test]
    fn sqrt_halves_exponents() {
        let h = &(&PMono::q() * &PMono::nu(6)) / &PMono::nu(5);
        let r = h.sqrt().unwrap();
        assert_eq!(r.exps[10], 1);
        assert_eq!(r.exps[5], 1);
        assert_eq!(r.exps[4], -1);
        assert!(PMono::p().sqrt().is_err());
        assert_eq!(PMono::constant(crate::algebra::qr(9, 4)).sqrt().unwrap().coeff, crate::algebra::qr(3, 2));
    }

    #[test]
    fn eval_matches_sym() {
        let s = Sym::symbolic(Family::D5);
        let m = &PMono::ka(1) / &(&PMono::p() * &PMono::nu(7));
        assert_eq!(m.eval(&s), &s.ka(1) / &(&s.p() * &s.nu(7)));
    }
}

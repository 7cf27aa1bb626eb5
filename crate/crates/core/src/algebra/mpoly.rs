use super::mono::Monomial;
use super::var::Var;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial over the rationals.
/// Terms are sorted by descending lex order and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Q)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: vec![(Monomial::one(), c)] }
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(q(n))
    }

    pub fn var(v: Var) -> Self {
        MPoly { terms: vec![(Monomial::var(v, 1), Q::one())] }
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut map: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => *e += c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_lex(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term in lex order.
    pub fn lt(&self) -> Option<(&Monomial, &Q)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lc(&self) -> Q {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree(v)).max()
    }

    /// Lowest power of v present, None for the zero polynomial.
    pub fn min_degree(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree(v)).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.degree(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.vars().collect::<Vec<_>>()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    /// Divides every monomial by m (which must divide all of them).
    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, c) in &self.terms {
            terms.push((a.div(m)?, c.clone()));
        }
        Some(MPoly { terms })
    }

    fn merge(&self, o: &MPoly, negate: bool) -> MPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_lex(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly { terms: out }
    }

    pub fn mul_poly(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if self.is_constant() {
            return o.scale(&self.terms[0].1);
        }
        if o.is_constant() {
            return self.scale(&o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        let mut map: HashMap<Monomial, Q> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_lex(&a.0));
        MPoly { terms }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        result
    }

    /// Coefficients with respect to v: result[k] is the coefficient of v^k.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let d = match self.degree(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_by(|a, b| b.0.cmp_lex(&a.0));
                MPoly { terms: ts }
            })
            .collect()
    }

    pub fn coeff_of(&self, v: Var, k: u32) -> MPoly {
        let mut ts: Vec<(Monomial, Q)> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split(v);
                (e == k).then(|| (rest, c.clone()))
            })
            .collect();
        ts.sort_by(|a, b| b.0.cmp_lex(&a.0));
        MPoly { terms: ts }
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &c.mul_monomial(&Monomial::var(v, k as u32));
            }
        }
        acc
    }

    /// Substitutes a rational number for v.
    pub fn eval(&self, v: Var, val: &Q) -> MPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut pows: Vec<Q> = vec![Q::one()];
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let (e, rest) = m.split(v);
            while pows.len() <= e as usize {
                let nx = pows.last().unwrap() * val;
                pows.push(nx);
            }
            (rest, c * &pows[e as usize])
        }))
    }

    pub fn eval_many(&self, vals: &[(Var, Q)]) -> MPoly {
        let mut out = self.clone();
        for (v, x) in vals {
            out = out.eval(*v, x);
        }
        out
    }

    /// Substitutes a polynomial for v (Horner in v).
    pub fn compose(&self, v: Var, r: &MPoly) -> MPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = MPoly::zero();
        for c in cs.iter().rev() {
            acc = &acc.mul_poly(r) + c;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split(v);
            (e > 0).then(|| (rest.mul(&Monomial::var(v, e - 1)), c * q(e as i64)))
        }))
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(),
        };
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn rational_content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        Q::new(num, den)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> (Q, MPoly) {
        if self.is_zero() {
            return (Q::one(), MPoly::zero());
        }
        let lc = self.lc();
        (lc.clone(), self.scale(&lc.recip()))
    }

    /// Primitive integer form with positive leading coefficient.
    pub fn primitive(&self) -> (Q, MPoly) {
        if self.is_zero() {
            return (Q::one(), MPoly::zero());
        }
        let mut c = self.rational_content();
        if self.lc().is_negative() {
            c = -c;
        }
        (c.clone(), self.scale(&c.recip()))
    }

    /// Exact division; None when d does not divide self.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.is_constant() {
            return Some(self.scale(&d.terms[0].1.recip()));
        }
        if d.terms.len() == 1 {
            let inv = d.terms[0].1.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(&d.terms[0].0)?, c * &inv));
            }
            return Some(MPoly { terms });
        }
        if !d.terms.last().unwrap().0.divides(&self.terms.last().unwrap().0) {
            return None;
        }
        for v in d.vars() {
            if self.degree(v).unwrap_or(0) < d.degree(v).unwrap_or(0) {
                return None;
            }
        }
        let (dm, dc) = (&d.terms[0].0, d.terms[0].1.clone());
        let dinv = dc.recip();
        let mut r = self.clone();
        let mut quot: Vec<(Monomial, Q)> = Vec::new();
        while !r.is_zero() {
            let (rm, rc) = (&r.terms[0].0, &r.terms[0].1);
            let m = rm.div(dm)?;
            let c = rc * &dinv;
            r = r.merge(&d.mul_term(&m, &c), true);
            quot.push((m, c));
        }
        quot.sort_by(|a, b| b.0.cmp_lex(&a.0));
        Some(MPoly { terms: quot })
    }

    /// Lowest total degree part in v: returns (v-valuation, coefficient polynomial without v).
    pub fn lowest_in(&self, v: Var) -> Option<(u32, MPoly)> {
        let k = self.min_degree(v)?;
        Some((k, self.coeff_of(v, k)))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.merge(o, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.merge(o, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.mul_poly(o)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

pub(crate) fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var::vars::*;

    fn z() -> MPoly {
        MPoly::var(Z)
    }

    #[test]
    fn expand_difference_of_squares() {
        let a = &z() - &MPoly::int(1);
        let b = &z() + &MPoly::int(1);
        let p = &a * &b;
        assert_eq!(p, &z().pow(2) - &MPoly::int(1));
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&z() - &MPoly::int(2))).is_none());
    }

    #[test]
    fn multivariate_exact_division() {
        let g = MPoly::var(G1);
        let a = &(&z() * &g) + &MPoly::int(3);
        let b = &(&z() - &g) + &MPoly::constant(qr(1, 2));
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
    }

    #[test]
    fn coefficients_and_eval() {
        let g = MPoly::var(G1);
        let p = &(&z().pow(2) * &g) + &(&z() * &MPoly::int(5));
        let cs = p.coeffs_in(Z);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[2], g);
        assert_eq!(MPoly::from_coeffs_in(Z, &cs), p);
        let e = p.eval(Z, &q(2));
        assert_eq!(e, &(&g * &MPoly::int(4)) + &MPoly::int(10));
    }

    #[test]
    fn compose_and_derivative() {
        let p = &z().pow(3) - &z();
        let r = &z() + &MPoly::int(1);
        let c = p.compose(Z, &r);
        assert_eq!(c.eval(Z, &q(0)), MPoly::zero());
        assert_eq!(p.derivative(Z), &z().pow(2).scale(&q(3)) - &MPoly::int(1));
    }

    #[test]
    fn contents() {
        let p = &z().pow(2).scale(&qr(3, 2)) + &z().scale(&q(6));
        assert_eq!(p.monomial_content(), Monomial::var(Z, 1));
        assert_eq!(p.rational_content(), qr(3, 2));
        assert_eq!(p.primitive().1, &z().pow(2) + &z().scale(&q(4)));
    }
}

use super::gcd;
use super::mono::Monomial;
use super::mpoly::{fmt_q, MPoly, Q};
use super::var::Var;
use super::AlgebraError;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Denominator kept as monomial times a product of normalized polynomial factors.
/// Each factor has leading coefficient 1, no monomial content, and is not constant.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
struct Den {
    mono: Monomial,
    factors: Vec<(MPoly, u32)>,
}

fn cmp_poly(a: &MPoly, b: &MPoly) -> Ordering {
    let (ta, tb) = (a.terms(), b.terms());
    match ta.len().cmp(&tb.len()) {
        Ordering::Equal => {}
        o => return o,
    }
    for ((ma, ca), (mb, cb)) in ta.iter().zip(tb.iter()) {
        match ma.cmp_lex(mb) {
            Ordering::Equal => {}
            o => return o,
        }
        match ca.cmp(cb) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Splits p = c * m * f with f normalized; f is None when p is a monomial.
fn split_factor(p: &MPoly) -> (Q, Monomial, Option<MPoly>) {
    let m = p.monomial_content();
    let rest = p.div_monomial(&m).unwrap();
    let (c, f) = rest.monic();
    if f.is_constant() {
        (c, m, None)
    } else {
        (c, m, Some(f))
    }
}

impl Den {
    fn one() -> Self {
        Den::default()
    }

    fn is_one(&self) -> bool {
        self.mono.is_one() && self.factors.is_empty()
    }

    fn insert(&mut self, f: MPoly, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by(|(g, _)| cmp_poly(g, &f)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (f, e)),
        }
    }

    fn mul(&self, o: &Den) -> Den {
        let mut out = self.clone();
        out.mono = out.mono.mul(&o.mono);
        for (f, e) in &o.factors {
            out.insert(f.clone(), *e);
        }
        out
    }

    fn lcm(&self, o: &Den) -> Den {
        let mut out = self.clone();
        out.mono = out.mono.lcm(&o.mono);
        for (f, e) in &o.factors {
            match out.factors.binary_search_by(|(g, _)| cmp_poly(g, f)) {
                Ok(i) => out.factors[i].1 = out.factors[i].1.max(*e),
                Err(i) => out.factors.insert(i, (f.clone(), *e)),
            }
        }
        out
    }

    /// Expanded quotient self / o, assuming o divides self factorwise.
    fn cofactor(&self, o: &Den) -> MPoly {
        let mono = self.mono.div(&o.mono).expect("monomial cofactor");
        let mut acc = MPoly::term(mono, Q::one());
        for (f, e) in &self.factors {
            let k = match o.factors.binary_search_by(|(g, _)| cmp_poly(g, f)) {
                Ok(i) => e - o.factors[i].1,
                Err(_) => *e,
            };
            if k > 0 {
                acc = &acc * &f.pow(k);
            }
        }
        acc
    }

    fn expand(&self) -> MPoly {
        let mut acc = MPoly::term(self.mono.clone(), Q::one());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    fn pow(&self, k: u32) -> Den {
        Den {
            mono: self.mono.pow(k),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
        }
    }
}

/// Rational function num / den over Q with a factored denominator.
/// Not kept in lowest terms; equality is decided by cross multiplication.
#[derive(Clone, Default)]
pub struct RatFn {
    num: MPoly,
    den: Den,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: MPoly::zero(), den: Den::one() }
    }

    pub fn one() -> Self {
        RatFn::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn { num: p, den: Den::one() }
    }

    pub fn constant(c: Q) -> Self {
        RatFn::from_poly(MPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFn::from_poly(MPoly::int(n))
    }

    pub fn var(v: Var) -> Self {
        RatFn::from_poly(MPoly::var(v))
    }

    /// n / d, failing when d is the zero polynomial.
    pub fn new(n: MPoly, d: MPoly) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c, m, f) = split_factor(&d);
        let mut den = Den { mono: m, factors: Vec::new() };
        if let Some(f) = f {
            den.insert(f, 1);
        }
        let mut r = RatFn { num: n.scale(&c.recip()), den };
        r.cancel_all();
        Ok(r)
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    /// Expanded denominator polynomial.
    pub fn denom(&self) -> MPoly {
        self.den.expand()
    }

    /// Denominator factors with multiplicities, monomial part excluded.
    pub fn den_factors(&self) -> impl Iterator<Item = (&MPoly, u32)> {
        self.den.factors.iter().map(|(f, e)| (f, *e))
    }

    pub fn den_monomial(&self) -> &Monomial {
        &self.den.mono
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.mono.vars());
        for (f, _) in &self.den.factors {
            vs.extend(f.vars());
        }
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v)
            || self.den.mono.degree(v) > 0
            || self.den.factors.iter().any(|(f, _)| f.contains_var(v))
    }

    fn from_parts(num: MPoly, den: Den) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        RatFn { num, den }
    }

    fn cancel_monomial(&mut self) {
        if self.den.mono.is_one() {
            return;
        }
        let g = self.num.monomial_content().gcd(&self.den.mono);
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).unwrap();
            self.den.mono = self.den.mono.div(&g).unwrap();
        }
    }

    fn cancel_all(&mut self) {
        if self.num.is_zero() {
            self.den = Den::one();
            return;
        }
        self.cancel_monomial();
        let mut keep = Vec::with_capacity(self.den.factors.len());
        for (f, e) in std::mem::take(&mut self.den.factors) {
            let mut e = e;
            while e > 0 {
                match self.num.div_exact(&f) {
                    Some(qt) => {
                        self.num = qt;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                keep.push((f, e));
            }
        }
        self.den.factors = keep;
    }

    /// Divides num by those factors of d that divide it; returns the reduced numerator and leftover d.
    fn cancel_against(num: &MPoly, d: &Den) -> (MPoly, Den) {
        let mut n = num.clone();
        let mut left = Den { mono: Monomial::one(), factors: Vec::new() };
        let g = n.monomial_content().gcd(&d.mono);
        if !g.is_one() {
            n = n.div_monomial(&g).unwrap();
        }
        left.mono = d.mono.div(&g).unwrap();
        for (f, e) in &d.factors {
            let mut e = *e;
            while e > 0 {
                match n.div_exact(f) {
                    Some(qt) => {
                        n = qt;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                left.factors.push((f.clone(), e));
            }
        }
        (n, left)
    }

    pub fn mul_ref(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn::from_poly(&self.num * &o.num);
        }
        let (an, bd) = RatFn::cancel_against(&self.num, &o.den);
        let (bn, ad) = RatFn::cancel_against(&o.num, &self.den);
        RatFn::from_parts(&an * &bn, ad.mul(&bd))
    }

    fn add_impl(&self, o: &RatFn, negate: bool) -> RatFn {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -o } else { o.clone() };
        }
        if self.den == o.den {
            let n = if negate { &self.num - &o.num } else { &self.num + &o.num };
            let mut r = RatFn::from_parts(n, self.den.clone());
            r.cancel_all();
            return r;
        }
        let l = self.den.lcm(&o.den);
        let a = &self.num * &l.cofactor(&self.den);
        let b = &o.num * &l.cofactor(&o.den);
        let n = if negate { &a - &b } else { &a + &b };
        let mut r = RatFn::from_parts(n, l);
        r.cancel_all();
        r
    }

    pub fn inv(&self) -> Result<RatFn, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c, m, f) = split_factor(&self.num);
        let mut den = Den { mono: m, factors: Vec::new() };
        if let Some(f) = f {
            den.insert(f, 1);
        }
        let n = self.den.expand().scale(&c.recip());
        let mut r = RatFn::from_parts(n, den);
        r.cancel_all();
        Ok(r)
    }

    pub fn div_ref(&self, o: &RatFn) -> Result<RatFn, AlgebraError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RatFn, AlgebraError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        if k == 0 {
            return Ok(RatFn::one());
        }
        Ok(RatFn::from_parts(self.num.pow(k), self.den.pow(k)))
    }

    pub fn scale(&self, c: &Q) -> RatFn {
        RatFn::from_parts(self.num.scale(c), self.den.clone())
    }

    /// Exact equality by cross multiplication over the common denominator.
    pub fn eq_val(&self, o: &RatFn) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let l = self.den.lcm(&o.den);
        &self.num * &l.cofactor(&self.den) == &o.num * &l.cofactor(&o.den)
    }

    /// Fully reduced numerator and denominator (multivariate gcd), denominator with positive leading coefficient.
    pub fn reduced_pair(&self) -> (MPoly, MPoly) {
        let d = self.den.expand();
        let (n, d) = gcd::reduce_pair(&self.num, &d);
        let (c, d) = d.monic();
        (n.scale(&c.recip()), d)
    }

    /// Replaces this value by its lowest-terms form.
    pub fn reduce(&self) -> RatFn {
        let (n, d) = self.reduced_pair();
        RatFn::new(n, d).expect("nonzero denominator")
    }

    /// Substitutes a rational number for v.
    pub fn eval(&self, v: Var, val: &Q) -> Result<RatFn, AlgebraError> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let mut acc = RatFn::from_poly(self.num.eval(v, val));
        let md = self.den.mono.degree(v);
        let rest_mono = self.den.mono.split(v).1;
        if md > 0 {
            if val.is_zero() {
                return Err(AlgebraError::DenominatorVanishes);
            }
            acc = acc.scale(&val.pow(md as i32).recip());
        }
        let mut den = Den { mono: rest_mono, factors: Vec::new() };
        let mut extra = RatFn::one();
        for (f, e) in &self.den.factors {
            if f.contains_var(v) {
                let fv = f.eval(v, val);
                if fv.is_zero() {
                    return Err(AlgebraError::DenominatorVanishes);
                }
                extra = extra.mul_ref(&RatFn::new(MPoly::one(), fv)?.pow(*e as i32)?);
            } else {
                den.insert(f.clone(), *e);
            }
        }
        let base = RatFn { num: acc.num.clone(), den: acc.den.mul(&den) };
        let mut r = base.mul_ref(&extra);
        r.cancel_all();
        Ok(r)
    }

    pub fn eval_many(&self, vals: &[(Var, Q)]) -> Result<RatFn, AlgebraError> {
        let mut out = self.clone();
        for (v, x) in vals {
            out = out.eval(*v, x)?;
        }
        Ok(out)
    }

    /// Substitutes a rational function for v.
    pub fn subs(&self, v: Var, r: &RatFn) -> Result<RatFn, AlgebraError> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        if let Some(c) = r.as_constant() {
            return self.eval(v, &c);
        }
        let mut acc = subs_poly(&self.num, v, r);
        let (md, rest_mono) = self.den.mono.split(v);
        if md > 0 {
            acc = acc.div_ref(&r.pow(md as i32)?)?;
        }
        let mut den = Den { mono: rest_mono, factors: Vec::new() };
        for (f, e) in &self.den.factors {
            if f.contains_var(v) {
                let fr = subs_poly(f, v, r);
                acc = acc.div_ref(&fr.pow(*e as i32)?)?;
            } else {
                den.insert(f.clone(), *e);
            }
        }
        let (n, left) = RatFn::cancel_against(&acc.num, &den);
        let mut out = RatFn::from_parts(n, acc.den.mul(&left));
        out.cancel_all();
        Ok(out)
    }

    /// Substitutes several rational functions simultaneously.
    pub fn subs_many(&self, map: &[(Var, RatFn)]) -> Result<RatFn, AlgebraError> {
        for (v, _) in map {
            for (_, r) in map {
                if r.contains_var(*v) {
                    return Err(AlgebraError::CyclicSubstitution(v.name()));
                }
            }
        }
        let mut out = self.clone();
        for (v, r) in map {
            out = out.subs(*v, r)?;
        }
        Ok(out)
    }

    /// Order of vanishing at v = 0 (negative for a pole); None for zero.
    pub fn valuation(&self, v: Var) -> Option<i64> {
        let n = self.num.min_degree(v)? as i64;
        Some(n - self.den.mono.degree(v) as i64)
    }

    /// Coefficient of v^k in the expansion at v = 0, assuming valuation >= k.
    pub fn coeff_at_zero(&self, v: Var, k: i64) -> Result<RatFn, AlgebraError> {
        let val = match self.valuation(v) {
            None => return Ok(RatFn::zero()),
            Some(x) => x,
        };
        if val < k {
            return Err(AlgebraError::NegativeValuation { var: v.name(), valuation: val });
        }
        if val > k {
            return Ok(RatFn::zero());
        }
        let md = self.den.mono.degree(v) as i64;
        let num = self.num.coeff_of(v, (k + md) as u32);
        let tmp = RatFn {
            num,
            den: Den { mono: self.den.mono.split(v).1, factors: self.den.factors.clone() },
        };
        tmp.eval(v, &Q::zero())
    }

    pub fn derivative(&self, v: Var) -> RatFn {
        if !self.contains_var(v) {
            return RatFn::zero();
        }
        let dn = RatFn::from_parts(self.num.derivative(v), self.den.clone());
        let mut t = RatFn::zero();
        let md = self.den.mono.degree(v);
        if md > 0 {
            t = t.add_impl(&RatFn::new(MPoly::int(md as i64), MPoly::var(v)).unwrap(), false);
        }
        for (f, e) in &self.den.factors {
            if f.contains_var(v) {
                let term = RatFn::new(f.derivative(v).scale(&Q::from_integer((*e).into())), f.clone()).unwrap();
                t = t.add_impl(&term, false);
            }
        }
        let mut dn = dn;
        dn.cancel_all();
        dn.add_impl(&self.mul_ref(&t), true)
    }

    /// True when the value does not depend on v.
    pub fn is_free_of(&self, v: Var) -> bool {
        !self.contains_var(v) || self.derivative(v).is_zero()
    }

    /// Numerators after multiplying every entry by a common multiple of the denominators.
    pub fn clear_denominators(rs: &[&RatFn]) -> Vec<MPoly> {
        let mut l = Den::one();
        for r in rs {
            l = l.lcm(&r.den);
        }
        rs.iter().map(|r| &r.num * &l.cofactor(&r.den)).collect()
    }

    pub fn degree_bounds(&self, v: Var) -> (u32, u32) {
        let d = self.den.mono.degree(v)
            + self.den.factors.iter().map(|(f, e)| f.degree(v).unwrap_or(0) * e).sum::<u32>();
        (self.num.degree(v).unwrap_or(0), d)
    }
}

fn subs_poly(p: &MPoly, v: Var, r: &RatFn) -> RatFn {
    let cs = p.coeffs_in(v);
    if cs.is_empty() {
        return RatFn::zero();
    }
    let d = cs.len() - 1;
    let rn = &r.num;
    let rd = r.den.expand();
    let mut acc = MPoly::zero();
    let mut npow = MPoly::one();
    let mut dpows = vec![MPoly::one()];
    for _ in 0..d {
        let nx = dpows.last().unwrap() * &rd;
        dpows.push(nx);
    }
    for (k, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(&(c * &npow) * &dpows[d - k]);
        }
        if k < d {
            npow = &npow * rn;
        }
    }
    let mut out = RatFn::from_parts(acc, r.den.pow(d as u32));
    out.cancel_all();
    out
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        self.eq_val(o)
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl From<Q> for RatFn {
    fn from(c: Q) -> Self {
        RatFn::constant(c)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        self.add_impl(o, false)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self.add_impl(o, true)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        self.mul_ref(o)
    }
}

/// Panics on division by zero; use `div_ref` for the fallible form.
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        self.div_ref(o).expect("division by the zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn { (&self).$m(&o) }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, o: &RatFn) -> RatFn { (&self).$m(o) }
        }
        impl $tr<RatFn> for &RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

fn fmt_den(d: &Den, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts = Vec::new();
    if !d.mono.is_one() {
        parts.push(format!("{}", d.mono));
    }
    for (p, e) in &d.factors {
        if *e == 1 {
            parts.push(format!("({})", p));
        } else {
            parts.push(format!("({})^{}", p, e));
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 && self.num.terms()[0].0.is_one() {
            write!(f, "{}/(", fmt_q(&self.num.terms()[0].1))?;
        } else {
            write!(f, "({})/(", self.num)?;
        }
        fmt_den(&self.den, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{q, qr};
    use crate::algebra::var::vars::*;

    fn z() -> RatFn {
        RatFn::var(Z)
    }
    fn y() -> RatFn {
        RatFn::var(G1)
    }

    #[test]
    fn additive_identity() {
        let a = &z() / &y();
        assert_eq!(&a + &RatFn::zero(), a);
    }

    #[test]
    fn multiplicative_inverse() {
        let a = &z() / &y();
        let b = &y() / &z();
        assert_eq!(&a * &b, RatFn::one());
        assert!((&a * &b).as_constant().is_some());
    }

    #[test]
    fn factor_cancellation() {
        let n = &z().pow(2).unwrap() - &RatFn::one();
        let d = &z() - &RatFn::one();
        let r = &n / &d;
        assert_eq!(r, &z() + &RatFn::one());
        assert!(r.is_polynomial());
    }

    #[test]
    fn distinct_values_differ() {
        let a = z();
        let b = &z() + &RatFn::var(EPS);
        assert_ne!(a, b);
    }

    #[test]
    fn division_by_zero_errors() {
        assert!(RatFn::one().div_ref(&RatFn::zero()).is_err());
        assert!(RatFn::new(MPoly::one(), MPoly::zero()).is_err());
    }

    #[test]
    fn substitution_and_eval() {
        let r = &RatFn::one() / &(&z() - &y());
        let s = r.subs(G1, &(&z() * &RatFn::int(2))).unwrap();
        assert_eq!(s, &RatFn::int(-1) / &z());
        assert!(r.eval(Z, &q(0)).unwrap() == &RatFn::int(-1) / &y());
        let bad = r.eval(Z, &q(3)).unwrap().eval(G1, &q(3));
        assert!(matches!(bad, Err(AlgebraError::DenominatorVanishes)));
    }

    #[test]
    fn valuation_and_leading_coefficient() {
        let f = RatFn::var(F1);
        let r = &(&f * &z()) / &(&f.pow(3).unwrap() + &f.pow(2).unwrap());
        assert_eq!(r.valuation(F1), Some(-1));
        assert_eq!(r.coeff_at_zero(F1, -1).unwrap(), z());
    }

    #[test]
    fn derivative_quotient_rule() {
        let r = &z() / &(&z() + &RatFn::constant(qr(1, 2)));
        let d = r.derivative(Z);
        let expect = &RatFn::constant(qr(1, 2)) / &(&z() + &RatFn::constant(qr(1, 2))).pow(2).unwrap();
        assert_eq!(d, expect);
        assert!(!r.is_free_of(Z));
        assert!((&(&z() * &y()) / &(&z() * &RatFn::int(3))).is_free_of(Z));
    }

    #[test]
    fn reduce_cancels_hidden_factor() {
        let a = &(&z() - &y()) * &(&z() + &RatFn::one());
        let b = RatFn::new(MPoly::one(), (&(&MPoly::var(Z) - &MPoly::var(G1)) * &MPoly::var(K1)).clone()).unwrap();
        let r = (&a * &b).reduce();
        assert_eq!(r, &(&z() + &RatFn::one()) / &RatFn::var(K1));
    }
}

//! Recursive primitive pseudo-remainder gcd over Q[x1, ..., xn].

use super::mono::Monomial;
use super::mpoly::{MPoly, Q};
use super::var::Var;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::HashMap;

const PRIME: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    powm(a, PRIME - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(PRIME);
    (((n % &m) + &m) % &m).to_u64().expect("reduced below the modulus")
}

fn q_mod(c: &Q) -> Option<u64> {
    let d = int_mod(c.denom());
    (d != 0).then(|| mulm(int_mod(c.numer()), invm(d)))
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut x = *state;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Dense image of p in F_P[x] with every other variable set from `point`.
fn image(p: &MPoly, x: Var, point: &HashMap<Var, u64>) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree(x).unwrap_or(0) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = q_mod(c)?;
        let mut k = 0usize;
        for (v, e) in m.iter() {
            if *v == x {
                k = *e as usize;
            } else {
                t = mulm(t, powm(point[v], *e as u64));
            }
        }
        out[k] = (out[k] + t) % PRIME;
    }
    Some(out)
}

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn uni_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        let inv = invm(*b.last().unwrap());
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let f = mulm(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mulm(f, *bi)) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// An upper bound on deg_x gcd(a, b), certified by a specialization keeping both leading coefficients alive.
fn degree_bound(a: &MPoly, b: &MPoly, x: Var, vars: &[Var]) -> Option<usize> {
    let (da, db) = (a.degree(x)? as usize, b.degree(x)? as usize);
    let mut state = 0x5eed ^ (x.0 as u64);
    for _ in 0..4 {
        let point: HashMap<Var, u64> = vars.iter().map(|v| (*v, splitmix(&mut state) % PRIME)).collect();
        let (Some(ia), Some(ib)) = (image(a, x, &point), image(b, x, &point)) else { return None };
        if ia[da] != 0 && ib[db] != 0 {
            return Some(uni_gcd_degree(ia, ib));
        }
    }
    None
}

/// Coefficients of p with respect to every variable outside `keep`.
fn coefficients_outside(p: &MPoly, keep: &[Var]) -> Vec<MPoly> {
    let mut groups: HashMap<Monomial, Vec<(Monomial, Q)>> = HashMap::new();
    for (m, c) in p.terms() {
        let (inside, outside): (Vec<(Var, u32)>, Vec<(Var, u32)>) = m.iter().partition(|(v, _)| keep.contains(v));
        groups
            .entry(Monomial::from_pairs(outside))
            .or_default()
            .push((Monomial::from_pairs(inside), c.clone()));
    }
    groups.into_values().map(MPoly::from_terms).collect()
}

/// Restricts the gcd to the variables it can involve; None when every shared variable may occur.
fn modular_shortcut(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let mut vars = a.vars();
    vars.extend(b.vars());
    vars.sort();
    vars.dedup();
    let mut keep = Vec::new();
    for &x in &vars {
        if a.contains_var(x) && b.contains_var(x) && degree_bound(a, b, x, &vars).is_none_or(|d| d > 0) {
            keep.push(x);
        }
    }
    if keep.is_empty() {
        return Some(MPoly::one());
    }
    if keep.len() == vars.len() {
        return None;
    }
    let mut parts = coefficients_outside(a, &keep);
    parts.extend(coefficients_outside(b, &keep));
    parts.sort_by_key(|p| p.len());
    let mut g = MPoly::zero();
    for c in &parts {
        g = gcd(&g, c);
        if g.is_constant() {
            return Some(MPoly::one());
        }
    }
    Some(g)
}

fn normalize(p: MPoly) -> MPoly {
    if p.is_zero() {
        return p;
    }
    let (_, pp) = p.primitive();
    pp
}

/// The shared variable of least degree, which keeps the remainder sequence short.
fn main_var(a: &MPoly, b: &MPoly) -> Option<Var> {
    let mut vs = a.vars();
    vs.extend(b.vars());
    let shared = vs.iter().copied().filter(|v| a.contains_var(*v) && b.contains_var(*v));
    let key = |v: &Var| (a.degree(*v).max(b.degree(*v)), *v);
    shared.min_by_key(key).or_else(|| vs.into_iter().min())
}

/// Gcd of the coefficients of p viewed as a polynomial in v.
pub fn content_in(p: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

/// Primitive part of p with respect to v.
pub fn primitive_part_in(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(p, v);
    normalize(p.div_exact(&c).expect("content divides"))
}

/// Pseudo-remainder of a by b in v.
pub fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.degree(v).unwrap_or(0);
    let bc = b.coeffs_in(v);
    let lcb = bc[db as usize].clone();
    let mut r = a.clone();
    loop {
        let dr = match r.degree(v) {
            Some(d) if !r.is_zero() && d >= db => d,
            _ => break,
        };
        let lcr = r.coeff_of(v, dr);
        let shift = Monomial::var(v, dr - db);
        r = &(&r * &lcb) - &(&(b * &lcr)).mul_monomial(&shift);
    }
    r
}

/// Greatest common divisor, normalized to integer-primitive form with positive leading coefficient.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).unwrap();
    let b1 = b.div_monomial(&mb).unwrap();
    let core = gcd_no_monomial(&a1, &b1);
    normalize(core.mul_monomial(&mg))
}

fn gcd_no_monomial(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return normalize(a.clone());
    }
    if let Some(g) = modular_shortcut(a, b) {
        return normalize(g);
    }
    let v = match main_var(a, b) {
        Some(v) => v,
        None => return MPoly::one(),
    };
    let (ina, inb) = (a.contains_var(v), b.contains_var(v));
    if !ina {
        return gcd(a, &content_in(b, v));
    }
    if !inb {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p0 = normalize(a.div_exact(&ca).unwrap());
    let mut p1 = normalize(b.div_exact(&cb).unwrap());
    if p0.degree(v) < p1.degree(v) {
        std::mem::swap(&mut p0, &mut p1);
    }
    loop {
        if p0.div_exact(&p1).is_some() {
            break;
        }
        let r = prem(&p0, &p1, v);
        if r.is_zero() {
            break;
        }
        if r.degree(v) == Some(0) {
            return normalize(c);
        }
        p0 = p1;
        p1 = primitive_part_in(&r, v);
    }
    normalize(&c * &primitive_part_in(&p1, v))
}

/// Gcd in z over the fraction field of the remaining indeterminates, as its primitive representative.
pub fn univariate_gcd_in(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let g = gcd(a, b);
    if !g.contains_var(v) {
        return MPoly::one();
    }
    primitive_part_in(&g, v)
}

/// Cancels the gcd of numerator and denominator.
pub fn reduce_pair(n: &MPoly, d: &MPoly) -> (MPoly, MPoly) {
    let g = gcd(n, d);
    if g.is_constant() {
        return (n.clone(), d.clone());
    }
    (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::q;
    use crate::algebra::var::vars::*;

    fn z() -> MPoly {
        MPoly::var(Z)
    }

    #[test]
    fn idempotent_on_linear() {
        let a = &z() - &MPoly::var(m(1));
        assert_eq!(gcd(&a, &a), a);
    }

    #[test]
    fn powers_of_z() {
        assert_eq!(gcd(&z().pow(2), &z().pow(3)), z().pow(2));
    }

    #[test]
    fn common_factor_recovered() {
        let g = MPoly::var(G1);
        let f = &(&z() * &g) - &MPoly::int(2);
        let a = &f * &(&z() + &MPoly::int(3));
        let b = &f * &(&g.pow(2) + &z());
        let d = gcd(&a, &b);
        assert!(d == f || d == -&f);
    }

    #[test]
    fn modular_degree_bound_is_exact_here() {
        let (k, g) = (MPoly::var(K1), MPoly::var(G1));
        let f = &(&z() * &k) - &g;
        let a = &f * &(&z() + &MPoly::int(3));
        let b = &(&f * &f) * &(&k + &z().pow(2));
        let vars = [Z, G1, K1];
        assert_eq!(degree_bound(&a, &b, Z, &vars), Some(1));
        assert_eq!(degree_bound(&a, &b, K1, &vars), Some(1));
        let c = &(&z() - &k) * &(&k + &MPoly::int(1));
        let d = &(&z() + &k) * &(&k + &MPoly::int(1));
        assert_eq!(degree_bound(&c, &d, Z, &[Z, K1]), Some(0));
        assert_eq!(gcd(&c, &d), &k + &MPoly::int(1));
    }

    #[test]
    fn coprime_gives_one() {
        let a = &z().pow(2) + &MPoly::int(1);
        let b = &z() - &MPoly::int(1);
        assert!(gcd(&a, &b).is_one());
        let c = prem(&a, &b, Z);
        assert_eq!(c, MPoly::constant(q(2)));
    }

    #[test]
    fn univariate_drops_parameter_content() {
        let k = MPoly::var(K1);
        let a = &k * &(&z() - &MPoly::int(1));
        let b = &k * &(&z().pow(2) - &MPoly::int(1));
        assert_eq!(univariate_gcd_in(&a, &b, Z), &z() - &MPoly::int(1));
        assert_eq!(gcd(&a, &b), &k * &(&z() - &MPoly::int(1)));
    }
}

//! Flat evaluators of the displayed L1 operators over plain rationals, kept apart from the library code.

use super::{binding, is_zero, rng, small_q};
use qheun::algebra::vars::Z;
use qheun::algebra::{q, Family, ParamBinding, RatFn, Sym, Q};
use qheun::lax::{l1_d5, l1_e6, l1_e7, E8Aux};

struct P {
    nu: [Q; 9],
    k1: Q,
    k2: Q,
    q: Q,
}

fn params(b: &ParamBinding) -> P {
    let sq = |x: &Q| x * x;
    let mut nu: [Q; 9] = std::array::from_fn(|_| q(0));
    for i in 1..=8 {
        nu[i] = sq(&b.values[i - 1]);
    }
    P { nu, k1: sq(&b.values[8]), k2: sq(&b.values[9]), q: sq(&b.values[10]) }
}

fn prod(xs: impl IntoIterator<Item = Q>) -> Q {
    xs.into_iter().fold(q(1), |a, b| a * b)
}

/// Returns None when the point hits a pole of the display.
fn div(a: Q, b: Q) -> Option<Q> {
    if is_zero(&b) {
        None
    } else {
        Some(a / b)
    }
}

// L1 = {z(g nu1 - 1)(g nu2 - 1)/(q g) - nu1 nu2 nu3 nu4 (g - nu5/k2)(g - nu6/k2)/(f g)}
//      + A (g - T^-1) + B (1/g - T)
fn flat_d5(p: &P, f: &Q, g: &Q, z: &Q) -> Option<[Q; 3]> {
    let n = &p.nu;
    let one = q(1);
    let brace = div(z * (g * &n[1] - &one) * (g * &n[2] - &one), &p.q * g)?
        - div(
            &n[1] * &n[2] * &n[3] * &n[4] * (g - div(n[5].clone(), p.k2.clone())?) * (g - div(n[6].clone(), p.k2.clone())?),
            f * g,
        )?;
    let a = div(&n[1] * &n[2] * (z - &p.q * &n[3]) * (z - &p.q * &n[4]), &p.q * (&p.q * f - z))?;
    let b = div(
        (z - div(p.k1.clone(), n[7].clone())?) * (z - div(p.k1.clone(), n[8].clone())?),
        &p.q * (f - z),
    )?;
    let a0 = brace + &a * g + div(b.clone(), g.clone())?;
    Some([-a, a0, -b])
}

// L1 = z prod(g nu_i - 1)/(g(fg - 1)(gz - q)) - (g k2/nu5 - 1)(g k2/nu6 - 1) k1^2/(q f g nu7 nu8)
//      + C {g/(1 - g z/q) - T^-1} + D {(1/g - z) - T}
fn flat_e6(p: &P, f: &Q, g: &Q, z: &Q) -> Option<[Q; 3]> {
    let n = &p.nu;
    let one = q(1);
    let zq = div(z.clone(), p.q.clone())?;
    let t1 = div(z * prod((1..=4).map(|i| g * &n[i] - &one)), g * (f * g - &one) * (g * z - &p.q))?;
    let t2 = div(
        (div(g * &p.k2, n[5].clone())? - &one) * (div(g * &p.k2, n[6].clone())? - &one) * &p.k1 * &p.k1,
        &p.q * f * g * &n[7] * &n[8],
    )?;
    let c = div(prod((1..=4).map(|i| &n[i] - &zq)), f - &zq)?;
    let d = div(
        (div(p.k1.clone(), n[7].clone())? - z) * (div(p.k1.clone(), n[8].clone())? - z),
        &p.q * (f - z),
    )?;
    let a0 = t1 - t2 + &c * div(g.clone(), &one - g * &zq)? + &d * (div(one.clone(), g.clone())? - z);
    Some([-c, a0, -d])
}

// L1 = q(k1 - k2) prod_{5..8}(g k2 - nu_i)/(g k1 k2^2 (f g k2 - k1)(g k2 z - k1))
//      - q(k1 - k2) prod_{1..4}(g nu_i - 1)/(g(fg - 1) k1 nu1 nu2 nu3 nu4 (gz - q))
//      + prod(q nu_i - z){(g k2 z - k1 q) - k1 (gz - q) T^-1}/(q k1 nu1..nu4 (f q - z) z^2 (q - g z))
//      - q prod(k1 - nu_i z){k1 (g z - 1) - (g k2 z - k1) T}/(k1^4 (f - z) z^2 (g k2 z - k1))
fn flat_e7(p: &P, f: &Q, g: &Q, z: &Q) -> Option<[Q; 3]> {
    let n = &p.nu;
    let (k1, k2, qq) = (&p.k1, &p.k2, &p.q);
    let one = q(1);
    let n4 = prod((1..=4).map(|i| n[i].clone()));
    let t1 = div(
        qq * (k1 - k2) * prod((5..=8).map(|i| g * k2 - &n[i])),
        g * k1 * k2 * k2 * (f * g * k2 - k1) * (g * k2 * z - k1),
    )?;
    let t2 = div(
        qq * (k1 - k2) * prod((1..=4).map(|i| g * &n[i] - &one)),
        g * (f * g - &one) * k1 * &n4 * (g * z - qq),
    )?;
    let x = div(prod((1..=4).map(|i| qq * &n[i] - z)), qq * k1 * &n4 * (f * qq - z) * z * z * (qq - g * z))?;
    let y = div(
        qq * prod((5..=8).map(|i| k1 - &n[i] * z)),
        k1 * k1 * k1 * k1 * (f - z) * z * z * (g * k2 * z - k1),
    )?;
    let a0 = t1 - t2 + &x * (g * k2 * z - k1 * qq) - &y * (k1 * (g * z - &one));
    let am = -(&x * k1 * (g * z - qq));
    let ap = &y * (g * k2 * z - k1);
    Some([am, a0, ap])
}

struct E8Flat {
    u: [Q; 8],
    h1: Q,
    h2: Q,
    q: Q,
    pn: Vec<(Q, Q)>,
    pd: Vec<(Q, Q)>,
}

fn lagrange(pts: &[(Q, Q)], x: &Q) -> Q {
    let mut acc = q(0);
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                term = term * (x - xj) / (xi - xj);
            }
        }
        acc += term;
    }
    acc
}

impl E8Flat {
    /// P_n and P_d as the quartics through five sample points of their defining identities.
    fn new(b: &ParamBinding) -> E8Flat {
        let p = params(b);
        let u: [Q; 8] = std::array::from_fn(|i| p.nu[i + 1].clone());
        let mut e = E8Flat { u, h1: p.k1, h2: p.k2, q: p.q, pn: Vec::new(), pd: Vec::new() };
        let mut t = 2i64;
        while e.pn.len() < 5 {
            let z = q(t);
            t += 1;
            let hz = &e.h2 / &z;
            let d = &z - &hz;
            let w = &z + &hz;
            if is_zero(&d) || e.pn.iter().any(|(x, _)| *x == w) {
                continue;
            }
            let n = e.big_u(&z) / (&z * &z * &z) - (&z / &e.h2) * (&z / &e.h2) * (&z / &e.h2) * e.big_u(&hz);
            let dd = (0..5).fold(q(1), |a, _| a * &z) * e.big_u(&hz) - (0..5).fold(q(1), |a, _| a * &hz) * e.big_u(&z);
            e.pn.push((w.clone(), n / &d));
            e.pd.push((w, dd / &d));
        }
        e
    }

    fn big_u(&self, t: &Q) -> Q {
        prod(self.u.iter().map(|ui| t - ui))
    }

    fn fu(&self, t: &Q) -> Q {
        t + &self.h1 / t
    }

    fn gu(&self, t: &Q) -> Q {
        t + &self.h2 / t
    }

    fn fbar(&self, t: &Q) -> Q {
        t + &self.h1 / (&self.q * t)
    }

    fn v(&self, f1: &Q, f2: &Q, g: &Q) -> Q {
        let (h1, h2, qq) = (&self.h1, &self.h2, &self.q);
        let one = q(1);
        let psi_n = (f1 - g) * (f2 - g) - (h1 / qq - h2) * (h1 - h2) / h2;
        let psi_d = (f1 / h1 * qq - g / h2) * (f2 / h1 - g / h2) - (qq / h1 - &one / h2) * (&one / h1 - &one / h2) * h2;
        qq * psi_n * lagrange(&self.pd, g) - h1 * h1 * h2 * h2 * h2 * h2 * psi_d * lagrange(&self.pn, g)
    }

    fn phi(&self, f: &Q, g: &Q) -> Q {
        let (h1, h2) = (&self.h1, &self.h2);
        let one = q(1);
        (f - g) * (f / h1 - g / h2) - (h1 - h2) * (&one / h1 - &one / h2)
    }

    fn l1(&self, f: &Q, g: &Q, z: &Q) -> Option<[Q; 3]> {
        let (h1, h2, qq) = (&self.h1, &self.h2, &self.q);
        let zq = div(z.clone(), qq.clone())?;
        let h1z = div(h1.clone(), z.clone())?;
        let q5 = prod((0..5).map(|_| qq.clone()));
        let z8 = prod((0..8).map(|_| z.clone()));
        let am = div(q5 * self.big_u(&zq), (z * z - h1 * qq * qq) * (f - self.fu(&zq)))?;
        let ap = div(z8 * self.big_u(&h1z), h1 * h1 * h1 * h1 * (z * z - h1) * (f - self.fu(z)))?;
        let r1 = div(g - self.gu(&(qq * h1 / z)), g - self.gu(&zq))?;
        let r2 = div(g - self.gu(z), g - self.gu(&h1z))?;
        let last = div(
            (h1 - h2) * z * z * (z * z - qq * h1) * self.v(&self.fbar(&zq), f, g),
            qq * h1 * h1 * h1 * h2 * h2 * h2 * g * self.phi(f, g) * (g - self.gu(&h1z)) * (g - self.gu(&zq)),
        )?;
        let a0 = last - &am * r1 - &ap * r2;
        Some([am, a0, ap])
    }
}

fn structured(family: Family, s: &Sym, f: &Q, g: &Q) -> [RatFn; 3] {
    let (fr, gr) = (RatFn::constant(f.clone()), RatFn::constant(g.clone()));
    match family {
        Family::D5 => l1_d5(s, &fr, &gr).unwrap().as_array().map(|c| c.clone()),
        Family::E6 => l1_e6(s, &fr, &gr).unwrap().as_array().map(|c| c.clone()),
        Family::E7 => l1_e7(s, &fr, &gr).unwrap().as_array().map(|c| c.clone()),
        Family::E8 => E8Aux::new(s).unwrap().l1::<RatFn>(&fr, &gr).unwrap(),
    }
}

/// Compares both transcriptions at 4 random points for each of 5 bindings; returns the number of agreeing points.
pub fn check_family(family: Family) -> Result<usize, String> {
    let mut r = rng(1000 + family as u64);
    let mut checked = 0;
    for seed in 0..5u64 {
        let b = binding(family, 40 + seed);
        let s = Sym::numeric(&b);
        let p = params(&b);
        let e8 = (family == Family::E8).then(|| E8Flat::new(&b));
        let mut points = 0;
        while points < 4 {
            let (f, g, z) = (small_q(&mut r), small_q(&mut r), small_q(&mut r));
            let flat = match family {
                Family::D5 => flat_d5(&p, &f, &g, &z),
                Family::E6 => flat_e6(&p, &f, &g, &z),
                Family::E7 => flat_e7(&p, &f, &g, &z),
                Family::E8 => e8.as_ref().unwrap().l1(&f, &g, &z),
            };
            let Some(flat) = flat else { continue };
            let st = structured(family, &s, &f, &g);
            for (k, (a, b)) in st.iter().zip(flat.iter()).enumerate() {
                let at = a.eval(Z, &z).map_err(|e| format!("{family:?} slot {k}: {e}"))?;
                if at != RatFn::constant(b.clone()) {
                    return Err(format!("{family:?} slot {k} at f={f} g={g} z={z}: {at} vs {b}"));
                }
            }
            points += 1;
            checked += 1;
        }
    }
    Ok(checked)
}

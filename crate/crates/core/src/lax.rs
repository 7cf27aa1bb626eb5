//! The linear problems L1 of the four q-Painlevé families.

use crate::algebra::vars::Z;
use crate::algebra::{EpsLaurent, Family, LaurentPoly, RatFn, Sym, WPoly};
use crate::error::Result;
use crate::qdiff::{ShiftOperator, ThreeTermEq};

fn z() -> RatFn {
    RatFn::var(Z)
}

fn dv(a: &RatFn, b: &RatFn) -> Result<RatFn> {
    Ok(a.div_ref(b)?)
}

fn prod(it: impl IntoIterator<Item = RatFn>) -> RatFn {
    it.into_iter().fold(RatFn::one(), |a, b| &a * &b)
}

/// Coefficient triple of L1 for D5, E6 or E7 at the point (f, g).
pub fn l1_triple(s: &Sym, f: &RatFn, g: &RatFn) -> Result<ThreeTermEq> {
    match s.family {
        Family::D5 => l1_d5(s, f, g),
        Family::E6 => l1_e6(s, f, g),
        Family::E7 => l1_e7(s, f, g),
        Family::E8 => panic!("the E8 operator is built by l1_e8"),
    }
}

pub fn build_l1(s: &Sym, f: &RatFn, g: &RatFn) -> Result<ShiftOperator> {
    Ok(l1_triple(s, f, g)?.to_operator())
}

pub fn l1_d5(s: &Sym, f: &RatFn, g: &RatFn) -> Result<ThreeTermEq> {
    let n = |i| s.nu(i);
    let (q, ka1, ka2) = (s.q(), s.ka(1), s.ka(2));
    let z = z();
    let one = RatFn::one();
    let lower = prod([n(1), n(2), &z - &(&q * &n(3)), &z - &(&q * &n(4))]);
    let lower = dv(&lower, &(&q * &(&(&q * f) - &z)))?;
    let upper = &(&z - &dv(&ka1, &n(7))?) * &(&z - &dv(&ka1, &n(8))?);
    let upper = dv(&upper, &(&q * &(f - &z)))?;
    let t1 = dv(&prod([z.clone(), &(g * &n(1)) - &one, &(g * &n(2)) - &one]), &(&q * g))?;
    let t2 = prod([n(1), n(2), n(3), n(4), g - &dv(&n(5), &ka2)?, g - &dv(&n(6), &ka2)?]);
    let t2 = dv(&t2, &(f * g))?;
    let a0 = &(&(&t1 - &t2) + &(g * &lower)) + &dv(&upper, g)?;
    Ok(ThreeTermEq::new(-&lower, a0, -&upper))
}

pub fn l1_e6(s: &Sym, f: &RatFn, g: &RatFn) -> Result<ThreeTermEq> {
    let n = |i| s.nu(i);
    let (q, ka1, ka2) = (s.q(), s.ka(1), s.ka(2));
    let z = z();
    let one = RatFn::one();
    let zq = dv(&z, &q)?;
    let p4 = prod((1..=4).map(|i| &n(i) - &zq));
    let k = &(&dv(&ka1, &n(7))? - &z) * &(&dv(&ka1, &n(8))? - &z);
    let lower = dv(&p4, &(f - &zq))?;
    let upper = dv(&k, &(&q * &(f - &z)))?;
    let t1 = prod([z.clone()].into_iter().chain((1..=4).map(|i| &(g * &n(i)) - &one)));
    let t1 = dv(&t1, &prod([g.clone(), &(f * g) - &one, &(g * &z) - &q]))?;
    let t2 = prod([
        &dv(&(g * &ka2), &n(5))? - &one,
        &dv(&(g * &ka2), &n(6))? - &one,
        &ka1 * &ka1,
    ]);
    let t2 = dv(&t2, &prod([q.clone(), f.clone(), g.clone(), n(7), n(8)]))?;
    let t3 = &lower * &dv(g, &(&one - &(g * &zq)))?;
    let t4 = &upper * &(&dv(&one, g)? - &z);
    let a0 = &(&(&t1 - &t2) + &t3) + &t4;
    Ok(ThreeTermEq::new(-&lower, a0, -&upper))
}

pub fn l1_e7(s: &Sym, f: &RatFn, g: &RatFn) -> Result<ThreeTermEq> {
    let n = |i| s.nu(i);
    let (q, ka1, ka2) = (s.q(), s.ka(1), s.ka(2));
    let z = z();
    let one = RatFn::one();
    let n4 = prod((1..=4).map(n));
    let pq = prod((1..=4).map(|i| &(&q * &n(i)) - &z));
    let kz = prod((5..=8).map(|i| &ka1 - &(&n(i) * &z)));
    let z2 = &z * &z;
    let dk = &ka1 - &ka2;
    let gk2 = g * &ka2;
    let t1 = prod([q.clone(), dk.clone()].into_iter().chain((5..=8).map(|i| &gk2 - &n(i))));
    let t1 = dv(&t1, &prod([g.clone(), ka1.clone(), &ka2 * &ka2, &(f * &gk2) - &ka1, &(&gk2 * &z) - &ka1]))?;
    let t2 = prod([q.clone(), dk].into_iter().chain((1..=4).map(|i| &(g * &n(i)) - &one)));
    let t2 = dv(&t2, &prod([g.clone(), &(f * g) - &one, ka1.clone(), n4.clone(), &(g * &z) - &q]))?;
    let common_l = prod([q.clone(), ka1.clone(), n4.clone(), &(f * &q) - &z, z2.clone(), &q - &(g * &z)]);
    let t3 = dv(&(&pq * &(&(&gk2 * &z) - &(&ka1 * &q))), &common_l)?;
    let common_u = prod([ka1.pow(4)?, f - &z, z2.clone(), &(&gk2 * &z) - &ka1]);
    let t4 = dv(&prod([q.clone(), kz.clone(), ka1.clone(), &(g * &z) - &one]), &common_u)?;
    let a0 = &(&(&t1 - &t2) + &t3) - &t4;
    let am = -&dv(&prod([pq, ka1.clone(), &(g * &z) - &q]), &common_l)?;
    let ap = dv(&prod([q, kz, &(&gk2 * &z) - &ka1]), &common_u)?;
    Ok(ThreeTermEq::new(am, a0, ap))
}

/// Field operations shared by exact rational functions and eps-series, so L1 of E8 is written once.
pub trait Scalar: Clone {
    fn lift(r: &RatFn) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;

    fn add_r(&self, r: &RatFn) -> Self {
        self.add(&Self::lift(r))
    }
    fn sub_r(&self, r: &RatFn) -> Self {
        self.sub(&Self::lift(r))
    }
    fn mul_r(&self, r: &RatFn) -> Self {
        self.mul(&Self::lift(r))
    }
}

impl Scalar for RatFn {
    fn lift(r: &RatFn) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.div_ref(o)?)
    }
}

impl Scalar for EpsLaurent {
    fn lift(r: &RatFn) -> Self {
        EpsLaurent::exact(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.div_ref(o)?)
    }
}

/// The polynomials and rational maps entering L1 of E8.
#[derive(Clone, Debug)]
pub struct E8Aux {
    pub u: [RatFn; 8],
    pub h1: RatFn,
    pub h2: RatFn,
    pub q: RatFn,
    pub pn: WPoly,
    pub pd: WPoly,
}

impl E8Aux {
    pub fn new(s: &Sym) -> Result<E8Aux> {
        let u: [RatFn; 8] = std::array::from_fn(|i| s.nu(i + 1));
        let h2 = s.ka(2);
        let ul = LaurentPoly::from_roots(&u);
        let h2l = LaurentPoly::constant(h2.clone());
        let refl = ul.reflect(&h2)?;
        let h2inv = dv(&RatFn::one(), &h2)?;
        let numn = &ul.shift(-3) - &refl.shift(3).scale(&h2inv.pow(3)?);
        let numd = &refl.shift(5) - &ul.shift(-5).scale(&h2.pow(5)?);
        let d = &LaurentPoly::monomial(RatFn::one(), 1) - &h2l.shift(-1);
        let pn = numn.divide_exact(&d)?.to_w_poly(&h2)?;
        let pd = numd.divide_exact(&d)?.to_w_poly(&h2)?;
        Ok(E8Aux { u, h1: s.ka(1), h2, q: s.q(), pn, pd })
    }

    /// u_i for i in 1..=8.
    pub fn ui(&self, i: usize) -> &RatFn {
        &self.u[i - 1]
    }

    pub fn big_u(&self, t: &RatFn) -> RatFn {
        prod(self.u.iter().map(|ui| t - ui))
    }

    pub fn u7(&self, t: &RatFn) -> RatFn {
        prod(self.u[1..].iter().map(|ui| t - ui))
    }

    pub fn f_of(&self, t: &RatFn) -> Result<RatFn> {
        Ok(t + &dv(&self.h1, t)?)
    }

    pub fn g_of(&self, t: &RatFn) -> Result<RatFn> {
        Ok(t + &dv(&self.h2, t)?)
    }

    pub fn fbar_of(&self, t: &RatFn) -> Result<RatFn> {
        Ok(t + &dv(&self.h1, &(&self.q * t))?)
    }

    pub fn gbar_of(&self, t: &RatFn) -> Result<RatFn> {
        Ok(t + &dv(&(&self.q * &self.h2), t)?)
    }

    pub fn eval_w<S: Scalar>(w: &WPoly, x: &S) -> S {
        let mut acc = S::lift(&RatFn::zero());
        for c in w.0.iter().rev() {
            acc = acc.mul(x).add_r(c);
        }
        acc
    }

    pub fn psi_n<S: Scalar>(&self, a: &S, b: &S, g: &S) -> Result<S> {
        let (h1, h2, q) = (&self.h1, &self.h2, &self.q);
        let k = dv(&(&(&dv(h1, q)? - h2) * &(h1 - h2)), h2)?;
        Ok(a.sub(g).mul(&b.sub(g)).sub_r(&k))
    }

    pub fn psi_d<S: Scalar>(&self, a: &S, b: &S, g: &S) -> Result<S> {
        let (h1, h2, q) = (&self.h1, &self.h2, &self.q);
        let one = RatFn::one();
        let gh = g.mul_r(&dv(&one, h2)?);
        let x = a.mul_r(&dv(q, h1)?).sub(&gh);
        let y = b.mul_r(&dv(&one, h1)?).sub(&gh);
        let k = prod([&dv(q, h1)? - &dv(&one, h2)?, &dv(&one, h1)? - &dv(&one, h2)?, h2.clone()]);
        Ok(x.mul(&y).sub_r(&k))
    }

    pub fn v<S: Scalar>(&self, a: &S, b: &S, g: &S) -> Result<S> {
        let pd = Self::eval_w(&self.pd, g);
        let pn = Self::eval_w(&self.pn, g);
        let c = &(&self.h1 * &self.h1) * &self.h2.pow(4)?;
        Ok(self.psi_n(a, b, g)?.mul_r(&self.q).mul(&pd).sub(&self.psi_d(a, b, g)?.mul_r(&c).mul(&pn)))
    }

    pub fn phi<S: Scalar>(&self, f: &S, g: &S) -> Result<S> {
        let one = RatFn::one();
        let (h1, h2) = (&self.h1, &self.h2);
        let x = f.mul_r(&dv(&one, h1)?).sub(&g.mul_r(&dv(&one, h2)?));
        let k = &(h1 - h2) * &(&dv(&one, h1)? - &dv(&one, h2)?);
        Ok(f.sub(g).mul(&x).sub_r(&k))
    }

    /// Coefficients of y(z/q), y(z), y(qz) in L1 y = 0.
    pub fn l1<S: Scalar>(&self, f: &S, g: &S) -> Result<[S; 3]> {
        let (h1, h2, q) = (&self.h1, &self.h2, &self.q);
        let z = z();
        let z2 = &z * &z;
        let zq = dv(&z, q)?;
        let h1z = dv(h1, &z)?;
        let lower_c = dv(&(&q.pow(5)? * &self.big_u(&zq)), &(&z2 - &(h1 * &(q * q))))?;
        let am = S::lift(&lower_c).div(&f.sub_r(&self.f_of(&zq)?))?;
        let upper_c = dv(&(&z.pow(8)? * &self.big_u(&h1z)), &(&h1.pow(4)? * &(&z2 - h1)))?;
        let ap = S::lift(&upper_c).div(&f.sub_r(&self.f_of(&z)?))?;
        let g_zq = g.sub_r(&self.g_of(&zq)?);
        let g_h1z = g.sub_r(&self.g_of(&h1z)?);
        let t1 = am.mul(&g.sub_r(&self.g_of(&dv(&(q * h1), &z)?)?)).div(&g_zq)?;
        let t2 = ap.mul(&g.sub_r(&self.g_of(&z)?)).div(&g_h1z)?;
        let num_c = prod([h1 - h2, z2.clone(), &z2 - &(q * h1)]);
        let den_c = prod([q.clone(), h1.pow(3)?, h2.pow(3)?]);
        let vv = self.v(&S::lift(&self.fbar_of(&zq)?), f, g)?;
        let den = g.mul(&self.phi(f, g)?).mul(&g_h1z).mul(&g_zq).mul_r(&den_c);
        let t3 = vv.mul_r(&num_c).div(&den)?;
        let a0 = t3.sub(&t1).sub(&t2);
        Ok([am, a0, ap])
    }
}

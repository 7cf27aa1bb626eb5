//! Blow-up charts, restriction to exceptional lines, and the q-P(D5) map.

use crate::algebra::vars::{F, F1, G, G1, T};
use crate::algebra::{EpsLaurent, Family, RatFn, Sym, Var, Q};
use crate::error::{Error, Result};
use crate::qdiff::ThreeTermEq;
use num_traits::Zero;
use std::fmt;

/// One coordinate of a blow-up center on P1 x P1.
#[derive(Clone, Debug)]
pub enum Center {
    At(RatFn),
    Infinity,
}

/// Which chart coordinate carries the exceptional line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// (f, g) = (f0 + f1, g0 + f1 g1), exceptional line f1 = 0.
    F,
    /// (f, g) = (f0 + f1 g1, g0 + g1), exceptional line g1 = 0.
    G,
}

#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub f0: Center,
    pub g0: Center,
    pub dir: Direction,
}

impl BlowupChart {
    pub fn new(f0: Center, g0: Center, dir: Direction) -> Self {
        BlowupChart { f0, g0, dir }
    }

    /// (f, g) as rational functions of the chart coordinates f1, g1.
    pub fn coords(&self) -> (RatFn, RatFn) {
        let f1 = RatFn::var(F1);
        let g1 = RatFn::var(G1);
        let (df, dg) = match self.dir {
            Direction::F => (f1.clone(), &f1 * &g1),
            Direction::G => (&f1 * &g1, g1.clone()),
        };
        let place = |c: &Center, d: RatFn| match c {
            Center::At(x) => x + &d,
            Center::Infinity => &RatFn::one() / &d,
        };
        (place(&self.f0, df), place(&self.g0, dg))
    }

    pub fn exceptional(&self) -> Var {
        match self.dir {
            Direction::F => F1,
            Direction::G => G1,
        }
    }

    /// The chart coordinate that survives on the exceptional line.
    pub fn free(&self) -> Var {
        match self.dir {
            Direction::F => G1,
            Direction::G => F1,
        }
    }

    /// Chart coordinates of the point reached along the line (f, g) = center + t (alpha, beta),
    /// with infinite centers approached through the inverted coordinate.
    pub fn slope(&self, alpha: &Q, beta: &Q) -> Q {
        match self.dir {
            Direction::F => beta / alpha,
            Direction::G => alpha / beta,
        }
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::At(x) => write!(f, "{}", x),
            Center::Infinity => write!(f, "inf"),
        }
    }
}

/// Substitutes the chart into an equation written in f and g.
pub fn apply_chart(e: &ThreeTermEq, chart: &BlowupChart) -> Result<ThreeTermEq> {
    let (fv, gv) = chart.coords();
    e.map(|c| Ok(c.subs_many(&[(F, fv.clone()), (G, gv.clone())])?))
}

pub fn substitute_f(e: &ThreeTermEq, value: &RatFn) -> Result<ThreeTermEq> {
    e.subs(F, value)
}

/// Leading part of the triple along coord = 0.
pub fn restrict_to_exceptional(e: &ThreeTermEq, coord: Var) -> Result<ThreeTermEq> {
    let vals: Vec<Option<i64>> = e.as_array().iter().map(|c| c.valuation(coord)).collect();
    let min = match vals.iter().flatten().min() {
        None => return Err(Error::ZeroEquation),
        Some(m) => *m,
    };
    if min < 0 && vals[0].is_none_or(|v| v > min) && vals[2].is_none_or(|v| v > min) {
        return Err(Error::PoleAtDivisor(format!("{} = 0", coord)));
    }
    e.map(|c| Ok(c.coeff_at_zero(coord, min)?))
}

/// A point of P1 given by homogeneous coordinates [a : b], value a / b.
#[derive(Clone, Debug)]
pub struct Proj {
    pub a: RatFn,
    pub b: RatFn,
}

impl Proj {
    pub fn finite(x: RatFn) -> Proj {
        Proj { a: x, b: RatFn::one() }
    }

    pub fn infinity() -> Proj {
        Proj { a: RatFn::one(), b: RatFn::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.b.is_zero()
    }

    pub fn value(&self) -> Option<RatFn> {
        (!self.b.is_zero()).then(|| &self.a / &self.b)
    }

    pub fn same_point(&self, o: &Proj) -> bool {
        (&self.a * &o.b).eq_val(&(&o.a * &self.b))
    }
}

impl fmt::Display for Proj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}", v),
            None => write!(f, "inf"),
        }
    }
}

/// State of q-P(D5): a point of P1 x P1 and the current parameters.
#[derive(Clone, Debug)]
pub struct D5State {
    pub f: Proj,
    pub g: Proj,
    pub params: Sym,
    pub step: i64,
}

/// The eight points where the D5 map or its inverse is 0/0, in order P1..P8.
pub fn d5_base_points(s: &Sym) -> Vec<(Center, Center)> {
    let mut out = Vec::new();
    for i in 1..=2 {
        out.push((Center::Infinity, Center::At(&RatFn::one() / &s.nu(i))));
    }
    for i in 3..=4 {
        out.push((Center::At(s.nu(i)), Center::Infinity));
    }
    for i in 5..=6 {
        out.push((Center::At(RatFn::zero()), Center::At(&s.nu(i) / &s.ka(2))));
    }
    for i in 7..=8 {
        out.push((Center::At(&s.ka(1) / &s.nu(i)), Center::At(RatFn::zero())));
    }
    out
}

/// The chart at P_i used in the D5 pipelines.
pub fn d5_chart(s: &Sym, i: usize) -> BlowupChart {
    let (f0, g0) = d5_base_points(s).swap_remove(i - 1);
    let dir = match i {
        1 | 2 | 5 | 6 => Direction::F,
        _ => Direction::G,
    };
    BlowupChart::new(f0, g0, dir)
}

fn hom(c: &Center) -> Proj {
    match c {
        Center::At(x) => Proj::finite(x.clone()),
        Center::Infinity => Proj::infinity(),
    }
}

/// Which of the two defining relations is singular at a given base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D5Map {
    /// f -> fbar = nu3 nu4 (g - nu5/k2)(g - nu6/k2) / (f (g - 1/nu1)(g - 1/nu2)).
    Forward,
    /// g -> R(f) / g with R(f) = (f - k1/nu7)(f - k1/nu8) / (nu1 nu2 (f - nu3)(f - nu4)).
    Backward,
}

impl D5Map {
    pub fn at_point(i: usize) -> D5Map {
        match i {
            1 | 2 | 5 | 6 => D5Map::Forward,
            _ => D5Map::Backward,
        }
    }

    /// Homogeneous numerator and denominator of the map at ([fa:fb], [ga:gb]).
    pub fn hom_parts(self, s: &Sym, f: &Proj, g: &Proj) -> (RatFn, RatFn) {
        match self {
            D5Map::Forward => {
                let a5 = &s.nu(5) / &s.ka(2);
                let a6 = &s.nu(6) / &s.ka(2);
                let num = &(&(&s.nu(3) * &s.nu(4)) * &(&g.a - &(&a5 * &g.b))) * &(&(&g.a - &(&a6 * &g.b)) * &f.b);
                let i1 = &RatFn::one() / &s.nu(1);
                let i2 = &RatFn::one() / &s.nu(2);
                let den = &(&f.a * &(&g.a - &(&i1 * &g.b))) * &(&g.a - &(&i2 * &g.b));
                (num, den)
            }
            D5Map::Backward => {
                let b7 = &s.ka(1) / &s.nu(7);
                let b8 = &s.ka(1) / &s.nu(8);
                let num = &(&(&f.a - &(&b7 * &f.b)) * &(&f.a - &(&b8 * &f.b))) * &g.b;
                let n12 = &s.nu(1) * &s.nu(2);
                let den = &(&(&n12 * &(&f.a - &(&s.nu(3) * &f.b))) * &(&f.a - &(&s.nu(4) * &f.b))) * &g.a;
                (num, den)
            }
        }
    }

    pub fn eval(self, s: &Sym, f: &Proj, g: &Proj) -> Result<Proj> {
        let (a, b) = self.hom_parts(s, f, g);
        if a.is_zero() && b.is_zero() {
            return Err(Error::IndeterminatePoint(format!("({}, {})", f, g)));
        }
        if b.is_zero() {
            return Ok(Proj::infinity());
        }
        Ok(Proj::finite(a.div_ref(&b)?))
    }

    /// The map as a rational function of the affine coordinates (f, g).
    pub fn affine(self, s: &Sym, f: &RatFn, g: &RatFn) -> Result<RatFn> {
        let (a, b) = self.hom_parts(s, &Proj::finite(f.clone()), &Proj::finite(g.clone()));
        Ok(a.div_ref(&b)?)
    }
}

/// Parameters after one step: kappa1 -> kappa1 / q, kappa2 -> q kappa2, nu fixed.
pub fn evolve_params(s: &Sym) -> Sym {
    let mut roots = s.roots().clone();
    roots[8] = &roots[8] / &roots[10];
    roots[9] = &roots[9] * &roots[10];
    Sym::from_roots(s.family, roots)
}

impl D5State {
    pub fn new(f: Proj, g: Proj, params: Sym) -> D5State {
        assert_eq!(params.family, Family::D5);
        D5State { f, g, params, step: 0 }
    }

    /// One forward step; fails at P1, P2, P5, P6 and at the evolved P3, P4, P7, P8 seen by gbar.
    pub fn evolve(&self) -> Result<D5State> {
        let fbar = D5Map::Forward.eval(&self.params, &self.f, &self.g)?;
        let next = evolve_params(&self.params);
        let gbar = D5Map::Backward.eval(&next, &fbar, &self.g)?;
        Ok(D5State { f: fbar, g: gbar, params: next, step: self.step + 1 })
    }

    /// One backward step, inverting `evolve`.
    pub fn devolve(&self) -> Result<D5State> {
        let gprev = D5Map::Backward.eval(&self.params, &self.f, &self.g)?;
        let prev = Sym::from_roots(self.params.family, {
            let mut r = self.params.roots().clone();
            r[8] = &r[8] * &r[10];
            r[9] = &r[9] / &r[10];
            r
        });
        let fprev = D5Map::Forward.eval(&prev, &self.f, &gprev)?;
        Ok(D5State { f: fprev, g: gprev, params: prev, step: self.step - 1 })
    }
}

/// The singular map at P_i pulled back to its chart, in lowest terms.
pub fn resolved_map(s: &Sym, i: usize) -> Result<RatFn> {
    let chart = d5_chart(s, i);
    let (fv, gv) = chart.coords();
    let (a, b) = d5_map_on_chart(s, i, &fv, &gv);
    Ok(a.div_ref(&b)?.reduce())
}

fn d5_map_on_chart(s: &Sym, i: usize, fv: &RatFn, gv: &RatFn) -> (RatFn, RatFn) {
    D5Map::at_point(i).hom_parts(s, &Proj::finite(fv.clone()), &Proj::finite(gv.clone()))
}

/// Value of the resolved map on the exceptional line at the given free coordinate.
pub fn resolve_at_base_point(s: &Sym, i: usize, free: &RatFn) -> Result<Proj> {
    let chart = d5_chart(s, i);
    let r = resolved_map(s, i)?;
    let (n, d) = r.reduced_pair();
    let ex = chart.exceptional();
    let at0 = |p: &crate::algebra::MPoly| -> Result<RatFn> {
        Ok(RatFn::from_poly(p.clone()).eval(ex, &Q::zero())?.subs(chart.free(), free)?)
    };
    let (a, b) = (at0(&n)?, at0(&d)?);
    if a.is_zero() && b.is_zero() {
        return Err(Error::StillIndeterminate(format!("P{}", i)));
    }
    Ok(Proj { a, b })
}

/// Limit of the singular map at P_i along center + t (alpha, beta), via eps-series in t.
pub fn directional_limit(s: &Sym, i: usize, alpha: &Q, beta: &Q) -> Result<Proj> {
    let chart = d5_chart(s, i);
    let t = RatFn::var(T);
    let along = |c: &Center, d: &Q| match c {
        Center::At(x) => x + &(&t * &RatFn::constant(d.clone())),
        Center::Infinity => &RatFn::one() / &(&t * &RatFn::constant(d.clone())),
    };
    let fv = along(&chart.f0, alpha);
    let gv = along(&chart.g0, beta);
    let r = D5Map::at_point(i).affine(s, &fv, &gv)?;
    let series = EpsLaurent::from_ratfn(&r, T, 1)?;
    match series.valuation() {
        Some(v) if v < 0 => Ok(Proj::infinity()),
        _ => Ok(Proj::finite(series.coeff(0).unwrap_or_else(RatFn::zero))),
    }
}

pub fn base_point(s: &Sym, i: usize) -> (Proj, Proj) {
    let (f0, g0) = d5_base_points(s).swap_remove(i - 1);
    (hom(&f0), hom(&g0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, ParamBinding};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym() -> Sym {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        Sym::numeric(&ParamBinding::sample(Family::D5, &mut rng))
    }

    #[test]
    fn chart_examples() {
        let s = Sym::symbolic(Family::D5);
        let (f, g) = d5_chart(&s, 5).coords();
        assert_eq!(f, RatFn::var(F1));
        assert_eq!(g, &(&RatFn::var(F1) * &RatFn::var(G1)) + &(&s.nu(5) / &s.ka(2)));
        let (f, g) = d5_chart(&s, 1).coords();
        assert_eq!(f, &RatFn::one() / &RatFn::var(F1));
        assert_eq!(g, &(&RatFn::var(F1) * &RatFn::var(G1)) + &(&RatFn::one() / &s.nu(1)));
        let c = BlowupChart::new(Center::At(RatFn::zero()), Center::At(RatFn::zero()), Direction::F);
        assert_eq!(c.coords().1, &RatFn::var(F1) * &RatFn::var(G1));
    }

    #[test]
    fn indeterminacy_only_at_base_points() {
        let s = sym();
        for i in 1..=8 {
            let (f, g) = base_point(&s, i);
            let fw = D5Map::Forward.eval(&s, &f, &g).is_err();
            let bw = D5Map::Backward.eval(&s, &f, &g).is_err();
            assert_eq!(fw, D5Map::at_point(i) == D5Map::Forward, "P{}", i);
            assert_eq!(bw, D5Map::at_point(i) == D5Map::Backward, "P{}", i);
        }
        let generic = (Proj::finite(RatFn::constant(q(2))), Proj::finite(RatFn::constant(q(3))));
        assert!(D5Map::Forward.eval(&s, &generic.0, &generic.1).is_ok());
    }

    #[test]
    fn round_trip_steps() {
        let s = sym();
        let st = D5State::new(Proj::finite(RatFn::constant(q(2))), Proj::finite(RatFn::constant(q(3))), s);
        let a = st.evolve().unwrap();
        let b = a.evolve().unwrap();
        let back = b.devolve().unwrap();
        assert!(back.g.same_point(&a.g));
        assert!(back.f.same_point(&a.f));
    }
}

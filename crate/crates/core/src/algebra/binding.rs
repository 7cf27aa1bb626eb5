use super::mpoly::{q, qr, MPoly, Q};
use super::ratfn::RatFn;
use super::var::{vars, Var};
use super::AlgebraError;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D5,
    E6,
    E7,
    E8,
}

impl Family {
    /// Square-root level indeterminates: eight roots, two more, then the root of q.
    pub fn root_vars(self) -> [Var; 11] {
        let mut out = [vars::Z; 11];
        for i in 0..8 {
            out[i] = if self == Family::E8 { vars::big_m(i + 1) } else { vars::m(i + 1) };
        }
        if self == Family::E8 {
            out[8] = vars::H1;
            out[9] = vars::H2;
            out[10] = vars::BIG_P;
        } else {
            out[8] = vars::K1;
            out[9] = vars::K2;
            out[10] = vars::P_;
        }
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::D5 => "D5",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values of the eleven square-root level parameters; slot 7 is the eliminated root.
#[derive(Clone, Debug)]
pub struct Sym {
    pub family: Family,
    roots: [RatFn; 11],
}

fn derived_root<T, F>(vals: &[T; 11], mul: F) -> (T, T)
where
    T: Clone,
    F: Fn(&T, &T) -> T,
{
    let num = mul(&mul(&vals[8], &vals[8]), &mul(&vals[9], &vals[9]));
    let mut den = vals[10].clone();
    for v in vals.iter().take(7) {
        den = mul(&den, v);
    }
    (num, den)
}

impl Sym {
    /// Every parameter kept as an indeterminate, the constrained root written in the others.
    pub fn symbolic(family: Family) -> Sym {
        let vs = family.root_vars();
        let mut roots: [RatFn; 11] = std::array::from_fn(|i| RatFn::var(vs[i]));
        let (n, d) = derived_root(&roots, |a, b| a * b);
        roots[7] = &n / &d;
        Sym { family, roots }
    }

    /// As `symbolic`, with root slot `slot` (0-based, at most 7) as the constrained one.
    pub fn symbolic_eliminating(family: Family, slot: usize) -> Sym {
        assert!(slot < 8, "only m1..m8 can be eliminated");
        let vs = family.root_vars();
        let mut roots: [RatFn; 11] = std::array::from_fn(|i| RatFn::var(vs[i]));
        let mut den = roots[10].clone();
        for (i, r) in roots.iter().enumerate().take(8) {
            if i != slot {
                den = &den * r;
            }
        }
        let num = &(&roots[8] * &roots[8]) * &(&roots[9] * &roots[9]);
        roots[slot] = &num / &den;
        Sym { family, roots }
    }

    pub fn numeric(b: &ParamBinding) -> Sym {
        Sym { family: b.family, roots: std::array::from_fn(|i| RatFn::constant(b.values[i].clone())) }
    }

    pub fn from_roots(family: Family, roots: [RatFn; 11]) -> Sym {
        Sym { family, roots }
    }

    /// Exchanges root indices (1-based) pairwise, applied in order.
    pub fn swapped(&self, swaps: &[(usize, usize)]) -> Sym {
        let mut out = self.clone();
        for &(a, b) in swaps {
            out.roots.swap(a - 1, b - 1);
        }
        out
    }

    pub fn root(&self, i: usize) -> &RatFn {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[RatFn; 11] {
        &self.roots
    }

    /// m_i, the square root of nu_i (or of u_i in the E8 family).
    pub fn m(&self, i: usize) -> RatFn {
        self.roots[i - 1].clone()
    }

    pub fn nu(&self, i: usize) -> RatFn {
        &self.roots[i - 1] * &self.roots[i - 1]
    }

    pub fn k(&self, j: usize) -> RatFn {
        self.roots[7 + j].clone()
    }

    pub fn ka(&self, j: usize) -> RatFn {
        &self.roots[7 + j] * &self.roots[7 + j]
    }

    pub fn p(&self) -> RatFn {
        self.roots[10].clone()
    }

    pub fn q(&self) -> RatFn {
        &self.roots[10] * &self.roots[10]
    }
}

/// Rational values for the ten free square-root level parameters plus the derived one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBinding {
    pub family: Family,
    pub values: [Q; 11],
}

impl ParamBinding {
    /// Takes the ten free values in slot order (roots 1..7, then the two others, then the root of q).
    pub fn new(family: Family, free: [Q; 10]) -> Result<ParamBinding, AlgebraError> {
        if free.iter().any(|v| v.is_zero()) {
            return Err(AlgebraError::DenominatorVanishes);
        }
        let mut values: [Q; 11] = std::array::from_fn(|_| Q::one());
        for (i, v) in free.into_iter().enumerate() {
            let slot = if i < 7 { i } else { i + 1 };
            values[slot] = v;
        }
        let (n, d) = derived_root(&values, |a, b| a * b);
        values[7] = n / d;
        Ok(ParamBinding { family, values })
    }

    /// Draws ten distinct small odd primes, each inverted with probability one half.
    pub fn sample<R: Rng>(family: Family, rng: &mut R) -> ParamBinding {
        const PRIMES: [i64; 11] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let picks: Vec<i64> = PRIMES.choose_multiple(rng, 10).copied().collect();
        let free: [Q; 10] = std::array::from_fn(|i| if rng.gen_bool(0.5) { q(picks[i]) } else { qr(1, picks[i]) });
        ParamBinding::new(family, free).expect("pool values are nonzero")
    }

    pub fn var_values(&self) -> Vec<(Var, Q)> {
        self.family.root_vars().iter().copied().zip(self.values.iter().cloned()).collect()
    }

    /// True when the constraint on the squared parameters holds exactly.
    pub fn constraint_holds(&self) -> bool {
        let sq = |v: &Q| v * v;
        let lhs = sq(&sq(&self.values[8])) * sq(&sq(&self.values[9]));
        let mut rhs = sq(&self.values[10]);
        for v in self.values.iter().take(8) {
            rhs *= sq(v);
        }
        lhs == rhs
    }

    /// Replaces the bound parameters by their values; anything left must be listed in `keep`.
    pub fn specialize(&self, e: &RatFn, keep: &[Var]) -> Result<RatFn, AlgebraError> {
        let vals = self.var_values();
        for v in e.vars() {
            if !keep.contains(&v) && !vals.iter().any(|(w, _)| *w == v) {
                return Err(AlgebraError::UnboundIndeterminate(v.name()));
            }
        }
        e.eval_many(&vals)
    }

    pub fn specialize_poly(&self, e: &MPoly) -> MPoly {
        e.eval_many(&self.var_values())
    }
}

#![allow(dead_code)]

pub mod flat;

use qheun::algebra::{q, qr, Family, ParamBinding, Sym, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn binding(family: Family, seed: u64) -> ParamBinding {
    ParamBinding::sample(family, &mut rng(seed))
}

pub fn sym(family: Family, seed: u64) -> Sym {
    Sym::numeric(&binding(family, seed))
}

/// A nonzero rational n/d with |n| <= 40 and 1 <= d <= 9.
pub fn small_q<R: Rng>(r: &mut R) -> Q {
    loop {
        let n: i64 = r.gen_range(-40..=40);
        if n != 0 {
            return qr(n, r.gen_range(1..=9));
        }
    }
}

pub fn is_zero(x: &Q) -> bool {
    *x == q(0)
}

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An interned indeterminate. Smaller indices are more significant in the lex order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) u16);

struct Interner {
    names: Vec<String>,
    index: HashMap<String, u16>,
}

const STANDARD: &[&str] = &[
    "z", "w", "eps", "t", "x", "f", "g", "f1", "g1", "c1", "c2", "E", "m1", "m2", "m3", "m4", "m5",
    "m6", "m7", "m8", "k1", "k2", "p", "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "H1", "H2",
    "P",
];

fn interner() -> &'static RwLock<Interner> {
    static CELL: OnceLock<RwLock<Interner>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut it = Interner { names: Vec::new(), index: HashMap::new() };
        for n in STANDARD {
            let id = it.names.len() as u16;
            it.names.push((*n).to_string());
            it.index.insert((*n).to_string(), id);
        }
        RwLock::new(it)
    })
}

impl Var {
    /// Returns the indeterminate with this name, registering it on first use.
    pub fn named(name: &str) -> Var {
        if let Some(&id) = interner().read().unwrap().index.get(name) {
            return Var(id);
        }
        let mut it = interner().write().unwrap();
        if let Some(&id) = it.index.get(name) {
            return Var(id);
        }
        let id = it.names.len();
        assert!(id < u16::MAX as usize, "too many indeterminates");
        it.names.push(name.to_string());
        it.index.insert(name.to_string(), id as u16);
        Var(id as u16)
    }

    pub fn name(self) -> String {
        interner().read().unwrap().names[self.0 as usize].clone()
    }

    pub fn index(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub mod vars {
    use super::Var;
    pub const Z: Var = Var(0);
    pub const W: Var = Var(1);
    pub const EPS: Var = Var(2);
    pub const T: Var = Var(3);
    pub const X: Var = Var(4);
    pub const F: Var = Var(5);
    pub const G: Var = Var(6);
    pub const F1: Var = Var(7);
    pub const G1: Var = Var(8);
    pub const C1: Var = Var(9);
    pub const C2: Var = Var(10);
    pub const E: Var = Var(11);

    /// m1..m8 (i in 1..=8).
    pub fn m(i: usize) -> Var {
        assert!((1..=8).contains(&i));
        Var(11 + i as u16)
    }
    pub const K1: Var = Var(20);
    pub const K2: Var = Var(21);
    pub const P_: Var = Var(22);

    /// M1..M8 (i in 1..=8).
    pub fn big_m(i: usize) -> Var {
        assert!((1..=8).contains(&i));
        Var(22 + i as u16)
    }
    pub const H1: Var = Var(31);
    pub const H2: Var = Var(32);
    pub const BIG_P: Var = Var(33);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_names_line_up() {
        assert_eq!(vars::Z.name(), "z");
        assert_eq!(vars::m(1).name(), "m1");
        assert_eq!(vars::m(8).name(), "m8");
        assert_eq!(vars::K1.name(), "k1");
        assert_eq!(vars::P_.name(), "p");
        assert_eq!(vars::big_m(8).name(), "M8");
        assert_eq!(vars::H2.name(), "H2");
        assert_eq!(vars::BIG_P.name(), "P");
        assert_eq!(vars::E.name(), "E");
    }

    #[test]
    fn interning_is_stable() {
        let a = Var::named("zeta_test");
        let b = Var::named("zeta_test");
        assert_eq!(a, b);
        assert_eq!(Var::named("g1"), vars::G1);
    }
}

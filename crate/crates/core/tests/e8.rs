//! The eps-limit of the E8 linear problem.

mod common;

use common::sym;
use qheun::algebra::vars::{C1, C2};
use qheun::algebra::{q, Family, RatFn};
use qheun::e8_limit::{check_theorem31, check_theorem32_rvd, take_limit_equation, E8LimitInput};
use qheun::error::Error;
use qheun::normalform::registry::ClaimSet;
use qheun::qdiff::proj_equal;

#[test]
fn literal_b0_fails_only_on_b0() {
    let r = check_theorem31(&E8LimitInput::new(sym(Family::E8, 3)), ClaimSet::Literal).unwrap();
    assert!(r.b_minus_match && r.b_plus_match && r.c0_match);
    assert!(r.ytilde_match && r.h_poles_cancelled && r.h_partial_fractions_match);
    assert_eq!(r.failures(), vec!["B0", "C0' constant"]);
}

#[test]
fn corrected_b0_leaves_a_constant() {
    for seed in 0..2 {
        let r = check_theorem31(&E8LimitInput::new(sym(Family::E8, seed)), ClaimSet::Corrected).unwrap();
        assert!(r.holds(), "{:?}", r.failures());
    }
}

#[test]
fn rvd_equivalence() {
    let r = check_theorem32_rvd(&E8LimitInput::new(sym(Family::E8, 4))).unwrap();
    assert!(r.holds(), "{r:?}");
    assert!(r.accessory.contains("c1") && r.accessory.contains("c2"));
}

#[test]
fn limit_is_symmetric_in_u2_to_u8() {
    let s = sym(Family::E8, 6);
    let t = s.swapped(&[(2, 3)]);
    let a = take_limit_equation(&E8LimitInput::new(s)).unwrap();
    let b = take_limit_equation(&E8LimitInput::new(t)).unwrap();
    assert!(proj_equal(&a, &b).unwrap());
}

#[test]
fn numeric_cs_agree_with_symbolic() {
    let s = sym(Family::E8, 8);
    let sym_lim = take_limit_equation(&E8LimitInput::new(s.clone())).unwrap();
    let (c1, c2) = (q(3), q(-5));
    let num_lim = take_limit_equation(&E8LimitInput::with_cs(s, RatFn::constant(c1.clone()), RatFn::constant(c2.clone()))).unwrap();
    let at = sym_lim.map(|c| Ok(c.eval_many(&[(C1, c1.clone()), (C2, c2.clone())])?)).unwrap();
    assert!(proj_equal(&at, &num_lim).unwrap());
}

#[test]
fn rejects_bad_inputs() {
    let s = sym(Family::E8, 1);
    let same = E8LimitInput::with_cs(s.clone(), RatFn::var(C1), RatFn::var(C1));
    assert!(matches!(take_limit_equation(&same), Err(Error::ShapeMismatch(_))));
    let mut short = E8LimitInput::new(s);
    short.truncation = 2;
    assert!(take_limit_equation(&short).is_err());
    assert!(take_limit_equation(&E8LimitInput::new(sym(Family::D5, 1))).is_err());
}

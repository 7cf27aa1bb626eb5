//! The structured L1 constructors against flat evaluators written straight from the displayed operators.

mod common;

use common::flat::check_family;
use qheun::algebra::Family;

#[test]
fn d5_transcriptions_agree() {
    assert_eq!(check_family(Family::D5).unwrap(), 20);
}

#[test]
fn e6_transcriptions_agree() {
    assert_eq!(check_family(Family::E6).unwrap(), 20);
}

#[test]
fn e7_transcriptions_agree() {
    assert_eq!(check_family(Family::E7).unwrap(), 20);
}

#[test]
fn e8_transcriptions_agree() {
    assert_eq!(check_family(Family::E8).unwrap(), 20);
}

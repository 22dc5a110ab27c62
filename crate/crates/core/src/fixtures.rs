//! Small algebras shipped with the repository.

use std::sync::Arc;

use crate::quiver::Algebra;

pub const ONE_JSON: &str = include_str!("../../../fixtures/one.json");
pub const A2_JSON: &str = include_str!("../../../fixtures/a2.json");
pub const A3_JSON: &str = include_str!("../../../fixtures/a3.json");
pub const DUAL_JSON: &str = include_str!("../../../fixtures/dual.json");
/// Linear A3 with the length-two path killed, over GF(3).
pub const A3_RAD2_JSON: &str = include_str!("../../../fixtures/a3_rad2_gf3.json");

fn load(text: &str) -> Arc<Algebra> {
    Algebra::from_json(text).expect("bundled fixture is valid")
}

/// A single vertex, no arrows: the field itself.
pub fn one() -> Arc<Algebra> {
    load(ONE_JSON)
}

/// `1 -> 2`.
pub fn a2() -> Arc<Algebra> {
    load(A2_JSON)
}

/// `1 -> 2 -> 3`.
pub fn a3() -> Arc<Algebra> {
    load(A3_JSON)
}

/// One loop `x` with `x^2 = 0`.
pub fn dual() -> Arc<Algebra> {
    load(DUAL_JSON)
}

pub fn a3_rad2() -> Arc<Algebra> {
    load(A3_RAD2_JSON)
}

/// Name and JSON text of every bundled fixture.
pub fn all() -> Vec<(&'static str, &'static str)> {
    vec![("ONE", ONE_JSON), ("A2", A2_JSON), ("A3", A3_JSON), ("DUAL", DUAL_JSON), ("A3_RAD2", A3_RAD2_JSON)]
}

//! Fixtures shared by the benchmarks.

use bfl_core::hopf::{build_group_algebra, build_truncated_polynomial};
use bfl_core::{HopfAlgebra, Ring};

/// Named algebras spanning the families and ranks the benches sweep.
pub fn fixtures() -> Vec<(&'static str, HopfAlgebra)> {
    let q = Ring::Rationals;
    let f2 = Ring::prime_field(2).expect("2 is prime");
    vec![
        ("Z2", build_group_algebra(q, &[2]).expect("builds")),
        ("Z2xZ2", build_group_algebra(q, &[2, 2]).expect("builds")),
        ("F2[X]/X^4", build_truncated_polynomial(f2, 2, 2, 1).expect("builds")),
    ]
}

pub fn rank_nine() -> HopfAlgebra {
    build_group_algebra(Ring::Rationals, &[3, 3]).expect("builds")
}

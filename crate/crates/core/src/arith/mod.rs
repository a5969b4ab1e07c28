// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic: rationals, real quadratic fields and two-step towers.

pub mod json;
mod quad;
mod tower;

pub use quad::{squarefree_split, QuadNum, Rational};
pub use tower::TowerNum;

/// Shorthand for a quadratic number `a + b*sqrt(n)` with integer parts.
pub fn quad(a: i64, b: i64, n: u64) -> QuadNum {
    QuadNum::normalize(
        Rational::from_integer(a.into()),
        Rational::from_integer(b.into()),
        &n.into(),
    )
}

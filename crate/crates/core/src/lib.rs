// SPDX-License-Identifier: Apache-2.0

//! Exact divisor-class arithmetic on blowups of the projective plane.
//!
//! The crate models the Picard lattice of `X_s` with its intersection form,
//! the Cremona–Kantor action through integer characteristic matrices, the
//! collision/uncollision transforms, exact spectra of small shape matrices,
//! and certificate-producing checks for families of good and wonderful rays.
//!
//! Nothing in a decision path uses floating point.

pub mod arith;
pub mod cli;
pub mod cremona;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod lattice;
pub mod report;
pub mod verify;

pub use arith::{QuadNum, Rational, TowerNum};
pub use error::{Error, Result};

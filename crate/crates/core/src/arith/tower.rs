// SPDX-License-Identifier: Apache-2.0

//! Values `u + v*sqrt(P)` with `u, v` in one quadratic field `Q(sqrt(M))`.
//!
//! Pairings against the De Fernex class multiply a class with coordinates in
//! `Q(sqrt(M))` by `sqrt(s - 1)`, which in general leaves the field. The only
//! thing ever needed from such a product is its exact sign (and equality with
//! a displayed closed form), so this type supports construction, canonical
//! form and sign, but deliberately no arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::quad::{squarefree_split, QuadNum};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerNum {
    u: QuadNum,
    v: QuadNum,
    outer: BigUint,
}

impl TowerNum {
    /// Canonical form of `u + v*sqrt(outer)`; `u` and `v` must share a field.
    pub fn new(u: QuadNum, v: QuadNum, outer: &BigUint) -> Result<Self> {
        u.common_rad(&v)?;
        if v.is_zero() || outer.is_zero() {
            return Ok(Self::from_quad(u));
        }
        let (f, p) = squarefree_split(outer);
        let v = v.scale(&BigRational::from_integer(BigInt::from(f)));
        if p.is_one() {
            return Ok(Self::from_quad(u.try_add(&v)?));
        }
        let inner = u.common_rad(&v)?;
        if inner == p {
            // sqrt(P) already lives in the inner field
            let s = QuadNum::sqrt_big(&p);
            return Ok(Self::from_quad(u.try_add(&v.try_mul(&s)?)?));
        }
        Ok(TowerNum { u, v, outer: p })
    }

    pub fn from_quad(u: QuadNum) -> Self {
        TowerNum {
            u,
            v: QuadNum::zero(),
            outer: BigUint::one(),
        }
    }

    pub fn inner_part(&self) -> &QuadNum {
        &self.u
    }

    pub fn outer_coeff(&self) -> &QuadNum {
        &self.v
    }

    pub fn outer_rad(&self) -> &BigUint {
        &self.outer
    }

    /// The value as a single-field number when the outer root collapsed.
    pub fn as_quad(&self) -> Option<&QuadNum> {
        self.v.is_zero().then_some(&self.u)
    }

    /// Exact sign.
    ///
    /// With `su = sign(u)` and `sv = sign(v)`: equal or vanishing signs decide
    /// directly; otherwise `|u|` against `|v| sqrt(P)` is settled by the sign
    /// of `u^2 - v^2 P`, which lies in the inner field.
    pub fn signum(&self) -> i8 {
        let su = self.u.signum();
        let sv = self.v.signum();
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        let p = QuadNum::from_bigint(BigInt::from(self.outer.clone()));
        let diff = &self.u * &self.u - &self.v * &self.v * p;
        match diff.signum() {
            1 => su,
            -1 => sv,
            _ => 0,
        }
    }

    /// Decimal approximation for display only.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.v.is_zero() {
            return self.u.to_decimal(digits);
        }
        let extra = digits + 8;
        let outer = QuadNum::sqrt_big(&self.outer).to_decimal(extra);
        let u = self.u.to_decimal(extra);
        let v = self.v.to_decimal(extra);
        let parse = |s: &str| -> BigRational {
            let neg = s.starts_with('-');
            let t = s.trim_start_matches('-').replace('.', "");
            let n: BigInt = t.parse().unwrap_or_default();
            let n = if neg { -n } else { n };
            BigRational::new(n, BigInt::from(10u32).pow(extra))
        };
        let approx = parse(&u) + parse(&v) * parse(&outer);
        QuadNum::from_rational(approx).to_decimal(digits)
    }
}

impl fmt::Display for TowerNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "({})·√{}", self.v, self.outer)
        } else {
            write!(f, "{} + ({})·√{}", self.u, self.v, self.outer)
        }
    }
}

impl fmt::Debug for TowerNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerNum({self})")
    }
}

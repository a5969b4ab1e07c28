// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in a real quadratic field `Q(sqrt(N))`.
//!
//! A [`QuadNum`] is always kept in canonical form: the radicand is squarefree,
//! and a value with zero irrational part is stored with radicand 1. Two values
//! are therefore equal as real numbers exactly when they are structurally
//! equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Splits `n = f^2 * r` with `r` squarefree. Returns `(f, r)`.
///
/// Trial division runs up to the cube root of the unfactored part; what is
/// left after that has at most two prime factors and is either a square or
/// squarefree.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut f = BigUint::one();
    let mut r = BigUint::one();
    let mut p = BigUint::from(2u32);
    loop {
        if &p * &p * &p > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            f *= Pow::pow(&p, e / 2);
            if e % 2 == 1 {
                r *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        f *= s;
    } else {
        r *= rest;
    }
    (f, r)
}

fn rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// An element `a + b*sqrt(rad)` of a real quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    rad: BigUint,
}

impl QuadNum {
    /// Builds the canonical form of `a + b*sqrt(n)`.
    pub fn normalize(a: Rational, b: Rational, n: &BigUint) -> Self {
        if b.is_zero() || n.is_zero() {
            return Self::from_rational(a);
        }
        let (f, r) = squarefree_split(n);
        let b = b * rat(BigInt::from(f));
        if r.is_one() {
            Self::from_rational(a + b)
        } else {
            QuadNum { a, b, rad: r }
        }
    }

    /// Assembles parts whose radicand is already squarefree.
    fn from_parts(a: Rational, b: Rational, rad: BigUint) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else if rad.is_one() {
            Self::from_rational(a + b)
        } else {
            QuadNum { a, b, rad }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadNum {
            a,
            b: Rational::zero(),
            rad: BigUint::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `sqrt(n)` in canonical form.
    pub fn sqrt(n: u64) -> Self {
        Self::normalize(Rational::zero(), Rational::one(), &BigUint::from(n))
    }

    pub fn sqrt_big(n: &BigUint) -> Self {
        Self::normalize(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn rad(&self) -> &BigUint {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// The rational value, when there is no irrational part.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    /// Radicand shared with `other`, or an error when the two values lie in
    /// different quadratic fields.
    pub fn common_rad(&self, other: &QuadNum) -> Result<BigUint> {
        if self.rad.is_one() {
            Ok(other.rad.clone())
        } else if other.rad.is_one() || self.rad == other.rad {
            Ok(self.rad.clone())
        } else {
            Err(Error::IncompatibleFields {
                left: self.rad.to_string(),
                right: other.rad.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &QuadNum) -> Result<QuadNum> {
        let rad = self.common_rad(other)?;
        Ok(Self::from_parts(
            &self.a + &other.a,
            &self.b + &other.b,
            rad,
        ))
    }

    pub fn try_sub(&self, other: &QuadNum) -> Result<QuadNum> {
        let rad = self.common_rad(other)?;
        Ok(Self::from_parts(
            &self.a - &other.a,
            &self.b - &other.b,
            rad,
        ))
    }

    pub fn try_mul(&self, other: &QuadNum) -> Result<QuadNum> {
        let rad = self.common_rad(other)?;
        let n = rat(BigInt::from(rad.clone()));
        let a = &self.a * &other.a + &self.b * &other.b * n;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::from_parts(a, b, rad))
    }

    pub fn try_div(&self, other: &QuadNum) -> Result<QuadNum> {
        self.try_mul(&other.inv()?)
    }

    /// Field norm `a^2 - b^2 N`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat(BigInt::from(self.rad.clone()))
    }

    pub fn conjugate(&self) -> QuadNum {
        QuadNum {
            a: self.a.clone(),
            b: -&self.b,
            rad: self.rad.clone(),
        }
    }

    pub fn inv(&self) -> Result<QuadNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm();
        Ok(QuadNum {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            rad: self.rad.clone(),
        })
    }

    pub fn scale(&self, k: &Rational) -> QuadNum {
        Self::from_parts(&self.a * k, &self.b * k, self.rad.clone())
    }

    /// Exact sign of `a + b*sqrt(rad)` as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * rat(BigInt::from(self.rad.clone()));
        match a2.cmp(&b2n) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> QuadNum {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Positive integer `L` such that `L*a` and `L*b` are integers.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Floor of `x * 10^digits` as an integer, for display.
    fn scaled_floor(&self, digits: u32) -> BigInt {
        let ten = BigInt::from(10u32).pow(digits);
        let a_part = &self.a * rat(ten.clone());
        if self.b.is_zero() {
            return a_part.floor().to_integer();
        }
        // |b| sqrt(N) 10^d = sqrt(p^2 N 10^{2d}) / q
        let p = self.b.numer().abs();
        let q = self.b.denom().clone();
        let radicand = &p * &p * BigInt::from(self.rad.clone()) * &ten * &ten;
        // Extra precision so the two floors do not compound.
        let guard = BigInt::from(1_000_000u32);
        let root = (radicand * &guard * &guard).sqrt();
        let b_part = Rational::new(root, q * guard);
        let b_part = if self.b.is_negative() {
            -b_part
        } else {
            b_part
        };
        (a_part + b_part).floor().to_integer()
    }

    /// Decimal approximation for display only. Never used in any decision.
    pub fn to_decimal(&self, digits: u32) -> String {
        let v = self.scaled_floor(digits);
        let neg = v.is_negative();
        let s = v.abs().to_string();
        let d = digits as usize;
        let body = if d == 0 {
            s
        } else if s.len() <= d {
            format!("0.{}{}", "0".repeat(d - s.len()), s)
        } else {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Approximate value as `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let n = self.rad.to_f64().unwrap_or(f64::NAN);
        a + b * n.sqrt()
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let babs = self.b.abs();
        let coeff = if babs.is_one() {
            String::new()
        } else if babs.is_integer() {
            babs.numer().to_string()
        } else {
            format!("({})", fmt_rational(&babs))
        };
        let root = format!("{coeff}√{}", self.rad);
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{op}{root}", fmt_rational(&self.a))
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadNum({self})")
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.try_sub(other).ok()?;
        Some(d.signum().cmp(&0))
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum::from_int(n)
    }
}

impl From<BigInt> for QuadNum {
    fn from(n: BigInt) -> Self {
        QuadNum::from_bigint(n)
    }
}

impl From<Rational> for QuadNum {
    fn from(r: Rational) -> Self {
        QuadNum::from_rational(r)
    }
}

impl Zero for QuadNum {
    fn zero() -> Self {
        QuadNum::zero()
    }
    fn is_zero(&self) -> bool {
        QuadNum::is_zero(self)
    }
}

impl One for QuadNum {
    fn one() -> Self {
        QuadNum::one()
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -self.a,
            b: -self.b,
            rad: self.rad,
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -self.clone()
    }
}

// Operator forms panic on mixed radicands; use the `try_*` methods when the
// operands are not known to share a field.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$try(rhs)
                    .expect(concat!("QuadNum ", stringify!($method)))
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::iter::Sum for QuadNum {
    fn sum<I: Iterator<Item = QuadNum>>(iter: I) -> QuadNum {
        iter.fold(QuadNum::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a QuadNum> for QuadNum {
    fn sum<I: Iterator<Item = &'a QuadNum>>(iter: I) -> QuadNum {
        iter.fold(QuadNum::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, n: u64) -> QuadNum {
        QuadNum::normalize(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            &BigUint::from(n),
        )
    }

    #[test]
    fn normalize_pulls_squares_out() {
        let x = q(1, 2, 8);
        assert_eq!(x.a(), &Rational::from_integer(1.into()));
        assert_eq!(x.b(), &Rational::from_integer(4.into()));
        assert_eq!(x.rad(), &BigUint::from(2u32));
        // (4 sqrt 2)^2 == (2 sqrt 8)^2 == 32
        let irr = q(0, 4, 2);
        assert_eq!(&irr * &irr, QuadNum::from_int(32));
    }

    #[test]
    fn normalize_perfect_square_is_rational() {
        let x = q(0, 3, 9);
        assert_eq!(x, QuadNum::from_int(9));
        assert!(x.rad().is_one());
        assert_eq!(q(5, 0, 7), QuadNum::from_int(5));
        assert!(q(5, 0, 7).rad().is_one());
    }

    #[test]
    fn squarefree_split_cases() {
        for (n, f, r) in [
            (0u64, 0u64, 1u64),
            (1, 1, 1),
            (12, 2, 3),
            (72, 6, 2),
            (49 * 4 - 28, 2, 42),
            (97 * 97 * 3, 97, 3),
            (101 * 103, 1, 101 * 103),
            (1_000_003u64 * 1_000_003, 1_000_003, 1),
        ] {
            let (ff, rr) = squarefree_split(&BigUint::from(n));
            assert_eq!((ff, rr), (BigUint::from(f), BigUint::from(r)), "n = {n}");
        }
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(q(1, 1, 2) * q(1, -1, 2), QuadNum::from_int(-1));
    }

    #[test]
    fn sum_cancels_rational_part() {
        assert_eq!(q(3, 1, 2) + q(-3, 1, 2), q(0, 2, 2));
    }

    #[test]
    fn inverse_of_unit() {
        let x = q(3, 2, 2);
        assert_eq!(x.inv().unwrap(), q(3, -2, 2));
        assert_eq!(&x * &x.inv().unwrap(), QuadNum::one());
        assert_eq!(QuadNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let e = q(0, 1, 2).try_add(&q(0, 1, 3)).unwrap_err();
        assert!(matches!(e, Error::IncompatibleFields { .. }));
        assert!(q(0, 1, 2).try_mul(&q(0, 1, 3)).is_err());
        // rationals mix with anything
        assert!(q(0, 1, 2).try_mul(&QuadNum::from_int(7)).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(q(3, -2, 2).signum(), 1);
        assert_eq!(q(0, 0, 5).signum(), 0);
        assert_eq!(q(-6, 1, 21).signum(), -1);
        assert_eq!(q(-4, 1, 15).signum(), -1);
        assert_eq!(q(-4, 1, 17).signum(), 1);
        assert_eq!(q(4, -1, 15).signum(), 1);
        assert_eq!(q(0, -1, 15).signum(), -1);
    }

    #[test]
    fn product_of_square_roots_collapses() {
        // sqrt(6) * sqrt(6) = 6 with canonical radicand 1
        let s6 = QuadNum::sqrt(6);
        let p = &s6 * &s6;
        assert_eq!(p, QuadNum::from_int(6));
        assert!(p.rad().is_one());
    }

    #[test]
    fn decimal_display() {
        assert_eq!(QuadNum::sqrt(2).to_decimal(6), "1.414213");
        assert_eq!(q(3, -2, 2).to_decimal(4), "0.1715");
        assert_eq!(q(-1, -1, 2).to_decimal(3), "-2.415");
        assert_eq!(QuadNum::from_frac(-1, 8).to_decimal(3), "-0.125");
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(12, 4, 2).to_string(), "12+4√2");
        assert_eq!(q(8, -2, 2).to_string(), "8-2√2");
        assert_eq!(q(0, -1, 3).to_string(), "-√3");
        assert_eq!(q(3, 1, 2).to_string(), "3+√2");
        let half = QuadNum::normalize(
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 2.into()),
            &BigUint::from(5u32),
        );
        assert_eq!(half.to_string(), "1/2+(1/2)√5");
    }

    #[test]
    fn ordering_within_field() {
        assert!(q(3, 1, 2) > q(4, 0, 1));
        assert!(q(1, 1, 2).partial_cmp(&q(1, 1, 3)).is_none());
    }
}

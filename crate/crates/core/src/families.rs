// SPDX-License-Identifier: Apache-2.0

//! Closed forms for the iterable Cremona families and their limit rays.
//!
//! These are written out independently of the matrix products and spectra
//! computed elsewhere, so the two can be compared exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{QuadNum, Rational, TowerNum};
use crate::cremona::{CharMatrix, ShapeMatrix};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, MultiplicityProfile, Shape};

fn big(n: u32) -> BigInt {
    BigInt::from(n)
}

/// `a + b*sqrt(rad)` with integer parts; `rad = 0` is allowed.
fn lin(a: BigInt, b: BigInt, rad: &BigInt) -> QuadNum {
    if rad.is_zero() {
        return QuadNum::from_bigint(a);
    }
    QuadNum::normalize(
        Rational::from_integer(a),
        Rational::from_integer(b),
        &rad.to_biguint().expect("non-negative radicand"),
    )
}

/// `n(n-1)`, the radicand of alpha_n.
pub fn alpha_rad(n: u32) -> BigInt {
    big(n) * (big(n) - 1)
}

/// `49n^2 - 28`, the radicand of beta_n.
pub fn beta_rad(n: u32) -> BigInt {
    BigInt::from(49) * big(n) * big(n) - 28
}

pub fn alpha(n: u32) -> QuadNum {
    lin(BigInt::zero(), BigInt::one(), &alpha_rad(n))
}

pub fn beta(n: u32) -> QuadNum {
    lin(BigInt::zero(), BigInt::one(), &beta_rad(n))
}

/// The de Jonquieres-Sturm product written entrywise, on `2n+7` points.
pub fn displayed_js(n: u32) -> CharMatrix {
    let n = n as i64;
    let s = (2 * n + 7) as usize;
    let simple = 2 * n as usize;
    let mut rows = Vec::with_capacity(s + 1);
    let mut r0 = vec![5 + 5 * n, n];
    r0.extend(std::iter::repeat_n(1, simple));
    r0.extend(std::iter::repeat_n(2 + 2 * n, 6));
    rows.push(r0);
    let mut r1 = vec![-5 * n, 1 - n];
    r1.extend(std::iter::repeat_n(-1, simple));
    r1.extend(std::iter::repeat_n(-2 * n, 6));
    rows.push(r1);
    for i in 0..simple {
        let mut r = vec![-5, -1];
        r.extend((0..simple).map(|j| if i == j { -1 } else { 0 }));
        r.extend(std::iter::repeat_n(-2, 6));
        rows.push(r);
    }
    for i in 0..6 {
        let mut r = vec![-2, 0];
        r.extend(std::iter::repeat_n(0, simple));
        r.extend((0..6).map(|j| if i == j { 0 } else { -1 }));
        rows.push(r);
    }
    CharMatrix::from_i64(&rows).expect("square by construction")
}

/// Homaloidal net `L_{5+5n}(5n, 5^{2n}, 2^6)` of the JS family.
pub fn js_homaloidal(n: u32) -> DivisorClass {
    let n = n as i64;
    let mut m = vec![5 * n];
    m.extend(std::iter::repeat_n(5, 2 * n as usize));
    m.extend(std::iter::repeat_n(2, 6));
    DivisorClass::from_ints(5 + 5 * n, &m)
}

/// Homaloidal net `L_{8n^2+27n+17}(8n^2+19n+6, (8n+6)^7, (8n+3)^{2n})`.
pub fn cg_homaloidal(n: u32) -> DivisorClass {
    let b = big(n);
    let nn = &b * &b;
    let mut m = vec![BigInt::from(8) * &nn + BigInt::from(19) * &b + 6];
    m.extend(std::iter::repeat_n(BigInt::from(8) * &b + 6, 7));
    m.extend(std::iter::repeat_n(BigInt::from(8) * &b + 3, 2 * n as usize));
    DivisorClass::from_bigints(BigInt::from(8) * &nn + BigInt::from(27) * &b + 17, m)
}

pub fn odd_shape(n: u32) -> Shape {
    Shape::new(&[1, 2 * n as usize, 6])
}

pub fn even_shape(n: u32) -> Shape {
    Shape::new(&[1, 7, 2 * n as usize])
}

/// The 4x4 action of the JS family on `(d, a, b, c)`.
pub fn displayed_a(n: u32) -> ShapeMatrix {
    let n = n as i64;
    ShapeMatrix::from_i64(
        odd_shape(n as u32),
        &[
            vec![5 * n + 5, -n, -2 * n, -12 * n - 12],
            vec![5 * n, 1 - n, -2 * n, -12 * n],
            vec![5, -1, -1, -12],
            vec![2, 0, 0, -5],
        ],
    )
    .expect("4x4")
}

/// The 4x4 action of the CG family on `(d, a, b, c)`.
pub fn displayed_b(n: u32) -> ShapeMatrix {
    let n = n as i64;
    let nn = n * n;
    ShapeMatrix::from_i64(
        even_shape(n as u32),
        &[
            vec![
                8 * nn + 27 * n + 17,
                -nn - 5 * n - 6,
                -21 * nn - 70 * n - 42,
                -2 * nn - 6 * n,
            ],
            vec![
                8 * nn + 19 * n + 6,
                -nn - 4 * n - 3,
                -21 * nn - 49 * n - 14,
                -2 * nn - 4 * n,
            ],
            vec![8 * n + 6, -n - 2, -21 * n - 15, -2 * n],
            vec![8 * n + 3, -n - 2, -21 * n - 7, -2 * n + 1],
        ],
    )
    .expect("4x4")
}

/// `2n - 1 + alpha_n`.
pub fn a_dominant_eigenvalue(n: u32) -> QuadNum {
    lin(big(2 * n) - 1, BigInt::one(), &alpha_rad(n))
}

/// `(n beta_n + 7n^2 - 2) / 2`.
pub fn b_dominant_eigenvalue(n: u32) -> QuadNum {
    let twice = lin(BigInt::from(7) * big(n) * big(n) - 2, big(n), &beta_rad(n));
    twice.scale(&Rational::new(BigInt::one(), BigInt::from(2)))
}

/// Orbit term at `k = 1` from seed `(1, 1, 0, 0)`.
pub fn a_orbit_first(n: u32) -> [BigInt; 4] {
    let n = big(n);
    [
        BigInt::from(4) * &n + 5,
        BigInt::from(4) * &n + 1,
        BigInt::from(4),
        BigInt::from(2),
    ]
}

pub fn b_orbit_first(n: u32) -> [BigInt; 4] {
    let n = big(n);
    let nn = &n * &n;
    [
        BigInt::from(7) * &nn + BigInt::from(22) * &n + 11,
        BigInt::from(7) * &nn + BigInt::from(15) * &n + 3,
        BigInt::from(7) * &n + 4,
        BigInt::from(7) * &n + 1,
    ]
}

struct OddParts {
    d: QuadNum,
    a: QuadNum,
    b: QuadNum,
    c: QuadNum,
}

fn odd_parts(n: u32) -> OddParts {
    let r = alpha_rad(n);
    let nb = big(n);
    OddParts {
        d: QuadNum::from_bigint(BigInt::from(5) * &nb * &nb + BigInt::from(4) * &nb),
        a: lin(BigInt::from(3) * &nb * &nb, BigInt::from(2) * &nb, &r),
        b: lin(BigInt::from(3) * &nb, BigInt::from(2), &r),
        c: lin(&nb * (&nb + 2), -nb.clone(), &r),
    }
}

struct EvenParts {
    d: QuadNum,
    /// `7n(9n + beta + 6)`; the first multiplicity is `(n+2)` times this.
    c: QuadNum,
    b: QuadNum,
}

fn even_parts(n: u32) -> EvenParts {
    let r = beta_rad(n);
    let nb = big(n);
    let nn = &nb * &nb;
    EvenParts {
        d: QuadNum::from_bigint(
            BigInt::from(14) * &nb * (BigInt::from(8) * &nn + BigInt::from(27) * &nb + 16),
        ),
        c: lin(
            BigInt::from(7) * &nb * (BigInt::from(9) * &nb + 6),
            BigInt::from(7) * &nb,
            &r,
        ),
        b: lin(
            &nb * (BigInt::from(21) * &nn + BigInt::from(126) * &nb + 84),
            -(&nb * (BigInt::from(3) * &nb + BigInt::from(2))),
            &r,
        ),
    }
}

fn profile(d: QuadNum, blocks: Vec<(QuadNum, usize)>) -> DivisorClass {
    MultiplicityProfile { degree: d, blocks }.expand()
}

/// Limit ray of the JS family, on `2n+7` points.
pub fn w_odd(n: u32) -> DivisorClass {
    let p = odd_parts(n);
    profile(p.d, vec![(p.a, 1), (p.b, 2 * n as usize), (p.c, 6)])
}

/// Limit ray of the CG family, on `2n+8` points.
pub fn w_even(n: u32) -> DivisorClass {
    let p = even_parts(n);
    let a = p.c.scale(&Rational::from_integer(big(n) + 2));
    profile(p.d, vec![(a, 1), (p.b, 7), (p.c, 2 * n as usize)])
}

/// On `2n+10` points.
pub fn w_plus_even(n: u32) -> DivisorClass {
    let p = odd_parts(n);
    let two = Rational::from_integer(2.into());
    profile(
        p.d.scale(&two),
        vec![
            (p.a, 4),
            (p.b.scale(&two), 2 * n as usize),
            (p.c.scale(&two), 6),
        ],
    )
}

/// On `2n+11` points.
pub fn w_plus_odd(n: u32) -> DivisorClass {
    let p = even_parts(n);
    let two = Rational::from_integer(2.into());
    let a = p.c.scale(&Rational::from_integer(big(n) + 2));
    profile(
        p.d.scale(&two),
        vec![
            (a, 4),
            (p.b.scale(&two), 7),
            (p.c.scale(&two), 2 * n as usize),
        ],
    )
}

/// On `(n+2)^2 + 4` points.
pub fn w_plus_sq4(n: u32) -> DivisorClass {
    let p = even_parts(n);
    let r = (n + 1) as usize;
    let a = p.c.scale(&Rational::new(big(n) + 2, big(n) + 1));
    profile(p.d, vec![(a, r * r), (p.b, 7), (p.c, 2 * n as usize)])
}

/// On `(n+3)^2 + 2` points.
pub fn w_plus_sq2(n: u32) -> DivisorClass {
    let p = even_parts(n);
    let r = (n + 2) as usize;
    profile(
        p.d,
        vec![(p.c.clone(), r * r), (p.b, 7), (p.c, 2 * n as usize)],
    )
}

/// The De Fernex pairing of `W+_sq2` as an explicit expression:
/// `-63n^4 - 567n^3 - 1386n^2 - 756n + 14(8n^3+27n^2+16n) sqrt(n^2+6n+10)
///  - 7(n^2+3n+2) sqrt(49n^4 - 28n^2)`.
pub fn sq2_defernex_expression(n: u32) -> TowerNum {
    let nb = big(n);
    let n2 = &nb * &nb;
    let n3 = &n2 * &nb;
    let n4 = &n3 * &nb;
    let poly = -BigInt::from(63) * &n4
        - BigInt::from(567) * &n3
        - BigInt::from(1386) * &n2
        - BigInt::from(756) * &nb;
    // sqrt(49n^4 - 28n^2) = n * beta_n
    let inner_coeff = -BigInt::from(7) * (&n2 + BigInt::from(3) * &nb + 2) * &nb;
    let u = lin(poly, inner_coeff, &beta_rad(n));
    let v = QuadNum::from_bigint(
        BigInt::from(14)
            * (BigInt::from(8) * &n3 + BigInt::from(27) * &n2 + BigInt::from(16) * &nb),
    );
    let outer: BigInt = &n2 + BigInt::from(6) * &nb + 10;
    let outer = outer.to_biguint().expect("positive");
    TowerNum::new(u, v, &outer).expect("compatible fields")
}

/// Families of wonderful rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Odd,
    Even,
    EvenPlus,
    OddPlus,
    Sq4,
    Sq2,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Odd,
        Family::Even,
        Family::EvenPlus,
        Family::OddPlus,
        Family::Sq4,
        Family::Sq2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Odd => "odd",
            Family::Even => "even",
            Family::EvenPlus => "even_plus",
            Family::OddPlus => "odd_plus",
            Family::Sq4 => "sq4",
            Family::Sq2 => "sq2",
        }
    }

    pub fn min_n(self) -> u32 {
        match self {
            Family::Odd | Family::EvenPlus => 2,
            _ => 1,
        }
    }

    pub fn check_n(self, n: u32) -> Result<()> {
        if n < self.min_n() {
            return Err(Error::Domain(format!(
                "family {} requires n >= {}, got {n}",
                self.name(),
                self.min_n()
            )));
        }
        Ok(())
    }

    /// Whether the family comes from the JS iteration (otherwise CG).
    pub fn is_js_based(self) -> bool {
        matches!(self, Family::Odd | Family::EvenPlus)
    }

    /// Radius of the uncollision applied to the base limit ray at point 0.
    pub fn radius(self, n: u32) -> Option<u32> {
        match self {
            Family::Odd | Family::Even => None,
            Family::EvenPlus | Family::OddPlus => Some(2),
            Family::Sq4 => Some(n + 1),
            Family::Sq2 => Some(n + 2),
        }
    }

    pub fn s(self, n: u32) -> usize {
        let n = n as usize;
        match self {
            Family::Odd => 2 * n + 7,
            Family::Even => 2 * n + 8,
            Family::EvenPlus => 2 * n + 10,
            Family::OddPlus => 2 * n + 11,
            Family::Sq4 => (n + 2) * (n + 2) + 4,
            Family::Sq2 => (n + 3) * (n + 3) + 2,
        }
    }

    pub fn base_matrix(self, n: u32) -> ShapeMatrix {
        if self.is_js_based() {
            displayed_a(n)
        } else {
            displayed_b(n)
        }
    }

    pub fn closed_form(self, n: u32) -> Result<DivisorClass> {
        self.check_n(n)?;
        Ok(match self {
            Family::Odd => w_odd(n),
            Family::Even => w_even(n),
            Family::EvenPlus => w_plus_even(n),
            Family::OddPlus => w_plus_odd(n),
            Family::Sq4 => w_plus_sq4(n),
            Family::Sq2 => w_plus_sq2(n),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }
}

/// `sqrt(n^2+6n+10) < n + 3 + 1/(2n)`, squared and cleared of denominators:
/// `4n^2 (n^2+6n+10) < (2n(n+3) + 1)^2`. Returns both sides.
pub fn sq2_bound_outer(n: u32) -> (BigInt, BigInt) {
    let nb = big(n);
    let lhs = BigInt::from(4) * &nb * &nb * (&nb * &nb + BigInt::from(6) * &nb + 10);
    let t = BigInt::from(2) * &nb * (&nb + 3) + 1;
    (lhs, &t * &t)
}

/// `sqrt(49n^4 - 28n^2) > 7n^2 - 3`, squared (the right side is positive
/// for `n >= 1`). Returns both sides of `49n^4 - 28n^2 > (7n^2 - 3)^2`.
pub fn sq2_bound_inner(n: u32) -> (BigInt, BigInt) {
    let nb = big(n);
    let n2 = &nb * &nb;
    let lhs = BigInt::from(49) * &n2 * &n2 - BigInt::from(28) * &n2;
    let t = BigInt::from(7) * &n2 - 3;
    (lhs, &t * &t)
}

/// The pairing expression with both roots replaced by their bounds, as an
/// exact rational.
pub fn sq2_bounded_value(n: u32) -> Rational {
    let nb = big(n);
    let q = |x: BigInt| Rational::from_integer(x);
    let n2 = &nb * &nb;
    let n3 = &n2 * &nb;
    let n4 = &n3 * &nb;
    let poly = -BigInt::from(63) * &n4
        - BigInt::from(567) * &n3
        - BigInt::from(1386) * &n2
        - BigInt::from(756) * &nb;
    let outer_bound = q(&nb + 3) + Rational::new(BigInt::one(), BigInt::from(2) * &nb);
    let inner_bound = q(BigInt::from(7) * &n2 - 3);
    q(poly)
        + q(BigInt::from(14)
            * (BigInt::from(8) * &n3 + BigInt::from(27) * &n2 + BigInt::from(16) * &nb))
            * outer_bound
        - q(BigInt::from(7) * (&n2 + BigInt::from(3) * &nb + 2)) * inner_bound
}

/// `7(-7n^2 + 24n + 22)`.
pub fn sq2_final_bound(n: u32) -> BigInt {
    let nb = big(n);
    BigInt::from(7) * (-BigInt::from(7) * &nb * &nb + BigInt::from(24) * &nb + 22)
}

// SPDX-License-Identifier: Apache-2.0

//! The Cremona–Kantor group through integer characteristic matrices.
//!
//! A matrix acts on coordinate vectors `(d, -m_1, ..., -m_s)` in the basis
//! `(H, E_1, ..., E_s)`; its first column is the homaloidal net. Composition
//! is the matrix product, so `compose(a, b)` applies `b`'s map first and then
//! `a`'s ("`b` followed by `a`").

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::json::bigint_rows;
use crate::arith::QuadNum;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Shape};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += aik * bkj;
                }
            }
        }
    }
    out
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn render_rows(rows: &[Vec<BigInt>], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let width = rows
        .iter()
        .flat_map(|r| r.iter().map(|x| x.to_string().len()))
        .max()
        .unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|x| format!("{:>width$}", x.to_string()))
            .collect();
        writeln!(f, "{}", cells.join(" "))?;
    }
    Ok(())
}

/// Characteristic matrix of an element of the Cremona–Kantor group on `X_s`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CharMatrix {
    rows: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    #[serde(with = "bigint_rows")]
    rows: Vec<Vec<BigInt>>,
}

impl From<CharMatrix> for RawMatrix {
    fn from(m: CharMatrix) -> Self {
        RawMatrix { rows: m.rows }
    }
}

impl TryFrom<RawMatrix> for CharMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        CharMatrix::from_rows(raw.rows)
    }
}

impl CharMatrix {
    /// Wraps a square matrix of size `s + 1` without validating it.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::domain("empty characteristic matrix"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: r.len(),
            });
        }
        Ok(CharMatrix { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| big(x)).collect())
                .collect(),
        )
    }

    pub fn identity(s: usize) -> Self {
        CharMatrix {
            rows: identity_rows(s + 1),
        }
    }

    /// Number of blown-up points.
    pub fn s(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    /// Places a matrix on `k` points at the given point indices of `X_s`,
    /// with identity rows and columns elsewhere.
    pub fn embed(&self, indices: &[usize], s: usize) -> Result<Self> {
        if indices.len() != self.s() {
            return Err(Error::LengthMismatch {
                expected: self.s(),
                actual: indices.len(),
            });
        }
        check_distinct(indices, s)?;
        let mut rows = identity_rows(s + 1);
        let pos = |i: usize| if i == 0 { 0 } else { indices[i - 1] + 1 };
        for i in 0..=self.s() {
            for j in 0..=self.s() {
                rows[pos(i)][pos(j)] = self.rows[i][j].clone();
            }
        }
        Ok(CharMatrix { rows })
    }

    pub fn compose(&self, other: &CharMatrix) -> Result<CharMatrix> {
        if self.s() != other.s() {
            return Err(Error::LengthMismatch {
                expected: self.s(),
                actual: other.s(),
            });
        }
        Ok(CharMatrix {
            rows: mat_mul(&self.rows, &other.rows),
        })
    }

    pub fn transpose(&self) -> CharMatrix {
        let n = self.rows.len();
        CharMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == identity_rows(self.rows.len())
    }

    /// `M v` on raw coordinates `(d, -m_1, ..., -m_s)`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The homaloidal net `L_d(m_1, ..., m_s)` read from the first column.
    pub fn homaloidal(&self) -> DivisorClass {
        let d = self.rows[0][0].clone();
        let m = self.rows[1..].iter().map(|r| -&r[0]).collect();
        DivisorClass::from_bigints(d, m)
    }

    /// Checks `M^T J M = J`, `M k = k` for the canonical vector, and the
    /// homaloidal conditions `d^2 - sum m^2 = 1`, `3d - sum m = 3`, `d >= 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.rows.len();
        let j = |i: usize| if i == 0 { big(1) } else { big(-1) };
        for a in 0..n {
            for b in 0..n {
                let v: BigInt = (0..n)
                    .map(|k| j(k) * &self.rows[k][a] * &self.rows[k][b])
                    .sum();
                let want = if a == b { j(a) } else { BigInt::zero() };
                if v != want {
                    return Err(Error::domain(format!(
                        "intersection form not preserved at ({a}, {b}): {v} != {want}"
                    )));
                }
            }
        }
        let canon: Vec<BigInt> = (0..n)
            .map(|i| if i == 0 { big(-3) } else { big(1) })
            .collect();
        if self.mul_vec(&canon) != canon {
            return Err(Error::domain("canonical vector not fixed"));
        }
        let h = self.homaloidal();
        let (d, m) = h.to_integers().expect("integer matrix");
        let sq: BigInt = &d * &d - m.iter().map(|x| x * x).sum::<BigInt>();
        let lin: BigInt = big(3) * &d - m.iter().sum::<BigInt>();
        if sq != big(1) || lin != big(3) || d < big(1) {
            return Err(Error::domain(format!(
                "first column {h} is not a homaloidal net"
            )));
        }
        Ok(())
    }

    /// Image of a class: `M (d, -m)^T` read back as `(d', -m')`.
    pub fn apply(&self, x: &DivisorClass) -> Result<DivisorClass> {
        if x.s() != self.s() {
            return Err(Error::LengthMismatch {
                expected: self.s(),
                actual: x.s(),
            });
        }
        let v: Vec<QuadNum> = std::iter::once(x.degree().clone())
            .chain(x.mults().iter().map(|m| -m))
            .collect();
        let mut out = Vec::with_capacity(v.len());
        for row in &self.rows {
            let mut acc = QuadNum::zero();
            for (e, c) in row.iter().zip(&v) {
                if !e.is_zero() {
                    acc = acc.try_add(&c.try_mul(&QuadNum::from_bigint(e.clone()))?)?;
                }
            }
            out.push(acc);
        }
        let degree = out[0].clone();
        let mults = out[1..].iter().map(|m| -m).collect();
        DivisorClass::new(degree, mults)
    }
}

impl fmt::Display for CharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_rows(&self.rows, f)
    }
}

impl fmt::Debug for CharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharMatrix(s={})\n{self}", self.s())
    }
}

fn check_distinct(indices: &[usize], s: usize) -> Result<()> {
    let mut seen = vec![false; s];
    for &i in indices {
        if i >= s {
            return Err(Error::IndexOutOfRange { index: i, len: s });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::domain(format!("repeated point index {i}")));
        }
    }
    Ok(())
}

/// Homogeneous involution on `k` points: `d`, `m` in the first row/column,
/// `diag` on the diagonal and `off` elsewhere in the point block.
fn homogeneous(k: usize, d: i64, m: i64, diag: i64, off: i64) -> CharMatrix {
    let rows = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| match (i, j) {
                    (0, 0) => big(d),
                    (0, _) => big(m),
                    (_, 0) => big(-m),
                    _ if i == j => big(diag),
                    _ => big(off),
                })
                .collect()
        })
        .collect();
    CharMatrix { rows }
}

fn place(base: CharMatrix, indices: &[usize], s: usize) -> Result<CharMatrix> {
    if indices.len() != base.s() {
        return Err(Error::domain(format!(
            "expected {} point indices, got {}",
            base.s(),
            indices.len()
        )));
    }
    base.embed(indices, s)
}

/// Standard quadratic involution `Q` on three points.
pub fn quadratic(indices: [usize; 3], s: usize) -> Result<CharMatrix> {
    place(homogeneous(3, 2, 1, 0, -1), &indices, s)
}

/// Quintic Sturm involution `S` on six points.
pub fn sturm(indices: [usize; 6], s: usize) -> Result<CharMatrix> {
    place(homogeneous(6, 5, 2, 0, -1), &indices, s)
}

/// Octic Geiser involution `G` on seven points.
pub fn geiser(indices: [usize; 7], s: usize) -> Result<CharMatrix> {
    place(homogeneous(7, 8, 3, -2, -1), &indices, s)
}

/// Bertini involution `B` of degree 17 on eight points.
pub fn bertini(indices: [usize; 8], s: usize) -> Result<CharMatrix> {
    place(homogeneous(8, 17, 6, -3, -2), &indices, s)
}

/// De Jonquières involution `J_n` on `2n + 1` points; the first index is
/// the point of multiplicity `n`.
pub fn jonquieres(n: u32, indices: &[usize], s: usize) -> Result<CharMatrix> {
    if n == 0 {
        return Err(Error::domain("de Jonquieres map needs n >= 1"));
    }
    let n = i64::from(n);
    let k = 2 * n as usize + 1;
    let rows = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| match (i, j) {
                    (0, 0) => big(1 + n),
                    (0, 1) => big(n),
                    (0, _) => big(1),
                    (1, 0) => big(-n),
                    (1, 1) => big(1 - n),
                    (1, _) => big(-1),
                    (_, 0) | (_, 1) => big(-1),
                    _ if i == j => big(-1),
                    _ => big(0),
                })
                .collect()
        })
        .collect();
    place(CharMatrix { rows }, indices, s)
}

/// Quasi-homogeneous involution `C_n` on `2n + 2` points; the first index
/// is the point of multiplicity `n^2 - n`.
pub fn cmap(n: u32, indices: &[usize], s: usize) -> Result<CharMatrix> {
    if n == 0 {
        return Err(Error::domain("C_n needs n >= 1"));
    }
    let n = i64::from(n);
    let k = 2 * n as usize + 2;
    let rows = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| match (i, j) {
                    (0, 0) => big(1 + n * n),
                    (0, 1) => big(n * n - n),
                    (0, _) => big(n),
                    (1, 0) => big(n - n * n),
                    (1, 1) => big(2 * n - n * n),
                    (1, _) => big(1 - n),
                    (_, 0) => big(-n),
                    (_, 1) => big(1 - n),
                    _ if i == j => big(0),
                    _ => big(-1),
                })
                .collect()
        })
        .collect();
    place(CharMatrix { rows }, indices, s)
}

/// `JS_n` on `2n + 7` points: Sturm on the last six points followed by
/// de Jonquières on the first `2n + 1`.
pub fn js_family(n: u32) -> Result<CharMatrix> {
    let n_us = n as usize;
    let s = 2 * n_us + 7;
    let j: Vec<usize> = (0..=2 * n_us).collect();
    let st: Vec<usize> = (2 * n_us + 1..s).collect();
    let jm = jonquieres(n, &j, s)?;
    let sm = sturm(st.try_into().expect("six points"), s)?;
    jm.compose(&sm)
}

/// `CG_n` on `2n + 8` points: Geiser on points 2..8 followed by `C_{n+3}`
/// on all points.
pub fn cg_family(n: u32) -> Result<CharMatrix> {
    let (c, g) = cg_factors(n)?;
    c.compose(&g)
}

/// The two factors of `CG_n`: `(C_{n+3}, Geiser)`, both on `X_{2n+8}`.
pub fn cg_factors(n: u32) -> Result<(CharMatrix, CharMatrix)> {
    let s = 2 * n as usize + 8;
    let all: Vec<usize> = (0..s).collect();
    let c = cmap(n + 3, &all, s)?;
    let g = geiser([1, 2, 3, 4, 5, 6, 7], s)?;
    Ok((c, g))
}

/// Compressed action of a characteristic matrix on a fixed multiplicity
/// shape, in coordinates `(d, v_1, ..., v_k)` with `v_j` the common
/// multiplicity of block `j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeMatrix {
    pub shape: Shape,
    #[serde(with = "bigint_rows")]
    pub rows: Vec<Vec<BigInt>>,
}

impl ShapeMatrix {
    pub fn new(shape: Shape, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = shape.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape} needs a {n}x{n} matrix"
            )));
        }
        Ok(ShapeMatrix { shape, rows })
    }

    pub fn from_i64(shape: Shape, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            shape,
            rows.iter()
                .map(|r| r.iter().map(|&x| big(x)).collect())
                .collect(),
        )
    }

    pub fn identity(shape: Shape) -> Self {
        let n = shape.dim();
        ShapeMatrix {
            shape,
            rows: identity_rows(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_quad(&self, v: &[QuadNum]) -> Vec<QuadNum> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .map(|(a, b)| b * &QuadNum::from_bigint(a.clone()))
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &ShapeMatrix) -> ShapeMatrix {
        ShapeMatrix {
            shape: self.shape.clone(),
            rows: mat_mul(&self.rows, &other.rows),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| self.rows[i][i].clone()).sum()
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.dim())
            .map(|j| {
                v.iter()
                    .enumerate()
                    .map(|(i, x)| x * &self.rows[i][j])
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for ShapeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_rows(&self.rows, f)
    }
}

impl fmt::Debug for ShapeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShapeMatrix{}\n{self}", self.shape)
    }
}

/// Compresses `m` to its action on classes of the given shape.
///
/// Fails unless every row inside a block compresses to the same row, which
/// is exactly the condition that `m` maps the shape to itself.
pub fn shape_action(m: &CharMatrix, shape: &Shape) -> Result<ShapeMatrix> {
    if shape.total() != m.s() {
        return Err(Error::ShapeMismatch(format!(
            "shape {shape} covers {} points, matrix acts on {}",
            shape.total(),
            m.s()
        )));
    }
    let ranges = shape.ranges();
    // Compressed row for matrix row i: coefficients on (d, v_1, ..., v_k),
    // expressed for the output coordinate (d' for i = 0, v' otherwise).
    let compress_row = |i: usize| -> Vec<BigInt> {
        let row = &m.rows()[i];
        let sign = if i == 0 { big(1) } else { big(-1) };
        let mut out = vec![&sign * &row[0]];
        for r in &ranges {
            let block: BigInt = r.clone().map(|p| row[p + 1].clone()).sum();
            out.push(-&sign * block);
        }
        out
    };
    let mut rows = vec![compress_row(0)];
    for r in &ranges {
        let first = compress_row(r.start + 1);
        for p in r.clone().skip(1) {
            if compress_row(p + 1) != first {
                return Err(Error::ShapeMismatch(format!(
                    "matrix does not preserve shape {shape}: rows {} and {} differ",
                    r.start + 1,
                    p + 1
                )));
            }
        }
        rows.push(first);
    }
    ShapeMatrix::new(shape.clone(), rows)
}

/// Result of greedy Cremona reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub input: DivisorClass,
    pub reduced: DivisorClass,
    /// Base points of each quadratic step, in order of application.
    pub steps: Vec<[usize; 3]>,
    /// Set when the degree went negative before the class became reduced.
    pub non_effective: bool,
}

impl Reduction {
    /// The steps as characteristic matrices.
    pub fn matrices(&self) -> Vec<CharMatrix> {
        self.steps
            .iter()
            .map(|&ix| quadratic(ix, self.input.s()).expect("valid step"))
            .collect()
    }

    /// Replays the trace with full matrices and checks it lands on `reduced`.
    pub fn replay(&self) -> Result<bool> {
        let mut x = self.input.clone();
        for m in self.matrices() {
            m.validate()?;
            x = m.apply(&x)?;
        }
        Ok(x == self.reduced)
    }
}

/// Indices of the three largest entries; lowest indices win ties.
fn top_three(m: &[BigInt]) -> [usize; 3] {
    let mut idx: Vec<usize> = (0..m.len()).collect();
    idx.sort_by(|&a, &b| m[b].cmp(&m[a]).then(a.cmp(&b)));
    [idx[0], idx[1], idx[2]]
}

/// Applies quadratic maps at the three largest multiplicities while the
/// degree is below their sum.
pub fn cremona_reduce(x: &DivisorClass) -> Result<Reduction> {
    let (mut d, mut m) = x
        .to_integers()
        .ok_or_else(|| Error::domain("Cremona reduction needs an integer class"))?;
    let mut steps = Vec::new();
    let mut non_effective = false;
    if m.len() < 3 {
        let mut top = m.clone();
        top.sort_by(|a, b| b.cmp(a));
        let sum: BigInt = top.iter().sum();
        if d < sum {
            return Err(Error::domain("fewer than three points and not reduced"));
        }
    } else {
        loop {
            let [i, j, k] = top_three(&m);
            let sum = &m[i] + &m[j] + &m[k];
            if d >= sum {
                break;
            }
            let (mi, mj, mk) = (m[i].clone(), m[j].clone(), m[k].clone());
            m[i] = &d - &mj - &mk;
            m[j] = &d - &mi - &mk;
            m[k] = &d - &mi - &mj;
            d = big(2) * &d - sum;
            steps.push([i, j, k]);
            if d.is_negative() {
                non_effective = true;
                break;
            }
        }
    }
    Ok(Reduction {
        input: x.clone(),
        reduced: DivisorClass::from_bigints(d, m),
        steps,
        non_effective,
    })
}

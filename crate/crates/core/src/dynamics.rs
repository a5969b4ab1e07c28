// SPDX-License-Identifier: Apache-2.0

//! Orbits of shape matrices, exact spectra and limit rays.
//!
//! Spectra are computed only in the case the constructions need: the
//! characteristic polynomial splits over the rationals into linear factors
//! and at most one irreducible quadratic with real roots. Everything else is
//! reported as unsupported rather than approximated.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::json::{bigint_vec, int_to_value};
use crate::arith::{QuadNum, Rational};
use crate::cremona::ShapeMatrix;
use crate::error::{Error, Result};
use crate::lattice::{field_of, DivisorClass, MultiplicityProfile};

/// `term(k) = M^k seed` for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSequence {
    pub matrix: ShapeMatrix,
    #[serde(with = "bigint_vec")]
    pub seed: Vec<BigInt>,
    #[serde(with = "crate::arith::json::bigint_rows")]
    pub terms: Vec<Vec<BigInt>>,
}

impl OrbitSequence {
    pub fn term(&self, k: usize) -> Option<&[BigInt]> {
        self.terms.get(k).map(Vec::as_slice)
    }

    /// Term `k` expanded to a full class through the matrix shape.
    pub fn class(&self, k: usize) -> Option<DivisorClass> {
        self.term(k).map(|t| expand_compressed(&self.matrix, t))
    }
}

pub fn iterate(m: &ShapeMatrix, seed: &[BigInt], k_max: usize) -> Result<OrbitSequence> {
    if seed.len() != m.dim() {
        return Err(Error::LengthMismatch {
            expected: m.dim(),
            actual: seed.len(),
        });
    }
    let mut terms = Vec::with_capacity(k_max + 1);
    terms.push(seed.to_vec());
    for _ in 0..k_max {
        let next = m.apply(terms.last().expect("non-empty"));
        terms.push(next);
    }
    Ok(OrbitSequence {
        matrix: m.clone(),
        seed: seed.to_vec(),
        terms,
    })
}

fn expand_compressed(m: &ShapeMatrix, v: &[BigInt]) -> DivisorClass {
    let blocks = m
        .shape
        .counts()
        .iter()
        .zip(&v[1..])
        .map(|(&c, x)| (QuadNum::from_bigint(x.clone()), c))
        .collect();
    MultiplicityProfile {
        degree: QuadNum::from_bigint(v[0].clone()),
        blocks,
    }
    .expand()
}

fn expand_quad(m: &ShapeMatrix, v: &[QuadNum]) -> DivisorClass {
    let blocks = m
        .shape
        .counts()
        .iter()
        .zip(&v[1..])
        .map(|(&c, x)| (x.clone(), c))
        .collect();
    MultiplicityProfile {
        degree: v[0].clone(),
        blocks,
    }
    .expand()
}

/// Characteristic polynomial `det(xI - M)`, coefficients from the constant
/// term up (monic).
pub fn char_poly(m: &ShapeMatrix) -> Vec<BigInt> {
    // Faddeev–LeVerrier over the rationals.
    let n = m.dim();
    let a: Vec<Vec<Rational>> = m
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for l in 0..n {
                    acc += &a[i][l] * &mk[l][j];
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn poly_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides a monic polynomial by `(x - r)`; `r` must be a root.
fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

const MAX_FACTOR: u64 = 1 << 50;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let Some(v) = n.to_u64().filter(|&v| v <= MAX_FACTOR) else {
        return Err(Error::Unsupported(format!(
            "constant term {n} too large for rational root search"
        )));
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Roots with multiplicities, all in one real quadratic field.
pub fn split_roots(p: &[BigInt]) -> Result<Vec<(QuadNum, usize)>> {
    let mut p = p.to_vec();
    let mut roots: Vec<(QuadNum, usize)> = Vec::new();
    let push = |r: QuadNum, roots: &mut Vec<(QuadNum, usize)>| match roots
        .iter_mut()
        .find(|(x, _)| *x == r)
    {
        Some((_, c)) => *c += 1,
        None => roots.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(QuadNum::zero(), &mut roots);
    }
    if p.len() > 1 {
        for d in divisors(&p[0])? {
            for cand in [d.clone(), -d] {
                while p.len() > 1 && poly_eval(&p, &cand).is_zero() {
                    p = deflate(&p, &cand);
                    push(QuadNum::from_bigint(cand.clone()), &mut roots);
                }
            }
        }
    }
    match p.len() - 1 {
        0 => {}
        2 => {
            let (c, b) = (&p[0], &p[1]);
            let disc = b * b - BigInt::from(4) * c;
            if disc.is_negative() {
                return Err(Error::Unsupported("complex eigenvalues".into()));
            }
            let disc = disc.to_biguint().expect("non-negative");
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let a = Rational::from_integer(-b.clone()) * &half;
            push(
                QuadNum::normalize(a.clone(), half.clone(), &disc),
                &mut roots,
            );
            push(QuadNum::normalize(a, -half, &disc), &mut roots);
        }
        deg => {
            return Err(Error::Unsupported(format!(
                "irreducible factor of degree {deg} in characteristic polynomial"
            )));
        }
    }
    roots.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal));
    Ok(roots)
}

type QMatrix = Vec<Vec<QuadNum>>;

fn to_quad_matrix(m: &ShapeMatrix) -> QMatrix {
    m.rows
        .iter()
        .map(|r| r.iter().map(|x| QuadNum::from_bigint(x.clone())).collect())
        .collect()
}

fn qmat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn qmat_vec(a: &QMatrix, v: &[QuadNum]) -> Vec<QuadNum> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("non-zero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel, one vector per free column (that entry set to 1).
fn nullspace(m: &QMatrix) -> Vec<Vec<QuadNum>> {
    let mut a = m.clone();
    let n = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![QuadNum::zero(); n];
            v[free] = QuadNum::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}

/// Solves `B c = rhs` where the columns of `B` are `basis`.
fn solve_in_basis(basis: &[Vec<QuadNum>], rhs: &[QuadNum]) -> Option<Vec<QuadNum>> {
    let n = rhs.len();
    if basis.len() != n {
        return None;
    }
    let mut aug: QMatrix = (0..n)
        .map(|i| {
            let mut row: Vec<QuadNum> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

fn shifted(m: &QMatrix, lambda: &QuadNum) -> QMatrix {
    m.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| if i == j { x - lambda } else { x.clone() })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: QuadNum,
    pub algebraic_multiplicity: usize,
    /// Basis of `ker(M - value)`.
    pub eigenvectors: Vec<Vec<QuadNum>>,
    /// Basis of `ker((M - value)^a)` with `a` the algebraic multiplicity.
    pub generalized: Vec<Vec<QuadNum>>,
}

impl Eigenvalue {
    pub fn geometric_multiplicity(&self) -> usize {
        self.eigenvectors.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.eigenvectors.len() == self.algebraic_multiplicity
    }
}

/// One exact comparison `|dominant| - |other| > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceCheck {
    pub other: QuadNum,
    pub abs_difference: QuadNum,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    /// Coefficients of `det(xI - M)` from the constant term up.
    #[serde(with = "bigint_vec")]
    pub char_poly: Vec<BigInt>,
    /// Distinct eigenvalues in decreasing order.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Index into `eigenvalues` of the strictly dominant, simple eigenvalue.
    pub dominant: Option<usize>,
    pub dominance: Vec<DominanceCheck>,
}

impl EigenDecomposition {
    pub fn dominant_eigenvalue(&self) -> Option<&Eigenvalue> {
        self.dominant.map(|i| &self.eigenvalues[i])
    }

    pub fn field_rad(&self) -> num_bigint::BigUint {
        field_of(self.eigenvalues.iter().map(|e| &e.value)).expect("single field")
    }

    /// Human-readable characteristic polynomial.
    pub fn char_poly_string(&self) -> String {
        poly_to_string(&self.char_poly)
    }
}

pub fn poly_to_string(p: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coeff = if mag.is_one() && k > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let mono = match k {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{k}"),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push((sign, mono));
    }
    let mut out = String::new();
    for (i, (sign, mono)) in parts.into_iter().enumerate() {
        if i == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn eigen(m: &ShapeMatrix) -> Result<EigenDecomposition> {
    let cp = char_poly(m);
    let roots = split_roots(&cp)?;
    let qm = to_quad_matrix(m);
    let mut eigenvalues = Vec::with_capacity(roots.len());
    for (value, mult) in roots {
        let shifted_m = shifted(&qm, &value);
        let eigenvectors = nullspace(&shifted_m);
        let generalized = if eigenvectors.len() == mult {
            eigenvectors.clone()
        } else {
            let mut p = shifted_m.clone();
            for _ in 1..mult {
                p = qmat_mul(&p, &shifted_m);
            }
            nullspace(&p)
        };
        debug_assert_eq!(generalized.len(), mult);
        eigenvalues.push(Eigenvalue {
            value,
            algebraic_multiplicity: mult,
            eigenvectors,
            generalized,
        });
    }
    // Largest absolute value; it must be simple and beat every other one.
    let abs: Vec<QuadNum> = eigenvalues.iter().map(|e| e.value.abs()).collect();
    let mut best = 0;
    for i in 1..abs.len() {
        if abs[i].partial_cmp(&abs[best]) == Some(Ordering::Greater) {
            best = i;
        }
    }
    let dominance: Vec<DominanceCheck> = eigenvalues
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != best)
        .map(|(i, e)| {
            let diff = &abs[best] - &abs[i];
            DominanceCheck {
                other: e.value.clone(),
                sign: diff.signum(),
                abs_difference: diff,
            }
        })
        .collect();
    let strict =
        eigenvalues[best].algebraic_multiplicity == 1 && dominance.iter().all(|c| c.sign > 0);
    Ok(EigenDecomposition {
        char_poly: cp,
        eigenvalues,
        dominant: strict.then_some(best),
        dominance,
    })
}

/// A ray: the non-negative multiples of a non-zero class, stored in a
/// canonical representative.
///
/// The representative has a rational leading coordinate (the degree, or the
/// first non-zero multiplicity when the degree vanishes) and all rational
/// and irrational parts integers with no common factor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ray {
    class: DivisorClass,
}

impl Ray {
    pub fn new(x: &DivisorClass) -> Result<Ray> {
        let pivot = x
            .coords()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::domain("the zero class spans no ray"))?
            .clone();
        let mut y = x.clone();
        if !pivot.is_rational() {
            let c = pivot.conjugate();
            let lambda = if c.signum() < 0 { -c } else { c };
            y = y.scale(&lambda)?;
        }
        let mut lcm = BigInt::one();
        for c in y.coords() {
            lcm = lcm.lcm(&c.denominator_lcm());
        }
        y = y.scale(&QuadNum::from_bigint(lcm))?;
        let mut g = BigInt::zero();
        for c in y.coords() {
            g = g.gcd(&c.a().to_integer()).gcd(&c.b().to_integer());
        }
        if !g.is_one() {
            y = y.scale(&QuadNum::from_rational(BigRational::new(BigInt::one(), g)))?;
        }
        Ok(Ray { class: y })
    }

    pub fn class(&self) -> &DivisorClass {
        &self.class
    }

    pub fn s(&self) -> usize {
        self.class.s()
    }

    pub fn is_rational(&self) -> bool {
        self.class.is_rational()
    }

    /// A coordinate with non-zero irrational part: `(index, value)` where
    /// index 0 is the degree.
    pub fn irrationality_witness(&self) -> Option<(usize, QuadNum)> {
        self.class
            .coords()
            .enumerate()
            .find(|(_, c)| !c.is_rational())
            .map(|(i, c)| (i, c.clone()))
    }

    /// Representative with the given degree; the degree must be rational,
    /// non-zero and of the same sign as `target`.
    pub fn scaled_to_degree(&self, target: &Rational) -> Result<DivisorClass> {
        let d = self
            .class
            .degree()
            .to_rational()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| Error::domain("ray has zero degree"))?;
        let k = target / d;
        if !k.is_positive() {
            return Err(Error::domain("rescaling would flip the ray"));
        }
        self.class.scale(&QuadNum::from_rational(k))
    }

    pub fn uncollide(&self, i: usize, r: u32) -> Result<Ray> {
        Ray::new(&self.class.uncollide(i, r)?)
    }

    /// Sign of the pairing with another ray (well defined on rays).
    pub fn intersection_sign(&self, other: &Ray) -> Result<i8> {
        Ok(self.class.intersect(&other.class)?.signum())
    }
}

impl std::fmt::Display for Ray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.class)
    }
}

impl std::fmt::Debug for Ray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ray{self}")
    }
}

pub fn ray_is_rational(r: &Ray) -> bool {
    r.is_rational()
}

pub fn uncollide_ray(r: &Ray, i: usize, rr: u32) -> Result<Ray> {
    r.uncollide(i, rr)
}

fn orient(v: Vec<QuadNum>) -> Vec<QuadNum> {
    let flip = v
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.signum() < 0);
    if flip {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

/// Dominant eigenvector in compressed coordinates, oriented so its first
/// non-zero coordinate is positive.
pub fn dominant_vector(m: &ShapeMatrix) -> Result<(EigenDecomposition, Vec<QuadNum>)> {
    let e = eigen(m)?;
    let idx = e.dominant.ok_or_else(|| {
        Error::NoStrictDominance(format!(
            "spectrum of characteristic polynomial {}",
            e.char_poly_string()
        ))
    })?;
    let lambda = &e.eigenvalues[idx];
    if lambda.value.signum() <= 0 {
        return Err(Error::NoStrictDominance(format!(
            "dominant eigenvalue {} is not positive",
            lambda.value
        )));
    }
    let v = orient(lambda.eigenvectors[0].clone());
    Ok((e, v))
}

/// The dominant eigenray expanded to a full class through the matrix shape.
pub fn dominant_ray(m: &ShapeMatrix) -> Result<Ray> {
    let (_, v) = dominant_vector(m)?;
    Ray::new(&expand_quad(m, &v))
}

/// Exact evidence that `M^k seed` converges projectively to the dominant
/// eigenray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    #[serde(with = "bigint_vec")]
    pub seed: Vec<BigInt>,
    pub dominant_eigenvalue: QuadNum,
    pub dominant_eigenvector: Vec<QuadNum>,
    /// Coordinates of the seed in the generalized eigenbasis, grouped by
    /// eigenvalue (same order as the decomposition).
    pub components: Vec<Vec<QuadNum>>,
    pub dominant_coefficient: QuadNum,
    pub dominance: Vec<DominanceCheck>,
    /// `(eigenvalue, algebraic, geometric)` multiplicities.
    pub jordan: Vec<(QuadNum, usize, usize)>,
}

impl ConvergenceCertificate {
    pub fn all_semisimple(&self) -> bool {
        self.jordan.iter().all(|(_, a, g)| a == g)
    }
}

pub fn certify_convergence(m: &ShapeMatrix, seed: &[BigInt]) -> Result<ConvergenceCertificate> {
    if seed.len() != m.dim() {
        return Err(Error::LengthMismatch {
            expected: m.dim(),
            actual: seed.len(),
        });
    }
    let (e, v) = dominant_vector(m)?;
    let idx = e.dominant.expect("checked by dominant_vector");
    let mut basis = Vec::new();
    let mut owner = Vec::new();
    for (i, ev) in e.eigenvalues.iter().enumerate() {
        for b in &ev.generalized {
            // the dominant space is one-dimensional; use the oriented vector
            basis.push(if i == idx { v.clone() } else { b.clone() });
            owner.push(i);
        }
    }
    let rhs: Vec<QuadNum> = seed
        .iter()
        .map(|x| QuadNum::from_bigint(x.clone()))
        .collect();
    let coeffs = solve_in_basis(&basis, &rhs)
        .ok_or_else(|| Error::Unsupported("generalized eigenvectors do not span".into()))?;
    let mut components = vec![Vec::new(); e.eigenvalues.len()];
    for (c, &o) in coeffs.iter().zip(&owner) {
        components[o].push(c.clone());
    }
    let dominant_coefficient = components[idx][0].clone();
    if dominant_coefficient.is_zero() {
        return Err(Error::ZeroDominantComponent);
    }
    Ok(ConvergenceCertificate {
        seed: seed.to_vec(),
        dominant_eigenvalue: e.eigenvalues[idx].value.clone(),
        dominant_eigenvector: v,
        components,
        dominant_coefficient,
        dominance: e.dominance.clone(),
        jordan: e
            .eigenvalues
            .iter()
            .map(|x| {
                (
                    x.value.clone(),
                    x.algebraic_multiplicity,
                    x.geometric_multiplicity(),
                )
            })
            .collect(),
    })
}

/// Coefficient of `vector` along the dominant direction, using the same
/// basis as [`certify_convergence`].
pub fn dominant_coordinate(m: &ShapeMatrix, vector: &[QuadNum]) -> Result<QuadNum> {
    let (e, v) = dominant_vector(m)?;
    let idx = e.dominant.expect("checked");
    let mut basis = Vec::new();
    let mut pos = 0;
    for (i, ev) in e.eigenvalues.iter().enumerate() {
        for b in &ev.generalized {
            if i == idx {
                pos = basis.len();
                basis.push(v.clone());
            } else {
                basis.push(b.clone());
            }
        }
    }
    let c = solve_in_basis(&basis, vector)
        .ok_or_else(|| Error::Unsupported("generalized eigenvectors do not span".into()))?;
    Ok(c[pos].clone())
}

/// `M v` for a vector over the eigenvalue field.
pub fn apply_exact(m: &ShapeMatrix, v: &[QuadNum]) -> Vec<QuadNum> {
    qmat_vec(&to_quad_matrix(m), v)
}

/// JSON summary of a spectrum (used by reports).
pub fn eigen_summary(e: &EigenDecomposition) -> serde_json::Value {
    serde_json::json!({
        "char_poly": e.char_poly.iter().map(int_to_value).collect::<Vec<_>>(),
        "char_poly_text": e.char_poly_string(),
        "eigenvalues": e.eigenvalues.iter().map(|x| serde_json::json!({
            "value": x.value,
            "text": x.value.to_string(),
            "algebraic_multiplicity": x.algebraic_multiplicity,
            "geometric_multiplicity": x.geometric_multiplicity(),
        })).collect::<Vec<_>>(),
        "dominant": e.dominant_eigenvalue().map(|x| x.value.to_string()),
    })
}

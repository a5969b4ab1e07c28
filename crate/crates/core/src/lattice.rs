// SPDX-License-Identifier: Apache-2.0

//! Divisor classes on `X_s` and the intersection form.
//!
//! A class `dH - sum m_i E_i` is stored by its degree `d` and multiplicities
//! `m_i` (not the Picard coefficients `-m_i`). Point indices are 0-based.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{QuadNum, Rational, TowerNum};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClass")]
pub struct DivisorClass {
    degree: QuadNum,
    mults: Vec<QuadNum>,
}

#[derive(Deserialize)]
struct RawClass {
    degree: QuadNum,
    mults: Vec<QuadNum>,
}

impl TryFrom<RawClass> for DivisorClass {
    type Error = Error;
    fn try_from(raw: RawClass) -> Result<Self> {
        DivisorClass::new(raw.degree, raw.mults)
    }
}

/// Radicand of the smallest quadratic field holding every value, if any.
pub(crate) fn field_of<'a>(values: impl IntoIterator<Item = &'a QuadNum>) -> Result<BigUint> {
    let mut acc = QuadNum::zero();
    for v in values {
        let rad = acc.common_rad(v)?;
        if !rad.is_one() && acc.rad().is_one() {
            acc = QuadNum::sqrt_big(&rad);
        }
    }
    Ok(acc.rad().clone())
}

impl DivisorClass {
    pub fn new(degree: QuadNum, mults: Vec<QuadNum>) -> Result<Self> {
        field_of(std::iter::once(&degree).chain(mults.iter()))?;
        Ok(DivisorClass { degree, mults })
    }

    pub fn from_ints(degree: i64, mults: &[i64]) -> Self {
        DivisorClass {
            degree: degree.into(),
            mults: mults.iter().map(|&m| m.into()).collect(),
        }
    }

    pub fn from_bigints(degree: BigInt, mults: Vec<BigInt>) -> Self {
        DivisorClass {
            degree: degree.into(),
            mults: mults.into_iter().map(QuadNum::from).collect(),
        }
    }

    /// `H` on `X_s`.
    pub fn line(s: usize) -> Self {
        DivisorClass {
            degree: QuadNum::one(),
            mults: vec![QuadNum::zero(); s],
        }
    }

    /// `E_i` on `X_s`; as a class `0H - (-1)E_i`.
    pub fn exceptional(s: usize, i: usize) -> Result<Self> {
        if i >= s {
            return Err(Error::IndexOutOfRange { index: i, len: s });
        }
        let mut mults = vec![QuadNum::zero(); s];
        mults[i] = QuadNum::from_int(-1);
        Ok(DivisorClass {
            degree: QuadNum::zero(),
            mults,
        })
    }

    /// The canonical class `K_s = -3H + sum E_i`.
    pub fn canonical(s: usize) -> Self {
        DivisorClass {
            degree: QuadNum::from_int(-3),
            mults: vec![QuadNum::from_int(-1); s],
        }
    }

    /// `sqrt(s-1) H - sum E_i`.
    pub fn defernex(s: usize) -> Self {
        DivisorClass {
            degree: QuadNum::sqrt(s.saturating_sub(1) as u64),
            mults: vec![QuadNum::one(); s],
        }
    }

    /// `sqrt(s) H - sum E_i`.
    pub fn nagata(s: usize) -> Self {
        DivisorClass {
            degree: QuadNum::sqrt(s as u64),
            mults: vec![QuadNum::one(); s],
        }
    }

    pub fn s(&self) -> usize {
        self.mults.len()
    }

    pub fn degree(&self) -> &QuadNum {
        &self.degree
    }

    pub fn mults(&self) -> &[QuadNum] {
        &self.mults
    }

    pub fn field_rad(&self) -> BigUint {
        field_of(std::iter::once(&self.degree).chain(self.mults.iter()))
            .expect("class invariant: single field")
    }

    pub fn coords(&self) -> impl Iterator<Item = &QuadNum> {
        std::iter::once(&self.degree).chain(self.mults.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(QuadNum::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords().all(QuadNum::is_rational)
    }

    pub fn is_integral(&self) -> bool {
        self.coords().all(QuadNum::is_integer)
    }

    /// Integer coordinates `(d, m_1, ..., m_s)`, when integral.
    pub fn to_integers(&self) -> Option<(BigInt, Vec<BigInt>)> {
        let d = self.degree.to_integer()?;
        let m = self
            .mults
            .iter()
            .map(QuadNum::to_integer)
            .collect::<Option<_>>()?;
        Some((d, m))
    }

    fn check_same_s(&self, other: &DivisorClass) -> Result<()> {
        if self.s() != other.s() {
            return Err(Error::LengthMismatch {
                expected: self.s(),
                actual: other.s(),
            });
        }
        Ok(())
    }

    /// `d d' - sum m_i m_i'`.
    pub fn intersect(&self, other: &DivisorClass) -> Result<QuadNum> {
        self.check_same_s(other)?;
        field_of([
            &QuadNum::sqrt_big(&self.field_rad()),
            &QuadNum::sqrt_big(&other.field_rad()),
        ])?;
        let mut acc = &self.degree * &other.degree;
        for (m, n) in self.mults.iter().zip(&other.mults) {
            acc = acc - m * n;
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> QuadNum {
        self.intersect(self).expect("same class")
    }

    /// Pairing with `K_s`: `sum m_i - 3d`.
    pub fn canonical_pairing(&self) -> QuadNum {
        let sum: QuadNum = self.mults.iter().sum();
        sum - &self.degree * &QuadNum::from_int(3)
    }

    /// Pairing with the De Fernex class: `sqrt(s-1) d - sum m_i`.
    ///
    /// The result lives in `Q(sqrt(M))(sqrt(s-1))` where `M` is the radicand
    /// of the class, so it is returned as a [`TowerNum`] whose sign is exact.
    pub fn defernex_pairing(&self) -> Result<TowerNum> {
        let sum: QuadNum = self.mults.iter().sum();
        let p = BigUint::from(self.s().saturating_sub(1));
        TowerNum::new(-sum, self.degree.clone(), &p)
    }

    pub fn scale(&self, k: &QuadNum) -> Result<DivisorClass> {
        let degree = self.degree.try_mul(k)?;
        let mults = self
            .mults
            .iter()
            .map(|m| m.try_mul(k))
            .collect::<Result<_>>()?;
        Ok(DivisorClass { degree, mults })
    }

    pub fn scale_int(&self, k: i64) -> DivisorClass {
        self.scale(&QuadNum::from_int(k)).expect("rational scale")
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check_same_s(other)?;
        let degree = self.degree.try_add(&other.degree)?;
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(DivisorClass { degree, mults })
    }

    /// Replaces point `i` by `r^2` points of multiplicity `m_i / r`, placed
    /// where point `i` was; the other points keep their order.
    pub fn uncollide(&self, i: usize, r: u32) -> Result<DivisorClass> {
        if i >= self.s() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.s(),
            });
        }
        if r < 2 {
            return Err(Error::domain(format!("uncollision needs r >= 2, got {r}")));
        }
        if self.mults[i].is_zero() {
            return Err(Error::domain("uncollision of a point of multiplicity zero"));
        }
        let part = self.mults[i].scale(&Rational::new(BigInt::one(), BigInt::from(r)));
        let mut mults = Vec::with_capacity(self.s() - 1 + (r * r) as usize);
        mults.extend_from_slice(&self.mults[..i]);
        mults.extend(std::iter::repeat_n(part, (r * r) as usize));
        mults.extend_from_slice(&self.mults[i + 1..]);
        Ok(DivisorClass {
            degree: self.degree.clone(),
            mults,
        })
    }

    /// Inverse of [`uncollide`](Self::uncollide): merges the `r^2` equal
    /// multiplicities starting at `first` into one point of multiplicity
    /// `r m`.
    pub fn collide(&self, first: usize, r: u32) -> Result<DivisorClass> {
        if r < 2 {
            return Err(Error::domain(format!("collision needs r >= 2, got {r}")));
        }
        let count = (r * r) as usize;
        if first + count > self.s() {
            return Err(Error::IndexOutOfRange {
                index: first + count - 1,
                len: self.s(),
            });
        }
        let block = &self.mults[first..first + count];
        if block.iter().any(|m| m != &block[0]) {
            return Err(Error::domain(format!(
                "collision needs {count} equal multiplicities at {first}"
            )));
        }
        let merged = block[0].scale(&Rational::from_integer(BigInt::from(r)));
        let mut mults = Vec::with_capacity(self.s() + 1 - count);
        mults.extend_from_slice(&self.mults[..first]);
        mults.push(merged);
        mults.extend_from_slice(&self.mults[first + count..]);
        Ok(DivisorClass {
            degree: self.degree.clone(),
            mults,
        })
    }

    /// Reorders points: the result's point `j` is this class's point `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<DivisorClass> {
        if perm.len() != self.s() {
            return Err(Error::LengthMismatch {
                expected: self.s(),
                actual: perm.len(),
            });
        }
        let mut seen = vec![false; self.s()];
        for &p in perm {
            if p >= self.s() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::domain("not a permutation"));
            }
        }
        Ok(DivisorClass {
            degree: self.degree.clone(),
            mults: perm.iter().map(|&p| self.mults[p].clone()).collect(),
        })
    }

    /// Sorts multiplicities in decreasing order.
    pub fn sorted(&self) -> DivisorClass {
        let mut mults = self.mults.clone();
        mults.sort_by(|a, b| b.partial_cmp(a).expect("single field"));
        DivisorClass {
            degree: self.degree.clone(),
            mults,
        }
    }

    /// Run-length compression of consecutive equal multiplicities.
    pub fn to_profile(&self) -> MultiplicityProfile {
        let mut blocks: Vec<(QuadNum, usize)> = Vec::new();
        for m in &self.mults {
            match blocks.last_mut() {
                Some((v, c)) if v == m => *c += 1,
                _ => blocks.push((m.clone(), 1)),
            }
        }
        MultiplicityProfile {
            degree: self.degree.clone(),
            blocks,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_profile())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass({self})")
    }
}

/// Block counts of a multiplicity shape, e.g. `(1, 2n, 6)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape(pub Vec<usize>);

impl Shape {
    pub fn new(counts: &[usize]) -> Self {
        Shape(counts.to_vec())
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of compressed coordinates (degree plus one per block).
    pub fn dim(&self) -> usize {
        self.0.len() + 1
    }

    /// Half-open index ranges of the blocks.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&c| {
                let r = start..start + c;
                start += c;
                r
            })
            .collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A class written with repeated multiplicities, `L_d(a^p, b^q, ...)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub degree: QuadNum,
    /// `(value, count)` pairs in point order; counts are positive.
    pub blocks: Vec<(QuadNum, usize)>,
}

impl MultiplicityProfile {
    pub fn new(degree: QuadNum, blocks: Vec<(QuadNum, usize)>) -> Result<Self> {
        if blocks.iter().any(|(_, c)| *c == 0) {
            return Err(Error::ShapeMismatch("block counts must be positive".into()));
        }
        field_of(std::iter::once(&degree).chain(blocks.iter().map(|(v, _)| v)))?;
        Ok(MultiplicityProfile { degree, blocks })
    }

    pub fn shape(&self) -> Shape {
        Shape(self.blocks.iter().map(|(_, c)| *c).collect())
    }

    pub fn s(&self) -> usize {
        self.blocks.iter().map(|(_, c)| c).sum()
    }

    pub fn expand(&self) -> DivisorClass {
        let mults = self
            .blocks
            .iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v.clone(), *c))
            .collect();
        DivisorClass {
            degree: self.degree.clone(),
            mults,
        }
    }

    /// Compresses `x` along `shape`; every block must be constant.
    pub fn compress(x: &DivisorClass, shape: &Shape) -> Result<Self> {
        if shape.total() != x.s() {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape} covers {} points, class has {}",
                shape.total(),
                x.s()
            )));
        }
        let mut blocks = Vec::with_capacity(shape.0.len());
        for r in shape.ranges() {
            if r.is_empty() {
                return Err(Error::ShapeMismatch("empty block".into()));
            }
            let v = &x.mults[r.start];
            if x.mults[r.clone()].iter().any(|m| m != v) {
                return Err(Error::ShapeMismatch(format!(
                    "points {}..{} are not all equal",
                    r.start, r.end
                )));
            }
            blocks.push((v.clone(), r.len()));
        }
        Ok(MultiplicityProfile {
            degree: x.degree.clone(),
            blocks,
        })
    }

    /// Uncollides point `i` (an index into the expanded class).
    pub fn uncollide(&self, i: usize, r: u32) -> Result<Self> {
        let s = self.s();
        if i >= s {
            return Err(Error::IndexOutOfRange { index: i, len: s });
        }
        let expanded = self.expand().uncollide(i, r)?;
        let mut counts = Vec::new();
        let mut start = 0;
        for (_, c) in &self.blocks {
            if (start..start + c).contains(&i) {
                let before = i - start;
                let after = start + c - i - 1;
                counts.extend(
                    [before, (r * r) as usize, after]
                        .into_iter()
                        .filter(|&n| n > 0),
                );
            } else {
                counts.push(*c);
            }
            start += c;
        }
        Self::compress(&expanded, &Shape(counts))
    }

    /// Collides `r^2` equal points starting at expanded index `first`.
    pub fn collide(&self, first: usize, r: u32) -> Result<Self> {
        self.expand().collide(first, r).map(|c| c.to_profile())
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |q: &QuadNum| {
            if q.is_rational() && !q.to_string().contains('/') {
                q.to_string()
            } else {
                format!("({q})")
            }
        };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(v, c)| {
                if *c == 1 {
                    v.to_string()
                } else {
                    format!("{}^{c}", paren(v))
                }
            })
            .collect();
        write!(f, "L_{}({})", paren(&self.degree), parts.join(", "))
    }
}

impl fmt::Debug for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiplicityProfile({self})")
    }
}

/// Distinguished classes on `X_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedClass {
    H { s: usize },
    E { s: usize, i: usize },
    K { s: usize },
    F { s: usize },
    Nagata { s: usize },
}

impl NamedClass {
    pub fn expand(&self) -> Result<DivisorClass> {
        Ok(match *self {
            NamedClass::H { s } => DivisorClass::line(s),
            NamedClass::E { s, i } => DivisorClass::exceptional(s, i)?,
            NamedClass::K { s } => DivisorClass::canonical(s),
            NamedClass::F { s } => DivisorClass::defernex(s),
            NamedClass::Nagata { s } => DivisorClass::nagata(s),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quad;

    fn w_odd_2() -> DivisorClass {
        let mut mults = vec![quad(12, 4, 2)];
        mults.extend(std::iter::repeat_n(quad(6, 2, 2), 4));
        mults.extend(std::iter::repeat_n(quad(8, -2, 2), 6));
        DivisorClass::new(28.into(), mults).unwrap()
    }

    #[test]
    fn basic_pairings() {
        let h = DivisorClass::line(3);
        let e1 = DivisorClass::exceptional(3, 0).unwrap();
        assert_eq!(h.intersect(&h).unwrap(), QuadNum::one());
        assert_eq!(e1.intersect(&e1).unwrap(), QuadNum::from_int(-1));
        assert_eq!(h.intersect(&e1).unwrap(), QuadNum::zero());
    }

    #[test]
    fn w_odd_two_is_isotropic_and_k_orthogonal() {
        let w = w_odd_2();
        assert_eq!(w.self_intersection(), QuadNum::zero());
        assert_eq!(w.canonical_pairing(), QuadNum::zero());
    }

    #[test]
    fn canonical_self_pairing() {
        for s in 0..20usize {
            let k = DivisorClass::canonical(s);
            assert_eq!(k.self_intersection(), QuadNum::from_int(9 - s as i64));
        }
        let mut m = vec![0i64; 6];
        m.insert(0, 1);
        assert_eq!(
            DivisorClass::from_ints(1, &m).canonical_pairing(),
            QuadNum::from_int(-2)
        );
    }

    #[test]
    fn defernex_self_pairing() {
        for s in 2..30usize {
            let f = DivisorClass::defernex(s);
            assert_eq!(f.self_intersection(), QuadNum::from_int(-1));
            let p = f.defernex_pairing().unwrap();
            assert_eq!(p.as_quad(), Some(&QuadNum::from_int(-1)));
        }
    }

    #[test]
    fn nagata_is_defernex_negative() {
        for s in [10usize, 11, 13, 14, 15, 17, 21, 22, 23] {
            let p = DivisorClass::nagata(s).defernex_pairing().unwrap();
            assert_eq!(p.signum(), -1, "s = {s}");
        }
    }

    #[test]
    fn length_mismatch() {
        let e = DivisorClass::line(2)
            .intersect(&DivisorClass::line(3))
            .unwrap_err();
        assert_eq!(
            e,
            Error::LengthMismatch {
                expected: 2,
                actual: 3
            }
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let e = DivisorClass::new(QuadNum::sqrt(2), vec![QuadNum::sqrt(3)]).unwrap_err();
        assert!(matches!(e, Error::IncompatibleFields { .. }));
    }

    #[test]
    fn uncollide_conic_pencil() {
        let x = DivisorClass::from_ints(2, &[2]);
        let y = x.uncollide(0, 2).unwrap();
        assert_eq!(y, DivisorClass::from_ints(2, &[1, 1, 1, 1]));
        assert_eq!(x.self_intersection(), QuadNum::zero());
        assert_eq!(y.self_intersection(), QuadNum::zero());
        assert_eq!(y.collide(0, 2).unwrap(), x);
    }

    #[test]
    fn uncollide_increments_canonical_pairing() {
        // m_i = 2m with m = 5, r = 2: increment (r^2 - r) m_i / r = 2m
        let x = DivisorClass::from_ints(30, &[10, 3, 3]);
        let y = x.uncollide(0, 2).unwrap();
        assert_eq!(
            y.canonical_pairing() - x.canonical_pairing(),
            QuadNum::from_int(10)
        );
    }

    #[test]
    fn uncollide_errors() {
        let x = DivisorClass::from_ints(3, &[1, 0]);
        assert!(matches!(
            x.uncollide(2, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(x.uncollide(1, 2).is_err());
        assert!(x.uncollide(0, 1).is_err());
        assert!(DivisorClass::from_ints(2, &[1, 1, 2, 1])
            .collide(0, 2)
            .is_err());
    }

    #[test]
    fn profile_round_trip() {
        let p = MultiplicityProfile::compress(
            &DivisorClass::from_ints(1, &[1, 0, 0, 0, 0, 0, 0]),
            &Shape::new(&[1, 6]),
        )
        .unwrap();
        assert_eq!(p.to_string(), "L_1(1, 0^6)");
        assert_eq!(
            p.expand(),
            DivisorClass::from_ints(1, &[1, 0, 0, 0, 0, 0, 0])
        );

        let x = DivisorClass::from_ints(13, &[9, 4, 4, 4, 4, 2, 2, 2, 2, 2, 2]);
        let p = MultiplicityProfile::compress(&x, &Shape::new(&[1, 4, 6])).unwrap();
        assert_eq!(p.to_string(), "L_13(9, 4^4, 2^6)");
        assert_eq!(p.expand(), x);

        let bad = MultiplicityProfile::compress(
            &DivisorClass::from_ints(2, &[1, 1, 0]),
            &Shape::new(&[1, 1]),
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
        let bad = MultiplicityProfile::compress(
            &DivisorClass::from_ints(2, &[1, 1, 0]),
            &Shape::new(&[1, 2]),
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn profile_uncollide_splits_block() {
        let p = DivisorClass::from_ints(26, &[18, 8, 8, 8, 8, 4, 4, 4, 4, 4, 4]).to_profile();
        let q = p.uncollide(0, 2).unwrap();
        assert_eq!(q.to_string(), "L_26(9^4, 8^4, 4^6)");
        let q = p.uncollide(2, 2).unwrap();
        assert_eq!(q.shape(), Shape::new(&[1, 1, 4, 2, 6]));
        assert_eq!(q.collide(2, 2).unwrap().expand(), p.expand());
    }

    #[test]
    fn named_classes() {
        let k = NamedClass::K { s: 4 }.expand().unwrap();
        assert_eq!(k.degree(), &QuadNum::from_int(-3));
        assert!(k.mults().iter().all(|m| m == &QuadNum::from_int(-1)));
        let f = NamedClass::F { s: 10 }.expand().unwrap();
        assert_eq!(f.degree(), &QuadNum::from_int(3));
        let n = NamedClass::Nagata { s: 10 }.expand().unwrap();
        assert_eq!(n.degree(), &QuadNum::sqrt(10));
        assert!(NamedClass::E { s: 2, i: 2 }.expand().is_err());
    }

    #[test]
    fn class_json_round_trip() {
        let w = w_odd_2();
        let s = serde_json::to_string(&w).unwrap();
        let back: DivisorClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        let bad = r#"{"degree": {"a":[0,1],"b":[1,1],"rad":2}, "mults": [{"a":[0,1],"b":[1,1],"rad":3}]}"#;
        assert!(serde_json::from_str::<DivisorClass>(bad).is_err());
    }
}

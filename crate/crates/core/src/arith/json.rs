// SPDX-License-Identifier: Apache-2.0

//! JSON encodings for exact numbers.
//!
//! Integers are written as JSON numbers while they are below 2^53 in
//! magnitude and as decimal strings beyond that, so that no consumer ever
//! rounds them. Both forms are accepted on input.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::quad::{QuadNum, Rational};
use super::tower::TowerNum;

const SAFE_INT: i64 = 1 << 53;

pub fn int_to_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.abs() < SAFE_INT => Value::from(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn value_to_int(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("not an integer: {s:?}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    Value::Array(vec![int_to_value(r.numer()), int_to_value(r.denom())])
}

pub fn value_to_rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let n = value_to_int(&parts[0])?;
            let d = value_to_int(&parts[1])?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n, d))
        }
        Value::Number(_) | Value::String(_) => Ok(Rational::from_integer(value_to_int(v)?)),
        other => Err(format!("expected [num, den], got {other}")),
    }
}

pub fn quad_to_value(q: &QuadNum) -> Value {
    serde_json::json!({
        "a": rational_to_value(q.a()),
        "b": rational_to_value(q.b()),
        "rad": int_to_value(&BigInt::from(q.rad().clone())),
    })
}

pub fn value_to_quad(v: &Value) -> Result<QuadNum, String> {
    match v {
        Value::Object(map) => {
            let a = map
                .get("a")
                .map(value_to_rational)
                .transpose()?
                .unwrap_or_default();
            let b = map
                .get("b")
                .map(value_to_rational)
                .transpose()?
                .unwrap_or_default();
            let rad = match map.get("rad") {
                Some(r) => value_to_int(r)?,
                None => BigInt::from(1),
            };
            if rad.is_negative() {
                return Err("negative radicand".into());
            }
            let rad: BigUint = rad.to_biguint().unwrap_or_default();
            Ok(QuadNum::normalize(a, b, &rad))
        }
        Value::Number(_) | Value::String(_) | Value::Array(_) => {
            Ok(QuadNum::from_rational(value_to_rational(v)?))
        }
        other => Err(format!("expected QuadNum object, got {other}")),
    }
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        quad_to_value(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        value_to_quad(&v).map_err(de::Error::custom)
    }
}

impl Serialize for TowerNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TowerNum", 3)?;
        st.serialize_field("inner", self.inner_part())?;
        st.serialize_field("outer_coeff", self.outer_coeff())?;
        st.serialize_field(
            "outer_rad",
            &int_to_value(&BigInt::from(self.outer_rad().clone())),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TowerNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            inner: QuadNum,
            outer_coeff: QuadNum,
            outer_rad: Value,
        }
        let raw = Raw::deserialize(deserializer)?;
        let rad = value_to_int(&raw.outer_rad).map_err(de::Error::custom)?;
        let rad = rad
            .to_biguint()
            .ok_or_else(|| de::Error::custom("negative radicand"))?;
        TowerNum::new(raw.inner, raw.outer_coeff, &rad).map_err(de::Error::custom)
    }
}

/// `serde(with = ...)` adapter for a single big integer.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        int_to_value(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        value_to_int(&Value::deserialize(d)?).map_err(de::Error::custom)
    }
}

/// `serde(with = ...)` adapter for a vector of big integers.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&int_to_value(n))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter()
            .map(|v| value_to_int(v).map_err(de::Error::custom))
            .collect()
    }
}

/// `serde(with = ...)` adapter for a matrix of big integers (row-major).
pub mod bigint_rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Vec<Value>> = rows
            .iter()
            .map(|r| r.iter().map(int_to_value).collect())
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<Value>>::deserialize(d)?;
        raw.iter()
            .map(|r| {
                r.iter()
                    .map(|v| value_to_int(v).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// `serde(with = ...)` adapter for a rational.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        value_to_rational(&Value::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_json_shape() {
        let x = QuadNum::from_int(12) + QuadNum::sqrt(2) * QuadNum::from_int(4);
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"a": [12, 1], "b": [4, 1], "rad": 2}));
        let back: QuadNum = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn huge_integers_become_strings() {
        let n = BigInt::from(1u64 << 60);
        assert_eq!(int_to_value(&n), Value::String(n.to_string()));
        assert_eq!(value_to_int(&int_to_value(&n)).unwrap(), n);
        assert_eq!(int_to_value(&BigInt::from(-5)), Value::from(-5));
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let v = serde_json::json!({"a": [1, 1], "b": [2, 1], "rad": 8});
        let x: QuadNum = serde_json::from_value(v).unwrap();
        assert_eq!(x.rad(), &BigUint::from(2u32));
        assert_eq!(x.b(), &Rational::from_integer(4.into()));
    }
}

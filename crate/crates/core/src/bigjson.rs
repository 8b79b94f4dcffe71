//! JSON encoding for big integers: plain numbers while they fit in 64 bits,
//! decimal strings beyond that. Both forms are accepted on input.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Unsigned(u64),
    Signed(i64),
    Text(String),
}

pub fn int_to_value(x: &BigInt) -> serde_json::Value {
    if let Some(v) = x.to_i64() {
        serde_json::Value::from(v)
    } else if let Some(v) = x.to_u64() {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::String(x.to_string())
    }
}

pub fn int_from_value(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("{n} is not an integer"))
            }
        }
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("{s:?} is not a decimal integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match x.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Wire::deserialize(d)? {
            Wire::Unsigned(v) => Ok(BigUint::from(v)),
            Wire::Signed(v) => Err(D::Error::custom(format!("negative value {v} for an unsigned integer"))),
            Wire::Text(t) => t.parse().map_err(|_| D::Error::custom(format!("{t:?} is not a decimal integer"))),
        }
    }
}

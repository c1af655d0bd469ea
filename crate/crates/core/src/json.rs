//! Small helpers for exact numbers in JSON.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};

/// An integer as a JSON number when it fits in `i64`, otherwise as a string.
pub fn bigint(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

/// Reads an integer written either as a JSON number or as a decimal string.
pub fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        _ => Err(Error::Parse(format!("not an integer: {v}"))),
    }
}

/// `serialize_with` adapter for tables of integers.
pub fn serialize_bigint_table<S: serde::Serializer>(
    t: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let v: Vec<Vec<Value>> = t.iter().map(|r| r.iter().map(bigint).collect()).collect();
    v.serialize(s)
}

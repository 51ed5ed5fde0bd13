//! JSON forms of matrices and block constructions.
//!
//! A matrix is `{"matrix": [[…], …]}` or a bare `[[…], …]`; entries are JSON
//! integers or decimal strings. A block construction is
//! `{"base": [[…], …], "powers": [1, 2, 3]}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::linalg::{BlockSpec, IntMatrix};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_entry(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(malformed(format!("matrix entry {n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| malformed(format!("matrix entry {s:?} is not a decimal integer"))),
        other => Err(malformed(format!("matrix entry {other} is not an integer"))),
    }
}

fn parse_rows(v: &Value) -> Result<IntMatrix> {
    let rows = v.as_array().ok_or_else(|| malformed("matrix must be an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed("each matrix row must be an array"))?
                .iter()
                .map(parse_entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::new(parsed)
}

pub fn parse_matrix_value(v: &Value) -> Result<IntMatrix> {
    match v {
        Value::Object(map) => parse_rows(map.get("matrix").ok_or_else(|| malformed("missing \"matrix\" key"))?),
        Value::Array(_) => parse_rows(v),
        _ => Err(malformed("expected a matrix object or array")),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

pub fn parse_matrix_json(text: &str) -> Result<IntMatrix> {
    parse_matrix_value(&parse_json(text)?)
}

fn parse_powers(v: &Value) -> Result<Vec<u32>> {
    v.as_array()
        .ok_or_else(|| malformed("\"powers\" must be an array"))?
        .iter()
        .map(|p| {
            p.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| malformed(format!("block power {p} is not a positive integer")))
        })
        .collect()
}

pub fn parse_block_value(v: &Value) -> Result<BlockSpec> {
    let base = v.get("base").ok_or_else(|| malformed("missing \"base\" key"))?;
    let powers = v.get("powers").ok_or_else(|| malformed("missing \"powers\" key"))?;
    BlockSpec::new(parse_matrix_value(base)?, parse_powers(powers)?)
}

pub fn parse_block_json(text: &str) -> Result<BlockSpec> {
    parse_block_value(&parse_json(text)?)
}

/// Any accepted input form, validated as an automorphism.
pub fn parse_automorphism_json(text: &str) -> Result<Automorphism> {
    let v = parse_json(text)?;
    if v.get("base").is_some() {
        Automorphism::from_block(parse_block_value(&v)?)
    } else {
        Automorphism::from_matrix(parse_matrix_value(&v)?)
    }
}

/// Entries as JSON integers when exactly representable in an `f64`, strings otherwise.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    const SAFE: i64 = 1 << 53;
    Value::Array(
        m.rows()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| match x.to_i64() {
                            Some(i) if i.abs() < SAFE => Value::from(i),
                            _ => Value::String(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

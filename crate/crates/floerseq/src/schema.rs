//! JSON wire format for complexes.
//!
//! ```text
//! { "n": 4, "N": 4, "dims": [1,1,0,1,1],
//!   "ops": { "1": [["", ...], ...] } }
//! ```
//!
//! Matrices are arrays of row strings over {0,1}; an r x 0 matrix is r
//! copies of "". Missing operator keys (or missing trailing source degrees
//! inside a family) mean zero operators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FloerComplex};
use crate::gf2::{BitMatrix, Gf2Error};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("operator key `{0}` is not a small non-negative integer")]
    BadOpKey(String),
    #[error(transparent)]
    Matrix(#[from] Gf2Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    n: usize,
    #[serde(rename = "N")]
    period: usize,
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    ops: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_complex(text: &str) -> Result<FloerComplex, SchemaError> {
    let file: ComplexFile = serde_json::from_str(text)?;
    let mut ops = Vec::new();
    for (key, families) in file.ops {
        let j: usize = key.parse().map_err(|_| SchemaError::BadOpKey(key.clone()))?;
        let mats = families
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let m = BitMatrix::from_row_strings(rows)?;
                // an empty row list cannot carry a column count; infer it
                // from the source degree
                Ok(if m.rows() == 0 {
                    BitMatrix::zero(0, file.dims.get(i).copied().unwrap_or(0))
                } else {
                    m
                })
            })
            .collect::<Result<Vec<_>, Gf2Error>>()?;
        ops.push((j, mats));
    }
    Ok(FloerComplex::new(file.n, file.period, file.dims, ops)?)
}

/// Inverse of [`parse_complex`]; all-zero operator families are omitted.
pub fn emit_complex(c: &FloerComplex) -> String {
    let mut ops = BTreeMap::new();
    for (j, family) in c.ops().iter().enumerate() {
        if family.iter().all(BitMatrix::is_zero) {
            continue;
        }
        ops.insert(
            j.to_string(),
            family.iter().map(BitMatrix::to_row_strings).collect(),
        );
    }
    let file = ComplexFile {
        n: c.top_degree(),
        period: c.period(),
        dims: c.dims().to_vec(),
        ops,
    };
    serde_json::to_string_pretty(&file).expect("complex serialization cannot fail")
}

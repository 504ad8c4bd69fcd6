//! Map-definition documents.
//!
//! ```json
//! { "name": "golden_mean",
//!   "branches": [
//!     { "left": 0, "right": "1/phi", "sign": 1, "beta": "phi", "image_left": 0, "image_right": 1 },
//!     { "left": "1/phi", "right": 1, "sign": 1, "beta": "phi", "image_left": 0, "image_right": "1/phi" } ] }
//! ```
//!
//! Every numeric field is either a JSON number or a string holding a constant
//! expression (see [`super::expr`]).

use serde::Deserialize;

use super::{expr, Branch, PLMap};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum Value {
    Num(f64),
    Expr(String),
}

impl Value {
    fn get(&self) -> Result<f64> {
        match self {
            Value::Num(v) => Ok(*v),
            Value::Expr(s) => expr::eval(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBranch {
    left: Value,
    right: Value,
    sign: i8,
    beta: Value,
    image_left: Value,
    image_right: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    #[serde(default)]
    name: Option<String>,
    branches: Vec<RawBranch>,
}

/// A parsed map with its optional name.
#[derive(Clone, Debug)]
pub struct MapDocument {
    pub name: Option<String>,
    pub map: PLMap,
}

pub fn parse_map(text: &str) -> Result<MapDocument> {
    let raw: RawMap =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("map file: {e}")))?;
    let branches = raw
        .branches
        .iter()
        .map(|b| {
            Ok(Branch {
                left: b.left.get()?,
                right: b.right.get()?,
                sign: b.sign,
                beta: b.beta.get()?,
                image_left: b.image_left.get()?,
                image_right: b.image_right.get()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MapDocument {
        name: raw.name,
        map: PLMap::new(branches)?,
    })
}

/// FNV-1a hash of the validated branch data, for output headers.
pub fn map_hash(map: &PLMap) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    for b in map.branches() {
        for v in [b.left, b.right, b.beta, b.image_left, b.image_right] {
            eat(&v.to_bits().to_le_bytes());
        }
        eat(&[b.sign as u8]);
    }
    h
}

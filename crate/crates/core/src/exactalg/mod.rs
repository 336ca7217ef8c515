//! Exact fields, dense matrices and canonical subspaces.

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use subspace::{enumerate_subspaces, Subspace, DEFAULT_ENUM_DIM_CAP};
pub use vector::Vector;

impl Field {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Field::Rationals => serde_json::json!({ "kind": "rationals", "characteristic": 0 }),
            Field::PrimeField { characteristic } => {
                serde_json::json!({ "kind": "prime_field", "characteristic": characteristic })
            }
        }
    }

    /// Accepts `{"kind": ..., "characteristic": p}` or a shorthand string `"Q"` / `"F3"`.
    pub fn from_json(v: &serde_json::Value) -> crate::Result<Field> {
        use crate::Error;
        if let Some(s) = v.as_str() {
            return Field::from_name(s);
        }
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse("field needs \"kind\"".into()))?;
        match kind {
            "rationals" => Ok(Field::Rationals),
            "prime_field" => {
                let p = v
                    .get("characteristic")
                    .and_then(|c| c.as_u64())
                    .ok_or_else(|| Error::Parse("prime_field needs \"characteristic\"".into()))?;
                Field::prime(p)
            }
            other => Err(Error::Parse(format!("unknown field kind {other:?}"))),
        }
    }

    pub fn from_name(s: &str) -> crate::Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let digits = t.trim_start_matches(['F', 'f']).trim_start_matches('_');
        let p: u64 = digits
            .parse()
            .map_err(|_| crate::Error::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

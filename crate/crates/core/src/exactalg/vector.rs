//! Helpers for coordinate vectors, stored as plain `Vec<Scalar>`.

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

pub type Vector = Vec<Scalar>;

pub fn zero(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero(field, n);
    v[i] = field.one();
    v
}

pub fn from_i64(field: Field, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Σ cᵢ vᵢ; `n` is the length used when the family is empty.
pub fn combination(field: Field, n: usize, coeffs: &[Scalar], vs: &[Vector]) -> Vector {
    let mut acc = zero(field, n);
    for (c, v) in coeffs.iter().zip(vs) {
        if !c.is_zero() {
            acc = add(&acc, &scale(c, v));
        }
    }
    acc
}

/// Every vector of 𝔽_pⁿ, first coordinate most significant.
pub fn all_vectors(field: Field, n: usize) -> Result<Vec<Vector>> {
    let p = field.order().ok_or(Error::InfiniteField)?;
    let total = (p as usize)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::BoundExceeded(format!("{p}^{n} vectors")))?;
    Ok((0..total).map(|i| vector_at(field, n, i)).collect())
}

/// The `i`-th vector in the order of [`all_vectors`].
pub fn vector_at(field: Field, n: usize, mut i: usize) -> Vector {
    let p = field.characteristic() as usize;
    let mut v = zero(field, n);
    for k in (0..n).rev() {
        v[k] = field.from_i64((i % p) as i64);
        i /= p;
    }
    v
}

/// Inverse of [`vector_at`].
pub fn index_of(v: &[Scalar]) -> usize {
    let mut i = 0usize;
    for s in v {
        let Scalar::Mod { value, modulus } = s else {
            panic!("index_of needs a prime field vector")
        };
        i = i * (*modulus as usize) + *value as usize;
    }
    i
}

pub fn to_json(v: &[Scalar]) -> serde_json::Value {
    serde_json::Value::Array(
        v.iter()
            .map(|s| serde_json::Value::String(s.to_string()))
            .collect(),
    )
}

pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Vector> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("vector must be an array".into()))?;
    arr.iter()
        .map(|x| match x {
            serde_json::Value::String(s) => field.parse(s),
            serde_json::Value::Number(n) => field.parse(&n.to_string()),
            _ => Err(Error::Parse(format!("bad scalar {x}"))),
        })
        .collect()
}

pub fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_indexing_round_trips() {
        let f = Field::prime(3).unwrap();
        let all = all_vectors(f, 2).unwrap();
        assert_eq!(all.len(), 9);
        for (i, v) in all.iter().enumerate() {
            assert_eq!(index_of(v), i);
        }
        assert_eq!(show(&all[5]), "(1,2)");
    }

    #[test]
    fn json_accepts_strings_and_numbers() {
        let q = Field::Rationals;
        let v = from_json(q, &serde_json::json!(["3/4", 2, "-1"])).unwrap();
        assert_eq!(to_json(&v), serde_json::json!(["3/4", "2", "-1"]));
    }
}

//! Named example algebras.

use super::{Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Vector};

fn v(field: Field, xs: &[i64]) -> Vector {
    vector::from_i64(field, xs)
}

/// Heisenberg algebra with basis a, b, c and [a,b] = c.
pub fn heisenberg(field: Field) -> StructAlgebra {
    StructAlgebra::lie_from_brackets(field, 3, &[(0, 1, v(field, &[0, 0, 1]))])
        .expect("valid Lie table")
}

/// sl₂ with basis e, h, f: [e,f] = h, [h,e] = 2e, [h,f] = −2f.
pub fn sl2(field: Field) -> StructAlgebra {
    StructAlgebra::lie_from_brackets(
        field,
        3,
        &[
            (0, 2, v(field, &[0, 1, 0])),
            (1, 0, v(field, &[2, 0, 0])),
            (1, 2, v(field, &[0, 0, -2])),
        ],
    )
    .expect("valid Lie table")
}

pub fn abelian(field: Field, n: usize) -> StructAlgebra {
    StructAlgebra::from_products(field, n, Flavor::Lie, &[]).expect("zero bracket")
}

/// The two-dimensional non-abelian Lie algebra: [x,y] = y.
pub fn solvable2(field: Field) -> StructAlgebra {
    StructAlgebra::lie_from_brackets(field, 2, &[(0, 1, v(field, &[0, 1]))])
        .expect("valid Lie table")
}

/// 𝔽ᵏ with componentwise product.
pub fn diagonal(field: Field, k: usize) -> StructAlgebra {
    let products: Vec<_> = (0..k).map(|i| (i, i, vector::unit(field, k, i))).collect();
    StructAlgebra::from_products(field, k, Flavor::Associative, &products).expect("associative")
}

/// 2×2 matrices with basis E11, E12, E21, E22.
pub fn matrix_algebra_2(field: Field) -> StructAlgebra {
    let idx = |r: usize, c: usize| 2 * r + c;
    let mut products = Vec::new();
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for (c, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if b == c {
                products.push((idx(a, b), idx(c, d), vector::unit(field, 4, idx(a, d))));
            }
        }
    }
    StructAlgebra::from_products(field, 4, Flavor::Associative, &products).expect("associative")
}

/// 𝔽_p[z]/(z^p) with basis 1, z, …, z^{p−1}; requires an odd prime p.
pub fn truncated_poly(p: u64) -> Result<StructAlgebra> {
    let field = Field::prime(p)?;
    if p <= 2 {
        return Err(Error::Validation(format!(
            "truncated polynomial algebra needs p > 2, got {p}"
        )));
    }
    let n = p as usize;
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            products.push((i, j, vector::unit(field, n, i + j)));
        }
    }
    StructAlgebra::from_products(field, n, Flavor::Associative, &products)
}

/// S ⊗ A with [s⊗a, t⊗b] = [s,t]⊗ab; basis s_i⊗a_k sits at index i·dim A + k.
pub fn tensor_lie(s: &StructAlgebra, a: &StructAlgebra) -> Result<StructAlgebra> {
    if s.flavor() != Flavor::Lie {
        return Err(Error::Validation(
            "left tensor factor must be a Lie algebra".into(),
        ));
    }
    if a.flavor() != Flavor::Associative || !a.is_commutative() {
        return Err(Error::Validation(
            "right tensor factor must be commutative associative".into(),
        ));
    }
    if s.field() != a.field() {
        return Err(Error::FieldMismatch(
            s.field().to_string(),
            a.field().to_string(),
        ));
    }
    let field = s.field();
    let (ds, da) = (s.dim(), a.dim());
    let n = ds * da;
    let mut table = vec![vector::zero(field, n); n * n];
    for i in 0..ds {
        for k in 0..da {
            for j in 0..ds {
                for l in 0..da {
                    let st = s.basis_product(i, j);
                    let ab = a.basis_product(k, l);
                    let out = &mut table[(i * da + k) * n + (j * da + l)];
                    for (m, c) in st.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (r, d) in ab.iter().enumerate() {
                            if !d.is_zero() {
                                out[m * da + r] = &out[m * da + r] + &(c * d);
                            }
                        }
                    }
                }
            }
        }
    }
    StructAlgebra::new(field, n, table, Flavor::Lie)
}

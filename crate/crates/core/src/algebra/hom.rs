use super::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Matrix, Vector};

/// A validated algebra homomorphism, as a target.dim × source.dim matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    pub source: StructAlgebra,
    pub target: StructAlgebra,
    pub matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: StructAlgebra, target: StructAlgebra, matrix: Matrix) -> Result<AlgebraHom> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                got: matrix.rows() * matrix.cols(),
            });
        }
        if let Some((i, j)) = hom_violation(&source, &target, &matrix) {
            return Err(Error::Validation(format!(
                "not multiplicative on basis pair ({i},{j})"
            )));
        }
        Ok(AlgebraHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(alg: &StructAlgebra) -> AlgebraHom {
        AlgebraHom {
            source: alg.clone(),
            target: alg.clone(),
            matrix: Matrix::identity(alg.field(), alg.dim()),
        }
    }

    pub fn apply(&self, x: &[crate::exactalg::Scalar]) -> Vector {
        self.matrix.mul_vec(x).expect("source dimension")
    }

    pub fn compose(&self, inner: &AlgebraHom) -> Result<AlgebraHom> {
        if inner.target != self.source {
            return Err(Error::Validation(
                "composition of homomorphisms with mismatched algebras".into(),
            ));
        }
        Ok(AlgebraHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }
}

/// First basis pair (i, j) with m(eᵢeⱼ) ≠ m(eᵢ)m(eⱼ).
pub fn hom_violation(
    source: &StructAlgebra,
    target: &StructAlgebra,
    m: &Matrix,
) -> Option<(usize, usize)> {
    let imgs: Vec<Vector> = (0..source.dim()).map(|i| m.col(i)).collect();
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = m
                .mul_vec(source.basis_product(i, j))
                .expect("source dimension");
            if lhs != target.mul(&imgs[i], &imgs[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// All homomorphisms source → target over a prime field, by exhausting matrices.
pub fn enumerate_homs(
    source: &StructAlgebra,
    target: &StructAlgebra,
    cap: usize,
) -> Result<Vec<AlgebraHom>> {
    let field = source.field();
    if target.field() != field {
        return Err(Error::FieldMismatch(
            field.to_string(),
            target.field().to_string(),
        ));
    }
    let entries = source.dim() * target.dim();
    let all = vector::all_vectors(field, entries)?;
    if all.len() > cap {
        return Err(Error::BoundExceeded(format!(
            "{} candidate matrices > cap {cap}",
            all.len()
        )));
    }
    let mut out = Vec::new();
    for flat in all {
        let rows: Vec<Vector> = flat
            .chunks(source.dim().max(1))
            .map(|c| c.to_vec())
            .collect();
        let m = if source.dim() == 0 {
            Matrix::zeros(field, target.dim(), 0)
        } else {
            Matrix::from_rows(field, source.dim(), &rows)?
        };
        if hom_violation(source, target, &m).is_none() {
            out.push(AlgebraHom {
                source: source.clone(),
                target: target.clone(),
                matrix: m,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, solvable2};
    use crate::exactalg::Field;

    #[test]
    fn counts_small_hom_sets() {
        let f3 = Field::prime(3).unwrap();
        // Every linear map between abelian algebras is a homomorphism.
        assert_eq!(
            enumerate_homs(&abelian(f3, 1), &abelian(f3, 1), 1000)
                .unwrap()
                .len(),
            3
        );
        // A 1-dim source has a zero bracket, so every vector of the target is an image.
        assert_eq!(
            enumerate_homs(&abelian(f3, 1), &heisenberg(f3), 1000)
                .unwrap()
                .len(),
            27
        );
        // Endomorphisms of [x,y]=y: x ↦ x + a·y, y ↦ b·y, plus maps onto abelian subalgebras.
        let s = solvable2(f3);
        let homs = enumerate_homs(&s, &s, 1000).unwrap();
        for h in &homs {
            assert!(hom_violation(&s, &s, &h.matrix).is_none());
        }
        assert!(homs.iter().any(|h| h.matrix == Matrix::identity(f3, 2)));
        assert!(enumerate_homs(&s, &s, 10).is_err());
    }

    #[test]
    fn rejects_non_homs() {
        let q = Field::Rationals;
        let h = heisenberg(q);
        let m = Matrix::from_i64(q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert!(AlgebraHom::new(h.clone(), h.clone(), m).is_err());
        assert!(AlgebraHom::new(h.clone(), h.clone(), Matrix::identity(q, 3)).is_ok());
    }
}

use std::fmt;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::vector::{self, Vector};
use crate::error::{Error, Result};

/// Default bound on the ambient dimension for subspace enumeration.
pub const DEFAULT_ENUM_DIM_CAP: usize = 4;

/// A subspace of 𝔽ⁿ, stored by its reduced row-echelon basis.
///
/// The representation is canonical, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, gens: &[Vector]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, ambient, gens)?;
        Ok(Subspace::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Subspace {
        let (mut r, pivots) = m.rref_with_pivots();
        r.truncate_rows(pivots.len());
        Subspace {
            ambient: m.cols(),
            basis: r,
            pivots,
        }
    }

    /// The line 𝔽v (the zero subspace when v = 0).
    pub fn line(field: Field, v: &[Scalar]) -> Subspace {
        Subspace::span(field, v.len(), &[v.to_vec()]).expect("length matches")
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.from_coords(&c);
        (back.as_slice() == v).then_some(c)
    }

    /// Σ cᵢ bᵢ over the canonical basis.
    pub fn from_coords(&self, c: &[Scalar]) -> Vector {
        vector::combination(self.field(), self.ambient, c, &self.basis_vectors())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(self.coords(v).is_some())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if other.is_zero() || self == other {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn add_vector(&self, v: &[Scalar]) -> Result<Subspace> {
        self.sum(&Subspace::line(self.field(), v))
    }

    /// Rows of a matrix whose kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        let rows = self.basis.kernel();
        Matrix::from_rows(self.field(), self.ambient, &rows)
            .expect("kernel vectors have ambient length")
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_subset(other)? {
            return Ok(self.clone());
        }
        if other.is_subset(self)? {
            return Ok(other.clone());
        }
        // x = cᵀ·A lies in B iff N_B·Aᵀ·c = 0.
        let system = other.annihilator().mul(&self.basis.transpose())?;
        let gens: Vec<Vector> = system
            .kernel()
            .iter()
            .map(|c| self.from_coords(c))
            .collect();
        Subspace::span(self.field(), self.ambient, &gens)
    }

    pub fn is_subset(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.dim() <= other.dim()
            && self
                .basis
                .row_vectors()
                .iter()
                .all(|v| other.coords(v).is_some()))
    }

    /// {v | m·v ∈ target}, a subspace of the source space of `m`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Result<Subspace> {
        if m.rows() != target.ambient {
            return Err(Error::DimensionMismatch {
                expected: target.ambient,
                got: m.rows(),
            });
        }
        let field = m.field();
        if target.is_full() {
            return Ok(Subspace::full(field, m.cols()));
        }
        let system = target.annihilator().mul(m)?;
        Subspace::span(field, m.cols(), &system.kernel())
    }

    pub fn kernel_of(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.cols(), &m.kernel()).expect("kernel vectors have column length")
    }

    /// m(self), for `m` acting on the ambient space.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: m.cols(),
            });
        }
        let gens: Vec<Vector> = self
            .basis_vectors()
            .iter()
            .map(|b| m.mul_vec(b))
            .collect::<Result<_>>()?;
        Subspace::span(self.field(), m.rows(), &gens)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "ambient": self.ambient, "basis": self.basis.to_json() })
    }

    /// Accepts any spanning family and canonicalizes it.
    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Subspace> {
        let ambient = v
            .get("ambient")
            .and_then(|a| a.as_u64())
            .ok_or_else(|| Error::Parse("subspace needs an integer \"ambient\"".into()))?
            as usize;
        let basis = v
            .get("basis")
            .cloned()
            .unwrap_or(serde_json::Value::Array(vec![]));
        let m = Matrix::from_json(field, &basis, Some(ambient))?;
        if m.cols() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: m.cols(),
            });
        }
        Ok(Subspace::row_space(&m))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| vector::show(v))
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Every subspace of 𝔽_pⁿ exactly once, by dimension, then pivot set, then free entries.
pub fn enumerate_subspaces(field: Field, n: usize, cap: usize) -> Result<Vec<Subspace>> {
    let p = field.order().ok_or(Error::InfiniteField)? as usize;
    if n > cap {
        return Err(Error::BoundExceeded(format!(
            "ambient dimension {n} > cap {cap}"
        )));
    }
    let elements = field.elements()?;
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in itertools::Itertools::combinations(0..n, k) {
            // Free slots: row i, column j > pivot i, j not a pivot.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    (pc + 1..n)
                        .filter(|j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let count = p.pow(free.len() as u32);
            for idx in 0..count {
                let mut m = Matrix::zeros(field, k, n);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, field.one());
                }
                let mut rest = idx;
                for &(i, j) in free.iter().rev() {
                    m.set(i, j, elements[rest % p].clone());
                    rest /= p;
                }
                out.push(Subspace {
                    ambient: n,
                    basis: m,
                    pivots: pivots.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn q() -> Field {
        Field::Rationals
    }

    fn sp(f: Field, n: usize, gens: &[&[i64]]) -> Subspace {
        let gens: Vec<Vector> = gens.iter().map(|g| vector::from_i64(f, g)).collect();
        Subspace::span(f, n, &gens).unwrap()
    }

    #[test]
    fn sum_examples() {
        let a = sp(q(), 3, &[&[1, 0, 0]]);
        let b = sp(q(), 3, &[&[0, 1, 0]]);
        assert_eq!(a.sum(&b).unwrap(), sp(q(), 3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(a.sum(&a).unwrap(), a);
        let c = sp(q(), 2, &[&[1, 1]])
            .sum(&sp(q(), 2, &[&[1, -1]]))
            .unwrap();
        assert_eq!(c, Subspace::full(q(), 2));
        assert!(a.sum(&Subspace::zero(q(), 2)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let e1 = sp(q(), 2, &[&[1, 0]]);
        let e2 = sp(q(), 2, &[&[0, 1]]);
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(q(), 2));
        assert_eq!(e1.intersect(&Subspace::full(q(), 2)).unwrap(), e1);
        let plane = sp(q(), 2, &[&[1, 1], &[0, 1]]);
        assert_eq!(plane.intersect(&e1).unwrap(), e1);
    }

    #[test]
    fn preimage_examples() {
        let x = sp(q(), 2, &[&[1, 2]]);
        assert_eq!(
            Subspace::preimage(&Matrix::identity(q(), 2), &x).unwrap(),
            x
        );
        assert_eq!(
            Subspace::preimage(&Matrix::zeros(q(), 2, 2), &x).unwrap(),
            Subspace::full(q(), 2)
        );
        let m = Matrix::from_i64(q(), &[&[1, 0], &[0, 0]]);
        let target = sp(q(), 2, &[&[0, 1]]);
        assert_eq!(Subspace::preimage(&m, &target).unwrap(), target);
        assert!(Subspace::preimage(&Matrix::zeros(q(), 3, 2), &x).is_err());
    }

    #[test]
    fn membership_examples() {
        let f = q();
        let e2 = sp(f, 2, &[&[0, 1]]);
        assert!(e2.contains(&vector::zero(f, 2)).unwrap());
        assert!(!e2.contains(&vector::from_i64(f, &[1, 0])).unwrap());
        let l = sp(f, 2, &[&[1, 2]]);
        assert!(l.contains(&vector::from_i64(f, &[1, 2])).unwrap());
        assert!(l.contains(&vector::zero(f, 3)).is_err());
    }

    /// Independent oracle: close every subset of 𝔽_pⁿ under + and scaling, then deduplicate.
    fn brute_force_count(p: u64, n: usize) -> usize {
        let f = Field::prime(p).unwrap();
        let all = vector::all_vectors(f, n).unwrap();
        let scalars = f.elements().unwrap();
        let mut seen = HashSet::new();
        for mask in 0u64..(1 << all.len()) {
            let mut set: HashSet<Vector> = HashSet::new();
            set.insert(vector::zero(f, n));
            set.extend(
                all.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone()),
            );
            loop {
                let cur: Vec<Vector> = set.iter().cloned().collect();
                let mut grew = false;
                for a in &cur {
                    for s in &scalars {
                        grew |= set.insert(vector::scale(s, a));
                    }
                    for b in &cur {
                        grew |= set.insert(vector::add(a, b));
                    }
                }
                if !grew {
                    break;
                }
            }
            let mut members: Vec<usize> = set.iter().map(|v| vector::index_of(v)).collect();
            members.sort_unstable();
            seen.insert(members);
        }
        seen.len()
    }

    #[test]
    fn enumeration_counts_match_oracle() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(enumerate_subspaces(f2, 1, 4).unwrap().len(), 2);
        assert_eq!(brute_force_count(2, 1), 2);
        assert_eq!(enumerate_subspaces(f2, 3, 4).unwrap().len(), 16);
        assert_eq!(brute_force_count(2, 3), 16);
        assert_eq!(enumerate_subspaces(f3, 2, 4).unwrap().len(), 6);
        assert_eq!(brute_force_count(3, 2), 6);
    }

    #[test]
    fn enumeration_yields_canonical_distinct_forms() {
        let f3 = Field::prime(3).unwrap();
        let all = enumerate_subspaces(f3, 3, 4).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&Subspace::row_space(s.basis()), s);
        }
        assert_eq!(
            enumerate_subspaces(Field::Rationals, 2, 4),
            Err(Error::InfiniteField)
        );
        assert!(enumerate_subspaces(f3, 5, 4).is_err());
    }

    fn subspace_q(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, n), 0..=n).prop_map(
            move |gens| {
                let gens: Vec<Vector> = gens
                    .iter()
                    .map(|g| vector::from_i64(Field::Rationals, g))
                    .collect();
                Subspace::span(Field::Rationals, n, &gens).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn modular_law(a in subspace_q(4), b in subspace_q(4)) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(i.is_subset(&a).unwrap() && i.is_subset(&b).unwrap());
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        }

        #[test]
        fn preimage_of_full_and_zero(rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 3), 2)) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = Matrix::from_i64(Field::Rationals, &refs);
            prop_assert_eq!(Subspace::preimage(&m, &Subspace::full(Field::Rationals, 2)).unwrap(), Subspace::full(Field::Rationals, 3));
            prop_assert_eq!(Subspace::preimage(&m, &Subspace::zero(Field::Rationals, 2)).unwrap(), Subspace::kernel_of(&m));
        }
    }
}

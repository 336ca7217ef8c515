//! Finite-dimensional algebras given by structure constants.

mod builders;
mod hom;

pub use builders::*;
pub use hom::{enumerate_homs, hom_violation, AlgebraHom};

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Matrix, Scalar, Subspace, Vector};

/// Default bound on algebra dimension when loading from JSON.
pub const DEFAULT_DIM_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    General,
    Associative,
    Lie,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::General => "general",
            Flavor::Associative => "associative",
            Flavor::Lie => "lie",
        }
    }

    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "general" => Ok(Flavor::General),
            "associative" => Ok(Flavor::Associative),
            "lie" => Ok(Flavor::Lie),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

/// An algebra with basis e₀…e_{n−1} and products eᵢ·eⱼ stored densely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructAlgebra {
    field: Field,
    dim: usize,
    table: Vec<Vector>,
    flavor: Flavor,
}

impl fmt::Debug for StructAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "StructAlgebra({}, dim {}, {})",
            self.field,
            self.dim,
            self.flavor.name()
        )
    }
}

impl StructAlgebra {
    /// Builds from the dense table (`table[i*dim+j]` = eᵢ·eⱼ) and validates the flavor.
    pub fn new(
        field: Field,
        dim: usize,
        table: Vec<Vector>,
        flavor: Flavor,
    ) -> Result<StructAlgebra> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: table.len(),
            });
        }
        for v in &table {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            for s in v {
                field.check(s)?;
            }
        }
        let alg = StructAlgebra {
            field,
            dim,
            table,
            flavor,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds from a sparse list of nonzero basis products.
    pub fn from_products(
        field: Field,
        dim: usize,
        flavor: Flavor,
        products: &[(usize, usize, Vector)],
    ) -> Result<StructAlgebra> {
        let mut table = vec![vector::zero(field, dim); dim * dim];
        for (i, j, out) in products {
            if *i >= dim || *j >= dim {
                return Err(Error::Validation(format!(
                    "basis index out of range in product ({i},{j})"
                )));
            }
            table[i * dim + j] = out.clone();
        }
        StructAlgebra::new(field, dim, table, flavor)
    }

    /// Lie algebra from brackets [eᵢ,eⱼ] for i < j; the rest follows by antisymmetry.
    pub fn lie_from_brackets(
        field: Field,
        dim: usize,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<StructAlgebra> {
        let mut products = Vec::new();
        for (i, j, out) in brackets {
            products.push((*i, *j, out.clone()));
            products.push((*j, *i, vector::neg(out)));
        }
        StructAlgebra::from_products(field, dim, Flavor::Lie, &products)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        vector::zero(self.field, self.dim)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Bilinear product without length checks.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut acc = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                let prod = &self.table[i * self.dim + j];
                for (k, pk) in prod.iter().enumerate() {
                    if !pk.is_zero() {
                        acc[k] = &acc[k] + &(&c * pk);
                    }
                }
            }
        }
        acc
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        let e = |i| self.basis_vector(i);
        match self.flavor {
            Flavor::General => Ok(()),
            Flavor::Associative => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let l = self.mul(self.basis_product(i, j), &e(k));
                            let r = self.mul(&e(i), self.basis_product(j, k));
                            if l != r {
                                return Err(Error::Validation(format!(
                                    "associativity fails on basis triple ({i},{j},{k})"
                                )));
                            }
                        }
                    }
                }
                Ok(())
            }
            Flavor::Lie => {
                for i in 0..n {
                    if !vector::is_zero(self.basis_product(i, i)) {
                        return Err(Error::Validation(format!("[e{i},e{i}] != 0")));
                    }
                    for j in 0..n {
                        if *self.basis_product(i, j) != vector::neg(self.basis_product(j, i)) {
                            return Err(Error::Validation(format!(
                                "antisymmetry fails on basis pair ({i},{j})"
                            )));
                        }
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            let t1 = self.mul(self.basis_product(i, j), &e(k));
                            let t2 = self.mul(self.basis_product(j, k), &e(i));
                            let t3 = self.mul(self.basis_product(k, i), &e(j));
                            if !vector::is_zero(&vector::add(&vector::add(&t1, &t2), &t3)) {
                                return Err(Error::Validation(format!(
                                    "Jacobi fails on basis triple ({i},{j},{k})"
                                )));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of y ↦ x·y (the adjoint map in the Lie case).
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_cols(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(&self.basis_vector(j), x))
            .collect();
        Matrix::from_cols(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim {
            return Err(Error::AmbientMismatch {
                left: self.dim,
                right: s.ambient(),
            });
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_ambient(s)?;
        let b = s.basis_vectors();
        Ok(b.iter()
            .all(|x| b.iter().all(|y| s.coords(&self.mul(x, y)).is_some())))
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_ambient(s)?;
        let b = s.basis_vectors();
        Ok(b.iter().all(|x| {
            (0..self.dim).all(|j| {
                let ej = self.basis_vector(j);
                s.coords(&self.mul(x, &ej)).is_some() && s.coords(&self.mul(&ej, x)).is_some()
            })
        }))
    }

    /// A² = span of all basis products.
    pub fn square(&self) -> Subspace {
        Subspace::span(self.field, self.dim, &self.table).expect("products have algebra dimension")
    }

    pub fn is_idempotent_algebra(&self) -> bool {
        self.square().is_full()
    }

    /// {z | zx = xz = 0 for all x}.
    pub fn annihilator_center(&self) -> Subspace {
        let mut rows = Matrix::zeros(self.field, 0, self.dim);
        for j in 0..self.dim {
            let ej = self.basis_vector(j);
            rows = rows
                .vstack(&self.right_mult(&ej))
                .and_then(|m| m.vstack(&self.left_mult(&ej)))
                .expect("same width");
        }
        Subspace::kernel_of(&rows)
    }

    /// The two-sided unit, if one exists.
    pub fn find_unit(&self) -> Option<Vector> {
        // u·eⱼ = eⱼ and eⱼ·u = eⱼ is linear in u: Σᵢ uᵢ (eᵢeⱼ) = eⱼ.
        let n = self.dim;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push(
                    (0..n)
                        .map(|i| self.basis_product(i, j)[k].clone())
                        .collect::<Vector>(),
                );
                rhs.push(if j == k {
                    self.field.one()
                } else {
                    self.field.zero()
                });
                rows.push(
                    (0..n)
                        .map(|i| self.basis_product(j, i)[k].clone())
                        .collect::<Vector>(),
                );
                rhs.push(if j == k {
                    self.field.one()
                } else {
                    self.field.zero()
                });
            }
        }
        let u = solve_affine(self.field, n, &rows, &rhs)?;
        (0..n)
            .all(|j| {
                let ej = self.basis_vector(j);
                self.mul(&u, &ej) == ej && self.mul(&ej, &u) == ej
            })
            .then_some(u)
    }

    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim)
            .map(|i| self.left_mult(&self.basis_vector(i)))
            .collect();
        let mut k = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = ads[i].mul(&ads[j]).expect("square");
                let mut tr = self.field.zero();
                for d in 0..self.dim {
                    tr = tr + p.get(d, d);
                }
                k.set(i, j, tr);
            }
        }
        k
    }

    /// Killing-form nondegeneracy; refused outside characteristic 0.
    pub fn is_semisimple_lie(&self) -> Result<bool> {
        if self.flavor != Flavor::Lie {
            return Err(Error::Unsupported(
                "semisimplicity is decided for Lie algebras only".into(),
            ));
        }
        if self.field.characteristic() != 0 {
            return Err(Error::Unsupported(
                "semisimplicity via the Killing form is only decided in characteristic 0".into(),
            ));
        }
        Ok(self.dim > 0 && self.killing_form().rank() == self.dim)
    }

    /// Whether `m` (dim × dim) satisfies m(xy) = m(x)y + x m(y) on basis pairs.
    pub fn is_derivation(&self, m: &Matrix) -> bool {
        let n = self.dim;
        let img: Vec<Vector> = (0..n).map(|i| m.col(i)).collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = m.mul_vec(self.basis_product(i, j)).expect("square");
                let rhs = vector::add(
                    &self.mul(&img[i], &self.basis_vector(j)),
                    &self.mul(&self.basis_vector(i), &img[j]),
                );
                lhs == rhs
            })
        })
    }

    /// The algebra structure on a subalgebra, in the coordinates of its canonical basis.
    pub fn restrict_to(&self, s: &Subspace) -> Result<StructAlgebra> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotSubalgebra);
        }
        let b = s.basis_vectors();
        let k = b.len();
        let mut table = Vec::with_capacity(k * k);
        for x in &b {
            for y in &b {
                table.push(s.coords(&self.mul(x, y)).expect("closed"));
            }
        }
        StructAlgebra::new(self.field, k, table, self.flavor)
    }

    /// All ideals over a prime field.
    pub fn ideals(&self, cap: usize) -> Result<Vec<Subspace>> {
        let all = crate::exactalg::enumerate_subspaces(self.field, self.dim, cap)?;
        Ok(all
            .into_iter()
            .filter(|s| self.is_ideal(s).unwrap_or(false))
            .collect())
    }

    /// All subalgebras over a prime field.
    pub fn subalgebras(&self, cap: usize) -> Result<Vec<Subspace>> {
        let all = crate::exactalg::enumerate_subspaces(self.field, self.dim, cap)?;
        Ok(all
            .into_iter()
            .filter(|s| self.is_subalgebra(s).unwrap_or(false))
            .collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let out = self.basis_product(i, j);
                if vector::is_zero(out) {
                    continue;
                }
                let terms: Vec<serde_json::Value> = out
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| serde_json::json!([k, c.to_string()]))
                    .collect();
                products.push(serde_json::json!({ "i": i, "j": j, "out": terms }));
            }
        }
        serde_json::json!({
            "field": self.field.to_json(),
            "dim": self.dim,
            "flavor": self.flavor.name(),
            "products": products,
        })
    }

    pub fn from_json(v: &serde_json::Value, dim_cap: usize) -> Result<StructAlgebra> {
        let field = Field::from_json(
            v.get("field")
                .ok_or_else(|| Error::Parse("algebra needs \"field\"".into()))?,
        )?;
        let dim =
            v.get("dim")
                .and_then(|d| d.as_u64())
                .ok_or_else(|| Error::Parse("algebra needs \"dim\"".into()))? as usize;
        if dim > dim_cap {
            return Err(Error::BoundExceeded(format!(
                "algebra dimension {dim} > cap {dim_cap}"
            )));
        }
        let flavor = Flavor::parse(
            v.get("flavor")
                .and_then(|f| f.as_str())
                .unwrap_or("general"),
        )?;
        let mut products = Vec::new();
        for p in v
            .get("products")
            .and_then(|p| p.as_array())
            .map(|a| a.as_slice())
            .unwrap_or(&[])
        {
            let idx = |key: &str| -> Result<usize> {
                p.get(key)
                    .and_then(|x| x.as_u64())
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("product needs integer {key:?}")))
            };
            let (i, j) = (idx("i")?, idx("j")?);
            let mut out = vector::zero(field, dim);
            for term in p
                .get("out")
                .and_then(|o| o.as_array())
                .ok_or_else(|| Error::Parse("product needs \"out\"".into()))?
            {
                let pair = term
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("out terms are [k, coeff]".into()))?;
                let k = match &pair[0] {
                    serde_json::Value::Number(n) => n.as_u64().map(|k| k as usize),
                    serde_json::Value::String(s) => s.parse().ok(),
                    _ => None,
                }
                .filter(|&k| k < dim)
                .ok_or_else(|| Error::Parse(format!("bad basis index {}", pair[0])))?;
                let c = match &pair[1] {
                    serde_json::Value::String(s) => field.parse(s)?,
                    serde_json::Value::Number(n) => field.parse(&n.to_string())?,
                    other => return Err(Error::Parse(format!("bad coefficient {other}"))),
                };
                out[k] = &out[k] + &c;
            }
            products.push((i, j, out));
        }
        StructAlgebra::from_products(field, dim, flavor, &products)
    }
}

/// One solution of rows·u = rhs, if consistent.
pub(crate) fn solve_affine(
    field: Field,
    n: usize,
    rows: &[Vector],
    rhs: &[Scalar],
) -> Option<Vector> {
    let aug: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let m = Matrix::from_rows(field, n + 1, &aug).ok()?;
    let (r, pivots) = m.rref_with_pivots();
    if pivots.contains(&n) {
        return None;
    }
    let mut u = vector::zero(field, n);
    for (i, &p) in pivots.iter().enumerate() {
        u[p] = r.get(i, n).clone();
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn multiply_examples() {
        let h = heisenberg(q());
        let [a, b, c] = [h.basis_vector(0), h.basis_vector(1), h.basis_vector(2)];
        assert_eq!(h.multiply(&a, &b).unwrap(), c);
        assert_eq!(h.multiply(&a, &h.zero_vector()).unwrap(), h.zero_vector());
        let s = sl2(q());
        let (e, hh, f) = (s.basis_vector(0), s.basis_vector(1), s.basis_vector(2));
        assert_eq!(s.multiply(&e, &f).unwrap(), hh);
        assert!(h.multiply(&a, &vector::zero(q(), 2)).is_err());
    }

    #[test]
    fn ideal_and_subalgebra_examples() {
        let h = heisenberg(q());
        let z = h.zero_space();
        assert!(h.is_subalgebra(&z).unwrap() && h.is_ideal(&z).unwrap());
        let center = Subspace::line(q(), &h.basis_vector(2));
        assert!(h.is_ideal(&center).unwrap());
        assert_eq!(h.annihilator_center(), center);
        let line_a = Subspace::line(q(), &h.basis_vector(0));
        assert!(h.is_subalgebra(&line_a).unwrap());
        assert!(!h.is_ideal(&line_a).unwrap());
    }

    #[test]
    fn unit_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            diagonal(f2, 2).find_unit(),
            Some(vector::from_i64(f2, &[1, 1]))
        );
        let zero1 = StructAlgebra::from_products(q(), 1, Flavor::Associative, &[]).unwrap();
        assert_eq!(zero1.find_unit(), None);
        let t = truncated_poly(3).unwrap();
        assert_eq!(t.find_unit(), Some(t.basis_vector(0)));
    }

    #[test]
    fn idempotent_algebra_examples() {
        assert!(diagonal(q(), 2).is_idempotent_algebra());
        assert!(!abelian(q(), 2).is_idempotent_algebra());
        assert!(sl2(q()).is_idempotent_algebra());
    }

    #[test]
    fn semisimple_examples() {
        assert!(sl2(q()).is_semisimple_lie().unwrap());
        assert!(!abelian(q(), 1).is_semisimple_lie().unwrap());
        assert!(!heisenberg(q()).is_semisimple_lie().unwrap());
        assert!(sl2(Field::prime(5).unwrap()).is_semisimple_lie().is_err());
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [e0,e1]=e1, [e1,e2]=e0, [e0,e2]=0 breaks Jacobi.
        let err = StructAlgebra::lie_from_brackets(
            q(),
            3,
            &[
                (0, 1, vector::from_i64(q(), &[0, 1, 0])),
                (1, 2, vector::from_i64(q(), &[1, 0, 0])),
            ],
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("Jacobi") && m.contains("(0,1,2)")),
            "{err}"
        );
    }

    #[test]
    fn tensor_examples() {
        let f3 = Field::prime(3).unwrap();
        let l = tensor_lie(&sl2(f3), &truncated_poly(3).unwrap()).unwrap();
        assert_eq!(l.dim(), 9);
        assert_eq!(l.flavor(), Flavor::Lie);
        let ab = abelian(Field::prime(2).unwrap(), 2);
        assert!(ab.square().is_zero());
        assert!(truncated_poly(2).is_err());
        assert!(truncated_poly(9).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = sl2(q());
        let back = StructAlgebra::from_json(&s.to_json(), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(back, s);
        assert!(StructAlgebra::from_json(&s.to_json(), 2).is_err());
    }

    #[test]
    fn adjoint_maps_are_derivations() {
        let h = heisenberg(q());
        for i in 0..3 {
            assert!(h.is_derivation(&h.left_mult(&h.basis_vector(i))));
        }
        let d = diagonal(q(), 2);
        assert!(!d.is_derivation(&Matrix::identity(q(), 2)));
    }

    proptest! {
        #[test]
        fn ideals_are_subalgebras(gens in proptest::collection::vec(proptest::collection::vec(0i64..3, 3), 0..3)) {
            let f3 = Field::prime(3).unwrap();
            let gens: Vec<Vector> = gens.iter().map(|g| vector::from_i64(f3, g)).collect();
            let s = Subspace::span(f3, 3, &gens).unwrap();
            for alg in [heisenberg(f3), sl2(f3), abelian(f3, 3), diagonal(f3, 3)] {
                if alg.is_ideal(&s).unwrap() {
                    prop_assert!(alg.is_subalgebra(&s).unwrap());
                }
            }
        }
    }
}

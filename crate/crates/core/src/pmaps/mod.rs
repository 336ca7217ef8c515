//! Partial endomorphisms, partial derivations and their class-restricted variants.

mod carriers;

pub use carriers::{
    candidate_ideals, domain_coincidence, generated_subalgebra, DomainClass, PDerCarrier, PEndCarrier, DEFAULT_PEND_DIM_CAP,
};

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Matrix, Scalar, Subspace, Vector};

/// A linear map K → V from a subspace K ⊆ V = 𝔽ⁿ.
///
/// The action has one column per canonical basis vector of the domain, so structural
/// equality is equality of partial maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialEndo {
    domain: Subspace,
    action: Matrix,
}

impl PartialEndo {
    pub fn new(domain: Subspace, action: Matrix) -> Result<PartialEndo> {
        if action.rows() != domain.ambient() || action.cols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.ambient() * domain.dim(),
                got: action.rows() * action.cols(),
            });
        }
        if action.field() != domain.field() {
            return Err(Error::FieldMismatch(
                action.field().to_string(),
                domain.field().to_string(),
            ));
        }
        Ok(PartialEndo { domain, action })
    }

    /// The restriction of a total map (n × n) to `domain`.
    pub fn restrict(m: &Matrix, domain: &Subspace) -> Result<PartialEndo> {
        if m.cols() != domain.ambient() || m.rows() != domain.ambient() {
            return Err(Error::DimensionMismatch {
                expected: domain.ambient(),
                got: m.cols(),
            });
        }
        Self::from_images(domain, |b| m.mul_vec(b).expect("square"))
    }

    pub fn total(m: &Matrix) -> Result<PartialEndo> {
        Self::restrict(m, &Subspace::full(m.field(), m.cols()))
    }

    pub fn zero_on(domain: &Subspace) -> PartialEndo {
        PartialEndo {
            domain: domain.clone(),
            action: Matrix::zeros(domain.field(), domain.ambient(), domain.dim()),
        }
    }

    pub fn identity_on(domain: &Subspace) -> PartialEndo {
        Self::from_images(domain, |b| b.to_vec()).expect("images in the ambient space")
    }

    /// The map sending each canonical basis vector b of `domain` to f(b).
    pub fn from_images(domain: &Subspace, f: impl Fn(&Vector) -> Vector) -> Result<PartialEndo> {
        let cols: Vec<Vector> = domain.basis_vectors().iter().map(f).collect();
        if cols.iter().any(|c| c.len() != domain.ambient()) {
            return Err(Error::DimensionMismatch {
                expected: domain.ambient(),
                got: cols[0].len(),
            });
        }
        let action = if cols.is_empty() {
            Matrix::zeros(domain.field(), domain.ambient(), 0)
        } else {
            Matrix::from_cols(domain.field(), domain.ambient(), &cols)?
        };
        Ok(PartialEndo {
            domain: domain.clone(),
            action,
        })
    }

    pub fn field(&self) -> Field {
        self.domain.field()
    }

    pub fn ambient(&self) -> usize {
        self.domain.ambient()
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    /// φ(v), or None outside the domain.
    pub fn apply(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.domain.coords(v)?;
        Some(self.apply_coords(&c))
    }

    fn apply_coords(&self, c: &[Scalar]) -> Vector {
        if c.is_empty() {
            return vector::zero(self.field(), self.ambient());
        }
        self.action.mul_vec(c).expect("domain coordinates")
    }

    fn same_ambient(&self, other: &PartialEndo) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    /// φ₁ + φ₂ on K₁ ∩ K₂.
    pub fn try_add(&self, other: &PartialEndo) -> Result<PartialEndo> {
        self.same_ambient(other)?;
        let dom = self.domain.intersect(&other.domain)?;
        Self::from_images(&dom, |b| {
            vector::add(
                &self.apply(b).expect("in K₁"),
                &other.apply(b).expect("in K₂"),
            )
        })
    }

    pub fn add(&self, other: &PartialEndo) -> PartialEndo {
        self.try_add(other).expect("same ambient space")
    }

    pub fn neg(&self) -> PartialEndo {
        PartialEndo {
            domain: self.domain.clone(),
            action: self.action.neg(),
        }
    }

    pub fn smul(&self, a: &Scalar) -> PartialEndo {
        PartialEndo {
            domain: self.domain.clone(),
            action: self.action.scale(a),
        }
    }

    /// The zero map on the same domain.
    pub fn local_zero(&self) -> PartialEndo {
        PartialEndo::zero_on(&self.domain)
    }

    pub fn is_zero_map(&self) -> bool {
        self.action.is_zero()
    }

    /// {v ∈ dom φ | φ(v) ∈ target}.
    pub fn preimage(&self, target: &Subspace) -> Result<Subspace> {
        if target.ambient() != self.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: target.ambient(),
            });
        }
        if self.domain.is_zero() {
            return Ok(self.domain.clone());
        }
        let coords = Subspace::preimage(&self.action, target)?;
        coords.image(&self.domain.basis().transpose())
    }

    /// φ₁φ₂ on φ₂⁻¹(K₁).
    pub fn try_compose(&self, inner: &PartialEndo) -> Result<PartialEndo> {
        self.same_ambient(inner)?;
        let dom = inner.preimage(&self.domain)?;
        Self::from_images(&dom, |b| {
            let mid = inner.apply(b).expect("in K₂");
            self.apply(&mid).expect("in K₁")
        })
    }

    pub fn compose(&self, inner: &PartialEndo) -> PartialEndo {
        self.try_compose(inner).expect("same ambient space")
    }

    /// φ₁φ₂ − φ₂φ₁, defined on φ₂⁻¹(K₁) ∩ φ₁⁻¹(K₂).
    pub fn commutator(&self, other: &PartialEndo) -> PartialEndo {
        self.compose(other).add(&other.compose(self).neg())
    }

    pub fn to_json(&self) -> Value {
        json!({ "domain": self.domain.to_json(), "action": self.action.to_json() })
    }

    pub fn from_json(field: Field, v: &Value) -> Result<PartialEndo> {
        let domain = Subspace::from_json(field, &v["domain"])?;
        let action = Matrix::from_json(field, &v["action"], Some(domain.dim()))?;
        if action.rows() != domain.ambient() && !(domain.dim() == 0 && action.rows() == 0) {
            return Err(Error::Parse(
                "action must have one row per ambient coordinate".into(),
            ));
        }
        let action = if domain.dim() == 0 {
            Matrix::zeros(field, domain.ambient(), 0)
        } else {
            action
        };
        PartialEndo::new(domain, action)
    }
}

impl fmt::Debug for PartialEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self
            .domain
            .basis_vectors()
            .iter()
            .zip(self.action.col_vectors())
            .map(|(b, c)| format!("{}↦{}", vector::show(b), vector::show(&c)))
            .collect();
        write!(f, "⟨{}⟩", imgs.join(", "))
    }
}

/// A partial endomorphism of an algebra whose domain is a subalgebra and which
/// satisfies the Leibniz rule there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDerivation {
    base: StructAlgebra,
    inner: PartialEndo,
}

/// First pair (i, j) of canonical domain basis indices where Leibniz fails.
pub fn leibniz_violation(base: &StructAlgebra, phi: &PartialEndo) -> Option<(usize, usize)> {
    let b = phi.domain().basis_vectors();
    let img: Vec<Vector> = phi.action().col_vectors();
    for i in 0..b.len() {
        for j in 0..b.len() {
            let lhs = phi
                .apply(&base.mul(&b[i], &b[j]))
                .expect("domain is a subalgebra");
            let rhs = vector::add(&base.mul(&img[i], &b[j]), &base.mul(&b[i], &img[j]));
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn make_pder(
    base: &StructAlgebra,
    domain: &Subspace,
    action: Matrix,
) -> Result<PartialDerivation> {
    if domain.ambient() != base.dim() {
        return Err(Error::AmbientMismatch {
            left: base.dim(),
            right: domain.ambient(),
        });
    }
    if !base.is_subalgebra(domain)? {
        return Err(Error::NotSubalgebra);
    }
    let inner = PartialEndo::new(domain.clone(), action)?;
    PartialDerivation::from_endo(base, inner)
}

impl PartialDerivation {
    pub fn from_endo(base: &StructAlgebra, inner: PartialEndo) -> Result<PartialDerivation> {
        if inner.ambient() != base.dim() {
            return Err(Error::AmbientMismatch {
                left: base.dim(),
                right: inner.ambient(),
            });
        }
        if !base.is_subalgebra(inner.domain())? {
            return Err(Error::NotSubalgebra);
        }
        if let Some((i, j)) = leibniz_violation(base, &inner) {
            return Err(Error::LeibnizViolation { i, j });
        }
        Ok(PartialDerivation {
            base: base.clone(),
            inner,
        })
    }

    pub fn base(&self) -> &StructAlgebra {
        &self.base
    }

    pub fn endo(&self) -> &PartialEndo {
        &self.inner
    }

    pub fn into_endo(self) -> PartialEndo {
        self.inner
    }

    fn same_base(&self, other: &PartialDerivation) -> Result<()> {
        if self.base != other.base {
            return Err(Error::Validation(
                "partial derivations of different algebras".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &PartialDerivation) -> Result<PartialDerivation> {
        self.same_base(other)?;
        PartialDerivation::from_endo(&self.base, self.inner.try_add(&other.inner)?)
    }

    pub fn smul(&self, a: &Scalar) -> PartialDerivation {
        PartialDerivation {
            base: self.base.clone(),
            inner: self.inner.smul(a),
        }
    }

    pub fn neg(&self) -> PartialDerivation {
        PartialDerivation {
            base: self.base.clone(),
            inner: self.inner.neg(),
        }
    }

    /// [φ₁, φ₂], re-validated.
    pub fn bracket(&self, other: &PartialDerivation) -> Result<PartialDerivation> {
        self.same_base(other)?;
        PartialDerivation::from_endo(&self.base, self.inner.commutator(&other.inner))
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.inner.to_json();
        v["base"] = self.base.to_json();
        v
    }
}

/// A basis of the derivations K → A for a subalgebra K, as n × dim K action matrices.
pub fn derivation_basis(base: &StructAlgebra, domain: &Subspace) -> Result<Vec<Matrix>> {
    if !base.is_subalgebra(domain)? {
        return Err(Error::NotSubalgebra);
    }
    let field = base.field();
    let n = base.dim();
    let b = domain.basis_vectors();
    let k = b.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    // Unknown M[r][c] sits at r·k + c.
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..k {
        let left = base.left_mult(&b[i]);
        for j in 0..k {
            let right = base.right_mult(&b[j]);
            let c = domain.coords(&base.mul(&b[i], &b[j])).expect("closed");
            for r in 0..n {
                let mut row = vector::zero(field, n * k);
                for (l, cl) in c.iter().enumerate() {
                    row[r * k + l] = &row[r * k + l] + cl;
                }
                for s in 0..n {
                    row[s * k + i] = &row[s * k + i] - right.get(r, s);
                    row[s * k + j] = &row[s * k + j] - left.get(r, s);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(field, n * k, &rows)?;
    system
        .kernel()
        .into_iter()
        .map(|flat| {
            let rs: Vec<Vector> = flat.chunks(k).map(|c| c.to_vec()).collect();
            Matrix::from_rows(field, k, &rs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal, heisenberg};

    fn q() -> Field {
        Field::Rationals
    }

    fn v(xs: &[i64]) -> Vector {
        vector::from_i64(q(), xs)
    }

    #[test]
    fn sums_and_negation() {
        let f = q();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let phi = PartialEndo::total(&m).unwrap();
        assert_eq!(phi.add(&phi.neg()), phi.local_zero());

        let e1 = PartialEndo::identity_on(&Subspace::line(f, &v(&[1, 0])));
        let e2 = PartialEndo::identity_on(&Subspace::line(f, &v(&[0, 1])));
        assert!(e1.add(&e2).domain().is_zero());

        let d = Subspace::line(f, &v(&[1, 1]));
        let a = PartialEndo::from_images(&d, |_| v(&[1, 0])).unwrap();
        let b = PartialEndo::from_images(&d, |_| v(&[0, 1])).unwrap();
        assert_eq!(a.add(&b).apply(&v(&[1, 1])), Some(v(&[1, 1])));
    }

    #[test]
    fn composition() {
        let f = q();
        let id = PartialEndo::total(&Matrix::identity(f, 2)).unwrap();
        let phi =
            PartialEndo::from_images(&Subspace::line(f, &v(&[1, 2])), |_| v(&[3, 0])).unwrap();
        assert_eq!(id.compose(&phi), phi);
        assert_eq!(phi.compose(&id), phi);

        let zero = PartialEndo::zero_on(&Subspace::full(f, 2));
        assert_eq!(zero.compose(&phi), phi.local_zero());

        let p = PartialEndo::total(&Matrix::from_i64(f, &[&[1, 0], &[0, 0]])).unwrap();
        let y = PartialEndo::identity_on(&Subspace::line(f, &v(&[0, 1])));
        let c = y.compose(&p);
        // Independent preimage: p(a,b) = (a,0) lies on the y-axis iff a = 0.
        assert_eq!(c.domain(), &Subspace::line(f, &v(&[0, 1])));
        assert!(c.is_zero_map());
    }

    #[test]
    fn derivation_validation() {
        let f = q();
        let h = heisenberg(f);
        let ad_a = h.left_mult(&v(&[1, 0, 0]));
        assert!(make_pder(&h, &h.full_space(), ad_a.clone()).is_ok());
        assert!(make_pder(&h, &h.zero_space(), Matrix::zeros(f, 3, 0)).is_ok());

        let d = diagonal(f, 2);
        let err = make_pder(&d, &d.full_space(), Matrix::identity(f, 2)).unwrap_err();
        assert!(matches!(err, Error::LeibnizViolation { .. }));

        // Brackets restricted to the center vanish.
        let center = h.annihilator_center();
        let phi = PartialDerivation::from_endo(&h, PartialEndo::restrict(&ad_a, &center).unwrap())
            .unwrap();
        let psi = PartialDerivation::from_endo(
            &h,
            PartialEndo::restrict(&h.left_mult(&v(&[0, 1, 0])), &center).unwrap(),
        )
        .unwrap();
        let br = phi.bracket(&psi).unwrap();
        assert!(br.endo().is_zero_map());
        let self_br = phi.bracket(&phi).unwrap();
        assert!(self_br.endo().is_zero_map());
    }

    #[test]
    fn derivation_basis_of_heisenberg_has_dim_six() {
        // Der(heis) over a field of char 0 is 6-dimensional.
        let h = heisenberg(q());
        let basis = derivation_basis(&h, &h.full_space()).unwrap();
        assert_eq!(basis.len(), 6);
        for m in &basis {
            assert!(h.is_derivation(m));
        }
    }

    #[test]
    fn json_round_trip() {
        let f = q();
        let phi =
            PartialEndo::from_images(&Subspace::line(f, &v(&[1, 2])), |_| v(&[3, 0])).unwrap();
        assert_eq!(PartialEndo::from_json(f, &phi.to_json()).unwrap(), phi);
        let z = PartialEndo::zero_on(&Subspace::zero(f, 2));
        assert_eq!(PartialEndo::from_json(f, &z.to_json()).unwrap(), z);
    }
}

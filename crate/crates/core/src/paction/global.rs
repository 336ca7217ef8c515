//! Restricting a global action by derivations to an ideal, and the truncated-polynomial example.

use serde_json::{json, Value};

use super::PartialAction;
use crate::algebra::{abelian, sl2, tensor_lie, truncated_poly, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar, Subspace, Vector};
use crate::exel::{ELCarrier, ExtensionCheck};
use crate::isv::{run_axioms, Axiom, Bracket, CheckReport, Enumerable, Plan, Slot, VectorCarrier};
use crate::pmaps::PartialEndo;

/// A Lie homomorphism η: L → Der(B), one matrix per basis vector of L, and an ideal A ⊴ B.
#[derive(Clone, Debug)]
pub struct GlobalRestriction {
    source: StructAlgebra,
    big: StructAlgebra,
    ideal: Subspace,
    eta: Vec<Matrix>,
}

impl GlobalRestriction {
    pub fn new(source: &StructAlgebra, big: &StructAlgebra, ideal: &Subspace, eta: Vec<Matrix>) -> Result<GlobalRestriction> {
        let n = big.dim();
        if eta.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: eta.len() });
        }
        if let Some(m) = eta.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: m.rows().max(m.cols()) });
        }
        if let Some(i) = eta.iter().position(|m| !big.is_derivation(m)) {
            return Err(Error::Validation(format!("the image of basis vector {i} is not a derivation")));
        }
        if !big.is_ideal(ideal)? {
            return Err(Error::NotIdeal);
        }
        let gr = GlobalRestriction { source: source.clone(), big: big.clone(), ideal: ideal.clone(), eta };
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = gr.eta_at(source.basis_product(i, j));
                let rhs = gr.eta[i].mul(&gr.eta[j])?.add(&gr.eta[j].mul(&gr.eta[i])?.neg())?;
                if lhs != rhs {
                    return Err(Error::Validation(format!("η is not a Lie homomorphism on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(gr)
    }

    pub fn eta_at(&self, x: &[Scalar]) -> Matrix {
        let n = self.big.dim();
        x.iter()
            .zip(&self.eta)
            .fold(Matrix::zeros(self.big.field(), n, n), |acc, (c, m)| acc.add(&m.scale(c)).expect("same shape"))
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn big(&self) -> &StructAlgebra {
        &self.big
    }

    /// D_x = A ∩ η_x⁻¹(A) in the coordinates of B.
    pub fn domain_in_big(&self, x: &[Scalar]) -> Subspace {
        let pre = Subspace::preimage(&self.eta_at(x), &self.ideal).expect("square");
        self.ideal.intersect(&pre).expect("same ambient")
    }

    /// Maps a subspace of A (in A's coordinates) back into B.
    pub fn to_big(&self, s: &Subspace) -> Subspace {
        let gens: Vec<Vector> = s.basis_vectors().iter().map(|c| self.ideal.from_coords(c)).collect();
        Subspace::span(self.big.field(), self.big.dim(), &gens).expect("ambient of B")
    }

    /// θ_x = η_x restricted to D_x, written in the coordinates of A.
    pub fn restrict(&self) -> Result<PartialAction> {
        let base = self.big.restrict_to(&self.ideal)?;
        let me = self.clone();
        PartialAction::from_fn(&self.source, &base, move |x| {
            let eta = me.eta_at(x);
            let field = me.big.field();
            let coords: Vec<Vector> =
                me.domain_in_big(x).basis_vectors().iter().map(|b| me.ideal.coords(b).expect("inside A")).collect();
            let dom = Subspace::span(field, me.ideal.dim(), &coords).expect("coordinates of A");
            PartialEndo::from_images(&dom, |c| {
                let image = eta.mul_vec(&me.ideal.from_coords(c)).expect("square");
                me.ideal.coords(&image).expect("D_x maps into A")
            })
            .expect("images in A")
        })
    }

    /// θ_x⁻¹(D_y) ∩ θ_y⁻¹(D_x) = D_{[x,y]} ∩ θ_x⁻¹(D_y) ∩ D_y = D_{[x,y]} ∩ D_x ∩ θ_y⁻¹(D_x).
    pub fn check_identity(&self, pa: &PartialAction, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        let ax = Axiom::new("pact.restriction_identity", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
            let (x, y) = (a.e(0), a.e(1));
            let (tx, ty, txy) = (pa.theta(x), pa.theta(y), pa.theta(&l.mul(x, y)));
            let both = tx.commutator(&ty).domain().clone();
            let left = txy.domain().intersect(&tx.preimage(ty.domain()).expect("ambient")).and_then(|s| s.intersect(ty.domain()));
            let right = txy.domain().intersect(tx.domain()).and_then(|s| s.intersect(&ty.preimage(tx.domain()).expect("ambient")));
            left.ok().as_ref() == Some(&both) && right.ok().as_ref() == Some(&both)
        });
        run_axioms(&VectorCarrier::new(self.source.clone()), "global_restriction", plan, &[ax])
    }
}

/// The non-invariant ideal of sl₂ ⊗ 𝔽_p[z]/(z^p) under d = ∂/∂z.
#[derive(Clone, Debug)]
pub struct JacobsonFixture {
    pub p: u64,
    pub dim_l: usize,
    pub dim_ideal: usize,
    /// D_d = I ∩ d⁻¹(I), in the coordinates of L.
    pub domain_d: Subspace,
    /// D_d equals sl₂ ⊗ span{z², …, z^{p−1}}.
    pub domain_matches: bool,
    /// Domain of [θ_d, θ_d], that is D_d ∩ d⁻¹(D_d), in the coordinates of L.
    pub bracket_domain: Subspace,
    pub action: CheckReport,
    pub global: bool,
    pub strong: CheckReport,
    pub extension: ExtensionCheck,
    /// ρ̃[(𝔽d,d),(𝔽d,d)] has domain D_d while [ρ̃(𝔽d,d), ρ̃(𝔽d,d)] has the smaller bracket domain.
    pub witness_matches: bool,
    /// Restricting to the invariant ideal L itself yields a homomorphism.
    pub control: ExtensionCheck,
}

impl JacobsonFixture {
    /// ρ̃ fails to be a homomorphism exactly at the expected witness, and nothing else is off.
    pub fn confirmed(&self) -> bool {
        self.domain_matches
            && self.bracket_domain != self.domain_d
            && self.action.passed()
            && !self.global
            && !self.strong.passed()
            && self.extension.contract.passed()
            && !self.extension.is_homomorphism()
            && self.witness_matches
            && self.control.is_homomorphism()
    }

    pub fn verdict(&self) -> &'static str {
        if self.confirmed() {
            "rho~ not a homomorphism: fail (expected)"
        } else {
            "unexpected outcome"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "dim_L": self.dim_l,
            "dim_I": self.dim_ideal,
            "I_d": self.domain_d.to_json(),
            "I_d_dim": self.domain_d.dim(),
            "I_d_matches": self.domain_matches,
            "bracket_domain": self.bracket_domain.to_json(),
            "bracket_domain_dim": self.bracket_domain.dim(),
            "partial_action": self.action.to_json(),
            "global": self.global,
            "strong": self.strong.to_json(),
            "extension": self.extension.to_json(),
            "domain_mismatch_witness": {
                "x": "(Fd, d)",
                "lhs": "rho~([x,x]) = 0_{rho(d)}",
                "lhs_domain_dim": self.domain_d.dim(),
                "rhs": "[rho~(x), rho~(x)]",
                "rhs_domain_dim": self.bracket_domain.dim(),
                "matches": self.witness_matches,
            },
            "control_invariant_ideal_homomorphism": self.control.is_homomorphism(),
            "verdict": self.verdict(),
        })
    }
}

struct JacobsonSetup {
    l: StructAlgebra,
    ideal: Subspace,
    d: Matrix,
    lower: Subspace,
}

fn jacobson_setup(p: u64) -> Result<JacobsonSetup> {
    let poly = truncated_poly(p)?;
    let field = Field::prime(p)?;
    let s = sl2(field);
    let l = tensor_lie(&s, &poly)?;
    let (n, pu) = (l.dim(), p as usize);
    let index = |i: usize, k: usize| i * pu + k;
    let span_of = |from: usize| {
        let l = &l;
        let gens: Vec<Vector> = (0..s.dim()).flat_map(|i| (from..pu).map(move |k| l.basis_vector(index(i, k)))).collect();
        Subspace::span(field, n, &gens)
    };
    let ideal = span_of(1)?;
    let mut d = Matrix::zeros(field, n, n);
    for i in 0..s.dim() {
        for k in 1..pu {
            d.set(index(i, k - 1), index(i, k), field.from_i64(k as i64));
        }
    }
    let lower = span_of(2)?;
    Ok(JacobsonSetup { l, ideal, d, lower })
}

/// The restricted partial action of span{d} on the non-invariant ideal, for an odd prime p.
pub fn jacobson_action(p: u64) -> Result<PartialAction> {
    let JacobsonSetup { l, ideal, d, .. } = jacobson_setup(p)?;
    GlobalRestriction::new(&abelian(l.field(), 1), &l, &ideal, vec![d])?.restrict()
}

/// Builds and checks the example for an odd prime p, with the one-dimensional acting algebra span{d}.
pub fn jacobson_fixture(p: u64) -> Result<JacobsonFixture> {
    let JacobsonSetup { l, ideal, d, lower } = jacobson_setup(p)?;
    let field = l.field();
    let n = l.dim();
    let source = abelian(field, 1);
    let gr = GlobalRestriction::new(&source, &l, &ideal, vec![d.clone()])?;
    let pa = gr.restrict()?;
    let plan = pa.plan(0, 0)?;
    let one = vec![field.one()];

    let domain_d = gr.domain_in_big(&one);
    let theta_d = pa.theta(&one);
    let bracket_domain = gr.to_big(theta_d.commutator(&theta_d).domain());
    let mut action = pa.check(&plan)?;
    action.extend(gr.check_identity(&pa, &plan)?);
    action.extend(pa.check_definition(&plan)?);

    let el = ELCarrier::new(&source)?;
    let rho = pa.premorphism();
    let extension = rho.check_extension(&el, &Plan::exhaustive(el.elements()?, field))?;
    let x = el.tau(&one);
    let lhs = rho.extend_at(&el.mul(&x, &x));
    let rhs = rho.target().mul(&rho.extend_at(&x), &rho.extend_at(&x));
    let witness_matches = gr.to_big(lhs.domain()) == domain_d && gr.to_big(rhs.domain()) == bracket_domain && lhs != rhs;

    let whole = GlobalRestriction::new(&source, &l, &l.full_space(), vec![d])?;
    let control_rho = whole.restrict()?.premorphism();
    let control = control_rho.check_extension(&el, &Plan::exhaustive(el.elements()?, field))?;

    Ok(JacobsonFixture {
        p,
        dim_l: n,
        dim_ideal: ideal.dim(),
        domain_matches: domain_d == lower,
        domain_d,
        bracket_domain,
        global: pa.is_global(&plan)?,
        strong: pa.check_strong(&plan)?,
        action,
        extension,
        witness_matches,
        control,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::heisenberg;

    #[test]
    fn jacobson_at_three() {
        let j = jacobson_fixture(3).unwrap();
        assert_eq!((j.dim_l, j.dim_ideal, j.domain_d.dim()), (9, 6, 3));
        assert!(j.bracket_domain.is_zero());
        assert!(j.confirmed(), "{}", j.to_json());
        let fail = j.extension.homomorphism.result("ext.bracket_hom").unwrap();
        assert_eq!(fail.verdict.name(), "fail");
    }

    #[test]
    fn jacobson_at_five_keeps_a_nonzero_bracket_domain() {
        let j = jacobson_fixture(5).unwrap();
        assert_eq!(j.domain_d.dim(), 9);
        assert_eq!(j.bracket_domain.dim(), 6);
        assert!(j.confirmed());
    }

    #[test]
    fn jacobson_rejects_small_primes() {
        assert!(jacobson_fixture(2).is_err());
    }

    #[test]
    fn zero_eta_gives_total_zero_maps() {
        let f3 = Field::prime(3).unwrap();
        let (l, b) = (abelian(f3, 1), heisenberg(f3));
        let ideal = b.square();
        let gr = GlobalRestriction::new(&l, &b, &ideal, vec![Matrix::zeros(f3, 3, 3)]).unwrap();
        let pa = gr.restrict().unwrap();
        let plan = pa.plan(0, 0).unwrap();
        assert!(pa.is_global(&plan).unwrap());
        for x in crate::exactalg::vector::all_vectors(f3, 1).unwrap() {
            assert!(pa.theta(&x).is_zero_map());
        }
    }

    #[test]
    fn invariant_ideal_gives_a_global_action() {
        let f3 = Field::prime(3).unwrap();
        let b = heisenberg(f3);
        // ad of the first basis vector preserves the center.
        let ad = b.left_mult(&b.basis_vector(0));
        let gr = GlobalRestriction::new(&abelian(f3, 1), &b, &b.square(), vec![ad]).unwrap();
        let pa = gr.restrict().unwrap();
        let plan = pa.plan(0, 0).unwrap();
        assert!(pa.is_global(&plan).unwrap());
        assert!(pa.check(&plan).unwrap().passed());
        assert!(gr.check_identity(&pa, &plan).unwrap().passed());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let f3 = Field::prime(3).unwrap();
        let b = heisenberg(f3);
        let id = Matrix::identity(f3, 3);
        assert!(GlobalRestriction::new(&abelian(f3, 1), &b, &b.full_space(), vec![id]).is_err());
        let s = sl2(f3);
        let ad0 = s.left_mult(&s.basis_vector(0));
        let ad1 = s.left_mult(&s.basis_vector(1));
        // Two non-commuting derivations on an abelian source.
        assert!(GlobalRestriction::new(&abelian(f3, 2), &s, &s.full_space(), vec![ad0, ad1]).is_err());
    }
}

//! Partial actions of Lie algebras on non-associative algebras by partial derivations.

mod correspondence;
mod global;

pub use correspondence::{action_hom_correspondence, is_el_homomorphism, Correspondence};
pub use global::{jacobson_action, jacobson_fixture, GlobalRestriction, JacobsonFixture};

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::exel::Premorphism;
use crate::isv::{run_axioms, Axiom, AxiomResult, Carrier, CheckReport, Commutator, Plan, Slot, VectorCarrier};
use crate::pmaps::{leibniz_violation, PEndCarrier, PartialEndo};

type Rule = Arc<dyn Fn(&[Scalar]) -> PartialEndo + Send + Sync>;

/// x ↦ θ_x: D_x → A, either tabulated over a finite L or given by a rule.
#[derive(Clone)]
pub struct PartialAction {
    source: StructAlgebra,
    base: StructAlgebra,
    rule: Rule,
    tabulated: bool,
}

impl std::fmt::Debug for PartialAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PartialAction(dim L = {}, dim A = {})", self.source.dim(), self.base.dim())
    }
}

impl PartialAction {
    pub fn from_fn(
        source: &StructAlgebra,
        base: &StructAlgebra,
        rule: impl Fn(&[Scalar]) -> PartialEndo + Send + Sync + 'static,
    ) -> Result<PartialAction> {
        check_fields(source, base)?;
        Ok(PartialAction { source: source.clone(), base: base.clone(), rule: Arc::new(rule), tabulated: false })
    }

    /// One entry per element of L, in enumeration order.
    pub fn from_table(source: &StructAlgebra, base: &StructAlgebra, entries: Vec<PartialEndo>) -> Result<PartialAction> {
        check_fields(source, base)?;
        let size = vector::all_vectors(source.field(), source.dim())?.len();
        if entries.len() != size {
            return Err(Error::Validation(format!("partial action table needs {size} entries, got {}", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.ambient() != base.dim()) {
            return Err(Error::AmbientMismatch { left: e.ambient(), right: base.dim() });
        }
        Ok(PartialAction {
            source: source.clone(),
            base: base.clone(),
            rule: Arc::new(move |x| entries[vector::index_of(x)].clone()),
            tabulated: true,
        })
    }

    /// D_0 = A, D_x = {0} otherwise, all maps zero. Needs A² = A.
    pub fn idempotent_example(source: &StructAlgebra, base: &StructAlgebra) -> Result<PartialAction> {
        if !base.is_idempotent_algebra() {
            return Err(Error::Validation("the base algebra must satisfy A² = A".into()));
        }
        let (full, zero) = (base.full_space(), base.zero_space());
        Self::from_fn(source, base, move |x| {
            PartialEndo::zero_on(if vector::is_zero(x) { &full } else { &zero })
        })
    }

    /// Every D_x = A, θ_x = 0.
    pub fn zero_action(source: &StructAlgebra, base: &StructAlgebra) -> Result<PartialAction> {
        let full = base.full_space();
        Self::from_fn(source, base, move |_| PartialEndo::zero_on(&full))
    }

    /// The tabulated version of this action (requires a finite L).
    pub fn tabulate(&self) -> Result<PartialAction> {
        let entries = vector::all_vectors(self.field(), self.source.dim())?.iter().map(|x| self.theta(x)).collect();
        Self::from_table(&self.source, &self.base, entries)
    }

    /// Replaces θ_x for one x of a tabulated action.
    pub fn with_entry(&self, x: &[Scalar], value: PartialEndo) -> Result<PartialAction> {
        let mut entries: Vec<PartialEndo> =
            vector::all_vectors(self.field(), self.source.dim())?.iter().map(|v| self.theta(v)).collect();
        entries[vector::index_of(x)] = value;
        Self::from_table(&self.source, &self.base, entries)
    }

    pub fn source(&self) -> &StructAlgebra {
        &self.source
    }

    pub fn base(&self) -> &StructAlgebra {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn is_tabulated(&self) -> bool {
        self.tabulated
    }

    pub fn theta(&self, x: &[Scalar]) -> PartialEndo {
        (self.rule)(x)
    }

    pub fn domain(&self, x: &[Scalar]) -> Subspace {
        self.theta(x).domain().clone()
    }

    /// The carrier the induced premorphism lands in: partial endomorphisms of A under the commutator.
    pub fn target(&self) -> Commutator<PEndCarrier> {
        Commutator(PEndCarrier::new(self.field(), self.base.dim()))
    }

    /// x ↦ θ_x as a map L → PDer(A).
    pub fn premorphism(&self) -> Premorphism<Commutator<PEndCarrier>> {
        let rule = self.rule.clone();
        Premorphism::from_fn(&self.source, self.target(), move |x| rule(x))
    }

    pub fn plan(&self, trials: usize, seed: u64) -> Result<Plan<'static, Vector>> {
        crate::isv::vector_plan(self.field(), self.source.dim(), trials, seed)
    }

    /// Ideal domains, Leibniz rule, and the four conditions on domains and maps.
    pub fn check(&self, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        let pend = PEndCarrier::new(self.field(), self.base.dim());
        let base = &self.base;
        let th = |x: &[Scalar]| self.theta(x);
        let axioms: Vec<Axiom<'_, VectorCarrier>> = vec![
            Axiom::new("pact.ideal_domain", &[("x", Slot::Elem)], |_: &VectorCarrier, a| {
                base.is_ideal(th(a.e(0)).domain()).unwrap_or(false)
            }),
            Axiom::new("pact.leibniz", &[("x", Slot::Elem)], |_: &VectorCarrier, a| {
                leibniz_violation(base, &th(a.e(0))).is_none()
            }),
            Axiom::new("pact.additive", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                pend.leq(&th(x).add(&th(y)), &th(&l.add(x, y)))
            }),
            Axiom::new("pact.bracket", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                pend.leq(&th(x).commutator(&th(y)), &th(&crate::isv::Bracket::mul(l, x, y)))
            }),
            Axiom::new("pact.homogeneous", &[("alpha", Slot::NonzeroScalar), ("x", Slot::Elem)], |l: &VectorCarrier, a| {
                let (al, x) = (a.s(0), a.e(1));
                th(&l.smul(al, x)) == th(x).smul(al)
            }),
            Axiom::new("pact.domain_equality", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                let (dx, dy, dxy) = (self.domain(x), self.domain(y), self.domain(&l.add(x, y)));
                dx.intersect(&dy).ok() == dxy.intersect(&dx).ok()
            })
            .noted("derived"),
        ];
        let theta0 = th(&self.source.zero_vector());
        let zero_ok = theta0.domain().is_full() && theta0.is_zero_map();
        let mut report = CheckReport::new("partial_action", plan.mode());
        report.push(AxiomResult::custom("pact.zero", plan.mode(), zero_ok, 1, Some(json!({ "theta_0": theta0.to_json() }))));
        report.extend(run_axioms(&VectorCarrier::new(self.source.clone()), "partial_action", plan, &axioms)?);
        Ok(report)
    }

    /// The premorphism form of the definition, checked on the induced map into PDer(A).
    pub fn check_definition(&self, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        self.premorphism().check(plan)
    }

    /// θ_x⁻¹(D_y) ∩ θ_y⁻¹(D_x) = D_x ∩ D_y ∩ D_{[x,y]} for all pairs.
    pub fn check_strong(&self, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        let ax = Axiom::new("pact.strong", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
            let (x, y) = (a.e(0), a.e(1));
            let (tx, ty) = (self.theta(x), self.theta(y));
            let lhs = tx.commutator(&ty).domain().clone();
            let rhs = tx
                .domain()
                .intersect(ty.domain())
                .and_then(|s| s.intersect(&self.domain(&crate::isv::Bracket::mul(l, x, y))));
            rhs.ok() == Some(lhs)
        });
        run_axioms(&VectorCarrier::new(self.source.clone()), "strong_partial_action", plan, &[ax])
    }

    /// Whether every domain is all of A on the plan's population.
    pub fn is_global(&self, plan: &Plan<'_, Vector>) -> Result<bool> {
        let ax = Axiom::new("pact.global", &[("x", Slot::Elem)], |_: &VectorCarrier, a| self.domain(a.e(0)).is_full());
        Ok(run_axioms(&VectorCarrier::new(self.source.clone()), "global", plan, &[ax])?.passed())
    }

    /// Tabulated form: {"L", "A", "entries": [{"x", "D", "theta"}]}.
    pub fn to_json(&self) -> Result<Value> {
        let entries: Vec<Value> = vector::all_vectors(self.field(), self.source.dim())?
            .iter()
            .map(|x| {
                let t = self.theta(x);
                json!({ "x": vector::to_json(x), "D": t.domain().to_json(), "theta": t.action().to_json() })
            })
            .collect();
        Ok(json!({ "L": self.source.to_json(), "A": self.base.to_json(), "entries": entries }))
    }

    pub fn from_json(v: &Value, dim_cap: usize) -> Result<PartialAction> {
        let source = StructAlgebra::from_json(&v["L"], dim_cap)?;
        let base = StructAlgebra::from_json(&v["A"], dim_cap)?;
        let field = source.field();
        let size = vector::all_vectors(field, source.dim())?.len();
        let mut slots: Vec<Option<PartialEndo>> = vec![None; size];
        let entries = v["entries"].as_array().ok_or_else(|| Error::Parse("partial action needs an \"entries\" array".into()))?;
        for e in entries {
            let x = vector::from_json(field, &e["x"])?;
            if x.len() != source.dim() {
                return Err(Error::DimensionMismatch { expected: source.dim(), got: x.len() });
            }
            let d = Subspace::from_json(field, &e["D"])?;
            let m = Matrix::from_json(field, &e["theta"], Some(d.dim()))?;
            slots[vector::index_of(&x)] = Some(PartialEndo::new(d, m)?);
        }
        let table = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::Validation(format!("no entry for element {}", vector::show(&vector::vector_at(field, source.dim(), i))))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(&source, &base, table)
    }
}

fn check_fields(source: &StructAlgebra, base: &StructAlgebra) -> Result<()> {
    if source.field() != base.field() {
        return Err(Error::FieldMismatch(source.field().to_string(), base.field().to_string()));
    }
    if source.flavor() != crate::algebra::Flavor::Lie {
        return Err(Error::Validation("the acting algebra must be a Lie algebra".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, diagonal, heisenberg, sl2};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn idempotent_example_is_strong_and_not_global() {
        let (l, a) = (heisenberg(f2()), diagonal(f2(), 2));
        let pa = PartialAction::idempotent_example(&l, &a).unwrap();
        let plan = pa.plan(0, 0).unwrap();
        assert!(pa.check(&plan).unwrap().passed());
        assert!(pa.check_definition(&plan).unwrap().passed());
        assert!(pa.check_strong(&plan).unwrap().passed());
        assert!(!pa.is_global(&plan).unwrap());
        assert!(PartialAction::idempotent_example(&l, &abelian(f2(), 1)).is_err());
    }

    #[test]
    fn idempotent_example_over_q_sampled() {
        let q = Field::rationals();
        let pa = PartialAction::idempotent_example(&sl2(q), &sl2(q)).unwrap();
        let plan = pa.plan(200, 3).unwrap();
        assert!(pa.check(&plan).unwrap().passed());
        assert!(pa.check_strong(&plan).unwrap().passed());
    }

    #[test]
    fn zero_action_is_global_and_strong() {
        let (l, a) = (abelian(f2(), 2), diagonal(f2(), 2));
        let pa = PartialAction::zero_action(&l, &a).unwrap();
        let plan = pa.plan(0, 0).unwrap();
        assert!(pa.is_global(&plan).unwrap());
        assert!(pa.check(&plan).unwrap().passed());
        assert!(pa.check_strong(&plan).unwrap().passed());
    }

    #[test]
    fn shrinking_a_sum_domain_breaks_additivity_in_both_forms() {
        let (l, a) = (abelian(f2(), 2), diagonal(f2(), 2));
        let pa = PartialAction::zero_action(&l, &a).unwrap().tabulate().unwrap();
        let sum = vector::from_i64(f2(), &[1, 1]);
        let bad = pa.with_entry(&sum, PartialEndo::zero_on(&a.zero_space())).unwrap();
        let plan = bad.plan(0, 0).unwrap();
        let report = bad.check(&plan).unwrap();
        assert!(!report.passed());
        assert_eq!(report.verdict("pact.additive").unwrap().name(), "fail");
        assert!(!bad.check_definition(&plan).unwrap().passed());
    }

    #[test]
    fn json_roundtrip() {
        let (l, a) = (abelian(f2(), 1), diagonal(f2(), 2));
        let pa = PartialAction::idempotent_example(&l, &a).unwrap();
        let back = PartialAction::from_json(&pa.to_json().unwrap(), 8).unwrap();
        for x in vector::all_vectors(f2(), 1).unwrap() {
            assert_eq!(back.theta(&x), pa.theta(&x));
        }
    }
}

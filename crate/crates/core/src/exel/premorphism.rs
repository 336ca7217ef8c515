//! Premorphisms L → T and their extension to E(L).

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{ELCarrier, ELElem};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Scalar, Vector};
use crate::isv::{
    run_axioms, Axiom, AxiomResult, Bracket, Carrier, CheckReport, Enumerable, Mode, Plan, Slot, VectorCarrier,
};

type MapFn<E> = Arc<dyn Fn(&[Scalar]) -> E + Send + Sync>;

/// A map ρ from a Lie algebra into a Lie inverse semialgebra, given by a rule or a table.
#[derive(Clone)]
pub struct Premorphism<T: Carrier> {
    source: StructAlgebra,
    target: T,
    map: MapFn<T::Elem>,
}

impl<T: Carrier + Clone> std::fmt::Debug for Premorphism<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Premorphism(dim {} → …)", self.source.dim())
    }
}

impl<T: Bracket + Clone + Send + Sync + 'static> Premorphism<T> {
    pub fn from_fn(source: &StructAlgebra, target: T, f: impl Fn(&[Scalar]) -> T::Elem + Send + Sync + 'static) -> Self {
        Premorphism { source: source.clone(), target, map: Arc::new(f) }
    }

    /// Values listed for every element of L in enumeration order (first coordinate most significant).
    pub fn from_table(source: &StructAlgebra, target: T, values: Vec<T::Elem>) -> Result<Self> {
        let size = vector::all_vectors(source.field(), source.dim())?.len();
        if values.len() != size {
            return Err(Error::Validation(format!("premorphism table needs {size} entries, got {}", values.len())));
        }
        Ok(Premorphism { source: source.clone(), target, map: Arc::new(move |x| values[vector::index_of(x)].clone()) })
    }

    pub fn source(&self) -> &StructAlgebra {
        &self.source
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn apply(&self, x: &[Scalar]) -> T::Elem {
        (self.map)(x)
    }

    pub fn table(&self) -> Result<Vec<(Vector, T::Elem)>> {
        Ok(vector::all_vectors(self.field(), self.source.dim())?.into_iter().map(|x| { let v = self.apply(&x); (x, v) }).collect())
    }

    pub fn to_json(&self) -> Result<Value> {
        let entries: Vec<Value> = self
            .table()?
            .iter()
            .map(|(x, v)| json!({ "x": vector::to_json(x), "value": self.target.show(v) }))
            .collect();
        Ok(json!({ "source": self.source.to_json(), "entries": entries }))
    }

    /// A plan over the source: every element of a small 𝔽_pⁿ, or seeded samples.
    pub fn source_plan(&self, trials: usize, seed: u64) -> Result<Plan<'static, Vector>> {
        crate::isv::vector_plan(self.field(), self.source.dim(), trials, seed)
    }

    /// ρ(0) = 0 (when the target has a zero), superadditivity, bracket bound, homogeneity.
    pub fn check(&self, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        let t = &self.target;
        let src = VectorCarrier::new(self.source.clone());
        let axioms: Vec<Axiom<'_, VectorCarrier>> = vec![
            Axiom::new("prem.superadditive", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                t.leq(&t.add(&self.apply(x), &self.apply(y)), &self.apply(&l.add(x, y)))
            }),
            Axiom::new("prem.bracket", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                t.leq(&t.mul(&self.apply(x), &self.apply(y)), &self.apply(&l.mul(x, y)))
            }),
            Axiom::new("prem.homogeneous", &[("alpha", Slot::NonzeroScalar), ("x", Slot::Elem)], |l: &VectorCarrier, a| {
                let (al, x) = (a.s(0), a.e(1));
                self.apply(&l.smul(al, x)) == t.smul(al, &self.apply(x))
            }),
            Axiom::new("prem.sum_identity", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                let (rx, ry) = (self.apply(x), self.apply(y));
                t.add(&rx, &ry) == t.add(&self.apply(&l.add(x, y)), &t.zero_of(&ry))
            })
            .noted("derived"),
        ];
        let mut report = CheckReport::new("premorphism", plan.mode());
        if let Some(z) = t.zero() {
            let r0 = self.apply(&self.source.zero_vector());
            report.push(AxiomResult::custom("prem.zero", plan.mode(), r0 == z, 1, Some(json!({ "rho(0)": t.show(&r0) }))));
        }
        report.extend(run_axioms(&src, "premorphism", plan, &axioms)?);
        Ok(report)
    }

    /// [ρx, ρy] = ρ[x,y] + 0_{ρx+ρy}.
    pub fn check_strong(&self, plan: &Plan<'_, Vector>) -> Result<CheckReport> {
        let t = &self.target;
        let src = VectorCarrier::new(self.source.clone());
        let ax = Axiom::new("prem.strong", &[("x", Slot::Elem), ("y", Slot::Elem)], |l: &VectorCarrier, a| {
            let (x, y) = (a.e(0), a.e(1));
            let (rx, ry) = (self.apply(x), self.apply(y));
            t.mul(&rx, &ry) == t.add(&self.apply(&l.mul(x, y)), &t.zero_of(&t.add(&rx, &ry)))
        });
        run_axioms(&src, "strong_premorphism", plan, &[ax])
    }

    /// Σ 0_{ρ(g)} over the generators; None for an empty family.
    pub fn inf_idempotent(&self, gens: &[Vector]) -> Option<T::Elem> {
        let t = &self.target;
        gens.iter().map(|g| t.zero_of(&self.apply(g))).reduce(|acc, e| t.add(&acc, &e))
    }

    /// ρ̃(A,a) = inf 𝓔(ρ(A)) + ρ(a), computed on the given generators of A.
    pub fn extend_with_gens(&self, gens: &[Vector], a: &[Scalar]) -> T::Elem {
        let ra = self.apply(a);
        match self.inf_idempotent(gens) {
            Some(e) => self.target.add(&e, &ra),
            None => ra,
        }
    }

    /// ρ̃ on the canonical basis of A.
    pub fn extend_at(&self, x: &ELElem) -> T::Elem {
        self.extend_with_gens(&x.space().basis_vectors(), x.point())
    }

    /// ρ̃(A, 0), i.e. inf 𝓔(ρ(A)) with the empty infimum read as ρ(0).
    fn inf_of(&self, x: &ELElem) -> T::Elem {
        self.extend_with_gens(&x.space().basis_vectors(), &self.source.zero_vector())
    }

    /// Contract checks for ρ̃ over E(L); the homomorphism verdicts are separate results.
    pub fn check_extension(&self, el: &ELCarrier, plan: &Plan<'_, ELElem>) -> Result<ExtensionCheck> {
        let t = &self.target;
        let axioms: Vec<Axiom<'_, ELCarrier>> = vec![
            Axiom::new("ext.restricts_to_rho", &[("x", Slot::Elem)], |el: &ELCarrier, a| {
                let p = a.e(0).point();
                self.extend_at(&el.tau(p)) == self.apply(p)
            }),
            Axiom::new("ext.bracket_formula", &[("x", Slot::Elem), ("y", Slot::Elem)], |el: &ELCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                let lhs = t.mul(&self.extend_at(x), &self.extend_at(y));
                let rhs = t.add(
                    &t.add(&self.extend_at(&el.mul(x, y)), &t.mul(&self.apply(x.point()), &self.inf_of(y))),
                    &t.mul(&self.inf_of(x), &self.apply(y.point())),
                );
                lhs == rhs
            }),
            Axiom::new("ext.generator_independent", &[("x", Slot::Elem)], |_: &ELCarrier, a| {
                let x = a.e(0);
                let mut gens = x.space().basis_vectors();
                if let Some(first) = gens.first() {
                    let extra = gens.iter().skip(1).fold(first.clone(), |acc, g| vector::add(&acc, g));
                    gens.push(extra);
                }
                self.extend_with_gens(&gens, x.point()) == self.extend_at(x)
            }),
            Axiom::new("ext.inf_additive", &[("x", Slot::Elem), ("y", Slot::Elem)], |el: &ELCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                let sum = el.zero_of(&el.add(x, y));
                self.inf_of(&sum) == t.add(&self.inf_of(x), &self.inf_of(y))
            }),
        ];
        let homomorphism: Vec<Axiom<'_, ELCarrier>> = vec![
            Axiom::new("ext.additive", &[("x", Slot::Elem), ("y", Slot::Elem)], |el: &ELCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                self.extend_at(&el.add(x, y)) == t.add(&self.extend_at(x), &self.extend_at(y))
            }),
            Axiom::new("ext.homogeneous", &[("alpha", Slot::Scalar), ("x", Slot::Elem)], |el: &ELCarrier, a| {
                let (al, x) = (a.s(0), a.e(1));
                self.extend_at(&el.smul(al, x)) == t.smul(al, &self.extend_at(x))
            }),
            Axiom::new("ext.bracket_hom", &[("x", Slot::Elem), ("y", Slot::Elem)], |el: &ELCarrier, a| {
                let (x, y) = (a.e(0), a.e(1));
                self.extend_at(&el.mul(x, y)) == t.mul(&self.extend_at(x), &self.extend_at(y))
            }),
        ];
        Ok(ExtensionCheck {
            contract: run_axioms(el, "extension", plan, &axioms)?,
            homomorphism: run_axioms(el, "extension_homomorphism", plan, &homomorphism)?,
        })
    }
}

impl<T: Bracket + Enumerable + Clone + Send + Sync + 'static> Premorphism<T> {
    /// Every linear map ψ: E(L) → T with ψ∘τ = ρ, found by exhaustive backtracking over
    /// target values, compared with ρ̃.
    pub fn uniqueness(&self, el: &ELCarrier, limit: usize) -> Result<UniquenessReport> {
        let t = &self.target;
        let elems = el.elements()?;
        let targets = t.elements()?;
        let n = elems.len();
        let index: HashMap<&ELElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let scalars = self.field().elements()?;
        let sum: Vec<usize> = (0..n * n).map(|k| index[&el.add(&elems[k / n], &elems[k % n])]).collect();
        let smul: Vec<Vec<usize>> = scalars.iter().map(|s| elems.iter().map(|x| index[&el.smul(s, x)]).collect()).collect();

        // Fixed values on τ(L); the rest ordered by dim A so sums of earlier elements come first.
        let mut fixed: Vec<Option<T::Elem>> = vec![None; n];
        for (i, x) in elems.iter().enumerate() {
            if *x == el.tau(x.point()) {
                fixed[i] = Some(self.apply(x.point()));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (fixed[i].is_none(), elems[i].space().dim()));

        let mut assigned: Vec<Option<T::Elem>> = vec![None; n];
        let consistent = |assigned: &[Option<T::Elem>], i: usize| -> bool {
            let v = assigned[i].as_ref().expect("just assigned");
            for j in 0..n {
                let Some(w) = assigned[j].as_ref() else { continue };
                // ψ(i + j) = ψ(i) + ψ(j) whenever all three are known.
                if let Some(s) = assigned[sum[i * n + j]].as_ref() {
                    if *s != t.add(v, w) {
                        return false;
                    }
                }
                // i as the sum of j and some known k.
                for k in 0..n {
                    if sum[j * n + k] == i {
                        if let Some(u) = assigned[k].as_ref() {
                            if *v != t.add(w, u) {
                                return false;
                            }
                        }
                    }
                }
            }
            for (s, row) in scalars.iter().zip(&smul) {
                if let Some(u) = assigned[row[i]].as_ref() {
                    if *u != t.smul(s, v) {
                        return false;
                    }
                }
                for j in 0..n {
                    if row[j] == i {
                        if let Some(w) = assigned[j].as_ref() {
                            if *v != t.smul(s, w) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        };
        let mut solutions: Vec<Vec<T::Elem>> = Vec::new();
        let mut nodes: u64 = 0;
        fn search<E: Clone>(
            k: usize,
            order: &[usize],
            fixed: &[Option<E>],
            targets: &[E],
            assigned: &mut Vec<Option<E>>,
            consistent: &dyn Fn(&[Option<E>], usize) -> bool,
            solutions: &mut Vec<Vec<E>>,
            nodes: &mut u64,
            limit: usize,
        ) {
            if solutions.len() >= limit {
                return;
            }
            if k == order.len() {
                solutions.push(assigned.iter().map(|v| v.clone().expect("complete")).collect());
                return;
            }
            let i = order[k];
            let candidates: Vec<E> = match &fixed[i] {
                Some(v) => vec![v.clone()],
                None => targets.to_vec(),
            };
            for v in candidates {
                *nodes += 1;
                assigned[i] = Some(v);
                if consistent(assigned, i) {
                    search(k + 1, order, fixed, targets, assigned, consistent, solutions, nodes, limit);
                }
                assigned[i] = None;
            }
        }
        search(0, &order, &fixed, &targets, &mut assigned, &consistent, &mut solutions, &mut nodes, limit);
        let extension: Vec<T::Elem> = elems.iter().map(|x| self.extend_at(x)).collect();
        let matches = solutions.len() == 1 && solutions[0] == extension;
        Ok(UniquenessReport { solutions: solutions.len(), nodes, matches_extension: matches })
    }
}

/// Results of the extension contract and of the homomorphism property.
#[derive(Clone, Debug)]
pub struct ExtensionCheck {
    pub contract: CheckReport,
    pub homomorphism: CheckReport,
}

impl ExtensionCheck {
    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({ "contract": self.contract.to_json(), "homomorphism": self.homomorphism.to_json() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    /// Linear maps ψ with ψ∘τ = ρ found (capped by the search limit).
    pub solutions: usize,
    pub nodes: u64,
    /// Exactly one such map, and it equals ρ̃.
    pub matches_extension: bool,
}

impl UniquenessReport {
    pub fn to_result(&self) -> AxiomResult {
        AxiomResult::custom(
            "ext.unique",
            Mode::Exhaustive,
            self.matches_extension,
            self.nodes,
            Some(json!({ "linear_maps_through_tau": self.solutions })),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, diagonal, heisenberg};
    use crate::exel::tau;
    use crate::pmaps::{DomainClass, PDerCarrier, PartialEndo};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn tau_extends_to_the_identity() {
        let l = abelian(f2(), 2);
        let el = ELCarrier::new(&l).unwrap();
        let rho = Premorphism::from_fn(&l, el.clone(), |a| tau(a));
        let plan = rho.source_plan(0, 0).unwrap();
        assert!(rho.check(&plan).unwrap().passed());
        assert!(rho.check_strong(&plan).unwrap().passed());
        let elems = el.elements().unwrap();
        for x in &elems {
            assert_eq!(&rho.extend_at(x), x);
        }
        let ext = rho.check_extension(&el, &Plan::exhaustive(elems, f2())).unwrap();
        assert!(ext.contract.passed() && ext.is_homomorphism());
        let u = rho.uniqueness(&el, 4).unwrap();
        assert!(u.matches_extension, "{u:?}");
    }

    #[test]
    fn tau_is_strong_over_q() {
        let q = Field::rationals();
        let l = heisenberg(q);
        let el = ELCarrier::new(&l).unwrap();
        let rho = Premorphism::from_fn(&l, el, |a| tau(a));
        let plan = rho.source_plan(100, 5).unwrap();
        assert!(rho.check(&plan).unwrap().passed());
        assert!(rho.check_strong(&plan).unwrap().passed());
    }

    #[test]
    fn premorphism_into_unital_class() {
        let a = diagonal(f2(), 2);
        let target = PDerCarrier::class(&a, DomainClass::UnitalAssoc, 4).unwrap();
        let doms: Vec<_> = target.domains().cloned().collect();
        let by_dim = |d: usize, pick: usize| doms.iter().filter(|s| s.dim() == d).nth(pick).unwrap().clone();
        // x ↦ zero map: a ↦ e₁𝔽, b ↦ e₂𝔽, a+b ↦ {0}.
        let l = abelian(f2(), 2);
        let vals = vec![
            PartialEndo::zero_on(&by_dim(2, 0)),
            PartialEndo::zero_on(&by_dim(1, 0)),
            PartialEndo::zero_on(&by_dim(1, 1)),
            PartialEndo::zero_on(&by_dim(0, 0)),
        ];
        let rho = Premorphism::from_table(&l, target, vals).unwrap();
        assert!(rho.check(&rho.source_plan(0, 0).unwrap()).unwrap().passed());
        let el = ELCarrier::new(&l).unwrap();
        let ext = rho.check_extension(&el, &Plan::exhaustive(el.elements().unwrap(), f2())).unwrap();
        assert!(ext.contract.passed() && ext.is_homomorphism(), "{:?}", ext.homomorphism.failures());
        assert!(rho.uniqueness(&el, 4).unwrap().matches_extension);
    }
}

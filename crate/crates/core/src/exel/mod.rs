//! The Lie inverse semialgebra E(L) of pairs (A, a) with a ∈ A ≤ L, and premorphisms out of L.

mod premorphism;

pub use premorphism::{ExtensionCheck, Premorphism, UniquenessReport};

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{enumerate_subspaces, vector, Field, Scalar, Subspace, Vector};
use crate::isv::{
    check_semilattice_of_algebras, sample_vector, Arg, Bracket, Carrier, CheckReport, Enumerable, Plan, Sampler, Table,
};

pub const DEFAULT_EL_DIM_CAP: usize = 3;

/// A pair (A, a) with a ∈ A.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ELElem {
    space: Subspace,
    point: Vector,
}

impl ELElem {
    pub fn new(space: Subspace, point: Vector) -> Result<ELElem> {
        if !space.contains(&point)? {
            return Err(Error::Validation(format!("{} does not lie in {:?}", vector::show(&point), space)));
        }
        Ok(ELElem { space, point })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn point(&self) -> &Vector {
        &self.point
    }

    pub fn to_json(&self) -> Value {
        json!({ "A": self.space.to_json(), "a": vector::to_json(&self.point) })
    }

    pub fn from_json(field: Field, v: &Value) -> Result<ELElem> {
        let space = Subspace::from_json(field, &v["A"])?;
        let point = vector::from_json(field, &v["a"])?;
        ELElem::new(space, point)
    }
}

impl fmt::Debug for ELElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.space, vector::show(&self.point))
    }
}

/// τ(a) = (𝔽a, a).
pub fn tau(a: &[Scalar]) -> ELElem {
    let field = a.first().map(|s| s.field()).unwrap_or(Field::Rationals);
    ELElem { space: Subspace::line(field, a), point: a.to_vec() }
}

/// E(L) for a Lie algebra L.
#[derive(Clone, Debug)]
pub struct ELCarrier {
    alg: StructAlgebra,
    dim_cap: usize,
}

impl ELCarrier {
    pub fn new(alg: &StructAlgebra) -> Result<ELCarrier> {
        if alg.flavor() != Flavor::Lie {
            return Err(Error::Validation("E(L) needs a Lie algebra".into()));
        }
        Ok(ELCarrier { alg: alg.clone(), dim_cap: DEFAULT_EL_DIM_CAP })
    }

    pub fn with_dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self
    }

    pub fn lie(&self) -> &StructAlgebra {
        &self.alg
    }

    pub fn tau(&self, a: &[Scalar]) -> ELElem {
        ELElem { space: Subspace::line(self.alg.field(), a), point: a.to_vec() }
    }

    /// Materializes E(L) as a table; returns the elements in table order.
    pub fn table(&self) -> Result<(Table, Vec<ELElem>)> {
        Table::from_algebra(self)
    }
}

impl Carrier for ELCarrier {
    type Elem = ELElem;

    fn field(&self) -> Field {
        self.alg.field()
    }

    fn add(&self, x: &ELElem, y: &ELElem) -> ELElem {
        ELElem { space: x.space.sum(&y.space).expect("same ambient"), point: vector::add(&x.point, &y.point) }
    }

    fn neg(&self, x: &ELElem) -> ELElem {
        ELElem { space: x.space.clone(), point: vector::neg(&x.point) }
    }

    fn smul(&self, a: &Scalar, x: &ELElem) -> ELElem {
        ELElem { space: x.space.clone(), point: vector::scale(a, &x.point) }
    }

    fn show(&self, x: &ELElem) -> Value {
        x.to_json()
    }

    fn zero(&self) -> Option<ELElem> {
        Some(ELElem { space: self.alg.zero_space(), point: self.alg.zero_vector() })
    }

    fn zero_of(&self, x: &ELElem) -> ELElem {
        ELElem { space: x.space.clone(), point: self.alg.zero_vector() }
    }

    fn leq(&self, x: &ELElem, y: &ELElem) -> bool {
        x.point == y.point && y.space.is_subset(&x.space).expect("same ambient")
    }

    fn is_idempotent(&self, x: &ELElem) -> bool {
        vector::is_zero(&x.point)
    }
}

impl Bracket for ELCarrier {
    fn mul(&self, x: &ELElem, y: &ELElem) -> ELElem {
        let b = self.alg.mul(&x.point, &y.point);
        let space = x.space.sum(&y.space).and_then(|s| s.add_vector(&b)).expect("same ambient");
        ELElem { space, point: b }
    }
}

impl Enumerable for ELCarrier {
    fn elements(&self) -> Result<Vec<ELElem>> {
        let field = self.alg.field();
        let mut out = Vec::new();
        for s in enumerate_subspaces(field, self.alg.dim(), self.dim_cap)? {
            for c in vector::all_vectors(field, s.dim())? {
                out.push(ELElem { point: s.from_coords(&c), space: s.clone() });
            }
        }
        Ok(out)
    }
}

impl Sampler for ELCarrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> ELElem {
        let (field, n) = (self.alg.field(), self.alg.dim());
        let a = sample_vector(field, n, rng);
        let mut gens = vec![a.clone()];
        for _ in 0..rng.gen_range(0..=2) {
            gens.push(sample_vector(field, n, rng));
        }
        ELElem { space: Subspace::span(field, n, &gens).expect("ambient"), point: a }
    }
}

/// σ-classes of E(L) by the characterization (A,a) σ (B,b) iff a = b, as index lists
/// into `elements`, in order of first appearance.
pub fn sigma_classes_analytic(elements: &[ELElem]) -> Vec<Vec<usize>> {
    let mut by_point: HashMap<&Vector, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        let k = *by_point.entry(&x.point).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
    }
    classes
}

/// Outcome of comparing 0_{[τa,τb]} with 0_{τa+τb} in E(L).
#[derive(Clone, Debug)]
pub struct BracketZeroFixture {
    pub lhs: ELElem,
    pub rhs: ELElem,
    /// 0_{[x,y]} ≠ 0_{x+y}.
    pub inequality: bool,
    /// 0_{[x,y]} ≠ [0_x,y] + [x,0_y].
    pub sminus_violated: bool,
    pub semilattice: CheckReport,
    /// Whether the semilattice check failed on exactly the pair (τa, τb).
    pub witness_matches: bool,
}

impl BracketZeroFixture {
    pub fn to_json(&self, el: &ELCarrier) -> Value {
        let verdict = if self.inequality { "0_{[x,y]} != 0_{x+y}: confirmed" } else { "0_{[x,y]} == 0_{x+y}" };
        json!({
            "local_zero_of_bracket": el.show(&self.lhs),
            "local_zero_of_sum": el.show(&self.rhs),
            "verdict": verdict,
            "sminus_identity_fails": self.sminus_violated,
            "semilattice_check": self.semilattice.to_json(),
            "witness_matches": self.witness_matches,
        })
    }
}

/// Compares 0_{[τa,τb]} with 0_{τa+τb} and runs the semilattice-of-algebras check on E(L)
/// with (τa, τb) tried first. Finite fields run exhaustively on a materialized table.
pub fn bracket_zero_fixture(alg: &StructAlgebra, a: &Vector, b: &Vector, trials: usize, seed: u64) -> Result<BracketZeroFixture> {
    let el = ELCarrier::new(alg)?;
    let (x, y) = (el.tau(a), el.tau(b));
    let lhs = el.zero_of(&el.mul(&x, &y));
    let rhs = el.zero_of(&el.add(&x, &y));
    let sminus = el.add(&el.mul(&el.zero_of(&x), &y), &el.mul(&x, &el.zero_of(&y)));
    let expected = json!({ "x": el.show(&x), "y": el.show(&y) });
    let semilattice = if alg.field().is_finite() {
        let (t, elems) = el.table()?;
        let pos = |e: &ELElem| elems.iter().position(|z| z == e).expect("enumerated") as u32;
        let plan = Plan::exhaustive(t.elements()?, alg.field())
            .pin("slat.local_zero_product", vec![Arg::Elem(pos(&x)), Arg::Elem(pos(&y))]);
        check_semilattice_of_algebras(&t, &plan, true)?
    } else {
        let plan = Plan::sampled(|rng| el.sample(rng), alg.field(), trials, seed)
            .pin("slat.local_zero_product", vec![Arg::Elem(x.clone()), Arg::Elem(y.clone())]);
        check_semilattice_of_algebras(&el, &plan, true)?
    };
    let witness_matches =
        semilattice.result("slat.local_zero_product").and_then(|r| r.counterexample.as_ref()) == Some(&expected);
    Ok(BracketZeroFixture { inequality: lhs != rhs, sminus_violated: lhs != sminus, lhs, rhs, semilattice, witness_matches })
}

/// The Heisenberg instance: x = τ(a), y = τ(b) with [a,b] = c. Needs char ≠ 2.
pub fn heisenberg_fixture(field: Field, trials: usize, seed: u64) -> Result<BracketZeroFixture> {
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("the Heisenberg fixture needs characteristic ≠ 2".into()));
    }
    let h = crate::algebra::heisenberg(field);
    bracket_zero_fixture(&h, &vector::unit(field, 3, 0), &vector::unit(field, 3, 1), trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, solvable2};
    use crate::isv::{check_f_inverse, check_lie_isa, el_local_zero_axiom, run_axioms, sigma_classes, Verdict};

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(ELCarrier::new(&abelian(f(2), 3)).unwrap().elements().unwrap().len(), 51);
        assert_eq!(ELCarrier::new(&heisenberg(f(3))).unwrap().elements().unwrap().len(), 184);
        assert_eq!(ELCarrier::new(&abelian(f(2), 2)).unwrap().elements().unwrap().len(), 11);
    }

    #[test]
    fn heisenberg_bracket_over_q() {
        let q = Field::Rationals;
        let el = ELCarrier::new(&heisenberg(q)).unwrap();
        let (a, b, c) = (vector::unit(q, 3, 0), vector::unit(q, 3, 1), vector::unit(q, 3, 2));
        let br = el.mul(&tau(&a), &tau(&b));
        assert_eq!(br.space(), &Subspace::full(q, 3));
        assert_eq!(br.point(), &c);
        // [τa, τb] = 0_{τa+τb} + τc
        assert_eq!(br, el.add(&el.zero_of(&el.add(&tau(&a), &tau(&b))), &tau(&c)));
        assert_eq!(tau(&vector::zero(q, 3)), el.zero().unwrap());
        assert!(el.leq(&el.add(&tau(&a), &tau(&b)), &tau(&vector::add(&a, &b))));
    }

    #[test]
    fn lie_checks_and_sigma() {
        let el = ELCarrier::new(&abelian(f(2), 2)).unwrap();
        let (t, elems) = el.table().unwrap();
        let plan = Plan::exhaustive(t.elements().unwrap(), f(2));
        assert!(check_lie_isa(&t, &plan).unwrap().passed());
        assert!(run_axioms(&t, "el", &plan, &[el_local_zero_axiom()]).unwrap().passed());
        let generic = sigma_classes(&t).unwrap();
        assert_eq!(generic.classes, sigma_classes_analytic(&elems));
        assert_eq!(generic.classes.len(), 4);

        let el = ELCarrier::new(&heisenberg(f(3))).unwrap();
        let (t, elems) = el.table().unwrap();
        let (r, data) = check_f_inverse(&t).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let c = vector::unit(f(3), 3, 2);
        let i = elems.iter().position(|e| e.point() == &c && e.space().is_full()).unwrap();
        assert_eq!(elems[data.max_of(i).copied().unwrap() as usize], tau(&c));
    }

    #[test]
    fn semilattice_for_abelian_and_solvable() {
        for alg in [abelian(f(3), 2), solvable2(f(3))] {
            let el = ELCarrier::new(&alg).unwrap();
            let (t, _) = el.table().unwrap();
            let plan = Plan::exhaustive(t.elements().unwrap(), f(3));
            let r = check_semilattice_of_algebras(&t, &plan, true).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
        }
    }

    #[test]
    fn heisenberg_fixture_both_fields() {
        for field in [Field::Rationals, f(3)] {
            let fx = heisenberg_fixture(field, 50, 1).unwrap();
            assert!(fx.inequality && fx.sminus_violated && fx.witness_matches);
            assert_eq!(fx.lhs.space(), &Subspace::full(field, 3));
            assert_eq!(fx.semilattice.verdict("slat.local_zero_product"), Some(Verdict::Fail));
        }
        assert!(heisenberg_fixture(f(2), 1, 1).is_err());
        let q = Field::Rationals;
        let ctl = bracket_zero_fixture(&abelian(q, 3), &vector::unit(q, 3, 0), &vector::unit(q, 3, 1), 50, 1).unwrap();
        assert!(!ctl.inequality);
        assert!(ctl.semilattice.passed());
    }
}

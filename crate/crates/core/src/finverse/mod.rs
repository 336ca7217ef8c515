//! Partial representations of Lie algebras on meet semilattices, the F-inverse carrier
//! F(Λ,L), the σ-quotient and the functor K, the equivalence witnesses and the adjunction map β.
//!
//! Everything here needs a prime field of odd characteristic.

mod adjunction;
mod equivalence;
mod fcarrier;
mod quotient;

pub use adjunction::{beta, beta_bijection_check, subspace_endomorphisms, subspace_functor, theta_of, BetaReport};
pub use equivalence::{
    carrier_morphism_check, equivalence_witnesses, functor_f_on_morphism, functor_k_on_morphism, gamma_naturality,
    gamma_witness, rep_naturality, rep_witnesses, GammaWitness, RepWitnesses,
};
pub use fcarrier::{build_f, f_el_iso, FCarrier, FElem};
pub use quotient::{functor_k, sigma_quotient, KRep, SigmaQuotient};

use serde_json::{json, Value};

use crate::algebra::{hom_violation, Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{enumerate_subspaces, vector, Field, Matrix, Scalar, Subspace, Vector, DEFAULT_ENUM_DIM_CAP};
use crate::isv::{AxiomResult, CheckReport, Mode};
use crate::semilat::MeetSemilattice;

/// Largest |L|^k · p^k explored by the iterated-action check.
const ITERATED_BUDGET: usize = 1_000_000;

/// Counts instances of one law and keeps the first failure.
pub(crate) struct Tally {
    id: &'static str,
    instances: u64,
    witness: Option<Value>,
}

impl Tally {
    pub(crate) fn new(id: &'static str) -> Tally {
        Tally { id, instances: 0, witness: None }
    }

    pub(crate) fn see(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn ok(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn done(self) -> AxiomResult {
        AxiomResult::custom(self.id, Mode::Exhaustive, self.witness.is_none(), self.instances, self.witness)
    }

    pub(crate) fn derived(self) -> AxiomResult {
        let mut r = self.done();
        r.note = Some("derived".into());
        r
    }
}

/// A Lie algebra L acting on a finite meet semilattice Λ with unit ε by a total table a·λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRep {
    lie: StructAlgebra,
    lattice: MeetSemilattice,
    unit: usize,
    points: Vec<Vector>,
    action: Vec<usize>,
}

fn require_odd_prime(field: Field) -> Result<()> {
    match field.order() {
        None => Err(Error::InfiniteField),
        Some(2) => Err(Error::Unsupported("partial representations need characteristic ≠ 2".into())),
        Some(_) => Ok(()),
    }
}

impl PartialRep {
    /// `action[index_of(a) * |Λ| + λ]` is a·λ. The axioms are not checked here; see
    /// [`check_partial_rep`].
    pub fn new(lie: StructAlgebra, lattice: MeetSemilattice, action: Vec<usize>) -> Result<PartialRep> {
        if lie.flavor() != Flavor::Lie {
            return Err(Error::Validation("a partial representation needs a Lie algebra".into()));
        }
        require_odd_prime(lie.field())?;
        let unit = lattice.unit().ok_or_else(|| Error::Validation("the semilattice needs a unit".into()))?;
        let points = vector::all_vectors(lie.field(), lie.dim())?;
        let n = lattice.len();
        if action.len() != points.len() * n || action.iter().any(|&o| o >= n) {
            return Err(Error::Validation("action table has the wrong size or an unknown element".into()));
        }
        Ok(PartialRep { lie, lattice, unit, points, action })
    }

    pub fn from_fn(lie: &StructAlgebra, lattice: MeetSemilattice, f: impl Fn(&[Scalar], usize) -> usize) -> Result<PartialRep> {
        require_odd_prime(lie.field())?;
        let points = vector::all_vectors(lie.field(), lie.dim())?;
        let action = points.iter().flat_map(|a| (0..lattice.len()).map(|l| f(a, l)).collect::<Vec<_>>()).collect();
        PartialRep::new(lie.clone(), lattice, action)
    }

    /// a·λ = λ.
    pub fn trivial(lie: &StructAlgebra, lattice: MeetSemilattice) -> Result<PartialRep> {
        PartialRep::from_fn(lie, lattice, |_, l| l)
    }

    /// (P_f(L), L): subspaces under + with unit {0}, acted on by a·A = A + 𝔽a.
    pub fn subspaces(lie: &StructAlgebra) -> Result<PartialRep> {
        require_odd_prime(lie.field())?;
        let (lattice, spaces) = subspace_lattice(lie.field(), lie.dim())?;
        let find = |s: &Subspace| spaces.iter().position(|t| t == s).expect("sums of subspaces are enumerated");
        PartialRep::from_fn(lie, lattice, |a, l| find(&spaces[l].add_vector(a).expect("ambient")))
    }

    pub fn lie(&self) -> &StructAlgebra {
        &self.lie
    }

    pub fn lattice(&self) -> &MeetSemilattice {
        &self.lattice
    }

    pub fn field(&self) -> Field {
        self.lie.field()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// All vectors of L, in [`vector::index_of`] order.
    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn act(&self, a: &[Scalar], l: usize) -> usize {
        self.act_at(vector::index_of(a), l)
    }

    pub fn act_at(&self, a: usize, l: usize) -> usize {
        self.action[a * self.lattice.len() + l]
    }

    /// a·ε.
    pub fn orbit_of_unit(&self, a: &[Scalar]) -> usize {
        self.act(a, self.unit)
    }

    /// x₁·ε ∧ … ∧ x_k·ε, which is ε for no generators.
    pub fn inf_of(&self, gens: &[Vector]) -> usize {
        gens.iter().fold(self.unit, |acc, x| self.lattice.meet(acc, self.orbit_of_unit(x)))
    }

    /// inf A·ε, the meet of a·ε over every element a of A.
    pub fn inf_space(&self, a: &Subspace) -> Result<usize> {
        let elems: Vec<Vector> = vector::all_vectors(self.field(), a.dim())?.iter().map(|c| a.from_coords(c)).collect();
        Ok(self.inf_of(&elems))
    }

    /// A copy with a·λ replaced; used to build broken instances.
    pub fn with_entry(&self, a: &[Scalar], l: usize, out: usize) -> PartialRep {
        let mut r = self.clone();
        let n = r.lattice.len();
        r.action[vector::index_of(a) * n + l] = out;
        r
    }

    pub fn to_json(&self) -> Value {
        let mut action = Vec::new();
        for (i, a) in self.points.iter().enumerate() {
            for l in 0..self.lattice.len() {
                action.push(json!({
                    "a": vector::to_json(a),
                    "lambda": self.lattice.label(l),
                    "out": self.lattice.label(self.act_at(i, l)),
                }));
            }
        }
        json!({ "L": self.lie.to_json(), "lattice": self.lattice.to_json(), "action": action })
    }

    pub fn from_json(v: &Value, dim_cap: usize) -> Result<PartialRep> {
        let lie = StructAlgebra::from_json(&v["L"], dim_cap)?;
        let lattice = MeetSemilattice::from_json(&v["lattice"])?;
        require_odd_prime(lie.field())?;
        let n = lattice.len();
        let points = vector::all_vectors(lie.field(), lie.dim())?;
        let mut action: Vec<Option<usize>> = vec![None; points.len() * n];
        let label = |x: &Value| -> Result<usize> {
            let s = x.as_str().ok_or_else(|| Error::Parse("lattice elements are given by label".into()))?;
            lattice.index_of(s).ok_or_else(|| Error::Parse(format!("unknown lattice element {s:?}")))
        };
        for entry in v["action"].as_array().ok_or_else(|| Error::Parse("partial rep needs an \"action\" array".into()))? {
            let a = vector::from_json(lie.field(), &entry["a"])?;
            if a.len() != lie.dim() {
                return Err(Error::DimensionMismatch { expected: lie.dim(), got: a.len() });
            }
            action[vector::index_of(&a) * n + label(&entry["lambda"])?] = Some(label(&entry["out"])?);
        }
        let action = action
            .into_iter()
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::Parse("the action table must cover every pair (a, λ)".into()))?;
        PartialRep::new(lie, lattice, action)
    }
}

/// Subspaces of 𝔽ⁿ as a meet semilattice under +, with unit {0}; also returns the subspaces
/// in lattice order.
pub fn subspace_lattice(field: Field, n: usize) -> Result<(MeetSemilattice, Vec<Subspace>)> {
    let spaces = enumerate_subspaces(field, n, DEFAULT_ENUM_DIM_CAP.max(n))?;
    let find = |s: &Subspace| spaces.iter().position(|t| t == s).expect("enumerated");
    let meet = spaces
        .iter()
        .map(|a| spaces.iter().map(|b| find(&a.sum(b).expect("ambient"))).collect())
        .collect();
    let labels = spaces.iter().map(subspace_label).collect();
    let unit = spaces.iter().position(Subspace::is_zero);
    Ok((MeetSemilattice::new(labels, meet, unit)?, spaces))
}

fn subspace_label(s: &Subspace) -> String {
    let gens: Vec<String> = s.basis_vectors().iter().map(|v| vector::show(v)).collect();
    format!("span{{{}}}", gens.join(","))
}

/// Verifies the four action axioms, the consequences derived from them, and the behaviour of
/// inf A·ε over all subspaces A of L. Every check is exhaustive.
pub fn check_partial_rep(r: &PartialRep) -> Result<CheckReport> {
    let lat = &r.lattice;
    let (n, pts) = (lat.len(), &r.points);
    let np = pts.len();
    let eps = r.unit;
    let lab = |l: usize| lat.label(l).to_string();
    let pt = |i: usize| vector::to_json(&pts[i]);
    let sum: Vec<usize> = (0..np * np).map(|k| vector::index_of(&vector::add(&pts[k / np], &pts[k % np]))).collect();
    let plus = |a: usize, b: usize| sum[a * np + b];
    let act = |a: usize, l: usize| r.act_at(a, l);
    let meet = |a: usize, b: usize| lat.meet(a, b);
    let zero = vector::index_of(&r.lie.zero_vector());
    let mut report = CheckReport::new("partial_rep", Mode::Exhaustive);

    let mut t = Tally::new("prep.zero_acts_trivially");
    for l in 0..n {
        t.see(act(zero, l) == l, || json!({ "lambda": lab(l), "0·lambda": lab(act(zero, l)) }));
    }
    report.push(t.done());

    let mut t = Tally::new("prep.meet_preserved");
    for a in 0..np {
        for l in 0..n {
            for m in 0..n {
                t.see(act(a, meet(l, m)) == meet(act(a, l), act(a, m)), || json!({ "a": pt(a), "lambda": lab(l), "mu": lab(m) }));
            }
        }
    }
    report.push(t.done());

    let mut t = Tally::new("prep.composition");
    for a in 0..np {
        for b in 0..np {
            for l in 0..n {
                let (lhs, rhs) = (act(a, act(b, l)), meet(act(a, eps), act(plus(a, b), l)));
                t.see(lhs == rhs, || {
                    json!({ "a": pt(a), "b": pt(b), "lambda": lab(l), "a·(b·lambda)": lab(lhs), "a·eps ∧ (a+b)·lambda": lab(rhs) })
                });
            }
        }
    }
    report.push(t.done());

    let mut t = Tally::new("prep.homogeneous");
    let units: Vec<Scalar> = r.field().elements()?.into_iter().filter(|s| !s.is_zero()).collect();
    for a in 0..np {
        for s in &units {
            let sa = vector::index_of(&vector::scale(s, &pts[a]));
            for l in 0..n {
                t.see(act(sa, l) == act(a, l), || json!({ "a": pt(a), "alpha": s.to_string(), "lambda": lab(l) }));
            }
        }
    }
    report.push(t.done());

    let mut idem = Tally::new("prep.idempotent");
    let mut absorb = Tally::new("prep.meet_absorbs");
    let mut below = Tally::new("prep.decreasing");
    let mut mono = Tally::new("prep.monotone");
    let mut fixed = Tally::new("prep.fixed_points");
    for a in 0..np {
        for l in 0..n {
            let al = act(a, l);
            idem.see(act(a, al) == al, || json!({ "a": pt(a), "lambda": lab(l) }));
            below.see(lat.leq(al, l), || json!({ "a": pt(a), "lambda": lab(l) }));
            fixed.see(lat.leq(l, act(a, eps)) == (al == l), || json!({ "a": pt(a), "lambda": lab(l) }));
            for m in 0..n {
                let lhs = meet(al, act(a, m));
                absorb.see(lhs == act(a, meet(l, m)) && lhs == meet(l, act(a, m)), || {
                    json!({ "a": pt(a), "lambda": lab(l), "mu": lab(m) })
                });
                if lat.leq(l, m) {
                    mono.see(lat.leq(al, act(a, m)), || json!({ "a": pt(a), "lambda": lab(l), "mu": lab(m) }));
                }
            }
        }
    }
    let mut swap = Tally::new("prep.swap");
    for a in 0..np {
        for b in 0..np {
            for l in 0..n {
                let ab = act(plus(a, b), l);
                swap.see(meet(act(a, eps), ab) == meet(act(b, eps), ab), || json!({ "a": pt(a), "b": pt(b), "lambda": lab(l) }));
            }
        }
    }
    for t in [idem, absorb, swap, below, mono, fixed] {
        report.push(t.derived());
    }
    report.push(check_iterated(r)?.derived());
    for t in check_inf(r)? {
        report.push(t.derived());
    }
    Ok(report)
}

/// x₁·(x₂·(⋯(x_k·ε))) = a·ε ∧ x₁·ε ∧ ⋯ ∧ x_k·ε = a·(x₁·(⋯)) for every a in span{x₁,…,x_k},
/// for every tuple with k as large as the budget allows.
fn check_iterated(r: &PartialRep) -> Result<Tally> {
    let (pts, field) = (&r.points, r.field());
    let p = field.order().expect("finite") as usize;
    let mut t = Tally::new("prep.iterated_action");
    let mut k = 1;
    while k <= 3 && pts.len().pow(k as u32) * p.pow(k as u32) <= ITERATED_BUDGET {
        let coeffs = vector::all_vectors(field, k)?;
        let total = pts.len().pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let xs: Vec<usize> = (0..k)
                .map(|_| {
                    let i = c % pts.len();
                    c /= pts.len();
                    i
                })
                .collect();
            let nested = xs.iter().rev().fold(r.unit, |acc, &x| r.act_at(x, acc));
            let inf = xs.iter().fold(r.unit, |acc, &x| r.lattice.meet(acc, r.act_at(x, r.unit)));
            let gens: Vec<Vector> = xs.iter().map(|&x| pts[x].clone()).collect();
            for cf in &coeffs {
                let a = vector::index_of(&vector::combination(field, r.lie.dim(), cf, &gens));
                let meet_form = r.lattice.meet(r.act_at(a, r.unit), inf);
                t.see(nested == meet_form && nested == r.act_at(a, nested), || {
                    json!({ "xs": gens.iter().map(|g| vector::to_json(g)).collect::<Vec<_>>(), "a": vector::to_json(&pts[a]) })
                });
            }
        }
        k += 1;
    }
    Ok(t)
}

/// inf(A+B)·ε = inf A·ε ∧ inf B·ε, a·ε ∧ inf A·ε = inf(A+𝔽a)·ε = a·(inf A·ε), and inf A·ε is
/// already attained on a basis of A.
fn check_inf(r: &PartialRep) -> Result<Vec<Tally>> {
    let spaces = enumerate_subspaces(r.field(), r.lie.dim(), DEFAULT_ENUM_DIM_CAP.max(r.lie.dim()))?;
    let infs: Vec<usize> = spaces.iter().map(|s| r.inf_space(s)).collect::<Result<_>>()?;
    let find = |s: &Subspace| spaces.iter().position(|t| t == s).expect("enumerated");
    let mut sum = Tally::new("prep.inf_of_sum");
    let mut line = Tally::new("prep.inf_add_vector");
    let mut basis = Tally::new("prep.inf_on_basis");
    for (i, a) in spaces.iter().enumerate() {
        basis.see(r.inf_of(&a.basis_vectors()) == infs[i], || a.to_json());
        for (j, b) in spaces.iter().enumerate() {
            let k = find(&a.sum(b)?);
            sum.see(infs[k] == r.lattice.meet(infs[i], infs[j]), || json!({ "A": a.to_json(), "B": b.to_json() }));
        }
        for x in &r.points {
            let k = find(&a.add_vector(x)?);
            let lhs = r.lattice.meet(r.orbit_of_unit(x), infs[i]);
            line.see(lhs == infs[k] && lhs == r.act(x, infs[i]), || json!({ "A": a.to_json(), "a": vector::to_json(x) }));
        }
    }
    Ok(vec![sum, line, basis])
}

/// A morphism (θ, φ) of partial representations: θ a unit-preserving meet homomorphism given
/// by its table, φ a Lie homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub theta: Vec<usize>,
    pub phi: Matrix,
}

impl RepMorphism {
    pub fn identity(r: &PartialRep) -> RepMorphism {
        RepMorphism { theta: (0..r.lattice.len()).collect(), phi: Matrix::identity(r.field(), r.lie.dim()) }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RepMorphism) -> Result<RepMorphism> {
        Ok(RepMorphism { theta: inner.theta.iter().map(|&l| self.theta[l]).collect(), phi: self.phi.mul(&inner.phi)? })
    }

    pub fn apply_phi(&self, a: &[Scalar]) -> Vector {
        self.phi.mul_vec(a).expect("source dimension")
    }

    /// The first law that fails for `src → dst`, if any: θ(ε) = ε, θ(λ∧μ) = θλ ∧ θμ, φ a Lie
    /// homomorphism, θ(a·λ) = φ(a)·θ(λ).
    pub fn violation(&self, src: &PartialRep, dst: &PartialRep) -> Option<String> {
        let (ls, ld) = (&src.lattice, &dst.lattice);
        if self.theta.len() != ls.len() || self.theta.iter().any(|&t| t >= ld.len()) {
            return Some("θ has the wrong domain or codomain".into());
        }
        if self.phi.rows() != dst.lie.dim() || self.phi.cols() != src.lie.dim() {
            return Some("φ has the wrong shape".into());
        }
        if self.theta[src.unit] != dst.unit {
            return Some("θ does not preserve the unit".into());
        }
        for l in 0..ls.len() {
            for m in 0..ls.len() {
                if self.theta[ls.meet(l, m)] != ld.meet(self.theta[l], self.theta[m]) {
                    return Some(format!("θ does not preserve the meet of {} and {}", ls.label(l), ls.label(m)));
                }
            }
        }
        if let Some((i, j)) = hom_violation(&src.lie, &dst.lie, &self.phi) {
            return Some(format!("φ is not a Lie homomorphism on basis pair ({i},{j})"));
        }
        for (ai, a) in src.points.iter().enumerate() {
            let fa = self.apply_phi(a);
            for l in 0..ls.len() {
                if self.theta[src.act_at(ai, l)] != dst.act(&fa, self.theta[l]) {
                    return Some(format!("θ(a·λ) ≠ φ(a)·θ(λ) at a = {}, λ = {}", vector::show(a), ls.label(l)));
                }
            }
        }
        None
    }

    pub fn is_valid(&self, src: &PartialRep, dst: &PartialRep) -> bool {
        self.violation(src, dst).is_none()
    }

    pub fn to_json(&self, src: &PartialRep, dst: &PartialRep) -> Value {
        let theta: serde_json::Map<String, Value> = self
            .theta
            .iter()
            .enumerate()
            .map(|(l, &t)| (src.lattice.label(l).to_string(), json!(dst.lattice.label(t))))
            .collect();
        json!({ "theta": theta, "phi": self.phi.to_json() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, solvable2};

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn refuses_characteristic_two() {
        let f2 = Field::prime(2).unwrap();
        assert!(PartialRep::subspaces(&abelian(f2, 1)).is_err());
        assert!(PartialRep::trivial(&abelian(f2, 1), MeetSemilattice::chain(2)).is_err());
    }

    #[test]
    fn trivial_action_passes() {
        let r = PartialRep::trivial(&solvable2(f3()), MeetSemilattice::subsets(2)).unwrap();
        let rep = check_partial_rep(&r).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn subspace_action_passes() {
        for l in [abelian(f3(), 1), abelian(f3(), 2), solvable2(f3())] {
            let r = PartialRep::subspaces(&l).unwrap();
            let rep = check_partial_rep(&r).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures());
        }
    }

    #[test]
    fn subspace_lattice_sizes() {
        let (lat, spaces) = subspace_lattice(f3(), 2).unwrap();
        assert_eq!(lat.len(), 6);
        assert!(spaces[lat.unit().unwrap()].is_zero());
        let (lat, _) = subspace_lattice(f3(), 3).unwrap();
        assert_eq!(lat.len(), 28);
    }

    #[test]
    fn mutated_composition_fails_with_witness() {
        let l = abelian(f3(), 2);
        let r = PartialRep::subspaces(&l).unwrap();
        // Make (1,0)·{0} the whole plane instead of the line through (1,0).
        let (_, spaces) = subspace_lattice(f3(), 2).unwrap();
        let full = spaces.iter().position(Subspace::is_full).unwrap();
        let a = vector::from_i64(f3(), &[1, 0]);
        let bad = r.with_entry(&a, r.unit(), full);
        let rep = check_partial_rep(&bad).unwrap();
        assert_eq!(rep.verdict("prep.composition").unwrap().name(), "fail");
        assert!(rep.result("prep.composition").unwrap().counterexample.is_some());
    }

    #[test]
    fn inf_of_basis_matches_inf_of_all_elements() {
        let r = PartialRep::subspaces(&heisenberg(f3())).unwrap();
        let (_, spaces) = subspace_lattice(f3(), 3).unwrap();
        for (i, s) in spaces.iter().enumerate() {
            // In (P_f(L), L) inf A·ε is A itself.
            assert_eq!(r.inf_space(s).unwrap(), i);
            assert_eq!(r.inf_of(&s.basis_vectors()), i);
        }
    }

    #[test]
    fn json_roundtrip() {
        let r = PartialRep::subspaces(&abelian(f3(), 1)).unwrap();
        let back = PartialRep::from_json(&r.to_json(), 8).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn identity_morphism_is_valid() {
        let r = PartialRep::subspaces(&solvable2(f3())).unwrap();
        assert!(RepMorphism::identity(&r).is_valid(&r, &r));
        let mut bad = RepMorphism::identity(&r);
        bad.theta[r.unit()] = (r.unit() + 1) % r.lattice().len();
        assert!(bad.violation(&r, &r).unwrap().contains("unit"));
    }

    fn two_dim(alpha: i64, beta: i64) -> StructAlgebra {
        let f = f3();
        StructAlgebra::lie_from_brackets(f, 2, &[(0, 1, vector::from_i64(f, &[alpha, beta]))]).unwrap()
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]

        #[test]
        fn every_two_dim_lie_algebra_gives_an_f_pair(alpha in 0i64..3, beta in 0i64..3) {
            let l = two_dim(alpha, beta);
            let r = PartialRep::subspaces(&l).unwrap();
            proptest::prop_assert!(check_partial_rep(&r).unwrap().passed());
            proptest::prop_assert!(f_el_iso(&l).unwrap().passed());
            let w = rep_witnesses(&r).unwrap();
            proptest::prop_assert!(w.report.passed());
        }

        #[test]
        fn trivial_actions_on_subset_lattices(k in 0usize..3, alpha in 0i64..3, beta in 0i64..3) {
            let r = PartialRep::trivial(&two_dim(alpha, beta), MeetSemilattice::subsets(k)).unwrap();
            let (_, report) = build_f(r).unwrap();
            proptest::prop_assert!(report.passed());
        }
    }
}

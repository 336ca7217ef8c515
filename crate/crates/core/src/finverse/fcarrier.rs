//! F(Λ,L) = {(λ,a) | λ ≤ a·ε}.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{check_partial_rep, subspace_lattice, PartialRep, Tally};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Scalar, Vector};
use crate::exel::{ELCarrier, ELElem};
use crate::isv::{check_f_inverse, check_lie_isa, Bracket, Carrier, CheckReport, Enumerable, Plan, Table};
use crate::semilat::{check_iso, RoundTrip};

/// (λ, a) with λ a lattice index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElem {
    pub level: usize,
    pub point: Vector,
}

/// The carrier F(Λ,L) of a partial representation.
#[derive(Clone, Debug)]
pub struct FCarrier {
    rep: Arc<PartialRep>,
}

impl FCarrier {
    pub fn new(rep: PartialRep) -> FCarrier {
        FCarrier { rep: Arc::new(rep) }
    }

    pub fn rep(&self) -> &PartialRep {
        &self.rep
    }

    pub fn elem(&self, level: usize, point: Vector) -> Result<FElem> {
        if level >= self.rep.lattice().len() || point.len() != self.rep.lie().dim() {
            return Err(Error::Validation("level or point out of range".into()));
        }
        if !self.rep.lattice().leq(level, self.rep.orbit_of_unit(&point)) {
            return Err(Error::Validation(format!(
                "{} is not below {}·ε",
                self.rep.lattice().label(level),
                vector::show(&point)
            )));
        }
        Ok(FElem { level, point })
    }

    /// (a·ε, a), the greatest element with point a.
    pub fn maximum(&self, a: &[Scalar]) -> FElem {
        FElem { level: self.rep.orbit_of_unit(a), point: a.to_vec() }
    }
}

impl Carrier for FCarrier {
    type Elem = FElem;

    fn field(&self) -> Field {
        self.rep.field()
    }

    fn add(&self, x: &FElem, y: &FElem) -> FElem {
        FElem { level: self.rep.lattice().meet(x.level, y.level), point: vector::add(&x.point, &y.point) }
    }

    fn neg(&self, x: &FElem) -> FElem {
        FElem { level: x.level, point: vector::neg(&x.point) }
    }

    fn smul(&self, a: &Scalar, x: &FElem) -> FElem {
        FElem { level: x.level, point: vector::scale(a, &x.point) }
    }

    fn show(&self, x: &FElem) -> Value {
        json!({ "level": self.rep.lattice().label(x.level), "point": vector::to_json(&x.point) })
    }

    fn zero(&self) -> Option<FElem> {
        Some(FElem { level: self.rep.unit(), point: self.rep.lie().zero_vector() })
    }
}

impl Bracket for FCarrier {
    fn mul(&self, x: &FElem, y: &FElem) -> FElem {
        let b = self.rep.lie().mul(&x.point, &y.point);
        FElem { level: self.rep.act(&b, self.rep.lattice().meet(x.level, y.level)), point: b }
    }
}

impl Enumerable for FCarrier {
    fn elements(&self) -> Result<Vec<FElem>> {
        let lat = self.rep.lattice();
        let mut out = Vec::new();
        for (i, a) in self.rep.points().iter().enumerate() {
            let top = self.rep.act_at(i, self.rep.unit());
            out.extend((0..lat.len()).filter(|&l| lat.leq(l, top)).map(|l| FElem { level: l, point: a.clone() }));
        }
        Ok(out)
    }
}

fn canonical(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Builds F(r) for a valid `r` and verifies it: the Lie inverse semialgebra axioms, the
/// F-inverse property, σ-classes equal to the classes of equal points, maxima (a·ε, a), and
/// idempotents exactly the (λ, 0).
pub fn build_f(r: PartialRep) -> Result<(FCarrier, CheckReport)> {
    let rep = check_partial_rep(&r)?;
    if let Some(f) = rep.failures().first() {
        return Err(Error::Validation(format!("not a partial representation: {} fails", f.axiom)));
    }
    let c = FCarrier::new(r);
    let (table, elems) = Table::from_algebra(&c)?;
    let plan = Plan::exhaustive(table.elements()?, c.field());
    let mut report = check_lie_isa(&table, &plan)?;
    report.suite = "f_carrier".into();
    let (finv, data) = check_f_inverse(&c)?;
    report.extend(finv);

    let mut by_point: Vec<Vec<usize>> = vec![Vec::new(); c.rep.points().len()];
    for (i, x) in data.elements.iter().enumerate() {
        by_point[vector::index_of(&x.point)].push(i);
    }
    let mut t = Tally::new("f.sigma_is_equal_points");
    let generic = canonical(data.classes.clone());
    t.see(generic == canonical(by_point), || json!({ "generic_classes": generic.len() }));
    report.push(t.done());

    let mut t = Tally::new("f.class_maxima");
    for (k, cls) in data.classes.iter().enumerate() {
        let a = &data.elements[cls[0]].point;
        let found = data.maxima[k].map(|m| &data.elements[m]);
        t.see(found == Some(&c.maximum(a)), || json!({ "point": vector::to_json(a) }));
    }
    report.push(t.done());

    let mut t = Tally::new("f.idempotents_are_zero_points");
    for x in &elems {
        t.see(c.is_idempotent(x) == vector::is_zero(&x.point), || c.show(x));
    }
    report.push(t.done());
    Ok((c, report))
}

/// Checks that (A, a) ↦ (A, a) is an isomorphism F(P_f(L), L) → E(L), exhaustively.
pub fn f_el_iso(lie: &StructAlgebra) -> Result<RoundTrip> {
    let f = FCarrier::new(PartialRep::subspaces(lie)?);
    let (_, spaces) = subspace_lattice(lie.field(), lie.dim())?;
    let el = ELCarrier::new(lie)?;
    check_iso(&f, &f.elements()?, &el, &el.elements()?, |x| {
        ELElem::new(spaces[x.level].clone(), x.point.clone()).expect("a ∈ A")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, solvable2};
    use crate::semilat::MeetSemilattice;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn f_of_subspace_rep_is_f_inverse() {
        for l in [abelian(f3(), 1), abelian(f3(), 2), solvable2(f3())] {
            let (c, report) = build_f(PartialRep::subspaces(&l).unwrap()).unwrap();
            assert!(report.passed(), "{:?}", report.failures());
            assert_eq!(c.elements().unwrap().len(), ELCarrier::new(&l).unwrap().elements().unwrap().len());
        }
    }

    #[test]
    fn f_of_trivial_action_is_the_full_product() {
        let l = abelian(f3(), 1);
        let (c, report) = build_f(PartialRep::trivial(&l, MeetSemilattice::chain(2)).unwrap()).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
        let elems = c.elements().unwrap();
        assert_eq!(elems.len(), 2 * 3);
        // [a,b] = 0 here, so brackets sit at λ∧μ.
        for x in &elems {
            for y in &elems {
                assert_eq!(c.mul(x, y).level, x.level.min(y.level));
            }
        }
    }

    #[test]
    fn f_is_isomorphic_to_el() {
        for l in [abelian(f3(), 1), abelian(f3(), 2), solvable2(f3())] {
            let rt = f_el_iso(&l).unwrap();
            assert!(rt.passed(), "{rt:?}");
        }
    }

    #[test]
    fn f_of_heisenberg_has_the_el_size() {
        let f = FCarrier::new(PartialRep::subspaces(&heisenberg(f3())).unwrap());
        assert_eq!(f.elements().unwrap().len(), 1 + 13 * 3 + 13 * 9 + 27);
    }

    #[test]
    fn invalid_reps_are_refused() {
        let l = abelian(f3(), 1);
        let r = PartialRep::subspaces(&l).unwrap();
        let one = vector::from_i64(f3(), &[1]);
        let other = (r.unit() + 1) % 2;
        let bad = r.with_entry(&vector::zero(f3(), 1), other, r.unit());
        assert!(build_f(bad).is_err());
        assert!(c_elem_rejects_above(&r, &one));
    }

    fn c_elem_rejects_above(r: &PartialRep, one: &[Scalar]) -> bool {
        let c = FCarrier::new(r.clone());
        let line = r.orbit_of_unit(one);
        c.elem(line, one.to_vec()).is_ok() && c.elem(r.unit(), one.to_vec()).is_err()
    }
}

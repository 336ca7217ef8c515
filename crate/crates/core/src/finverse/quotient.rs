//! The σ-congruence, the Lie algebra S/σ and the partial representation K(S) = (𝓔(S), S/σ).

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{PartialRep, Tally};
use crate::algebra::{Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{vector, Scalar, Vector};
use crate::isv::{check_f_inverse, sigma_classes, Bracket, CheckReport, Enumerable, Mode};
use crate::semilat::MeetSemilattice;

/// σ-classes of a finite carrier with the quotient Lie algebra in coordinates.
#[derive(Clone, Debug)]
pub struct SigmaQuotient<E> {
    pub elements: Vec<E>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// ⪯-greatest element of each class, when there is one.
    pub maxima: Vec<Option<usize>>,
    /// Classes whose coordinates are the unit vectors.
    pub basis: Vec<usize>,
    /// Coordinates of each class in `lie`.
    pub coords: Vec<Vector>,
    pub lie: StructAlgebra,
    /// Congruence and well-definedness checks.
    pub report: CheckReport,
    index: HashMap<E, usize>,
    by_coords: HashMap<Vector, usize>,
}

impl<E: std::hash::Hash + Eq + Clone> SigmaQuotient<E> {
    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// σ^#(x) in coordinates.
    pub fn project(&self, x: &E) -> Option<&Vector> {
        self.index_of(x).map(|i| &self.coords[self.class_of[i]])
    }

    pub fn class_at(&self, coords: &[crate::exactalg::Scalar]) -> Option<usize> {
        self.by_coords.get(coords).copied()
    }

    /// m_{s̄} for the class with the given coordinates.
    pub fn maximum_at(&self, coords: &[crate::exactalg::Scalar]) -> Option<&E> {
        self.class_at(coords).and_then(|k| self.maxima[k]).map(|m| &self.elements[m])
    }
}

/// Computes σ (s σ t iff s + e = t + e for an idempotent e), re-checks that it is compatible
/// with +, the bracket and scalars, and builds S/σ as a validated Lie algebra.
pub fn sigma_quotient<C: Bracket + Enumerable>(c: &C) -> Result<SigmaQuotient<C::Elem>> {
    let field = c.field();
    let scalars = field.elements()?;
    let data = sigma_classes(c)?;
    let (elements, class_of, classes) = (data.elements, data.class_of, data.classes);
    let index: HashMap<C::Elem, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let cls = |x: &C::Elem| -> Result<usize> {
        index.get(x).map(|&i| class_of[i]).ok_or_else(|| Error::Validation(format!("{x:?} leaves the carrier")))
    };
    let show = |i: usize| c.show(&elements[i]);

    let mut add = Tally::new("sigma.compatible_add");
    let mut mul = Tally::new("sigma.compatible_bracket");
    let mut smul = Tally::new("sigma.compatible_scalar");
    for (s, x) in elements.iter().enumerate() {
        let t = classes[class_of[s]][0];
        let y = &elements[t];
        for (r, z) in elements.iter().enumerate() {
            let w = || json!({ "s": show(s), "t": show(t), "r": show(r) });
            add.see(cls(&c.add(z, x))? == cls(&c.add(z, y))?, w);
            mul.see(cls(&c.mul(z, x))? == cls(&c.mul(z, y))? && cls(&c.mul(x, z))? == cls(&c.mul(y, z))?, w);
        }
        for a in &scalars {
            smul.see(cls(&c.smul(a, x))? == cls(&c.smul(a, y))?, || json!({ "s": show(s), "t": show(t), "alpha": a.to_string() }));
        }
    }
    if let Some(bad) = [&add, &mul, &smul].into_iter().find(|t| !t.ok()) {
        return Err(Error::Validation(format!("σ is not a congruence: {}", describe(bad))));
    }
    let rep = |k: usize| &elements[classes[k][0]];
    let qadd = |k: usize, l: usize| cls(&c.add(rep(k), rep(l))).expect("closed");
    let qsmul = |a: &Scalar, k: usize| cls(&c.smul(a, rep(k))).expect("closed");
    let zero = class_of[elements.iter().position(|x| c.is_idempotent(x)).ok_or_else(|| Error::Validation("no idempotent".into()))?];

    // Greedy basis: add a class whenever it is outside the span built so far.
    let mut span = vec![zero];
    let mut in_span = vec![false; classes.len()];
    in_span[zero] = true;
    let mut basis = Vec::new();
    for k in 0..classes.len() {
        if in_span[k] {
            continue;
        }
        basis.push(k);
        let mut next = Vec::new();
        for &s in &span {
            for a in &scalars {
                let v = qadd(s, qsmul(a, k));
                if !in_span[v] {
                    in_span[v] = true;
                    next.push(v);
                }
            }
        }
        span.extend(next);
    }
    let d = basis.len();
    let mut coords: Vec<Option<Vector>> = vec![None; classes.len()];
    for cf in vector::all_vectors(field, d)? {
        let k = basis.iter().zip(&cf).fold(zero, |acc, (&b, a)| qadd(acc, qsmul(a, b)));
        if coords[k].replace(cf).is_some() {
            return Err(Error::Validation("σ-classes do not form a vector space".into()));
        }
    }
    let coords: Vec<Vector> = coords
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Validation("σ-classes do not form a vector space".into()))?;
    let table = (0..d * d)
        .map(|ij| Ok(coords[cls(&c.mul(rep(basis[ij / d]), rep(basis[ij % d])))?].clone()))
        .collect::<Result<Vec<Vector>>>()?;
    let lie = StructAlgebra::new(field, d, table, Flavor::Lie)?;

    let mut well = Tally::new("sigma.quotient_operations");
    for k in 0..classes.len() {
        for l in 0..classes.len() {
            let b = cls(&c.mul(rep(k), rep(l)))?;
            well.see(
                coords[qadd(k, l)] == vector::add(&coords[k], &coords[l]) && coords[b] == lie.mul(&coords[k], &coords[l]),
                || json!({ "s": c.show(rep(k)), "t": c.show(rep(l)) }),
            );
        }
        for a in &scalars {
            well.see(coords[qsmul(a, k)] == vector::scale(a, &coords[k]), || json!({ "s": c.show(rep(k)), "alpha": a.to_string() }));
        }
    }
    let mut report = CheckReport::new("sigma_quotient", Mode::Exhaustive);
    for t in [add, mul, smul] {
        report.push(t.done());
    }
    report.push(well.done());
    let by_coords = coords.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    Ok(SigmaQuotient { elements, class_of, classes, maxima: data.maxima, basis, coords, lie, report, index, by_coords })
}

fn describe(t: &Tally) -> String {
    format!("{} at {}", t.id, t.witness.as_ref().map(Value::to_string).unwrap_or_default())
}

/// K(S): the idempotents of S under e ∧ f = e + f, acted on by S/σ via s̄·λ = 0_{m_s̄} + λ.
#[derive(Clone, Debug)]
pub struct KRep<E> {
    pub rep: PartialRep,
    pub quotient: SigmaQuotient<E>,
    /// Element index (into `quotient.elements`) of each lattice point.
    pub idempotents: Vec<usize>,
    level_of: HashMap<usize, usize>,
}

impl<E: std::hash::Hash + Eq + Clone> KRep<E> {
    /// Lattice index of an idempotent of S.
    pub fn level(&self, e: &E) -> Option<usize> {
        self.quotient.index_of(e).and_then(|i| self.level_of.get(&i).copied())
    }

    pub fn idempotent(&self, level: usize) -> &E {
        &self.quotient.elements[self.idempotents[level]]
    }
}

/// Builds K(S) for an F-inverse carrier S.
pub fn functor_k<C: Bracket + Enumerable>(c: &C) -> Result<KRep<C::Elem>> {
    let (report, _) = check_f_inverse(c)?;
    if let Some(f) = report.failures().first() {
        return Err(Error::Validation(format!("not F-inverse: {} fails", f.axiom)));
    }
    let quotient = sigma_quotient(c)?;
    if let Some(f) = quotient.report.failures().first() {
        return Err(Error::Validation(format!("σ quotient check {} fails", f.axiom)));
    }
    let elems = &quotient.elements;
    let idempotents: Vec<usize> = (0..elems.len()).filter(|&i| c.is_idempotent(&elems[i])).collect();
    let level_of: HashMap<usize, usize> = idempotents.iter().enumerate().map(|(l, &i)| (i, l)).collect();
    let level = |e: &C::Elem| -> Result<usize> {
        quotient
            .index_of(e)
            .and_then(|i| level_of.get(&i).copied())
            .ok_or_else(|| Error::Validation(format!("{e:?} is not an idempotent of the carrier")))
    };
    let n = idempotents.len();
    let meet = (0..n)
        .map(|a| (0..n).map(|b| level(&c.add(&elems[idempotents[a]], &elems[idempotents[b]]))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let unit = (0..n).find(|&u| (0..n).all(|b| meet[u][b] == b));
    let labels = idempotents.iter().map(|&i| c.show(&elems[i]).to_string()).collect();
    let lattice = MeetSemilattice::new(labels, meet, unit)?;
    let lie = quotient.lie.clone();
    let points = vector::all_vectors(lie.field(), lie.dim())?;
    let mut action = Vec::with_capacity(points.len() * n);
    for q in &points {
        let m = quotient.maximum_at(q).ok_or_else(|| Error::Validation("a σ-class has no maximum".into()))?;
        let zm = c.zero_of(m);
        for &e in &idempotents {
            action.push(level(&c.add(&zm, &elems[e]))?);
        }
    }
    let rep = PartialRep::new(lie, lattice, action)?;
    Ok(KRep { rep, quotient, idempotents, level_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, solvable2};
    use crate::exactalg::Field;
    use crate::exel::ELCarrier;
    use crate::finverse::{check_partial_rep, FCarrier};
    use crate::isv::VectorCarrier;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn quotient_of_el_is_l() {
        let f2 = Field::prime(2).unwrap();
        let l = abelian(f2, 2);
        let el = ELCarrier::new(&l).unwrap();
        let q = sigma_quotient(&el).unwrap();
        assert!(q.report.passed());
        assert_eq!(q.lie.dim(), 2);
        assert_eq!(q.classes.len(), 4);
        // The class of (A, a) depends only on a.
        for (i, x) in q.elements.iter().enumerate() {
            let j = q.index_of(&el.tau(x.point())).unwrap();
            assert_eq!(q.class_of[i], q.class_of[j]);
        }
    }

    #[test]
    fn quotient_of_el_keeps_the_bracket() {
        let l = solvable2(f3());
        let q = sigma_quotient(&ELCarrier::new(&l).unwrap()).unwrap();
        assert!(q.report.passed());
        assert!(!q.lie.is_commutative());
        let q = sigma_quotient(&ELCarrier::new(&heisenberg(f3())).unwrap()).unwrap();
        assert_eq!(q.lie.dim(), 3);
    }

    #[test]
    fn quotient_of_a_lie_algebra_is_itself() {
        let c = VectorCarrier::new(solvable2(f3()));
        let q = sigma_quotient(&c).unwrap();
        assert_eq!(q.classes.len(), 9);
        assert_eq!(q.lie.dim(), 2);
        let k = functor_k(&c).unwrap();
        assert_eq!(k.rep.lattice().len(), 1);
        assert!(check_partial_rep(&k.rep).unwrap().passed());
    }

    #[test]
    fn quotient_of_f_is_l() {
        let r = PartialRep::subspaces(&abelian(f3(), 2)).unwrap();
        let q = sigma_quotient(&FCarrier::new(r)).unwrap();
        assert_eq!(q.lie.dim(), 2);
        assert!(q.report.passed());
    }

    #[test]
    fn k_of_el_is_the_subspace_representation() {
        let l = abelian(f3(), 2);
        let el = ELCarrier::new(&l).unwrap();
        let k = functor_k(&el).unwrap();
        assert!(check_partial_rep(&k.rep).unwrap().passed());
        assert_eq!(k.rep.lattice().len(), 6);
        // The action of the class of a on the idempotent ({0},0) is (𝔽a, 0).
        for a in vector::all_vectors(f3(), 2).unwrap() {
            let q = k.quotient.project(&el.tau(&a)).unwrap().clone();
            let out = k.idempotent(k.rep.orbit_of_unit(&q));
            assert_eq!(out.space(), el.tau(&a).space());
        }
    }

    #[test]
    fn k_refuses_non_f_inverse_carriers() {
        use crate::semilat::{Presheaf, SFCarrier};
        let c = SFCarrier::new(Presheaf::antichain(f3()));
        assert!(functor_k(&c).is_err());
    }
}

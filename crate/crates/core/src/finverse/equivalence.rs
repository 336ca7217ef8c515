//! The unit and counit of the equivalence between partial representations and F-inverse
//! carriers: ξ_Λ(λ) = (λ,0), η_L(a) = class of (·,a), γ_S(s) = (0_s, s̄).

use std::collections::HashMap;

use serde_json::json;

use super::{FCarrier, FElem, KRep, PartialRep, RepMorphism, Tally};
use crate::algebra::hom_violation;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Matrix};
use crate::isv::{sigma_classes, AxiomResult, Bracket, CheckReport, Enumerable, Mode};
use crate::semilat::{check_iso, RoundTrip};

use super::functor_k;

/// ξ and η for one partial representation r, as a morphism r → K(F(r)).
#[derive(Clone, Debug)]
pub struct RepWitnesses {
    pub f: FCarrier,
    pub kf: KRep<FElem>,
    pub unit: RepMorphism,
    pub report: CheckReport,
}

/// Builds K(F(r)) and checks that ξ is a unit-preserving lattice isomorphism, η a Lie
/// isomorphism, and (ξ, η) a morphism of partial representations.
pub fn rep_witnesses(r: &PartialRep) -> Result<RepWitnesses> {
    let f = FCarrier::new(r.clone());
    let kf = functor_k(&f)?;
    let (lat, klat) = (r.lattice(), kf.rep.lattice());
    let zero = r.lie().zero_vector();
    let xi: Vec<usize> = (0..lat.len())
        .map(|l| kf.level(&FElem { level: l, point: zero.clone() }).ok_or_else(|| Error::Validation("(λ,0) is not idempotent".into())))
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new("equivalence_rep", Mode::Exhaustive);

    let mut t = Tally::new("equiv.xi_lattice_iso");
    let mut seen = vec![false; klat.len()];
    for &x in &xi {
        seen[x] = true;
    }
    t.see(lat.len() == klat.len() && seen.iter().all(|&b| b), || json!({ "levels": lat.len(), "idempotents": klat.len() }));
    t.see(xi[r.unit()] == kf.rep.unit(), || json!("ξ does not preserve the unit"));
    for l in 0..lat.len() {
        for m in 0..lat.len() {
            t.see(xi[lat.meet(l, m)] == klat.meet(xi[l], xi[m]), || json!({ "lambda": lat.label(l), "mu": lat.label(m) }));
        }
    }
    report.push(t.done());

    let cols: Vec<_> = (0..r.lie().dim())
        .map(|i| kf.quotient.project(&f.maximum(&r.lie().basis_vector(i))).cloned().expect("element of F"))
        .collect();
    let eta = Matrix::from_cols(r.field(), kf.rep.lie().dim(), &cols)?;
    let mut t = Tally::new("equiv.eta_lie_iso");
    t.see(eta.rows() == eta.cols() && eta.rank() == eta.cols(), || json!({ "rank": eta.rank(), "quotient_dim": eta.rows() }));
    t.see(hom_violation(r.lie(), kf.rep.lie(), &eta).is_none(), || json!("η does not preserve the bracket"));
    for a in r.points() {
        let q = kf.quotient.project(&f.maximum(a)).expect("element of F");
        t.see(*q == eta.mul_vec(a)?, || json!({ "a": vector::to_json(a) }));
    }
    report.push(t.done());

    let unit = RepMorphism { theta: xi, phi: eta };
    let mut t = Tally::new("equiv.xi_eta_morphism");
    let bad = unit.violation(r, &kf.rep);
    t.see(bad.is_none(), || json!(bad));
    report.push(t.done());
    Ok(RepWitnesses { f, kf, unit, report })
}

/// γ_S for one F-inverse carrier S, into F(K(S)).
#[derive(Clone, Debug)]
pub struct GammaWitness<E> {
    pub k: KRep<E>,
    pub fk: FCarrier,
    /// γ_S of each element, aligned with `k.quotient.elements`.
    pub gamma: Vec<FElem>,
    pub iso: RoundTrip,
    pub report: CheckReport,
}

/// Checks that γ_S(s) = (0_s, s̄) is an isomorphism S → F(K(S)) preserving +, scalars and the
/// bracket, sends maxima to maxima, and is inverted by (μ, q) ↦ μ + m_q.
pub fn gamma_witness<C: Bracket + Enumerable>(c: &C) -> Result<GammaWitness<C::Elem>> {
    let k = functor_k(c)?;
    let fk = FCarrier::new(k.rep.clone());
    let elems = k.quotient.elements.clone();
    let gamma_of = |s: &C::Elem| FElem {
        level: k.level(&c.zero_of(s)).expect("0_s is idempotent"),
        point: k.quotient.project(s).expect("element of S").clone(),
    };
    let iso = check_iso(c, &elems, &fk, &fk.elements()?, gamma_of)?;
    let mut report = CheckReport::new("equivalence_carrier", Mode::Exhaustive);
    let mut t = Tally::new("equiv.gamma_iso");
    t.see(iso.passed(), || iso.to_json());
    report.push(t.done());

    let mut t = Tally::new("equiv.gamma_preserves_maxima");
    for m in k.quotient.maxima.iter().flatten() {
        let s = &elems[*m];
        let q = k.quotient.project(s).expect("element");
        t.see(gamma_of(s) == fk.maximum(q), || c.show(s));
    }
    report.push(t.done());

    let mut t = Tally::new("equiv.gamma_recovery");
    for s in &elems {
        let g = gamma_of(s);
        let m = k.quotient.maximum_at(&g.point).expect("F-inverse");
        t.see(c.add(k.idempotent(g.level), m) == *s, || c.show(s));
    }
    report.push(t.done());
    let gamma = elems.iter().map(gamma_of).collect();
    Ok(GammaWitness { k, fk, gamma, iso, report })
}

/// F on a morphism (θ, φ): (λ, a) ↦ (θλ, φa).
pub fn functor_f_on_morphism(m: &RepMorphism) -> impl Fn(&FElem) -> FElem + '_ {
    move |x| FElem { level: m.theta[x.level], point: m.apply_phi(&x.point) }
}

/// K on a carrier morphism h: S → T: θ is h on idempotents, φ is h on σ-classes.
pub fn functor_k_on_morphism<E, D>(ks: &KRep<E>, kt: &KRep<D>, h: impl Fn(&E) -> D) -> Result<RepMorphism>
where
    E: std::hash::Hash + Eq + Clone,
    D: std::hash::Hash + Eq + Clone + std::fmt::Debug,
{
    let theta = (0..ks.rep.lattice().len())
        .map(|l| {
            let e = h(ks.idempotent(l));
            kt.level(&e).ok_or_else(|| Error::Validation(format!("{e:?} is not an idempotent of the target")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let q = &ks.quotient;
    let cols = q
        .basis
        .iter()
        .map(|&b| {
            let img = h(&q.elements[q.classes[b][0]]);
            kt.quotient.project(&img).cloned().ok_or_else(|| Error::Validation(format!("{img:?} leaves the target")))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = Matrix::from_cols(ks.rep.field(), kt.rep.lie().dim(), &cols)?;
    Ok(RepMorphism { theta, phi })
}

/// The naturality square for ξ, η along m: r1 → r2, i.e. KF(m) ∘ (ξ₁,η₁) = (ξ₂,η₂) ∘ m.
pub fn rep_naturality(w1: &RepWitnesses, w2: &RepWitnesses, r1: &PartialRep, r2: &PartialRep, m: &RepMorphism) -> Result<AxiomResult> {
    let mut t = Tally::new("equiv.rep_naturality");
    let bad = m.violation(r1, r2);
    t.see(bad.is_none(), || json!({ "invalid_morphism": bad }));
    if !t.ok() {
        return Ok(t.done());
    }
    let fm = functor_f_on_morphism(m);
    let kfm = functor_k_on_morphism(&w1.kf, &w2.kf, fm)?;
    let left = kfm.compose(&w1.unit)?;
    let right = w2.unit.compose(m)?;
    t.see(left == right, || json!({ "KF(m)∘unit": left.to_json(r1, &w2.kf.rep), "unit∘m": right.to_json(r1, &w2.kf.rep) }));
    Ok(t.done())
}

/// The naturality square for γ along a carrier morphism h: S → T, i.e. FK(h) ∘ γ_S = γ_T ∘ h.
pub fn gamma_naturality<C, D>(
    c: &C,
    d: &D,
    gs: &GammaWitness<C::Elem>,
    gt: &GammaWitness<D::Elem>,
    h: impl Fn(&C::Elem) -> D::Elem,
) -> Result<AxiomResult>
where
    C: Bracket + Enumerable,
    D: Bracket + Enumerable,
{
    let mut t = Tally::new("equiv.gamma_naturality");
    let kh = functor_k_on_morphism(&gs.k, &gt.k, &h)?;
    let fkh = functor_f_on_morphism(&kh);
    for (s, g) in gs.k.quotient.elements.iter().zip(&gs.gamma) {
        let hs = h(s);
        let rhs = gt.k.quotient.index_of(&hs).map(|i| &gt.gamma[i]);
        t.see(rhs == Some(&fkh(g)), || json!({ "s": c.show(s), "h(s)": d.show(&hs) }));
    }
    Ok(t.done())
}

/// Checks that a map between F-inverse carriers preserves +, scalars and the bracket and sends
/// each σ-class maximum to the maximum of the image class.
pub fn carrier_morphism_check<C, D>(c: &C, d: &D, h: impl Fn(&C::Elem) -> D::Elem) -> Result<CheckReport>
where
    C: Bracket + Enumerable,
    D: Bracket + Enumerable,
{
    let elems = c.elements()?;
    let scalars = c.field().elements()?;
    let mut report = CheckReport::new("f_morphism", Mode::Exhaustive);
    let mut t = Tally::new("fmorph.homomorphism");
    for x in &elems {
        for y in &elems {
            t.see(h(&c.add(x, y)) == d.add(&h(x), &h(y)) && h(&c.mul(x, y)) == d.mul(&h(x), &h(y)), || {
                json!({ "x": c.show(x), "y": c.show(y) })
            });
        }
        for a in &scalars {
            t.see(h(&c.smul(a, x)) == d.smul(a, &h(x)), || json!({ "x": c.show(x), "alpha": a.to_string() }));
        }
    }
    report.push(t.done());
    let (sc, sd) = (sigma_classes(c)?, sigma_classes(d)?);
    let d_index: HashMap<&D::Elem, usize> = sd.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut t = Tally::new("fmorph.preserves_maxima");
    for m in sc.maxima.iter().flatten() {
        let img = h(&sc.elements[*m]);
        let target_max = d_index.get(&img).and_then(|&i| sd.max_of(i));
        t.see(target_max == Some(&img), || json!({ "maximum": c.show(&sc.elements[*m]) }));
    }
    report.push(t.done());
    Ok(report)
}

/// Runs ξ, η for `r` and γ for `c`, and the naturality squares along the identities.
pub fn equivalence_witnesses<C: Bracket + Enumerable>(r: &PartialRep, c: &C) -> Result<CheckReport> {
    let w = rep_witnesses(r)?;
    let g = gamma_witness(c)?;
    let mut report = CheckReport::new("equivalence", Mode::Exhaustive);
    report.extend(w.report.clone());
    report.extend(g.report.clone());
    report.push(rep_naturality(&w, &w, r, r, &RepMorphism::identity(r))?);
    report.push(gamma_naturality(c, c, &g, &g, |s: &C::Elem| s.clone())?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, solvable2, AlgebraHom};
    use crate::exactalg::{Field, Subspace};
    use crate::exel::{ELCarrier, ELElem};
    use crate::finverse::subspace_functor;
    use crate::semilat::MeetSemilattice;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn trivial_action_on_a_chain() {
        let r = PartialRep::trivial(&abelian(f3(), 1), MeetSemilattice::chain(2)).unwrap();
        let el = ELCarrier::new(&abelian(f3(), 1)).unwrap();
        let report = equivalence_witnesses(&r, &el).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn subspace_reps_and_el_carriers() {
        for l in [abelian(f3(), 1), abelian(f3(), 2), solvable2(f3())] {
            let r = PartialRep::subspaces(&l).unwrap();
            let report = equivalence_witnesses(&r, &ELCarrier::new(&l).unwrap()).unwrap();
            assert!(report.passed(), "{:?}", report.failures());
        }
    }

    #[test]
    fn gamma_of_el_recovers_every_element() {
        let el = ELCarrier::new(&abelian(f3(), 2)).unwrap();
        let g = gamma_witness(&el).unwrap();
        assert_eq!(g.iso.size, 22);
        assert!(g.report.passed());
    }

    #[test]
    fn naturality_along_an_inclusion() {
        let (k, l) = (abelian(f3(), 1), abelian(f3(), 2));
        let inc = AlgebraHom::new(k.clone(), l.clone(), Matrix::from_i64(f3(), &[&[1], &[0]])).unwrap();
        let (r1, r2) = (PartialRep::subspaces(&k).unwrap(), PartialRep::subspaces(&l).unwrap());
        let m = subspace_functor(&inc).unwrap();
        let (w1, w2) = (rep_witnesses(&r1).unwrap(), rep_witnesses(&r2).unwrap());
        assert_eq!(rep_naturality(&w1, &w2, &r1, &r2, &m).unwrap().verdict.name(), "pass");

        let (e1, e2) = (ELCarrier::new(&k).unwrap(), ELCarrier::new(&l).unwrap());
        let h = |x: &ELElem| ELElem::new(x.space().image(&inc.matrix).unwrap(), inc.apply(x.point())).unwrap();
        assert!(carrier_morphism_check(&e1, &e2, h).unwrap().passed());
        let (g1, g2) = (gamma_witness(&e1).unwrap(), gamma_witness(&e2).unwrap());
        assert_eq!(gamma_naturality(&e1, &e2, &g1, &g2, h).unwrap().verdict.name(), "pass");
    }

    #[test]
    fn a_broken_square_is_detected() {
        let l = abelian(f3(), 1);
        let el = ELCarrier::new(&l).unwrap();
        let g = gamma_witness(&el).unwrap();
        // Collapse everything onto the idempotents: a homomorphism that forgets maxima.
        let h = |x: &ELElem| ELElem::new(x.space().clone(), vector::zero(f3(), 1)).unwrap();
        assert!(!carrier_morphism_check(&el, &el, h).unwrap().passed());
        // Not additive: (𝔽,2) goes to (𝔽,1) and everything else is fixed.
        let two = vector::from_i64(f3(), &[2]);
        let bend = |x: &ELElem| {
            if *x.point() == two {
                ELElem::new(Subspace::full(f3(), 1), vector::from_i64(f3(), &[1])).unwrap()
            } else {
                x.clone()
            }
        };
        assert_eq!(gamma_naturality(&el, &el, &g, &g, bend).unwrap().verdict.name(), "fail");
    }
}

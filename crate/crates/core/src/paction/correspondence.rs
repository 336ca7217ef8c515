//! Premorphisms L → T versus homomorphisms E(L) → T, enumerated on both sides.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::vector;
use crate::exel::{ELCarrier, ELElem, Premorphism};
use crate::isv::{Bracket, Carrier, Enumerable};

/// Counts and round-trip verdicts for ρ ↦ ρ̃ and φ ↦ φ∘τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub premorphisms: usize,
    pub homomorphisms: usize,
    /// Every ρ̃ is a homomorphism.
    pub forward_lands: bool,
    /// Every φ∘τ is a premorphism.
    pub backward_lands: bool,
    /// (ρ̃)∘τ = ρ for every premorphism ρ.
    pub premorphism_roundtrip: bool,
    /// (φ∘τ)~ = φ for every homomorphism φ.
    pub homomorphism_roundtrip: bool,
}

impl Correspondence {
    pub fn is_bijection(&self) -> bool {
        self.premorphisms == self.homomorphisms
            && self.forward_lands
            && self.backward_lands
            && self.premorphism_roundtrip
            && self.homomorphism_roundtrip
    }

    pub fn to_json(&self) -> Value {
        json!({
            "premorphisms": self.premorphisms,
            "homomorphisms": self.homomorphisms,
            "forward_lands_in_homomorphisms": self.forward_lands,
            "backward_lands_in_premorphisms": self.backward_lands,
            "premorphism_roundtrip": self.premorphism_roundtrip,
            "homomorphism_roundtrip": self.homomorphism_roundtrip,
            "bijection": self.is_bijection(),
        })
    }
}

/// Whether a table on the elements of E(L) preserves +, every scalar multiple and the bracket,
/// and sends ({0},0) to the zero of the target when the target has one.
pub fn is_el_homomorphism<T: Bracket>(el: &ELCarrier, elems: &[ELElem], values: &[T::Elem], target: &T) -> Result<bool> {
    let index: HashMap<&ELElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if let (Some(z), Some(ez)) = (target.zero(), el.zero()) {
        if values[index[&ez]] != z {
            return Ok(false);
        }
    }
    let scalars = el.field().elements()?;
    for (i, x) in elems.iter().enumerate() {
        for s in &scalars {
            if values[index[&el.smul(s, x)]] != target.smul(s, &values[i]) {
                return Ok(false);
            }
        }
        for (j, y) in elems.iter().enumerate() {
            if values[index[&el.add(x, y)]] != target.add(&values[i], &values[j])
                || values[index[&el.mul(x, y)]] != target.mul(&values[i], &values[j])
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates all maps L → T and E(L) → T (at most `cap` candidates per side) and checks
/// that extension and restriction along τ are mutually inverse bijections.
pub fn action_hom_correspondence<T>(l: &StructAlgebra, target: T, cap: u64) -> Result<Correspondence>
where
    T: Bracket + Enumerable + Clone + Send + Sync + 'static,
{
    let field = l.field();
    let points = vector::all_vectors(field, l.dim())?;
    let el = ELCarrier::new(l)?;
    let elems = el.elements()?;
    let values = target.elements()?;
    let count = |k: usize| (values.len() as u64).checked_pow(k as u32).filter(|&c| c <= cap);
    let (n_pre, n_hom) = match (count(points.len()), count(elems.len())) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::BoundExceeded(format!(
                "{}^{} maps on E(L) exceed the cap {cap}",
                values.len(),
                elems.len()
            )))
        }
    };
    let decode = |mut i: u64, k: usize| -> Vec<T::Elem> {
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            out.push(values[(i % values.len() as u64) as usize].clone());
            i /= values.len() as u64;
        }
        out
    };
    let as_premorphism = |table: Vec<T::Elem>| Premorphism::from_table(l, target.clone(), table);

    let mut premorphisms: Vec<Vec<T::Elem>> = Vec::new();
    for i in 0..n_pre {
        let table = decode(i, points.len());
        let rho = as_premorphism(table.clone())?;
        if rho.check(&rho.source_plan(0, 0)?)?.passed() {
            premorphisms.push(table);
        }
    }
    let mut homomorphisms: Vec<Vec<T::Elem>> = Vec::new();
    for i in 0..n_hom {
        let table = decode(i, elems.len());
        if is_el_homomorphism(&el, &elems, &table, &target)? {
            homomorphisms.push(table);
        }
    }
    let hom_set: HashSet<&Vec<T::Elem>> = homomorphisms.iter().collect();
    let pre_set: HashSet<&Vec<T::Elem>> = premorphisms.iter().collect();
    let el_index: HashMap<&ELElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let restrict = |phi: &[T::Elem]| -> Vec<T::Elem> { points.iter().map(|a| phi[el_index[&el.tau(a)]].clone()).collect() };

    let (mut forward_lands, mut premorphism_roundtrip) = (true, true);
    for rho in &premorphisms {
        let p = as_premorphism(rho.clone())?;
        let ext: Vec<T::Elem> = elems.iter().map(|x| p.extend_at(x)).collect();
        forward_lands &= hom_set.contains(&ext);
        premorphism_roundtrip &= restrict(&ext) == *rho;
    }
    let (mut backward_lands, mut homomorphism_roundtrip) = (true, true);
    for phi in &homomorphisms {
        let rho = restrict(phi);
        backward_lands &= pre_set.contains(&rho);
        let p = as_premorphism(rho)?;
        homomorphism_roundtrip &= elems.iter().map(|x| p.extend_at(x)).collect::<Vec<_>>() == *phi;
    }
    Ok(Correspondence {
        premorphisms: premorphisms.len(),
        homomorphisms: homomorphisms.len(),
        forward_lands,
        backward_lands,
        premorphism_roundtrip,
        homomorphism_roundtrip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, diagonal};
    use crate::exactalg::Field;
    use crate::exel::tau;
    use crate::paction::PartialAction;
    use crate::pmaps::{DomainClass, PDerCarrier};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn unital_partial_actions_match_homomorphisms() {
        let a = diagonal(f2(), 2);
        let target = PDerCarrier::class(&a, DomainClass::UnitalAssoc, 4).unwrap();
        let c = action_hom_correspondence(&abelian(f2(), 1), target, 1 << 16).unwrap();
        assert!(c.is_bijection(), "{c:?}");
        // ρ(0) is forced; ρ(1) may be the zero map on any of the four unital ideals.
        assert_eq!(c.premorphisms, 4);
    }

    #[test]
    fn idempotent_example_roundtrips() {
        let (l, a) = (abelian(f2(), 1), diagonal(f2(), 2));
        let pa = PartialAction::idempotent_example(&l, &a).unwrap();
        let rho = pa.premorphism();
        let el = ELCarrier::new(&l).unwrap();
        let elems = el.elements().unwrap();
        let ext: Vec<_> = elems.iter().map(|x| rho.extend_at(x)).collect();
        assert!(is_el_homomorphism(&el, &elems, &ext, rho.target()).unwrap());
        for x in vector::all_vectors(f2(), 1).unwrap() {
            let i = elems.iter().position(|e| *e == tau(&x)).unwrap();
            assert_eq!(ext[i], pa.theta(&x));
        }
    }

    #[test]
    fn zero_action_extends_to_idempotents() {
        let (l, a) = (abelian(f2(), 2), diagonal(f2(), 2));
        let rho = PartialAction::zero_action(&l, &a).unwrap().premorphism();
        let el = ELCarrier::new(&l).unwrap();
        for x in el.elements().unwrap() {
            let v = rho.extend_at(&x);
            assert!(rho.target().is_idempotent(&v) && v.domain().is_full());
        }
    }

    #[test]
    fn refuses_oversized_enumerations() {
        let a = diagonal(f2(), 2);
        let target = PDerCarrier::class(&a, DomainClass::UnitalAssoc, 4).unwrap();
        assert!(action_hom_correspondence(&abelian(f2(), 2), target, 1000).is_err());
    }
}

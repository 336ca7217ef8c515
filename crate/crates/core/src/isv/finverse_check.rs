//! The minimum group congruence σ on a finite carrier and the F-inverse property.

use std::collections::HashMap;

use serde_json::json;

use super::engine::{run, AxiomResult, CheckReport, Mode, Plan, Slot::*};
use super::{Axiom, Bracket, Enumerable};
use crate::error::Result;

/// σ-classes of a finite carrier, as indices into `elements`.
#[derive(Clone, Debug)]
pub struct FInverseData<E> {
    pub elements: Vec<E>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// The ⪯-greatest element of each class, if it has one.
    pub maxima: Vec<Option<usize>>,
}

impl<E: Clone + Eq + std::hash::Hash> FInverseData<E> {
    pub fn max_of(&self, i: usize) -> Option<&E> {
        self.maxima[self.class_of[i]].map(|m| &self.elements[m])
    }

    pub fn is_f_inverse(&self) -> bool {
        self.maxima.iter().all(Option::is_some)
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// s σ t iff s + e = t + e for some idempotent e.
pub fn sigma_classes<C: Enumerable>(c: &C) -> Result<FInverseData<C::Elem>> {
    let elements = c.elements()?;
    let n = elements.len();
    let idems: Vec<&C::Elem> = elements.iter().filter(|e| c.is_idempotent(e)).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in &idems {
        let mut seen: HashMap<C::Elem, usize> = HashMap::new();
        for (i, s) in elements.iter().enumerate() {
            match seen.entry(c.add(s, e)) {
                std::collections::hash_map::Entry::Occupied(o) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, *o.get()));
                    parent[a.max(b)] = a.min(b);
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(i);
                }
            }
        }
    }
    let mut root_to_class: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        let k = *root_to_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
        class_of[i] = k;
    }
    let maxima = classes
        .iter()
        .map(|cls| {
            cls.iter()
                .copied()
                .find(|&m| cls.iter().all(|&s| c.leq(&elements[s], &elements[m])))
        })
        .collect();
    Ok(FInverseData {
        elements,
        class_of,
        classes,
        maxima,
    })
}

/// Checks that every σ-class has a greatest element and, if so, the identities tying the
/// maxima to the bracket.
pub fn check_f_inverse<C: Bracket + Enumerable>(
    c: &C,
) -> Result<(CheckReport, FInverseData<C::Elem>)> {
    let data = sigma_classes(c)?;
    let mut report = CheckReport::new("f_inverse", Mode::Exhaustive);
    let bad = data.maxima.iter().position(Option::is_none);
    let witness = bad.map(|k| {
        let cls = &data.classes[k];
        let maximal: Vec<_> = cls
            .iter()
            .filter(|&&m| cls.iter().all(|&s| s == m || !c.leq(&data.elements[m], &data.elements[s])))
            .map(|&m| c.show(&data.elements[m]))
            .collect();
        json!({ "class": cls.iter().map(|&i| c.show(&data.elements[i])).collect::<Vec<_>>(), "maximal": maximal })
    });
    report.push(AxiomResult::custom(
        "finv.greatest_in_class",
        Mode::Exhaustive,
        bad.is_none(),
        data.classes.len() as u64,
        witness,
    ));
    if bad.is_some() {
        return Ok((report, data));
    }
    {
        let index: HashMap<C::Elem, usize> = data
            .elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let m = |x: &C::Elem| {
            data.max_of(index[x])
                .expect("every class has a maximum")
                .clone()
        };
        let axioms: Vec<Axiom<'_, C>> = vec![
            Axiom::new(
                "finv.bracket_identity",
                &[("s", Elem), ("t", Elem)],
                |c: &C, a| {
                    let (s, t) = (a.e(0), a.e(1));
                    let b = c.mul(s, t);
                    b == c.add(&m(&b), &c.zero_of(&c.add(s, t)))
                },
            ),
            Axiom::new(
                "finv.max_premorphism",
                &[("s", Elem), ("t", Elem)],
                |c: &C, a| {
                    let (ms, mt) = (m(a.e(0)), m(a.e(1)));
                    let mst = m(&c.add(a.e(0), a.e(1)));
                    let lhs = c.add(&ms, &mt);
                    lhs == c.add(&c.zero_of(&ms), &mst) && lhs == c.add(&c.zero_of(&mt), &mst)
                },
            )
            .noted("derived"),
        ];
        let plan = Plan::exhaustive(data.elements.clone(), c.field());
        report.extend(run(c, "f_inverse", &plan, &axioms)?);
    }
    Ok((report, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::abelian;
    use crate::exactalg::Field;
    use crate::isv::VectorCarrier;

    #[test]
    fn a_lie_algebra_is_its_own_quotient() {
        let f3 = Field::prime(3).unwrap();
        let c = VectorCarrier::new(abelian(f3, 2));
        let (r, data) = check_f_inverse(&c).unwrap();
        assert!(r.passed());
        assert_eq!(data.classes.len(), 9);
        assert!(data.classes.iter().all(|k| k.len() == 1));
    }
}

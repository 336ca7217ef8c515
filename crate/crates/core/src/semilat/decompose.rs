//! From a finite semilattice of algebras back to a presheaf, and the round-trip isomorphisms.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use super::{detect_flavor, MeetSemilattice, Presheaf, SFCarrier, SLElem};
use crate::algebra::hom_violation;
use crate::error::{Error, Result};
use crate::exactalg::{vector, Matrix, Vector};
use crate::isv::{check_associative, check_naisa, check_semilattice_of_algebras, Bracket, Carrier, Commutator, Enumerable, Plan, Table};

/// The presheaf F(S) of a finite semilattice of algebras S, with the data to move between them.
#[derive(Clone, Debug)]
pub struct Decomposition<E> {
    pub presheaf: Presheaf,
    /// The idempotent λ behind each level; levels are S_λ = {x | 0_x = λ}.
    pub levels: Vec<E>,
    /// The basis chosen in each level.
    pub bases: Vec<Vec<E>>,
    /// Level and coordinates of every element of S.
    pub coords: HashMap<E, (usize, Vector)>,
}

impl<E: std::hash::Hash + Eq> Decomposition<E> {
    pub fn locate(&self, x: &E) -> Option<SLElem> {
        self.coords.get(x).map(|(l, v)| SLElem { level: *l, value: v.clone() })
    }
}

fn require_semilattice<C: Bracket + Enumerable>(c: &C) -> Result<()> {
    let (table, _) = Table::from_algebra(c)?;
    let plan = Plan::exhaustive(table.elements()?, c.field());
    let mut report = check_naisa(&table, &plan)?;
    report.extend(check_semilattice_of_algebras(&table, &plan, false)?);
    if report.passed() {
        Ok(())
    } else {
        let ids: Vec<&str> = report.failures().iter().map(|r| r.axiom.as_str()).collect();
        Err(Error::Validation(format!("not a semilattice of algebras: {} fail", ids.join(", "))))
    }
}

/// Λ = 𝓔(S) with e ∧ f = e + f, S_λ = {x | 0_x = λ}, η_{λ,μ}(x) = μ + x.
pub fn decompose<C: Bracket + Enumerable>(c: &C) -> Result<Decomposition<C::Elem>> {
    require_semilattice(c)?;
    let field = c.field();
    let scalars = field.elements()?;
    let elems = c.elements()?;
    let levels: Vec<C::Elem> = elems.iter().filter(|x| c.is_idempotent(x)).cloned().collect();
    let level_index: HashMap<&C::Elem, usize> = levels.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = levels.len();
    let meet: Vec<Vec<usize>> = levels.iter().map(|e| levels.iter().map(|f| level_index[&c.add(e, f)]).collect()).collect();
    let unit = (0..n).find(|&u| (0..n).all(|f| meet[u][f] == f));
    let labels = levels.iter().map(|e| c.show(e).to_string()).collect();
    let base = MeetSemilattice::new(labels, meet, unit)?;

    let mut bases = Vec::with_capacity(n);
    let mut coords: HashMap<C::Elem, (usize, Vector)> = HashMap::new();
    for (li, lam) in levels.iter().enumerate() {
        let members: Vec<&C::Elem> = elems.iter().filter(|x| c.zero_of(x) == *lam).collect();
        let mut span: HashSet<C::Elem> = HashSet::from([lam.clone()]);
        let mut basis = Vec::new();
        for x in &members {
            if span.contains(*x) {
                continue;
            }
            span = span.iter().flat_map(|s| scalars.iter().map(move |a| c.add(s, &c.smul(a, x)))).collect();
            basis.push((*x).clone());
        }
        if span.len() != members.len() {
            return Err(Error::Validation(format!("level {} is not closed under its own operations", c.show(lam))));
        }
        for cv in vector::all_vectors(field, basis.len())? {
            let x = cv.iter().zip(&basis).fold(lam.clone(), |acc, (a, b)| c.add(&acc, &c.smul(a, b)));
            coords.insert(x, (li, cv));
        }
        bases.push(basis);
    }
    let coords_at = |x: &C::Elem, level: usize| -> Result<Vector> {
        match coords.get(x) {
            Some((l, v)) if *l == level => Ok(v.clone()),
            _ => Err(Error::Validation(format!("{} leaves level {}", c.show(x), c.show(&levels[level])))),
        }
    };
    let mut objects = Vec::with_capacity(n);
    for (li, basis) in bases.iter().enumerate() {
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for x in basis {
            for y in basis {
                table.push(coords_at(&c.mul(x, y), li)?);
            }
        }
        objects.push(detect_flavor(field, basis.len(), &table));
    }
    let mut maps = Vec::new();
    for l in 0..n {
        for m in 0..n {
            if l != m && base.leq(m, l) {
                let mut mat = Matrix::zeros(field, bases[m].len(), bases[l].len());
                for (j, b) in bases[l].iter().enumerate() {
                    for (i, v) in coords_at(&c.add(&levels[m], b), m)?.into_iter().enumerate() {
                        mat.set(i, j, v);
                    }
                }
                maps.push((l, m, mat));
            }
        }
    }
    let presheaf = Presheaf::new(base, objects, maps)?;
    Ok(Decomposition { presheaf, levels, bases, coords })
}

/// Verdicts for the bijection S → S_{F(S)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub size: usize,
    pub bijective: bool,
    pub preserves_add: bool,
    pub preserves_mul: bool,
    pub preserves_smul: bool,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.bijective && self.preserves_add && self.preserves_mul && self.preserves_smul
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "bijective": self.bijective,
            "preserves_add": self.preserves_add,
            "preserves_mul": self.preserves_mul,
            "preserves_smul": self.preserves_smul,
            "passed": self.passed(),
        })
    }
}

/// Checks that `f` sends `elems` bijectively onto `target` and preserves +, the product and
/// every scalar multiple, exhaustively.
pub fn check_iso<C: Bracket, D: Bracket>(
    c: &C,
    elems: &[C::Elem],
    d: &D,
    target: &[D::Elem],
    f: impl Fn(&C::Elem) -> D::Elem,
) -> Result<RoundTrip> {
    let image: Vec<D::Elem> = elems.iter().map(&f).collect();
    let distinct: HashSet<&D::Elem> = image.iter().collect();
    let onto: HashSet<&D::Elem> = target.iter().collect();
    let bijective = distinct.len() == elems.len() && elems.len() == onto.len() && image.iter().all(|y| onto.contains(y));
    let scalars = c.field().elements()?;
    let (mut add, mut mul, mut smul) = (true, true, true);
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            add &= f(&c.add(x, y)) == d.add(&image[i], &image[j]);
            mul &= f(&c.mul(x, y)) == d.mul(&image[i], &image[j]);
        }
        for a in &scalars {
            smul &= f(&c.smul(a, x)) == d.smul(a, &image[i]);
        }
    }
    Ok(RoundTrip { size: elems.len(), bijective, preserves_add: add, preserves_mul: mul, preserves_smul: smul })
}

/// Decomposes `c` and checks x ↦ (level, coordinates) is an isomorphism onto S_{F(S)}, exhaustively.
pub fn roundtrip_iso<C: Bracket + Enumerable>(c: &C) -> Result<(Decomposition<C::Elem>, RoundTrip)> {
    let dec = decompose(c)?;
    let sf = SFCarrier::new(dec.presheaf.clone());
    let rt = check_iso(c, &c.elements()?, &sf, &sf.elements()?, |x| dec.locate(x).expect("every element has a level"))?;
    Ok((dec, rt))
}

/// Verdicts for F(S_F) ≅ F: a lattice isomorphism and levelwise algebra isomorphisms commuting with restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafRoundTrip {
    pub lattice_iso: bool,
    pub level_isos: bool,
    pub natural: bool,
}

impl PresheafRoundTrip {
    pub fn passed(&self) -> bool {
        self.lattice_iso && self.level_isos && self.natural
    }

    pub fn to_json(&self) -> Value {
        json!({ "lattice_iso": self.lattice_iso, "level_isos": self.level_isos, "natural": self.natural, "passed": self.passed() })
    }
}

/// Builds S_F, decomposes it, and compares the result with `p` via λ ↦ (λ, 0) and x ↦ coordinates of (λ, x).
pub fn presheaf_roundtrip(p: &Presheaf) -> Result<PresheafRoundTrip> {
    let sf = SFCarrier::new(p.clone());
    let dec = decompose(&sf)?;
    let q = &dec.presheaf;
    let (lp, lq) = (p.base(), q.base());
    let n = lp.len();
    let level_map: Vec<Option<usize>> = (0..n)
        .map(|l| {
            let idem = sf.zero_of(&SLElem { level: l, value: p.object(l).zero_vector() });
            dec.levels.iter().position(|e| *e == idem)
        })
        .collect();
    let distinct: HashSet<&Option<usize>> = level_map.iter().collect();
    let mut lattice_iso = n == lq.len() && level_map.iter().all(Option::is_some) && distinct.len() == n;
    if !lattice_iso {
        return Ok(PresheafRoundTrip { lattice_iso, level_isos: false, natural: false });
    }
    let lm: Vec<usize> = level_map.into_iter().map(Option::unwrap).collect();
    lattice_iso &= (0..n).all(|a| (0..n).all(|b| lm[lp.meet(a, b)] == lq.meet(lm[a], lm[b])));
    lattice_iso &= lp.unit().map(|u| lm[u]) == lq.unit();

    let field = p.field();
    let mut level_isos = true;
    let mut iso = Vec::with_capacity(n);
    for l in 0..n {
        let (src, dst) = (p.object(l), q.object(lm[l]));
        let mut m = Matrix::zeros(field, dst.dim(), src.dim());
        for j in 0..src.dim() {
            let (ql, v) = dec.coords[&SLElem { level: l, value: src.basis_vector(j) }].clone();
            level_isos &= ql == lm[l];
            if ql == lm[l] {
                for (i, s) in v.into_iter().enumerate() {
                    m.set(i, j, s);
                }
            }
        }
        level_isos &= src.dim() == dst.dim() && m.rank() == src.dim() && hom_violation(src, dst, &m).is_none();
        iso.push(m);
    }
    let mut natural = true;
    for l in 0..n {
        for m in 0..n {
            if lp.leq(m, l) {
                let left = iso[m].mul(p.restriction(l, m))?;
                let right = q.restriction(lm[l], lm[m]).mul(&iso[l])?;
                natural &= left == right;
            }
        }
    }
    Ok(PresheafRoundTrip { lattice_iso, level_isos, natural })
}

/// S⁻: the commutator carrier of a semilattice of associative algebras.
pub fn minus_semilattice<C: Bracket + Enumerable>(c: C) -> Result<Commutator<C>> {
    require_semilattice(&c)?;
    let (table, _) = Table::from_algebra(&c)?;
    let report = check_associative(&table, &Plan::exhaustive(table.elements()?, c.field()))?;
    if report.verdict("assoc.associative").map(|v| v.name()) != Some("pass") {
        return Err(Error::Validation("the levels must be associative algebras".into()));
    }
    Ok(Commutator(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, diagonal, matrix_algebra_2, sl2};
    use crate::exactalg::Field;
    use crate::exel::ELCarrier;
    use crate::isv::check_lie_isa;
    use crate::pmaps::PEndCarrier;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn single_algebra_decomposes_to_one_point() {
        let p = Presheaf::single(&diagonal(f2(), 2));
        let dec = decompose(&SFCarrier::new(p.clone())).unwrap();
        assert_eq!(dec.presheaf.base().len(), 1);
        assert!(presheaf_roundtrip(&p).unwrap().passed());
    }

    #[test]
    fn el_of_a_line_has_two_levels() {
        let el = ELCarrier::new(&abelian(f2(), 1)).unwrap();
        let dec = decompose(&el).unwrap();
        assert_eq!(dec.presheaf.base().len(), 2);
        let dims: Vec<usize> = (0..2).map(|l| dec.presheaf.object(l).dim()).collect();
        assert!(dims.contains(&0) && dims.contains(&1));
    }

    #[test]
    fn roundtrips() {
        let pf = Presheaf::partial_functions(f2(), 2);
        let (_, rt) = roundtrip_iso(&SFCarrier::new(pf.clone())).unwrap();
        assert!(rt.passed() && rt.size == 9);
        assert!(presheaf_roundtrip(&pf).unwrap().passed());

        let el = ELCarrier::new(&abelian(f2(), 2)).unwrap();
        let (dec, rt) = roundtrip_iso(&el).unwrap();
        assert!(rt.passed() && rt.size == 11);
        assert_eq!(dec.presheaf.base().len(), 5);

        let proj = Matrix::from_i64(f2(), &[&[1, 0]]);
        let chain = Presheaf::two_chain(&diagonal(f2(), 2), &diagonal(f2(), 1), proj).unwrap();
        assert!(presheaf_roundtrip(&chain).unwrap().passed());
        assert!(roundtrip_iso(&SFCarrier::new(chain)).unwrap().1.passed());
    }

    #[test]
    fn non_semilattices_are_refused() {
        assert!(decompose(&PEndCarrier::new(f2(), 2)).is_err());
    }

    #[test]
    fn minus_of_a_matrix_algebra_level() {
        let f3 = Field::prime(3).unwrap();
        let c = minus_semilattice(SFCarrier::new(Presheaf::single(&matrix_algebra_2(f3)))).unwrap();
        let (t, _) = Table::from_algebra(&c).unwrap();
        let plan = Plan::exhaustive(t.elements().unwrap(), f3);
        assert!(check_lie_isa(&t, &plan).unwrap().passed());
        let report = check_semilattice_of_algebras(&t, &plan, true).unwrap();
        assert_eq!(report.verdict("slat.jacobi_exact").unwrap().name(), "pass");
        assert_eq!(report.verdict("slat.square").unwrap().name(), "pass");
    }

    #[test]
    fn minus_of_commutative_levels_has_idempotent_brackets() {
        let c = minus_semilattice(SFCarrier::new(Presheaf::partial_functions(f2(), 2))).unwrap();
        for x in c.elements().unwrap() {
            for y in c.elements().unwrap() {
                assert!(c.is_idempotent(&c.mul(&x, &y)));
            }
        }
    }

    #[test]
    fn minus_needs_associative_levels() {
        let f3 = Field::prime(3).unwrap();
        assert!(minus_semilattice(SFCarrier::new(Presheaf::single(&sl2(f3)))).is_err());
    }
}

//! Meet semilattices, presheaves of algebras over them, and the disjoint-union carrier S_F.

mod decompose;

pub use decompose::{check_iso, decompose, minus_semilattice, presheaf_roundtrip, roundtrip_iso, Decomposition, PresheafRoundTrip, RoundTrip};

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{hom_violation, Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{vector, Field, Matrix, Scalar, Vector};
use crate::isv::{Bracket, Carrier, Enumerable};

/// A finite meet semilattice stored as its full meet table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilattice {
    labels: Vec<String>,
    meet: Vec<usize>,
    unit: Option<usize>,
}

impl MeetSemilattice {
    pub fn new(labels: Vec<String>, meet: Vec<Vec<usize>>, unit: Option<usize>) -> Result<MeetSemilattice> {
        let n = labels.len();
        if meet.len() != n || meet.iter().any(|r| r.len() != n) || meet.iter().flatten().any(|&m| m >= n) {
            return Err(Error::Validation("meet table must be a square table of element indices".into()));
        }
        let m = |a: usize, b: usize| meet[a][b];
        for a in 0..n {
            if m(a, a) != a {
                return Err(Error::Validation(format!("meet is not idempotent at {}", labels[a])));
            }
            for b in 0..n {
                if m(a, b) != m(b, a) {
                    return Err(Error::Validation(format!("meet is not commutative at ({}, {})", labels[a], labels[b])));
                }
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Validation(format!(
                            "meet is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        if let Some(u) = unit {
            if u >= n || (0..n).any(|a| m(u, a) != a) {
                return Err(Error::Validation("the unit must be the greatest element".into()));
            }
        }
        Ok(MeetSemilattice { labels, meet: meet.concat(), unit })
    }

    /// Subsets of {1, …, k} under intersection, indexed by bitmask; the unit is the full set.
    pub fn subsets(k: usize) -> MeetSemilattice {
        let n = 1usize << k;
        let labels = (0..n)
            .map(|mask| {
                let items: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let meet = (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect();
        MeetSemilattice::new(labels, meet, Some(n - 1)).expect("intersection is a meet")
    }

    /// 0 < 1 < … < k−1 with the top as unit.
    pub fn chain(k: usize) -> MeetSemilattice {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let meet = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
        MeetSemilattice::new(labels, meet, k.checked_sub(1)).expect("min is a meet")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Pairs (λ, μ) with μ < λ and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        (0..n)
            .flat_map(|l| (0..n).map(move |m| (l, m)))
            .filter(|&(l, m)| lt(m, l) && !(0..n).any(|k| lt(m, k) && lt(k, l)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let n = self.len();
        let meet: Vec<Vec<&str>> = (0..n).map(|a| (0..n).map(|b| self.label(self.meet(a, b))).collect()).collect();
        let mut v = json!({ "elements": self.labels, "meet": meet });
        if let Some(u) = self.unit {
            v["unit"] = json!(self.labels[u]);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<MeetSemilattice> {
        let labels: Vec<String> = v["elements"]
            .as_array()
            .ok_or_else(|| Error::Parse("semilattice needs an \"elements\" array".into()))?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| Error::Parse("element labels must be strings".into())))
            .collect::<Result<_>>()?;
        let find = |x: &Value| -> Result<usize> {
            let s = x.as_str().ok_or_else(|| Error::Parse("meet entries must be labels".into()))?;
            labels.iter().position(|l| l == s).ok_or_else(|| Error::Parse(format!("unknown element {s:?}")))
        };
        let meet = v["meet"]
            .as_array()
            .ok_or_else(|| Error::Parse("semilattice needs a \"meet\" table".into()))?
            .iter()
            .map(|row| row.as_array().ok_or_else(|| Error::Parse("meet rows must be arrays".into()))?.iter().map(find).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let unit = match v.get("unit") {
            None | Some(Value::Null) => None,
            Some(u) => Some(find(u)?),
        };
        MeetSemilattice::new(labels, meet, unit)
    }
}

/// Algebras S_λ on a meet semilattice with restriction homomorphisms η_{λ,μ} for λ ≥ μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    base: MeetSemilattice,
    objects: Vec<StructAlgebra>,
    restrictions: Vec<Option<Matrix>>,
}

impl Presheaf {
    /// Identity restrictions may be omitted; every other pair λ > μ must be supplied.
    pub fn new(base: MeetSemilattice, objects: Vec<StructAlgebra>, maps: Vec<(usize, usize, Matrix)>) -> Result<Presheaf> {
        let n = base.len();
        if objects.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: objects.len() });
        }
        let field = objects.first().map(|o| o.field());
        if objects.iter().any(|o| Some(o.field()) != field) {
            return Err(Error::Validation("all objects must share a field".into()));
        }
        let mut restrictions: Vec<Option<Matrix>> = vec![None; n * n];
        for (l, m, mat) in maps {
            if l >= n || m >= n || !base.leq(m, l) {
                return Err(Error::Validation(format!("restriction ({l}, {m}) does not go down the order")));
            }
            if mat.rows() != objects[m].dim() || mat.cols() != objects[l].dim() {
                return Err(Error::DimensionMismatch { expected: objects[m].dim() * objects[l].dim(), got: mat.rows() * mat.cols() });
            }
            if let Some((i, j)) = hom_violation(&objects[l], &objects[m], &mat) {
                return Err(Error::Validation(format!(
                    "restriction {} → {} is not multiplicative on basis pair ({i}, {j})",
                    base.label(l),
                    base.label(m)
                )));
            }
            restrictions[l * n + m] = Some(mat);
        }
        for l in 0..n {
            let id = Matrix::identity(objects[l].field(), objects[l].dim());
            match &restrictions[l * n + l] {
                Some(m) if *m != id => {
                    return Err(Error::Validation(format!("restriction at {} is not the identity", base.label(l))))
                }
                Some(_) => {}
                None => restrictions[l * n + l] = Some(id),
            }
            for m in 0..n {
                if base.leq(m, l) && restrictions[l * n + m].is_none() {
                    return Err(Error::Validation(format!("missing restriction {} → {}", base.label(l), base.label(m))));
                }
            }
        }
        let p = Presheaf { base, objects, restrictions };
        for l in 0..n {
            for m in 0..n {
                for k in 0..n {
                    if p.base.leq(m, l) && p.base.leq(k, m) {
                        let composite = p.restriction(m, k).mul(p.restriction(l, m))?;
                        if composite != *p.restriction(l, k) {
                            return Err(Error::Validation(format!(
                                "functoriality fails on the chain {} ≥ {} ≥ {}",
                                p.base.label(l),
                                p.base.label(m),
                                p.base.label(k)
                            )));
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    /// One algebra on a one-point semilattice.
    pub fn single(alg: &StructAlgebra) -> Presheaf {
        Presheaf::new(MeetSemilattice::chain(1), vec![alg.clone()], vec![]).expect("one point")
    }

    /// top ≥ bottom with S_top → S_bottom given by a homomorphism matrix.
    pub fn two_chain(top: &StructAlgebra, bottom: &StructAlgebra, hom: Matrix) -> Result<Presheaf> {
        Presheaf::new(MeetSemilattice::chain(2), vec![bottom.clone(), top.clone()], vec![(1, 0, hom)])
    }

    /// All partial functions {1..k} → 𝔽: S_U = 𝔽^U with pointwise product, restriction of functions.
    pub fn partial_functions(field: Field, k: usize) -> Presheaf {
        let base = MeetSemilattice::subsets(k);
        let n = base.len();
        let members = |mask: usize| -> Vec<usize> { (0..k).filter(|i| mask >> i & 1 == 1).collect() };
        let objects = (0..n).map(|mask| crate::algebra::diagonal(field, members(mask).len())).collect();
        let mut maps = Vec::new();
        for l in 0..n {
            for m in 0..n {
                if l & m == m && l != m {
                    let (from, to) = (members(l), members(m));
                    let mut mat = Matrix::zeros(field, to.len(), from.len());
                    for (r, i) in to.iter().enumerate() {
                        let c = from.iter().position(|j| j == i).expect("subset");
                        mat.set(r, c, field.one());
                    }
                    maps.push((l, m, mat));
                }
            }
        }
        Presheaf::new(base, objects, maps).expect("restriction of functions is functorial")
    }

    /// Two incomparable points a, b over a bottom, with 𝔽 (zero product) everywhere and identity maps.
    pub fn antichain(field: Field) -> Presheaf {
        let labels = vec!["bottom".to_string(), "a".to_string(), "b".to_string()];
        let meet = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        let base = MeetSemilattice::new(labels, meet, None).expect("antichain with bottom");
        let line = crate::algebra::abelian(field, 1);
        let id = Matrix::identity(field, 1);
        Presheaf::new(base, vec![line.clone(), line.clone(), line], vec![(1, 0, id.clone()), (2, 0, id)])
            .expect("identity maps")
    }

    pub fn base(&self) -> &MeetSemilattice {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.objects[0].field()
    }

    pub fn object(&self, l: usize) -> &StructAlgebra {
        &self.objects[l]
    }

    /// η_{λ,μ}; panics unless λ ≥ μ.
    pub fn restriction(&self, l: usize, m: usize) -> &Matrix {
        self.restrictions[l * self.base.len() + m].as_ref().expect("λ ≥ μ")
    }

    pub fn to_json(&self) -> Value {
        let n = self.base.len();
        let objects: serde_json::Map<String, Value> =
            (0..n).map(|l| (self.base.label(l).to_string(), self.objects[l].to_json())).collect();
        let restrictions: Vec<Value> = (0..n)
            .flat_map(|l| (0..n).map(move |m| (l, m)))
            .filter(|&(l, m)| l != m && self.base.leq(m, l))
            .map(|(l, m)| json!({ "from": self.base.label(l), "to": self.base.label(m), "hom": self.restriction(l, m).to_json() }))
            .collect();
        json!({ "base": self.base.to_json(), "objects": objects, "restrictions": restrictions })
    }

    pub fn from_json(v: &Value, dim_cap: usize) -> Result<Presheaf> {
        let base = MeetSemilattice::from_json(&v["base"])?;
        let objs = v["objects"].as_object().ok_or_else(|| Error::Parse("presheaf needs an \"objects\" map".into()))?;
        let objects = (0..base.len())
            .map(|l| {
                let o = objs.get(base.label(l)).ok_or_else(|| Error::Parse(format!("no object for {}", base.label(l))))?;
                StructAlgebra::from_json(o, dim_cap)
            })
            .collect::<Result<Vec<_>>>()?;
        let label = |x: &Value| -> Result<usize> {
            x.as_str().and_then(|s| base.index_of(s)).ok_or_else(|| Error::Parse(format!("unknown semilattice element {x}")))
        };
        let mut maps = Vec::new();
        for r in v["restrictions"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
            let (l, m) = (label(&r["from"])?, label(&r["to"])?);
            let field = objects[l].field();
            let mat = if objects[m].dim() == 0 {
                Matrix::zeros(field, 0, objects[l].dim())
            } else {
                Matrix::from_json(field, &r["hom"], Some(objects[l].dim()))?
            };
            maps.push((l, m, mat));
        }
        Presheaf::new(base, objects, maps)
    }
}

/// An element x_λ of S_λ inside S_F.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SLElem {
    pub level: usize,
    pub value: Vector,
}

impl fmt::Debug for SLElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", vector::show(&self.value), self.level)
    }
}

/// S_F = ⊔ S_λ with x_ν + x_μ and x_ν x_μ computed in S_{ν∧μ} after restriction.
#[derive(Clone, Debug)]
pub struct SFCarrier {
    presheaf: Arc<Presheaf>,
}

impl SFCarrier {
    pub fn new(presheaf: Presheaf) -> SFCarrier {
        SFCarrier { presheaf: Arc::new(presheaf) }
    }

    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    pub fn elem(&self, level: usize, value: Vector) -> Result<SLElem> {
        if value.len() != self.presheaf.object(level).dim() {
            return Err(Error::DimensionMismatch { expected: self.presheaf.object(level).dim(), got: value.len() });
        }
        Ok(SLElem { level, value })
    }

    /// Both arguments restricted to the meet of their levels.
    fn lower(&self, x: &SLElem, y: &SLElem) -> (usize, Vector, Vector) {
        let p = &self.presheaf;
        let l = p.base.meet(x.level, y.level);
        let down = |e: &SLElem| p.restriction(e.level, l).mul_vec(&e.value).expect("restriction shape");
        (l, down(x), down(y))
    }
}

impl Carrier for SFCarrier {
    type Elem = SLElem;

    fn field(&self) -> Field {
        self.presheaf.field()
    }

    fn add(&self, x: &SLElem, y: &SLElem) -> SLElem {
        let (level, a, b) = self.lower(x, y);
        SLElem { level, value: vector::add(&a, &b) }
    }

    fn neg(&self, x: &SLElem) -> SLElem {
        SLElem { level: x.level, value: vector::neg(&x.value) }
    }

    fn smul(&self, a: &Scalar, x: &SLElem) -> SLElem {
        SLElem { level: x.level, value: vector::scale(a, &x.value) }
    }

    fn show(&self, x: &SLElem) -> Value {
        json!({ "level": self.presheaf.base.label(x.level), "value": vector::to_json(&x.value) })
    }

    fn zero(&self) -> Option<SLElem> {
        self.presheaf.base.unit().map(|u| SLElem { level: u, value: self.presheaf.object(u).zero_vector() })
    }

    fn zero_of(&self, x: &SLElem) -> SLElem {
        SLElem { level: x.level, value: self.presheaf.object(x.level).zero_vector() }
    }

    fn is_idempotent(&self, x: &SLElem) -> bool {
        vector::is_zero(&x.value)
    }
}

impl Bracket for SFCarrier {
    fn mul(&self, x: &SLElem, y: &SLElem) -> SLElem {
        let (level, a, b) = self.lower(x, y);
        SLElem { level, value: self.presheaf.object(level).mul(&a, &b) }
    }
}

impl Enumerable for SFCarrier {
    fn elements(&self) -> Result<Vec<SLElem>> {
        let p = &self.presheaf;
        let mut out = Vec::new();
        for l in 0..p.base.len() {
            for v in vector::all_vectors(p.field(), p.object(l).dim())? {
                out.push(SLElem { level: l, value: v });
            }
        }
        Ok(out)
    }
}

/// Lie if the structure constants allow it, else associative, else general.
pub(crate) fn detect_flavor(field: Field, dim: usize, table: &[Vector]) -> StructAlgebra {
    [Flavor::Lie, Flavor::Associative, Flavor::General]
        .iter()
        .find_map(|&f| StructAlgebra::new(field, dim, table.to_vec(), f).ok())
        .expect("general algebras need no identities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, diagonal};
    use crate::isv::{check_f_inverse, check_lie_isa, check_naisa, check_semilattice_of_algebras, Commutator, Plan};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rejects_non_semilattices() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(MeetSemilattice::new(labels.clone(), vec![vec![0, 1], vec![0, 1]], None).is_err());
        assert!(MeetSemilattice::new(labels, vec![vec![0, 0], vec![0, 1]], Some(0)).is_err());
    }

    #[test]
    fn subsets_cover_relation() {
        let s = MeetSemilattice::subsets(2);
        assert_eq!(s.covers().len(), 4);
        assert_eq!(s.unit(), Some(3));
        assert_eq!(MeetSemilattice::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn functoriality_is_enforced() {
        let base = MeetSemilattice::chain(3);
        let line = abelian(f2(), 1);
        let id = Matrix::identity(f2(), 1);
        let zero = Matrix::zeros(f2(), 1, 1);
        let objs = vec![line.clone(), line.clone(), line];
        let bad = Presheaf::new(base.clone(), objs.clone(), vec![(2, 1, id.clone()), (1, 0, id.clone()), (2, 0, zero)]);
        assert!(bad.is_err());
        assert!(Presheaf::new(base, objs, vec![(2, 1, id.clone()), (1, 0, id.clone()), (2, 0, id)]).is_ok());
    }

    #[test]
    fn partial_functions_carrier() {
        let p = Presheaf::partial_functions(f2(), 2);
        let c = SFCarrier::new(p.clone());
        let elems = c.elements().unwrap();
        assert_eq!(elems.len(), 9);
        let plan = Plan::exhaustive(elems, f2());
        assert!(check_naisa(&c, &plan).unwrap().passed());
        assert!(check_semilattice_of_algebras(&c, &plan, false).unwrap().passed());
        let minus = Commutator(c);
        assert!(check_lie_isa(&minus, &plan).unwrap().passed());
        assert!(check_semilattice_of_algebras(&minus, &plan, true).unwrap().passed());
        assert_eq!(Presheaf::from_json(&p.to_json(), 8).unwrap(), p);
    }

    #[test]
    fn two_chain_adds_through_the_restriction() {
        let (a, b) = (diagonal(f2(), 2), diagonal(f2(), 1));
        let proj = Matrix::from_i64(f2(), &[&[1, 0]]);
        let c = SFCarrier::new(Presheaf::two_chain(&a, &b, proj).unwrap());
        let x = c.elem(1, vector::from_i64(f2(), &[1, 1])).unwrap();
        let y = c.elem(0, vector::from_i64(f2(), &[1])).unwrap();
        assert_eq!(c.add(&x, &y), c.elem(0, vector::from_i64(f2(), &[0])).unwrap());
        assert_eq!(c.zero().unwrap().level, 1);
        let plan = Plan::exhaustive(c.elements().unwrap(), f2());
        assert!(check_semilattice_of_algebras(&c, &plan, false).unwrap().passed());
    }

    #[test]
    fn antichain_presheaf_is_not_f_inverse() {
        let c = SFCarrier::new(Presheaf::antichain(f2()));
        let plan = Plan::exhaustive(c.elements().unwrap(), f2());
        assert!(check_semilattice_of_algebras(&c, &plan, true).unwrap().passed());
        let (report, data) = check_f_inverse(&c).unwrap();
        assert!(!data.is_f_inverse());
        assert_eq!(report.verdict("finv.greatest_in_class").unwrap().name(), "fail");
    }
}

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{derivation_basis, PartialEndo};
use crate::algebra::{Flavor, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{enumerate_subspaces, vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::isv::{
    sample_vector, Axiom, Bracket, Carrier, CheckReport, Enumerable, Plan, Sampler, Slot,
};

pub const DEFAULT_PEND_DIM_CAP: usize = 2;

/// PEnd(𝔽ⁿ) with composition as product.
#[derive(Clone, Debug)]
pub struct PEndCarrier {
    field: Field,
    n: usize,
    dim_cap: usize,
}

impl PEndCarrier {
    pub fn new(field: Field, n: usize) -> PEndCarrier {
        PEndCarrier {
            field,
            n,
            dim_cap: DEFAULT_PEND_DIM_CAP,
        }
    }

    /// Raises the ambient dimension allowed for enumeration.
    pub fn with_dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn ambient_dim(&self) -> usize {
        self.n
    }
}

fn all_matrices(field: Field, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    if cols == 0 {
        return Ok(vec![Matrix::zeros(field, rows, 0)]);
    }
    vector::all_vectors(field, rows * cols)?
        .into_iter()
        .map(|flat| {
            let rs: Vec<Vector> = flat.chunks(cols).map(|c| c.to_vec()).collect();
            Matrix::from_rows(field, cols, &rs)
        })
        .collect()
}

impl Carrier for PEndCarrier {
    type Elem = PartialEndo;
    fn field(&self) -> Field {
        self.field
    }
    fn add(&self, x: &PartialEndo, y: &PartialEndo) -> PartialEndo {
        x.add(y)
    }
    fn neg(&self, x: &PartialEndo) -> PartialEndo {
        x.neg()
    }
    fn smul(&self, a: &Scalar, x: &PartialEndo) -> PartialEndo {
        x.smul(a)
    }
    fn show(&self, x: &PartialEndo) -> Value {
        x.to_json()
    }
    fn zero_of(&self, x: &PartialEndo) -> PartialEndo {
        x.local_zero()
    }
    fn zero(&self) -> Option<PartialEndo> {
        Some(PartialEndo::zero_on(&Subspace::full(self.field(), self.ambient_dim())))
    }
    fn is_idempotent(&self, x: &PartialEndo) -> bool {
        x.is_zero_map()
    }
}

impl Bracket for PEndCarrier {
    fn mul(&self, x: &PartialEndo, y: &PartialEndo) -> PartialEndo {
        x.compose(y)
    }
}

impl Enumerable for PEndCarrier {
    fn elements(&self) -> Result<Vec<PartialEndo>> {
        let mut out = Vec::new();
        for k in enumerate_subspaces(self.field, self.n, self.dim_cap)? {
            for m in all_matrices(self.field, self.n, k.dim())? {
                out.push(PartialEndo::new(k.clone(), m)?);
            }
        }
        Ok(out)
    }
}

/// A random subspace spanned by up to n small random vectors.
pub(crate) fn sample_subspace(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    // Full and zero domains come up often enough to exercise both extremes.
    match rng.gen_range(0..6) {
        0 => Subspace::full(field, n),
        1 => Subspace::zero(field, n),
        _ => {
            let k = rng.gen_range(1..=n.max(1));
            let gens: Vec<Vector> = (0..k).map(|_| sample_vector(field, n, rng)).collect();
            Subspace::span(field, n, &gens).expect("ambient vectors")
        }
    }
}

impl Sampler for PEndCarrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> PartialEndo {
        let dom = sample_subspace(self.field, self.n, rng);
        let imgs: Vec<Vector> = (0..dom.dim())
            .map(|_| sample_vector(self.field, self.n, rng))
            .collect();
        let action = if imgs.is_empty() {
            Matrix::zeros(self.field, self.n, 0)
        } else {
            Matrix::from_cols(self.field, self.n, &imgs).expect("ambient images")
        };
        PartialEndo::new(dom, action).expect("shape")
    }
}

/// Classes of algebras a domain ideal may be required to belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainClass {
    UnitalAssoc,
    SemisimpleLie,
    Idempotent,
}

impl DomainClass {
    pub fn parse(s: &str) -> Result<DomainClass> {
        match s {
            "unital_assoc" => Ok(DomainClass::UnitalAssoc),
            "semisimple_lie" => Ok(DomainClass::SemisimpleLie),
            "idempotent" => Ok(DomainClass::Idempotent),
            _ => Err(Error::Unsupported(format!(
                "domain class {s:?} (expected unital_assoc, semisimple_lie or idempotent)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DomainClass::UnitalAssoc => "unital_assoc",
            DomainClass::SemisimpleLie => "semisimple_lie",
            DomainClass::Idempotent => "idempotent",
        }
    }

    /// Whether the algebra (as a whole) lies in the class. The zero algebra always does.
    pub fn contains(&self, alg: &StructAlgebra) -> Result<bool> {
        match self {
            DomainClass::UnitalAssoc => {
                if alg.flavor() == Flavor::Lie {
                    return Err(Error::Unsupported(
                        "unital_assoc needs an associative algebra".into(),
                    ));
                }
                if alg.flavor() == Flavor::General && !is_associative(alg) {
                    return Ok(false);
                }
                Ok(alg.dim() == 0 || alg.find_unit().is_some())
            }
            DomainClass::SemisimpleLie => {
                if alg.field().characteristic() != 0 {
                    return Err(Error::Unsupported(
                        "semisimple_lie is only decided in characteristic 0".into(),
                    ));
                }
                Ok(alg.dim() == 0 || alg.is_semisimple_lie()?)
            }
            DomainClass::Idempotent => Ok(alg.is_idempotent_algebra()),
        }
    }

    /// Whether the ideal `i` of `base`, as an algebra, lies in the class.
    pub fn contains_ideal(&self, base: &StructAlgebra, i: &Subspace) -> Result<bool> {
        self.contains(&base.restrict_to(i)?)
    }
}

fn is_associative(alg: &StructAlgebra) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (x, y, z) = (
                    alg.basis_vector(i),
                    alg.basis_vector(j),
                    alg.basis_vector(k),
                );
                alg.mul(&alg.mul(&x, &y), &z) == alg.mul(&x, &alg.mul(&y, &z))
            })
        })
    })
}

/// Candidate ideals: all of them over 𝔽_p, and {0, A, A², Z(A)} over ℚ.
pub fn candidate_ideals(base: &StructAlgebra, cap: usize) -> Result<Vec<Subspace>> {
    if base.field().is_finite() {
        return base.ideals(cap);
    }
    let mut out: Vec<Subspace> = Vec::new();
    for s in [
        base.zero_space(),
        base.full_space(),
        base.square(),
        base.annihilator_center(),
    ] {
        if base.is_ideal(&s)? && !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// PDer(A), or PDer_𝒜(A) when a class is given, with the commutator as bracket.
#[derive(Clone, Debug)]
pub struct PDerCarrier {
    base: StructAlgebra,
    class: Option<DomainClass>,
    /// Allowed domains with a basis of the derivations on each.
    domains: Vec<(Subspace, Vec<Matrix>)>,
    /// Sample domains as subalgebras generated by random vectors instead of from `domains`.
    random_domains: bool,
}

impl PDerCarrier {
    /// All partial derivations; domains are the subalgebras (finite fields only).
    pub fn all(base: &StructAlgebra, dim_cap: usize) -> Result<PDerCarrier> {
        let subs = base.subalgebras(dim_cap)?;
        Self::with_domains(base, None, subs)
    }

    /// Partial derivations whose domains are ideals in the class.
    pub fn class(base: &StructAlgebra, class: DomainClass, dim_cap: usize) -> Result<PDerCarrier> {
        if !class.contains(base)? {
            return Err(Error::Validation(format!(
                "base algebra is not in class {}",
                class.name()
            )));
        }
        let mut doms = Vec::new();
        for i in candidate_ideals(base, dim_cap)? {
            if class.contains_ideal(base, &i)? {
                doms.push(i);
            }
        }
        Self::with_domains(base, Some(class), doms)
    }

    /// Partial derivations on an explicit list of subalgebra domains.
    pub fn with_domains(
        base: &StructAlgebra,
        class: Option<DomainClass>,
        domains: Vec<Subspace>,
    ) -> Result<PDerCarrier> {
        let domains = domains
            .into_iter()
            .map(|d| {
                let basis = derivation_basis(base, &d)?;
                Ok((d, basis))
            })
            .collect::<Result<_>>()?;
        Ok(PDerCarrier {
            base: base.clone(),
            class,
            domains,
            random_domains: false,
        })
    }

    /// All partial derivations, for sampling over any field: domains are subalgebras
    /// generated by random vectors, biased towards the whole algebra and {0}.
    pub fn sampled(base: &StructAlgebra) -> Result<PDerCarrier> {
        let mut c = Self::with_domains(base, None, vec![base.full_space(), base.zero_space()])?;
        c.random_domains = true;
        Ok(c)
    }

    pub fn base(&self) -> &StructAlgebra {
        &self.base
    }

    fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn class_name(&self) -> Option<&'static str> {
        self.class.map(|c| c.name())
    }

    pub fn domains(&self) -> impl Iterator<Item = &Subspace> {
        self.domains.iter().map(|(d, _)| d)
    }

    pub fn is_member(&self, phi: &PartialEndo) -> bool {
        self.domains.iter().any(|(d, _)| d == phi.domain())
            && super::leibniz_violation(&self.base, phi).is_none()
    }
}

impl Carrier for PDerCarrier {
    type Elem = PartialEndo;
    fn field(&self) -> Field {
        self.base.field()
    }
    fn add(&self, x: &PartialEndo, y: &PartialEndo) -> PartialEndo {
        x.add(y)
    }
    fn neg(&self, x: &PartialEndo) -> PartialEndo {
        x.neg()
    }
    fn smul(&self, a: &Scalar, x: &PartialEndo) -> PartialEndo {
        x.smul(a)
    }
    fn show(&self, x: &PartialEndo) -> Value {
        x.to_json()
    }
    fn zero_of(&self, x: &PartialEndo) -> PartialEndo {
        x.local_zero()
    }
    fn zero(&self) -> Option<PartialEndo> {
        Some(PartialEndo::zero_on(&Subspace::full(self.field(), self.ambient_dim())))
    }
    fn is_idempotent(&self, x: &PartialEndo) -> bool {
        x.is_zero_map()
    }
}

impl Bracket for PDerCarrier {
    fn mul(&self, x: &PartialEndo, y: &PartialEndo) -> PartialEndo {
        x.commutator(y)
    }
}

impl Enumerable for PDerCarrier {
    fn elements(&self) -> Result<Vec<PartialEndo>> {
        let field = self.base.field();
        let n = self.base.dim();
        let mut out = Vec::new();
        for (d, basis) in &self.domains {
            for coeffs in vector::all_vectors(field, basis.len())? {
                let mut m = Matrix::zeros(field, n, d.dim());
                for (c, b) in coeffs.iter().zip(basis) {
                    m = m.add(&b.scale(c))?;
                }
                out.push(PartialEndo::new(d.clone(), m)?);
            }
        }
        Ok(out)
    }
}

impl Sampler for PDerCarrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> PartialEndo {
        let field = self.base.field();
        let random;
        let (d, basis) = if self.random_domains && rng.gen_range(0..3) == 0 {
            let gens: Vec<Vector> = (0..rng.gen_range(1..=2))
                .map(|_| sample_vector(field, self.base.dim(), rng))
                .collect();
            let d = generated_subalgebra(&self.base, &gens);
            let basis = derivation_basis(&self.base, &d).expect("subalgebra");
            random = (d, basis);
            (&random.0, &random.1)
        } else {
            let (d, b) = &self.domains[rng.gen_range(0..self.domains.len())];
            (d, b)
        };
        let coeffs = sample_vector(field, basis.len(), rng);
        let mut m = Matrix::zeros(field, self.base.dim(), d.dim());
        for (c, b) in coeffs.iter().zip(basis) {
            m = m.add(&b.scale(c)).expect("same shape");
        }
        PartialEndo::new(d.clone(), m).expect("shape")
    }
}

/// The smallest subalgebra containing `gens`.
pub fn generated_subalgebra(base: &StructAlgebra, gens: &[Vector]) -> Subspace {
    let mut s = Subspace::span(base.field(), base.dim(), gens).expect("ambient vectors");
    loop {
        let b = s.basis_vectors();
        let mut next = s.clone();
        for x in &b {
            for y in &b {
                next = next.add_vector(&base.mul(x, y)).expect("ambient");
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// dom(φ₁+φ₂) = K₁∩K₂ = φ₁⁻¹(K₂)∩φ₂⁻¹(K₁) = dom[φ₁,φ₂] for all pairs.
pub fn domain_coincidence<'a>(
    c: &PDerCarrier,
    plan: &Plan<'a, PartialEndo>,
) -> Result<CheckReport> {
    let ax = Axiom::new(
        "pder.domain_coincidence",
        &[("phi1", Slot::Elem), ("phi2", Slot::Elem)],
        |c: &PDerCarrier, a| {
            let (p, q) = (a.e(0), a.e(1));
            let meet = p.domain().intersect(q.domain()).expect("same ambient");
            let pre = p
                .preimage(q.domain())
                .expect("same ambient")
                .intersect(&q.preimage(p.domain()).expect("same ambient"))
                .expect("same ambient");
            c.add(p, q).domain() == &meet && pre == meet && c.mul(p, q).domain() == &meet
        },
    );
    crate::isv::run_axioms(c, "domain_coincidence", plan, &[ax])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal, sl2};
    use crate::isv::{
        check_associative, check_distributivity, check_lie_isa, check_naisa, check_sminus_identity,
        Commutator, Verdict,
    };

    #[test]
    fn pend_f2_dim2() {
        let f2 = Field::prime(2).unwrap();
        let c = PEndCarrier::new(f2, 2);
        let elems = c.elements().unwrap();
        assert_eq!(elems.len(), 29);
        let plan = Plan::exhaustive(elems, f2);
        assert!(check_naisa(&c, &plan).unwrap().passed());
        assert!(check_associative(&c, &plan).unwrap().passed());
        let d = check_distributivity(&c, &plan).unwrap();
        assert_eq!(d.verdict("assoc.right_distributive"), Some(Verdict::Pass));
        assert_eq!(d.verdict("assoc.left_distributive"), Some(Verdict::Fail));
        let minus = Commutator(c.clone());
        assert!(check_lie_isa(&minus, &plan).unwrap().passed());
        assert!(check_sminus_identity(&minus, &plan).unwrap().passed());
    }

    #[test]
    fn unital_class_on_diagonal_f2() {
        let f2 = Field::prime(2).unwrap();
        let c = PDerCarrier::class(&diagonal(f2, 2), DomainClass::UnitalAssoc, 4).unwrap();
        assert_eq!(c.domains().count(), 4);
        let elems = c.elements().unwrap();
        assert_eq!(elems.len(), 4);
        let plan = Plan::exhaustive(elems, f2);
        assert!(domain_coincidence(&c, &plan).unwrap().passed());
    }

    #[test]
    fn semisimple_class_over_q() {
        let q = Field::Rationals;
        let c = PDerCarrier::class(&sl2(q), DomainClass::SemisimpleLie, 4).unwrap();
        assert_eq!(c.domains().count(), 2);
        let plan = Plan::sampled(|rng| c.sample(rng), q, 100, 3);
        assert!(domain_coincidence(&c, &plan).unwrap().passed());
        assert!(DomainClass::SemisimpleLie
            .contains(&sl2(Field::prime(3).unwrap()))
            .is_err());
    }
}

//! β(φ) = (Θ_φ, φ) with Θ_φ(A) = inf φ(A)·ε, from (P_f(L), L) to a partial representation.

use std::collections::HashSet;

use serde_json::{json, Value};

use super::{subspace_lattice, PartialRep, RepMorphism};
use crate::algebra::{abelian, enumerate_homs, hom_violation, AlgebraHom, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{vector, Matrix, Scalar, Subspace};

/// Θ_φ on the subspace lattice of L, in the order of [`subspace_lattice`].
pub fn theta_of(phi: &Matrix, l: &StructAlgebra, target: &PartialRep) -> Result<Vec<usize>> {
    let (_, spaces) = subspace_lattice(l.field(), l.dim())?;
    spaces.iter().map(|a| target.inf_space(&a.image(phi)?)).collect()
}

/// β(φ) for a Lie homomorphism φ: L → H into a representation of H.
pub fn beta(phi: &AlgebraHom, target: &PartialRep) -> Result<RepMorphism> {
    if phi.target != *target.lie() {
        return Err(Error::Validation("φ must land in the algebra of the target representation".into()));
    }
    Ok(RepMorphism { theta: theta_of(&phi.matrix, &phi.source, target)?, phi: phi.matrix.clone() })
}

/// Ē(φ): (P_f(L), L) → (P_f(H), H), A ↦ φ(A).
pub fn subspace_functor(phi: &AlgebraHom) -> Result<RepMorphism> {
    let (s, t) = (&phi.source, &phi.target);
    let (_, src) = subspace_lattice(s.field(), s.dim())?;
    let (_, dst) = subspace_lattice(t.field(), t.dim())?;
    let theta = src
        .iter()
        .map(|a| {
            let img = a.image(&phi.matrix)?;
            Ok(dst.iter().position(|b| *b == img).expect("enumerated"))
        })
        .collect::<Result<_>>()?;
    Ok(RepMorphism { theta, phi: phi.matrix.clone() })
}

/// Ē(ψ) for every Lie endomorphism ψ of `h`.
pub fn subspace_endomorphisms(h: &StructAlgebra, cap: usize) -> Result<Vec<RepMorphism>> {
    enumerate_homs(h, h, cap)?.iter().map(subspace_functor).collect()
}

/// Outcome of enumerating Hom(L, H) and Hom((P_f(L), L), (Π, H)) and comparing them along β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    pub lie_homs: usize,
    pub rep_morphisms: usize,
    /// Every β(φ) is a morphism of partial representations.
    pub beta_valid: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Every morphism (Θ, φ) has Θ(𝔽a) = φ(a)·ε.
    pub line_formula: bool,
    pub source_squares: usize,
    pub source_natural: bool,
    pub target_squares: usize,
    pub target_natural: bool,
}

impl BetaReport {
    pub fn passed(&self) -> bool {
        self.lie_homs == self.rep_morphisms
            && self.beta_valid
            && self.injective
            && self.surjective
            && self.line_formula
            && self.source_natural
            && self.target_natural
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lie_homs": self.lie_homs,
            "rep_morphisms": self.rep_morphisms,
            "beta_is_morphism": self.beta_valid,
            "injective": self.injective,
            "surjective": self.surjective,
            "line_formula": self.line_formula,
            "source_naturality": { "squares": self.source_squares, "commute": self.source_natural },
            "target_naturality": { "squares": self.target_squares, "commute": self.target_natural },
            "bijection": self.passed(),
        })
    }
}

type Key = (Vec<usize>, Vec<Vec<Scalar>>);

fn key(m: &RepMorphism) -> Key {
    (m.theta.clone(), m.phi.col_vectors())
}

/// All morphisms (P_f(L), L) → target, by exhausting pairs (θ table, φ matrix).
fn enumerate_rep_morphisms(src: &PartialRep, target: &PartialRep, cap: u64) -> Result<Vec<RepMorphism>> {
    let (l, h) = (src.lie(), target.lie());
    let field = l.field();
    let matrices = vector::all_vectors(field, l.dim() * h.dim())?;
    let (n_src, n_dst) = (src.lattice().len(), target.lattice().len());
    let thetas = (n_dst as u64).checked_pow(n_src as u32);
    let total = thetas.and_then(|t| t.checked_mul(matrices.len() as u64)).filter(|&t| t <= cap);
    let Some(thetas) = thetas.filter(|_| total.is_some()) else {
        return Err(Error::BoundExceeded(format!(
            "{} matrices × {n_dst}^{n_src} lattice maps exceed the cap {cap}",
            matrices.len()
        )));
    };
    let mut out = Vec::new();
    for flat in &matrices {
        let cols: Vec<Vec<Scalar>> = flat.chunks(h.dim().max(1)).map(<[Scalar]>::to_vec).collect();
        let phi = Matrix::from_cols(field, h.dim(), &cols[..l.dim()])?;
        // The φ-part of the morphism condition does not depend on θ.
        if hom_violation(l, h, &phi).is_some() {
            continue;
        }
        for code in 0..thetas {
            let mut c = code;
            let theta: Vec<usize> = (0..n_src)
                .map(|_| {
                    let t = (c % n_dst as u64) as usize;
                    c /= n_dst as u64;
                    t
                })
                .collect();
            let m = RepMorphism { theta, phi: phi.clone() };
            if m.is_valid(src, target) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Enumerates Hom(L, H) and the morphisms (P_f(L), L) → target, checks that β is a bijection
/// between them, and checks both naturality squares: along Ē(γ) for every Lie homomorphism
/// γ into L from L itself and from the line, and along each supplied morphism out of `target`.
pub fn beta_bijection_check(
    l: &StructAlgebra,
    target: &PartialRep,
    onward: &[(PartialRep, RepMorphism)],
    cap: u64,
) -> Result<BetaReport> {
    let h = target.lie();
    let src = PartialRep::subspaces(l)?;
    let homs = enumerate_homs(l, h, cap as usize)?;
    let betas = homs.iter().map(|phi| beta(phi, target)).collect::<Result<Vec<_>>>()?;
    let beta_valid = betas.iter().all(|b| b.is_valid(&src, target));
    let beta_keys: HashSet<Key> = betas.iter().map(key).collect();
    let injective = beta_keys.len() == betas.len();

    let morphisms = enumerate_rep_morphisms(&src, target, cap)?;
    let surjective = morphisms.iter().all(|m| beta_keys.contains(&key(m)));
    let (_, spaces) = subspace_lattice(l.field(), l.dim())?;
    let line_formula = morphisms.iter().all(|m| {
        src.points().iter().all(|a| {
            let line = spaces.iter().position(|s| *s == Subspace::line(l.field(), a)).expect("enumerated");
            m.theta[line] == target.orbit_of_unit(&m.apply_phi(a))
        })
    });

    let (mut source_squares, mut source_natural) = (0, true);
    let mut sources = vec![l.clone()];
    let line = abelian(l.field(), 1);
    if line != *l {
        sources.push(line);
    }
    for k in &sources {
        for gamma in enumerate_homs(k, l, cap as usize)? {
            let e_gamma = subspace_functor(&gamma)?;
            for phi in &homs {
                let composite = phi.compose(&gamma)?;
                source_natural &= beta(&composite, target)? == beta(phi, target)?.compose(&e_gamma)?;
                source_squares += 1;
            }
        }
    }

    let (mut target_squares, mut target_natural) = (0, true);
    for (dst, m) in onward {
        if let Some(why) = m.violation(target, dst) {
            return Err(Error::Validation(format!("supplied morphism is invalid: {why}")));
        }
        let next = AlgebraHom::new(h.clone(), dst.lie().clone(), m.phi.clone())?;
        for phi in &homs {
            target_natural &= beta(&next.compose(phi)?, dst)? == m.compose(&beta(phi, target)?)?;
            target_squares += 1;
        }
    }
    Ok(BetaReport {
        lie_homs: homs.len(),
        rep_morphisms: morphisms.len(),
        beta_valid,
        injective,
        surjective,
        line_formula,
        source_squares,
        source_natural,
        target_squares,
        target_natural,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{heisenberg, solvable2};
    use crate::exactalg::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn zero_hom_sends_everything_to_the_unit() {
        let (l, h) = (abelian(f3(), 1), heisenberg(f3()));
        let target = PartialRep::subspaces(&h).unwrap();
        let zero = AlgebraHom::new(l.clone(), h.clone(), Matrix::zeros(f3(), 3, 1)).unwrap();
        let b = beta(&zero, &target).unwrap();
        assert!(b.theta.iter().all(|&t| t == target.unit()));
        assert!(b.is_valid(&PartialRep::subspaces(&l).unwrap(), &target));
    }

    #[test]
    fn line_to_line_has_three_of_each() {
        let l = abelian(f3(), 1);
        let target = PartialRep::subspaces(&l).unwrap();
        let onward: Vec<_> = subspace_endomorphisms(&l, 1000).unwrap().into_iter().map(|m| (target.clone(), m)).collect();
        let r = beta_bijection_check(&l, &target, &onward, 1 << 20).unwrap();
        assert_eq!((r.lie_homs, r.rep_morphisms), (3, 3));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.target_squares, 9);
    }

    #[test]
    fn plane_into_solvable() {
        let (l, h) = (abelian(f3(), 2), solvable2(f3()));
        let target = PartialRep::subspaces(&h).unwrap();
        let r = beta_bijection_check(&l, &target, &[], 1 << 22).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.source_squares > 0);
    }

    #[test]
    fn trivial_targets_also_biject() {
        let l = abelian(f3(), 1);
        let target = PartialRep::trivial(&l, crate::semilat::MeetSemilattice::chain(3)).unwrap();
        let r = beta_bijection_check(&l, &target, &[], 1 << 20).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn oversized_enumerations_are_refused() {
        let (l, h) = (abelian(f3(), 2), heisenberg(f3()));
        let target = PartialRep::subspaces(&h).unwrap();
        assert!(matches!(beta_bijection_check(&l, &target, &[], 1 << 20), Err(Error::BoundExceeded(_))));
    }
}

//! Carriers of inverse semivector spaces and semialgebras, and the axiom engine.

mod engine;
mod finverse_check;
mod suites;
mod table;

pub use engine::run as run_axioms;
pub use engine::{
    Arg, Args, Axiom, AxiomResult, CheckReport, Mode, Plan, ScalarPool, Slot, Verdict,
};
pub use finverse_check::{check_f_inverse, sigma_classes, FInverseData};
pub use suites::*;
pub use table::Table;

use std::fmt::Debug;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;

use crate::algebra::StructAlgebra;
use crate::error::Result;
use crate::exactalg::{vector, Field, Scalar, Vector};

/// A commutative inverse semigroup with scalars.
///
/// Order and idempotency are derived from `add` and `neg`: `0_x = x + (−x)` and
/// `x ⪯ y` iff `x = y + 0_x`.
pub trait Carrier: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn field(&self) -> Field;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn smul(&self, a: &Scalar, x: &Self::Elem) -> Self::Elem;
    fn show(&self, x: &Self::Elem) -> serde_json::Value;

    /// The additive identity, when the carrier is a monoid.
    fn zero(&self) -> Option<Self::Elem> {
        None
    }

    fn zero_of(&self, x: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(x))
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        *x == self.add(y, &self.zero_of(x))
    }

    fn is_idempotent(&self, x: &Self::Elem) -> bool {
        self.add(x, x) == *x
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }
}

/// A carrier with a product; in the Lie case the product is the bracket.
pub trait Bracket: Carrier {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

pub trait Enumerable: Carrier {
    fn elements(&self) -> Result<Vec<Self::Elem>>;
}

pub trait Sampler: Carrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl<C: Carrier> Carrier for &C {
    type Elem = C::Elem;
    fn field(&self) -> Field {
        (**self).field()
    }
    fn add(&self, x: &C::Elem, y: &C::Elem) -> C::Elem {
        (**self).add(x, y)
    }
    fn neg(&self, x: &C::Elem) -> C::Elem {
        (**self).neg(x)
    }
    fn smul(&self, a: &Scalar, x: &C::Elem) -> C::Elem {
        (**self).smul(a, x)
    }
    fn show(&self, x: &C::Elem) -> serde_json::Value {
        (**self).show(x)
    }
    fn zero(&self) -> Option<C::Elem> {
        (**self).zero()
    }
    fn zero_of(&self, x: &C::Elem) -> C::Elem {
        (**self).zero_of(x)
    }
    fn leq(&self, x: &C::Elem, y: &C::Elem) -> bool {
        (**self).leq(x, y)
    }
    fn is_idempotent(&self, x: &C::Elem) -> bool {
        (**self).is_idempotent(x)
    }
}

impl<C: Bracket> Bracket for &C {
    fn mul(&self, x: &C::Elem, y: &C::Elem) -> C::Elem {
        (**self).mul(x, y)
    }
}

impl<C: Enumerable> Enumerable for &C {
    fn elements(&self) -> Result<Vec<C::Elem>> {
        (**self).elements()
    }
}

impl<C: Sampler> Sampler for &C {
    fn sample(&self, rng: &mut ChaCha8Rng) -> C::Elem {
        (**self).sample(rng)
    }
}

/// A Lie algebra seen as a Lie inverse semialgebra whose only idempotent is 0.
#[derive(Clone, Debug)]
pub struct VectorCarrier {
    pub alg: StructAlgebra,
}

impl VectorCarrier {
    pub fn new(alg: StructAlgebra) -> VectorCarrier {
        VectorCarrier { alg }
    }
}

impl Carrier for VectorCarrier {
    type Elem = Vector;
    fn field(&self) -> Field {
        self.alg.field()
    }
    fn add(&self, x: &Vector, y: &Vector) -> Vector {
        vector::add(x, y)
    }
    fn neg(&self, x: &Vector) -> Vector {
        vector::neg(x)
    }
    fn smul(&self, a: &Scalar, x: &Vector) -> Vector {
        vector::scale(a, x)
    }
    fn show(&self, x: &Vector) -> serde_json::Value {
        vector::to_json(x)
    }
    fn zero(&self) -> Option<Vector> {
        Some(self.alg.zero_vector())
    }
}

impl Bracket for VectorCarrier {
    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.alg.mul(x, y)
    }
}

impl Enumerable for VectorCarrier {
    fn elements(&self) -> Result<Vec<Vector>> {
        vector::all_vectors(self.alg.field(), self.alg.dim())
    }
}

impl Sampler for VectorCarrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Vector {
        sample_vector(self.alg.field(), self.alg.dim(), rng)
    }
}

/// A random vector with small entries (residues over 𝔽_p, integers in [−3, 3] over ℚ).
pub fn sample_vector(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    use rand::Rng;
    (0..n)
        .map(|_| match field.order() {
            Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
            None => field.from_i64(rng.gen_range(-3..=3)),
        })
        .collect()
}

/// Largest finite vector space enumerated in full by [`vector_plan`].
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Every vector of 𝔽_pⁿ when there are at most [`EXHAUSTIVE_LIMIT`] of them, seeded samples otherwise.
pub fn vector_plan(field: Field, n: usize, trials: usize, seed: u64) -> Result<Plan<'static, Vector>> {
    let small = field.order().and_then(|p| p.checked_pow(n as u32)).is_some_and(|s| s <= EXHAUSTIVE_LIMIT);
    if small {
        Ok(Plan::exhaustive(vector::all_vectors(field, n)?, field))
    } else {
        Ok(Plan::sampled(move |rng| sample_vector(field, n, rng), field, trials, seed))
    }
}

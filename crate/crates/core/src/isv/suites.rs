//! Axiom suites for the various classes of inverse semialgebras.

use super::engine::{run, Axiom, CheckReport, Plan, Slot::*};
use super::{Bracket, Carrier};
use crate::error::Result;
use crate::exactalg::Scalar;

/// x ⪯ y.
fn le<C: Carrier>(c: &C, x: &C::Elem, y: &C::Elem) -> bool {
    c.leq(x, y)
}

pub fn isv_axioms<'a, C: Carrier>() -> Vec<Axiom<'a, C>> {
    vec![
        Axiom::new(
            "isv.add_commutative",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| c.add(a.e(0), a.e(1)) == c.add(a.e(1), a.e(0)),
        ),
        Axiom::new(
            "isv.add_associative",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                c.add(&c.add(a.e(0), a.e(1)), a.e(2)) == c.add(a.e(0), &c.add(a.e(1), a.e(2)))
            },
        ),
        Axiom::new("isv.regular", &[("x", Elem)], |c: &C, a| {
            let x = a.e(0);
            c.add(&c.add(x, &c.neg(x)), x) == *x
        }),
        Axiom::new("isv.negation_is_inverse", &[("x", Elem)], |c: &C, a| {
            let (x, nx) = (a.e(0), c.neg(a.e(0)));
            c.add(&c.add(&nx, x), &nx) == nx
        }),
        Axiom::new(
            "isv.unique_inverse",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                let is_inverse = c.add(&c.add(x, y), x) == *x && c.add(&c.add(y, x), y) == *y;
                !is_inverse || *y == c.neg(x)
            },
        ),
        Axiom::new(
            "isv.field_sum",
            &[("alpha", Scalar), ("beta", Scalar), ("x", Elem)],
            |c: &C, a| {
                let (al, be, x) = (a.s(0), a.s(1), a.e(2));
                c.smul(&(al + be), x) == c.add(&c.smul(al, x), &c.smul(be, x))
            },
        ),
        Axiom::new(
            "isv.vector_sum",
            &[("alpha", Scalar), ("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (al, x, y) = (a.s(0), a.e(1), a.e(2));
                c.smul(al, &c.add(x, y)) == c.add(&c.smul(al, x), &c.smul(al, y))
            },
        ),
        Axiom::new(
            "isv.scalar_assoc",
            &[("alpha", Scalar), ("beta", Scalar), ("x", Elem)],
            |c: &C, a| {
                let (al, be, x) = (a.s(0), a.s(1), a.e(2));
                c.smul(al, &c.smul(be, x)) == c.smul(&(al * be), x)
            },
        ),
        Axiom::new("isv.unit", &[("x", Elem)], |c: &C, a| {
            c.smul(&c.field().one(), a.e(0)) == *a.e(0)
        }),
        Axiom::new(
            "isv.negative_scalar",
            &[("alpha", Scalar), ("x", Elem)],
            |c: &C, a| {
                let (al, x) = (a.s(0), a.e(1));
                let lhs = c.smul(&-al, x);
                lhs == c.smul(al, &c.neg(x)) && lhs == c.neg(&c.smul(al, x))
            },
        )
        .noted("derived"),
        Axiom::new(
            "isv.zero_scalar",
            &[("alpha", NonzeroScalar), ("x", Elem)],
            |c: &C, a| {
                let (al, x) = (a.s(0), a.e(1));
                let z = c.smul(&c.field().zero(), x);
                z == c.zero_of(x) && z == c.zero_of(&c.smul(al, x))
            },
        )
        .noted("derived"),
        Axiom::new(
            "isv.scalar_on_idempotent",
            &[("alpha", Scalar), ("x", Elem)],
            |c: &C, a| {
                let z = c.zero_of(a.e(1));
                c.smul(a.s(0), &z) == z
            },
        )
        .noted("derived"),
    ]
}

pub fn naisa_axioms<'a, C: Bracket>() -> Vec<Axiom<'a, C>> {
    vec![
        Axiom::new(
            "naisa.homogeneous",
            &[("alpha", NonzeroScalar), ("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (al, x, y) = (a.s(0), a.e(1), a.e(2));
                let lhs = c.smul(al, &c.mul(x, y));
                lhs == c.mul(&c.smul(al, x), y) && lhs == c.mul(x, &c.smul(al, y))
            },
        ),
        Axiom::new(
            "naisa.left_superdistributive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                le(
                    c,
                    &c.add(&c.mul(x, y), &c.mul(x, z)),
                    &c.mul(x, &c.add(y, z)),
                )
            },
        ),
        Axiom::new(
            "naisa.right_superdistributive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                le(
                    c,
                    &c.add(&c.mul(x, y), &c.mul(z, y)),
                    &c.mul(&c.add(x, z), y),
                )
            },
        ),
        Axiom::new(
            "naisa.left_idempotent_distributive",
            &[("x", Elem), ("e", Idem), ("z", Elem)],
            |c: &C, a| {
                let (x, e, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(x, &c.add(e, z)) == c.add(&c.mul(x, e), &c.mul(x, z))
            },
        ),
        Axiom::new(
            "naisa.right_idempotent_distributive",
            &[("x", Elem), ("e", Idem), ("z", Elem)],
            |c: &C, a| {
                let (x, e, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(&c.add(x, e), z) == c.add(&c.mul(x, z), &c.mul(e, z))
            },
        ),
        Axiom::new(
            "naisa.idempotent_product_bounds",
            &[("e", Idem), ("f", Idem)],
            |c: &C, a| {
                let (e, f) = (a.e(0), a.e(1));
                let ef = c.mul(e, f);
                le(c, &c.add(e, f), &ef) && le(c, &ef, f)
            },
        ),
        Axiom::new(
            "naisa.idempotent_products_sum",
            &[("e", Idem), ("f", Idem)],
            |c: &C, a| {
                let (e, f) = (a.e(0), a.e(1));
                c.add(&c.mul(e, f), &c.mul(f, e)) == c.add(e, f)
            },
        )
        .noted("derived"),
        Axiom::new(
            "naisa.local_zero_products_idempotent",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                c.is_idempotent(&c.mul(x, &c.zero_of(y)))
                    && c.is_idempotent(&c.mul(&c.zero_of(x), y))
            },
        )
        .noted("derived"),
        Axiom::new(
            "naisa.local_zero_of_product_bounds",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                let (zx, zy) = (c.zero_of(x), c.zero_of(y));
                let zxy = c.zero_of(&c.mul(x, y));
                le(c, &zxy, &c.mul(&zx, y))
                    && le(c, &zxy, &c.mul(x, &zy))
                    && le(c, &zxy, &c.mul(&zx, &zy))
            },
        )
        .noted("derived"),
        Axiom::new(
            "naisa.distributive_defect",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                let (xy, xz) = (c.mul(x, y), c.mul(x, z));
                c.sub(&c.mul(x, &c.add(y, z)), &c.add(&xy, &xz))
                    == c.add(&c.zero_of(&xy), &c.zero_of(&xz))
            },
        )
        .noted("derived"),
        Axiom::new(
            "naisa.zero_scalar_derived",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                let zero = c.field().zero();
                let (ox, oy) = (c.smul(&zero, x), c.smul(&zero, y));
                let lhs = c.smul(&zero, &c.mul(x, y));
                le(c, &lhs, &c.mul(&ox, y))
                    && le(c, &lhs, &c.mul(x, &oy))
                    && le(c, &lhs, &c.mul(&ox, &oy))
            },
        )
        .noted("derived: the zero-scalar form of homogeneity"),
    ]
}

pub fn lie_axioms<'a, C: Bracket>(char2: bool) -> Vec<Axiom<'a, C>> {
    vec![
        Axiom::new(
            "lie.homogeneous",
            &[("alpha", NonzeroScalar), ("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (al, x, y) = (a.s(0), a.e(1), a.e(2));
                c.smul(al, &c.mul(x, y)) == c.mul(&c.smul(al, x), y)
            },
        ),
        Axiom::new(
            "lie.superadditive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                le(
                    c,
                    &c.add(&c.mul(x, y), &c.mul(x, z)),
                    &c.mul(x, &c.add(y, z)),
                )
            },
        ),
        Axiom::new(
            "lie.antisymmetric",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                c.mul(x, y) == c.neg(&c.mul(y, x))
            },
        ),
        Axiom::new(
            "lie.idempotent_additive",
            &[("x", Elem), ("e", Idem), ("z", Elem)],
            |c: &C, a| {
                let (x, e, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(x, &c.add(e, z)) == c.add(&c.mul(x, e), &c.mul(x, z))
            },
        ),
        Axiom::new(
            "lie.jacobi_bounded",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                le(
                    c,
                    &jacobiator(c, x, y, z),
                    &c.zero_of(&c.add(&c.add(x, y), z)),
                )
            },
        ),
        Axiom::new(
            "lie.idempotent_bracket",
            &[("e", Idem), ("f", Idem)],
            |c: &C, a| {
                let (e, f) = (a.e(0), a.e(1));
                c.mul(e, f) == c.add(e, f)
            },
        ),
        Axiom::new("lie.negation", &[("x", Elem), ("y", Elem)], |c: &C, a| {
            let (x, y) = (a.e(0), a.e(1));
            let m = c.neg(&c.mul(x, y));
            c.mul(x, &c.neg(y)) == m && c.mul(&c.neg(x), y) == m
        })
        .noted("derived"),
        Axiom::new(
            "lie.bracket_with_idempotent",
            &[("x", Elem), ("e", Idem)],
            |c: &C, a| c.is_idempotent(&c.mul(a.e(0), a.e(1))),
        )
        .noted("derived"),
        Axiom::new(
            "lie.local_zero_bound",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                let rhs = c.add(
                    &c.add(&c.mul(x, &c.zero_of(y)), &c.mul(&c.zero_of(x), y)),
                    &c.zero_of(&c.add(x, y)),
                );
                le(c, &c.zero_of(&c.mul(x, y)), &rhs)
            },
        )
        .noted("derived"),
        Axiom::new("lie.square_bound", &[("x", Elem)], |c: &C, a| {
            let x = a.e(0);
            le(c, &c.mul(x, x), &c.zero_of(x))
        })
        .noted("derived")
        .skipped_if(char2, "skipped: char 2"),
    ]
}

/// [[x,y],z] + [[y,z],x] + [[z,x],y].
pub fn jacobiator<C: Bracket>(c: &C, x: &C::Elem, y: &C::Elem, z: &C::Elem) -> C::Elem {
    let a = c.mul(&c.mul(x, y), z);
    let b = c.mul(&c.mul(y, z), x);
    let d = c.mul(&c.mul(z, x), y);
    c.add(&c.add(&a, &b), &d)
}

fn is_char2<C: Carrier>(c: &C) -> bool {
    c.field().characteristic() == 2
}

pub fn check_inverse_semivector<'a, C: Carrier>(
    c: &C,
    plan: &Plan<'a, C::Elem>,
) -> Result<CheckReport> {
    run(c, "inverse_semivector_space", plan, &isv_axioms())
}

pub fn check_naisa<'a, C: Bracket>(c: &C, plan: &Plan<'a, C::Elem>) -> Result<CheckReport> {
    let mut axioms = isv_axioms();
    axioms.extend(naisa_axioms());
    run(c, "naisa", plan, &axioms)
}

pub fn check_lie_isa<'a, C: Bracket>(c: &C, plan: &Plan<'a, C::Elem>) -> Result<CheckReport> {
    let mut axioms = isv_axioms();
    axioms.extend(lie_axioms(is_char2(c)));
    run(c, "lie_inverse_semialgebra", plan, &axioms)
}

/// Associativity and the commutator bound 0_{xy−yx} ⪯ 0_x + 0_y.
pub fn check_associative<'a, C: Bracket>(c: &C, plan: &Plan<'a, C::Elem>) -> Result<CheckReport> {
    let axioms = vec![
        Axiom::new(
            "assoc.associative",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(&c.mul(x, y), z) == c.mul(x, &c.mul(y, z))
            },
        ),
        Axiom::new(
            "assoc.lie_inequality",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                le(
                    c,
                    &c.zero_of(&c.sub(&c.mul(x, y), &c.mul(y, x))),
                    &c.add(&c.zero_of(x), &c.zero_of(y)),
                )
            },
        )
        .noted("derived"),
    ];
    run(c, "associative", plan, &axioms)
}

/// Exact distributivity on each side; a verdict per side.
pub fn check_distributivity<'a, C: Bracket>(
    c: &C,
    plan: &Plan<'a, C::Elem>,
) -> Result<CheckReport> {
    let axioms = vec![
        Axiom::new(
            "assoc.right_distributive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(&c.add(x, y), z) == c.add(&c.mul(x, z), &c.mul(y, z))
            },
        ),
        Axiom::new(
            "assoc.left_distributive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(x, &c.add(y, z)) == c.add(&c.mul(x, y), &c.mul(x, z))
            },
        ),
    ];
    run(c, "distributivity", plan, &axioms)
}

/// 0_{[x,y]} = [0_x, y] + [x, 0_y], with the bracket given by `mul`.
pub fn check_sminus_identity<'a, C: Bracket>(
    c: &C,
    plan: &Plan<'a, C::Elem>,
) -> Result<CheckReport> {
    let axioms = vec![Axiom::new(
        "sminus.local_zero_identity",
        &[("x", Elem), ("y", Elem)],
        |c: &C, a| {
            let (x, y) = (a.e(0), a.e(1));
            c.zero_of(&c.mul(x, y)) == c.add(&c.mul(&c.zero_of(x), y), &c.mul(x, &c.zero_of(y)))
        },
    )];
    run(c, "sminus", plan, &axioms)
}

/// [0_x, y] = [x, 0_y] = 0_{x+y}.
pub fn el_local_zero_axiom<'a, C: Bracket>() -> Axiom<'a, C> {
    Axiom::new(
        "el.local_zero_bracket",
        &[("x", Elem), ("y", Elem)],
        |c: &C, a| {
            let (x, y) = (a.e(0), a.e(1));
            let z = c.zero_of(&c.add(x, y));
            c.mul(&c.zero_of(x), y) == z && c.mul(x, &c.zero_of(y)) == z
        },
    )
}

/// The identities of a semilattice of algebras; `lie` adds the exact Jacobi and square laws.
pub fn check_semilattice_of_algebras<'a, C: Bracket>(
    c: &C,
    plan: &Plan<'a, C::Elem>,
    lie: bool,
) -> Result<CheckReport> {
    let mut axioms: Vec<Axiom<'a, C>> = vec![
        Axiom::new(
            "slat.local_zero_product",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                c.zero_of(&c.mul(x, y)) == c.zero_of(&c.add(x, y))
            },
        ),
        Axiom::new(
            "slat.distributive",
            &[("x", Elem), ("y", Elem), ("z", Elem)],
            |c: &C, a| {
                let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                c.mul(x, &c.add(y, z)) == c.add(&c.mul(x, y), &c.mul(x, z))
                    && c.mul(&c.add(x, y), z) == c.add(&c.mul(x, z), &c.mul(y, z))
            },
        )
        .noted("derived"),
        Axiom::new(
            "slat.local_zero_products",
            &[("x", Elem), ("y", Elem)],
            |c: &C, a| {
                let (x, y) = (a.e(0), a.e(1));
                let (zx, zy) = (c.zero_of(x), c.zero_of(y));
                let target = c.add(&zx, &zy);
                [
                    c.mul(x, &zy),
                    c.mul(&zx, y),
                    c.mul(&zx, &zy),
                    c.zero_of(&c.mul(x, y)),
                ]
                .iter()
                .all(|v| *v == target)
            },
        )
        .noted("derived"),
        Axiom::new(
            "slat.idempotent_products",
            &[("e", Idem), ("f", Idem)],
            |c: &C, a| {
                let (e, f) = (a.e(0), a.e(1));
                let s = c.add(e, f);
                c.mul(e, f) == s && c.mul(f, e) == s
            },
        )
        .noted("derived"),
    ];
    if lie {
        let char2 = is_char2(c);
        axioms.push(
            Axiom::new(
                "slat.jacobi_exact",
                &[("x", Elem), ("y", Elem), ("z", Elem)],
                |c: &C, a| {
                    let (x, y, z) = (a.e(0), a.e(1), a.e(2));
                    jacobiator(c, x, y, z) == c.zero_of(&c.add(&c.add(x, y), z))
                },
            )
            .noted("derived"),
        );
        axioms.push(
            Axiom::new("slat.square", &[("x", Elem)], |c: &C, a| {
                c.mul(a.e(0), a.e(0)) == c.zero_of(a.e(0))
            })
            .noted("derived")
            .skipped_if(char2, "skipped: char 2"),
        );
    }
    run(c, "semilattice_of_algebras", plan, &axioms)
}

/// The commutator carrier: same additive structure, product xy − yx.
#[derive(Clone, Debug)]
pub struct Commutator<C>(pub C);

impl<C: Carrier> Carrier for Commutator<C> {
    type Elem = C::Elem;
    fn field(&self) -> crate::exactalg::Field {
        self.0.field()
    }
    fn add(&self, x: &C::Elem, y: &C::Elem) -> C::Elem {
        self.0.add(x, y)
    }
    fn neg(&self, x: &C::Elem) -> C::Elem {
        self.0.neg(x)
    }
    fn smul(&self, a: &Scalar, x: &C::Elem) -> C::Elem {
        self.0.smul(a, x)
    }
    fn show(&self, x: &C::Elem) -> serde_json::Value {
        self.0.show(x)
    }
    fn zero(&self) -> Option<C::Elem> {
        self.0.zero()
    }
    fn zero_of(&self, x: &C::Elem) -> C::Elem {
        self.0.zero_of(x)
    }
    fn leq(&self, x: &C::Elem, y: &C::Elem) -> bool {
        self.0.leq(x, y)
    }
    fn is_idempotent(&self, x: &C::Elem) -> bool {
        self.0.is_idempotent(x)
    }
}

impl<C: Bracket> Bracket for Commutator<C> {
    fn mul(&self, x: &C::Elem, y: &C::Elem) -> C::Elem {
        self.0.sub(&self.0.mul(x, y), &self.0.mul(y, x))
    }
}

impl<C: super::Enumerable> super::Enumerable for Commutator<C> {
    fn elements(&self) -> Result<Vec<C::Elem>> {
        self.0.elements()
    }
}

impl<C: super::Sampler> super::Sampler for Commutator<C> {
    fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> C::Elem {
        self.0.sample(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{heisenberg, sl2};
    use crate::exactalg::Field;
    use crate::isv::{Enumerable, Table, VectorCarrier, Verdict};

    #[test]
    fn lie_algebras_are_lie_inverse_semialgebras() {
        let f3 = Field::prime(3).unwrap();
        let c = VectorCarrier::new(heisenberg(f3));
        let plan = Plan::exhaustive(c.elements().unwrap(), f3);
        let r = check_lie_isa(&c, &plan).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.verdict("lie.square_bound"), Some(Verdict::Pass));

        let q = Field::Rationals;
        let c = VectorCarrier::new(sl2(q));
        let plan = Plan::sampled(|rng| crate::isv::sample_vector(q, 3, rng), q, 200, 7);
        let r = check_lie_isa(&c, &plan).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn char_two_skips_the_square_bound() {
        let f2 = Field::prime(2).unwrap();
        let c = VectorCarrier::new(heisenberg(f2));
        let r = check_lie_isa(&c, &Plan::exhaustive(c.elements().unwrap(), f2)).unwrap();
        let sq = r.result("lie.square_bound").unwrap();
        assert_eq!(sq.verdict, Verdict::Skipped);
        assert_eq!(sq.note.as_deref(), Some("skipped: char 2"));
    }

    #[test]
    fn mutated_scalar_action_is_caught() {
        let f3 = Field::prime(3).unwrap();
        let c = VectorCarrier::new(heisenberg(f3));
        let (t, elems) = Table::from_carrier(&c).unwrap();
        // Send 2·e0 to 0 instead of 2e0.
        let e0 = elems
            .iter()
            .position(|v| *v == crate::exactalg::vector::unit(f3, 3, 0))
            .unwrap() as u32;
        let zero = elems
            .iter()
            .position(|v| crate::exactalg::vector::is_zero(v))
            .unwrap() as u32;
        let bad = t.with_smul_entry(&f3.from_i64(2), e0, zero);
        let r =
            check_inverse_semivector(&bad, &Plan::exhaustive(bad.elements().unwrap(), f3)).unwrap();
        assert!(!r.passed());
        let fs = r.result("isv.field_sum").unwrap();
        assert_eq!(fs.verdict, Verdict::Fail);
        assert!(fs.counterexample.is_some());
        // The exhaustive counterexample is reproducible.
        let again =
            check_inverse_semivector(&bad, &Plan::exhaustive(bad.elements().unwrap(), f3)).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn commutator_of_a_diagonal_algebra_is_abelian() {
        let f2 = Field::prime(2).unwrap();
        let c = Commutator(VectorCarrier::new(crate::algebra::diagonal(f2, 2)));
        let plan = Plan::exhaustive(c.elements().unwrap(), f2);
        assert!(check_lie_isa(&c, &plan).unwrap().passed());
        assert!(check_sminus_identity(&c, &plan).unwrap().passed());
    }
}

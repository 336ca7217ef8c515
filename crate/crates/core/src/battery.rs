//! The acceptance battery: ten fixed criteria, each timed against its own budget.

use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::algebra::{abelian, diagonal, enumerate_homs, heisenberg, solvable2, AlgebraHom, StructAlgebra};
use crate::error::Result;
use crate::exactalg::{vector, Field, Subspace};
use crate::exel::{heisenberg_fixture, sigma_classes_analytic, tau, ELCarrier, ELElem, Premorphism};
use crate::finverse::{
    build_f, carrier_morphism_check, check_partial_rep, f_el_iso, gamma_naturality, gamma_witness, rep_naturality,
    rep_witnesses, subspace_endomorphisms, subspace_functor, beta_bijection_check, PartialRep,
};
use crate::isv::{
    check_associative, check_distributivity, check_inverse_semivector, check_lie_isa, check_naisa,
    el_local_zero_axiom, run_axioms, sigma_classes, CheckReport, Commutator, Enumerable, Plan, Sampler,
    Verdict,
};
use crate::paction::jacobson_fixture;
use crate::pmaps::{domain_coincidence, DomainClass, PDerCarrier, PEndCarrier, PartialEndo};
use crate::semilat::{presheaf_roundtrip, roundtrip_iso, Presheaf, SFCarrier};

/// Default seed for the sampled criterion.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Trials per axiom in the sampled criterion.
pub const SAMPLED_TRIALS: usize = 1000;

/// One criterion's outcome.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    /// `None` when the criterion has no runtime budget.
    pub limit: Option<Duration>,
    pub details: Value,
}

impl Criterion {
    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    /// One line for logs: id, verdict, time and budget.
    pub fn line(&self) -> String {
        let budget = self.limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        format!(
            "criterion {:>2} [{}] {}: {:.2} s{}",
            self.id,
            if self.ok() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            budget
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "verdict": if self.ok() { "pass" } else { "fail" },
            "checks_passed": self.passed,
            "within_limit": self.within_limit(),
            "elapsed_s": self.elapsed.as_secs_f64(),
            "limit_s": self.limit.map(|l| l.as_secs()),
            "details": self.details,
        })
    }
}

fn timed(id: u8, title: &'static str, limit: Option<u64>, body: impl FnOnce() -> Result<(bool, Value)>) -> Criterion {
    let start = Instant::now();
    let (passed, details) = match body() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    Criterion { id, title, passed, elapsed: start.elapsed(), limit: limit.map(Duration::from_secs), details }
}

fn f(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

fn verdicts(r: &CheckReport) -> Value {
    json!(r.results.iter().map(|a| json!({ "axiom": a.axiom, "verdict": a.verdict.name(), "instances": a.instances })).collect::<Vec<_>>())
}

pub fn criterion_1() -> Criterion {
    timed(1, "partial endomorphism laws over F2^2", Some(5), || {
        let c = PEndCarrier::new(f(2), 2);
        let elems = c.elements()?;
        let plan = Plan::exhaustive(elems.clone(), f(2));
        let naisa = check_naisa(&c, &plan)?;
        let assoc = check_associative(&c, &plan)?;
        let dist = check_distributivity(&c, &plan)?;
        let left = dist.result("assoc.left_distributive").cloned();
        let passed = elems.len() == 29
            && naisa.passed()
            && assoc.passed()
            && dist.verdict("assoc.right_distributive") == Some(Verdict::Pass)
            && dist.verdict("assoc.left_distributive") == Some(Verdict::Fail)
            && left.as_ref().and_then(|r| r.counterexample.as_ref()).is_some();
        Ok((
            passed,
            json!({
                "elements": elems.len(),
                "naisa": naisa.passed(),
                "associative": assoc.passed(),
                "right_distributive": dist.verdict("assoc.right_distributive").map(|v| v.name()),
                "left_distributive_counterexample": left.and_then(|r| r.counterexample),
            }),
        ))
    })
}

pub fn criterion_2() -> Criterion {
    timed(2, "E(L) axioms over F2, dim L = 3", Some(30), || {
        let mut passed = true;
        let mut details = Vec::new();
        for (name, l) in [("abelian", abelian(f(2), 3)), ("heisenberg", heisenberg(f(2)))] {
            let (t, elems) = ELCarrier::new(&l)?.table()?;
            let plan = Plan::exhaustive(t.elements()?, f(2));
            let lie = check_lie_isa(&t, &plan)?;
            let zeros = run_axioms(&t, "el", &plan, &[el_local_zero_axiom()])?;
            passed &= elems.len() == 51 && lie.passed() && zeros.passed();
            details.push(json!({ "L": name, "elements": elems.len(), "lie_isa": verdicts(&lie), "local_zero_bracket": zeros.passed() }));
        }
        Ok((passed, json!(details)))
    })
}

pub fn criterion_3(seed: u64) -> Criterion {
    timed(3, "Heisenberg bracket of local zeros over Q and F3", Some(1), || {
        let mut passed = true;
        let mut details = Vec::new();
        for field in [Field::rationals(), f(3)] {
            let fx = heisenberg_fixture(field, 200, seed)?;
            let el = ELCarrier::new(&heisenberg(field))?;
            let plane = Subspace::span(field, 3, &[vector::unit(field, 3, 0), vector::unit(field, 3, 1)])?;
            let exact = fx.lhs.space().is_full()
                && vector::is_zero(fx.lhs.point())
                && *fx.rhs.space() == plane
                && vector::is_zero(fx.rhs.point());
            let fails = fx.semilattice.verdict("slat.local_zero_product") == Some(Verdict::Fail);
            passed &= fx.inequality && exact && fails && fx.witness_matches;
            details.push(json!({ "field": field.to_string(), "fixture": fx.to_json(&el) }));
        }
        Ok((passed, json!(details)))
    })
}

pub fn criterion_4() -> Criterion {
    timed(4, "extension of premorphisms and uniqueness", Some(60), || {
        let l = abelian(f(2), 2);
        let el = ELCarrier::new(&l)?;
        let elems = el.elements()?;
        let all = Plan::exhaustive(elems.clone(), f(2));

        let rho = Premorphism::from_fn(&l, el.clone(), tau);
        let tau_pre = rho.check(&rho.source_plan(0, 0)?)?;
        let identity = elems.iter().all(|x| rho.extend_at(x) == *x);
        let tau_ext = rho.check_extension(&el, &all)?;
        let tau_unique = rho.uniqueness(&el, 4)?;

        let a = diagonal(f(2), 2);
        let target = PDerCarrier::class(&a, DomainClass::UnitalAssoc, 4)?;
        let doms: Vec<Subspace> = target.domains().cloned().collect();
        let by_dim = |d: usize, k: usize| doms.iter().filter(|s| s.dim() == d).nth(k).cloned().expect("four unital ideals");
        let values = vec![
            PartialEndo::zero_on(&by_dim(2, 0)),
            PartialEndo::zero_on(&by_dim(1, 0)),
            PartialEndo::zero_on(&by_dim(1, 1)),
            PartialEndo::zero_on(&by_dim(0, 0)),
        ];
        let sigma = Premorphism::from_table(&l, target, values)?;
        let sigma_pre = sigma.check(&sigma.source_plan(0, 0)?)?;
        let sigma_ext = sigma.check_extension(&el, &all)?;
        let sigma_unique = sigma.uniqueness(&el, 4)?;

        let passed = tau_pre.passed()
            && identity
            && tau_ext.contract.passed()
            && tau_ext.is_homomorphism()
            && tau_unique.matches_extension
            && sigma_pre.passed()
            && sigma_ext.contract.passed()
            && sigma_ext.is_homomorphism()
            && sigma_unique.matches_extension;
        Ok((
            passed,
            json!({
                "tau": { "extension_is_identity": identity, "extension": tau_ext.to_json(), "unique": tau_unique.matches_extension },
                "unital_class": { "premorphism": sigma_pre.passed(), "extension": sigma_ext.to_json(), "unique": sigma_unique.matches_extension, "search_nodes": sigma_unique.nodes },
            }),
        ))
    })
}

pub fn criterion_5() -> Criterion {
    timed(5, "Jacobson partial action at p = 3", Some(10), || {
        let j = jacobson_fixture(3)?;
        let passed = j.dim_l == 9 && j.domain_d.dim() == 3 && j.bracket_domain.is_zero() && j.confirmed();
        Ok((passed, json!({ "verdict": j.verdict(), "fixture": j.to_json() })))
    })
}

pub fn criterion_6() -> Criterion {
    timed(6, "semilattice and presheaf round trips", Some(10), || {
        let pf = Presheaf::partial_functions(f(2), 2);
        let (_, rt_pf) = roundtrip_iso(&SFCarrier::new(pf.clone()))?;
        let back_pf = presheaf_roundtrip(&pf)?;
        let (dec, rt_el) = roundtrip_iso(&ELCarrier::new(&abelian(f(2), 2))?)?;
        let back_el = presheaf_roundtrip(&dec.presheaf)?;
        let passed = rt_pf.passed() && back_pf.passed() && rt_el.passed() && back_el.passed();
        Ok((
            passed,
            json!({
                "partial_functions": { "carrier": rt_pf.to_json(), "presheaf": back_pf.to_json() },
                "el_abelian_2": { "carrier": rt_el.to_json(), "presheaf": back_el.to_json(), "levels": dec.presheaf.base().len() },
            }),
        ))
    })
}

pub fn criterion_7() -> Criterion {
    timed(7, "domain coincidence for unital partial derivations", Some(10), || {
        let c = PDerCarrier::class(&diagonal(f(2), 2), DomainClass::UnitalAssoc, 4)?;
        let domains = c.domains().count();
        let plan = Plan::exhaustive(c.elements()?, f(2));
        let r = domain_coincidence(&c, &plan)?;
        Ok((domains == 4 && r.passed(), json!({ "domains": domains, "report": verdicts(&r) })))
    })
}

fn inclusion(k: &StructAlgebra, l: &StructAlgebra) -> Result<Vec<AlgebraHom>> {
    enumerate_homs(k, l, 1 << 16)
}

pub fn criterion_8() -> Criterion {
    timed(8, "equivalence of partial representations and F-inverse carriers", Some(60), || {
        let line = abelian(f(3), 1);
        let mut passed = true;
        let mut details = Vec::new();
        for (name, l) in [("abelian_1", line.clone()), ("abelian_2", abelian(f(3), 2)), ("solvable_2", solvable2(f(3)))] {
            let r = PartialRep::subspaces(&l)?;
            let rep = check_partial_rep(&r)?;
            let (_, f_report) = build_f(r.clone())?;
            let iso = f_el_iso(&l)?;
            let w = rep_witnesses(&r)?;
            let el = ELCarrier::new(&l)?;
            let g = gamma_witness(&el)?;
            let generic = sigma_classes(&el)?;
            let sigma_el = generic.classes == sigma_classes_analytic(&generic.elements);

            let mut squares = 0;
            let mut natural = true;
            let r_line = PartialRep::subspaces(&line)?;
            let w_line = rep_witnesses(&r_line)?;
            let el_line = ELCarrier::new(&line)?;
            let g_line = gamma_witness(&el_line)?;
            for phi in inclusion(&line, &l)? {
                let m = subspace_functor(&phi)?;
                natural &= rep_naturality(&w_line, &w, &r_line, &r, &m)?.verdict == Verdict::Pass;
                let h = |x: &ELElem| ELElem::new(x.space().image(&phi.matrix).expect("ambient"), phi.apply(x.point())).expect("a ∈ A");
                natural &= carrier_morphism_check(&el_line, &el, h)?.passed();
                natural &= gamma_naturality(&el_line, &el, &g_line, &g, h)?.verdict == Verdict::Pass;
                squares += 1;
            }
            let ok = rep.passed() && f_report.passed() && iso.passed() && w.report.passed() && g.report.passed() && sigma_el && natural;
            passed &= ok;
            details.push(json!({
                "L": name,
                "partial_rep": rep.passed(),
                "f_carrier": verdicts(&f_report),
                "f_iso_el": iso.to_json(),
                "xi_eta": verdicts(&w.report),
                "gamma": verdicts(&g.report),
                "sigma_generic_equals_analytic": sigma_el,
                "naturality": { "morphisms": squares, "commute": natural },
            }));
        }
        Ok((passed, json!(details)))
    })
}

pub fn criterion_9() -> Criterion {
    timed(9, "adjunction bijection and naturality", Some(120), || {
        let line = abelian(f(3), 1);
        let mut passed = true;
        let mut details = Vec::new();
        for (name, h) in [("abelian_1", line.clone()), ("heisenberg", heisenberg(f(3)))] {
            let target = PartialRep::subspaces(&h)?;
            let onward: Vec<_> = subspace_endomorphisms(&h, 1 << 16)?.into_iter().map(|m| (target.clone(), m)).collect();
            let r = beta_bijection_check(&line, &target, &onward, 1 << 22)?;
            passed &= r.passed();
            details.push(json!({ "H": name, "report": r.to_json() }));
        }
        Ok((passed, json!(details)))
    })
}

/// The sampled rational battery, returning the verdict sections for a replay comparison.
pub fn sampled_rational_battery(seed: u64, trials: usize) -> Result<(bool, Value)> {
    let q = Field::rationals();
    let mut passed = true;
    let mut sections = Vec::new();
    let mut record = |name: &str, reports: Vec<CheckReport>| {
        for r in &reports {
            passed &= r.passed();
        }
        sections.push(json!({ "carrier": name, "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>() }));
    };

    let pend = PEndCarrier::new(q, 3);
    let plan = Plan::sampled(|rng| pend.sample(rng), q, trials, seed);
    let minus = Commutator(pend.clone());
    let minus_plan = Plan::sampled(|rng| minus.0.sample(rng), q, trials, seed);
    record("PEnd(Q^3)", vec![check_inverse_semivector(&pend, &plan)?, check_naisa(&pend, &plan)?, check_lie_isa(&minus, &minus_plan)?]);

    let pder = PDerCarrier::sampled(&heisenberg(q))?;
    let plan = Plan::sampled(|rng| pder.sample(rng), q, trials, seed);
    record("PDer(heisenberg(Q))", vec![check_inverse_semivector(&pder, &plan)?, check_naisa(&pder, &plan)?, check_lie_isa(&pder, &plan)?]);

    let el = ELCarrier::new(&heisenberg(q))?;
    let plan = Plan::sampled(|rng| el.sample(rng), q, trials, seed);
    record("E(heisenberg(Q))", vec![check_inverse_semivector(&el, &plan)?, check_naisa(&el, &plan)?, check_lie_isa(&el, &plan)?]);
    Ok((passed, json!(sections)))
}

pub fn criterion_10(seed: u64) -> Criterion {
    timed(10, "sampled rational battery, replay-deterministic", None, || {
        let (passed, first) = sampled_rational_battery(seed, SAMPLED_TRIALS)?;
        let (_, replay) = sampled_rational_battery(seed, SAMPLED_TRIALS)?;
        let deterministic = first == replay;
        let failures: usize = first
            .as_array()
            .into_iter()
            .flatten()
            .flat_map(|s| s["reports"].as_array().cloned().unwrap_or_default())
            .flat_map(|r| r["results"].as_array().cloned().unwrap_or_default())
            .filter(|a| a["verdict"] == "fail")
            .count();
        Ok((passed && deterministic, json!({ "seed": seed, "trials": SAMPLED_TRIALS, "failures": failures, "replay_identical": deterministic, "sections": first })))
    })
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(seed),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(seed),
    ]
}

/// Runs criterion `id` (1–10).
pub fn run_one(id: u8, seed: u64) -> Option<Criterion> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(seed),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(seed),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_json_agree() {
        let c = criterion_7();
        assert!(c.ok(), "{}", c.details);
        assert!(c.line().contains("PASS"));
        assert_eq!(c.to_json()["verdict"], "pass");
    }

    #[test]
    fn errors_become_failures() {
        let c = timed(0, "broken", Some(1), || Err(crate::Error::Validation("boom".into())));
        assert!(!c.ok());
        assert_eq!(c.details["error"], "validation failed: boom");
    }
}

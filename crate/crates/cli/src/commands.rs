use std::path::Path;

use anyhow::{anyhow, Context};
use lisa::algebra::{diagonal, heisenberg, StructAlgebra};
use lisa::battery;
use lisa::exactalg::{vector, Field};
use lisa::exel::{heisenberg_fixture, ELCarrier, ELElem, Premorphism};
use lisa::finverse::{beta_bijection_check, equivalence_witnesses, subspace_endomorphisms, PartialRep, RepMorphism};
use lisa::isv::{
    check_f_inverse, check_inverse_semivector, check_lie_isa, check_naisa, check_semilattice_of_algebras, Bracket,
    Carrier, CheckReport, Enumerable, Plan, Sampler, Table,
};
use lisa::paction::{jacobson_action, jacobson_fixture, PartialAction};
use lisa::pmaps::DomainClass;
use lisa::semilat::{presheaf_roundtrip, roundtrip_iso, Presheaf, SFCarrier};
use serde_json::{json, Value};

use crate::input::{self, malformed, Caps, LoadedCarrier};
use crate::report::{Report, Section, Status, SCHEMA};
use crate::with_carrier;

/// Uniqueness search stops after this many solutions.
const UNIQUENESS_LIMIT: usize = 4;
/// Enumeration bound for the adjunction check.
const ADJUNCTION_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Isv,
    Naisa,
    Lie,
    Semilattice,
    Finverse,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Isv => "isv",
            Suite::Naisa => "naisa",
            Suite::Lie => "lie",
            Suite::Semilattice => "semilattice",
            Suite::Finverse => "finverse",
        }
    }
}

pub struct Ctx {
    pub seed: u64,
    pub trials: usize,
    pub caps: Caps,
}

fn field_of(loaded: &LoadedCarrier) -> Field {
    with_carrier!(loaded, c => c.field())
}

/// Lisa errors that describe a failed check rather than bad input.
fn as_failure(name: &str, r: lisa::Result<CheckReport>) -> anyhow::Result<Section> {
    match r {
        Ok(report) => Ok(Section::check(name, &report)),
        Err(e @ lisa::Error::Validation(_)) => {
            Ok(Section::new(name, Status::Fail, json!({ "error": e.to_string() })).note(e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

fn finite_suite<C: Bracket + Enumerable>(c: &C, suite: Suite, lie: bool) -> anyhow::Result<Section> {
    let (t, elems) = Table::from_algebra(c)?;
    let plan = Plan::exhaustive(t.elements()?, c.field());
    let r = match suite {
        Suite::Isv => check_inverse_semivector(&t, &plan)?,
        Suite::Naisa => check_naisa(&t, &plan)?,
        Suite::Lie => check_lie_isa(&t, &plan)?,
        Suite::Semilattice => check_semilattice_of_algebras(&t, &plan, lie)?,
        Suite::Finverse => check_f_inverse(&t)?.0,
    };
    Ok(Section::check(suite.name(), &r).note(format!("{} elements, exhaustive", elems.len())))
}

fn sampled_suite<C: Bracket + Sampler + Sync>(c: &C, suite: Suite, lie: bool, ctx: &Ctx) -> anyhow::Result<Section> {
    let plan = Plan::sampled(|rng| c.sample(rng), c.field(), ctx.trials, ctx.seed);
    let r = match suite {
        Suite::Isv => check_inverse_semivector(c, &plan)?,
        Suite::Naisa => check_naisa(c, &plan)?,
        Suite::Lie => check_lie_isa(c, &plan)?,
        Suite::Semilattice => check_semilattice_of_algebras(c, &plan, lie)?,
        Suite::Finverse => return Ok(Section::skip(suite.name(), "the F-inverse check needs a finite carrier")),
    };
    Ok(Section::check(suite.name(), &r).note(format!("{} sampled trials, seed {}", ctx.trials, ctx.seed)))
}

pub fn check_algebra(path: &Path, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let alg = input::algebra(&input::read_json(path)?, &ctx.caps, None)?;
    report.push(
        Section::new(
            "algebra",
            Status::Pass,
            json!({ "field": alg.field().to_json(), "dim": alg.dim(), "flavor": alg.flavor().name() }),
        )
        .note(format!("dim {} over {}, flavor {} holds", alg.dim(), alg.field(), alg.flavor().name())),
    );
    let mut classes = json!({
        "commutative": alg.is_commutative(),
        "idempotent": alg.is_idempotent_algebra(),
        "unit": alg.find_unit().map(|u| vector::to_json(&u)),
    });
    if alg.flavor() == lisa::algebra::Flavor::Lie {
        classes["semisimple_lie"] = json!(alg.is_semisimple_lie().ok());
    }
    for class in [DomainClass::UnitalAssoc, DomainClass::SemisimpleLie, DomainClass::Idempotent] {
        classes[format!("in_class_{}", class.name())] = json!(class.contains(&alg).ok());
    }
    let mut s = Section::new("classes", Status::Pass, classes.clone());
    for (k, v) in classes.as_object().expect("object") {
        s.notes.push(format!("{k}: {v}"));
    }
    report.push(s);
    Ok(())
}

pub fn build_el(path: &Path, field: Option<Field>, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let alg = input::algebra(&input::read_json(path)?, &ctx.caps, field)?;
    let el = malformed(ELCarrier::new(&alg).map_err(Into::into))?;
    let el = match ctx.caps.dim_cap {
        Some(cap) => el.with_dim_cap(cap),
        None => el,
    };
    if alg.field().is_finite() {
        let (t, elems) = el.table()?;
        report.push(
            Section::new("carrier", Status::Pass, json!({ "elements": elems.len(), "dim_L": alg.dim() }))
                .note(format!("E(L) has {} elements", elems.len())),
        );
        let plan = Plan::exhaustive(t.elements()?, alg.field());
        report.push(Section::check("lie", &check_lie_isa(&t, &plan)?));
        let (finv, data) = check_f_inverse(&t)?;
        report.push(Section::check("finverse", &finv).note(format!("{} sigma classes", data.classes.len())));
    } else {
        report.push(Section::new("carrier", Status::Pass, json!({ "elements": null, "dim_L": alg.dim() })).note("infinite carrier, sampling"));
        report.push(sampled_suite(&el, Suite::Lie, true, ctx)?);
        report.push(Section::skip("finverse", "the F-inverse check needs a finite carrier"));
    }
    Ok(())
}

pub fn check_carrier(path: &Path, suite: Suite, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let loaded = input::carrier(&input::read_json(path)?, &ctx.caps)?;
    let lie = loaded.lie();
    let section = if field_of(&loaded).is_finite() {
        with_carrier!(&loaded, c => finite_suite(c, suite, lie))?
    } else {
        match &loaded {
            LoadedCarrier::PEnd(c) => sampled_suite(c, suite, lie, ctx)?,
            LoadedCarrier::PEndCommutator(c) => sampled_suite(c, suite, lie, ctx)?,
            LoadedCarrier::PDer(c) => sampled_suite(c, suite, lie, ctx)?,
            LoadedCarrier::El(c) => sampled_suite(c, suite, lie, ctx)?,
            other => return malformed(Err(anyhow!("carrier {} needs a finite field", other.kind()))),
        }
    };
    report.push(section.note(format!("carrier {}", loaded.kind())));
    Ok(())
}

fn extension_sections<T>(rho: &Premorphism<T>, expected: Option<bool>, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()>
where
    T: Bracket + Enumerable + Clone + Send + Sync + 'static,
{
    report.push(Section::check("premorphism", &rho.check(&rho.source_plan(ctx.trials, ctx.seed)?)?));
    let el = ELCarrier::new(rho.source())?;
    let plan = if rho.field().is_finite() {
        Plan::exhaustive(el.elements()?, rho.field())
    } else {
        Plan::sampled(|rng| el.sample(rng), rho.field(), ctx.trials, ctx.seed)
    };
    let ext = rho.check_extension(&el, &plan)?;
    report.push(Section::check("extension.agrees_on_tau", &ext.contract));
    let status = Status::against(ext.is_homomorphism(), expected);
    let mut s = Section::new("extension.homomorphism", status, ext.homomorphism.to_json());
    s.notes.push(format!("homomorphism: {}", status.name()));
    for f in ext.homomorphism.failures() {
        s.notes.push(format!("{} fails", f.axiom));
    }
    report.push(s);
    match rho.uniqueness(&el, UNIQUENESS_LIMIT) {
        Ok(u) => {
            let r = u.to_result();
            report.push(
                Section::new("extension.unique", Status::of(u.matches_extension), r.to_json())
                    .note(format!("{} linear maps through tau", u.solutions)),
            );
        }
        Err(e @ (lisa::Error::BoundExceeded(_) | lisa::Error::InfiniteField)) => {
            report.push(Section::skip("extension.unique", &format!("uniqueness search not run: {e}")));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn extend(path: &Path, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let v = input::read_json(path)?;
    let expected = v.get("expect_homomorphism").and_then(Value::as_bool);
    match v.get("premorphism").and_then(Value::as_str) {
        Some("partial_action") => {
            let pa = malformed(PartialAction::from_json(&v, ctx.caps.algebra()).map_err(Into::into))?;
            extension_sections(&pa.premorphism(), expected, ctx, report)
        }
        Some("el") => {
            let rho = malformed(el_premorphism(&v, &ctx.caps))?;
            extension_sections(&rho, expected, ctx, report)
        }
        other => malformed(Err(anyhow!("\"premorphism\" must be \"partial_action\" or \"el\", got {other:?}"))),
    }
}

/// {"L", "target", "entries": [{"x", "value": {"space", "point"}}]}: a premorphism L → E(target).
fn el_premorphism(v: &Value, caps: &Caps) -> anyhow::Result<Premorphism<ELCarrier>> {
    let l = input::algebra(&v["L"], caps, None)?;
    let target = input::algebra(&v["target"], caps, None)?;
    let field = l.field();
    let size = vector::all_vectors(field, l.dim())?.len();
    let mut values: Vec<Option<ELElem>> = vec![None; size];
    for e in v["entries"].as_array().ok_or_else(|| anyhow!("premorphism needs an \"entries\" array"))? {
        let x = vector::from_json(field, &e["x"])?;
        if x.len() != l.dim() {
            return Err(anyhow!("entry {} has the wrong length", vector::show(&x)));
        }
        values[vector::index_of(&x)] = Some(ELElem::from_json(field, &e["value"])?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| anyhow!("no entry for {}", vector::show(&vector::vector_at(field, l.dim(), i)))))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Premorphism::from_table(&l, ELCarrier::new(&target)?, values)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fixture {
    Heisenberg,
    Jacobson,
    IdempotentAction,
    PartialFunctions,
}

fn write_json(path: &Path, v: &Value) -> anyhow::Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn with_schema(mut v: Value, extra: Value) -> Value {
    v["schema"] = json!(SCHEMA);
    for (k, x) in extra.as_object().expect("object") {
        v[k] = x.clone();
    }
    v
}

pub fn fixture(which: Fixture, p: u64, emit: Option<&Path>, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let f2 = Field::prime(2)?;
    match which {
        Fixture::Heisenberg => {
            for field in [Field::rationals(), Field::prime(3)?] {
                let fx = heisenberg_fixture(field, ctx.trials, ctx.seed)?;
                let body = fx.to_json(&ELCarrier::new(&heisenberg(field))?);
                let verdict = body["verdict"].as_str().unwrap_or_default().to_string();
                let s = Section::new(format!("heisenberg over {field}"), Status::of(fx.inequality && fx.witness_matches), body);
                report.push(s.note(verdict).note(format!("semilattice check fails on (tau a, tau b): {}", fx.witness_matches)));
            }
            if let Some(path) = emit {
                write_json(path, &with_schema(json!({}), json!({ "algebra": heisenberg(Field::prime(3)?).to_json() })))?;
            }
        }
        Fixture::Jacobson => {
            let j = jacobson_fixture(p)?;
            let s = Section::new(format!("jacobson p = {p}"), Status::of(j.confirmed()), j.to_json())
                .note(j.verdict())
                .note(format!("dim L = {}, dim I = {}, dim I_d = {}, bracket domain dim = {}", j.dim_l, j.dim_ideal, j.domain_d.dim(), j.bracket_domain.dim()));
            report.push(s);
            if let Some(path) = emit {
                let v = jacobson_action(p)?.to_json()?;
                write_json(path, &with_schema(v, json!({ "premorphism": "partial_action", "expect_homomorphism": false })))?;
            }
        }
        Fixture::IdempotentAction => {
            let pa = PartialAction::idempotent_example(&heisenberg(f2), &diagonal(f2, 2))?;
            let plan = pa.plan(0, 0)?;
            report.push(Section::check("partial_action", &pa.check(&plan)?));
            report.push(Section::check("definition", &pa.check_definition(&plan)?));
            report.push(Section::check("strong", &pa.check_strong(&plan)?));
            let global = pa.is_global(&plan)?;
            report.push(Section::new("not_global", Status::of(!global), json!({ "global": global })).note(format!("global: {global}")));
            extension_sections(&pa.premorphism(), None, ctx, report)?;
            if let Some(path) = emit {
                write_json(path, &with_schema(pa.to_json()?, json!({ "premorphism": "partial_action" })))?;
            }
        }
        Fixture::PartialFunctions => {
            let pf = Presheaf::partial_functions(f2, 2);
            let (dec, rt) = roundtrip_iso(&SFCarrier::new(pf.clone()))?;
            report.push(
                Section::new("carrier_roundtrip", Status::of(rt.passed()), rt.to_json())
                    .note(format!("{} elements, {} levels", rt.size, dec.presheaf.base().len())),
            );
            let back = presheaf_roundtrip(&pf)?;
            report.push(Section::new("presheaf_roundtrip", Status::of(back.passed()), back.to_json()));
            if let Some(path) = emit {
                write_json(path, &with_schema(json!({}), json!({ "carrier": "semilattice", "presheaf": pf.to_json() })))?;
            }
        }
    }
    Ok(())
}

pub fn verify_equivalence(rep: &Path, carrier: &Path, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let r = input::partial_rep(&input::read_json(rep)?, &ctx.caps)?;
    let loaded = input::carrier(&input::read_json(carrier)?, &ctx.caps)?;
    let section = with_carrier!(&loaded, c => as_failure("equivalence", equivalence_witnesses(&r, c)))?;
    report.push(section.note(format!("carrier {}", loaded.kind())));
    Ok(())
}

pub fn verify_adjunction(l: &Path, rep: &Path, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let l: StructAlgebra = input::algebra(&input::read_json(l)?, &ctx.caps, None)?;
    let r = input::partial_rep(&input::read_json(rep)?, &ctx.caps)?;
    if l.field() != r.field() {
        return malformed(Err(anyhow!("L is over {} but the representation is over {}", l.field(), r.field())));
    }
    // Onward morphisms: the subspace functor on Lie endomorphisms when the target is a subspace
    // representation, otherwise the identity alone.
    let onward: Vec<(PartialRep, RepMorphism)> = if PartialRep::subspaces(r.lie())? == r {
        subspace_endomorphisms(r.lie(), ADJUNCTION_CAP as usize)?.into_iter().map(|m| (r.clone(), m)).collect()
    } else {
        vec![(r.clone(), RepMorphism::identity(&r))]
    };
    let b = beta_bijection_check(&l, &r, &onward, ADJUNCTION_CAP)?;
    report.push(
        Section::new("adjunction", Status::of(b.passed()), b.to_json())
            .note(format!("{} Lie homomorphisms, {} representation morphisms", b.lie_homs, b.rep_morphisms))
            .note(format!("naturality squares: {} source, {} target", b.source_squares, b.target_squares)),
    );
    Ok(())
}

pub fn suite(only: Option<u8>, ctx: &Ctx, report: &mut Report) -> anyhow::Result<()> {
    let results = match only {
        Some(id) => vec![battery::run_one(id, ctx.seed).ok_or_else(|| input::Malformed(anyhow!("no criterion {id} (expected 1 to 10)")))?],
        None => battery::run_all(ctx.seed),
    };
    for c in results {
        report.push(Section::new(format!("criterion {}", c.id), Status::of(c.ok()), c.to_json()).note(c.line()));
    }
    Ok(())
}

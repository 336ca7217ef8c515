//! Quantified identity checking over finite or sampled carriers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::Carrier;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};

/// What a quantified variable ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Elem,
    Idem,
    Scalar,
    NonzeroScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg<E> {
    Elem(E),
    Scalar(Scalar),
}

/// The values bound to an axiom's slots for one instance.
pub struct Args<'a, E>(&'a [&'a Arg<E>]);

impl<'a, E> Args<'a, E> {
    pub fn e(&self, i: usize) -> &'a E {
        match self.0[i] {
            Arg::Elem(e) => e,
            Arg::Scalar(_) => panic!("slot {i} holds a scalar"),
        }
    }

    pub fn s(&self, i: usize) -> &'a Scalar {
        match self.0[i] {
            Arg::Scalar(s) => s,
            Arg::Elem(_) => panic!("slot {i} holds an element"),
        }
    }
}

type Pred<'a, C> = Box<dyn Fn(&C, &Args<<C as Carrier>::Elem>) -> bool + Sync + Send + 'a>;

/// A universally quantified identity: for all slot values, `pred` holds.
pub struct Axiom<'a, C: Carrier> {
    pub id: String,
    pub slots: Vec<(&'static str, Slot)>,
    pred: Pred<'a, C>,
    skip: Option<String>,
    note: Option<String>,
}

impl<'a, C: Carrier> Axiom<'a, C> {
    pub fn new(
        id: impl Into<String>,
        slots: &[(&'static str, Slot)],
        pred: impl Fn(&C, &Args<C::Elem>) -> bool + Sync + Send + 'a,
    ) -> Self {
        Axiom {
            id: id.into(),
            slots: slots.to_vec(),
            pred: Box::new(pred),
            skip: None,
            note: None,
        }
    }

    pub fn skipped_if(mut self, cond: bool, reason: &str) -> Self {
        if cond {
            self.skip = Some(reason.to_string());
        }
        self
    }

    pub fn noted(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

impl Mode {
    pub fn to_json(&self) -> Value {
        match self {
            Mode::Exhaustive => json!("exhaustive"),
            Mode::Sampled { trials, seed } => {
                json!({ "kind": "sampled", "trials": trials, "seed": seed })
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Sampled { trials, seed } => format!("sampled(trials={trials}, seed={seed})"),
        }
    }
}

/// Scalars drawn for scalar slots.
#[derive(Clone, Debug)]
pub enum ScalarPool {
    /// Every element of a prime field.
    Finite(Vec<Scalar>),
    /// Fractions n/d with |n| ≤ num_bound, 1 ≤ d ≤ den_bound.
    Rational { num_bound: i64, den_bound: i64 },
}

impl ScalarPool {
    pub fn for_field(field: Field) -> ScalarPool {
        match field.elements() {
            Ok(all) => ScalarPool::Finite(all),
            Err(_) => ScalarPool::Rational {
                num_bound: 7,
                den_bound: 7,
            },
        }
    }

    fn exhaustive(&self, nonzero: bool) -> Result<Vec<Scalar>> {
        match self {
            ScalarPool::Finite(all) => Ok(all
                .iter()
                .filter(|s| !nonzero || !s.is_zero())
                .cloned()
                .collect()),
            ScalarPool::Rational { .. } => Err(Error::InfiniteField),
        }
    }

    /// Fixed values tried on the first trials: 0, 1, −1, 2 (nonzero slots: 1, −1, 2, 1/2).
    fn special(&self, nonzero: bool, t: usize) -> Option<Scalar> {
        let ScalarPool::Rational { .. } = self else {
            return None;
        };
        let q = Field::Rationals;
        let list = if nonzero {
            [
                q.from_i64(1),
                q.from_i64(-1),
                q.from_i64(2),
                q.from_ratio(1, 2).expect("nonzero"),
            ]
        } else {
            [q.from_i64(0), q.from_i64(1), q.from_i64(-1), q.from_i64(2)]
        };
        list.get(t).cloned()
    }

    fn sample(&self, nonzero: bool, t: usize, rng: &mut ChaCha8Rng) -> Scalar {
        if let Some(s) = self.special(nonzero, t) {
            return s;
        }
        match self {
            ScalarPool::Finite(all) => {
                let lo = usize::from(nonzero);
                all[rng.gen_range(lo..all.len())].clone()
            }
            ScalarPool::Rational {
                num_bound,
                den_bound,
            } => loop {
                let n = rng.gen_range(-num_bound..=*num_bound);
                let d = rng.gen_range(1..=*den_bound);
                if nonzero && n == 0 {
                    continue;
                }
                break Field::Rationals.from_ratio(n, d).expect("d ≥ 1");
            },
        }
    }
}

type SampleFn<'a, E> = Box<dyn Fn(&mut ChaCha8Rng) -> E + Sync + Send + 'a>;

enum Population<'a, E> {
    Finite(Vec<E>),
    Sampled(SampleFn<'a, E>),
}

/// Where slot values come from, and how many instances to try.
pub struct Plan<'a, E> {
    population: Population<'a, E>,
    mode: Mode,
    scalars: ScalarPool,
    pins: Vec<(String, Vec<Arg<E>>)>,
}

impl<'a, E: Clone + Send + Sync> Plan<'a, E> {
    /// Every instance over a finite carrier and a prime field.
    pub fn exhaustive(elements: Vec<E>, field: Field) -> Plan<'a, E> {
        Plan {
            population: Population::Finite(elements),
            mode: Mode::Exhaustive,
            scalars: ScalarPool::for_field(field),
            pins: Vec::new(),
        }
    }

    pub fn sampled(
        sampler: impl Fn(&mut ChaCha8Rng) -> E + Sync + Send + 'a,
        field: Field,
        trials: usize,
        seed: u64,
    ) -> Plan<'a, E> {
        Plan {
            population: Population::Sampled(Box::new(sampler)),
            mode: Mode::Sampled { trials, seed },
            scalars: ScalarPool::for_field(field),
            pins: Vec::new(),
        }
    }

    /// Random instances drawn from a finite list.
    pub fn sampled_from(elements: Vec<E>, field: Field, trials: usize, seed: u64) -> Plan<'a, E> {
        Plan {
            population: Population::Finite(elements),
            mode: Mode::Sampled { trials, seed },
            scalars: ScalarPool::for_field(field),
            pins: Vec::new(),
        }
    }

    pub fn with_scalars(mut self, pool: ScalarPool) -> Self {
        self.scalars = pool;
        self
    }

    /// An instance tried before all others for the named axiom.
    pub fn pin(mut self, axiom: &str, args: Vec<Arg<E>>) -> Self {
        self.pins.push((axiom.to_string(), args));
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn finite_elements(&self) -> Option<&[E]> {
        match &self.population {
            Population::Finite(v) => Some(v),
            Population::Sampled(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomResult {
    pub axiom: String,
    pub mode: String,
    pub verdict: Verdict,
    pub instances: u64,
    pub counterexample: Option<Value>,
    pub note: Option<String>,
}

impl AxiomResult {
    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.axiom,
            "mode": self.mode,
            "verdict": self.verdict.name(),
            "instances": self.instances,
            "counterexample": self.counterexample,
            "note": self.note,
        })
    }

    /// A result computed outside the engine (e.g. a structural property).
    pub fn custom(
        axiom: &str,
        mode: Mode,
        ok: bool,
        instances: u64,
        counterexample: Option<Value>,
    ) -> AxiomResult {
        AxiomResult {
            axiom: axiom.to_string(),
            mode: mode.label(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            instances,
            counterexample: if ok { None } else { counterexample },
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub suite: String,
    pub mode: Mode,
    pub results: Vec<AxiomResult>,
}

impl CheckReport {
    pub fn new(suite: &str, mode: Mode) -> CheckReport {
        CheckReport {
            suite: suite.to_string(),
            mode,
            results: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn verdict(&self, axiom: &str) -> Option<Verdict> {
        self.result(axiom).map(|r| r.verdict)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect()
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.results.extend(other.results);
    }

    pub fn push(&mut self, r: AxiomResult) {
        self.results.push(r);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "mode": self.mode.to_json(),
            "passed": self.passed(),
            "results": self.results.iter().map(AxiomResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Stable 64-bit FNV-1a, used to derive per-axiom seeds.
fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn describe<C: Carrier>(c: &C, slots: &[(&'static str, Slot)], args: &[&Arg<C::Elem>]) -> Value {
    let mut m = serde_json::Map::new();
    for ((name, _), a) in slots.iter().zip(args) {
        let v = match a {
            Arg::Elem(e) => c.show(e),
            Arg::Scalar(s) => Value::String(s.to_string()),
        };
        m.insert((*name).to_string(), v);
    }
    Value::Object(m)
}

/// Runs every axiom under the plan. The first counterexample of an exhaustive run is
/// the least instance in slot-lexicographic order.
pub fn run<'a, C: Carrier>(
    c: &C,
    suite: &str,
    plan: &Plan<'a, C::Elem>,
    axioms: &[Axiom<'a, C>],
) -> Result<CheckReport> {
    let pools = match (&plan.population, plan.mode) {
        (Population::Finite(elems), Mode::Exhaustive) => {
            let idems: Vec<Arg<C::Elem>> = elems
                .iter()
                .filter(|e| c.is_idempotent(e))
                .cloned()
                .map(Arg::Elem)
                .collect();
            let elems: Vec<Arg<C::Elem>> = elems.iter().cloned().map(Arg::Elem).collect();
            let sc: Vec<Arg<C::Elem>> = plan
                .scalars
                .exhaustive(false)?
                .into_iter()
                .map(Arg::Scalar)
                .collect();
            let nz: Vec<Arg<C::Elem>> = plan
                .scalars
                .exhaustive(true)?
                .into_iter()
                .map(Arg::Scalar)
                .collect();
            Some([elems, idems, sc, nz])
        }
        (Population::Sampled(_), Mode::Exhaustive) => {
            return Err(Error::Unsupported(
                "exhaustive mode needs a finite population".into(),
            ))
        }
        _ => None,
    };
    let results: Vec<AxiomResult> = axioms
        .par_iter()
        .map(|ax| {
            let base = AxiomResult {
                axiom: ax.id.clone(),
                mode: plan.mode.label(),
                verdict: Verdict::Pass,
                instances: 0,
                counterexample: None,
                note: ax.note.clone(),
            };
            if let Some(reason) = &ax.skip {
                return AxiomResult {
                    verdict: Verdict::Skipped,
                    note: Some(reason.clone()),
                    ..base
                };
            }
            for (id, args) in &plan.pins {
                if *id == ax.id && args.len() == ax.slots.len() {
                    let refs: Vec<&Arg<C::Elem>> = args.iter().collect();
                    if !(ax.pred)(c, &Args(&refs)) {
                        return AxiomResult {
                            verdict: Verdict::Fail,
                            instances: 1,
                            counterexample: Some(describe(c, &ax.slots, &refs)),
                            ..base
                        };
                    }
                }
            }
            match &pools {
                Some(pools) => run_exhaustive(c, ax, pools, base),
                None => run_sampled(c, ax, plan, base),
            }
        })
        .collect();
    Ok(CheckReport {
        suite: suite.to_string(),
        mode: plan.mode,
        results,
    })
}

fn pool_index(slot: Slot) -> usize {
    match slot {
        Slot::Elem => 0,
        Slot::Idem => 1,
        Slot::Scalar => 2,
        Slot::NonzeroScalar => 3,
    }
}

fn decode<'p, E>(
    mut i: u64,
    sizes: &[usize],
    slots: &[(&'static str, Slot)],
    pools: &'p [Vec<Arg<E>>; 4],
    buf: &mut Vec<&'p Arg<E>>,
) {
    buf.clear();
    for k in (0..sizes.len()).rev() {
        let s = sizes[k] as u64;
        buf.push(&pools[pool_index(slots[k].1)][(i % s) as usize]);
        i /= s;
    }
    buf.reverse();
}

fn run_exhaustive<C: Carrier>(
    c: &C,
    ax: &Axiom<'_, C>,
    pools: &[Vec<Arg<C::Elem>>; 4],
    base: AxiomResult,
) -> AxiomResult {
    let sizes: Vec<usize> = ax
        .slots
        .iter()
        .map(|(_, s)| pools[pool_index(*s)].len())
        .collect();
    let total: u64 = sizes.iter().map(|&s| s as u64).product();
    let failure = (0..total)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            decode(i, &sizes, &ax.slots, pools, buf);
            (i, (ax.pred)(c, &Args(buf)))
        })
        .find_first(|(_, ok)| !ok);
    match failure {
        None => AxiomResult {
            instances: total,
            ..base
        },
        Some((i, _)) => {
            let mut buf = Vec::new();
            decode(i, &sizes, &ax.slots, pools, &mut buf);
            AxiomResult {
                verdict: Verdict::Fail,
                instances: i + 1,
                counterexample: Some(describe(c, &ax.slots, &buf)),
                ..base
            }
        }
    }
}

fn run_sampled<C: Carrier>(
    c: &C,
    ax: &Axiom<'_, C>,
    plan: &Plan<'_, C::Elem>,
    base: AxiomResult,
) -> AxiomResult {
    let Mode::Sampled { trials, seed } = plan.mode else {
        unreachable!("sampled runner in exhaustive mode")
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&ax.id));
    let draw = |rng: &mut ChaCha8Rng| -> C::Elem {
        match &plan.population {
            Population::Finite(v) => v[rng.gen_range(0..v.len())].clone(),
            Population::Sampled(f) => f(rng),
        }
    };
    for t in 0..trials {
        let args: Vec<Arg<C::Elem>> = ax
            .slots
            .iter()
            .map(|(_, slot)| match slot {
                Slot::Elem => Arg::Elem(draw(&mut rng)),
                Slot::Idem => Arg::Elem(c.zero_of(&draw(&mut rng))),
                Slot::Scalar => Arg::Scalar(plan.scalars.sample(false, t, &mut rng)),
                Slot::NonzeroScalar => Arg::Scalar(plan.scalars.sample(true, t, &mut rng)),
            })
            .collect();
        let refs: Vec<&Arg<C::Elem>> = args.iter().collect();
        if !(ax.pred)(c, &Args(&refs)) {
            return AxiomResult {
                verdict: Verdict::Fail,
                instances: t as u64 + 1,
                counterexample: Some(describe(c, &ax.slots, &refs)),
                ..base
            };
        }
    }
    AxiomResult {
        instances: trials as u64,
        ..base
    }
}

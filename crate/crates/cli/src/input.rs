//! Loading JSON inputs. Every failure here means malformed input.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use lisa::algebra::StructAlgebra;
use lisa::exactalg::Field;
use lisa::exel::ELCarrier;
use lisa::finverse::{FCarrier, PartialRep};
use lisa::isv::Commutator;
use lisa::pmaps::{DomainClass, PDerCarrier, PEndCarrier};
use lisa::semilat::{Presheaf, SFCarrier};
use serde_json::Value;

use crate::report::SCHEMA;

/// Marks an error as caused by the input (exit code 2).
#[derive(Debug)]
pub struct Malformed(pub anyhow::Error);

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed input: {:#}", self.0)
    }
}

impl std::error::Error for Malformed {}

pub fn malformed<T>(r: anyhow::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| Malformed(e).into())
}

/// Reads a JSON file and checks the schema tag when one is present.
pub fn read_json(path: &Path) -> anyhow::Result<Value> {
    malformed((|| {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(tag) = v.get("schema") {
            if tag != SCHEMA {
                bail!("{}: unsupported schema {tag} (expected {SCHEMA:?})", path.display());
            }
        }
        Ok(v)
    })())
}

pub struct Caps {
    pub dim_cap: Option<usize>,
}

impl Caps {
    pub fn algebra(&self) -> usize {
        self.dim_cap.unwrap_or(lisa::algebra::DEFAULT_DIM_CAP)
    }
}

/// An algebra file holds the algebra itself or wraps it under "algebra".
pub fn algebra(v: &Value, caps: &Caps, field: Option<Field>) -> anyhow::Result<StructAlgebra> {
    let mut body = v.get("algebra").unwrap_or(v).clone();
    if let Some(f) = field {
        body["field"] = f.to_json();
    }
    malformed(StructAlgebra::from_json(&body, caps.algebra()).map_err(|e| anyhow!("algebra: {e}")))
}

pub fn partial_rep(v: &Value, caps: &Caps) -> anyhow::Result<PartialRep> {
    let body = v.get("rep").unwrap_or(v);
    malformed(PartialRep::from_json(body, caps.algebra()).map_err(|e| anyhow!("partial representation: {e}")))
}

/// The carriers a carrier file may describe, keyed by its "carrier" field.
pub enum LoadedCarrier {
    PEnd(PEndCarrier),
    PEndCommutator(Commutator<PEndCarrier>),
    PDer(PDerCarrier),
    El(ELCarrier),
    Semilattice(SFCarrier),
    F(FCarrier),
}

impl LoadedCarrier {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedCarrier::PEnd(_) => "pend",
            LoadedCarrier::PEndCommutator(_) => "pend_commutator",
            LoadedCarrier::PDer(_) => "pder",
            LoadedCarrier::El(_) => "el",
            LoadedCarrier::Semilattice(_) => "semilattice",
            LoadedCarrier::F(_) => "f",
        }
    }

    /// Whether the bracket is meant to be Lie-like (enables the Jacobi laws of the semilattice suite).
    pub fn lie(&self) -> bool {
        match self {
            LoadedCarrier::PEnd(_) => false,
            LoadedCarrier::Semilattice(c) => {
                let p = c.presheaf();
                (0..p.base().len()).all(|l| p.object(l).flavor() == lisa::algebra::Flavor::Lie)
            }
            _ => true,
        }
    }
}

pub fn carrier(v: &Value, caps: &Caps) -> anyhow::Result<LoadedCarrier> {
    malformed((|| {
        let kind = v.get("carrier").and_then(Value::as_str).ok_or_else(|| anyhow!("carrier file needs a \"carrier\" string"))?;
        let pend = || -> anyhow::Result<PEndCarrier> {
            let field = Field::from_json(v.get("field").ok_or_else(|| anyhow!("pend needs \"field\""))?)?;
            let n = v.get("dim").and_then(Value::as_u64).ok_or_else(|| anyhow!("pend needs an integer \"dim\""))? as usize;
            let c = PEndCarrier::new(field, n);
            Ok(match caps.dim_cap {
                Some(cap) => c.with_dim_cap(cap),
                None => c,
            })
        };
        Ok(match kind {
            "pend" => LoadedCarrier::PEnd(pend()?),
            "pend_commutator" => LoadedCarrier::PEndCommutator(Commutator(pend()?)),
            "pder" => {
                let base = algebra(v, caps, None)?;
                let cap = caps.dim_cap.unwrap_or(base.dim());
                let c = if !base.field().is_finite() {
                    PDerCarrier::sampled(&base)?
                } else {
                    match v.get("class").and_then(Value::as_str) {
                        Some(class) => PDerCarrier::class(&base, DomainClass::parse(class)?, cap)?,
                        None => PDerCarrier::all(&base, cap)?,
                    }
                };
                LoadedCarrier::PDer(c)
            }
            "el" => {
                let c = ELCarrier::new(&algebra(v, caps, None)?)?;
                LoadedCarrier::El(match caps.dim_cap {
                    Some(cap) => c.with_dim_cap(cap),
                    None => c,
                })
            }
            "semilattice" => {
                let p = v.get("presheaf").ok_or_else(|| anyhow!("semilattice needs \"presheaf\""))?;
                LoadedCarrier::Semilattice(SFCarrier::new(Presheaf::from_json(p, caps.algebra())?))
            }
            "f" => LoadedCarrier::F(FCarrier::new(partial_rep(v, caps)?)),
            other => bail!("unknown carrier {other:?} (expected pend, pend_commutator, pder, el, semilattice or f)"),
        })
    })())
}

/// Runs `$body` with `$c` bound to the concrete carrier inside `$loaded`.
#[macro_export]
macro_rules! with_carrier {
    ($loaded:expr, $c:ident => $body:expr) => {
        match $loaded {
            $crate::input::LoadedCarrier::PEnd($c) => $body,
            $crate::input::LoadedCarrier::PEndCommutator($c) => $body,
            $crate::input::LoadedCarrier::PDer($c) => $body,
            $crate::input::LoadedCarrier::El($c) => $body,
            $crate::input::LoadedCarrier::Semilattice($c) => $body,
            $crate::input::LoadedCarrier::F($c) => $body,
        }
    };
}

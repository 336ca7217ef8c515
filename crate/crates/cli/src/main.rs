//! Command-line front end: loads JSON inputs, runs constructions and checks, emits reports.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lisa::exactalg::Field;
use serde_json::json;

use commands::{Ctx, Fixture, Suite};
use input::{Caps, Malformed};
use report::Report;

#[derive(Parser)]
#[command(name = "lisa", version, about = "Exact checks for Lie inverse semialgebras and their relatives")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = lisa::battery::DEFAULT_SEED)]
    seed: u64,
    /// Trials per axiom when sampling.
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    /// Dimension bound for enumeration; each module has its own default.
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and report its class predicates.
    CheckAlgebra { file: PathBuf },
    /// Build E(L) for an algebra file and check it.
    BuildEl {
        file: PathBuf,
        /// Reinterpret the structure constants over this field (e.g. F3 or Q).
        #[arg(long)]
        field: Option<String>,
    },
    /// Run one check suite on a carrier file.
    CheckCarrier {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Extend a premorphism to E(L) and check the result.
    Extend { file: PathBuf },
    /// Run a built-in example end to end.
    Fixtures {
        #[arg(value_enum)]
        name: Fixture,
        /// Prime for the Jacobson example.
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Write the example's input file (algebra, premorphism or carrier) here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check the unit and counit witnesses of the equivalence on a representation and a carrier.
    VerifyEquivalence { rep: PathBuf, carrier: PathBuf },
    /// Check the adjunction bijection from the subspace representation of L into a representation.
    VerifyAdjunction { l: PathBuf, rep: PathBuf },
    /// Run the acceptance battery.
    Suite {
        /// Run only this criterion (1 to 10).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebra { .. } => "check-algebra",
            Command::BuildEl { .. } => "build-el",
            Command::CheckCarrier { .. } => "check-carrier",
            Command::Extend { .. } => "extend",
            Command::Fixtures { .. } => "fixtures",
            Command::VerifyEquivalence { .. } => "verify-equivalence",
            Command::VerifyAdjunction { .. } => "verify-adjunction",
            Command::Suite { .. } => "suite",
        }
    }
}

/// LISA_THREADS sizes the worker pool. It never changes a verdict.
fn threads_hint() -> Option<usize> {
    let n = std::env::var("LISA_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok()?;
    Some(n)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let threads = threads_hint();
    let ctx = Ctx { seed: cli.seed, trials: cli.trials, caps: Caps { dim_cap: cli.dim_cap } };
    let mut config = json!({ "seed": cli.seed, "trials": cli.trials, "dim_cap": cli.dim_cap, "threads": threads });
    let mut report = Report::new(cli.command.name(), json!(null));
    match &cli.command {
        Command::CheckAlgebra { file } => commands::check_algebra(file, &ctx, &mut report)?,
        Command::BuildEl { file, field } => {
            let field = field.as_deref().map(Field::from_name).transpose().map_err(|e| Malformed(e.into()))?;
            config["field"] = json!(field.map(|f| f.to_string()));
            commands::build_el(file, field, &ctx, &mut report)?
        }
        Command::CheckCarrier { file, suite } => commands::check_carrier(file, *suite, &ctx, &mut report)?,
        Command::Extend { file } => commands::extend(file, &ctx, &mut report)?,
        Command::Fixtures { name, p, emit } => {
            if *name == Fixture::Jacobson {
                config["p"] = json!(p);
            }
            commands::fixture(*name, *p, emit.as_deref(), &ctx, &mut report)?
        }
        Command::VerifyEquivalence { rep, carrier } => commands::verify_equivalence(rep, carrier, &ctx, &mut report)?,
        Command::VerifyAdjunction { l, rep } => commands::verify_adjunction(l, rep, &ctx, &mut report)?,
        Command::Suite { criterion } => commands::suite(*criterion, &ctx, &mut report)?,
    }
    report.config = config;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = report.emit(cli.json, cli.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match e.downcast_ref::<Malformed>() {
                Some(m) => eprintln!("error: {m}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}

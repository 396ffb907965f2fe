use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cocycle_forge::{load_scenario, run, Command, RunOptions, Subgroup};

/// Group cocycles from invariant exact forms, in exact rational arithmetic.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "cocycle-forge", version)]
struct Args {
    command: Command,
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Overrides `verify.samples`.
    #[arg(long)]
    samples: Option<usize>,
    /// Overrides `verify.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Generator expressions for `eval-cocycle`, e.g. `sigma T(0,1)`.
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    tuple: Vec<String>,
    /// Overrides `verify.degree_cap`.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Subgroup for `check-triviality`.
    #[arg(long, value_enum, default_value_t = Subgroup::Stabilizer)]
    subgroup: Subgroup,
    /// Second point for the point-independence check.
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    alt_point: Option<Vec<String>>,
    /// Compact single-line JSON (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long)]
    pretty: bool,
    /// Include wall-clock timings in the report (they always go to the log).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let opts = RunOptions {
        samples: args.samples,
        seed: args.seed,
        tuple: args.tuple,
        degree_cap: args.degree_cap,
        subgroup: args.subgroup,
        alt_point: args.alt_point,
        timings: args.timings,
    };
    let outcome = load_scenario(&args.scenario).and_then(|s| run(args.command, &s, &opts));
    match outcome {
        Ok(report) => {
            println!("{}", report.render(args.pretty));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

mod job;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use stablewitt::selftest::SuiteConfig;
use stablewitt::pointcount::DEFAULT_BUDGET;

use run::{exit_code_for, run_job, run_selftest, suite_list, Outcome, Overrides, DEFAULT_SEED};

/// Frobenius-stable Witt vector cohomology and point-count congruences.
///
/// Exit codes: 0 all verdicts pass, 1 a check failed or its hypothesis
/// does not hold, 2 usage or parse error, 3 enumeration budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "stablewitt", version)]
struct Cli {
    /// Job file with [field], [variety] and [task] sections.
    #[arg(long, value_name = "PATH", conflicts_with = "selftest")]
    job: Option<PathBuf>,
    /// Run the built-in property suites.
    #[arg(long)]
    selftest: bool,
    /// Restrict --selftest to one suite.
    #[arg(long, value_name = "NAME", requires = "selftest")]
    suite: Option<String>,
    /// Maximum number of candidate points to enumerate.
    #[arg(long, value_name = "N")]
    budget: Option<u128>,
    /// Cap on Y-exponents in the Witt–Čech computation.
    #[arg(long, value_name = "B")]
    pole_bound: Option<i64>,
    /// Also write the report to this file.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Use wrong Witt addition laws (negative control).
    #[arg(long, hide = true)]
    corrupt_laws: bool,
}

fn execute(cli: &Cli) -> Result<Outcome, (u8, String)> {
    let ov = Overrides { budget: cli.budget, pole_bound: cli.pole_bound, seed: cli.seed, corrupt_laws: cli.corrupt_laws };
    let lib = |e: stablewitt::Error| (exit_code_for(&e), e.to_string());
    if cli.selftest {
        let cfg = SuiteConfig {
            seed: cli.seed.unwrap_or(DEFAULT_SEED),
            budget: cli.budget.unwrap_or(DEFAULT_BUDGET),
            corrupt_laws: cli.corrupt_laws,
            extended: true,
        };
        let suites = suite_list(cli.suite.as_deref()).map_err(lib)?;
        return run_selftest(&suites, &cfg).map_err(lib);
    }
    let Some(path) = &cli.job else {
        return Err((2, "nothing to do: pass --job PATH or --selftest".into()));
    };
    let text = std::fs::read_to_string(path).map_err(|e| (2, format!("cannot read {}: {e}", path.display())))?;
    let job = job::parse_job(&text).map_err(|e| (2, format!("{}: {e}", path.display())))?;
    run_job(&job, &ov).map_err(lib)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.report);
            if let Some(p) = &cli.out {
                if let Err(e) = std::fs::write(p, &out.report) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

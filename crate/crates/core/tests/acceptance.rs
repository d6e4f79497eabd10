//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use stablewitt::pointcount::DEFAULT_BUDGET;
use stablewitt::selftest::{self, SuiteConfig, SuiteResult};

const SEED: u64 = 0x5eed;

fn cfg() -> SuiteConfig {
    SuiteConfig { seed: SEED, budget: DEFAULT_BUDGET, corrupt_laws: false, extended: false }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> stablewitt::Result<SuiteResult>,
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "Witt-law soundness", limit: s(10), run: || selftest::witt_suite(false) },
        Criterion { id: 2, title: "stable/nilpotent decomposition, 500 maps", limit: s(30), run: || selftest::stable_nil_suite(500, SEED) },
        Criterion { id: 3, title: "stable-part exactness, 200 sequences", limit: s(30), run: || selftest::stable_exact_suite(200, SEED) },
        Criterion { id: 4, title: "Katz congruence mod p", limit: s(120), run: || selftest::katz_suite(&cfg()) },
        Criterion { id: 5, title: "mod p^min(ra,n) congruence, elliptic corpus", limit: s(300), run: || selftest::curve_congruence_suite(DEFAULT_BUDGET) },
        Criterion { id: 6, title: "slope-zero unit root", limit: s(300), run: || selftest::slope_zero_suite(DEFAULT_BUDGET) },
        Criterion { id: 7, title: "weak Lefschetz vanishing", limit: s(60), run: selftest::weak_lefschetz_suite },
        Criterion { id: 8, title: "etale comparison", limit: s(60), run: || selftest::etale_suite(DEFAULT_BUDGET) },
        Criterion { id: 9, title: "ideal-power independence", limit: s(60), run: selftest::ideal_power_suite },
        Criterion { id: 10, title: "cyclic group cohomology", limit: s(10), run: selftest::group_cohomology_suite },
    ]
}

fn main() -> ExitCode {
    let mut all_ok = true;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Ok(r) => (r.passed() && elapsed <= c.limit, format!("{} cases, {} failures", r.cases, r.failures.len())),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {:>2} [{}] {}: {} ({:.2} s, limit {} s)",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            detail,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if let Ok(r) = &outcome {
            for f in r.failures.iter().take(5) {
                println!("    {}", f.trim_end().replace('\n', "\n    "));
            }
        }
        all_ok &= ok;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

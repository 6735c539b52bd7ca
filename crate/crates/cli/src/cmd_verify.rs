//! `gslab verify`: run named invariant suites, print one line per check,
//! write a machine-readable report, exit nonzero on failure.

use crate::error::CliError;
use clap::Args;
use gslab_core::verify::{run_all, run_suite, SuiteReport, SUITES};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite: exact, energy, pps, logsys, bounds, separable, or all
    pub suite: String,
    /// Directory for the JSON report
    #[arg(long, default_value = "gslab_out")]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SuiteOut {
    suite: String,
    passed: bool,
    checks: Vec<CheckOut>,
}

#[derive(Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    passed: bool,
    suites: Vec<SuiteOut>,
}

fn to_out(rep: &SuiteReport) -> SuiteOut {
    SuiteOut {
        suite: rep.suite.clone(),
        passed: rep.passed(),
        checks: rep
            .checks
            .iter()
            .map(|c| CheckOut {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    }
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let reports: Vec<SuiteReport> = match args.suite.as_str() {
        "all" => run_all(),
        name => vec![run_suite(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown suite `{name}`; expected one of {}, all",
                SUITES.join(", ")
            ))
        })?],
    };

    let mut all_passed = true;
    for rep in &reports {
        for c in &rep.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            println!("{status} [{}] {} — {}", rep.suite, c.name, c.detail);
            all_passed &= c.passed;
        }
    }

    let report = Report {
        tool: "gslab",
        version: env!("CARGO_PKG_VERSION"),
        passed: all_passed,
        suites: reports.iter().map(to_out).collect(),
    };
    std::fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", args.out.display())))?;
    let path = args.out.join("verify_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap())
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    println!("report: {}", path.display());

    if all_passed {
        Ok(())
    } else {
        Err(CliError::Failed("verification failures (see above)".into()))
    }
}

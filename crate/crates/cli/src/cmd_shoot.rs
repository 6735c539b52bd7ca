//! `gslab shoot`: integrate one amplitude (or bisect a bracket), write
//! the trajectory as CSV and the verdict as JSON.

use crate::config::Numerics;
use crate::error::CliError;
use crate::fmtio::{csv_row, fmt_f64, write_file, write_manifest, Manifest};
use crate::{EquationArgs, NumericArgs};
use clap::Args;
use gslab_core::diagnostics::{energy_h, energy_h_prime};
use gslab_core::radial::{integrate, Classification, EventKind, Trajectory};
use gslab_core::shooting::{decay_exponent, find_ground_state, ShootingConfig, ShootingVerdict};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct ShootArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Initial amplitude u(0)
    #[arg(short = 'a', long)]
    pub amplitude: Option<f64>,
    /// Bisect the amplitude over [LO, HI] instead of a single shot
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub bracket: Option<Vec<f64>>,
    #[command(flatten)]
    pub numerics: NumericArgs,
    /// Output directory
    #[arg(long, default_value = "gslab_out")]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct EventOut {
    kind: String,
    r: f64,
}

#[derive(Serialize)]
struct DecayOut {
    gamma: f64,
    window: (f64, f64),
    fit_residual: f64,
}

#[derive(Serialize)]
struct EnergyOut {
    h_nonincreasing: bool,
    max_normalized_hprime: f64,
}

#[derive(Serialize)]
struct BracketOut {
    a_lo: f64,
    a_hi: f64,
    tag_lo: String,
    tag_hi: String,
}

#[derive(Serialize)]
struct Verdict {
    n: u32,
    p: f64,
    q: f64,
    m: f64,
    a: Option<f64>,
    bracket: Option<(f64, f64)>,
    numerics: Numerics,
    classification: String,
    r_event: Option<f64>,
    events: Vec<EventOut>,
    decay: Option<DecayOut>,
    energy: EnergyOut,
    verdict: Option<String>,
    a_star: Option<f64>,
    bracket_history: Vec<BracketOut>,
    samples: usize,
}

fn classification_fields(c: &Classification) -> (String, Option<f64>) {
    match c {
        Classification::Crossing { r_cross } => ("Crossing".into(), Some(*r_cross)),
        Classification::PositiveMinimum { r_min, .. } => ("PositiveMinimum".into(), Some(*r_min)),
        Classification::GroundStateCandidate { .. } => ("GroundStateCandidate".into(), None),
        Classification::BlowUp { r_blow } => ("BlowUp".into(), Some(*r_blow)),
        Classification::Undetermined => ("Undetermined".into(), None),
    }
}

fn trajectory_csv(traj: &Trajectory) -> String {
    let params = &traj.params;
    let mut out = String::from("r,u,du,H,Hprime\n");
    for s in &traj.samples {
        out.push_str(&csv_row(&[
            fmt_f64(s.r),
            fmt_f64(s.u),
            fmt_f64(s.du),
            fmt_f64(energy_h(s, params)),
            fmt_f64(energy_h_prime(s, params)),
        ]));
        out.push('\n');
    }
    out
}

fn energy_flags(traj: &Trajectory) -> EnergyOut {
    let params = &traj.params;
    let hs: Vec<f64> = traj.samples.iter().map(|s| energy_h(s, params)).collect();
    let h_nonincreasing = hs.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
    let max_normalized_hprime = traj
        .samples
        .iter()
        .map(|s| energy_h_prime(s, params) / (s.du * s.du / s.r + 1e-300))
        .fold(f64::NEG_INFINITY, f64::max);
    EnergyOut {
        h_nonincreasing,
        max_normalized_hprime,
    }
}

pub fn run(args: ShootArgs) -> Result<(), CliError> {
    let params = args.eq.resolve(true)?;
    let (numerics, _) = args.numerics.resolve()?;

    let (traj, verdict_name, a_star, history, a_single, bracket) = match &args.bracket {
        Some(b) => {
            let (lo, hi) = (b[0], b[1]);
            if !(lo > 0.0 && lo < hi) {
                return Err(CliError::Usage(format!(
                    "invalid bracket [{lo}, {hi}]: need 0 < LO < HI"
                )));
            }
            let cfg = numerics.integrator_for(0.5 * (lo + hi));
            let res = find_ground_state(&params, lo, hi, &cfg, &ShootingConfig::default());
            let name = match res.verdict {
                ShootingVerdict::FoundCandidate => "FoundCandidate",
                ShootingVerdict::NoSignChangeInBracket => "NoSignChangeInBracket",
                ShootingVerdict::BudgetExhausted => "BudgetExhausted",
            };
            let history: Vec<BracketOut> = res
                .bracket_history
                .iter()
                .map(|b| BracketOut {
                    a_lo: b.a_lo,
                    a_hi: b.a_hi,
                    tag_lo: b.tag_lo.to_string(),
                    tag_hi: b.tag_hi.to_string(),
                })
                .collect();
            let traj = res
                .final_trajectory
                .or_else(|| res.endpoint_trajectories.map(|b| b.0));
            (
                traj,
                Some(name.to_string()),
                res.a_star,
                history,
                None,
                Some((lo, hi)),
            )
        }
        None => {
            let a = args.amplitude.ok_or_else(|| {
                CliError::Usage("give either -a <amplitude> or --bracket LO HI".into())
            })?;
            if a <= 0.0 {
                return Err(CliError::Usage("amplitude must be positive".into()));
            }
            let cfg = numerics.integrator_for(a);
            let traj = integrate(&params, a, &cfg);
            (Some(traj), None, None, Vec::new(), Some(a), None)
        }
    };

    let traj = traj.ok_or_else(|| CliError::Failed("no trajectory produced".into()))?;
    let (class, r_event) = classification_fields(&traj.classification);
    let decay = decay_exponent(&traj, 0.4).ok().map(|d| DecayOut {
        gamma: d.gamma,
        window: d.window,
        fit_residual: d.fit_residual,
    });
    let verdict = Verdict {
        n: params.n,
        p: params.p,
        q: params.q,
        m: params.m,
        a: a_single,
        bracket,
        numerics,
        classification: class.clone(),
        r_event,
        events: traj
            .events
            .iter()
            .map(|e| EventOut {
                kind: match e.kind {
                    EventKind::UZero => "u_zero".into(),
                    EventKind::DuZero => "du_zero".into(),
                    EventKind::BlowUp => "blow_up".into(),
                    EventKind::Horizon => "horizon".into(),
                },
                r: e.r,
            })
            .collect(),
        decay,
        energy: energy_flags(&traj),
        verdict: verdict_name,
        a_star,
        bracket_history: history,
        samples: traj.samples.len(),
    };

    let csv = trajectory_csv(&traj);
    let mut files = BTreeMap::new();
    files.insert(
        "trajectory.csv".to_string(),
        write_file(&args.out, "trajectory.csv", csv.as_bytes())?,
    );
    let verdict_json =
        serde_json::to_string_pretty(&verdict).map_err(|e| CliError::Io(e.to_string()))?;
    files.insert(
        "verdict.json".to_string(),
        write_file(&args.out, "verdict.json", verdict_json.as_bytes())?,
    );
    write_manifest(
        &args.out,
        &Manifest {
            tool: "gslab",
            version: env!("CARGO_PKG_VERSION"),
            command: "shoot".into(),
            spec: &verdict,
            files,
        },
    )?;

    println!(
        "classification: {class}{}",
        r_event
            .map(|r| format!(" at r = {}", fmt_f64(r)))
            .unwrap_or_default()
    );
    if let Some(v) = &verdict.verdict {
        println!(
            "shooting verdict: {v}{}",
            verdict
                .a_star
                .map(|a| format!(" (a* = {})", fmt_f64(a)))
                .unwrap_or_default()
        );
    }
    if let Some(d) = &verdict.decay {
        println!(
            "tail decay: gamma = {} on r in [{}, {}]",
            fmt_f64(d.gamma),
            fmt_f64(d.window.0),
            fmt_f64(d.window.1)
        );
    }
    println!("wrote {}", args.out.join("trajectory.csv").display());
    Ok(())
}

// Used by `scan` for its per-record bound columns.
pub fn sup_decay_column(traj: &Trajectory) -> (Option<f64>, Option<f64>) {
    use gslab_core::diagnostics::{bound_check, BoundId};
    let sup = bound_check(traj, BoundId::DecaySup)
        .ok()
        .map(|r| r.minimal_constant);
    let dist = bound_check(traj, BoundId::GradDist)
        .ok()
        .map(|r| r.minimal_constant);
    (sup, dist)
}

pub fn fmt_record_fields(traj: &Trajectory) -> (String, Option<f64>, Option<f64>) {
    let (class, r_event) = classification_fields(&traj.classification);
    let decay = match traj.classification {
        Classification::GroundStateCandidate { decay_estimate } => decay_estimate,
        _ => None,
    };
    (class, r_event, decay)
}

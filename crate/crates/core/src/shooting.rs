//! Amplitude search for radial ground states by bisection, tail decay
//! fitting, and the closed-form amplitude/gradient thresholds a ground
//! state must respect.

use crate::params::{critical_constants, ProblemParams};
use crate::radial::{integrate, ClassTag, IntegratorConfig, RadialError, Trajectory};
use crate::util::line_fit;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ShootingError {
    #[error("threshold is not applicable in this regime")]
    NotApplicable,
}

/// Bisection controls: relative amplitude tolerance and iteration budget.
#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    pub a_rel_tol: f64,
    pub max_bisections: usize,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            a_rel_tol: 1e-10,
            max_bisections: 200,
        }
    }
}

/// One recorded bisection bracket; the endpoint classifications always
/// differ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub a_lo: f64,
    pub a_hi: f64,
    pub tag_lo: ClassTag,
    pub tag_hi: ClassTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShootingVerdict {
    /// Either an amplitude classified directly as a ground-state
    /// candidate, or the bracket converged to the classification boundary;
    /// `final_trajectory` tells which.
    FoundCandidate,
    /// Both bracket endpoints classify identically; nothing to bisect.
    NoSignChangeInBracket,
    BudgetExhausted,
}

#[derive(Debug)]
pub struct ShootingResult {
    /// Located boundary amplitude, when one exists.
    pub a_star: Option<f64>,
    pub bracket_history: Vec<Bracket>,
    /// Trajectory integrated at `a_star`.
    pub final_trajectory: Option<Trajectory>,
    /// Endpoint runs, attached when the bracket carries no dichotomy.
    pub endpoint_trajectories: Option<Box<(Trajectory, Trajectory)>>,
    pub verdict: ShootingVerdict,
}

/// Bisect the initial amplitude over `[a_lo, a_hi]` towards the boundary
/// between two distinct trajectory classifications.
///
/// Any amplitude whose run classifies directly as a ground-state candidate
/// short-circuits the search (in the scale-invariant regime a candidate at
/// one amplitude means a candidate at every amplitude, so no dichotomy
/// exists to bisect).
pub fn find_ground_state(
    params: &ProblemParams,
    a_lo: f64,
    a_hi: f64,
    cfg: &IntegratorConfig,
    shoot: &ShootingConfig,
) -> ShootingResult {
    assert!(a_lo > 0.0 && a_hi > a_lo);
    let t_lo = integrate(params, a_lo, cfg);
    if t_lo.classification.tag() == ClassTag::GroundStateCandidate {
        return ShootingResult {
            a_star: Some(a_lo),
            bracket_history: Vec::new(),
            final_trajectory: Some(t_lo),
            endpoint_trajectories: None,
            verdict: ShootingVerdict::FoundCandidate,
        };
    }
    let t_hi = integrate(params, a_hi, cfg);
    if t_hi.classification.tag() == ClassTag::GroundStateCandidate {
        return ShootingResult {
            a_star: Some(a_hi),
            bracket_history: Vec::new(),
            final_trajectory: Some(t_hi),
            endpoint_trajectories: None,
            verdict: ShootingVerdict::FoundCandidate,
        };
    }
    let tag_lo0 = t_lo.classification.tag();
    let tag_hi0 = t_hi.classification.tag();
    if tag_lo0 == tag_hi0 {
        return ShootingResult {
            a_star: None,
            bracket_history: Vec::new(),
            final_trajectory: None,
            endpoint_trajectories: Some(Box::new((t_lo, t_hi))),
            verdict: ShootingVerdict::NoSignChangeInBracket,
        };
    }

    let (mut lo, mut hi) = (a_lo, a_hi);
    let (tag_lo, mut tag_hi) = (tag_lo0, tag_hi0);
    let mut history = vec![Bracket {
        a_lo: lo,
        a_hi: hi,
        tag_lo,
        tag_hi,
    }];
    let mut converged = false;
    for _ in 0..shoot.max_bisections {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= shoot.a_rel_tol * mid {
            converged = true;
            break;
        }
        let t_mid = integrate(params, mid, cfg);
        let tag_mid = t_mid.classification.tag();
        if tag_mid == ClassTag::GroundStateCandidate {
            return ShootingResult {
                a_star: Some(mid),
                bracket_history: history,
                final_trajectory: Some(t_mid),
                endpoint_trajectories: None,
                verdict: ShootingVerdict::FoundCandidate,
            };
        }
        if tag_mid == tag_lo {
            lo = mid;
        } else {
            hi = mid;
            tag_hi = tag_mid;
        }
        history.push(Bracket {
            a_lo: lo,
            a_hi: hi,
            tag_lo,
            tag_hi,
        });
    }
    let a_star = 0.5 * (lo + hi);
    let final_trajectory = integrate(params, a_star, cfg);
    ShootingResult {
        a_star: Some(a_star),
        bracket_history: history,
        final_trajectory: Some(final_trajectory),
        endpoint_trajectories: None,
        verdict: if converged {
            ShootingVerdict::FoundCandidate
        } else {
            ShootingVerdict::BudgetExhausted
        },
    }
}

/// Fitted tail decay `u ≈ C r^{-γ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayEstimate {
    pub gamma: f64,
    /// Radii actually used for the fit.
    pub window: (f64, f64),
    /// RMS of the log-log fit residuals.
    pub fit_residual: f64,
}

/// Least-squares slope of log u against log r over the last
/// `window_fraction` of the log-radius range, negated. Requires at least
/// 10 positive samples in the window.
pub fn decay_exponent(
    traj: &Trajectory,
    window_fraction: f64,
) -> Result<DecayEstimate, RadialError> {
    assert!(window_fraction > 0.0 && window_fraction < 1.0);
    let t0 = traj.samples.first().map(|s| s.r.ln()).unwrap_or(0.0);
    let t1 = traj.samples.last().map(|s| s.r.ln()).unwrap_or(0.0);
    let cut = t1 - window_fraction * (t1 - t0);
    let tail: Vec<_> = traj
        .samples
        .iter()
        .filter(|s| s.r.ln() >= cut && s.u > 0.0)
        .collect();
    if tail.len() < 10 {
        return Err(RadialError::TooFewSamples { needed: 10 });
    }
    let xs: Vec<f64> = tail.iter().map(|s| s.r.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|s| s.u.ln()).collect();
    let (slope, _, rms) = line_fit(&xs, &ys);
    Ok(DecayEstimate {
        gamma: -slope,
        window: (tail[0].r, tail[tail.len() - 1].r),
        fit_residual: rms,
    })
}

/// Lower bound on u(0) for any radial ground state when the source term
/// dominates (q < 2p/(p+1)) and M > 0: `c · M^{2/(2p-(p+1)q)}`.
pub fn amplitude_threshold(params: &ProblemParams) -> Result<f64, ShootingError> {
    if !(params.q < params.q_crit() && params.m > 0.0) {
        return Err(ShootingError::NotApplicable);
    }
    let c = critical_constants(params)
        .c_amplitude
        .ok_or(ShootingError::NotApplicable)?;
    let expo = 2.0 / (2.0 * params.p - (params.p + 1.0) * params.q);
    Ok(c * params.m.powf(expo))
}

/// Gradient bounds a radial ground state satisfies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientCap {
    /// Energy bound `sqrt(2/(p+1)) · a^{(p+1)/2}`, valid along any ground
    /// state (the energy is decreasing from its value at the origin).
    pub h_cap: f64,
    /// Shape `M^{-(p+1)/((p+1)q-2p)}` of the uniform gradient bound in the
    /// gradient-dominated regime with M > 0; the multiplicative constant
    /// is extracted empirically by the bound checker.
    pub uniform_grad_shape: Option<f64>,
}

pub fn gradient_cap(params: &ProblemParams, a: f64) -> GradientCap {
    assert!(a >= 0.0);
    let h_cap = (2.0 / (params.p + 1.0)).sqrt() * a.powf((params.p + 1.0) / 2.0);
    let uniform_grad_shape = if params.q > params.q_crit() && params.m > 0.0 {
        let expo = -(params.p + 1.0) / ((params.p + 1.0) * params.q - 2.0 * params.p);
        Some(params.m.powf(expo))
    } else {
        None
    };
    GradientCap { h_cap, uniform_grad_shape }
}

/// Per-amplitude record of a nonexistence sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub a: f64,
    pub tag: ClassTag,
    /// Crossing or blow-up radius when the tag carries one.
    pub r_event: Option<f64>,
    pub decay_gamma: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct NonexistenceScan {
    pub entries: Vec<ScanEntry>,
    /// True when at least one amplitude classified as a candidate, i.e.
    /// the sweep found evidence against nonexistence.
    pub any_candidate: bool,
}

/// Integrate every amplitude in the grid and report the classifications.
/// Finite evidence consistent with a nonexistence theorem, not a proof.
pub fn nonexistence_scan(
    params: &ProblemParams,
    a_grid: &[f64],
    cfg: &IntegratorConfig,
) -> NonexistenceScan {
    assert!(!a_grid.is_empty());
    let entries: Vec<ScanEntry> = a_grid
        .iter()
        .map(|&a| {
            let traj = integrate(params, a, cfg);
            let (tag, r_event, decay_gamma) = match traj.classification {
                crate::radial::Classification::Crossing { r_cross } => {
                    (ClassTag::Crossing, Some(r_cross), None)
                }
                crate::radial::Classification::BlowUp { r_blow } => {
                    (ClassTag::BlowUp, Some(r_blow), None)
                }
                crate::radial::Classification::PositiveMinimum { r_min, .. } => {
                    (ClassTag::PositiveMinimum, Some(r_min), None)
                }
                crate::radial::Classification::GroundStateCandidate { decay_estimate } => {
                    (ClassTag::GroundStateCandidate, None, decay_estimate)
                }
                crate::radial::Classification::Undetermined => (ClassTag::Undetermined, None, None),
            };
            ScanEntry {
                a,
                tag,
                r_event,
                decay_gamma,
            }
        })
        .collect();
    let any_candidate = entries
        .iter()
        .any(|e| e.tag == ClassTag::GroundStateCandidate);
    NonexistenceScan {
        entries,
        any_candidate,
    }
}

//! Integration of the radial profile equation
//!
//! ```text
//! -u'' - (N-1)/r · u' = |u|^{p-1} u + M |u'|^q
//! ```
//!
//! from the singular origin, with event detection (zero crossings of u and
//! u', blow-up, horizon) and trajectory classification, plus the explicit
//! exact solutions used for verification.

use crate::ode::{self, dp45_step, error_norm, step_factor};
use crate::params::ProblemParams;
use crate::util::{line_fit, odd_pow};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RadialError {
    #[error("right-hand side is singular at r = 0; start from the series expansion")]
    OriginSingularity,
    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("sampling targets must be strictly increasing and lie in [r0, r_max]")]
    BadTargets,
    #[error("trajectory left the positive decreasing regime near r = {r}")]
    Diverged { r: f64 },
    #[error("integration stalled near r = {r}")]
    Stalled { r: f64 },
    #[error("fewer than {needed} samples in the requested window")]
    TooFewSamples { needed: usize },
}

/// Point on a radial trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub r: f64,
    pub u: f64,
    pub du: f64,
}

/// Adaptive-integration controls.
///
/// `zero_threshold` is the level below which u(r_max) counts as decayed
/// when classifying a ground-state candidate, and `blowup_threshold` the
/// state magnitude that triggers a blow-up verdict. Both default to
/// multiples of the initial amplitude (1e-4·a and 1e8·a) and are recorded
/// in the trajectory so downstream claims are auditable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Series-handoff radius; the expansion at the origin is used up to
    /// here because the (N-1)/r coefficient is singular at r = 0.
    pub r0: f64,
    pub r_max: f64,
    pub max_steps: usize,
    pub zero_threshold: f64,
    pub blowup_threshold: f64,
}

impl IntegratorConfig {
    /// Defaults scaled to the shooting amplitude `a`.
    pub fn for_amplitude(a: f64) -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            r0: 1e-3,
            r_max: 100.0,
            max_steps: 4_000_000,
            zero_threshold: 1e-4 * a,
            blowup_threshold: 1e8 * a,
        }
    }

    pub fn validate(&self) -> Result<(), RadialError> {
        if !(self.r0 > 0.0 && self.r0 < self.r_max) {
            return Err(RadialError::InvalidConfig("need 0 < r0 < r_max"));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(RadialError::InvalidConfig("tolerances must be positive"));
        }
        if !(self.zero_threshold > 0.0 && self.blowup_threshold > 0.0) {
            return Err(RadialError::InvalidConfig("thresholds must be positive"));
        }
        Ok(())
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self::for_amplitude(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// u crossed zero.
    UZero,
    /// u' crossed zero.
    DuZero,
    /// State magnitude exceeded the blow-up threshold.
    BlowUp,
    /// Integration reached r_max.
    Horizon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub kind: EventKind,
    pub r: f64,
}

/// Shooting verdict for a single trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    /// u reached zero at finite radius while decreasing.
    Crossing {
        r_cross: f64,
    },
    /// u' changed sign from negative to nonnegative while u > 0.
    PositiveMinimum {
        r_min: f64,
        u_min: f64,
    },
    /// Positive and decreasing over the whole horizon with
    /// u(r_max) below the zero threshold. A finite-horizon verdict, not a
    /// proof of a ground state.
    GroundStateCandidate {
        decay_estimate: Option<f64>,
    },
    /// State magnitude exceeded the blow-up threshold.
    BlowUp {
        r_blow: f64,
    },
    Undetermined,
}

/// Classification without payload, for comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    Crossing,
    PositiveMinimum,
    GroundStateCandidate,
    BlowUp,
    Undetermined,
}

impl Classification {
    pub fn tag(&self) -> ClassTag {
        match self {
            Classification::Crossing { .. } => ClassTag::Crossing,
            Classification::PositiveMinimum { .. } => ClassTag::PositiveMinimum,
            Classification::GroundStateCandidate { .. } => ClassTag::GroundStateCandidate,
            Classification::BlowUp { .. } => ClassTag::BlowUp,
            Classification::Undetermined => ClassTag::Undetermined,
        }
    }
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassTag::Crossing => "Crossing",
            ClassTag::PositiveMinimum => "PositiveMinimum",
            ClassTag::GroundStateCandidate => "GroundStateCandidate",
            ClassTag::BlowUp => "BlowUp",
            ClassTag::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

/// Why the integration loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Event,
    Horizon,
    StepBudget,
    StepUnderflow,
    NonFinite,
}

/// A sampled radial solution with its events and verdict.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: ProblemParams,
    /// Initial amplitude u(0).
    pub a: f64,
    /// Strictly r-increasing samples, starting at r0.
    pub samples: Vec<RadialState>,
    /// Events in increasing r order.
    pub events: Vec<Event>,
    pub classification: Classification,
    pub termination: Termination,
    /// Configuration the run used (thresholds are part of the verdict).
    pub cfg: IntegratorConfig,
}

impl Trajectory {
    /// Build a trajectory from externally computed samples (e.g. an exact
    /// profile); sign-change events are read off sample pairs without
    /// refinement and the usual classifier is applied.
    pub fn from_samples(
        params: ProblemParams,
        a: f64,
        samples: Vec<RadialState>,
        cfg: IntegratorConfig,
    ) -> Self {
        assert!(samples.len() >= 2);
        let mut events = Vec::new();
        for w in samples.windows(2) {
            if w[0].u > 0.0 && w[1].u <= 0.0 {
                events.push(Event {
                    kind: EventKind::UZero,
                    r: 0.5 * (w[0].r + w[1].r),
                });
            }
            if w[0].du < 0.0 && w[1].du >= 0.0 {
                events.push(Event {
                    kind: EventKind::DuZero,
                    r: 0.5 * (w[0].r + w[1].r),
                });
            }
        }
        events.push(Event {
            kind: EventKind::Horizon,
            r: samples.last().unwrap().r,
        });
        let mut traj = Self {
            params,
            a,
            samples,
            events,
            classification: Classification::Undetermined,
            termination: Termination::Horizon,
            cfg,
        };
        traj.classification = classify(&traj, &cfg);
        traj
    }

    /// Radius of the first event of the given kind.
    pub fn first_event(&self, kind: EventKind) -> Option<f64> {
        self.events.iter().find(|e| e.kind == kind).map(|e| e.r)
    }
}

/// Right-hand side of the first-order system: returns (u', u'').
pub fn rhs(state: &RadialState, params: &ProblemParams) -> Result<(f64, f64), RadialError> {
    if state.r <= 0.0 {
        return Err(RadialError::OriginSingularity);
    }
    Ok((state.du, ddu(state.r, state.u, state.du, params)))
}

#[inline]
fn ddu(r: f64, u: f64, du: f64, params: &ProblemParams) -> f64 {
    -((params.dim() - 1.0) / r) * du - odd_pow(u, params.p) - params.m * du.abs().powf(params.q)
}

/// Second-order series start at small r0:
/// u = a - a^p r0²/(2N), u' = -a^p r0/N. The equation residual at r0 is
/// O(r0^{min(2,q)}), and the gradient term does not enter at this order.
pub fn series_start(a: f64, r0: f64, params: &ProblemParams) -> RadialState {
    assert!(a > 0.0 && r0 > 0.0);
    let ap = a.powf(params.p);
    RadialState {
        r: r0,
        u: a - ap * r0 * r0 / (2.0 * params.dim()),
        du: -ap * r0 / params.dim(),
    }
}

/// Residual of the profile equation at a state where u'' is known.
pub fn residual(r: f64, u: f64, du: f64, dduv: f64, params: &ProblemParams) -> f64 {
    let lhs = -dduv - (params.dim() - 1.0) / r * du;
    let rhs_v = odd_pow(u, params.p) + params.m * du.abs().powf(params.q);
    lhs - rhs_v
}

struct EventHit {
    r: f64,
    lo: RadialState,
    hi: RadialState,
}

/// Locate a sign change of `pick(state)` inside the step `[r, r+h]` by
/// bisection, re-integrating from the step start to each probe point. The
/// returned bracket endpoints are genuinely integrated states.
fn refine_event<F, P>(
    f: &F,
    r: f64,
    y: [f64; 2],
    h: f64,
    y_end: [f64; 2],
    cfg: &IntegratorConfig,
    pick: P,
) -> EventHit
where
    F: Fn(f64, [f64; 2]) -> [f64; 2],
    P: Fn(f64, [f64; 2]) -> f64,
{
    let probe_rtol = (cfg.rel_tol * 1e-2).max(1e-14);
    let probe_atol = (cfg.abs_tol * 1e-2).max(1e-16);
    let sign0 = pick(r, y).signum();
    let mut lo = 0.0f64;
    let mut hi = h;
    let mut y_lo = y;
    let mut y_hi = y_end;
    let width_tol = cfg.abs_tol.max(1e-14 * (r + h));
    while hi - lo > width_tol {
        let mid = 0.5 * (lo + hi);
        let ym = match ode::integrate_to(f, r, y, r + mid, probe_rtol, probe_atol, 100_000) {
            Ok(v) => v,
            Err(_) => break,
        };
        if pick(r + mid, ym).signum() == sign0 {
            lo = mid;
            y_lo = ym;
        } else {
            hi = mid;
            y_hi = ym;
        }
    }
    EventHit {
        r: r + 0.5 * (lo + hi),
        lo: RadialState {
            r: r + lo,
            u: y_lo[0],
            du: y_lo[1],
        },
        hi: RadialState {
            r: r + hi,
            u: y_hi[0],
            du: y_hi[1],
        },
    }
}

/// Integrate the radial equation from the series start at r0 until the
/// first of: u-zero event, blow-up, horizon, or step budget. Zero
/// crossings of u' are recorded but do not stop the run.
pub fn integrate(params: &ProblemParams, a: f64, cfg: &IntegratorConfig) -> Trajectory {
    cfg.validate().expect("integrator configuration");
    assert!(a > 0.0, "shooting amplitude must be positive");
    let f = {
        let params = *params;
        move |r: f64, y: [f64; 2]| [y[1], ddu(r, y[0], y[1], &params)]
    };

    let start = series_start(a, cfg.r0, params);
    let mut samples = vec![start];
    let mut events: Vec<Event> = Vec::new();
    let mut r = start.r;
    let mut y = [start.u, start.du];
    let mut h = cfg.r0 * 0.1;
    let mut termination = Termination::StepBudget;

    let push = |samples: &mut Vec<RadialState>, s: RadialState| {
        if s.r > samples.last().map_or(f64::NEG_INFINITY, |l| l.r) {
            samples.push(s);
        }
    };

    let mut steps = 0usize;
    'outer: while steps < cfg.max_steps {
        steps += 1;
        let mut hit_end = false;
        if h >= cfg.r_max - r {
            h = cfg.r_max - r;
            hit_end = true;
        }
        let (ynew, err, _) = dp45_step(&f, r, y, h);
        if !ynew[0].is_finite() || !ynew[1].is_finite() {
            h *= 0.5;
            if h < 1e-14 * r.max(1.0) {
                events.push(Event {
                    kind: EventKind::BlowUp,
                    r,
                });
                termination = Termination::NonFinite;
                break 'outer;
            }
            continue;
        }
        let en = error_norm(y, ynew, err, cfg.rel_tol, cfg.abs_tol);
        if en > 1.0 {
            h *= step_factor(en);
            if h < 1e-14 * r.max(1.0) {
                termination = Termination::StepUnderflow;
                break 'outer;
            }
            continue;
        }

        // Accepted step over [r, r+h]; look for events inside it.
        let u_flip = y[0] > 0.0 && ynew[0] <= 0.0;
        let du_flip = (y[1] < 0.0 && ynew[1] >= 0.0) || (y[1] > 0.0 && ynew[1] <= 0.0);
        let mut u_hit: Option<EventHit> = None;
        let mut du_hit: Option<EventHit> = None;
        if u_flip {
            u_hit = Some(refine_event(&f, r, y, h, ynew, cfg, |_, s| s[0]));
        }
        if du_flip {
            du_hit = Some(refine_event(&f, r, y, h, ynew, cfg, |_, s| s[1]));
        }
        // Record in radius order; a u-zero stops the run.
        let du_first = match (&u_hit, &du_hit) {
            (Some(u), Some(d)) => d.r < u.r,
            _ => du_hit.is_some(),
        };
        if du_first {
            let d = du_hit.take().unwrap();
            events.push(Event {
                kind: EventKind::DuZero,
                r: d.r,
            });
            push(&mut samples, d.lo);
            push(&mut samples, d.hi);
        }
        if let Some(u_ev) = u_hit {
            events.push(Event {
                kind: EventKind::UZero,
                r: u_ev.r,
            });
            push(&mut samples, u_ev.lo);
            push(&mut samples, u_ev.hi);
            termination = Termination::Event;
            break 'outer;
        }
        if let Some(d) = du_hit {
            events.push(Event {
                kind: EventKind::DuZero,
                r: d.r,
            });
            push(&mut samples, d.lo);
            push(&mut samples, d.hi);
        }

        if ynew[0].abs().max(ynew[1].abs()) > cfg.blowup_threshold {
            let hit = refine_event(&f, r, y, h, ynew, cfg, |_, s| {
                s[0].abs().max(s[1].abs()) - cfg.blowup_threshold
            });
            push(&mut samples, hit.lo);
            push(&mut samples, hit.hi);
            events.push(Event {
                kind: EventKind::BlowUp,
                r: hit.r,
            });
            termination = Termination::Event;
            break 'outer;
        }

        r = if hit_end { cfg.r_max } else { r + h };
        y = ynew;
        push(
            &mut samples,
            RadialState {
                r,
                u: y[0],
                du: y[1],
            },
        );
        if hit_end {
            events.push(Event {
                kind: EventKind::Horizon,
                r,
            });
            termination = Termination::Horizon;
            break 'outer;
        }
        h *= step_factor(en);
    }

    let mut traj = Trajectory {
        params: *params,
        a,
        samples,
        events,
        classification: Classification::Undetermined,
        termination,
        cfg: *cfg,
    };
    traj.classification = classify(&traj, cfg);
    traj
}

/// Assign the shooting verdict from events and samples: the first decisive
/// event wins; a horizon run that stayed positive and decreasing with
/// u(r_max) below the zero threshold is a ground-state candidate.
pub fn classify(traj: &Trajectory, cfg: &IntegratorConfig) -> Classification {
    for ev in &traj.events {
        match ev.kind {
            EventKind::UZero => return Classification::Crossing { r_cross: ev.r },
            EventKind::BlowUp => return Classification::BlowUp { r_blow: ev.r },
            EventKind::DuZero => {
                let u_min = nearest_sample(&traj.samples, ev.r).map_or(0.0, |s| s.u);
                if u_min > 0.0 {
                    return Classification::PositiveMinimum { r_min: ev.r, u_min };
                }
            }
            EventKind::Horizon => break,
        }
    }
    if traj.termination == Termination::Horizon {
        let positive_decreasing = traj.samples.iter().all(|s| s.u > 0.0 && s.du < 0.0);
        let last = traj.samples.last().expect("nonempty trajectory");
        if positive_decreasing && last.u < cfg.zero_threshold {
            return Classification::GroundStateCandidate {
                decay_estimate: tail_decay_estimate(&traj.samples),
            };
        }
    }
    Classification::Undetermined
}

fn nearest_sample(samples: &[RadialState], r: f64) -> Option<&RadialState> {
    samples
        .iter()
        .min_by(|a, b| (a.r - r).abs().partial_cmp(&(b.r - r).abs()).unwrap())
}

/// Log-log slope of the tail (last 40% of the log-radius range), negated;
/// `None` with fewer than 10 tail samples.
fn tail_decay_estimate(samples: &[RadialState]) -> Option<f64> {
    let (t0, t1) = (samples.first()?.r.ln(), samples.last()?.r.ln());
    let cut = t1 - 0.4 * (t1 - t0);
    let tail: Vec<&RadialState> = samples
        .iter()
        .filter(|s| s.r.ln() >= cut && s.u > 0.0)
        .collect();
    if tail.len() < 10 {
        return None;
    }
    let xs: Vec<f64> = tail.iter().map(|s| s.r.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|s| s.u.ln()).collect();
    let (slope, _, _) = line_fit(&xs, &ys);
    Some(-slope)
}

/// Integrate and record the state at exactly the given radii (strictly
/// increasing, within [r0, r_max]). No event handling: the run fails if
/// the state magnitude explodes before the last target.
pub fn integrate_sampled(
    params: &ProblemParams,
    a: f64,
    cfg: &IntegratorConfig,
    targets: &[f64],
) -> Result<Vec<RadialState>, RadialError> {
    cfg.validate()?;
    // A first target within a float roundtrip of r0 counts as the start.
    let snap = cfg.r0 * (1.0 - 1e-12);
    if targets.is_empty()
        || targets.windows(2).any(|w| w[0] >= w[1])
        || targets[0] < snap
        || *targets.last().unwrap() > cfg.r_max
    {
        return Err(RadialError::BadTargets);
    }
    let f = {
        let params = *params;
        move |r: f64, y: [f64; 2]| [y[1], ddu(r, y[0], y[1], &params)]
    };
    let start = series_start(a, cfg.r0, params);
    let mut r = start.r;
    let mut y = [start.u, start.du];
    let mut out = Vec::with_capacity(targets.len());
    let mut h = cfg.r0 * 0.1;
    let mut idx = 0;
    if targets[0] <= cfg.r0 * (1.0 + 1e-12) {
        out.push(RadialState {
            r: targets[0],
            ..start
        });
        idx = 1;
    }
    let mut steps = 0usize;
    while idx < targets.len() {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(RadialError::Stalled { r });
        }
        let target = targets[idx];
        let mut clamped = false;
        if h >= target - r {
            h = target - r;
            clamped = true;
        }
        let (ynew, err, _) = dp45_step(&f, r, y, h);
        if !ynew[0].is_finite() || !ynew[1].is_finite() {
            h *= 0.5;
            if h < 1e-15 * r.max(1.0) {
                return Err(RadialError::Diverged { r });
            }
            continue;
        }
        let en = error_norm(y, ynew, err, cfg.rel_tol, cfg.abs_tol);
        if en > 1.0 {
            h *= step_factor(en);
            if h < 1e-15 * r.max(1.0) {
                return Err(RadialError::Stalled { r });
            }
            continue;
        }
        r += h;
        y = ynew;
        if y[0].abs().max(y[1].abs()) > cfg.blowup_threshold {
            return Err(RadialError::Diverged { r });
        }
        if clamped {
            r = target; // exact landing; h was set to the gap
            out.push(RadialState {
                r,
                u: y[0],
                du: y[1],
            });
            idx += 1;
        }
        h *= step_factor(en);
    }
    Ok(out)
}

/// The explicit ground-state family at the Sobolev-critical exponent:
/// `(N(N-2)λ)^{(N-2)/4} / (λ + r²)^{(N-2)/2}`.
pub fn exact_aubin_talenti(r: f64, lambda: f64, n: u32) -> f64 {
    assert!(n >= 3 && lambda > 0.0);
    let nn = f64::from(n);
    (nn * (nn - 2.0) * lambda).powf((nn - 2.0) / 4.0) / (lambda + r * r).powf((nn - 2.0) / 2.0)
}

/// Singular power profile `X · r^{-2/(p-1)}`.
pub fn exact_singular(r: f64, x: f64, p: f64) -> Result<f64, RadialError> {
    if r <= 0.0 {
        return Err(RadialError::OriginSingularity);
    }
    Ok(x * r.powf(-2.0 / (p - 1.0)))
}

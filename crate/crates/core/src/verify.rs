//! Named verification suites: each check re-derives one of the library's
//! structural guarantees (exact-solution reproduction, identity oracles,
//! classification sweeps) and reports pass/fail with a short detail line.

use crate::diagnostics::{
    self, bound_check_states, energy_h, energy_h_prime, energy_identity_residual,
    leighton_identity_residual, pps_factored_params, pps_identity_residual, pps_u, pps_u_factored,
    BoundId, PpsParams,
};
use crate::params::ProblemParams;
use crate::radial::{
    exact_aubin_talenti, integrate, integrate_sampled, ClassTag, Classification, IntegratorConfig,
    RadialState,
};
use crate::separable::{
    asymptotic_check, bifurcation_point, branch_exists, root_residual, solve_constant_solutions,
    BranchPredicate, CaseTag,
};
use crate::shooting::nonexistence_scan;
use crate::util::{linspace, logspace, rel_diff};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One pass/fail line.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &["exact", "energy", "pps", "logsys", "bounds", "separable"];

/// Run one named suite; `None` for an unknown name. The name `all` is
/// handled by [`run_all`].
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "exact" => Some(suite_exact()),
        "energy" => Some(suite_energy()),
        "pps" => Some(suite_pps()),
        "logsys" => Some(suite_logsys()),
        "bounds" => Some(suite_bounds()),
        "separable" => Some(suite_separable()),
        _ => None,
    }
}

pub fn run_all() -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s).unwrap()).collect()
}

fn pp(n: u32, p: f64, q: f64, m: f64) -> ProblemParams {
    ProblemParams::new(n, p, q, m).unwrap()
}

/// Exact-solution reproduction and scale covariance.
pub fn suite_exact() -> SuiteReport {
    let mut checks = Vec::new();

    // Sobolev-critical profile: u = √3 (3 + r²)^{-1/2}.
    let params = pp(3, 5.0, 1.5, 0.0);
    let cfg = IntegratorConfig {
        r_max: 50.0,
        zero_threshold: 0.05,
        ..IntegratorConfig::default()
    };
    let traj = integrate(&params, 1.0, &cfg);
    let mut worst = 0.0f64;
    for s in &traj.samples {
        worst = worst.max(rel_diff(s.u, exact_aubin_talenti(s.r, 3.0, 3), 1e-300));
    }
    checks.push(Check::new(
        "aubin_talenti_reproduction",
        worst <= 1e-6,
        format!("max relative error {worst:.3e} (tol 1e-6)"),
    ));

    // Constant separable profiles solve the radial equation at critical q.
    let p = 5.0;
    let base = pp(4, p, 2.0 * p / (p + 1.0), 0.0);
    let s_exp = 2.0 / (p - 1.0);
    let mut worst_res = 0.0f64;
    for m in linspace(-10.0, 10.0, 20) {
        let sol = solve_constant_solutions(&base.with_m(m));
        for &x in &sol.roots {
            for r in logspace(0.1, 10.0, 100) {
                let u = x * r.powf(-s_exp);
                let du = -s_exp * x * r.powf(-s_exp - 1.0);
                let dd = s_exp * (s_exp + 1.0) * x * r.powf(-s_exp - 2.0);
                let res = crate::radial::residual(r, u, du, dd, &base.with_m(m)).abs();
                let scale = dd.abs() + u.powf(p) + (m * du.abs().powf(base.q)).abs();
                worst_res = worst_res.max(res / scale);
            }
        }
    }
    checks.push(Check::new(
        "singular_profile_residual",
        worst_res <= 1e-9,
        format!("max relative residual {worst_res:.3e} over 20-point M grid (tol 1e-9)"),
    ));

    // Scale covariance at critical q: amplitude k^{2/(p-1)}·a rescales the
    // crossing radius by 1/k.
    let params = pp(3, 3.0, 1.5, 1.0);
    let r1 = match integrate(&params, 1.0, &IntegratorConfig::for_amplitude(1.0)).classification {
        Classification::Crossing { r_cross } => r_cross,
        _ => f64::NAN,
    };
    let k = 4.0;
    let a2 = k; // k^{2/(p-1)} = k at p = 3
    let r2 = match integrate(&params, a2, &IntegratorConfig::for_amplitude(a2)).classification {
        Classification::Crossing { r_cross } => r_cross,
        _ => f64::NAN,
    };
    let err = (r2 * k - r1).abs() / r1;
    checks.push(Check::new(
        "scale_covariance_at_critical_q",
        err <= 1e-4,
        format!("rescaled crossing radius mismatch {err:.3e} (tol 1e-4)"),
    ));

    SuiteReport {
        suite: "exact".into(),
        checks,
    }
}

/// Energy monotonicity and the derivative identity.
pub fn suite_energy() -> SuiteReport {
    let mut checks = Vec::new();

    // H' <= 0 pointwise whenever M <= 0.
    let cases = [
        (pp(3, 5.0, 1.5, 0.0), 1.0, 50.0),
        (pp(3, 2.0, 4.0 / 3.0, 0.0), 1.0, 100.0),
        (pp(3, 3.0, 1.5, -1.0), 1.0, 100.0),
        (pp(4, 3.0, 1.4, -0.5), 1.0, 100.0),
    ];
    let mut worst = f64::NEG_INFINITY;
    for (params, a, r_max) in cases {
        let cfg = IntegratorConfig {
            r_max,
            ..IntegratorConfig::for_amplitude(a)
        };
        let traj = integrate(&params, a, &cfg);
        for s in &traj.samples {
            let hp = energy_h_prime(s, &params);
            let scale = s.du * s.du / s.r + 1e-300;
            worst = worst.max(hp / scale);
        }
    }
    checks.push(Check::new(
        "hprime_nonpositive_for_m_nonpositive",
        worst <= 1e-14,
        format!("max normalized H' = {worst:.3e} (tol 1e-14)"),
    ));

    // H nonincreasing along an M > 0 candidate with q > N/(N-1).
    let params = pp(3, 7.0, 7.0 / 4.0, 0.01);
    let cfg = IntegratorConfig {
        r_max: 200.0,
        zero_threshold: 0.2,
        ..IntegratorConfig::default()
    };
    let traj = integrate(&params, 1.0, &cfg);
    let is_candidate = traj.classification.tag() == ClassTag::GroundStateCandidate;
    let monotone = traj
        .samples
        .windows(2)
        .all(|w| energy_h(&w[1], &params) <= energy_h(&w[0], &params) * (1.0 + 1e-12) + 1e-15);
    checks.push(Check::new(
        "h_monotone_on_positive_m_candidate",
        is_candidate && monotone,
        format!("candidate: {is_candidate}, sample-to-sample monotone: {monotone}"),
    ));

    // Centered differences of H reproduce H' at second order.
    let params = pp(3, 3.0, 1.5, 0.5);
    let cfg = IntegratorConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        ..IntegratorConfig::default()
    };
    let res = |n: usize| {
        let states = integrate_sampled(&params, 1.0, &cfg, &linspace(0.5, 2.5, n)).unwrap();
        energy_identity_residual(&states, &params)
    };
    let rate = (res(41) / res(81)).log2();
    checks.push(Check::new(
        "h_derivative_identity_rate",
        rate >= 1.9,
        format!("finite-difference convergence rate {rate:.3} (need >= 1.9)"),
    ));

    SuiteReport {
        suite: "energy".into(),
        checks,
    }
}

/// Decreasing-positive sampling window of a trajectory on a uniform grid.
fn decreasing_window(
    params: &ProblemParams,
    a: f64,
    r_lo: f64,
    r_hi: f64,
    n: usize,
) -> Vec<RadialState> {
    let cfg = IntegratorConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        r_max: r_hi * 2.0,
        ..IntegratorConfig::for_amplitude(a)
    };
    integrate_sampled(params, a, &cfg, &linspace(r_lo, r_hi, n)).expect("window must be reachable")
}

/// Weighted-energy identity and the factored form.
pub fn suite_pps() -> SuiteReport {
    let mut checks = Vec::new();
    let trajectories = [
        (pp(3, 5.0, 1.5, 0.0), 1.0, 0.5, 2.5),
        (pp(3, 3.0, 1.5, 0.5), 1.0, 0.5, 2.0),
        (pp(4, 3.0, 1.4, -0.5), 1.0, 0.5, 2.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_rate = f64::INFINITY;
    let mut detail = String::new();
    for draw in 0..5 {
        let ppp = PpsParams::new(
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.1..3.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        for (params, a, lo, hi) in trajectories {
            let res = |n: usize| {
                let states = decreasing_window(&params, a, lo, hi, n);
                pps_identity_residual(&states, &ppp, &params)
            };
            let (r1, r2) = (res(129), res(257));
            // Guard the roundoff floor: refining cannot demonstrate the
            // rate once residuals sit at machine noise.
            let rate = if r2 < 1e-13 { 2.0 } else { (r1 / r2).log2() };
            if rate < worst_rate {
                worst_rate = rate;
                detail = format!("worst rate {rate:.3} at draw {draw} on p={}", params.p);
            }
        }
    }
    checks.push(Check::new(
        "weighted_energy_identity_rate",
        worst_rate >= 1.9,
        format!("{detail} (need >= 1.9)"),
    ));

    // Factored form against the general form on decreasing states.
    let mut states_checked = 0usize;
    let mut worst_gap = 0.0f64;
    for (params, a) in [
        (pp(3, 3.0, 1.5, 0.7), 1.0),
        (pp(3, 2.5, 10.0 / 7.0, 1.2), 1.0),
    ] {
        let (ppp, _) = pps_factored_params(&params);
        let cfg = IntegratorConfig::for_amplitude(a);
        let states = integrate_sampled(&params, a, &cfg, &logspace(0.02, 2.0, 600)).unwrap();
        for s in states.iter().filter(|s| s.u > 0.0 && s.du < 0.0) {
            let general = pps_u(s, &ppp, &params);
            let factored = pps_u_factored(s, &params).unwrap();
            worst_gap = worst_gap.max((general - factored).abs() / (general.abs() + 1.0));
            states_checked += 1;
        }
    }
    checks.push(Check::new(
        "factored_u_equivalence",
        states_checked >= 1000 && worst_gap <= 1e-10,
        format!("max normalized gap {worst_gap:.3e} over {states_checked} states (tol 1e-10)"),
    ));

    SuiteReport {
        suite: "pps".into(),
        checks,
    }
}

/// Max relative mismatch in u between direct radial integration and
/// integration of the (x, y) system in t = ln r, over the given radii.
pub fn xy_route_mismatch(
    params: &ProblemParams,
    a: f64,
    radii: &[f64],
) -> Result<f64, crate::radial::RadialError> {
    let cfg = IntegratorConfig {
        rel_tol: 1e-11,
        abs_tol: 1e-13,
        r_max: radii.last().unwrap() * 2.0,
        ..IntegratorConfig::for_amplitude(a)
    };
    let direct = integrate_sampled(params, a, &cfg, radii)?;
    let start = crate::radial::series_start(a, cfg.r0, params);
    let ls0 = diagnostics::to_log_xy(&start, params);
    let f = {
        let params = *params;
        move |t: f64, v: [f64; 2]| {
            let d = diagnostics::xy_rhs(
                &diagnostics::LogStateXY {
                    t,
                    x: v[0],
                    y: v[1],
                },
                &params,
            );
            [d.dx, d.dy]
        }
    };
    let mut t = ls0.t;
    let mut v = [ls0.x, ls0.y];
    let mut worst = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        let t1 = r.ln();
        v = crate::ode::integrate_to(&f, t, v, t1, 1e-11, 1e-13, 10_000_000)
            .map_err(|_| crate::radial::RadialError::Stalled { r })?;
        t = t1;
        let mapped = diagnostics::from_log_xy(
            &diagnostics::LogStateXY {
                t: t1,
                x: v[0],
                y: v[1],
            },
            params,
        );
        worst = worst.max(rel_diff(mapped.u, direct[i].u, 1e-12 * a));
    }
    Ok(worst)
}

/// Same for the (ξ, η) system (q != 2).
pub fn xieta_route_mismatch(
    params: &ProblemParams,
    a: f64,
    radii: &[f64],
) -> Result<f64, crate::radial::RadialError> {
    assert!(params.q != 2.0);
    let cfg = IntegratorConfig {
        rel_tol: 1e-11,
        abs_tol: 1e-13,
        r_max: radii.last().unwrap() * 2.0,
        ..IntegratorConfig::for_amplitude(a)
    };
    let direct = integrate_sampled(params, a, &cfg, radii)?;
    let start = crate::radial::series_start(a, cfg.r0, params);
    let ls0 = diagnostics::to_log_xieta(&start, params).expect("q != 2");
    let f = {
        let params = *params;
        move |t: f64, v: [f64; 2]| {
            let d = diagnostics::xieta_rhs(
                &diagnostics::LogStateXiEta {
                    t,
                    xi: v[0],
                    eta: v[1],
                },
                &params,
            )
            .expect("q != 2");
            [d.dxi, d.deta]
        }
    };
    let mut t = ls0.t;
    let mut v = [ls0.xi, ls0.eta];
    let mut worst = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        let t1 = r.ln();
        v = crate::ode::integrate_to(&f, t, v, t1, 1e-11, 1e-13, 10_000_000)
            .map_err(|_| crate::radial::RadialError::Stalled { r })?;
        t = t1;
        let mapped = diagnostics::from_log_xieta(
            &diagnostics::LogStateXiEta {
                t: t1,
                xi: v[0],
                eta: v[1],
            },
            params,
        )
        .expect("q != 2");
        worst = worst.max(rel_diff(mapped.u, direct[i].u, 1e-12 * a));
    }
    Ok(worst)
}

/// Consistency of the radial equation with its log-variable forms.
pub fn suite_logsys() -> SuiteReport {
    let mut checks = Vec::new();
    let radii = logspace(0.01, 10.0, 40);
    for m in [-1.0, 0.0, 1.0] {
        let params = pp(3, 3.0, 1.5, m);
        let a = 0.25;
        let xy = xy_route_mismatch(&params, a, &radii).unwrap_or(f64::NAN);
        checks.push(Check::new(
            &format!("xy_route_consistency_m_{m}"),
            xy <= 1e-6,
            format!("max relative u mismatch {xy:.3e} on r ∈ [0.01, 10] (tol 1e-6)"),
        ));
        let xe = xieta_route_mismatch(&params, a, &radii).unwrap_or(f64::NAN);
        checks.push(Check::new(
            &format!("xieta_route_consistency_m_{m}"),
            xe <= 1e-6,
            format!("max relative u mismatch {xe:.3e} on r ∈ [0.01, 10] (tol 1e-6)"),
        ));
    }

    // Leighton derivative identity at second order.
    let params = pp(3, 3.0, 1.5, 1.0);
    let cfg = IntegratorConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        ..IntegratorConfig::default()
    };
    let res = |n: usize| {
        let targets: Vec<f64> = linspace(0.5f64.ln(), 2.5f64.ln(), n)
            .into_iter()
            .map(f64::exp)
            .collect();
        let states = integrate_sampled(&params, 1.0, &cfg, &targets).unwrap();
        leighton_identity_residual(&states, &params)
    };
    let rate = (res(101) / res(201)).log2();
    checks.push(Check::new(
        "leighton_derivative_identity_rate",
        rate >= 1.9,
        format!("finite-difference convergence rate {rate:.3} (need >= 1.9)"),
    ));

    SuiteReport {
        suite: "logsys".into(),
        checks,
    }
}

/// A priori bound checkers.
pub fn suite_bounds() -> SuiteReport {
    let mut checks = Vec::new();

    let params = pp(3, 5.0, 1.5, 0.0);
    let cfg = IntegratorConfig {
        r_max: 50.0,
        ..IntegratorConfig::default()
    };
    let states = integrate_sampled(&params, 1.0, &cfg, &logspace(1e-3, 50.0, 2000)).unwrap();
    let rep = bound_check_states(&params, &states, BoundId::DecaySup).unwrap();
    let target = (3.0f64.sqrt() / 2.0).sqrt();
    let close = (rep.minimal_constant - target).abs() <= 1e-4;
    checks.push(Check::new(
        "decay_sup_aubin_talenti",
        close && rep.satisfied_with_closed_form == Some(true),
        format!(
            "sup u·√r = {:.6} vs closed form {:.6}, c0 = {:.6}",
            rep.minimal_constant,
            target,
            rep.closed_form_constant.unwrap()
        ),
    ));

    let rep = bound_check_states(&params, &states, BoundId::GradSup).unwrap();
    checks.push(Check::new(
        "grad_sup_aubin_talenti",
        rep.satisfied_with_closed_form == Some(true),
        format!(
            "sup |u'|·r^{{3/2}} = {:.6} <= {:.6}",
            rep.minimal_constant,
            rep.closed_form_constant.unwrap()
        ),
    ));

    // Uniform-gradient constants stay bounded across amplitudes.
    let params = pp(3, 2.0, 1.9, 1.0);
    let consts: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&a| {
            let traj = integrate(&params, a, &IntegratorConfig::for_amplitude(a));
            diagnostics::bound_check(&traj, BoundId::GradDist)
                .unwrap()
                .minimal_constant
        })
        .collect();
    let (lo, hi) = (
        consts.iter().cloned().fold(f64::INFINITY, f64::min),
        consts.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    checks.push(Check::new(
        "grad_dist_uniformity",
        hi / lo < 3.0,
        format!(
            "saturated minimal constants {consts:?} (ratio {:.3})",
            hi / lo
        ),
    ));

    SuiteReport {
        suite: "bounds".into(),
        checks,
    }
}

/// Separable-solution case map, bifurcation thresholds, asymptotics, and
/// theorem-driven classification sweeps.
pub fn suite_separable() -> SuiteReport {
    let mut checks = Vec::new();

    // Case map at (N=3, p=2).
    let base = pp(3, 2.0, 4.0 / 3.0, 0.0);
    let mu = crate::params::critical_constants(&base).mu_star.unwrap();
    let c1 = solve_constant_solutions(&base.with_m(-1.0)).case_tag == CaseTag::NoRoot;
    let sol2 = solve_constant_solutions(&base.with_m(-mu));
    let c2 = sol2.case_tag == CaseTag::DoubleRoot && (sol2.roots[0] - 1.0).abs() <= 1e-10;
    let sol3 = solve_constant_solutions(&base.with_m(-2.0));
    let c3 = sol3.case_tag == CaseTag::TwoRoots
        && sol3
            .roots
            .iter()
            .all(|&x| root_residual(x, &base.with_m(-2.0)) <= 1e-10)
        && sol3.roots[0] < sol3.x0.unwrap()
        && sol3.x0.unwrap() < sol3.roots[1];
    checks.push(Check::new(
        "constant_solution_case_map",
        c1 && c2 && c3,
        format!("M=-1: NoRoot {c1}; M=-μ*: double root at 1 {c2}; M=-2: straddling pair {c3}"),
    ));

    // Bifurcation thresholds.
    let p45 = pp(4, 5.0, 5.0 / 3.0, 0.0);
    let b1 = bifurcation_point(1, &p45).unwrap();
    let ok1 = b1.m_k.abs() <= 1e-10;
    let b2 = bifurcation_point(2, &p45).unwrap();
    let target2 = 6.0 * (2.0 * p45.k_coeff() - b2.lambda_k) / 20.0;
    let prod2 = b2.m_k * 0.5f64.powf(10.0 / 6.0) * b2.x_at_mk.powf(4.0 / 6.0);
    let ok2 = b2.m_k < 0.0 && (prod2 - target2).abs() <= 1e-10;
    let p43 = pp(4, 3.0, 1.5, 0.0);
    let ok3 = match branch_exists(1, &p43) {
        BranchPredicate::UniqueRootRegime {
            m_nonneg, m_neg, ..
        } => !m_nonneg && m_neg,
        _ => false,
    };
    checks.push(Check::new(
        "bifurcation_thresholds",
        ok1 && ok2 && ok3,
        format!(
            "M1(N4,p5) = {:.2e}; M2 = {:.6} with mode residual {:.2e}; (N4,p3,k1) predicate {}",
            b1.m_k,
            b2.m_k,
            (prod2 - target2).abs(),
            ok3
        ),
    ));

    // Large-|M| asymptotics.
    let rep_pos = asymptotic_check(&p45, 1e4);
    let rep_neg = asymptotic_check(&base, -1e4);
    let ok_pos = rep_pos
        .small_root_ratio
        .map(|r| (0.9..=1.1).contains(&r))
        .unwrap_or(false);
    let ok_neg = rep_neg
        .large_root_ratio
        .map(|r| (0.9..=1.1).contains(&r))
        .unwrap_or(false);
    checks.push(Check::new(
        "large_m_asymptotics",
        ok_pos && ok_neg,
        format!(
            "X/prediction: {:.4} (M=1e4), {:.4} (M=-1e4, larger root)",
            rep_pos.small_root_ratio.unwrap_or(f64::NAN),
            rep_neg.large_root_ratio.unwrap_or(f64::NAN)
        ),
    ));

    // Classification sweeps backing the existence/nonexistence statements.
    let crossings = [0.5, 1.0, 2.0].iter().all(|&a| {
        integrate(
            &pp(3, 2.0, 4.0 / 3.0, 0.0),
            a,
            &IntegratorConfig::for_amplitude(a),
        )
        .classification
        .tag()
            == ClassTag::Crossing
    });
    checks.push(Check::new(
        "subcritical_crossings",
        crossings,
        "all shots cross below the Sobolev exponent with M = 0".into(),
    ));

    let scan = nonexistence_scan(
        &pp(3, 3.0, 1.5, 10.0),
        &logspace(0.1, 10.0, 20),
        &IntegratorConfig::for_amplitude(1.0),
    );
    checks.push(Check::new(
        "large_m_nonexistence_sweep",
        !scan.any_candidate,
        format!(
            "no ground-state candidate over {} amplitudes at M = 10",
            scan.entries.len()
        ),
    ));

    let cfg = IntegratorConfig {
        r_max: 200.0,
        zero_threshold: 0.2,
        ..IntegratorConfig::default()
    };
    let traj = integrate(&pp(3, 7.0, 7.0 / 4.0, 0.01), 1.0, &cfg);
    let gamma = match traj.classification {
        Classification::GroundStateCandidate { decay_estimate } => {
            decay_estimate.unwrap_or(f64::NAN)
        }
        _ => f64::NAN,
    };
    checks.push(Check::new(
        "supercritical_existence",
        (0.25..=0.45).contains(&gamma),
        format!("candidate tail decay exponent {gamma:.4} (expect ≈ 1/3)"),
    ));

    SuiteReport {
        suite: "separable".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nope").is_none());
    }

    #[test]
    fn exact_suite_passes() {
        let rep = suite_exact();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn energy_suite_passes() {
        let rep = suite_energy();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn pps_suite_passes() {
        let rep = suite_pps();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn logsys_suite_passes() {
        let rep = suite_logsys();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn bounds_suite_passes() {
        let rep = suite_bounds();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn separable_suite_passes() {
        let rep = suite_separable();
        assert!(rep.passed(), "{:?}", rep.checks);
    }
}

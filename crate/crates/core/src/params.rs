//! Problem parameters, closed-form critical constants, and the scaling
//! transformations between equivalent problems.

use thiserror::Error;

/// Default absolute tolerance for deciding `q = 2p/(p+1)` (the balanced
/// regime). Downstream branch logic is discontinuous there, so the test is
/// an explicit tolerance rather than exact float equality.
pub const DEFAULT_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("exponents must satisfy p > 1 and q > 1 (got p = {p}, q = {q})")]
    InvalidExponent { p: f64, q: f64 },
    #[error("spatial dimension must satisfy N >= 1")]
    InvalidDimension,
    #[error("equation is not reducible to M = ±1: requires M != 0 and q != 2p/(p+1)")]
    NotReducible,
    #[error("feasibility search requires N >= 3 and 1 < p < (N+2)/(N-2)")]
    OutsideFeasibleRange,
    #[error("feasibility search exhausted without a witness (bug signal)")]
    SearchExhausted,
}

/// The quadruple (N, p, q, M) defining `-Δu = |u|^{p-1}u + M|∇u|^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    /// Spatial dimension N >= 1.
    pub n: u32,
    /// Source exponent, p > 1.
    pub p: f64,
    /// Gradient exponent, q > 1.
    pub q: f64,
    /// Gradient coefficient, any sign.
    pub m: f64,
}

impl ProblemParams {
    pub fn new(n: u32, p: f64, q: f64, m: f64) -> Result<Self, ParamsError> {
        if n < 1 {
            return Err(ParamsError::InvalidDimension);
        }
        if p <= 1.0 || q <= 1.0 || !p.is_finite() || !q.is_finite() || !m.is_finite() {
            return Err(ParamsError::InvalidExponent { p, q });
        }
        Ok(Self { n, p, q, m })
    }

    /// Dimension as a float.
    #[inline]
    pub fn dim(&self) -> f64 {
        f64::from(self.n)
    }

    /// Critical gradient exponent `2p/(p+1)`: the unique q making the
    /// equation invariant under amplitude/length rescaling.
    #[inline]
    pub fn q_crit(&self) -> f64 {
        2.0 * self.p / (self.p + 1.0)
    }

    /// Coefficient `K = ((N-2)p - N)/(p-1)` of the log-variable system.
    #[inline]
    pub fn k_coeff(&self) -> f64 {
        let nn = self.dim();
        ((nn - 2.0) * self.p - nn) / (self.p - 1.0)
    }

    /// `ω = ((p+1)q - 2p)/(p+1)`; positive iff q is supercritical.
    #[inline]
    pub fn omega(&self) -> f64 {
        ((self.p + 1.0) * self.q - 2.0 * self.p) / (self.p + 1.0)
    }

    /// Same parameters with the gradient coefficient replaced.
    #[inline]
    pub fn with_m(&self, m: f64) -> Self {
        Self { m, ..*self }
    }
}

/// Dominance of the source term versus the gradient term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// q > 2p/(p+1): the gradient term dominates under rescaling.
    GradientDominant,
    /// q = 2p/(p+1) within tolerance: scale-invariant case.
    Balanced,
    /// q < 2p/(p+1): the source term dominates.
    SourceDominant,
}

/// Classify (p, q) by the position of q relative to `2p/(p+1)`.
pub fn regime(params: &ProblemParams, eq_tol: f64) -> Regime {
    assert!(eq_tol >= 0.0);
    let gap = params.q - params.q_crit();
    if gap.abs() <= eq_tol {
        Regime::Balanced
    } else if gap > 0.0 {
        Regime::GradientDominant
    } else {
        Regime::SourceDominant
    }
}

/// Closed-form exponents and thresholds derived from (N, p, q).
///
/// Constants that are undefined at the given parameters are carried as
/// `None` rather than silent defaults; the two critical exponents use an
/// explicit `+∞` sentinel in dimensions 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstants {
    /// Serrin exponent N/(N-2) (`+∞` for N <= 2).
    pub p_serrin: f64,
    /// Sobolev critical exponent (N+2)/(N-2) (`+∞` for N <= 2).
    pub p_sobolev: f64,
    /// 2p/(p+1).
    pub q_crit: f64,
    /// K = ((N-2)p - N)/(p-1); positive iff p > p_serrin.
    pub k: f64,
    /// ω = ((p+1)q - 2p)/(p+1); positive iff q > q_crit.
    pub omega: f64,
    /// ω̄ = (p-1)ω/(q-1).
    pub omega_bar: f64,
    /// Supersolution threshold (p+1)·((N-(N-2)p)/(2p))^{p/(p+1)},
    /// defined when N - (N-2)p >= 0; zero exactly at p = p_serrin.
    pub mu_star: Option<f64>,
    /// Gradient-coefficient threshold
    /// ((p-1)/(p+1))^{(p-1)/(p+1)} · (N(p+1)²/(4p))^{p/(p+1)} above which no
    /// nontrivial solution exists in the balanced regime.
    pub m_dagger: f64,
    /// 2(N-1)p/(2N+p+1); lies in (q_crit, p) for p > p_sobolev.
    pub q_np: f64,
    /// Root in (q_crit, p) of the quadratic
    /// (N-1)(X-p)² - (N+2-(N-2)p)((p+1)X - 2p)X = 0, defined for N >= 3 and
    /// p_serrin < p < p_sobolev.
    pub q_bar: Option<f64>,
    /// Set when both quadratic roots land in (q_crit, p); the smaller root
    /// is then reported.
    pub q_bar_ambiguous: bool,
    /// Amplitude coefficient (4^{q'-1} p^{q'} N^{q'})^{-(q-1)/(2p-(p+1)q)}
    /// with q' = q/(q-1); defined when q < q_crit. Any ground state must
    /// exceed c·M^{2/(2p-(p+1)q)} at the origin when M > 0.
    pub c_amplitude: Option<f64>,
}

/// Evaluate every closed-form constant for the given parameters.
pub fn critical_constants(params: &ProblemParams) -> CriticalConstants {
    let nn = params.dim();
    let (p, q) = (params.p, params.q);
    let (p_serrin, p_sobolev) = if params.n >= 3 {
        (nn / (nn - 2.0), (nn + 2.0) / (nn - 2.0))
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    let q_crit = params.q_crit();
    let k = params.k_coeff();
    let omega = params.omega();
    let omega_bar = (p - 1.0) * omega / (q - 1.0);

    let gap = nn - (nn - 2.0) * p;
    let mu_star = if gap >= 0.0 {
        Some((p + 1.0) * (gap / (2.0 * p)).powf(p / (p + 1.0)))
    } else {
        None
    };

    let m_dagger = ((p - 1.0) / (p + 1.0)).powf((p - 1.0) / (p + 1.0))
        * (nn * (p + 1.0) * (p + 1.0) / (4.0 * p)).powf(p / (p + 1.0));

    let q_np = 2.0 * (nn - 1.0) * p / (2.0 * nn + p + 1.0);

    let (q_bar, q_bar_ambiguous) = if params.n >= 3 && p > p_serrin && p < p_sobolev {
        solve_q_bar(nn, p, q_crit)
    } else {
        (None, false)
    };

    let c_amplitude = if q < q_crit {
        let qp = q / (q - 1.0);
        let base = 4.0f64.powf(qp - 1.0) * p.powf(qp) * nn.powf(qp);
        Some(base.powf(-(q - 1.0) / (2.0 * p - (p + 1.0) * q)))
    } else {
        None
    };

    CriticalConstants {
        p_serrin,
        p_sobolev,
        q_crit,
        k,
        omega,
        omega_bar,
        mu_star,
        m_dagger,
        q_np,
        q_bar,
        q_bar_ambiguous,
        c_amplitude,
    }
}

/// Coefficients (a2, a1, a0) of the quadratic whose in-interval root is q̄.
pub fn q_bar_quadratic(nn: f64, p: f64) -> (f64, f64, f64) {
    let w = nn + 2.0 - (nn - 2.0) * p;
    let a2 = (nn - 1.0) - w * (p + 1.0);
    let a1 = -2.0 * p * (nn - 1.0) + 2.0 * p * w;
    let a0 = (nn - 1.0) * p * p;
    (a2, a1, a0)
}

fn solve_q_bar(nn: f64, p: f64, q_crit: f64) -> (Option<f64>, bool) {
    let (a2, a1, a0) = q_bar_quadratic(nn, p);
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 || a2 == 0.0 {
        return (None, false);
    }
    let sq = disc.sqrt();
    let r1 = (-a1 + sq) / (2.0 * a2);
    let r2 = (-a1 - sq) / (2.0 * a2);
    let in_interval = |x: f64| x > q_crit && x < p;
    match (in_interval(r1), in_interval(r2)) {
        (true, false) => (Some(r1), false),
        (false, true) => (Some(r2), false),
        (true, true) => (Some(r1.min(r2)), true),
        (false, false) => (None, false),
    }
}

/// Which rescaling to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingKind {
    /// Amplitude/length rescaling preserving the source coefficient;
    /// moves M by k^{(2p-q(p+1))/(p-1)}.
    Tk,
    /// Rescaling preserving M; moves the source coefficient by
    /// k^{(q-p(2-q))/(q-1)}.
    Sk,
    /// Reduce to M = ±1 (requires M != 0 and q != 2p/(p+1)); the scale
    /// parameter k is ignored.
    NormalizeM,
}

/// A change of unknowns between two instances of the equation.
///
/// The original solution u (unit source coefficient, coefficient
/// `params.m`) and the transformed solution v are related by
///
/// ```text
/// u(x) = amplitude_factor · v(length_factor · x),
/// ```
///
/// where v solves `new_params` with source coefficient `source_factor`
/// (equal to 1 for `Tk` and `NormalizeM`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    pub amplitude_factor: f64,
    pub length_factor: f64,
    pub source_factor: f64,
    pub new_params: ProblemParams,
}

/// Build the scaling map of the requested kind with parameter `k > 0`.
pub fn apply_scaling(
    params: &ProblemParams,
    kind: ScalingKind,
    k: f64,
) -> Result<ScalingMap, ParamsError> {
    assert!(k > 0.0 && k.is_finite());
    let (p, q, m) = (params.p, params.q, params.m);
    match kind {
        ScalingKind::Tk => {
            let m_new = m * k.powf((2.0 * p - q * (p + 1.0)) / (p - 1.0));
            Ok(ScalingMap {
                amplitude_factor: k.powf(-2.0 / (p - 1.0)),
                length_factor: 1.0 / k,
                source_factor: 1.0,
                new_params: params.with_m(m_new),
            })
        }
        ScalingKind::Sk => Ok(ScalingMap {
            amplitude_factor: k.powf(-(2.0 - q) / (q - 1.0)),
            length_factor: 1.0 / k,
            source_factor: k.powf((q - p * (2.0 - q)) / (q - 1.0)),
            new_params: *params,
        }),
        ScalingKind::NormalizeM => {
            let denom = (p + 1.0) * q - 2.0 * p;
            if m == 0.0 || denom == 0.0 {
                return Err(ParamsError::NotReducible);
            }
            let a = m.abs().powf(-2.0 / denom);
            Ok(ScalingMap {
                amplitude_factor: a,
                length_factor: a.powf((p - 1.0) / 2.0),
                source_factor: 1.0,
                new_params: params.with_m(m.signum()),
            })
        }
    }
}

/// Check the four feasibility constraints on an exponent pair (m, d) used
/// by the weighted-integral a priori estimate:
/// (i) d != m + 2; (ii) d > 2(N-1)p/(N+2);
/// (iii) max{-2, 1-p, ((N-4)p - N)/2} < m <= 0;
/// (iv) 2(N-m)d - (N-1)(m² + d²) > 0.
pub fn integral_exponents_feasible(n: u32, p: f64, m: f64, d: f64) -> bool {
    let nn = f64::from(n);
    let m_lo = (-2.0f64).max(1.0 - p).max(((nn - 4.0) * p - nn) / 2.0);
    d != m + 2.0
        && d > 2.0 * (nn - 1.0) * p / (nn + 2.0)
        && m > m_lo
        && m <= 0.0
        && 2.0 * (nn - m) * d - (nn - 1.0) * (m * m + d * d) > 0.0
}

/// Find an exponent pair (m, d) satisfying all four constraints above.
///
/// Deterministic 101×101 coarse grid over the box implied by the strict
/// constraints, keeping the point with the largest worst-case slack,
/// followed by grid refinement around the best point. The returned pair is
/// re-checked against the constraints exactly as written.
pub fn feasible_integral_exponents(n: u32, p: f64) -> Result<(f64, f64), ParamsError> {
    if n < 3 {
        return Err(ParamsError::OutsideFeasibleRange);
    }
    let nn = f64::from(n);
    if !(p > 1.0 && p < (nn + 2.0) / (nn - 2.0)) {
        return Err(ParamsError::OutsideFeasibleRange);
    }
    let m_lo = (-2.0f64).max(1.0 - p).max(((nn - 4.0) * p - nn) / 2.0);
    let d_lo = 2.0 * (nn - 1.0) * p / (nn + 2.0);
    // (iv) forces d below 2(N-m)/(N-1); m > m_lo gives a uniform cap.
    let d_hi = 2.0 * (nn - m_lo) / (nn - 1.0);

    let slack = |m: f64, d: f64| -> f64 {
        if !integral_exponents_feasible(n, p, m, d) {
            return f64::NEG_INFINITY;
        }
        let s1 = (d - m - 2.0).abs();
        let s2 = d - d_lo;
        let s3 = m - m_lo;
        let s4 = 2.0 * (nn - m) * d - (nn - 1.0) * (m * m + d * d);
        s1.min(s2).min(s3).min(s4)
    };

    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    let scan = |m0: f64, m1: f64, d0: f64, d1: f64, best: &mut (f64, f64, f64)| {
        for i in 0..=100u32 {
            let m = m0 + (m1 - m0) * f64::from(i) / 100.0;
            for j in 0..=100u32 {
                let d = d0 + (d1 - d0) * f64::from(j) / 100.0;
                let s = slack(m, d);
                if s > best.0 {
                    *best = (s, m, d);
                }
            }
        }
    };
    scan(m_lo, 0.0, d_lo, d_hi, &mut best);
    if best.0 == f64::NEG_INFINITY {
        return Err(ParamsError::SearchExhausted);
    }
    // Two refinement passes shrinking the box around the current best.
    for shrink in [10.0, 100.0] {
        let dm = (0.0 - m_lo) / shrink;
        let dd = (d_hi - d_lo) / shrink;
        let (_, m, d) = best;
        scan(
            (m - dm).max(m_lo),
            (m + dm).min(0.0),
            (d - dd).max(d_lo),
            d + dd,
            &mut best,
        );
    }
    let (_, m, d) = best;
    if integral_exponents_feasible(n, p, m, d) {
        Ok((m, d))
    } else {
        Err(ParamsError::SearchExhausted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(n: u32, p: f64, q: f64, m: f64) -> ProblemParams {
        ProblemParams::new(n, p, q, m).unwrap()
    }

    #[test]
    fn rejects_invalid_exponents() {
        assert!(ProblemParams::new(3, 1.0, 1.5, 0.0).is_err());
        assert!(ProblemParams::new(3, 2.0, 1.0, 0.0).is_err());
        assert!(ProblemParams::new(0, 2.0, 1.5, 0.0).is_err());
        assert!(ProblemParams::new(3, 2.0, 1.5, f64::NAN).is_err());
    }

    #[test]
    fn m_dagger_exact_at_n3_p3() {
        // (1/2)^{1/2} · 4^{3/4} = 2^{-1/2} · 2^{3/2} = 2.
        let c = critical_constants(&pp(3, 3.0, 1.5, 0.0));
        assert!((c.m_dagger - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mu_star_values() {
        let c = critical_constants(&pp(3, 3.0, 1.5, 0.0));
        assert_eq!(c.mu_star, Some(0.0)); // p = p_serrin
        let c = critical_constants(&pp(3, 2.0, 1.5, 0.0));
        let expect = 3.0 * 4.0f64.powf(-2.0 / 3.0);
        assert!((c.mu_star.unwrap() - expect).abs() < 1e-12);
        assert!((c.mu_star.unwrap() - 1.190550788976149).abs() < 1e-12);
        // Supercritical p: not applicable.
        let c = critical_constants(&pp(3, 4.0, 1.5, 0.0));
        assert_eq!(c.mu_star, None);
        // mu_star -> 0 as p approaches p_serrin from below; the exact value
        // at p_serrin - 1e-8 is 4·(1e-8/6)^{3/4} ≈ 1.045e-6.
        let c = critical_constants(&pp(3, 3.0 - 1e-8, 1.5, 0.0));
        assert!(c.mu_star.unwrap().abs() <= 2e-6);
        let closer = critical_constants(&pp(3, 3.0 - 1e-12, 1.5, 0.0));
        assert!(closer.mu_star.unwrap() < c.mu_star.unwrap());
    }

    #[test]
    fn q_bar_at_n3_p4() {
        // Positive root of 3X² + 8X - 32 = 0.
        let c = critical_constants(&pp(3, 4.0, 1.5, 0.0));
        let qb = c.q_bar.unwrap();
        assert!((qb - 2.194335081419454).abs() < 1e-12);
        assert!(!c.q_bar_ambiguous);
        let (a2, a1, a0) = q_bar_quadratic(3.0, 4.0);
        assert!((a2 * qb * qb + a1 * qb + a0).abs() <= 1e-10);
        assert!(qb > c.q_crit && qb < 4.0);
        // Outside (p_serrin, p_sobolev): undefined.
        assert_eq!(critical_constants(&pp(3, 2.0, 1.5, 0.0)).q_bar, None);
        assert_eq!(critical_constants(&pp(3, 6.0, 1.5, 0.0)).q_bar, None);
    }

    #[test]
    fn q_np_examples() {
        let c = critical_constants(&pp(3, 7.0, 1.5, 0.0));
        assert!((c.q_np - 2.0).abs() < 1e-14);
        assert!(c.q_np > c.q_crit && c.q_np < 7.0);
    }

    #[test]
    fn sign_equivalences() {
        // K > 0 iff p > p_serrin (N >= 3); omega sign tracks q - q_crit.
        for (p, expect_pos) in [(2.9, false), (3.0, false), (3.1, true)] {
            let c = critical_constants(&pp(3, p, 1.5, 0.0));
            assert_eq!(c.k > 0.0, expect_pos, "p = {p}");
        }
        for (q, sig) in [(1.4, -1.0), (1.5, 0.0), (1.6, 1.0)] {
            let c = critical_constants(&pp(3, 3.0, q, 0.0));
            assert_eq!(c.omega.signum() * sig >= 0.0, true);
            if sig == 0.0 {
                assert_eq!(c.omega, 0.0);
            }
        }
    }

    #[test]
    fn infinite_sentinels_in_low_dimension() {
        let c = critical_constants(&pp(2, 3.0, 1.5, 0.0));
        assert!(c.p_serrin.is_infinite() && c.p_sobolev.is_infinite());
        assert!(c.mu_star.is_some()); // N - (N-2)p = 2 > 0 always at N = 2
    }

    #[test]
    fn regime_classification() {
        let tol = 1e-12;
        assert_eq!(regime(&pp(3, 3.0, 1.5, 0.0), tol), Regime::Balanced);
        assert_eq!(regime(&pp(3, 3.0, 1.9, 0.0), tol), Regime::GradientDominant);
        assert_eq!(regime(&pp(3, 3.0, 1.2, 0.0), tol), Regime::SourceDominant);
    }

    #[test]
    fn c_amplitude_example() {
        // q' = 6, exponent -(q-1)/(2p-(p+1)q) = -0.2/1.2.
        let c = critical_constants(&pp(3, 3.0, 1.2, 1.0));
        assert!((c.c_amplitude.unwrap() - 0.03499780694152427).abs() < 1e-9);
        // Not applicable at or above criticality.
        assert_eq!(critical_constants(&pp(3, 3.0, 1.5, 1.0)).c_amplitude, None);
        assert_eq!(critical_constants(&pp(3, 3.0, 1.9, 1.0)).c_amplitude, None);
    }

    #[test]
    fn tk_invariant_at_critical_q() {
        let params = pp(3, 3.0, 1.5, 2.5);
        let map = apply_scaling(&params, ScalingKind::Tk, 7.3).unwrap();
        assert!((map.new_params.m - 2.5).abs() < 1e-14);
    }

    #[test]
    fn tk_roundtrip_is_identity() {
        let params = pp(3, 2.5, 1.3, -0.7);
        let k = 3.7;
        let fwd = apply_scaling(&params, ScalingKind::Tk, k).unwrap();
        let back = apply_scaling(&fwd.new_params, ScalingKind::Tk, 1.0 / k).unwrap();
        assert!((back.new_params.m - params.m).abs() <= 1e-12 * params.m.abs());
        assert!((fwd.amplitude_factor * back.amplitude_factor - 1.0).abs() <= 1e-12);
        assert!((fwd.length_factor * back.length_factor - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn sk_roundtrip_is_identity() {
        let params = pp(4, 3.0, 1.7, 1.1);
        let k = 2.2;
        let fwd = apply_scaling(&params, ScalingKind::Sk, k).unwrap();
        let back = apply_scaling(&fwd.new_params, ScalingKind::Sk, 1.0 / k).unwrap();
        assert_eq!(back.new_params, params);
        assert!((fwd.source_factor * back.source_factor - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn normalize_m_example() {
        // (N=3, p=3, q=1.2, M=4): a = 4^{-2/((p+1)q-2p)} = 4^{5/3}.
        let map = apply_scaling(&pp(3, 3.0, 1.2, 4.0), ScalingKind::NormalizeM, 1.0).unwrap();
        assert!((map.amplitude_factor - 10.079368399158985).abs() < 1e-10);
        assert_eq!(map.new_params.m, 1.0);
        let map = apply_scaling(&pp(3, 3.0, 1.2, -4.0), ScalingKind::NormalizeM, 1.0).unwrap();
        assert_eq!(map.new_params.m, -1.0);
    }

    #[test]
    fn normalize_m_not_reducible() {
        assert_eq!(
            apply_scaling(&pp(3, 3.0, 1.5, 2.0), ScalingKind::NormalizeM, 1.0),
            Err(ParamsError::NotReducible)
        );
        assert_eq!(
            apply_scaling(&pp(3, 3.0, 1.2, 0.0), ScalingKind::NormalizeM, 1.0),
            Err(ParamsError::NotReducible)
        );
    }

    #[test]
    fn integral_exponent_constraints() {
        // Feasible witness from direct constraint check.
        assert!(integral_exponents_feasible(3, 2.0, 0.0, 2.5));
        // d = m + 2 is rejected.
        assert!(!integral_exponents_feasible(3, 2.0, 0.0, 2.0));
        // d below the lower bound 8/5 is rejected.
        assert!(!integral_exponents_feasible(3, 2.0, 0.0, 1.5));
    }

    #[test]
    fn integral_exponent_search() {
        for (n, p) in [(3u32, 2.0), (4, 2.0), (3, 4.0), (5, 1.3)] {
            let (m, d) = feasible_integral_exponents(n, p).unwrap();
            assert!(integral_exponents_feasible(n, p, m, d), "n={n} p={p}");
        }
        assert!(feasible_integral_exponents(3, 5.0).is_err()); // p = p_sobolev
        assert!(feasible_integral_exponents(2, 2.0).is_err());
    }

    #[test]
    fn search_is_deterministic() {
        let a = feasible_integral_exponents(4, 2.0).unwrap();
        let b = feasible_integral_exponents(4, 2.0).unwrap();
        assert_eq!(a, b);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // 1 < q_crit < 2 and strictly increasing in p.
            #[test]
            fn q_crit_range_and_monotonicity(p in 1.000001f64..50.0, dp in 0.001f64..1.0) {
                let a = pp(3, p, 1.5, 0.0);
                let b = pp(3, p + dp, 1.5, 0.0);
                prop_assert!(a.q_crit() > 1.0 && a.q_crit() < 2.0);
                prop_assert!(b.q_crit() > a.q_crit());
            }

            // Tk then Tk-inverse restores M to relative 1e-12.
            #[test]
            fn tk_group_property(p in 1.1f64..6.0, q in 1.05f64..2.5,
                                 m in -5.0f64..5.0, k in 0.1f64..10.0) {
                let params = pp(3, p, q, m);
                let fwd = apply_scaling(&params, ScalingKind::Tk, k).unwrap();
                let back = apply_scaling(&fwd.new_params, ScalingKind::Tk, 1.0 / k).unwrap();
                prop_assert!((back.new_params.m - m).abs() <= 1e-12 * m.abs().max(1.0));
            }

            // The regime tag is total over (p, q).
            #[test]
            fn regime_total(p in 1.01f64..10.0, q in 1.01f64..3.0) {
                let _ = regime(&pp(3, p, q, 0.0), DEFAULT_EQ_TOL);
            }
        }
    }
}

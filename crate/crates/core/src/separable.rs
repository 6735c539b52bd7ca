//! Constant separable solutions `X r^{-2/(p-1)}` in the scale-invariant
//! case q = 2p/(p+1), their case classification over (p, M), the Φ maps
//! used to locate bifurcation points, and the leading-order asymptotics
//! of the roots for large |M|.

use crate::params::{critical_constants, ProblemParams};
use crate::util::bisect_then_newton;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeparableError {
    #[error("amplitude must be positive")]
    DomainError,
    #[error("not applicable in this parameter regime")]
    NotApplicable,
    #[error("root bracketing failed (bug signal)")]
    RootSearchFailed,
}

/// Coefficient `(2/(p-1))^{2p/(p+1)}` of the gradient term in the
/// constant-solution equation.
#[inline]
fn grad_coeff(p: f64) -> f64 {
    (2.0 / (p - 1.0)).powf(2.0 * p / (p + 1.0))
}

/// Value of the constant-solution equation at amplitude X:
/// `f_M(X) = X^{p-1} + M (2/(p-1))^{2p/(p+1)} X^{(p-1)/(p+1)} - 2K/(p-1)`.
/// Positive roots are exactly the constant separable amplitudes.
pub fn constant_eq(x: f64, params: &ProblemParams) -> Result<f64, SeparableError> {
    if x <= 0.0 {
        return Err(SeparableError::DomainError);
    }
    let p = params.p;
    let k = params.k_coeff();
    Ok(
        x.powf(p - 1.0) + params.m * grad_coeff(p) * x.powf((p - 1.0) / (p + 1.0))
            - 2.0 * k / (p - 1.0),
    )
}

/// Derivative of [`constant_eq`] in X.
pub fn constant_eq_deriv(x: f64, params: &ProblemParams) -> Result<f64, SeparableError> {
    if x <= 0.0 {
        return Err(SeparableError::DomainError);
    }
    let p = params.p;
    Ok((p - 1.0) * x.powf(p - 2.0)
        + params.m * grad_coeff(p) * (p - 1.0) / (p + 1.0) * x.powf(-2.0 / (p + 1.0)))
}

/// Minimizer of the constant-solution equation for M < 0:
/// `X₀ = ((-M)/(p+1))^{(p+1)/(p(p-1))} (2/(p-1))^{2/(p-1)}`.
pub fn constant_eq_minimizer(params: &ProblemParams) -> Result<f64, SeparableError> {
    if params.m >= 0.0 {
        return Err(SeparableError::NotApplicable);
    }
    let p = params.p;
    Ok(((-params.m) / (p + 1.0)).powf((p + 1.0) / (p * (p - 1.0)))
        * (2.0 / (p - 1.0)).powf(2.0 / (p - 1.0)))
}

/// Which case of the constant-solution classification applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// K > 0, M >= 0: one root, decreasing in M from (2K/(p-1))^{1/(p-1)}.
    UniqueRootMpos,
    /// K >= 0, M < 0: one root above the minimizer.
    UniqueRootMneg,
    /// K < 0 with M > -μ* (or M >= 0): no positive root.
    NoRoot,
    /// K < 0, M = -μ*: the minimizer itself is the (double) root.
    DoubleRoot,
    /// K < 0, M < -μ*: two roots straddling the minimizer.
    TwoRoots,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::UniqueRootMpos => "UniqueRoot_Mpos",
            CaseTag::UniqueRootMneg => "UniqueRoot_Mneg",
            CaseTag::NoRoot => "NoRoot",
            CaseTag::DoubleRoot => "DoubleRoot",
            CaseTag::TwoRoots => "TwoRoots",
        };
        f.write_str(s)
    }
}

/// Roots of the constant-solution equation with their case tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantSolutionSet {
    pub case_tag: CaseTag,
    /// Ascending positive roots; empty for `NoRoot`.
    pub roots: Vec<f64>,
    /// Minimizer of the equation, present when M < 0.
    pub x0: Option<f64>,
}

fn polish(params: &ProblemParams, lo: f64, hi: f64) -> Option<f64> {
    let f = |x: f64| constant_eq(x, params).unwrap_or(f64::NAN);
    let df = |x: f64| constant_eq_deriv(x, params).unwrap_or(f64::NAN);
    bisect_then_newton(f, df, lo, hi, 1e-6)
}

/// Classify and solve the constant-solution equation at the given (N, p, M)
/// (q is implicitly critical). Root brackets follow the shape of the
/// equation: monotone for M >= 0, single-minimum at X₀ for M < 0.
pub fn solve_constant_solutions(params: &ProblemParams) -> ConstantSolutionSet {
    let p = params.p;
    let k = params.k_coeff();
    let m = params.m;
    let x0 = constant_eq_minimizer(params).ok();
    let f = |x: f64| constant_eq(x, params).unwrap();

    if k > 0.0 {
        let x00 = (2.0 * k / (p - 1.0)).powf(1.0 / (p - 1.0));
        if m >= 0.0 {
            // Increasing from -2K/(p-1) < 0: unique root at or below x00.
            let root = if f(x00) == 0.0 {
                Some(x00)
            } else {
                let mut lo = x00;
                while f(lo) >= 0.0 && lo > 1e-280 {
                    lo *= 0.1;
                }
                polish(params, lo, x00 + 1.0)
            };
            return ConstantSolutionSet {
                case_tag: CaseTag::UniqueRootMpos,
                roots: root.into_iter().collect(),
                x0,
            };
        }
        // M < 0: minimum below zero, unique root beyond the minimizer.
        let xm = x0.expect("minimizer exists for M < 0");
        let mut hi = (xm.max(x00)) * 2.0;
        while f(hi) <= 0.0 && hi < 1e280 {
            hi *= 2.0;
        }
        let root = polish(params, xm, hi);
        return ConstantSolutionSet {
            case_tag: CaseTag::UniqueRootMneg,
            roots: root.into_iter().collect(),
            x0,
        };
    }

    if k == 0.0 {
        if m >= 0.0 {
            return ConstantSolutionSet {
                case_tag: CaseTag::NoRoot,
                roots: vec![],
                x0,
            };
        }
        let xm = x0.expect("minimizer exists for M < 0");
        let mut hi = xm * 2.0;
        while f(hi) <= 0.0 && hi < 1e280 {
            hi *= 2.0;
        }
        let root = polish(params, xm, hi);
        return ConstantSolutionSet {
            case_tag: CaseTag::UniqueRootMneg,
            roots: root.into_iter().collect(),
            x0,
        };
    }

    // K < 0: no root for M >= 0; for M < 0 compare against -μ*.
    if m >= 0.0 {
        return ConstantSolutionSet {
            case_tag: CaseTag::NoRoot,
            roots: vec![],
            x0,
        };
    }
    let mu = critical_constants(params)
        .mu_star
        .expect("μ* defined whenever K < 0");
    let delta = m + mu;
    if delta > 0.0 {
        return ConstantSolutionSet {
            case_tag: CaseTag::NoRoot,
            roots: vec![],
            x0,
        };
    }
    let x_star = (2.0 * k.abs() / (p * (p - 1.0))).powf(1.0 / (p - 1.0));
    if delta == 0.0 {
        return ConstantSolutionSet {
            case_tag: CaseTag::DoubleRoot,
            roots: vec![x_star],
            x0,
        };
    }
    let xm = x0.expect("minimizer exists for M < 0");
    if f(xm) >= 0.0 {
        // Roundoff-degenerate: M is below -μ* by less than the float noise
        // of the minimum value.
        return ConstantSolutionSet {
            case_tag: CaseTag::DoubleRoot,
            roots: vec![x_star],
            x0,
        };
    }
    let mut lo = 0.5 * xm;
    while f(lo) <= 0.0 && lo > 1e-280 {
        lo *= 0.1;
    }
    let mut hi = 2.0 * xm;
    while f(hi) <= 0.0 && hi < 1e280 {
        hi *= 2.0;
    }
    let r1 = polish(params, lo, xm);
    let r2 = polish(params, xm, hi);
    let roots: Vec<f64> = r1.into_iter().chain(r2).collect();
    ConstantSolutionSet {
        case_tag: CaseTag::TwoRoots,
        roots,
        x0,
    }
}

/// Which of the two roots to use in the two-root regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootBranch {
    Smaller,
    Larger,
}

/// The map `Φ(M) = M (2/(p-1))^{2p/(p+1)} X_M^{(p-1)/(p+1)}`, evaluated
/// through the equation identity `Φ(M) = 2K/(p-1) - X_M^{p-1}` at the
/// unique root. Applicable in the unique-root regimes (and at the double
/// root, where both branch values coincide).
pub fn phi(m: f64, params: &ProblemParams) -> Result<f64, SeparableError> {
    let pm = params.with_m(m);
    let sol = solve_constant_solutions(&pm);
    match sol.case_tag {
        CaseTag::UniqueRootMpos | CaseTag::UniqueRootMneg | CaseTag::DoubleRoot => {
            let x = sol.roots[0];
            Ok(2.0 * pm.k_coeff() / (pm.p - 1.0) - x.powf(pm.p - 1.0))
        }
        _ => Err(SeparableError::NotApplicable),
    }
}

/// Branch version of [`phi`] for the two-root regime.
pub fn phi_root(m: f64, branch: RootBranch, params: &ProblemParams) -> Result<f64, SeparableError> {
    let pm = params.with_m(m);
    let sol = solve_constant_solutions(&pm);
    let x = match (sol.case_tag, branch) {
        (CaseTag::TwoRoots, RootBranch::Smaller) => sol.roots[0],
        (CaseTag::TwoRoots, RootBranch::Larger) => sol.roots[1],
        (CaseTag::DoubleRoot, _) => sol.roots[0],
        _ => return Err(SeparableError::NotApplicable),
    };
    Ok(2.0 * pm.k_coeff() / (pm.p - 1.0) - x.powf(pm.p - 1.0))
}

/// k-th nonzero eigenvalue of the Laplace–Beltrami operator on the unit
/// (N-1)-sphere: `λ_k = k(k + N - 2)`.
pub fn eigenvalue(k: u32, n: u32) -> f64 {
    assert!(k >= 1 && n >= 2);
    f64::from(k) * f64::from(k + n - 2)
}

/// A coefficient value at which the linearization around the constant
/// separable solution becomes singular in the k-th spherical mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationPoint {
    pub k: u32,
    pub lambda_k: f64,
    pub m_k: f64,
    /// Constant separable amplitude at `m_k`.
    pub x_at_mk: f64,
    /// In the two-root regime, whether the located M lies at or below the
    /// merge value -μ* (reported, not assumed).
    pub within_branch_domain: Option<bool>,
}

/// Solve `Φ(M) = (p+1)(2K - λ_k)/(p(p-1))` for the bifurcation
/// coefficient.
///
/// The equation identity makes the inversion closed-form: the target
/// fixes `X^{p-1} = 2K/(p-1) - Φ`, and the defining product then yields M
/// directly. In the two-root regime the larger root branch is used (the
/// smaller-root branch admits no solution; see [`bifurcation_point_from`]).
pub fn bifurcation_point(k: u32, params: &ProblemParams) -> Option<BifurcationPoint> {
    let branch = if params.k_coeff() < 0.0 {
        RootBranch::Larger
    } else {
        RootBranch::Smaller // ignored in the unique-root regime
    };
    bifurcation_point_from(k, branch, params)
}

/// Branch-explicit version of [`bifurcation_point`].
pub fn bifurcation_point_from(
    k: u32,
    branch: RootBranch,
    params: &ProblemParams,
) -> Option<BifurcationPoint> {
    let p = params.p;
    let kk = params.k_coeff();
    let lambda = eigenvalue(k, params.n);
    let target = (p + 1.0) * (2.0 * kk - lambda) / (p * (p - 1.0));
    let endpoint = 2.0 * kk / (p - 1.0);

    if kk >= 0.0 {
        // Unique-root regime: Φ ranges over (-∞, 2K/(p-1)), increasing,
        // with Φ(0) = 0 splitting the M >= 0 and M < 0 sides.
        if target >= endpoint {
            return None;
        }
        if kk == 0.0 && target >= 0.0 {
            return None; // no root exists for M >= 0 at K = 0
        }
        let x = (endpoint - target).powf(1.0 / (p - 1.0));
        let m_k = if target == 0.0 {
            0.0
        } else {
            target / (grad_coeff(p) * x.powf((p - 1.0) / (p + 1.0)))
        };
        return Some(BifurcationPoint {
            k,
            lambda_k: lambda,
            m_k,
            x_at_mk: x,
            within_branch_domain: None,
        });
    }

    // Two-root regime. Φ on the larger branch increases onto
    // (-∞, 2K(p+1)/(p(p-1))]; on the smaller branch it stays below that
    // merge value's mirror and the target is never reachable.
    let merge_value = 2.0 * kk * (p + 1.0) / (p * (p - 1.0));
    match branch {
        RootBranch::Smaller => {
            // Range is [2K(p+1)/(p(p-1)), 2K/(p-1)); target >= merge_value
            // would need λ_k <= 0.
            if target >= merge_value && target < endpoint {
                // Unreachable for any k >= 1; kept as a guard.
                let x = (endpoint - target).powf(1.0 / (p - 1.0));
                let m_k = target / (grad_coeff(p) * x.powf((p - 1.0) / (p + 1.0)));
                return Some(BifurcationPoint {
                    k,
                    lambda_k: lambda,
                    m_k,
                    x_at_mk: x,
                    within_branch_domain: Some(true),
                });
            }
            None
        }
        RootBranch::Larger => {
            if target > merge_value {
                return None;
            }
            let x = (endpoint - target).powf(1.0 / (p - 1.0));
            let m_k = target / (grad_coeff(p) * x.powf((p - 1.0) / (p + 1.0)));
            let mu = critical_constants(params).mu_star.unwrap_or(f64::NAN);
            Some(BifurcationPoint {
                k,
                lambda_k: lambda,
                m_k,
                x_at_mk: x,
                within_branch_domain: Some(m_k <= -mu + 1e-12 * mu.abs()),
            })
        }
    }
}

/// Existence of a bifurcation branch in the k-th mode.
#[derive(Debug, Clone, PartialEq)]
pub enum BranchPredicate {
    /// K >= 0: branches off the unique constant solution.
    UniqueRootRegime {
        k: u32,
        m_nonneg: bool,
        m_neg: bool,
        reason: String,
    },
    /// K < 0: branches off the two-root family.
    TwoRootRegime {
        k: u32,
        from_larger: bool,
        from_smaller: bool,
        reason: String,
    },
}

impl BranchPredicate {
    pub fn exists(&self) -> bool {
        match self {
            BranchPredicate::UniqueRootRegime {
                m_nonneg, m_neg, ..
            } => *m_nonneg || *m_neg,
            BranchPredicate::TwoRootRegime {
                from_larger,
                from_smaller,
                ..
            } => *from_larger || *from_smaller,
        }
    }
}

/// Decide branch existence from the range inequalities of the Φ maps.
pub fn branch_exists(k: u32, params: &ProblemParams) -> BranchPredicate {
    let p = params.p;
    let kk = params.k_coeff();
    let lambda = eigenvalue(k, params.n);
    if kk >= 0.0 {
        let m_nonneg = kk > 0.0 && lambda <= 2.0 * kk && lambda > 2.0 * kk / (p + 1.0);
        let m_neg = lambda > 2.0 * kk;
        let reason = format!(
            "λ_{k} = {lambda}: M ≥ 0 branch needs 2K/(p+1) < λ_k ≤ 2K = {:.6}; \
             M < 0 branch needs λ_k > 2K",
            2.0 * kk
        );
        BranchPredicate::UniqueRootRegime {
            k,
            m_nonneg,
            m_neg,
            reason,
        }
    } else {
        let reason = format!(
            "λ_{k} = {lambda} > 0 ≥ targets reachable by the smaller-root map; \
             the larger-root map is onto (-∞, 2K(p+1)/(p(p-1))] and always admits M_k"
        );
        BranchPredicate::TwoRootRegime {
            k,
            from_larger: true,
            from_smaller: false,
            reason,
        }
    }
}

/// Positive roots of the one-dimensional singular-profile equation
/// (the N = 1 case of the constant-solution equation), defined for
/// M at or below -μ*(1). Returns the pair (smaller, larger); they
/// coincide at the threshold.
pub fn exterior_roots(p: f64, m: f64) -> Option<(f64, f64)> {
    let params = ProblemParams::new(1, p, 2.0 * p / (p + 1.0), m).ok()?;
    let sol = solve_constant_solutions(&params);
    match sol.case_tag {
        CaseTag::TwoRoots => Some((sol.roots[0], sol.roots[1])),
        CaseTag::DoubleRoot => Some((sol.roots[0], sol.roots[0])),
        _ => None,
    }
}

/// Comparison of computed roots against their leading-order forms for
/// large |M|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport {
    pub m: f64,
    /// X over `((p-1)/2)(K/M)^{(p+1)/(p-1)}` — the unique root as
    /// M → +∞, or the smaller root as M → -∞ in the two-root regime.
    pub small_root_ratio: Option<f64>,
    /// X over `(2/(p-1))^{2/(p-1)} |M|^{(p+1)/(p(p-1))}` — the unique root
    /// (K > 0) or larger root (K < 0) as M → -∞.
    pub large_root_ratio: Option<f64>,
    /// Two-sided sandwich for the unique root with K > 0, M < 0:
    /// max{(2K/(p-1))^{1/(p-1)}, c|M|^e} ≤ X ≤ 2^{2/(p-1)} (sum of both).
    pub sandwich_holds: Option<bool>,
}

/// Evaluate the asymptotic predictions at a large coefficient |M| >= 100.
pub fn asymptotic_check(params: &ProblemParams, m_large: f64) -> AsymptoticReport {
    assert!(m_large.abs() >= 100.0);
    let p = params.p;
    let kk = params.k_coeff();
    let pm = params.with_m(m_large);
    let sol = solve_constant_solutions(&pm);
    let small_pred = (p - 1.0) / 2.0 * (kk / m_large).powf((p + 1.0) / (p - 1.0));
    let large_pred =
        (2.0 / (p - 1.0)).powf(2.0 / (p - 1.0)) * (-m_large).powf((p + 1.0) / (p * (p - 1.0)));
    match (sol.case_tag, m_large > 0.0) {
        (CaseTag::UniqueRootMpos, true) => AsymptoticReport {
            m: m_large,
            small_root_ratio: Some(sol.roots[0] / small_pred),
            large_root_ratio: None,
            sandwich_holds: None,
        },
        (CaseTag::UniqueRootMneg, false) => {
            let x = sol.roots[0];
            let lo_a = (2.0 * kk / (p - 1.0)).powf(1.0 / (p - 1.0));
            let lo = lo_a.max(large_pred);
            let hi = 2.0f64.powf(2.0 / (p - 1.0)) * (lo_a + large_pred);
            AsymptoticReport {
                m: m_large,
                small_root_ratio: None,
                large_root_ratio: Some(x / large_pred),
                sandwich_holds: Some(lo <= x && x <= hi),
            }
        }
        (CaseTag::TwoRoots, false) => AsymptoticReport {
            m: m_large,
            small_root_ratio: Some(sol.roots[0] / small_pred),
            large_root_ratio: Some(sol.roots[1] / large_pred),
            sandwich_holds: None,
        },
        _ => AsymptoticReport {
            m: m_large,
            small_root_ratio: None,
            large_root_ratio: None,
            sandwich_holds: None,
        },
    }
}

/// Normalized residual used by the root-quality contract:
/// |f_M(X)| / max(1, X^{p-1}).
pub fn root_residual(x: f64, params: &ProblemParams) -> f64 {
    constant_eq(x, params).map_or(f64::INFINITY, |f| f.abs() / x.powf(params.p - 1.0).max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::linspace;

    fn qc(p: f64) -> f64 {
        2.0 * p / (p + 1.0)
    }

    fn pp(n: u32, p: f64, m: f64) -> ProblemParams {
        ProblemParams::new(n, p, qc(p), m).unwrap()
    }

    fn mu_star(params: &ProblemParams) -> f64 {
        critical_constants(params).mu_star.unwrap()
    }

    #[test]
    fn no_root_below_serrin_with_m_zero() {
        // K = -1 at (N=3, p=2): f_0(X) = X + 2 > 0.
        let params = pp(3, 2.0, 0.0);
        assert!(constant_eq(1.0, &params).unwrap() > 0.0);
        let sol = solve_constant_solutions(&params);
        assert_eq!(sol.case_tag, CaseTag::NoRoot);
        assert!(sol.roots.is_empty());
    }

    #[test]
    fn double_root_at_threshold() {
        let params0 = pp(3, 2.0, 0.0);
        let mu = mu_star(&params0);
        let params = params0.with_m(-mu);
        // f(1) = 1 - μ*·2^{4/3} + 2 = 0 exactly.
        assert!(constant_eq(1.0, &params).unwrap().abs() <= 1e-12);
        let sol = solve_constant_solutions(&params);
        assert_eq!(sol.case_tag, CaseTag::DoubleRoot);
        assert!((sol.roots[0] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn no_root_strictly_inside_threshold() {
        let sol = solve_constant_solutions(&pp(3, 2.0, -1.0));
        assert_eq!(sol.case_tag, CaseTag::NoRoot);
    }

    #[test]
    fn two_roots_below_threshold() {
        let params = pp(3, 2.0, -2.0);
        let sol = solve_constant_solutions(&params);
        assert_eq!(sol.case_tag, CaseTag::TwoRoots);
        let x0 = sol.x0.unwrap();
        assert!((x0 - 2.1773242158072694).abs() < 1e-12);
        assert!(sol.roots[0] < x0 && x0 < sol.roots[1]);
        assert!((sol.roots[0] - 0.069_216_180_033_222_1).abs() < 1e-10);
        assert!((sol.roots[1] - 8.136280786890926).abs() < 1e-9);
        for &x in &sol.roots {
            assert!(root_residual(x, &params) <= 1e-10);
        }
    }

    #[test]
    fn unique_root_supercritical() {
        let params = pp(4, 5.0, 0.0);
        let sol = solve_constant_solutions(&params);
        assert_eq!(sol.case_tag, CaseTag::UniqueRootMpos);
        assert!((sol.roots[0] - 0.9306048591020996).abs() < 1e-12);
        // Fixed point of the log-variable system coincides with the root.
        let (xstar, _) = crate::diagnostics::xy_fixed_point(&params).unwrap();
        assert!((xstar - sol.roots[0]).abs() <= 1e-12);
    }

    #[test]
    fn minimizer_is_stationary() {
        let params = pp(3, 2.0, -2.0);
        let x0 = constant_eq_minimizer(&params).unwrap();
        let scale = constant_eq_deriv(1.0, &params).unwrap().abs().max(1.0);
        assert!(constant_eq_deriv(x0, &params).unwrap().abs() <= 1e-12 * scale);
        // X0 -> 0 as M -> 0-.
        let tiny = constant_eq_minimizer(&pp(3, 2.0, -1e-8)).unwrap();
        assert!(tiny < 1e-8);
        assert!(constant_eq_minimizer(&pp(3, 2.0, 1.0)).is_err());
    }

    #[test]
    fn domain_errors() {
        let params = pp(3, 2.0, 1.0);
        assert_eq!(constant_eq(0.0, &params), Err(SeparableError::DomainError));
        assert_eq!(constant_eq(-1.0, &params), Err(SeparableError::DomainError));
    }

    #[test]
    fn case_map_is_exhaustive_and_consistent() {
        // 50×50 grid over (p, M) at N = 3: exactly one tag each, root count
        // matching the tag, every root passing the residual contract.
        for p in linspace(1.2, 6.0, 50) {
            let base = pp(3, p, 0.0);
            for m in linspace(-5.0, 5.0, 50) {
                let params = base.with_m(m);
                let sol = solve_constant_solutions(&params);
                let expected = match sol.case_tag {
                    CaseTag::NoRoot => 0,
                    CaseTag::UniqueRootMpos | CaseTag::UniqueRootMneg | CaseTag::DoubleRoot => 1,
                    CaseTag::TwoRoots => 2,
                };
                assert_eq!(sol.roots.len(), expected, "p={p} m={m} {:?}", sol.case_tag);
                for &x in &sol.roots {
                    assert!(root_residual(x, &params) <= 1e-10, "p={p} m={m} x={x}");
                }
                if sol.case_tag == CaseTag::TwoRoots {
                    let x0 = sol.x0.unwrap();
                    assert!(sol.roots[0] < x0 && x0 < sol.roots[1]);
                }
            }
        }
    }

    #[test]
    fn phi_identity_and_monotonicity() {
        // Φ(0) = 0 above the Serrin exponent (up to the root polish).
        let params = pp(4, 5.0, 0.0);
        assert!(phi(0.0, &params).unwrap().abs() <= 1e-13);
        // Increasing on M >= 0 with range inside [0, 2K/(p-1)).
        let endpoint = 2.0 * params.k_coeff() / (params.p - 1.0);
        let vals: Vec<f64> = [0.0, 1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|&m| phi(m, &params).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert!(vals.iter().all(|&v| (0.0..endpoint).contains(&v)));
        // Increasing on M < 0 too (onto (-∞, 0]).
        let neg: Vec<f64> = [-10.0, -5.0, -1.0]
            .iter()
            .map(|&m| phi(m, &params).unwrap())
            .collect();
        for w in neg.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert!(neg.iter().all(|&v| v < 0.0));
    }

    #[test]
    fn phi_branches_meet_at_double_root() {
        let params = pp(3, 2.0, 0.0);
        let mu = mu_star(&params);
        let a = phi_root(-mu, RootBranch::Smaller, &params).unwrap();
        let b = phi_root(-mu, RootBranch::Larger, &params).unwrap();
        assert_eq!(a, b);
        // Smaller decreasing, larger increasing in M on the two-root side.
        let s: Vec<f64> = [-4.0, -3.0, -2.0]
            .iter()
            .map(|&m| phi_root(m, RootBranch::Smaller, &params).unwrap())
            .collect();
        let l: Vec<f64> = [-4.0, -3.0, -2.0]
            .iter()
            .map(|&m| phi_root(m, RootBranch::Larger, &params).unwrap())
            .collect();
        // In M (increasing order -4 < -3 < -2): smaller-root map decreases,
        // larger-root map increases.
        assert!(s[0] > s[1] && s[1] > s[2]);
        assert!(l[0] < l[1] && l[1] < l[2]);
        assert!(phi_root(-1.0, RootBranch::Larger, &params).is_err());
    }

    #[test]
    fn eigenvalue_values() {
        assert_eq!(eigenvalue(1, 3), 2.0);
        assert_eq!(eigenvalue(2, 4), 8.0);
        assert_eq!(eigenvalue(1, 4), 3.0);
    }

    #[test]
    fn bifurcation_at_boundary_exponent() {
        // N=4, p=5 = (N+1)/(N-3): 2K = λ₁ = 3, so M₁ = 0 exactly.
        let params = pp(4, 5.0, 0.0);
        let b = bifurcation_point(1, &params).unwrap();
        assert!(b.m_k.abs() <= 1e-10);
        assert!((b.x_at_mk - 0.9306048591020996).abs() < 1e-12);
        // Both defining equations hold.
        let pm = params.with_m(b.m_k);
        assert!(root_residual(b.x_at_mk, &pm) <= 1e-10);
    }

    #[test]
    fn bifurcation_negative_mode_two() {
        let params = pp(4, 5.0, 0.0);
        let b = bifurcation_point(2, &params).unwrap();
        assert!(b.m_k < 0.0);
        assert!((b.m_k - -4.160167646103808).abs() < 1e-9);
        // Residual of the mode condition: the defining product equals the
        // target.
        let p = params.p;
        let target = (p + 1.0) * (2.0 * params.k_coeff() - b.lambda_k) / (p * (p - 1.0));
        let product = b.m_k * grad_coeff(p) * b.x_at_mk.powf((p - 1.0) / (p + 1.0));
        assert!((product - target).abs() <= 1e-10);
        let pm = params.with_m(b.m_k);
        assert!(root_residual(b.x_at_mk, &pm) <= 1e-10);
        // Cross-check against the independent root solver: the computed
        // amplitude is the constant solution at M_k.
        let sol = solve_constant_solutions(&pm);
        assert_eq!(sol.case_tag, CaseTag::UniqueRootMneg);
        assert!((sol.roots[0] - b.x_at_mk).abs() <= 1e-9);
    }

    #[test]
    fn branch_predicates_match_root_regimes() {
        // (N=4, p=5, k=1): boundary case, M >= 0 branch with M₀ = 0.
        match branch_exists(1, &pp(4, 5.0, 0.0)) {
            BranchPredicate::UniqueRootRegime {
                m_nonneg, m_neg, ..
            } => {
                assert!(m_nonneg && !m_neg);
            }
            other => panic!("unexpected {other:?}"),
        }
        // (N=4, p=3, k=1): no M >= 0 branch, M < 0 branch exists.
        match branch_exists(1, &pp(4, 3.0, 0.0)) {
            BranchPredicate::UniqueRootRegime {
                m_nonneg, m_neg, ..
            } => {
                assert!(!m_nonneg && m_neg);
            }
            other => panic!("unexpected {other:?}"),
        }
        let b = bifurcation_point(1, &pp(4, 3.0, 0.0)).unwrap();
        assert!((b.m_k - -0.5867411578622623).abs() < 1e-9);
        // (N=3, p=2): two-root regime, branch from the larger root for
        // every k; never from the smaller.
        for k in 1..=4 {
            match branch_exists(k, &pp(3, 2.0, 0.0)) {
                BranchPredicate::TwoRootRegime {
                    from_larger,
                    from_smaller,
                    ..
                } => {
                    assert!(from_larger && !from_smaller);
                }
                other => panic!("unexpected {other:?}"),
            }
            let b = bifurcation_point(k, &pp(3, 2.0, 0.0)).unwrap();
            assert_eq!(b.within_branch_domain, Some(true));
            assert!(bifurcation_point_from(k, RootBranch::Smaller, &pp(3, 2.0, 0.0)).is_none());
        }
    }

    #[test]
    fn higher_modes_push_m_to_minus_infinity() {
        let params = pp(4, 5.0, 0.0);
        let ms: Vec<f64> = (1..=6)
            .map(|k| bifurcation_point(k, &params).unwrap().m_k)
            .collect();
        for w in ms.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn exterior_roots_threshold() {
        let p = 3.0;
        let mu1 = mu_star(&pp(1, p, 0.0));
        assert!((mu1 - 2.9511517858675242).abs() < 1e-12);
        // Double root at the threshold.
        let (x1, x2) = exterior_roots(p, -mu1).unwrap();
        assert_eq!(x1, x2);
        assert!((x1 - (2.0f64 / 3.0).sqrt()).abs() <= 1e-10);
        // No roots above the threshold.
        assert!(exterior_roots(p, -0.5 * mu1).is_none());
        assert!(exterior_roots(p, 1.0).is_none());
        // Two genuine roots below it, satisfying the residual contract.
        let params = pp(1, p, -1.5 * mu1);
        let (x1, x2) = exterior_roots(p, -1.5 * mu1).unwrap();
        assert!(x1 < x2);
        assert!(root_residual(x1, &params) <= 1e-10);
        assert!(root_residual(x2, &params) <= 1e-10);
    }

    #[test]
    fn exterior_profile_solves_line_equation() {
        // U(t) = X t^{-2/(p-1)} must satisfy -U'' = U^p + M|U'|^{2p/(p+1)}.
        let p = 3.0;
        let mu1 = mu_star(&pp(1, p, 0.0));
        let m = -1.5 * mu1;
        let params = pp(1, p, m);
        let (x1, x2) = exterior_roots(p, m).unwrap();
        for x in [x1, x2] {
            for t in crate::util::linspace(0.5, 5.0, 40) {
                let s = 2.0 / (p - 1.0);
                let u = x * t.powf(-s);
                let du = -s * x * t.powf(-s - 1.0);
                let dd = s * (s + 1.0) * x * t.powf(-s - 2.0);
                let res = crate::radial::residual(t, u, du, dd, &params).abs();
                let scale = dd.abs() + u.powf(p);
                assert!(res <= 1e-9 * scale, "t={t} x={x}: {res}");
            }
        }
    }

    #[test]
    fn asymptotics_large_positive_m() {
        let rep = asymptotic_check(&pp(4, 5.0, 0.0), 1e4);
        let ratio = rep.small_root_ratio.unwrap();
        assert!((0.9..=1.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn asymptotics_large_negative_m_two_roots() {
        let rep = asymptotic_check(&pp(3, 2.0, 0.0), -1e4);
        let r1 = rep.small_root_ratio.unwrap();
        let r2 = rep.large_root_ratio.unwrap();
        assert!((0.9..=1.1).contains(&r2), "large ratio {r2}");
        assert!((0.9..=1.1).contains(&r1), "small ratio {r1}");
    }

    #[test]
    fn sandwich_in_unique_negative_regime() {
        for m in [-100.0, -1000.0, -1e4] {
            let rep = asymptotic_check(&pp(4, 5.0, 0.0), m);
            assert_eq!(rep.sandwich_holds, Some(true), "M = {m}");
        }
    }

    #[test]
    fn merge_point_matches_mu_star() {
        // Locate the M where the two roots merge by bisection on the case
        // tag and compare with the closed form.
        let params = pp(3, 2.0, 0.0);
        let mu = mu_star(&params);
        let mut lo = -3.0; // TwoRoots side
        let mut hi = -0.5; // NoRoot side
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            match solve_constant_solutions(&params.with_m(mid)).case_tag {
                CaseTag::TwoRoots | CaseTag::DoubleRoot => lo = mid,
                _ => hi = mid,
            }
        }
        assert!((0.5 * (lo + hi) + mu).abs() <= 1e-8);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Every returned root satisfies the residual contract, for
            // random (p, M) in the two-root-capable region.
            #[test]
            fn roots_satisfy_contract(p in 1.3f64..2.8, m in -8.0f64..8.0) {
                let params = pp(3, p, m);
                let sol = solve_constant_solutions(&params);
                for &x in &sol.roots {
                    prop_assert!(root_residual(x, &params) <= 1e-10);
                }
            }
        }
    }
}

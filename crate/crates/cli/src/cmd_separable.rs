//! `gslab separable`: constant separable solutions (roots, case tags,
//! residuals) over a single M or an M grid, and bifurcation points per
//! spherical mode. The gradient exponent is always the scale-invariant
//! one here; a -q flag is rejected to avoid silent reinterpretation.

use crate::error::CliError;
use crate::fmtio::fmt_f64;
use crate::EquationArgs;
use clap::Args;
use gslab_core::separable::{
    bifurcation_point, branch_exists, constant_eq, root_residual, solve_constant_solutions,
    BranchPredicate,
};
use gslab_core::util::{linspace, logspace};
use serde::Serialize;

#[derive(Args, Debug)]
pub struct SeparableArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Grid of coefficients LO:HI:COUNT[:lin|log] instead of a single -M
    #[arg(long = "m-grid", value_parser = parse_grid, allow_hyphen_values = true)]
    pub m_grid: Option<MGrid>,
    /// Also locate bifurcation points for modes 1..=K
    #[arg(long)]
    pub bifurcate: bool,
    /// Highest spherical mode index for --bifurcate
    #[arg(short = 'k', long = "mode", default_value_t = 1)]
    pub k_max: u32,
    /// Emit JSON instead of text tables
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Debug)]
pub struct MGrid {
    lo: f64,
    hi: f64,
    count: usize,
    log: bool,
}

fn parse_grid(s: &str) -> Result<MGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(parts.len() == 3 || parts.len() == 4) {
        return Err("expected LO:HI:COUNT[:lin|log]".into());
    }
    let lo: f64 = parts[0].parse().map_err(|_| "bad LO")?;
    let hi: f64 = parts[1].parse().map_err(|_| "bad HI")?;
    let count: usize = parts[2].parse().map_err(|_| "bad COUNT")?;
    let log = matches!(parts.get(3), Some(&"log"));
    if count < 1 || lo > hi {
        return Err("need LO <= HI and COUNT >= 1".into());
    }
    if log && lo <= 0.0 {
        return Err("log spacing needs LO > 0".into());
    }
    Ok(MGrid { lo, hi, count, log })
}

#[derive(Serialize)]
struct RootRow {
    m: f64,
    case: String,
    x0: Option<f64>,
    roots: Vec<f64>,
    residuals: Vec<f64>,
}

#[derive(Serialize)]
struct BifurcationRow {
    k: u32,
    lambda_k: f64,
    m_k: Option<f64>,
    x_at_mk: Option<f64>,
    eq_residual: Option<f64>,
    mode_residual: Option<f64>,
    within_branch_domain: Option<bool>,
    branch: String,
}

#[derive(Serialize)]
struct Output {
    n: u32,
    p: f64,
    q: f64,
    rows: Vec<RootRow>,
    bifurcations: Vec<BifurcationRow>,
}

pub fn run(args: SeparableArgs) -> Result<(), CliError> {
    if args.eq.q.is_some() {
        return Err(CliError::Usage(
            "separable solutions exist only at the scale-invariant q = 2p/(p+1); drop -q".into(),
        ));
    }
    let base = args.eq.resolve(false)?;
    let ms: Vec<f64> = match (&args.m_grid, args.eq.m) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("give either -M or --m-grid".into()));
        }
        (Some(g), None) => {
            if g.log {
                logspace(g.lo, g.hi, g.count)
            } else {
                linspace(g.lo, g.hi, g.count)
            }
        }
        (None, Some(m)) => vec![m],
        (None, None) => {
            if args.bifurcate {
                vec![]
            } else {
                return Err(CliError::Usage("give -M, --m-grid, or --bifurcate".into()));
            }
        }
    };

    let mut rows = Vec::new();
    for &m in &ms {
        let params = base.with_m(m);
        let sol = solve_constant_solutions(&params);
        rows.push(RootRow {
            m,
            case: sol.case_tag.to_string(),
            x0: sol.x0,
            residuals: sol
                .roots
                .iter()
                .map(|&x| root_residual(x, &params))
                .collect(),
            roots: sol.roots,
        });
    }

    let mut bifurcations = Vec::new();
    if args.bifurcate {
        if args.k_max < 1 {
            return Err(CliError::Usage("mode index must be >= 1".into()));
        }
        for k in 1..=args.k_max {
            let predicate = branch_exists(k, &base);
            let branch = match &predicate {
                BranchPredicate::UniqueRootRegime {
                    m_nonneg, m_neg, ..
                } => format!("m_nonneg: {m_nonneg}, m_neg: {m_neg}"),
                BranchPredicate::TwoRootRegime {
                    from_larger,
                    from_smaller,
                    ..
                } => format!("from_larger: {from_larger}, from_smaller: {from_smaller}"),
            };
            match bifurcation_point(k, &base) {
                Some(b) => {
                    let pm = base.with_m(b.m_k);
                    let eq_res = constant_eq(b.x_at_mk, &pm).map(f64::abs).ok();
                    let p = base.p;
                    let target = (p + 1.0) * (2.0 * base.k_coeff() - b.lambda_k) / (p * (p - 1.0));
                    let product = b.m_k
                        * (2.0 / (p - 1.0)).powf(2.0 * p / (p + 1.0))
                        * b.x_at_mk.powf((p - 1.0) / (p + 1.0));
                    bifurcations.push(BifurcationRow {
                        k,
                        lambda_k: b.lambda_k,
                        m_k: Some(b.m_k),
                        x_at_mk: Some(b.x_at_mk),
                        eq_residual: eq_res,
                        mode_residual: Some((product - target).abs()),
                        within_branch_domain: b.within_branch_domain,
                        branch,
                    });
                }
                None => bifurcations.push(BifurcationRow {
                    k,
                    lambda_k: gslab_core::separable::eigenvalue(k, base.n),
                    m_k: None,
                    x_at_mk: None,
                    eq_residual: None,
                    mode_residual: None,
                    within_branch_domain: None,
                    branch,
                }),
            }
        }
    }

    let out = Output {
        n: base.n,
        p: base.p,
        q: base.q,
        rows,
        bifurcations,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }

    println!(
        "N = {}, p = {}, q = 2p/(p+1) = {}",
        out.n,
        out.p,
        fmt_f64(out.q)
    );
    if !out.rows.is_empty() {
        println!("{:<24} {:<16} roots (residuals)", "M", "case");
        for r in &out.rows {
            let roots = r
                .roots
                .iter()
                .zip(&r.residuals)
                .map(|(x, res)| format!("{} ({:.2e})", fmt_f64(*x), res))
                .collect::<Vec<_>>()
                .join("  ");
            println!(
                "{:<24} {:<16} {}",
                fmt_f64(r.m),
                r.case,
                if roots.is_empty() { "-" } else { &roots }
            );
        }
    }
    if !out.bifurcations.is_empty() {
        println!("bifurcation points:");
        for b in &out.bifurcations {
            match (b.m_k, b.x_at_mk) {
                (Some(m), Some(x)) => println!(
                    "  k = {} (λ = {}): M_k = {}, X = {}, residuals eq {:.2e} / mode {:.2e}{}  [{}]",
                    b.k,
                    b.lambda_k,
                    fmt_f64(m),
                    fmt_f64(x),
                    b.eq_residual.unwrap_or(f64::NAN),
                    b.mode_residual.unwrap_or(f64::NAN),
                    match b.within_branch_domain {
                        Some(true) => ", below merge threshold",
                        Some(false) => ", OUTSIDE branch domain",
                        None => "",
                    },
                    b.branch
                ),
                _ => println!("  k = {} (λ = {}): none  [{}]", b.k, b.lambda_k, b.branch),
            }
        }
    }
    Ok(())
}

//! `gslab constants`: dump every closed-form constant with its defining
//! formula.

use crate::error::CliError;
use crate::fmtio::fmt_f64;
use crate::EquationArgs;
use clap::Args;
use gslab_core::params::{critical_constants, regime, DEFAULT_EQ_TOL};
use serde::Serialize;

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Emit JSON instead of the text table
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct ConstantsDump {
    n: u32,
    p: f64,
    q: f64,
    m: f64,
    regime: String,
    p_serrin: f64,
    p_sobolev: f64,
    q_crit: f64,
    k: f64,
    omega: f64,
    omega_bar: f64,
    mu_star: Option<f64>,
    m_dagger: f64,
    q_np: f64,
    q_bar: Option<f64>,
    q_bar_ambiguous: bool,
    c_amplitude: Option<f64>,
}

pub fn run(args: ConstantsArgs) -> Result<(), CliError> {
    let params = args.eq.resolve(false)?;
    let c = critical_constants(&params);
    let reg = format!("{:?}", regime(&params, DEFAULT_EQ_TOL));
    if args.json {
        let dump = ConstantsDump {
            n: params.n,
            p: params.p,
            q: params.q,
            m: params.m,
            regime: reg,
            p_serrin: c.p_serrin,
            p_sobolev: c.p_sobolev,
            q_crit: c.q_crit,
            k: c.k,
            omega: c.omega,
            omega_bar: c.omega_bar,
            mu_star: c.mu_star,
            m_dagger: c.m_dagger,
            q_np: c.q_np,
            q_bar: c.q_bar,
            q_bar_ambiguous: c.q_bar_ambiguous,
            c_amplitude: c.c_amplitude,
        };
        println!("{}", serde_json::to_string_pretty(&dump).unwrap());
        return Ok(());
    }

    let fmt = |v: f64| {
        if v.is_infinite() {
            "inf".to_string()
        } else {
            fmt_f64(v)
        }
    };
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_else(|| "n/a".to_string());
    println!(
        "parameters: N = {}, p = {}, q = {}, M = {}  [{reg}]",
        params.n, params.p, params.q, params.m
    );
    if args.eq.q.is_none() && !args.eq.q_critical {
        println!("(q not given; using the scale-invariant value 2p/(p+1))");
    }
    println!("p_serrin    = {:<24}  N/(N-2)", fmt(c.p_serrin));
    println!("p_sobolev   = {:<24}  (N+2)/(N-2)", fmt(c.p_sobolev));
    println!("q_crit      = {:<24}  2p/(p+1)", fmt(c.q_crit));
    println!("K           = {:<24}  ((N-2)p - N)/(p-1)", fmt(c.k));
    println!("omega       = {:<24}  ((p+1)q - 2p)/(p+1)", fmt(c.omega));
    println!("omega_bar   = {:<24}  (p-1)·omega/(q-1)", fmt(c.omega_bar));
    println!(
        "mu_star     = {:<24}  (p+1)·((N-(N-2)p)/(2p))^(p/(p+1))",
        opt(c.mu_star)
    );
    println!(
        "m_dagger    = {:<24}  ((p-1)/(p+1))^((p-1)/(p+1)) · (N(p+1)²/(4p))^(p/(p+1))",
        fmt(c.m_dagger)
    );
    println!("q_np        = {:<24}  2(N-1)p/(2N+p+1)", fmt(c.q_np));
    println!(
        "q_bar       = {:<24}  root in (q_crit, p) of (N-1)(X-p)² = (N+2-(N-2)p)((p+1)X-2p)X{}",
        opt(c.q_bar),
        if c.q_bar_ambiguous {
            "  [ambiguous: smaller root]"
        } else {
            ""
        }
    );
    println!(
        "c_amplitude = {:<24}  (4^(q'-1) p^q' N^q')^(-(q-1)/(2p-(p+1)q)), q' = q/(q-1)",
        opt(c.c_amplitude)
    );
    Ok(())
}

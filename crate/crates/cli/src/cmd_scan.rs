//! `gslab scan`: parameter sweeps over (p, q, M, a) grids with
//! deterministic CSV output, a hashed manifest, and optional SVG
//! classification maps.
//!
//! Grid points are independent work items; any scheduling is permitted,
//! and records are merged in lexicographic grid order (p, q, M, a) before
//! writing, so serial and parallel runs produce identical bytes.

use crate::config::Numerics;
use crate::error::CliError;
use crate::fmtio::{csv_row, fmt_f64, fmt_opt, write_file, write_manifest, Manifest};
use crate::{svg, EquationArgs, NumericArgs};
use clap::Args;
use gslab_core::radial::{integrate, ClassTag};
use gslab_core::util::{linspace, logspace};
use gslab_core::ProblemParams;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Fixed amplitude (omit when sweeping a)
    #[arg(short = 'a', long)]
    pub amplitude: Option<f64>,
    /// Swept axis NAME:MIN:MAX:COUNT[:lin|log]; NAME in {p, q, M, a}
    #[arg(long = "sweep", value_parser = parse_sweep)]
    pub sweeps: Vec<SweepAxis>,
    #[command(flatten)]
    pub numerics: NumericArgs,
    /// Output directory
    #[arg(long, default_value = "gslab_out")]
    pub out: PathBuf,
    /// Worker threads (default: one)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also write an SVG classification map (requires exactly two swept axes)
    #[arg(long)]
    pub svg: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

fn parse_sweep(s: &str) -> Result<SweepAxis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(parts.len() == 4 || parts.len() == 5) {
        return Err("expected NAME:MIN:MAX:COUNT[:lin|log]".into());
    }
    let name = parts[0].to_string();
    if !["p", "q", "M", "a"].contains(&name.as_str()) {
        return Err(format!("unknown axis `{name}` (use p, q, M or a)"));
    }
    let min: f64 = parts[1].parse().map_err(|_| "bad MIN")?;
    let max: f64 = parts[2].parse().map_err(|_| "bad MAX")?;
    let count: usize = parts[3].parse().map_err(|_| "bad COUNT")?;
    let log = match parts.get(4) {
        None | Some(&"lin") => false,
        Some(&"log") => true,
        Some(other) => return Err(format!("unknown spacing `{other}`")),
    };
    if count < 1 {
        return Err("COUNT must be >= 1".into());
    }
    if min > max {
        return Err("need MIN <= MAX".into());
    }
    if log && min <= 0.0 {
        return Err("log spacing needs MIN > 0".into());
    }
    Ok(SweepAxis {
        name,
        min,
        max,
        count,
        log,
    })
}

impl SweepAxis {
    fn values(&self) -> Vec<f64> {
        if self.log {
            logspace(self.min, self.max, self.count)
        } else {
            linspace(self.min, self.max, self.count)
        }
    }
}

/// One parameter axis: swept values, one fixed value, or (for q) the
/// per-point critical value.
#[derive(Clone)]
enum Axis {
    Values(Vec<f64>),
    Critical,
}

impl Axis {
    fn len(&self) -> usize {
        match self {
            Axis::Values(v) => v.len(),
            Axis::Critical => 1,
        }
    }
}

// Thread count is deliberately absent: scheduling cannot affect results,
// so it lives in timings.json with the other execution metadata.
#[derive(Serialize)]
struct ScanSpec {
    n: u32,
    sweeps: Vec<SweepAxis>,
    fixed: BTreeMap<String, f64>,
    q_critical: bool,
    numerics: Numerics,
    grid_points: usize,
}

struct Record {
    p: f64,
    q: f64,
    m: f64,
    a: f64,
    tag: ClassTag,
    class: String,
    r_event: Option<f64>,
    decay: Option<f64>,
    sup_decay: Option<f64>,
    c_grad_dist: Option<f64>,
    wall_us: u64,
}

pub fn run(args: ScanArgs) -> Result<(), CliError> {
    let (numerics, file_cfg) = args.numerics.resolve()?;
    let jobs = args.jobs.or(file_cfg.jobs).unwrap_or(1);
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be >= 1".into()));
    }

    // Assemble the four axes; every parameter must be covered exactly once.
    let mut sweeps: BTreeMap<&str, &SweepAxis> = BTreeMap::new();
    for s in &args.sweeps {
        if sweeps.insert(s.name.as_str(), s).is_some() {
            return Err(CliError::Usage(format!("axis `{}` swept twice", s.name)));
        }
    }
    let mut fixed = BTreeMap::new();
    let axis_for = |name: &str,
                    flag: Option<f64>,
                    fixed: &mut BTreeMap<String, f64>|
     -> Result<Axis, CliError> {
        match (sweeps.get(name), flag) {
            (Some(_), Some(_)) => Err(CliError::Usage(format!(
                "parameter `{name}` is both fixed and swept"
            ))),
            (Some(s), None) => Ok(Axis::Values(s.values())),
            (None, Some(v)) => {
                fixed.insert(name.to_string(), v);
                Ok(Axis::Values(vec![v]))
            }
            (None, None) => Err(CliError::Usage(format!(
                "parameter `{name}` is neither fixed nor swept"
            ))),
        }
    };
    let p_axis = axis_for("p", Some(args.eq.p), &mut fixed)?;
    let q_axis = if args.eq.q_critical {
        if sweeps.contains_key("q") {
            return Err(CliError::Usage(
                "parameter `q` is both critical and swept".into(),
            ));
        }
        Axis::Critical
    } else {
        axis_for("q", args.eq.q, &mut fixed)?
    };
    let m_axis = axis_for("M", args.eq.m, &mut fixed)?;
    let a_axis = axis_for("a", args.amplitude, &mut fixed)?;

    let (np, nq, nm, na) = (p_axis.len(), q_axis.len(), m_axis.len(), a_axis.len());
    let total = np * nq * nm * na;
    let value = |axis: &Axis, i: usize, p: f64| -> f64 {
        match axis {
            Axis::Values(v) => v[i],
            Axis::Critical => 2.0 * p / (p + 1.0),
        }
    };

    // Validate the whole grid before any work.
    for ip in 0..np {
        let p = value(&p_axis, ip, 0.0);
        for iq in 0..nq {
            let q = value(&q_axis, iq, p);
            ProblemParams::new(args.eq.n, p, q, 0.0)
                .map_err(|e| CliError::Usage(format!("grid point p={p}, q={q}: {e}")))?;
        }
    }
    if let Axis::Values(v) = &a_axis {
        if v.iter().any(|&a| a <= 0.0) {
            return Err(CliError::Usage("amplitudes must be positive".into()));
        }
    }

    let started = Instant::now();
    let n = args.eq.n;
    let compute = |idx: usize| -> Record {
        let t0 = Instant::now();
        let ia = idx % na;
        let im = (idx / na) % nm;
        let iq = (idx / (na * nm)) % nq;
        let ip = idx / (na * nm * nq);
        let p = value(&p_axis, ip, 0.0);
        let q = value(&q_axis, iq, p);
        let m = value(&m_axis, im, p);
        let a = value(&a_axis, ia, p);
        let params = ProblemParams::new(n, p, q, m).expect("validated grid");
        let cfg = numerics.integrator_for(a);
        let traj = integrate(&params, a, &cfg);
        let (class, r_event, decay) = crate::cmd_shoot::fmt_record_fields(&traj);
        let (sup_decay, c_grad_dist) = crate::cmd_shoot::sup_decay_column(&traj);
        Record {
            p,
            q,
            m,
            a,
            tag: traj.classification.tag(),
            class,
            r_event,
            decay,
            sup_decay,
            c_grad_dist,
            wall_us: t0.elapsed().as_micros() as u64,
        }
    };

    let records: Vec<Record> = if jobs == 1 {
        (0..total).map(compute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Io(e.to_string()))?;
        pool.install(|| (0..total).into_par_iter().map(compute).collect())
    };

    let mut csv =
        String::from("N,p,q,M,a,classification,r_event,decay_gamma,sup_decay,c_grad_dist\n");
    let mut totals: BTreeMap<String, usize> = BTreeMap::new();
    for r in &records {
        *totals.entry(r.class.clone()).or_insert(0) += 1;
        csv.push_str(&csv_row(&[
            args.eq.n.to_string(),
            fmt_f64(r.p),
            fmt_f64(r.q),
            fmt_f64(r.m),
            fmt_f64(r.a),
            r.class.clone(),
            fmt_opt(r.r_event),
            fmt_opt(r.decay),
            fmt_opt(r.sup_decay),
            fmt_opt(r.c_grad_dist),
        ]));
        csv.push('\n');
    }

    let mut files = BTreeMap::new();
    files.insert(
        "scan.csv".to_string(),
        write_file(&args.out, "scan.csv", csv.as_bytes())?,
    );

    if args.svg {
        let swept: Vec<&SweepAxis> = ["p", "q", "M", "a"]
            .iter()
            .filter_map(|n| sweeps.get(*n).copied())
            .filter(|s| s.count > 1)
            .collect();
        if swept.len() != 2 {
            return Err(CliError::Usage(
                "--svg needs exactly two swept axes with COUNT > 1".into(),
            ));
        }
        let (ax, ay) = (swept[0], swept[1]);
        let xs = ax.values();
        let ys = ay.values();
        // Record index layout is p-major over (p, q, M, a); build the map
        // by re-reading the grid in (y, x) order.
        let pos = |i_x: usize, i_y: usize| -> usize {
            let pick = |n: &str| -> usize {
                if n == ax.name {
                    i_x
                } else if n == ay.name {
                    i_y
                } else {
                    0
                }
            };
            ((pick("p") * nq + pick("q")) * nm + pick("M")) * na + pick("a")
        };
        let mut tags = Vec::with_capacity(xs.len() * ys.len());
        for j in 0..ys.len() {
            for i in 0..xs.len() {
                tags.push(records[pos(i, j)].tag);
            }
        }
        let body = svg::classification_map(&ax.name, &ay.name, &xs, &ys, &tags);
        files.insert(
            "map.svg".to_string(),
            write_file(&args.out, "map.svg", body.as_bytes())?,
        );
    }

    #[derive(Serialize)]
    struct ScanManifestBody {
        spec: ScanSpec,
        totals: BTreeMap<String, usize>,
    }
    let spec = ScanSpec {
        n: args.eq.n,
        sweeps: args.sweeps.clone(),
        fixed,
        q_critical: args.eq.q_critical,
        numerics,
        grid_points: total,
    };
    write_manifest(
        &args.out,
        &Manifest {
            tool: "gslab",
            version: env!("CARGO_PKG_VERSION"),
            command: "scan".into(),
            spec: ScanManifestBody {
                spec,
                totals: totals.clone(),
            },
            files,
        },
    )?;
    // Wall time and scheduling live outside the manifest so repeated runs
    // stay byte-identical.
    let timing = serde_json::json!({
        "total_wall_ms": started.elapsed().as_millis() as u64,
        "jobs": jobs,
        "grid_points": total,
        "per_record_us": records.iter().map(|r| r.wall_us).collect::<Vec<_>>(),
    });
    std::fs::write(
        args.out.join("timings.json"),
        serde_json::to_string_pretty(&timing).unwrap(),
    )
    .map_err(|e| CliError::Io(e.to_string()))?;

    println!("scanned {total} grid points -> {}", args.out.display());
    for (tag, count) in &totals {
        println!("  {tag}: {count}");
    }
    Ok(())
}

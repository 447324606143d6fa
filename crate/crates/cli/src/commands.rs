use std::io::Write;

use anyhow::{Context, Result};
use quantum_axes::general::{
    delta_two_spin, delta_two_spin_classical, delta_two_spin_max, delta_two_spin_max_classical,
};
use quantum_axes::parallel::{delta_infinity, estimator_table, kappa, ParallelScenario};
use quantum_axes::sim::{SimulationReport, Strategy};
use quantum_axes::HalfInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{csv_writer, open_output, round12, sig12, write_json, SCHEMA_VERSION};
use crate::{Cli, Command, Format, Mode, SimulateArgs, Status, UsageError};

/// Slack for the ordering test in the infinite-reference row, where the
/// anti-parallel and parallel values coincide.
const ASYMPTOTIC_TIE_TOLERANCE: f64 = 1e-12;

/// Allowed decrease along N1 before the table logs a warning.
const MONOTONE_TOLERANCE: f64 = 1e-12;

pub fn run(cli: &Cli) -> Result<Status> {
    let out = open_output(cli.out.as_deref()).with_context(|| {
        format!(
            "cannot open {}",
            cli.out.as_ref().map_or("stdout".into(), |p| p.display().to_string())
        )
    })?;
    match &cli.command {
        Command::Delta { n1, n2 } => delta(*n1, *n2, cli.format, out),
        Command::Table { n1_max, n2_max } => table(*n1_max, *n2_max, cli.format, out),
        Command::Compare { n1, asymptotic } => compare(n1, *asymptotic, cli.format, out),
        Command::Simulate(args) => simulate(args, cli, out),
    }
}

fn num(x: f64) -> Value {
    json!(round12(x))
}

fn delta(n1: u32, n2: u32, format: Format, out: Box<dyn Write>) -> Result<Status> {
    let sc = ParallelScenario::from_spin_counts(n1, n2)?;
    let table = estimator_table::<f64>(&sc);
    let total = table.delta();
    let limit: f64 = delta_infinity(sc.j2())?;
    let k: f64 = kappa(sc.j2())?;
    if table.has_degenerate() {
        eprintln!("warning: some outcomes carry no information about the angle");
    }
    match format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["N1", "N2", "j", "weight", "theta_hat", "delta", "delta_inf", "kappa"])?;
            for e in table.entries() {
                w.write_record([
                    n1.to_string(),
                    n2.to_string(),
                    e.outcome.value::<f64>().to_string(),
                    sig12(e.weight),
                    sig12(e.theta_hat),
                    sig12(total),
                    sig12(limit),
                    sig12(k),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let outcomes: Vec<Value> = table
                .entries()
                .iter()
                .map(|e| {
                    json!({
                        "j": e.outcome.value::<f64>(),
                        "v_c": num(e.v.c),
                        "v_s": num(e.v.s),
                        "weight": num(e.weight),
                        "theta_hat": num(e.theta_hat),
                        "degenerate": e.degenerate,
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "delta",
                    "parameters": { "n1": n1, "n2": n2 },
                    "delta": num(total),
                    "delta_inf": num(limit),
                    "kappa": num(k),
                    "outcomes": outcomes,
                }),
            )?;
        }
    }
    Ok(Status::Ok)
}

struct GridRow {
    n1: u32,
    n2: u32,
    delta: f64,
    limit: f64,
    kappa: f64,
}

fn table(n1_max: u32, n2_max: u32, format: Format, out: Box<dyn Write>) -> Result<Status> {
    let points: Vec<(u32, u32)> = (1..=n1_max).flat_map(|a| (1..=n2_max).map(move |b| (a, b))).collect();
    let rows = points
        .par_iter()
        .map(|&(n1, n2)| -> Result<GridRow> {
            let sc = ParallelScenario::from_spin_counts(n1, n2)?;
            Ok(GridRow {
                n1,
                n2,
                delta: estimator_table::<f64>(&sc).delta(),
                limit: delta_infinity(sc.j2())?,
                kappa: kappa(sc.j2())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let stride = n2_max as usize;
    for (i, row) in rows.iter().enumerate().skip(stride) {
        let prev = &rows[i - stride];
        if row.delta < prev.delta - MONOTONE_TOLERANCE {
            eprintln!(
                "warning: delta decreases from N1={} to N1={} at N2={} ({} -> {})",
                prev.n1,
                row.n1,
                row.n2,
                sig12(prev.delta),
                sig12(row.delta)
            );
        }
    }

    match format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["N1", "N2", "delta", "delta_inf", "kappa"])?;
            for r in &rows {
                w.write_record([
                    r.n1.to_string(),
                    r.n2.to_string(),
                    sig12(r.delta),
                    sig12(r.limit),
                    sig12(r.kappa),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "N1": r.n1,
                        "N2": r.n2,
                        "delta": num(r.delta),
                        "delta_inf": num(r.limit),
                        "kappa": num(r.kappa),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "table",
                    "parameters": { "n1_max": n1_max, "n2_max": n2_max },
                    "rows": body,
                }),
            )?;
        }
    }
    Ok(Status::Ok)
}

struct CompareRow {
    /// `None` for the infinite reference.
    n1: Option<u32>,
    par: f64,
    anti: f64,
    opt: f64,
    x_star: f64,
}

impl CompareRow {
    fn finite(n1: u32) -> Result<Self> {
        let j1 = HalfInt::from_spin_count(n1);
        let par = estimator_table::<f64>(&ParallelScenario::new(j1, HalfInt::ONE)?).delta();
        let anti = delta_two_spin::<f64>(j1, 0.5)?.delta;
        let opt = delta_two_spin_max::<f64>(j1)?;
        Ok(Self {
            n1: Some(n1),
            par,
            anti,
            opt: opt.delta_max,
            x_star: opt.x_star,
        })
    }

    fn asymptotic() -> Result<Self> {
        let opt = delta_two_spin_max_classical::<f64>();
        Ok(Self {
            n1: None,
            par: delta_infinity(HalfInt::ONE)?,
            anti: delta_two_spin_classical(0.5)?,
            opt: opt.delta_max,
            x_star: opt.x_star,
        })
    }

    fn ordered(&self) -> bool {
        let anti_ok = match self.n1 {
            Some(_) => self.anti < self.par,
            None => self.anti <= self.par + ASYMPTOTIC_TIE_TOLERANCE,
        };
        anti_ok && self.par < self.opt
    }

    fn label(&self) -> String {
        self.n1.map_or_else(|| "inf".to_string(), |n| n.to_string())
    }
}

fn compare(n1s: &[u32], asymptotic: bool, format: Format, out: Box<dyn Write>) -> Result<Status> {
    if n1s.is_empty() && !asymptotic {
        return Err(UsageError("give --n1 values, --asymptotic, or both".into()).into());
    }
    let mut rows = n1s
        .par_iter()
        .map(|&n| CompareRow::finite(n))
        .collect::<Result<Vec<_>>>()?;
    if asymptotic {
        rows.push(CompareRow::asymptotic()?);
    }

    match format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["N1", "delta_par", "delta_anti", "delta_opt", "x_star"])?;
            for r in &rows {
                w.write_record([r.label(), sig12(r.par), sig12(r.anti), sig12(r.opt), sig12(r.x_star)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "N1": r.n1.map_or_else(|| json!("inf"), |n| json!(n)),
                        "delta_par": num(r.par),
                        "delta_anti": num(r.anti),
                        "delta_opt": num(r.opt),
                        "x_star": num(r.x_star),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "compare",
                    "parameters": { "n1": n1s, "asymptotic": asymptotic },
                    "rows": body,
                }),
            )?;
        }
    }

    Ok(ordering_status(&rows))
}

fn ordering_status(rows: &[CompareRow]) -> Status {
    let mut status = Status::Ok;
    for r in rows.iter().filter(|r| !r.ordered()) {
        eprintln!(
            "error: ordering anti < par < opt violated at N1={}: {} / {} / {}",
            r.label(),
            sig12(r.anti),
            sig12(r.par),
            sig12(r.opt)
        );
        status = Status::Inconsistent;
    }
    status
}

/// Fully resolved simulation parameters.
struct Resolved {
    n1: Option<u32>,
    n2: Option<u32>,
    x: Option<f64>,
    strategy: Strategy,
}

fn resolve(args: &SimulateArgs) -> Result<Resolved> {
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| UsageError(format!("{:?} mode needs --{flag}", args.mode)));
    let unused = |present: bool, flag: &str| -> Result<()> {
        if present {
            return Err(UsageError(format!("--{flag} does not apply to {:?} mode", args.mode)).into());
        }
        Ok(())
    };
    let x_given = args.x.is_some() || args.optimal || args.anti;
    match args.mode {
        Mode::Parallel => {
            unused(x_given, "x/--optimal/--anti")?;
            let (n1, n2) = (need(args.n1, "n1")?, need(args.n2, "n2")?);
            let strategy = Strategy::parallel(&ParallelScenario::from_spin_counts(n1, n2)?)?;
            Ok(Resolved {
                n1: Some(n1),
                n2: Some(n2),
                x: None,
                strategy,
            })
        }
        Mode::Classical => {
            unused(x_given, "x/--optimal/--anti")?;
            unused(args.n1.is_some(), "n1")?;
            let n2 = need(args.n2, "n2")?;
            let strategy = Strategy::classical(HalfInt::from_spin_count(n2))?;
            Ok(Resolved {
                n1: None,
                n2: Some(n2),
                x: None,
                strategy,
            })
        }
        Mode::TwoSpin => {
            unused(args.n2.is_some(), "n2")?;
            let n1 = need(args.n1, "n1")?;
            let j1 = HalfInt::from_spin_count(n1);
            let x = match (args.x, args.optimal, args.anti) {
                (Some(x), _, _) => x,
                (None, true, _) => delta_two_spin_max::<f64>(j1)?.x_star,
                (None, false, true) => 0.5,
                (None, false, false) => {
                    return Err(UsageError("two-spin mode needs --x, --optimal or --anti".into()).into())
                }
            };
            let strategy = Strategy::two_spin(j1, x)?;
            Ok(Resolved {
                n1: Some(n1),
                n2: None,
                x: Some(x),
                strategy,
            })
        }
    }
}

fn x_choice(args: &SimulateArgs) -> Option<&'static str> {
    if args.optimal {
        Some("optimal")
    } else if args.anti {
        Some("anti")
    } else if args.x.is_some() {
        Some("value")
    } else {
        None
    }
}

/// Runs with `|z| < 5` count as agreement.
const Z_LIMIT: f64 = 5.0;

fn simulate(args: &SimulateArgs, cli: &Cli, out: Box<dyn Write>) -> Result<Status> {
    let resolved = resolve(args)?;
    let report: SimulationReport = resolved.strategy.run(args.samples, args.seed)?;
    let opt_num = |v: Option<u32>| v.map_or(String::new(), |n| n.to_string());
    match cli.format {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "mode",
                "N1",
                "N2",
                "x",
                "samples",
                "seed",
                "empirical_delta",
                "std_error",
                "theoretical_delta",
                "z_score",
            ])?;
            w.write_record([
                report.mode.as_str().to_string(),
                opt_num(resolved.n1),
                opt_num(resolved.n2),
                resolved.x.map_or(String::new(), sig12),
                report.n_samples.to_string(),
                report.seed.to_string(),
                sig12(report.empirical_delta),
                sig12(report.std_error),
                sig12(report.theoretical_delta),
                sig12(report.z_score),
            ])?;
            w.flush()?;
        }
        Format::Json => {
            write_json(
                out,
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "simulate",
                    "parameters": {
                        "mode": report.mode.as_str(),
                        "n1": resolved.n1,
                        "n2": resolved.n2,
                        "x": resolved.x.map(round12),
                        "x_choice": x_choice(args),
                        "samples": args.samples,
                        "seed": args.seed,
                        "threads": cli.threads.map(|t| t.get()),
                    },
                    "report": {
                        "mode": report.mode.as_str(),
                        "n_samples": report.n_samples,
                        "seed": report.seed,
                        "empirical_delta": num(report.empirical_delta),
                        "std_error": num(report.std_error),
                        "theoretical_delta": num(report.theoretical_delta),
                        "z_score": num(report.z_score),
                    },
                }),
            )?;
        }
    }
    if report.z_score.abs() < Z_LIMIT {
        Ok(Status::Ok)
    } else {
        eprintln!("error: |z| = {} exceeds {Z_LIMIT}", sig12(report.z_score.abs()));
        Ok(Status::Inconsistent)
    }
}

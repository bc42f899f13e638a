use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::Context;
use serde::Serialize;
use tspk_core::oracles::HELD_KARP_LIMIT;
use tspk_core::{
    audit_triangles, gen_metric, gen_planted, held_karp, solve, ChainLayout, Instance, Regime, SolveOptions,
};

use crate::bench::{self, reduced_ratio};
use crate::{Command, Failure};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub layout: ChainLayout,
    pub cycle_cost: i64,
    pub forest_cost: i64,
    pub matching_cost: i64,
    pub certified: bool,
}

/// `solve` output. Field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub instance: String,
    pub n: usize,
    pub cost: i64,
    pub tour: Vec<usize>,
    pub k: usize,
    #[serde(rename = "k_T")]
    pub k_t: usize,
    pub layouts: usize,
    pub certified: usize,
    pub regime: Regime,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_cost: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_num: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_den: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactReport {
    pub instance: String,
    pub n: usize,
    pub cost: i64,
    pub tour: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct GenReport<'a> {
    instance: &'a str,
    n: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chosen: Option<&'a [usize]>,
    k: usize,
    #[serde(rename = "k_T")]
    k_t: usize,
    bad: &'a [usize],
}

pub fn exact_report(inst: &Instance) -> Result<ExactReport, tspk_core::Error> {
    let opt = held_karp(inst)?;
    Ok(ExactReport {
        instance: inst.name().to_string(),
        n: inst.n(),
        cost: opt.cost,
        tour: opt.order,
    })
}

/// Solves `inst`; with `exact` also runs Held–Karp and fills the ratio fields.
pub fn solve_report(
    inst: &Instance,
    opts: &SolveOptions,
    cert: bool,
    exact: bool,
) -> Result<(SolveReport, Duration), tspk_core::Error> {
    let sol = solve(inst, opts)?;
    let mut report = SolveReport {
        instance: inst.name().to_string(),
        n: inst.n(),
        cost: sol.tour.cost,
        tour: sol.tour.order.clone(),
        k: sol.stats.k,
        k_t: sol.stats.k_t,
        layouts: sol.stats.layouts_evaluated,
        certified: sol.stats.certified_layouts,
        regime: sol.stats.regime,
        opt_cost: None,
        ratio_num: None,
        ratio_den: None,
        ratio: None,
        certificate: None,
    };
    if exact {
        let opt = held_karp(inst)?;
        let (num, den) = reduced_ratio(sol.tour.cost, opt.cost);
        report.opt_cost = Some(opt.cost);
        report.ratio_num = Some(num);
        report.ratio_den = Some(den);
        report.ratio = Some(num as f64 / den as f64);
    }
    if cert {
        report.certificate = sol.best.as_ref().map(|b| Certificate {
            layout: b.layout.clone(),
            cycle_cost: b.cycle_cost,
            forest_cost: b.forest_cost,
            matching_cost: b.matching_cost,
            certified: b.certified,
        });
    }
    Ok((report, sol.stats.wall_time))
}

pub(crate) fn load(path: &Path) -> Result<Instance, Failure> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Instance::load(&bytes)
        .with_context(|| format!("{}", path.display()))
        .map_err(Failure::from)
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(value).context("serializing output")?;
    writeln!(out, "{text}").context("writing output")?;
    Ok(())
}

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Audit { file } => {
            let inst = load(&file)?;
            print_json(out, &audit_triangles(&inst))
        }
        Command::Solve {
            file,
            max_bad,
            jobs,
            cert,
            exact,
        } => {
            let inst = load(&file)?;
            if exact && inst.n() > HELD_KARP_LIMIT {
                return Err(tspk_core::Error::TooLarge {
                    what: "Held-Karp",
                    n: inst.n(),
                    limit: HELD_KARP_LIMIT,
                }
                .into());
            }
            let started = Instant::now();
            let (report, _) = solve_report(
                &inst,
                &SolveOptions {
                    max_bad,
                    jobs: jobs.max(1),
                },
                cert,
                exact,
            )?;
            print_json(out, &report)?;
            let _ = writeln!(err, "time_ms: {}", started.elapsed().as_millis());
            Ok(())
        }
        Command::Exact { file } => {
            let inst = load(&file)?;
            print_json(out, &exact_report(&inst)?)
        }
        Command::Gen {
            metric,
            planted: _,
            bad,
            n,
            seed,
            out: path,
        } => {
            let (inst, chosen, audit) = if metric {
                let inst = gen_metric(n, seed)?;
                let audit = audit_triangles(&inst);
                (inst, None, audit)
            } else {
                let bad = bad.ok_or_else(|| anyhow::anyhow!("--planted needs --bad"))?;
                let p = gen_planted(n, bad, seed)?;
                (p.instance, Some(p.chosen), p.audit)
            };
            fs::write(&path, inst.save()).with_context(|| format!("cannot write {}", path.display()))?;
            print_json(
                out,
                &GenReport {
                    instance: inst.name(),
                    n: inst.n(),
                    seed,
                    chosen: chosen.as_deref(),
                    k: audit.k,
                    k_t: audit.k_t,
                    bad: &audit.bad,
                },
            )
        }
        Command::Bench {
            dir,
            out: csv_path,
            max_bad,
            jobs,
        } => {
            let opts = SolveOptions { max_bad, jobs: 1 };
            let rows = bench::run_corpus(&dir, &opts, jobs.max(1), err)?;
            bench::append_rows(&csv_path, &rows)?;
            let summary = bench::bench_aggregate(&rows)?;
            write!(out, "{summary}").context("writing summary")?;
            summary.check_bound()?;
            Ok(())
        }
    }
}

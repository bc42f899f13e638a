//! Corpus runs: one CSV row per instance and a ratio summary.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use tspk_core::oracles::HELD_KARP_LIMIT;
use tspk_core::SolveOptions;

use crate::commands::{load, solve_report};
use crate::Failure;

/// One corpus row. Column order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "k_T")]
    pub k_t: usize,
    pub alg_cost: i64,
    pub opt_cost: Option<i64>,
    pub ratio_num: Option<i64>,
    pub ratio_den: Option<i64>,
    pub layouts: usize,
    pub certified: usize,
    pub time_ms: u64,
    pub seed: Option<u64>,
}

impl Row {
    pub fn ratio(&self) -> Option<(i64, i64)> {
        Some((self.ratio_num?, self.ratio_den?))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `alg / opt` in lowest terms; `0 / 0` is taken as 1.
pub fn reduced_ratio(alg: i64, opt: i64) -> (i64, i64) {
    match gcd(alg, opt) {
        0 => (1, 1),
        g => (alg / g, opt / g),
    }
}

/// Seed encoded as a trailing `_s<digits>` in an instance name.
pub fn seed_from_name(name: &str) -> Option<u64> {
    let (_, tail) = name.rsplit_once("_s")?;
    if tail.is_empty() || !tail.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tail.parse().ok()
}

fn corpus_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "tsp")))
        .collect();
    files.sort();
    Ok(files)
}

enum Outcome {
    Row(Row),
    Refused(String),
}

fn run_one(path: &Path, opts: &SolveOptions) -> Result<Outcome, Failure> {
    let inst = load(path)?;
    let exact = inst.n() <= HELD_KARP_LIMIT;
    let (report, wall) = match solve_report(&inst, opts, false, exact) {
        Ok(r) => r,
        Err(e) if e.is_refusal() => return Ok(Outcome::Refused(format!("{}: {e}", path.display()))),
        Err(e) => return Err(anyhow::Error::from(e).context(path.display().to_string()).into()),
    };
    Ok(Outcome::Row(Row {
        seed: seed_from_name(&report.instance),
        instance: report.instance,
        n: report.n,
        k: report.k,
        k_t: report.k_t,
        alg_cost: report.cost,
        opt_cost: report.opt_cost,
        ratio_num: report.ratio_num,
        ratio_den: report.ratio_den,
        layouts: report.layouts,
        certified: report.certified,
        time_ms: wall.as_millis() as u64,
    }))
}

/// Solves every `.json`/`.tsp` file in `dir` in file-name order, with
/// `jobs` instances in flight. Refused instances are reported on `err` and
/// skipped.
pub fn run_corpus(dir: &Path, opts: &SolveOptions, jobs: usize, err: &mut dyn Write) -> Result<Vec<Row>, Failure> {
    let files = corpus_files(dir)?;
    let results: Vec<Mutex<Option<Result<Outcome, Failure>>>> = files.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.min(files.len()).max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                *results[i].lock().expect("result slot") = Some(run_one(path, opts));
            });
        }
    });
    let mut rows = Vec::with_capacity(files.len());
    for slot in results {
        match slot.into_inner().expect("result slot").expect("every file ran")? {
            Outcome::Row(r) => rows.push(r),
            Outcome::Refused(msg) => {
                let _ = writeln!(err, "skipped: {msg}");
            }
        }
    }
    Ok(rows)
}

/// Appends rows to `path`, writing the header only when the file is new or empty.
pub fn append_rows(path: &Path, rows: &[Row]) -> anyhow::Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    if fresh && rows.is_empty() {
        w.write_record([
            "instance",
            "n",
            "k",
            "k_T",
            "alg_cost",
            "opt_cost",
            "ratio_num",
            "ratio_den",
            "layouts",
            "certified",
            "time_ms",
            "seed",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> anyhow::Result<Vec<Row>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    r.deserialize().map(|row| row.map_err(anyhow::Error::from)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub n: usize,
    pub k: usize,
    pub rows: usize,
    pub with_opt: usize,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub groups: Vec<Group>,
    /// Largest ratio over rows with a known optimum.
    pub max_ratio: Option<(i64, i64)>,
    /// Rows without an optimum; excluded from ratio statistics.
    pub missing_opt: usize,
    pub time_p50_ms: u64,
    pub time_p90_ms: u64,
    pub time_max_ms: u64,
}

fn ratio_gt(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 as i128) * (b.1 as i128) > (b.0 as i128) * (a.1 as i128)
}

fn max_ratio(acc: Option<(i64, i64)>, r: (i64, i64)) -> Option<(i64, i64)> {
    match acc {
        Some(a) if !ratio_gt(r, a) => Some(a),
        _ => Some(r),
    }
}

fn percentile(sorted: &[u64], p: usize) -> u64 {
    let rank = (p * sorted.len()).div_ceil(100).max(1);
    sorted[rank - 1]
}

/// Per-(n, k) ratio statistics, the corpus maximum and runtime percentiles.
pub fn bench_aggregate(rows: &[Row]) -> anyhow::Result<Summary> {
    if rows.is_empty() {
        bail!("no rows to aggregate");
    }
    let mut by_group: BTreeMap<(usize, usize), Vec<&Row>> = BTreeMap::new();
    for r in rows {
        by_group.entry((r.n, r.k)).or_default().push(r);
    }
    let groups = by_group
        .into_iter()
        .map(|((n, k), rs)| {
            let ratios: Vec<(i64, i64)> = rs.iter().filter_map(|r| r.ratio()).collect();
            Group {
                n,
                k,
                rows: rs.len(),
                with_opt: ratios.len(),
                mean_ratio: (!ratios.is_empty())
                    .then(|| ratios.iter().map(|&(a, b)| a as f64 / b as f64).sum::<f64>() / ratios.len() as f64),
                max_ratio: ratios.iter().fold(None, |acc, &r| max_ratio(acc, r)),
            }
        })
        .collect();
    let mut times: Vec<u64> = rows.iter().map(|r| r.time_ms).collect();
    times.sort_unstable();
    Ok(Summary {
        rows: rows.len(),
        groups,
        max_ratio: rows.iter().filter_map(Row::ratio).fold(None, max_ratio),
        missing_opt: rows.iter().filter(|r| r.ratio().is_none()).count(),
        time_p50_ms: percentile(&times, 50),
        time_p90_ms: percentile(&times, 90),
        time_max_ms: *times.last().expect("non-empty"),
    })
}

impl Summary {
    /// Fails if some ratio exceeds 5/2.
    pub fn check_bound(&self) -> anyhow::Result<()> {
        match self.max_ratio {
            Some(r) if ratio_gt(r, (5, 2)) => Err(anyhow!("ratio {}/{} exceeds 5/2", r.0, r.1)),
            _ => Ok(()),
        }
    }
}

fn show(r: Option<(i64, i64)>) -> String {
    r.map_or_else(|| "-".to_string(), |(a, b)| format!("{:.4}", a as f64 / b as f64))
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4} {:>4} {:>6} {:>6} {:>8} {:>8}",
            "n", "k", "rows", "opt", "mean", "max"
        )?;
        for g in &self.groups {
            let mean = g.mean_ratio.map_or_else(|| "-".to_string(), |m| format!("{m:.4}"));
            writeln!(
                f,
                "{:>4} {:>4} {:>6} {:>6} {:>8} {:>8}",
                g.n,
                g.k,
                g.rows,
                g.with_opt,
                mean,
                show(g.max_ratio)
            )?;
        }
        writeln!(
            f,
            "rows {}  max ratio {}  without opt {}  time ms p50 {} p90 {} max {}",
            self.rows,
            show(self.max_ratio),
            self.missing_opt,
            self.time_p50_ms,
            self.time_p90_ms,
            self.time_max_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(name: &str, n: usize, k: usize, alg: i64, opt: Option<i64>) -> Row {
        let ratio = opt.map(|o| reduced_ratio(alg, o));
        Row {
            instance: name.into(),
            n,
            k,
            k_t: 3,
            alg_cost: alg,
            opt_cost: opt,
            ratio_num: ratio.map(|r| r.0),
            ratio_den: ratio.map(|r| r.1),
            layouts: 1,
            certified: 1,
            time_ms: 1,
            seed: seed_from_name(name),
        }
    }

    #[test]
    fn seeds_and_ratios() {
        assert_eq!(seed_from_name("planted_n8_b3_s17"), Some(17));
        assert_eq!(seed_from_name("INST4"), None);
        assert_eq!(seed_from_name("x_s"), None);
        assert_eq!(reduced_ratio(26, 13), (2, 1));
        assert_eq!(reduced_ratio(0, 0), (1, 1));
    }

    #[test]
    fn aggregate() {
        let rows = vec![
            row("a_s1", 4, 1, 13, Some(13)),
            row("b_s2", 4, 1, 15, Some(10)),
            row("c", 20, 2, 50, None),
        ];
        let s = bench_aggregate(&rows).unwrap();
        assert_eq!(s.max_ratio, Some((3, 2)));
        assert_eq!(s.missing_opt, 1);
        assert_eq!(s.groups.len(), 2);
        assert_eq!(s.groups[0].mean_ratio, Some(1.25));
        assert_eq!(s.groups[1].max_ratio, None);
        assert!(s.check_bound().is_ok());
        let bad = bench_aggregate(&[row("d", 5, 1, 26, Some(10))]).unwrap();
        assert!(bad.check_bound().is_err());
        assert!(bench_aggregate(&[]).is_err());
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspk_core::layout::enumerate_layouts;
use tspk_core::oracles::brute_rooted_msf;
use tspk_core::solver::evaluate_layout;
use tspk_core::*;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: String) -> Verdict {
    Verdict { ok, detail }
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn corpus() -> Vec<Planted> {
    let mut out = Vec::with_capacity(300);
    for i in 0..300u64 {
        let n = 6 + (i % 7) as usize;
        let sizes: Vec<usize> = [3, 4, 5, 6].into_iter().filter(|&b| b < n).collect();
        let bad = sizes[(i / 7) as usize % sizes.len()];
        out.push(gen_planted(n, bad, i).expect("planted instance"));
    }
    out
}

fn ratio_theorem(corpus: &[Planted]) -> Verdict {
    let mut worst = (0, 1);
    let mut fails = Vec::new();
    let mut by_bad = [0usize; 7];
    for p in corpus {
        by_bad[p.audit.bad.len()] += 1;
        let alg = solve(&p.instance, &SolveOptions::default()).expect("solve");
        alg.tour.verify(&p.instance).expect("valid tour");
        let opt = held_karp(&p.instance).expect("held-karp");
        if alg.tour.cost * worst.1 > worst.0 * opt.cost {
            worst = (alg.tour.cost, opt.cost);
        }
        if 2 * alg.tour.cost > 5 * opt.cost || opt.cost > alg.tour.cost {
            fails.push(p.instance.name().to_string());
        }
    }
    verdict(
        fails.is_empty() && corpus.len() >= 300,
        format!(
            "{} instances, |V^b| counts 3:{} 4:{} 5:{} 6:{}, worst {}/{} = {:.4}, failures {:?}",
            corpus.len(),
            by_bad[3],
            by_bad[4],
            by_bad[5],
            by_bad[6],
            worst.0,
            worst.1,
            worst.0 as f64 / worst.1 as f64,
            fails
        ),
    )
}

fn lemma_checks(corpus: &[Planted]) -> Verdict {
    let mut fails = Vec::new();
    for p in corpus {
        match lemma_suite(&p.instance) {
            Ok(r) if r.passed() => {}
            Ok(r) => fails.push(format!("{}: {r}", p.instance.name())),
            Err(e) => fails.push(format!("{}: {e}", p.instance.name())),
        }
    }
    verdict(
        fails.is_empty(),
        format!("{} instances, failures {:?}", corpus.len(), fails),
    )
}

fn matching_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    let trials = 500;
    for t in 0..trials {
        let n = rng.gen_range(2..=14);
        let max = if t % 5 == 0 { 3 } else { 1000 };
        let vals: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..=max)).collect();
        let inst = Instance::from_fn("m", n, |u, v| vals[u * n + v]).expect("instance");
        let size = 2 * rng.gen_range(0..=n.min(12) / 2);
        let mut odd: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            odd.swap(i, j);
        }
        odd.truncate(size);
        let fast = min_cost_perfect_matching(&inst, &odd).expect("blossom");
        let slow = brute_matching(&inst, &odd).expect("dp");
        if fast.cost != slow.cost || !fast.is_perfect_on(&odd) {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("{trials} graphs with |O| <= 12, mismatches {mismatches}"),
    )
}

fn forest_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mismatches = 0;
    let trials = 200;
    for _ in 0..trials {
        let n = rng.gen_range(1..=8);
        let vals: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..=100)).collect();
        let inst = Instance::from_fn("f", n, |u, v| vals[u * n + v]).expect("instance");
        let t = rng.gen_range(1..=3usize.min(n));
        let mut all: Vec<usize> = (0..n).collect();
        for i in 0..t {
            let j = rng.gen_range(i..n);
            all.swap(i, j);
        }
        let roots = all[..t].to_vec();
        let fast = rooted_msf(&inst, &all, &roots).expect("prim");
        let (slow, _) = brute_rooted_msf(&inst, &all, &roots).expect("brute");
        if fast.cost != slow {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("{trials} instances with |V| <= 8 and 1-3 roots, mismatches {mismatches}"),
    )
}

fn shortcut_safety(corpus: &[Planted]) -> Verdict {
    let (mut certified, mut uncertified, mut steps) = (0usize, 0usize, 0usize);
    let mut fails = Vec::new();
    for p in corpus {
        let (inst, audit) = (&p.instance, &p.audit);
        let mut best = i64::MAX;
        for layout in enumerate_layouts(audit, audit.good.len()) {
            let out = evaluate_layout(inst, audit, &layout).expect("layout pipeline");
            best = best.min(out.tour.cost);
            if out.tour.verify(inst).is_err() {
                fails.push(format!("{} {:?}: not Hamiltonian", inst.name(), layout.chains()));
            }
            if !out.certified {
                uncertified += 1;
                continue;
            }
            certified += 1;
            steps += out.trace.len() - 1;
            if out.trace.windows(2).any(|w| w[1] > w[0]) || out.trace[0] != out.h_cost {
                fails.push(format!("{} {:?}: trace {:?}", inst.name(), layout.chains(), out.trace));
            }
        }
        let sol = solve(inst, &SolveOptions::default()).expect("solve");
        if sol.tour.cost != best {
            fails.push(format!(
                "{}: solve {} but best layout {best}",
                inst.name(),
                sol.tour.cost
            ));
        }
    }
    verdict(
        fails.is_empty(),
        format!(
            "{certified} certified layouts ({steps} steps), {uncertified} uncertified, failures {:?}",
            fails.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn metric_regression() -> Verdict {
    let mut worst = (0, 1);
    let mut fails = Vec::new();
    for seed in 0..100u64 {
        let n = 4 + (seed % 11) as usize;
        let inst = gen_metric(n, seed).expect("metric");
        let alg = christofides(&inst).expect("christofides");
        alg.verify(&inst).expect("valid tour");
        let sol = solve(&inst, &SolveOptions::default()).expect("solve");
        let opt = held_karp(&inst).expect("held-karp");
        if alg.cost * worst.1 > worst.0 * opt.cost {
            worst = (alg.cost, opt.cost);
        }
        if 2 * alg.cost > 3 * opt.cost || sol.stats.regime != Regime::Christofides || sol.tour.cost != alg.cost {
            fails.push(inst.name().to_string());
        }
    }
    verdict(
        fails.is_empty(),
        format!(
            "100 metric instances n <= 14, worst {}/{} = {:.4}, failures {:?}",
            worst.0,
            worst.1,
            worst.0 as f64 / worst.1 as f64,
            fails
        ),
    )
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cli_stdout(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_tspk"))
        .args(args)
        .output()
        .expect("run tspk");
    assert!(out.status.success(), "tspk {args:?} failed");
    out.stdout
}

fn fixtures_exact() -> Verdict {
    let inst4 = Instance::load(&std::fs::read(fixture("inst4.json")).unwrap()).unwrap();
    let sq4 = Instance::load(&std::fs::read(fixture("sq4.tsp")).unwrap()).unwrap();
    let c4 = solve(&inst4, &SolveOptions::default()).unwrap().tour.cost;
    let c8 = solve(&sq4, &SolveOptions::default()).unwrap().tour.cost;
    let mut stable = true;
    let mut texts = Vec::new();
    for file in ["inst4.json", "sq4.tsp"] {
        let path = fixture(file);
        let p = path.to_str().unwrap();
        let first = cli_stdout(&["solve", p, "--exact", "--cert"]);
        let second = cli_stdout(&["solve", p, "--exact", "--cert"]);
        stable &= first == second;
        texts.push(String::from_utf8(first).unwrap());
    }
    let want4 = "{\"instance\":\"INST4\",\"n\":4,\"cost\":13,\"tour\":[0,2,1,3],\"k\":1,\"k_T\":3,\"layouts\":3,\"certified\":3,\"regime\":\"layouts\",\"opt_cost\":13,\"ratio_num\":1,\"ratio_den\":1,\"ratio\":1.0,\"certificate\":{\"layout\":[[0,2,1]],\"cycle_cost\":12,\"forest_cost\":6,\"matching_cost\":6,\"certified\":true}}\n";
    let ok = c4 == 13 && c8 == 8 && stable && texts[0] == want4;
    verdict(ok, format!("INST4 {c4}, SQ4 {c8}, CLI JSON byte-stable {stable}"))
}

fn runtime_scaling() -> Verdict {
    let (planted, seed) = (0u64..)
        .find_map(|s| {
            let p = gen_planted(30, 6, s).ok()?;
            (p.audit.bad.len() == 6).then_some((p, s))
        })
        .expect("a 6-bad planted instance");
    let started = Instant::now();
    let sol = solve(&planted.instance, &SolveOptions { max_bad: 9, jobs: 1 }).expect("solve");
    let took = started.elapsed();
    sol.tour.verify(&planted.instance).expect("valid tour");
    verdict(
        took < Duration::from_secs(60),
        format!(
            "n = 30, |V^b| = 6 (seed {seed}), {} layouts in {:.2} s single-threaded",
            sol.stats.layouts_evaluated,
            took.as_secs_f64()
        ),
    )
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("ratio theorem", Box::new(|| ratio_theorem(&corpus))),
        ("lemma suite", Box::new(|| lemma_checks(&corpus))),
        ("matching oracle", Box::new(matching_oracle)),
        ("forest oracle", Box::new(forest_oracle)),
        ("shortcut safety", Box::new(|| shortcut_safety(&corpus))),
        ("metric regression", Box::new(metric_regression)),
        ("fixture exactness", Box::new(fixtures_exact)),
        ("runtime scaling", Box::new(runtime_scaling)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        failed += usize::from(!v.ok);
        println!(
            "{} [{}] {name}: {} ({:.1} s)",
            if v.ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

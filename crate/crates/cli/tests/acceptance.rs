//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and fails if any criterion fails.
//!
//! The sweep criteria run the full default sweep twice (one and eight
//! workers), which takes about a minute on a single optimized core.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use bootgen::automata::{dfg_to_dfa, intersect};
use bootgen::discovery::{discover_dfg, simulate_log, DiscoveryConfig, WalkConfig};
use bootgen::entropy::{growth_oracle, topological_entropy};
use bootgen::fixtures;
use bootgen::sampling::{
    breeding_sites, crossover, sample_with_breeding, BreedingSite, SamplerConfig,
};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn bootgen(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_bootgen"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "bootgen {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn exact_measures(against: &str, file: &str, precision: f64, recall: f64) -> Outcome {
    let started = Instant::now();
    let model = fixture("model.dfg");
    let other = fixture(file);
    let out = bootgen(&[
        "measure",
        "--model",
        model.to_str().unwrap(),
        against,
        other.to_str().unwrap(),
    ]);
    let elapsed = started.elapsed();
    let value = |key: &str| -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(key)?.strip_prefix('\t'))
            .unwrap()
            .parse()
            .unwrap()
    };
    let (p, r) = (value("precision"), value("recall"));
    outcome(
        within(p, precision, 0.002) && within(r, recall, 0.002) && elapsed < Duration::from_secs(1),
        format!(
            "precision {p:.6}, recall {r:.6}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn discovery() -> Outcome {
    let started = Instant::now();
    let log = fixtures::log();
    let g = discover_dfg(
        &log,
        &DiscoveryConfig {
            filter_fraction: 1.0 / 3.0,
        },
    )
    .unwrap();
    let same = g.same_structure(&fixtures::model());
    let dfa = dfg_to_dfa(&g);
    let fitting: u64 = log
        .iter()
        .filter(|(t, _)| dfa.accepts(t))
        .map(|(_, c)| c)
        .sum();
    let elapsed = started.elapsed();
    outcome(
        same && fitting == 60 && log.size() == 66 && elapsed < Duration::from_secs(1),
        format!(
            "same structure: {same}, fits {fitting} of {}, {:.3} s",
            log.size(),
            elapsed.as_secs_f64()
        ),
    )
}

/// One panel of a rendered sweep report, keyed by its first column.
fn panel(report: &str, heading: &str) -> BTreeMap<usize, Vec<f64>> {
    report
        .split("\n\n")
        .find(|block| block.starts_with(heading))
        .unwrap_or_else(|| panic!("no {heading:?} in report"))
        .lines()
        .skip(2)
        .map(|line| {
            let mut fields = line.split('\t');
            let key = fields.next().unwrap().parse().unwrap();
            (key, fields.map(|f| f.parse().unwrap()).collect())
        })
        .collect()
}

// Report columns after the key.
const PRECISION: usize = 0;
const RECALL: usize = 2;
const TRACES: usize = 4;

fn panel_a(report: &str) -> Outcome {
    let rows = panel(report, "# panel a");
    let expected = [
        (100, 0.835, 0.952, 11.9),
        (1_000, 0.863, 0.930, 27.7),
        (10_000, 0.881, 0.919, 56.5),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, p, r, d) in expected {
        let Some(row) = rows.get(&n) else {
            return outcome(false, format!("missing n = {n}"));
        };
        let (gp, gr, gd) = (row[PRECISION], row[RECALL], row[TRACES]);
        ok &= within(gp, p, 0.01) && within(gr, r, 0.01) && within(gd, d, 0.15 * d);
        detail.push(format!("n={n}: {gp:.4}/{gr:.4}/{gd:.1}"));
    }
    outcome(ok, detail.join(", "))
}

fn panel_b(report: &str) -> Outcome {
    let rows = panel(report, "# panel b");
    let (Some(a), Some(b)) = (rows.get(&1_000), rows.get(&10_000)) else {
        return outcome(false, "missing g = 1000 or g = 10000");
    };
    let dp = (a[PRECISION] - b[PRECISION]).abs();
    let dr = (a[RECALL] - b[RECALL]).abs();
    outcome(
        within(a[PRECISION], 0.880, 0.01)
            && within(b[PRECISION], 0.881, 0.01)
            && dp < 0.005
            && dr < 0.005,
        format!(
            "precision {:.4} / {:.4}, row differences {dp:.4} (precision), {dr:.4} (recall)",
            a[PRECISION], b[PRECISION]
        ),
    )
}

fn crossover_examples() -> Outcome {
    let started = Instant::now();
    let parent = t("abbbcf");
    let first = crossover(&parent, 2, &parent, 3, 2).unwrap();
    let second = crossover(&parent, 3, &parent, 2, 2).unwrap();
    let sites = breeding_sites(&t("adeef"), &t("adefabcfadef"), 2);
    let expected: Vec<BreedingSite> = [(1, 1), (1, 9), (2, 2), (2, 10), (4, 3), (4, 11)]
        .into_iter()
        .map(|(p1, p2)| BreedingSite { p1, p2 })
        .collect();
    let elapsed = started.elapsed();
    outcome(
        first == t("abbcf")
            && second == t("abbbbcf")
            && sites == expected
            && elapsed < Duration::from_secs(1),
        format!("{first} | {second} | {} sites", sites.len()),
    )
}

fn breeding_closure() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let walks = WalkConfig {
        trace_count: 30,
        max_length: 200,
        ..WalkConfig::default()
    };
    let cfg = SamplerConfig {
        n: 200,
        g: 50,
        k: 1,
        p: 1.0,
        seed: 0,
    };
    let (mut graphs, mut traces, mut counterexamples, mut skipped) = (0, 0, 0, 0);
    while graphs < 200 {
        let g = random_dfg(&mut rng, 12);
        let Ok(log) = simulate_log(&g, &walks, &mut rng) else {
            skipped += 1;
            continue;
        };
        let dfa = dfg_to_dfa(&g);
        let sample = sample_with_breeding(&log, &cfg, &mut rng).unwrap();
        traces += sample.distinct();
        counterexamples += sample.support().filter(|t| !dfa.accepts(t)).count();
        graphs += 1;
    }
    let elapsed = started.elapsed();
    outcome(
        counterexamples == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{graphs} graphs ({skipped} skipped), {traces} distinct offspring checked, \
             {counterexamples} counterexamples, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn entropy_oracle() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_nonempty_dfa(&mut rng, 20, 3);
        let e = topological_entropy(&a).unwrap().value;
        worst = worst.max((e - growth_oracle(&a, 200).unwrap()).abs());
    }
    let mut violations = 0;
    for _ in 0..100 {
        let small = random_nonempty_dfa(&mut rng, 20, 3);
        let large = enlarge(&mut rng, &small, 3);
        let (es, el) = (
            topological_entropy(&small).unwrap().value,
            topological_entropy(&large).unwrap().value,
        );
        if es > el + 1e-9 {
            violations += 1;
        }
    }
    let elapsed = started.elapsed();
    outcome(
        worst <= 0.05 && violations == 0 && elapsed < Duration::from_secs(60),
        format!(
            "max deviation {worst:.4} over 100 automata, {violations} monotonicity violations \
             over 100 pairs, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn intersection_oracle() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let words = all_words(3, 8);
    let mut mismatches = 0;
    for _ in 0..50 {
        let a = random_dfa(&mut rng, 8, 3, 0.8);
        let b = random_dfa(&mut rng, 8, 3, 0.8);
        let both = intersect(&a, &b);
        mismatches += words
            .iter()
            .filter(|&w| both.accepts_word(w) != (a.accepts_word(w) && b.accepts_word(w)))
            .count();
    }
    let elapsed = started.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!(
            "50 pairs x {} words, {mismatches} mismatches, {:.1} s",
            words.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let sweep = |workers: &str| {
        let started = Instant::now();
        let report = bootgen(&["reproduce-table1", "--seed", "42", "--workers", workers]);
        (report, started.elapsed())
    };
    let (sequential, t1) = sweep("1");
    let (parallel, t8) = sweep("8");

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "exact measures, model vs system",
            exact_measures("--system", "system.dfg", 0.867, 0.867),
        ),
        (
            "exact measures, model vs log",
            exact_measures("--log", "running-example.log", 0.791, 0.935),
        ),
        ("discovery reproduces the model", discovery()),
        ("sweep over n", panel_a(&sequential)),
        ("sweep over g", panel_b(&sequential)),
        ("crossover examples", crossover_examples()),
        ("k = 1 breeding stays in the language", breeding_closure()),
        ("entropy oracle and monotonicity", entropy_oracle()),
        ("intersection oracle", intersection_oracle()),
        (
            "sweep determinism across workers",
            outcome(
                sequential == parallel,
                format!(
                    "{} bytes, identical: {}, {:.1} s / {:.1} s",
                    sequential.len(),
                    sequential == parallel,
                    t1.as_secs_f64(),
                    t8.as_secs_f64()
                ),
            ),
        ),
    ];

    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("\nsweep report (seed 42):\n{sequential}");
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Optional environment variables:
//! - `MBV_SPD_INSTANCES`: directory holding the `Spd_RF2` benchmark
//!   files; the file whose name starts with `Spd_RF2_400_519_4731` is checked.
//! - `MBV_SET_V_VI_INSTANCES`: directory of Set V/VI instances, each of which must
//!   admit a spanning tree with no branch vertex.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{component_optimum, matrix_tree_count};
use mbv::generate::generate_random_connected;
use mbv::io::parse_auto;
use mbv::oracle::MAX_CYCLE_RANK;
use mbv::report::parse_record;
use mbv::{
    best_heuristic, branch_count, brute_force_optimum, decompose, decomposed_objective, enumerate_spanning_trees,
    is_spanning_tree, multi_path_expanding, obligatory_branch_bound, path_expanding, recombine, solve_component,
    solve_plain, solve_with_decomposition, structural_report, Graph, SolveOptions,
};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::*;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

/// The 200 small instances shared by criteria 1 to 3: n in [5, 10],
/// m in [n - 1, n + 5] capped at the complete graph.
fn small_suite() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(5..=10);
            let m = rng.gen_range(n - 1..=(n + 5).min(n * (n - 1) / 2));
            generate_random_connected(n, m, rng.gen()).unwrap()
        })
        .collect()
}

fn oracle_equivalence(suite: &[Graph]) -> Outcome {
    let start = Instant::now();
    let opts = SolveOptions::default();
    for (i, g) in suite.iter().enumerate() {
        let oracle = brute_force_optimum(g).unwrap();
        if !is_spanning_tree(g, oracle.witness.edges()) {
            return Fail(format!("instance {i}: oracle witness invalid"));
        }
        for (name, r) in [("plain", solve_plain(g, &opts)), ("decomposed", solve_with_decomposition(g, &opts))] {
            let r = r.unwrap();
            if !r.optimal || r.upper_bound != oracle.optimum {
                return Fail(format!("instance {i}: {name} {} vs oracle {}", r.upper_bound, oracle.optimum));
            }
            if !is_spanning_tree(g, r.tree.edges()) || branch_count(g.n(), r.tree.edges()) != r.upper_bound {
                return Fail(format!("instance {i}: {name} witness invalid"));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(60),
        format!("{} instances agree, {:.2}s (limit 60s)", suite.len(), elapsed.as_secs_f64()),
    )
}

fn decomposition_identity(suite: &[Graph]) -> Outcome {
    let opts = SolveOptions::default();
    for (i, g) in suite.iter().enumerate() {
        let lb = obligatory_branch_bound(g).unwrap();
        let d = decompose(g, &lb).unwrap();
        let z: Vec<usize> = d.components.iter().map(component_optimum).collect();
        let plain = solve_plain(g, &opts).unwrap().upper_bound;
        let identity = decomposed_objective(lb.value(), &z);
        if identity != plain {
            return Fail(format!("instance {i}: |L_o| + sum z_k = {identity}, plain optimum {plain}"));
        }
        let trees: Vec<_> = d
            .components
            .iter()
            .map(|c| solve_component(c, &opts).unwrap().tree.into_edges())
            .collect();
        let t = recombine(&d, &trees).unwrap();
        if !is_spanning_tree(g, t.edges()) || branch_count(g.n(), t.edges()) != identity {
            return Fail(format!("instance {i}: recombined tree has {} branches, expected {identity}", t.branches()));
        }
    }
    Pass(format!("{} instances, exact", suite.len()))
}

fn bound_soundness(suite: &[Graph]) -> Outcome {
    let mut trees = 0u64;
    for (i, g) in suite.iter().enumerate() {
        let lb = obligatory_branch_bound(g).unwrap();
        let cut = structural_report(g).bridges().to_vec();
        let mut opt = usize::MAX;
        let mut violations = 0u64;
        let count = enumerate_spanning_trees(g, |t| {
            let deg = mbv::graph::tree_degrees(g.n(), t);
            opt = opt.min(deg.iter().filter(|&&d| d > 2).count());
            if lb.obligatory().iter().any(|&v| deg[v] < 3) || cut.iter().any(|e| !t.contains(e)) {
                violations += 1;
            }
        })
        .unwrap();
        if count as i128 != matrix_tree_count(g) {
            return Fail(format!("instance {i}: enumerated {count} trees, Matrix-Tree count differs"));
        }
        if lb.value() > opt || violations > 0 {
            return Fail(format!("instance {i}: bound {} optimum {opt}, {violations} violating trees", lb.value()));
        }
        trees += count;
    }
    Pass(format!("{} instances, {trees} enumerated trees, 100% compliant", suite.len()))
}

fn non_tightness() -> Outcome {
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (2..6).flat_map(|x| [(0, x), (1, x)]).collect();
    let g = Graph::new(6, &pairs).unwrap();
    let bound = obligatory_branch_bound(&g).unwrap().value();
    let oracle = brute_force_optimum(&g).unwrap().optimum;
    let opts = SolveOptions::default();
    let plain = solve_plain(&g, &opts).unwrap();
    let dec = solve_with_decomposition(&g, &opts).unwrap();
    let elapsed = start.elapsed();
    ensure(
        bound == 0 && oracle == 1 && plain.optimal && plain.upper_bound == 1 && dec.upper_bound == 1
            && elapsed < Duration::from_secs(1),
        format!(
            "K_2,4: bound {bound}, optimum {oracle} (solvers {} / {}), {:.4}s",
            plain.upper_bound,
            dec.upper_bound,
            elapsed.as_secs_f64()
        ),
    )
}

fn heuristic_quality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let (mut enumerable, mut within, mut largest) = (0, 0, 0);
    for i in 0..1000 {
        // a third of the instances small enough to enumerate, the rest up to n = 1000
        let (n, m) = if i % 3 == 0 {
            let n = rng.gen_range(5..=12);
            (n, rng.gen_range(n - 1..=(n + 6).min(n * (n - 1) / 2)))
        } else {
            let n = rng.gen_range(13..=1000);
            (n, rng.gen_range(n - 1..=n + n / 2))
        };
        largest = largest.max(n);
        let g = generate_random_connected(n, m, rng.gen()).unwrap();
        let lb = obligatory_branch_bound(&g).unwrap();
        let p = path_expanding(&g, &lb).unwrap();
        let mp = multi_path_expanding(&g, &lb).unwrap();
        for t in [&p, &mp] {
            if !is_spanning_tree(&g, t.edges()) || t.branches() < lb.value() {
                return Fail(format!("instance {i} (n={n}, m={m}): invalid tree or below bound"));
            }
        }
        if g.cycle_rank() <= MAX_CYCLE_RANK && n <= 12 {
            enumerable += 1;
            let opt = brute_force_optimum(&g).unwrap().optimum;
            if best_heuristic(&g, &lb).unwrap().branches() <= opt + 2 {
                within += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let share = 100.0 * within as f64 / enumerable as f64;
    ensure(
        share >= 90.0 && elapsed < Duration::from_secs(120),
        format!(
            "1000 valid (n up to {largest}); best within +2 on {within}/{enumerable} = {share:.1}% (need 90%); {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn preprocessing_speed() -> Outcome {
    let g = generate_random_connected(1000, 1200, 6).unwrap();
    let start = Instant::now();
    let lb = obligatory_branch_bound(&g).unwrap();
    let d = decompose(&g, &lb).unwrap();
    let p = path_expanding(&g, &lb).unwrap();
    let mp = multi_path_expanding(&g, &lb).unwrap();
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_millis(100),
        format!(
            "n=1000 m=1200: OB {} CE {}, heuristics {}/{}, {:.2}ms (limit 100ms)",
            d.obligatory_count(),
            d.cut_edge_count(),
            p.branches(),
            mp.branches(),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn enhanced_trend() -> Outcome {
    let opts = SolveOptions {
        time_limit: Some(Duration::from_secs(10)),
        ..SolveOptions::default()
    };
    let (mut enhanced, mut plain) = (Duration::ZERO, Duration::ZERO);
    for seed in 0..30 {
        let g = generate_random_connected(60, 66, 7_000 + seed).unwrap();
        let e = solve_with_decomposition(&g, &opts).unwrap();
        let p = solve_plain(&g, &opts).unwrap();
        if !(e.optimal && p.optimal) || e.upper_bound != p.upper_bound {
            return Fail(format!(
                "seed {}: enhanced {}..{} plain {}..{}",
                7_000 + seed,
                e.lower_bound,
                e.upper_bound,
                p.lower_bound,
                p.upper_bound
            ));
        }
        enhanced += e.elapsed;
        plain += p.elapsed;
    }
    ensure(
        enhanced <= plain,
        format!(
            "30 instances n=60 m=66, same optima; enhanced {:.3}s vs plain {:.3}s",
            enhanced.as_secs_f64(),
            plain.as_secs_f64()
        ),
    )
}

fn instance_files(var: &str) -> Option<Vec<PathBuf>> {
    let dir = std::env::var_os(var)?;
    let mut files: Vec<PathBuf> = fs::read_dir(dir).ok()?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.sort();
    Some(files)
}

fn published_instances() -> Outcome {
    let mut notes = Vec::new();
    let mut checked = false;
    if let Some(files) = instance_files("MBV_SPD_INSTANCES") {
        let target = files.iter().find(|p| {
            p.file_name()
                .and_then(|f| f.to_str())
                .is_some_and(|f| f.starts_with("Spd_RF2_400_519_4731"))
        });
        if let Some(path) = target {
            checked = true;
            let g = match fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| parse_auto(&t).map_err(|e| e.to_string())) {
                Ok(g) => g,
                Err(e) => return Fail(format!("{}: {e}", path.display())),
            };
            let lb = obligatory_branch_bound(&g).unwrap();
            let d = decompose(&g, &lb).unwrap();
            let r = solve_with_decomposition(&g, &SolveOptions::default()).unwrap();
            let (ob, ce) = (d.obligatory_count(), d.cut_edge_count());
            if ob != 52 || ce != 155 || !r.optimal || r.upper_bound != 70 {
                return Fail(format!("Spd_RF2_400_519_4731: OB {ob} CE {ce} optimum {} (optimal={})", r.upper_bound, r.optimal));
            }
            notes.push("Spd_RF2_400_519_4731 OB 52 CE 155 optimum 70".to_string());
        }
    }
    if let Some(files) = instance_files("MBV_SET_V_VI_INSTANCES") {
        for path in files {
            checked = true;
            let g = match fs::read_to_string(&path).map_err(|e| e.to_string()).and_then(|t| parse_auto(&t).map_err(|e| e.to_string())) {
                Ok(g) => g,
                Err(e) => return Fail(format!("{}: {e}", path.display())),
            };
            let r = solve_with_decomposition(&g, &SolveOptions::default()).unwrap();
            if r.upper_bound != 0 {
                return Fail(format!("{}: best tree has {} branches", path.display(), r.upper_bound));
            }
        }
        notes.push("Set V/VI instances branch-free".to_string());
    }
    if checked {
        Pass(notes.join("; "))
    } else {
        Skip("benchmark files not available (set MBV_SPD_INSTANCES / MBV_SET_V_VI_INSTANCES)".to_string())
    }
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_mbv")).args(args).env_remove("MBV_LOG").output().unwrap();
    let strip = |bytes: &[u8]| -> Vec<Vec<(String, String)>> {
        String::from_utf8_lossy(bytes)
            .lines()
            .map(|l| parse_record(l).into_iter().filter(|(k, _)| !k.starts_with("elapsed")).collect())
            .collect()
    };
    let file = dir.path().join("g.txt");
    let f = file.to_str().unwrap();
    let bench = dir.path().join("bench");
    fs::create_dir(&bench).unwrap();
    let (b1, b2) = (bench.join("a.txt"), bench.join("b.txt"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "--n", "40", "--m", "48", "--seed", "9"],
        vec!["gen", "--n", "40", "--m", "48", "--seed", "9", "--out", f],
        vec!["gen", "--n", "20", "--m", "24", "--seed", "1", "--out", b1.to_str().unwrap()],
        vec!["gen", "--n", "20", "--m", "25", "--seed", "2", "--dimacs", "--out", b2.to_str().unwrap()],
        vec!["stats", f],
        vec!["heur", f, "--alg", "path"],
        vec!["heur", f, "--alg", "multipath"],
        vec!["heur", f, "--alg", "best"],
        vec!["solve", f],
        vec!["solve", f, "--no-decompose", "--no-warm-start"],
        vec!["bench", bench.to_str().unwrap(), "--jobs", "2"],
    ];
    let mut compared = 0;
    for args in &cases {
        let first = run(args);
        let first_file = args.iter().position(|a| *a == "--out").map(|i| fs::read(args[i + 1]).unwrap());
        let second = run(args);
        let second_file = args.iter().position(|a| *a == "--out").map(|i| fs::read(args[i + 1]).unwrap());
        if !first.status.success() || first.status.code() != second.status.code() {
            return Fail(format!("{args:?}: exit {:?} / {:?}", first.status.code(), second.status.code()));
        }
        if strip(&first.stdout) != strip(&second.stdout) || first_file != second_file {
            return Fail(format!("{args:?}: output differs between runs"));
        }
        compared += 1;
    }
    let (d1, d2) = (dir.path().join("d1"), dir.path().join("d2"));
    for d in [&d1, &d2] {
        if !run(&["decompose", f, "--out-dir", d.to_str().unwrap()]).status.success() {
            return Fail("decompose failed".into());
        }
    }
    for entry in fs::read_dir(&d1).unwrap() {
        let name = entry.unwrap().file_name();
        if fs::read(d1.join(&name)).unwrap() != fs::read(d2.join(&name)).unwrap() {
            return Fail(format!("decompose output {name:?} differs"));
        }
    }
    Pass(format!("{} subcommand runs plus decompose output identical", compared))
}

fn main() -> ExitCode {
    let suite = small_suite();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 oracle equivalence", Box::new(|| oracle_equivalence(&suite))),
        ("2 decomposition identity", Box::new(|| decomposition_identity(&suite))),
        ("3 bound soundness and forced structure", Box::new(|| bound_soundness(&suite))),
        ("4 non-tightness witness", Box::new(non_tightness)),
        ("5 heuristic validity and quality", Box::new(heuristic_quality)),
        ("6 preprocessing speed", Box::new(preprocessing_speed)),
        ("7 enhanced not slower than plain", Box::new(enhanced_trend)),
        ("8 published instance values", Box::new(published_instances)),
        ("9 CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Fail(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Skip(d) => ("SKIP", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{name}] {detail}");
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

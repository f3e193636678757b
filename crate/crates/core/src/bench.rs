//! Plain versus decomposed solving over a set of instances.

use std::fs;
use std::io;
use std::path::Path;
use std::time::{Duration, Instant};

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use crate::bound::obligatory_branch_bound;
use crate::decompose::decompose;
use crate::error::Result;
use crate::generate::generate_random_connected;
use crate::graph::Graph;
use crate::heuristics::{multi_path_expanding, path_expanding};
use crate::io::parse_auto;
use crate::report::Record;
use crate::solver::{solve_plain, solve_with_decomposition, SolveOptions};

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub time_limit: Option<Duration>,
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            time_limit: Some(Duration::from_secs(10)),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    /// Obligatory branches removed.
    pub ob: usize,
    /// Cut edges removed.
    pub ce: usize,
    pub components: usize,
    pub heur_path: usize,
    pub heur_multipath: usize,
    pub heur_best: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub gap_percent: f64,
    pub optimal: bool,
    pub nodes: u64,
    pub plain_lower_bound: usize,
    pub plain_upper_bound: usize,
    pub plain_gap_percent: f64,
    pub plain_optimal: bool,
    pub plain_nodes: u64,
    pub elapsed_preprocess_s: f64,
    pub elapsed_enhanced_s: f64,
    pub elapsed_plain_s: f64,
    pub error: Option<String>,
}

impl Report {
    pub fn to_record(&self) -> Record {
        let r = Record::new("instance").with("instance", self.instance.clone());
        if let Some(e) = &self.error {
            return r.with("error", e.clone());
        }
        r.with("n", self.n)
            .with("m", self.m)
            .with("ob", self.ob)
            .with("ce", self.ce)
            .with("components", self.components)
            .with("heur_path", self.heur_path)
            .with("heur_multipath", self.heur_multipath)
            .with("heur_best", self.heur_best)
            .with("lower_bound", self.lower_bound)
            .with("upper_bound", self.upper_bound)
            .with_f64("gap_percent", self.gap_percent)
            .with("optimal", self.optimal)
            .with("nodes", self.nodes)
            .with("plain_lower_bound", self.plain_lower_bound)
            .with("plain_upper_bound", self.plain_upper_bound)
            .with_f64("plain_gap_percent", self.plain_gap_percent)
            .with("plain_optimal", self.plain_optimal)
            .with("plain_nodes", self.plain_nodes)
            .with_f64("elapsed_preprocess_s", self.elapsed_preprocess_s)
            .with_f64("elapsed_enhanced_s", self.elapsed_enhanced_s)
            .with_f64("elapsed_plain_s", self.elapsed_plain_s)
    }
}

pub fn bench_graph(instance: &str, g: &Graph, opts: &BenchOptions) -> Report {
    match run(instance, g, opts) {
        Ok(r) => r,
        Err(e) => failed(instance, e.to_string()),
    }
}

fn failed(instance: &str, error: String) -> Report {
    warn!("{instance}: {error}");
    Report {
        instance: instance.to_string(),
        error: Some(error),
        ..Report::default()
    }
}

fn run(instance: &str, g: &Graph, opts: &BenchOptions) -> Result<Report> {
    let t = Instant::now();
    let lb = obligatory_branch_bound(g)?;
    let d = decompose(g, &lb)?;
    let path = path_expanding(g, &lb)?;
    let multi = multi_path_expanding(g, &lb)?;
    let preprocess = t.elapsed();

    let solve_opts = SolveOptions {
        time_limit: opts.time_limit,
        ..SolveOptions::default()
    };
    let enhanced = solve_with_decomposition(g, &solve_opts)?;
    let plain = solve_plain(g, &solve_opts)?;
    info!(
        "{instance}: enhanced {}..{} in {:?}, plain {}..{} in {:?}",
        enhanced.lower_bound, enhanced.upper_bound, enhanced.elapsed, plain.lower_bound, plain.upper_bound, plain.elapsed
    );
    Ok(Report {
        instance: instance.to_string(),
        n: g.n(),
        m: g.m(),
        ob: d.obligatory_count(),
        ce: d.cut_edge_count(),
        components: d.components.len(),
        heur_path: path.branches(),
        heur_multipath: multi.branches(),
        heur_best: path.branches().min(multi.branches()),
        lower_bound: enhanced.lower_bound,
        upper_bound: enhanced.upper_bound,
        gap_percent: enhanced.gap_percent(),
        optimal: enhanced.optimal,
        nodes: enhanced.nodes_explored,
        plain_lower_bound: plain.lower_bound,
        plain_upper_bound: plain.upper_bound,
        plain_gap_percent: plain.gap_percent(),
        plain_optimal: plain.optimal,
        plain_nodes: plain.nodes_explored,
        elapsed_preprocess_s: preprocess.as_secs_f64(),
        elapsed_enhanced_s: enhanced.elapsed.as_secs_f64(),
        elapsed_plain_s: plain.elapsed.as_secs_f64(),
        error: None,
    })
}

fn pool_map<T: Sync, F>(items: &[T], jobs: usize, f: F) -> Vec<Report>
where
    F: Fn(&T) -> Report + Sync + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Benchmarks every regular, non-hidden file in `dir`, in file-name order.
pub fn bench_dir(dir: &Path, opts: &BenchOptions) -> io::Result<Vec<Report>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if entry.file_type()?.is_file() && !name.starts_with('.') {
            files.push((name, entry.path()));
        }
    }
    files.sort();
    Ok(pool_map(&files, opts.jobs, |(name, path)| {
        match fs::read_to_string(path) {
            Ok(text) => match parse_auto(&text) {
                Ok(g) => bench_graph(name, &g, opts),
                Err(e) => failed(name, e.to_string()),
            },
            Err(e) => failed(name, e.to_string()),
        }
    }))
}

/// Generated suite: `count` graphs with seeds `seed..seed + count`.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorSpec {
    pub n: usize,
    pub m: usize,
    pub count: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn instance_name(&self, seed: u64) -> String {
        format!("gen_{}_{}_{}", self.n, self.m, seed)
    }
}

pub fn bench_generated(spec: GeneratorSpec, opts: &BenchOptions) -> Vec<Report> {
    let seeds: Vec<u64> = (0..spec.count as u64).map(|i| spec.seed + i).collect();
    pool_map(&seeds, opts.jobs, |&seed| {
        let name = spec.instance_name(seed);
        match generate_random_connected(spec.n, spec.m, seed) {
            Ok(g) => bench_graph(&name, &g, opts),
            Err(e) => failed(&name, e.to_string()),
        }
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Summary {
    pub instances: usize,
    pub failed: usize,
    pub optimal_enhanced: usize,
    pub optimal_plain: usize,
    /// Sum of OB over sum of n, in percent.
    pub ob_percent: f64,
    /// Sum of CE over sum of m, in percent.
    pub ce_percent: f64,
    pub elapsed_enhanced_s: f64,
    pub elapsed_plain_s: f64,
}

pub fn summarize(reports: &[Report]) -> Summary {
    let ok: Vec<&Report> = reports.iter().filter(|r| r.error.is_none()).collect();
    let pct = |num: usize, den: usize| if den == 0 { 0.0 } else { 100.0 * num as f64 / den as f64 };
    Summary {
        instances: reports.len(),
        failed: reports.len() - ok.len(),
        optimal_enhanced: ok.iter().filter(|r| r.optimal).count(),
        optimal_plain: ok.iter().filter(|r| r.plain_optimal).count(),
        ob_percent: pct(ok.iter().map(|r| r.ob).sum(), ok.iter().map(|r| r.n).sum()),
        ce_percent: pct(ok.iter().map(|r| r.ce).sum(), ok.iter().map(|r| r.m).sum()),
        elapsed_enhanced_s: ok.iter().map(|r| r.elapsed_enhanced_s).sum(),
        elapsed_plain_s: ok.iter().map(|r| r.elapsed_plain_s).sum(),
    }
}

impl Summary {
    pub fn to_record(&self) -> Record {
        Record::new("summary")
            .with("instances", self.instances)
            .with("failed", self.failed)
            .with("optimal_enhanced", self.optimal_enhanced)
            .with("optimal_plain", self.optimal_plain)
            .with_f64("ob_percent", self.ob_percent)
            .with_f64("ce_percent", self.ce_percent)
            .with_f64("elapsed_enhanced_s", self.elapsed_enhanced_s)
            .with_f64("elapsed_plain_s", self.elapsed_plain_s)
    }
}

/// Human-readable table in the column order of the record format.
pub fn render_table(reports: &[Report]) -> String {
    let mut out = format!(
        "{:<28} {:>5} {:>5} {:>4} {:>4} | {:>4} {:>4} {:>4} | {:>4} {:>4} {:>6} {:>9} | {:>4} {:>4} {:>6} {:>9}\n",
        "instance", "n", "m", "OB", "CE", "path", "mpe", "best", "LB", "UB", "gap%", "enh(s)", "LB", "UB", "gap%", "plain(s)"
    );
    for r in reports {
        if let Some(e) = &r.error {
            out.push_str(&format!("{:<28} error: {e}\n", r.instance));
            continue;
        }
        out.push_str(&format!(
            "{:<28} {:>5} {:>5} {:>4} {:>4} | {:>4} {:>4} {:>4} | {:>4} {:>4} {:>6.2} {:>9.4} | {:>4} {:>4} {:>6.2} {:>9.4}\n",
            r.instance,
            r.n,
            r.m,
            r.ob,
            r.ce,
            r.heur_path,
            r.heur_multipath,
            r.heur_best,
            r.lower_bound,
            r.upper_bound,
            r.gap_percent,
            r.elapsed_enhanced_s,
            r.plain_lower_bound,
            r.plain_upper_bound,
            r.plain_gap_percent,
            r.elapsed_plain_s
        ));
    }
    out
}

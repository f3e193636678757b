use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mbv::bench::{bench_dir, bench_generated, render_table, summarize, BenchOptions, GeneratorSpec};
use mbv::generate::generate_random_connected;
use mbv::io::{parse_auto, write_dimacs, write_instance};
use mbv::report::Record;
use mbv::{
    best_heuristic, brute_force_optimum, decompose, multi_path_expanding, obligatory_branch_bound, path_expanding,
    solve_plain, solve_with_decomposition, structural_report, Edge, Graph, Provenance, SolveOptions,
};

/// Minimum branch vertices spanning trees.
#[derive(Parser)]
#[command(name = "mbv", version)]
struct Cli {
    /// Print one JSON array instead of key=value records.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random connected instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the DIMACS-like format instead of the simple one.
        #[arg(long)]
        dimacs: bool,
    },
    /// Structure and lower bound of an instance.
    Stats { file: PathBuf },
    /// Write one instance per decomposition component plus a metadata file.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run a constructive heuristic.
    Heur {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Alg::Best)]
        alg: Alg,
    },
    /// Solve to optimality (or until the limits are hit).
    Solve {
        file: PathBuf,
        /// Solve the whole graph instead of the decomposed components.
        #[arg(long)]
        no_decompose: bool,
        #[arg(long)]
        no_warm_start: bool,
        #[arg(long, value_name = "SECS")]
        time_limit: Option<f64>,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Compare plain and decomposed solving over a directory or a generated suite.
    Bench {
        dir: Option<PathBuf>,
        /// Generated suite `n,m,count,seed` instead of a directory.
        #[arg(long, value_name = "N,M,COUNT,SEED")]
        generate: Option<String>,
        #[arg(long, value_name = "SECS", default_value_t = 10.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exhaustive optimum for small instances.
    #[command(hide = true)]
    Oracle { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Path,
    Multipath,
    Best,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_auto(&text).with_context(|| format!("parsing {}", path.display()))
}

fn seconds(secs: f64) -> Result<Duration> {
    if !secs.is_finite() || secs <= 0.0 {
        bail!("time limit must be a positive number of seconds");
    }
    Ok(Duration::from_secs_f64(secs))
}

fn tree_records(edges: &[Edge]) -> impl Iterator<Item = Record> + '_ {
    edges
        .iter()
        .map(|e| Record::new("tree_edge").with("u", e.u + 1).with("v", e.v + 1))
}

// A closed pipe on stdout (e.g. `| head`) is not an error worth reporting.
fn emit(records: &[Record], json: bool) {
    let text = if json {
        let docs: Vec<_> = records.iter().map(Record::to_json).collect();
        serde_json::to_string_pretty(&docs).expect("records serialize") + "\n"
    } else {
        records.iter().map(|r| format!("{r}\n")).collect()
    };
    print_stdout(&text);
}

fn print_stdout(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn stats(g: &Graph) -> Vec<Record> {
    let report = structural_report(g);
    let mut head = Record::new("stats")
        .with("n", g.n())
        .with("m", g.m())
        .with("components", report.component_count())
        .with("connected", report.component_count() <= 1)
        .with("articulation_points", report.articulation().len())
        .with("bridges", report.bridges().len());
    let mut rest = Vec::new();
    if let Ok(lb) = obligatory_branch_bound(g) {
        head = head
            .with("cycle_rank", g.cycle_rank())
            .with("obligatory", lb.value())
            .with("lower_bound", lb.value());
        rest.extend(
            lb.alpha()
                .iter()
                .map(|(&v, &a)| Record::new("obligatory").with("vertex", v + 1).with("alpha", a)),
        );
    }
    std::iter::once(head).chain(rest).collect()
}

fn write_decomposition(g: &Graph, out_dir: &Path) -> Result<Vec<Record>> {
    let lb = obligatory_branch_bound(g)?;
    let d = decompose(g, &lb)?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;

    let summary = Record::new("decomposition")
        .with("n", g.n())
        .with("m", g.m())
        .with("ob", d.obligatory_count())
        .with("ce", d.cut_edge_count())
        .with("components", d.components.len());
    let mut meta = vec![summary.clone()];
    for (&v, &a) in lb.alpha() {
        meta.push(Record::new("obligatory").with("vertex", v + 1).with("alpha", a));
    }
    for e in &d.cut_edges {
        meta.push(Record::new("cut_edge").with("u", e.u + 1).with("v", e.v + 1));
    }
    let width = d.components.len().saturating_sub(1).to_string().len().max(4);
    for (k, c) in d.components.iter().enumerate() {
        let file = format!("component_{k:0width$}.txt");
        let comment = format!("component {k} of {} components", d.components.len());
        fs::write(out_dir.join(&file), write_instance(&c.graph, Some(&comment)))?;
        meta.push(
            Record::new("component")
                .with("index", k)
                .with("file", file)
                .with("n", c.graph.n())
                .with("m", c.graph.m()),
        );
        for (local, p) in c.provenance.iter().enumerate() {
            let r = Record::new("vertex").with("component", k).with("local", local + 1);
            let r = match *p {
                Provenance::Original(v) => r
                    .with("source", v + 1)
                    .with("split_part", serde_json::Value::Null)
                    .with("gamma", c.gamma[local])
                    .with("degree", c.original_degree[local]),
                Provenance::SplitCopy { vertex, part } => r
                    .with("source", vertex + 1)
                    .with("split_part", part + 1)
                    .with("gamma", serde_json::Value::Null)
                    .with("degree", serde_json::Value::Null),
            };
            meta.push(r);
        }
        for (id, e) in c.graph.edges().iter().enumerate() {
            let o = c.edge_origin[id];
            meta.push(
                Record::new("edge")
                    .with("component", k)
                    .with("local_u", e.u + 1)
                    .with("local_v", e.v + 1)
                    .with("u", o.u + 1)
                    .with("v", o.v + 1),
            );
        }
    }
    let text: String = meta.iter().map(|r| format!("{r}\n")).collect();
    fs::write(out_dir.join("decomposition.meta"), text)?;
    Ok(vec![summary])
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut exit = ExitCode::SUCCESS;
    let records = match cli.command {
        Command::Gen { n, m, seed, out, dimacs } => {
            let g = generate_random_connected(n, m, seed)?;
            let comment = format!("mbv gen n={n} m={m} seed={seed}");
            let text = if dimacs {
                write_dimacs(&g, Some(&comment))
            } else {
                write_instance(&g, Some(&comment))
            };
            match out {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print_stdout(&text),
            }
            return Ok(exit);
        }
        Command::Stats { file } => stats(&read_graph(&file)?),
        Command::Decompose { file, out_dir } => write_decomposition(&read_graph(&file)?, &out_dir)?,
        Command::Heur { file, alg } => {
            let g = read_graph(&file)?;
            let lb = obligatory_branch_bound(&g)?;
            let (name, tree) = match alg {
                Alg::Path => ("path", path_expanding(&g, &lb)?),
                Alg::Multipath => ("multipath", multi_path_expanding(&g, &lb)?),
                Alg::Best => ("best", best_heuristic(&g, &lb)?),
            };
            let head = Record::new("heuristic")
                .with("alg", name)
                .with("n", g.n())
                .with("m", g.m())
                .with("lower_bound", lb.value())
                .with("branches", tree.branches());
            std::iter::once(head).chain(tree_records(tree.edges())).collect()
        }
        Command::Solve {
            file,
            no_decompose,
            no_warm_start,
            time_limit,
            node_limit,
        } => {
            let g = read_graph(&file)?;
            let opts = SolveOptions {
                time_limit: time_limit.map(seconds).transpose()?,
                use_warm_start: !no_warm_start,
                node_limit,
                ..SolveOptions::default()
            };
            let r = if no_decompose {
                solve_plain(&g, &opts)?
            } else {
                solve_with_decomposition(&g, &opts)?
            };
            if !r.optimal {
                exit = ExitCode::from(2);
            }
            let head = Record::new("solve")
                .with("mode", if no_decompose { "plain" } else { "enhanced" })
                .with("warm_start", !no_warm_start)
                .with("n", g.n())
                .with("m", g.m())
                .with("lower_bound", r.lower_bound)
                .with("upper_bound", r.upper_bound)
                .with_f64("gap_percent", r.gap_percent())
                .with("optimal", r.optimal)
                .with("root_bound", r.root_bound)
                .with("nodes", r.nodes_explored)
                .with_f64("elapsed_s", r.elapsed.as_secs_f64());
            std::iter::once(head).chain(tree_records(r.tree.edges())).collect()
        }
        Command::Bench {
            dir,
            generate,
            time_limit,
            jobs,
        } => {
            let opts = BenchOptions {
                time_limit: Some(seconds(time_limit)?),
                jobs,
            };
            let reports = match (dir, generate) {
                (Some(dir), None) => bench_dir(&dir, &opts).with_context(|| format!("reading {}", dir.display()))?,
                (None, Some(spec)) => bench_generated(parse_spec(&spec)?, &opts),
                _ => bail!("give exactly one of DIR or --generate"),
            };
            eprint!("{}", render_table(&reports));
            let summary = summarize(&reports);
            reports
                .iter()
                .map(|r| r.to_record())
                .chain(std::iter::once(summary.to_record()))
                .collect()
        }
        Command::Oracle { file } => {
            let g = read_graph(&file)?;
            let r = brute_force_optimum(&g)?;
            let head = Record::new("oracle")
                .with("n", g.n())
                .with("m", g.m())
                .with("optimum", r.optimum)
                .with("trees", r.trees_enumerated);
            std::iter::once(head).chain(tree_records(r.witness.edges())).collect()
        }
    };
    emit(&records, cli.json);
    Ok(exit)
}

fn parse_spec(spec: &str) -> Result<GeneratorSpec> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n, m, count, seed] = parts[..] else {
        bail!("expected N,M,COUNT,SEED, got {spec:?}");
    };
    Ok(GeneratorSpec {
        n: n.parse()?,
        m: m.parse()?,
        count: count.parse()?,
        seed: seed.parse()?,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MBV_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

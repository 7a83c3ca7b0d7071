use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use treecut::io::{generate, GenConfig, Shape};
use treecut::run::{choose_auto, run, Algo, Answer, RunOptions, RunStats};
use treecut::suite::{default_suite, run_suite};
use treecut::instance::verify_vertices;
use treecut::light::HeavyComponent;
use treecut::{
    classify_light, gen_dq_light, parse_instance, reduce_vertex_cover, serialize_instance, Instance, Verdict, VertexId,
};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "treecut", version, about = "Weighted vertex multicut on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    K,
    Leaves,
    Light,
    Oracle,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print a JSON report.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        /// Size budget (overrides `budget k` in the file).
        #[arg(long)]
        k: Option<u64>,
        /// Weight budget (overrides `budget w` in the file).
        #[arg(long)]
        w: Option<u64>,
        /// Lightness threshold for `--algo light`.
        #[arg(long)]
        d: Option<usize>,
        /// Write the branching tree as DOT to this file.
        #[arg(long, value_name = "OUT")]
        trace: Option<PathBuf>,
    },
    /// Check a vertex set against an instance and its budgets.
    Verify {
        file: PathBuf,
        /// Comma-separated vertex ids; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        w: Option<u64>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        pairs: usize,
        #[arg(long, default_value_t = 100)]
        weight_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform, caterpillar, star-ish, path or leaves-N.
        #[arg(long, default_value = "uniform")]
        shape: Shape,
        /// Chance per thousand that a vertex is undeletable.
        #[arg(long, default_value_t = 0)]
        undeletable: u32,
        /// Generate a (d, q)-light instance with `--n` vertices instead.
        #[arg(long, requires = "light_q")]
        light_d: Option<usize>,
        #[arg(long, requires = "light_d")]
        light_q: Option<usize>,
        #[arg(long)]
        budget_w: Option<u64>,
        #[arg(long)]
        budget_k: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Turn a graph (`n m` header, then `u v` per edge) into a multicut
    /// instance with the same optimum as its minimum vertex cover.
    ReduceVc {
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report pair loads, light vertices and heavy components.
    Classify {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        /// Also report whether every heavy component has at most q leaves.
        #[arg(long)]
        q: Option<usize>,
    },
    /// Run the built-in instance suite and write CSV.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run instances one at a time on the calling thread.
        #[arg(long)]
        sequential: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct RunReport {
    answer: Answer,
    algorithm: Algo,
    min_weight: Option<u64>,
    witness_weight: Option<u64>,
    witness: Vec<VertexId>,
    stats: RunStats,
    bound: Option<String>,
    within_bound: bool,
    config: Config,
}

#[derive(Serialize)]
struct Config {
    file: String,
    requested: String,
    k: Option<u64>,
    w: Option<u64>,
    d: Option<usize>,
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    verdict: String,
    weight: Option<u64>,
    size: usize,
}

/// Bad input or flags, as opposed to an I/O failure.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn solve(file: &Path, algo: AlgoArg, k: Option<u64>, w: Option<u64>, d: Option<usize>, trace: Option<&Path>) -> Result<u8> {
    let instance = load(file)?;
    let k = k.or(instance.budget_k);
    let w = w.or(instance.budget_w);
    let instance = instance.with_budgets(w, k);
    let (chosen, auto_d) = match algo {
        AlgoArg::K => (Algo::K, None),
        AlgoArg::Leaves => (Algo::Leaves, None),
        AlgoArg::Light => (Algo::Light, None),
        AlgoArg::Oracle => (Algo::Oracle, None),
        AlgoArg::Auto => choose_auto(&instance, k.is_some() && w.is_some()),
    };
    if algo == AlgoArg::K {
        if k.is_none() {
            return Err(usage("--k is required for --algo k"));
        }
        if w.is_none() {
            return Err(usage("--w is required for --algo k"));
        }
    }
    if algo == AlgoArg::Light {
        if d.is_none() {
            return Err(usage("--d is required for --algo light"));
        }
        if w.is_none() {
            return Err(usage("--w is required for --algo light"));
        }
    }
    if chosen == Algo::Oracle && instance.n() > 18 {
        return Err(usage(format!("--algo oracle handles at most 18 vertices, got {}", instance.n())));
    }
    let d = d.or(auto_d);
    let result = run(
        &instance,
        chosen,
        RunOptions {
            d,
            trace: trace.is_some(),
        },
    )?;
    if let Some(path) = trace {
        match &result.trace {
            Some(t) => fs::write(path, t.to_dot()).with_context(|| format!("writing {}", path.display()))?,
            None => eprintln!("no branching trace for --algo {chosen}; {} not written", path.display()),
        }
    }
    let weight = result.solution.as_ref().map(|s| s.total_weight());
    let report = RunReport {
        answer: result.answer,
        algorithm: chosen,
        min_weight: if chosen == Algo::K { None } else { weight },
        witness_weight: weight,
        witness: result.solution.as_ref().map(|s| s.vertices().to_vec()).unwrap_or_default(),
        stats: result.stats.clone(),
        bound: result.bound.map(|b| b.to_string()),
        within_bound: result.within_bound,
        config: Config {
            file: file.display().to_string(),
            requested: match algo {
                AlgoArg::Auto => "auto".into(),
                _ => chosen.to_string(),
            },
            k,
            w,
            d,
        },
    };
    print_json(&report)?;
    eprintln!(
        "{}: {} via {} ({} nodes, {:.1} ms){}",
        file.display(),
        result.answer,
        chosen,
        result.stats.nodes,
        result.stats.ms,
        weight.map(|w| format!(", weight {w}")).unwrap_or_default()
    );
    Ok(if result.answer == Answer::Yes { 0 } else { EXIT_NO })
}

fn parse_ids(list: &str) -> Result<Vec<VertexId>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad vertex id `{t}`"))))
        .collect()
}

fn verify(file: &Path, witness: &str, k: Option<u64>, w: Option<u64>) -> Result<u8> {
    let witness = parse_ids(witness)?;
    let instance = load(file)?;
    let k = k.or(instance.budget_k);
    let w = w.or(instance.budget_w);
    let instance = instance.with_budgets(w, k);
    let verdict = verify_vertices(&instance, &witness);
    if let Verdict::BadVertex(v) = verdict {
        return Err(usage(format!("bad vertex {v}")));
    }
    let mut distinct = witness.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    print_json(&VerifyReport {
        valid: verdict.is_valid(),
        verdict: verdict.to_string(),
        weight: instance.weights.total(&distinct),
        size: distinct.len(),
    })?;
    eprintln!("{}: {verdict}", file.display());
    Ok(if verdict.is_valid() { 0 } else { EXIT_NO })
}

fn parse_graph(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| usage("empty graph file"))?;
    let nums = |l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| usage(format!("bad number `{t}`"))))
            .collect()
    };
    let h = nums(header)?;
    let [n, m] = h[..] else {
        bail!(usage("graph header must be `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    for l in lines {
        match nums(l)?[..] {
            [u, v] => edges.push((u, v)),
            _ => bail!(usage(format!("bad edge line `{l}`"))),
        }
    }
    if edges.len() != m {
        bail!(usage(format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}

#[derive(Serialize)]
struct ClassifyReport {
    d: usize,
    load: Vec<usize>,
    light: Vec<VertexId>,
    heavy_components: Vec<HeavyComponent>,
    max_closed_leaves: usize,
    q: Option<usize>,
    dq_light: Option<bool>,
}

fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Solve { file, algo, k, w, d, trace } => solve(&file, algo, k, w, d, trace.as_deref()),
        Command::Verify { file, witness, k, w } => verify(&file, &witness, k, w),
        Command::Gen {
            n,
            pairs,
            weight_max,
            seed,
            shape,
            undeletable,
            light_d,
            light_q,
            budget_w,
            budget_k,
            out,
        } => {
            let instance = match light_d.zip(light_q) {
                Some((d, q)) => gen_dq_light(d, q, n, seed),
                None => generate(&GenConfig::new(n, pairs, weight_max, seed, shape).undeletable(undeletable)),
            }
            .map_err(|e| usage(e.to_string()))?;
            emit(out.as_deref(), &serialize_instance(&instance.with_budgets(budget_w, budget_k)))?;
            Ok(0)
        }
        Command::ReduceVc { graph, out } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let (n, edges) = parse_graph(&text)?;
            let instance = reduce_vertex_cover(&edges, n).map_err(|e| usage(e.to_string()))?;
            emit(out.as_deref(), &serialize_instance(&instance))?;
            Ok(0)
        }
        Command::Classify { file, d, q } => {
            let instance = load(&file)?;
            let c = classify_light(&instance.tree, &instance.pairs, d);
            let report = ClassifyReport {
                d,
                light: c.light_vertices(),
                max_closed_leaves: c.max_closed_leaves(),
                dq_light: q.map(|q| c.is_dq_light(q)),
                q,
                heavy_components: c.components,
                load: c.load,
            };
            print_json(&report)?;
            eprintln!(
                "{}: {} of {} vertices {d}-light, {} heavy components",
                file.display(),
                report.light.len(),
                instance.n(),
                report.heavy_components.len()
            );
            Ok(match report.dq_light {
                Some(false) => EXIT_NO,
                _ => 0,
            })
        }
        Command::Bench { seed, sequential, out } => {
            let cases = default_suite(seed)?;
            let rows = run_suite(&cases, !sequential)?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer.serialize(row)?;
            }
            let bytes = writer.into_inner().map_err(|e| anyhow::anyhow!(e.to_string()))?;
            emit(out.as_deref(), &String::from_utf8(bytes)?)?;
            let over = rows.iter().filter(|r| !r.within_bound).count();
            eprintln!("{} runs over {} instances, {over} outside their bound", rows.len(), cases.len());
            Ok(if over == 0 { 0 } else { EXIT_NO })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

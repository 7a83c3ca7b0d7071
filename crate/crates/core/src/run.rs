//! One entry point over all solvers, with a uniform result record.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::light::{classify_light, solve_light};
use crate::oracle::{brute_min_multicut, OracleConfig};
use crate::solver_k::{k_node_bound, solve_k_with, KOptions};
use crate::solver_leaves::{leaves_node_bound, solve_leaves_with, LeavesOptions};
use crate::stats::TraceTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    K,
    Leaves,
    Light,
    Oracle,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::K => "k",
            Algo::Leaves => "leaves",
            Algo::Light => "light",
            Algo::Oracle => "oracle",
        })
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(Algo::K),
            "leaves" => Ok(Algo::Leaves),
            "light" => Ok(Algo::Light),
            "oracle" => Ok(Algo::Oracle),
            _ => Err(Error::Input(format!("unknown algorithm `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Infeasible,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Lightness threshold for [`Algo::Light`]; defaults to the largest
    /// number of pair paths through one vertex.
    pub d: Option<usize>,
    pub trace: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    /// Branching states for `k`/`leaves`, table entries for `light`.
    pub nodes: u64,
    pub table_entries: u64,
    pub dpc_calls: u64,
    pub star_calls: u64,
    pub unmc_calls: u64,
    /// Failed measure, invariant or counting checks.
    pub violations: u64,
    pub ms: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub algo: Algo,
    pub answer: Answer,
    pub solution: Option<Solution>,
    pub stats: RunStats,
    /// Closed-form cap on `nodes`, for the branching solvers.
    pub bound: Option<u128>,
    pub within_bound: bool,
    pub trace: Option<TraceTree>,
}

fn answer(solution: &Option<Solution>, w: Option<u64>) -> Answer {
    match (solution, w) {
        (None, _) => Answer::Infeasible,
        (Some(s), Some(w)) if s.total_weight() > w => Answer::No,
        (Some(_), _) => Answer::Yes,
    }
}

/// Largest number of pair paths through a single vertex.
pub fn max_load(instance: &Instance) -> usize {
    instance.tree.path_loads(&instance.pairs).into_iter().max().unwrap_or(0)
}

/// Heuristic solver choice: the oracle for small trees, then the leaves
/// solver for few leaves, then the light table when some `d ≤ 3` leaves
/// only small heavy components, then the `k` solver when a size budget is
/// known, and the leaves solver otherwise.
pub fn choose_auto(instance: &Instance, has_k: bool) -> (Algo, Option<usize>) {
    if instance.n() <= 14 {
        return (Algo::Oracle, None);
    }
    if instance.tree.leaf_count() <= 6 {
        return (Algo::Leaves, None);
    }
    for d in 0..=3 {
        let c = classify_light(&instance.tree, &instance.pairs, d);
        if !c.light_vertices().is_empty() && c.is_dq_light(6) {
            return (Algo::Light, Some(d));
        }
    }
    if has_k {
        (Algo::K, None)
    } else {
        (Algo::Leaves, None)
    }
}

/// Runs `algo` on `instance`. [`Algo::K`] needs both budgets; the others
/// minimize weight and compare with `budget_w` when present.
pub fn run(instance: &Instance, algo: Algo, opts: RunOptions) -> Result<RunResult> {
    let start = Instant::now();
    let w = instance.budget_w;
    let mut stats = RunStats::default();
    let (answer, solution, bound, within, trace) = match algo {
        Algo::K => {
            let out = solve_k_with(
                instance,
                KOptions {
                    trace: opts.trace,
                    ..KOptions::default()
                },
            )?;
            stats.nodes = out.stats.node_count;
            stats.dpc_calls = out.stats.dpc_calls;
            stats.violations = out.stats.measure_violations + out.stats.invariant_violations;
            let ans = if out.decision { Answer::Yes } else { Answer::No };
            let within = out.within_bound();
            (ans, out.solution, Some(k_node_bound(out.k)), within, out.trace)
        }
        Algo::Leaves => {
            let out = solve_leaves_with(
                &instance.tree,
                &instance.pairs,
                &instance.weights,
                LeavesOptions { trace: opts.trace },
            )?;
            stats.nodes = out.stats.node_count;
            stats.star_calls = out.stats.star_calls;
            stats.violations = out.stats.measure_violations + out.stats.invariant_violations;
            let within = out.within_bound();
            let bound = leaves_node_bound(out.leaves);
            (answer(&out.solution, w), out.solution, Some(bound), within, out.trace)
        }
        Algo::Light => {
            let d = opts.d.unwrap_or_else(|| max_load(instance));
            let out = solve_light(&instance.tree, &instance.pairs, &instance.weights, d, w)?;
            stats.nodes = out.stats.table_entries;
            stats.table_entries = out.stats.table_entries;
            stats.unmc_calls = out.stats.unmc_calls;
            stats.violations = out.stats.internal_iteration_violations
                + out.stats.heavy_distribution_violations
                + out.stats.partition_violations;
            let clean = out.stats.clean();
            (answer(&out.solution, w), out.solution, None, clean, None)
        }
        Algo::Oracle => {
            let sol = brute_min_multicut(
                &instance.tree,
                &instance.pairs,
                &instance.weights,
                None,
                &OracleConfig::default(),
            )?;
            (answer(&sol, w), sol, None, true, None)
        }
    };
    stats.ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunResult {
        algo,
        answer,
        solution,
        stats,
        bound,
        within_bound: within,
        trace,
    })
}

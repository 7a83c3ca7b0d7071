//! Labeled benchmark instances and a batch runner over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Weight, WeightMap};
use crate::io::generate::{gen_random, random_tree, Shape};
use crate::io::reduce::{gen_dq_light, reduce_vertex_cover};
use crate::oracle::{brute_min_multicut, OracleConfig};
use crate::par;
use crate::run::{run, Algo, RunOptions};
use crate::tree::{TerminalPair, VertexId};

#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub instance: Instance,
    pub algos: Vec<Algo>,
}

/// One CSV row of a benchmark run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub instance: String,
    pub algo: Algo,
    pub answer: String,
    pub weight: Option<u64>,
    pub nodes: u64,
    pub bound: Option<String>,
    pub within_bound: bool,
    pub ms: f64,
}

/// Random tree where every pair path runs through one of `hubs` vertices,
/// so a size-`hubs` multicut always exists.
pub fn clustered_instance(n: usize, hubs: usize, m_pairs: usize, seed: u64) -> Result<Instance> {
    if n < 3 || hubs == 0 {
        return Err(Error::Generation(format!("cannot cluster {n} vertices around {hubs} hubs")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, Shape::Uniform, &mut rng)?;
    let mut inner: Vec<VertexId> = (1..n).filter(|&v| tree.subtree_size(v) >= 2).collect();
    if inner.is_empty() {
        inner = (1..n).collect();
    }
    inner.shuffle(&mut rng);
    inner.truncate(hubs);
    let weights = WeightMap::new((0..n).map(|_| Weight::Finite(rng.gen_range(1..=100))).collect());
    let mut pairs = Vec::with_capacity(m_pairs);
    for _ in 0..m_pairs {
        let h = inner[rng.gen_range(0..inner.len())];
        let below = tree.subtree(h);
        let s = below[rng.gen_range(0..below.len())];
        let outside: Vec<VertexId> = (0..n).filter(|&v| !tree.is_ancestor(h, v)).collect();
        let t = outside[rng.gen_range(0..outside.len())];
        pairs.push(TerminalPair::new(s, t));
    }
    Instance::new(tree, pairs, weights, None, None)
}

fn small_vc_graph(rng: &mut ChaCha8Rng, n: usize) -> Vec<(VertexId, VertexId)> {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for _ in 0..2 * n {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && deg[u] < 3 && deg[v] < 3 && !edges.contains(&(u.min(v), u.max(v))) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges
}

/// The default suite: small instances every solver can handle (checked
/// against the oracle), few-leaf trees, light instances, clustered
/// instances for the size-budgeted solver and vertex-cover reductions.
pub fn default_suite(seed: u64) -> Result<Vec<Case>> {
    let all = vec![Algo::K, Algo::Leaves, Algo::Light, Algo::Oracle];
    let mut cases = Vec::new();
    for i in 0..6u64 {
        let shape = [Shape::Uniform, Shape::Caterpillar, Shape::StarIsh][i as usize % 3];
        let inst = gen_random(12, 6, 50, seed + i, shape)?;
        let opt = brute_min_multicut(&inst.tree, &inst.pairs, &inst.weights, Some(3), &OracleConfig::default())?;
        let w = opt.map_or(0, |s| s.total_weight());
        cases.push(Case {
            label: format!("small-{shape}-{i}"),
            instance: inst.with_budgets(Some(w), Some(3)),
            algos: all.clone(),
        });
    }
    for (i, l) in [3usize, 4, 5, 6].into_iter().enumerate() {
        let inst = gen_random(120, 20, 100, seed + 100 + i as u64, Shape::Leaves(l))?;
        cases.push(Case {
            label: format!("leaves-{l}"),
            instance: inst,
            algos: vec![Algo::Leaves, Algo::Light],
        });
    }
    for (i, d) in [1usize, 2, 3].into_iter().enumerate() {
        let inst = gen_dq_light(d, 4, 60, seed + 200 + i as u64)?;
        cases.push(Case {
            label: format!("light-d{d}"),
            instance: inst,
            algos: vec![Algo::Light, Algo::Leaves],
        });
    }
    for (i, k) in [2u64, 3, 4].into_iter().enumerate() {
        let inst = clustered_instance(80, k as usize, 15, seed + 300 + i as u64)?;
        cases.push(Case {
            label: format!("clustered-k{k}"),
            instance: inst.with_budgets(Some(150 * k), Some(k)),
            algos: vec![Algo::K, Algo::Light],
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 400);
    for i in 0..3 {
        let n = 6 + i;
        let edges = small_vc_graph(&mut rng, n);
        cases.push(Case {
            label: format!("vc-{n}"),
            instance: reduce_vertex_cover(&edges, n)?,
            algos: vec![Algo::Leaves, Algo::Light, Algo::Oracle],
        });
    }
    Ok(cases)
}

fn run_one(case: &Case, algo: Algo) -> Result<Row> {
    let r = run(&case.instance, algo, RunOptions::default())?;
    Ok(Row {
        instance: case.label.clone(),
        algo,
        answer: r.answer.to_string(),
        weight: r.solution.as_ref().map(|s| s.total_weight()),
        nodes: r.stats.nodes,
        bound: r.bound.map(|b| b.to_string()),
        within_bound: r.within_bound,
        ms: r.stats.ms,
    })
}

/// Runs every `(case, algo)` combination. Rows come back ordered by
/// instance label and then algorithm, whatever the schedule.
pub fn run_suite(cases: &[Case], parallel: bool) -> Result<Vec<Row>> {
    let jobs: Vec<(usize, Algo)> = cases
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.algos.iter().map(move |&a| (i, a)))
        .collect();
    let work = |j: usize| run_one(&cases[jobs[j].0], jobs[j].1);
    let rows: Vec<Result<Row>> = if parallel {
        par::map_indexed(jobs.len(), work)
    } else {
        par::sequential(|| par::map_indexed(jobs.len(), work))
    };
    let mut rows = rows.into_iter().collect::<Result<Vec<Row>>>()?;
    rows.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.algo.cmp(&b.algo)));
    Ok(rows)
}

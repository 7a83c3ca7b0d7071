//! Weighted multicut with a size budget `k`, by branching on an
//! lca-closed multicut `X` whose size bounds the search depth.
//!
//! Let `x` be the deepest vertex of `X` and `y` its closest ancestor in `X`.
//! Either no vertex of the path `y..x` is deleted (contract it into one
//! undeletable vertex), or some vertex of it is: then for each share
//! `i ∈ 0..=k` of the budget spent strictly below the path, the optimum below
//! each path vertex is charged to its weight and the subtree below `x` is
//! dropped.

use crate::base::{a_dpc, a_dpc_profile, greedy_min_size_multicut};
use crate::contract::{contract_path, induce};
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution, Weight, WeightMap};
use crate::stats::{saturating_pow, BranchStats, TraceTree};
use crate::tree::{RootedTree, TerminalPair, VertexId};

#[derive(Clone, Copy, Debug)]
pub struct KOptions {
    pub trace: bool,
    /// Check at every branching state that the pairs below the path `y..x`
    /// either meet `x` or stay below it.
    pub check_lca_property: bool,
}

impl Default for KOptions {
    fn default() -> Self {
        KOptions {
            trace: false,
            check_lca_property: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KOutcome {
    pub decision: bool,
    pub solution: Option<Solution>,
    pub stats: BranchStats,
    pub trace: Option<TraceTree>,
    pub k: u64,
}

impl KOutcome {
    /// `(k+2)^(2k+1)`, the cap on explored branching states.
    pub fn node_bound(&self) -> u128 {
        k_node_bound(self.k)
    }

    pub fn within_bound(&self) -> bool {
        u128::from(self.stats.node_count) <= self.node_bound()
    }
}

pub fn k_node_bound(k: u64) -> u128 {
    let exp = (2 * k + 1).min(u64::from(u32::MAX)) as u32;
    saturating_pow(u128::from(k) + 2, exp)
}

struct Ctx {
    w: u64,
    opts: KOptions,
    stats: BranchStats,
}

struct State {
    tree: RootedTree,
    pairs: Vec<TerminalPair>,
    weights: WeightMap,
    x: Vec<VertexId>,
}

type Found = (Option<Vec<VertexId>>, Option<TraceTree>);

/// Decides whether a multicut with at most `budget_k` vertices and weight at
/// most `budget_w` exists, returning one when it does.
pub fn solve_k(instance: &Instance) -> Result<KOutcome> {
    solve_k_with(instance, KOptions::default())
}

pub fn solve_k_with(instance: &Instance, opts: KOptions) -> Result<KOutcome> {
    let k = instance
        .budget_k
        .ok_or_else(|| Error::Input("missing size budget k".into()))?;
    let w = instance
        .budget_w
        .ok_or_else(|| Error::Input("missing weight budget w".into()))?;
    solve_k_raw(&instance.tree, &instance.pairs, &instance.weights, k, w, opts)
}

pub fn solve_k_raw(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    k: u64,
    w: u64,
    opts: KOptions,
) -> Result<KOutcome> {
    for p in pairs {
        tree.check(p.s)?;
        tree.check(p.t)?;
    }
    let tree = tree.rerooted(0)?;
    let x_opt = greedy_min_size_multicut(&tree, pairs, 0)?;
    let mut ctx = Ctx {
        w,
        opts,
        stats: BranchStats::default(),
    };
    let (witness, trace) = if x_opt.len() as u64 > k {
        ctx.stats.node_count = 1;
        ctx.stats.base_cases = 1;
        (None, opts.trace.then(|| TraceTree::leaf(x_opt.len(), "greedy>k")))
    } else {
        let x = tree.lca_closure(&x_opt)?;
        let state = State {
            tree: tree.clone(),
            pairs: pairs.to_vec(),
            weights: weights.clone(),
            x,
        };
        branch(&mut ctx, &state, k as i64, 0)?
    };
    let solution = witness.map(|s| Solution::new(s, weights).expect("witness is deletable"));
    Ok(KOutcome {
        decision: solution.is_some(),
        solution,
        stats: ctx.stats,
        trace,
        k,
    })
}

fn leaf(ctx: &Ctx, mu: usize, tag: &str, witness: Option<Vec<VertexId>>) -> Found {
    (witness, ctx.opts.trace.then(|| TraceTree::leaf(mu, tag)))
}

fn check_invariants(ctx: &mut Ctx, s: &State) {
    let covered = s
        .pairs
        .iter()
        .all(|&p| s.x.iter().any(|&v| s.tree.path_contains(p, v)));
    let closed = s.tree.lca_closure(&s.x).map(|c| c == s.x).unwrap_or(false);
    if !covered || !closed {
        ctx.stats.invariant_violations += 1;
    }
}

/// Pairs inside `T_v` for `v` on `y..x` other than `y` must meet `x` or lie in `T_x`.
fn check_lca_property(s: &State, path: &[VertexId], x: VertexId) -> bool {
    let t = &s.tree;
    path[1..].iter().all(|&v| {
        s.pairs
            .iter()
            .filter(|p| t.is_ancestor(v, p.s) && t.is_ancestor(v, p.t))
            .all(|&p| t.path_contains(p, x) || (t.is_ancestor(x, p.s) && t.is_ancestor(x, p.t)))
    })
}

fn branch(ctx: &mut Ctx, s: &State, k: i64, depth: u32) -> Result<Found> {
    ctx.stats.node_count += 1;
    ctx.stats.max_depth = ctx.stats.max_depth.max(depth);
    check_invariants(ctx, s);
    let mu = s.x.len();
    if k < 0 {
        ctx.stats.base_cases += 1;
        return Ok(leaf(ctx, mu, "k<0", None));
    }
    let unhittable = s.pairs.iter().any(|p| {
        s.tree
            .path_of(p.s, p.t)
            .iter()
            .all(|&v| s.weights.get(v) == Weight::Undeletable)
    });
    if unhittable {
        ctx.stats.base_cases += 1;
        return Ok(leaf(ctx, mu, "infeasible", None));
    }
    if mu == 0 {
        ctx.stats.base_cases += 1;
        let found = s.pairs.is_empty().then(Vec::new);
        return Ok(leaf(ctx, mu, "empty", found));
    }
    if k == 0 && !s.pairs.is_empty() {
        ctx.stats.base_cases += 1;
        return Ok(leaf(ctx, mu, "k=0", None));
    }
    if mu == 1 {
        ctx.stats.base_cases += 1;
        ctx.stats.dpc_calls += 1;
        let sol = a_dpc(&s.tree, &s.pairs, s.x[0], &s.weights, k)?;
        let found = sol
            .filter(|sol| sol.total_weight() <= ctx.w)
            .map(|sol| sol.vertices().to_vec());
        return Ok(leaf(ctx, mu, "dpc", found));
    }

    let t = &s.tree;
    let x = *s
        .x
        .iter()
        .max_by_key(|&&v| (t.depth(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut y = None;
    let mut cur = t.parent(x);
    while let Some(c) = cur {
        if s.x.binary_search(&c).is_ok() {
            y = Some(c);
            break;
        }
        cur = t.parent(c);
    }
    let Some(y) = y else {
        ctx.stats.invariant_violations += 1;
        return Err(Error::Input(format!("vertex {x} has no ancestor in X")));
    };
    let path = t.downward_path(y, x).unwrap();
    if ctx.opts.check_lca_property && !check_lca_property(s, &path, x) {
        ctx.stats.invariant_violations += 1;
    }
    let mut children = Vec::new();

    // Case 1: nothing on y..x is deleted.
    ctx.stats.case1 += 1;
    let c1 = contract_path(t, &s.pairs, &s.weights, y, x)?;
    let mut x1: Vec<VertexId> = s
        .x
        .iter()
        .filter(|&&v| v != x && v != y)
        .map(|&v| c1.map.forward[v])
        .collect();
    x1.push(c1.merged);
    x1.sort_unstable();
    if x1.len() >= mu {
        ctx.stats.measure_violations += 1;
    }
    let s1 = State {
        tree: c1.tree,
        pairs: c1.pairs,
        weights: c1.weights,
        x: x1,
    };
    let (found, tr) = branch(ctx, &s1, k, depth + 1)?;
    children.extend(tr.map(|mut tr| {
        tr.tag = format!("contract {}", tr.tag);
        tr
    }));
    if let Some(sol) = found {
        let host = c1.map.pull_back(&sol);
        return Ok((Some(host), trace_node(ctx, mu, x, y, children)));
    }

    // Case 2: some vertex of y..x is deleted; i vertices go strictly below it.
    let c = path[1];
    let below_x = |v: VertexId| v != x && t.is_ancestor(x, v);
    let mut reduced_pairs: Vec<TerminalPair> = s
        .pairs
        .iter()
        .copied()
        .filter(|p| !below_x(p.s) && !below_x(p.t))
        .filter(|p| !(t.is_ancestor(c, p.s) && t.is_ancestor(c, p.t)))
        .collect();
    reduced_pairs.push(TerminalPair::new(y, x));
    let keep: Vec<VertexId> = (0..t.n()).filter(|&v| !below_x(v)).collect();
    let kk = k as usize;
    let mut profiles: Vec<Vec<Option<Solution>>> = Vec::with_capacity(path.len());
    for j in 0..path.len() - 1 {
        let top = path[j + 1];
        let sub = induce(t, &s.pairs, &s.weights, t.subtree(top), top);
        let xl = sub.local_of(x).unwrap();
        ctx.stats.dpc_calls += 1;
        let prof = a_dpc_profile(&sub.tree, &sub.pairs, xl, &sub.weights, kk)?;
        profiles.push(
            prof.into_iter()
                .map(|o| o.map(|sol| Solution::new(sub.to_host(sol.vertices()), &s.weights).unwrap()))
                .collect(),
        );
    }
    profiles.push(vec![Some(Solution::empty()); kk + 1]);
    let fold_weight = |j: usize, i: usize| profiles[j][i].as_ref().map(Solution::total_weight);

    for i in 0..=kk {
        // With the same raised weights and a smaller budget this state can
        // only be worse than the previous one.
        if i > 0 && (0..path.len()).all(|j| fold_weight(j, i) == fold_weight(j, i - 1)) {
            continue;
        }
        ctx.stats.case2 += 1;
        let mut raised = s.weights.clone();
        for (j, &v) in path.iter().enumerate() {
            raised.set(v, s.weights.get(v).plus(fold_weight(j, i)));
        }
        let sub = induce(t, &reduced_pairs, &raised, &keep, t.root());
        let x2: Vec<VertexId> = s
            .x
            .iter()
            .filter(|&&v| v != x)
            .map(|&v| sub.local_of(v).unwrap())
            .collect();
        if x2.len() >= mu {
            ctx.stats.measure_violations += 1;
        }
        let s2 = State {
            tree: sub.tree.clone(),
            pairs: sub.pairs.clone(),
            weights: sub.weights.clone(),
            x: x2,
        };
        let (found, tr) = branch(ctx, &s2, k - i as i64, depth + 1)?;
        children.extend(tr.map(|mut tr| {
            tr.tag = format!("i={i} {}", tr.tag);
            tr
        }));
        if let Some(sol) = found {
            let mut host = sub.to_host(&sol);
            let j = path
                .iter()
                .position(|v| host.contains(v))
                .expect("the pair (y, x) forces a vertex of y..x");
            let extra = profiles[j][i].as_ref().expect("chosen vertex has a finite fold");
            host.extend_from_slice(extra.vertices());
            return Ok((Some(host), trace_node(ctx, mu, x, y, children)));
        }
    }
    Ok((None, trace_node(ctx, mu, x, y, children)))
}

fn trace_node(ctx: &Ctx, mu: usize, x: VertexId, y: VertexId, children: Vec<TraceTree>) -> Option<TraceTree> {
    ctx.opts.trace.then(|| TraceTree {
        measure: mu,
        tag: format!("x={x} y={y}"),
        children,
    })
}

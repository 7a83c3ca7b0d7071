//! Minimum-weight multicut by branching on branching vertices, with a
//! branch count bounded in the number of leaves.
//!
//! Each step takes the deepest branching vertex `x` and its closest
//! branching ancestor `y`. Either no vertex of the path `y..x` is deleted
//! (contract it into one undeletable vertex), or the deleted vertex closest
//! to `y` lies on `y..z` and everything below it is solved as a subdivided
//! star and charged to its weight.

use crate::base::{a_path, a_star};
use crate::contract::{contract_path, induce, Contracted, SubInstance};
use crate::error::Result;
use crate::instance::{Solution, Weight, WeightMap};
use crate::par;
use crate::stats::{saturating_pow, BranchStats, TraceTree};
use crate::tree::{RootedTree, TerminalPair, VertexId};

#[derive(Clone, Copy, Debug, Default)]
pub struct LeavesOptions {
    pub trace: bool,
}

#[derive(Clone, Debug)]
pub struct LeavesOutcome {
    pub solution: Option<Solution>,
    pub stats: BranchStats,
    pub trace: Option<TraceTree>,
    /// Leaf count of the input tree.
    pub leaves: usize,
}

impl LeavesOutcome {
    /// `2^(2ℓ+1)`, the cap on explored branching states.
    pub fn node_bound(&self) -> u128 {
        leaves_node_bound(self.leaves)
    }

    pub fn within_bound(&self) -> bool {
        u128::from(self.stats.node_count) <= self.node_bound()
    }
}

pub fn leaves_node_bound(leaves: usize) -> u128 {
    saturating_pow(2, (2 * leaves + 1).min(u32::MAX as usize) as u32)
}

/// `|V≥3| + |V=1|`.
pub fn leaves_measure(tree: &RootedTree) -> usize {
    let (b, l) = tree.degree_classes();
    b.len() + l.len()
}

/// The two subinstances of one branching step.
#[derive(Clone, Debug)]
pub struct LeavesStep {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
    /// No vertex of `y..x` deleted: the path contracted to an undeletable vertex.
    pub contracted: Contracted,
    /// Some vertex of `y..z` deleted: `T` minus everything below `z`, with
    /// pair `(y, z)` added and the weights of `y..z` raised by the optimum
    /// below each of them.
    pub reduced: SubInstance,
    /// For each vertex of `y..z` (host ids, from `y`), the witness charged to it.
    pub folds: Vec<(VertexId, Option<Vec<VertexId>>)>,
}

/// Smallest-id branching vertex, if any.
fn branching_root(tree: &RootedTree) -> Option<VertexId> {
    (0..tree.n()).find(|&v| tree.degree(v) >= 3)
}

/// Builds both branches at a tree with at least two branching vertices;
/// `None` otherwise. The tree is rerooted at its smallest-id branching
/// vertex first unless its root already branches.
pub fn leaves_step(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<Option<(RootedTree, LeavesStep)>> {
    let (branching, _) = tree.degree_classes();
    if branching.len() < 2 {
        return Ok(None);
    }
    let tree = if tree.degree(tree.root()) >= 3 {
        tree.clone()
    } else {
        tree.rerooted(branching_root(tree).unwrap())?
    };
    let mut stats = BranchStats::default();
    let step = build_step(&tree, pairs, weights, &branching, &mut stats)?;
    Ok(Some((tree, step)))
}

fn build_step(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    branching: &[VertexId],
    stats: &mut BranchStats,
) -> Result<LeavesStep> {
    let x = *branching
        .iter()
        .max_by_key(|&&v| (tree.depth(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut y = tree.parent(x).expect("root branches, so x is not the root");
    while tree.degree(y) < 3 {
        y = tree.parent(y).expect("the root is a branching ancestor");
    }
    let path = tree.downward_path(y, x).unwrap();
    let mut index = vec![usize::MAX; tree.n()];
    for (i, &v) in path.iter().enumerate() {
        index[v] = i;
    }

    let contracted = contract_path(tree, pairs, weights, y, x)?;

    let zi = pairs
        .iter()
        .filter(|p| index[p.s] != usize::MAX && index[p.t] != usize::MAX)
        .map(|p| index[p.s].max(index[p.t]).max(1))
        .min()
        .unwrap_or(path.len() - 1);
    let z = path[zi];
    let c = path[1];
    let in_branch = |v: VertexId| v == y || tree.is_ancestor(c, v);
    let below_z = |v: VertexId| v != z && tree.is_ancestor(z, v);

    let mut reduced_pairs: Vec<TerminalPair> = pairs
        .iter()
        .copied()
        .filter(|p| {
            let inside = in_branch(p.s) && in_branch(p.t) && !(p.s == y && p.t == y);
            !inside && !below_z(p.s) && !below_z(p.t)
        })
        .collect();
    reduced_pairs.push(TerminalPair::new(y, z));

    let folds: Vec<Result<(Option<u64>, Option<Vec<VertexId>>)>> =
        par::map_indexed(zi + 1, |j| fold_below(tree, pairs, weights, &path, j));
    stats.star_calls += (zi + 1) as u64;
    let mut raised = weights.clone();
    let mut fold_witness = Vec::with_capacity(zi + 1);
    for (j, f) in folds.into_iter().enumerate() {
        let (value, witness) = f?;
        let v = path[j];
        raised.set(v, weights.get(v).plus(value));
        fold_witness.push((v, witness));
    }
    let kept: Vec<VertexId> = (0..tree.n()).filter(|&v| !below_z(v)).collect();
    let reduced = induce(tree, &reduced_pairs, &raised, &kept, tree.root());
    Ok(LeavesStep {
        x,
        y,
        z,
        contracted,
        reduced,
        folds: fold_witness,
    })
}

/// Optimum strictly below `path[j]` on the side of `x`, with its witness.
fn fold_below(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    path: &[VertexId],
    j: usize,
) -> Result<(Option<u64>, Option<Vec<VertexId>>)> {
    let v = path[j];
    let sol = if j + 1 == path.len() {
        let below = &tree.subtree(v)[1..];
        let inside: Vec<TerminalPair> = pairs
            .iter()
            .copied()
            .filter(|p| {
                // pairs meeting v are cut by v itself
                let leg = tree.child_toward(v, p.s);
                leg.is_some() && leg == tree.child_toward(v, p.t)
            })
            .collect();
        a_path(&tree.forest(below), &inside, weights)?
    } else {
        let top = path[j + 1];
        let sub = induce(tree, pairs, weights, tree.subtree(top), top);
        a_star(&sub.tree, &sub.pairs, &sub.weights)?
            .map(|s| Solution::new(sub.to_host(s.vertices()), weights).expect("deletable"))
    };
    Ok(match sol {
        Some(s) => (Some(s.total_weight()), Some(s.vertices().to_vec())),
        None => (None, None),
    })
}

struct Node {
    witness: Option<Vec<VertexId>>,
    stats: BranchStats,
    trace: Option<TraceTree>,
}

fn has_unhittable_pair(tree: &RootedTree, pairs: &[TerminalPair], weights: &WeightMap) -> bool {
    pairs.iter().any(|p| {
        tree.path_of(p.s, p.t)
            .iter()
            .all(|&v| weights.get(v) == Weight::Undeletable)
    })
}

fn recurse(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    depth: u32,
    opts: LeavesOptions,
) -> Result<Node> {
    let mut stats = BranchStats {
        node_count: 1,
        max_depth: depth,
        ..Default::default()
    };
    let (branching, leaves) = tree.degree_classes();
    let mu = branching.len() + leaves.len();
    if has_unhittable_pair(tree, pairs, weights) {
        stats.base_cases += 1;
        return Ok(Node {
            witness: None,
            stats,
            trace: opts.trace.then(|| TraceTree::leaf(mu, "infeasible")),
        });
    }
    if branching.len() <= 1 {
        stats.base_cases += 1;
        stats.star_calls += 1;
        let sol = a_star(tree, pairs, weights)?;
        return Ok(Node {
            witness: sol.map(|s| s.vertices().to_vec()),
            stats,
            trace: opts.trace.then(|| TraceTree::leaf(mu, "star")),
        });
    }
    let rooted;
    let tree = if tree.degree(tree.root()) >= 3 {
        tree
    } else {
        rooted = tree.rerooted(branching[0])?;
        &rooted
    };
    let step = build_step(tree, pairs, weights, &branching, &mut stats)?;
    let c = &step.contracted;
    let r = &step.reduced;
    let (b1, l1) = c.tree.degree_classes();
    if b1.len() + 1 != branching.len() {
        stats.invariant_violations += 1;
    }
    if b1.len() + l1.len() >= mu {
        stats.measure_violations += 1;
    }
    if leaves_measure(&r.tree) >= mu {
        stats.measure_violations += 1;
    }
    stats.case1 += 1;
    stats.case2 += 1;

    let (n1, n2) = par::join(
        || recurse(&c.tree, &c.pairs, &c.weights, depth + 1, opts),
        || recurse(&r.tree, &r.pairs, &r.weights, depth + 1, opts),
    );
    let (n1, n2) = (n1?, n2?);
    stats.absorb(&n1.stats);
    stats.absorb(&n2.stats);

    let w1 = n1.witness.map(|s| c.map.pull_back(&s));
    let w2 = n2.witness.map(|s| {
        let mut host = r.to_host(&s);
        let (_, fold) = step
            .folds
            .iter()
            .find(|(v, _)| host.contains(v))
            .expect("the pair (y, z) forces a vertex of y..z");
        host.extend(fold.as_ref().expect("chosen vertex has a finite fold").iter().copied());
        host
    });
    let cost = |s: &Vec<VertexId>| weights.total(s).expect("witness is deletable");
    let witness = match (w1, w2) {
        (Some(a), Some(b)) => Some(if cost(&b) < cost(&a) { b } else { a }),
        (a, b) => a.or(b),
    };
    let trace = opts.trace.then(|| TraceTree {
        measure: mu,
        tag: format!("x={} y={} z={}", step.x, step.y, step.z),
        children: vec![
            n1.trace.map(|mut t| {
                t.tag = format!("contract {}", t.tag);
                t
            }),
            n2.trace.map(|mut t| {
                t.tag = format!("cut-below {}", t.tag);
                t
            }),
        ]
        .into_iter()
        .flatten()
        .collect(),
    });
    Ok(Node {
        witness,
        stats,
        trace,
    })
}

/// Minimum-weight multicut avoiding undeletable vertices.
pub fn solve_leaves(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<LeavesOutcome> {
    solve_leaves_with(tree, pairs, weights, LeavesOptions::default())
}

pub fn solve_leaves_with(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    opts: LeavesOptions,
) -> Result<LeavesOutcome> {
    for p in pairs {
        tree.check(p.s)?;
        tree.check(p.t)?;
    }
    let leaves = tree.leaf_count();
    let tree = match branching_root(tree) {
        Some(r) => tree.rerooted(r)?,
        None => tree.clone(),
    };
    let node = recurse(&tree, pairs, weights, 0, opts)?;
    let solution = node
        .witness
        .map(|s| Solution::new(s, weights).expect("witness is deletable"));
    Ok(LeavesOutcome {
        solution,
        stats: node.stats,
        trace: node.trace,
        leaves,
    })
}

/// True iff a multicut of weight at most `w` exists.
pub fn decision_leaves(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    w: u64,
) -> Result<bool> {
    Ok(solve_leaves(tree, pairs, weights)?
        .solution
        .is_some_and(|s| s.total_weight() <= w))
}

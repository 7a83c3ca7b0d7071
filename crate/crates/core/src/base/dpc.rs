//! Size-bounded minimum-weight multicut when every pair path passes through
//! a common vertex.
//!
//! Exact branch and bound: branch on the deletable vertices of the uncut pair
//! with the fewest of them, skip vertices dominated by a cheaper vertex that
//! cuts a superset of the remaining pairs, and memoize on
//! (uncut pair set, remaining size budget).

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::instance::{Solution, WeightMap};
use crate::tree::{RootedTree, TerminalPair, VertexId};

type Partial = Option<(u64, Vec<usize>)>;

struct Search {
    /// Candidate indices on each pair path, ascending.
    on_pair: Vec<Vec<usize>>,
    /// Pairs cut by each candidate.
    hits: Vec<FixedBitSet>,
    cost: Vec<u64>,
    memo: HashMap<(FixedBitSet, usize), Partial>,
}

impl Search {
    fn solve(&mut self, uncut: &FixedBitSet, cap: usize) -> Partial {
        if uncut.is_clear() {
            return Some((0, Vec::new()));
        }
        if cap == 0 {
            return None;
        }
        let key = (uncut.clone(), cap);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let pivot = uncut
            .ones()
            .min_by_key(|&p| (self.on_pair[p].len(), p))
            .expect("nonempty");
        let options: Vec<(usize, FixedBitSet)> = self.on_pair[pivot]
            .iter()
            .map(|&c| {
                let mut m = self.hits[c].clone();
                m.intersect_with(uncut);
                (c, m)
            })
            .collect();
        let mut best: Partial = None;
        for (i, (c, m)) in options.iter().enumerate() {
            let dominated = options.iter().enumerate().any(|(j, (d, md))| {
                j != i
                    && m.is_subset(md)
                    && (self.cost[*d] < self.cost[*c]
                        || (self.cost[*d] == self.cost[*c] && (m != md || j < i)))
            });
            if dominated {
                continue;
            }
            let mut rest = uncut.clone();
            rest.difference_with(m);
            if let Some((w, mut picks)) = self.solve(&rest, cap - 1) {
                let total = w + self.cost[*c];
                if best.as_ref().is_none_or(|(bw, _)| total < *bw) {
                    picks.push(*c);
                    best = Some((total, picks));
                }
            }
        }
        self.memo.insert(key, best.clone());
        best
    }
}

fn check_through(tree: &RootedTree, pairs: &[TerminalPair], root: VertexId) -> Result<()> {
    tree.check(root)?;
    for &p in pairs {
        tree.check(p.s)?;
        tree.check(p.t)?;
        if !tree.path_contains(p, root) {
            return Err(Error::Input(format!(
                "pair ({}, {}) avoids vertex {root}",
                p.s, p.t
            )));
        }
    }
    Ok(())
}

/// Optimal solutions for every size budget `0..=max_cap`, sharing one search.
pub fn a_dpc_profile(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    root: VertexId,
    weights: &WeightMap,
    max_cap: usize,
) -> Result<Vec<Option<Solution>>> {
    check_through(tree, pairs, root)?;
    let n = tree.n();
    let paths: Vec<Vec<VertexId>> = pairs.iter().map(|p| tree.path_of(p.s, p.t)).collect();
    let mut index = vec![usize::MAX; n];
    let mut cands = Vec::new();
    for v in 0..n {
        if weights.get(v).is_deletable() && paths.iter().any(|p| p.contains(&v)) {
            index[v] = cands.len();
            cands.push(v);
        }
    }
    let mut hits = vec![FixedBitSet::with_capacity(pairs.len()); cands.len()];
    let mut on_pair = Vec::with_capacity(pairs.len());
    for (pi, path) in paths.iter().enumerate() {
        let mut here: Vec<usize> = path
            .iter()
            .filter(|&&v| index[v] != usize::MAX)
            .map(|&v| index[v])
            .collect();
        here.sort_unstable();
        for &c in &here {
            hits[c].insert(pi);
        }
        on_pair.push(here);
    }
    if on_pair.iter().any(|c| c.is_empty()) {
        return Ok(vec![None; max_cap + 1]);
    }
    let mut search = Search {
        on_pair,
        hits,
        cost: cands.iter().map(|&v| weights.get(v).finite().unwrap()).collect(),
        memo: HashMap::new(),
    };
    let mut all = FixedBitSet::with_capacity(pairs.len());
    all.insert_range(..);
    // No optimum ever needs more vertices than there are pairs.
    let useful = max_cap.min(pairs.len());
    let mut out: Vec<Option<Solution>> = (0..=useful)
        .map(|cap| {
            search.solve(&all, cap).map(|(_, picks)| {
                Solution::new(picks.into_iter().map(|c| cands[c]), weights)
                    .expect("candidates are deletable")
            })
        })
        .collect();
    let last = out[useful].clone();
    out.resize(max_cap + 1, last);
    Ok(out)
}

/// Minimum-weight multicut of at most `size_cap` vertices, where every pair
/// path passes through `root`. A negative cap yields `None`.
pub fn a_dpc(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    root: VertexId,
    weights: &WeightMap,
    size_cap: i64,
) -> Result<Option<Solution>> {
    if size_cap < 0 {
        check_through(tree, pairs, root)?;
        return Ok(None);
    }
    let cap = (size_cap as usize).min(pairs.len());
    let mut profile = a_dpc_profile(tree, pairs, root, weights, cap)?;
    Ok(profile.pop().flatten())
}

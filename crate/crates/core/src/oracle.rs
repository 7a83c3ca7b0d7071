//! Exhaustive reference solvers for small instances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::{Solution, WeightMap};
use crate::tree::{RootedTree, TerminalPair, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 18 }
    }
}

impl OracleConfig {
    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n || n > 63 {
            Err(Error::Capacity {
                n,
                max: self.max_n.min(63),
            })
        } else {
            Ok(())
        }
    }
}

/// Compares the sorted index lists encoded by two bitmasks lexicographically.
fn lex_cmp(mut a: u64, mut b: u64) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Minimum-weight subset of `costs` (indexed by bit) meeting every mask in
/// `sets`, ties broken by the lexicographically smallest index list.
fn min_hitting_set(costs: &[u64], sets: &[u64], size_cap: Option<usize>) -> Option<(u64, u64)> {
    if sets.contains(&0) {
        return None;
    }
    let c = costs.len();
    let cap = size_cap.unwrap_or(c) as u32;
    let mut best: Option<(u64, u64)> = None;
    for mask in 0u64..(1u64 << c) {
        if mask.count_ones() > cap || !sets.iter().all(|&m| m & mask != 0) {
            continue;
        }
        let mut weight = 0;
        let mut bits = mask;
        while bits != 0 {
            weight += costs[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        let better = match best {
            None => true,
            Some((bw, bm)) => weight < bw || (weight == bw && lex_cmp(mask, bm) == Ordering::Less),
        };
        if better {
            best = Some((weight, mask));
        }
    }
    best
}

fn mask_of(path: &[VertexId], index: &[Option<usize>]) -> u64 {
    path.iter()
        .filter_map(|&v| index[v])
        .fold(0, |m, i| m | (1 << i))
}

/// Minimum-weight multicut by subset enumeration, optionally with at most
/// `size_cap` vertices. `None` means no multicut exists.
pub fn brute_min_multicut(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    size_cap: Option<usize>,
    config: &OracleConfig,
) -> Result<Option<Solution>> {
    config.check(tree.n())?;
    let paths: Vec<Vec<VertexId>> = pairs.iter().map(|p| tree.path_of(p.s, p.t)).collect();
    let mut relevant = vec![false; tree.n()];
    for path in &paths {
        for &v in path {
            relevant[v] = true;
        }
    }
    let cands: Vec<VertexId> = (0..tree.n())
        .filter(|&v| relevant[v] && weights.get(v).is_deletable())
        .collect();
    let mut index = vec![None; tree.n()];
    for (i, &v) in cands.iter().enumerate() {
        index[v] = Some(i);
    }
    let sets: Vec<u64> = paths.iter().map(|p| mask_of(p, &index)).collect();
    let costs: Vec<u64> = cands.iter().map(|&v| weights.get(v).finite().unwrap()).collect();
    Ok(min_hitting_set(&costs, &sets, size_cap).map(|(_, mask)| {
        let chosen = (0..cands.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cands[i]);
        Solution::new(chosen, weights).expect("candidates are deletable")
    }))
}

/// Minimum vertex cover of a graph on `0..n` by subset enumeration.
pub fn brute_vertex_cover(
    edges: &[(VertexId, VertexId)],
    n: usize,
    config: &OracleConfig,
) -> Result<(usize, Vec<VertexId>)> {
    config.check(n)?;
    for &(u, v) in edges {
        if u >= n {
            return Err(Error::BadVertex(u));
        }
        if v >= n {
            return Err(Error::BadVertex(v));
        }
    }
    let sets: Vec<u64> = edges.iter().map(|&(u, v)| (1u64 << u) | (1u64 << v)).collect();
    let (size, mask) = min_hitting_set(&vec![1; n], &sets, None).expect("all vertices form a cover");
    Ok((size as usize, (0..n).filter(|&v| mask >> v & 1 == 1).collect()))
}

/// Minimum weight of `S ⊆ V(T_v)` cutting every pair inside `T_v` and every
/// pair of `outgoing` (paths taken in the whole tree).
pub fn brute_tab_entry(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    v: VertexId,
    outgoing: &[TerminalPair],
    config: &OracleConfig,
) -> Result<Option<u64>> {
    tree.check(v)?;
    let sub = tree.subtree(v);
    config.check(sub.len())?;
    let cands: Vec<VertexId> = sub
        .iter()
        .copied()
        .filter(|&u| weights.get(u).is_deletable())
        .collect();
    let mut index = vec![None; tree.n()];
    for (i, &u) in cands.iter().enumerate() {
        index[u] = Some(i);
    }
    let inside = |u: VertexId| tree.is_ancestor(v, u);
    let mut sets = Vec::new();
    for p in pairs.iter().filter(|p| inside(p.s) && inside(p.t)).chain(outgoing) {
        sets.push(mask_of(&tree.path_of(p.s, p.t), &index));
    }
    let costs: Vec<u64> = cands.iter().map(|&u| weights.get(u).finite().unwrap()).collect();
    Ok(min_hitting_set(&costs, &sets, None).map(|(w, _)| w))
}

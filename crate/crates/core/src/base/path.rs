//! Multicut on a disjoint union of paths by prefix dynamic programming.

use crate::error::{Error, Result};
use crate::instance::{Solution, Weight, WeightMap};
use crate::tree::{Forest, TerminalPair};

/// Prefix table over one path `v_1..v_len`.
///
/// `value(i)` is the minimum weight of a set of positions among the first `i`
/// that cuts every interval lying entirely within them.
#[derive(Clone, Debug)]
pub struct PathDpTable {
    b: Vec<Option<u64>>,
    pick: Vec<Option<usize>>,
}

impl PathDpTable {
    /// `intervals` are inclusive 0-based position ranges `(lo, hi)`.
    pub fn build(weights: &[Weight], intervals: &[(usize, usize)]) -> Self {
        let len = weights.len();
        let mut start_at = vec![None::<usize>; len + 1];
        for &(a, b) in intervals {
            let (lo, hi) = (a.min(b) + 1, a.max(b) + 1);
            start_at[hi] = Some(start_at[hi].map_or(lo, |s: usize| s.max(lo)));
        }
        let mut b = vec![Some(0u64); len + 1];
        let mut pick = vec![None; len + 1];
        let mut i_star = None::<usize>;
        for i in 1..=len {
            if let Some(lo) = start_at[i] {
                i_star = Some(i_star.map_or(lo, |s| s.max(lo)));
            }
            let Some(lo) = i_star else {
                continue;
            };
            let mut best: Option<(u64, usize)> = None;
            for j in (lo..=i).rev() {
                let (Some(w), Some(prev)) = (weights[j - 1].finite(), b[j - 1]) else {
                    continue;
                };
                let cand = w + prev;
                if best.is_none_or(|(bw, _)| cand < bw) {
                    best = Some((cand, j));
                }
            }
            b[i] = best.map(|(w, _)| w);
            pick[i] = best.map(|(_, j)| j);
        }
        PathDpTable { b, pick }
    }

    pub fn len(&self) -> usize {
        self.b.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Optimum over the first `i` positions; `None` if infeasible.
    pub fn value(&self, i: usize) -> Option<u64> {
        self.b[i]
    }

    /// 0-based positions of an optimal set for the first `i` positions.
    pub fn witness(&self, i: usize) -> Option<Vec<usize>> {
        self.b[i]?;
        let mut out = Vec::new();
        let mut i = i;
        while i > 0 {
            match self.pick[i] {
                Some(j) => {
                    out.push(j - 1);
                    i = j - 1;
                }
                None => break,
            }
        }
        out.reverse();
        Some(out)
    }
}

/// Minimum-weight multicut on a forest whose components are all paths.
///
/// Every pair must have both endpoints in one component of the forest.
pub fn a_path(
    forest: &Forest<'_>,
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<Option<Solution>> {
    let n = forest.tree().n();
    let paths = forest.as_paths()?;
    let mut comp = vec![usize::MAX; n];
    let mut pos = vec![0; n];
    for (c, path) in paths.iter().enumerate() {
        for (i, &v) in path.iter().enumerate() {
            comp[v] = c;
            pos[v] = i;
        }
    }
    let mut intervals = vec![Vec::new(); paths.len()];
    for p in pairs {
        forest.tree().check(p.s)?;
        forest.tree().check(p.t)?;
        if comp[p.s] == usize::MAX || comp[p.s] != comp[p.t] {
            return Err(Error::Input(format!(
                "pair ({}, {}) does not lie inside one path component",
                p.s, p.t
            )));
        }
        intervals[comp[p.s]].push((pos[p.s], pos[p.t]));
    }
    let mut chosen = Vec::new();
    for (path, ivs) in paths.iter().zip(&intervals) {
        if ivs.is_empty() {
            continue;
        }
        let ws: Vec<Weight> = path.iter().map(|&v| weights.get(v)).collect();
        let table = PathDpTable::build(&ws, ivs);
        match table.witness(path.len()) {
            Some(w) => chosen.extend(w.into_iter().map(|i| path[i])),
            None => return Ok(None),
        }
    }
    Ok(Some(Solution::new(chosen, weights).expect("path witness is deletable")))
}

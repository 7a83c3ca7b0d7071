//! The `Tab[v, O]` dynamic program over light vertices and the heavy
//! component subroutine it calls.

use std::collections::HashMap;

use serde::Serialize;

use crate::base::a_un_mc;
use crate::contract::induce;
use crate::error::{Error, Result};
use crate::instance::WeightMap;
use crate::light::classify::{classify_light, LightClassification};
use crate::par;
use crate::stats::saturating_pow;
use crate::tree::{canonical_pairs, RootedTree, TerminalPair, VertexId};

/// Per vertex `v`: `inner[v]` holds the pairs whose lca is `v` (inside `T_v`,
/// through `v`); `outer[v]` the pairs with exactly one endpoint in `T_v`,
/// each stored with its index and oriented so `s` lies in `T_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoSets {
    pub inner: Vec<Vec<usize>>,
    pub outer: Vec<Vec<(usize, TerminalPair)>>,
}

pub fn compute_io(tree: &RootedTree, pairs: &[TerminalPair]) -> IoSets {
    let n = tree.n();
    let mut inner = vec![Vec::new(); n];
    let mut outer = vec![Vec::new(); n];
    for (i, &p) in pairs.iter().enumerate() {
        let l = tree.lca_of(p.s, p.t);
        inner[l].push(i);
        for (end, other) in [(p.s, p.t), (p.t, p.s)] {
            let mut v = end;
            while v != l {
                outer[v].push((i, TerminalPair::new(end, other)));
                v = tree.parent(v).unwrap();
            }
        }
    }
    IoSets { inner, outer }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabEntry {
    pub weight: u64,
    pub witness: Vec<VertexId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LightStats {
    pub table_entries: u64,
    /// Largest number of distributions tried at one light vertex (all `O`).
    pub max_internal_iterations: u64,
    /// Light vertices whose distribution count exceeded `3^d`.
    pub internal_iteration_violations: u64,
    pub heavy_calls: u64,
    pub max_heavy_distributions: u64,
    /// Heavy queries whose distribution count exceeded `2^(d·ℓ)`.
    pub heavy_distribution_violations: u64,
    pub partition_violations: u64,
    pub unmc_calls: u64,
}

impl LightStats {
    pub fn clean(&self) -> bool {
        self.internal_iteration_violations == 0
            && self.heavy_distribution_violations == 0
            && self.partition_violations == 0
    }
}

struct HeavyInfo {
    component: Vec<VertexId>,
    /// Light children of component vertices, ascending.
    boundary: Vec<VertexId>,
    closed_leaves: usize,
}

/// `Tab[v, O]` for every light vertex `v` and every `O ⊆ O[v]`, with the
/// tree rooted at the smallest-id light vertex.
pub struct LightTable {
    tree: RootedTree,
    pairs: Vec<TerminalPair>,
    weights: WeightMap,
    classification: LightClassification,
    io: IoSets,
    tab: Vec<Option<Vec<Option<TabEntry>>>>,
    heavy_info: HashMap<VertexId, HeavyInfo>,
    heavy_cache: HashMap<(VertexId, Vec<usize>), Option<TabEntry>>,
    stats: LightStats,
}

impl LightTable {
    /// Fills the table. Fails if no vertex is `d`-light.
    pub fn build(tree: &RootedTree, pairs: &[TerminalPair], weights: &WeightMap, d: usize) -> Result<Self> {
        for p in pairs {
            tree.check(p.s)?;
            tree.check(p.t)?;
        }
        let pairs = canonical_pairs(pairs.iter().copied());
        let classification = classify_light(tree, &pairs, d);
        let root = classification
            .light_vertices()
            .first()
            .copied()
            .ok_or_else(|| Error::Input(format!("no {d}-light vertex")))?;
        let tree = tree.rerooted(root)?;
        let io = compute_io(&tree, &pairs);
        let n = tree.n();
        let mut table = LightTable {
            tree,
            pairs,
            weights: weights.clone(),
            classification,
            io,
            tab: vec![None; n],
            heavy_info: HashMap::new(),
            heavy_cache: HashMap::new(),
            stats: LightStats::default(),
        };
        let order: Vec<VertexId> = table.tree.preorder().iter().rev().copied().collect();
        for v in order {
            if !table.classification.is_light(v) {
                continue;
            }
            if table.tree.children(v).is_empty() {
                table.update_leaf(v);
            } else {
                table.update_internal(v)?;
            }
        }
        Ok(table)
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn pairs(&self) -> &[TerminalPair] {
        &self.pairs
    }

    pub fn root(&self) -> VertexId {
        self.tree.root()
    }

    pub fn classification(&self) -> &LightClassification {
        &self.classification
    }

    pub fn io(&self) -> &IoSets {
        &self.io
    }

    pub fn stats(&self) -> &LightStats {
        &self.stats
    }

    /// `O[v]`, oriented with the `T_v` endpoint first; bit `i` of a subset
    /// mask selects entry `i`.
    pub fn outgoing(&self, v: VertexId) -> Vec<TerminalPair> {
        self.io.outer[v].iter().map(|&(_, p)| p).collect()
    }

    /// `Tab[v, O]` with `O` given as a mask over [`outgoing`](Self::outgoing).
    /// Outer `None` when `v` is heavy; inner `None` when no valid set exists.
    pub fn entry(&self, v: VertexId, mask: usize) -> Option<Option<&TabEntry>> {
        self.tab[v].as_ref().map(|row| row[mask].as_ref())
    }

    fn update_leaf(&mut self, v: VertexId) {
        let size = 1usize << self.io.outer[v].len();
        // A pair (v, v) forces v just as an outgoing pair does.
        let forced_always = !self.io.inner[v].is_empty();
        let w = self.weights.get(v).finite();
        let row: Vec<Option<TabEntry>> = (0..size)
            .map(|mask| {
                if mask == 0 && !forced_always {
                    Some(TabEntry {
                        weight: 0,
                        witness: Vec::new(),
                    })
                } else {
                    w.map(|weight| TabEntry {
                        weight,
                        witness: vec![v],
                    })
                }
            })
            .collect();
        self.stats.table_entries += size as u64;
        self.tab[v] = Some(row);
    }

    /// Which child subtree of `v` holds `e` (`None` for `v` itself).
    fn side(&self, v: VertexId, e: VertexId) -> Option<usize> {
        if e == v {
            return None;
        }
        let c = self.tree.child_toward(v, e).expect("endpoint inside T_v");
        self.tree.children(v).binary_search(&c).ok()
    }

    fn update_internal(&mut self, v: VertexId) -> Result<()> {
        let kids: Vec<VertexId> = self.tree.children(v).to_vec();
        let p = kids.len();
        let mut i0 = Vec::new();
        let mut ii = vec![Vec::new(); p];
        let mut iij: Vec<(usize, usize, usize)> = Vec::new();
        for &pi in &self.io.inner[v] {
            let pair = self.pairs[pi];
            match (self.side(v, pair.s), self.side(v, pair.t)) {
                (None, None) => i0.push(pi),
                (None, Some(i)) | (Some(i), None) => ii[i].push(pi),
                (Some(a), Some(b)) => iij.push((a.min(b), a.max(b), pi)),
            }
        }
        let mut seen: Vec<usize> = i0
            .iter()
            .chain(ii.iter().flatten())
            .copied()
            .chain(iij.iter().map(|t| t.2))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        let mut expected = self.io.inner[v].clone();
        expected.sort_unstable();
        if seen != expected || iij.iter().any(|&(a, b, _)| a == b) {
            self.stats.partition_violations += 1;
        }

        let out: Vec<(usize, Option<usize>)> = self.io.outer[v]
            .iter()
            .map(|&(pi, pair)| (pi, self.side(v, pair.s)))
            .collect();

        let mut empty_children = Vec::with_capacity(p);
        for &u in &kids {
            empty_children.push(self.a_star_query(v, u, Vec::new())?);
        }
        let delete_v: Option<TabEntry> = (|| {
            let mut weight = self.weights.get(v).finite()?;
            let mut witness = vec![v];
            for e in &empty_children {
                let e = e.as_ref()?;
                weight += e.weight;
                witness.extend_from_slice(&e.witness);
            }
            Some(TabEntry { weight, witness })
        })();

        let size = 1usize << out.len();
        let mut row = Vec::with_capacity(size);
        let mut iterations = 0u64;
        for mask in 0..size {
            let mut oi = vec![Vec::new(); p];
            let mut o0 = false;
            for (bit, &(pi, side)) in out.iter().enumerate() {
                if mask >> bit & 1 == 0 {
                    continue;
                }
                match side {
                    None => o0 = true,
                    Some(i) => oi[i].push(pi),
                }
            }
            if o0 || !i0.is_empty() {
                row.push(delete_v.clone());
                continue;
            }
            let mut best = delete_v.clone();
            for dist in 0..(1usize << iij.len()) {
                iterations += 1;
                let mut sets: Vec<Vec<usize>> = (0..p)
                    .map(|i| {
                        let mut s = oi[i].clone();
                        s.extend_from_slice(&ii[i]);
                        s
                    })
                    .collect();
                for (bit, &(a, b, pi)) in iij.iter().enumerate() {
                    // Bit set: pair is in Q_{a,b}, so child a must cut it.
                    if dist >> bit & 1 == 1 {
                        sets[a].push(pi);
                    } else {
                        sets[b].push(pi);
                    }
                }
                let mut total = 0u64;
                let mut witness = Vec::new();
                let mut feasible = true;
                for (i, set) in sets.into_iter().enumerate() {
                    match self.a_star_query(v, kids[i], set)? {
                        Some(e) => {
                            total += e.weight;
                            witness.extend_from_slice(&e.witness);
                        }
                        None => {
                            feasible = false;
                            break;
                        }
                    }
                }
                if feasible && best.as_ref().is_none_or(|b| total < b.weight) {
                    best = Some(TabEntry { weight: total, witness });
                }
            }
            row.push(best);
        }
        let d = self.classification.d;
        if u128::from(iterations) > saturating_pow(3, d.min(u32::MAX as usize) as u32) {
            self.stats.internal_iteration_violations += 1;
        }
        self.stats.max_internal_iterations = self.stats.max_internal_iterations.max(iterations);
        self.stats.table_entries += size as u64;
        self.tab[v] = Some(row);
        Ok(())
    }

    fn mask_in(&self, u: VertexId, set: &[usize]) -> usize {
        set.iter().fold(0, |m, pi| {
            let bit = self.io.outer[u]
                .iter()
                .position(|&(q, _)| q == *pi)
                .expect("queried pair lies in O[u]");
            m | (1 << bit)
        })
    }

    /// `Tab` for a light child, the heavy subroutine for a heavy one.
    fn a_star_query(&mut self, v: VertexId, u: VertexId, mut set: Vec<usize>) -> Result<Option<TabEntry>> {
        set.sort_unstable();
        set.dedup();
        if self.classification.is_light(u) {
            let mask = self.mask_in(u, &set);
            return Ok(self.tab[u].as_ref().expect("child filled first")[mask].clone());
        }
        self.a_heavy(v, u, set)
    }

    fn heavy_info(&mut self, u: VertexId) -> &HeavyInfo {
        if !self.heavy_info.contains_key(&u) {
            let mut component = vec![u];
            let mut boundary = Vec::new();
            let mut i = 0;
            while i < component.len() {
                let w = component[i];
                i += 1;
                for &c in self.tree.children(w) {
                    if self.classification.is_light(c) {
                        boundary.push(c);
                    } else {
                        component.push(c);
                    }
                }
            }
            component.sort_unstable();
            boundary.sort_unstable();
            let closed_leaves = self
                .classification
                .component_of(u)
                .map(|c| self.classification.components[c].closed_leaves)
                .unwrap_or(0);
            self.heavy_info.insert(
                u,
                HeavyInfo {
                    component,
                    boundary,
                    closed_leaves,
                },
            );
        }
        &self.heavy_info[&u]
    }

    /// Minimum weight of `S ⊆ V(T_u)` cutting every pair inside `T_u` and
    /// every pair of `q` (pair indices from `O[u]`), for a heavy child `u`
    /// of the light vertex `v`.
    pub(crate) fn a_heavy(&mut self, v: VertexId, u: VertexId, q: Vec<usize>) -> Result<Option<TabEntry>> {
        debug_assert_eq!(self.tree.parent(u), Some(v));
        let key = (u, q);
        if let Some(hit) = self.heavy_cache.get(&key) {
            return Ok(hit.clone());
        }
        let q = key.1.clone();
        self.stats.heavy_calls += 1;
        self.heavy_info(u);
        let tree = &self.tree;
        let inside = |w: VertexId| tree.is_ancestor(u, w);
        let inner: Vec<usize> = (0..self.pairs.len())
            .filter(|&i| inside(self.pairs[i].s) && inside(self.pairs[i].t))
            .collect();
        let oriented = |pi: usize| -> TerminalPair {
            self.io.outer[u]
                .iter()
                .find(|&&(x, _)| x == pi)
                .map(|&(_, p)| p)
                .expect("queried pair lies in O[u]")
        };
        let q_pairs: Vec<TerminalPair> = q.iter().map(|&pi| oriented(pi)).collect();
        let info = &self.heavy_info[&u];

        let result = if info.boundary.is_empty() {
            let mut list: Vec<TerminalPair> = inner.iter().map(|&i| self.pairs[i]).collect();
            list.extend(q_pairs.iter().map(|p| TerminalPair::new(p.s, u)));
            let sub = induce(&self.tree, &list, &self.weights, self.tree.subtree(u), u);
            self.stats.unmc_calls += 1;
            a_un_mc(&sub.tree, &sub.pairs, &sub.weights)?.map(|s| TabEntry {
                weight: s.total_weight(),
                witness: sub.to_host(s.vertices()),
            })
        } else {
            let boundary = info.boundary.clone();
            let component = info.component.clone();
            let closed_leaves = info.closed_leaves;
            let mut relevant: Vec<usize> = q.clone();
            relevant.extend_from_slice(&inner);
            relevant.sort_unstable();
            // Positions in O[u_i] of the pairs that can matter here; the rest
            // would only raise Tab[u_i, ·].
            let avail: Vec<Vec<usize>> = boundary
                .iter()
                .map(|&ui| {
                    self.io.outer[ui]
                        .iter()
                        .enumerate()
                        .filter(|(_, (pi, _))| relevant.binary_search(pi).is_ok())
                        .map(|(pos, _)| pos)
                        .collect()
                })
                .collect();
            let bits: usize = avail.iter().map(Vec::len).sum();
            let count = saturating_pow(2, bits as u32);
            let d = self.classification.d;
            let bound = saturating_pow(2, (d * closed_leaves).min(u32::MAX as usize) as u32);
            if count > bound {
                self.stats.heavy_distribution_violations += 1;
            }
            self.stats.max_heavy_distributions =
                self.stats.max_heavy_distributions.max(count.min(u128::from(u64::MAX)) as u64);
            if bits >= usize::BITS as usize - 1 {
                return Err(Error::Input(format!(
                    "{bits} boundary pairs at heavy vertex {u}; too many distributions"
                )));
            }
            let sub = induce(&self.tree, &[], &self.weights, &component, u);
            let project = |w: VertexId| -> VertexId {
                let host = if !tree.is_ancestor(u, w) {
                    u
                } else if let Some(i) = boundary.iter().position(|&b| tree.is_ancestor(b, w)) {
                    tree.parent(boundary[i]).unwrap()
                } else {
                    w
                };
                sub.local_of(host).expect("projection lands in the component")
            };
            let within_boundary: Vec<bool> = relevant
                .iter()
                .map(|&pi| {
                    let p = self.pairs[pi];
                    boundary
                        .iter()
                        .any(|&b| tree.is_ancestor(b, p.s) && tree.is_ancestor(b, p.t))
                })
                .collect();
            let tab = &self.tab;
            let pairs = &self.pairs;
            let io = &self.io;
            let results = par::map_indexed(1usize << bits, |dist| -> Result<Option<TabEntry>> {
                let mut cursor = 0;
                let mut removed: Vec<usize> = Vec::new();
                let mut total = 0u64;
                let mut witness = Vec::new();
                for (i, &ui) in boundary.iter().enumerate() {
                    let mut mask = 0usize;
                    for &pos in &avail[i] {
                        if dist >> cursor & 1 == 1 {
                            mask |= 1 << pos;
                            removed.push(io.outer[ui][pos].0);
                        }
                        cursor += 1;
                    }
                    match &tab[ui].as_ref().expect("boundary vertex filled first")[mask] {
                        Some(e) => {
                            total += e.weight;
                            witness.extend_from_slice(&e.witness);
                        }
                        None => return Ok(None),
                    }
                }
                removed.sort_unstable();
                let projected = canonical_pairs(
                    relevant
                        .iter()
                        .zip(&within_boundary)
                        .filter(|&(pi, &wb)| !wb && removed.binary_search(pi).is_err())
                        .map(|(&pi, _)| pairs[pi].map(project)),
                );
                Ok(a_un_mc(&sub.tree, &projected, &sub.weights)?.map(|s| {
                    witness.extend(sub.to_host(s.vertices()));
                    TabEntry {
                        weight: total + s.total_weight(),
                        witness,
                    }
                }))
            });
            self.stats.unmc_calls += results.len() as u64;
            let mut best: Option<TabEntry> = None;
            for r in results {
                if let Some(e) = r? {
                    if best.as_ref().is_none_or(|b| e.weight < b.weight) {
                        best = Some(e);
                    }
                }
            }
            best
        };
        self.heavy_cache.insert(key, result.clone());
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::a_path;
    use crate::io::generate::{gen_random, Shape};
    use crate::oracle::{brute_tab_entry, OracleConfig};
    use crate::tree::Forest;

    /// `(v, u)` with `v` light and `u` a heavy child of `v`.
    fn heavy_edges(table: &LightTable) -> Vec<(VertexId, VertexId)> {
        let t = table.tree();
        (0..t.n())
            .filter(|&v| table.classification().is_light(v))
            .flat_map(|v| t.children(v).iter().map(move |&u| (v, u)))
            .filter(|&(_, u)| !table.classification().is_light(u))
            .collect()
    }

    #[test]
    fn heavy_single_inner_pair() {
        // With d = 0 the pair (1, 2) makes 1 and 2 heavy below the light root.
        let t = RootedTree::from_edges(4, &[(0, 1), (1, 2), (0, 3)], 0).unwrap();
        let w = WeightMap::from_finite(&[1, 2, 3, 4]);
        let pairs = [TerminalPair::new(1, 2)];
        let mut table = LightTable::build(&t, &pairs, &w, 0).unwrap();
        assert_eq!(table.root(), 0);
        assert_eq!(heavy_edges(&table), vec![(0, 1)]);
        let e = table.a_heavy(0, 1, vec![]).unwrap().unwrap();
        assert_eq!((e.weight, e.witness), (2, vec![1]));
    }

    #[test]
    fn heavy_path_without_boundary_matches_path_solver() {
        // 0 is light; 1-2-3-4 is a heavy path below it.
        let t = RootedTree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], 0).unwrap();
        let w = WeightMap::from_finite(&[9, 5, 1, 6, 2]);
        let pairs = [TerminalPair::new(1, 4), TerminalPair::new(2, 3), TerminalPair::new(1, 3)];
        let mut table = LightTable::build(&t, &pairs, &w, 0).unwrap();
        let got = table.a_heavy(0, 1, vec![]).unwrap().map(|e| e.weight);
        let below: Vec<VertexId> = (1..5).collect();
        let want = a_path(&t.forest(&below), &pairs, &w).unwrap().map(|s| s.total_weight());
        assert_eq!(got, want);
        let whole = a_path(&Forest::whole(&t), &pairs, &w).unwrap().map(|s| s.total_weight());
        assert_eq!(got, whole);
    }

    #[test]
    fn heavy_matches_subset_enumeration() {
        let cfg = OracleConfig::default();
        let mut queries = 0;
        for seed in 0..250u64 {
            let shape = [Shape::Uniform, Shape::Caterpillar, Shape::StarIsh][seed as usize % 3];
            let inst = gen_random(5 + seed as usize % 8, 3 + seed as usize % 6, 20, seed, shape).unwrap();
            let d = 1 + seed as usize % 2;
            let Ok(mut table) = LightTable::build(&inst.tree, &inst.pairs, &inst.weights, d) else {
                continue;
            };
            for (v, u) in heavy_edges(&table) {
                let outer = table.outgoing(u);
                let ids: Vec<usize> = table.io().outer[u].iter().map(|&(i, _)| i).collect();
                for mask in 0..(1usize << outer.len()).min(16) {
                    let chosen: Vec<usize> = (0..ids.len()).filter(|&b| mask >> b & 1 == 1).collect();
                    let q: Vec<usize> = chosen.iter().map(|&b| ids[b]).collect();
                    let q_pairs: Vec<TerminalPair> = chosen.iter().map(|&b| outer[b]).collect();
                    let got = table.a_heavy(v, u, q).unwrap();
                    let want = brute_tab_entry(table.tree(), table.pairs(), &inst.weights, u, &q_pairs, &cfg).unwrap();
                    assert_eq!(got.as_ref().map(|e| e.weight), want, "seed {seed} u {u} mask {mask}");
                    if let Some(e) = got {
                        assert!(e.witness.iter().all(|&x| table.tree().is_ancestor(u, x)));
                        assert_eq!(inst.weights.total(&e.witness), Some(e.weight));
                    }
                    queries += 1;
                }
            }
            assert!(table.stats().clean(), "seed {seed}: {:?}", table.stats());
        }
        assert!(queries > 100, "only {queries} heavy queries");
    }
}

//! Path contraction and induced subinstances, with the id maps needed to
//! carry witnesses back to the host instance.

use crate::error::{Error, Result};
use crate::instance::{Weight, WeightMap};
use crate::tree::{canonical_pairs, RootedTree, TerminalPair, VertexId};

/// The vertex identification `ψ` of a contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Old id to new id.
    pub forward: Vec<VertexId>,
    /// New id to the sorted old ids mapped onto it.
    pub fibers: Vec<Vec<VertexId>>,
}

impl ContractionMap {
    /// Maps a set of new ids back to old ids. Only singleton fibers are
    /// expected here; a merged vertex is undeletable and never in a witness.
    pub fn pull_back(&self, vertices: &[VertexId]) -> Vec<VertexId> {
        vertices
            .iter()
            .flat_map(|&v| self.fibers[v].iter().copied())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Contracted {
    pub tree: RootedTree,
    pub pairs: Vec<TerminalPair>,
    pub weights: WeightMap,
    pub map: ContractionMap,
    /// The new vertex `y°` standing for the whole contracted path.
    pub merged: VertexId,
}

/// Contracts the path from `y` down to its descendant `x` into one
/// undeletable vertex.
pub fn contract_path(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    y: VertexId,
    x: VertexId,
) -> Result<Contracted> {
    tree.check(y)?;
    tree.check(x)?;
    let path = tree.downward_path(y, x).ok_or(Error::NotDescendant { y, x })?;
    let n = tree.n();
    let mut on_path = vec![false; n];
    for &v in &path {
        on_path[v] = true;
    }
    let mut forward = vec![usize::MAX; n];
    let mut fibers = Vec::with_capacity(n + 1 - path.len());
    for v in 0..n {
        if on_path[v] && v != y {
            continue;
        }
        forward[v] = fibers.len();
        fibers.push(if v == y { path.clone() } else { vec![v] });
    }
    for &v in &path {
        forward[v] = forward[y];
    }
    if let Some(f) = fibers.get_mut(forward[y]) {
        f.sort_unstable();
    }
    let edges: Vec<(VertexId, VertexId)> = tree
        .edges()
        .into_iter()
        .map(|(p, c)| (forward[p], forward[c]))
        .filter(|(p, c)| p != c)
        .collect();
    let new_tree = RootedTree::from_edges(fibers.len(), &edges, forward[tree.root()])?;
    let new_pairs = canonical_pairs(pairs.iter().map(|p| p.map(|v| forward[v])));
    let mut new_weights: Vec<Weight> = fibers.iter().map(|f| weights.get(f[0])).collect();
    let merged = forward[y];
    new_weights[merged] = Weight::Undeletable;
    Ok(Contracted {
        tree: new_tree,
        pairs: new_pairs,
        weights: WeightMap::new(new_weights),
        map: ContractionMap { forward, fibers },
        merged,
    })
}

/// An instance induced on a connected vertex subset of a host tree.
#[derive(Clone, Debug)]
pub struct SubInstance {
    pub tree: RootedTree,
    pub pairs: Vec<TerminalPair>,
    pub weights: WeightMap,
    /// Local id to host id, ascending.
    pub origin: Vec<VertexId>,
}

impl SubInstance {
    pub fn to_host(&self, vertices: &[VertexId]) -> Vec<VertexId> {
        vertices.iter().map(|&v| self.origin[v]).collect()
    }

    pub fn local_of(&self, host: VertexId) -> Option<VertexId> {
        self.origin.binary_search(&host).ok()
    }
}

/// Induces the subinstance on `vertices` (connected, containing `root`).
/// Pairs survive only when both endpoints are inside; local ids follow
/// ascending host ids.
pub fn induce(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    vertices: &[VertexId],
    root: VertexId,
) -> SubInstance {
    let mut origin = vertices.to_vec();
    origin.sort_unstable();
    origin.dedup();
    let mut local = vec![usize::MAX; tree.n()];
    for (i, &v) in origin.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<(VertexId, VertexId)> = origin
        .iter()
        .filter_map(|&v| {
            let p = tree.parent(v)?;
            (local[p] != usize::MAX).then(|| (local[p], local[v]))
        })
        .collect();
    let sub = RootedTree::from_edges(origin.len(), &edges, local[root])
        .expect("induced vertex set must be connected");
    let sub_pairs = canonical_pairs(
        pairs
            .iter()
            .filter(|p| local[p.s] != usize::MAX && local[p.t] != usize::MAX)
            .map(|p| p.map(|v| local[v])),
    );
    let sub_weights = WeightMap::new(origin.iter().map(|&v| weights.get(v)).collect());
    SubInstance {
        tree: sub,
        pairs: sub_pairs,
        weights: sub_weights,
        origin,
    }
}

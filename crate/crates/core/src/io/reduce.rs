//! Instances built from other problems, and the targeted light generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Weight, WeightMap};
use crate::io::generate::{random_tree, random_weights, Shape};
use crate::light::classify_light;
use crate::tree::{RootedTree, TerminalPair, VertexId};

/// Multicut instance whose optimum equals the minimum vertex cover of the
/// graph on `0..n` with the given edges.
///
/// Vertex `i` becomes a spine vertex `i` of weight `n + 1` carrying a pendant
/// `n + i` of weight 1; each graph edge `(i, j)` becomes the pair
/// `(n + i, n + j)`.
pub fn reduce_vertex_cover(edges: &[(VertexId, VertexId)], n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::Input("graph has no vertices".into()));
    }
    let mut tree_edges: Vec<(VertexId, VertexId)> = (1..n).map(|i| (i - 1, i)).collect();
    tree_edges.extend((0..n).map(|i| (i, n + i)));
    let tree = RootedTree::from_edges(2 * n, &tree_edges, 0)?;
    let mut pairs = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n {
            return Err(Error::BadVertex(u));
        }
        if v >= n {
            return Err(Error::BadVertex(v));
        }
        if u == v {
            return Err(Error::Input(format!("self-loop at {u}")));
        }
        pairs.push(TerminalPair::new(n + u, n + v));
    }
    let mut weights = vec![Weight::Finite(n as u64 + 1); n];
    weights.extend(std::iter::repeat_n(Weight::Finite(1), n));
    Instance::new(tree, pairs, WeightMap::new(weights), None, None)
}

/// Vertex-deletion instance equivalent to cutting edges of a tree on `0..n`.
///
/// Edge `i` of `edges` becomes vertex `n + i` with the edge's weight; the
/// original vertices are undeletable.
pub fn reduce_edge_deletion(
    n: usize,
    edges: &[(VertexId, VertexId, u64)],
    pairs: &[TerminalPair],
) -> Result<Instance> {
    let plain: Vec<(VertexId, VertexId)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    RootedTree::from_edges(n, &plain, 0)?;
    let mut tree_edges = Vec::with_capacity(2 * edges.len());
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        tree_edges.push((u, n + i));
        tree_edges.push((n + i, v));
    }
    let tree = RootedTree::from_edges(n + edges.len(), &tree_edges, 0)?;
    let mut weights = vec![Weight::Undeletable; n];
    weights.extend(edges.iter().map(|&(_, _, w)| Weight::Finite(w)));
    Instance::new(tree, pairs.to_vec(), WeightMap::new(weights), None, None)
}

/// Random instance on `size` vertices that is certified `(d, q)`-light.
///
/// Pairs are drawn one at a time and kept only while the instance stays
/// `(d, q)`-light, up to `size` pairs.
pub fn gen_dq_light(d: usize, q: usize, size: usize, seed: u64) -> Result<Instance> {
    if size == 0 {
        return Err(Error::Generation("size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(size, Shape::Uniform, &mut rng)?;
    let weights = random_weights(size, 20, 0, &mut rng);
    let mut pairs: Vec<TerminalPair> = Vec::new();
    for _ in 0..size * 8 {
        if pairs.len() >= size {
            break;
        }
        let p = TerminalPair::new(rng.gen_range(0..size), rng.gen_range(0..size)).normalized();
        if pairs.contains(&p) {
            continue;
        }
        pairs.push(p);
        if !classify_light(&tree, &pairs, d).is_dq_light(q) {
            pairs.pop();
        }
    }
    let instance = Instance::new(tree, pairs, weights, None, None)?;
    if !classify_light(&instance.tree, &instance.pairs, d).is_dq_light(q) {
        return Err(Error::Generation(format!("could not certify ({d}, {q})-lightness")));
    }
    Ok(instance)
}

//! Seeded random instance generators.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Weight, WeightMap};
use crate::tree::{RootedTree, TerminalPair, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Uniformly random labelled tree.
    Uniform,
    /// A spine with pendant vertices.
    Caterpillar,
    /// At most one vertex of degree three or more.
    StarIsh,
    Path,
    /// Random tree with exactly this many leaves (needs `n > leaves >= 2`).
    Leaves(usize),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Uniform => f.write_str("uniform"),
            Shape::Caterpillar => f.write_str("caterpillar"),
            Shape::StarIsh => f.write_str("star-ish"),
            Shape::Path => f.write_str("path"),
            Shape::Leaves(l) => write!(f, "leaves-{l}"),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Shape::Uniform),
            "caterpillar" => Ok(Shape::Caterpillar),
            "star-ish" | "star" => Ok(Shape::StarIsh),
            "path" => Ok(Shape::Path),
            other => other
                .strip_prefix("leaves-")
                .and_then(|l| l.parse().ok())
                .map(Shape::Leaves)
                .ok_or_else(|| Error::Input(format!("unknown shape `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub n: usize,
    pub m_pairs: usize,
    pub weight_max: u64,
    pub seed: u64,
    pub shape: Shape,
    /// Chance, in thousandths, that a vertex is undeletable.
    pub undeletable_per_mille: u32,
}

impl GenConfig {
    pub fn new(n: usize, m_pairs: usize, weight_max: u64, seed: u64, shape: Shape) -> Self {
        GenConfig {
            n,
            m_pairs,
            weight_max,
            seed,
            shape,
            undeletable_per_mille: 0,
        }
    }

    pub fn undeletable(mut self, per_mille: u32) -> Self {
        self.undeletable_per_mille = per_mille;
        self
    }
}

/// Random instance: tree of the given shape rooted at 0, weights uniform in
/// `0..=weight_max`, and `m_pairs` pairs drawn uniformly (endpoints
/// independent, so `s == t` occurs; duplicates collapse).
pub fn gen_random(n: usize, m_pairs: usize, weight_max: u64, seed: u64, shape: Shape) -> Result<Instance> {
    generate(&GenConfig::new(n, m_pairs, weight_max, seed, shape))
}

pub fn generate(cfg: &GenConfig) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tree = random_tree(cfg.n, cfg.shape, &mut rng)?;
    let weights = random_weights(cfg.n, cfg.weight_max, cfg.undeletable_per_mille, &mut rng);
    let pairs = (0..cfg.m_pairs)
        .map(|_| TerminalPair::new(rng.gen_range(0..cfg.n), rng.gen_range(0..cfg.n)))
        .collect();
    Instance::new(tree, pairs, weights, None, None)
}

pub(crate) fn random_weights(n: usize, max: u64, undeletable_per_mille: u32, rng: &mut impl Rng) -> WeightMap {
    WeightMap::new(
        (0..n)
            .map(|_| {
                if rng.gen_range(0..1000) < undeletable_per_mille {
                    Weight::Undeletable
                } else {
                    Weight::Finite(rng.gen_range(0..=max))
                }
            })
            .collect(),
    )
}

/// Random tree of the given shape, rooted at vertex 0.
pub fn random_tree(n: usize, shape: Shape, rng: &mut impl Rng) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::Generation("a tree needs at least one vertex".into()));
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(VertexId, VertexId)> = match shape {
        Shape::Uniform => prufer_tree(n, rng),
        Shape::Path => perm.windows(2).map(|w| (w[0], w[1])).collect(),
        Shape::Caterpillar => {
            let spine = (n / 2).max(1);
            let mut e: Vec<_> = perm[..spine].windows(2).map(|w| (w[0], w[1])).collect();
            for &v in &perm[spine..] {
                e.push((perm[rng.gen_range(0..spine)], v));
            }
            e
        }
        Shape::StarIsh => {
            let legs = if n > 1 { rng.gen_range(1..=(n - 1).min(6)) } else { 0 };
            let mut tails = vec![perm[0]; legs];
            let mut e = Vec::new();
            for (i, &v) in perm[1..].iter().enumerate() {
                let leg = if i < legs { i } else { rng.gen_range(0..legs) };
                e.push((tails[leg], v));
                tails[leg] = v;
            }
            e
        }
        Shape::Leaves(l) => {
            if l < 2 || n <= l {
                return Err(Error::Generation(format!("cannot build {n} vertices with {l} leaves")));
            }
            let local = leaf_count_tree(n, l, rng);
            local.into_iter().map(|(a, b)| (perm[a], perm[b])).collect()
        }
    };
    RootedTree::from_edges(n, &edges, 0)
}

fn prufer_tree(n: usize, rng: &mut impl Rng) -> Vec<(VertexId, VertexId)> {
    if n <= 2 {
        return (1..n).map(|v| (0, v)).collect();
    }
    let seq: Vec<VertexId> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

/// Tree on `0..n` with exactly `l` leaves: grow a skeleton by hanging new
/// leaves off internal vertices, then subdivide random edges.
fn leaf_count_tree(n: usize, l: usize, rng: &mut impl Rng) -> Vec<(VertexId, VertexId)> {
    let mut edges = vec![(0, 1), (1, 2)];
    let mut deg = vec![1, 2, 1];
    let mut next = 3;
    let mut leaves = 2;
    while leaves < l {
        // Hang the new leaf off a fresh subdivision vertex when the vertex
        // budget allows, so branching vertices spread out.
        let spare = n - next - (l - leaves);
        let p = if spare >= 1 && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..edges.len());
            let (a, b) = edges[i];
            edges[i] = (a, next);
            edges.push((next, b));
            deg.push(2);
            next += 1;
            next - 1
        } else {
            let internal: Vec<usize> = (0..next).filter(|&v| deg[v] >= 2).collect();
            internal[rng.gen_range(0..internal.len())]
        };
        edges.push((p, next));
        deg[p] += 1;
        deg.push(1);
        next += 1;
        leaves += 1;
    }
    while next < n {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        edges[i] = (a, next);
        edges.push((next, b));
        next += 1;
    }
    edges
}

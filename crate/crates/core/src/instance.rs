//! Weights, instances, solutions, and solution verification.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{canonical_pairs, RootedTree, TerminalPair, VertexId};

/// Cap on the sum of finite weights, so sums of sums never overflow `u64`.
pub const WEIGHT_SUM_CAP: u64 = 1 << 62;

/// Deletion cost of a vertex. `Undeletable` vertices never belong to a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Finite(u64),
    Undeletable,
}

impl Weight {
    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Undeletable => None,
        }
    }

    pub fn is_deletable(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    /// Adds an optional extra cost; an absent extra makes the vertex undeletable.
    pub fn plus(self, extra: Option<u64>) -> Weight {
        match (self, extra) {
            (Weight::Finite(a), Some(b)) => Weight::Finite(a + b),
            _ => Weight::Undeletable,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Undeletable => f.write_str("*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap(Vec<Weight>);

impl WeightMap {
    pub fn new(weights: Vec<Weight>) -> Self {
        WeightMap(weights)
    }

    pub fn from_finite(weights: &[u64]) -> Self {
        WeightMap(weights.iter().map(|&w| Weight::Finite(w)).collect())
    }

    pub fn uniform(n: usize, w: u64) -> Self {
        WeightMap(vec![Weight::Finite(w); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Weight {
        self.0[v]
    }

    pub fn set(&mut self, v: VertexId, w: Weight) {
        self.0[v] = w;
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub fn finite_sum(&self) -> u128 {
        self.0.iter().filter_map(|w| w.finite()).map(u128::from).sum()
    }

    /// Total weight of a vertex set; `None` if it contains an undeletable vertex.
    pub fn total(&self, vertices: &[VertexId]) -> Option<u64> {
        vertices.iter().try_fold(0u64, |acc, &v| Some(acc + self.0[v].finite()?))
    }
}

/// A tree, its terminal pairs, weights and budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub tree: RootedTree,
    pub pairs: Vec<TerminalPair>,
    pub weights: WeightMap,
    pub budget_w: Option<u64>,
    pub budget_k: Option<u64>,
}

impl Instance {
    /// Validates the parts and canonicalizes the pair list.
    pub fn new(
        tree: RootedTree,
        pairs: Vec<TerminalPair>,
        weights: WeightMap,
        budget_w: Option<u64>,
        budget_k: Option<u64>,
    ) -> Result<Self> {
        if weights.len() != tree.n() {
            return Err(Error::WeightLength {
                n: tree.n(),
                got: weights.len(),
            });
        }
        if weights.finite_sum() > u128::from(WEIGHT_SUM_CAP) {
            return Err(Error::WeightOverflow);
        }
        for p in &pairs {
            tree.check(p.s)?;
            tree.check(p.t)?;
        }
        Ok(Instance {
            tree,
            pairs: canonical_pairs(pairs),
            weights,
            budget_w,
            budget_k,
        })
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn with_budgets(mut self, budget_w: Option<u64>, budget_k: Option<u64>) -> Self {
        self.budget_w = budget_w;
        self.budget_k = budget_k;
        self
    }
}

/// A vertex set with its weight. Never contains an undeletable vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    vertices: Vec<VertexId>,
    total_weight: u64,
}

impl Solution {
    pub fn empty() -> Self {
        Solution {
            vertices: Vec::new(),
            total_weight: 0,
        }
    }

    pub fn new(vertices: impl IntoIterator<Item = VertexId>, weights: &WeightMap) -> Result<Self> {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= weights.len()) {
            return Err(Error::BadVertex(v));
        }
        if let Some(&v) = vertices.iter().find(|&&v| !weights.get(v).is_deletable()) {
            return Err(Error::Input(format!("vertex {v} is undeletable")));
        }
        let total_weight = weights.total(&vertices).expect("checked deletable");
        Ok(Solution {
            vertices,
            total_weight,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Outcome of checking a candidate vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    BadVertex(VertexId),
    Undeletable(VertexId),
    Uncut(TerminalPair),
    WeightExceeded { weight: u64, budget: u64 },
    SizeExceeded { size: usize, budget: u64 },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::BadVertex(v) => write!(f, "bad vertex {v}"),
            Verdict::Undeletable(v) => write!(f, "vertex {v} is undeletable"),
            Verdict::Uncut(p) => write!(f, "pair ({}, {}) not cut", p.s, p.t),
            Verdict::WeightExceeded { weight, budget } => {
                write!(f, "weight exceeded: {weight} > {budget}")
            }
            Verdict::SizeExceeded { size, budget } => write!(f, "size exceeded: {size} > {budget}"),
        }
    }
}

/// Checks that `vertices` is a multicut of `pairs` made of deletable vertices.
pub fn verify_multicut(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    vertices: &[VertexId],
) -> Verdict {
    let mut chosen = vec![false; tree.n()];
    for &v in vertices {
        if v >= tree.n() {
            return Verdict::BadVertex(v);
        }
        if !weights.get(v).is_deletable() {
            return Verdict::Undeletable(v);
        }
        chosen[v] = true;
    }
    for &p in pairs {
        if !tree.path_of(p.s, p.t).iter().any(|&v| chosen[v]) {
            return Verdict::Uncut(p);
        }
    }
    Verdict::Valid
}

/// Checks a solution against every pair and the instance budgets.
pub fn verify_solution(instance: &Instance, solution: &Solution) -> Verdict {
    verify_vertices(instance, solution.vertices())
}

/// Like [`verify_solution`] for a raw vertex list.
pub fn verify_vertices(instance: &Instance, vertices: &[VertexId]) -> Verdict {
    let verdict = verify_multicut(&instance.tree, &instance.pairs, &instance.weights, vertices);
    if !verdict.is_valid() {
        return verdict;
    }
    let mut distinct = vertices.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let weight = instance.weights.total(&distinct).expect("verified deletable");
    if let Some(budget) = instance.budget_w {
        if weight > budget {
            return Verdict::WeightExceeded { weight, budget };
        }
    }
    if let Some(budget) = instance.budget_k {
        if distinct.len() as u64 > budget {
            return Verdict::SizeExceeded {
                size: distinct.len(),
                budget,
            };
        }
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(pairs: Vec<TerminalPair>) -> Instance {
        let tree = RootedTree::from_edges(3, &[(0, 1), (1, 2)], 0).unwrap();
        Instance::new(tree, pairs, WeightMap::from_finite(&[5, 1, 7]), None, None).unwrap()
    }

    #[test]
    fn verify_examples() {
        let empty = path3(vec![]);
        assert!(verify_solution(&empty, &Solution::empty()).is_valid());
        let one = path3(vec![TerminalPair::new(2, 0)]);
        assert_eq!(
            verify_solution(&one, &Solution::empty()),
            Verdict::Uncut(TerminalPair::new(0, 2))
        );
        let sol = Solution::new([1], &one.weights).unwrap();
        assert!(verify_solution(&one, &sol).is_valid());
        let tight = one.clone().with_budgets(Some(0), None);
        assert_eq!(
            verify_solution(&tight, &sol),
            Verdict::WeightExceeded { weight: 1, budget: 0 }
        );
        let small = one.with_budgets(None, Some(0));
        assert_eq!(verify_solution(&small, &sol), Verdict::SizeExceeded { size: 1, budget: 0 });
    }

    #[test]
    fn undeletable_and_bad_ids() {
        let tree = RootedTree::from_edges(2, &[(0, 1)], 0).unwrap();
        let weights = WeightMap::new(vec![Weight::Undeletable, Weight::Finite(3)]);
        let pairs = [TerminalPair::new(0, 1)];
        assert_eq!(verify_multicut(&tree, &pairs, &weights, &[0]), Verdict::Undeletable(0));
        assert_eq!(verify_multicut(&tree, &pairs, &weights, &[5]), Verdict::BadVertex(5));
        assert!(Solution::new([0], &weights).is_err());
        assert_eq!(Solution::new([1, 1], &weights).unwrap().total_weight(), 3);
    }

    #[test]
    fn instance_validation() {
        let tree = RootedTree::from_edges(2, &[(0, 1)], 0).unwrap();
        let short = WeightMap::from_finite(&[1]);
        assert!(Instance::new(tree.clone(), vec![], short, None, None).is_err());
        let weights = WeightMap::from_finite(&[1, 1]);
        assert!(Instance::new(tree.clone(), vec![TerminalPair::new(0, 2)], weights.clone(), None, None).is_err());
        let heavy = WeightMap::from_finite(&[WEIGHT_SUM_CAP, 1]);
        assert!(Instance::new(tree.clone(), vec![], heavy, None, None).is_err());
        let inst = Instance::new(
            tree,
            vec![TerminalPair::new(1, 0), TerminalPair::new(0, 1)],
            weights,
            None,
            None,
        )
        .unwrap();
        assert_eq!(inst.pairs, vec![TerminalPair::new(0, 1)]);
    }
}

//! Dynamic programming over vertices crossed by few pair paths.

mod classify;
mod table;

pub use classify::{classify_light, induced_leaf_count, HeavyComponent, LightClassification};
pub use table::{compute_io, IoSets, LightStats, LightTable, TabEntry};

use crate::base::a_un_mc;
use crate::error::Result;
use crate::instance::{Solution, WeightMap};
use crate::tree::{RootedTree, TerminalPair};

#[derive(Clone, Debug)]
pub struct LightOutcome {
    pub solution: Option<Solution>,
    /// Whether the optimum is at most the requested budget, when one was given.
    pub decision: Option<bool>,
    pub stats: LightStats,
    /// No vertex was light, so the whole instance went to the general solver.
    pub delegated: bool,
}

/// Minimum-weight multicut through the light-vertex table, rooted at the
/// smallest-id `d`-light vertex. Correct for every `d`; `d` only affects
/// the running time.
pub fn solve_light(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
    d: usize,
    w: Option<u64>,
) -> Result<LightOutcome> {
    let classification = classify_light(tree, pairs, d);
    let (solution, stats, delegated) = if classification.light_vertices().is_empty() {
        (a_un_mc(tree, pairs, weights)?, LightStats::default(), true)
    } else {
        let table = LightTable::build(tree, pairs, weights, d)?;
        let solution = table
            .entry(table.root(), 0)
            .flatten()
            .map(|e| Solution::new(e.witness.iter().copied(), weights).expect("witness is deletable"));
        (solution, table.stats().clone(), false)
    };
    let decision = w.map(|w| solution.as_ref().is_some_and(|s| s.total_weight() <= w));
    Ok(LightOutcome {
        solution,
        decision,
        stats,
        delegated,
    })
}

//! Base-case solvers used by the branching algorithms.

mod arcless;
mod dpc;
mod greedy;
mod path;
mod star;

pub use arcless::{arcless_solve, ArclessConstraint, ArclessProblem};
pub use dpc::{a_dpc, a_dpc_profile};
pub use greedy::greedy_min_size_multicut;
pub use path::{a_path, PathDpTable};
pub use star::a_star;

use crate::error::Result;
use crate::instance::{Solution, WeightMap};
use crate::solver_leaves::solve_leaves;
use crate::tree::{RootedTree, TerminalPair};

/// Minimum-weight multicut on an arbitrary tree; `None` if infeasible.
pub fn a_un_mc(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<Option<Solution>> {
    Ok(solve_leaves(tree, pairs, weights)?.solution)
}

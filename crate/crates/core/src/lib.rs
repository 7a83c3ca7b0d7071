//! Exact solvers for weighted vertex multicut on trees.
//!
//! Given a tree, terminal pairs and vertex weights, find a minimum-weight
//! vertex set meeting the path of every pair. Three branching/DP solvers are
//! provided ([`solve_k`], [`solve_leaves`], [`solve_light`]) along with the
//! base-case solvers they rely on, brute-force oracles, an instance file
//! format and generators.

pub mod base;
pub mod contract;
pub mod error;
pub mod instance;
pub mod io;
pub mod light;
pub mod oracle;
pub mod par;
pub mod run;
pub mod solver_k;
pub mod solver_leaves;
pub mod stats;
pub mod suite;
pub mod tree;

pub use base::{a_dpc, a_path, a_star, a_un_mc, arcless_solve, greedy_min_size_multicut};
pub use contract::{contract_path, induce, ContractionMap, Contracted, SubInstance};
pub use error::{Error, Result};
pub use instance::{verify_multicut, verify_solution, Instance, Solution, Verdict, Weight, WeightMap};
pub use io::{gen_dq_light, gen_random, parse_instance, reduce_edge_deletion, reduce_vertex_cover, serialize_instance, Shape};
pub use light::{classify_light, solve_light, LightClassification, LightOutcome, LightTable};
pub use oracle::{brute_min_multicut, brute_tab_entry, brute_vertex_cover, OracleConfig};
pub use solver_k::{solve_k, solve_k_with, KOptions, KOutcome};
pub use solver_leaves::{decision_leaves, solve_leaves, LeavesOutcome};
pub use run::{choose_auto, run, Algo, Answer, RunOptions, RunResult, RunStats};
pub use stats::{BranchStats, TraceTree};
pub use tree::{restrict_pairs, Forest, RootedTree, TerminalPair, VertexId};

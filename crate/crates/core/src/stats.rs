//! Counters and branching traces shared by the branching solvers.

use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchStats {
    pub node_count: u64,
    pub max_depth: u32,
    pub case1: u64,
    pub case2: u64,
    pub base_cases: u64,
    /// Branch edges along which the measure failed to drop.
    pub measure_violations: u64,
    /// Failed structural checks (multicut/lca-closure of X, branching counts).
    pub invariant_violations: u64,
    pub dpc_calls: u64,
    pub star_calls: u64,
}

impl BranchStats {
    pub fn absorb(&mut self, other: &BranchStats) {
        self.node_count += other.node_count;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.case1 += other.case1;
        self.case2 += other.case2;
        self.base_cases += other.base_cases;
        self.measure_violations += other.measure_violations;
        self.invariant_violations += other.invariant_violations;
        self.dpc_calls += other.dpc_calls;
        self.star_calls += other.star_calls;
    }

    pub fn clean(&self) -> bool {
        self.measure_violations == 0 && self.invariant_violations == 0
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// One branching state: its measure, what happened there, and its children
/// in exploration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTree {
    pub measure: usize,
    pub tag: String,
    pub children: Vec<TraceTree>,
}

impl TraceTree {
    pub fn leaf(measure: usize, tag: impl Into<String>) -> Self {
        TraceTree {
            measure,
            tag: tag.into(),
            children: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        1 + self.children.iter().map(TraceTree::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Graphviz rendering; nodes are numbered in preorder.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph branching {\n  node [shape=box];\n");
        let mut next = 0usize;
        self.emit(&mut out, &mut next, None);
        out.push_str("}\n");
        out
    }

    fn emit(&self, out: &mut String, next: &mut usize, parent: Option<usize>) {
        let id = *next;
        *next += 1;
        let _ = writeln!(out, "  n{id} [label=\"mu={} {}\"];", self.measure, self.tag);
        if let Some(p) = parent {
            let _ = writeln!(out, "  n{p} -> n{id};");
        }
        for c in &self.children {
            c.emit(out, next, Some(id));
        }
    }
}

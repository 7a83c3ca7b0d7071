use std::collections::HashSet;

use serde::Serialize;

use crate::tree::{RootedTree, TerminalPair, VertexId};

/// A connected component of heavy vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeavyComponent {
    pub vertices: Vec<VertexId>,
    /// Leaves of the subtree induced by the component and its neighbours.
    pub closed_leaves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightClassification {
    pub d: usize,
    /// Number of pair paths through each vertex.
    pub load: Vec<usize>,
    pub light: Vec<bool>,
    pub components: Vec<HeavyComponent>,
}

impl LightClassification {
    pub fn is_light(&self, v: VertexId) -> bool {
        self.light[v]
    }

    pub fn light_vertices(&self) -> Vec<VertexId> {
        (0..self.light.len()).filter(|&v| self.light[v]).collect()
    }

    pub fn max_closed_leaves(&self) -> usize {
        self.components.iter().map(|c| c.closed_leaves).max().unwrap_or(0)
    }

    /// Every heavy component has at most `q` leaves in its closed neighbourhood.
    pub fn is_dq_light(&self, q: usize) -> bool {
        self.max_closed_leaves() <= q
    }

    /// Index of the component holding heavy vertex `v`.
    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.binary_search(&v).is_ok())
    }
}

/// Leaves of the subtree induced by `set` (a connected vertex set).
pub fn induced_leaf_count(tree: &RootedTree, set: &[VertexId]) -> usize {
    let members: HashSet<VertexId> = set.iter().copied().collect();
    set.iter()
        .filter(|&&v| tree.neighbors(v).filter(|u| members.contains(u)).count() == 1)
        .count()
}

/// Splits vertices into `d`-light (at most `d` pair paths through them) and
/// heavy, and measures each heavy component.
pub fn classify_light(tree: &RootedTree, pairs: &[TerminalPair], d: usize) -> LightClassification {
    let n = tree.n();
    let load = tree.path_loads(pairs);
    let light: Vec<bool> = load.iter().map(|&c| c <= d).collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for s in 0..n {
        if light[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for v in tree.neighbors(u) {
                if !light[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        let mut closed = comp.clone();
        closed.extend(comp.iter().flat_map(|&u| tree.neighbors(u)).filter(|&v| light[v]));
        closed.sort_unstable();
        closed.dedup();
        components.push(HeavyComponent {
            closed_leaves: induced_leaf_count(tree, &closed),
            vertices: comp,
        });
    }
    LightClassification {
        d,
        load,
        light,
        components,
    }
}

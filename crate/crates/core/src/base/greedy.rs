use crate::error::Result;
use crate::tree::{RootedTree, TerminalPair, VertexId};

/// Minimum-cardinality multicut, ignoring weights and deletability.
///
/// Repeatedly takes the deepest vertex (smallest id on ties) whose subtree
/// still holds an uncut pair, then discards that subtree. The tree is
/// rerooted at `root` first. Result is sorted by id.
pub fn greedy_min_size_multicut(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    root: VertexId,
) -> Result<Vec<VertexId>> {
    let tree = tree.rerooted(root)?;
    for p in pairs {
        tree.check(p.s)?;
        tree.check(p.t)?;
    }
    let mut order: Vec<(VertexId, TerminalPair)> =
        pairs.iter().map(|&p| (tree.lca_of(p.s, p.t), p)).collect();
    order.sort_by_key(|&(l, _)| (std::cmp::Reverse(tree.depth(l)), l));
    let mut removed = vec![false; tree.n()];
    let mut chosen = Vec::new();
    for (l, p) in order {
        // A pair with an endpoint in a removed subtree runs through the
        // chosen vertex at that subtree's root.
        if removed[p.s] || removed[p.t] {
            continue;
        }
        chosen.push(l);
        for &v in tree.subtree(l) {
            removed[v] = true;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

//! Rooted trees, terminal pairs, and the path/LCA/subtree primitives every
//! solver is built from.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A terminal pair. `s == t` is allowed and means the single-vertex path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminalPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl TerminalPair {
    pub fn new(s: VertexId, t: VertexId) -> Self {
        TerminalPair { s, t }
    }

    /// Same pair with `s <= t`.
    pub fn normalized(self) -> Self {
        if self.s <= self.t {
            self
        } else {
            TerminalPair { s: self.t, t: self.s }
        }
    }

    pub fn map(self, f: impl Fn(VertexId) -> VertexId) -> Self {
        TerminalPair::new(f(self.s), f(self.t))
    }
}

/// Normalizes, sorts and deduplicates a pair list.
pub fn canonical_pairs(pairs: impl IntoIterator<Item = TerminalPair>) -> Vec<TerminalPair> {
    let mut out: Vec<TerminalPair> = pairs.into_iter().map(TerminalPair::normalized).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Keeps the pairs with both endpoints inside `inside`.
pub fn restrict_pairs(pairs: &[TerminalPair], inside: &[bool]) -> Vec<TerminalPair> {
    pairs
        .iter()
        .copied()
        .filter(|p| inside.get(p.s) == Some(&true) && inside.get(p.t) == Some(&true))
        .collect()
}

/// Immutable rooted tree on the dense vertex set `0..n`.
///
/// Children lists are sorted by id, and the preorder visits children in that
/// order, so every subtree occupies a contiguous slice of the preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<usize>,
    preorder: Vec<VertexId>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl RootedTree {
    pub fn singleton() -> Self {
        RootedTree::from_edges(1, &[], 0).expect("singleton tree")
    }

    /// Builds a tree from an undirected edge list, rooted at `root`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)], root: VertexId) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotATree("empty vertex set".into()));
        }
        if root >= n {
            return Err(Error::BadVertex(root));
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::BadVertex(u));
            }
            if v >= n {
                return Err(Error::BadVertex(v));
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached != n {
            return Err(Error::NotATree("edges contain a cycle or leave the graph disconnected".into()));
        }
        Ok(RootedTree::from_parent_array(root, parent))
    }

    /// Builds a tree from a parent array with exactly one `None` entry.
    pub fn from_parents(parent: Vec<Option<VertexId>>) -> Result<Self> {
        let n = parent.len();
        let roots: Vec<VertexId> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::NotATree(format!("{} roots", roots.len())));
        }
        let edges: Vec<(VertexId, VertexId)> = (0..n)
            .filter_map(|v| parent[v].map(|p| (p, v)))
            .collect();
        RootedTree::from_edges(n, &edges, roots[0])
    }

    fn from_parent_array(root: VertexId, parent: Vec<Option<VertexId>>) -> Self {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        let mut depth = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            tin[u] = preorder.len();
            preorder.push(u);
            for &c in children[u].iter().rev() {
                depth[c] = depth[u] + 1;
                stack.push(c);
            }
        }
        let mut size = vec![1usize; n];
        for &u in preorder.iter().rev() {
            if let Some(p) = parent[u] {
                size[p] += size[u];
            }
        }
        for v in 0..n {
            tout[v] = tin[v] + size[v] - 1;
        }
        RootedTree {
            root,
            parent,
            children,
            depth,
            preorder,
            tin,
            tout,
        }
    }

    /// Same undirected tree rooted at `root`.
    pub fn rerooted(&self, root: VertexId) -> Result<Self> {
        self.check(root)?;
        if root == self.root {
            return Ok(self.clone());
        }
        RootedTree::from_edges(self.n(), &self.edges(), root)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    pub fn preorder(&self) -> &[VertexId] {
        &self.preorder
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.parent[v].into_iter().chain(self.children[v].iter().copied())
    }

    /// Edges as `(parent, child)`, ordered by child id.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.n())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::BadVertex(v))
        }
    }

    /// True when `a` is `b` or an ancestor of `b`.
    pub fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    /// Vertices of `T_u` in preorder, starting with `u`.
    pub fn subtree(&self, u: VertexId) -> &[VertexId] {
        &self.preorder[self.tin[u]..=self.tout[u]]
    }

    pub fn subtree_size(&self, u: VertexId) -> usize {
        self.tout[u] - self.tin[u] + 1
    }

    pub fn lca(&self, u: VertexId, v: VertexId) -> Result<VertexId> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.lca_of(u, v))
    }

    pub(crate) fn lca_of(&self, mut u: VertexId, mut v: VertexId) -> VertexId {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        u
    }

    /// The unique path from `x` to `y`, both ends included.
    pub fn path_between(&self, x: VertexId, y: VertexId) -> Result<Vec<VertexId>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.path_of(x, y))
    }

    pub(crate) fn path_of(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        let l = self.lca_of(x, y);
        let mut head = Vec::new();
        let mut u = x;
        while u != l {
            head.push(u);
            u = self.parent[u].unwrap();
        }
        head.push(l);
        let mut tail = Vec::new();
        let mut v = y;
        while v != l {
            tail.push(v);
            v = self.parent[v].unwrap();
        }
        head.extend(tail.into_iter().rev());
        head
    }

    /// Path from ancestor `y` down to `x`; `None` if `y` is not an ancestor of `x`.
    pub fn downward_path(&self, y: VertexId, x: VertexId) -> Option<Vec<VertexId>> {
        if !self.is_ancestor(y, x) {
            return None;
        }
        let mut path = vec![x];
        let mut u = x;
        while u != y {
            u = self.parent[u].unwrap();
            path.push(u);
        }
        path.reverse();
        Some(path)
    }

    /// The child of `u` whose subtree contains the strict descendant `x`.
    pub fn child_toward(&self, u: VertexId, x: VertexId) -> Option<VertexId> {
        if u == x || !self.is_ancestor(u, x) {
            return None;
        }
        let mut v = x;
        while self.parent[v] != Some(u) {
            v = self.parent[v].unwrap();
        }
        Some(v)
    }

    /// True when the path of `pair` passes through `v`.
    pub fn path_contains(&self, pair: TerminalPair, v: VertexId) -> bool {
        let l = self.lca_of(pair.s, pair.t);
        self.is_ancestor(l, v) && (self.is_ancestor(v, pair.s) || self.is_ancestor(v, pair.t))
    }

    /// Pairs whose path contains `v`.
    pub fn pairs_through(&self, pairs: &[TerminalPair], v: VertexId) -> Vec<TerminalPair> {
        pairs
            .iter()
            .copied()
            .filter(|&p| self.path_contains(p, v))
            .collect()
    }

    /// Number of pair paths through each vertex.
    pub fn path_loads(&self, pairs: &[TerminalPair]) -> Vec<usize> {
        // Difference counting on the rooted tree: +1 at each endpoint, -1 at
        // the lca and -1 at the lca's parent, then sum over subtrees.
        let mut acc = vec![0i64; self.n()];
        for p in pairs {
            let l = self.lca_of(p.s, p.t);
            acc[p.s] += 1;
            acc[p.t] += 1;
            acc[l] -= 1;
            if let Some(q) = self.parent[l] {
                acc[q] -= 1;
            }
        }
        for &u in self.preorder.iter().rev() {
            if let Some(q) = self.parent[u] {
                acc[q] += acc[u];
            }
        }
        acc.into_iter().map(|c| c as usize).collect()
    }

    /// Minimal superset of `xs` closed under pairwise lca, sorted by id.
    pub fn lca_closure(&self, xs: &[VertexId]) -> Result<Vec<VertexId>> {
        for &x in xs {
            self.check(x)?;
        }
        let mut by_tin: Vec<VertexId> = xs.to_vec();
        by_tin.sort_unstable_by_key(|&v| self.tin[v]);
        by_tin.dedup();
        let mut out = by_tin.clone();
        for w in by_tin.windows(2) {
            out.push(self.lca_of(w[0], w[1]));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Branching vertices (degree ≥ 3) and leaves (degree 1), both sorted.
    pub fn degree_classes(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        let mut branching = Vec::new();
        let mut leaves = Vec::new();
        for v in 0..self.n() {
            match self.degree(v) {
                1 => leaves.push(v),
                d if d >= 3 => branching.push(v),
                _ => {}
            }
        }
        (branching, leaves)
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.degree(v) == 1).count()
    }

    pub fn subtree_views(&self, u: VertexId, x: Option<VertexId>) -> Result<SubtreeViews> {
        self.check(u)?;
        let t_u = self.subtree(u).to_vec();
        let t_dag_u = t_u[1..].to_vec();
        let (t_u_x, t_dag_u_x) = match x {
            None => (None, None),
            Some(x) => {
                self.check(x)?;
                let c = self
                    .child_toward(u, x)
                    .ok_or(Error::NotDescendant { y: u, x })?;
                let branch = self.subtree(c).to_vec();
                let mut with_u = vec![u];
                with_u.extend_from_slice(&branch);
                (Some(with_u), Some(branch))
            }
        };
        Ok(SubtreeViews {
            t_u,
            t_dag_u,
            t_u_x,
            t_dag_u_x,
        })
    }

    /// Induced forest on a vertex subset.
    pub fn forest(&self, vertices: &[VertexId]) -> Forest<'_> {
        let mut member = vec![false; self.n()];
        for &v in vertices {
            member[v] = true;
        }
        Forest { tree: self, member }
    }
}

/// Vertex sets of `T_u`, `T†_u`, and (when `x` is given) `T_{u,x}` and `T†_{u,x}`,
/// each listed in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeViews {
    pub t_u: Vec<VertexId>,
    pub t_dag_u: Vec<VertexId>,
    pub t_u_x: Option<Vec<VertexId>>,
    pub t_dag_u_x: Option<Vec<VertexId>>,
}

/// An induced subforest of a host tree.
#[derive(Clone, Debug)]
pub struct Forest<'a> {
    tree: &'a RootedTree,
    member: Vec<bool>,
}

impl<'a> Forest<'a> {
    pub fn whole(tree: &'a RootedTree) -> Self {
        Forest {
            tree,
            member: vec![true; tree.n()],
        }
    }

    pub fn tree(&self) -> &RootedTree {
        self.tree
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn membership(&self) -> &[bool] {
        &self.member
    }

    fn local_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.tree.neighbors(v).filter(|&u| self.member[u])
    }

    /// Connected components, each sorted by id, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.tree.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !self.member[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.local_neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Each component as an ordered path starting at its smallest-id endpoint.
    pub fn as_paths(&self) -> Result<Vec<Vec<VertexId>>> {
        let mut out = Vec::new();
        for comp in self.components() {
            let mut start = None;
            for &v in &comp {
                let deg = self.local_neighbors(v).count();
                if deg > 2 {
                    return Err(Error::Input(format!("component containing {v} is not a path")));
                }
                if deg <= 1 && start.is_none() {
                    start = Some(v);
                }
            }
            let mut prev = None;
            let mut cur = start.expect("a finite tree component has an endpoint");
            let mut path = vec![cur];
            loop {
                let next = self.local_neighbors(cur).find(|&u| Some(u) != prev);
                match next {
                    Some(u) => {
                        prev = Some(cur);
                        cur = u;
                        path.push(u);
                    }
                    None => break,
                }
            }
            out.push(path);
        }
        Ok(out)
    }
}

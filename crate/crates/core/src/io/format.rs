//! The `wmctree` text format.
//!
//! ```text
//! wmctree 1 <n> <m_pairs>
//! e <u> <v>                 (n - 1 lines)
//! w <v> <weight|*>          (n lines, `*` = undeletable)
//! p <s> <t>                 (m_pairs lines)
//! budget w <w>              (optional)
//! budget k <k>              (optional)
//! ```
//!
//! Ids are 0-based; `#` starts a comment. Parsed trees are rooted at 0.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::instance::{Instance, Weight, WeightMap};
use crate::tree::{RootedTree, TerminalPair, VertexId};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Header {
    n: usize,
    m: usize,
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut edges = Vec::new();
    let mut uf: Vec<usize> = Vec::new();
    let mut weights: Vec<Option<Weight>> = Vec::new();
    let mut pairs = Vec::new();
    let mut budget_w = None;
    let mut budget_k = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| err(line, format!("expected a non-negative integer, found `{s}`")))
        };
        let Some(h) = &header else {
            match fields.as_slice() {
                ["wmctree", "1", n, m] => {
                    let n = num(n)? as usize;
                    if n == 0 {
                        return Err(err(line, "not a tree: no vertices"));
                    }
                    header = Some(Header { n, m: num(m)? as usize });
                    uf = (0..n).collect();
                    weights = vec![None; n];
                    continue;
                }
                ["wmctree", v, ..] => return Err(err(line, format!("unsupported version {v}"))),
                _ => return Err(err(line, "expected header `wmctree 1 <n> <m_pairs>`")),
            }
        };
        let n = h.n;
        let vertex = |s: &str| -> Result<VertexId> {
            let v = num(s)? as usize;
            if v < n {
                Ok(v)
            } else {
                Err(err(line, format!("bad vertex {v}")))
            }
        };
        match fields.as_slice() {
            ["e", u, v] => {
                let (u, v) = (vertex(u)?, vertex(v)?);
                let (a, b) = (find(&mut uf, u), find(&mut uf, v));
                if a == b {
                    return Err(err(line, format!("not a tree: edge ({u}, {v}) closes a cycle")));
                }
                uf[a] = b;
                edges.push((u, v));
            }
            ["w", v, w] => {
                let v = vertex(v)?;
                if weights[v].is_some() {
                    return Err(err(line, format!("duplicate weight for vertex {v}")));
                }
                weights[v] = Some(if *w == "*" {
                    Weight::Undeletable
                } else {
                    Weight::Finite(num(w)?)
                });
            }
            ["p", s, t] => pairs.push(TerminalPair::new(vertex(s)?, vertex(t)?)),
            ["budget", "w", w] => budget_w = Some(num(w)?),
            ["budget", "k", k] => budget_k = Some(num(k)?),
            _ => return Err(err(line, format!("unrecognized line `{body}`"))),
        }
    }

    let Some(h) = header else {
        return Err(err(last_line.max(1), "missing header"));
    };
    if edges.len() != h.n - 1 {
        return Err(err(
            last_line,
            format!("not a tree: {} edges for {} vertices", edges.len(), h.n),
        ));
    }
    if pairs.len() != h.m {
        return Err(err(
            last_line,
            format!("header announces {} pairs, found {}", h.m, pairs.len()),
        ));
    }
    let weights: Vec<Weight> = weights
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| err(last_line, format!("missing weight for vertex {v}"))))
        .collect::<Result<_>>()?;
    let tree = RootedTree::from_edges(h.n, &edges, 0).map_err(|e| err(last_line, e.to_string()))?;
    Instance::new(tree, pairs, WeightMap::new(weights), budget_w, budget_k)
        .map_err(|e| err(last_line, e.to_string()))
}

/// Canonical text: edges as `(min, max)` sorted, weights by id, pairs
/// normalized and sorted, then budgets.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "wmctree 1 {} {}", instance.n(), instance.pairs.len());
    let mut edges: Vec<(VertexId, VertexId)> = instance
        .tree
        .edges()
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    for (u, v) in edges {
        let _ = writeln!(out, "e {u} {v}");
    }
    for (v, w) in instance.weights.as_slice().iter().enumerate() {
        let _ = writeln!(out, "w {v} {w}");
    }
    for p in &instance.pairs {
        let _ = writeln!(out, "p {} {}", p.s, p.t);
    }
    if let Some(w) = instance.budget_w {
        let _ = writeln!(out, "budget w {w}");
    }
    if let Some(k) = instance.budget_k {
        let _ = writeln!(out, "budget k {k}");
    }
    out
}

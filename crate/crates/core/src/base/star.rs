//! Multicut on subdivided stars (trees with at most one branching vertex).

use crate::base::arcless::{arcless_solve, ArclessConstraint, ArclessProblem};
use crate::base::path::{a_path, PathDpTable};
use crate::error::{Error, Result};
use crate::instance::{Solution, Weight, WeightMap};
use crate::par;
use crate::tree::{Forest, RootedTree, TerminalPair, VertexId};

/// A leg after folding: the kept prefix, its adjusted weights, and for each
/// kept position the path witness (in host ids) charged to it.
struct Leg {
    vertices: Vec<VertexId>,
    weights: Vec<Weight>,
    folded: Vec<Vec<VertexId>>,
}

/// Minimum-weight multicut of a subdivided star.
///
/// Branches on whether the center `r` is deleted. If not, pairs inside a
/// single leg are folded into the weights of the leg prefix above them and
/// replaced by one pair `(r, z)`; what remains passes through `r` and is
/// solved by guessing which legs get cut and calling [`arcless_solve`].
pub fn a_star(
    tree: &RootedTree,
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<Option<Solution>> {
    for p in pairs {
        tree.check(p.s)?;
        tree.check(p.t)?;
    }
    let (branching, _) = tree.degree_classes();
    let r = match branching.as_slice() {
        [] => return a_path(&Forest::whole(tree), pairs, weights),
        [r] => *r,
        _ => {
            return Err(Error::Input(format!(
                "{} branching vertices; expected at most one",
                branching.len()
            )))
        }
    };

    let n = tree.n();
    let mut leg_of = vec![usize::MAX; n];
    let mut pos = vec![0usize; n];
    let mut legs: Vec<Vec<VertexId>> = Vec::new();
    let mut starts: Vec<VertexId> = tree.neighbors(r).collect();
    starts.sort_unstable();
    for c in starts {
        let mut leg = vec![c];
        let (mut prev, mut cur) = (r, c);
        while let Some(next) = tree.neighbors(cur).find(|&u| u != prev) {
            leg.push(next);
            prev = cur;
            cur = next;
        }
        for (i, &v) in leg.iter().enumerate() {
            leg_of[v] = legs.len();
            pos[v] = i;
        }
        legs.push(leg);
    }

    let with_center = match weights.get(r).finite() {
        Some(wr) => {
            let rest: Vec<VertexId> = (0..n).filter(|&v| v != r).collect();
            let inner: Vec<TerminalPair> = pairs
                .iter()
                .copied()
                .filter(|p| p.s != r && p.t != r && leg_of[p.s] == leg_of[p.t])
                .collect();
            a_path(&tree.forest(&rest), &inner, weights)?.map(|s| {
                let mut vs = s.vertices().to_vec();
                vs.push(r);
                debug_assert_eq!(weights.total(&vs), Some(s.total_weight() + wr));
                vs
            })
        }
        None => None,
    };

    let without_center = if pairs.iter().any(|p| p.s == r && p.t == r) {
        None
    } else {
        solve_center_kept(r, &legs, &leg_of, &pos, pairs, weights)?
    };

    let total = |vs: &Vec<VertexId>| weights.total(vs).expect("witness is deletable");
    let best = match (with_center, without_center) {
        (Some(a), Some(b)) => Some(if total(&a) < total(&b) { a } else { b }),
        (a, b) => a.or(b),
    };
    Ok(best.map(|vs| Solution::new(vs, weights).expect("witness is deletable")))
}

fn solve_center_kept(
    r: VertexId,
    raw_legs: &[Vec<VertexId>],
    leg_of: &[usize],
    pos: &[usize],
    pairs: &[TerminalPair],
    weights: &WeightMap,
) -> Result<Option<Vec<VertexId>>> {
    let mut constraints: Vec<ArclessConstraint> = Vec::new();
    let unary = |leg, depth| ArclessConstraint {
        leg_a: leg,
        alpha: depth,
        leg_b: leg,
        beta: depth,
    };

    // Fold each leg that holds a pair strictly inside it.
    let mut legs = Vec::with_capacity(raw_legs.len());
    let mut cut_off = vec![usize::MAX; raw_legs.len()];
    for (li, leg) in raw_legs.iter().enumerate() {
        let inner: Vec<(usize, usize)> = pairs
            .iter()
            .filter(|p| p.s != r && p.t != r && leg_of[p.s] == li && leg_of[p.t] == li)
            .map(|p| (pos[p.s], pos[p.t]))
            .collect();
        let ws: Vec<Weight> = leg.iter().map(|&v| weights.get(v)).collect();
        if inner.is_empty() {
            legs.push(Leg {
                vertices: leg.clone(),
                weights: ws,
                folded: vec![Vec::new(); leg.len()],
            });
            continue;
        }
        let z = inner.iter().map(|&(a, b)| a.max(b)).min().unwrap();
        let len = leg.len();
        let rev_ws: Vec<Weight> = ws.iter().rev().copied().collect();
        let rev_iv: Vec<(usize, usize)> = inner
            .iter()
            .map(|&(a, b)| (len - 1 - a, len - 1 - b))
            .collect();
        let below = PathDpTable::build(&rev_ws, &rev_iv);
        let mut kept_ws = Vec::with_capacity(z + 1);
        let mut folded = Vec::with_capacity(z + 1);
        for p in 0..=z {
            let suffix = len - 1 - p;
            kept_ws.push(ws[p].plus(below.value(suffix)));
            folded.push(
                below
                    .witness(suffix)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|q| leg[len - 1 - q])
                    .collect(),
            );
        }
        legs.push(Leg {
            vertices: leg[..=z].to_vec(),
            weights: kept_ws,
            folded,
        });
        cut_off[li] = z;
        constraints.push(unary(li, z));
    }

    // Remaining pairs pass through r; those reaching past a fold point are
    // implied by that leg's (r, z) requirement.
    let beyond = |v: VertexId| v != r && pos[v] > cut_off[leg_of[v]] && cut_off[leg_of[v]] != usize::MAX;
    for p in pairs {
        if p.s == r && p.t == r {
            return Ok(None);
        }
        if p.s != r && p.t != r && leg_of[p.s] == leg_of[p.t] {
            continue;
        }
        if beyond(p.s) || beyond(p.t) {
            continue;
        }
        let c = match (p.s == r, p.t == r) {
            (true, _) => unary(leg_of[p.t], pos[p.t]),
            (_, true) => unary(leg_of[p.s], pos[p.s]),
            _ => ArclessConstraint {
                leg_a: leg_of[p.s],
                alpha: pos[p.s],
                leg_b: leg_of[p.t],
                beta: pos[p.t],
            },
        };
        constraints.push(c);
    }

    let mut involved: Vec<usize> = constraints.iter().flat_map(|c| [c.leg_a, c.leg_b]).collect();
    involved.sort_unstable();
    involved.dedup();
    let guesses = 1usize << involved.len();
    let results = par::map_indexed(guesses, |mask| {
        solve_guess(mask, &involved, &legs, &constraints)
    });
    let mut best: Option<(u64, Vec<(usize, usize)>)> = None;
    for res in results {
        if let Some((w, cuts)) = res? {
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, cuts));
            }
        }
    }
    Ok(best.map(|(_, cuts)| {
        let mut out = Vec::new();
        for (li, p) in cuts {
            out.push(legs[li].vertices[p]);
            out.extend_from_slice(&legs[li].folded[p]);
        }
        out
    }))
}

/// One leg-intersection guess: legs in `mask` are cut exactly once, the
/// others are left whole (so their side of every constraint fails).
fn solve_guess(
    mask: usize,
    involved: &[usize],
    legs: &[Leg],
    constraints: &[ArclessConstraint],
) -> Result<Option<(u64, Vec<(usize, usize)>)>> {
    let mut local = vec![usize::MAX; legs.len()];
    let mut problem = ArclessProblem::default();
    let mut chosen = Vec::new();
    for (bit, &li) in involved.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            local[li] = chosen.len();
            chosen.push(li);
            problem.legs.push(legs[li].vertices.clone());
            problem.weights.push(legs[li].weights.clone());
        }
    }
    for c in constraints {
        let a = local[c.leg_a] != usize::MAX;
        let b = local[c.leg_b] != usize::MAX;
        let (la, al, lb, be) = match (a, b) {
            (false, false) => return Ok(None),
            (true, false) => (c.leg_a, c.alpha, c.leg_a, c.alpha),
            (false, true) => (c.leg_b, c.beta, c.leg_b, c.beta),
            (true, true) => (c.leg_a, c.alpha, c.leg_b, c.beta),
        };
        problem.constraints.push(ArclessConstraint {
            leg_a: local[la],
            alpha: al,
            leg_b: local[lb],
            beta: be,
        });
    }
    Ok(arcless_solve(&problem)?.map(|(w, picks)| {
        (w, chosen.iter().copied().zip(picks).collect())
    }))
}

//! Exactly-one-cut-per-leg selection under pairwise depth constraints.

use crate::error::{Error, Result};
use crate::instance::Weight;
use crate::tree::VertexId;

/// Satisfied when leg `leg_a` is cut at position `<= alpha` or leg `leg_b`
/// is cut at position `<= beta`. A one-leg requirement uses the same leg and
/// threshold on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArclessConstraint {
    pub leg_a: usize,
    pub alpha: usize,
    pub leg_b: usize,
    pub beta: usize,
}

/// Legs hang off a common root (excluded); position 0 is next to the root.
#[derive(Clone, Debug, Default)]
pub struct ArclessProblem {
    pub legs: Vec<Vec<VertexId>>,
    pub weights: Vec<Vec<Weight>>,
    pub constraints: Vec<ArclessConstraint>,
}

impl ArclessProblem {
    fn validate(&self) -> Result<()> {
        if self.legs.len() != self.weights.len()
            || self.legs.iter().zip(&self.weights).any(|(l, w)| l.len() != w.len())
        {
            return Err(Error::Input("leg and weight shapes differ".into()));
        }
        for c in &self.constraints {
            for (leg, depth) in [(c.leg_a, c.alpha), (c.leg_b, c.beta)] {
                if leg >= self.legs.len() || depth >= self.legs[leg].len() {
                    return Err(Error::Input(format!(
                        "constraint references leg {leg} position {depth}"
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Enum<'a> {
    cands: Vec<Vec<(usize, u64)>>,
    /// Constraints checkable once leg `i` is assigned (both legs `<= i`).
    ready: Vec<Vec<&'a ArclessConstraint>>,
    rest_min: Vec<u64>,
    picked: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Enum<'_> {
    fn run(&mut self, leg: usize, cost: u64) {
        if let Some((b, _)) = &self.best {
            if cost + self.rest_min[leg] >= *b {
                return;
            }
        }
        if leg == self.cands.len() {
            self.best = Some((cost, self.picked.clone()));
            return;
        }
        // Cheapest (deepest) candidates first so a good incumbent appears early.
        for k in (0..self.cands[leg].len()).rev() {
            let (pos, c) = self.cands[leg][k];
            self.picked.push(pos);
            let ok = self.ready[leg]
                .iter()
                .all(|r| self.picked[r.leg_a] <= r.alpha || self.picked[r.leg_b] <= r.beta);
            if ok {
                self.run(leg + 1, cost + c);
            }
            self.picked.pop();
        }
    }
}

/// Cuts every leg exactly once at minimum total weight subject to the
/// constraints. Returns the weight and the chosen position on each leg.
///
/// Only strict prefix minima of each leg's weights are ever worth cutting:
/// moving a cut closer to the root at no extra cost keeps every constraint
/// satisfied. The search enumerates those positions with a
/// sum-of-remaining-minima bound.
pub fn arcless_solve(problem: &ArclessProblem) -> Result<Option<(u64, Vec<usize>)>> {
    problem.validate()?;
    let mut cands = Vec::with_capacity(problem.legs.len());
    for ws in &problem.weights {
        let mut list: Vec<(usize, u64)> = Vec::new();
        for (pos, w) in ws.iter().enumerate() {
            if let Some(w) = w.finite() {
                if list.last().is_none_or(|&(_, b)| w < b) {
                    list.push((pos, w));
                }
            }
        }
        if list.is_empty() {
            return Ok(None);
        }
        cands.push(list);
    }
    let legs = cands.len();
    let mut ready = vec![Vec::new(); legs];
    for c in &problem.constraints {
        ready[c.leg_a.max(c.leg_b)].push(c);
    }
    let mut rest_min = vec![0u64; legs + 1];
    for i in (0..legs).rev() {
        rest_min[i] = rest_min[i + 1] + cands[i].last().unwrap().1;
    }
    let mut e = Enum {
        cands,
        ready,
        rest_min,
        picked: Vec::with_capacity(legs),
        best: None,
    };
    e.run(0, 0);
    Ok(e.best)
}

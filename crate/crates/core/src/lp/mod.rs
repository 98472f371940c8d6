//! The path-covering LP relaxation, solved by constraint generation.
//!
//! The restricted LP over the generated paths is solved in its dual packing
//! form; the primal lengths are read off as the simplex multipliers.

mod simplex;

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{shortest_paths, Direction, Instance, LengthAssignment, VertexId, EPS};
use simplex::PackingLp;

/// A path constraint `sum_{v in path} x_v >= 1` for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathConstraint {
    pub pair: usize,
    pub path: Vec<VertexId>,
}

impl PathConstraint {
    pub fn length(&self, x: &LengthAssignment) -> f64 {
        self.path.iter().map(|&v| x.get(v)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct LpResult {
    /// Rescaled so that every pair is at distance at least 1.
    pub assignment: LengthAssignment,
    /// Optimum of the final restricted LP.
    pub value: f64,
    pub constraints_generated: usize,
    /// Separation rounds.
    pub iterations: usize,
    /// Restricted LP optimum after each round.
    pub history: Vec<f64>,
    pub constraints: Vec<PathConstraint>,
}

/// Shortest `s_i -> t_i` path and its length for every pair, sharing one
/// Dijkstra per distinct source.
fn pair_paths(inst: &Instance, x: &LengthAssignment) -> Vec<(f64, Option<Vec<VertexId>>)> {
    let mut by_source: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &(s, _)) in inst.pairs().iter().enumerate() {
        by_source.entry(s).or_default().push(i);
    }
    let mut out = vec![(f64::INFINITY, None); inst.pairs().len()];
    for (s, idx) in by_source {
        let sp = shortest_paths(inst.graph(), x.x(), s, Direction::Out, None, f64::INFINITY);
        for i in idx {
            let t = inst.pairs()[i].1;
            out[i] = (sp.dist[t], sp.path(t, Direction::Out));
        }
    }
    out
}

/// Most violated path constraint: the shortest pair path of length below
/// `1 - 1e-9`, shortest first and ties by pair index.
pub fn separation_oracle(inst: &Instance, x: &LengthAssignment) -> Option<PathConstraint> {
    pair_paths(inst, x)
        .into_iter()
        .enumerate()
        .filter(|(_, (d, _))| *d < 1.0 - EPS)
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .and_then(|(pair, (_, p))| p.map(|path| PathConstraint { pair, path }))
}

/// Fails if some pair is joined through infinite-cost vertices only.
fn check_separable(inst: &Instance) -> Result<()> {
    let g = inst.graph();
    for (pair, &(s, t)) in inst.pairs().iter().enumerate() {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                return Err(Error::Infeasible { pair });
            }
            for &w in g.out_neighbors(u) {
                if !seen[w] && inst.cost(w).is_infinite() {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(())
}

pub fn solve_lp(inst: &Instance) -> Result<LpResult> {
    let limit = 50 * inst.n().max(1) * inst.pairs().len().max(1);
    solve_lp_with_limit(inst, limit)
}

/// Constraint generation with an explicit cap on generated rows.
pub fn solve_lp_with_limit(inst: &Instance, limit: usize) -> Result<LpResult> {
    check_separable(inst)?;
    let n = inst.n();
    let finite = inst.finite_vertices();
    let mut row_of = vec![usize::MAX; n];
    for (r, &v) in finite.iter().enumerate() {
        row_of[v] = r;
    }
    let cap = finite
        .iter()
        .map(|&v| inst.cost(v).finite().expect("finite vertex"))
        .collect();
    let mut lp = PackingLp::new(cap);
    let mut constraints: Vec<PathConstraint> = Vec::new();
    let mut column_of: HashSet<Vec<VertexId>> = HashSet::new();
    let mut history = Vec::new();
    let mut iterations = 0;
    let lengths = |lp: &PackingLp| {
        let pi = lp.duals();
        let mut x = vec![0.0; n];
        for (r, &v) in finite.iter().enumerate() {
            x[v] = pi[r].max(0.0);
        }
        LengthAssignment::new(x)
    };

    loop {
        let x = lengths(&lp);
        let mut fresh = Vec::new();
        let mut stale = Vec::new();
        for (pair, (d, path)) in pair_paths(inst, &x).into_iter().enumerate() {
            if d >= 1.0 - EPS {
                continue;
            }
            let path = path.expect("finite distance has a path");
            if column_of.contains(&path) {
                stale.push(path);
            } else {
                fresh.push(PathConstraint { pair, path });
            }
        }
        if fresh.is_empty() && stale.is_empty() {
            break;
        }
        iterations += 1;
        if fresh.is_empty() {
            // Drift in the basis inverse; refactor and force the column in.
            lp.refactor();
            let mut progressed = false;
            for path in stale {
                let j = constraints.iter().position(|c| c.path == path).expect("known column");
                progressed |= lp.force_enter(j);
            }
            lp.solve();
            if !progressed {
                break;
            }
        } else {
            for c in fresh {
                let rows: Vec<usize> = c
                    .path
                    .iter()
                    .filter(|&&v| row_of[v] != usize::MAX)
                    .map(|&v| row_of[v])
                    .collect();
                if rows.is_empty() {
                    return Err(Error::Infeasible { pair: c.pair });
                }
                lp.add_column(rows);
                column_of.insert(c.path.clone());
                constraints.push(c);
            }
            if constraints.len() > limit {
                return Err(Error::IterationLimit { limit });
            }
            lp.solve();
        }
        history.push(lp.objective());
    }

    let value = lp.objective();
    let mut x = lengths(&lp).scaled(1.0 / (1.0 - EPS));
    let shortest = pair_paths(inst, &x)
        .iter()
        .map(|(d, _)| *d)
        .fold(f64::INFINITY, f64::min);
    if shortest < 1.0 && shortest > 0.0 {
        x = x.scaled(1.0 / shortest);
    }
    Ok(LpResult {
        assignment: x,
        value,
        constraints_generated: constraints.len(),
        iterations,
        history,
        constraints,
    })
}

//! Sequential ball cutting along a short shortest path.

use crate::error::{Error, Result};
use crate::graph::{shortest_paths, Direction, Instance, LengthAssignment, Region, VertexId, EPS};
use crate::region::{grow, GrowthParams};

/// Balls of one sweep in construction order.
#[derive(Clone, Debug)]
pub struct BallSequence {
    pub direction: Direction,
    pub balls: Vec<Region>,
    /// Index on the path of each ball's center.
    pub centers: Vec<usize>,
}

impl BallSequence {
    /// Position in `balls` of the ball containing each vertex.
    pub fn ball_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut of = vec![None; n];
        for (i, b) in self.balls.iter().enumerate() {
            for &u in &b.ball {
                of[u] = Some(i);
            }
        }
        of
    }
}

#[derive(Clone, Debug)]
pub struct PathCut {
    /// Union of all boundaries, sorted.
    pub cut: Vec<VertexId>,
    pub cost: f64,
    pub out_balls: BallSequence,
    pub in_balls: BallSequence,
}

/// Validates that `path` is a directed shortest path of length at most `delta`.
pub(crate) fn check_path(
    inst: &Instance,
    x: &LengthAssignment,
    path: &[VertexId],
    delta: f64,
) -> Result<()> {
    let g = inst.graph();
    let Some(&first) = path.first() else {
        return Err(Error::InvalidPath("empty path".into()));
    };
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::InvalidPath(format!("no edge {} -> {}", w[0], w[1])));
        }
    }
    let length: f64 = path.iter().map(|&v| x.get(v)).sum();
    if length > delta + EPS {
        return Err(Error::PathTooLong { length, delta });
    }
    // Prefixes being shortest implies every subpath is.
    let sp = shortest_paths(g, x.x(), first, Direction::Out, None, f64::INFINITY);
    let mut along = 0.0;
    for &v in path {
        along += x.get(v);
        if sp.dist[v] < along - EPS {
            return Err(Error::NotShortestPath { from: first, to: v, distance: sp.dist[v], along });
        }
    }
    Ok(())
}

fn sweep(
    inst: &Instance,
    x: &LengthAssignment,
    path: &[VertexId],
    params: &GrowthParams,
    dir: Direction,
) -> Result<BallSequence> {
    let n = inst.n();
    let mut alive = vec![true; n];
    let mut covered = vec![false; path.len()];
    let mut seq = BallSequence { direction: dir, balls: Vec::new(), centers: Vec::new() };
    let mut curr = match dir {
        Direction::Out => path.len() - 1,
        Direction::In => 0,
    };
    loop {
        let region = grow(inst.graph(), inst.costs(), x.x(), Some(&alive), path[curr], params, dir)?;
        for &u in &region.ball {
            alive[u] = false;
        }
        for (j, &v) in path.iter().enumerate() {
            if !alive[v] {
                covered[j] = true;
            }
        }
        seq.balls.push(region);
        seq.centers.push(curr);
        let next = match dir {
            Direction::Out => (0..curr).rev().find(|&j| !covered[j]),
            Direction::In => (curr + 1..path.len()).find(|&j| !covered[j]),
        };
        match next {
            Some(j) => curr = j,
            None => break,
        }
    }
    Ok(seq)
}

/// Cuts out-balls from the end of `path` backwards and in-balls from its
/// start forwards, each sweep in the graph left by its earlier balls.
pub fn path_cutting(
    inst: &Instance,
    x: &LengthAssignment,
    path: &[VertexId],
    params: &GrowthParams,
) -> Result<PathCut> {
    x.validate(inst)?;
    check_path(inst, x, path, params.delta)?;
    let out_balls = sweep(inst, x, path, params, Direction::Out)?;
    let in_balls = sweep(inst, x, path, params, Direction::In)?;
    let mut in_cut = vec![false; inst.n()];
    for b in out_balls.balls.iter().chain(&in_balls.balls) {
        for &v in &b.boundary {
            in_cut[v] = true;
        }
    }
    let cut: Vec<VertexId> = (0..inst.n()).filter(|&v| in_cut[v]).collect();
    let cost = cut.iter().map(|&v| inst.cost(v).finite().unwrap_or(f64::INFINITY)).fold(0.0, |a, b| a + b);
    Ok(PathCut { cut, cost, out_balls, in_balls })
}

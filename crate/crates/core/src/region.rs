//! Deterministic region growing around a single vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{shortest_paths, Cost, Digraph, Direction, Instance, LengthAssignment, Region, VertexId, EPS};

/// Radius grid parameters. `n` is the vertex count of the original instance
/// and stays fixed while the graph shrinks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthParams {
    pub delta: f64,
    pub levels: usize,
    pub n: usize,
}

/// `max(1, ceil(log2 n))`.
pub fn log_levels(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl GrowthParams {
    pub fn new(delta: f64, n: usize) -> Self {
        Self {
            delta,
            levels: log_levels(n),
            n: n.max(1),
        }
    }

    /// `delta / (6 L)`: the largest admissible vertex length and the grid spacing.
    pub fn step(&self) -> f64 {
        self.delta / (6.0 * self.levels as f64)
    }

    /// `r_i = i * step`.
    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.step()
    }

    /// Number of grid radii, `3 + 2L`.
    pub fn grid_len(&self) -> usize {
        3 + 2 * self.levels
    }

    /// `(6L / delta) (2 vol(B) + vol(V) / n)`.
    pub fn boundary_bound(&self, ball_volume: f64, current_volume: f64) -> f64 {
        (2.0 * ball_volume + current_volume / self.n as f64) / self.step()
    }
}

/// Grows an out- or in-ball around `v` whose boundary cost is charged to its volume.
pub fn region_grow(
    inst: &Instance,
    x: &LengthAssignment,
    v: VertexId,
    params: &GrowthParams,
    dir: Direction,
) -> Result<Region> {
    if v >= inst.n() {
        return Err(Error::VertexOutOfRange { id: v, n: inst.n() });
    }
    x.validate(inst)?;
    grow(inst.graph(), inst.costs(), x.x(), None, v, params, dir)
}

/// Boundary cost as (number of infinite-cost vertices, finite sum).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
struct BoundaryCost(usize, f64);

/// Region growing on the subgraph of `alive` vertices.
pub(crate) fn grow(
    g: &Digraph,
    costs: &[Cost],
    x: &[f64],
    alive: Option<&[bool]>,
    v: VertexId,
    params: &GrowthParams,
    dir: Direction,
) -> Result<Region> {
    let n = g.n();
    let is_alive = |u: VertexId| alive.map_or(true, |a| a[u]);
    let step = params.step();
    let mut current_volume = 0.0;
    for u in (0..n).filter(|&u| is_alive(u)) {
        if x[u] > step + EPS {
            return Err(Error::PreconditionLongVertex { vertex: u, length: x[u], step });
        }
        match costs[u] {
            Cost::Finite(c) => current_volume += c * x[u],
            Cost::Infinite if x[u] > 0.0 => return Err(Error::InfiniteVolume(u)),
            Cost::Infinite => {}
        }
    }
    let weight = |u: VertexId| costs[u].finite().map_or(0.0, |c| c * x[u]);

    let top = params.grid_len();
    let sp = shortest_paths(g, x, v, dir, alive, params.radius(top));
    let order = &sp.order;
    let vol_within = |r: f64| -> f64 {
        order
            .iter()
            .take_while(|&&u| sp.dist[u] <= r + EPS)
            .map(|&u| weight(u))
            .sum()
    };
    let slack = current_volume / params.n as f64;
    let i = (1..=top - 2)
        .find(|&i| {
            vol_within(params.radius(i + 2)) <= 2.0 * vol_within(params.radius(i)) + slack + EPS
        })
        .ok_or(Error::NoDoublingRadius(v))?;
    let (lo, hi) = (params.radius(i), params.radius(i + 1));

    let mut candidates = vec![lo];
    candidates.extend(
        order
            .iter()
            .map(|&u| sp.dist[u])
            .filter(|&d| d > lo + EPS && d < hi - EPS),
    );

    // Sweep the candidates in increasing order, adding vertices to the ball
    // and maintaining boundary hit counts.
    let neighbors = |u: VertexId| match dir {
        Direction::Out => g.out_neighbors(u),
        Direction::In => g.in_neighbors(u),
    };
    let cost_of = |u: VertexId| match costs[u] {
        Cost::Finite(c) => BoundaryCost(0, c),
        Cost::Infinite => BoundaryCost(1, 0.0),
    };
    let mut in_ball = vec![false; n];
    let mut hits = vec![0usize; n];
    let mut current = BoundaryCost(0, 0.0);
    let mut next = 0;
    let mut best: Option<(BoundaryCost, f64)> = None;
    for &r in &candidates {
        while next < order.len() && sp.dist[order[next]] <= r + EPS {
            let u = order[next];
            next += 1;
            in_ball[u] = true;
            if hits[u] > 0 {
                let c = cost_of(u);
                current = BoundaryCost(current.0 - c.0, current.1 - c.1);
            }
            for &w in neighbors(u) {
                if !in_ball[w] && is_alive(w) {
                    hits[w] += 1;
                    if hits[w] == 1 {
                        let c = cost_of(w);
                        current = BoundaryCost(current.0 + c.0, current.1 + c.1);
                    }
                }
            }
        }
        let better = match best {
            None => true,
            Some((b, _)) => current.0 < b.0 || (current.0 == b.0 && current.1 < b.1 - EPS),
        };
        if better {
            best = Some((current, r));
        }
    }
    let (_, radius) = best.expect("at least one candidate");

    let mut ball: Vec<VertexId> = order
        .iter()
        .copied()
        .filter(|&u| sp.dist[u] <= radius + EPS)
        .collect();
    ball.sort_unstable();
    let mut member = vec![false; n];
    for &u in &ball {
        member[u] = true;
    }
    let mut touched = vec![false; n];
    for &u in &ball {
        for &w in neighbors(u) {
            if !member[w] && is_alive(w) {
                touched[w] = true;
            }
        }
    }
    let boundary: Vec<VertexId> = (0..n).filter(|&w| touched[w]).collect();
    let boundary_cost = boundary.iter().map(|&w| costs[w].finite().unwrap_or(f64::INFINITY)).fold(0.0, |a, b| a + b);
    let ball_volume = ball.iter().map(|&u| weight(u)).fold(0.0, |a, b| a + b);
    Ok(Region {
        center: v,
        direction: dir,
        radius,
        ball,
        boundary,
        boundary_cost,
        ball_volume,
        current_volume,
    })
}

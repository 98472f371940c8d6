use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Cost, Digraph, Direction, Instance, LengthAssignment, VertexId, EPS};

#[derive(Clone, Copy, PartialEq)]
struct Key(f64, VertexId);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on (distance, id).
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source node-weighted shortest paths.
///
/// For `Direction::Out`, `dist[u] = d(source, u)` and `parent[u]` is the
/// predecessor of `u` on its shortest path. For `Direction::In`,
/// `dist[u] = d(u, source)` and `parent[u]` is the successor of `u`.
/// Both endpoints count towards the length, so `dist[source] = x_source`.
#[derive(Clone, Debug)]
pub(crate) struct ShortestPaths {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    /// Settled vertices in order of (distance, id).
    pub order: Vec<VertexId>,
}

impl ShortestPaths {
    /// Vertex sequence from the source to `v` (`Out`) or from `v` to the
    /// source (`In`), following the edge direction in both cases.
    pub fn path(&self, v: VertexId, dir: Direction) -> Option<Vec<VertexId>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut seq = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            seq.push(p);
            cur = p;
        }
        if dir == Direction::Out {
            seq.reverse();
        }
        Some(seq)
    }
}

/// Dijkstra restricted to `alive` vertices, settling only vertices within
/// `limit` (+ tolerance). Ties in the queue are broken by smaller id.
pub(crate) fn shortest_paths(
    g: &Digraph,
    x: &[f64],
    source: VertexId,
    dir: Direction,
    alive: Option<&[bool]>,
    limit: f64,
) -> ShortestPaths {
    let n = g.n();
    let is_alive = |v: VertexId| alive.map_or(true, |a| a[v]);
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    if is_alive(source) {
        dist[source] = x[source];
        heap.push(Key(x[source], source));
    }
    while let Some(Key(d, u)) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        if d > limit + EPS {
            break;
        }
        settled[u] = true;
        order.push(u);
        let next = match dir {
            Direction::Out => g.out_neighbors(u),
            Direction::In => g.in_neighbors(u),
        };
        for &w in next {
            if settled[w] || !is_alive(w) {
                continue;
            }
            let nd = d + x[w];
            if nd < dist[w] {
                dist[w] = nd;
                parent[w] = Some(u);
                heap.push(Key(nd, w));
            }
        }
    }
    for v in 0..n {
        if !settled[v] {
            dist[v] = f64::INFINITY;
            parent[v] = None;
        }
    }
    ShortestPaths {
        dist,
        parent,
        order,
    }
}

/// `d(u, v)`: minimum over directed `u -> v` paths of the sum of `x` over
/// every vertex on the path, endpoints included. `+inf` if unreachable.
pub fn distance(inst: &Instance, x: &LengthAssignment, u: VertexId, v: VertexId) -> f64 {
    shortest_paths(inst.graph(), x.x(), u, Direction::Out, None, f64::INFINITY).dist[v]
}

/// `B+(v, r)` or `B-(v, r)`, sorted.
pub fn ball(
    inst: &Instance,
    x: &LengthAssignment,
    v: VertexId,
    r: f64,
    dir: Direction,
) -> Vec<VertexId> {
    let mut b = shortest_paths(inst.graph(), x.x(), v, dir, None, r).order;
    b.sort_unstable();
    b
}

/// `Γ+(S)` (heads of edges leaving `S`) or `Γ-(S)` (tails of edges entering `S`), sorted.
pub fn boundary(inst: &Instance, set: &[VertexId], dir: Direction) -> Vec<VertexId> {
    boundary_within(inst.graph(), set, dir, None)
}

pub(crate) fn boundary_within(
    g: &Digraph,
    set: &[VertexId],
    dir: Direction,
    alive: Option<&[bool]>,
) -> Vec<VertexId> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut hit = vec![false; g.n()];
    for &v in set {
        let next = match dir {
            Direction::Out => g.out_neighbors(v),
            Direction::In => g.in_neighbors(v),
        };
        for &w in next {
            if !inside[w] && alive.map_or(true, |a| a[w]) {
                hit[w] = true;
            }
        }
    }
    (0..g.n()).filter(|&v| hit[v]).collect()
}

/// `vol(S) = sum c(v) x_v`. Infinite-cost vertices contribute zero when
/// their length is zero and are an error otherwise.
pub fn volume(inst: &Instance, x: &LengthAssignment, set: &[VertexId]) -> Result<f64> {
    let mut vol = 0.0;
    for &v in set {
        match inst.cost(v) {
            Cost::Finite(c) => vol += c * x.get(v),
            Cost::Infinite if x.get(v) == 0.0 => {}
            Cost::Infinite => return Err(Error::InfiniteVolume(v)),
        }
    }
    Ok(vol)
}

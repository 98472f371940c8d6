//! Small builders and brute-force oracles shared by unit tests.

use std::collections::VecDeque;

use crate::graph::{Cost, Digraph, Instance, VertexId};

pub const INF: f64 = f64::INFINITY;

/// Instance from coordinates; a cost of `INF` marks an infinite-cost vertex.
pub fn build(
    coords: &[[f64; 2]],
    edges: &[(VertexId, VertexId)],
    costs: &[f64],
    pairs: &[(VertexId, VertexId)],
) -> Instance {
    let g = Digraph::from_coords(coords.len(), edges.to_vec(), coords).unwrap();
    let costs = costs
        .iter()
        .map(|&c| if c.is_infinite() { Cost::Infinite } else { Cost::Finite(c) })
        .collect();
    Instance::new(g, costs, pairs.to_vec()).unwrap().with_coords(coords.to_vec())
}

/// Directed reachability avoiding `removed`.
pub fn reaches(inst: &Instance, removed: &[bool], s: VertexId, t: VertexId) -> bool {
    if removed[s] || removed[t] {
        return false;
    }
    let mut seen = vec![false; inst.n()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if u == t {
            return true;
        }
        for &(a, b) in inst.graph().edges() {
            if a == u && !removed[b] && !seen[b] {
                seen[b] = true;
                q.push_back(b);
            }
        }
    }
    false
}

/// Minimum multicut cost by scanning every subset of finite-cost vertices.
pub fn exact_oracle(inst: &Instance) -> f64 {
    let finite = inst.finite_vertices();
    assert!(finite.len() <= 20);
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << finite.len()) {
        let mut removed = vec![false; inst.n()];
        let mut cost = 0.0;
        for (i, &v) in finite.iter().enumerate() {
            if mask >> i & 1 == 1 {
                removed[v] = true;
                cost += inst.cost(v).finite().unwrap();
            }
        }
        if cost < best && inst.pairs().iter().all(|&(s, t)| !reaches(inst, &removed, s, t)) {
            best = cost;
        }
    }
    best
}

/// Node-length distance by Bellman-Ford relaxation over the edge list.
pub fn bellman_ford(inst: &Instance, x: &[f64], s: VertexId) -> Vec<f64> {
    let n = inst.n();
    let mut d = vec![f64::INFINITY; n];
    d[s] = x[s];
    for _ in 0..n {
        for &(a, b) in inst.graph().edges() {
            if d[a] + x[b] < d[b] {
                d[b] = d[a] + x[b];
            }
        }
    }
    d
}

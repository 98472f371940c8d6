//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's metric or reachability code.
#![allow(dead_code)]

use std::collections::VecDeque;

use planar_multicut::generate::{generate, GenKind, GenSpec};
use planar_multicut::graph::{Dart, Digraph, Instance, LengthAssignment, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn instance(kind: GenKind, n: usize, k: usize, seed: u64) -> Instance {
    generate(&GenSpec::new(kind, n, k, seed)).expect("generator spec is valid")
}

/// Uniform lengths in `[0, step]` on finite-cost vertices, about a fifth of them zero.
pub fn random_lengths(inst: &Instance, step: f64, seed: u64) -> LengthAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..inst.n())
        .map(|v| {
            let draw: f64 = rng.gen_range(0.0..=step);
            let zero = rng.gen_bool(0.2);
            if inst.cost(v).is_infinite() || zero {
                0.0
            } else {
                draw
            }
        })
        .collect();
    LengthAssignment::new(x)
}

/// A generated graph with its pairs dropped; infinite costs stay. Moves to
/// the next seed when no separable pair exists.
pub fn pairless_instance(kind: GenKind, n: usize, seed: u64) -> Instance {
    (seed..)
        .find_map(|s| generate(&GenSpec::new(kind, n, 1, s)).ok())
        .expect("some seed works")
        .without_pairs()
}

pub fn cost(inst: &Instance, v: VertexId) -> f64 {
    inst.cost(v).finite().unwrap_or(f64::INFINITY)
}

pub fn volume(inst: &Instance, x: &LengthAssignment, set: impl IntoIterator<Item = VertexId>) -> f64 {
    set.into_iter().filter(|&v| x.get(v) > 0.0).map(|v| cost(inst, v) * x.get(v)).sum::<f64>() + 0.0
}

/// Node-length distances between all pairs; both endpoints count.
pub fn floyd(inst: &Instance, x: &LengthAssignment) -> Vec<Vec<f64>> {
    let n = inst.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for v in 0..n {
        d[v][v] = x.get(v);
    }
    for &(a, b) in inst.graph().edges() {
        d[a][b] = d[a][b].min(x.get(a) + x.get(b));
    }
    for k in 0..n {
        for i in 0..n {
            if !d[i][k].is_finite() {
                continue;
            }
            for j in 0..n {
                let via = d[i][k] + d[k][j] - x.get(k);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Single-source node-length distances by Bellman-Ford over the edge list.
pub fn bellman_ford(inst: &Instance, x: &LengthAssignment, s: VertexId, alive: &[bool], reverse: bool) -> Vec<f64> {
    let n = inst.n();
    let mut d = vec![f64::INFINITY; n];
    if !alive[s] {
        return d;
    }
    d[s] = x.get(s);
    for _ in 0..n {
        let mut changed = false;
        for &(a, b) in inst.graph().edges() {
            let (a, b) = if reverse { (b, a) } else { (a, b) };
            if alive[a] && alive[b] && d[a] + x.get(b) < d[b] {
                d[b] = d[a] + x.get(b);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Reachability over the raw edge list, skipping removed vertices.
pub fn reach(inst: &Instance, removed: &[bool], s: VertexId, reverse: bool) -> Vec<bool> {
    let n = inst.n();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in inst.graph().edges() {
        if reverse {
            adj[b].push(a);
        } else {
            adj[a].push(b);
        }
    }
    let mut seen = vec![false; n];
    if removed[s] {
        return seen;
    }
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    seen
}

pub fn mask(n: usize, set: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

fn find(p: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while p[r] != r {
        r = p[r];
    }
    let mut c = v;
    while p[c] != r {
        let next = p[c];
        p[c] = r;
        c = next;
    }
    r
}

/// Union-find labels of the undirected components of the surviving vertices;
/// removed vertices get `usize::MAX`.
pub fn union_find(inst: &Instance, removed: &[bool]) -> Vec<usize> {
    let n = inst.n();
    let mut p: Vec<usize> = (0..n).collect();
    for &(a, b) in inst.graph().edges() {
        if !removed[a] && !removed[b] {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            p[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).map(|v| if removed[v] { usize::MAX } else { find(&mut p, v) }).collect()
}

pub fn largest_component(inst: &Instance, removed: &[bool]) -> usize {
    let labels = union_find(inst, removed);
    let mut size = vec![0; inst.n()];
    for &l in labels.iter().filter(|&&l| l != usize::MAX) {
        size[l] += 1;
    }
    size.into_iter().max().unwrap_or(0)
}

/// Calls `visit` on every simple directed path of at least one vertex.
pub fn simple_paths(inst: &Instance, removed: &[bool], visit: &mut dyn FnMut(&[VertexId])) {
    let n = inst.n();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in inst.graph().edges() {
        adj[a].push(b);
    }
    fn go(u: VertexId, adj: &[Vec<VertexId>], removed: &[bool], on: &mut [bool], path: &mut Vec<VertexId>, visit: &mut dyn FnMut(&[VertexId])) {
        on[u] = true;
        path.push(u);
        visit(path);
        for &w in &adj[u] {
            if !removed[w] && !on[w] {
                go(w, adj, removed, on, path, visit);
            }
        }
        path.pop();
        on[u] = false;
    }
    let mut on = vec![false; n];
    let mut path = Vec::new();
    for s in (0..n).filter(|&s| !removed[s]) {
        go(s, &adj, removed, &mut on, &mut path, visit);
    }
}

/// Cheapest vertex set, among finite-cost vertices, separating every pair.
pub fn brute_multicut(inst: &Instance) -> f64 {
    let finite: Vec<VertexId> = (0..inst.n()).filter(|&v| !inst.is_terminal(v)).collect();
    assert!(finite.len() <= 20);
    let mut best = f64::INFINITY;
    for m in 0u32..(1 << finite.len()) {
        let chosen: Vec<VertexId> = (0..finite.len()).filter(|&i| m >> i & 1 == 1).map(|i| finite[i]).collect();
        let c: f64 = chosen.iter().map(|&v| cost(inst, v)).sum();
        if c >= best {
            continue;
        }
        let removed = mask(inst.n(), &chosen);
        if inst.pairs().iter().all(|&(s, t)| !reach(inst, &removed, s, false)[t]) {
            best = c;
        }
    }
    best
}

/// Surviving `s -> t` pairs in `G \ cut`.
pub fn separated(inst: &Instance, cut: &[VertexId]) -> bool {
    let removed = mask(inst.n(), cut);
    inst.pairs().iter().all(|&(s, t)| !reach(inst, &removed, s, false)[t])
}

/// Shortest-path tree from `s`; parents only change on strict improvement.
pub fn shortest_tree(inst: &Instance, x: &LengthAssignment, s: VertexId) -> (Vec<f64>, Vec<Option<VertexId>>) {
    let n = inst.n();
    let mut d = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    d[s] = x.get(s);
    for _ in 0..n {
        let mut changed = false;
        for &(a, b) in inst.graph().edges() {
            if d[a] + x.get(b) < d[b] {
                d[b] = d[a] + x.get(b);
                parent[b] = Some(a);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (d, parent)
}

/// The farthest vertex within `delta` of `s` and the tree path to it.
pub fn spine(inst: &Instance, x: &LengthAssignment, s: VertexId, delta: f64) -> Vec<VertexId> {
    let (d, parent) = shortest_tree(inst, x, s);
    let t = (0..inst.n())
        .filter(|&v| d[v] <= delta)
        .max_by(|&a, &b| d[a].total_cmp(&d[b]).then(b.cmp(&a)))
        .unwrap_or(s);
    let mut path = vec![t];
    while let Some(p) = parent[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();
    path
}

/// Pairs `u, w` joined through some vertex of `path` in `G \ cut` that are
/// farther apart than `3 delta`.
pub fn lemma7_violations(inst: &Instance, x: &LengthAssignment, path: &[VertexId], cut: &[VertexId], delta: f64) -> usize {
    let n = inst.n();
    let removed = mask(n, cut);
    let d = floyd(inst, x);
    let fwd: Vec<Vec<bool>> = path.iter().map(|&p| reach(inst, &removed, p, false)).collect();
    let back: Vec<Vec<bool>> = path.iter().map(|&p| reach(inst, &removed, p, true)).collect();
    let mut bad = 0;
    for u in 0..n {
        for w in 0..n {
            let through = (0..path.len()).any(|j| back[j][u] && fwd[j][w]);
            if through && d[u][w] > 3.0 * delta + TOL {
                bad += 1;
            }
        }
    }
    bad
}

/// Face count of a connected embedding, walking each face clockwise: leave
/// along a dart, then turn to the dart before its twin in the twin's rotation.
pub fn clockwise_faces(g: &Digraph) -> usize {
    if g.edge_count() == 0 {
        return 1;
    }
    let vertex = |d: Dart| {
        let (t, h) = g.edges()[d.edge()];
        if d.is_head_side() {
            h
        } else {
            t
        }
    };
    let mut seen = vec![false; 2 * g.edge_count()];
    let mut faces = 0;
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = Dart(start);
        while !seen[d.0] {
            seen[d.0] = true;
            let twin = d.twin();
            let rot = g.rotation(vertex(twin));
            let i = rot.iter().position(|&e| e == twin).expect("twin is in its rotation");
            d = rot[(i + rot.len() - 1) % rot.len()];
        }
    }
    faces
}

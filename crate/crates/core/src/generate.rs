//! Seeded generators for embedded planar instances.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cost, Digraph, Instance, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    /// Row-major grid on unit squares; the last row may be partial.
    Grid,
    /// Random points inserted one at a time into a triangle.
    Triangulation,
    /// Columns of vertices with edges to the next column. Always oriented
    /// forwards, whatever the orientation rule.
    LayeredDag,
}

impl GenKind {
    fn name(self) -> &'static str {
        match self {
            GenKind::Grid => "grid",
            GenKind::Triangulation => "triangulation",
            GenKind::LayeredDag => "layered-dag",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [GenKind::Grid, GenKind::Triangulation, GenKind::LayeredDag]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown generator kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Each edge flips a coin.
    Random,
    /// Lower id to higher id.
    Forward,
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Orientation::Random),
            "forward" => Ok(Orientation::Forward),
            _ => Err(Error::InvalidSpec(format!("unknown orientation {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Number of terminal pairs.
    pub k: usize,
    /// Costs are uniform integers in `[1, max_cost]`.
    pub max_cost: u32,
    pub orientation: Orientation,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, k: usize, seed: u64) -> Self {
        Self { kind, n, k, max_cost: 10, orientation: Orientation::Random, seed }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!("n = {} is below 2", self.n)));
        }
        if self.k < 1 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        if self.max_cost < 1 {
            return Err(Error::InvalidSpec("max_cost must be at least 1".into()));
        }
        if self.kind == GenKind::Triangulation && self.n < 3 {
            return Err(Error::InvalidSpec("a triangulation needs 3 vertices".into()));
        }
        Ok(())
    }
}

fn grid(n: usize) -> (Vec<[f64; 2]>, Vec<(VertexId, VertexId)>) {
    let w = (n as f64).sqrt().ceil() as usize;
    let coords = (0..n).map(|v| [(v % w) as f64, (v / w) as f64]).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        if v % w + 1 < w && v + 1 < n {
            edges.push((v, v + 1));
        }
        if v + w < n {
            edges.push((v, v + w));
        }
    }
    (coords, edges)
}

fn layered(n: usize) -> (Vec<[f64; 2]>, Vec<(VertexId, VertexId)>) {
    let h = (n as f64).sqrt().ceil() as usize;
    let coords = (0..n).map(|v| [(v / h) as f64, (v % h) as f64]).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        let (col, row) = (v / h, v % h);
        let next = (col + 1) * h + row;
        if next < n {
            edges.push((v, next));
        }
        if row + 1 < h && next + 1 < n {
            edges.push((v, next + 1));
        }
        if row + 1 < h && v + 1 < n && col == 0 {
            edges.push((v, v + 1));
        }
    }
    (coords, edges)
}

fn orient(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> f64 {
    (c - a) * (f - b) - (d - b) * (e - a)
}

/// Inserts random points into the triangle (0,0), (1,0), (1/2,1), splitting the
/// triangle that contains each new point into three.
fn triangulation(n: usize, rng: &mut ChaCha8Rng) -> (Vec<[f64; 2]>, Vec<(VertexId, VertexId)>) {
    let mut coords = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]];
    let mut tris: Vec<[VertexId; 3]> = vec![[0, 1, 2]];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    while coords.len() < n {
        let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
        if u + v > 1.0 {
            (u, v) = (1.0 - u, 1.0 - v);
        }
        // Keep points away from the outer edges.
        let (u, v) = (0.02 + 0.96 * u, 0.02 + 0.96 * v);
        let p = [u * 1.0 + v * 0.5, v * 1.0];
        let inside = |t: &[VertexId; 3]| {
            (0..3).all(|i| {
                let a = coords[t[i]];
                let b = coords[t[(i + 1) % 3]];
                orient(a[0], a[1], b[0], b[1], p[0], p[1]) > 1e-12
            })
        };
        let Some(ti) = tris.iter().position(inside) else {
            continue;
        };
        let id = coords.len();
        coords.push(p);
        let [a, b, c] = tris[ti];
        tris[ti] = [a, b, id];
        tris.push([b, c, id]);
        tris.push([c, a, id]);
        edges.extend([(a, id), (b, id), (c, id)]);
    }
    (coords, edges)
}

/// Terminals of every accepted pair; a pair is rejected if any pair would be
/// joined by a path of terminals only.
fn pick_pairs(g: &Digraph, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(VertexId, VertexId)>> {
    let n = g.n();
    let mut terminal = vec![false; n];
    let mut pairs = Vec::new();
    let reach = |s: VertexId, allowed: &dyn Fn(VertexId) -> bool| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.out_neighbors(u) {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen
    };
    let mut order: Vec<VertexId> = (0..n).collect();
    for _ in 0..200 * k {
        if pairs.len() == k {
            break;
        }
        order.shuffle(rng);
        let (s, t) = (order[0], order[1]);
        if pairs.contains(&(s, t)) || !reach(s, &|_| true)[t] {
            continue;
        }
        let mut trial = terminal.clone();
        trial[s] = true;
        trial[t] = true;
        let separable = pairs
            .iter()
            .chain(std::iter::once(&(s, t)))
            .all(|&(a, b)| !reach(a, &|w| trial[w])[b]);
        if separable {
            terminal = trial;
            pairs.push((s, t));
        }
    }
    if pairs.len() < k {
        return Err(Error::InvalidSpec(format!("found only {} of {k} separable pairs", pairs.len())));
    }
    Ok(pairs)
}

/// Deterministic in `spec`.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (coords, mut edges) = match spec.kind {
        GenKind::Grid => grid(spec.n),
        GenKind::Triangulation => triangulation(spec.n, &mut rng),
        GenKind::LayeredDag => layered(spec.n),
    };
    if spec.orientation == Orientation::Random && spec.kind != GenKind::LayeredDag {
        for e in edges.iter_mut() {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
    }
    let g = Digraph::from_coords(spec.n, edges, &coords)?;
    let pairs = pick_pairs(&g, spec.k, &mut rng)?;
    let mut costs: Vec<Cost> = (0..spec.n).map(|_| Cost::Finite(rng.gen_range(1..=spec.max_cost) as f64)).collect();
    for &(s, t) in &pairs {
        costs[s] = Cost::Infinite;
        costs[t] = Cost::Infinite;
    }
    Ok(Instance::new(g, costs, pairs)?.with_coords(coords))
}

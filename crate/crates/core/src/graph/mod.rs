//! Planar digraph instances, node lengths and the node-weighted metric.

mod contract;
pub(crate) mod embedding;
pub mod io;
mod metric;
mod reduction;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use contract::ContractionMap;
pub use embedding::{Dart, Digraph};
pub use metric::{ball, boundary, distance, volume};
pub(crate) use metric::shortest_paths;
pub use reduction::{edge_to_node_reduction, EdgeInstance};

pub type VertexId = usize;

/// Absolute tolerance for every real comparison.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

/// Vertex cost. Terminals are `Infinite`; no arithmetic is ever done on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cost {
    Finite(f64),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<f64> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Cost::Infinite)
    }
}

/// An embedded planar digraph with vertex costs and terminal pairs.
#[derive(Clone, Debug)]
pub struct Instance {
    graph: Digraph,
    costs: Vec<Cost>,
    pairs: Vec<(VertexId, VertexId)>,
    coords: Option<Vec<[f64; 2]>>,
}

impl Instance {
    pub fn new(graph: Digraph, costs: Vec<Cost>, pairs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let n = graph.n();
        if costs.len() != n {
            return Err(Error::Parse(format!("{} costs for {} vertices", costs.len(), n)));
        }
        for (v, c) in costs.iter().enumerate() {
            if let Cost::Finite(c) = c {
                if !(c.is_finite() && *c >= 0.0) {
                    return Err(Error::NegativeCost(v));
                }
            }
        }
        for &(s, t) in &pairs {
            for id in [s, t] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
                if !costs[id].is_infinite() {
                    return Err(Error::TerminalFiniteCost(id));
                }
            }
        }
        Ok(Self {
            graph,
            costs,
            pairs,
            coords: None,
        })
    }

    /// Attaches the coordinates the rotation system was derived from, kept
    /// only for serialization.
    pub fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Self {
        if coords.len() == self.n() {
            self.coords = Some(coords);
        }
        self
    }

    /// A pair-free instance used for minors produced inside the algorithm.
    pub(crate) fn minor(graph: Digraph, costs: Vec<Cost>) -> Self {
        debug_assert_eq!(graph.n(), costs.len());
        Self {
            graph,
            costs,
            pairs: Vec::new(),
            coords: None,
        }
    }

    /// Same graph and costs with every pair dropped.
    pub fn without_pairs(&self) -> Self {
        Self {
            pairs: Vec::new(),
            ..self.clone()
        }
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    pub fn cost(&self, v: VertexId) -> Cost {
        self.costs[v]
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.pairs.iter().any(|&(s, t)| s == v || t == v)
    }

    /// Finite-cost vertices, the only ones a cut may contain.
    pub fn finite_vertices(&self) -> Vec<VertexId> {
        (0..self.n()).filter(|&v| !self.costs[v].is_infinite()).collect()
    }

    /// Same instance with all edges reversed and every pair swapped.
    pub fn reversed(&self) -> Self {
        Self {
            graph: self.graph.reversed(),
            costs: self.costs.clone(),
            pairs: self.pairs.iter().map(|&(s, t)| (t, s)).collect(),
            coords: self.coords.clone(),
        }
    }

    /// Subgraph induced by `keep`; pairs are dropped. Returns the new-to-old map.
    pub fn induced(&self, keep: &[VertexId]) -> (Self, Vec<VertexId>) {
        let (graph, old_of) = self.graph.induced(keep);
        let costs = old_of.iter().map(|&v| self.costs[v]).collect();
        (Self::minor(graph, costs), old_of)
    }

    pub fn weak_components(&self) -> Vec<Vec<VertexId>> {
        self.graph.weak_components()
    }

    pub fn contract_connected(
        &self,
        set: &[VertexId],
        into: VertexId,
    ) -> Result<(Self, ContractionMap)> {
        contract::contract_connected(self, set, into)
    }
}

/// Node lengths `x_v`, one per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthAssignment {
    x: Vec<f64>,
}

impl LengthAssignment {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x }
    }

    pub fn zeros(n: usize) -> Self {
        Self { x: vec![0.0; n] }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn get(&self, v: VertexId) -> f64 {
        self.x[v]
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Checks shape, sign and the zero-length convention on infinite-cost vertices.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.x.len() != inst.n() {
            return Err(Error::InvalidAssignment(format!(
                "{} lengths for {} vertices",
                self.x.len(),
                inst.n()
            )));
        }
        for (v, &xv) in self.x.iter().enumerate() {
            if !(xv.is_finite() && xv >= 0.0) {
                return Err(Error::InvalidAssignment(format!("x[{v}] = {xv}")));
            }
            if xv > 0.0 && inst.cost(v).is_infinite() {
                return Err(Error::InfiniteVolume(v));
            }
        }
        Ok(())
    }

    /// `sum c(v) x_v` over all vertices: the LP objective value.
    pub fn value(&self, inst: &Instance) -> Result<f64> {
        let all: Vec<VertexId> = (0..inst.n()).collect();
        volume(inst, self, &all)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            x: self.x.iter().map(|v| v * factor).collect(),
        }
    }
}

/// A set of deleted vertices and its total cost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutSet {
    #[serde(rename = "cut")]
    pub members: Vec<VertexId>,
    pub cost: f64,
}

impl CutSet {
    pub fn new(inst: &Instance, members: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut members: Vec<VertexId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let mut cost = 0.0;
        for &v in &members {
            if v >= inst.n() {
                return Err(Error::VertexOutOfRange { id: v, n: inst.n() });
            }
            match inst.cost(v) {
                Cost::Finite(c) => cost += c,
                Cost::Infinite => return Err(Error::CutContainsTerminal(v)),
            }
        }
        Ok(Self { members, cost })
    }

    pub fn empty() -> Self {
        Self {
            members: Vec::new(),
            cost: 0.0,
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A grown ball with its radius and boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub center: VertexId,
    pub direction: Direction,
    pub radius: f64,
    /// Sorted ball members.
    pub ball: Vec<VertexId>,
    /// Sorted boundary, disjoint from the ball.
    pub boundary: Vec<VertexId>,
    pub boundary_cost: f64,
    pub ball_volume: f64,
    /// Volume of the whole vertex set the ball was grown in.
    pub current_volume: f64,
}

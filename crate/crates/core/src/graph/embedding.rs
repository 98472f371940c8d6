//! Embedded directed multigraphs.
//!
//! The embedding is a rotation system over *darts*: every edge `e` owns two
//! darts, `2e` sitting at its tail and `2e + 1` sitting at its head. Each
//! vertex stores the counterclockwise cyclic order of the darts incident to
//! it. Faces are the orbits of the map `d -> next(twin(d))`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn at_tail(edge: usize) -> Self {
        Dart(2 * edge)
    }

    pub fn at_head(edge: usize) -> Self {
        Dart(2 * edge + 1)
    }

    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn is_head_side(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn twin(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Vec<Vec<Dart>>,
    position: Vec<usize>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
}

impl Digraph {
    /// Builds a graph from an explicit rotation system. `rotation[v]` lists
    /// the indices of the edges incident to `v` in counterclockwise order.
    /// The rotation system must describe a planar embedding.
    pub fn from_rotation(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_edges(n, &edges)?;
        if rotation.len() != n {
            return Err(Error::RotationMismatch(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                n
            )));
        }
        let mut darts = Vec::with_capacity(n);
        for (v, order) in rotation.iter().enumerate() {
            let mut at_v = Vec::with_capacity(order.len());
            for &e in order {
                let &(t, h) = edges.get(e).ok_or_else(|| {
                    Error::RotationMismatch(format!("vertex {v} lists unknown edge {e}"))
                })?;
                if t == v {
                    at_v.push(Dart::at_tail(e));
                } else if h == v {
                    at_v.push(Dart::at_head(e));
                } else {
                    return Err(Error::RotationMismatch(format!(
                        "vertex {v} lists edge {e} = ({t}, {h}) which is not incident to it"
                    )));
                }
            }
            darts.push(at_v);
        }
        let g = Self::assemble(n, edges, darts)?;
        g.check_euler()?;
        Ok(g)
    }

    /// Builds a graph from straight-line coordinates, sorting the edges around
    /// every vertex by angle (counterclockwise, ties by edge index).
    pub fn from_coords(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        coords: &[[f64; 2]],
    ) -> Result<Self> {
        check_edges(n, &edges)?;
        if coords.len() != n {
            return Err(Error::Parse(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                n
            )));
        }
        let mut darts: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); n];
        for (e, &(t, h)) in edges.iter().enumerate() {
            let angle = |a: VertexId, b: VertexId| {
                (coords[b][1] - coords[a][1]).atan2(coords[b][0] - coords[a][0])
            };
            darts[t].push((angle(t, h), Dart::at_tail(e)));
            darts[h].push((angle(h, t), Dart::at_head(e)));
        }
        let darts = darts
            .into_iter()
            .map(|mut ds| {
                ds.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                ds.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        let g = Self::assemble(n, edges, darts)?;
        g.check_euler()?;
        Ok(g)
    }

    /// Assembles a graph from darts without checking Euler's formula. Used by
    /// operations that preserve planarity by construction.
    pub(crate) fn assemble(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<Dart>>,
    ) -> Result<Self> {
        let mut position = vec![usize::MAX; 2 * edges.len()];
        for (v, order) in rotation.iter().enumerate() {
            for (i, d) in order.iter().enumerate() {
                if d.0 >= position.len() || position[d.0] != usize::MAX {
                    return Err(Error::RotationMismatch(format!(
                        "dart {} listed twice or out of range at vertex {v}",
                        d.0
                    )));
                }
                position[d.0] = i;
            }
        }
        if let Some(missing) = position.iter().position(|&p| p == usize::MAX) {
            return Err(Error::RotationMismatch(format!(
                "edge {} is missing from a rotation",
                missing / 2
            )));
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(t, h) in &edges {
            out_adj[t].push(h);
            in_adj[h].push(t);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            n,
            edges,
            rotation,
            position,
            out_adj,
            in_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    /// Rotation of `v` as edge indices, the serialized form.
    pub fn rotation_edges(&self, v: VertexId) -> Vec<usize> {
        self.rotation[v].iter().map(|d| d.edge()).collect()
    }

    /// Distinct out-neighbours, sorted. Parallel edges are collapsed.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    /// Distinct in-neighbours, sorted.
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Vertex at which the dart sits.
    pub fn dart_vertex(&self, d: Dart) -> VertexId {
        let (t, h) = self.edges[d.edge()];
        if d.is_head_side() {
            h
        } else {
            t
        }
    }

    /// The dart following `d` along its face.
    pub fn face_successor(&self, d: Dart) -> Dart {
        let twin = d.twin();
        let w = self.dart_vertex(twin);
        let rot = &self.rotation[w];
        rot[(self.position[twin.0] + 1) % rot.len()]
    }

    /// Face boundaries as dart cycles, in order of their smallest dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; 2 * self.edges.len()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = Dart(start);
            while !seen[d.0] {
                seen[d.0] = true;
                face.push(d);
                d = self.face_successor(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Number of faces when all components share a single outer face, so that
    /// `V - E + F = 1 + C` holds for a planar embedding.
    pub fn face_count(&self) -> usize {
        let orbits = self.faces().len();
        let isolated = (0..self.n).filter(|&v| self.rotation[v].is_empty()).count();
        let c = self.weak_components().len();
        (orbits + isolated + 1).saturating_sub(c)
    }

    pub fn check_euler(&self) -> Result<()> {
        let orbits = self.faces().len() as i64;
        let isolated = (0..self.n).filter(|&v| self.rotation[v].is_empty()).count() as i64;
        let c = self.weak_components().len() as i64;
        // Each component contributes V_i - E_i + F_i <= 2, with equality iff
        // its rotation system is planar.
        let found = self.n as i64 - self.edges.len() as i64 + orbits + isolated;
        if found != 2 * c {
            return Err(Error::EmbeddingInvalid {
                found: found - c + 1,
                expected: 1 + c,
            });
        }
        Ok(())
    }

    /// Weakly connected components, each sorted, ordered by minimum id.
    pub fn weak_components(&self) -> Vec<Vec<VertexId>> {
        self.weak_components_within(&vec![true; self.n])
    }

    pub(crate) fn weak_components_within(&self, alive: &[bool]) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if !alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            queue.push_back(s);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &w in self.out_adj[u].iter().chain(&self.in_adj[u]) {
                    if alive[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The same embedding with every edge reversed.
    pub fn reversed(&self) -> Self {
        let edges = self.edges.iter().map(|&(t, h)| (h, t)).collect();
        let rotation = self
            .rotation
            .iter()
            .map(|ds| ds.iter().map(|d| d.twin()).collect())
            .collect();
        Self::assemble(self.n, edges, rotation).expect("reversal preserves the rotation system")
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing
    /// order of their old ids. Returns the graph and the new-to-old map.
    pub fn induced(&self, keep: &[VertexId]) -> (Self, Vec<VertexId>) {
        let mut old_of: Vec<VertexId> = keep.to_vec();
        old_of.sort_unstable();
        old_of.dedup();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let mut edge_map = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if new_of[t] != usize::MAX && new_of[h] != usize::MAX {
                edge_map[e] = edges.len();
                edges.push((new_of[t], new_of[h]));
            }
        }
        let rotation = old_of
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|d| edge_map[d.edge()] != usize::MAX)
                    .map(|d| Dart(2 * edge_map[d.edge()] + (d.0 & 1)))
                    .collect()
            })
            .collect();
        let g = Self::assemble(old_of.len(), edges, rotation)
            .expect("vertex deletion preserves the rotation system");
        (g, old_of)
    }
}

fn check_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<()> {
    for (e, &(t, h)) in edges.iter().enumerate() {
        for id in [t, h] {
            if id >= n {
                return Err(Error::VertexOutOfRange { id, n });
            }
        }
        if t == h {
            return Err(Error::SelfLoop(e));
        }
    }
    Ok(())
}

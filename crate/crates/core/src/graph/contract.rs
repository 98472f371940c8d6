use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Cost, Dart, Digraph, Instance, LengthAssignment, VertexId};

/// Result of contracting a vertex set into a single super-vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionMap {
    /// Old vertex id to new vertex id.
    pub forward: Vec<VertexId>,
    /// New vertex id to the sorted old ids it stands for.
    pub provenance: Vec<Vec<VertexId>>,
    /// New id of the super-vertex.
    pub merged: VertexId,
}

impl ContractionMap {
    /// Carries lengths across the contraction; the super-vertex gets length 0.
    pub fn push_lengths(&self, x: &LengthAssignment) -> LengthAssignment {
        let vals = self
            .provenance
            .iter()
            .enumerate()
            .map(|(v, olds)| if v == self.merged { 0.0 } else { x.get(olds[0]) })
            .collect();
        LengthAssignment::new(vals)
    }
}

pub(super) fn contract_connected(
    inst: &Instance,
    set: &[VertexId],
    into: VertexId,
) -> Result<(Instance, ContractionMap)> {
    let g = inst.graph();
    let n = g.n();
    for &v in set.iter().chain(std::iter::once(&into)) {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
    }
    let mut member = vec![false; n];
    member[into] = true;
    for &v in set {
        member[v] = true;
    }

    // Discover the set from `into` along edges inside it; every discovery edge
    // is contracted in that order.
    let mut found = vec![false; n];
    found[into] = true;
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([into]);
    while let Some(u) = queue.pop_front() {
        for &d in g.rotation(u) {
            let w = g.dart_vertex(d.twin());
            if member[w] && !found[w] {
                found[w] = true;
                tree_edges.push((d.edge(), w));
                queue.push_back(w);
            }
        }
    }
    if (0..n).any(|v| member[v] && !found[v]) {
        return Err(Error::NotConnected);
    }

    let mut ends: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    let mut rot: Vec<Vec<Dart>> = (0..n).map(|v| g.rotation(v).to_vec()).collect();
    let mut dead_edge = vec![false; ends.len()];
    for (e, w) in tree_edges {
        if dead_edge[e] {
            continue;
        }
        let (du, dw) = if ends[e].0 == into {
            (Dart::at_tail(e), Dart::at_head(e))
        } else {
            (Dart::at_head(e), Dart::at_tail(e))
        };
        debug_assert_eq!(if dw.is_head_side() { ends[e].1 } else { ends[e].0 }, w);
        let pu = rot[into].iter().position(|&d| d == du).expect("dart at super-vertex");
        let wr = std::mem::take(&mut rot[w]);
        let pw = wr.iter().position(|&d| d == dw).expect("dart at absorbed vertex");
        let spliced: Vec<Dart> = wr[pw + 1..].iter().chain(&wr[..pw]).copied().collect();
        for &d in &spliced {
            let eid = d.edge();
            if d.is_head_side() {
                ends[eid].1 = into;
            } else {
                ends[eid].0 = into;
            }
        }
        let mut merged = Vec::with_capacity(rot[into].len() + spliced.len());
        merged.extend_from_slice(&rot[into][..pu]);
        merged.extend_from_slice(&spliced);
        merged.extend_from_slice(&rot[into][pu + 1..]);
        dead_edge[e] = true;
        // Edges that became loops at the super-vertex are deleted.
        let loops: Vec<usize> = merged
            .iter()
            .map(|d| d.edge())
            .filter(|&eid| ends[eid].0 == ends[eid].1)
            .collect();
        for eid in loops {
            dead_edge[eid] = true;
        }
        merged.retain(|d| !dead_edge[d.edge()]);
        rot[into] = merged;
    }

    let mut forward = vec![usize::MAX; n];
    let mut old_of = Vec::new();
    for v in 0..n {
        if !member[v] || v == into {
            forward[v] = old_of.len();
            old_of.push(v);
        }
    }
    let merged_new = forward[into];
    for v in 0..n {
        if member[v] {
            forward[v] = merged_new;
        }
    }
    let mut edge_new = vec![usize::MAX; ends.len()];
    let mut edges = Vec::new();
    for (e, &(t, h)) in ends.iter().enumerate() {
        if !dead_edge[e] {
            edge_new[e] = edges.len();
            edges.push((forward[t], forward[h]));
        }
    }
    let rotation = old_of
        .iter()
        .map(|&v| {
            rot[v]
                .iter()
                .map(|d| Dart(2 * edge_new[d.edge()] + (d.0 & 1)))
                .collect()
        })
        .collect();
    let graph = Digraph::assemble(old_of.len(), edges, rotation)?;
    let mut provenance: Vec<Vec<VertexId>> = old_of.iter().map(|&v| vec![v]).collect();
    provenance[merged_new] = (0..n).filter(|&v| member[v]).collect();
    let costs = old_of
        .iter()
        .enumerate()
        .map(|(i, &v)| if i == merged_new { Cost::Finite(0.0) } else { inst.cost(v) })
        .collect();
    Ok((
        Instance::minor(graph, costs),
        ContractionMap {
            forward,
            provenance,
            merged: merged_new,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::embedding::tests::face_walk_oracle;

    fn inst(n: usize, edges: Vec<(usize, usize)>, coords: &[[f64; 2]]) -> Instance {
        let g = Digraph::from_coords(n, edges, coords).unwrap();
        Instance::new(g, vec![Cost::Finite(1.0); n], vec![]).unwrap()
    }

    #[test]
    fn contracting_a_triangle_edge_leaves_parallel_pair() {
        let t = inst(3, vec![(0, 1), (1, 2), (2, 0)], &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let (m, map) = t.contract_connected(&[1], 0).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.graph().edges(), &[(0, 1), (1, 0)]);
        assert_eq!(map.forward, vec![0, 0, 1]);
        assert_eq!(map.provenance, vec![vec![0, 1], vec![2]]);
        assert_eq!(m.cost(0), Cost::Finite(0.0));
        m.graph().check_euler().unwrap();
        assert_eq!(m.graph().face_count(), 2);
        assert_eq!(face_walk_oracle(m.graph()), 2);
    }

    #[test]
    fn contracting_a_whole_path_leaves_one_vertex() {
        let p = inst(
            4,
            vec![(0, 1), (2, 1), (2, 3)],
            &[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]],
        );
        let (m, map) = p.contract_connected(&[0, 1, 3], 2).unwrap();
        assert_eq!(m.n(), 1);
        assert_eq!(m.graph().edge_count(), 0);
        assert_eq!(map.merged, 0);
        m.graph().check_euler().unwrap();
    }

    #[test]
    fn disconnected_set_is_rejected() {
        let p = inst(3, vec![(0, 1), (1, 2)], &[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert_eq!(p.contract_connected(&[2], 0).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn lengths_follow_the_map() {
        let p = inst(3, vec![(0, 1), (1, 2)], &[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let (_, map) = p.contract_connected(&[2], 1).unwrap();
        let x = LengthAssignment::new(vec![0.3, 0.2, 0.1]);
        assert_eq!(map.push_lengths(&x).x(), &[0.3, 0.0]);
    }
}

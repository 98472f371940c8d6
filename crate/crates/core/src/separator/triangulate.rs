use std::collections::HashSet;

use crate::graph::{Dart, Digraph, VertexId};

/// The input graph with chords added inside its faces. Edges with index at
/// least `original_edges` are chords.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: Digraph,
    pub original_edges: usize,
}

impl Triangulation {
    pub fn chords(&self) -> &[(VertexId, VertexId)] {
        &self.graph.edges()[self.original_edges..]
    }
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

/// Splits every face of length at least 4 into triangles by clipping ears.
/// Each face walk starts at its smallest vertex, so on a simple face the
/// chords form a fan from that vertex. Ears whose chord would duplicate an
/// existing adjacency are skipped while another ear is available.
pub fn triangulate(g: &Digraph) -> Triangulation {
    let mut ends: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    let mut rot: Vec<Vec<Dart>> = (0..g.n()).map(|v| g.rotation(v).to_vec()).collect();
    let mut present: HashSet<(VertexId, VertexId)> = ends.iter().map(|&(a, b)| key(a, b)).collect();
    let vertex = |ends: &[(VertexId, VertexId)], d: Dart| {
        let (t, h) = ends[d.edge()];
        if d.is_head_side() {
            h
        } else {
            t
        }
    };

    for face in g.faces() {
        if face.len() < 4 {
            continue;
        }
        let start = (0..face.len())
            .min_by_key(|&i| (g.dart_vertex(face[i]), i))
            .expect("nonempty face");
        let mut walk: Vec<Dart> = face[start..].iter().chain(&face[..start]).copied().collect();
        while walk.len() > 3 {
            let k = walk.len();
            let ear = |allow_dup: bool| {
                (1..k).find(|&i| {
                    let a = vertex(&ends, walk[i - 1]);
                    let c = vertex(&ends, walk[(i + 1) % k]);
                    a != c && (allow_dup || !present.contains(&key(a, c)))
                })
            };
            let Some(i) = ear(false).or_else(|| ear(true)) else {
                break;
            };
            let prev = walk[i - 1];
            let cur = walk[i];
            let a = vertex(&ends, prev);
            let c = vertex(&ends, walk[(i + 1) % k]);
            let e = ends.len();
            ends.push((a, c));
            present.insert(key(a, c));
            let (x, y) = (Dart::at_tail(e), Dart::at_head(e));
            // x goes just before `prev` at a; y just after twin(cur) at c.
            let pa = rot[a].iter().position(|&d| d == prev).expect("dart at a");
            rot[a].insert(pa, x);
            let pc = rot[c].iter().position(|&d| d == cur.twin()).expect("dart at c");
            rot[c].insert(pc + 1, y);
            walk.splice(i - 1..=i, [x]);
        }
    }
    let original_edges = g.edge_count();
    let graph = Digraph::assemble(g.n(), ends, rot).expect("chords keep the rotation consistent");
    Triangulation { graph, original_edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::embedding::tests::face_walk_oracle;

    fn cycle(k: usize) -> Digraph {
        let coords: Vec<[f64; 2]> = (0..k)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / k as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Digraph::from_coords(k, edges, &coords).unwrap()
    }

    fn all_triangles(g: &Digraph) -> bool {
        g.faces().iter().all(|f| f.len() == 3)
    }

    #[test]
    fn triangle_needs_no_chords() {
        let t = triangulate(&cycle(3));
        assert!(t.chords().is_empty());
    }

    #[test]
    fn quadrilateral_gets_one_chord_per_side() {
        let t = triangulate(&cycle(4));
        // One chord inside, and the outer face is also a quadrilateral.
        assert_eq!(t.chords().len(), 2);
        assert_eq!(t.chords()[0], (0, 2));
        assert!(all_triangles(&t.graph));
        t.graph.check_euler().unwrap();
    }

    #[test]
    fn octagon_gets_five_chords_per_face() {
        let g = cycle(8);
        let t = triangulate(&g);
        assert_eq!(t.chords().len(), 10);
        assert!(all_triangles(&t.graph));
        assert_eq!(face_walk_oracle(&t.graph), 12);
        t.graph.check_euler().unwrap();
        let mut seen = HashSet::new();
        for &(a, b) in t.chords() {
            assert!(seen.insert(key(a, b)), "duplicate chord {a}-{b}");
            assert!(!g.has_edge(a, b) && !g.has_edge(b, a));
        }
    }

    #[test]
    fn tree_faces_are_triangulated() {
        // Star with four leaves: a single face visiting the center four times.
        let coords = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        let g = Digraph::from_coords(5, vec![(0, 1), (0, 2), (3, 0), (4, 0)], &coords).unwrap();
        let t = triangulate(&g);
        t.graph.check_euler().unwrap();
        assert!(all_triangles(&t.graph));
    }
}

use crate::error::{Error, Result};
use crate::graph::{Cost, Dart, Digraph, Instance, VertexId};

/// Edge-weighted planar digraph instance.
#[derive(Clone, Debug)]
pub struct EdgeInstance {
    pub graph: Digraph,
    pub edge_costs: Vec<f64>,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub coords: Option<Vec<[f64; 2]>>,
}

/// Subdivides every edge `(u, v)` of cost `w` into `u -> m -> v` where the new
/// vertex `m = n + e` carries cost `w`. All original vertices become
/// uncuttable, so node multicuts of the result are edge multicuts of the input.
pub fn edge_to_node_reduction(input: &EdgeInstance) -> Result<Instance> {
    let g = &input.graph;
    let n = g.n();
    let m = g.edge_count();
    if input.edge_costs.len() != m {
        return Err(Error::Parse(format!("{} edge costs for {} edges", input.edge_costs.len(), m)));
    }
    if let Some(e) = input.edge_costs.iter().position(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::NegativeCost(n + e));
    }
    let mut edges = Vec::with_capacity(2 * m);
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        edges.push((t, n + e));
        edges.push((n + e, h));
    }
    let mut rotation: Vec<Vec<Dart>> = (0..n)
        .map(|v| {
            g.rotation(v)
                .iter()
                .map(|d| {
                    let e = d.edge();
                    if d.is_head_side() {
                        Dart::at_head(2 * e + 1)
                    } else {
                        Dart::at_tail(2 * e)
                    }
                })
                .collect()
        })
        .collect();
    for e in 0..m {
        rotation.push(vec![Dart::at_head(2 * e), Dart::at_tail(2 * e + 1)]);
    }
    let graph = Digraph::assemble(n + m, edges, rotation)?;
    let mut costs = vec![Cost::Infinite; n];
    costs.extend(input.edge_costs.iter().map(|&c| Cost::Finite(c)));
    let inst = Instance::new(graph, costs, input.pairs.clone())?;
    Ok(match &input.coords {
        Some(c) => {
            let mut coords = c.clone();
            for &(t, h) in g.edges() {
                coords.push([(c[t][0] + c[h][0]) / 2.0, (c[t][1] + c[h][1]) / 2.0]);
            }
            inst.with_coords(coords)
        }
        None => inst,
    })
}

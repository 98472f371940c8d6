//! Alternating out/in layering around a growing contracted root.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Direction, Instance, LengthAssignment, VertexId};
use crate::region::{grow, GrowthParams};

/// One δ-bounded minor: a layer plus the contracted root standing for all
/// earlier layers.
#[derive(Clone, Debug)]
pub struct LayerMinor {
    pub instance: Instance,
    pub lengths: LengthAssignment,
    pub root: VertexId,
    /// `Out` when the root reaches every vertex, `In` when every vertex
    /// reaches the root.
    pub parity: Direction,
    /// Minor vertex to vertex of the layered graph; `None` for a contracted root.
    pub origin: Vec<Option<VertexId>>,
}

/// Radius and charge of one region-growing call.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub direction: Direction,
    pub radius: f64,
    pub boundary_cost: f64,
    pub ball_volume: f64,
    pub current_volume: f64,
}

#[derive(Clone, Debug)]
pub struct Layering {
    /// Disjoint layers in the ids of the layered graph. `layers[0]` holds the
    /// initial root.
    pub layers: Vec<Vec<VertexId>>,
    /// Union of the layer boundaries, sorted.
    pub cut: Vec<VertexId>,
    pub cut_cost: f64,
    pub parities: Vec<Direction>,
    pub minors: Vec<LayerMinor>,
    pub growth: Vec<GrowthRecord>,
}

impl Layering {
    /// Number of region-growing calls made.
    pub fn iterations(&self) -> usize {
        self.growth.len()
    }

    /// Layer index of every vertex.
    pub fn layer_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                of[v] = i;
            }
        }
        of
    }
}

pub fn build_layers(inst: &Instance, x: &LengthAssignment, params: &GrowthParams) -> Result<Layering> {
    x.validate(inst)?;
    let n = inst.n();
    if n == 0 || inst.weak_components().len() != 1 {
        return Err(Error::NotWeaklyConnected);
    }
    let mut current = inst.clone();
    let mut lengths = x.clone();
    // Current vertex to input vertex; `None` marks the contracted root.
    let mut origin: Vec<Option<VertexId>> = (0..n).map(Some).collect();
    let mut root = 0;
    let mut layering = Layering {
        layers: Vec::new(),
        cut: Vec::new(),
        cut_cost: 0.0,
        parities: Vec::new(),
        minors: Vec::new(),
        growth: Vec::new(),
    };
    let mut cut = vec![false; n];
    let mut dir = Direction::Out;
    loop {
        let region = grow(current.graph(), current.costs(), lengths.x(), None, root, params, dir)?;
        layering.growth.push(GrowthRecord {
            direction: dir,
            radius: region.radius,
            boundary_cost: region.boundary_cost,
            ball_volume: region.ball_volume,
            current_volume: region.current_volume,
        });
        for &b in &region.boundary {
            let v = origin[b].expect("boundary vertices are never the contracted root");
            cut[v] = true;
        }
        let layer: Vec<VertexId> = region.ball.iter().filter_map(|&u| origin[u]).collect();
        let (minor, old_of) = current.induced(&region.ball);
        let minor_root = old_of.binary_search(&root).expect("root is in its ball");
        layering.minors.push(LayerMinor {
            lengths: LengthAssignment::new(old_of.iter().map(|&u| lengths.get(u)).collect()),
            instance: minor,
            root: minor_root,
            parity: dir,
            origin: old_of.iter().map(|&u| origin[u]).collect(),
        });
        layering.layers.push(layer);
        layering.parities.push(dir);

        let (next, map) = current.contract_connected(&region.ball, root)?;
        lengths = map.push_lengths(&lengths);
        origin = map
            .provenance
            .iter()
            .enumerate()
            .map(|(v, olds)| if v == map.merged { None } else { origin[olds[0]] })
            .collect();
        root = map.merged;
        current = next;
        if current.n() == 1 {
            break;
        }
        if layering.growth.len() > 2 * n + 1 {
            return Err(Error::NotWeaklyConnected);
        }
        dir = dir.flip();
    }
    layering.cut = (0..n).filter(|&v| cut[v]).collect();
    layering.cut_cost = layering
        .cut
        .iter()
        .map(|&v| inst.cost(v).finite().unwrap_or(f64::INFINITY))
        .fold(0.0, |a, b| a + b);
    Ok(layering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::volume;
    use crate::testkit::{build, reaches};

    #[test]
    fn single_vertex() {
        let inst = build(&[[0.0, 0.0]], &[], &[1.0], &[]);
        let p = GrowthParams::new(1.0 / 12.0, 1);
        let l = build_layers(&inst, &LengthAssignment::zeros(1), &p).unwrap();
        assert_eq!(l.layers, vec![vec![0]]);
        assert!(l.cut.is_empty());
        assert_eq!(l.iterations(), 1);
    }

    #[test]
    fn short_path_is_one_layer() {
        let inst = build(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], &[(0, 1), (1, 2)], &[1.0; 3], &[]);
        let p = GrowthParams::new(1.0 / 12.0, 3);
        let x = LengthAssignment::new(vec![1e-4, 1e-4, 1e-4]);
        let l = build_layers(&inst, &x, &p).unwrap();
        assert_eq!(l.layers, vec![vec![0, 1, 2]]);
        assert!(l.cut.is_empty());
    }

    pub(crate) fn grid(w: usize, h: usize) -> Instance {
        let mut coords = Vec::new();
        let mut edges = Vec::new();
        for r in 0..h {
            for c in 0..w {
                coords.push([c as f64, r as f64]);
                let v = r * w + c;
                // Alternate orientations so the grid is not acyclic.
                if c + 1 < w {
                    edges.push(if (r + c) % 2 == 0 { (v, v + 1) } else { (v + 1, v) });
                }
                if r + 1 < h {
                    edges.push(if (r * 3 + c) % 2 == 0 { (v, v + w) } else { (v + w, v) });
                }
            }
        }
        build(&coords, &edges, &vec![1.0; w * h], &[])
    }

    #[test]
    fn grid_claims_hold() {
        let inst = grid(5, 5);
        let p = GrowthParams::new(1.0 / 12.0, 25);
        let x = LengthAssignment::new(vec![p.step(); 25]);
        let l = build_layers(&inst, &x, &p).unwrap();
        let n = inst.n();
        assert!(l.iterations() <= 2 * n);
        let vol = volume(&inst, &x, &(0..n).collect::<Vec<_>>()).unwrap();
        assert!(l.cut_cost <= 24.0 * p.levels as f64 * vol / p.delta + 1e-9);
        let mut removed = vec![false; n];
        for &v in &l.cut {
            removed[v] = true;
        }
        let of = l.layer_of(n);
        assert!(of.iter().all(|&i| i != usize::MAX));
        for (i, layer) in l.layers.iter().enumerate() {
            for &u in layer {
                for w in (0..n).filter(|&w| of[w] != i) {
                    if i % 2 == 0 {
                        assert!(!reaches(&inst, &removed, u, w), "layer {i}: {u} reaches {w}");
                    } else {
                        assert!(!reaches(&inst, &removed, w, u), "layer {i}: {w} reaches {u}");
                    }
                }
            }
        }
        for (i, m) in l.minors.iter().enumerate() {
            assert_eq!(m.origin[m.root].is_none(), i > 0);
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let inst = build(&[[0.0, 0.0], [1.0, 0.0]], &[], &[1.0; 2], &[]);
        let p = GrowthParams::new(1.0 / 12.0, 2);
        assert_eq!(
            build_layers(&inst, &LengthAssignment::zeros(2), &p).unwrap_err(),
            Error::NotWeaklyConnected
        );
    }
}

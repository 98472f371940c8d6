//! Text serialization of instances and cuts.
//!
//! Field order on output is fixed by the struct declarations below and
//! documented in `docs/formats.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cost, Digraph, EdgeInstance, Instance, VertexId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CostRepr {
    Number(f64),
    Text(String),
}

impl CostRepr {
    fn to_cost(&self, id: VertexId) -> Result<Cost> {
        match self {
            CostRepr::Number(c) if c.is_finite() && *c >= 0.0 => Ok(Cost::Finite(*c)),
            CostRepr::Number(_) => Err(Error::NegativeCost(id)),
            CostRepr::Text(s) if s == "inf" => Ok(Cost::Infinite),
            CostRepr::Text(s) => Err(Error::Parse(format!("cost of vertex {id}: {s:?}"))),
        }
    }

    fn from_cost(c: Cost) -> Self {
        match c {
            Cost::Finite(c) => CostRepr::Number(c),
            Cost::Infinite => CostRepr::Text("inf".into()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub cost: CostRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<VertexId, Vec<usize>>>,
    pub pairs: Vec<[VertexId; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeInstanceFile {
    pub n: usize,
    /// `[tail, head, cost]`.
    pub edges: Vec<(VertexId, VertexId, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<VertexId, Vec<usize>>>,
    pub pairs: Vec<[VertexId; 2]>,
}

fn build_graph(
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    coords: &Option<Vec<[f64; 2]>>,
    rotation: &Option<BTreeMap<VertexId, Vec<usize>>>,
) -> Result<Digraph> {
    match (rotation, coords) {
        (Some(rot), _) => {
            let mut lists = vec![Vec::new(); n];
            for (&v, order) in rot {
                if v >= n {
                    return Err(Error::VertexOutOfRange { id: v, n });
                }
                lists[v] = order.clone();
            }
            Digraph::from_rotation(n, edges, lists)
        }
        (None, Some(c)) => Digraph::from_coords(n, edges, c),
        (None, None) => Err(Error::Parse("instance needs either \"coords\" or \"rotation\"".into())),
    }
}

/// Validates a parsed instance file.
pub fn build_instance(file: InstanceFile) -> Result<Instance> {
    let n = file.n;
    let mut costs: Vec<Option<Cost>> = vec![None; n];
    for rec in &file.vertices {
        if rec.id >= n {
            return Err(Error::VertexOutOfRange { id: rec.id, n });
        }
        if costs[rec.id].is_some() {
            return Err(Error::DuplicateId(rec.id));
        }
        costs[rec.id] = Some(rec.cost.to_cost(rec.id)?);
    }
    let costs = costs
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::Parse(format!("vertex {v} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    let edges = file.edges.iter().map(|e| (e[0], e[1])).collect();
    let graph = build_graph(n, edges, &file.coords, &file.rotation)?;
    let pairs = file.pairs.iter().map(|p| (p[0], p[1])).collect();
    let inst = Instance::new(graph, costs, pairs)?;
    Ok(match file.coords {
        Some(c) if file.rotation.is_none() => inst.with_coords(c),
        _ => inst,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    build_instance(serde_json::from_str(text)?)
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    let g = inst.graph();
    let rotation = match inst.coords() {
        Some(_) => None,
        None => Some((0..g.n()).map(|v| (v, g.rotation_edges(v))).collect()),
    };
    InstanceFile {
        n: inst.n(),
        vertices: (0..inst.n())
            .map(|v| VertexRecord {
                id: v,
                cost: CostRepr::from_cost(inst.cost(v)),
            })
            .collect(),
        edges: g.edges().iter().map(|&(t, h)| [t, h]).collect(),
        coords: inst.coords().map(|c| c.to_vec()),
        rotation,
        pairs: inst.pairs().iter().map(|&(s, t)| [s, t]).collect(),
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_file(inst)).expect("instance serializes")
}

pub fn parse_edge_instance(text: &str) -> Result<EdgeInstance> {
    let file: EdgeInstanceFile = serde_json::from_str(text)?;
    let edges = file.edges.iter().map(|&(t, h, _)| (t, h)).collect();
    let graph = build_graph(file.n, edges, &file.coords, &file.rotation)?;
    for p in &file.pairs {
        for &v in p {
            if v >= file.n {
                return Err(Error::VertexOutOfRange { id: v, n: file.n });
            }
        }
    }
    Ok(EdgeInstance {
        graph,
        edge_costs: file.edges.iter().map(|&(_, _, c)| c).collect(),
        pairs: file.pairs.iter().map(|p| (p[0], p[1])).collect(),
        coords: file.coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{
        "n": 3,
        "vertices": [{"id": 0, "cost": "inf"}, {"id": 1, "cost": 2.5}, {"id": 2, "cost": "inf"}],
        "edges": [[0, 1], [1, 2], [0, 2]],
        "coords": [[0, 0], [1, 0], [0, 1]],
        "pairs": [[0, 2]]
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = parse_instance(TRIANGLE).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.cost(0), Cost::Infinite);
        assert_eq!(inst.cost(1), Cost::Finite(2.5));
        let text = instance_to_json(&inst);
        assert!(text.contains("\"inf\""));
        let again = parse_instance(&text).unwrap();
        assert_eq!(again.graph(), inst.graph());
        assert_eq!(again.pairs(), inst.pairs());
    }

    #[test]
    fn rotation_form_round_trips() {
        let inst = parse_instance(TRIANGLE).unwrap();
        let mut file = instance_to_file(&inst);
        file.coords = None;
        file.rotation = Some((0..3).map(|v| (v, inst.graph().rotation_edges(v))).collect());
        let text = serde_json::to_string(&file).unwrap();
        let again = parse_instance(&text).unwrap();
        assert_eq!(again.graph(), inst.graph());
    }

    #[test]
    fn validation_errors() {
        let dup = TRIANGLE.replace(r#"{"id": 2, "cost": "inf"}"#, r#"{"id": 1, "cost": "inf"}"#);
        assert_eq!(parse_instance(&dup).unwrap_err(), Error::DuplicateId(1));
        let neg = TRIANGLE.replace("2.5", "-1");
        assert_eq!(parse_instance(&neg).unwrap_err(), Error::NegativeCost(1));
        let finite_terminal = TRIANGLE.replace(r#"{"id": 0, "cost": "inf"}"#, r#"{"id": 0, "cost": 1}"#);
        assert_eq!(parse_instance(&finite_terminal).unwrap_err(), Error::TerminalFiniteCost(0));
        assert!(matches!(parse_instance("{"), Err(Error::Parse(_))));
    }
}

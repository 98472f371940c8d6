//! Root-path separators and the recursive per-layer cutting process.

mod triangulate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{shortest_paths, Digraph, Direction, Instance, LengthAssignment, VertexId};
use crate::layering::LayerMinor;
use crate::path_cutting::path_cutting;
use crate::region::GrowthParams;

pub use triangulate::{triangulate, Triangulation};

/// Largest graph on which the exhaustive three-path search runs.
pub const HALF_MODE_LIMIT: usize = 60;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparatorMode {
    /// Two root paths closing a fundamental cycle; components at most 2n/3.
    #[default]
    Cycle,
    /// Up to three root paths; components at most n/2.
    Half,
}

impl FromStr for SeparatorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(Self::Cycle),
            "half" => Ok(Self::Half),
            _ => Err(Error::Parse(format!("unknown separator mode {s:?}"))),
        }
    }
}

impl fmt::Display for SeparatorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cycle => "cycle",
            Self::Half => "half",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorPaths {
    /// Directed paths that start (out-trees) or end (in-trees) at the root.
    pub paths: Vec<Vec<VertexId>>,
    pub n: usize,
    /// Size of the largest weak component left after removing the paths.
    pub max_component: usize,
    /// `max_component / n`.
    pub balance: f64,
    /// Mode actually used; large graphs fall back from `Half` to `Cycle`.
    pub mode: SeparatorMode,
}

/// Size of the largest weak component among vertices not in `removed`.
fn largest_component(g: &Digraph, removed: &[bool], seen: &mut Vec<bool>, stack: &mut Vec<VertexId>) -> usize {
    seen.clear();
    seen.extend_from_slice(removed);
    let mut best = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.out_neighbors(u).iter().chain(g.in_neighbors(u)) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

struct Tree {
    parent: Vec<Option<VertexId>>,
}

impl Tree {
    fn mark(&self, v: VertexId, into: &mut [bool]) {
        let mut cur = Some(v);
        while let Some(u) = cur {
            if into[u] {
                break;
            }
            into[u] = true;
            cur = self.parent[u];
        }
    }

    fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        let mut cur = Some(b);
        while let Some(u) = cur {
            if u == a {
                return true;
            }
            cur = self.parent[u];
        }
        false
    }
}

/// Shortest-path tree from (`Out`) or to (`In`) `root` and a balanced set of
/// root paths in it.
pub fn root_path_separator(
    inst: &Instance,
    x: &LengthAssignment,
    root: VertexId,
    parity: Direction,
    mode: SeparatorMode,
) -> Result<SeparatorPaths> {
    let g = inst.graph();
    let n = g.n();
    let sp = shortest_paths(g, x.x(), root, parity, None, f64::INFINITY);
    if let Some(v) = (0..n).find(|&v| !sp.dist[v].is_finite()) {
        return Err(Error::NotRooted { root, vertex: v });
    }
    let tree = Tree { parent: sp.parent.clone() };
    let mut removed = vec![false; n];
    let mut seen = Vec::with_capacity(n);
    let mut stack = Vec::new();
    let mut evaluate = |ends: &[VertexId]| {
        removed.iter_mut().for_each(|r| *r = false);
        for &v in ends {
            tree.mark(v, &mut removed);
        }
        largest_component(g, &removed, &mut seen, &mut stack)
    };

    let (ends, max_component, used) = if mode == SeparatorMode::Half && n <= HALF_MODE_LIMIT {
        // Fewest paths first; within a path count, the best balance.
        let fits = |m: usize| 2 * m <= n;
        let mut found: Option<(usize, Vec<VertexId>)> = None;
        let mut offer = |ends: Vec<VertexId>, found: &mut Option<(usize, Vec<VertexId>)>| {
            let m = evaluate(&ends);
            if found.as_ref().map_or(true, |(bm, _)| m < *bm) {
                *found = Some((m, ends));
            }
        };
        for a in 0..n {
            offer(vec![a], &mut found);
        }
        if !found.as_ref().is_some_and(|(m, _)| fits(*m)) {
            for a in 0..n {
                for b in a + 1..n {
                    offer(vec![a, b], &mut found);
                }
            }
        }
        if !found.as_ref().is_some_and(|(m, _)| fits(*m)) {
            'triples: for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        offer(vec![a, b, c], &mut found);
                        if found.as_ref().is_some_and(|(m, _)| fits(*m)) {
                            break 'triples;
                        }
                    }
                }
            }
        }
        let found = found.filter(|(m, _)| fits(*m)).map(|(_, e)| e);
        let ends = found.ok_or(Error::NoBalancedCycle { n })?;
        let m = evaluate(&ends);
        (ends, m, SeparatorMode::Half)
    } else {
        // Candidates: every single root path, then every fundamental cycle of
        // a non-tree edge of the triangulation.
        let tri = triangulate(g);
        let mut best: Option<(usize, usize, Vec<VertexId>)> = None;
        let mut consider = |ends: Vec<VertexId>, best: &mut Option<(usize, usize, Vec<VertexId>)>| {
            let m = evaluate(&ends);
            let better = match best {
                None => true,
                Some((bm, bl, _)) => (m, ends.len()) < (*bm, *bl),
            };
            if better {
                *best = Some((m, ends.len(), ends));
            }
        };
        for v in 0..n {
            consider(vec![v], &mut best);
        }
        for &(a, b) in tri.graph.edges() {
            let is_tree = tree.parent[a] == Some(b) || tree.parent[b] == Some(a);
            if !is_tree && a != b {
                consider(vec![a.min(b), a.max(b)], &mut best);
            }
        }
        let (m, _, ends) = best.ok_or(Error::NoBalancedCycle { n })?;
        if m > (2 * n).div_ceil(3) {
            return Err(Error::NoBalancedCycle { n });
        }
        (ends, m, SeparatorMode::Cycle)
    };

    // Drop paths contained in another selected path.
    let mut keep: Vec<VertexId> = Vec::new();
    for &v in &ends {
        if ends.iter().any(|&w| w != v && tree.is_ancestor(v, w)) {
            continue;
        }
        if !keep.contains(&v) {
            keep.push(v);
        }
    }
    let paths = keep
        .iter()
        .map(|&v| sp.path(v, parity).expect("reachable"))
        .collect();
    Ok(SeparatorPaths {
        paths,
        n,
        max_component,
        balance: max_component as f64 / n as f64,
        mode: used,
    })
}

/// Statistics of one separator call inside the recursion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparatorRecord {
    pub depth: usize,
    pub n: usize,
    pub max_component: usize,
    pub paths: usize,
    pub path_lengths: Vec<f64>,
    pub mode: SeparatorMode,
}

#[derive(Clone, Debug, Default)]
pub struct LayerCut {
    /// Cut vertices in the ids of the minor's origin graph, sorted.
    pub cut: Vec<VertexId>,
    /// Number of recursion levels that ran a separator.
    pub depth: usize,
    pub separators: Vec<SeparatorRecord>,
}

struct Component {
    inst: Instance,
    x: LengthAssignment,
    root: VertexId,
    root_is_real: bool,
    origin: Vec<Option<VertexId>>,
}

/// Recursively separates a δ-bounded minor, cutting around every separator
/// path, until each component has at most one vertex besides the contracted root.
pub fn cut_layer(minor: &LayerMinor, params: &GrowthParams, mode: SeparatorMode) -> Result<LayerCut> {
    let mut out = LayerCut::default();
    let mut cut = Vec::new();
    let top = Component {
        inst: minor.instance.clone(),
        x: minor.lengths.clone(),
        root: minor.root,
        root_is_real: minor.origin[minor.root].is_some(),
        origin: minor.origin.clone(),
    };
    recurse(top, minor.parity, 1, params, mode, &mut cut, &mut out)?;
    cut.sort_unstable();
    cut.dedup();
    out.cut = cut;
    Ok(out)
}

fn recurse(
    comp: Component,
    parity: Direction,
    depth: usize,
    params: &GrowthParams,
    mode: SeparatorMode,
    cut: &mut Vec<VertexId>,
    out: &mut LayerCut,
) -> Result<()> {
    let Component { inst, x, root, root_is_real, origin } = comp;
    let real = inst.n() - usize::from(!root_is_real);
    if real <= 1 {
        return Ok(());
    }
    out.depth = out.depth.max(depth);
    let sep = root_path_separator(&inst, &x, root, parity, mode)?;
    out.separators.push(SeparatorRecord {
        depth,
        n: sep.n,
        max_component: sep.max_component,
        paths: sep.paths.len(),
        path_lengths: sep.paths.iter().map(|p| p.iter().map(|&v| x.get(v)).sum()).collect(),
        mode: sep.mode,
    });
    let mut on_paths = vec![false; inst.n()];
    for path in &sep.paths {
        let trimmed: Vec<VertexId> = path.iter().copied().filter(|&v| root_is_real || v != root).collect();
        for &v in path {
            on_paths[v] = true;
        }
        if trimmed.is_empty() {
            continue;
        }
        let pc = path_cutting(&inst, &x, &trimmed, params)?;
        cut.extend(pc.cut.iter().filter_map(|&v| origin[v]));
    }

    let union: Vec<VertexId> = (0..inst.n()).filter(|&v| on_paths[v] && v != root).collect();
    let (next, map) = inst.contract_connected(&union, root)?;
    let next_x = map.push_lengths(&x);
    let next_origin: Vec<Option<VertexId>> = map
        .provenance
        .iter()
        .enumerate()
        .map(|(v, olds)| if v == map.merged { None } else { origin[olds[0]] })
        .collect();
    let new_root = map.merged;
    let mut alive = vec![true; next.n()];
    alive[new_root] = false;
    for mut members in next.graph().weak_components_within(&alive) {
        members.push(new_root);
        let (sub, old_of) = next.induced(&members);
        let sub_root = old_of.binary_search(&new_root).expect("root kept");
        let child = Component {
            x: LengthAssignment::new(old_of.iter().map(|&v| next_x.get(v)).collect()),
            origin: old_of.iter().map(|&v| next_origin[v]).collect(),
            inst: sub,
            root: sub_root,
            root_is_real: false,
        };
        recurse(child, parity, depth + 1, params, mode, cut, out)?;
    }
    Ok(())
}

//! Feasibility checks, the exhaustive multicut oracle, and per-lemma audits.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{shortest_paths, CutSet, Digraph, Direction, Instance, LengthAssignment, VertexId, EPS};
use crate::layering::{LayerMinor, Layering};
use crate::path_cutting::{path_cutting, PathCut};
use crate::region::{grow, GrowthParams};
use crate::rounding::{solve_detailed, Rounding, RoundingConfig};
use crate::separator::{root_path_separator, SeparatorMode};

/// Largest number of finite-cost vertices the exact oracle accepts.
pub const EXACT_LIMIT: usize = 20;

/// Largest component on which simple paths are enumerated.
pub const PATH_ENUMERATION_LIMIT: usize = 10;

/// Largest graph on which the all-pairs audits run.
pub const ALL_PAIRS_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pair: usize,
    /// A surviving path from `s` to `t`.
    pub path: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub witness: Option<Witness>,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        self.witness.is_none()
    }
}

/// Vertices reachable from `sources` avoiding `removed`, following edges
/// forwards (`Out`) or backwards (`In`).
pub fn reachable(g: &Digraph, removed: &[bool], sources: &[VertexId], dir: Direction) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !removed[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = match dir {
            Direction::Out => g.out_neighbors(u),
            Direction::In => g.in_neighbors(u),
        };
        for &w in next {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

fn surviving_path(g: &Digraph, removed: &[bool], s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    if removed[s] || removed[t] {
        return None;
    }
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.out_neighbors(u) {
            if !removed[w] && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Directed BFS per pair in `G \ cut`; reports the first pair still connected.
pub fn check_feasible(inst: &Instance, cut: &CutSet) -> Feasibility {
    let mut removed = vec![false; inst.n()];
    for &v in &cut.members {
        removed[v] = true;
    }
    let witness = inst.pairs().iter().enumerate().find_map(|(pair, &(s, t))| {
        surviving_path(inst.graph(), &removed, s, t).map(|path| Witness { pair, path })
    });
    Feasibility { witness }
}

/// Minimum-cost multicut by scanning all subsets of finite-cost vertices.
/// Among equal costs the lexicographically smallest id set wins.
pub fn exact_multicut(inst: &Instance) -> Result<CutSet> {
    let finite = inst.finite_vertices();
    let m = finite.len();
    if m > EXACT_LIMIT {
        return Err(Error::TooLarge { count: m, limit: EXACT_LIMIT });
    }
    let cost: Vec<f64> = finite.iter().map(|&v| inst.cost(v).finite().unwrap_or(0.0)).collect();
    let mut removed = vec![false; inst.n()];
    for &v in &finite {
        removed[v] = true;
    }
    if let Some((pair, _)) = inst
        .pairs()
        .iter()
        .enumerate()
        .find(|(_, &(s, t))| surviving_path(inst.graph(), &removed, s, t).is_some())
    {
        return Err(Error::Infeasible { pair });
    }
    let members_of = |mask: u32| -> Vec<VertexId> { (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| finite[i]).collect() };
    let mut best: Option<(f64, Vec<VertexId>)> = None;
    for mask in 0u32..(1u32 << m) {
        let c: f64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| cost[i]).sum();
        if let Some((bc, _)) = &best {
            if c > bc + EPS {
                continue;
            }
        }
        let members = members_of(mask);
        let better = match &best {
            None => true,
            Some((bc, bm)) => c < bc - EPS || members < *bm,
        };
        if !better {
            continue;
        }
        removed.iter_mut().for_each(|r| *r = false);
        for &v in &members {
            removed[v] = true;
        }
        if inst.pairs().iter().all(|&(s, t)| surviving_path(inst.graph(), &removed, s, t).is_none()) {
            best = Some((c, members));
        }
    }
    let (_, members) = best.expect("removing every finite vertex is feasible");
    CutSet::new(inst, members)
}

/// The audited statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Region growing boundary bound and radius range.
    Lemma1,
    /// Layering iteration count.
    Claim1,
    /// Layer reachability in `G \ S'`.
    Claim2,
    /// Layering cut cost.
    Lemma3,
    /// Surviving paths stay in two consecutive layers.
    Lemma4,
    /// Ball reachability in path cutting.
    Claim3,
    /// Surviving paths through a separator path are short.
    Lemma7,
    /// Reachable pairs in a cut layer are close.
    Lemma5,
    /// Separator balance, path lengths and recursion depth.
    Separator,
    Feasibility,
    /// Cost against `K * L^2 * lp_value`.
    Ratio,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Lemma1,
        Check::Claim1,
        Check::Claim2,
        Check::Lemma3,
        Check::Lemma4,
        Check::Claim3,
        Check::Lemma7,
        Check::Lemma5,
        Check::Separator,
        Check::Feasibility,
        Check::Ratio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemma1 => "lemma1",
            Check::Claim1 => "claim1",
            Check::Claim2 => "claim2",
            Check::Lemma3 => "lemma3",
            Check::Lemma4 => "lemma4",
            Check::Claim3 => "claim3",
            Check::Lemma7 => "lemma7",
            Check::Lemma5 => "lemma5",
            Check::Separator => "separator",
            Check::Feasibility => "feasibility",
            Check::Ratio => "ratio",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditResult {
    pub lemma: Check,
    pub instances_checked: usize,
    /// Individual assertions evaluated.
    pub checks: usize,
    pub violations: usize,
    /// Smallest `bound - value` seen; `None` for pure reachability checks.
    pub worst_slack: Option<f64>,
}

impl AuditResult {
    pub fn new(lemma: Check) -> Self {
        Self { lemma, instances_checked: 0, checks: 0, violations: 0, worst_slack: None }
    }

    /// Records `value <= bound` up to `EPS`.
    pub fn bound(&mut self, value: f64, bound: f64) {
        self.checks += 1;
        let slack = bound - value;
        if slack < -EPS {
            self.violations += 1;
        }
        self.worst_slack = Some(self.worst_slack.map_or(slack, |w| w.min(slack)));
    }

    pub fn holds(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
        }
    }

    pub fn merge(&mut self, other: &AuditResult) {
        self.instances_checked += other.instances_checked;
        self.checks += other.checks;
        self.violations += other.violations;
        if let Some(s) = other.worst_slack {
            self.worst_slack = Some(self.worst_slack.map_or(s, |w| w.min(s)));
        }
    }
}

/// Region growing from `centers` in both directions, checked against the
/// explicit bound and the radius range.
pub fn audit_region_growth(
    inst: &Instance,
    x: &LengthAssignment,
    params: &GrowthParams,
    centers: &[VertexId],
    out: &mut AuditResult,
) -> Result<()> {
    for &v in centers {
        for dir in [Direction::Out, Direction::In] {
            let r = grow(inst.graph(), inst.costs(), x.x(), None, v, params, dir)?;
            out.bound(r.boundary_cost, params.boundary_bound(r.ball_volume, r.current_volume));
            out.holds(r.radius >= params.step() - EPS && r.radius < params.delta);
        }
    }
    Ok(())
}

fn removed_mask(n: usize, cut: &[VertexId]) -> Vec<bool> {
    let mut removed = vec![false; n];
    for &v in cut {
        removed[v] = true;
    }
    removed
}

/// Claim 2: even layers reach nothing outside themselves in `G \ S'`, odd
/// layers are reached from nothing outside.
pub fn audit_layer_separation(inst: &Instance, layering: &Layering, out: &mut AuditResult) {
    let removed = removed_mask(inst.n(), &layering.cut);
    let of = layering.layer_of(inst.n());
    for (i, layer) in layering.layers.iter().enumerate() {
        let dir = if i % 2 == 0 { Direction::Out } else { Direction::In };
        let seen = reachable(inst.graph(), &removed, layer, dir);
        out.holds((0..inst.n()).all(|w| !seen[w] || of[w] == i));
    }
}

/// Lemma 4 by enumerating every simple path of `G \ S'`.
pub fn audit_two_layers(inst: &Instance, layering: &Layering, out: &mut AuditResult) {
    let removed = removed_mask(inst.n(), &layering.cut);
    let of = layering.layer_of(inst.n());
    let g = inst.graph();
    let mut on = vec![false; inst.n()];
    let mut stack = Vec::new();
    fn dfs(
        g: &Digraph,
        u: VertexId,
        removed: &[bool],
        of: &[usize],
        on: &mut [bool],
        stack: &mut Vec<VertexId>,
        out: &mut AuditResult,
    ) {
        on[u] = true;
        stack.push(u);
        let seq: Vec<usize> = stack.iter().map(|&v| of[v]).collect();
        let changes = seq.windows(2).filter(|w| w[0] != w[1]).count();
        let (lo, hi) = (*seq.iter().min().unwrap(), *seq.iter().max().unwrap());
        out.holds(changes <= 1 && hi - lo <= 1);
        for &w in g.out_neighbors(u) {
            if !removed[w] && !on[w] {
                dfs(g, w, removed, of, on, stack, out);
            }
        }
        stack.pop();
        on[u] = false;
    }
    for s in (0..inst.n()).filter(|&s| !removed[s]) {
        dfs(g, s, &removed, &of, &mut on, &mut stack, out);
    }
}

/// Claim 3 for both ball sequences of one path cut.
pub fn audit_ball_reachability(inst: &Instance, pc: &PathCut, out: &mut AuditResult) {
    let n = inst.n();
    let removed = removed_mask(n, &pc.cut);
    for seq in [&pc.in_balls, &pc.out_balls] {
        let mut prefix = vec![false; n];
        for ball in &seq.balls {
            for &u in &ball.ball {
                prefix[u] = true;
            }
            match seq.direction {
                Direction::In => {
                    let outside: Vec<VertexId> = (0..n).filter(|&w| !prefix[w]).collect();
                    let seen = reachable(inst.graph(), &removed, &outside, Direction::Out);
                    out.holds(ball.ball.iter().all(|&u| !seen[u]));
                }
                Direction::Out => {
                    let seen = reachable(inst.graph(), &removed, &ball.ball, Direction::Out);
                    out.holds((0..n).all(|w| !seen[w] || prefix[w]));
                }
            }
        }
    }
}

/// All-pairs distances by Dijkstra from every vertex.
fn all_pairs(inst: &Instance, x: &LengthAssignment) -> Vec<Vec<f64>> {
    (0..inst.n())
        .map(|s| shortest_paths(inst.graph(), x.x(), s, Direction::Out, None, f64::INFINITY).dist)
        .collect()
}

/// Lemma 7: every `u -> q -> w` in `G \ S` with `q` on the path has
/// `d(u, w) <= 3δ`.
pub fn audit_path_pairs(
    inst: &Instance,
    x: &LengthAssignment,
    path: &[VertexId],
    cut: &[VertexId],
    delta: f64,
    out: &mut AuditResult,
) {
    let n = inst.n();
    let removed = removed_mask(n, cut);
    let d = all_pairs(inst, x);
    let from: Vec<Vec<bool>> = path.iter().map(|&q| reachable(inst.graph(), &removed, &[q], Direction::Out)).collect();
    let to: Vec<Vec<bool>> = path.iter().map(|&q| reachable(inst.graph(), &removed, &[q], Direction::In)).collect();
    for u in 0..n {
        for w in 0..n {
            if (0..path.len()).any(|j| to[j][u] && from[j][w]) {
                out.bound(d[u][w], 3.0 * delta);
            }
        }
    }
}

/// Lemma 5 on one minor: pairs that stay connected away from a contracted
/// root are within `3δ` in the minor's metric.
pub fn audit_layer_pairs(minor: &LayerMinor, layer_cut: &[VertexId], delta: f64, out: &mut AuditResult) {
    let n = minor.instance.n();
    let mut removed = vec![false; n];
    for v in 0..n {
        match minor.origin[v] {
            Some(o) => removed[v] = layer_cut.binary_search(&o).is_ok(),
            None => removed[v] = true,
        }
    }
    let d = all_pairs(&minor.instance, &minor.lengths);
    for u in (0..n).filter(|&u| !removed[u]) {
        let seen = reachable(minor.instance.graph(), &removed, &[u], Direction::Out);
        for w in (0..n).filter(|&w| seen[w]) {
            out.bound(d[u][w], 3.0 * delta);
        }
    }
}

fn ceil_log(base: f64, n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        ((n as f64).ln() / base.ln() - 1e-12).ceil() as usize
    }
}

/// Balance limit of one separator call on `n` vertices.
pub fn balance_limit(mode: SeparatorMode, n: usize) -> usize {
    match mode {
        SeparatorMode::Half => n.div_ceil(2),
        SeparatorMode::Cycle => (2 * n).div_ceil(3),
    }
}

/// Recursion depth allowed on an `n`-vertex layer.
pub fn depth_limit(n: usize) -> usize {
    ceil_log(1.5, n) + 1
}

fn selected(which: &[Check], c: Check) -> bool {
    which.is_empty() || which.contains(&c)
}

/// Runs the selected checks on one rounding run. `which` empty means all.
pub fn audit_rounding_with(
    inst: &Instance,
    rounding: &Rounding,
    config: &RoundingConfig,
    which: &[Check],
) -> Result<Vec<AuditResult>> {
    let mut results: Vec<AuditResult> = Check::ALL
        .into_iter()
        .filter(|&c| selected(which, c))
        .map(AuditResult::new)
        .collect();
    let params = &rounding.params;
    let delta = config.delta;
    for res in results.iter_mut() {
        let before = res.checks;
        match res.lemma {
            Check::Lemma1 => {
                for c in &rounding.components {
                    for g in &c.layering.growth {
                        res.bound(g.boundary_cost, params.boundary_bound(g.ball_volume, g.current_volume));
                        res.holds(g.radius >= params.step() - EPS && g.radius < delta);
                    }
                    let n = c.instance.n();
                    let stride = n.div_ceil(64).max(1);
                    let centers: Vec<VertexId> = (0..n).step_by(stride).collect();
                    audit_region_growth(&c.instance, &c.lengths, params, &centers, res)?;
                }
            }
            Check::Claim1 => {
                for c in &rounding.components {
                    res.holds(c.layering.iterations() <= 2 * c.instance.n());
                }
            }
            Check::Claim2 => {
                for c in &rounding.components {
                    audit_layer_separation(&c.instance, &c.layering, res);
                }
            }
            Check::Lemma3 => {
                for c in &rounding.components {
                    let vol = c.lengths.value(&c.instance)?;
                    res.bound(c.layering.cut_cost, 24.0 * params.levels as f64 * vol / delta);
                }
            }
            Check::Lemma4 => {
                for c in rounding.components.iter().filter(|c| c.instance.n() <= PATH_ENUMERATION_LIMIT) {
                    audit_two_layers(&c.instance, &c.layering, res);
                }
            }
            Check::Claim3 | Check::Lemma7 => {
                for c in &rounding.components {
                    for m in &c.layering.minors {
                        let n = m.instance.n();
                        if n < 2 || (res.lemma == Check::Lemma7 && n > ALL_PAIRS_LIMIT) {
                            continue;
                        }
                        let sep = root_path_separator(&m.instance, &m.lengths, m.root, m.parity, config.mode)?;
                        for path in &sep.paths {
                            let trimmed: Vec<VertexId> =
                                path.iter().copied().filter(|&v| v != m.root || m.origin[v].is_some()).collect();
                            if trimmed.is_empty() {
                                continue;
                            }
                            let pc = path_cutting(&m.instance, &m.lengths, &trimmed, params)?;
                            if res.lemma == Check::Claim3 {
                                audit_ball_reachability(&m.instance, &pc, res);
                            } else {
                                audit_path_pairs(&m.instance, &m.lengths, &trimmed, &pc.cut, delta, res);
                            }
                        }
                    }
                }
            }
            Check::Lemma5 => {
                for c in &rounding.components {
                    for (m, lc) in c.layering.minors.iter().zip(&c.layer_cuts) {
                        if m.instance.n() <= ALL_PAIRS_LIMIT {
                            audit_layer_pairs(m, &lc.cut, delta, res);
                        }
                    }
                }
            }
            Check::Separator => {
                for c in &rounding.components {
                    for (m, lc) in c.layering.minors.iter().zip(&c.layer_cuts) {
                        for s in &lc.separators {
                            res.holds(s.max_component <= balance_limit(s.mode, s.n));
                            for &len in &s.path_lengths {
                                res.bound(len, delta);
                            }
                        }
                        res.holds(lc.depth <= depth_limit(m.instance.n()));
                    }
                }
            }
            Check::Feasibility => res.holds(check_feasible(inst, &rounding.report.cut).is_feasible()),
            Check::Ratio => {
                let vol = rounding.lengths.value(inst)?;
                let levels = params.levels as f64;
                res.bound(rounding.report.cut.cost, rounding.report.constant * levels * levels * vol);
            }
        }
        if res.checks > before {
            res.instances_checked = 1;
        }
    }
    Ok(results)
}

/// All checks on one rounding run. Errors inside a check count as a violation.
pub fn audit_rounding(inst: &Instance, rounding: &Rounding, config: &RoundingConfig) -> Vec<AuditResult> {
    audit_rounding_with(inst, rounding, config, &[]).unwrap_or_else(|_| {
        Check::ALL
            .into_iter()
            .map(|c| AuditResult { instances_checked: 1, checks: 1, violations: 1, ..AuditResult::new(c) })
            .collect()
    })
}

/// Solves every instance and aggregates the selected checks. A failing
/// solve counts as a feasibility violation.
pub fn audit(corpus: &[Instance], which: &[Check], config: &RoundingConfig) -> Vec<AuditResult> {
    let per: Vec<Vec<AuditResult>> = corpus
        .par_iter()
        .map(|inst| {
            let run = solve_detailed(inst, &RoundingConfig { audit: false, ..*config })
                .and_then(|r| audit_rounding_with(inst, &r, config, which));
            run.unwrap_or_else(|_| {
                let mut f = AuditResult::new(Check::Feasibility);
                f.instances_checked = 1;
                f.holds(false);
                vec![f]
            })
        })
        .collect();
    let mut total: Vec<AuditResult> = Check::ALL
        .into_iter()
        .filter(|&c| selected(which, c))
        .map(AuditResult::new)
        .collect();
    for results in &per {
        for r in results {
            if let Some(t) = total.iter_mut().find(|t| t.lemma == r.lemma) {
                t.merge(r);
            }
        }
    }
    total
}

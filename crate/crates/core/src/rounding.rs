//! End-to-end rounding: heavy vertices, layering, and per-layer separators.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CutSet, Instance, LengthAssignment, VertexId, EPS};
use crate::layering::{build_layers, Layering};
use crate::lp::solve_lp;
use crate::region::{log_levels, GrowthParams};
use crate::separator::{cut_layer, LayerCut, SeparatorMode};
use crate::verify::{audit_rounding, check_feasible, AuditResult};

pub const DEFAULT_DELTA: f64 = 1.0 / 12.0;

/// `log_{3/2} 2 + 2`: recursion levels per unit of `L`, rounding included.
pub const DEPTH_FACTOR: f64 = std::f64::consts::LN_2 / 0.405_465_108_108_164_4 + 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RoundingConfig {
    pub delta: f64,
    pub mode: SeparatorMode,
    /// Run the per-lemma audits and attach them to the report.
    pub audit: bool,
}

impl Default for RoundingConfig {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
            mode: SeparatorMode::Cycle,
            audit: false,
        }
    }
}

impl RoundingConfig {
    /// Two legs of length `3δ` must stay below 1.
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && 6.0 * self.delta < 1.0) {
            return Err(Error::InvalidDelta(self.delta));
        }
        Ok(())
    }
}

/// Paths per separator charged in the cost bound.
pub fn paths_per_separator(mode: SeparatorMode) -> f64 {
    match mode {
        SeparatorMode::Cycle => 2.0,
        SeparatorMode::Half => 3.0,
    }
}

/// The constant `K` with `cost <= K * L^2 * lp_value`. See
/// `docs/approximation_constant.md`.
pub fn approximation_constant(delta: f64, mode: SeparatorMode) -> f64 {
    let heavy = 6.0;
    let layering = 24.0;
    let separators = 36.0 * paths_per_separator(mode) * DEPTH_FACTOR;
    (heavy + layering + separators) / delta
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutParts {
    /// `c(S_L)`: vertices with `x_v >= step`.
    pub heavy: f64,
    /// `c(S')` summed over components.
    pub layering: f64,
    /// `c(S_i)` per layer, components in order.
    pub layers: Vec<f64>,
    /// Sum of all parts; at least the union cost since the sets may overlap.
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundingReport {
    pub cut: CutSet,
    pub lp_value: f64,
    pub parts: CutParts,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub levels: usize,
    pub delta: f64,
    pub mode: SeparatorMode,
    /// `None` when the LP value is zero.
    pub ratio_vs_lp: Option<f64>,
    #[serde(rename = "K")]
    pub constant: f64,
    /// `K * L^2 * lp_value`.
    pub bound: f64,
    pub components: usize,
    pub layer_count: usize,
    pub max_separator_depth: usize,
    pub lp_constraints: usize,
    pub lp_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Vec<AuditResult>>,
}

/// One weak component of `G \ S_L` with everything computed on it.
#[derive(Clone, Debug)]
pub struct ComponentRounding {
    pub instance: Instance,
    pub lengths: LengthAssignment,
    /// Component vertex to input vertex.
    pub old_of: Vec<VertexId>,
    pub layering: Layering,
    pub layer_cuts: Vec<LayerCut>,
}

/// All intermediate structure of one rounding run.
#[derive(Clone, Debug)]
pub struct Rounding {
    pub params: GrowthParams,
    /// The assignment that was rounded.
    pub lengths: LengthAssignment,
    pub heavy: Vec<VertexId>,
    pub components: Vec<ComponentRounding>,
    pub report: RoundingReport,
}

pub fn round(inst: &Instance, x: &LengthAssignment, config: &RoundingConfig) -> Result<RoundingReport> {
    round_detailed(inst, x, config).map(|r| r.report)
}

pub fn round_detailed(inst: &Instance, x: &LengthAssignment, config: &RoundingConfig) -> Result<Rounding> {
    config.validate()?;
    x.validate(inst)?;
    let n = inst.n();
    let params = GrowthParams::new(config.delta, n.max(1));
    let step = params.step();
    let heavy: Vec<VertexId> = (0..n).filter(|&v| x.get(v) >= step).collect();
    let mut is_heavy = vec![false; n];
    for &v in &heavy {
        is_heavy[v] = true;
    }
    let alive: Vec<bool> = is_heavy.iter().map(|h| !h).collect();
    let groups = inst.graph().weak_components_within(&alive);

    let components: Vec<ComponentRounding> = groups
        .into_par_iter()
        .map(|members| {
            let (sub, old_of) = inst.induced(&members);
            let lengths = LengthAssignment::new(old_of.iter().map(|&v| x.get(v)).collect());
            let layering = build_layers(&sub, &lengths, &params)?;
            let layer_cuts = layering
                .minors
                .par_iter()
                .map(|m| cut_layer(m, &params, config.mode))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComponentRounding { instance: sub, lengths, old_of, layering, layer_cuts })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut members = heavy.clone();
    let mut parts = CutParts {
        heavy: CutSet::new(inst, heavy.iter().copied())?.cost,
        layering: 0.0,
        layers: Vec::new(),
        total: 0.0,
    };
    for c in &components {
        members.extend(c.layering.cut.iter().map(|&v| c.old_of[v]));
        parts.layering += c.layering.cut_cost;
        for lc in &c.layer_cuts {
            members.extend(lc.cut.iter().map(|&v| c.old_of[v]));
            parts.layers.push(lc.cut.iter().map(|&v| c.instance.cost(v).finite().unwrap_or(0.0)).fold(0.0, |a, b| a + b));
        }
    }
    parts.total = parts.heavy + parts.layering + parts.layers.iter().sum::<f64>();
    let cut = CutSet::new(inst, members)?;
    if let Some(w) = check_feasible(inst, &cut).witness {
        return Err(Error::FeasibilityCheckFailed { pair: w.pair });
    }

    let lp_value = x.value(inst)?;
    let constant = approximation_constant(config.delta, config.mode);
    let levels = log_levels(n.max(1));
    let report = RoundingReport {
        ratio_vs_lp: (lp_value > EPS).then(|| cut.cost / lp_value),
        cut,
        lp_value,
        parts,
        n,
        k: inst.pairs().len(),
        levels,
        delta: config.delta,
        mode: config.mode,
        constant,
        bound: constant * (levels * levels) as f64 * lp_value,
        components: components.len(),
        layer_count: components.iter().map(|c| c.layering.layers.len()).sum(),
        max_separator_depth: components
            .iter()
            .flat_map(|c| c.layer_cuts.iter().map(|l| l.depth))
            .max()
            .unwrap_or(0),
        lp_constraints: 0,
        lp_iterations: 0,
        audit: None,
    };
    let mut rounding = Rounding { params, lengths: x.clone(), heavy, components, report };
    if config.audit {
        rounding.report.audit = Some(audit_rounding(inst, &rounding, config));
    }
    Ok(rounding)
}

/// Solves the LP and rounds it.
pub fn solve(inst: &Instance, config: &RoundingConfig) -> Result<RoundingReport> {
    solve_detailed(inst, config).map(|r| r.report)
}

pub fn solve_detailed(inst: &Instance, config: &RoundingConfig) -> Result<Rounding> {
    config.validate()?;
    let lp = solve_lp(inst)?;
    let mut r = round_detailed(inst, &lp.assignment, config)?;
    // The reported value is the LP optimum, not the rescaled assignment's volume.
    r.report.lp_value = lp.value;
    r.report.ratio_vs_lp = (lp.value > EPS).then(|| r.report.cut.cost / lp.value);
    r.report.bound = r.report.constant * (r.report.levels * r.report.levels) as f64 * lp.value;
    r.report.lp_constraints = lp.constraints_generated;
    r.report.lp_iterations = lp.iterations;
    Ok(r)
}

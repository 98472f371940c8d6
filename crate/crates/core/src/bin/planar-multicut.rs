use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use planar_multicut::bench::{bench, BenchOptions, CorpusSpec};
use planar_multicut::generate::{generate, GenKind, GenSpec, Orientation};
use planar_multicut::graph::io::{instance_to_json, parse_edge_instance, parse_instance};
use planar_multicut::graph::{edge_to_node_reduction, CutSet, Instance};
use planar_multicut::lp::solve_lp;
use planar_multicut::rounding::{solve, solve_detailed, RoundingConfig, DEFAULT_DELTA};
use planar_multicut::separator::SeparatorMode;
use planar_multicut::verify::{audit, check_feasible, exact_multicut, Check, Witness};
use planar_multicut::{Error, Result};

/// Node-weighted multicut in planar digraphs by LP rounding.
#[derive(Parser)]
#[command(name = "planar-multicut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Rounding {
    /// Layer width; must satisfy 0 < delta < 1/6.
    #[arg(long, env = "PMC_DELTA", default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, env = "PMC_SEPARATOR_MODE", default_value_t = SeparatorMode::Cycle)]
    separator_mode: SeparatorMode,
}

impl Rounding {
    fn config(&self, audit: bool) -> RoundingConfig {
        RoundingConfig { delta: self.delta, mode: self.separator_mode, audit }
    }
}

#[derive(Args, Clone)]
struct Corpus {
    /// Instance files. When empty, a corpus is generated.
    files: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "grid,triangulation")]
    kinds: Vec<GenKind>,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    n_min: usize,
    #[arg(long, default_value_t = 60)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    #[arg(long, default_value_t = 10)]
    max_cost: u32,
    #[arg(long, env = "PMC_SEED", default_value_t = 0)]
    seed: u64,
}

impl Corpus {
    fn load(&self) -> Result<Vec<(String, Instance)>> {
        if !self.files.is_empty() {
            return self.files.iter().map(|p| Ok((p.display().to_string(), read_instance(p)?))).collect();
        }
        let spec = CorpusSpec {
            kinds: self.kinds.clone(),
            count: self.count,
            n_min: self.n_min,
            n_max: self.n_max,
            k_min: self.k_min,
            k_max: self.k_max.max(self.k_min),
            max_cost: self.max_cost,
            seed: self.seed,
        };
        let names = spec.specs().iter().map(|s| format!("{}-n{}-k{}-s{}", s.kind, s.n, s.k, s.seed)).collect::<Vec<_>>();
        Ok(names.into_iter().zip(spec.generate()?).collect())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        #[arg(long, default_value = "grid")]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        max_cost: u32,
        #[arg(long, default_value = "random")]
        orientation: Orientation,
        #[arg(long, env = "PMC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve the LP relaxation.
    Lp {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve the LP and round it to a multicut.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        rounding: Rounding,
        /// Attach per-lemma audits to the report.
        #[arg(long, env = "PMC_AUDIT")]
        audit: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Show the layering of the rounded instance.
    Layers {
        instance: PathBuf,
        #[command(flatten)]
        rounding: Rounding,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a cut separates every pair.
    Verify {
        instance: PathBuf,
        cut: PathBuf,
        /// Also compute the exact optimum (at most 20 finite-cost vertices).
        #[arg(long, env = "PMC_EXACT")]
        exact: bool,
    },
    /// Run the per-lemma audits over a corpus.
    Audit {
        #[command(flatten)]
        corpus: Corpus,
        #[command(flatten)]
        rounding: Rounding,
        /// Comma separated checks; all when omitted.
        #[arg(long, value_delimiter = ',')]
        check: Vec<Check>,
    },
    /// Tabulate cost ratios over a corpus.
    Bench {
        #[command(flatten)]
        corpus: Corpus,
        #[command(flatten)]
        rounding: Rounding,
        #[arg(long, env = "PMC_EXACT")]
        exact: bool,
        /// Leave out wall times so the table is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long, default_value_t = '\t')]
        delimiter: char,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Subdivide every edge of an edge-weighted instance.
    ReduceEdges {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

#[derive(Serialize)]
struct LpOut {
    value: f64,
    x: BTreeMap<usize, f64>,
    iterations: usize,
    constraints: usize,
}

#[derive(Serialize)]
struct LayersOut {
    layers: Vec<Vec<usize>>,
    cut: Vec<usize>,
    parities: Vec<String>,
    heavy: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyOut {
    feasible: bool,
    cost: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt: Option<CutSet>,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { kind, n, k, max_cost, orientation, seed, output } => {
            let spec = GenSpec { kind, n, k, max_cost, orientation, seed };
            emit(&output, &instance_to_json(&generate(&spec)?))?;
        }
        Command::Lp { instance, output } => {
            let inst = read_instance(&instance)?;
            let lp = solve_lp(&inst)?;
            let out = LpOut {
                value: lp.value,
                x: lp.assignment.x().iter().copied().enumerate().collect(),
                iterations: lp.iterations,
                constraints: lp.constraints_generated,
            };
            emit(&output, &json(&out))?;
        }
        Command::Solve { instance, rounding, audit, output } => {
            let inst = read_instance(&instance)?;
            let report = solve(&inst, &rounding.config(audit))?;
            emit(&output, &json(&report))?;
            let violations: usize = report.audit.iter().flatten().map(|a| a.violations).sum();
            return Ok(violations == 0);
        }
        Command::Layers { instance, rounding, output } => {
            let inst = read_instance(&instance)?;
            let r = solve_detailed(&inst, &rounding.config(false))?;
            let mut out = LayersOut { layers: Vec::new(), cut: Vec::new(), parities: Vec::new(), heavy: r.heavy.clone() };
            for c in &r.components {
                for layer in &c.layering.layers {
                    out.layers.push(layer.iter().map(|&v| c.old_of[v]).collect());
                }
                out.cut.extend(c.layering.cut.iter().map(|&v| c.old_of[v]));
                out.parities.extend(c.layering.parities.iter().map(|p| format!("{p:?}").to_lowercase()));
            }
            out.cut.sort_unstable();
            emit(&output, &json(&out))?;
        }
        Command::Verify { instance, cut, exact } => {
            let inst = read_instance(&instance)?;
            let text = fs::read_to_string(&cut).map_err(|e| Error::Parse(format!("{}: {e}", cut.display())))?;
            let given: CutSet = serde_json::from_str(&text)?;
            let cut = CutSet::new(&inst, given.members)?;
            let f = check_feasible(&inst, &cut);
            let opt = if exact { Some(exact_multicut(&inst)?) } else { None };
            let out = VerifyOut { feasible: f.is_feasible(), cost: cut.cost, witness: f.witness, opt };
            emit(&None, &json(&out))?;
            return Ok(out.feasible);
        }
        Command::Audit { corpus, rounding, check } => {
            let instances: Vec<Instance> = corpus.load()?.into_iter().map(|(_, i)| i).collect();
            let results = audit(&instances, &check, &rounding.config(false));
            println!("check\tinstances\tchecks\tviolations\tworst_slack");
            for r in &results {
                let slack = r.worst_slack.map_or_else(|| "-".into(), |s| format!("{s:.6e}"));
                println!("{}\t{}\t{}\t{}\t{}", r.lemma, r.instances_checked, r.checks, r.violations, slack);
            }
            return Ok(results.iter().all(|r| r.violations == 0));
        }
        Command::Bench { corpus, rounding, exact, no_timing, delimiter, output } => {
            let instances = corpus.load()?;
            let opts = BenchOptions { config: rounding.config(false), exact, timing: !no_timing, delimiter };
            let table = bench(&instances, &opts);
            emit(&output, table.to_text().trim_end())?;
            return Ok(table.summary.map_or(true, |s| s.failures == 0));
        }
        Command::ReduceEdges { instance, output } => {
            let text =
                fs::read_to_string(&instance).map_err(|e| Error::Parse(format!("{}: {e}", instance.display())))?;
            let reduced = edge_to_node_reduction(&parse_edge_instance(&text)?)?;
            emit(&output, &instance_to_json(&reduced))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Runs the solver over a corpus and tabulates ratios.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generate::{generate, GenKind, GenSpec};
use crate::graph::Instance;
use crate::rounding::{solve, RoundingConfig};
use crate::verify::exact_multicut;

/// `count` generated instances; instance `i` uses seed `seed + i` and a size
/// spread evenly over `[n_min, n_max]`. The pair count cycles through
/// `[k_min, k_max]` but never exceeds `n / 4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kinds: Vec<GenKind>,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub max_cost: u32,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn specs(&self) -> Vec<GenSpec> {
        (0..self.count)
            .map(|i| {
                let spread = |lo: usize, hi: usize| {
                    if self.count <= 1 || hi <= lo {
                        lo
                    } else {
                        lo + (hi - lo) * i / (self.count - 1)
                    }
                };
                let kind = self.kinds[i % self.kinds.len().max(1)];
                let mut spec = GenSpec::new(kind, spread(self.n_min, self.n_max), 1, self.seed + i as u64);
                let k = self.k_min + (i * 7) % (self.k_max - self.k_min + 1);
                spec.k = k.min((spec.n / 4).max(1));
                spec.max_cost = self.max_cost;
                spec
            })
            .collect()
    }

    pub fn generate(&self) -> Result<Vec<Instance>> {
        self.specs().iter().map(generate).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchOptions {
    pub config: RoundingConfig,
    /// Adds the exhaustive optimum when the instance is small enough.
    pub exact: bool,
    /// Records wall time; turn off for byte-reproducible tables.
    pub timing: bool,
    pub delimiter: char,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self { config: RoundingConfig::default(), exact: false, timing: true, delimiter: '\t' }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: usize,
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub lp: f64,
    pub cost: f64,
    pub ratio: Option<f64>,
    pub l2: f64,
    pub ratio_over_l2: Option<f64>,
    pub opt: Option<f64>,
    pub ratio_vs_opt: Option<f64>,
    pub wall_ms: Option<f64>,
    /// `ok` or the error message.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub rows: usize,
    pub failures: usize,
    pub max_ratio_over_l2: f64,
    pub mean_ratio_over_l2: f64,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchTable {
    pub exact: bool,
    pub timing: bool,
    pub delimiter: char,
    pub rows: Vec<BenchRow>,
    pub summary: Option<BenchSummary>,
}

fn run_one(id: usize, name: &str, inst: &Instance, opts: &BenchOptions) -> BenchRow {
    let start = Instant::now();
    let solved = solve(inst, &opts.config);
    let wall_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut row = BenchRow {
        id,
        name: name.to_string(),
        n: inst.n(),
        k: inst.pairs().len(),
        lp: f64::NAN,
        cost: f64::NAN,
        ratio: None,
        l2: f64::NAN,
        ratio_over_l2: None,
        opt: None,
        ratio_vs_opt: None,
        wall_ms,
        status: "ok".into(),
    };
    match solved {
        Ok(r) => {
            let l2 = (r.levels * r.levels) as f64;
            row.lp = r.lp_value;
            row.cost = r.cut.cost;
            row.ratio = r.ratio_vs_lp;
            row.l2 = l2;
            row.ratio_over_l2 = r.ratio_vs_lp.map(|x| x / l2);
            if opts.exact {
                if let Ok(opt) = exact_multicut(inst) {
                    row.opt = Some(opt.cost);
                    row.ratio_vs_opt = (opt.cost > 0.0).then(|| r.cut.cost / opt.cost);
                }
            }
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

/// Rows come back in corpus order regardless of which finished first.
pub fn bench(corpus: &[(String, Instance)], opts: &BenchOptions) -> BenchTable {
    let rows: Vec<BenchRow> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, (name, inst))| run_one(i, name, inst, opts))
        .collect();
    let ok: Vec<&BenchRow> = rows.iter().filter(|r| r.status == "ok").collect();
    let scaled: Vec<f64> = ok.iter().filter_map(|r| r.ratio_over_l2).collect();
    let summary = (!rows.is_empty()).then(|| BenchSummary {
        rows: rows.len(),
        failures: rows.len() - ok.len(),
        max_ratio_over_l2: scaled.iter().copied().fold(0.0, f64::max),
        mean_ratio_over_l2: if scaled.is_empty() { 0.0 } else { scaled.iter().sum::<f64>() / scaled.len() as f64 },
        max_ratio: ok.iter().filter_map(|r| r.ratio).fold(0.0, f64::max),
    });
    BenchTable { exact: opts.exact, timing: opts.timing, delimiter: opts.delimiter, rows, summary }
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "-".into()
    } else {
        format!("{x:.6}")
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), num)
}

impl BenchTable {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["id", "name", "n", "k", "lp", "cost", "ratio", "L2", "ratio/L2"];
        if self.exact {
            h.extend(["opt", "ratio_vs_opt"]);
        }
        if self.timing {
            h.push("wall_ms");
        }
        h.push("status");
        h
    }

    /// Header, one line per row, then `#`-prefixed summary lines.
    pub fn to_text(&self) -> String {
        let d = self.delimiter.to_string();
        let mut out = self.header().join(&d);
        out.push('\n');
        for r in &self.rows {
            let mut cells = vec![
                r.id.to_string(),
                r.name.clone(),
                r.n.to_string(),
                r.k.to_string(),
                num(r.lp),
                num(r.cost),
                opt_num(r.ratio),
                num(r.l2),
                opt_num(r.ratio_over_l2),
            ];
            if self.exact {
                cells.push(opt_num(r.opt));
                cells.push(opt_num(r.ratio_vs_opt));
            }
            if self.timing {
                cells.push(opt_num(r.wall_ms));
            }
            cells.push(r.status.replace(self.delimiter, " "));
            out.push_str(&cells.join(&d));
            out.push('\n');
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "# rows{d}{}", s.rows);
            let _ = writeln!(out, "# failures{d}{}", s.failures);
            let _ = writeln!(out, "# max_ratio{d}{}", num(s.max_ratio));
            let _ = writeln!(out, "# max_ratio/L2{d}{}", num(s.max_ratio_over_l2));
            let _ = writeln!(out, "# mean_ratio/L2{d}{}", num(s.mean_ratio_over_l2));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grids(count: usize) -> Vec<(String, Instance)> {
        let spec = CorpusSpec {
            kinds: vec![GenKind::Grid],
            count,
            n_min: 9,
            n_max: 16,
            k_min: 1,
            k_max: 2,
            max_cost: 5,
            seed: 1,
        };
        spec.generate().unwrap().into_iter().enumerate().map(|(i, g)| (format!("grid{i}"), g)).collect()
    }

    #[test]
    fn ten_grids() {
        let opts = BenchOptions { timing: false, ..Default::default() };
        let t = bench(&grids(10), &opts);
        let text = t.to_text();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 11);
        assert!(text.contains("# max_ratio/L2"));
        assert_eq!(text, bench(&grids(10), &opts).to_text());
    }

    #[test]
    fn empty_corpus() {
        let t = bench(&[], &BenchOptions::default());
        assert_eq!(t.to_text().lines().count(), 1);
    }

    #[test]
    fn exact_column() {
        let opts = BenchOptions { exact: true, timing: false, delimiter: ',', ..Default::default() };
        let t = bench(&grids(4), &opts);
        assert!(t.header().contains(&"opt"));
        for r in &t.rows {
            if let Some(q) = r.ratio_vs_opt {
                assert!(q >= 1.0 - 1e-9);
            }
        }
    }
}

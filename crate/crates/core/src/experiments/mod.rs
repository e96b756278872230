//! Monte Carlo drivers: parameter sweeps over `(alpha, c, n)`, kernel
//! probes, triangle statistics, block connectivity and sprinkling.
//!
//! Replicate `r` of a cell with size `n` and level `c` always uses the stream
//! key `derive_path(master, [n, c.to_bits(), r])`, so two cells that differ
//! only in their kernel see the same random numbers.

mod blocks;
mod sprinkle;
mod triangles;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use blocks::{block_stats, block_sweep, loglog_slope, BlockStats};
pub use sprinkle::{sprinkling_experiment, SprinkleRecord, SprinkleReplicate, SprinkleSpec};
pub use triangles::{
    triangle_counts, triangle_experiment, triangle_stats, TriangleStats, TriangleSummary,
};

use crate::branching::rho_limit;
use crate::components::{components, default_omega, ComponentSummary};
use crate::io::fmt_sig17;
use crate::model::{EdgeModel, KernelSpec, ModelParams};
use crate::par::{map_indexed, Execution};
use crate::rng::derive_path;
use crate::sampler::sample_fast;
use crate::{Error, Result};

/// Cutoff `omega(n)` for the large-component set `B_omega`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaRule {
    /// `ceil((ln n)^4)`.
    #[default]
    LogFourth,
    /// `ceil(ln ln n)`.
    LogLog,
    Fixed(usize),
}

impl OmegaRule {
    pub fn omega(&self, n: usize) -> usize {
        match *self {
            OmegaRule::LogFourth => default_omega(n),
            OmegaRule::LogLog => {
                let x = (n as f64).ln().ln();
                if x.is_finite() {
                    (x.ceil() as usize).max(1)
                } else {
                    1
                }
            }
            OmegaRule::Fixed(k) => k.max(1),
        }
    }
}

impl fmt::Display for OmegaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaRule::LogFourth => f.write_str("log4"),
            OmegaRule::LogLog => f.write_str("loglog"),
            OmegaRule::Fixed(k) => write!(f, "fixed:{k}"),
        }
    }
}

impl FromStr for OmegaRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log4" => Ok(OmegaRule::LogFourth),
            "loglog" => Ok(OmegaRule::LogLog),
            _ => s
                .strip_prefix("fixed:")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .map(OmegaRule::Fixed)
                .ok_or_else(|| Error::Parse(format!("unknown omega rule `{s}`"))),
        }
    }
}

/// How a sweep turns each `alpha` into a kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelFamily {
    #[default]
    Power,
    PowerLog {
        beta: f64,
    },
}

impl KernelFamily {
    pub fn kernel(&self, alpha: f64) -> KernelSpec {
        match *self {
            KernelFamily::Power => KernelSpec::power(alpha),
            KernelFamily::PowerLog { .. } if alpha.is_infinite() => KernelSpec::NearestNeighbor,
            KernelFamily::PowerLog { beta } => KernelSpec::PowerLogLaw { alpha, beta },
        }
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "power" {
            return Ok(KernelFamily::Power);
        }
        s.strip_prefix("powerlog:beta=")
            .and_then(|b| b.parse().ok())
            .map(|beta| KernelFamily::PowerLog { beta })
            .ok_or_else(|| Error::Parse(format!("unknown kernel family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub alphas: Vec<f64>,
    pub cs: Vec<f64>,
    pub ns: Vec<usize>,
    pub replicates: usize,
    #[serde(default)]
    pub omega_rule: OmegaRule,
    #[serde(default)]
    pub family: KernelFamily,
    pub master_seed: u64,
    #[serde(skip, default)]
    pub execution: Execution,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.cs.is_empty() || self.ns.is_empty() {
            return Err(Error::InvalidParams("sweep grids must be non-empty".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidParams("replicates must be >= 1".into()));
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.alphas.len() * self.cs.len() * self.ns.len()
    }
}

/// One grid cell of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellRecord {
    pub kernel: String,
    pub alpha: f64,
    pub c: f64,
    pub n: usize,
    pub replicates: usize,
    pub mean_fraction: f64,
    pub std_fraction: f64,
    pub min_fraction: f64,
    pub max_fraction: f64,
    pub mean_second_fraction: f64,
    pub omega: usize,
    pub mean_b_fraction: f64,
    /// Mean size of the component of a uniform vertex.
    pub mean_cluster_size: f64,
    /// Poisson survival probability, for power laws with `alpha <= 1`.
    pub predicted_rho: Option<f64>,
    pub error: Option<String>,
}

const CSV_COLUMNS: [&str; 15] = [
    "kernel",
    "alpha",
    "c",
    "n",
    "replicates",
    "mean_fraction",
    "std_fraction",
    "min_fraction",
    "max_fraction",
    "mean_second_fraction",
    "omega",
    "mean_b_fraction",
    "mean_cluster_size",
    "predicted_rho",
    "error",
];

impl CellRecord {
    fn failed(
        kernel: &KernelSpec,
        c: f64,
        n: usize,
        replicates: usize,
        omega: usize,
        e: Error,
    ) -> Self {
        CellRecord {
            kernel: kernel.to_string(),
            alpha: kernel.alpha(),
            c,
            n,
            replicates,
            mean_fraction: f64::NAN,
            std_fraction: f64::NAN,
            min_fraction: f64::NAN,
            max_fraction: f64::NAN,
            mean_second_fraction: f64::NAN,
            omega,
            mean_b_fraction: f64::NAN,
            mean_cluster_size: f64::NAN,
            predicted_rho: None,
            error: Some(e.to_string()),
        }
    }

    fn csv_row(&self) -> String {
        let num = |x: f64| {
            if x.is_nan() {
                String::new()
            } else {
                fmt_sig17(x)
            }
        };
        let text = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        [
            text(&self.kernel),
            if self.alpha.is_infinite() {
                "inf".into()
            } else {
                num(self.alpha)
            },
            num(self.c),
            self.n.to_string(),
            self.replicates.to_string(),
            num(self.mean_fraction),
            num(self.std_fraction),
            num(self.min_fraction),
            num(self.max_fraction),
            num(self.mean_second_fraction),
            self.omega.to_string(),
            num(self.mean_b_fraction),
            num(self.mean_cluster_size),
            self.predicted_rho.map(num).unwrap_or_default(),
            self.error.as_deref().map(text).unwrap_or_default(),
        ]
        .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub records: Vec<CellRecord>,
}

impl SweepResult {
    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "{}", CSV_COLUMNS.join(","))?;
        for r in &self.records {
            writeln!(w, "{}", r.csv_row())?;
        }
        Ok(())
    }

    pub fn find(&self, alpha: f64, c: f64, n: usize) -> Option<&CellRecord> {
        self.records.iter().find(|r| {
            (r.alpha == alpha || (r.alpha.is_nan() && alpha.is_nan())) && r.c == c && r.n == n
        })
    }
}

/// Stream key of replicate `rep` in the `(n, c)` cell.
pub fn replicate_seed(master: u64, n: usize, c: f64, rep: usize) -> u64 {
    derive_path(master, &[n as u64, c.to_bits(), rep as u64])
}

/// Component summaries of `replicates` independent graphs.
pub fn replicate_summaries(
    model: &EdgeModel,
    master: u64,
    replicates: usize,
    exec: Execution,
) -> Vec<ComponentSummary> {
    let (n, c) = (model.n(), model.c());
    map_indexed(exec, replicates, |r| {
        components(&sample_fast(model, replicate_seed(master, n, c, r)))
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Run one `(kernel, c, n)` cell.
pub fn run_cell(
    kernel: &KernelSpec,
    c: f64,
    n: usize,
    replicates: usize,
    omega_rule: OmegaRule,
    master: u64,
    exec: Execution,
) -> CellRecord {
    let omega = omega_rule.omega(n);
    let model =
        match ModelParams::new(n, kernel.clone(), c, master).and_then(|p| EdgeModel::new(&p)) {
            Ok(m) => m,
            Err(e) => return CellRecord::failed(kernel, c, n, replicates, omega, e),
        };
    if replicates == 0 {
        let e = Error::InvalidParams("replicates must be >= 1".into());
        return CellRecord::failed(kernel, c, n, replicates, omega, e);
    }
    let summaries = replicate_summaries(&model, master, replicates, exec);
    let fractions: Vec<f64> = summaries.iter().map(|s| s.fraction).collect();
    let (mean_fraction, std_fraction) = mean_std(&fractions);
    let k = replicates as f64;
    let predicted_rho = match kernel {
        KernelSpec::PowerLaw { alpha } if *alpha <= 1.0 => Some(rho_limit(c)),
        _ => None,
    };
    CellRecord {
        kernel: kernel.to_string(),
        alpha: kernel.alpha(),
        c,
        n,
        replicates,
        mean_fraction,
        std_fraction,
        min_fraction: fractions.iter().copied().fold(f64::INFINITY, f64::min),
        max_fraction: fractions.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_second_fraction: summaries
            .iter()
            .map(|s| s.second_largest as f64 / n as f64)
            .sum::<f64>()
            / k,
        omega,
        mean_b_fraction: summaries.iter().map(|s| s.b_fraction(omega)).sum::<f64>() / k,
        mean_cluster_size: summaries
            .iter()
            .map(|s| s.mean_vertex_component_size())
            .sum::<f64>()
            / k,
        predicted_rho,
        error: None,
    }
}

/// Every `(alpha, c, n)` cell, alpha-major.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let mut records = Vec::with_capacity(spec.cell_count());
    for &alpha in &spec.alphas {
        let kernel = spec.family.kernel(alpha);
        for &c in &spec.cs {
            for &n in &spec.ns {
                records.push(run_cell(
                    &kernel,
                    c,
                    n,
                    spec.replicates,
                    spec.omega_rule,
                    spec.master_seed,
                    spec.execution,
                ));
            }
        }
    }
    Ok(SweepResult { records })
}

/// Sweep `(n, c)` for one fixed kernel.
pub fn conjecture_probe(
    kernel: &KernelSpec,
    ns: &[usize],
    cs: &[f64],
    replicates: usize,
    omega_rule: OmegaRule,
    master_seed: u64,
    exec: Execution,
) -> Result<SweepResult> {
    if ns.is_empty() || cs.is_empty() || replicates == 0 {
        return Err(Error::InvalidParams(
            "probe needs non-empty grids and replicates >= 1".into(),
        ));
    }
    let mut records = Vec::with_capacity(ns.len() * cs.len());
    for &c in cs {
        for &n in ns {
            records.push(run_cell(
                kernel,
                c,
                n,
                replicates,
                omega_rule,
                master_seed,
                exec,
            ));
        }
    }
    Ok(SweepResult { records })
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties. `None` for fewer
/// than two points or a constant series.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let (mx, my) = (mean_std(&rx).0, mean_std(&ry).0);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

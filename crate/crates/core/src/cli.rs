//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on argument errors, 1 on runtime failure.
//! Files are written atomically. Tabular outputs get a `<out>.json` sidecar
//! holding the exact run configuration.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::branching::{extinction, finite_degree_pgf, Pgf, DEFAULT_TOLERANCE};
use crate::components::{components, ComponentSummary};
use crate::experiments::{
    block_sweep, conjecture_probe, loglog_slope, run_sweep, sprinkling_experiment,
    triangle_experiment, KernelFamily, OmegaRule, SprinkleSpec, SweepResult, SweepSpec,
};
use crate::io::{self, fmt_sig17, EdgeFile, EdgeListHeader};
use crate::model::{EdgeModel, KernelSpec, ModelParams};
use crate::par::{self, Execution};
use crate::sampler::{sample_fast, sample_filtration, sample_naive, Graph};

pub const WORKERS_ENV: &str = "ALPHAGRAPH_WORKERS";

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "alphagraph",
    version,
    about = "Distance-decaying random graphs on a ring"
)]
pub struct Cli {
    /// Worker threads; defaults to available parallelism. ALPHAGRAPH_WORKERS overrides.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Sample one graph and write it as an edge list.
    Sample(SampleArgs),
    /// Connected components of an edge-list file.
    Components(ComponentsArgs),
    /// Galton-Watson extinction and survival probabilities.
    GwRho(GwArgs),
    /// Largest-component sweep over (alpha, c, n).
    Sweep(SweepArgs),
    /// Block connectivity frequencies.
    Blocks(BlocksArgs),
    /// Triangle and second-neighbour statistics.
    Triangles(TrianglesArgs),
    /// Sprinkling: do large clusters merge when c rises by delta?
    Sprinkle(SprinkleArgs),
    /// Sweep (n, c) for one kernel.
    Probe(ProbeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    /// Vertex count; scientific notation accepted.
    #[arg(long, value_parser = parse_count)]
    pub n: usize,
    /// Power-law exponent; `inf` for nearest-neighbour percolation.
    #[arg(long, default_value = "1")]
    pub alpha: f64,
    /// Kernel in text form; overrides --alpha.
    #[arg(long)]
    pub kernel: Option<String>,
}

impl ModelArgs {
    fn kernel(&self) -> anyhow::Result<KernelSpec> {
        kernel_or_alpha(self.kernel.as_deref(), self.alpha)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Use the per-pair sampler (n <= 10^4).
    #[arg(long)]
    pub naive: bool,
    /// Write a filtration with activation levels up to c.
    #[arg(long, conflicts_with = "naive")]
    pub filtration: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ComponentsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// For filtration files: analyse the graph at this level (default c_max).
    #[arg(long)]
    pub at: Option<f64>,
    /// Append-free CSV output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GwArgs {
    #[arg(long)]
    pub c: f64,
    /// With --n: use the exact finite-n degree distribution.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<usize>,
    #[arg(long, default_value = "1")]
    pub alpha: f64,
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub cs: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `log4`, `loglog` or `fixed:<k>`.
    #[arg(long, default_value = "log4")]
    pub omega_rule: String,
    /// `power` or `powerlog:beta=<b>`.
    #[arg(long, default_value = "power")]
    pub family: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct BlocksArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub c: f64,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    pub ms: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TrianglesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SprinkleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub c_prime: f64,
    #[arg(long)]
    pub delta: f64,
    /// Cutoff; defaults to ceil((ln n)^4).
    #[arg(long)]
    pub omega: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    pub kernel: String,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    pub ns: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub cs: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "log4")]
    pub omega_rule: String,
    #[arg(long)]
    pub out: PathBuf,
}

/// Integer that may be written as `1e5` or `2.5e4`.
pub fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v);
    }
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x < 0.0 || x.fract() != 0.0 || x > 2f64.powi(53) {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(x as usize)
}

fn kernel_or_alpha(kernel: Option<&str>, alpha: f64) -> anyhow::Result<KernelSpec> {
    Ok(match kernel {
        Some(k) => k.parse()?,
        None => KernelSpec::power(alpha),
    })
}

/// Effective worker count: environment, then flag, then available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let w: usize = v
            .trim()
            .parse()
            .with_context(|| format!("{WORKERS_ENV}=`{v}`"))?;
        return Ok(w.max(1));
    }
    Ok(flag
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1))
}

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = validate(&cli) {
        eprintln!("error: {e:#}\n\nRun with --help for usage.");
        return 2;
    }
    match execute(&cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn check_model(n: usize, kernel: &KernelSpec, c: f64) -> anyhow::Result<()> {
    ModelParams::new(n, kernel.clone(), c, 0)?;
    Ok(())
}

/// Argument checks that run before any work starts.
fn validate(cli: &Cli) -> anyhow::Result<()> {
    resolve_workers(cli.workers)?;
    match &cli.command {
        Command::Sample(a) => check_model(a.model.n, &a.model.kernel()?, a.c)?,
        Command::Components(a) => {
            if let Some(at) = a.at {
                if !(at >= 0.0) {
                    bail!("--at must be >= 0");
                }
            }
        }
        Command::GwRho(a) => {
            if !(a.c >= 0.0) || !(a.tolerance > 0.0) {
                bail!("--c must be >= 0 and --tolerance > 0");
            }
            if let Some(n) = a.n {
                check_model(n, &kernel_or_alpha(a.kernel.as_deref(), a.alpha)?, a.c)?;
            }
        }
        Command::Sweep(a) => {
            sweep_spec(a)?.validate()?;
            if a.cs.iter().any(|c| !(*c >= 0.0)) || a.alphas.iter().any(|x| !(*x >= 0.0)) {
                bail!("--cs and --alphas must be >= 0");
            }
        }
        Command::Blocks(a) => {
            check_model(a.model.n, &a.model.kernel()?, a.c)?;
            if a.reps == 0 || a.ms.iter().any(|&m| m == 0 || m > a.model.n / 4) {
                bail!("--reps must be >= 1 and every block size in 1..=n/4");
            }
        }
        Command::Triangles(a) => {
            check_model(a.model.n, &a.model.kernel()?, a.c)?;
            if a.reps == 0 {
                bail!("--reps must be >= 1");
            }
        }
        Command::Sprinkle(a) => {
            check_model(a.model.n, &a.model.kernel()?, a.c_prime + a.delta)?;
            if !(a.c_prime > 0.0) || !(a.delta >= 0.0) || a.reps == 0 || a.omega == Some(0) {
                bail!("need --c-prime > 0, --delta >= 0, --reps >= 1, --omega >= 1");
            }
        }
        Command::Probe(a) => {
            let kernel: KernelSpec = a.kernel.parse()?;
            for &n in &a.ns {
                kernel.validate(n)?;
            }
            a.omega_rule.parse::<OmegaRule>()?;
            if a.reps == 0 || a.cs.iter().any(|c| !(*c >= 0.0)) {
                bail!("--reps must be >= 1 and --cs >= 0");
            }
        }
    }
    Ok(())
}

fn sweep_spec(a: &SweepArgs) -> anyhow::Result<SweepSpec> {
    Ok(SweepSpec {
        alphas: a.alphas.clone(),
        cs: a.cs.clone(),
        ns: a.ns.clone(),
        replicates: a.reps,
        omega_rule: a.omega_rule.parse()?,
        family: a.family.parse::<KernelFamily>()?,
        master_seed: a.seed,
        execution: Execution::default(),
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_json(path: &Path, value: &serde_json::Value) -> anyhow::Result<()> {
    io::write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(std::io::Error::from)?;
        writeln!(w)?;
        Ok(())
    })
    .with_context(|| format!("writing {}", path.display()))
}

/// JSON to `out` if given, else stdout.
fn emit_json(out: Option<&Path>, value: &serde_json::Value) -> anyhow::Result<()> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn write_sweep(
    out: &Path,
    result: &SweepResult,
    config: &serde_json::Value,
    spec: serde_json::Value,
) -> anyhow::Result<()> {
    io::write_atomic(out, |w| Ok(result.write_csv(w)?))
        .with_context(|| format!("writing {}", out.display()))?;
    write_json(
        &sidecar_path(out),
        &json!({ "config": config, "spec": spec }),
    )
}

fn execute(cli: &Cli) -> anyhow::Result<String> {
    let workers = resolve_workers(cli.workers)?;
    par::init_workers(workers)?;
    let config = json!({ "workers": workers, "run": serde_json::to_value(&cli.command)? });
    let exec = Execution::default();

    match &cli.command {
        Command::Sample(a) => {
            let kernel = a.model.kernel()?;
            let params = ModelParams::new(a.model.n, kernel.clone(), a.c, a.seed)?;
            let model = EdgeModel::new(&params)?;
            let header = EdgeListHeader::for_kernel(params.n, &kernel, a.c, a.seed);
            if a.filtration {
                let f = sample_filtration(&model, a.seed);
                io::write_atomic(&a.out, |w| io::write_filtration(w, &header, &f))?;
                Ok(format!(
                    "wrote filtration n={} c_max={} edges={} to {}",
                    params.n,
                    a.c,
                    f.edges().len(),
                    a.out.display()
                ))
            } else {
                let g = if a.naive {
                    sample_naive(&model, a.seed)?
                } else {
                    sample_fast(&model, a.seed)
                };
                io::write_atomic(&a.out, |w| io::write_edge_list(w, &header, &g))?;
                Ok(format!(
                    "wrote graph n={} edges={} to {}",
                    params.n,
                    g.edge_count(),
                    a.out.display()
                ))
            }
        }
        Command::Components(a) => {
            let file = io::read_edge_file_path(&a.input)
                .with_context(|| format!("reading {}", a.input.display()))?;
            let header = file.header().clone();
            let graph: Graph = match file {
                EdgeFile::Graph(_, g) => {
                    if a.at.is_some() {
                        bail!("--at applies only to filtration files");
                    }
                    g
                }
                EdgeFile::Filtration(_, f) => f.subgraph_at(a.at.unwrap_or(f.c_max()))?,
            };
            let s = components(&graph);
            let row = components_csv_row(&header, a.at.unwrap_or(header.c), &s);
            let text = format!("{COMPONENTS_CSV_HEADER}\n{row}\n");
            match &a.out {
                Some(p) => {
                    io::write_atomic(p, |w| Ok(w.write_all(text.as_bytes())?))?;
                    write_json(&sidecar_path(p), &json!({ "config": config }))?;
                }
                None => print!("{text}"),
            }
            Ok(format!(
                "n={} components={} largest={} fraction={}",
                s.n,
                s.n_components(),
                s.largest,
                fmt_sig17(s.fraction)
            ))
        }
        Command::GwRho(a) => {
            let pgf = match a.n {
                Some(n) => {
                    let kernel = kernel_or_alpha(a.kernel.as_deref(), a.alpha)?;
                    finite_degree_pgf(&ModelParams::new(n, kernel, a.c, 0)?)?
                }
                None => Pgf::poisson(a.c),
            };
            let r = extinction(&pgf, a.tolerance)?;
            let value = json!({
                "config": config,
                "mean_offspring": pgf.mean(),
                "q": r.extinction_q,
                "rho": r.survival_rho,
                "iterations": r.iterations,
                "residual": r.residual,
                "method": r.method,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(format!(
                "rho={} q={}",
                fmt_sig17(r.survival_rho),
                fmt_sig17(r.extinction_q)
            ))
        }
        Command::Sweep(a) => {
            let spec = sweep_spec(a)?;
            let result = run_sweep(&spec)?;
            write_sweep(&a.out, &result, &config, serde_json::to_value(&spec)?)?;
            let failed = result.records.iter().filter(|r| r.error.is_some()).count();
            Ok(format!(
                "sweep: {} cells ({failed} failed) written to {}",
                result.records.len(),
                a.out.display()
            ))
        }
        Command::Probe(a) => {
            let kernel: KernelSpec = a.kernel.parse()?;
            let omega_rule: OmegaRule = a.omega_rule.parse()?;
            let result = conjecture_probe(&kernel, &a.ns, &a.cs, a.reps, omega_rule, a.seed, exec)?;
            let spec = json!({ "kernel": kernel, "ns": a.ns, "cs": a.cs, "replicates": a.reps, "omega_rule": omega_rule, "master_seed": a.seed });
            write_sweep(&a.out, &result, &config, spec)?;
            Ok(format!(
                "probe: {} cells written to {}",
                result.records.len(),
                a.out.display()
            ))
        }
        Command::Blocks(a) => {
            let kernel = a.model.kernel()?;
            // n is rounded down to a multiple of each block size
            let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
            for &m in &a.ms {
                let n = a.model.n / m * m;
                match groups.iter_mut().find(|(gn, _)| *gn == n) {
                    Some((_, ms)) => ms.push(m),
                    None => groups.push((n, vec![m])),
                }
            }
            let mut stats = Vec::new();
            for (n, ms) in &groups {
                let params = ModelParams::new(*n, kernel.clone(), a.c, a.seed)?;
                stats.extend(block_sweep(&params, ms, a.reps, exec)?);
            }
            stats.sort_by_key(|s| s.m);
            let ms: Vec<f64> = stats.iter().map(|s| s.m as f64).collect();
            let freqs: Vec<f64> = stats.iter().map(|s| s.nonadjacent_connect_freq).collect();
            let slope = loglog_slope(&ms, &freqs);
            emit_json(
                a.out.as_deref(),
                &json!({ "config": config, "blocks": stats, "nonadjacent_loglog_slope": slope }),
            )?;
            Ok(format!(
                "blocks: {} sizes, non-adjacent log-log slope {}",
                stats.len(),
                slope.map(fmt_sig17).unwrap_or_else(|| "undefined".into())
            ))
        }
        Command::Triangles(a) => {
            let params = ModelParams::new(a.model.n, a.model.kernel()?, a.c, a.seed)?;
            let s = triangle_experiment(&params, a.reps, exec)?;
            emit_json(
                a.out.as_deref(),
                &json!({ "config": config, "triangles": s }),
            )?;
            Ok(format!(
                "triangles: mean K={} (se {})",
                fmt_sig17(s.mean_k),
                fmt_sig17(s.se_k)
            ))
        }
        Command::Sprinkle(a) => {
            let spec = SprinkleSpec {
                n: a.model.n,
                kernel: a.model.kernel()?,
                c_prime: a.c_prime,
                delta: a.delta,
                omega: a
                    .omega
                    .unwrap_or_else(|| crate::components::default_omega(a.model.n)),
                replicates: a.reps,
                master_seed: a.seed,
            };
            let r = sprinkling_experiment(&spec, exec)?;
            emit_json(
                a.out.as_deref(),
                &json!({ "config": config, "sprinkle": r }),
            )?;
            Ok(format!(
                "sprinkle: merged in {}/{} replicates",
                (r.merged_fraction * spec.replicates as f64).round(),
                spec.replicates
            ))
        }
    }
}

pub const COMPONENTS_CSV_HEADER: &str =
    "seed,n,alpha,c,largest,second_largest,fraction,n_components";

pub fn components_csv_row(header: &EdgeListHeader, c: f64, s: &ComponentSummary) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        header.seed,
        header.n,
        header.alpha,
        c,
        s.largest,
        s.second_largest,
        fmt_sig17(s.fraction),
        s.n_components()
    )
}

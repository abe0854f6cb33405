//! Thin command-line front end: every subcommand parses arguments,
//! delegates to the library, serializes the result, and maps errors onto
//! the exit-code contract (0 = checks pass, 1 = a mathematical check
//! failed with evidence, 2 = configuration or validation error).

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use moddist::error::{Error, Result};
use moddist::generators::{triangle_free_check_bruteforce, weight_function};
use moddist::params::ModularDistanceParams;
use moddist::quotient::spectral_dominance_check;
use moddist::report::{bound_sweep, run_report, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "moddist",
    version,
    about = "Spectral chromatic-number certificates for modular-distance graphs on Z^2"
)]
struct Cli {
    /// Write output to this file instead of stdout. Relative paths are
    /// resolved under $MODDIST_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Cap the worker threads used by parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Residue target p (coprime to q, 0 < p < q).
    #[arg(long)]
    p: u64,
    /// Modulus q.
    #[arg(long)]
    q: u64,
    /// Strength parameter k; the certified bound grows as k+1.
    #[arg(long)]
    k: u32,
}

impl ParamArgs {
    fn parse(&self) -> Result<ModularDistanceParams> {
        ModularDistanceParams::new(self.p, self.q, self.k)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the truncated weighted generating set.
    Generators {
        #[command(flatten)]
        params: ParamArgs,
        /// Truncation depth (number of scale layers).
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Estimate the torus infimum over a depth sweep and derive ratio and
    /// chromatic bounds.
    Bound {
        #[command(flatten)]
        params: ParamArgs,
        /// Single truncation depth.
        #[arg(long, conflicts_with = "n_sweep")]
        n: Option<u32>,
        /// Comma-separated truncation depths.
        #[arg(long, value_delimiter = ',')]
        n_sweep: Vec<u32>,
        /// Torus grid resolution.
        #[arg(long, default_value_t = 64)]
        grid: u64,
        /// Refinement rounds after the grid scan.
        #[arg(long, default_value_t = 12)]
        refine: u32,
        /// Safety margin applied to heuristic ratio bounds.
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Derive a Lipschitz-certified lower bound when feasible.
        #[arg(long)]
        certify: bool,
    },
    /// Verify the plane embedding: every edge length is an integer
    /// congruent to p mod q, checked in exact rational arithmetic.
    EmbedVerify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Brute-force triangle check of the truncated sumset against the
    /// full generating family.
    TriangleCheck {
        #[command(flatten)]
        params: ParamArgs,
        /// Scale layers included in the scan.
        #[arg(long, default_value_t = 4)]
        max_scale: u32,
    },
    /// Exact independence number of a quotient and its spectral
    /// dominance check.
    QuotientAlpha {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u32,
        /// Quotient modulus.
        #[arg(long)]
        m: u64,
        /// Vertex cap for the exact solver.
        #[arg(long, default_value_t = moddist::quotient::DEFAULT_ALPHA_CAP)]
        cap: usize,
    },
    /// Run the full pipeline and emit one document with a verdict per claim.
    Report {
        /// JSON configuration file mirroring the ExperimentConfig fields.
        #[arg(long, conflicts_with_all = ["p", "q", "k"])]
        config: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        n_sweep: Vec<u32>,
        #[arg(long)]
        grid: Option<u64>,
        #[arg(long)]
        refine: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u64>,
        #[arg(long)]
        max_scale: Option<u32>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("MODDIST_OUTPUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Generators { params, n, format } => {
            let w = weight_function(&params.parse()?, n)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&w.to_json())?,
                Format::Csv => w.to_csv(),
            };
            emit(&text, output)?;
            Ok(0)
        }
        Command::Bound { params, n, n_sweep, grid, refine, epsilon, certify } => {
            let mut config = ExperimentConfig::new(params.p, params.q, params.k);
            config.n_sweep = match n {
                Some(n) => vec![n],
                None if n_sweep.is_empty() => config.n_sweep,
                None => n_sweep,
            };
            config.grid = grid;
            config.refine_rounds = refine;
            config.epsilon = epsilon;
            config.certify = certify;
            let sweep = bound_sweep(&config)?;
            emit(&serde_json::to_string_pretty(&sweep.to_json())?, output)?;
            Ok(0)
        }
        Command::EmbedVerify { params, n, format } => {
            let reports = moddist::embedding::verify_embedding(&params.parse()?, n)?;
            let text = match format {
                Format::Csv => {
                    let mut text = String::from(moddist::embedding::EDGE_CSV_HEADER);
                    text.push('\n');
                    for r in &reports {
                        text.push_str(&r.csv_row());
                        text.push('\n');
                    }
                    text
                }
                Format::Json => {
                    let rows: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
                    serde_json::to_string_pretty(&serde_json::Value::Array(rows))?
                }
            };
            emit(&text, output)?;
            Ok(0)
        }
        Command::TriangleCheck { params, max_scale } => {
            let cert = triangle_free_check_bruteforce(&params.parse()?, max_scale)?;
            emit(&serde_json::to_string_pretty(&cert.to_json())?, output)?;
            Ok(if cert.passed() { 0 } else { 1 })
        }
        Command::QuotientAlpha { params, n, m, cap } => {
            let w = weight_function(&params.parse()?, n)?;
            let report = spectral_dominance_check(w.weights(), m, cap)?;
            emit(&serde_json::to_string_pretty(&report.to_json())?, output)?;
            Ok(if report.dominance_ok == Some(true) { 0 } else { 1 })
        }
        Command::Report {
            config,
            p,
            q,
            k,
            n_sweep,
            grid,
            refine,
            moduli,
            max_scale,
            epsilon,
            certify,
            cap,
        } => {
            let config = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(resolve_output(&path))?;
                    serde_json::from_str::<ExperimentConfig>(&text)?
                }
                None => {
                    let (p, q, k) = match (p, q, k) {
                        (Some(p), Some(q), Some(k)) => (p, q, k),
                        _ => {
                            return Err(Error::Config(
                                "report needs either --config or all of --p/--q/--k".into(),
                            ))
                        }
                    };
                    let mut config = ExperimentConfig::new(p, q, k);
                    if !n_sweep.is_empty() {
                        config.n_sweep = n_sweep;
                    }
                    if !moduli.is_empty() {
                        config.moduli = moduli;
                    }
                    if let Some(grid) = grid {
                        config.grid = grid;
                    }
                    if let Some(refine) = refine {
                        config.refine_rounds = refine;
                    }
                    if let Some(max_scale) = max_scale {
                        config.max_scale = max_scale;
                    }
                    if let Some(epsilon) = epsilon {
                        config.epsilon = epsilon;
                    }
                    if let Some(cap) = cap {
                        config.alpha_cap = cap;
                    }
                    config.certify = certify;
                    config
                }
            };
            let document = run_report(&config)?;
            let target = output.map(Path::to_path_buf).or(config.output.clone());
            emit(&serde_json::to_string_pretty(&document)?, target.as_deref())?;
            Ok(if document["verdict"] == "pass" { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

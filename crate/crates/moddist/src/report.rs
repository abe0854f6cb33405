//! Experiment configuration and the combined certificate document.
//!
//! One configuration drives every check the crate offers; the combined
//! report runs them all and emits a single JSON document with one verdict
//! per claim. Output is deterministic: fixed orderings everywhere, and
//! identical configurations produce byte-identical documents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::generators::{
    all_kernel_relations, triangle_free_check_bruteforce, weight_function,
    TriangleFreenessCertificate,
};
use crate::params::ModularDistanceParams;
use crate::quotient::spectral_dominance_check;
use crate::spectral::{spectral_certificate, RefinementConfig, SpectralCertificate};

/// A sweep's ratio bound counts as approaching its limit when it comes
/// within this slack of `1/(k+1)`.
pub const TREND_RATIO_SLACK: f64 = 0.1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl Default for OutputFormat {
    fn default() -> Self {
        OutputFormat::Json
    }
}

/// Everything a reproducible run needs. Field names double as the schema
/// of the JSON configuration file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub p: u64,
    pub q: u64,
    pub k: u32,
    /// Truncation depths, one certificate each.
    #[serde(default = "default_n_sweep")]
    pub n_sweep: Vec<u32>,
    /// Torus grid resolution for the infimum scan.
    #[serde(default = "default_grid")]
    pub grid: u64,
    /// Denominator-doubling refinement rounds after the grid scan.
    #[serde(default = "default_refine_rounds")]
    pub refine_rounds: u32,
    /// Quotient moduli to cross-validate (degenerate ones are skipped).
    #[serde(default = "default_moduli")]
    pub moduli: Vec<u64>,
    /// Scale layers scanned by the triangle check.
    #[serde(default = "default_max_scale")]
    pub max_scale: u32,
    /// Safety margin applied before taking reciprocals of heuristic ratios.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Request a Lipschitz-certified lower bound on the infimum.
    #[serde(default)]
    pub certify: bool,
    /// Vertex cap for the exact independence solver.
    #[serde(default = "default_alpha_cap")]
    pub alpha_cap: usize,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_n_sweep() -> Vec<u32> {
    vec![4, 8, 16, 32]
}
fn default_grid() -> u64 {
    64
}
fn default_refine_rounds() -> u32 {
    12
}
fn default_moduli() -> Vec<u64> {
    vec![3, 5, 6, 7]
}
fn default_max_scale() -> u32 {
    4
}
fn default_epsilon() -> f64 {
    0.01
}
fn default_alpha_cap() -> usize {
    crate::quotient::DEFAULT_ALPHA_CAP
}

impl ExperimentConfig {
    pub fn new(p: u64, q: u64, k: u32) -> Self {
        Self {
            p,
            q,
            k,
            n_sweep: default_n_sweep(),
            grid: default_grid(),
            refine_rounds: default_refine_rounds(),
            moduli: default_moduli(),
            max_scale: default_max_scale(),
            epsilon: default_epsilon(),
            certify: false,
            alpha_cap: default_alpha_cap(),
            format: OutputFormat::Json,
            output: None,
            threads: None,
        }
    }

    /// Validates every sub-config against its module's preconditions.
    pub fn validate(&self) -> Result<ModularDistanceParams> {
        let params = ModularDistanceParams::new(self.p, self.q, self.k)?;
        if self.n_sweep.is_empty() {
            return Err(Error::Config("n_sweep must not be empty".into()));
        }
        if self.n_sweep.iter().any(|&n| n == 0) {
            return Err(Error::ZeroTruncation);
        }
        if self.grid < 2 {
            return Err(Error::GridTooCoarse(self.grid));
        }
        if self.max_scale == 0 {
            return Err(Error::ZeroTruncation);
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::Config("epsilon must be nonnegative".into()));
        }
        Ok(params)
    }

    pub fn refinement(&self) -> RefinementConfig {
        RefinementConfig {
            rounds: self.refine_rounds,
            certify: self.certify,
            ..Default::default()
        }
    }
}

/// Certificates for each depth in the sweep plus the trend toward the
/// limiting ratio `1/(k+1)`.
#[derive(Clone, Debug)]
pub struct BoundSweep {
    pub certificates: Vec<SpectralCertificate>,
    pub limit_ratio: BigRational,
    pub best_ratio: f64,
    pub final_ratio: f64,
    pub best_chi: u64,
    pub chi_target: u64,
    pub approaching: bool,
}

impl BoundSweep {
    pub fn to_json(&self) -> Value {
        json!({
            "certificates": self.certificates.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "trend": {
                "limit_ratio": crate::serial::ratio_str(&self.limit_ratio),
                "best_ratio": self.best_ratio,
                "final_ratio": self.final_ratio,
                "best_chi": self.best_chi,
                "chi_target": self.chi_target,
                "approaching": self.approaching,
            },
        })
    }
}

/// Runs the certificate pipeline over the configured depth sweep.
pub fn bound_sweep(config: &ExperimentConfig) -> Result<BoundSweep> {
    let params = config.validate()?;
    let refine = config.refinement();
    let mut certificates = Vec::with_capacity(config.n_sweep.len());
    for &n in &config.n_sweep {
        let weights = weight_function(&params, n)?;
        certificates.push(spectral_certificate(
            &weights,
            config.grid,
            &refine,
            config.epsilon,
        )?);
    }
    let limit_ratio = BigRational::new(BigInt::from(1), BigInt::from(u64::from(params.k()) + 1));
    let limit = limit_ratio.to_f64().expect("limit ratio converts");
    let best_ratio = certificates
        .iter()
        .map(|c| c.alpha_ratio_bound)
        .fold(f64::INFINITY, f64::min);
    let final_ratio = certificates
        .last()
        .map(|c| c.alpha_ratio_bound)
        .unwrap_or(f64::NAN);
    let best_chi = certificates.iter().map(|c| c.chi_lower_bound).max().unwrap_or(0);
    Ok(BoundSweep {
        certificates,
        limit_ratio,
        best_ratio,
        final_ratio,
        best_chi,
        chi_target: u64::from(params.k()) + 1,
        approaching: best_ratio <= limit + TREND_RATIO_SLACK,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// Runs the full pipeline and emits one document with a verdict per claim.
pub fn run_report(config: &ExperimentConfig) -> Result<Value> {
    let params = config.validate()?;
    let max_n = *config.n_sweep.iter().max().expect("sweep nonempty");

    // Exact total-weight identity over the sweep.
    let two_k = BigRational::from(BigInt::from(2 * u64::from(params.k())));
    let mut weight_ok = true;
    let mut weight_rows = Vec::new();
    for &n in &config.n_sweep {
        let w = weight_function(&params, n)?;
        let total = w.total_weight();
        let ok = total == two_k && w.weights().len() == 4 * params.k() as usize * n as usize;
        weight_ok &= ok;
        weight_rows.push(json!({
            "n": n,
            "support": w.weights().len(),
            "total_weight": crate::serial::ratio_str(&total),
            "ok": ok,
        }));
    }

    // Exact plane-embedding verification at the deepest truncation.
    let embedding = crate::embedding::verify_embedding(&params, max_n);
    let (embed_ok, embed_json) = match &embedding {
        Ok(reports) => (
            true,
            json!({
                "verdict": "pass",
                "edges_checked": reports.len(),
                "residue": params.p(),
            }),
        ),
        Err(e) => (false, json!({ "verdict": "fail", "error": e.to_string() })),
    };

    // Triangle-freeness of the truncated sumset against the full family.
    let triangle: TriangleFreenessCertificate =
        triangle_free_check_bruteforce(&params, config.max_scale)?;

    // Kernel divisibility diagnostics (vacuous at k = 1).
    let relations = all_kernel_relations(&params)?;
    let kernel_ok = relations.iter().all(|r| r.divisibility_holds(params.q()));

    // Spectral sweep and trend.
    let sweep = bound_sweep(config)?;

    // Quotient dominance cross-checks; degenerate or oversized moduli are
    // recorded as skipped rather than failing the run.
    let mut quotient_rows = Vec::new();
    let mut dominance_ok = true;
    let small_n = *config.n_sweep.iter().min().expect("sweep nonempty");
    let quotient_weights = weight_function(&params, small_n)?;
    for &m in &config.moduli {
        match spectral_dominance_check(quotient_weights.weights(), m, config.alpha_cap) {
            Ok(report) => {
                dominance_ok &= report.dominance_ok == Some(true);
                quotient_rows.push(json!({ "m": m, "status": "checked", "report": report.to_json() }));
            }
            Err(Error::DegenerateQuotient { .. }) => {
                quotient_rows.push(json!({ "m": m, "status": "skipped-degenerate" }));
            }
            Err(Error::InstanceTooLarge { .. }) => {
                quotient_rows.push(json!({ "m": m, "status": "skipped-too-large" }));
            }
            Err(e) => return Err(e),
        }
    }

    let all_ok = weight_ok
        && embed_ok
        && triangle.passed()
        && kernel_ok
        && sweep.approaching
        && dominance_ok;

    Ok(json!({
        "config": serde_json::to_value(config)?,
        "claims": {
            "total_weight": { "verdict": verdict(weight_ok), "rows": weight_rows },
            "embedding": embed_json,
            "triangle_free": triangle.to_json(),
            "kernel_divisibility": {
                "verdict": verdict(kernel_ok),
                "triples_checked": relations.len(),
            },
            "spectral_trend": {
                "verdict": verdict(sweep.approaching),
                "sweep": sweep.to_json(),
            },
            "quotient_dominance": {
                "verdict": verdict(dominance_ok),
                "rows": quotient_rows,
            },
        },
        "verdict": verdict(all_ok),
    }))
}

//! Fourier transforms of weighted generating sets and the ratio bound.
//!
//! For a centrally symmetric weight function `w` on Z² the transform
//!
//! ```text
//!     ŵ(u) = Σ_x w(x) e^(2πi u·x),        u ∈ (R/Z)²
//! ```
//!
//! is real, peaks at `ŵ(0) = Σ w(x)`, and controls the independence ratio
//! of the Cayley graph generated by the support: the ratio bound states
//! `ᾱ ≤ -inf ŵ / (sup ŵ - inf ŵ)`, hence `χ ≥ ⌈(sup - inf)/(-inf)⌉`.
//! Reducing a point `u = z/m` recovers the eigenvalues of the weighted
//! adjacency matrix of the quotient Cayley graph on `Z_m²`.
//!
//! Generator coordinates are of size `q^(4k)`, so a floating dot product
//! `u·x` would destroy all phase information. Torus points are therefore
//! restricted to exact rationals `z/N`, and every phase is reduced mod `N`
//! in integer arithmetic before a single trigonometric call is made.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::generators::{SymmetricWeights, WeightedGeneratorSet};
use crate::params::ModularDistanceParams;
use crate::serial::ratio_str;

/// An exact rational point `(z1/N, z2/N)` of the torus `(R/Z)²`,
/// kept canonical with `0 <= z < N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusPoint {
    z1: u64,
    z2: u64,
    denom: u64,
}

impl TorusPoint {
    pub fn new(z1: i64, z2: i64, denom: u64) -> Self {
        assert!(denom >= 1, "torus denominator must be positive");
        let d = denom as i128;
        let wrap = |z: i64| -> u64 { ((z as i128).rem_euclid(d)) as u64 };
        Self { z1: wrap(z1), z2: wrap(z2), denom }
    }

    pub fn zero() -> Self {
        Self { z1: 0, z2: 0, denom: 1 }
    }

    pub fn numerators(&self) -> (u64, u64) {
        (self.z1, self.z2)
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.z1 == 0 && self.z2 == 0
    }

    /// Exact lexicographic order on coordinates as fractions.
    pub fn cmp_lex(&self, other: &TorusPoint) -> Ordering {
        let cmp_frac = |a: u64, da: u64, b: u64, db: u64| -> Ordering {
            (a as u128 * db as u128).cmp(&(b as u128 * da as u128))
        };
        cmp_frac(self.z1, self.denom, other.z1, other.denom)
            .then_with(|| cmp_frac(self.z2, self.denom, other.z2, other.denom))
    }

    /// Coordinates as reduced `"num/den"` strings.
    pub fn to_json(&self) -> Value {
        let reduce = |z: u64| {
            let g = z.gcd(&self.denom).max(1);
            format!("{}/{}", z / g, self.denom / g)
        };
        Value::Array(vec![
            Value::String(reduce(self.z1)),
            Value::String(reduce(self.z2)),
        ])
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, {}/{})", self.z1, self.denom, self.z2, self.denom)
    }
}

/// Support reduced mod a fixed denominator: phase evaluation afterwards is
/// pure small-integer arithmetic. Entry order is preserved so that float
/// summation is deterministic and identical across call paths.
struct ReducedPhases {
    denom: u64,
    residues: Vec<(u64, u64)>,
    weights: Vec<f64>,
}

fn reduce_phases(w: &SymmetricWeights, denom: u64) -> ReducedPhases {
    let mut residues = Vec::with_capacity(w.len());
    let mut weights = Vec::with_capacity(w.len());
    for (v, weight) in w.entries() {
        residues.push(v.reduce_mod(denom));
        weights.push(weight.to_f64().expect("weight converts to f64"));
    }
    ReducedPhases { denom, residues, weights }
}

impl ReducedPhases {
    fn eval(&self, z1: u64, z2: u64) -> f64 {
        let n = self.denom as u128;
        let mut sum = 0.0;
        for ((rx, ry), wf) in self.residues.iter().zip(&self.weights) {
            let r = ((z1 as u128 * *rx as u128 + z2 as u128 * *ry as u128) % n) as u64;
            sum += wf * (2.0 * PI * r as f64 / self.denom as f64).cos();
        }
        sum
    }
}

/// Evaluates `ŵ(u)` at a rational torus point.
///
/// The dot product `z·x` and its reduction mod `N` happen in exact integer
/// arithmetic; the result is real by central symmetry (each `±x` pair
/// contributes a cosine twice), so only cosines are summed.
pub fn fourier_at(w: &SymmetricWeights, u: &TorusPoint) -> f64 {
    reduce_phases(w, u.denom).eval(u.z1, u.z2)
}

/// Eigenvalues of the weighted quotient adjacency matrix on `Z_m²`,
/// indexed by `z` in lexicographic order (`values[z1 * m + z2]`).
#[derive(Clone, Debug)]
pub struct CirculantSpectrum {
    m: u64,
    values: Vec<f64>,
}

impl CirculantSpectrum {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lambda(&self, z1: u64, z2: u64) -> f64 {
        self.values[(z1 * self.m + z2) as usize]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `-λ_min / (λ_max - λ_min)`.
    pub fn ratio_bound(&self) -> Result<f64> {
        ratio_bound(self.max(), self.min())
    }
}

/// Computes `λ_z = ŵ(z/m)` for every `z ∈ Z_m²`. Weights of vectors that
/// collide mod `m` merge additively, which is exactly what the quotient
/// adjacency matrix does.
pub fn circulant_spectrum(w: &SymmetricWeights, m: u64) -> Result<CirculantSpectrum> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    for (v, _) in w.entries() {
        if v.reduce_mod(m) == (0, 0) {
            return Err(Error::DegenerateQuotient { vector: v.clone(), m });
        }
    }
    let phases = reduce_phases(w, m);
    let mut values = Vec::with_capacity((m * m) as usize);
    for z1 in 0..m {
        for z2 in 0..m {
            values.push(phases.eval(z1, z2));
        }
    }
    Ok(CirculantSpectrum { m, values })
}

/// Search controls for [`estimate_infimum`].
#[derive(Clone, Copy, Debug)]
pub struct RefinementConfig {
    /// Number of denominator-doubling rounds of coordinate descent after
    /// the grid scan.
    pub rounds: u32,
    /// Whether to derive a sound Lipschitz lower bound from the grid scan.
    pub certify: bool,
    /// Separation the caller wants certified; the certificate is only
    /// `certified` when this exceeds the grid slack.
    pub target_separation: f64,
    /// Largest acceptable grid slack `L/(2N)`; beyond it certification is
    /// declared infeasible and only the heuristic estimate is reported.
    pub slack_threshold: f64,
}

impl Default for RefinementConfig {
    fn default() -> Self {
        Self {
            rounds: 12,
            certify: false,
            target_separation: 0.0,
            slack_threshold: 1e6,
        }
    }
}

/// Outcome of the optional Lipschitz certification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Certification {
    NotRequested,
    /// The grid minimum minus the slack is a sound lower bound on the true
    /// infimum, and the slack is below the requested separation.
    Certified { sound_lower_bound: f64, slack: f64 },
    /// A sound lower bound exists but the slack swamps the requested
    /// separation.
    SeparationNotMet { sound_lower_bound: f64, slack: f64 },
    /// The slack exceeds the configured threshold (typical for large
    /// parameters: the Lipschitz constant scales like `q^(4k)`).
    Infeasible { slack: f64, threshold: f64 },
}

/// Best value of `ŵ` found by grid scan plus local refinement.
#[derive(Clone, Debug)]
pub struct InfimumEstimate {
    pub value: f64,
    pub argmin: TorusPoint,
    pub certification: Certification,
}

impl InfimumEstimate {
    pub fn certified(&self) -> bool {
        matches!(self.certification, Certification::Certified { .. })
    }

    /// Sound lower bound on the true infimum, when one was derived.
    pub fn lipschitz_bound(&self) -> Option<f64> {
        match self.certification {
            Certification::Certified { sound_lower_bound, .. }
            | Certification::SeparationNotMet { sound_lower_bound, .. } => {
                Some(sound_lower_bound)
            }
            _ => None,
        }
    }
}

/// Scans `ŵ` on the grid `{z/grid_n}`, returning the minimum and the
/// lexicographically smallest argmin. Rows are evaluated in parallel but
/// reduced in a fixed order, so the result is deterministic.
fn grid_scan(phases: &ReducedPhases, grid_n: u64) -> (f64, u64, u64) {
    let rows: Vec<(f64, u64)> = (0..grid_n)
        .into_par_iter()
        .map(|z1| {
            let mut best = f64::INFINITY;
            let mut best_z2 = 0;
            for z2 in 0..grid_n {
                let v = phases.eval(z1, z2);
                if v < best {
                    best = v;
                    best_z2 = z2;
                }
            }
            (best, best_z2)
        })
        .collect();
    let mut best = f64::INFINITY;
    let mut arg = (0, 0);
    for (z1, (v, z2)) in rows.iter().enumerate() {
        if *v < best {
            best = *v;
            arg = (z1 as u64, *z2);
        }
    }
    (best, arg.0, arg.1)
}

/// Estimates `inf ŵ` over the torus.
///
/// The grid scan is followed by coordinate descent over successively finer
/// rational denominators (each round doubles the denominator). If
/// certification is requested, the Lipschitz constant
/// `L = 2π Σ w(x) ‖x‖₁` converts the grid minimum into the sound lower
/// bound `grid_min - L/(2 grid_n)`.
pub fn estimate_infimum(
    w: &SymmetricWeights,
    grid_n: u64,
    cfg: &RefinementConfig,
) -> Result<InfimumEstimate> {
    if grid_n < 2 {
        return Err(Error::GridTooCoarse(grid_n));
    }
    if w.is_empty() {
        return Ok(InfimumEstimate {
            value: 0.0,
            argmin: TorusPoint::zero(),
            certification: certify(cfg, 0.0, 0.0),
        });
    }

    let phases = reduce_phases(w, grid_n);
    let (grid_min, mut z1, mut z2) = grid_scan(&phases, grid_n);

    let mut best = grid_min;
    let mut denom = grid_n;
    for _ in 0..cfg.rounds {
        denom =
            denom.checked_mul(2).expect("refined denominator overflows u64");
        z1 *= 2;
        z2 *= 2;
        let phases = reduce_phases(w, denom);
        loop {
            let mut improved = false;
            for (d1, d2) in [(denom - 1, 0), (1, 0), (0, denom - 1), (0, 1)] {
                let c1 = (z1 + d1) % denom;
                let c2 = (z2 + d2) % denom;
                let v = phases.eval(c1, c2);
                if v < best {
                    best = v;
                    z1 = c1;
                    z2 = c2;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
    }

    let certification = if cfg.certify {
        let lipschitz: f64 = w
            .entries()
            .iter()
            .map(|(v, weight)| {
                weight.to_f64().unwrap_or(f64::INFINITY)
                    * v.l1_norm().to_f64().unwrap_or(f64::INFINITY)
            })
            .sum::<f64>()
            * 2.0
            * PI;
        let slack = lipschitz / (2.0 * grid_n as f64);
        certify_with_slack(cfg, grid_min, slack)
    } else {
        Certification::NotRequested
    };

    Ok(InfimumEstimate {
        value: best,
        argmin: TorusPoint::new(z1 as i64, z2 as i64, denom),
        certification,
    })
}

fn certify(cfg: &RefinementConfig, grid_min: f64, slack: f64) -> Certification {
    if cfg.certify {
        certify_with_slack(cfg, grid_min, slack)
    } else {
        Certification::NotRequested
    }
}

fn certify_with_slack(cfg: &RefinementConfig, grid_min: f64, slack: f64) -> Certification {
    if !slack.is_finite() || slack > cfg.slack_threshold {
        return Certification::Infeasible { slack, threshold: cfg.slack_threshold };
    }
    let sound_lower_bound = grid_min - slack;
    if cfg.target_separation > slack {
        Certification::Certified { sound_lower_bound, slack }
    } else {
        Certification::SeparationNotMet { sound_lower_bound, slack }
    }
}

/// The ratio bound `-inf/(sup - inf)` on the independence ratio.
/// Requires `inf < 0 < sup`; the bound is vacuous or undefined otherwise.
pub fn ratio_bound(sup: f64, inf: f64) -> Result<f64> {
    if !(inf < 0.0 && sup > 0.0) {
        return Err(Error::RatioRegime { sup, inf });
    }
    Ok(-inf / (sup - inf))
}

/// `⌈1/alpha⌉` for an exact rational `alpha ∈ (0, 1]`.
pub fn chi_lower_bound_exact(alpha: &BigRational) -> u64 {
    assert!(alpha.is_positive(), "ratio bound must be positive");
    let chi = alpha.denom().div_ceil(alpha.numer());
    chi.to_u64().expect("chromatic bound fits u64")
}

/// Heuristic `⌈1/(alpha + margin)⌉`: the safety margin compensates for the
/// infimum estimate being an upper bound on the true infimum, which skews
/// the raw ratio optimistically.
pub fn chi_lower_bound_heuristic(alpha: f64, margin: f64) -> u64 {
    assert!(alpha > 0.0, "ratio bound must be positive");
    assert!(margin >= 0.0, "safety margin must be nonnegative");
    (1.0 / (alpha + margin)).ceil() as u64
}

/// Machine-checkable record of one spectral bound computation.
#[derive(Clone, Debug)]
pub struct SpectralCertificate {
    pub params: ModularDistanceParams,
    pub n: u32,
    /// `sup ŵ = ŵ(0)`, exactly the total weight `2k`.
    pub sup_value: BigRational,
    pub inf_estimate: f64,
    pub inf_argmin: TorusPoint,
    pub certified: bool,
    /// Sound lower bound on the true infimum, when certification produced one.
    pub lipschitz_bound: Option<f64>,
    /// `-inf/(sup - inf)`, an estimate of the bound on the independence ratio.
    pub alpha_ratio_bound: f64,
    pub chi_lower_bound: u64,
    /// True when the chromatic bound rests on a float infimum estimate.
    pub chi_is_heuristic: bool,
}

/// Runs the full pipeline `weights -> infimum estimate -> ratio bound ->
/// chromatic bound` for one truncation depth.
pub fn spectral_certificate(
    w: &WeightedGeneratorSet,
    grid_n: u64,
    refine: &RefinementConfig,
    margin: f64,
) -> Result<SpectralCertificate> {
    let sup_value = w.total_weight();
    debug_assert_eq!(
        sup_value,
        BigRational::from(BigInt::from(2 * u64::from(w.params().k())))
    );
    let est = estimate_infimum(w.weights(), grid_n, refine)?;
    if !w.weights().is_empty() && est.value >= 0.0 {
        return Err(Error::RatioRegime {
            sup: sup_value.to_f64().unwrap_or(f64::NAN),
            inf: est.value,
        });
    }
    let sup = sup_value.to_f64().expect("sup converts to f64");
    let alpha = ratio_bound(sup, est.value)?;
    let chi = chi_lower_bound_heuristic(alpha, margin);
    Ok(SpectralCertificate {
        params: *w.params(),
        n: w.truncation_depth(),
        sup_value,
        inf_estimate: est.value,
        inf_argmin: est.argmin,
        certified: est.certified(),
        lipschitz_bound: est.lipschitz_bound(),
        alpha_ratio_bound: alpha,
        chi_lower_bound: chi,
        chi_is_heuristic: true,
    })
}

impl SpectralCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.params.p(),
            "q": self.params.q(),
            "k": self.params.k(),
            "n": self.n,
            "sup": ratio_str(&self.sup_value),
            "inf_estimate": self.inf_estimate,
            "inf_argmin": self.inf_argmin.to_json(),
            "certified": self.certified,
            "lipschitz_bound": self.lipschitz_bound,
            "alpha_ratio_bound": self.alpha_ratio_bound,
            "chi_lower_bound": self.chi_lower_bound,
            "chi_is_heuristic": self.chi_is_heuristic,
        })
    }
}

/// The weighted cosine average
/// `(1/(n+1)) Σ_{j<n} ((n-j)/n) cos(2π (jq+1) θ)`.
///
/// At `θ = 0` the sum telescopes to exactly `1/2`; the integer part of the
/// summation is kept exact so the float result is exactly `0.5` there.
pub fn fejer_kernel(n: u32, q: u64, theta: f64) -> f64 {
    assert!(n >= 1 && q >= 1);
    let mut sum = 0.0;
    for j in 0..u64::from(n) {
        let coeff = (u64::from(n) - j) as f64;
        sum += coeff * (2.0 * PI * ((j * q + 1) as f64) * theta).cos();
    }
    sum / (u64::from(n) * u64::from(n + 1)) as f64
}

/// The limit profile `(1 - cos ℓ)/ℓ²` of the kernel, always nonnegative,
/// extended by continuity to `1/2` at `ℓ = 0`.
pub fn integral_comparison(ell: f64) -> f64 {
    if ell == 0.0 {
        0.5
    } else {
        (1.0 - ell.cos()) / (ell * ell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::weight_function;
    use crate::lattice::Vec2;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn params(p: u64, q: u64, k: u32) -> ModularDistanceParams {
        ModularDistanceParams::new(p, q, k).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn torus_points_are_canonical() {
        let u = TorusPoint::new(-1, 7, 4);
        assert_eq!(u.numerators(), (3, 3));
        assert_eq!(u.denom(), 4);
        assert_eq!(TorusPoint::new(0, 0, 1), TorusPoint::zero());
    }

    #[test]
    fn lexicographic_comparison_is_exact() {
        let a = TorusPoint::new(1, 0, 4);
        let b = TorusPoint::new(2, 0, 8);
        assert_eq!(a.cmp_lex(&b), Ordering::Equal);
        let c = TorusPoint::new(1, 1, 4);
        assert_eq!(a.cmp_lex(&c), Ordering::Less);
    }

    #[test]
    fn transform_at_origin_is_total_weight() {
        for (p, q, k, n) in [(1, 2, 1, 1), (1, 2, 2, 3), (2, 3, 1, 2)] {
            let w = weight_function(&params(p, q, k), n).unwrap();
            let v = fourier_at(w.weights(), &TorusPoint::zero());
            assert!((v - 2.0 * k as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn hand_reduced_phase_example() {
        // At u = (1/2, 1/2): the (0,±9) pair lands on cos(π), the
        // (±6,∓10) pair on cos(0); with weight 1/2 each, ŵ = 0.
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let v = fourier_at(w.weights(), &TorusPoint::new(1, 1, 2));
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn cosine_pairing_matches_complex_sum() {
        use num_complex::Complex64;
        let entries = vec![
            (Vec2::new(1, 2), rat(1, 3)),
            (Vec2::new(-1, -2), rat(1, 3)),
            (Vec2::new(3, -1), rat(1, 6)),
            (Vec2::new(-3, 1), rat(1, 6)),
        ];
        let w = SymmetricWeights::from_entries(entries).unwrap();
        for (z1, z2, n) in [(0i64, 0i64, 1u64), (1, 2, 5), (3, 4, 7), (2, 9, 11)] {
            let u = TorusPoint::new(z1, z2, n);
            let paired = fourier_at(&w, &u);
            let naive: Complex64 = w
                .entries()
                .iter()
                .map(|(v, weight)| {
                    let phase = 2.0 * PI
                        * (z1 as f64 * v.x.to_f64().unwrap()
                            + z2 as f64 * v.y.to_f64().unwrap())
                        / n as f64;
                    weight.to_f64().unwrap() * Complex64::new(0.0, phase).exp()
                })
                .sum();
            assert!(naive.im.abs() < 1e-12);
            assert!((paired - naive.re).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_trace_vanishes_and_peak_is_2k() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let spec = circulant_spectrum(w.weights(), 5).unwrap();
        assert!((spec.lambda(0, 0) - 2.0).abs() < 1e-12);
        assert!(spec.trace().abs() < 1e-9);
    }

    #[test]
    fn degenerate_quotient_is_rejected() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        // (6, -10) ≡ (0, 0) mod 2.
        assert!(matches!(
            circulant_spectrum(w.weights(), 2),
            Err(Error::DegenerateQuotient { .. })
        ));
        assert!(matches!(
            circulant_spectrum(w.weights(), 1),
            Err(Error::ModulusTooSmall(1))
        ));
    }

    #[test]
    fn grid_two_then_refinement_reaches_minus_two() {
        // True infimum at n = 1 is -2, attained at (1/4, 1/2).
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let cfg = RefinementConfig::default();
        let est = estimate_infimum(w.weights(), 2, &cfg).unwrap();
        assert!(est.value <= 0.0);
        assert!((est.value + 2.0).abs() < 1e-12);
        assert_eq!(est.certification, Certification::NotRequested);
    }

    #[test]
    fn estimate_agrees_with_direct_evaluation_at_argmin() {
        let w = weight_function(&params(1, 2, 1), 2).unwrap();
        let cfg = RefinementConfig { rounds: 6, ..Default::default() };
        let est = estimate_infimum(w.weights(), 8, &cfg).unwrap();
        let direct = fourier_at(w.weights(), &est.argmin);
        assert_eq!(est.value, direct);
    }

    #[test]
    fn certification_paths() {
        // Tiny support: L = 2π * 1 * 2, slack = 2π*2/(2*64) small.
        let entries = vec![(Vec2::new(1, 1), rat(1, 1)), (Vec2::new(-1, -1), rat(1, 1))];
        let w = SymmetricWeights::from_entries(entries).unwrap();
        let cfg = RefinementConfig {
            certify: true,
            target_separation: 1.0,
            ..Default::default()
        };
        let est = estimate_infimum(&w, 64, &cfg).unwrap();
        match est.certification {
            Certification::Certified { sound_lower_bound, slack } => {
                assert!(slack < 1.0);
                assert!(sound_lower_bound <= est.value);
            }
            other => panic!("expected certification, got {other:?}"),
        }

        // Huge coordinates make the slack exceed the threshold.
        let w = weight_function(&params(1, 2, 3), 2).unwrap();
        let cfg = RefinementConfig {
            certify: true,
            slack_threshold: 10.0,
            ..Default::default()
        };
        let est = estimate_infimum(w.weights(), 64, &cfg).unwrap();
        assert!(matches!(est.certification, Certification::Infeasible { .. }));
        assert!(!est.certified());
        assert!(est.lipschitz_bound().is_none());
    }

    #[test]
    fn ratio_bound_values() {
        assert!((ratio_bound(2.0, -2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((ratio_bound(1.0, -1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((ratio_bound(2.0, -0.5).unwrap() - 0.2).abs() < 1e-15);
        assert!(matches!(
            ratio_bound(2.0, 0.0),
            Err(Error::RatioRegime { .. })
        ));
    }

    #[test]
    fn chromatic_bounds() {
        assert_eq!(chi_lower_bound_exact(&rat(1, 5)), 5);
        assert_eq!(chi_lower_bound_exact(&rat(1, 1)), 1);
        assert_eq!(chi_lower_bound_exact(&rat(2, 7)), 4);
        assert_eq!(chi_lower_bound_heuristic(0.34, 0.01), 3);
        assert_eq!(chi_lower_bound_heuristic(1.0, 0.0), 1);
    }

    #[test]
    fn certificate_pipeline_smallest_case() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let cert =
            spectral_certificate(&w, 2, &RefinementConfig::default(), 0.01).unwrap();
        assert_eq!(cert.sup_value, rat(2, 1));
        assert!(cert.inf_estimate < 0.0);
        assert!(cert.alpha_ratio_bound > 0.0 && cert.alpha_ratio_bound <= 1.0);
        assert!(cert.chi_is_heuristic);
        let doc = cert.to_json();
        assert_eq!(doc["sup"], "2/1");
    }

    #[test]
    fn kernel_is_exactly_half_at_zero() {
        for n in [1u32, 2, 7, 64] {
            for q in [2u64, 3, 5] {
                assert_eq!(fejer_kernel(n, q, 0.0), 0.5);
            }
        }
    }

    #[test]
    fn kernel_single_term() {
        assert_eq!(fejer_kernel(1, 7, 0.5), -0.5);
    }

    #[test]
    fn kernel_approaches_integral_profile() {
        let n = 64;
        let q = 2;
        let theta = 0.003;
        let ell = 2.0 * PI * (n as f64) * (q as f64) * theta;
        let kernel = fejer_kernel(n, q, theta);
        assert!((kernel - integral_comparison(ell)).abs() < 0.05);
    }

    #[test]
    fn integral_profile_values() {
        assert!((integral_comparison(PI) - 2.0 / (PI * PI)).abs() < 1e-15);
        assert!(integral_comparison(2.0 * PI).abs() < 1e-15);
        assert_eq!(integral_comparison(0.0), 0.5);
    }

    fn valid_params() -> impl Strategy<Value = ModularDistanceParams> {
        (2u64..=5, 1u64..=4, 1u32..=2)
            .prop_filter_map("p < q coprime", |(q, p, k)| {
                ModularDistanceParams::new(p, q, k).ok()
            })
    }

    proptest! {
        #[test]
        fn transform_is_bounded_by_total_weight(
            prm in valid_params(),
            n in 1u32..=3,
            z1 in 0i64..64,
            z2 in 0i64..64,
            den in 2u64..=64,
        ) {
            let w = weight_function(&prm, n).unwrap();
            let v = fourier_at(w.weights(), &TorusPoint::new(z1, z2, den));
            prop_assert!(v.abs() <= 2.0 * prm.k() as f64 + 1e-9);
        }

        #[test]
        fn integral_profile_is_nonnegative(ell in -50.0f64..50.0) {
            prop_assert!(integral_comparison(ell) >= 0.0);
        }
    }
}

//! # moddist
//!
//! Spectral chromatic-number certificates for modular-distance Cayley
//! graphs on Z².
//!
//! For coprime `p < q` and a strength parameter `k`, the crate constructs
//! a centrally symmetric generating set in Z² whose Cayley graph embeds in
//! the plane with every edge length congruent to `p` mod `q`. Weighting
//! the generators and minimizing the Fourier transform of the weight
//! function over the torus yields a ratio bound on the independence ratio,
//! hence a lower bound on the chromatic number that grows with `k` — the
//! `p = 1, q = 2` family is the odd-distance graph.
//!
//! The toolkit is organized around exact arithmetic: generator coordinates
//! are arbitrary-precision integers (they scale like `q^(4k)`), weights
//! and embedding checks are exact rationals, and every trigonometric
//! evaluation reduces its phase in integer arithmetic first.
//!
//! ## Modules
//!
//! - [`generators`]: base and truncated generating sets, weight functions,
//!   triangle-freeness certificates, kernel-relation diagnostics.
//! - [`spectral`]: Fourier evaluation at rational torus points, circulant
//!   spectra of quotients, infimum estimation, ratio and chromatic bounds,
//!   kernel diagnostics.
//! - [`embedding`]: exact verification that the graph is a plane distance
//!   graph with the advertised residues.
//! - [`quotient`]: finite quotient graphs, exact independence numbers,
//!   spectral dominance cross-checks.
//! - [`report`]: experiment configuration and the combined certificate
//!   document behind the `moddist` binary.
//!
//! ## Quick start
//!
//! ```
//! use moddist::params::ModularDistanceParams;
//! use moddist::generators::weight_function;
//! use moddist::spectral::{spectral_certificate, RefinementConfig};
//!
//! let params = ModularDistanceParams::new(1, 2, 1).unwrap();
//! let weights = weight_function(&params, 4).unwrap();
//! let cert =
//!     spectral_certificate(&weights, 32, &RefinementConfig::default(), 0.01).unwrap();
//! assert!(cert.chi_lower_bound >= 2);
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod embedding;
pub mod error;
pub mod generators;
pub mod lattice;
pub mod params;
pub mod quotient;
pub mod report;
pub mod serial;
pub mod spectral;

pub use error::{Error, Result};
pub use params::ModularDistanceParams;

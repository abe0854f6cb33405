//! Plane realization of the Cayley graph as a distance graph.
//!
//! The lattice embeds via `h(x, y) = x e1 + y e2` with `e1 = (1, 0)` and
//! `e2 = (p/(2 q^(2k)), sqrt(1 - p²/(4 q^(4k))))`. The second basis vector
//! is irrational, but the squared distance between images of lattice
//! points is the exact rational Gram form
//!
//! ```text
//!     Q(Δx, Δy) = Δx² + Δy² + (p/q^(2k)) Δx Δy,
//! ```
//!
//! so verification never touches floating point: for every generator the
//! form must equal the square of the closed-form integer distance
//! `(jq+1)(q^(2k+t) + q^(2k-t) + p)`, whose residue mod `q` is `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{truncated_generators, ScaledGenerator};
use crate::lattice::Vec2;
use crate::params::ModularDistanceParams;
use crate::serial::ratio_str;

/// The exact rational quadratic form giving squared embedded distances.
#[derive(Clone, Debug)]
pub struct EmbeddingForm {
    params: ModularDistanceParams,
    /// `p / q^(2k)`, the coefficient of the cross term.
    cross_coeff: BigRational,
}

impl EmbeddingForm {
    pub fn new(params: &ModularDistanceParams) -> Self {
        let cross_coeff =
            BigRational::new(BigInt::from(params.p()), params.q_pow(2 * params.k()));
        Self { params: *params, cross_coeff }
    }

    pub fn params(&self) -> &ModularDistanceParams {
        &self.params
    }

    pub fn cross_coeff(&self) -> &BigRational {
        &self.cross_coeff
    }

    /// `Q(Δ) = Δx² + Δy² + (p/q^(2k)) Δx Δy`.
    pub fn squared_norm(&self, delta: &Vec2) -> BigRational {
        let dx = BigRational::from(delta.x.clone());
        let dy = BigRational::from(delta.y.clone());
        &dx * &dx + &dy * &dy + &self.cross_coeff * dx * dy
    }

    /// The form is positive definite since `|p/q^(2k)| < 2`.
    pub fn is_positive_definite(&self) -> bool {
        self.cross_coeff.abs() < BigRational::from(BigInt::from(2))
    }
}

/// Squared embedded distance of a lattice displacement, as an exact rational.
pub fn squared_distance(params: &ModularDistanceParams, delta: &Vec2) -> BigRational {
    EmbeddingForm::new(params).squared_norm(delta)
}

/// Closed-form edge length `(jq+1)(q^(2k+t) + q^(2k-t) + p)` of the
/// scale-`j`, index-`t` generator.
pub fn expected_distance(params: &ModularDistanceParams, t: u32, scale: u64) -> BigInt {
    let two_k = 2 * params.k();
    let multiplier = BigInt::from(scale) * BigInt::from(params.q()) + BigInt::one();
    multiplier * (params.q_pow(two_k + t) + params.q_pow(two_k - t) + BigInt::from(params.p()))
}

/// Extracts the exact integer distance of a displacement: the rational
/// squared distance must reduce to an integer that is a perfect square.
/// Anything else is a verification failure, not a rounding question.
pub fn exact_distance(params: &ModularDistanceParams, delta: &Vec2) -> Result<BigInt> {
    let squared = squared_distance(params, delta);
    if !squared.denom().is_one() || squared.numer().is_negative() {
        return Err(Error::NotAPerfectSquare { vector: delta.clone(), squared });
    }
    let root = squared.numer().sqrt();
    if &(&root * &root) != squared.numer() {
        return Err(Error::NotAPerfectSquare { vector: delta.clone(), squared });
    }
    Ok(root)
}

/// Per-generator outcome of the exact embedding check.
#[derive(Clone, Debug)]
pub struct EdgeDistanceReport {
    pub generator: ScaledGenerator,
    pub squared_distance: BigRational,
    pub distance: BigInt,
    /// `distance mod q`, always equal to `p` for a genuine generator.
    pub residue: u64,
}

impl EdgeDistanceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "t": self.generator.atom.t,
            "sign": self.generator.atom.sign.to_string(),
            "j": self.generator.scale,
            "x": self.generator.vector.x.to_string(),
            "y": self.generator.vector.y.to_string(),
            "squared_distance": ratio_str(&self.squared_distance),
            "distance": self.distance.to_string(),
            "residue": self.residue,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},pass",
            self.generator.atom.t,
            self.generator.atom.sign,
            self.generator.scale,
            self.generator.vector.x,
            self.generator.vector.y,
            self.distance,
            self.residue,
        )
    }
}

pub const EDGE_CSV_HEADER: &str = "t,sign,j,x,y,distance,residue,pass";

/// Verifies, in exact rational arithmetic, that every generator of the
/// depth-`n` truncation embeds at its closed-form integer distance with
/// residue `p` mod `q`. Fails loudly on the first mismatch.
pub fn verify_embedding(
    params: &ModularDistanceParams,
    n: u32,
) -> Result<Vec<EdgeDistanceReport>> {
    let form = EmbeddingForm::new(params);
    let mut reports = Vec::new();
    for generator in truncated_generators(params, n)? {
        let squared = form.squared_norm(&generator.vector);
        let expected = expected_distance(params, generator.atom.t, generator.scale);
        if squared != BigRational::from(&expected * &expected) {
            return Err(Error::EmbeddingMismatch {
                vector: generator.vector.clone(),
                squared,
                expected,
            });
        }
        let distance = exact_distance(params, &generator.vector)?;
        debug_assert_eq!(distance, expected);
        let residue = distance
            .mod_floor(&BigInt::from(params.q()))
            .to_u64()
            .expect("residue fits u64");
        if residue != params.p() {
            return Err(Error::WrongResidue {
                vector: generator.vector.clone(),
                distance,
                residue,
                p: params.p(),
                q: params.q(),
            });
        }
        reports.push(EdgeDistanceReport {
            generator,
            squared_distance: squared,
            distance,
            residue,
        });
    }
    Ok(reports)
}

/// Floating-point image of a lattice point under the embedding; intended
/// for export and visualization only, never for verification.
pub fn embed_point(params: &ModularDistanceParams, point: &Vec2) -> (f64, f64) {
    let p = params.p() as f64;
    let q2k = params.q_pow(2 * params.k()).to_f64().unwrap_or(f64::INFINITY);
    let e2_x = p / (2.0 * q2k);
    let e2_y = (1.0 - p * p / (4.0 * q2k * q2k)).sqrt();
    let x = point.x.to_f64().unwrap_or(f64::NAN);
    let y = point.y.to_f64().unwrap_or(f64::NAN);
    (x + y * e2_x, y * e2_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn params(p: u64, q: u64, k: u32) -> ModularDistanceParams {
        ModularDistanceParams::new(p, q, k).unwrap()
    }

    #[test]
    fn gram_form_on_base_vectors() {
        let prm = params(1, 2, 1);
        assert_eq!(
            squared_distance(&prm, &Vec2::new(6, -10)),
            BigRational::from(BigInt::from(121))
        );
        assert_eq!(
            squared_distance(&prm, &Vec2::new(0, -9)),
            BigRational::from(BigInt::from(81))
        );
        assert_eq!(squared_distance(&prm, &Vec2::zero()), BigRational::zero());
    }

    #[test]
    fn closed_form_distances() {
        let prm = params(1, 2, 1);
        assert_eq!(expected_distance(&prm, 1, 0), BigInt::from(11));
        assert_eq!(expected_distance(&prm, 0, 1), BigInt::from(27));
    }

    #[test]
    fn verification_sweeps_and_distances() {
        let reports = verify_embedding(&params(1, 2, 1), 2).unwrap();
        assert_eq!(reports.len(), 8);
        let mut distances: Vec<u64> =
            reports.iter().map(|r| r.distance.to_u64().unwrap()).collect();
        distances.sort_unstable();
        distances.dedup();
        assert_eq!(distances, vec![9, 11, 27, 33]);
        assert!(reports.iter().all(|r| r.residue == 1));

        let reports = verify_embedding(&params(2, 3, 1), 1).unwrap();
        assert!(reports.iter().all(|r| r.residue == 2));
    }

    #[test]
    fn perturbed_vector_is_rejected() {
        let prm = params(1, 2, 1);
        // 36 + 121 - 66/4 is not an integer square of the expected form.
        assert!(matches!(
            exact_distance(&prm, &Vec2::new(6, -11)),
            Err(Error::NotAPerfectSquare { .. })
        ));
    }

    #[test]
    fn form_is_positive_definite_on_a_grid() {
        let prm = params(4, 5, 1);
        let form = EmbeddingForm::new(&prm);
        assert!(form.is_positive_definite());
        for dx in -5i64..=5 {
            for dy in -5i64..=5 {
                let d = Vec2::new(dx, dy);
                let v = form.squared_norm(&d);
                if dx == 0 && dy == 0 {
                    assert!(v.is_zero());
                } else {
                    assert!(v.is_positive(), "Q{d} = {v}");
                }
            }
        }
    }

    #[test]
    fn float_embedding_matches_gram_form() {
        let prm = params(1, 2, 1);
        assert_eq!(embed_point(&prm, &Vec2::zero()), (0.0, 0.0));
        assert_eq!(embed_point(&prm, &Vec2::new(1, 0)), (1.0, 0.0));
        let (ex, ey) = embed_point(&prm, &Vec2::new(0, 1));
        assert!((ex - 0.125).abs() < 1e-15);
        assert!((ey - (1.0f64 - 1.0 / 64.0).sqrt()).abs() < 1e-15);

        // ‖h(u) - h(v)‖² agrees with the exact form for a moderate generator.
        let delta = Vec2::new(6, -10);
        let (hx, hy) = embed_point(&prm, &delta);
        let float_sq = hx * hx + hy * hy;
        let exact = squared_distance(&prm, &delta).to_f64().unwrap();
        assert!((float_sq - exact).abs() / exact < 1e-6);
    }

    #[test]
    fn residue_identity_over_sweep() {
        for q in 2u64..=5 {
            for p in 1..q {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for k in 1u32..=2 {
                    let prm = params(p, q, k);
                    for t in 0..2 * k {
                        for j in 0..3u64 {
                            let d = expected_distance(&prm, t, j);
                            assert_eq!(
                                d.mod_floor(&BigInt::from(q)).to_u64().unwrap(),
                                p
                            );
                        }
                    }
                }
            }
        }
    }
}

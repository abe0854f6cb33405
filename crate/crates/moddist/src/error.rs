//! Crate-wide error type.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::lattice::Vec2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p and q must be coprime (got p={p}, q={q})")]
    NotCoprime { p: u64, q: u64 },

    #[error("parameters require 0 < p < q (got p={p}, q={q})")]
    ParamRange { p: u64, q: u64 },

    #[error("strength parameter k must be at least 1")]
    ZeroStrength,

    #[error("truncation depth n must be at least 1")]
    ZeroTruncation,

    #[error("grid resolution must be at least 2 (got {0})")]
    GridTooCoarse(u64),

    #[error("quotient modulus must be at least 2 (got {0})")]
    ModulusTooSmall(u64),

    #[error("weighted set must be centrally symmetric: {vector} lacks its negation")]
    AsymmetricWeights { vector: Vec2 },

    #[error("weight of {vector} must be positive (got {weight})")]
    NonPositiveWeight { vector: Vec2, weight: BigRational },

    #[error("weighted set must not put weight on the origin")]
    WeightOnOrigin,

    #[error("duplicate support vector {vector}")]
    DuplicateVector { vector: Vec2 },

    #[error("kernel relation needs three positive-signed atoms with strictly increasing t")]
    BadAtomTriple,

    #[error("atoms with indices t={t1} and t={t2} are collinear; no primitive relation exists")]
    CollinearAtoms { t1: u32, t2: u32 },

    #[error("generator {vector} reduces to (0,0) mod {m}; the quotient puts weight on the diagonal")]
    DegenerateQuotient { vector: Vec2, m: u64 },

    #[error("connection set must be nonempty")]
    EmptyConnectionSet,

    #[error("connection set must exclude (0,0) and be closed under negation mod {m}")]
    InvalidConnectionSet { m: u64 },

    #[error("quotient on {vertices} vertices exceeds the solver cap of {cap}")]
    InstanceTooLarge { vertices: usize, cap: usize },

    #[error("ratio bound needs inf < 0 < sup (got sup={sup}, inf={inf})")]
    RatioRegime { sup: f64, inf: f64 },

    #[error(
        "embedding verification failed for {vector}: squared distance {squared} \
         does not match expected distance {expected}"
    )]
    EmbeddingMismatch {
        vector: Vec2,
        squared: BigRational,
        expected: BigInt,
    },

    #[error("squared distance {squared} of {vector} is not a perfect integer square")]
    NotAPerfectSquare { vector: Vec2, squared: BigRational },

    #[error("distance {distance} of {vector} has residue {residue} mod {q}, expected {p}")]
    WrongResidue {
        vector: Vec2,
        distance: BigInt,
        residue: u64,
        p: u64,
        q: u64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code contract: 2 for configuration or validation errors,
    /// 1 for a mathematical check that failed with evidence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmbeddingMismatch { .. }
            | Error::NotAPerfectSquare { .. }
            | Error::WrongResidue { .. } => 1,
            _ => 2,
        }
    }
}

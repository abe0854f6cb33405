//! Parameter triple governing every construction in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(p, q, k)`: residue target `p`, modulus `q`, and strength `k`.
///
/// Edges of the associated plane distance graph have Euclidean length
/// `p (mod q)`, and the spectral machinery certifies a chromatic lower bound
/// that grows with `k`. Validity requires `gcd(p, q) = 1`, `0 < p < q`,
/// and `k >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ModularDistanceParams {
    p: u64,
    q: u64,
    k: u32,
}

impl ModularDistanceParams {
    pub fn new(p: u64, q: u64, k: u32) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(Error::ParamRange { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        if k == 0 {
            return Err(Error::ZeroStrength);
        }
        Ok(Self { p, q, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `q^e` as an exact integer.
    pub fn q_pow(&self, e: u32) -> BigInt {
        BigInt::from(self.q).pow(e)
    }
}

impl fmt::Display for ModularDistanceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, k={})", self.p, self.q, self.k)
    }
}

//! Exact integer lattice vectors.
//!
//! Generator coordinates grow like `q^(4k)`, which overflows every native
//! integer type already at small parameters, so all vector arithmetic runs
//! on [`num_bigint::BigInt`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A point of the integer lattice Z².
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        Self { x: BigInt::zero(), y: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Scalar multiple `m * self`.
    pub fn scaled(&self, m: &BigInt) -> Self {
        Self { x: &self.x * m, y: &self.y * m }
    }

    /// Dot product `self . other`.
    pub fn dot(&self, other: &Vec2) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    /// 2D cross product `self.x * other.y - self.y * other.x`.
    pub fn cross(&self, other: &Vec2) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// L1 norm `|x| + |y|`.
    pub fn l1_norm(&self) -> BigInt {
        self.x.abs() + self.y.abs()
    }

    /// Componentwise reduction into `[0, m)²`.
    pub fn reduce_mod(&self, m: u64) -> (u64, u64) {
        let m_big = BigInt::from(m);
        let rx = self.x.mod_floor(&m_big);
        let ry = self.y.mod_floor(&m_big);
        (big_to_u64(&rx), big_to_u64(&ry))
    }
}

fn big_to_u64(v: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    v.to_u64().expect("residue fits in u64 by construction")
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -&self.x, y: -&self.y }
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Largest exponent `e` with `q^e | value`, computed by repeated exact division.
///
/// `value` must be nonzero and `q >= 2`.
pub fn q_valuation(q: u64, value: &BigInt) -> u32 {
    assert!(q >= 2, "valuation base must be at least 2");
    assert!(!value.is_zero(), "valuation of zero is undefined");
    let q = BigInt::from(q);
    let mut v = value.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = v.div_rem(&q);
        if !rem.is_zero() {
            return e;
        }
        v = quot;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_arithmetic() {
        let a = Vec2::new(6, -10);
        let b = Vec2::new(0, -9);
        assert_eq!(&a + &b, Vec2::new(6, -19));
        assert_eq!(&a - &b, Vec2::new(6, -1));
        assert_eq!(-&a, Vec2::new(-6, 10));
        assert_eq!(a.dot(&b), BigInt::from(90));
        assert_eq!(a.cross(&b), BigInt::from(-54));
        assert_eq!(a.l1_norm(), BigInt::from(16));
    }

    #[test]
    fn mod_reduction_is_canonical() {
        let v = Vec2::new(6, -10);
        assert_eq!(v.reduce_mod(5), (1, 0));
        assert_eq!(Vec2::new(-1, -9).reduce_mod(5), (4, 1));
    }

    #[test]
    fn valuation_by_exact_division() {
        assert_eq!(q_valuation(2, &BigInt::from(-40)), 3);
        assert_eq!(q_valuation(3, &BigInt::from(7)), 0);
        assert_eq!(q_valuation(5, &BigInt::from(250)), 3);
    }
}

//! Small serialization helpers shared by the report types.
//!
//! Big integers always serialize as decimal strings (coordinates exceed
//! 64 bits already at moderate parameters) and exact rationals as
//! `"num/den"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::lattice::Vec2;

pub fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn vec2_json(v: &Vec2) -> Value {
    Value::Array(vec![
        Value::String(v.x.to_string()),
        Value::String(v.y.to_string()),
    ])
}

pub fn bigint_str(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rationals_render_reduced_with_positive_denominator() {
        let r = BigRational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(ratio_str(&r), "-2/3");
        let two = BigRational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(ratio_str(&two), "2/1");
    }
}

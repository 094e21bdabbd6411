//! Exact arithmetic in `Q(q, t, α)`.
//!
//! A [`RationalFunction`] is a canonical ratio of two [`ParamPolynomial`]s
//! over a fixed [`Params`] context. Canonical form makes equality a
//! structural comparison.

mod gcd;
mod params;
mod parse;
mod poly;
mod rational;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

pub use gcd::gcd;
pub use params::{Params, Symbol, MAX_SYMBOLS};
pub use parse::parse;
pub use poly::{glex_cmp, Exps, ParamPolynomial};
pub use rational::{as_rational, parse_in, rf_arith, FieldOp, RationalFunction};

use crate::error::Result;

/// Scalar types that values can be evaluated into: exact rationals or floats.
pub trait Numeric: Clone + Debug + Num + Signed + PartialOrd + Send + Sync {
    fn from_bigint(c: &BigInt) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn as_f64(&self) -> f64;
}

impl Numeric for f64 {
    fn from_bigint(c: &BigInt) -> Self {
        c.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Numeric for BigRational {
    fn from_bigint(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn as_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
}

/// Float value of a big rational that survives numerators and denominators
/// beyond the f64 exponent range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let n = r.numer().abs();
    let d = r.denom();
    // quotient with about 64 significant bits, then undo the shift
    let k = 64 - (n.bits() as i64 - d.bits() as i64);
    let quotient = if k >= 0 {
        (n << k as usize) / d
    } else {
        n / (d << (-k) as usize)
    };
    let v = quotient.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-k.clamp(-2000, 2000) as i32);
    if r.numer().is_negative() {
        -v
    } else {
        v
    }
}

/// Canonical form of `num / den`.
pub fn rf_normalize(num: ParamPolynomial, den: ParamPolynomial) -> Result<RationalFunction> {
    RationalFunction::new(num, den)
}

/// Value of `f` at a point given as `(symbol, value)` pairs.
pub fn rf_eval<N: Numeric>(f: &RationalFunction, assignment: &[(Symbol, N)]) -> Result<N> {
    f.eval(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_ratios_convert() {
        let big = BigInt::from(3).pow(3000u32);
        let r = BigRational::new(BigInt::from(2) * &big, BigInt::from(-5) * &big);
        assert!((ratio_to_f64(&r) + 0.4).abs() < 1e-15);
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(7).pow(500u32));
        assert_eq!(ratio_to_f64(&tiny), 0.0);
        assert_eq!(ratio_to_f64(&BigRational::from_integer(BigInt::from(0))), 0.0);
    }
}

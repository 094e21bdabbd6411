use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::gcd;
use super::params::{Params, Symbol};
use super::poly::ParamPolynomial;
use super::Numeric;
use crate::error::{Error, Result};

/// Element of `Q(symbols)` kept in canonical reduced form.
///
/// Numerator and denominator are coprime in `Z[symbols]` and the graded-lex
/// smallest term of the denominator has a positive coefficient, so two values
/// are equal exactly when their fields are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ParamPolynomial,
    den: ParamPolynomial,
}

/// The four field operations accepted by [`rf_arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: context mismatch and division by zero are errors.
pub fn rf_arith(op: FieldOp, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
    a.params().check_same(b.params())?;
    Ok(match op {
        FieldOp::Add => a.add_ref(b),
        FieldOp::Sub => a.add_ref(&b.neg_ref()),
        FieldOp::Mul => a.mul_ref(b),
        FieldOp::Div => a.mul_ref(&b.inv()?),
    })
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn new(num: ParamPolynomial, den: ParamPolynomial) -> Result<Self> {
        num.params().check_same(den.params())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.params()));
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Ok(Self::with_sign(num, den))
    }

    /// Assumes `num` and `den` are already coprime.
    fn with_sign(num: ParamPolynomial, den: ParamPolynomial) -> Self {
        if den.trailing().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            RationalFunction {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RationalFunction { num, den }
        }
    }

    pub fn zero(params: Params) -> Self {
        RationalFunction {
            num: ParamPolynomial::zero(params),
            den: ParamPolynomial::one(params),
        }
    }

    pub fn one(params: Params) -> Self {
        Self::from_integer(params, 1)
    }

    pub fn from_integer(params: Params, c: i64) -> Self {
        Self::from_poly(ParamPolynomial::constant(params, BigInt::from(c)))
    }

    pub fn from_ratio(params: Params, num: i64, den: i64) -> Result<Self> {
        Self::new(
            ParamPolynomial::constant(params, BigInt::from(num)),
            ParamPolynomial::constant(params, BigInt::from(den)),
        )
    }

    pub fn from_bigrational(params: Params, r: &num_rational::BigRational) -> Self {
        Self::new(
            ParamPolynomial::constant(params, r.numer().clone()),
            ParamPolynomial::constant(params, r.denom().clone()),
        )
        .expect("BigRational has nonzero denominator")
    }

    pub fn from_poly(p: ParamPolynomial) -> Self {
        let params = p.params();
        RationalFunction {
            num: p,
            den: ParamPolynomial::one(params),
        }
    }

    pub fn symbol(params: Params, sym: Symbol) -> Result<Self> {
        Ok(Self::from_poly(ParamPolynomial::symbol(params, sym)?))
    }

    pub fn params(&self) -> Params {
        self.num.params()
    }

    pub fn numerator(&self) -> &ParamPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is an integer constant.
    pub fn is_integer(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// Number of terms in numerator plus denominator; a size measure.
    pub fn size(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_sign(self.den.clone(), self.num.clone()))
    }

    pub(crate) fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.params(), other.params(), "parameter context mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return Self::with_sign(num, other.den.clone());
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return Self::with_sign(num, self.den.clone());
        }
        // a/(g a') + c/(g c') = (a c' + c a') / (g a' c'); only g can share
        // factors with the new numerator.
        let g = gcd(&self.den, &other.den);
        let (a1, c1) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                other.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&c1).add(&other.num.mul(&a1));
        if num.is_zero() {
            return Self::zero(self.params());
        }
        let den = a1.mul(&c1);
        if g.is_one() {
            return Self::with_sign(num, den);
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Self::with_sign(num, den.mul(&g))
    }

    pub(crate) fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.params(), other.params(), "parameter context mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.params());
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::with_sign(n1.mul(&n2), d1.mul(&d2))
    }

    /// Multiplication by a polynomial in the parameters.
    pub fn mul_poly(&self, p: &ParamPolynomial) -> Self {
        self.mul_ref(&Self::from_poly(p.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Re-expresses the value in a larger context.
    pub fn embed(&self, target: Params) -> Result<Self> {
        Ok(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    /// Value at a point, in the numeric type of the assignment.
    pub fn eval<N: Numeric>(&self, assignment: &[(Symbol, N)]) -> Result<N> {
        let params = self.params();
        let mut values = Vec::with_capacity(params.len());
        for sym in params.symbols() {
            let v = assignment
                .iter()
                .find(|(s, _)| *s == sym)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::MissingSymbol(sym.name().to_string()))?;
            values.push(v);
        }
        let d = self.den.eval(&values);
        if d.is_zero() {
            let point: Vec<String> = params
                .symbols()
                .zip(&values)
                .map(|(s, v)| format!("{}={:?}", s, v))
                .collect();
            return Err(Error::VanishingDenominator(format!(
                "({}) for {}",
                point.join(", "),
                self
            )));
        }
        Ok(self.num.eval(&values) / d)
    }

    /// Substitutes each symbol of this context by a value from `target`.
    ///
    /// Symbols missing from `subs` must belong to `target` and are kept.
    pub fn substitute(&self, subs: &[(Symbol, RationalFunction)], target: Params) -> Result<Self> {
        let params = self.params();
        let mut values = Vec::with_capacity(params.len());
        for sym in params.symbols() {
            match subs.iter().find(|(s, _)| *s == sym) {
                Some((_, v)) => {
                    v.params().check_same(target)?;
                    values.push(v.clone());
                }
                None => values.push(Self::symbol(target, sym)?),
            }
        }
        let num = eval_poly_rf(&self.num, &values, target);
        let den = eval_poly_rf(&self.den, &values, target);
        if den.is_zero() {
            return Err(Error::VanishingDenominator(format!(
                "coefficient {} under substitution",
                self
            )));
        }
        Ok(num.mul_ref(&den.inv()?))
    }

    pub(crate) fn write_with(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        if latex {
            if self.den.is_one() {
                return self.num.write_plain(f, true);
            }
            f.write_str("\\frac{")?;
            self.num.write_plain(f, true)?;
            f.write_str("}{")?;
            self.den.write_plain(f, true)?;
            return f.write_str("}");
        }
        if self.den.is_one() {
            return self.num.write_plain(f, false);
        }
        if self.num.num_terms() > 1 {
            f.write_str("(")?;
            self.num.write_plain(f, false)?;
            f.write_str(")")?;
        } else {
            self.num.write_plain(f, false)?;
        }
        f.write_str("/")?;
        let bare = self.den.is_constant();
        if !bare {
            f.write_str("(")?;
        }
        self.den.write_plain(f, false)?;
        if !bare {
            f.write_str(")")?;
        }
        Ok(())
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        self.write_with(&mut s, true).unwrap();
        s
    }

    /// True when the canonical string starts with a minus sign and has a
    /// single numerator term, so it can be printed as a subtraction.
    pub(crate) fn is_simple_negative(&self) -> bool {
        self.num.num_terms() == 1 && self.num.terms()[0].1.is_negative()
    }
}

fn cancel(a: &ParamPolynomial, b: &ParamPolynomial) -> (ParamPolynomial, ParamPolynomial) {
    if a.is_one() || b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

fn eval_poly_rf(p: &ParamPolynomial, values: &[RationalFunction], target: Params) -> RationalFunction {
    let mut acc = RationalFunction::zero(target);
    for (e, c) in p.terms() {
        let mut term = RationalFunction::from_poly(ParamPolynomial::constant(target, c.clone()));
        for (k, v) in values.iter().enumerate() {
            if e[k] > 0 {
                term = term.mul_ref(&v.pow(e[k]));
            }
        }
        acc = acc.add_ref(&term);
    }
    acc
}

/// Exact rational value if the function is a constant.
pub fn as_rational(rf: &RationalFunction) -> Option<num_rational::BigRational> {
    let n = rf.numerator().constant_value()?;
    let d = rf.denominator().constant_value()?;
    if d.is_zero() {
        return None;
    }
    Some(num_rational::BigRational::new(n, d))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction{}({})", self.params(), self)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Parses a canonical string in the given context.
pub fn parse_in(s: &str, params: Params) -> Result<RationalFunction> {
    super::parse(s, params)
}

impl<'de> Deserialize<'de> for RationalFunction {
    /// Deserializes from `{"params": [...], "value": "..."}`; polynomial JSON
    /// carries the context separately and parses coefficients with [`parse_in`].
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            params: Params,
            value: String,
        }
        let r = Repr::deserialize(deserializer)?;
        parse_in(&r.value, r.params).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, rhs)
            }
        }
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

// Operator forms panic on context mismatch and division by zero; use
// `rf_arith` for the checked versions.
forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.inv().expect("division by zero rational function")));

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl<'a> Neg for &'a RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse;
    use num_rational::BigRational;

    fn rf(s: &str) -> RationalFunction {
        parse(s, Params::QT).unwrap()
    }

    fn poly(s: &str) -> ParamPolynomial {
        rf(s).numerator().clone()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_identical() {
        let x = RationalFunction::new(poly("1 - q*t"), poly("1 - q*t")).unwrap();
        assert!(x.is_one());
        assert_eq!(x.to_string(), "1");
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let x = RationalFunction::new(poly("q - q*t"), poly("1 - t")).unwrap();
        assert_eq!(x.to_string(), "q");
        assert!(x.denominator().is_one());
    }

    #[test]
    fn normalize_flips_sign() {
        let x = RationalFunction::new(poly("t - 1"), poly("q*t - 1")).unwrap();
        assert_eq!(x.to_string(), "(1 - t)/(1 - q*t)");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let err = RationalFunction::new(poly("q"), ParamPolynomial::zero(Params::QT)).unwrap_err();
        assert_eq!(err, Error::DivisionByZero);
        assert_eq!(err.to_string(), "division by zero rational function");
    }

    #[test]
    fn add_one_to_golden_coefficient() {
        let one = RationalFunction::one(Params::QT);
        let c = rf("q*(1 - t)/(1 - q*t)");
        let s = rf_arith(FieldOp::Add, &one, &c).unwrap();
        assert_eq!(s, rf("(1 + q - 2*q*t)/(1 - q*t)"));
        assert_eq!(s.to_string(), "(1 + q - 2*q*t)/(1 - q*t)");
        // numeric cross-check at q=1/2, t=1/3: 1 + (1/2)(2/3)/(5/6) = 7/5
        let v = s.eval(&[(Symbol::Q, ratio(1, 2)), (Symbol::T, ratio(1, 3))]).unwrap();
        assert_eq!(v, ratio(7, 5));
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = rf("(1 - t)/(1 - q*t)");
        let b = rf("(1 - q*t)/(1 - t)");
        assert!(rf_arith(FieldOp::Mul, &a, &b).unwrap().is_one());
    }

    #[test]
    fn sub_self_is_zero() {
        let a = rf("(1 - t + q)/(1 - q*t^2)");
        assert!(rf_arith(FieldOp::Sub, &a, &a).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = rf("q");
        let z = RationalFunction::zero(Params::QT);
        assert_eq!(rf_arith(FieldOp::Div, &a, &z).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn context_mixing_is_an_error() {
        let a = RationalFunction::one(Params::QT);
        let b = RationalFunction::one(Params::Q);
        assert!(matches!(
            rf_arith(FieldOp::Add, &a, &b),
            Err(Error::ParamMismatch { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let a = rf("(1 - t)/(1 - q*t)");
        let v = a.eval(&[(Symbol::Q, ratio(0, 1)), (Symbol::T, ratio(0, 1))]).unwrap();
        assert_eq!(v, ratio(1, 1));
        let q = rf("q");
        let v = q.eval(&[(Symbol::Q, ratio(2, 3)), (Symbol::T, ratio(1, 5))]).unwrap();
        assert_eq!(v, ratio(2, 3));
        let c = rf("(1 - t + q - q*t)/(1 - q*t)");
        let v = c.eval(&[(Symbol::Q, ratio(1, 2)), (Symbol::T, ratio(1, 3))]).unwrap();
        assert_eq!(v, ratio(6, 5));
        let vf = c.eval(&[(Symbol::Q, 0.5f64), (Symbol::T, 1.0 / 3.0)]).unwrap();
        assert!((vf - 1.2).abs() < 1e-12);
    }

    #[test]
    fn eval_errors() {
        let a = rf("1/(1 - q*t)");
        let e = a.eval(&[(Symbol::Q, ratio(1, 1)), (Symbol::T, ratio(1, 1))]).unwrap_err();
        assert!(matches!(e, Error::VanishingDenominator(_)));
        assert!(e.to_string().contains("q=") && e.to_string().contains("t="));
        let e = a.eval(&[(Symbol::Q, ratio(1, 2))]).unwrap_err();
        assert_eq!(e, Error::MissingSymbol("t".into()));
    }

    #[test]
    fn substitution() {
        let c = rf("(1 - t + q - q*t)/(1 - q*t)");
        let at_t1 = c
            .substitute(&[(Symbol::T, RationalFunction::one(Params::Q))], Params::Q)
            .unwrap();
        assert!(at_t1.is_zero());
        let at_q0 = c
            .substitute(&[(Symbol::Q, RationalFunction::zero(Params::T))], Params::T)
            .unwrap();
        assert_eq!(at_q0, parse("1 - t", Params::T).unwrap());
        let q_to_t = c
            .substitute(&[(Symbol::Q, RationalFunction::symbol(Params::T, Symbol::T).unwrap())], Params::T)
            .unwrap();
        // (1 - t + t - t^2)/(1 - t^2) = 1
        assert!(q_to_t.is_one());
    }

    #[test]
    fn substitution_pole_is_an_error() {
        let c = rf("1/(1 - q*t)");
        let e = c
            .substitute(
                &[
                    (Symbol::Q, RationalFunction::one(Params::NONE)),
                    (Symbol::T, RationalFunction::one(Params::NONE)),
                ],
                Params::NONE,
            )
            .unwrap_err();
        assert!(matches!(e, Error::VanishingDenominator(_)));
    }
}

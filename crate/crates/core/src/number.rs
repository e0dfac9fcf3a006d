//! Scalars used by valuations and the polytope solver.
//!
//! [`Number`] is what valuations hold: either an exact rational or a binary
//! float. [`Field`] abstracts the arithmetic the elimination and simplex code
//! needs so the same routines run over `BigRational` and `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Absolute tolerance used when the solver runs in floating point.
pub const FLOAT_EPS: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Float(f64),
}

impl Number {
    pub fn zero() -> Self {
        Number::Exact(<BigRational as Zero>::zero())
    }

    pub fn one() -> Self {
        Number::Exact(<BigRational as One>::one())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Number::Exact(BigRational::new(numer.into(), denom.into()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Number::Exact(r) => Some(r),
            Number::Float(_) => None,
        }
    }

    pub fn abs(&self) -> Number {
        match self {
            Number::Exact(r) => Number::Exact(r.abs()),
            Number::Float(x) => Number::Float(x.abs()),
        }
    }

    /// `|self| > tolerance`, compared exactly when `self` is exact.
    pub fn exceeds(&self, tolerance: f64) -> bool {
        self.gt_f64(tolerance) || self.lt_f64(-tolerance)
    }

    pub fn gt_f64(&self, bound: f64) -> bool {
        match self {
            Number::Exact(r) => *r > exact_of(bound),
            Number::Float(x) => *x > bound,
        }
    }

    pub fn lt_f64(&self, bound: f64) -> bool {
        match self {
            Number::Exact(r) => *r < exact_of(bound),
            Number::Float(x) => *x < bound,
        }
    }

    /// Float output rounded to 12 significant digits.
    pub fn rounded_f64(&self) -> f64 {
        round_sig(self.to_f64())
    }

    /// Parses `p/q` and integers exactly, anything else that `f64` accepts
    /// as a float.
    pub fn parse(text: &str) -> Option<Number> {
        let text = text.trim();
        if let Some((p, q)) = text.split_once('/') {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(Number::Exact(BigRational::new(p, q)));
        }
        if let Ok(i) = BigInt::from_str(text) {
            return Some(Number::Exact(BigRational::from_integer(i)));
        }
        let x = f64::from_str(text).ok()?;
        x.is_finite().then_some(Number::Float(x))
    }
}

fn exact_of(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite tolerance")
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => f.write_str(&format_rational(r)),
            Number::Float(x) => write!(f, "{}", round_sig(*x)),
        }
    }
}

impl From<BigRational> for Number {
    fn from(r: BigRational) -> Self {
        Number::Exact(r)
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Float(x)
    }
}

macro_rules! number_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Number> for &'a Number {
            type Output = Number;
            fn $method(self, rhs: &'a Number) -> Number {
                match (self, rhs) {
                    (Number::Exact(a), Number::Exact(b)) => Number::Exact(a $op b),
                    (a, b) => Number::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait for Number {
            type Output = Number;
            fn $method(self, rhs: Number) -> Number {
                (&self).$method(&rhs)
            }
        }
    };
}

number_op!(Add, add, +);
number_op!(Sub, sub, -);
number_op!(Mul, mul, *);

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Number::Exact(a), Number::Exact(b)) => a.partial_cmp(b),
            (a, b) => a.to_f64().partial_cmp(&b.to_f64()),
        }
    }
}

/// Arithmetic needed by elimination and the simplex method.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Preference for choosing an elimination pivot; larger is better.
    fn pivot_score(&self) -> f64;
    fn cmp_value(&self, other: &Self) -> Ordering;
    fn to_number(&self) -> Number;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn pivot_score(&self) -> f64 {
        // first nonzero wins; keeps exact entries small
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn cmp_value(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn to_number(&self) -> Number {
        Number::Exact(self.clone())
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_EPS
    }
    fn is_positive(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn is_negative(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn pivot_score(&self) -> f64 {
        if self.abs() <= FLOAT_EPS {
            0.0
        } else {
            self.abs()
        }
    }
    fn cmp_value(&self, other: &Self) -> Ordering {
        if (self - other).abs() <= FLOAT_EPS {
            Ordering::Equal
        } else {
            self.partial_cmp(other).unwrap_or(Ordering::Equal)
        }
    }
    fn to_number(&self) -> Number {
        Number::Float(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Number::parse("1/4"), Some(Number::ratio(1, 4)));
        assert_eq!(Number::parse("2/8"), Some(Number::ratio(1, 4)));
        assert_eq!(Number::parse("1"), Some(Number::one()));
        assert_eq!(Number::parse("0.5"), Some(Number::Float(0.5)));
        assert_eq!(Number::parse("1/0"), None);
        assert_eq!(Number::parse("abc"), None);
        assert_eq!(Number::parse("nan"), None);
    }

    #[test]
    fn display() {
        assert_eq!(Number::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(Number::ratio(4, 2).to_string(), "2");
        assert_eq!(Number::Float(1.0 / 3.0).to_string(), "0.333333333333");
    }

    #[test]
    fn tolerance_comparisons() {
        let r = Number::ratio(1, 1_000_000_000_000);
        assert!(!r.exceeds(1e-9));
        assert!(r.exceeds(0.0));
        assert!(Number::Float(-2e-9).exceeds(1e-9));
        assert!(!Number::zero().exceeds(0.0));
    }

    #[test]
    fn mixed_arithmetic_falls_back_to_float() {
        let s = &Number::ratio(1, 2) + &Number::Float(0.25);
        assert_eq!(s, Number::Float(0.75));
        let s = &Number::ratio(1, 2) + &Number::ratio(1, 3);
        assert_eq!(s, Number::ratio(5, 6));
    }
}

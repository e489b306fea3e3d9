//! Exact-rational / floating-point scalars and complex values.
//!
//! A measure is uniformly exact or uniformly float. Preclusion compares
//! against a literal zero in exact mode, so float noise never turns a
//! genuinely null event into a tiny positive one.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Numeric mode of a scalar or a whole measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericMode {
    Exact,
    Float,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Exact => write!(f, "exact"),
            NumericMode::Float => write!(f, "float"),
        }
    }
}

/// A real number, either an exact rational or a double.
///
/// Arithmetic across the two modes is a bug in the caller and panics;
/// measure constructors reject mixed inputs up front.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: NumericMode) -> Self {
        match mode {
            NumericMode::Exact => Scalar::Exact(BigRational::zero()),
            NumericMode::Float => Scalar::Float(0.0),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::Exact(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Parses `"p"` or `"p/q"` into an exact rational.
    pub fn parse_rational(text: &str) -> Result<Self> {
        let bad = || Error::BadRational(text.to_string());
        let mut parts = text.splitn(2, '/');
        let num: BigInt = parts
            .next()
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let den: BigInt = match parts.next() {
            Some(d) => d.trim().parse().map_err(|_| bad())?,
            None => BigInt::from(1),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            Scalar::Exact(_) => NumericMode::Exact,
            Scalar::Float(_) => NumericMode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn to_float_scalar(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => panic!("mixed exact/float scalar arithmetic"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Complex value whose parts share one numeric mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        let im = Scalar::zero(re.mode());
        ComplexScalar { re, im }
    }

    pub fn zero(mode: NumericMode) -> Self {
        ComplexScalar {
            re: Scalar::zero(mode),
            im: Scalar::zero(mode),
        }
    }

    pub fn mode(&self) -> NumericMode {
        self.re.mode()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |z|^2 as a real scalar.
    pub fn norm_sqr(&self) -> Scalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ComplexScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ComplexScalar {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn to_float_complex(&self) -> ComplexScalar {
        ComplexScalar {
            re: self.re.to_float_scalar(),
            im: self.im.to_float_scalar(),
        }
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(
                f,
                "{}{}{}i",
                self.re,
                if self.im.is_negative() { "" } else { "+" },
                self.im
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(Scalar::parse_rational("3").unwrap(), Scalar::from_int(3));
        assert_eq!(
            Scalar::parse_rational("-4/6").unwrap(),
            Scalar::ratio(-2, 3).unwrap()
        );
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("x").is_err());
    }

    #[test]
    fn exact_zero_is_literal() {
        let a = Scalar::from_int(1);
        let b = Scalar::ratio(1, 3).unwrap();
        let c = Scalar::ratio(2, 3).unwrap();
        let sum = &(&b + &c) - &a;
        assert!(sum.is_zero());
    }

    #[test]
    fn norm_sqr_of_gaussian_integer() {
        let z = ComplexScalar::new(Scalar::from_int(3), Scalar::from_int(-4));
        assert_eq!(z.norm_sqr(), Scalar::from_int(25));
    }

    #[test]
    #[should_panic(expected = "mixed exact/float")]
    fn mixed_mode_arithmetic_panics() {
        let _ = &Scalar::from_int(1) + &Scalar::Float(1.0);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_int(-7).to_string(), "-7");
        assert_eq!(Scalar::ratio(1, 2).unwrap().to_string(), "1/2");
        assert_eq!(Scalar::Float(0.5).to_string(), "0.5");
    }
}

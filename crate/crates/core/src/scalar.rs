//! The two coefficient domains: exact rationals and complex doubles.
//!
//! The mode is fixed per polynomial; mixed-mode arithmetic is rejected at the
//! polynomial layer, never silently coerced. Conversion is provided one way,
//! rational to complex.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    Complex,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => write!(f, "rational"),
            ScalarMode::Complex => write!(f, "complex"),
        }
    }
}

/// A coefficient: exact rational in lowest terms, or a complex double.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Complex(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rational(_) => ScalarMode::Rational,
            Scalar::Complex(_) => ScalarMode::Complex,
        }
    }

    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::zero()),
            ScalarMode::Complex => Scalar::Complex(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::one()),
            ScalarMode::Complex => Scalar::Complex(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn from_int(v: i64, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            ScalarMode::Complex => Scalar::Complex(Complex64::new(v as f64, 0.0)),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn complex(c: Complex64) -> Self {
        Scalar::Complex(c)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Complex(c) => c.re == 1.0 && c.im == 0.0,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a + b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a - b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a - b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a * b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Complex(c) => Scalar::Complex(-c),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                Scalar::Rational(num_traits::pow::pow(r.clone(), e as usize))
            }
            Scalar::Complex(c) => Scalar::Complex(c.powi(e as i32)),
        }
    }

    /// Scales by an integer, used by differentiation.
    pub fn mul_int(&self, k: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * BigRational::from_integer(BigInt::from(k))),
            Scalar::Complex(c) => Scalar::Complex(c * k as f64),
        }
    }

    /// One-way conversion to the complex domain.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Complex(c) => *c,
        }
    }

    pub fn as_rational(&self) -> Result<&BigRational> {
        match self {
            Scalar::Rational(r) => Ok(r),
            Scalar::Complex(_) => Err(Error::ModeMismatch),
        }
    }

    /// Modulus, for residual checks.
    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(&r.abs()),
            Scalar::Complex(c) => c.norm(),
        }
    }

    /// Literal form: `p/q` (or `p` when integral) in rational mode,
    /// `(re,im)` in complex mode.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::Complex(c) => format!("({},{})", c.re, c.im),
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim()).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("bad rational {text:?}: {e}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = parse_rational("1/3").unwrap();
        let b = parse_rational("3/2").unwrap();
        let prod = Scalar::Rational(a).checked_mul(&Scalar::Rational(b)).unwrap();
        assert_eq!(prod, Scalar::Rational(parse_rational("1/2").unwrap()));
    }

    #[test]
    fn mixed_modes_are_rejected() {
        let r = Scalar::from_int(1, ScalarMode::Rational);
        let c = Scalar::from_int(1, ScalarMode::Complex);
        assert!(matches!(r.checked_add(&c), Err(Error::ModeMismatch)));
        assert!(matches!(c.checked_mul(&r), Err(Error::ModeMismatch)));
    }

    #[test]
    fn render_forms() {
        assert_eq!(Scalar::from_int(-3, ScalarMode::Rational).render(), "-3");
        assert_eq!(
            Scalar::Rational(parse_rational("-1/3").unwrap()).render(),
            "-1/3"
        );
        assert_eq!(
            Scalar::Complex(Complex64::new(1.5, -2.0)).render(),
            "(1.5,-2)"
        );
    }
}

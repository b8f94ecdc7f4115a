//! Coefficient domains.
//!
//! Everything algebraic in this crate is generic over [`Ring`]: exact
//! rationals, doubles, and symbolic polynomials all evaluate the same
//! invariant formulas. [`Field`] adds division and the linear solver used by
//! coordinate extraction and reconstruction. [`Scalar`] is the tagged,
//! dynamically typed value used at I/O boundaries.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Commutative ring with unit.
pub trait Ring:
    Clone + fmt::Debug + PartialEq + Send + Sync + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Equality used for genericity checks. Exact domains ignore `tol`.
    fn near(&self, other: &Self, tol: f64) -> bool {
        let _ = tol;
        self == other
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Field: Ring + Div<Output = Self> {
    const MODE: ScalarMode;

    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_scalar(&self) -> Scalar;

    /// Solves `a * x = b` for a square `a` and a matrix of right-hand sides
    /// (`b[row][col]`). `None` when `a` is singular.
    fn solve_system(a: &[Vec<Self>], b: &[Vec<Self>]) -> Option<Vec<Vec<Self>>>;
}

impl Ring for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Field for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn solve_system(a: &[Vec<Self>], b: &[Vec<Self>]) -> Option<Vec<Vec<Self>>> {
        linalg::solve_fraction_free(a, b)
    }
}

impl Ring for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn near(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn pow(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Field for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }

    fn solve_system(a: &[Vec<Self>], b: &[Vec<Self>]) -> Option<Vec<Vec<Self>>> {
        linalg::solve_partial_pivot(a, b)
    }
}

/// A mode-tagged scalar. Arithmetic across modes is an error; use
/// [`Scalar::to_float`] for the explicit lossy conversion.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.as_f64())
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => Field::to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        op: &str,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(exact(a, b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            _ => Err(Error::ModeMismatch(format!(
                "cannot {op} {} and {} scalars",
                self.mode(),
                other.mode()
            ))),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "add", |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "subtract", |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, "multiply", |a, b| a * b, |a, b| a * b)
    }

    /// Parses `p/q` or an integer as exact, anything with a decimal point or
    /// exponent as float.
    pub fn parse(token: &str) -> std::result::Result<Scalar, String> {
        let t = token.trim();
        if t.is_empty() {
            return Err("empty coefficient".into());
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
            let den: BigInt = den.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {t:?}"));
            }
            return Ok(Scalar::Exact(Rational::new(num, den)));
        }
        if let Ok(int) = t.parse::<BigInt>() {
            return Ok(Scalar::Exact(Rational::from_integer(int)));
        }
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Scalar::Float)
            .ok_or_else(|| format!("bad coefficient {t:?}"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            // Debug keeps a '.' or exponent so the literal reads back as float.
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_are_normalized() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn mixed_mode_arithmetic_is_rejected() {
        let a = Scalar::Exact(q(1, 2));
        let b = Scalar::Float(0.5);
        assert!(matches!(a.try_add(&b), Err(Error::ModeMismatch(_))));
        assert_eq!(a.to_float().try_add(&b).unwrap(), Scalar::Float(1.0));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for tok in ["3/4", "-7", "0", "12/5"] {
            let s = Scalar::parse(tok).unwrap();
            assert_eq!(s.mode(), ScalarMode::Exact);
            assert_eq!(Scalar::parse(&s.to_string()).unwrap(), s);
        }
        for x in [0.1, -2.5e-7, 1e20, 3.0] {
            let s = Scalar::Float(x);
            assert_eq!(Scalar::parse(&s.to_string()).unwrap(), s);
        }
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("abc").is_err());
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(Ring::pow(&q(2, 3), 5), q(32, 243));
        assert_eq!(Ring::pow(&q(2, 3), 0), q(1, 1));
        assert_eq!(Ring::pow(&1.5f64, 2), 2.25);
    }
}

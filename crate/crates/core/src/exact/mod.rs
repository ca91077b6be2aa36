//! Exact scalars: big rationals and the quadratic extension Q(√d).
//!
//! Nothing in here touches floating point except the `*_lossy` helpers,
//! which exist for diagnostics only.

mod quad;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

pub use quad::{sqrt_enclosure, QuadExt};
pub use rational::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    NegativeSquareRoot(String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicand mismatch: √{0} vs √{1}")]
    RadicandMismatch(String, String),
    #[error("cannot parse {0:?} as a rational (expected p or p/q)")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Exact value as it appears in reports: either a plain fraction or an
/// element of Q(√d).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rational(Rational),
    Quad(QuadExt),
}

impl ExactValue {
    pub fn sign(&self) -> Sign {
        match self {
            ExactValue::Rational(r) => r.sign(),
            ExactValue::Quad(q) => q.sign(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rational(r) => fmt::Display::fmt(r, f),
            ExactValue::Quad(q) => match q.to_rational() {
                Some(r) if q.surd_part().is_zero() => fmt::Display::fmt(&r, f),
                _ => fmt::Display::fmt(q, f),
            },
        }
    }
}

/// Ordered-field operations shared by [`Rational`] and [`QuadExt`], so the
/// geometry layer can be written once.
///
/// Constants are produced "like" an existing value because a `QuadExt`
/// needs its radicand.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// `r` in the same field as `self` (same radicand for surds).
    fn lift(&self, r: &Rational) -> Self;

    fn sign(&self) -> Sign;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError>;

    /// Rational interval containing the value; see [`QuadExt::enclose`].
    fn enclose(&self, digits: u32) -> (Rational, Rational);

    fn to_exact_value(&self) -> ExactValue;

    fn zero_like(&self) -> Self {
        self.lift(&Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.lift(&Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn scale(&self, k: &Rational) -> Self {
        self.clone() * self.lift(k)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }
}

impl Scalar for Rational {
    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn sign(&self) -> Sign {
        Rational::sign(self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Rational::checked_div(self, rhs)
    }

    fn enclose(&self, _digits: u32) -> (Rational, Rational) {
        (self.clone(), self.clone())
    }

    fn to_exact_value(&self) -> ExactValue {
        ExactValue::Rational(self.clone())
    }

    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
}

impl Scalar for QuadExt {
    fn lift(&self, r: &Rational) -> Self {
        QuadExt::from_rational(r.clone(), self.radicand()).expect("radicand already validated")
    }

    fn sign(&self) -> Sign {
        QuadExt::sign(self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        QuadExt::checked_div(self, rhs)
    }

    fn enclose(&self, digits: u32) -> (Rational, Rational) {
        QuadExt::enclose(self, digits)
    }

    fn to_exact_value(&self) -> ExactValue {
        ExactValue::Quad(self.clone())
    }

    fn scale(&self, k: &Rational) -> Self {
        QuadExt::scale(self, k)
    }
}

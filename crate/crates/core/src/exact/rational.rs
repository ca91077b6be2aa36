use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, Sign};

/// Arbitrary-precision fraction, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ExactError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn sign(&self) -> Sign {
        match self.0.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ExactError> {
        Rational::one().checked_div(self)
    }

    pub fn square(&self) -> Rational {
        Rational(&self.0 * &self.0)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, exp: u32) -> Rational {
        let mut base = self.0.clone();
        let mut acc = BigRational::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Rational(acc)
    }

    /// Exact rational square root, if one exists.
    ///
    /// Since the fraction is in lowest terms, it is a rational square iff
    /// numerator and denominator are both perfect integer squares.
    pub fn perfect_square_root(&self) -> Result<Option<Rational>, ExactError> {
        if self.sign() == Sign::Negative {
            return Err(ExactError::NegativeSquareRoot(self.to_string()));
        }
        let n = self.numer().sqrt();
        if &(&n * &n) != self.numer() {
            return Ok(None);
        }
        let d = self.denom().sqrt();
        if &(&d * &d) != self.denom() {
            return Ok(None);
        }
        Ok(Some(Rational(BigRational::new(n, d))))
    }

    /// Largest integer not greater than `self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    /// Total number of bits in numerator and denominator; a rough size measure.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

/// Shorthand for tests and examples: `ratio(3, 7)`. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom).expect("nonzero denominator")
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

// Operator division panics on zero like the integer types do; use
// `checked_div` where the divisor is not known to be nonzero.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p"`, `"-p"`, `"+p"`, `"p/q"` or `"-p/q"`. Decimals are rejected.
impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let parse_int = |x: &str, allow_sign: bool| -> Result<BigInt, ExactError> {
            let digits = if allow_sign {
                x.strip_prefix(['+', '-']).unwrap_or(x)
            } else {
                x
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        let n = parse_int(num, true)?;
        let d = match den {
            Some(d) => parse_int(d, false)?,
            None => BigInt::one(),
        };
        Rational::new(n, d)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fraction_arithmetic() {
        assert_eq!(ratio(1, 2) + ratio(1, 3), ratio(5, 6));
        assert_eq!(ratio(1, 2) - ratio(1, 3), ratio(1, 6));
        assert_eq!(ratio(2, 3) * ratio(3, 4), ratio(1, 2));
        assert_eq!(ratio(2, 3) / ratio(4, 9), ratio(3, 2));
        let x = ratio(-17, 5);
        assert_eq!(&x * &Rational::one(), x);
    }

    #[test]
    fn product_against_integer_oracle() {
        // 25*25 and 49*49 computed as plain integers.
        let p = ratio(25, 49) * ratio(25, 49);
        assert_eq!(p, ratio(25 * 25, 49 * 49));
        assert_eq!(p.to_string(), "625/2401");
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, -9).unwrap().to_string(), "0");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(ratio(1, 2).checked_div(&Rational::zero()), Err(ExactError::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(ExactError::DivisionByZero));
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(Rational::from(25).perfect_square_root().unwrap(), Some(ratio(5, 1)));
        assert_eq!(Rational::from(2).perfect_square_root().unwrap(), None);
        assert_eq!(ratio(225, 49).perfect_square_root().unwrap(), Some(ratio(15, 7)));
        assert_eq!(ratio(9, 2).perfect_square_root().unwrap(), None);
        assert_eq!(Rational::zero().perfect_square_root().unwrap(), Some(Rational::zero()));
        assert!(matches!(
            Rational::from(-4).perfect_square_root(),
            Err(ExactError::NegativeSquareRoot(_))
        ));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let q = ratio(25, 49);
        let mut acc = Rational::one();
        for e in 0..12 {
            assert_eq!(q.pow(e), acc);
            acc = &acc * &q;
        }
    }

    #[test]
    fn parse_and_display() {
        for (s, want) in [("3", ratio(3, 1)), ("-3/6", ratio(-1, 2)), ("+10/4", ratio(5, 2)), (" 7 / 14 ", ratio(1, 2))] {
            assert_eq!(s.parse::<Rational>().unwrap(), want);
        }
        for bad in ["", "1.5", "1/", "/2", "a", "1/-2", "1/0", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
        assert_eq!(ratio(-5, 6).to_string(), "-5/6");
        assert_eq!(ratio(14, 7).to_string(), "2");
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(ratio(7, 2).floor(), BigInt::from(3));
        assert_eq!(ratio(-7, 2).floor(), BigInt::from(-4));
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{ExactError, Rational, Sign};

/// An element `p + q·√d` of the quadratic extension Q(√d).
///
/// The radicand is carried by every value so that mixing values from two
/// different fields is caught. When `d` is a rational square the `(p, q)`
/// pair is not unique, so equality is numeric (via [`QuadExt::sign`]) rather
/// than structural.
///
/// The `checked_*` methods report a radicand mismatch as an error. The
/// operator impls panic on it instead; they are meant for code that works
/// inside a single field.
#[derive(Clone, Serialize, Deserialize)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, d: Rational) -> Result<Self, ExactError> {
        if d.sign() == Sign::Negative {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        Ok(QuadExt { p, q, d })
    }

    /// Embeds a rational into Q(√d).
    pub fn from_rational(p: Rational, d: &Rational) -> Result<Self, ExactError> {
        QuadExt::new(p, Rational::zero(), d.clone())
    }

    /// The element √d itself.
    pub fn sqrt_of(d: &Rational) -> Result<Self, ExactError> {
        QuadExt::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.p
    }

    pub fn surd_part(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn conjugate(&self) -> QuadExt {
        QuadExt { p: self.p.clone(), q: -&self.q, d: self.d.clone() }
    }

    /// Field norm `p² − q²d`, i.e. the product with the conjugate.
    pub fn norm(&self) -> Rational {
        self.p.square() - self.q.square() * &self.d
    }

    /// Exact sign of the real number `p + q·√d`.
    ///
    /// Mixed-sign cases compare `p²` against `q²d`; no square root is taken.
    pub fn sign(&self) -> Sign {
        let sp = self.p.sign();
        let sq = if self.d.is_zero() { Sign::Zero } else { self.q.sign() };
        match (sp, sq) {
            (_, Sign::Zero) => sp,
            (Sign::Zero, _) => sq,
            _ if sp == sq => sp,
            _ => match self.p.square().cmp(&(self.q.square() * &self.d)) {
                Ordering::Greater => sp,
                Ordering::Less => sq,
                Ordering::Equal => Sign::Zero,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    /// The rational value of `self`, if it has one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.q.is_zero() || self.d.is_zero() {
            return Some(self.p.clone());
        }
        match self.d.perfect_square_root() {
            Ok(Some(root)) => Some(&self.p + &self.q * &root),
            _ => None,
        }
    }

    fn check_radicand(&self, rhs: &QuadExt) -> Result<(), ExactError> {
        if self.d != rhs.d {
            return Err(ExactError::RadicandMismatch(self.d.to_string(), rhs.d.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_radicand(rhs)?;
        Ok(QuadExt { p: &self.p + &rhs.p, q: &self.q + &rhs.q, d: self.d.clone() })
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_radicand(rhs)?;
        Ok(QuadExt { p: &self.p - &rhs.p, q: &self.q - &rhs.q, d: self.d.clone() })
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_radicand(rhs)?;
        let p = &self.p * &rhs.p + &self.q * &rhs.q * &self.d;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        Ok(QuadExt { p, q, d: self.d.clone() })
    }

    /// Division through the conjugate: `1/(p+q√d) = (p−q√d)/(p²−q²d)`.
    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_radicand(rhs)?;
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let norm = rhs.norm();
        if norm.is_zero() {
            // Only possible when d is a rational square; the divisor is then
            // a nonzero rational.
            let value = rhs.to_rational().expect("zero norm implies rational radicand");
            return Ok(QuadExt {
                p: self.p.checked_div(&value)?,
                q: self.q.checked_div(&value)?,
                d: self.d.clone(),
            });
        }
        let num = self.checked_mul(&rhs.conjugate())?;
        Ok(QuadExt { p: num.p.checked_div(&norm)?, q: num.q.checked_div(&norm)?, d: self.d.clone() })
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt { p: &self.p * k, q: &self.q * k, d: self.d.clone() }
    }

    /// A rational interval `[lo, hi]` containing the value, of width at most
    /// `|q|·10^-digits`. Degenerates to a point when the value is rational.
    pub fn enclose(&self, digits: u32) -> (Rational, Rational) {
        if let Some(r) = self.to_rational() {
            return (r.clone(), r);
        }
        let (lo, hi) = sqrt_enclosure(&self.d, digits);
        let a = &self.p + &self.q * &lo;
        let b = &self.p + &self.q * &hi;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_f64_lossy(&self) -> f64 {
        let (lo, hi) = self.enclose(20);
        ((lo + hi) / Rational::from(2)).to_f64_lossy()
    }
}

/// Brackets √d between two decimals with `digits` fractional digits, using
/// only integer square roots.
pub fn sqrt_enclosure(d: &Rational, digits: u32) -> (Rational, Rational) {
    let scale = BigInt::from(10u32).pow(digits);
    let m = d.denom().clone();
    let big_n = d.numer() * &m * &scale * &scale;
    let s = big_n.sqrt();
    let den = &m * &scale;
    let lo = Rational::new(s.clone(), den.clone()).expect("positive denominator");
    if &s * &s == big_n {
        return (lo.clone(), lo);
    }
    let hi = Rational::new(s + BigInt::one(), den).expect("positive denominator");
    (lo, hi)
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(match diff.sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }
}

macro_rules! quad_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -self.p, q: -self.q, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -(self.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.p, self.q, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

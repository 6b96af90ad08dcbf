use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldError};

pub type Rational = BigRational;

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(FieldError::parse(s, "empty"));
    }
    Rational::from_str(t).map_err(|e| FieldError::parse(s, e.to_string()))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational square root, if `x` is a rational square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn try_sqrt(&self, _adjoin: Option<&Rational>) -> Option<Self> {
        rational_sqrt(self)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn parse_with(s: &str, _adjoin: Option<&Rational>) -> Result<Self, FieldError> {
        parse_rational(s)
    }
}

//! Exact scalar fields.
//!
//! Three concrete fields implement [`Field`]:
//! - [`Rational`]: arbitrary-precision rationals,
//! - [`Quad`]: the quadratic extension `Q(√s)` for a single radicand `s`,
//! - [`FuncElement`]: rational functions in one formal variable `v` over any
//!   of the above, used to evaluate at parameters that sit at zero or infinity.
//!
//! Everything downstream (polynomials, coefficient formulas, banded matrices)
//! is generic over [`Field`].

mod func;
mod quad;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use func::FuncElement;
pub use quad::Quad;
pub use rational::{parse_rational, rational_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic extensions (radicands {left} and {right})")]
    MixedContext { left: String, right: String },
    #[error("pole at specialization point v = {point}")]
    PoleAtSpecialization { point: String },
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl FieldError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        FieldError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

/// An exact commutative field.
///
/// The arithmetic operators never fail for elements of one context. [`Quad`]
/// panics if two elements with different radicands are combined through an
/// operator; use [`field_arith`] for the checked form.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;

    /// A square root in the current context, if one exists.
    ///
    /// `adjoin` names a radicand that may be used when `self` is rational;
    /// elements that already carry a radicand use their own. The returned root
    /// has a nonnegative rational part, ties broken by a positive `√s`
    /// coefficient.
    fn try_sqrt(&self, adjoin: Option<&Rational>) -> Option<Self>;

    /// The value as a plain rational, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Parses the textual form produced by `Display`.
    fn parse_with(s: &str, adjoin: Option<&Rational>) -> Result<Self, FieldError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * &rhs.inv()?)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }
}

/// A parameter value on the projective line.
#[derive(Debug, Clone, PartialEq)]
pub enum Proj<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> Proj<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            Proj::Finite(x) => Some(x),
            Proj::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Proj::Infinity)
    }

    pub fn parse_with(s: &str, adjoin: Option<&Rational>) -> Result<Self, FieldError> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(Proj::Infinity),
            other => F::parse_with(other, adjoin).map(Proj::Finite),
        }
    }
}

impl<F: Field> fmt::Display for Proj<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proj::Finite(x) => write!(f, "{x}"),
            Proj::Infinity => write!(f, "inf"),
        }
    }
}

impl<F: Field> From<F> for Proj<F> {
    fn from(x: F) -> Self {
        Proj::Finite(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on extension elements.
pub fn field_arith(op: ArithOp, x: &Quad, y: &Quad) -> Result<Quad, FieldError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => {
            let inv = y.inv()?;
            x.checked_mul(&inv)
        }
    }
}

/// Shorthand for building rationals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

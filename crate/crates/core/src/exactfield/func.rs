use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ratfunc::{poly_gcd, split_top_level, Poly};

use super::{Field, FieldError, Rational};

/// Element of `F(v)`: a reduced fraction of polynomials in the formal
/// variable `v`, denominator monic.
#[derive(Clone, PartialEq)]
pub struct FuncElement<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> FuncElement<F> {
    pub fn from_polys(num: Poly<F>, den: Poly<F>) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FuncElement::constant(F::zero()));
        }
        let g = poly_gcd(&num, &den).map_err(to_field_err)?;
        let num = num.div_rem(&g).map_err(to_field_err)?.0;
        let den = den.div_rem(&g).map_err(to_field_err)?.0;
        let (lead, den) = den.monic().map_err(to_field_err)?;
        Ok(FuncElement {
            num: num.scale(&lead.inv()?),
            den,
        })
    }

    pub fn constant(c: F) -> Self {
        FuncElement {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The formal variable `v`.
    pub fn var() -> Self {
        FuncElement {
            num: Poly::monomial(F::one(), 1),
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    /// The value when `self` does not depend on `v`.
    pub fn as_constant(&self) -> Option<F> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Evaluates the reduced fraction at `v = v0`.
    pub fn specialize(&self, v0: &F) -> Result<F, FieldError> {
        let d = self.den.eval(v0);
        if d.is_zero() {
            return Err(FieldError::PoleAtSpecialization {
                point: v0.to_string(),
            });
        }
        Ok(self.num.eval(v0) * &d.inv()?)
    }

    /// Order of vanishing at `v = 0` (negative for a pole); `None` for zero.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let n = self.num.valuation()? as i64;
        let d = self.den.valuation().unwrap_or(0) as i64;
        Some(n - d)
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>,
    ) -> Self {
        // a/b ± c/d = (ad ± cb)/bd
        let num = f(&self.num.mul(&other.den), &other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        FuncElement::from_polys(num, den).expect("product of nonzero denominators")
    }
}

fn to_field_err(e: crate::ratfunc::RatFuncError) -> FieldError {
    match e {
        crate::ratfunc::RatFuncError::Field(f) => f,
        _ => FieldError::DivisionByZero,
    }
}

impl<F: Field> fmt::Debug for FuncElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for FuncElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            if self.num.is_constant() {
                write!(f, "{}", self.num.coeff(0))
            } else {
                write!(f, "{}", self.num.to_text("v"))
            }
        } else {
            write!(f, "({})/({})", self.num.to_text("v"), self.den.to_text("v"))
        }
    }
}

impl<F: Field> Add for FuncElement<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, Poly::add)
    }
}

impl<'a, F: Field> Add<&'a FuncElement<F>> for FuncElement<F> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        self.combine(rhs, Poly::add)
    }
}

impl<F: Field> Sub for FuncElement<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, Poly::sub)
    }
}

impl<'a, F: Field> Sub<&'a FuncElement<F>> for FuncElement<F> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self.combine(rhs, Poly::sub)
    }
}

impl<F: Field> Mul for FuncElement<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a, F: Field> Mul<&'a FuncElement<F>> for FuncElement<F> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        FuncElement::from_polys(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("product of nonzero denominators")
    }
}

impl<F: Field> Neg for FuncElement<F> {
    type Output = Self;
    fn neg(self) -> Self {
        FuncElement {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<F: Field> Field for FuncElement<F> {
    fn zero() -> Self {
        FuncElement::constant(F::zero())
    }

    fn one() -> Self {
        FuncElement::constant(F::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(r: Rational) -> Self {
        FuncElement::constant(F::from_rational(r))
    }

    fn inv(&self) -> Result<Self, FieldError> {
        FuncElement::from_polys(self.den.clone(), self.num.clone())
    }

    /// Roots are only taken of elements that do not depend on `v`.
    fn try_sqrt(&self, adjoin: Option<&Rational>) -> Option<Self> {
        self.as_constant()?
            .try_sqrt(adjoin)
            .map(FuncElement::constant)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()?.as_rational()
    }

    fn parse_with(s: &str, adjoin: Option<&Rational>) -> Result<Self, FieldError> {
        let t = s.trim();
        let parts = split_top_level(t, "/(");
        if t.starts_with('(') && parts.len() == 2 && parts[1].ends_with(')') {
            let num_text = &parts[0][1..parts[0].len() - 1];
            let den_text = &parts[1][..parts[1].len() - 1];
            let num = Poly::parse_text(num_text, "v", adjoin)?;
            let den = Poly::parse_text(den_text, "v", adjoin)?;
            return FuncElement::from_polys(num, den);
        }
        if t.contains('v') {
            return Ok(FuncElement {
                num: Poly::parse_text(t, "v", adjoin)?,
                den: Poly::one(),
            });
        }
        F::parse_with(t, adjoin).map(FuncElement::constant)
    }
}

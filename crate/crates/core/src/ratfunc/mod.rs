//! Univariate polynomials and rational functions over a [`Field`].
//!
//! A [`RatFunc`] keeps the factor list it was built from next to its reduced
//! `num/den` form. Factors that are identically zero in the numerator are
//! set aside rather than multiplied in, so a product like
//! `(x - d)·(d·x - y)` with `d = 0` contributes only its surviving factor.

mod poly;

use thiserror::Error;

use crate::exactfield::{Field, FieldError, FuncElement};

pub use poly::{poly_gcd, Degree, Poly};
pub(crate) use poly::split_top_level;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("evaluation at a pole (x = {point})")]
    EvalAtPole { point: String },
    #[error("gcd of two zero polynomials")]
    BothZeroGcd,
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `poly^exp`; negative exponents sit in the denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor<F> {
    pub poly: Poly<F>,
    pub exp: i32,
}

impl<F: Field> Factor<F> {
    pub fn num(poly: Poly<F>) -> Self {
        Factor { poly, exp: 1 }
    }

    pub fn den(poly: Poly<F>) -> Self {
        Factor { poly, exp: -1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<F> {
    scalar: F,
    factors: Vec<Factor<F>>,
    dropped: Vec<Factor<F>>,
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Builds `scalar · ∏ poly^exp`. Identically zero numerator factors are
    /// dropped (see [`RatFunc::dropped`]); an identically zero denominator
    /// factor is an error.
    pub fn from_factors(scalar: F, factors: Vec<Factor<F>>) -> Result<Self, RatFuncError> {
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for f in factors {
            if f.poly.is_zero() {
                if f.exp < 0 {
                    return Err(RatFuncError::ZeroDenominator);
                }
                dropped.push(f);
            } else if f.exp != 0 {
                kept.push(f);
            }
        }
        let mut num = Poly::constant(scalar.clone());
        let mut den = Poly::one();
        for f in &kept {
            let p = f.poly.pow(f.exp.unsigned_abs());
            if f.exp > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        let (num, den) = reduce(num, den)?;
        Ok(RatFunc {
            scalar,
            factors: kept,
            dropped,
            num,
            den,
        })
    }

    pub fn from_num_den(num: Poly<F>, den: Poly<F>) -> Result<Self, RatFuncError> {
        RatFunc::from_factors(F::one(), vec![Factor::num(num), Factor::den(den)])
    }

    pub fn scalar(&self) -> &F {
        &self.scalar
    }

    /// Surviving factors, in construction order.
    pub fn factors(&self) -> &[Factor<F>] {
        &self.factors
    }

    /// Numerator factors that were identically zero.
    pub fn dropped(&self) -> &[Factor<F>] {
        &self.dropped
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    /// Monic reduced denominator.
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    /// Degrees of the reduced numerator and denominator.
    pub fn degrees(&self) -> (Degree, Degree) {
        (self.num.degree(), self.den.degree())
    }

    /// Evaluates the reduced form.
    pub fn eval(&self, x: &F) -> Result<F, RatFuncError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(RatFuncError::EvalAtPole {
                point: x.to_string(),
            });
        }
        Ok(self.num.eval(x) * &d.inv()?)
    }

    /// Evaluates the surviving factors one by one. Fails if any denominator
    /// factor vanishes, even when a numerator factor would cancel it.
    pub fn eval_factored(&self, x: &F) -> Result<F, RatFuncError> {
        let mut acc = self.scalar.clone();
        for f in &self.factors {
            let v = f.poly.eval(x);
            if f.exp < 0 && v.is_zero() {
                return Err(RatFuncError::EvalAtPole {
                    point: x.to_string(),
                });
            }
            acc = acc * &v.pow(f.exp as i64)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

fn reduce<F: Field>(num: Poly<F>, den: Poly<F>) -> Result<(Poly<F>, Poly<F>), RatFuncError> {
    if den.is_zero() {
        return Err(RatFuncError::ZeroDenominator);
    }
    let (lead, den) = den.monic()?;
    let num = num.scale(&lead.inv()?);
    if num.is_zero() {
        return Ok((num, den));
    }
    let g = poly_gcd(&num, &den)?;
    let (n, _) = num.div_rem(&g)?;
    let (d, _) = den.div_rem(&g)?;
    Ok((n, d))
}

/// `f` with identically-zero factors dropped and any parameter deformation
/// removed: each reduced polynomial over `F(v)` is rescaled by the power of
/// `v` that makes its lowest-order coefficient finite and nonzero at `v = 0`,
/// then specialized.
pub fn specialize_projective<F: Field>(
    f: &RatFunc<FuncElement<F>>,
) -> Result<RatFunc<F>, RatFuncError> {
    let num = specialize_poly(f.num())?;
    let den = specialize_poly(f.den())?;
    RatFunc::from_num_den(num, den)
}

fn specialize_poly<F: Field>(p: &Poly<FuncElement<F>>) -> Result<Poly<F>, RatFuncError> {
    let Some(shift) = p.coeffs().iter().filter_map(|c| c.valuation_at_zero()).min() else {
        return Ok(Poly::zero());
    };
    let scale = FuncElement::<F>::var().pow(-shift)?;
    Ok(p.scale(&scale).try_map(|c| c.specialize(&F::zero()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (x-1)(x-2) / ((x-1)(x-3))
        let f = RatFunc::from_factors(
            Rational::one(),
            vec![
                Factor::num(p(&[-1, 1])),
                Factor::num(p(&[-2, 1])),
                Factor::den(p(&[-1, 1])),
                Factor::den(p(&[-3, 1])),
            ],
        )
        .unwrap();
        assert_eq!(f.num(), &p(&[-2, 1]));
        assert_eq!(f.den(), &p(&[-3, 1]));
        assert_eq!(f.eval(&rat(1, 1)).unwrap(), rat(1, 2));
        assert!(f.eval_factored(&rat(1, 1)).is_err());
        assert!(matches!(f.eval(&rat(3, 1)), Err(RatFuncError::EvalAtPole { .. })));
    }

    #[test]
    fn den_is_monic_and_scalar_moves_up() {
        let f = RatFunc::from_num_den(p(&[1]), p(&[4, 2])).unwrap();
        assert_eq!(f.den(), &p(&[2, 1]));
        assert_eq!(f.num(), &Poly::constant(rat(1, 2)));
        assert_eq!(f.degrees(), (Degree::Finite(0), Degree::Finite(1)));
    }

    #[test]
    fn zero_factors_are_dropped_but_zero_denominator_fails() {
        let f = RatFunc::from_factors(
            Rational::one(),
            vec![Factor::num(Poly::zero()), Factor::num(p(&[0, 1])), Factor::den(p(&[1, 1]))],
        )
        .unwrap();
        assert_eq!(f.dropped().len(), 1);
        assert_eq!(f.degrees(), (Degree::Finite(1), Degree::Finite(1)));
        assert_eq!(
            RatFunc::from_num_den(p(&[1]), Poly::zero()),
            Err(RatFuncError::ZeroDenominator)
        );
    }

    #[test]
    fn zero_numerator_keeps_denominator() {
        let f = RatFunc::from_factors(
            Rational::zero(),
            vec![Factor::num(p(&[0, 1])), Factor::den(p(&[1, 0, 1]))],
        )
        .unwrap();
        assert_eq!(f.degrees(), (Degree::NegInfinity, Degree::Finite(2)));
    }

    #[test]
    fn projective_specialization_rescales_by_v() {
        // (x/v - 1) over Q(v): rescaled to (x - v), then v = 0 gives x
        let v = FuncElement::<Rational>::var();
        let inv_v = v.inv().unwrap();
        let num = Poly::new(vec![-FuncElement::one(), inv_v]);
        let f = RatFunc::from_num_den(num, Poly::one()).unwrap();
        let s = specialize_projective(&f).unwrap();
        assert_eq!(s.num(), &p(&[0, 1]));
    }
}

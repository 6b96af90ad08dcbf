use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use super::rational::{parse_rational, rational_sqrt, Rational};
use super::{Field, FieldError};

/// An element `a + b·√s` of a quadratic extension of the rationals.
///
/// The radicand is attached only to elements with `b ≠ 0`, so plain rationals
/// embed in every context. Two elements whose radicands differ cannot be
/// combined. A radicand that is a rational square is folded away on
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Rational,
    b: Rational,
    radicand: Option<Arc<Rational>>,
}

impl Quad {
    pub fn new(a: Rational, b: Rational, radicand: &Rational) -> Self {
        if b.is_zero() {
            return Quad::rational(a);
        }
        if let Some(r) = rational_sqrt(radicand) {
            return Quad::rational(a + b * r);
        }
        Quad {
            a,
            b,
            radicand: Some(Arc::new(radicand.clone())),
        }
    }

    pub fn rational(a: Rational) -> Self {
        Quad {
            a,
            b: Rational::zero(),
            radicand: None,
        }
    }

    /// The canonical `√s` itself.
    pub fn sqrt_of(radicand: &Rational) -> Self {
        Quad::new(Rational::zero(), Field::one(), radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.radicand.as_deref()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_none()
    }

    /// `a − b·√s`.
    pub fn conjugate(&self) -> Self {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// `a² − s·b²`.
    pub fn norm(&self) -> Rational {
        match &self.radicand {
            None => self.a.clone() * &self.a,
            Some(s) => self.a.clone() * &self.a - self.b.clone() * &self.b * s.as_ref(),
        }
    }

    fn joint_radicand(&self, other: &Quad) -> Result<Option<Arc<Rational>>, FieldError> {
        match (&self.radicand, &other.radicand) {
            (Some(l), Some(r)) if l != r => Err(FieldError::MixedContext {
                left: l.to_string(),
                right: r.to_string(),
            }),
            (Some(l), _) => Ok(Some(l.clone())),
            (None, r) => Ok(r.clone()),
        }
    }

    fn build(a: Rational, b: Rational, radicand: Option<Arc<Rational>>) -> Self {
        if b.is_zero() {
            Quad::rational(a)
        } else {
            Quad { a, b, radicand }
        }
    }

    pub fn checked_add(&self, other: &Quad) -> Result<Quad, FieldError> {
        let s = self.joint_radicand(other)?;
        Ok(Quad::build(
            self.a.clone() + &other.a,
            self.b.clone() + &other.b,
            s,
        ))
    }

    pub fn checked_sub(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Quad) -> Result<Quad, FieldError> {
        let s = self.joint_radicand(other)?;
        let mut a = self.a.clone() * &other.a;
        if let Some(s) = &s {
            a += self.b.clone() * &other.b * s.as_ref();
        }
        let b = self.a.clone() * &other.b + self.b.clone() * &other.a;
        Ok(Quad::build(a, b, s))
    }

    fn canonical_sign(self) -> Self {
        let flip = if self.a.is_zero() {
            self.b.is_negative()
        } else {
            self.a.is_negative()
        };
        if flip {
            -self
        } else {
            self
        }
    }

    /// Renders `a + b·√s` as `(re, im)` floats, treating `√s` as imaginary
    /// when `s < 0`. Display helper only.
    pub fn to_f64_parts(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        match &self.radicand {
            None => (a, 0.0),
            Some(s) => {
                let b = self.b.to_f64().unwrap_or(f64::NAN);
                let sf = s.to_f64().unwrap_or(f64::NAN);
                if sf >= 0.0 {
                    (a + b * sf.sqrt(), 0.0)
                } else {
                    (a, b * (-sf).sqrt())
                }
            }
        }
    }

    fn unwrap_op(r: Result<Quad, FieldError>) -> Quad {
        match r {
            Ok(x) => x,
            Err(e) => panic!("{e}"),
        }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "{}", self.a),
            Some(s) => write!(f, "{} [rt = sqrt({s})]", self),
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_none() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            write!(f, "{}*rt", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*rt", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*rt", self.a, self.b)
        }
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        Quad::unwrap_op(self.checked_add(&rhs))
    }
}

impl<'a> Add<&'a Quad> for Quad {
    type Output = Quad;
    fn add(self, rhs: &'a Quad) -> Quad {
        Quad::unwrap_op(self.checked_add(rhs))
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        Quad::unwrap_op(self.checked_sub(&rhs))
    }
}

impl<'a> Sub<&'a Quad> for Quad {
    type Output = Quad;
    fn sub(self, rhs: &'a Quad) -> Quad {
        Quad::unwrap_op(self.checked_sub(rhs))
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        Quad::unwrap_op(self.checked_mul(&rhs))
    }
}

impl<'a> Mul<&'a Quad> for Quad {
    type Output = Quad;
    fn mul(self, rhs: &'a Quad) -> Quad {
        Quad::unwrap_op(self.checked_mul(rhs))
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
            radicand: self.radicand,
        }
    }
}

impl From<Rational> for Quad {
    fn from(a: Rational) -> Self {
        Quad::rational(a)
    }
}

impl Field for Quad {
    fn zero() -> Self {
        Quad::rational(Rational::zero())
    }

    fn one() -> Self {
        Quad::rational(Field::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn from_rational(r: Rational) -> Self {
        Quad::rational(r)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.conjugate();
        let scale = n.recip();
        Ok(Quad::build(c.a * &scale, c.b * &scale, c.radicand))
    }

    fn try_sqrt(&self, adjoin: Option<&Rational>) -> Option<Self> {
        match &self.radicand {
            None => {
                if let Some(r) = rational_sqrt(&self.a) {
                    return Some(Quad::rational(r));
                }
                // a = c²·s gives √a = c·√s
                let s = adjoin?;
                if s.is_zero() {
                    return None;
                }
                let c = rational_sqrt(&(self.a.clone() / s))?;
                Some(Quad::new(Rational::zero(), c, s).canonical_sign())
            }
            Some(s) => {
                // (u + w√s)² = a + b√s  ⇔  u² + s·w² = a, 2uw = b
                let disc = rational_sqrt(&self.norm())?;
                let two = Rational::from_integer(2.into());
                for cand in [self.a.clone() + &disc, self.a.clone() - &disc] {
                    let u2 = cand / &two;
                    if let Some(u) = rational_sqrt(&u2) {
                        if u.is_zero() {
                            continue;
                        }
                        let w = self.b.clone() / (two.clone() * &u);
                        let root = Quad::new(u, w, s);
                        return Some(root.canonical_sign());
                    }
                }
                None
            }
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn parse_with(s: &str, adjoin: Option<&Rational>) -> Result<Self, FieldError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("rt") else {
            return parse_rational(&t).map(Quad::rational);
        };
        let radicand = adjoin
            .ok_or_else(|| FieldError::parse(s, "uses rt but no radicand is adjoined"))?;
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_text, b_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let a = if a_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_text)?
        };
        let b = match b_text {
            "" | "+" => Field::one(),
            "-" => -<Rational as Field>::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Quad::new(a, b, radicand))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64), s: i64) -> Quad {
        Quad::new(rat(a.0, a.1), rat(b.0, b.1), &rat(s, 1))
    }

    #[test]
    fn conjugate_product_is_rational() {
        let x = q((1, 1), (1, 1), 2);
        let y = q((1, 1), (-1, 1), 2);
        let p = x * y;
        assert!(p.is_rational());
        assert_eq!(p, Quad::from_i64(-1));
    }

    #[test]
    fn square_radicand_folds() {
        let x = q((1, 2), (3, 1), 4);
        assert!(x.is_rational());
        assert_eq!(x, Quad::rational(rat(13, 2)));
    }

    #[test]
    fn sqrt_of_radicand_itself() {
        let s = rat(-7, 1);
        let r = Quad::rational(s.clone()).try_sqrt(Some(&s)).unwrap();
        assert_eq!(r.rational_part(), &rat(0, 1));
        assert_eq!(r.radical_part(), &rat(1, 1));
        assert_eq!(r.clone() * r, Quad::rational(s));
    }

    #[test]
    fn sqrt_without_context_is_absent() {
        assert_eq!(Quad::from_i64(2).try_sqrt(None), None);
        // 2 is not a rational square multiple of 3
        assert_eq!(Quad::from_i64(2).try_sqrt(Some(&rat(3, 1))), None);
    }

    #[test]
    fn sqrt_of_irrational_element() {
        // (1 + √2)² = 3 + 2√2
        let x = q((3, 1), (2, 1), 2);
        let r = x.try_sqrt(None).unwrap();
        assert_eq!(r, q((1, 1), (1, 1), 2));
        // -(1 - √2) has positive rational part? 1-√2 has a=1 > 0, so that root is chosen
        let y = q((3, 1), (-2, 1), 2);
        assert_eq!(y.try_sqrt(None).unwrap(), q((1, 1), (-1, 1), 2));
    }

    #[test]
    fn display_and_parse() {
        let s = rat(-7, 1);
        for (x, text) in [
            (q((1, 2), (-3, 1), -7), "1/2-3*rt"),
            (q((0, 1), (6, 5), -7), "6/5*rt"),
            (q((-1, 1), (1, 1), -7), "-1+1*rt"),
            (Quad::rational(rat(-5, 3)), "-5/3"),
        ] {
            assert_eq!(x.to_string(), text);
            assert_eq!(Quad::parse_with(text, Some(&s)).unwrap(), x);
        }
        assert_eq!(
            Quad::parse_with("rt", Some(&s)).unwrap(),
            Quad::sqrt_of(&s)
        );
        assert_eq!(
            Quad::parse_with("2-rt", Some(&s)).unwrap(),
            q((2, 1), (-1, 1), -7)
        );
        assert!(Quad::parse_with("1+rt", None).is_err());
    }

    #[test]
    #[should_panic(expected = "different quadratic extensions")]
    fn operators_panic_on_mixed_context() {
        let _ = Quad::sqrt_of(&rat(2, 1)) + Quad::sqrt_of(&rat(3, 1));
    }

    fn arb_quad() -> impl Strategy<Value = Quad> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(|(a, ad, b, bd)| Quad::new(rat(a, ad), rat(b, bd), &rat(-7, 1)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!((x.clone() + &y) + &z, x.clone() + &(y.clone() + &z));
            prop_assert_eq!(x.clone() * &(y.clone() + &z), x.clone() * &y + &(x.clone() * &z));
            if !x.is_zero() {
                prop_assert!((x.clone() * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn sqrt_squares_back(x in arb_quad()) {
            let sq = x.square();
            let r = sq.try_sqrt(Some(&rat(-7, 1))).unwrap();
            prop_assert_eq!(r.square(), sq);
            prop_assert!(r == x || r == -x);
        }

        #[test]
        fn parse_inverts_display(x in arb_quad()) {
            prop_assert_eq!(Quad::parse_with(&x.to_string(), Some(&rat(-7, 1))).unwrap(), x);
        }
    }
}

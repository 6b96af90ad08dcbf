use std::cmp::Ordering;
use std::fmt;

use crate::exactfield::{Field, FieldError, Rational};

use super::RatFuncError;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(n) => Some(n),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Univariate polynomial, coefficients lowest degree first, never with a
/// trailing zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: F, c1: F) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// `c·x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), RatFuncError> {
        let lead = d.lead().ok_or(RatFuncError::ZeroDenominator)?;
        let inv = lead.inv()?;
        let dn = d.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); r.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let c = r[i + dn - 1].clone() * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - &(c.clone() * dc);
                }
            }
            quot[i] = c;
        }
        r.truncate(dn - 1);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    /// Splits off the leading coefficient: `self = lead · monic`.
    pub fn monic(&self) -> Result<(F, Self), RatFuncError> {
        let lead = self.lead().ok_or(RatFuncError::ZeroDenominator)?.clone();
        let inv = lead.inv()?;
        Ok((lead, self.scale(&inv)))
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient-wise image under `f`.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Poly<G>, E> {
        Ok(Poly::new(
            self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        ))
    }

    /// `x^deg · self(c/x)`; with `c = y` and `deg = 8` this is the map
    /// underlying the zero/pole symmetry `z ↦ y/z`.
    pub fn reflect(&self, c: &F, deg: usize) -> Result<Self, RatFuncError> {
        if let Degree::Finite(n) = self.degree() {
            if n > deg {
                return Err(RatFuncError::DegreeTooLarge { degree: n, bound: deg });
            }
        }
        let mut out = vec![F::zero(); deg + 1];
        let mut cp = F::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            out[deg - i] = a.clone() * &cp;
            cp = cp * c;
        }
        Ok(Poly::new(out))
    }

    /// Text form `c0 + c1*x + c2*x^2`, zero terms omitted.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ct = wrap_coeff(&c.to_string());
            terms.push(match i {
                0 => ct,
                1 => format!("{ct}*{var}"),
                _ => format!("{ct}*{var}^{i}"),
            });
        }
        terms.join(" + ")
    }

    /// Inverse of [`Poly::to_text`].
    pub fn parse_text(s: &str, var: &str, adjoin: Option<&Rational>) -> Result<Self, FieldError> {
        let t = s.trim();
        if t == "0" {
            return Ok(Poly::zero());
        }
        let mut coeffs: Vec<F> = Vec::new();
        for term in split_top_level(t, " + ") {
            let (coef, power) = split_power(term.trim(), var)
                .ok_or_else(|| FieldError::parse(s, format!("bad term {term:?}")))?;
            let c = F::parse_with(unwrap_parens(coef), adjoin)?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, F::zero());
            }
            coeffs[power] = coeffs[power].clone() + &c;
        }
        Ok(Poly::new(coeffs))
    }

    /// Descending form with rational coefficients folded into signs, e.g.
    /// `x^2 - x - 1`. Non-rational coefficients are parenthesized.
    pub fn to_pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = match c.as_rational() {
                Some(r) if r < Rational::from_integer(0.into()) => (true, (-r).to_string()),
                Some(r) => (false, r.to_string()),
                None => (false, format!("({c})")),
            };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let body = match (mag.as_str(), mono.is_empty()) {
                (m, true) => m.to_string(),
                ("1", false) => mono,
                (m, false) => format!("{m}*{mono}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>, RatFuncError> {
    if a.is_zero() && b.is_zero() {
        return Err(RatFuncError::BothZeroGcd);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic()?.1)
}

fn wrap_coeff(text: &str) -> String {
    let needs = text
        .char_indices()
        .any(|(i, c)| matches!(c, '+' | '*' | ' ' | '(') || (c == '-' && i > 0));
    if needs {
        format!("({text})")
    } else {
        text.to_string()
    }
}

fn unwrap_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') && matching_close(t, 0) == Some(t.len() - 1) {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

fn matching_close(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < s.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {
                if depth == 0 && s[i..].starts_with(sep) {
                    parts.push(&s[start..i]);
                    i += sep.len();
                    start = i;
                    continue;
                }
            }
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

/// Splits `coef*var^n` into `(coef, n)`; a bare term has power 0.
fn split_power<'a>(term: &'a str, var: &str) -> Option<(&'a str, usize)> {
    let mut depth = 0i32;
    let mut star = None;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 && term[i + 1..].starts_with(var) => star = Some(i),
            _ => {}
        }
    }
    let Some(i) = star else {
        return Some((term, 0));
    };
    let rest = &term[i + 1 + var.len()..];
    let power = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse().ok()?
    };
    Some((&term[..i], power))
}

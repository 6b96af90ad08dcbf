use crate::exactfield::{Field, Proj};
use crate::ratfunc::{Degree, Factor, Poly, RatFunc, RatFuncError};

use super::{
    sym_constants, Adjoin, Branch, CoeffError, ParamSet, RecurrenceTable, TableFlags, Variant,
    ZeroMode,
};

struct ZFactors<F> {
    scalar: F,
    factors: Vec<Factor<F>>,
    /// Indices of the pair replaced by `1/q` at the normalization point.
    pair: (usize, usize),
}

fn lin<F: Field>(c0: F, c1: F) -> Poly<F> {
    Poly::linear(c0, c1)
}

/// `c0 + c2·x²`.
fn even_quad<F: Field>(c0: F, c2: F) -> Poly<F> {
    Poly::new(vec![c0, F::zero(), c2])
}

fn z_factors<F: Field>(p: &ParamSet<F>) -> ZFactors<F> {
    let (q, y) = (&p.q, &p.y);
    let one = F::one();
    let mut factors = Vec::with_capacity(12);
    match p.variant {
        Variant::Standard => {
            // (x-1)(x-y) ∏(x-d_j)(d_j x-y) / ((x²-qy)(x²-y)²(qx²-y))
            factors.push(Factor::num(lin(-one.clone(), one.clone())));
            factors.push(Factor::num(lin(-y.clone(), one.clone())));
            for d in &p.d {
                factors.push(Factor::num(lin(-d.clone(), one.clone())));
                factors.push(Factor::num(lin(-y.clone(), d.clone())));
            }
            factors.push(Factor::den(even_quad(-(q.clone() * y), one.clone())));
            factors.push(Factor {
                poly: even_quad(-y.clone(), one.clone()),
                exp: -2,
            });
            factors.push(Factor::den(even_quad(-y.clone(), q.clone())));
            ZFactors {
                scalar: one,
                factors,
                pair: (1, 8),
            }
        }
        Variant::Starred => {
            // q²(x-1)(yx-1) ∏(yx-d_j)(d_j x-1) / ((yx²-q)(yx²-1)²(yqx²-1))
            factors.push(Factor::num(lin(-one.clone(), one.clone())));
            factors.push(Factor::num(lin(-one.clone(), y.clone())));
            for d in &p.d {
                factors.push(Factor::num(lin(-d.clone(), y.clone())));
                factors.push(Factor::num(lin(-one.clone(), d.clone())));
            }
            factors.push(Factor::den(even_quad(-q.clone(), y.clone())));
            factors.push(Factor {
                poly: even_quad(-one.clone(), y.clone()),
                exp: -2,
            });
            factors.push(Factor::den(even_quad(-one.clone(), y.clone() * q)));
            ZFactors {
                scalar: q.clone() * q,
                factors,
                pair: (1, 8),
            }
        }
    }
}

/// `Z` (standard) or `Z*` (starred) in factored form, factors in the order
/// `(x-1)`, `(x-y)`, the three `d_j` pairs, then the four denominator
/// factors.
pub fn build_z<F: Field>(p: &ParamSet<F>) -> Result<RatFunc<F>, CoeffError> {
    let zf = z_factors(p);
    Ok(RatFunc::from_factors(zf.scalar, zf.factors)?)
}

/// The σ-function selected by branch and variant: `V`, `V_a`, `V*` or
/// `V_a*`. Its second numerator factor carries `k1, k2`; when that factor is
/// identically zero it appears in [`RatFunc::dropped`].
pub fn build_v<F: Field>(p: &ParamSet<F>) -> Result<RatFunc<F>, CoeffError> {
    if p.branch == Branch::B && p.y.is_zero() {
        return Err(CoeffError::BranchBNeedsY);
    }
    let (q, y) = (&p.q, &p.y);
    let one = F::one();
    let k = sym_constants(p);
    let qm1 = q.clone() - &one;
    // c1·q·x - c0
    let k_factor = |c1: F, c0: F| lin(-c0, c1 * q);
    let (scalar, kf, den) = match (p.variant, p.branch) {
        (Variant::Standard, Branch::A) => (
            qm1.inv()?,
            k_factor(k.k1, k.k2),
            even_quad(-y.clone(), q.clone() * q),
        ),
        (Variant::Standard, Branch::B) => (
            qm1.inv()?,
            k_factor(k.k2, y.clone() * &k.k1),
            even_quad(-y.clone(), q.clone() * q),
        ),
        (Variant::Starred, Branch::A) => (
            q.clone() * &qm1.inv()?,
            k_factor(k.k2, k.k1),
            even_quad(-one.clone(), y.clone() * q * q),
        ),
        (Variant::Starred, Branch::B) => (
            q.clone() * &qm1.inv()?,
            k_factor(y.clone() * &k.k1, k.k2),
            even_quad(-one.clone(), y.clone() * q * q),
        ),
    };
    let factors = vec![
        Factor::num(lin(-one, q.clone())),
        Factor::num(kf),
        Factor::den(den),
    ];
    Ok(RatFunc::from_factors(scalar, factors)?)
}

/// `Z(q)` by factor ratios, with the `(x-y)/(x²-qy)` pair (starred:
/// `(yx-1)/(yx²-q)`) contributing `1/q`.
pub fn z_at_q<F: Field>(p: &ParamSet<F>) -> Result<F, CoeffError> {
    let zf = z_factors(p);
    let q = &p.q;
    let mut acc = zf.scalar * &q.inv()?;
    for (i, f) in zf.factors.iter().enumerate() {
        if i == zf.pair.0 || i == zf.pair.1 || f.poly.is_zero() {
            continue;
        }
        let v = f.poly.eval(q);
        if v.is_zero() {
            let factor = format!("({})", f.poly.to_pretty("x"));
            return Err(if f.exp > 0 {
                CoeffError::ZeroAtNormalization { factor }
            } else {
                CoeffError::PoleAtNormalization { factor }
            });
        }
        acc = acc * &v.pow(f.exp as i64)?;
    }
    Ok(acc)
}

/// Cached `Z`, `Z(q)` and `V` for one parameter set.
#[derive(Debug, Clone)]
pub struct Evaluator<F> {
    p: ParamSet<F>,
    z: RatFunc<F>,
    z_at_q: F,
    v: RatFunc<F>,
    sigma_zero: bool,
}

impl<F: Field> Evaluator<F> {
    pub fn new(p: &ParamSet<F>) -> Result<Self, CoeffError> {
        let z = build_z(p)?;
        let z_at_q = z_at_q(p)?;
        let v = build_v(p)?;
        let sigma_zero = !v.dropped().is_empty();
        Ok(Evaluator {
            p: p.clone(),
            z,
            z_at_q,
            v,
            sigma_zero,
        })
    }

    pub fn params(&self) -> &ParamSet<F> {
        &self.p
    }

    pub fn z(&self) -> &RatFunc<F> {
        &self.z
    }

    pub fn v(&self) -> &RatFunc<F> {
        &self.v
    }

    pub fn z_at_q(&self) -> &F {
        &self.z_at_q
    }

    pub fn sigma_identically_zero(&self) -> bool {
        self.sigma_zero
    }

    fn q_pow(&self, k: usize) -> Result<F, CoeffError> {
        Ok(self.p.q.pow(k as i64)?)
    }

    /// `α_k = α₁·Z(q^k)/Z(q)`.
    pub fn alpha(&self, k: usize) -> Result<F, CoeffError> {
        if k <= 1 {
            return Ok(self.p.alpha1.clone());
        }
        let val = match self.z.eval(&self.q_pow(k)?) {
            Err(RatFuncError::EvalAtPole { .. }) => return Err(CoeffError::PoleAlpha { k }),
            other => other?,
        };
        if val.is_zero() {
            return Err(CoeffError::ZeroAlpha { k });
        }
        Ok(self.p.alpha1.clone() * &val * &self.z_at_q.inv()?)
    }

    /// `V(1)` on the reduced form.
    pub fn v_at_one(&self) -> Result<F, CoeffError> {
        let val = match self.v.eval(&F::one()) {
            Err(RatFuncError::EvalAtPole { .. }) => return Err(CoeffError::VPoleAtOne),
            other => other?,
        };
        if val.is_zero() {
            return Err(CoeffError::VAtOneZero);
        }
        Ok(val)
    }

    /// `σ₀²`; zero under the `σ ≡ 0` rule.
    pub fn sigma0_sq(&self) -> Result<F, CoeffError> {
        if self.sigma_zero {
            return Ok(F::zero());
        }
        let v1 = self.v_at_one()?;
        let mut s = self.p.alpha1.clone() * &v1.square() * &self.z_at_q.inv()?;
        if self.p.branch == Branch::B {
            s = s * &self.p.y.inv()?;
        }
        Ok(s)
    }

    /// `V(q^k)/V(1)`.
    pub fn sigma_ratio(&self, k: usize) -> Result<F, CoeffError> {
        if self.sigma_zero {
            return Ok(F::zero());
        }
        let val = match self.v.eval(&self.q_pow(k)?) {
            Err(RatFuncError::EvalAtPole { .. }) => return Err(CoeffError::VPole { k }),
            other => other?,
        };
        Ok(val * &self.v_at_one()?.inv()?)
    }

    /// The signed root of `σ₀²`, or the override.
    pub fn sigma0(&self) -> Result<F, CoeffError> {
        if let Some(s) = &self.p.sigma0_override {
            if self.sigma_zero {
                return Err(CoeffError::OverrideWithZeroSigma);
            }
            return Ok(s.clone());
        }
        if self.sigma_zero {
            return Ok(F::zero());
        }
        let sq = self.sigma0_sq()?;
        let radicand = match &self.p.adjoin {
            Adjoin::None => None,
            Adjoin::Radicand(s) => Some(s.clone()),
            Adjoin::Auto => sq.as_rational(),
        };
        let root = sq
            .try_sqrt(radicand.as_ref())
            .ok_or_else(|| CoeffError::SqrtNotInField {
                value: sq.to_string(),
            })?;
        Ok(match self.p.sigma0_sign {
            super::Sign::Plus => root,
            super::Sign::Minus => -root,
        })
    }

    /// `t`, with `d1·d2·d3` kept as a product so any `d_j = 0` gives `t = 0`.
    pub fn t(&self) -> Result<F, CoeffError> {
        let p = &self.p;
        let e3 = p.d[0].clone() * &p.d[1] * &p.d[2];
        let qm1 = p.q.clone() - &F::one();
        let mut den = self.z_at_q.clone();
        if p.variant == Variant::Standard {
            den = den * &p.q.square();
        }
        Ok(-(p.alpha1.clone() * &qm1.square() * &e3) * &den.inv()?)
    }
}

pub fn alpha_at<F: Field>(p: &ParamSet<F>, k: usize) -> Result<F, CoeffError> {
    Evaluator::new(p)?.alpha(k)
}

pub fn sigma0_sq<F: Field>(p: &ParamSet<F>) -> Result<F, CoeffError> {
    Evaluator::new(p)?.sigma0_sq()
}

pub fn sigma_at<F: Field>(p: &ParamSet<F>, k: usize) -> Result<F, CoeffError> {
    let ev = Evaluator::new(p)?;
    Ok(ev.sigma0()? * &ev.sigma_ratio(k)?)
}

pub fn t_value<F: Field>(p: &ParamSet<F>) -> Result<F, CoeffError> {
    Evaluator::new(p)?.t()
}

/// Degrees of the reduced `Z` (identically-zero factors dropped).
pub fn classify_degrees<F: Field>(p: &ParamSet<F>) -> Result<(Degree, Degree), CoeffError> {
    Ok(build_z(p)?.degrees())
}

/// `α_1..α_kmax`, `σ_0..σ_kmax`, `β`, `σ₀²`, `t` and flags.
pub fn build_table<F: Field>(p: &ParamSet<F>, kmax: usize) -> Result<RecurrenceTable<F>, CoeffError> {
    p.validate(kmax)?;
    let ev = Evaluator::new(p)?;
    let mut flags = TableFlags {
        sigma_identically_zero: ev.sigma_identically_zero(),
        finite_family_at: None,
    };
    let mut alpha = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        match ev.alpha(k) {
            Ok(a) => alpha.push(a),
            Err(CoeffError::ZeroAlpha { k }) if p.mode == ZeroMode::Permissive => {
                flags.finite_family_at = Some(k);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let last = match flags.finite_family_at {
        Some(k) => k - 1,
        None => kmax,
    };
    let sigma0 = ev.sigma0()?;
    let sigma = (0..=last)
        .map(|k| Ok(sigma0.clone() * &ev.sigma_ratio(k)?))
        .collect::<Result<Vec<F>, CoeffError>>()?;
    let beta = RecurrenceTable::betas(&sigma);
    Ok(RecurrenceTable {
        kmax,
        alpha,
        sigma,
        beta,
        sigma0_sq: ev.sigma0_sq()?,
        t: ev.t()?,
        degree_pair: ev.z().degrees(),
        flags,
        base: p.base()?,
        y_hint: Proj::Finite(p.y.clone()),
        branch: p.branch,
        variant: p.variant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{q_number, q_reverse, q_reverse_literal, Sign};
    use crate::exactfield::{rat, Quad, Rational};

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn qi(n: i64) -> Quad {
        Quad::from_i64(n)
    }

    fn constant_q4() -> ParamSet<Rational> {
        ParamSet::new(r(4), r(1), [r(-1), r(2), r(-2)], r(1))
    }

    fn half_q4() -> ParamSet<Rational> {
        ParamSet::new(r(4), r(4), [r(2), r(-2), r(-1)], r(1))
    }

    fn eq54() -> ParamSet<Rational> {
        ParamSet::new(r(2), r(1), [r(-1), r(1), r(1)], r(1))
    }

    fn eq55() -> ParamSet<Quad> {
        let z = Quad::zero();
        ParamSet::new(Quad::from_i64(2), Quad::one(), [z.clone(), z.clone(), z], Quad::one())
            .with_adjoin(Adjoin::Radicand(r(-7)))
    }

    fn qn(k: i64, q: i64) -> Rational {
        q_number(k, &r(q)).unwrap()
    }

    #[test]
    fn constant_sequences() {
        let t = build_table(&constant_q4(), 12).unwrap();
        assert!(t.alpha.iter().all(|a| *a == r(1)));
        assert!(t.sigma.iter().all(|s| *s == r(1)));
        assert_eq!(t.beta[0], r(1));
        assert!(t.beta[1..].iter().all(|b| *b == r(0)));
        assert_eq!(t.sigma0_sq, r(1));
        assert_eq!(t.t, rat(-9, 4));
        assert_eq!(t.degree_pair, (Degree::Finite(0), Degree::Finite(0)));
    }

    #[test]
    fn constant_v_is_minus_one() {
        let v = build_v(&constant_q4()).unwrap();
        assert_eq!(v.num(), &Poly::constant(r(-1)));
        assert_eq!(v.den(), &Poly::one());
    }

    #[test]
    fn half_constant() {
        let t = build_table(&half_q4(), 12).unwrap();
        assert_eq!(t.alpha[0], r(1));
        assert!(t.alpha[1..].iter().all(|a| *a == rat(1, 2)));
        assert!(t.flags.sigma_identically_zero);
        assert!(t.sigma.iter().all(|s| *s == r(0)));
        assert_eq!(t.t, rat(-9, 8));
        assert_eq!(t.degree_pair, (Degree::Finite(0), Degree::Finite(0)));
    }

    #[test]
    fn eq54_closed_form() {
        let t = build_table(&eq54(), 12).unwrap();
        assert_eq!(t.alpha_k(2).unwrap(), &rat(81, 31));
        assert_eq!(t.alpha_k(3).unwrap(), &rat(16807, 3937));
        for k in 1..=12i64 {
            let expect = qn(3, 2) * qn(k, 2).pow(4) / (qn(2 * k + 1, 2) * qn(2 * k - 1, 2));
            assert_eq!(t.alpha_k(k as usize).unwrap(), &expect);
        }
        assert!(t.sigma.iter().all(|s| *s == r(0)));
        assert_eq!(t.sigma0_sq, r(0));
        assert_eq!(t.t, rat(-7, 2));
        assert_eq!(t.degree_pair, (Degree::Finite(4), Degree::Finite(4)));
    }

    #[test]
    fn eq55_closed_form() {
        let p = eq55();
        let t = build_table(&p, 12).unwrap();
        let s0 = Quad::sqrt_of(&r(-7));
        assert_eq!(t.sigma0_sq, Quad::from_i64(-7));
        assert_eq!(t.sigma[0], s0);
        assert_eq!(t.sigma[1], s0.clone() * &Quad::rational(rat(6, 5)));
        assert_eq!(t.alpha[1], Quad::rational(rat(72, 775)));
        assert_eq!(t.t, Quad::zero());
        assert_eq!(t.degree_pair, (Degree::Finite(3), Degree::Finite(6)));
    }

    #[test]
    fn eq55_needs_adjoined_root() {
        let p = eq55().with_adjoin(Adjoin::None);
        assert!(matches!(build_table(&p, 3), Err(CoeffError::SqrtNotInField { .. })));
        let p = eq55().with_adjoin(Adjoin::Auto);
        assert!(build_table(&p, 3).is_ok());
    }

    #[test]
    fn sign_flip_negates_sigma_only() {
        let p = eq55();
        let a = build_table(&p, 6).unwrap();
        let b = build_table(&p.clone().with_sign(Sign::Minus), 6).unwrap();
        assert_eq!(a.alpha, b.alpha);
        assert_eq!(a.t, b.t);
        assert_eq!(a.sigma0_sq, b.sigma0_sq);
        for (x, y) in a.sigma.iter().zip(&b.sigma) {
            assert_eq!(x.clone(), -y.clone());
        }
    }

    #[test]
    fn starred_equals_literal_reversal() {
        let p = ParamSet::new(qi(3), qi(2), [qi(5), qi(7), qi(-3)], qi(2)).with_adjoin(Adjoin::Auto);
        let a = build_table(&q_reverse(&p), 8).unwrap();
        let b = build_table(&q_reverse_literal(&p).unwrap(), 8).unwrap();
        assert_eq!(a.alpha, b.alpha);
        assert_eq!(a.t, b.t);
        assert_eq!(a.sigma0_sq, b.sigma0_sq);
        assert_eq!(a.base, b.base);
    }

    #[test]
    fn z_at_q_reports_vanishing_factor() {
        // d1·q = y makes (d1 x - y) vanish at x = q
        let p = ParamSet::new(r(2), r(6), [r(3), r(6), r(4)], r(1));
        assert!(matches!(z_at_q(&p), Err(CoeffError::ZeroAtNormalization { .. })));
        assert!(z_at_q(&p.with_variant(Variant::Starred)).is_ok());
    }

    #[test]
    fn finite_family_in_permissive_mode() {
        // d1 = q^3 puts a zero of Z at x = q^3
        let p = ParamSet::new(qi(2), qi(3), [qi(8), qi(5), qi(7)], qi(1)).with_adjoin(Adjoin::Auto);
        assert_eq!(build_table(&p, 6).unwrap_err(), CoeffError::ZeroAlpha { k: 3 });
        let t = build_table(&p.with_mode(ZeroMode::Permissive), 6).unwrap();
        assert_eq!(t.flags.finite_family_at, Some(3));
        assert_eq!(t.alpha.len(), 2);
        assert_eq!(t.sigma.len(), 3);
    }

    #[test]
    fn v_at_one_zero_is_an_error() {
        // y=0, d=(1,3,-6/5), q=2: k1 = -9/5, k2 = -18/5, so k1·q - k2 = 0
        let p = ParamSet::new(r(2), r(0), [r(1), r(3), rat(-6, 5)], r(1));
        assert_eq!(sigma0_sq(&p), Err(CoeffError::VAtOneZero));
    }

    #[test]
    fn branch_b_needs_nonzero_y() {
        let p = ParamSet::new(r(2), r(0), [r(1), r(2), r(3)], r(1)).with_branch(Branch::B);
        assert_eq!(build_v(&p).unwrap_err(), CoeffError::BranchBNeedsY);
    }
}

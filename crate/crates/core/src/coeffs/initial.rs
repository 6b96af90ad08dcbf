use crate::exactfield::{Field, Proj};

use super::{q_number, CoeffError, RecurrenceTable};

/// The function `g` of the initial-data formulas.
#[derive(Debug, Clone, PartialEq)]
pub enum GFunction<F> {
    /// `g(k) = [k-2]·c0 + c1`.
    Affine { c0: F, c1: F },
    /// `q^{k+1} - y` (or `1` for `y = ∞`): a nonzero multiple of the affine
    /// form, used when `c0 = c1 = 0` because `σ ≡ 0`. Every formula below is
    /// homogeneous of degree zero in `g`, so the multiple drops out.
    Projective { y: Proj<F> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxConstants<F> {
    pub c0: F,
    pub c1: F,
    pub c2: F,
    pub g: GFunction<F>,
    pub q: F,
}

/// `c0 = [3](qσ₀ - σ₁) + σ₂`, `c1 = [3](σ₀ + σ₁ - σ₂)`,
/// `c2 = [4]σ₀σ₂ - [3]σ₀σ₁ - q²σ₁σ₂`.
pub fn aux_constants<F: Field>(s0: &F, s1: &F, s2: &F, q: &F) -> Result<AuxConstants<F>, CoeffError> {
    let q3 = q_number(3, q)?;
    let q4 = q_number(4, q)?;
    let c0 = q3.clone() * &(q.clone() * s0 - s1) + s2;
    let c1 = q3.clone() * &(s0.clone() + s1 - s2);
    let c2 = q4 * s0 * s2 - &(q3 * s0 * s1) - &(q.square() * s1 * s2);
    Ok(AuxConstants {
        g: GFunction::Affine {
            c0: c0.clone(),
            c1: c1.clone(),
        },
        c0,
        c1,
        c2,
        q: q.clone(),
    })
}

impl<F: Field> AuxConstants<F> {
    /// Constants for a table, at the table's base. Falls back to the
    /// projective `g` when `σ₀ = σ₁ = σ₂ = 0`.
    pub fn for_table(table: &RecurrenceTable<F>) -> Result<Self, CoeffError> {
        let s = |k| table.sigma_k(k).cloned();
        let (s0, s1, s2) = (s(0)?, s(1)?, s(2)?);
        let mut a = aux_constants(&s0, &s1, &s2, &table.base)?;
        if a.c0.is_zero() && a.c1.is_zero() {
            if !(s0.is_zero() && s1.is_zero() && s2.is_zero()) {
                return Err(CoeffError::UndeterminedG);
            }
            a.g = GFunction::Projective {
                y: table.y_hint.clone(),
            };
        }
        Ok(a)
    }

    pub fn g(&self, k: i64) -> Result<F, CoeffError> {
        Ok(match &self.g {
            GFunction::Affine { c0, c1 } => q_number(k - 2, &self.q)? * c0 + c1,
            GFunction::Projective { y: Proj::Finite(y) } => self.q.pow(k + 1)? - y,
            GFunction::Projective { y: Proj::Infinity } => F::one(),
        })
    }

    fn g_nonzero(&self, k: i64) -> Result<F, CoeffError> {
        let g = self.g(k)?;
        if g.is_zero() {
            return Err(CoeffError::DegenerateG { arg: k });
        }
        Ok(g)
    }
}

/// `σ_k = [k+1]([k]q⁻¹c2 + σ₀g(1))/g(2k+1)`.
pub fn sigma_from_initial<F: Field>(
    a: &AuxConstants<F>,
    sigma0: &F,
    q: &F,
    k: usize,
) -> Result<F, CoeffError> {
    let k = k as i64;
    let inner = q_number(k, q)? * &q.inv()? * &a.c2 + &(sigma0.clone() * &a.g(1)?);
    let num = q_number(k + 1, q)? * &inner;
    if num.is_zero() {
        return Ok(num);
    }
    Ok(num * &a.g_nonzero(2 * k + 1)?.inv()?)
}

/// `α_k` from `α₁, σ₀, t` and the auxiliary constants; `α_1 = α₁`.
pub fn alpha_from_initial<F: Field>(
    a: &AuxConstants<F>,
    alpha1: &F,
    sigma0: &F,
    t: &F,
    q: &F,
    k: usize,
) -> Result<F, CoeffError> {
    if k <= 1 {
        return Ok(alpha1.clone());
    }
    let k = k as i64;
    let (c0, c1, c2) = (&a.c0, &a.c1, &a.c2);
    let one = F::one();
    let s0c0 = sigma0.clone() * c0;
    let w_num = q.pow(k - 3)?
        * &((q.pow(k - 1)? + &one) * &s0c0 - c2)
        * &((s0c0.clone() - c2) * &q.pow(k - 2)?
            + &(sigma0.clone() * &(c0.clone() - &((q.clone() - &one) * c1))));
    let w = if w_num.is_zero() {
        -t.clone()
    } else {
        w_num * &a.g_nonzero(2 * k - 1)?.square().inv()? - t
    };
    let inner = q.pow(k - 2)? * &a.g(2)? * alpha1 + &(q_number(k - 1, q)? * &a.g(k)? * &w);
    let pre = q.clone() * &q_number(k, q)? * &a.g(k - 1)?;
    let den = a.g_nonzero(2 * k)? * &a.g_nonzero(2 * k - 2)?;
    Ok(pre * &inner * &den.inv()?)
}

/// Coefficients of the companion matrix `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TildeCoeffs<F> {
    /// `σ̃_0..σ̃_kmax`.
    pub sigma: Vec<F>,
    /// `α̃_1..α̃_kmax`.
    pub alpha: Vec<F>,
    /// `β̃_0..β̃_kmax`.
    pub beta: Vec<F>,
}

/// `σ̃_k = [k+1]/[k+2]·σ_{k+1}`, `α̃_k = [k]g(k+1)/(q[k+1]g(k))·α_{k+1}`.
pub fn tilde_coeffs<F: Field>(
    table: &RecurrenceTable<F>,
    a: &AuxConstants<F>,
    q: &F,
    kmax: usize,
) -> Result<TildeCoeffs<F>, CoeffError> {
    let mut sigma = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let ratio = q_number(k as i64 + 1, q)?.checked_div(&q_number(k as i64 + 2, q)?)?;
        sigma.push(ratio * table.sigma_k(k + 1)?);
    }
    let mut alpha = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let ki = k as i64;
        let num = q_number(ki, q)? * &a.g(ki + 1)?;
        let den = q.clone() * &q_number(ki + 1, q)? * &a.g_nonzero(ki)?;
        alpha.push(num * &den.inv()? * table.alpha_k(k + 1)?);
    }
    let beta = RecurrenceTable::betas(&sigma);
    Ok(TildeCoeffs { sigma, alpha, beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{build_table, ParamSet};
    use crate::exactfield::{rat, Rational};

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn aux_examples() {
        let a = aux_constants(&r(0), &r(0), &r(0), &r(2)).unwrap();
        assert_eq!((a.c0, a.c1, a.c2), (r(0), r(0), r(0)));
        let a = aux_constants(&r(1), &r(1), &r(1), &r(2)).unwrap();
        assert_eq!((a.c0.clone(), a.c1.clone(), a.c2.clone()), (r(8), r(7), r(4)));
        assert_eq!(a.g(2).unwrap(), a.c1);
        assert_eq!(a.g(1).unwrap(), r(3));
    }

    #[test]
    fn sigma_from_initial_examples() {
        let a = aux_constants(&r(1), &r(1), &r(1), &r(2)).unwrap();
        assert_eq!(sigma_from_initial(&a, &r(1), &r(2), 0).unwrap(), r(1));
        assert_eq!(sigma_from_initial(&a, &r(1), &r(2), 1).unwrap(), r(1));
        assert_eq!(sigma_from_initial(&a, &r(1), &r(2), 3).unwrap(), r(1));
    }

    #[test]
    fn constant_preset_from_initial_data() {
        let a = aux_constants(&r(1), &r(1), &r(1), &r(4)).unwrap();
        for k in 1..=12 {
            let ak = alpha_from_initial(&a, &r(1), &r(1), &rat(-9, 4), &r(4), k).unwrap();
            assert_eq!(ak, r(1), "k = {k}");
        }
    }

    #[test]
    fn sigma_zero_uses_projective_g() {
        let p = ParamSet::new(r(2), r(1), [r(-1), r(1), r(1)], r(1));
        let t = build_table(&p, 6).unwrap();
        let a = AuxConstants::for_table(&t).unwrap();
        assert!(matches!(a.g, GFunction::Projective { .. }));
        let a2 = alpha_from_initial(&a, &r(1), &r(0), &rat(-7, 2), &r(2), 2).unwrap();
        assert_eq!(a2, rat(81, 31));
    }

    #[test]
    fn tilde_examples() {
        let mut t = build_table(&ParamSet::new(r(4), r(1), [r(-1), r(2), r(-2)], r(1)), 6).unwrap();
        t.sigma[1] = r(5);
        let a = AuxConstants {
            c0: r(0),
            c1: r(1),
            c2: r(0),
            g: GFunction::Affine { c0: r(0), c1: r(1) },
            q: r(2),
        };
        let tc = tilde_coeffs(&t, &a, &r(2), 2).unwrap();
        assert_eq!(tc.sigma[0], rat(5, 3));
        assert_eq!(tc.alpha[0], t.alpha[1].clone() / r(6));
    }
}

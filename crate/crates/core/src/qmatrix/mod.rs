//! Truncated lower semi-matrices and the checks built on them: the quadratic
//! matrix equation `L²D_q − (q+1)LD_qM + qD_qM² = tD_q`, orthogonality
//! through moments, and the `D̂_q A D_q` transform.

mod banded;

use thiserror::Error;

use crate::coeffs::{tilde_coeffs, AuxConstants, CoeffError, RecurrenceTable};
use crate::exactfield::{Field, FieldError};
use crate::ratfunc::Poly;

pub use banded::BandedMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QMatrixError {
    #[error("matrix sizes differ ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("insufficient truncation: need size {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },
    #[error("coefficient sequence too short: need {needed}, have {have}")]
    LengthMismatch { needed: usize, have: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// `(D_q)_{k+1,k} = [k+1]`.
    Dq,
    /// `(D̂_q)_{k,k+1} = 1/[k+1]`, a left inverse of `D_q`.
    DqHat,
    /// Multiplication by `x`: ones at `(k, k+1)`.
    X,
}

pub fn build_operator<F: Field>(kind: Operator, q: &F, n: usize) -> Result<BandedMatrix<F>, QMatrixError> {
    let mut m = match kind {
        Operator::Dq => BandedMatrix::zeros(n, 1, 1),
        Operator::DqHat | Operator::X => BandedMatrix::zeros(n, -1, -1),
    };
    for k in 0..n.saturating_sub(1) {
        let qk = crate::coeffs::q_number(k as i64 + 1, q)?;
        match kind {
            Operator::Dq => m.set(k + 1, k, qk),
            Operator::DqHat => m.set(k, k + 1, qk.inv()?),
            Operator::X => m.set(k, k + 1, F::one()),
        }
    }
    Ok(m)
}

/// Superdiagonal ones, `β_k` on the diagonal, `α_k` at `(k, k-1)`.
pub fn build_tridiagonal<F: Field>(alpha: &[F], beta: &[F], n: usize) -> Result<BandedMatrix<F>, QMatrixError> {
    if beta.len() < n {
        return Err(QMatrixError::LengthMismatch { needed: n, have: beta.len() });
    }
    if alpha.len() + 1 < n {
        return Err(QMatrixError::LengthMismatch { needed: n - 1, have: alpha.len() });
    }
    let mut m = BandedMatrix::zeros(n, -1, 1);
    for k in 0..n {
        m.set(k, k, beta[k].clone());
        if k + 1 < n {
            m.set(k, k + 1, F::one());
            m.set(k + 1, k, alpha[k].clone());
        }
    }
    Ok(m)
}

/// The matrix `L` of a table.
pub fn build_l<F: Field>(table: &RecurrenceTable<F>, n: usize) -> Result<BandedMatrix<F>, QMatrixError> {
    build_tridiagonal(&table.alpha, &table.beta, n)
}

/// The companion matrix `M` of a table, from the tilde coefficients.
pub fn build_m<F: Field>(table: &RecurrenceTable<F>, n: usize) -> Result<BandedMatrix<F>, QMatrixError> {
    let aux = AuxConstants::for_table(table)?;
    let tc = tilde_coeffs(table, &aux, &table.base, n.saturating_sub(1))?;
    build_tridiagonal(&tc.alpha, &tc.beta, n)
}

/// `R = L²D_q − (q+1)LD_qM + qD_qM² − tD_q` on the leading `n × n` block.
/// `L` and `M` must have size at least `n + 4`.
pub fn residual_quadratic<F: Field>(
    l: &BandedMatrix<F>,
    m: &BandedMatrix<F>,
    t: &F,
    q: &F,
    n: usize,
) -> Result<BandedMatrix<F>, QMatrixError> {
    let size = l.size();
    if size < n + 4 || m.size() < n + 4 {
        return Err(QMatrixError::InsufficientTruncation {
            needed: n + 4,
            have: size.min(m.size()),
        });
    }
    let d = build_operator(Operator::Dq, q, size)?;
    let l2d = l.mul(l)?.mul(&d)?;
    let ldm = l.mul(&d)?.mul(m)?;
    let dm2 = d.mul(m)?.mul(m)?;
    let qp1 = q.clone() + &F::one();
    let r = l2d
        .sub(&ldm.scale(&qp1))?
        .add(&dm2.scale(q))?
        .sub(&d.scale(t))?;
    Ok(r.restrict(n))
}

/// Builds `L`, `M` at size `n + 4` from the table and returns the residual.
pub fn table_residual<F: Field>(table: &RecurrenceTable<F>, n: usize) -> Result<BandedMatrix<F>, QMatrixError> {
    let l = build_l(table, n + 4)?;
    let m = build_m(table, n + 4)?;
    residual_quadratic(&l, &m, &table.t, &table.base, n)
}

/// Monic polynomials `p_0..p_kmax` of a three-term recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolySeq<F> {
    pub rows: Vec<Poly<F>>,
}

impl<F: Field> MonicPolySeq<F> {
    /// The lower-triangular coefficient matrix `A`, `A_{k,i}` = coefficient
    /// of `x^i` in `p_k`.
    pub fn matrix(&self, n: usize) -> BandedMatrix<F> {
        let mut a = BandedMatrix::zeros(n, 0, n.saturating_sub(1) as i64);
        for (k, p) in self.rows.iter().take(n).enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                a.set(k, i, c.clone());
            }
        }
        a
    }
}

/// `p_0 = 1`, `p_1 = x − β_0`, `p_{k+1} = (x − β_k)p_k − α_k p_{k−1}`.
pub fn recurrence_polys<F: Field>(alpha: &[F], beta: &[F], kmax: usize) -> Result<MonicPolySeq<F>, QMatrixError> {
    if beta.len() < kmax {
        return Err(QMatrixError::LengthMismatch { needed: kmax, have: beta.len() });
    }
    if alpha.len() + 1 < kmax {
        return Err(QMatrixError::LengthMismatch { needed: kmax - 1, have: alpha.len() });
    }
    let x = Poly::monomial(F::one(), 1);
    let mut rows = vec![Poly::one()];
    for k in 0..kmax {
        let shifted = x.sub(&Poly::constant(beta[k].clone())).mul(&rows[k]);
        let next = if k == 0 {
            shifted
        } else {
            shifted.sub(&rows[k - 1].scale(&alpha[k - 1]))
        };
        rows.push(next);
    }
    Ok(MonicPolySeq { rows })
}

/// `m_n = (Lⁿ)₀₀` for `n ≤ nmax`, with `m_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeq<F> {
    pub m: Vec<F>,
}

/// Moments by iterating the row vector `e₀ᵀLⁿ`. A path from index 0 back to
/// 0 in `n` steps never passes index `n/2`, so size `> nmax/2` is exact.
pub fn moments<F: Field>(l: &BandedMatrix<F>, nmax: usize) -> Result<MomentSeq<F>, QMatrixError> {
    let size = l.size();
    if 2 * size <= nmax {
        return Err(QMatrixError::InsufficientTruncation {
            needed: nmax / 2 + 1,
            have: size,
        });
    }
    let mut v = vec![F::zero(); size];
    v[0] = F::one();
    let mut m = vec![F::one()];
    for _ in 0..nmax {
        let mut w = vec![F::zero(); size];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for k in i.saturating_sub(1)..(i + 2).min(size) {
                w[k] = w[k].clone() + &(vi.clone() * &l.get(i, k));
            }
        }
        v = w;
        m.push(v[0].clone());
    }
    Ok(MomentSeq { m })
}

/// An entry where a check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy<F> {
    pub j: usize,
    pub k: usize,
    pub expected: F,
    pub got: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<F> {
    pub order: usize,
    pub first_failure: Option<Discrepancy<F>>,
}

impl<F: Field> CheckReport<F> {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    fn from_residual(r: &BandedMatrix<F>, order: usize) -> Self {
        CheckReport {
            order,
            first_failure: r.first_nonzero().map(|(j, k, got)| Discrepancy {
                j,
                k,
                expected: F::zero(),
                got,
            }),
        }
    }
}

/// `μ(p_j p_k)` for `j, k ≤ kmax` against `γ_k δ_{jk}`, `γ_k = α_1⋯α_k`.
pub fn gram_check<F: Field>(table: &RecurrenceTable<F>, kmax: usize) -> Result<CheckReport<F>, QMatrixError> {
    let polys = recurrence_polys(&table.alpha, &table.beta, kmax)?;
    let l = build_l(table, kmax + 1)?;
    let mom = moments(&l, 2 * kmax)?;
    // u[k][i] = μ(x^i p_k), so μ(p_j p_k) = Σ_i p_j[i] u[k][i]
    let u: Vec<Vec<F>> = polys
        .rows
        .iter()
        .map(|p| {
            (0..=kmax)
                .map(|i| {
                    p.coeffs()
                        .iter()
                        .enumerate()
                        .fold(F::zero(), |acc, (l, c)| acc + &(c.clone() * &mom.m[i + l]))
                })
                .collect()
        })
        .collect();
    let mu = |j: usize, k: usize| {
        polys.rows[j]
            .coeffs()
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (i, c)| acc + &(c.clone() * &u[k][i]))
    };
    let mut gamma = vec![F::one()];
    for k in 1..=kmax {
        gamma.push(gamma[k - 1].clone() * &table.alpha[k - 1]);
    }
    for j in 0..=kmax {
        for k in j..=kmax {
            let got = mu(j, k);
            let expected = if j == k { gamma[k].clone() } else { F::zero() };
            if got != expected {
                return Ok(CheckReport {
                    order: kmax,
                    first_failure: Some(Discrepancy { j, k, expected, got }),
                });
            }
        }
    }
    Ok(CheckReport {
        order: kmax,
        first_failure: None,
    })
}

/// Residual `MÃ − ÃX` with `Ã = D̂_q A D_q`, on the leading `n × n` block.
/// Zero exactly when the derivatives `D_q p_{k+1}/[k+1]` satisfy the
/// recurrence of `M`.
pub fn hahn_transform_residual<F: Field>(
    table: &RecurrenceTable<F>,
    q: &F,
    n: usize,
) -> Result<BandedMatrix<F>, QMatrixError> {
    let size = n + 4;
    let a = recurrence_polys(&table.alpha, &table.beta, size - 1)?.matrix(size);
    let d = build_operator(Operator::Dq, q, size)?;
    let dh = build_operator(Operator::DqHat, q, size)?;
    let x = build_operator(Operator::X, q, size)?;
    let at = dh.mul(&a)?.mul(&d)?;
    let m = build_m(table, size)?;
    let r = m.mul(&at)?.sub(&at.mul(&x)?)?;
    Ok(r.restrict(n))
}

pub fn hahn_transform_check<F: Field>(
    table: &RecurrenceTable<F>,
    q: &F,
    n: usize,
) -> Result<CheckReport<F>, QMatrixError> {
    Ok(CheckReport::from_residual(&hahn_transform_residual(table, q, n)?, n))
}

/// All checks for one table.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<F> {
    pub residual: CheckReport<F>,
    pub gram: CheckReport<F>,
    /// Only run when `t = 0`.
    pub hahn: Option<CheckReport<F>>,
}

impl<F: Field> VerifyReport<F> {
    pub fn passed(&self) -> bool {
        self.residual.passed() && self.gram.passed() && self.hahn.as_ref().is_none_or(|h| h.passed())
    }
}

/// The table needs `kmax ≥ order + 5`.
pub fn verify_table<F: Field>(
    table: &RecurrenceTable<F>,
    order: usize,
    gram_order: usize,
) -> Result<VerifyReport<F>, QMatrixError> {
    let r = table_residual(table, order)?;
    let residual = CheckReport::from_residual(&r, order);
    let gram = gram_check(table, gram_order)?;
    let hahn = if table.t.is_zero() {
        Some(hahn_transform_check(table, &table.base, order)?)
    } else {
        None
    };
    Ok(VerifyReport { residual, gram, hahn })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{build_table, Adjoin, ParamSet};
    use crate::exactfield::{rat, Quad, Rational};

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn constant_table(kmax: usize) -> RecurrenceTable<Rational> {
        build_table(&ParamSet::new(r(4), r(1), [r(-1), r(2), r(-2)], r(1)), kmax).unwrap()
    }

    fn eq55_table(kmax: usize) -> RecurrenceTable<Quad> {
        let z = Quad::zero();
        let p = ParamSet::new(Quad::from_i64(2), Quad::one(), [z.clone(), z.clone(), z], Quad::one())
            .with_adjoin(Adjoin::Radicand(r(-7)));
        build_table(&p, kmax).unwrap()
    }

    #[test]
    fn operator_identities() {
        let q = r(3);
        let n = 8;
        let d = build_operator(Operator::Dq, &q, n).unwrap();
        let dh = build_operator(Operator::DqHat, &q, n).unwrap();
        let x = build_operator(Operator::X, &q, n).unwrap();
        assert_eq!(d.get(1, 0), r(1));
        assert_eq!(d.get(2, 1), r(4));
        let left_inv = dh.mul(&d).unwrap();
        let id: BandedMatrix<Rational> = BandedMatrix::identity(n);
        for j in 0..n - 1 {
            for k in 0..n - 1 {
                assert_eq!(left_inv.get(j, k), id.get(j, k));
            }
        }
        let comm = x.mul(&d).unwrap().sub(&d.mul(&x).unwrap().scale(&q)).unwrap();
        for j in 0..comm.valid() {
            for k in 0..comm.valid() {
                assert_eq!(comm.get(j, k), id.get(j, k), "({j},{k})");
            }
        }
    }

    #[test]
    fn constant_preset_tridiagonal() {
        let t = constant_table(6);
        let l = build_l(&t, 4).unwrap();
        assert_eq!(l.get(0, 0), r(1));
        assert_eq!(l.get(1, 1), r(0));
        assert_eq!(l.get(1, 0), r(1));
        assert_eq!(l.get(0, 1), r(1));
    }

    #[test]
    fn constant_preset_residual_and_t_shift() {
        let t = constant_table(20);
        let res = table_residual(&t, 12).unwrap();
        assert!(res.is_zero_on_valid());
        let mut shifted = t.clone();
        shifted.t = shifted.t + &r(1);
        let res = table_residual(&shifted, 12).unwrap();
        let d = build_operator(Operator::Dq, &r(4), 12).unwrap().scale(&r(-1));
        for j in 0..12 {
            for k in 0..12 {
                assert_eq!(res.get(j, k), d.get(j, k));
            }
        }
    }

    #[test]
    fn residual_needs_slack() {
        let t = constant_table(20);
        let l = build_l(&t, 14).unwrap();
        let m = build_m(&t, 14).unwrap();
        assert!(matches!(
            residual_quadratic(&l, &m, &t.t, &t.base, 12),
            Err(QMatrixError::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn eq55_residual_and_hahn() {
        let t = eq55_table(20);
        assert!(table_residual(&t, 12).unwrap().is_zero_on_valid());
        assert!(hahn_transform_check(&t, &t.base, 10).unwrap().passed());
        let c = constant_table(20);
        assert!(!hahn_transform_check(&c, &c.base, 10).unwrap().passed());
    }

    #[test]
    fn polys_and_moments() {
        let t = constant_table(6);
        let p = recurrence_polys(&t.alpha, &t.beta, 3).unwrap();
        assert_eq!(p.rows[2].to_pretty("x"), "x^2 - x - 1");
        let free = build_tridiagonal(&vec![r(1); 5], &vec![r(0); 6], 6).unwrap();
        let m = moments(&free, 4).unwrap();
        assert_eq!(m.m, vec![r(1), r(0), r(1), r(0), r(2)]);
        let l = build_l(&t, 3).unwrap();
        let m = moments(&l, 2).unwrap();
        assert_eq!(m.m[1], t.beta[0]);
        assert_eq!(m.m[2], t.beta[0].clone() * &t.beta[0] + &t.alpha[0]);
    }

    #[test]
    fn gram_diagonal_is_alpha_product() {
        let mut t = constant_table(8);
        assert!(gram_check(&t, 6).unwrap().passed());
        // any tridiagonal table is orthogonal for its own moments
        t.alpha[1] = r(3);
        assert!(gram_check(&t, 6).unwrap().passed());
        let polys = recurrence_polys(&t.alpha, &t.beta, 2).unwrap();
        let m = moments(&build_l(&t, 3).unwrap(), 4).unwrap();
        let p2sq = polys.rows[2].mul(&polys.rows[2]);
        let mu = p2sq
            .coeffs()
            .iter()
            .enumerate()
            .fold(r(0), |acc, (i, c)| acc + c.clone() * m.m[i].clone());
        assert_eq!(mu, r(3));
    }

    #[test]
    fn lax_pair_identity() {
        let t = constant_table(10);
        let n = 8;
        let a = recurrence_polys(&t.alpha, &t.beta, n - 1).unwrap().matrix(n);
        let l = build_l(&t, n).unwrap();
        let x = build_operator(Operator::X, &rat(4, 1), n).unwrap();
        let r = l.mul(&a).unwrap().sub(&a.mul(&x).unwrap()).unwrap();
        assert!(r.is_zero_on_valid());
    }
}

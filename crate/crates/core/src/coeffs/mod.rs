//! Recurrence coefficients from the parameters `(q, y, d1, d2, d3, α₁)`.
//!
//! Two routes are implemented and cross-checked against each other:
//! the factored route ([`build_table`]) through the rational functions
//! `Z`, `V`, `V_a` and their starred forms, and the initial-data route
//! ([`aux_constants`], [`sigma_from_initial`], [`alpha_from_initial`]) that
//! rebuilds everything from `α₁, σ₀, σ₁, σ₂, t`.
//!
//! Conventions for degenerate parameters:
//! - a factor that is identically zero as a polynomial in `x` is dropped
//!   from every ratio;
//! - at the normalization point `x = q` the pair `(x - y)/(x² - qy)` of `Z`
//!   (starred: `(yx - 1)/(yx² - q)`) is replaced by its value `1/q` away
//!   from `y = q`;
//! - if the numerator factor of `V` that carries `k1, k2` vanishes
//!   identically, `σ_k ≡ 0`.
//!
//! A starred table is the standard table at base `1/q`, so all matrix
//! checks on it run with `base = 1/q` (see [`RecurrenceTable::base`]).

mod factored;
mod initial;

use thiserror::Error;

use crate::exactfield::{Field, FieldError, Proj, Rational};
use crate::ratfunc::{Degree, RatFuncError};

pub use factored::{
    alpha_at, build_table, build_v, build_z, classify_degrees, sigma0_sq, sigma_at, t_value,
    z_at_q, Evaluator,
};
pub use initial::{
    alpha_from_initial, aux_constants, sigma_from_initial, tilde_coeffs, AuxConstants, GFunction,
    TildeCoeffs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// σ from `V`.
    A,
    /// σ from `V_a`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Standard,
    /// The q-reversed functions `Z*`, `V*`, `V_a*`.
    Starred,
}

impl Variant {
    pub fn toggled(self) -> Self {
        match self {
            Variant::Standard => Variant::Starred,
            Variant::Starred => Variant::Standard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// What to do when `Z(q^k) = 0` for some `k ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroMode {
    Strict,
    /// Record `finite_family_at = k` and stop the table there.
    Permissive,
}

/// Radicand available for `σ₀ = √(σ₀²)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Adjoin {
    None,
    Radicand(Rational),
    /// Use `σ₀²` itself when it is a rational non-square.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("q must not be 0, 1 or -1 (got {0})")]
    BadQ(String),
    #[error("q^{k} = 1: q is a root of unity")]
    RootOfUnity { k: usize },
    #[error("alpha1 must be nonzero")]
    ZeroAlpha1,
    #[error("branch B divides by y, which is zero")]
    BranchBNeedsY,
    #[error("Z(q) = 0: factor {factor} vanishes at x = q")]
    ZeroAtNormalization { factor: String },
    #[error("Z has a pole at x = q: factor {factor} vanishes there")]
    PoleAtNormalization { factor: String },
    #[error("V(1)=0: hypothesis V(1) != 0 fails")]
    VAtOneZero,
    #[error("V has a pole at x = 1")]
    VPoleAtOne,
    #[error("V has a pole at x = q^{k}")]
    VPole { k: usize },
    #[error("Z(q^{k}) = 0: hypothesis Z(q^k) != 0 fails (finite family; permissive mode truncates)")]
    ZeroAlpha { k: usize },
    #[error("Z has a pole at x = q^{k}")]
    PoleAlpha { k: usize },
    #[error("sigma0^2 = {value} has no square root in the current field; adjoin its radicand (e.g. --adjoin {value}) or pass --adjoin auto")]
    SqrtNotInField { value: String },
    #[error("sigma0 override is meaningless when sigma is identically zero")]
    OverrideWithZeroSigma,
    #[error("g({arg}) = 0 in the initial-data formulas")]
    DegenerateG { arg: i64 },
    #[error("c0 = c1 = 0 but sigma is not identically zero: g is undefined")]
    UndeterminedG,
    #[error("table too short: need index {needed}, have {have}")]
    TableTooShort { needed: usize, have: usize },
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Parameters of one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet<F> {
    pub q: F,
    pub y: F,
    pub d: [F; 3],
    pub alpha1: F,
    pub branch: Branch,
    pub variant: Variant,
    pub sigma0_sign: Sign,
    pub sigma0_override: Option<F>,
    pub adjoin: Adjoin,
    pub mode: ZeroMode,
}

impl<F: Field> ParamSet<F> {
    /// Branch A, standard variant, `σ₀` sign plus, strict mode.
    pub fn new(q: F, y: F, d: [F; 3], alpha1: F) -> Self {
        ParamSet {
            q,
            y,
            d,
            alpha1,
            branch: Branch::A,
            variant: Variant::Standard,
            sigma0_sign: Sign::Plus,
            sigma0_override: None,
            adjoin: Adjoin::None,
            mode: ZeroMode::Strict,
        }
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sigma0_sign = sign;
        self
    }

    pub fn with_adjoin(mut self, adjoin: Adjoin) -> Self {
        self.adjoin = adjoin;
        self
    }

    pub fn with_mode(mut self, mode: ZeroMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_override(mut self, sigma0: Option<F>) -> Self {
        self.sigma0_override = sigma0;
        self
    }

    /// Same parameters with `d` permuted by `perm`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut p = self.clone();
        p.d = perm.map(|i| self.d[i].clone());
        p
    }

    /// The base of the q-numbers in the matrix equation satisfied by the
    /// table: `q` for the standard variant, `1/q` for the starred one.
    pub fn base(&self) -> Result<F, CoeffError> {
        Ok(match self.variant {
            Variant::Standard => self.q.clone(),
            Variant::Starred => self.q.inv()?,
        })
    }

    /// Checks the construction-time invariants for tables up to `kmax`.
    pub fn validate(&self, kmax: usize) -> Result<(), CoeffError> {
        let q = &self.q;
        if q.is_zero() || q.is_one() || (q.clone() + &F::one()).is_zero() {
            return Err(CoeffError::BadQ(q.to_string()));
        }
        let mut qk = F::one();
        for k in 1..=2 * kmax + 4 {
            qk = qk * q;
            if qk.is_one() {
                return Err(CoeffError::RootOfUnity { k });
            }
        }
        if self.alpha1.is_zero() {
            return Err(CoeffError::ZeroAlpha1);
        }
        if self.branch == Branch::B && self.y.is_zero() {
            return Err(CoeffError::BranchBNeedsY);
        }
        Ok(())
    }
}

/// `[k] = (q^k - 1)/(q - 1)`, and `k` at `q = 1`.
pub fn q_number<F: Field>(k: i64, q: &F) -> Result<F, FieldError> {
    if q.is_one() {
        return Ok(F::from_i64(k));
    }
    let num = q.pow(k)? - &F::one();
    num.checked_div(&(q.clone() - &F::one()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymConstants<F> {
    pub k1: F,
    pub k2: F,
}

/// `k1 = y + d1d2 + d1d3 + d2d3`, `k2 = y(d1 + d2 + d3) + d1d2d3`.
pub fn sym_constants<F: Field>(p: &ParamSet<F>) -> SymConstants<F> {
    let [d1, d2, d3] = &p.d;
    let e2 = d1.clone() * d2 + &(d1.clone() * d3) + &(d2.clone() * d3);
    let e1 = d1.clone() + d2 + d3;
    let e3 = d1.clone() * d2 * d3;
    SymConstants {
        k1: p.y.clone() + &e2,
        k2: p.y.clone() * &e1 + &e3,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableFlags {
    pub sigma_identically_zero: bool,
    /// First `k` with `α_k = 0` (permissive mode only).
    pub finite_family_at: Option<usize>,
}

/// A finite prefix of the recurrence coefficients of one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable<F> {
    pub kmax: usize,
    /// `α_1, α_2, …`; `alpha[k-1] = α_k`.
    pub alpha: Vec<F>,
    /// `σ_0, σ_1, …`.
    pub sigma: Vec<F>,
    /// `β_0 = σ_0`, `β_k = σ_k - σ_{k-1}`.
    pub beta: Vec<F>,
    pub sigma0_sq: F,
    pub t: F,
    pub degree_pair: (Degree, Degree),
    pub flags: TableFlags,
    /// Base of the matrix equation the table satisfies.
    pub base: F,
    /// The `y` parameter, used by the initial-data route when `σ ≡ 0`.
    pub y_hint: Proj<F>,
    pub branch: Branch,
    pub variant: Variant,
}

impl<F: Field> RecurrenceTable<F> {
    /// `α_k` for `k ≥ 1`.
    pub fn alpha_k(&self, k: usize) -> Result<&F, CoeffError> {
        self.alpha.get(k.wrapping_sub(1)).ok_or(CoeffError::TableTooShort {
            needed: k,
            have: self.alpha.len(),
        })
    }

    pub fn sigma_k(&self, k: usize) -> Result<&F, CoeffError> {
        self.sigma.get(k).ok_or(CoeffError::TableTooShort {
            needed: k,
            have: self.sigma.len(),
        })
    }

    /// Number of usable rows: `α_1..α_n` and `β_0..β_n` all present.
    pub fn len(&self) -> usize {
        self.alpha.len().min(self.beta.len().saturating_sub(1))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entrywise image, e.g. specialization of a table over `F(v)`.
    pub fn try_map<G: Field, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
        y_hint: Proj<G>,
    ) -> Result<RecurrenceTable<G>, E> {
        let map_vec = |v: &[F]| v.iter().map(&f).collect::<Result<Vec<_>, _>>();
        Ok(RecurrenceTable {
            kmax: self.kmax,
            alpha: map_vec(&self.alpha)?,
            sigma: map_vec(&self.sigma)?,
            beta: map_vec(&self.beta)?,
            sigma0_sq: f(&self.sigma0_sq)?,
            t: f(&self.t)?,
            degree_pair: self.degree_pair,
            flags: self.flags.clone(),
            base: f(&self.base)?,
            y_hint,
            branch: self.branch,
            variant: self.variant,
        })
    }

    /// `β` from `σ`.
    pub(crate) fn betas(sigma: &[F]) -> Vec<F> {
        sigma
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k == 0 {
                    s.clone()
                } else {
                    s.clone() - &sigma[k - 1]
                }
            })
            .collect()
    }
}

/// q-reversal by switching between the standard and starred functions.
pub fn q_reverse<F: Field>(p: &ParamSet<F>) -> ParamSet<F> {
    let mut r = p.clone();
    r.variant = p.variant.toggled();
    r
}

/// q-reversal by the literal substitution `q → 1/q`.
pub fn q_reverse_literal<F: Field>(p: &ParamSet<F>) -> Result<ParamSet<F>, CoeffError> {
    let mut r = p.clone();
    r.q = p.q.inv()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_number(0, &r(2)).unwrap(), r(0));
        assert_eq!(q_number(3, &r(2)).unwrap(), r(7));
        assert_eq!(q_number(-1, &r(2)).unwrap(), rat(-1, 2));
        assert_eq!(q_number(5, &r(1)).unwrap(), r(5));
    }

    #[test]
    fn sym_constants_examples() {
        let p = ParamSet::new(r(4), r(1), [r(-1), r(2), r(-2)], r(1));
        let k = sym_constants(&p);
        assert_eq!((k.k1, k.k2), (r(-3), r(3)));
        let p = ParamSet::new(r(4), r(4), [r(2), r(-2), r(-1)], r(1));
        let k = sym_constants(&p);
        assert_eq!((k.k1, k.k2), (r(0), r(0)));
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(sym_constants(&p.permuted(perm)), sym_constants(&p));
        }
    }

    #[test]
    fn validation() {
        let ok = ParamSet::new(r(2), r(1), [r(1), r(2), r(3)], r(1));
        assert!(ok.validate(10).is_ok());
        for q in [0, 1, -1] {
            let mut p = ok.clone();
            p.q = r(q);
            assert!(matches!(p.validate(10), Err(CoeffError::BadQ(_))));
        }
        let mut p = ok.clone();
        p.alpha1 = r(0);
        assert_eq!(p.validate(10), Err(CoeffError::ZeroAlpha1));
        let mut p = ok.clone().with_branch(Branch::B);
        p.y = r(0);
        assert_eq!(p.validate(10), Err(CoeffError::BranchBNeedsY));
    }

    #[test]
    fn root_of_unity_in_extension() {
        use crate::exactfield::Quad;
        // (-1 + √-3)/2 is a primitive cube root of unity
        let w = Quad::new(rat(-1, 2), rat(1, 2), &r(-3));
        let p = ParamSet::new(w, Quad::one(), [Quad::one(), Quad::one(), Quad::one()], Quad::one());
        assert_eq!(p.validate(3), Err(CoeffError::RootOfUnity { k: 3 }));
    }
}

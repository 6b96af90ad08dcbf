//! Named families: the Askey-Wilson and q-Racah substitutions, the worked
//! examples as presets, and parameters on the projective line.

use thiserror::Error;

use crate::coeffs::{
    build_table, build_z, Adjoin, Branch, CoeffError, ParamSet, RecurrenceTable, Sign, Variant, ZeroMode,
};
use crate::exactfield::{Field, FieldError, FuncElement, Proj, Rational};
use crate::ratfunc::{specialize_projective, Degree, RatFuncError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown preset '{0}' (see `qhahn families --list`)")]
    UnknownPreset(String),
    #[error("preset '{preset}' needs q to be a square, got {q}")]
    NotASquare { preset: String, q: String },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("some d_j = 0: the Askey-Wilson parameters are not defined")]
    DjZero,
    #[error("sqrt({value}) is not in the field; try --adjoin {value}")]
    RootNotInField { value: String },
    #[error("{0} is infinite; use the projective evaluation")]
    InfiniteParameter(&'static str),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// `y = abcd/q²`, `d = (bc/q, cd/q, bd/q)`, starred variant.
pub fn askey_wilson<F: Field>(a: &F, b: &F, c: &F, d: &F, q: &F, alpha1: F) -> Result<ParamSet<F>, FamilyError> {
    let qi = q.inv()?;
    let y = a.clone() * b * c * d * &qi.square();
    let ds = [
        b.clone() * c * &qi,
        c.clone() * d * &qi,
        b.clone() * d * &qi,
    ];
    Ok(ParamSet::new(q.clone(), y, ds, alpha1).with_variant(Variant::Starred))
}

/// `(a, b, c, d)` from `y, d, q`, with canonical square roots.
pub fn askey_wilson_inverse<F: Field>(p: &ParamSet<F>, adjoin: Option<&Rational>) -> Result<[F; 4], FamilyError> {
    let [d1, d2, d3] = &p.d;
    if d1.is_zero() || d2.is_zero() || d3.is_zero() {
        return Err(FamilyError::DjZero);
    }
    let q = &p.q;
    let root = |x: F| {
        x.try_sqrt(adjoin)
            .ok_or_else(|| FamilyError::RootNotInField { value: x.to_string() })
    };
    let prod = d1.clone() * d2 * d3;
    let a = p.y.clone() * &root(q.checked_div(&prod)?)?;
    let b = root(q.clone() * d1 * d3 * &d2.inv()?)?;
    let c = root(q.clone() * d1 * d2 * &d3.inv()?)?;
    let d = root(q.clone() * d2 * d3 * &d1.inv()?)?;
    Ok([a, b, c, d])
}

/// `y = 1/(αβ)`, `d = (1/α, 1/γ, δ/α)`, standard variant.
pub fn q_racah<F: Field>(
    alpha: &F,
    beta: &F,
    gamma: &F,
    delta: &F,
    q: &F,
    alpha1: F,
) -> Result<ParamSet<F>, FamilyError> {
    let nz = |x: &F, name| {
        if x.is_zero() {
            Err(FamilyError::ZeroParameter(name))
        } else {
            Ok(())
        }
    };
    nz(alpha, "alpha")?;
    nz(beta, "beta")?;
    nz(gamma, "gamma")?;
    let ai = alpha.inv()?;
    let y = (alpha.clone() * beta).inv()?;
    let ds = [ai.clone(), gamma.inv()?, delta.clone() * &ai];
    Ok(ParamSet::new(q.clone(), y, ds, alpha1))
}

/// Monic Askey-Wilson recurrence in `x = cos θ`, coded from the standard
/// hypergeometric reference independently of the factored formulas:
/// `x p_n = p_{n+1} + ½(a + 1/a − A_n − C_n) p_n + ¼A_{n−1}C_n p_{n−1}`.
/// Returns `(α_1..α_nmax, β_0..β_nmax)`.
pub fn askey_wilson_reference<F: Field>(
    a: &F,
    b: &F,
    c: &F,
    d: &F,
    q: &F,
    nmax: usize,
) -> Result<(Vec<F>, Vec<F>), FieldError> {
    let one = F::one();
    let abcd = a.clone() * b * c * d;
    let qp = |n: i64| q.pow(n);
    let big_a = |n: i64| -> Result<F, FieldError> {
        let qn = qp(n)?;
        let num = (one.clone() - &(a.clone() * b * &qn))
            * &(one.clone() - &(a.clone() * c * &qn))
            * &(one.clone() - &(a.clone() * d * &qn))
            * &(one.clone() - &(abcd.clone() * &qp(n - 1)?));
        let den = a.clone()
            * &(one.clone() - &(abcd.clone() * &qp(2 * n - 1)?))
            * &(one.clone() - &(abcd.clone() * &qp(2 * n)?));
        num.checked_div(&den)
    };
    let big_c = |n: i64| -> Result<F, FieldError> {
        if n == 0 {
            return Ok(F::zero());
        }
        let qn1 = qp(n - 1)?;
        let num = a.clone()
            * &(one.clone() - &qp(n)?)
            * &(one.clone() - &(b.clone() * c * &qn1))
            * &(one.clone() - &(b.clone() * d * &qn1))
            * &(one.clone() - &(c.clone() * d * &qn1));
        let den = (one.clone() - &(abcd.clone() * &qp(2 * n - 2)?)) * &(one.clone() - &(abcd.clone() * &qp(2 * n - 1)?));
        num.checked_div(&den)
    };
    let half = F::from_rational(Rational::new(1.into(), 2.into()));
    let quarter = half.square();
    let a_plus = a.clone() + &a.inv()?;
    let mut alpha = Vec::with_capacity(nmax);
    let mut beta = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax as i64 {
        beta.push(half.clone() * &(a_plus.clone() - &big_a(n)? - &big_c(n)?));
        if n >= 1 {
            alpha.push(quarter.clone() * &big_a(n - 1)? * &big_c(n)?);
        }
    }
    Ok((alpha, beta))
}

/// Parameters with `y` and each `d_j` on the projective line.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveParams<F> {
    pub q: F,
    pub y: Proj<F>,
    pub d: [Proj<F>; 3],
    pub alpha1: F,
    pub branch: Branch,
    pub variant: Variant,
    pub sigma0_sign: Sign,
    pub sigma0_override: Option<F>,
    pub adjoin: Adjoin,
    pub mode: ZeroMode,
}

impl<F: Field> From<ParamSet<F>> for ProjectiveParams<F> {
    fn from(p: ParamSet<F>) -> Self {
        ProjectiveParams {
            q: p.q,
            y: Proj::Finite(p.y),
            d: p.d.map(Proj::Finite),
            alpha1: p.alpha1,
            branch: p.branch,
            variant: p.variant,
            sigma0_sign: p.sigma0_sign,
            sigma0_override: p.sigma0_override,
            adjoin: p.adjoin,
            mode: p.mode,
        }
    }
}

fn lift<F: Field>(x: &Proj<F>) -> Result<FuncElement<F>, FieldError> {
    match x {
        Proj::Finite(x) => Ok(FuncElement::constant(x.clone())),
        Proj::Infinity => FuncElement::var().inv(),
    }
}

impl<F: Field> ProjectiveParams<F> {
    pub fn is_finite(&self) -> bool {
        !self.y.is_infinite() && self.d.iter().all(|d| !d.is_infinite())
    }

    /// The plain parameter set when nothing is infinite.
    pub fn finite(&self) -> Result<ParamSet<F>, FamilyError> {
        let fin = |x: &Proj<F>, name| x.finite().cloned().ok_or(FamilyError::InfiniteParameter(name));
        Ok(ParamSet {
            q: self.q.clone(),
            y: fin(&self.y, "y")?,
            d: [fin(&self.d[0], "d1")?, fin(&self.d[1], "d2")?, fin(&self.d[2], "d3")?],
            alpha1: self.alpha1.clone(),
            branch: self.branch,
            variant: self.variant,
            sigma0_sign: self.sigma0_sign,
            sigma0_override: self.sigma0_override.clone(),
            adjoin: self.adjoin.clone(),
            mode: self.mode,
        })
    }

    /// Each infinite entry becomes `1/v` over `F(v)`.
    pub fn lifted(&self) -> Result<ParamSet<FuncElement<F>>, FamilyError> {
        Ok(ParamSet {
            q: FuncElement::constant(self.q.clone()),
            y: lift(&self.y)?,
            d: [lift(&self.d[0])?, lift(&self.d[1])?, lift(&self.d[2])?],
            alpha1: FuncElement::constant(self.alpha1.clone()),
            branch: self.branch,
            variant: self.variant,
            sigma0_sign: self.sigma0_sign,
            sigma0_override: self.sigma0_override.clone().map(FuncElement::constant),
            adjoin: self.adjoin.clone(),
            mode: self.mode,
        })
    }

    /// Builds the table, over `F(v)` and then at `v = 0` if any parameter is
    /// infinite. A pole at `v = 0` is an error.
    pub fn evaluate_table(&self, kmax: usize) -> Result<RecurrenceTable<F>, FamilyError> {
        if self.is_finite() {
            return Ok(build_table(&self.finite()?, kmax)?);
        }
        let lifted = self.lifted()?;
        let generic = build_table(&lifted, kmax)?;
        let y_hint = match &self.y {
            Proj::Finite(y) => Proj::Finite(y.clone()),
            Proj::Infinity => Proj::Infinity,
        };
        let mut table = generic.try_map(|x| x.specialize(&F::zero()), y_hint)?;
        table.degree_pair = self.degrees()?;
        Ok(table)
    }

    /// `deg(Z)` after dropping vanishing factors and removing the deformation.
    pub fn degrees(&self) -> Result<(Degree, Degree), FamilyError> {
        if self.is_finite() {
            return Ok(build_z(&self.finite()?)?.degrees());
        }
        Ok(specialize_projective(&build_z(&self.lifted()?)?)?.degrees())
    }

    /// Swaps the standard and starred functions.
    pub fn q_reversed(&self) -> Self {
        let mut p = self.clone();
        p.variant = p.variant.toggled();
        p
    }
}

/// A catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub template: &'static str,
    pub description: &'static str,
}

pub const CATALOG: &[PresetInfo] = &[
    PresetInfo {
        name: "constant",
        template: "y=1, d=(-1, r, -r), r^2=q",
        description: "constant sequences: alpha_k = alpha1, sigma0^2 = alpha1",
    },
    PresetInfo {
        name: "half-constant",
        template: "y=q, d=(r, -r, -1), r^2=q",
        description: "alpha_k = alpha1/2 for k >= 2, sigma identically zero",
    },
    PresetInfo {
        name: "sigma-zero-44",
        template: "y=1, d=(-1, 1, 1)",
        description: "y=1, d1=-1 family member with d2=d3=1; degrees (4,4), sigma identically zero",
    },
    PresetInfo {
        name: "y1-cube-zero",
        template: "y=1, d=(0, 0, 0)",
        description: "degrees (3,6), t=0, sigma0^2 = -[3]alpha1",
    },
    PresetInfo {
        name: "discrete-q-hermite",
        template: "starred, y=0, d=(inf, 0, 0)",
        description: "discrete q-Hermite: alpha_k = q^(k-1)[k]alpha1, beta identically zero",
    },
    PresetInfo {
        name: "y1-generic-66",
        template: "y=1, d=(5, 7, 11)",
        description: "generic y=1 member, degrees (6,6), possibly new",
    },
];

fn sqrt_of_q<F: Field>(name: &str, q: &F) -> Result<F, FamilyError> {
    q.try_sqrt(None).ok_or_else(|| FamilyError::NotASquare {
        preset: name.to_string(),
        q: q.to_string(),
    })
}

/// A catalog preset at `q` with scale `alpha1`.
pub fn preset<F: Field>(name: &str, q: &F, alpha1: F) -> Result<ProjectiveParams<F>, FamilyError> {
    let f = |n: i64| Proj::Finite(F::from_i64(n));
    let base = |y: Proj<F>, d: [Proj<F>; 3]| {
        let mut p: ProjectiveParams<F> = ParamSet::new(q.clone(), F::zero(), [F::zero(), F::zero(), F::zero()], alpha1.clone()).into();
        p.y = y;
        p.d = d;
        p
    };
    Ok(match name {
        "constant" => {
            let r = sqrt_of_q(name, q)?;
            base(f(1), [f(-1), Proj::Finite(r.clone()), Proj::Finite(-r)])
        }
        "half-constant" => {
            let r = sqrt_of_q(name, q)?;
            base(Proj::Finite(q.clone()), [Proj::Finite(r.clone()), Proj::Finite(-r), f(-1)])
        }
        "sigma-zero-44" => base(f(1), [f(-1), f(1), f(1)]),
        "y1-cube-zero" => base(f(1), [f(0), f(0), f(0)]),
        "discrete-q-hermite" => {
            let mut p = base(f(0), [Proj::Infinity, f(0), f(0)]);
            p.variant = Variant::Starred;
            p
        }
        "y1-generic-66" => base(f(1), [f(5), f(7), f(11)]),
        other => return Err(FamilyError::UnknownPreset(other.to_string())),
    })
}

/// Catalog presets whose degree pair equals `deg`.
pub fn catalog_matches(deg: (Degree, Degree)) -> Vec<&'static str> {
    let (n, m) = deg;
    let is = |a: usize, b: usize| n == Degree::Finite(a) && m == Degree::Finite(b);
    let mut out = Vec::new();
    if is(8, 8) {
        out.extend(["askey-wilson", "q-racah"]);
    }
    if is(0, 0) {
        out.extend(["constant", "half-constant"]);
    }
    if is(3, 6) {
        out.push("y1-cube-zero");
    }
    if is(2, 0) {
        out.push("discrete-q-hermite");
    }
    out
}

/// Shapes the classification reports as possibly new.
pub fn possibly_new(deg: (Degree, Degree)) -> bool {
    matches!(
        deg,
        (Degree::Finite(6), Degree::Finite(6)) | (Degree::Finite(4), Degree::Finite(4))
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::q_number;
    use crate::exactfield::{rat, Quad};
    use crate::qmatrix::{gram_check, hahn_transform_check, table_residual};

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn aw() -> ParamSet<Rational> {
        askey_wilson(&r(1), &r(2), &r(3), &r(4), &r(2), r(1)).unwrap()
    }

    #[test]
    fn askey_wilson_forward_and_inverse() {
        let p = aw();
        assert_eq!(p.y, r(6));
        assert_eq!(p.d, [r(3), r(6), r(4)]);
        assert_eq!(p.variant, Variant::Starred);
        assert_eq!(askey_wilson_inverse(&p, None).unwrap(), [r(1), r(2), r(3), r(4)]);
        let deg = build_z(&p).unwrap().degrees();
        assert_eq!(deg, (Degree::Finite(8), Degree::Finite(8)));
    }

    #[test]
    fn askey_wilson_inverse_errors() {
        let mut p = aw();
        p.d[1] = r(0);
        assert_eq!(askey_wilson_inverse(&p, None), Err(FamilyError::DjZero));
        let p = ParamSet::new(r(2), r(1), [r(1), r(1), r(1)], r(1));
        assert!(matches!(
            askey_wilson_inverse(&p, None),
            Err(FamilyError::RootNotInField { .. })
        ));
    }

    #[test]
    fn askey_wilson_matches_reference() {
        let (ra, rb) = askey_wilson_reference(&r(1), &r(2), &r(3), &r(4), &r(2), 6).unwrap();
        assert_eq!(rb[0], rat(20, 23));
        let mut p = aw();
        p.alpha1 = ra[0].clone();
        let t = build_table(&p, 6).unwrap();
        assert_eq!(t.sigma0_sq, rat(400, 529));
        assert_eq!(&t.alpha[..6], &ra[..]);
        assert_eq!(&t.beta[..7], &rb[..]);
    }

    #[test]
    fn q_racah_substitution() {
        let p = q_racah(&rat(1, 2), &rat(1, 3), &rat(1, 4), &rat(1, 5), &r(2), r(1)).unwrap();
        assert_eq!(p.y, r(6));
        assert_eq!(p.d, [r(2), r(4), rat(2, 5)]);
        assert_eq!(build_z(&p).unwrap().degrees(), (Degree::Finite(8), Degree::Finite(8)));
        assert_eq!(
            q_racah(&r(0), &r(1), &r(1), &r(1), &r(2), r(1)),
            Err(FamilyError::ZeroParameter("alpha"))
        );
    }

    #[test]
    fn constant_preset() {
        let p = preset("constant", &r(4), r(1)).unwrap();
        let t = p.evaluate_table(6).unwrap();
        assert!(t.alpha.iter().all(|a| *a == r(1)));
        assert_eq!(t.sigma0_sq, r(1));
        assert_eq!(t.t, rat(-9, 4));
        assert_eq!(t.beta[0], r(1));
        assert!(t.beta[1..].iter().all(|b| b.is_zero()));
        assert!(matches!(
            preset("constant", &r(2), r(1)),
            Err(FamilyError::NotASquare { .. })
        ));
        assert!(matches!(preset("nope", &r(2), r(1)), Err(FamilyError::UnknownPreset(_))));
    }

    #[test]
    fn discrete_q_hermite() {
        let q = r(2);
        let p = preset("discrete-q-hermite", &q, r(1)).unwrap();
        let t = p.evaluate_table(14).unwrap();
        for k in 1..=10 {
            let expected = Field::pow(&q, k as i64 - 1).unwrap() * &q_number(k as i64, &q).unwrap();
            assert_eq!(t.alpha[k - 1], expected, "k = {k}");
        }
        assert_eq!(t.alpha[1], r(6));
        assert_eq!(t.alpha[2], r(28));
        assert!(t.beta.iter().all(|b| b.is_zero()));
        assert!(t.t.is_zero());
        assert_eq!(t.degree_pair, (Degree::Finite(2), Degree::Finite(0)));
        assert!(table_residual(&t, 8).unwrap().is_zero_on_valid());
        assert!(gram_check(&t, 6).unwrap().passed());
        assert!(hahn_transform_check(&t, &t.base, 8).unwrap().passed());
    }

    #[test]
    fn y1_cube_zero_over_extension() {
        let p = preset("y1-cube-zero", &Quad::from_i64(2), Quad::one()).unwrap();
        let mut fp = p.finite().unwrap();
        fp.adjoin = Adjoin::Auto;
        let t = build_table(&fp, 4).unwrap();
        assert_eq!(t.sigma0_sq, Quad::from_i64(-7));
        assert!(t.t.is_zero());
        assert_eq!(p.degrees().unwrap(), (Degree::Finite(3), Degree::Finite(6)));
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(CATALOG.len(), 6);
        for info in CATALOG {
            assert!(preset(info.name, &r(4), r(1)).is_ok(), "{}", info.name);
        }
        assert!(possibly_new((Degree::Finite(6), Degree::Finite(6))));
        assert!(catalog_matches((Degree::Finite(8), Degree::Finite(8))).contains(&"q-racah"));
    }
}

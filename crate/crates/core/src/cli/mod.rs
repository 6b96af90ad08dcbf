//! The `qhahn` command line. Exit codes: 0 verified, 1 a check failed,
//! 2 invalid input.

mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coeffs::{build_v, build_z, Adjoin, Branch, RecurrenceTable, Sign, Variant, ZeroMode};
use crate::exactfield::{parse_rational, Field, Proj, Quad, Rational};
use crate::families::{
    askey_wilson, catalog_matches, possibly_new, preset, q_racah, FamilyError, ProjectiveParams, CATALOG,
};
use crate::qmatrix::{recurrence_polys, verify_table, CheckReport, QMatrixError};
use crate::ratfunc::{specialize_projective, Degree, RatFunc};

use render::{Doc, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qhahn", version, about = "Exact recurrence coefficients of the extended q-Hahn class")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of alpha_k, beta_k, sigma_k with sigma0^2, t and the degree pair.
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        /// Also print the reduced Z and V.
        #[arg(long)]
        show_zv: bool,
    },
    /// Quadratic residual, orthogonality and (for t = 0) the derivative transform.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Replace t before checking.
        #[arg(long, allow_hyphen_values = true)]
        t_override: Option<String>,
    },
    /// Degree pair of Z and the catalog families with that shape.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monomial coefficients of p_0..p_kmax.
    Poly {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
    },
    /// A table next to its q-reversal.
    Reverse {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// The preset catalog.
    Families {
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Standard,
    Starred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Permissive,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Catalog preset (see `families --list`); alpha1 defaults to 1.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// y, or "inf".
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// d1,d2,d3; entries may be "inf".
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha1: Option<String>,
    /// Askey-Wilson parameters a,b,c,d.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["preset", "y", "d", "racah"])]
    aw: Option<String>,
    /// q-Racah parameters alpha,beta,gamma,delta.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["preset", "y", "d"])]
    racah: Option<String>,
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
    /// Override sigma0.
    #[arg(long, allow_hyphen_values = true)]
    sigma0: Option<String>,
    /// Radicand of the quadratic extension, or "auto" to adjoin sqrt(sigma0^2).
    #[arg(long, allow_hyphen_values = true)]
    adjoin: Option<String>,
    #[arg(long, value_enum, env = "QHAHN_MODE")]
    mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Add decimal renderings with this many digits next to the exact values.
    #[arg(long)]
    decimals: Option<usize>,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        invalid(e)
    }
}

impl From<QMatrixError> for Failure {
    fn from(e: QMatrixError) -> Self {
        invalid(e)
    }
}

impl From<crate::coeffs::CoeffError> for Failure {
    fn from(e: crate::coeffs::CoeffError) -> Self {
        invalid(e)
    }
}

impl From<crate::exactfield::FieldError> for Failure {
    fn from(e: crate::exactfield::FieldError) -> Self {
        invalid(e)
    }
}

impl From<crate::ratfunc::RatFuncError> for Failure {
    fn from(e: crate::ratfunc::RatFuncError) -> Self {
        invalid(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let (doc, code, format) = match cmd {
        Command::Coeffs {
            params,
            out: o,
            kmax,
            show_zv,
        } => {
            let p = resolve(&params)?;
            (coeffs_doc(&p, kmax, show_zv, o.decimals)?, EXIT_OK, o.format)
        }
        Command::Verify {
            params,
            out: o,
            order,
            t_override,
        } => {
            let p = resolve(&params)?;
            let radicand = adjoin_radicand(&params)?;
            let (doc, code) = verify_doc(&p, order, t_override.as_deref(), radicand.as_ref(), o.decimals)?;
            (doc, code, o.format)
        }
        Command::Classify { params, out: o } => {
            let p = resolve(&params)?;
            (classify_doc(&p)?, EXIT_OK, o.format)
        }
        Command::Poly { params, out: o, kmax } => {
            let p = resolve(&params)?;
            (poly_doc(&p, kmax, o.decimals)?, EXIT_OK, o.format)
        }
        Command::Reverse { params, out: o, kmax } => {
            let p = resolve(&params)?;
            (reverse_doc(&p, kmax, o.decimals)?, EXIT_OK, o.format)
        }
        Command::Families { list } => {
            if !list {
                return Err(invalid("families: pass --list"));
            }
            (families_doc(), EXIT_OK, Format::Table)
        }
    };
    let text = doc.render(format).map_err(invalid)?;
    write!(out, "{text}").map_err(invalid)?;
    Ok(code)
}

fn adjoin_radicand(a: &ParamArgs) -> Result<Option<Rational>, Failure> {
    match a.adjoin.as_deref() {
        None | Some("auto") => Ok(None),
        Some(s) => Ok(Some(parse_rational(s).map_err(invalid)?)),
    }
}

fn parse_list(s: &str, n: usize, name: &str, adj: Option<&Rational>) -> Result<Vec<Proj<Quad>>, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(invalid(format!("--{name} expects {n} comma-separated values, got '{s}'")));
    }
    parts
        .iter()
        .map(|p| Proj::parse_with(p, adj).map_err(invalid))
        .collect()
}

fn finite_only(x: Proj<Quad>, name: &str) -> Result<Quad, Failure> {
    match x {
        Proj::Finite(x) => Ok(x),
        Proj::Infinity => Err(invalid(format!("{name} cannot be inf"))),
    }
}

/// Builds the parameter set from flags, presets or family substitutions.
fn resolve(a: &ParamArgs) -> Result<ProjectiveParams<Quad>, Failure> {
    let radicand = adjoin_radicand(a)?;
    let adj = radicand.as_ref();
    let scalar = |s: &str, name: &str| Quad::parse_with(s, adj).map_err(|e| invalid(format!("--{name}: {e}")));
    let q = match &a.q {
        Some(q) => scalar(q, "q")?,
        None => return Err(invalid("--q is required")),
    };
    let alpha1 = match (&a.alpha1, &a.preset) {
        (Some(s), _) => scalar(s, "alpha1")?,
        (None, Some(_)) => Quad::one(),
        (None, None) => return Err(invalid("--alpha1 is required unless --preset is given")),
    };
    let mut p: ProjectiveParams<Quad> = if let Some(name) = &a.preset {
        preset(name, &q, alpha1)?
    } else if let Some(s) = &a.aw {
        let v = parse_list(s, 4, "aw", adj)?
            .into_iter()
            .map(|x| finite_only(x, "Askey-Wilson parameter"))
            .collect::<Result<Vec<_>, _>>()?;
        askey_wilson(&v[0], &v[1], &v[2], &v[3], &q, alpha1)?.into()
    } else if let Some(s) = &a.racah {
        let v = parse_list(s, 4, "racah", adj)?
            .into_iter()
            .map(|x| finite_only(x, "q-Racah parameter"))
            .collect::<Result<Vec<_>, _>>()?;
        q_racah(&v[0], &v[1], &v[2], &v[3], &q, alpha1)?.into()
    } else {
        let y = match &a.y {
            Some(s) => Proj::parse_with(s, adj).map_err(|e| invalid(format!("--y: {e}")))?,
            None => return Err(invalid("--y is required (or use --preset, --aw, --racah)")),
        };
        let d = match &a.d {
            Some(s) => parse_list(s, 3, "d", adj)?,
            None => return Err(invalid("--d is required (or use --preset, --aw, --racah)")),
        };
        let mut p: ProjectiveParams<Quad> =
            crate::coeffs::ParamSet::new(q, Quad::zero(), [Quad::zero(), Quad::zero(), Quad::zero()], alpha1).into();
        p.y = y;
        p.d = [d[0].clone(), d[1].clone(), d[2].clone()];
        p
    };
    if let Some(b) = a.branch {
        p.branch = match b {
            BranchArg::A => Branch::A,
            BranchArg::B => Branch::B,
        };
    }
    if let Some(v) = a.variant {
        p.variant = match v {
            VariantArg::Standard => Variant::Standard,
            VariantArg::Starred => Variant::Starred,
        };
    }
    if let Some(s) = a.sign {
        p.sigma0_sign = match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        };
    }
    if let Some(s) = &a.sigma0 {
        p.sigma0_override = Some(scalar(s, "sigma0")?);
    }
    p.adjoin = match (a.adjoin.as_deref(), radicand) {
        (Some("auto"), _) => Adjoin::Auto,
        (_, Some(r)) => Adjoin::Radicand(r),
        _ => Adjoin::None,
    };
    if let Some(m) = a.mode {
        p.mode = match m {
            ModeArg::Strict => ZeroMode::Strict,
            ModeArg::Permissive => ZeroMode::Permissive,
        };
    }
    Ok(p)
}

fn degrees_text(d: (Degree, Degree)) -> String {
    format!("({},{})", d.0, d.1)
}

fn variant_text(v: Variant) -> &'static str {
    match v {
        Variant::Standard => "standard",
        Variant::Starred => "starred",
    }
}

fn branch_text(b: Branch) -> &'static str {
    match b {
        Branch::A => "A",
        Branch::B => "B",
    }
}

fn table_header(doc: &mut Doc, t: &RecurrenceTable<Quad>, decimals: Option<usize>) {
    doc.header("variant", variant_text(t.variant));
    doc.header("branch", branch_text(t.branch));
    doc.exact_header("sigma0_sq", &t.sigma0_sq, decimals);
    if let Some(s0) = t.sigma.first() {
        doc.exact_header("sigma0", s0, decimals);
    }
    doc.exact_header("t", &t.t, decimals);
    doc.header("degrees", &degrees_text(t.degree_pair));
    doc.header("sigma_identically_zero", &t.flags.sigma_identically_zero.to_string());
    if let Some(k) = t.flags.finite_family_at {
        doc.header("finite_family_at", &k.to_string());
    }
}

fn ratfunc_text(f: &RatFunc<Quad>) -> String {
    let num = f.num().to_pretty("x");
    let den = f.den().to_pretty("x");
    if den == "1" {
        num
    } else {
        format!("({num})/({den})")
    }
}

fn zv_texts(p: &ProjectiveParams<Quad>) -> Result<(String, String), Failure> {
    if p.is_finite() {
        let f = p.finite()?;
        return Ok((ratfunc_text(&build_z(&f)?), ratfunc_text(&build_v(&f)?)));
    }
    let l = p.lifted()?;
    Ok((
        ratfunc_text(&specialize_projective(&build_z(&l)?)?),
        ratfunc_text(&specialize_projective(&build_v(&l)?)?),
    ))
}

fn coeffs_doc(p: &ProjectiveParams<Quad>, kmax: usize, show_zv: bool, decimals: Option<usize>) -> Result<Doc, Failure> {
    let t = p.evaluate_table(kmax)?;
    let mut doc = Doc::new(&["k", "alpha", "beta", "sigma"], decimals);
    table_header(&mut doc, &t, decimals);
    if show_zv {
        let (z, v) = zv_texts(p)?;
        doc.header("Z", &z);
        doc.header("V", &v);
    }
    for k in 1..=t.alpha.len() {
        doc.row(
            &k.to_string(),
            &[Some(&t.alpha[k - 1]), t.beta.get(k), t.sigma.get(k)],
        );
    }
    Ok(doc)
}

fn check_text(r: &CheckReport<Quad>, zero_word: &str) -> String {
    match &r.first_failure {
        None => zero_word.to_string(),
        Some(d) => format!(
            "nonzero at ({},{}): expected {}, got {}",
            d.j, d.k, d.expected, d.got
        ),
    }
}

fn verify_doc(
    p: &ProjectiveParams<Quad>,
    order: usize,
    t_override: Option<&str>,
    adj: Option<&Rational>,
    decimals: Option<usize>,
) -> Result<(Doc, i32), Failure> {
    let mut t = p.evaluate_table(order + 5)?;
    if let Some(s) = t_override {
        t.t = Quad::parse_with(s, adj).map_err(|e| invalid(format!("--t-override: {e}")))?;
    }
    let report = verify_table(&t, order, order)?;
    let mut doc = Doc::new(&["check", "order", "result"], decimals);
    table_header(&mut doc, &t, decimals);
    let n = order.to_string();
    let residual = check_text(&report.residual, "0");
    let gram = check_text(&report.gram, "diagonal");
    let hahn = match &report.hahn {
        Some(h) => check_text(h, "0"),
        None => "skipped (t != 0)".to_string(),
    };
    doc.text_row(&["quadratic residual", &n, &residual]);
    doc.text_row(&["gram", &n, &gram]);
    doc.text_row(&["hahn transform", &n, &hahn]);
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    doc.header("exit", &code.to_string());
    doc.summary = Some(format!(
        "quadratic residual: {residual}; gram: {gram}; hahn transform: {hahn}; exit {code}"
    ));
    Ok((doc, code))
}

fn classify_doc(p: &ProjectiveParams<Quad>) -> Result<Doc, Failure> {
    let deg = p.degrees()?;
    let matches = catalog_matches(deg);
    let verdict = if !matches.is_empty() {
        format!("{}, matches {}", degrees_text(deg), matches.join(", "))
    } else if possibly_new(deg) {
        format!("{}, not in catalog (possibly new)", degrees_text(deg))
    } else {
        format!("{}, not in catalog", degrees_text(deg))
    };
    let mut doc = Doc::new(&[], None);
    doc.header("degrees", &degrees_text(deg));
    doc.header("verdict", &verdict);
    doc.summary = Some(verdict);
    Ok(doc)
}

fn poly_doc(p: &ProjectiveParams<Quad>, kmax: usize, decimals: Option<usize>) -> Result<Doc, Failure> {
    if kmax < 1 {
        return Err(invalid("--kmax must be at least 1"));
    }
    let t = p.evaluate_table(kmax)?;
    let polys = recurrence_polys(&t.alpha, &t.beta, kmax)?;
    let mut doc = Doc::new(&["k", "poly", "coeffs"], decimals);
    table_header(&mut doc, &t, decimals);
    for (k, poly) in polys.rows.iter().enumerate() {
        doc.poly_row(k, &poly.to_pretty("x"), poly.coeffs());
    }
    Ok(doc)
}

fn reverse_doc(p: &ProjectiveParams<Quad>, kmax: usize, decimals: Option<usize>) -> Result<Doc, Failure> {
    let t = p.evaluate_table(kmax)?;
    let r = p.q_reversed().evaluate_table(kmax)?;
    let mut doc = Doc::new(
        &["k", "alpha", "alpha_rev", "alpha_equal", "sigma", "sigma_rev"],
        decimals,
    );
    doc.header("variant", variant_text(t.variant));
    doc.header("variant_rev", variant_text(r.variant));
    doc.exact_header("t", &t.t, decimals);
    doc.exact_header("t_rev", &r.t, decimals);
    doc.exact_header("sigma0_sq", &t.sigma0_sq, decimals);
    doc.exact_header("sigma0_sq_rev", &r.sigma0_sq, decimals);
    let n = t.alpha.len().min(r.alpha.len());
    let all_equal = t.alpha[..n] == r.alpha[..n];
    doc.header("alpha_invariant", &all_equal.to_string());
    for k in 0..=n {
        let (a, ar) = if k == 0 {
            (None, None)
        } else {
            (Some(&t.alpha[k - 1]), Some(&r.alpha[k - 1]))
        };
        let eq = match (a, ar) {
            (Some(x), Some(y)) => (x == y).to_string(),
            _ => String::new(),
        };
        doc.mixed_row(&k.to_string(), &[a, ar], &eq, &[t.sigma.get(k), r.sigma.get(k)]);
    }
    Ok(doc)
}

fn families_doc() -> Doc {
    let mut doc = Doc::new(&["name", "parameters", "description"], None);
    for info in CATALOG {
        doc.text_row(&[info.name, info.template, info.description]);
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qhahn"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn missing_alpha1_is_usage_error() {
        let (code, _, err) = run_str(&["coeffs", "--q", "4", "--y", "1", "--d", "-1,2,-2"]);
        assert_eq!(code, 2);
        assert!(err.contains("alpha1"));
    }

    #[test]
    fn classify_generic_y1() {
        let (code, out, _) = run_str(&["classify", "--q", "2", "--y", "1", "--d", "5,7,11", "--alpha1", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("(6,6), not in catalog (possibly new)"), "{out}");
    }

    #[test]
    fn families_list() {
        let (code, out, _) = run_str(&["families", "--list"]);
        assert_eq!(code, 0);
        for info in CATALOG {
            assert!(out.contains(info.name));
        }
    }
}

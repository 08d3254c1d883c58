//! End-to-end pipelines and the named check suites run by `mcat check`.

pub mod oracle;
pub mod random;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::freemon::{
    enumerate_paths, hom_span_quotient, ideal_subspace, tensor_framed_subspace, whisker_left, whisker_right, Morphism,
    PathBasis, SpanMode,
};
use crate::linearize::{end_algebra, linearize, AlgebraPresentation, LinearizeError};
use crate::ncalg::{
    check_homomorphism, complete, GroebnerState, HomomorphismVerdict, NCPolynomial, NcAlgError, QuotientDim,
    ReferenceAlgebra, ReferenceError,
};
use crate::par::Exec;
use crate::presentation::{
    builtin, parse_presentation, BuiltinParams, FrobeniusAlgebraData, MonoidalPresentation, ObjectWord,
    PresentationError,
};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Linearize(#[from] LinearizeError),
    #[error(transparent)]
    NcAlg(#[from] NcAlgError),
    #[error(transparent)]
    Reference(#[from] ReferenceError),
    #[error("unknown suite '{0}'; expected one of {1}")]
    UnknownSuite(String, String),
}

/// Degree budget for `End(object)`: twice the number of strands times the
/// longest relation.
pub fn default_max_degree(alg: &AlgebraPresentation) -> usize {
    (2 * alg.object.len() * alg.max_relation_degree()).max(1)
}

/// `End(object)` presented and completed.
pub struct EndAlgebra {
    pub algebra: AlgebraPresentation,
    pub state: GroebnerState,
    pub max_degree: usize,
}

impl EndAlgebra {
    pub fn quotient_dim(&self) -> QuotientDim {
        self.state.quotient_dim()
    }

    pub fn generator(&self, name: &str) -> Option<NCPolynomial> {
        let g = self.algebra.generator_index(name)?;
        Some(NCPolynomial::monomial(self.algebra.field, vec![g]))
    }
}

pub fn end_algebra_completed(
    p: &MonoidalPresentation,
    object: &ObjectWord,
    max_degree: Option<usize>,
    exec: Exec,
) -> Result<EndAlgebra, SuiteError> {
    let algebra = end_algebra(p, object)?;
    let max_degree = max_degree.unwrap_or_else(|| default_max_degree(&algebra));
    let state = complete(algebra.field, &algebra.polynomials(), &algebra.default_order(), max_degree, exec)?;
    Ok(EndAlgebra { algebra, state, max_degree })
}

/// Builtin with the group algebra of `Z/2` where one is needed.
pub fn load_builtin(name: &str) -> Result<MonoidalPresentation, SuiteError> {
    let params = BuiltinParams { algebra: Some(FrobeniusAlgebraData::cyclic_group(2)) };
    Ok(builtin(name, &params)?)
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cases: usize,
    pub exec: Exec,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, cases: 1000, exec: Exec::default() }
    }
}

pub const SUITES: [&str; 6] = ["core", "iso", "graded", "span", "interchange", "all"];

type Check = (&'static str, String, Box<dyn Fn(&SuiteOptions) -> Result<(bool, String), SuiteError> + Send + Sync>);

fn checks(suite: &str) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    let want = |s: &str| suite == s || suite == "all";
    if want("core") {
        for d in 1..=4 {
            out.push((
                "core",
                format!("symmetric d={d}"),
                Box::new(move |o| dim_check("symmetric", d, oracle::symmetric_dim(d), o)),
            ));
        }
        for d in 2..=3 {
            out.push((
                "core",
                format!("hecke d={d}"),
                Box::new(move |o| dim_check("hecke", d, oracle::symmetric_dim(d), o)),
            ));
        }
        for d in 1..=3 {
            out.push((
                "core",
                format!("wreath Z2 d={d}"),
                Box::new(move |o| dim_check("wreath", d, oracle::wreath_dim(2, d), o)),
            ));
        }
    }
    if want("iso") {
        for d in 3..=4 {
            out.push((
                "iso",
                format!("symmetric d={d} vs S{d}"),
                Box::new(move |o| iso_check("symmetric", d, &ReferenceAlgebra::symmetric_group(d), o)),
            ));
        }
        out.push((
            "iso",
            "wreath Z2 d=2 vs Z2^2 x| S2".into(),
            Box::new(|o| {
                iso_check("wreath", 2, &ReferenceAlgebra::wreath(&FrobeniusAlgebraData::cyclic_group(2), 2), o)
            }),
        ));
        out.push((
            "iso",
            "wrong image is rejected".into(),
            Box::new(|o| {
                let p = load_builtin("symmetric")?;
                let e = end_algebra_completed(&p, &ObjectWord::power(0, 2), None, o.exec)?;
                let t = ReferenceAlgebra::symmetric_group(2);
                let doubled = t.one().into_iter().map(|(k, c)| (k, &c + &c)).collect();
                let v = check_homomorphism(
                    &e.algebra.generator_names(),
                    &e.algebra.labelled(&p),
                    &t.with_image("s[0]", doubled),
                )?;
                let named = v.violation.as_ref().map(|x| x.relation.clone()).unwrap_or_default();
                Ok((!v.well_defined, format!("violated: {named}")))
            }),
        ));
    }
    if want("graded") {
        out.push((
            "graded",
            "daha d=2 L<=6".into(),
            Box::new(|o| graded_check("daha", 2, 6, &oracle::degenerate_affine_counts(2, 6), o)),
        ));
        out.push((
            "graded",
            "affine-wreath Z2 d=2 L<=4".into(),
            Box::new(|o| graded_check("affine-wreath", 2, 4, &oracle::affine_wreath_counts(2, 2, 4), o)),
        ));
        out.push((
            "graded",
            "braid d=2 L<=6".into(),
            Box::new(|o| graded_check("braid", 2, 6, &oracle::laurent_counts(6), o)),
        ));
        for d in 2..=3 {
            out.push(("graded", format!("braid inverses d={d}"), Box::new(move |o| braid_inverse_check(d, o))));
        }
    }
    if want("span") {
        out.push((
            "span",
            "tensor framing = whiskered relations, hom(a a, a a), length <= 4".into(),
            Box::new(|o| span_check(2, 4, 2, o)),
        ));
        out.push((
            "span",
            "linear presentation spans the tensor ideal, a a a, length <= 4".into(),
            Box::new(|o| linear_span_check(3, 4, o)),
        ));
    }
    if want("interchange") {
        out.push(("interchange", "random property cases".into(), Box::new(interchange_check)));
    }
    out
}

/// Runs a suite. Checks run one at a time, in a fixed order, each using
/// `options.exec` internally.
pub fn run_suite(suite: &str, options: &SuiteOptions) -> Result<Vec<CheckResult>, SuiteError> {
    if !SUITES.contains(&suite) {
        return Err(SuiteError::UnknownSuite(suite.into(), SUITES.join(", ")));
    }
    let list = checks(suite);
    let results = Exec::Sequential.map(&list, |(s, name, f)| {
        let start = Instant::now();
        let (passed, detail) = match f(options) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult { suite: s.to_string(), name: name.clone(), passed, detail, millis: start.elapsed().as_millis() }
    });
    Ok(results)
}

fn dim_check(name: &str, d: usize, expected: u128, o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let p = load_builtin(name)?;
    let e = end_algebra_completed(&p, &ObjectWord::power(0, d), None, o.exec)?;
    let q = e.quotient_dim();
    let got = q.dimension.map_or("not finite within bound".to_string(), |n| n.to_string());
    Ok((q.dimension == Some(expected), format!("dim {got}, expected {expected}, D={}", e.max_degree)))
}

/// Well-defined surjection onto an algebra of the presented dimension.
pub fn iso_verdict(
    p: &MonoidalPresentation,
    d: usize,
    target: &ReferenceAlgebra,
    exec: Exec,
) -> Result<(HomomorphismVerdict, Option<u128>), SuiteError> {
    let e = end_algebra_completed(p, &ObjectWord::power(0, d), None, exec)?;
    let v = check_homomorphism(&e.algebra.generator_names(), &e.algebra.labelled(p), target)?;
    Ok((v, e.quotient_dim().dimension))
}

fn iso_check(name: &str, d: usize, target: &ReferenceAlgebra, o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let p = load_builtin(name)?;
    let (v, dim) = iso_verdict(&p, d, target, o.exec)?;
    let ok = v.isomorphism_with(dim);
    Ok((
        ok,
        format!(
            "well-defined {}, image {}/{}, presented dim {}",
            v.well_defined,
            v.image_dim,
            v.target_dim,
            dim.map_or("?".into(), |n| n.to_string())
        ),
    ))
}

fn graded_check(
    name: &str,
    d: usize,
    l: usize,
    expected: &[u128],
    o: &SuiteOptions,
) -> Result<(bool, String), SuiteError> {
    let p = load_builtin(name)?;
    let e = end_algebra_completed(&p, &ObjectWord::power(0, d), Some(l), o.exec)?;
    let got = oracle::cumulative(&e.state.normal_word_counts()[..=l]);
    let want = oracle::cumulative(expected);
    Ok((got == want, format!("cumulative {got:?}, expected {want:?}")))
}

fn braid_inverse_check(d: usize, o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let p = load_builtin("braid")?;
    let e = end_algebra_completed(&p, &ObjectWord::power(0, d), Some(6), o.exec)?;
    let one = NCPolynomial::one(e.algebra.field);
    let mut ok = true;
    for k in 0..d - 1 {
        let s = e.generator(&format!("s[{k}]")).expect("crossing generator");
        let t = e.generator(&format!("s_inv[{k}]")).expect("inverse generator");
        ok &= e.state.quotient_mul(&s, &t)? == one && e.state.quotient_mul(&t, &s)? == one;
    }
    Ok((ok, format!("{} crossing pairs", d - 1)))
}

/// Tensor-framed and whiskered spans inside `End(a^d)` truncated at `len`.
pub fn span_subspaces(
    d: usize,
    len: usize,
    framing: usize,
    exec: Exec,
) -> Result<(crate::linalg::Subspace, crate::linalg::Subspace, usize), SuiteError> {
    let p = load_builtin("symmetric")?;
    let x = ObjectWord::power(0, d);
    let basis = PathBasis::new(SpanMode::Normalized, enumerate_paths(&p, &x, Some(&x), len, SpanMode::Normalized));
    let rels: Vec<Morphism> = p
        .relations()
        .iter()
        .map(|r| Morphism::from_expr(&p, &r.expr))
        .collect::<Result<_, _>>()
        .map_err(LinearizeError::from)?;
    let (framed, _) = tensor_framed_subspace(&p, &basis, &x, &x, &rels, len, framing, d, exec);
    let mut whiskered = Vec::new();
    for r in &rels {
        let Some(room) = d.checked_sub(r.domain().len()) else { continue };
        for a in 0..=room {
            whiskered.push(whisker_right(&whisker_left(&ObjectWord::power(0, a), r), &ObjectWord::power(0, room - a)));
        }
    }
    let (plain, _) = ideal_subspace(&p, &basis, &x, &x, &whiskered, len, framing, exec);
    Ok((framed, plain, basis.len()))
}

fn span_check(d: usize, len: usize, framing: usize, o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let (framed, plain, paths) = span_subspaces(d, len, framing, o.exec)?;
    Ok((framed == plain, format!("{paths} paths, framed rank {}, whiskered rank {}", framed.dim(), plain.dim())))
}

fn linear_span_check(d: usize, len: usize, o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let p = load_builtin("symmetric")?;
    let x = ObjectWord::power(0, d);
    let lin = linearize(&p, d)?;
    let bar: Vec<Morphism> = lin.relations.iter().map(|r| r.raw.clone()).collect();
    let raw = hom_span_quotient(&p, &x, &x, len, &bar, len, SpanMode::Raw, o.exec);
    let tilde: Vec<Morphism> = lin.whiskered().map(|r| r.normalized.clone()).collect();
    let free = hom_span_quotient(&p, &x, &x, len, &tilde, len, SpanMode::Normalized, o.exec);
    Ok((
        raw.quotient_dim == free.quotient_dim,
        format!(
            "linear quotient {} of {} paths, monoidal quotient {} of {}",
            raw.quotient_dim, raw.paths, free.quotient_dim, free.paths
        ),
    ))
}

/// Presentations the random cases cycle through; the last two have edges
/// that change word length, one with a cup and one with a cap.
pub fn interchange_presentations() -> Result<Vec<MonoidalPresentation>, SuiteError> {
    let mut out = Vec::new();
    for name in ["symmetric", "daha", "hecke", "wreath", "affine-wreath"] {
        out.push(load_builtin(name)?);
    }
    let shared = "object a\nobject b\nmorphism m : a b -> b\nmorphism f : b -> a b\n";
    out.push(parse_presentation(&format!("{shared}morphism c : - -> a a\n"))?);
    out.push(parse_presentation(&format!("{shared}morphism e : a a -> -\n"))?);
    Ok(out)
}

fn interchange_check(o: &SuiteOptions) -> Result<(bool, String), SuiteError> {
    let ps = interchange_presentations()?;
    let ids: Vec<u64> = (0..o.cases as u64).collect();
    let fails = o.exec.map(&ids, |&i| {
        let p = &ps[i as usize % ps.len()];
        random::interchange_case(p, o.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i))
    });
    let mut per = [0usize; random::PROPERTIES.len()];
    let mut first = None;
    for f in fails.iter().flatten() {
        let k = random::PROPERTIES.iter().position(|n| *n == f.0).expect("known property");
        per[k] += 1;
        first.get_or_insert_with(|| format!("{}: {}", f.0, f.1));
    }
    let summary: Vec<String> =
        random::PROPERTIES.iter().zip(per).map(|(n, k)| format!("{n} {}/{}", o.cases - k, o.cases)).collect();
    let mut detail = summary.join(", ");
    if let Some(f) = first {
        detail.push_str(&format!("; first failure {f}"));
    }
    Ok((per.iter().all(|&k| k == 0), detail))
}

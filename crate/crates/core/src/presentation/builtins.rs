//! Library of example presentations: symmetric group, degenerate affine
//! Hecke, braid, Hecke, wreath and affine wreath categories. Each is written
//! out in the DSL and parsed, so the builtins go through the same validation
//! as user files.

use std::fmt::Write;

use num_traits::{One, Zero};

use crate::coeff::Rational;

use super::{parse_presentation, FrobeniusAlgebraData, MonoidalPresentation, PresentationError};

#[derive(Clone, Debug, Default)]
pub struct BuiltinParams {
    /// Algebra for the wreath and affine wreath categories.
    pub algebra: Option<FrobeniusAlgebraData>,
}

pub fn builtin_names() -> &'static [&'static str] {
    &["symmetric", "braid", "hecke", "daha", "wreath", "affine-wreath"]
}

const SYMMETRIC: &str = "\
coefficients Q
object a
morphism s : a a -> a a
relation involution : s ; s = a a
relation braid : s a ; a s ; s a = a s ; s a ; a s
";

const DAHA_EXTRA: &str = "\
morphism x : a -> a
relation dot_slide : s ; x a - a x ; s = a a
";

const BRAID_BODY: &str = "\
object a
morphism s : a a -> a a
morphism s_inv : a a -> a a
relation inverse_right : s ; s_inv = a a
relation inverse_left : s_inv ; s = a a
relation braid : s a ; a s ; s a = a s ; s a ; a s
";

fn coeff_prefix(c: &Rational) -> String {
    if c.is_one() {
        String::new()
    } else if c.denom().is_one() {
        format!("({}) ", c.numer())
    } else {
        format!("({}/{}) ", c.numer(), c.denom())
    }
}

fn combination(terms: impl IntoIterator<Item = (Rational, String)>) -> String {
    let parts: Vec<String> =
        terms.into_iter().filter(|(c, _)| !c.is_zero()).map(|(c, t)| format!("{}{t}", coeff_prefix(&c))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn token(a: &FrobeniusAlgebraData, b: usize) -> String {
    format!("u_{}", a.labels()[b])
}

fn wreath_source(a: &FrobeniusAlgebraData) -> String {
    let mut src = String::from(SYMMETRIC);
    for b in 0..a.dim() {
        let _ = writeln!(src, "morphism {} : a -> a", token(a, b));
    }
    // u(x) after u(y) is u(xy)
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let rhs = combination(a.basis_product(x, y).iter().enumerate().map(|(c, k)| (k.clone(), token(a, c))));
            let _ = writeln!(
                src,
                "relation token_{}_{} : {} ; {} = {rhs}",
                a.labels()[x],
                a.labels()[y],
                token(a, y),
                token(a, x)
            );
        }
    }
    let unit = combination(a.unit().iter().enumerate().map(|(c, k)| (k.clone(), token(a, c))));
    let _ = writeln!(src, "relation token_unit : {unit} = a");
    for b in 0..a.dim() {
        let t = token(a, b);
        let _ = writeln!(src, "relation slide_{} : {t} a ; s = s ; a {t}", a.labels()[b]);
    }
    src
}

fn affine_wreath_source(a: &FrobeniusAlgebraData) -> Result<String, PresentationError> {
    let casimir = a
        .casimir()
        .ok_or_else(|| PresentationError::InvalidAlgebra("affine wreath needs a trace and dual basis".into()))?;
    let mut src = wreath_source(a);
    src.push_str("morphism x : a -> a\n");
    let rhs = combination(casimir.iter().map(|(b, c, k)| (k.clone(), format!("{} {}", token(a, *b), token(a, *c)))));
    let _ = writeln!(src, "relation dot_slide : s ; x a - a x ; s = {rhs}");
    for b in 0..a.dim() {
        let t = token(a, b);
        let _ = writeln!(src, "relation dot_token_{} : x ; {t} = {t} ; x", a.labels()[b]);
    }
    Ok(src)
}

/// DSL source of a builtin presentation.
pub fn builtin_source(name: &str, params: &BuiltinParams) -> Result<String, PresentationError> {
    let algebra = || {
        params
            .algebra
            .as_ref()
            .ok_or_else(|| PresentationError::InvalidAlgebra(format!("builtin '{name}' requires algebra data")))
    };
    Ok(match name {
        "symmetric" => SYMMETRIC.to_string(),
        "daha" => format!("{SYMMETRIC}{DAHA_EXTRA}"),
        "braid" => format!("coefficients Q\n{BRAID_BODY}"),
        "hecke" => format!("coefficients Q(q)\n{BRAID_BODY}relation skein : s - s_inv = (q - 1/q) a a\n"),
        "wreath" => wreath_source(algebra()?),
        "affine-wreath" => affine_wreath_source(algebra()?)?,
        other => return Err(PresentationError::UnknownBuiltin(other.to_string())),
    })
}

/// Builds one of the library presentations listed by [`builtin_names`].
pub fn builtin(name: &str, params: &BuiltinParams) -> Result<MonoidalPresentation, PresentationError> {
    parse_presentation(&builtin_source(name, params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Field, FieldValue};
    use crate::presentation::Factor;

    fn z2() -> BuiltinParams {
        BuiltinParams { algebra: Some(FrobeniusAlgebraData::cyclic_group(2)) }
    }

    #[test]
    fn every_builtin_builds_and_round_trips() {
        for name in builtin_names() {
            let p = builtin(name, &z2()).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(parse_presentation(&p.to_dsl()).unwrap(), p, "{name}");
            for r in p.relations() {
                p.expr_endpoints(&r.name, &r.expr).unwrap();
            }
        }
    }

    #[test]
    fn symmetric_shape() {
        let p = builtin("symmetric", &BuiltinParams::default()).unwrap();
        assert_eq!((p.objects().len(), p.edges().len(), p.relations().len()), (1, 1, 2));
        let braid = &p.relation("braid").unwrap().expr;
        let s = Factor::Edge(0);
        let a = Factor::Object(0);
        assert_eq!(braid.terms[0].layers, vec![vec![s, a], vec![a, s], vec![s, a]]);
        assert_eq!(braid.terms[1].layers, vec![vec![a, s], vec![s, a], vec![a, s]]);
    }

    #[test]
    fn hecke_skein_uses_q_minus_inverse() {
        let p = builtin("hecke", &BuiltinParams::default()).unwrap();
        assert_eq!(p.field(), Field::RationalFunction);
        let skein = &p.relation("skein").unwrap().expr;
        assert_eq!(skein.terms.len(), 3);
        assert_eq!(skein.terms[2].coefficient, FieldValue::q_minus_q_inverse().neg());
        assert_eq!(p.relations().len(), 4);
    }

    #[test]
    fn wreath_tokens() {
        let p = builtin("wreath", &z2()).unwrap();
        let names: Vec<&str> = p.edges().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["s", "u_1", "u_g"]);
        // g * g = 1
        let gg = &p.relation("token_g_g").unwrap().expr;
        assert_eq!(gg.terms.len(), 2);
        assert_eq!(gg.terms[1].layers, vec![vec![Factor::Edge(1)]]);
        assert!(p.relation("slide_g").is_some());
        assert!(p.relation("token_unit").is_some());
        assert!(builtin("wreath", &BuiltinParams::default()).is_err());
    }

    #[test]
    fn affine_wreath_dot_slide() {
        let p = builtin("affine-wreath", &z2()).unwrap();
        let r = &p.relation("dot_slide").unwrap().expr;
        // two crossing terms plus 1⊗1 + g⊗g
        assert_eq!(r.terms.len(), 4);
        assert_eq!(p.edges().len(), 4);
    }

    #[test]
    fn unknown_builtin() {
        assert_eq!(
            builtin("quantum", &BuiltinParams::default()),
            Err(PresentationError::UnknownBuiltin("quantum".into()))
        );
    }
}

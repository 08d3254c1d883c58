//! Line-oriented text format for monoidal presentations.
//!
//! ```text
//! coefficients Q            # or: coefficients Q(q)
//! object a
//! morphism s : a a -> a a
//! relation involution : s ; s = a a
//! relation braid : s a ; a s ; s a = a s ; s a ; a s
//! ```
//!
//! Layers are separated by `;` and listed first-applied first. Inside a
//! layer, factors are separated by whitespace. A coefficient is either an
//! integer or fraction literal or a parenthesized expression.

use std::fmt::Write;

use crate::coeff::{parse_coefficient, CoeffError, Field, FieldValue};

use super::{
    ExprTerm, Factor, GeneratorEdge, Layer, MonoidalPresentation, MorphismExpr, ObjectWord, PresentationError, Relation,
};

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn valid_ident(s: &str) -> bool {
    let mut it = s.chars();
    it.next().is_some_and(is_ident_start) && it.all(is_ident_char)
}

/// Symbol table used while parsing expressions.
struct Scope<'a> {
    field: Field,
    objects: &'a [String],
    edges: &'a [GeneratorEdge],
}

impl Scope<'_> {
    fn resolve(&self, name: &str) -> Option<Factor> {
        if let Some(i) = self.objects.iter().position(|o| o == name) {
            return Some(Factor::Object(i as u32));
        }
        self.edges.iter().position(|e| e.name == name).map(|i| Factor::Edge(i as u32))
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    scope: &'a Scope<'a>,
}

impl ExprParser<'_> {
    fn col(&self) -> usize {
        self.col0 + self.pos
    }

    fn err(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax { line: self.line, column: self.col(), message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// expr := [sign] term (sign term)*
    fn expr(&mut self) -> Result<MorphismExpr, PresentationError> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            if let Some(mut t) = self.term()? {
                if negative {
                    t.coefficient = t.coefficient.neg();
                }
                terms.push(t);
            }
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => return Ok(MorphismExpr { terms }),
            }
            self.pos += 1;
        }
    }

    fn coefficient(&mut self) -> Result<Option<FieldValue>, PresentationError> {
        let start = self.pos;
        let text: String = match self.peek() {
            Some('(') => {
                let mut depth = 0usize;
                let mut end = None;
                for i in self.pos..self.chars.len() {
                    match self.chars[i] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(i);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| self.err("unbalanced '('"))?;
                let t = self.chars[self.pos + 1..end].iter().collect();
                self.pos = end + 1;
                t
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                self.chars[s..self.pos].iter().collect()
            }
            _ => return Ok(None),
        };
        let offset = if self.chars.get(start) == Some(&'(') { 1 } else { 0 };
        let field = self.scope.field;
        match parse_coefficient(&text, field) {
            Ok(v) => Ok(Some(v)),
            Err(e) => {
                if field == Field::Rational && parse_coefficient(&text, Field::RationalFunction).is_ok() {
                    return Err(PresentationError::MixedCoefficients {
                        line: self.line,
                        message: format!("coefficient '{}' uses q but the presentation is over Q", text.trim()),
                    });
                }
                let (column, message) = match e {
                    CoeffError::Syntax { column, message } => (self.col0 + start + offset + column - 1, message),
                    other => (self.col0 + start, other.to_string()),
                };
                Err(PresentationError::Syntax { line: self.line, column, message })
            }
        }
    }

    fn ident(&mut self) -> Option<String> {
        match self.peek() {
            Some(c) if is_ident_start(c) => {
                let s = self.pos;
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                Some(self.chars[s..self.pos].iter().collect())
            }
            _ => None,
        }
    }

    fn layer(&mut self) -> Result<Layer, PresentationError> {
        let mut layer = Vec::new();
        while let Some(name) = self.ident() {
            let f = self.scope.resolve(&name).ok_or(PresentationError::Undeclared { line: self.line, name })?;
            layer.push(f);
        }
        if layer.is_empty() {
            return Err(self.err("expected an object or morphism name"));
        }
        Ok(layer)
    }

    fn term(&mut self) -> Result<Option<ExprTerm>, PresentationError> {
        let coefficient = self.coefficient()?;
        if coefficient.is_some() && !matches!(self.peek(), Some(c) if is_ident_start(c)) {
            // a bare coefficient: only zero is meaningful
            return match coefficient {
                Some(c) if c.is_zero() => Ok(None),
                _ => Err(self.err("a coefficient must be followed by a morphism")),
            };
        }
        let mut layers = vec![self.layer()?];
        while self.peek() == Some(';') {
            self.pos += 1;
            layers.push(self.layer()?);
        }
        let coefficient = coefficient.unwrap_or_else(|| FieldValue::one(self.scope.field));
        Ok(Some(ExprTerm { coefficient, layers }))
    }
}

fn parse_relation_body(
    scope: &Scope<'_>,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<MorphismExpr, PresentationError> {
    let mut p = ExprParser { chars: text.chars().collect(), pos: 0, line, col0, scope };
    let mut lhs = p.expr()?;
    if p.peek() == Some('=') {
        p.pos += 1;
        let rhs = p.expr()?;
        lhs.terms.extend(rhs.terms.into_iter().map(|t| ExprTerm { coefficient: t.coefficient.neg(), ..t }));
    }
    if !p.at_end() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(lhs)
}

pub(super) fn parse_expr_for(p: &MonoidalPresentation, text: &str) -> Result<MorphismExpr, PresentationError> {
    let scope = Scope { field: p.field, objects: &p.objects, edges: &p.edges };
    parse_relation_body(&scope, text, 1, 1)
}

fn parse_word(objects: &[String], text: &str, line: usize) -> Result<ObjectWord, PresentationError> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(ObjectWord::unit());
    }
    text.split_whitespace()
        .map(|t| {
            objects
                .iter()
                .position(|o| o == t)
                .map(|i| i as u32)
                .ok_or_else(|| PresentationError::Undeclared { line, name: t.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(ObjectWord::new)
}

/// Parses DSL source into a validated presentation.
pub fn parse_presentation(text: &str) -> Result<MonoidalPresentation, PresentationError> {
    let mut field: Option<(Field, usize)> = None;
    let mut objects: Vec<String> = Vec::new();
    let mut edges: Vec<GeneratorEdge> = Vec::new();
    let mut relations: Vec<(Relation, usize)> = Vec::new();

    let declared = |name: &str, objects: &[String], edges: &[GeneratorEdge]| {
        objects.iter().any(|o| o == name) || edges.iter().any(|e| e.name == name)
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_col = indent + keyword.len() + 2;
        let syntax =
            |column: usize, message: &str| PresentationError::Syntax { line, column, message: message.to_string() };
        match keyword {
            "coefficients" => {
                let f = Field::parse(rest).ok_or_else(|| syntax(rest_col, "expected Q or Q(q)"))?;
                if let Some((prev, _)) = field {
                    if prev != f {
                        return Err(PresentationError::MixedCoefficients {
                            line,
                            message: format!("declared {prev} earlier, now {f}"),
                        });
                    }
                }
                if !relations.is_empty() {
                    return Err(syntax(indent + 1, "coefficients must be declared before relations"));
                }
                field = Some((f, line));
            }
            "object" => {
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(syntax(rest_col, "expected object name"));
                }
                for n in names {
                    if !valid_ident(n) {
                        return Err(syntax(rest_col, &format!("invalid identifier '{n}'")));
                    }
                    if declared(n, &objects, &edges) {
                        return Err(PresentationError::Duplicate { line, name: n.to_string() });
                    }
                    objects.push(n.to_string());
                }
            }
            "morphism" => {
                let (name, sig) = rest.split_once(':').ok_or_else(|| syntax(rest_col, "expected ':'"))?;
                let name = name.trim();
                if !valid_ident(name) {
                    return Err(syntax(rest_col, &format!("invalid identifier '{name}'")));
                }
                if declared(name, &objects, &edges) {
                    return Err(PresentationError::Duplicate { line, name: name.to_string() });
                }
                let (dom, cod) = sig.split_once("->").ok_or_else(|| syntax(rest_col, "expected '->'"))?;
                edges.push(GeneratorEdge {
                    name: name.to_string(),
                    domain: parse_word(&objects, dom, line)?,
                    codomain: parse_word(&objects, cod, line)?,
                });
            }
            "relation" => {
                let (name, body) = rest.split_once(':').ok_or_else(|| syntax(rest_col, "expected ':'"))?;
                let name = name.trim();
                if !valid_ident(name) {
                    return Err(syntax(rest_col, &format!("invalid relation name '{name}'")));
                }
                if relations.iter().any(|(r, _)| r.name == name) {
                    return Err(PresentationError::Duplicate { line, name: name.to_string() });
                }
                let f = field.map_or(Field::Rational, |(f, _)| f);
                let scope = Scope { field: f, objects: &objects, edges: &edges };
                let body_col = rest_col + rest.find(':').unwrap() + 1;
                let expr = parse_relation_body(&scope, body, line, body_col)?;
                relations.push((Relation { name: name.to_string(), expr }, line));
            }
            other => {
                return Err(syntax(indent + 1, &format!("unknown declaration '{other}'")));
            }
        }
    }
    let field = field.map_or(Field::Rational, |(f, _)| f);
    let probe = MonoidalPresentation { field, objects, edges, relations: Vec::new() };
    for (r, line) in &relations {
        probe.expr_endpoints(&r.name, &r.expr).map_err(|e| match e {
            PresentationError::MixedCoefficients { message, .. } => {
                PresentationError::MixedCoefficients { line: *line, message }
            }
            e => e,
        })?;
    }
    MonoidalPresentation::new(probe.field, probe.objects, probe.edges, relations.into_iter().map(|(r, _)| r).collect())
}

fn layer_to_string(p: &MonoidalPresentation, layer: &Layer, out: &mut String) {
    for (i, f) in layer.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match *f {
            Factor::Object(x) => out.push_str(&p.objects[x as usize]),
            Factor::Edge(e) => out.push_str(&p.edges[e as usize].name),
        }
    }
}

pub(super) fn expr_to_string(p: &MonoidalPresentation, expr: &MorphismExpr) -> String {
    if expr.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in expr.terms.iter().enumerate() {
        let printed = t.coefficient.to_string();
        let (negative, mag) =
            if printed.starts_with('-') { (true, t.coefficient.neg()) } else { (false, t.coefficient.clone()) };
        match (i, negative) {
            (0, true) => out.push_str("- "),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            let _ = write!(out, "({mag}) ");
        }
        for (li, layer) in t.layers.iter().enumerate() {
            if li > 0 {
                out.push_str(" ; ");
            }
            layer_to_string(p, layer, &mut out);
        }
    }
    out
}

pub(super) fn serialize(p: &MonoidalPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "coefficients {}", p.field.name());
    for o in &p.objects {
        let _ = writeln!(out, "object {o}");
    }
    for e in &p.edges {
        let _ = writeln!(
            out,
            "morphism {} : {} -> {}",
            e.name,
            e.domain.display(&p.objects, "-"),
            e.codomain.display(&p.objects, "-")
        );
    }
    for r in &p.relations {
        let _ = writeln!(out, "relation {} : {}", r.name, expr_to_string(p, &r.expr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYMMETRIC: &str = "\
coefficients Q            # or: coefficients Q(q)
object a
morphism s : a a -> a a
relation involution : s ; s = a a
relation braid : s a ; a s ; s a = a s ; s a ; a s
";

    #[test]
    fn parses_symmetric_group() {
        let p = parse_presentation(SYMMETRIC).unwrap();
        assert_eq!(p.objects().len(), 1);
        assert_eq!(p.edges().len(), 1);
        assert_eq!(p.relations().len(), 2);
        let inv = &p.relations()[0];
        assert_eq!(inv.expr.terms.len(), 2);
        assert!(inv.expr.terms[1].coefficient.neg().is_one());
        assert_eq!(inv.expr.terms[1].layers, vec![vec![Factor::Object(0), Factor::Object(0)]]);
        assert_eq!(p.relations()[1].expr.terms[0].layers.len(), 3);
    }

    #[test]
    fn free_presentation_without_relations() {
        let p = parse_presentation("object a\nmorphism s : a a -> a a\n").unwrap();
        assert!(p.relations().is_empty());
        assert_eq!(p.field(), Field::Rational);
    }

    #[test]
    fn endpoint_mismatch_is_reported() {
        let src = "object a\nmorphism s : a a -> a a\nmorphism t : a -> a\nrelation bad : s = t\n";
        assert!(matches!(parse_presentation(src), Err(PresentationError::EndpointMismatch { .. })));
        let src = "object a\nmorphism s : a a -> a a\nrelation bad : s ; a = s\n";
        assert!(matches!(parse_presentation(src), Err(PresentationError::EndpointMismatch { .. })));
    }

    #[test]
    fn undeclared_and_syntax_errors() {
        let e = parse_presentation("object a\nrelation r : b = a\n").unwrap_err();
        assert_eq!(e, PresentationError::Undeclared { line: 2, name: "b".into() });
        let e = parse_presentation("object a\nmorphism s a a -> a a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Syntax { line: 2, .. }), "{e:?}");
        let e = parse_presentation("object a\nfrobnicate a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Syntax { line: 2, column: 1, .. }), "{e:?}");
        let e = parse_presentation("object a\nmorphism s : a -> a\nrelation r : (1 + ) s = a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Syntax { line: 3, .. }), "{e:?}");
        let e = parse_presentation("object a a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Duplicate { .. }));
    }

    #[test]
    fn mixed_coefficients() {
        let e = parse_presentation("object a\nmorphism s : a -> a\nrelation r : s = (q) a\n").unwrap_err();
        assert!(matches!(e, PresentationError::MixedCoefficients { line: 3, .. }), "{e:?}");
        let e = parse_presentation("coefficients Q\ncoefficients Q(q)\n").unwrap_err();
        assert!(matches!(e, PresentationError::MixedCoefficients { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn coefficient_prefixes() {
        let src = "coefficients Q(q)\nobject a\nmorphism s : a a -> a a\nmorphism t : a a -> a a\n\
                   relation skein : s - t = ( q - 1/q ) a a\nrelation z : 2 s - 3/2 t + (0) s = 0\n";
        let p = parse_presentation(src).unwrap();
        let skein = &p.relations()[0].expr;
        assert_eq!(skein.terms[2].coefficient, FieldValue::q_minus_q_inverse().neg());
        let z = &p.relations()[1].expr;
        assert_eq!(z.terms.len(), 3);
        assert_eq!(z.terms[1].coefficient.to_string(), "-3/2");
    }

    #[test]
    fn round_trip() {
        let src = "coefficients Q(q)\nobject a b\nmorphism s : a b -> b a\nmorphism c : - -> a\n\
                   relation r : (q^2 - 1/3) s ; b c a - (2/q) a b ; s + s = 0\n";
        let p = parse_presentation(src);
        // s ; b c a : a b -> b a -> b a a ; mismatched with a b ; s (a b -> b a): expect error
        assert!(p.is_err());
        let src = "coefficients Q(q)\nobject a b\nmorphism s : a b -> b a\nmorphism c : - -> a\n\
                   relation r : (q^2 - 1/3) s ; b c a - (2/q) a b ; s ; b c a + s ; b c a = 0\n\
                   relation t : c a b ; a s = c s\n";
        let p = parse_presentation(src).unwrap_or_else(|e| panic!("{e}"));
        let printed = p.to_dsl();
        assert_eq!(parse_presentation(&printed).unwrap(), p, "{printed}");
        let sym = parse_presentation(SYMMETRIC).unwrap();
        assert_eq!(parse_presentation(&sym.to_dsl()).unwrap(), sym);
    }
}

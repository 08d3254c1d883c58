//! Monoidal presentations `<X, E, R>`: generating objects, generating
//! morphisms between object words, and relations read as `expression = 0`.

mod builtins;
mod dsl;
mod frobenius;
mod word;

use std::collections::HashSet;

use thiserror::Error;

use crate::coeff::{CoeffError, Field, FieldValue};

pub use builtins::{builtin, builtin_names, builtin_source, BuiltinParams};
pub use dsl::parse_presentation;
pub use frobenius::FrobeniusAlgebraData;
pub use word::{word_concat, word_len, ObjectId, ObjectWord, WordDisplay};

/// Index of a generating morphism in its presentation.
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: undeclared identifier '{name}'")]
    Undeclared { line: usize, name: String },
    #[error("line {line}: duplicate declaration of '{name}'")]
    Duplicate { line: usize, name: String },
    #[error("relation '{relation}': {message}")]
    EndpointMismatch { relation: String, message: String },
    #[error("line {line}: mixed coefficient fields ({message})")]
    MixedCoefficients { line: usize, message: String },
    #[error("unknown builtin '{0}'")]
    UnknownBuiltin(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error(transparent)]
    Coefficient(#[from] CoeffError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEdge {
    pub name: String,
    pub domain: ObjectWord,
    pub codomain: ObjectWord,
}

impl GeneratorEdge {
    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }
}

/// One tensor factor of a layer: an identity strand or a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Object(ObjectId),
    Edge(EdgeId),
}

/// Factors placed side by side, left to right.
pub type Layer = Vec<Factor>;

/// `coefficient * (layer_1 ; layer_2 ; ...)`, layers listed first-applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprTerm {
    pub coefficient: FieldValue,
    pub layers: Vec<Layer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MorphismExpr {
    pub terms: Vec<ExprTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub expr: MorphismExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalPresentation {
    field: Field,
    objects: Vec<String>,
    edges: Vec<GeneratorEdge>,
    relations: Vec<Relation>,
}

impl MonoidalPresentation {
    /// Validates and assembles a presentation.
    pub fn new(
        field: Field,
        objects: Vec<String>,
        edges: Vec<GeneratorEdge>,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for name in objects.iter().chain(edges.iter().map(|e| &e.name)) {
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::Duplicate { line: 0, name: name.clone() });
            }
        }
        let n = objects.len() as ObjectId;
        for e in &edges {
            if e.domain.letters().iter().chain(e.codomain.letters()).any(|&x| x >= n) {
                return Err(PresentationError::Undeclared { line: 0, name: format!("object in edge {}", e.name) });
            }
        }
        let mut rel_names = HashSet::new();
        let p = MonoidalPresentation { field, objects, edges, relations: Vec::new() };
        for r in &relations {
            if !rel_names.insert(r.name.as_str()) {
                return Err(PresentationError::Duplicate { line: 0, name: r.name.clone() });
            }
            p.expr_endpoints(&r.name, &r.expr)?;
        }
        Ok(MonoidalPresentation { relations, ..p })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn edges(&self) -> &[GeneratorEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &GeneratorEdge {
        &self.edges[id as usize]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(|i| i as ObjectId)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(|i| i as EdgeId)
    }

    pub fn all_endomorphisms(&self) -> bool {
        self.edges.iter().all(GeneratorEdge::is_endomorphism)
    }

    /// Parses a whitespace-separated object word; `-` or an empty string is the unit.
    pub fn parse_word(&self, text: &str) -> Result<ObjectWord, PresentationError> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(ObjectWord::unit());
        }
        text.split_whitespace()
            .map(|t| self.object_id(t).ok_or_else(|| PresentationError::Undeclared { line: 0, name: t.to_string() }))
            .collect::<Result<Vec<_>, _>>()
            .map(ObjectWord::new)
    }

    pub fn display_word<'a>(&'a self, w: &'a ObjectWord) -> WordDisplay<'a> {
        w.display(&self.objects, "-")
    }

    pub fn factor_domain(&self, f: Factor) -> ObjectWord {
        match f {
            Factor::Object(x) => ObjectWord::letter(x),
            Factor::Edge(e) => self.edge(e).domain.clone(),
        }
    }

    pub fn factor_codomain(&self, f: Factor) -> ObjectWord {
        match f {
            Factor::Object(x) => ObjectWord::letter(x),
            Factor::Edge(e) => self.edge(e).codomain.clone(),
        }
    }

    pub fn layer_domain(&self, layer: &Layer) -> ObjectWord {
        ObjectWord::new(layer.iter().flat_map(|&f| self.factor_domain(f).letters().to_vec()).collect())
    }

    pub fn layer_codomain(&self, layer: &Layer) -> ObjectWord {
        ObjectWord::new(layer.iter().flat_map(|&f| self.factor_codomain(f).letters().to_vec()).collect())
    }

    /// Checks layer composability and shared endpoints; returns `(domain, codomain)`.
    pub fn expr_endpoints(
        &self,
        name: &str,
        expr: &MorphismExpr,
    ) -> Result<(ObjectWord, ObjectWord), PresentationError> {
        let mismatch = |message: String| PresentationError::EndpointMismatch { relation: name.to_string(), message };
        let mut endpoints: Option<(ObjectWord, ObjectWord)> = None;
        for (ti, term) in expr.terms.iter().enumerate() {
            if term.coefficient.field() != self.field {
                return Err(PresentationError::MixedCoefficients {
                    line: 0,
                    message: format!("term {} of '{name}' is over {}", ti + 1, term.coefficient.field()),
                });
            }
            let Some(first) = term.layers.first() else {
                return Err(mismatch(format!("term {} has no layers", ti + 1)));
            };
            for (li, pair) in term.layers.windows(2).enumerate() {
                let (c, d) = (self.layer_codomain(&pair[0]), self.layer_domain(&pair[1]));
                if c != d {
                    return Err(mismatch(format!(
                        "term {}: layer {} ends at '{}' but layer {} starts at '{}'",
                        ti + 1,
                        li + 1,
                        self.display_word(&c),
                        li + 2,
                        self.display_word(&d)
                    )));
                }
            }
            let here = (self.layer_domain(first), self.layer_codomain(term.layers.last().unwrap()));
            match &endpoints {
                None => endpoints = Some(here),
                Some(e) if *e != here => {
                    return Err(mismatch(format!(
                        "term {} is '{}' -> '{}' but term 1 is '{}' -> '{}'",
                        ti + 1,
                        self.display_word(&here.0),
                        self.display_word(&here.1),
                        self.display_word(&e.0),
                        self.display_word(&e.1)
                    )))
                }
                Some(_) => {}
            }
        }
        endpoints.ok_or_else(|| mismatch("relation has no terms".into()))
    }

    /// Serializes to the DSL; `parse_presentation` inverts this exactly.
    pub fn to_dsl(&self) -> String {
        dsl::serialize(self)
    }

    /// Renders a single expression in DSL term syntax.
    pub fn expr_to_string(&self, expr: &MorphismExpr) -> String {
        dsl::expr_to_string(self, expr)
    }

    /// Parses an expression in DSL term syntax against this presentation.
    pub fn parse_expr(&self, text: &str) -> Result<MorphismExpr, PresentationError> {
        dsl::parse_expr_for(self, text)
    }
}

impl MorphismExpr {
    /// Single term with coefficient one.
    pub fn single(coefficient: FieldValue, layers: Vec<Layer>) -> Self {
        MorphismExpr { terms: vec![ExprTerm { coefficient, layers }] }
    }
}

//! Morphisms of the free linear monoidal category on a monoidal quiver.
//!
//! A morphism is a linear combination of paths of whiskered generators
//! `(v, e, w)`. Paths are kept raw: [`normal_form`] is what quotients by the
//! interchange law.

mod interchange;
mod span;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::{Field, FieldValue};
use crate::presentation::{EdgeId, Factor, MonoidalPresentation, MorphismExpr, ObjectWord};

pub use interchange::{
    inversion_count, normal_form, normal_form_checked, normalize_path, normalize_path_randomly, swap_budget, swappable,
    NormalizeStats,
};
pub use span::{
    enumerate_paths, hom_span_quotient, hom_span_quotient_dim, ideal_subspace, tensor_framed_subspace, FramedSpan,
    PathBasis, SpanMode,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("cannot compose: domain {0} does not match codomain {1}")]
    EndpointMismatch(String, String),
    #[error("coefficient field mismatch")]
    FieldMismatch,
}

/// Generator `e` with identity strands `left` and `right` around it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triple {
    pub left: ObjectWord,
    pub edge: EdgeId,
    pub right: ObjectWord,
}

impl Triple {
    pub fn new(left: ObjectWord, edge: EdgeId, right: ObjectWord) -> Self {
        Triple { left, edge, right }
    }

    /// `(𝟙, e, 𝟙)`.
    pub fn bare(edge: EdgeId) -> Self {
        Triple { left: ObjectWord::unit(), edge, right: ObjectWord::unit() }
    }

    pub fn offset(&self) -> usize {
        self.left.len()
    }

    pub fn domain(&self, p: &MonoidalPresentation) -> ObjectWord {
        ObjectWord::concat3(&self.left, &p.edge(self.edge).domain, &self.right)
    }

    pub fn codomain(&self, p: &MonoidalPresentation) -> ObjectWord {
        ObjectWord::concat3(&self.left, &p.edge(self.edge).codomain, &self.right)
    }

    pub fn whisker_left(&self, a: &ObjectWord) -> Triple {
        Triple { left: a.concat(&self.left), edge: self.edge, right: self.right.clone() }
    }

    pub fn whisker_right(&self, a: &ObjectWord) -> Triple {
        Triple { left: self.left.clone(), edge: self.edge, right: self.right.concat(a) }
    }

    fn sort_key(&self) -> (usize, EdgeId, usize) {
        (self.offset(), self.edge, self.right.len())
    }

    /// `(v | e | w)` with `-` for the unit word.
    pub fn display<'a>(&'a self, p: &'a MonoidalPresentation) -> TripleDisplay<'a> {
        TripleDisplay { t: self, p }
    }
}

pub struct TripleDisplay<'a> {
    t: &'a Triple,
    p: &'a MonoidalPresentation,
}

impl fmt::Display for TripleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} | {} | {})",
            self.p.display_word(&self.t.left),
            self.p.edge(self.t.edge).name,
            self.p.display_word(&self.t.right)
        )
    }
}

/// Composable sequence of triples starting at `base`, listed first-applied
/// first. No steps means the identity on `base`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    base: ObjectWord,
    steps: Vec<Triple>,
}

impl Path {
    pub fn identity(base: ObjectWord) -> Self {
        Path { base, steps: Vec::new() }
    }

    /// Builds a path, checking that consecutive steps compose.
    pub fn new(p: &MonoidalPresentation, base: ObjectWord, steps: Vec<Triple>) -> Result<Self, MorphismError> {
        let mut at = base.clone();
        for t in &steps {
            let d = t.domain(p);
            if d != at {
                return Err(MorphismError::EndpointMismatch(
                    p.display_word(&d).to_string(),
                    p.display_word(&at).to_string(),
                ));
            }
            at = t.codomain(p);
        }
        Ok(Path { base, steps })
    }

    pub(crate) fn from_parts_unchecked(base: ObjectWord, steps: Vec<Triple>) -> Self {
        Path { base, steps }
    }

    pub fn base(&self) -> &ObjectWord {
        &self.base
    }

    pub fn steps(&self) -> &[Triple] {
        &self.steps
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn codomain(&self, p: &MonoidalPresentation) -> ObjectWord {
        self.steps.last().map_or_else(|| self.base.clone(), |t| t.codomain(p))
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Path) -> Path {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&then.steps);
        Path { base: self.base.clone(), steps }
    }

    pub fn whisker_left(&self, a: &ObjectWord) -> Path {
        Path { base: a.concat(&self.base), steps: self.steps.iter().map(|t| t.whisker_left(a)).collect() }
    }

    pub fn whisker_right(&self, a: &ObjectWord) -> Path {
        Path { base: self.base.concat(a), steps: self.steps.iter().map(|t| t.whisker_right(a)).collect() }
    }

    pub fn display<'a>(&'a self, p: &'a MonoidalPresentation) -> PathDisplay<'a> {
        PathDisplay { path: self, p }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.steps
            .len()
            .cmp(&other.steps.len())
            .then_with(|| {
                for (a, b) in self.steps.iter().zip(&other.steps) {
                    match a.sort_key().cmp(&b.sort_key()) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| {
                // only reachable for paths that differ in whisker words of equal length
                for (a, b) in self.steps.iter().zip(&other.steps) {
                    match (&a.left, &a.right).cmp(&(&b.left, &b.right)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    p: &'a MonoidalPresentation,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.steps.is_empty() {
            return write!(f, "1_{{{}}}", self.p.display_word(&self.path.base));
        }
        for (i, t) in self.path.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{}", t.display(self.p))?;
        }
        Ok(())
    }
}

/// Linear combination of parallel paths, kept sorted with merged like terms
/// and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    field: Field,
    domain: ObjectWord,
    codomain: ObjectWord,
    terms: Vec<(FieldValue, Path)>,
}

impl Morphism {
    pub fn zero(field: Field, domain: ObjectWord, codomain: ObjectWord) -> Self {
        Morphism { field, domain, codomain, terms: Vec::new() }
    }

    pub fn identity(field: Field, word: ObjectWord) -> Self {
        Morphism {
            field,
            domain: word.clone(),
            codomain: word.clone(),
            terms: vec![(FieldValue::one(field), Path::identity(word))],
        }
    }

    pub fn from_path(p: &MonoidalPresentation, path: Path) -> Self {
        let codomain = path.codomain(p);
        Morphism {
            field: p.field(),
            domain: path.base.clone(),
            codomain,
            terms: vec![(FieldValue::one(p.field()), path)],
        }
    }

    /// One whiskered generator as a morphism.
    pub fn generator(p: &MonoidalPresentation, t: Triple) -> Self {
        let base = t.domain(p);
        Self::from_path(p, Path { base, steps: vec![t] })
    }

    /// Sums `terms`, merging like paths and dropping zeros. All paths must
    /// run `domain -> codomain`.
    pub fn from_terms(
        field: Field,
        domain: ObjectWord,
        codomain: ObjectWord,
        terms: impl IntoIterator<Item = (FieldValue, Path)>,
    ) -> Self {
        let mut acc: BTreeMap<Path, FieldValue> = BTreeMap::new();
        for (c, path) in terms {
            debug_assert_eq!(path.base, domain);
            match acc.get_mut(&path) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(path, c);
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
        Morphism { field, domain, codomain, terms }
    }

    /// Interprets a DSL expression: each layer is the tensor product of its
    /// factors and layers compose first to last.
    pub fn from_expr(p: &MonoidalPresentation, expr: &MorphismExpr) -> Result<Self, MorphismError> {
        let mut total: Option<Morphism> = None;
        for term in &expr.terms {
            let mut acc: Option<Morphism> = None;
            for layer in &term.layers {
                let mut m = Morphism::identity(p.field(), ObjectWord::unit());
                for &f in layer {
                    let factor = match f {
                        Factor::Object(x) => Morphism::identity(p.field(), ObjectWord::letter(x)),
                        Factor::Edge(e) => Morphism::generator(p, Triple::bare(e)),
                    };
                    m = tensor(&m, &factor);
                }
                acc = Some(match acc {
                    None => m,
                    Some(prev) => compose(&m, &prev)?,
                });
            }
            let term_m = acc.expect("terms have at least one layer").scale(&term.coefficient);
            total = Some(match total {
                None => term_m,
                Some(t) => t.add(&term_m)?,
            });
        }
        Ok(total.unwrap_or_else(|| Morphism::zero(p.field(), ObjectWord::unit(), ObjectWord::unit())))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain(&self) -> &ObjectWord {
        &self.domain
    }

    pub fn codomain(&self) -> &ObjectWord {
        &self.codomain
    }

    pub fn terms(&self) -> &[(FieldValue, Path)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest path among the terms.
    pub fn max_steps(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &FieldValue) -> Morphism {
        if c.is_zero() {
            return Morphism::zero(self.field, self.domain.clone(), self.codomain.clone());
        }
        Morphism { terms: self.terms.iter().map(|(x, p)| (x * c, p.clone())).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Morphism {
        Morphism { terms: self.terms.iter().map(|(x, p)| (x.neg(), p.clone())).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, MorphismError> {
        if self.field != other.field {
            return Err(MorphismError::FieldMismatch);
        }
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(MorphismError::EndpointMismatch(
                format!("{:?}->{:?}", self.domain, self.codomain),
                format!("{:?}->{:?}", other.domain, other.codomain),
            ));
        }
        Ok(Morphism::from_terms(
            self.field,
            self.domain.clone(),
            self.codomain.clone(),
            self.terms.iter().chain(&other.terms).cloned(),
        ))
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism, MorphismError> {
        self.add(&other.neg())
    }

    pub fn display<'a>(&'a self, p: &'a MonoidalPresentation) -> MorphismDisplay<'a> {
        MorphismDisplay { m: self, p }
    }
}

pub struct MorphismDisplay<'a> {
    m: &'a Morphism,
    p: &'a MonoidalPresentation,
}

impl fmt::Display for MorphismDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, path)) in self.m.terms.iter().enumerate() {
            let printed = c.to_string();
            let (neg, mag) = if printed.starts_with('-') { (true, c.neg()) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => f.write_str("- ")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "({mag}) ")?;
            }
            write!(f, "{}", path.display(self.p))?;
        }
        Ok(())
    }
}

/// `f ∘ g`: apply `g`, then `f`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism, MorphismError> {
    if f.domain != g.codomain {
        return Err(MorphismError::EndpointMismatch(format!("{:?}", f.domain), format!("{:?}", g.codomain)));
    }
    if f.field != g.field {
        return Err(MorphismError::FieldMismatch);
    }
    let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
    for (cf, pf) in &f.terms {
        for (cg, pg) in &g.terms {
            terms.push((cf * cg, pg.then(pf)));
        }
    }
    Ok(Morphism::from_terms(f.field, g.domain.clone(), f.codomain.clone(), terms))
}

/// `1_a ⊗ f`.
pub fn whisker_left(a: &ObjectWord, f: &Morphism) -> Morphism {
    Morphism {
        field: f.field,
        domain: a.concat(&f.domain),
        codomain: a.concat(&f.codomain),
        terms: f.terms.iter().map(|(c, p)| (c.clone(), p.whisker_left(a))).collect(),
    }
}

/// `f ⊗ 1_a`.
pub fn whisker_right(f: &Morphism, a: &ObjectWord) -> Morphism {
    Morphism {
        field: f.field,
        domain: f.domain.concat(a),
        codomain: f.codomain.concat(a),
        terms: f.terms.iter().map(|(c, p)| (c.clone(), p.whisker_right(a))).collect(),
    }
}

/// `f ⊗ g = (f ⊗ 1_d) ∘ (1_a ⊗ g)` for `f: a -> b`, `g: c -> d`.
pub fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
    let right = whisker_right(f, &g.codomain);
    let left = whisker_left(&f.domain, g);
    compose(&right, &left).expect("whiskered factors always compose")
}

/// `post ∘ r ∘ pre`, normalized.
pub fn ideal_element(
    p: &MonoidalPresentation,
    r: &Morphism,
    pre: &Morphism,
    post: &Morphism,
) -> Result<Morphism, MorphismError> {
    Ok(normal_form(p, &compose(post, &compose(r, pre)?)?))
}

/// `f′ ∘ (g′ ⊗ r ⊗ g) ∘ f`, normalized.
pub fn tensor_ideal_element(
    p: &MonoidalPresentation,
    r: &Morphism,
    f: &Morphism,
    f_post: &Morphism,
    g: &Morphism,
    g_pre: &Morphism,
) -> Result<Morphism, MorphismError> {
    let middle = tensor(&tensor(g_pre, r), g);
    Ok(normal_form(p, &compose(f_post, &compose(&middle, f)?)?))
}

#[cfg(test)]
mod tests;

//! Compiles a monoidal presentation into a presentation of the underlying
//! linear category, truncated by object word length, and extracts
//! presentations of endomorphism algebras.

mod endalg;

use serde_json::{json, Value};
use thiserror::Error;

use crate::freemon::{normal_form, whisker_left, whisker_right, Morphism, MorphismError, Path, Triple};
use crate::presentation::{MonoidalPresentation, ObjectWord};

pub use endalg::{end_algebra, AlgebraGenerator, AlgebraPresentation, AlgebraRelation, AlgebraRelationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearizeError {
    #[error("word length bound {given} is below {needed}, the longest endpoint of a generating morphism")]
    BoundTooSmall { given: usize, needed: usize },
    #[error(
        "edge '{0}' is not an endomorphism; endomorphism algebra presentations require every generating \
         morphism to be an endomorphism"
    )]
    NotEndomorphism(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// Where a relation of the linear presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `1_left ⊗ r ⊗ 1_right` for a relation `r` of the monoidal presentation.
    Whiskered { left: ObjectWord, right: ObjectWord },
    /// Interchange of two steps with disjoint supports; `left` acts to the
    /// left of `right` in the ambient word.
    Interchange { left: Triple, right: Triple },
}

#[derive(Clone, Debug)]
pub struct LinearRelation {
    /// Source relation name, or `interchange`.
    pub source: String,
    pub kind: RelationKind,
    /// As emitted, without interchange normalization.
    pub raw: Morphism,
    pub normalized: Morphism,
}

/// Truncation of the linear presentation to words of length at most
/// `max_word_len`.
#[derive(Clone, Debug)]
pub struct LinearPresentation {
    pub max_word_len: usize,
    pub objects: Vec<ObjectWord>,
    pub generators: Vec<Triple>,
    /// Whiskered relations first, then interchange relations.
    pub relations: Vec<LinearRelation>,
}

impl LinearPresentation {
    pub fn whiskered(&self) -> impl Iterator<Item = &LinearRelation> {
        self.relations.iter().filter(|r| matches!(r.kind, RelationKind::Whiskered { .. }))
    }

    pub fn interchange(&self) -> impl Iterator<Item = &LinearRelation> {
        self.relations.iter().filter(|r| matches!(r.kind, RelationKind::Interchange { .. }))
    }

    pub fn to_json(&self, p: &MonoidalPresentation) -> Value {
        let word = |w: &ObjectWord| p.display_word(w).to_string();
        let triple =
            |t: &Triple| json!({ "left": word(&t.left), "edge": p.edge(t.edge).name, "right": word(&t.right) });
        json!({
            "field": p.field(),
            "max_word_len": self.max_word_len,
            "objects": self.objects.iter().map(word).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(triple).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| {
                let frame = match &r.kind {
                    RelationKind::Whiskered { left, right } => json!({ "left": word(left), "right": word(right) }),
                    RelationKind::Interchange { left, right } => json!({ "left": triple(left), "right": triple(right) }),
                };
                json!({
                    "source": r.source,
                    "kind": if matches!(r.kind, RelationKind::Whiskered { .. }) { "whiskered" } else { "interchange" },
                    "frame": frame,
                    "domain": word(r.raw.domain()),
                    "codomain": word(r.raw.codomain()),
                    "raw": r.raw.display(p).to_string(),
                    "normal_form": r.normalized.display(p).to_string(),
                })
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, p: &MonoidalPresentation) -> String {
        let mut out = String::new();
        out.push_str(&format!("coefficients {}\nmax word length {}\n", p.field().name(), self.max_word_len));
        out.push_str(&format!("objects {}\n", self.objects.len()));
        out.push_str(&format!("generators {}\n", self.generators.len()));
        for t in &self.generators {
            out.push_str(&format!("  {}\n", t.display(p)));
        }
        let (w, c) = (self.whiskered().count(), self.interchange().count());
        out.push_str(&format!("relations {} ({w} whiskered, {c} interchange)\n", self.relations.len()));
        for r in &self.relations {
            let frame = match &r.kind {
                RelationKind::Whiskered { left, right } => {
                    format!("{} [{} | {}]", r.source, p.display_word(left), p.display_word(right))
                }
                RelationKind::Interchange { left, right } => {
                    format!("{} [{} , {}]", r.source, left.display(p), right.display(p))
                }
            };
            out.push_str(&format!("  {frame}: {} = 0\n", r.raw.display(p)));
        }
        out
    }
}

fn endpoint_len(p: &MonoidalPresentation) -> Result<usize, LinearizeError> {
    let mut needed = 0;
    for e in p.edges() {
        needed = needed.max(e.domain.len()).max(e.codomain.len());
    }
    Ok(needed)
}

/// `(a·v, e, w·b)` applied to every step of every path of `r`.
pub fn whisker_termwise(r: &Morphism, a: &ObjectWord, b: &ObjectWord) -> Morphism {
    let terms = r.terms().iter().map(|(c, path)| {
        let steps = path.steps().iter().map(|t| Triple::new(a.concat(&t.left), t.edge, t.right.concat(b))).collect();
        (c.clone(), Path::from_parts_unchecked(ObjectWord::concat3(a, path.base(), b), steps))
    });
    Morphism::from_terms(
        r.field(),
        ObjectWord::concat3(a, r.domain(), b),
        ObjectWord::concat3(a, r.codomain(), b),
        terms,
    )
}

/// `1_a ⊗ r ⊗ 1_b` in normal form.
pub fn whisker_relation(p: &MonoidalPresentation, r: &Morphism, a: &ObjectWord, b: &ObjectWord) -> Morphism {
    normal_form(p, &whisker_left(a, &whisker_right(r, b)))
}

/// The interchange relation for `left` and `right` acting on disjoint
/// parts of `v · dom(left) · m · dom(right) · w`: right-first minus
/// left-first.
pub fn interchange_relation(
    p: &MonoidalPresentation,
    v: &ObjectWord,
    left: crate::presentation::EdgeId,
    m: &ObjectWord,
    right: crate::presentation::EdgeId,
    w: &ObjectWord,
) -> (Triple, Triple, Morphism) {
    let (el, er) = (p.edge(left), p.edge(right));
    let base = ObjectWord::concat3(v, &el.domain, &m.concat(&er.domain).concat(w));
    let l_first = vec![
        Triple::new(v.clone(), left, ObjectWord::concat3(m, &er.domain, w)),
        Triple::new(ObjectWord::concat3(v, &el.codomain, m), right, w.clone()),
    ];
    let r_first = vec![
        Triple::new(ObjectWord::concat3(v, &el.domain, m), right, w.clone()),
        Triple::new(v.clone(), left, ObjectWord::concat3(m, &er.codomain, w)),
    ];
    let f = p.field();
    let one = crate::coeff::FieldValue::one(f);
    let cod = ObjectWord::concat3(v, &el.codomain, &m.concat(&er.codomain).concat(w));
    let rel = Morphism::from_terms(
        f,
        base.clone(),
        cod,
        [
            (one.clone(), Path::from_parts_unchecked(base.clone(), r_first)),
            (one.neg(), Path::from_parts_unchecked(base, l_first.clone())),
        ],
    );
    (l_first[0].clone(), l_first[1].clone(), rel)
}

/// Emits every generator, whiskered relation and interchange relation whose
/// object words have length at most `max_word_len`. Relations wider than
/// the bound are skipped; the bound must fit every generating morphism.
pub fn linearize(p: &MonoidalPresentation, max_word_len: usize) -> Result<LinearPresentation, LinearizeError> {
    let needed = endpoint_len(p)?;
    if max_word_len < needed {
        return Err(LinearizeError::BoundTooSmall { given: max_word_len, needed });
    }
    let n = max_word_len;
    let k = p.objects().len();
    let words = |len: usize| ObjectWord::all_up_to_length(k, len);

    let mut generators = Vec::new();
    for (id, e) in p.edges().iter().enumerate() {
        let width = e.domain.len().max(e.codomain.len());
        for v in words(n - width) {
            for w in words(n - width - v.len()) {
                generators.push(Triple::new(v.clone(), id as u32, w));
            }
        }
    }
    generators.sort_by(|a, b| {
        (a.edge, a.offset(), a.right.len(), &a.left, &a.right).cmp(&(
            b.edge,
            b.offset(),
            b.right.len(),
            &b.left,
            &b.right,
        ))
    });

    let mut whiskered = Vec::new();
    for r in p.relations() {
        let m = Morphism::from_expr(p, &r.expr)?;
        let width = m.domain().len().max(m.codomain().len());
        if width > n {
            continue;
        }
        for a in words(n - width) {
            for b in words(n - width - a.len()) {
                whiskered.push(LinearRelation {
                    source: r.name.clone(),
                    raw: whisker_termwise(&m, &a, &b),
                    normalized: whisker_relation(p, &m, &a, &b),
                    kind: RelationKind::Whiskered { left: a.clone(), right: b },
                });
            }
        }
    }
    let frame_key = |r: &LinearRelation| match &r.kind {
        RelationKind::Whiskered { left, right } => {
            (r.source.clone(), left.len(), right.len(), left.clone(), right.clone())
        }
        RelationKind::Interchange { .. } => unreachable!("only whiskered relations are sorted here"),
    };
    whiskered.sort_by_key(frame_key);

    let mut interchange = Vec::new();
    for (l, el) in p.edges().iter().enumerate() {
        for (r, er) in p.edges().iter().enumerate() {
            let lw = el.domain.len().max(el.codomain.len());
            let rw = er.domain.len().max(er.codomain.len());
            if lw + rw > n {
                continue;
            }
            let room = n - lw - rw;
            for v in words(room) {
                for m in words(room - v.len()) {
                    for w in words(room - v.len() - m.len()) {
                        let (lt, rt, rel) = interchange_relation(p, &v, l as u32, &m, r as u32, &w);
                        let key = (v.len(), m.len(), w.len(), l, r, v.clone(), m.clone(), w.clone());
                        interchange.push((
                            key,
                            LinearRelation {
                                source: "interchange".into(),
                                normalized: normal_form(p, &rel),
                                raw: rel,
                                kind: RelationKind::Interchange { left: lt, right: rt },
                            },
                        ));
                    }
                }
            }
        }
    }
    interchange.sort_by(|a, b| a.0.cmp(&b.0));

    let mut relations = whiskered;
    relations.extend(interchange.into_iter().map(|(_, r)| r));
    Ok(LinearPresentation { max_word_len: n, objects: words(n), generators, relations })
}

#[cfg(test)]
mod tests;

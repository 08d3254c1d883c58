//! Presentation of `End(a)` when every generating morphism is an
//! endomorphism.

use serde_json::{json, Value};

use super::{whisker_termwise, LinearizeError};
use crate::coeff::{Field, FieldValue};
use crate::freemon::{Morphism, Path, Triple};
use crate::ncalg::{MonomialOrder, NCPolynomial, Word};
use crate::presentation::{MonoidalPresentation, ObjectWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraGenerator {
    /// `edge[offset]`.
    pub name: String,
    pub triple: Triple,
}

impl AlgebraGenerator {
    /// Index in the convention that counts strands from the right: one more
    /// than the number of strands to the right of the generator.
    pub fn right_index(&self) -> usize {
        self.triple.right.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRelationKind {
    Whiskered {
        left: ObjectWord,
        right: ObjectWord,
    },
    /// Commutation of two generators with disjoint supports.
    Interchange {
        first: u32,
        second: u32,
    },
}

#[derive(Clone, Debug)]
pub struct AlgebraRelation {
    pub source: String,
    pub kind: AlgebraRelationKind,
    /// Words list generators in product order: `[x, y]` means `x ∘ y`.
    pub poly: NCPolynomial,
}

#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub field: Field,
    pub object: ObjectWord,
    pub generators: Vec<AlgebraGenerator>,
    pub relations: Vec<AlgebraRelation>,
}

impl AlgebraPresentation {
    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u32)
    }

    /// Emission order, used as the default generator precedence.
    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::natural(self.generators.len())
    }

    pub fn polynomials(&self) -> Vec<NCPolynomial> {
        self.relations.iter().map(|r| r.poly.clone()).collect()
    }

    /// Longest relation word.
    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(|r| r.poly.degree()).max().unwrap_or(0)
    }

    pub fn relation_label(&self, p: &MonoidalPresentation, r: &AlgebraRelation) -> String {
        match &r.kind {
            AlgebraRelationKind::Whiskered { left, right } => {
                format!("{} [{} | {}]", r.source, p.display_word(left), p.display_word(right))
            }
            AlgebraRelationKind::Interchange { first, second } => format!(
                "{} [{}, {}]",
                r.source, self.generators[*first as usize].name, self.generators[*second as usize].name
            ),
        }
    }

    /// Relations with readable labels, as consumed by the homomorphism check.
    pub fn labelled(&self, p: &MonoidalPresentation) -> Vec<(String, NCPolynomial)> {
        self.relations.iter().map(|r| (self.relation_label(p, r), r.poly.clone())).collect()
    }

    /// Word in the generators, product order, as a path in the free
    /// monoidal category.
    pub fn word_to_path(&self, w: &[u32]) -> Path {
        let steps = w.iter().rev().map(|&g| self.generators[g as usize].triple.clone()).collect();
        Path::from_parts_unchecked(self.object.clone(), steps)
    }

    /// The morphism of `End(a)` a polynomial stands for.
    pub fn to_morphism(&self, poly: &NCPolynomial) -> Morphism {
        Morphism::from_terms(
            self.field,
            self.object.clone(),
            self.object.clone(),
            poly.terms().map(|(c, w)| (c.clone(), self.word_to_path(w))),
        )
    }

    pub fn to_json(&self, p: &MonoidalPresentation) -> Value {
        let names = self.generator_names();
        let word = |w: &ObjectWord| p.display_word(w).to_string();
        json!({
            "field": self.field,
            "object": word(&self.object),
            "generators": self.generators.iter().map(|g| json!({
                "name": g.name,
                "left": word(&g.triple.left),
                "edge": p.edge(g.triple.edge).name,
                "right": word(&g.triple.right),
                "right_index": g.right_index(),
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({
                "label": self.relation_label(p, r),
                "source": r.source,
                "polynomial": r.poly.display(&names).to_string(),
                "terms": r.poly,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, p: &MonoidalPresentation) -> String {
        let names = self.generator_names();
        let mut out = format!("End({}) over {}\n", p.display_word(&self.object), self.field.name());
        out.push_str(&format!("generators {}\n", self.generators.len()));
        for g in &self.generators {
            out.push_str(&format!(
                "  {} = {}  (right-counted index {})\n",
                g.name,
                g.triple.display(p),
                g.right_index()
            ));
        }
        out.push_str(&format!("relations {}\n", self.relations.len()));
        for r in &self.relations {
            out.push_str(&format!("  {}: {} = 0\n", self.relation_label(p, r), r.poly.display(&names)));
        }
        out
    }
}

fn encode(path: &Path, index: &dyn Fn(&Triple) -> u32) -> Word {
    path.steps().iter().rev().map(index).collect()
}

/// Presentation of `End(object)` by generators `(v, e, w)` with
/// `v · dom(e) · w = object`.
pub fn end_algebra(p: &MonoidalPresentation, object: &ObjectWord) -> Result<AlgebraPresentation, LinearizeError> {
    if let Some(e) = p.edges().iter().find(|e| !e.is_endomorphism()) {
        return Err(LinearizeError::NotEndomorphism(e.name.clone()));
    }
    let mut generators = Vec::new();
    for (id, e) in p.edges().iter().enumerate() {
        let k = e.domain.len();
        if k > object.len() {
            continue;
        }
        for pos in 0..=object.len() - k {
            if object.matches_at(&e.domain, pos) {
                let t = Triple::new(object.slice(0, pos), id as u32, object.slice(pos + k, object.len()));
                generators.push(AlgebraGenerator { name: format!("{}[{pos}]", e.name), triple: t });
            }
        }
    }
    let index = |t: &Triple| -> u32 {
        generators.iter().position(|g| &g.triple == t).expect("every step at the object is a generator") as u32
    };

    // relations equal up to a scalar are emitted once
    let mut seen: Vec<NCPolynomial> = Vec::new();
    let mut relations = Vec::new();
    let mut keep = |poly: NCPolynomial, source: String, kind: AlgebraRelationKind, out: &mut Vec<AlgebraRelation>| {
        if poly.is_zero() {
            return;
        }
        let key = poly.make_monic();
        if !seen.contains(&key) {
            seen.push(key);
            out.push(AlgebraRelation { source, kind, poly });
        }
    };

    let mut whiskered = Vec::new();
    for r in p.relations() {
        let m = Morphism::from_expr(p, &r.expr)?;
        let dom = m.domain().clone();
        if dom.len() > object.len() {
            continue;
        }
        for pos in 0..=object.len() - dom.len() {
            if !object.matches_at(&dom, pos) {
                continue;
            }
            let (a, b) = (object.slice(0, pos), object.slice(pos + dom.len(), object.len()));
            let raw = whisker_termwise(&m, &a, &b);
            let poly = NCPolynomial::from_terms(
                p.field(),
                raw.terms().iter().map(|(c, path)| (c.clone(), encode(path, &index))),
            );
            whiskered.push(((r.name.clone(), a.len(), b.len(), a.clone(), b.clone()), poly));
        }
    }
    whiskered.sort_by(|x, y| x.0.cmp(&y.0));
    for ((source, _, _, a, b), poly) in whiskered {
        keep(poly, source, AlgebraRelationKind::Whiskered { left: a, right: b }, &mut relations);
    }

    let one = FieldValue::one(p.field());
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let (x, y) = (&generators[i].triple, &generators[j].triple);
            let (xs, ys) = (x.offset(), y.offset());
            let (xe, ye) = (xs + p.edge(x.edge).domain.len(), ys + p.edge(y.edge).domain.len());
            if xe <= ys || ye <= xs {
                let poly = NCPolynomial::from_terms(
                    p.field(),
                    [(one.clone(), vec![i as u32, j as u32]), (one.neg(), vec![j as u32, i as u32])],
                );
                keep(
                    poly,
                    "interchange".into(),
                    AlgebraRelationKind::Interchange { first: i as u32, second: j as u32 },
                    &mut relations,
                );
            }
        }
    }
    Ok(AlgebraPresentation { field: p.field(), object: object.clone(), generators, relations })
}

//! Explicit finite-dimensional algebras with images for presentation
//! generators, used to certify that a presented algebra is what it claims.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::poly::NCPolynomial;
use crate::coeff::{Field, FieldValue};
use crate::linalg::{axpy, SparseVec, Subspace};
use crate::presentation::FrobeniusAlgebraData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReferenceError {
    #[error("reference algebra is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("basis element {0} is not a unit")]
    NotUnital(usize),
    #[error("no image given for generator '{0}'")]
    MissingImage(String),
    #[error("coefficient field mismatch")]
    FieldMismatch,
}

/// Finite-dimensional algebra given by structure constants on a basis.
#[derive(Clone, Debug)]
pub struct ReferenceAlgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    unit: usize,
    images: BTreeMap<String, SparseVec>,
}

impl ReferenceAlgebra {
    /// Validates associativity on all basis triples and that basis element
    /// `unit` is a two-sided identity.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: usize,
        images: BTreeMap<String, SparseVec>,
    ) -> Result<Self, ReferenceError> {
        let alg = ReferenceAlgebra { name: name.into(), field, labels, table, unit, images };
        let n = alg.dim();
        for a in 0..n {
            let e = alg.basis_vector(a);
            let u = alg.basis_vector(unit);
            if alg.mul(&u, &e) != e || alg.mul(&e, &u) != e {
                return Err(ReferenceError::NotUnital(unit));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = &alg.table[a][b];
                for c in 0..n {
                    let left = alg.mul(ab, &alg.basis_vector(c));
                    let bc = &alg.table[b][c];
                    let right = alg.mul(&alg.basis_vector(a), bc);
                    if left != right {
                        return Err(ReferenceError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn images(&self) -> &BTreeMap<String, SparseVec> {
        &self.images
    }

    /// Replaces the image of one generator.
    pub fn with_image(mut self, generator: &str, image: SparseVec) -> Self {
        self.images.insert(generator.to_string(), image);
        self
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        SparseVec::from([(i, FieldValue::one(self.field))])
    }

    pub fn one(&self) -> SparseVec {
        self.basis_vector(self.unit)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                axpy(&mut out, &(a * b), &self.table[i][j]);
            }
        }
        out
    }

    /// Image of `p` under the generator assignment `names[g] -> image`.
    pub fn evaluate(&self, names: &[String], p: &NCPolynomial) -> Result<SparseVec, ReferenceError> {
        if p.field() != self.field {
            return Err(ReferenceError::FieldMismatch);
        }
        let mut out = SparseVec::new();
        for (c, w) in p.terms() {
            let mut acc = self.one();
            for &g in w {
                let name = &names[g as usize];
                let img = self.images.get(name).ok_or_else(|| ReferenceError::MissingImage(name.clone()))?;
                acc = self.mul(&acc, img);
            }
            axpy(&mut out, c, &acc);
        }
        Ok(out)
    }

    pub fn display_element(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter().map(|(i, c)| format!("({c}) {}", self.labels[*i])).collect::<Vec<_>>().join(" + ")
    }

    /// Group algebra of `S_d`. Permutations are composed as functions,
    /// `(πσ)(j) = π(σ(j))`, and `s[k]` is sent to the transposition of
    /// positions `k` and `k + 1`.
    pub fn symmetric_group(d: usize) -> Self {
        Self::wreath(&FrobeniusAlgebraData::trivial(), d)
    }

    /// `A^{⊗d} ⋊ S_d` with `(a ⊗ π)(b ⊗ σ) = a (π·b) ⊗ πσ`, where
    /// `(π·b)_{π(j)} = b_j`. Images: `s[k]` as in [`symmetric_group`](Self::symmetric_group),
    /// `u_<x>[j]` is `x` in tensor slot `j`.
    pub fn wreath(a: &FrobeniusAlgebraData, d: usize) -> Self {
        let field = Field::Rational;
        let perms = permutations(d);
        let perm_index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let tuples = tuples(a.dim(), d);
        let tuple_index: BTreeMap<Vec<usize>, usize> =
            tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let idx = |t: usize, p: usize| t * perms.len() + p;
        let mut labels = Vec::new();
        for t in &tuples {
            for p in &perms {
                let slots: Vec<&str> = t.iter().map(|&b| a.labels()[b].as_str()).collect();
                let img: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                labels.push(format!("[{}|{}]", slots.join(","), img.join("")))
            }
        }
        let dim = labels.len();
        let mut table = vec![vec![SparseVec::new(); dim]; dim];
        for (t1, a1) in tuples.iter().enumerate() {
            for (p1, pi) in perms.iter().enumerate() {
                for (t2, a2) in tuples.iter().enumerate() {
                    // (π·a2)_{π(j)} = a2_j
                    let mut moved = vec![0usize; d];
                    for j in 0..d {
                        moved[pi[j]] = a2[j];
                    }
                    // slotwise products a1_j * moved_j, expanded into basis tuples
                    let mut partial: Vec<(Vec<usize>, crate::coeff::Rational)> =
                        vec![(Vec::new(), num_traits::One::one())];
                    for j in 0..d {
                        let prod = a.basis_product(a1[j], moved[j]);
                        let mut next = Vec::new();
                        for (t, c) in &partial {
                            for (b, k) in prod.iter().enumerate() {
                                if !num_traits::Zero::is_zero(k) {
                                    let mut t2 = t.clone();
                                    t2.push(b);
                                    next.push((t2, c * k));
                                }
                            }
                        }
                        partial = next;
                    }
                    for (p2, sigma) in perms.iter().enumerate() {
                        let composed: Vec<usize> = (0..d).map(|j| pi[sigma[j]]).collect();
                        let pc = perm_index[&composed];
                        let entry = &mut table[idx(t1, p1)][idx(t2, p2)];
                        for (t, c) in &partial {
                            let key = idx(tuple_index[t], pc);
                            let v = SparseVec::from([(key, FieldValue::from_rational(field, c.clone()))]);
                            axpy(entry, &FieldValue::one(field), &v);
                        }
                    }
                }
            }
        }
        let unit_tuple = {
            let u = a.unit();
            assert!(
                u.iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() == 1,
                "wreath reference needs a unit that is a basis element"
            );
            u.iter().position(|c| !num_traits::Zero::is_zero(c)).expect("unit is nonzero")
        };
        let identity: Vec<usize> = (0..d).collect();
        let unit = idx(tuple_index[&vec![unit_tuple; d]], perm_index[&identity]);
        let mut images = BTreeMap::new();
        for k in 0..d.saturating_sub(1) {
            let mut p = identity.clone();
            p.swap(k, k + 1);
            images.insert(
                format!("s[{k}]"),
                SparseVec::from([(idx(tuple_index[&vec![unit_tuple; d]], perm_index[&p]), FieldValue::one(field))]),
            );
        }
        for (b, label) in a.labels().iter().enumerate() {
            for j in 0..d {
                let mut t = vec![unit_tuple; d];
                t[j] = b;
                images.insert(
                    format!("u_{label}[{j}]"),
                    SparseVec::from([(idx(tuple_index[&t], perm_index[&identity]), FieldValue::one(field))]),
                );
            }
        }
        let name = if a.dim() == 1 { format!("S{d}") } else { format!("{}^{d} x| S{d}", a.name()) };
        ReferenceAlgebra::new(name, field, labels, table, unit, images).expect("wreath structure constants are valid")
    }
}

/// All permutations of `0..d` as image vectors, in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..d).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..d).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..d).rev().find(|&j| p[j] > p[i - 1]).expect("exists by choice of i");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|t| (0..n).map(move |b| [t.clone(), vec![b]].concat())).collect();
    }
    out
}

/// Relation whose image is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismVerdict {
    pub well_defined: bool,
    pub violation: Option<Violation>,
    pub image_dim: usize,
    pub target_dim: usize,
}

impl HomomorphismVerdict {
    pub fn surjective(&self) -> bool {
        self.image_dim == self.target_dim
    }

    /// Together with a presented dimension equal to the target dimension,
    /// a well-defined surjection is an isomorphism.
    pub fn isomorphism_with(&self, presented_dim: Option<u128>) -> bool {
        self.well_defined && self.surjective() && presented_dim == Some(self.target_dim as u128)
    }
}

/// Checks that every relation maps to zero, then closes the span of the
/// image of 1 under left multiplication by generator images.
pub fn check_homomorphism(
    generators: &[String],
    relations: &[(String, NCPolynomial)],
    target: &ReferenceAlgebra,
) -> Result<HomomorphismVerdict, ReferenceError> {
    let mut violation = None;
    for (name, r) in relations {
        let v = target.evaluate(generators, r)?;
        if !v.is_empty() {
            violation = Some(Violation { relation: name.clone(), image: target.display_element(&v) });
            break;
        }
    }
    let images: Vec<&SparseVec> = generators
        .iter()
        .map(|g| target.images.get(g).ok_or_else(|| ReferenceError::MissingImage(g.clone())))
        .collect::<Result<_, _>>()?;
    let mut span = Subspace::new(target.field);
    let mut frontier = vec![target.one()];
    span.insert(&target.one());
    while let Some(v) = frontier.pop() {
        for g in &images {
            let w = target.mul(g, &v);
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    Ok(HomomorphismVerdict {
        well_defined: violation.is_none(),
        violation,
        image_dim: span.dim(),
        target_dim: target.dim(),
    })
}

//! Noncommutative polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::coeff::{Field, FieldValue};

/// Word in the generators, read as a product left to right.
pub type Word = Vec<u32>;

/// Word ordered degree-lexicographically by generator index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Word);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deglex with an explicit generator precedence: `rank[g]` is the position of
/// generator `g`, and higher rank means larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<u32>,
    by_rank: Vec<u32>,
}

impl MonomialOrder {
    /// Generator `i` has rank `i`.
    pub fn natural(n: usize) -> Self {
        let ids: Vec<u32> = (0..n as u32).collect();
        MonomialOrder { rank: ids.clone(), by_rank: ids }
    }

    /// `increasing` lists the generators from smallest to largest. Returns
    /// `None` unless it is a permutation of `0..n`.
    pub fn from_precedence(increasing: &[u32]) -> Option<Self> {
        let n = increasing.len();
        let mut rank = vec![u32::MAX; n];
        for (r, &g) in increasing.iter().enumerate() {
            let slot = rank.get_mut(g as usize)?;
            if *slot != u32::MAX {
                return None;
            }
            *slot = r as u32;
        }
        Some(MonomialOrder { rank, by_rank: increasing.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Generators from smallest to largest.
    pub fn precedence(&self) -> &[u32] {
        &self.by_rank
    }

    pub fn cmp_words(&self, a: &[u32], b: &[u32]) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().map(|&g| self.rank[g as usize]).cmp(b.iter().map(|&g| self.rank[g as usize])))
    }

    pub(crate) fn to_internal(&self, w: &[u32]) -> Word {
        w.iter().map(|&g| self.rank[g as usize]).collect()
    }

    pub(crate) fn to_external(&self, w: &[u32]) -> Word {
        w.iter().map(|&r| self.by_rank[r as usize]).collect()
    }
}

/// Finite linear combination of words. Terms are kept in a map ordered by
/// natural deglex, so the leading term is the last entry; callers using
/// another precedence relabel first (see [`MonomialOrder`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPolynomial {
    field: Field,
    terms: BTreeMap<Monomial, FieldValue>,
}

impl NCPolynomial {
    pub fn zero(field: Field) -> Self {
        NCPolynomial { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldValue) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn one(field: Field) -> Self {
        Self::constant(FieldValue::one(field))
    }

    pub fn term(c: FieldValue, w: Word) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(c, w);
        p
    }

    pub fn monomial(field: Field, w: Word) -> Self {
        Self::term(FieldValue::one(field), w)
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (FieldValue, Word)>) -> Self {
        let mut p = Self::zero(field);
        for (c, w) in terms {
            p.add_term(c, w);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest word to smallest.
    pub fn terms(&self) -> impl Iterator<Item = (&FieldValue, &Word)> {
        self.terms.iter().rev().map(|(m, c)| (c, &m.0))
    }

    pub fn coefficient(&self, w: &[u32]) -> Option<&FieldValue> {
        self.terms.get(&Monomial(w.to_vec()))
    }

    pub fn leading(&self) -> Option<(&FieldValue, &Word)> {
        self.terms.iter().next_back().map(|(m, c)| (c, &m.0))
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back().map(|m| &m.0)
    }

    /// Length of the longest word; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).max()
    }

    pub fn add_term(&mut self, c: FieldValue, w: Word) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(w);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `self += c * left * other * right`.
    pub fn add_scaled(&mut self, c: &FieldValue, left: &[u32], other: &NCPolynomial, right: &[u32]) {
        for (m, x) in &other.terms {
            let mut w = Vec::with_capacity(left.len() + m.0.len() + right.len());
            w.extend_from_slice(left);
            w.extend_from_slice(&m.0);
            w.extend_from_slice(right);
            self.add_term(c * x, w);
        }
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.add_scaled(&FieldValue::one(self.field), &[], other, &[]);
        out
    }

    pub fn sub(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.add_scaled(&FieldValue::one(self.field).neg(), &[], other, &[]);
        out
    }

    pub fn neg(&self) -> NCPolynomial {
        self.scale(&FieldValue::one(self.field).neg())
    }

    pub fn scale(&self, c: &FieldValue) -> NCPolynomial {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        NCPolynomial { field: self.field, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = Self::zero(self.field);
        for (m, x) in &self.terms {
            out.add_scaled(x, &m.0, other, &[]);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> NCPolynomial {
        match self.leading() {
            None => self.clone(),
            Some((c, _)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Applies `f` to every generator letter.
    pub fn relabel(&self, f: impl Fn(&[u32]) -> Word) -> NCPolynomial {
        Self::from_terms(self.field, self.terms.iter().map(|(m, c)| (c.clone(), f(&m.0))))
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, FieldValue)> {
        self.terms.pop_last().map(|(m, c)| (m.0, c))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

pub struct PolyDisplay<'a> {
    p: &'a NCPolynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.p.terms().enumerate() {
            let printed = c.to_string();
            let (neg, mag) = if printed.starts_with('-') { (true, c.neg()) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word: Vec<&str> = w.iter().map(|&g| self.names.get(g as usize).map_or("?", String::as_str)).collect();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&word.join(" "))?;
            } else if mag.is_atomic() {
                write!(f, "{mag} {}", word.join(" "))?;
            } else {
                write!(f, "({mag}) {}", word.join(" "))?;
            }
        }
        Ok(())
    }
}

struct TermSer<'a>(&'a FieldValue, &'a Word);

impl Serialize for TermSer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("coefficient", self.0)?;
        st.serialize_field("word", self.1)?;
        st.end()
    }
}

impl Serialize for NCPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (c, w) in self.terms() {
            seq.serialize_element(&TermSer(c, w))?;
        }
        seq.end()
    }
}

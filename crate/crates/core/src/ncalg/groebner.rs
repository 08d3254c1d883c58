//! Degree-bounded noncommutative Buchberger completion.
//!
//! Internally generators are relabeled by precedence rank so that plain
//! deglex on indices is the requested order. Obstructions are processed in
//! order of degree; an obstruction above the bound is left unresolved and
//! recorded. If the normal words run out at some degree `k`, every leading
//! word has length at most `k`, so resolving all obstructions up to `2k - 1`
//! finishes the basis and the dimension is exact.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use super::poly::{Monomial, MonomialOrder, NCPolynomial, Word};
use crate::coeff::{Field, FieldValue};
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcAlgError {
    #[error("product of degree {degree} exceeds the verified degree {verified}")]
    DegreeOverflow { degree: usize, verified: usize },
    #[error("generator {generator} is outside an alphabet of {alphabet}")]
    UnknownGenerator { generator: u32, alphabet: usize },
    #[error("coefficient field mismatch")]
    FieldMismatch,
}

#[derive(Clone, Debug)]
struct Elem {
    lead: Word,
    tail: NCPolynomial,
    poly: NCPolynomial,
}

impl Elem {
    fn new(monic: NCPolynomial) -> Self {
        let mut tail = monic.clone();
        let (lead, _) = tail.pop_leading().expect("nonzero");
        Elem { lead, tail, poly: monic }
    }
}

/// Leading words with fast subword lookup.
#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_word: HashMap<Word, usize>,
    lens: BTreeMap<usize, usize>,
}

impl LeadIndex {
    fn insert(&mut self, w: Word, i: usize) {
        *self.lens.entry(w.len()).or_default() += 1;
        self.by_word.insert(w, i);
    }

    fn remove(&mut self, w: &Word) {
        if self.by_word.remove(w).is_some() {
            let n = self.lens.get_mut(&w.len()).expect("tracked length");
            *n -= 1;
            if *n == 0 {
                self.lens.remove(&w.len());
            }
        }
    }

    /// Some `(element, position)` whose leading word occurs in `w`.
    fn find(&self, w: &[u32]) -> Option<(usize, usize)> {
        for &len in self.lens.keys() {
            if len > w.len() {
                break;
            }
            for pos in 0..=w.len() - len {
                if let Some(&i) = self.by_word.get(&w[pos..pos + len]) {
                    return Some((i, pos));
                }
            }
        }
        None
    }
}

fn reduce_with(p: &NCPolynomial, elems: &[Option<Elem>], index: &LeadIndex) -> NCPolynomial {
    let mut rest = p.clone();
    let mut out = NCPolynomial::zero(p.field());
    while let Some((w, c)) = rest.pop_leading() {
        match index.find(&w) {
            Some((i, pos)) => {
                let e = elems[i].as_ref().expect("indexed elements are live");
                rest.add_scaled(&c.neg(), &w[..pos], &e.tail, &w[pos + e.lead.len()..]);
            }
            None => out.add_term(c, w),
        }
    }
    out
}

/// Trie of leading words with failure links, for counting words that avoid
/// all of them.
struct Automaton {
    next: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl Automaton {
    #[allow(clippy::needless_range_loop)]
    fn new(alphabet: usize, words: &[&Word]) -> Self {
        let mut next: Vec<Vec<usize>> = vec![vec![usize::MAX; alphabet]];
        let mut dead = vec![false];
        for w in words {
            let mut s = 0;
            for &g in w.iter() {
                let g = g as usize;
                if next[s][g] == usize::MAX {
                    next.push(vec![usize::MAX; alphabet]);
                    dead.push(false);
                    next[s][g] = next.len() - 1;
                }
                s = next[s][g];
            }
            dead[s] = true;
        }
        let mut fail = vec![0usize; next.len()];
        let mut queue = VecDeque::new();
        for g in 0..alphabet {
            if next[0][g] == usize::MAX {
                next[0][g] = 0;
            } else {
                let t = next[0][g];
                fail[t] = 0;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for g in 0..alphabet {
                let t = next[s][g];
                if t == usize::MAX {
                    next[s][g] = next[fail[s]][g];
                } else {
                    fail[t] = next[fail[s]][g];
                    queue.push_back(t);
                }
            }
        }
        Automaton { next, dead }
    }

    /// Number of words of each length `0..=max` avoiding every pattern.
    fn counts(&self, max: usize) -> Vec<u128> {
        let mut cur = vec![0u128; self.next.len()];
        cur[0] = 1;
        let mut out = Vec::with_capacity(max + 1);
        for d in 0..=max {
            out.push(cur.iter().fold(0u128, |a, &b| a.saturating_add(b)));
            if d == max {
                break;
            }
            let mut nxt = vec![0u128; self.next.len()];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &t in &self.next[s] {
                    if !self.dead[t] {
                        nxt[t] = nxt[t].saturating_add(c);
                    }
                }
            }
            cur = nxt;
        }
        out
    }

    fn words(&self, max: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Vec::new())];
        while let Some((s, w)) = stack.pop() {
            if w.len() < max {
                for (g, &t) in self.next[s].iter().enumerate() {
                    if !self.dead[t] {
                        let mut w2 = w.clone();
                        w2.push(g as u32);
                        stack.push((t, w2));
                    }
                }
            }
            out.push(w);
        }
        out
    }
}

enum Task {
    Poly(NCPolynomial),
    Overlap { i: usize, j: usize, k: usize },
}

struct Completer {
    field: Field,
    alphabet: usize,
    elems: Vec<Option<Elem>>,
    index: LeadIndex,
    queue: BTreeMap<usize, Vec<Task>>,
}

impl Completer {
    fn push(&mut self, degree: usize, t: Task) {
        self.queue.entry(degree).or_default().push(t);
    }

    fn s_poly(&self, t: &Task) -> Option<NCPolynomial> {
        match t {
            Task::Poly(p) => Some(p.clone()),
            &Task::Overlap { i, j, k } => {
                let (a, b) = (self.elems[i].as_ref()?, self.elems[j].as_ref()?);
                let one = FieldValue::one(self.field);
                let mut s = NCPolynomial::zero(self.field);
                s.add_scaled(&one, &[], &a.poly, &b.lead[k..]);
                s.add_scaled(&one.neg(), &a.lead[..a.lead.len() - k], &b.poly, &[]);
                Some(s)
            }
        }
    }

    fn add(&mut self, r: NCPolynomial) {
        let e = Elem::new(r.make_monic());
        // elements whose leading word contains the new one are redundant
        for i in 0..self.elems.len() {
            let contains = self.elems[i]
                .as_ref()
                .is_some_and(|old| old.lead.windows(e.lead.len()).any(|win| win == e.lead.as_slice()));
            if contains {
                let old = self.elems[i].take().expect("checked above");
                self.index.remove(&old.lead);
                self.push(old.poly.degree(), Task::Poly(old.poly));
            }
        }
        let n = self.elems.len();
        self.index.insert(e.lead.clone(), n);
        self.elems.push(Some(e));
        for i in 0..=n {
            let Some(a) = &self.elems[i] else { continue };
            let u = a.lead.clone();
            let v = self.elems[n].as_ref().expect("just added").lead.clone();
            let mut found = Vec::new();
            for k in 1..u.len().min(v.len()) {
                if u[u.len() - k..] == v[..k] {
                    found.push((u.len() + v.len() - k, Task::Overlap { i, j: n, k }));
                }
                if i != n && v[v.len() - k..] == u[..k] {
                    found.push((u.len() + v.len() - k, Task::Overlap { i: n, j: i, k }));
                }
            }
            for (d, t) in found {
                self.push(d, t);
            }
        }
    }

    fn run(&mut self, limit: usize, exec: Exec) {
        while let Some(entry) = self.queue.first_entry() {
            if *entry.key() > limit {
                break;
            }
            let tasks = entry.remove();
            let snapshot = &*self;
            let reduced =
                exec.map(&tasks, |t| snapshot.s_poly(t).map(|s| reduce_with(&s, &snapshot.elems, &snapshot.index)));
            for r in reduced.into_iter().flatten() {
                let r = reduce_with(&r, &self.elems, &self.index);
                if !r.is_zero() {
                    self.add(r);
                }
            }
        }
    }

    fn live(&self) -> impl Iterator<Item = &Elem> {
        self.elems.iter().flatten()
    }

    fn counts(&self, max: usize) -> Vec<u128> {
        let leads: Vec<&Word> = self.live().map(|e| &e.lead).collect();
        Automaton::new(self.alphabet, &leads).counts(max)
    }

    fn pending_live(&self) -> bool {
        self.queue.values().flatten().any(|t| match t {
            Task::Poly(_) => true,
            &Task::Overlap { i, j, .. } => self.elems[i].is_some() && self.elems[j].is_some(),
        })
    }
}

/// Result of a degree-bounded completion.
#[derive(Clone, Debug)]
pub struct GroebnerState {
    field: Field,
    order: MonomialOrder,
    /// Monic, tail-reduced, in internal labels, sorted by leading word.
    elems: Vec<Option<Elem>>,
    leads: LeadIndex,
    verified_degree: usize,
    complete: bool,
    counts: Vec<u128>,
}

impl GroebnerState {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn num_generators(&self) -> usize {
        self.order.len()
    }

    /// Every obstruction of degree at most this has been resolved.
    pub fn verified_degree(&self) -> usize {
        self.verified_degree
    }

    /// True when no obstruction of any degree is left, so the basis is a
    /// full Groebner basis.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of normal words in each degree `0..=verified_degree`.
    pub fn normal_word_counts(&self) -> &[u128] {
        &self.counts
    }

    /// Basis in the caller's labels, sorted by degree then leading word.
    pub fn basis(&self) -> Vec<NCPolynomial> {
        let mut out: Vec<NCPolynomial> =
            self.elems.iter().flatten().map(|e| e.poly.relabel(|w| self.order.to_external(w))).collect();
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| self.external_lead(a).cmp(&self.external_lead(b))));
        out
    }

    fn external_lead(&self, p: &NCPolynomial) -> Word {
        let internal = p.relabel(|w| self.order.to_internal(w));
        self.order.to_external(internal.leading_word().map_or(&[][..], |w| w.as_slice()))
    }

    fn reduce_internal(&self, p: &NCPolynomial) -> NCPolynomial {
        reduce_with(p, &self.elems, &self.leads)
    }

    fn check(&self, p: &NCPolynomial) -> Result<(), NcAlgError> {
        if p.field() != self.field {
            return Err(NcAlgError::FieldMismatch);
        }
        match p.max_generator() {
            Some(g) if g as usize >= self.num_generators() => {
                Err(NcAlgError::UnknownGenerator { generator: g, alphabet: self.num_generators() })
            }
            _ => Ok(()),
        }
    }

    /// Normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &NCPolynomial) -> Result<NCPolynomial, NcAlgError> {
        self.check(p)?;
        let internal = p.relabel(|w| self.order.to_internal(w));
        Ok(self.reduce_internal(&internal).relabel(|w| self.order.to_external(w)))
    }

    pub fn is_zero_in_quotient(&self, p: &NCPolynomial) -> Result<bool, NcAlgError> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Normal form of `p * q`. Refused when the product could leave the
    /// verified range.
    pub fn quotient_mul(&self, p: &NCPolynomial, q: &NCPolynomial) -> Result<NCPolynomial, NcAlgError> {
        let degree = p.degree() + q.degree();
        if !self.complete && degree > self.verified_degree {
            return Err(NcAlgError::DegreeOverflow { degree, verified: self.verified_degree });
        }
        self.reduce(&p.mul(q))
    }

    /// Normal words of degree at most `max`, in the caller's labels.
    pub fn normal_words(&self, max: usize) -> Vec<Word> {
        let leads: Vec<&Word> = self.elems.iter().flatten().map(|e| &e.lead).collect();
        let mut out: Vec<Word> = Automaton::new(self.num_generators(), &leads)
            .words(max)
            .into_iter()
            .map(|w| self.order.to_external(&w))
            .collect();
        out.sort_by(|a, b| self.order.cmp_words(a, b));
        out
    }

    /// Dimension summary of the quotient.
    pub fn quotient_dim(&self) -> QuotientDim {
        let zero_at = self.counts.iter().position(|&c| c == 0);
        let dimension = zero_at.map(|k| self.counts[..k].iter().fold(0u128, |a, &b| a.saturating_add(b)));
        QuotientDim {
            finite: zero_at.is_some(),
            dimension,
            counts: self.counts.clone(),
            verified_degree: self.verified_degree,
            complete: self.complete,
        }
    }
}

/// Outcome of [`GroebnerState::quotient_dim`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientDim {
    /// Some degree has no normal words, hence none above it either.
    pub finite: bool,
    pub dimension: Option<u128>,
    /// Normal words per degree.
    pub counts: Vec<u128>,
    pub verified_degree: usize,
    pub complete: bool,
}

impl QuotientDim {
    /// Running totals of [`counts`](Self::counts).
    pub fn cumulative(&self) -> Vec<u128> {
        self.counts
            .iter()
            .scan(0u128, |acc, &c| {
                *acc = acc.saturating_add(c);
                Some(*acc)
            })
            .collect()
    }
}

/// Completes `relations` with respect to `order`, resolving every obstruction
/// of degree at most `max_degree`. When the normal words are seen to run out,
/// completion continues until the basis is provably finished.
pub fn complete(
    field: Field,
    relations: &[NCPolynomial],
    order: &MonomialOrder,
    max_degree: usize,
    exec: Exec,
) -> Result<GroebnerState, NcAlgError> {
    let n = order.len();
    let mut c =
        Completer { field, alphabet: n, elems: Vec::new(), index: LeadIndex::default(), queue: BTreeMap::new() };
    for r in relations {
        if r.field() != field {
            return Err(NcAlgError::FieldMismatch);
        }
        if let Some(g) = r.max_generator().filter(|&g| g as usize >= n) {
            return Err(NcAlgError::UnknownGenerator { generator: g, alphabet: n });
        }
        if !r.is_zero() {
            c.push(r.degree(), Task::Poly(r.relabel(|w| order.to_internal(w))));
        }
    }
    let mut limit = max_degree;
    c.run(limit, exec);
    while let Some(k) = c.counts(limit).iter().position(|&x| x == 0) {
        let target = (2 * k).saturating_sub(1);
        if target <= limit {
            break;
        }
        limit = target;
        c.run(limit, exec);
    }
    let complete = !c.pending_live();

    // tail-reduce against the other elements
    let mut raw: Vec<Elem> = c.live().cloned().collect();
    raw.sort_by_key(|a| Monomial(a.lead.clone()));
    let mut leads = LeadIndex::default();
    for (i, e) in raw.iter().enumerate() {
        leads.insert(e.lead.clone(), i);
    }
    let raw: Vec<Option<Elem>> = raw.into_iter().map(Some).collect();
    let elems: Vec<Option<Elem>> = raw
        .iter()
        .flatten()
        .map(|e| {
            let mut p = reduce_with(&e.tail, &raw, &leads);
            p.add_term(FieldValue::one(field), e.lead.clone());
            Some(Elem::new(p))
        })
        .collect();
    let counts = c.counts(limit);
    Ok(GroebnerState { field, order: order.clone(), elems, leads, verified_degree: limit, complete, counts })
}

impl Serialize for GroebnerState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroebnerState", 6)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("precedence", self.order.precedence())?;
        st.serialize_field("verified_degree", &self.verified_degree)?;
        st.serialize_field("complete", &self.complete)?;
        st.serialize_field("normal_word_counts", &self.counts)?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}

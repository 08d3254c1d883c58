//! Brute-force spans of framed ideal elements inside truncated hom-spaces.

use std::collections::{BTreeMap, BTreeSet};

use super::{compose, normal_form, normalize_path, tensor, Morphism, Path, Triple};
use crate::linalg::{SparseVec, Subspace};
use crate::par::Exec;
use crate::presentation::{MonoidalPresentation, ObjectWord};

/// Whether paths are identified up to interchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanMode {
    /// Work in the free monoidal category: paths are taken up to interchange.
    Normalized,
    /// Work in the free linear category on whiskered triples.
    Raw,
}

/// Triples that can be applied to `x`.
fn applicable(p: &MonoidalPresentation, x: &ObjectWord) -> Vec<Triple> {
    let mut out = Vec::new();
    for (id, e) in p.edges().iter().enumerate() {
        let k = e.domain.len();
        if k > x.len() {
            continue;
        }
        for pos in 0..=x.len() - k {
            if x.matches_at(&e.domain, pos) {
                out.push(Triple::new(x.slice(0, pos), id as u32, x.slice(pos + k, x.len())));
            }
        }
    }
    out
}

/// All paths out of `from` with at most `max_steps` steps, optionally
/// restricted to those ending at `to`. In normalized mode each class is
/// represented once, by its normal form. Sorted and duplicate free.
pub fn enumerate_paths(
    p: &MonoidalPresentation,
    from: &ObjectWord,
    to: Option<&ObjectWord>,
    max_steps: usize,
    mode: SpanMode,
) -> Vec<Path> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![(Path::identity(from.clone()), from.clone())];
    for depth in 0..=max_steps {
        let mut next = Vec::new();
        for (path, end) in &frontier {
            if to.is_none_or(|t| t == end) {
                let keep = match mode {
                    SpanMode::Raw => path.clone(),
                    SpanMode::Normalized => normalize_path(p, path).0,
                };
                out.insert(keep);
            }
            if depth < max_steps {
                for t in applicable(p, end) {
                    let cod = t.codomain(p);
                    let mut steps = path.steps.clone();
                    steps.push(t);
                    next.push((Path::from_parts_unchecked(from.clone(), steps), cod));
                }
            }
        }
        if mode == SpanMode::Normalized {
            // paths equal up to interchange have the same future
            let mut seen = BTreeSet::new();
            next.retain(|(path, _)| seen.insert(normalize_path(p, path).0));
        }
        frontier = next;
    }
    out.into_iter().collect()
}

/// Coordinates for a fixed list of paths.
#[derive(Clone, Debug)]
pub struct PathBasis {
    pub mode: SpanMode,
    pub paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

impl PathBasis {
    pub fn new(mode: SpanMode, paths: Vec<Path>) -> Self {
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PathBasis { mode, paths, index }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Coordinates of `m`, or `None` if some path is outside the basis.
    pub fn vectorize(&self, p: &MonoidalPresentation, m: &Morphism) -> Option<SparseVec> {
        let m = match self.mode {
            SpanMode::Raw => m.clone(),
            SpanMode::Normalized => normal_form(p, m),
        };
        let mut v = SparseVec::new();
        for (c, path) in m.terms() {
            v.insert(*self.index.get(path)?, c.clone());
        }
        Some(v)
    }
}

fn frames(p: &MonoidalPresentation, from: &ObjectWord, to: &ObjectWord, bound: usize, mode: SpanMode) -> Vec<Morphism> {
    enumerate_paths(p, from, Some(to), bound, mode).into_iter().map(|path| Morphism::from_path(p, path)).collect()
}

/// Span of every `post ∘ i ∘ pre` that fits in the basis, with `pre` and
/// `post` paths of at most `framing_bound` steps each and total length at
/// most `max_steps`. Also returns how many instances were used.
#[allow(clippy::too_many_arguments)]
pub fn ideal_subspace(
    p: &MonoidalPresentation,
    basis: &PathBasis,
    domain: &ObjectWord,
    codomain: &ObjectWord,
    generators: &[Morphism],
    max_steps: usize,
    framing_bound: usize,
    exec: Exec,
) -> (Subspace, usize) {
    let mut jobs = Vec::new();
    for g in generators {
        let len = g.max_steps();
        if len > max_steps {
            continue;
        }
        let budget = (max_steps - len).min(2 * framing_bound);
        let pres = frames(p, domain, g.domain(), framing_bound.min(budget), basis.mode);
        let posts = frames(p, g.codomain(), codomain, framing_bound.min(budget), basis.mode);
        for pre in &pres {
            for post in &posts {
                if pre.max_steps() + post.max_steps() + len <= max_steps {
                    jobs.push((g, pre.clone(), post.clone()));
                }
            }
        }
    }
    let rows = exec.map(&jobs, |(g, pre, post)| {
        let m = compose(post, &compose(g, pre).expect("frame fits")).expect("frame fits");
        basis.vectorize(p, &m).expect("instance stays within the truncation")
    });
    let mut s = Subspace::new(p.field());
    s.extend(&rows);
    (s, jobs.len())
}

/// Span of every `f′ ∘ (g′ ⊗ r ⊗ g) ∘ f` with `r` among `relations`, where
/// `g′: b -> b′` and `g: c -> c′` are paths on words with
/// `|b| + |dom r| + |c| <= word_bound`, all four framing paths have at most
/// `framing_bound` steps, and the total length is at most `max_steps`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_framed_subspace(
    p: &MonoidalPresentation,
    basis: &PathBasis,
    domain: &ObjectWord,
    codomain: &ObjectWord,
    relations: &[Morphism],
    max_steps: usize,
    framing_bound: usize,
    word_bound: usize,
    exec: Exec,
) -> (Subspace, usize) {
    let alphabet = p.objects().len();
    let mut middles = Vec::new();
    for r in relations {
        let Some(room) = word_bound.checked_sub(r.domain().len()) else { continue };
        for b in ObjectWord::all_up_to_length(alphabet, room) {
            for c in ObjectWord::all_up_to_length(alphabet, room - b.len()) {
                for gb in enumerate_paths(p, &b, None, framing_bound, basis.mode) {
                    for gc in enumerate_paths(p, &c, None, framing_bound, basis.mode) {
                        let mid = tensor(&tensor(&Morphism::from_path(p, gb.clone()), r), &Morphism::from_path(p, gc));
                        if mid.max_steps() <= max_steps {
                            middles.push(mid);
                        }
                    }
                }
            }
        }
    }
    ideal_subspace(p, basis, domain, codomain, &middles, max_steps, framing_bound, exec)
}

/// Outcome of a truncated quotient computation.
#[derive(Clone, Debug)]
pub struct FramedSpan {
    pub paths: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub instances: usize,
    pub warning: Option<String>,
}

#[allow(clippy::too_many_arguments)]
pub fn hom_span_quotient(
    p: &MonoidalPresentation,
    domain: &ObjectWord,
    codomain: &ObjectWord,
    max_steps: usize,
    generators: &[Morphism],
    framing_bound: usize,
    mode: SpanMode,
    exec: Exec,
) -> FramedSpan {
    let basis = PathBasis::new(mode, enumerate_paths(p, domain, Some(codomain), max_steps, mode));
    let (ideal, instances) = ideal_subspace(p, &basis, domain, codomain, generators, max_steps, framing_bound, exec);
    let warning = (instances == 0 && !generators.is_empty())
        .then(|| format!("bounds admit no instance of the {} ideal generators", generators.len()));
    FramedSpan {
        paths: basis.len(),
        ideal_dim: ideal.dim(),
        quotient_dim: basis.len() - ideal.dim(),
        instances,
        warning,
    }
}

/// Dimension of the truncated hom-space modulo the framed ideal instances.
pub fn hom_span_quotient_dim(
    p: &MonoidalPresentation,
    domain: &ObjectWord,
    codomain: &ObjectWord,
    max_steps: usize,
    generators: &[Morphism],
    framing_bound: usize,
) -> usize {
    hom_span_quotient(p, domain, codomain, max_steps, generators, framing_bound, SpanMode::Normalized, Exec::default())
        .quotient_dim
}

//! Left-greedy interchange normal form.
//!
//! Two adjacent steps with disjoint supports are reordered so that the one
//! further left is applied first. Disjoint swaps commute like adjacent
//! transpositions, so the result does not depend on the order of rewriting.
//!
//! A cup `- -> x` and a cap `x -> -` can close into a floating loop that
//! drifts forever. Rewriting stops after a swap budget and the path is
//! reported as not converged.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Morphism, Path, Triple};
use crate::presentation::MonoidalPresentation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeStats {
    pub swaps: usize,
    pub converged: bool,
}

/// Swaps allowed before rewriting is abandoned. Every terminating run seen
/// so far needs at most `n(n-1)/2`.
pub fn swap_budget(steps: usize) -> usize {
    4 * steps * steps + 16
}

fn dom_len(p: &MonoidalPresentation, t: &Triple) -> usize {
    p.edge(t.edge).domain.len()
}

/// Whether `later`, applied right after `earlier`, sits strictly left of it
/// and should be moved first.
///
/// A later step with empty domain and codomain is not moved past an earlier
/// step with empty domain at the same offset: the swapped pair would be
/// swappable again.
pub fn swappable(p: &MonoidalPresentation, earlier: &Triple, later: &Triple) -> bool {
    let (b, a) = (earlier.offset(), later.offset());
    let alpha = p.edge(later.edge);
    if a + alpha.domain.len() > b {
        return false;
    }
    !(a == b && alpha.domain.is_unit() && alpha.codomain.is_unit() && dom_len(p, earlier) == 0)
}

/// Rewrites `[earlier, later]` to the equivalent `[later', earlier']`.
fn swap(p: &MonoidalPresentation, earlier: &Triple, later: &Triple) -> (Triple, Triple) {
    let v = &earlier.left;
    let alpha = p.edge(later.edge);
    let beta = p.edge(earlier.edge);
    let mid_start = later.offset() + alpha.domain.len();
    let m = v.slice(mid_start, v.len());
    let first = Triple::new(later.left.clone(), later.edge, m.concat(&beta.domain).concat(&earlier.right));
    let second = Triple::new(later.left.concat(&alpha.codomain).concat(&m), earlier.edge, earlier.right.clone());
    (first, second)
}

fn swap_at(p: &MonoidalPresentation, steps: &mut [Triple], i: usize) {
    let (x, y) = swap(p, &steps[i], &steps[i + 1]);
    steps[i] = x;
    steps[i + 1] = y;
}

/// Bubble-sorts a path into normal form.
pub fn normalize_path(p: &MonoidalPresentation, path: &Path) -> (Path, NormalizeStats) {
    let mut steps = path.steps.clone();
    let mut stats = NormalizeStats::default();
    let budget = swap_budget(steps.len());
    'outer: loop {
        let mut changed = false;
        for i in 0..steps.len().saturating_sub(1) {
            if swappable(p, &steps[i], &steps[i + 1]) {
                if stats.swaps == budget {
                    break 'outer;
                }
                swap_at(p, &mut steps, i);
                stats.swaps += 1;
                changed = true;
            }
        }
        if !changed {
            stats.converged = true;
            break;
        }
    }
    (Path::from_parts_unchecked(path.base.clone(), steps), stats)
}

/// Applies admissible swaps in random order until none is left.
pub fn normalize_path_randomly<R: Rng>(p: &MonoidalPresentation, path: &Path, rng: &mut R) -> (Path, NormalizeStats) {
    let mut steps = path.steps.clone();
    let mut stats = NormalizeStats::default();
    let budget = swap_budget(steps.len());
    while stats.swaps < budget {
        let open: Vec<usize> =
            (0..steps.len().saturating_sub(1)).filter(|&i| swappable(p, &steps[i], &steps[i + 1])).collect();
        let Some(&i) = open.choose(rng) else {
            stats.converged = true;
            break;
        };
        swap_at(p, &mut steps, i);
        stats.swaps += 1;
    }
    (Path::from_parts_unchecked(path.base.clone(), steps), stats)
}

/// Number of step pairs `i < j` where step `j` lies strictly left of step
/// `i`, whether or not the steps between them block the swap. When all edges
/// preserve word length every swap removes exactly one such pair, so this
/// bounds the number of swaps.
pub fn inversion_count(p: &MonoidalPresentation, path: &Path) -> usize {
    let s = &path.steps;
    let mut n = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if swappable(p, &s[i], &s[j]) {
                n += 1;
            }
        }
    }
    n
}

/// Normalizes every path and merges like terms. Paths that exhaust the swap
/// budget are kept as left when it ran out; see [`normal_form_checked`].
pub fn normal_form(p: &MonoidalPresentation, f: &Morphism) -> Morphism {
    Morphism::from_terms(
        f.field,
        f.domain.clone(),
        f.codomain.clone(),
        f.terms.iter().map(|(c, path)| (c.clone(), normalize_path(p, path).0)),
    )
}

/// Like [`normal_form`], but `None` when some path did not converge.
pub fn normal_form_checked(p: &MonoidalPresentation, f: &Morphism) -> Option<Morphism> {
    let mut terms = Vec::with_capacity(f.terms.len());
    for (c, path) in &f.terms {
        let (nf, stats) = normalize_path(p, path);
        if !stats.converged {
            return None;
        }
        terms.push((c.clone(), nf));
    }
    Some(Morphism::from_terms(f.field, f.domain.clone(), f.codomain.clone(), terms))
}

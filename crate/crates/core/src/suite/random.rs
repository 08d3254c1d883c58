//! Seeded random morphisms and the interchange property cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::FieldValue;
use crate::freemon::{
    compose, enumerate_paths, normal_form, normalize_path, normalize_path_randomly, tensor, Morphism, Path, SpanMode,
    Triple,
};
use crate::presentation::{MonoidalPresentation, ObjectWord};

fn applicable(p: &MonoidalPresentation, x: &ObjectWord) -> Vec<Triple> {
    enumerate_paths(p, x, None, 1, SpanMode::Raw).into_iter().filter_map(|q| q.steps().first().cloned()).collect()
}

/// Path of up to `n` random steps out of `base`.
pub fn random_path(p: &MonoidalPresentation, base: &ObjectWord, n: usize, rng: &mut impl Rng) -> Path {
    let mut steps = Vec::new();
    let mut at = base.clone();
    for _ in 0..n {
        let options = applicable(p, &at);
        if options.is_empty() {
            break;
        }
        let t = options[rng.gen_range(0..options.len())].clone();
        at = t.codomain(p);
        steps.push(t);
    }
    Path::new(p, base.clone(), steps).expect("steps chain by construction")
}

/// Random combination of paths out of `base` that share an endpoint.
pub fn random_morphism(p: &MonoidalPresentation, base: &ObjectWord, max_steps: usize, rng: &mut impl Rng) -> Morphism {
    let first = random_path(p, base, rng.gen_range(0..=max_steps), rng);
    let target = first.codomain(p);
    let mut terms = vec![(FieldValue::from_i64(p.field(), rng.gen_range(1..4)), first)];
    for _ in 0..3 {
        let other = random_path(p, base, rng.gen_range(0..=max_steps), rng);
        if other.codomain(p) == target {
            terms.push((FieldValue::from_i64(p.field(), rng.gen_range(-2..3)), other));
        }
    }
    Morphism::from_terms(p.field(), base.clone(), target, terms)
}

fn random_word(p: &MonoidalPresentation, max: usize, rng: &mut impl Rng) -> ObjectWord {
    let n = rng.gen_range(0..=max);
    ObjectWord::new((0..n).map(|_| rng.gen_range(0..p.objects().len() as u32)).collect())
}

/// Named property that failed, with a printable description.
pub type CaseFailure = (&'static str, String);

/// Property names in the order they are checked.
pub const PROPERTIES: [&str; 5] =
    ["idempotence", "strategy_independence", "bifunctoriality", "associativity_unitality", "interchange"];

/// One case of every property, drawn from `seed`. Returns the failures.
pub fn interchange_case(p: &MonoidalPresentation, seed: u64) -> Vec<CaseFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = Vec::new();
    let nf = |m: &Morphism| normal_form(p, m);

    let base = random_word(p, 4, &mut rng);
    let path = random_path(p, &base, rng.gen_range(0..8), &mut rng);
    let (once, stats) = normalize_path(p, &path);
    let n = path.len();
    if !stats.converged || normalize_path(p, &once).0 != once || stats.swaps > n * n.saturating_sub(1) / 2 {
        fails.push(("idempotence", path.display(p).to_string()));
    }
    if normalize_path_randomly(p, &path, &mut rng).0 != once {
        fails.push(("strategy_independence", path.display(p).to_string()));
    }

    let a = random_word(p, 2, &mut rng);
    let x = random_word(p, 2, &mut rng);
    let f2 = random_morphism(p, &a, 2, &mut rng);
    let f1 = random_morphism(p, f2.codomain(), 2, &mut rng);
    let g2 = random_morphism(p, &x, 2, &mut rng);
    let g1 = random_morphism(p, g2.codomain(), 2, &mut rng);
    let lhs = tensor(&compose(&f1, &f2).expect("chained"), &compose(&g1, &g2).expect("chained"));
    let rhs = compose(&tensor(&f1, &g1), &tensor(&f2, &g2)).expect("chained");
    if nf(&lhs) != nf(&rhs) {
        fails.push(("bifunctoriality", format!("{} | {}", f2.display(p), g2.display(p))));
    }

    let h = random_morphism(p, &random_word(p, 2, &mut rng), 1, &mut rng);
    let unit = Morphism::identity(p.field(), ObjectWord::unit());
    if nf(&tensor(&tensor(&f1, &g1), &h)) != nf(&tensor(&f1, &tensor(&g1, &h)))
        || tensor(&unit, &f1) != f1
        || tensor(&f1, &unit) != f1
    {
        fails.push(("associativity_unitality", format!("{} | {}", f1.display(p), h.display(p))));
    }

    let (b, d) = (f2.codomain().clone(), g2.codomain().clone());
    let left =
        compose(&tensor(&f2, &Morphism::identity(p.field(), d)), &tensor(&Morphism::identity(p.field(), a), &g2));
    let right =
        compose(&tensor(&Morphism::identity(p.field(), b), &g2), &tensor(&f2, &Morphism::identity(p.field(), x)));
    if nf(&left.expect("chained")) != nf(&right.expect("chained")) {
        fails.push(("interchange", format!("{} | {}", f2.display(p), g2.display(p))));
    }
    fails
}

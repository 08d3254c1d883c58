use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::presentation::{builtin, parse_presentation, BuiltinParams, FrobeniusAlgebraData};

fn symmetric() -> MonoidalPresentation {
    builtin("symmetric", &BuiltinParams::default()).unwrap()
}

fn w(p: &MonoidalPresentation, s: &str) -> ObjectWord {
    p.parse_word(s).unwrap()
}

fn t(p: &MonoidalPresentation, v: &str, e: &str, r: &str) -> Triple {
    Triple::new(w(p, v), p.edge_id(e).unwrap(), w(p, r))
}

fn path(p: &MonoidalPresentation, steps: Vec<Triple>) -> Path {
    let base = steps[0].domain(p);
    Path::new(p, base, steps).unwrap()
}

fn relation(p: &MonoidalPresentation, name: &str) -> Morphism {
    Morphism::from_expr(p, &p.relation(name).unwrap().expr).unwrap()
}

fn random_path(p: &MonoidalPresentation, base: &ObjectWord, n: usize, rng: &mut impl Rng) -> Path {
    let mut steps = Vec::new();
    let mut at = base.clone();
    for _ in 0..n {
        let options = span_applicable(p, &at);
        if options.is_empty() {
            break;
        }
        let t = options[rng.gen_range(0..options.len())].clone();
        at = t.codomain(p);
        steps.push(t);
    }
    Path::new(p, base.clone(), steps).unwrap()
}

fn span_applicable(p: &MonoidalPresentation, x: &ObjectWord) -> Vec<Triple> {
    enumerate_paths(p, x, None, 1, SpanMode::Raw).into_iter().filter_map(|q| q.steps().first().cloned()).collect()
}

fn random_endo(p: &MonoidalPresentation, base: &ObjectWord, rng: &mut impl Rng) -> Morphism {
    let terms: Vec<_> = (0..rng.gen_range(1..3))
        .map(|_| {
            let n = rng.gen_range(0..3);
            (FieldValue::from_i64(p.field(), rng.gen_range(-2..3)), random_path(p, base, n, rng))
        })
        .collect();
    Morphism::from_terms(p.field(), base.clone(), base.clone(), terms)
}

#[test]
fn whiskering() {
    let p = symmetric();
    let s = Morphism::generator(&p, t(&p, "-", "s", "-"));
    let a = w(&p, "a");
    assert_eq!(whisker_left(&a, &s), Morphism::generator(&p, t(&p, "a", "s", "-")));
    assert_eq!(whisker_left(&ObjectWord::unit(), &s), s);
    let left = Morphism::generator(&p, t(&p, "a", "s", "-"));
    assert_eq!(whisker_right(&left, &a), Morphism::generator(&p, t(&p, "a", "s", "a")));
}

#[test]
fn composition() {
    let p = symmetric();
    let s = Morphism::generator(&p, t(&p, "-", "s", "-"));
    let id = Morphism::identity(p.field(), w(&p, "a a"));
    assert_eq!(compose(&id, &s).unwrap(), s);
    let ss = compose(&s, &s).unwrap();
    assert_eq!(ss.terms().len(), 1);
    assert_eq!(ss.terms()[0].1.len(), 2);
    let two = FieldValue::from_i64(p.field(), 2);
    assert_eq!(compose(&s, &s.scale(&two)).unwrap(), ss.scale(&two));
    assert!(compose(&s, &Morphism::identity(p.field(), w(&p, "a"))).is_err());
}

#[test]
fn tensor_reduction_formula() {
    let p = symmetric();
    let s = Morphism::generator(&p, t(&p, "-", "s", "-"));
    let st = tensor(&s, &s);
    let expected = path(&p, vec![t(&p, "a a", "s", "-"), t(&p, "-", "s", "a a")]);
    assert_eq!(st.terms()[0].1, expected);
    let unit = Morphism::identity(p.field(), ObjectWord::unit());
    assert_eq!(tensor(&unit, &s), s);
    let nf = normal_form(&p, &st);
    assert_eq!(nf.terms()[0].1.steps()[0].offset(), 0);
    assert_eq!(nf.display(&p).to_string(), "(- | s | a a) ; (a a | s | -)");
}

#[test]
fn normal_form_examples() {
    let p = symmetric();
    let sorted = Morphism::from_path(&p, path(&p, vec![t(&p, "-", "s", "a a"), t(&p, "a a", "s", "-")]));
    assert_eq!(normal_form(&p, &sorted), sorted);
    let unsorted = Morphism::from_path(&p, path(&p, vec![t(&p, "a a", "s", "-"), t(&p, "-", "s", "a a")]));
    assert_eq!(normal_form(&p, &unsorted), sorted);
    let f = relation(&p, "braid");
    assert!(normal_form(&p, &f.sub(&f).unwrap()).is_zero());
    assert_eq!(Morphism::zero(p.field(), w(&p, "a"), w(&p, "a")).display(&p).to_string(), "0");
    assert_eq!(Morphism::identity(p.field(), w(&p, "a a")).display(&p).to_string(), "1_{a a}");
}

#[test]
fn overlapping_steps_stay_put() {
    let p = symmetric();
    let m = Morphism::from_path(&p, path(&p, vec![t(&p, "a", "s", "-"), t(&p, "-", "s", "a")]));
    assert_eq!(normal_form(&p, &m), m);
}

#[test]
fn swap_across_length_changing_edges() {
    let p = parse_presentation("object a\nobject b\nmorphism m : a a -> b\nmorphism c : - -> a a\n").unwrap();
    // c at offset 3 first, then m at offset 0
    let base = w(&p, "a a b");
    let m = Morphism::from_path(
        &p,
        Path::new(&p, base.clone(), vec![t(&p, "a a b", "c", "-"), t(&p, "-", "m", "b a a")]).unwrap(),
    );
    let nf = normal_form(&p, &m);
    let steps = nf.terms()[0].1.steps();
    assert_eq!(steps[0], t(&p, "-", "m", "b"));
    assert_eq!(steps[1], t(&p, "b b", "c", "-"));
    assert_eq!(nf.codomain(), m.codomain());
    Path::new(&p, base, steps.to_vec()).unwrap();
}

#[test]
fn zero_width_steps_terminate() {
    let p = parse_presentation("object a\nmorphism z : - -> -\nmorphism y : - -> -\n").unwrap();
    let m = Morphism::from_path(&p, path(&p, vec![t(&p, "a", "z", "-"), t(&p, "a", "y", "-"), t(&p, "-", "z", "a")]));
    let once = normal_form(&p, &m);
    assert_eq!(normal_form(&p, &once), once);
    assert_eq!(once.terms()[0].1.steps()[0].offset(), 0);
}

#[test]
fn empty_domain_steps_are_sorted() {
    let p = parse_presentation("object a\nmorphism c : - -> a a\n").unwrap();
    let unit = ObjectWord::unit();
    let stacked = Morphism::from_path(
        &p,
        Path::new(&p, unit.clone(), vec![t(&p, "-", "c", "-"), t(&p, "-", "c", "a a")]).unwrap(),
    );
    let side =
        Morphism::from_path(&p, Path::new(&p, unit, vec![t(&p, "-", "c", "-"), t(&p, "a a", "c", "-")]).unwrap());
    assert_eq!(normal_form(&p, &stacked), side);
    assert_eq!(normal_form(&p, &side), side);
}

#[test]
fn floating_loop_stops_at_budget() {
    let p = parse_presentation("object a\nmorphism c : - -> a a\nmorphism e : a a -> -\n").unwrap();
    let path = Path::new(
        &p,
        ObjectWord::unit(),
        vec![
            t(&p, "-", "c", "-"),
            t(&p, "-", "e", "-"),
            t(&p, "-", "c", "-"),
            t(&p, "-", "c", "a a"),
            t(&p, "-", "c", "a a a a"),
            t(&p, "a a", "e", "a a"),
            t(&p, "a", "c", "a a a"),
        ],
    )
    .unwrap();
    let (_, stats) = normalize_path(&p, &path);
    assert!(!stats.converged);
    assert_eq!(stats.swaps, swap_budget(path.len()));
    assert!(normal_form_checked(&p, &Morphism::from_path(&p, path)).is_none());
    let cup = Morphism::from_path(&p, Path::new(&p, ObjectWord::unit(), vec![t(&p, "-", "c", "-")]).unwrap());
    assert_eq!(normal_form_checked(&p, &cup), Some(cup));
}

#[test]
fn ideal_elements() {
    let p = symmetric();
    let r = relation(&p, "involution");
    let id = Morphism::identity(p.field(), w(&p, "a a"));
    assert_eq!(ideal_element(&p, &r, &id, &id).unwrap(), normal_form(&p, &r));
    let a = Morphism::identity(p.field(), w(&p, "a"));
    let unit = Morphism::identity(p.field(), ObjectWord::unit());
    let framed = tensor_ideal_element(
        &p,
        &r,
        &Morphism::identity(p.field(), w(&p, "a a a")),
        &Morphism::identity(p.field(), w(&p, "a a a")),
        &unit,
        &a,
    )
    .unwrap();
    assert_eq!(framed, normal_form(&p, &whisker_left(&w(&p, "a"), &r)));
    let s = Morphism::generator(&p, t(&p, "-", "s", "-"));
    let three = ideal_element(&p, &r, &s, &s).unwrap();
    assert_eq!(three.max_steps(), 4);
    assert_eq!(three.terms().len(), 2);
}

#[test]
fn truncated_quotients() {
    let p = symmetric();
    let aa = w(&p, "a a");
    let r = relation(&p, "involution");
    assert_eq!(hom_span_quotient_dim(&p, &aa, &aa, 2, std::slice::from_ref(&r), 2), 2);
    assert_eq!(hom_span_quotient_dim(&p, &aa, &w(&p, "a"), 3, std::slice::from_ref(&r), 2), 0);
    let free = parse_presentation("object a\nmorphism s : a a -> a a\n").unwrap();
    assert_eq!(hom_span_quotient_dim(&free, &aa, &aa, 1, &[], 0), 2);
    let res = hom_span_quotient(&p, &aa, &aa, 1, &[r], 0, SpanMode::Normalized, crate::par::Exec::Sequential);
    assert!(res.warning.is_some());
}

#[test]
fn tensor_framing_matches_whiskered_relations() {
    let p = symmetric();
    for d in [2usize, 3] {
        let x = ObjectWord::power(0, d);
        let basis = PathBasis::new(SpanMode::Normalized, enumerate_paths(&p, &x, Some(&x), 4, SpanMode::Normalized));
        let rels: Vec<Morphism> = p.relations().iter().map(|r| Morphism::from_expr(&p, &r.expr).unwrap()).collect();
        let (framed, _) = tensor_framed_subspace(&p, &basis, &x, &x, &rels, 4, 2, d, crate::par::Exec::Parallel);
        let mut whiskered = Vec::new();
        for r in &rels {
            if r.domain().len() > d {
                continue;
            }
            for a in 0..=d - r.domain().len() {
                let b = d - r.domain().len() - a;
                whiskered.push(whisker_right(&whisker_left(&ObjectWord::power(0, a), r), &ObjectWord::power(0, b)));
            }
        }
        let (plain, _) = ideal_subspace(&p, &basis, &x, &x, &whiskered, 4, 2, crate::par::Exec::Sequential);
        assert_eq!(framed, plain);
        assert!(plain.dim() > 0);
    }
}

fn presentations() -> Vec<MonoidalPresentation> {
    let z2 = BuiltinParams { algebra: Some(FrobeniusAlgebraData::cyclic_group(2)) };
    vec![
        symmetric(),
        builtin("daha", &BuiltinParams::default()).unwrap(),
        builtin("hecke", &BuiltinParams::default()).unwrap(),
        builtin("wreath", &z2).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_canonical(seed: u64, d in 2usize..6, n in 0usize..9, which in 0usize..4) {
        let p = &presentations()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let path = random_path(p, &ObjectWord::power(0, d), n, &mut rng);
        let (nf, stats) = normalize_path(p, &path);
        prop_assert_eq!(normalize_path(p, &nf).0, nf.clone());
        let inversions = inversion_count(p, &path);
        prop_assert!(stats.swaps <= inversions);
        prop_assert!(inversions <= n * n.saturating_sub(1) / 2);
        let (other, _) = normalize_path_randomly(p, &path, &mut rng);
        prop_assert_eq!(other, nf);
    }

    #[test]
    fn tensor_laws(seed: u64, which in 0usize..4) {
        let p = &presentations()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = ObjectWord::power(0, rng.gen_range(1..3));
        let y = ObjectWord::power(0, rng.gen_range(1..3));
        let z = ObjectWord::power(0, rng.gen_range(0..2));
        let (f1, f2) = (random_endo(p, &x, &mut rng), random_endo(p, &x, &mut rng));
        let (g1, g2) = (random_endo(p, &y, &mut rng), random_endo(p, &y, &mut rng));
        let h = random_endo(p, &z, &mut rng);
        let nf = |m: &Morphism| normal_form(p, m);

        let lhs = tensor(&compose(&f1, &f2).unwrap(), &compose(&g1, &g2).unwrap());
        let rhs = compose(&tensor(&f1, &g1), &tensor(&f2, &g2)).unwrap();
        prop_assert_eq!(nf(&lhs), nf(&rhs));

        let idx = Morphism::identity(p.field(), x.clone());
        let idy = Morphism::identity(p.field(), y.clone());
        let a = compose(&tensor(&f1, &idy), &tensor(&idx, &g1)).unwrap();
        let b = compose(&tensor(&idx, &g1), &tensor(&f1, &idy)).unwrap();
        prop_assert_eq!(nf(&a), nf(&b));

        prop_assert_eq!(nf(&tensor(&tensor(&f1, &g1), &h)), nf(&tensor(&f1, &tensor(&g1, &h))));
        let unit = Morphism::identity(p.field(), ObjectWord::unit());
        prop_assert_eq!(tensor(&unit, &f1), f1.clone());
        prop_assert_eq!(tensor(&f1, &unit), f1);
    }
}

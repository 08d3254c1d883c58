use super::*;
use crate::freemon::{enumerate_paths, hom_span_quotient, tensor, SpanMode};
use crate::par::Exec;
use crate::presentation::{builtin, builtin_names, parse_presentation, BuiltinParams, FrobeniusAlgebraData};

fn z2() -> BuiltinParams {
    BuiltinParams { algebra: Some(FrobeniusAlgebraData::cyclic_group(2)) }
}

fn load(name: &str) -> MonoidalPresentation {
    builtin(name, &z2()).unwrap()
}

fn w(p: &MonoidalPresentation, s: &str) -> ObjectWord {
    p.parse_word(s).unwrap()
}

fn relation(p: &MonoidalPresentation, name: &str) -> Morphism {
    Morphism::from_expr(p, &p.relation(name).unwrap().expr).unwrap()
}

#[test]
fn symmetric_at_two() {
    let p = load("symmetric");
    let l = linearize(&p, 2).unwrap();
    assert_eq!(l.generators, vec![Triple::new(ObjectWord::unit(), 0, ObjectWord::unit())]);
    assert_eq!(l.whiskered().count(), 1);
    assert_eq!(l.interchange().count(), 0);
    assert_eq!(l.objects.len(), 3);
    assert!(matches!(linearize(&p, 1), Err(LinearizeError::BoundTooSmall { needed: 2, .. })));
}

#[test]
fn symmetric_at_three() {
    let p = load("symmetric");
    let l = linearize(&p, 3).unwrap();
    let shown: Vec<String> = l.generators.iter().map(|t| t.display(&p).to_string()).collect();
    assert_eq!(shown, ["(- | s | -)", "(- | s | a)", "(a | s | -)"]);
    let sources: Vec<&str> = l.whiskered().map(|r| r.source.as_str()).collect();
    assert_eq!(sources, ["braid", "involution", "involution", "involution"]);
    assert_eq!(l.interchange().count(), 0);
}

#[test]
fn symmetric_at_four_has_interchange() {
    let p = load("symmetric");
    let l = linearize(&p, 4).unwrap();
    let c: Vec<&LinearRelation> = l.interchange().collect();
    assert_eq!(c.len(), 1);
    let RelationKind::Interchange { left, right } = &c[0].kind else { panic!() };
    assert_eq!(left.display(&p).to_string(), "(- | s | a a)");
    assert_eq!(right.display(&p).to_string(), "(a a | s | -)");
    assert!(c[0].normalized.is_zero());
    assert_eq!(c[0].raw.terms().len(), 2);
    let text = l.to_text(&p);
    assert!(text.contains("interchange"));
    let json = l.to_json(&p);
    assert_eq!(json["generators"].as_array().unwrap().len(), l.generators.len());
}

#[test]
fn whiskering_relations() {
    let p = load("symmetric");
    let r = relation(&p, "involution");
    let unit = ObjectWord::unit();
    assert_eq!(whisker_relation(&p, &r, &unit, &unit), normal_form(&p, &r));
    let left = whisker_relation(&p, &r, &w(&p, "a"), &unit);
    assert_eq!(left.display(&p).to_string(), "- 1_{a a a} + (a | s | -) ; (a | s | -)");
    let braid = whisker_relation(&p, &relation(&p, "braid"), &unit, &w(&p, "a"));
    assert_eq!(braid.domain().len(), 4);
    let l4 = linearize(&p, 4).unwrap();
    assert!(l4.whiskered().any(|x| x.normalized == braid));
}

#[test]
fn termwise_whiskering_matches_tensor() {
    for name in builtin_names() {
        let p = load(name);
        for rel in p.relations() {
            let r = Morphism::from_expr(&p, &rel.expr).unwrap();
            let k = p.objects().len();
            let room = 5usize.saturating_sub(r.domain().len().max(r.codomain().len()));
            for a in ObjectWord::all_up_to_length(k, room) {
                for b in ObjectWord::all_up_to_length(k, room - a.len()) {
                    let f = p.field();
                    let ta = Morphism::identity(f, a.clone());
                    let tb = Morphism::identity(f, b.clone());
                    let via_tensor = normal_form(&p, &tensor(&tensor(&ta, &r), &tb));
                    assert_eq!(normal_form(&p, &whisker_termwise(&r, &a, &b)), via_tensor, "{name}/{}", rel.name);
                }
            }
        }
    }
}

#[test]
fn end_algebra_symmetric() {
    let p = load("symmetric");
    let e = end_algebra(&p, &w(&p, "a a a")).unwrap();
    assert_eq!(e.generator_names(), ["s[0]", "s[1]"]);
    assert_eq!(e.generators[1].triple.display(&p).to_string(), "(a | s | -)");
    assert_eq!(e.generators[1].right_index(), 1);
    let names = e.generator_names();
    let shown: Vec<String> = e.relations.iter().map(|r| r.poly.display(&names).to_string()).collect();
    assert_eq!(shown, ["-s[1] s[0] s[1] + s[0] s[1] s[0]", "s[0] s[0] - 1", "s[1] s[1] - 1"]);

    let e4 = end_algebra(&p, &ObjectWord::power(0, 4)).unwrap();
    assert_eq!(e4.generators.len(), 3);
    let comm: Vec<String> = e4
        .relations
        .iter()
        .filter(|r| r.source == "interchange")
        .map(|r| r.poly.display(&e4.generator_names()).to_string())
        .collect();
    assert_eq!(comm, ["-s[2] s[0] + s[0] s[2]"]);
}

#[test]
fn end_algebra_braid_and_errors() {
    let p = load("braid");
    let e = end_algebra(&p, &w(&p, "a a")).unwrap();
    assert_eq!(e.generator_names(), ["s[0]", "s_inv[0]"]);
    assert_eq!(e.relations.len(), 2);
    let bad = parse_presentation("object a\nmorphism m : a a -> a\n").unwrap();
    let err = end_algebra(&bad, &w(&bad, "a a")).unwrap_err();
    assert!(err.to_string().contains("not an endomorphism"));
}

#[test]
fn generator_counts() {
    let sym = load("symmetric");
    let wr = load("wreath");
    for d in 1..=5 {
        let x = ObjectWord::power(0, d);
        assert_eq!(end_algebra(&sym, &x).unwrap().generators.len(), d - 1);
        assert_eq!(end_algebra(&wr, &x).unwrap().generators.len(), (d - 1) + d * 2);
    }
}

#[test]
fn relations_round_trip_through_morphisms() {
    for name in builtin_names() {
        let p = load(name);
        for d in 1..=4 {
            let x = ObjectWord::power(0, d);
            let e = end_algebra(&p, &x).unwrap();
            for r in &e.relations {
                let back = normal_form(&p, &e.to_morphism(&r.poly));
                match &r.kind {
                    AlgebraRelationKind::Whiskered { left, right } => {
                        let src = relation(&p, &r.source);
                        assert_eq!(back, whisker_relation(&p, &src, left, right), "{name} {}", r.source);
                    }
                    AlgebraRelationKind::Interchange { .. } => assert!(back.is_zero()),
                }
            }
        }
    }
}

#[test]
fn linear_relations_span_the_tensor_ideal() {
    let p = load("symmetric");
    for (d, len) in [(2usize, 4usize), (3, 4), (4, 3)] {
        let x = ObjectWord::power(0, d);
        let lin = linearize(&p, d).unwrap();
        let bar: Vec<Morphism> = lin.relations.iter().map(|r| r.raw.clone()).collect();
        let raw = hom_span_quotient(&p, &x, &x, len, &bar, len, SpanMode::Raw, Exec::Parallel);
        let tilde: Vec<Morphism> = lin.whiskered().map(|r| r.normalized.clone()).collect();
        let free = hom_span_quotient(&p, &x, &x, len, &tilde, len, SpanMode::Normalized, Exec::Parallel);
        assert_eq!(raw.quotient_dim, free.quotient_dim, "d = {d}");
        assert!(raw.paths >= enumerate_paths(&p, &x, Some(&x), len, SpanMode::Normalized).len());
    }
}

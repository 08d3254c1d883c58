use proptest::prelude::*;

use super::*;
use crate::coeff::{Field, FieldValue};
use crate::par::Exec;

const Q: Field = Field::Rational;

fn m(w: &[u32]) -> NCPolynomial {
    NCPolynomial::monomial(Q, w.to_vec())
}

fn one() -> NCPolynomial {
    NCPolynomial::one(Q)
}

fn gb(rels: &[NCPolynomial], n: usize, d: usize) -> GroebnerState {
    complete(Q, rels, &MonomialOrder::natural(n), d, Exec::Sequential).unwrap()
}

/// Coxeter presentation of `S_d`: `s_i^2 = 1`, braid and far commutation.
fn coxeter(d: usize) -> Vec<NCPolynomial> {
    let n = d as u32 - 1;
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(m(&[i, i]).sub(&one()));
        for j in i + 1..n {
            if j == i + 1 {
                rels.push(m(&[j, i, j]).sub(&m(&[i, j, i])));
            } else {
                rels.push(m(&[j, i]).sub(&m(&[i, j])));
            }
        }
    }
    rels
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn single_rewrite() {
    let g = gb(&[m(&[0, 0]).sub(&one())], 1, 5);
    assert_eq!(g.reduce(&m(&[0, 0])).unwrap(), one());
    assert!(g.reduce(&NCPolynomial::zero(Q)).unwrap().is_zero());
    let q = g.quotient_dim();
    assert_eq!(q.counts, vec![1, 1, 0, 0, 0, 0]);
    assert_eq!(q.dimension, Some(2));
    assert_eq!(g.basis().len(), 1);
}

#[test]
fn precedence_picks_the_leading_word() {
    // generators 0 = s1, 1 = s2 with s1 < s2
    let g = gb(&[m(&[1, 0, 1]).sub(&m(&[0, 1, 0]))], 2, 3);
    assert_eq!(g.reduce(&m(&[1, 0, 1])).unwrap(), m(&[0, 1, 0]));
    let flipped = complete(
        Q,
        &[m(&[1, 0, 1]).sub(&m(&[0, 1, 0]))],
        &MonomialOrder::from_precedence(&[1, 0]).unwrap(),
        3,
        Exec::Sequential,
    )
    .unwrap();
    assert_eq!(flipped.reduce(&m(&[0, 1, 0])).unwrap(), m(&[1, 0, 1]));
}

#[test]
fn laurent_and_free_counts() {
    let g = gb(&[m(&[0, 1]).sub(&one()), m(&[1, 0]).sub(&one())], 2, 6);
    let q = g.quotient_dim();
    assert!(!q.finite);
    assert_eq!(q.cumulative()[6], 13);
    let free = gb(&[], 2, 4);
    assert_eq!(free.quotient_dim().counts, vec![1, 2, 4, 8, 16]);
}

#[test]
fn symmetric_group_dimensions() {
    for d in 1..=4 {
        let g = gb(&coxeter(d), d - 1, 2 * d * 3);
        let q = g.quotient_dim();
        assert_eq!(q.dimension, Some(factorial(d)), "d = {d}");
        assert!(q.complete);
        assert_eq!(g.normal_words(20).len() as u128, factorial(d));
        for r in coxeter(d) {
            assert!(g.is_zero_in_quotient(&r).unwrap());
        }
    }
}

#[test]
fn quotient_mul_and_overflow() {
    let g = gb(&[m(&[0, 1]).sub(&one()), m(&[1, 0]).sub(&one())], 2, 4);
    assert_eq!(g.quotient_mul(&m(&[0]), &m(&[1])).unwrap(), one());
    assert_eq!(g.quotient_mul(&one(), &m(&[0, 0])).unwrap(), g.reduce(&m(&[0, 0])).unwrap());
    assert!(g.is_complete());
    let braid = gb(&[m(&[1, 0, 1]).sub(&m(&[0, 1, 0]))], 2, 3);
    assert!(!braid.is_complete());
    assert!(matches!(braid.quotient_mul(&m(&[0, 0]), &m(&[0, 0])), Err(NcAlgError::DegreeOverflow { .. })));
    assert!(matches!(g.reduce(&m(&[7])), Err(NcAlgError::UnknownGenerator { .. })));
}

#[test]
fn json_is_deterministic() {
    let g = gb(&coxeter(3), 2, 6);
    let a = serde_json::to_string(&g).unwrap();
    let b = serde_json::to_string(&gb(&coxeter(3), 2, 6)).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["field"], "Q");
    assert!(v["basis"].as_array().unwrap().len() >= 3);
}

#[test]
fn parallel_completion_agrees() {
    let rels = coxeter(4);
    let a = complete(Q, &rels, &MonomialOrder::natural(3), 12, Exec::Sequential).unwrap();
    let b = complete(Q, &rels, &MonomialOrder::natural(3), 12, Exec::Parallel).unwrap();
    assert_eq!(a.basis(), b.basis());
    assert_eq!(a.normal_word_counts(), b.normal_word_counts());
}

#[test]
fn hecke_quadratic_relation_over_q_of_q() {
    let f = Field::RationalFunction;
    let t = NCPolynomial::monomial(f, vec![0]);
    let rel = t.mul(&t).sub(&t.scale(&FieldValue::q_minus_q_inverse())).sub(&NCPolynomial::one(f));
    let g = complete(f, &[rel], &MonomialOrder::natural(1), 4, Exec::Sequential).unwrap();
    assert_eq!(g.quotient_dim().dimension, Some(2));
}

#[test]
fn reference_symmetric_group() {
    let names: Vec<String> = vec!["s[0]".into(), "s[1]".into()];
    let rels: Vec<(String, NCPolynomial)> =
        coxeter(3).into_iter().enumerate().map(|(i, r)| (format!("r{i}"), r)).collect();
    let t = ReferenceAlgebra::symmetric_group(3);
    assert_eq!(t.dim(), 6);
    let v = check_homomorphism(&names, &rels, &t).unwrap();
    assert!(v.well_defined && v.surjective());
    assert!(v.isomorphism_with(Some(6)));
    let bad = t.clone().with_image("s[0]", t.one().into_iter().map(|(k, c)| (k, &c + &c)).collect());
    let v = check_homomorphism(&names, &rels, &bad).unwrap();
    assert!(!v.well_defined);
    assert_eq!(v.violation.unwrap().relation, "r0");
    let missing = check_homomorphism(&["x".to_string()], &[], &t);
    assert!(matches!(missing, Err(ReferenceError::MissingImage(_))));
}

#[test]
fn reference_wreath_dimension() {
    let a = crate::presentation::FrobeniusAlgebraData::cyclic_group(2);
    let t = ReferenceAlgebra::wreath(&a, 2);
    assert_eq!(t.dim(), 8);
    assert!(t.images().contains_key("u_g[1]"));
    assert_eq!(permutations(3).len(), 6);
}

fn poly_strategy() -> impl Strategy<Value = NCPolynomial> {
    prop::collection::vec((-3i64..4, prop::collection::vec(0u32..2, 0..4)), 0..4)
        .prop_map(|ts| NCPolynomial::from_terms(Q, ts.into_iter().map(|(c, w)| (FieldValue::from_i64(Q, c), w))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_a_projection(p in poly_strategy(), q in poly_strategy()) {
        let g = gb(&coxeter(3), 2, 6);
        let r = g.reduce(&p).unwrap();
        prop_assert_eq!(g.reduce(&r).unwrap(), r.clone());
        prop_assert!(g.reduce(&p.sub(&r)).unwrap().is_zero());
        let same = g.reduce(&q).unwrap() == r;
        prop_assert_eq!(same, g.reduce(&p.sub(&q)).unwrap().is_zero());
    }

    #[test]
    fn quotient_mul_is_associative(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let g = gb(&coxeter(3), 2, 6);
        let ab_c = g.quotient_mul(&g.quotient_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.quotient_mul(&a, &g.quotient_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn finite_answers_are_stable(d in 1usize..4, extra in 0usize..3) {
        let base = gb(&coxeter(d), d.saturating_sub(1), 2 * d * 3).quotient_dim();
        let more = gb(&coxeter(d), d.saturating_sub(1), 2 * d * 3 + 2 + extra).quotient_dim();
        prop_assert!(base.finite);
        prop_assert_eq!(base.dimension, more.dimension);
    }
}

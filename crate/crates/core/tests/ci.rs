mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use semiglue::ci::{
    ci_decompose, frobenius_ci, frobenius_fold, frobenius_telescopic, verify_frobenius,
    verify_minimality, GluingTree,
};
use semiglue::corpus::{ci_semigroups, telescopic_instances};
use semiglue::gluing::find_all_gluings;
use semiglue::numerical::frobenius_scaled;
use semiglue::oracle::frobenius_brute;
use semiglue::semigroup::make_semigroup;
use semiglue::IntVec;

#[test]
fn formula_and_fold_agree_and_leaves_are_the_generators() {
    for s in ci_semigroups(SEED, 40) {
        let tree = ci_decompose(&s).unwrap().unwrap();
        assert_eq!(frobenius_ci(&tree), frobenius_fold(&tree).unwrap(), "{s}");
        let leaves: BTreeSet<IntVec> = tree.leaf_gens().into_iter().collect();
        assert_eq!(leaves.len(), s.embedding_dim());
        assert_eq!(leaves, s.gens().iter().cloned().collect());
    }
}

#[test]
fn frobenius_vector_is_independent_of_the_tree() {
    let mut compared = 0;
    for s in ci_semigroups(SEED, 40) {
        let f = frobenius_ci(&ci_decompose(&s).unwrap().unwrap());
        for (p, cert) in find_all_gluings(&s).unwrap() {
            let s1 = s.subsemigroup(p.left()).unwrap();
            let s2 = s.subsemigroup(p.right()).unwrap();
            let (Some(t1), Some(t2)) = (ci_decompose(&s1).unwrap(), ci_decompose(&s2).unwrap()) else {
                continue;
            };
            let tree = GluingTree::Node { left: Box::new(t1), right: Box::new(t2), d: cert.d };
            assert_eq!(frobenius_ci(&tree), f, "{s} via {tree}");
            compared += 1;
        }
    }
    assert!(compared >= 40);
}

#[test]
fn decomposed_instances_have_frobenius_vectors() {
    for s in ci_semigroups(SEED ^ 1, 24) {
        let f = frobenius_ci(&ci_decompose(&s).unwrap().unwrap()).f;
        let bx = IntVec::from_i64s(&vec![if s.ambient_dim() == 2 { 14 } else { 8 }; s.ambient_dim()]);
        let report = verify_frobenius(&s, &f, &bx).unwrap();
        assert!(report.passed(), "{s}: f = {f}, {:?}", report.violations);
        assert!(verify_minimality(&s, &f, &bx, None).unwrap().passed(), "{s}");
    }
}

#[test]
fn telescopic_formula_matches_the_gluing_formula() {
    for t in telescopic_instances(SEED, 30) {
        let s = t.semigroup().unwrap();
        let tree = ci_decompose(&s).unwrap().unwrap();
        assert_eq!(frobenius_telescopic(&t.base, &t.steps).unwrap(), frobenius_ci(&tree), "{t:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_one_formula_matches_oracle(gens in prop::collection::vec(1u64..=30, 2..=4)) {
        let vs: Vec<IntVec> = gens.iter().map(|&g| IntVec::from_i64s(&[g as i64])).collect();
        let s = make_semigroup(1, &vs).unwrap();
        if let Some(tree) = ci_decompose(&s).unwrap() {
            let f = frobenius_ci(&tree).f.to_i64s().unwrap()[0];
            let g = gens.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
            let reduced: Vec<u64> = gens.iter().map(|&x| x / g).collect();
            prop_assert_eq!(f, g as i64 * frobenius_brute(&reduced).unwrap());
            prop_assert_eq!(f, frobenius_scaled(&gens).unwrap());
        }
    }
}

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use semiglue::corpus::{ci_semigroups, numerical_gluings};
use semiglue::geometry::{hnf, lattice_intersect, relint_member};
use semiglue::gluing::{cone_filter, find_all_gluings, verify_certificate, GluingCertificate};
use semiglue::semigroup::{apery_numerical, make_semigroup, member, AffineSemigroup};
use semiglue::IntVec;

fn check_certificate(s: &AffineSemigroup, cert: &GluingCertificate) -> Result<(), String> {
    let p = &cert.partition;
    let (s1, s2) = (s.subsemigroup(p.left()).unwrap(), s.subsemigroup(p.right()).unwrap());
    if cert.fact_left.evaluate(s1.gens()) != cert.d || cert.fact_right.evaluate(s2.gens()) != cert.d {
        return Err(format!("witnesses do not evaluate to {}", cert.d));
    }
    if member(&s1, &cert.d).unwrap().is_none() || member(&s2, &cert.d).unwrap().is_none() {
        return Err(format!("{} is not in both parts", cert.d));
    }
    let meet = lattice_intersect(s1.group(), s2.group()).unwrap();
    if meet != hnf(s.ambient_dim(), std::slice::from_ref(&cert.d)).unwrap() || meet != cert.intersection {
        return Err(format!("group intersection is not {}Z", cert.d));
    }
    if !verify_certificate(s, cert).unwrap() {
        return Err("verify_certificate refuses".into());
    }
    if !cone_filter(s, p).unwrap() {
        return Err("accepted partition fails cone_filter".into());
    }
    if !relint_member(s.cone(), &cert.d).unwrap()
        && relint_member(s1.cone(), &cert.d).unwrap()
        && relint_member(s2.cone(), &cert.d).unwrap()
    {
        return Err(format!("{} outside relint(S) but inside both part relints", cert.d));
    }
    Ok(())
}

fn check_apery_product(s: &AffineSemigroup, cert: &GluingCertificate) {
    let p = &cert.partition;
    let (s1, s2) = (s.subsemigroup(p.left()).unwrap(), s.subsemigroup(p.right()).unwrap());
    let ap = apery_numerical(s, &cert.d).unwrap();
    let ap1 = apery_numerical(&s1, &cert.d).unwrap();
    let ap2 = apery_numerical(&s2, &cert.d).unwrap();
    assert_eq!(ap.len(), ap1.len() * ap2.len(), "{s} by {}", cert.d);
    let sums: BTreeSet<IntVec> = ap1
        .elements
        .iter()
        .flat_map(|a| ap2.elements.iter().map(move |b| a + b))
        .collect();
    assert_eq!(sums.len(), ap.len(), "sum map is not injective");
    assert_eq!(sums, ap.elements.iter().cloned().collect());
}

#[test]
fn numerical_corpus_certificates_are_sound() {
    let mut certified = 0;
    for inst in numerical_gluings(SEED, 120) {
        let g = inst.glue().unwrap();
        let Some(cert) = g.certificate else { continue };
        let s = g.semigroup.to_affine().unwrap();
        check_certificate(&s, &cert).unwrap();
        check_apery_product(&s, &cert);
        assert!(find_all_gluings(&s).unwrap().iter().any(|(_, c)| c == &cert));
        certified += 1;
    }
    assert!(certified >= 60, "only {certified} certified instances");
}

#[test]
fn ci_corpus_gluings_are_sound() {
    for s in ci_semigroups(SEED, 30) {
        let found = find_all_gluings(&s).unwrap();
        assert!(!found.is_empty() || s.embedding_dim() == s.group().rank(), "{s}");
        for (_, cert) in &found {
            check_certificate(&s, cert).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_found_gluing_is_sound(
        dim in 1usize..=3,
        raw in prop::collection::vec(prop::collection::vec(0i64..=6, 3), 2..=5),
    ) {
        let vs: Vec<IntVec> = raw
            .iter()
            .map(|r| IntVec::from_i64s(&r[..dim]))
            .filter(|v| !v.is_zero())
            .collect();
        prop_assume!(vs.len() >= 2);
        let s = make_semigroup(dim, &vs).unwrap();
        for (_, cert) in find_all_gluings(&s).unwrap() {
            check_certificate(&s, &cert).map_err(TestCaseError::fail)?;
            if s.group().rank() == 1 {
                check_apery_product(&s, &cert);
            }
        }
    }
}

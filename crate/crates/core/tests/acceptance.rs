//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs as a plain binary so the lines always show up in
//! `cargo test` output.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use semiglue::ci::{
    ci_decompose, frobenius_ci, frobenius_fold, frobenius_telescopic, verify_frobenius,
    verify_minimality,
};
use semiglue::corpus::{ci_semigroups, numerical_gluings, random_cones, telescopic_instances};
use semiglue::geometry::{cone_intersection, ConeGens};
use semiglue::gluing::{
    check_gluing, cone_filter, find_all_gluings, span_intersection_check, GluingRejection,
    GluingVerdict, Partition,
};
use semiglue::hilbert::{
    expand, series_ci, series_equal, series_from_apery, series_numerical_glue, RationalSeries,
    SparsePoly,
};
use semiglue::iv;
use semiglue::numerical::{
    classify, frobenius_of_gluing, glue_numerical, invariants, type_of_gluing, NumericalSemigroup,
};
use semiglue::oracle::{frobenius_brute, pseudo_frobenius_brute, truncated_series_brute};
use semiglue::presentation::{betti_elements, betti_safe_bound, glued_betti};
use semiglue::semigroup::{apery_numerical, make_semigroup, AffineSemigroup};
use semiglue::IntVec;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn sg(rows: &[IntVec]) -> AffineSemigroup {
    make_semigroup(rows[0].dim(), rows).unwrap()
}

fn numerical_series(s: &NumericalSemigroup) -> Result<RationalSeries, String> {
    let a = s.to_affine().map_err(err)?;
    let m = a.gens()[0].clone();
    series_from_apery(&apery_numerical(&a, &m).map_err(err)?, &m).map_err(err)
}

fn c1_paper_example() -> Outcome {
    let s = sg(&[iv![4], iv![5], iv![6]]);
    let tree = ci_decompose(&s).map_err(err)?.ok_or("<4,5,6> not decomposed")?;
    ensure(tree.to_string() == "((<(4)> +(12) <(6)>) +(10) <(5)>)", || format!("tree {tree}"))?;
    let f = frobenius_ci(&tree).f;
    ensure(f == iv![7], || format!("Frobenius {f}"))?;
    ensure(frobenius_brute(&[4, 5, 6]) == Ok(7), || "oracle disagrees".into())?;
    let h = series_ci(&tree);
    let num = SparsePoly::product_of_binomials(1, &[iv![10], iv![12]]);
    ensure(h.numerator == num && h.denominator == vec![iv![4], iv![5], iv![6]], || format!("series {h}"))?;
    let t = expand(&h, &iv![60]).map_err(err)?;
    ensure(t == truncated_series_brute(&[vec![4], vec![5], vec![6]], &[60]), || "expansion differs".into())?;
    Ok(format!("tree {tree}, F = 7, H = {h}, degree 60 expansion matches"))
}

fn c2_planar_counterexample() -> Outcome {
    let rows = [iv![4, 0], iv![3, 1], iv![2, 2], iv![3, 3], iv![1, 3], iv![0, 4]];
    let s = sg(&rows);
    let side: Vec<usize> = rows[3..].iter().map(|g| s.gens().iter().position(|h| h == g).unwrap()).collect();
    let p = Partition::new(6, side).map_err(err)?;
    ensure(cone_filter(&s, &p).map_err(err)?, || "cone_filter rejects".into())?;
    let c1 = ConeGens::new(2, rows[..3].to_vec()).map_err(err)?;
    let c2 = ConeGens::new(2, rows[3..].to_vec()).map_err(err)?;
    let meet = cone_intersection(&c1, &c2).map_err(err)?;
    ensure(meet.gens() == [iv![1, 1]], || format!("cone intersection {:?}", meet.gens()))?;
    match check_gluing(&s, &p).map_err(err)? {
        GluingVerdict::Rejected(GluingRejection::IntersectionRankHigh { rank: 2, lattice })
            if lattice.basis() == [iv![1, 3], iv![0, 4]] =>
        {
            Ok("cone intersection ray (1,1); rejected with G1 ∩ G2 rank 2, basis (1,3),(0,4)".into())
        }
        other => Err(format!("verdict {other:?}")),
    }
}

fn c3_spatial_example() -> Outcome {
    let left = [iv![4, 0, 0], iv![3, 1, 0], iv![2, 2, 0]];
    let right = [iv![3, 3, 0], iv![3, 2, 1], iv![3, 0, 3]];
    let all: Vec<IntVec> = left.iter().chain(&right).cloned().collect();
    let s = sg(&all);
    let side: Vec<usize> = right.iter().map(|g| s.gens().iter().position(|h| h == g).unwrap()).collect();
    let p = Partition::new(6, side).map_err(err)?;
    let cert = check_gluing(&s, &p).map_err(err)?.certificate().ok_or("not glued")?;
    ensure(cert.d == iv![6, 6, 0], || format!("d = {}", cert.d))?;
    let r = span_intersection_check(&s, &cert, 6).map_err(err)?;
    ensure(r.holds && r.direction == Some(iv![1, 1, 0]) && r.span.basis() == [iv![1, 1, 0]], || format!("{r:?}"))?;
    // The partition keeps index 0 on the left, so the left part is {(4,0,0), (3,1,0), (2,2,0)}.
    ensure(r.left_gens == vec![2] && r.right_gens == vec![3] && r.glued_gens == vec![2, 3] && r.theta == 6, || {
        format!("line generators {:?} {:?} {:?}", r.left_gens, r.right_gens, r.glued_gens)
    })?;
    Ok("d = (6,6,0), V = (1,1,0)Q, S1∩V = 2N, S2∩V = 3N, S∩V = <2,3> glued at 6".into())
}

fn c4_gluing_frobenius() -> Outcome {
    let corpus = numerical_gluings(SEED, 240);
    ensure(corpus.len() >= 200, || format!("only {} instances", corpus.len()))?;
    for inst in &corpus {
        let glued = inst.glue().map_err(err)?.semigroup;
        ensure(glued.gens().iter().all(|&g| g <= 40), || format!("{inst:?} exceeds 40"))?;
        let f = frobenius_of_gluing(&inst.s1, inst.d1, &inst.s2, inst.d2).map_err(err)?;
        let brute = frobenius_brute(glued.gens()).map_err(err)?;
        ensure(f == brute, || format!("{inst:?}: formula {f}, oracle {brute}"))?;
    }
    Ok(format!("{} certified gluings, d1F1 + d2F2 + d1d2 = oracle on all", corpus.len()))
}

fn c5_hilbert_gluing() -> Outcome {
    let corpus = numerical_gluings(SEED, 240);
    for inst in &corpus {
        let g = inst.glue().map_err(err)?;
        let h = series_numerical_glue(&numerical_series(&inst.s1)?, &numerical_series(&inst.s2)?, inst.d1, inst.d2)
            .map_err(err)?;
        let s = g.semigroup.to_affine().map_err(err)?;
        let d = IntVec::from_i64s(&[g.d as i64]);
        let ap = apery_numerical(&s, &d).map_err(err)?;
        let direct = series_from_apery(&ap, &d).map_err(err)?;
        ensure(series_equal(&h, &direct).map_err(err)?, || format!("{inst:?}: series differ"))?;
        let top = (invariants(&g.semigroup).conductor as i64 + 20).max(60);
        let t = expand(&h, &IntVec::from_i64s(&[top])).map_err(err)?;
        ensure(t == truncated_series_brute(&rows(s.gens()), &[top]), || format!("{inst:?}: expansion"))?;
    }
    Ok(format!("{} instances: glued series = Apéry series exactly; expansions match the oracle", corpus.len()))
}

fn c6_nari() -> Outcome {
    let s1 = NumericalSemigroup::new(&[3, 4, 5]).map_err(err)?;
    let s2 = NumericalSemigroup::new(&[2, 3]).map_err(err)?;
    let g = glue_numerical(&s1, 7, &s2, 3).map_err(err)?;
    ensure(g.union_gens == vec![6, 9, 21, 28, 35], || format!("union {:?}", g.union_gens))?;
    let pf = pseudo_frobenius_brute(&[21, 28, 35, 6, 9]).map_err(err)?;
    ensure(pf.len() == 2, || format!("oracle pseudo-Frobenius {pf:?}"))?;
    let pinned = type_of_gluing(&s1, &s2);
    ensure(pinned == 2 && invariants(&g.semigroup).semigroup_type == 2, || format!("type {pinned}"))?;
    let corpus = numerical_gluings(SEED, 240);
    for inst in &corpus {
        let glued = inst.glue().map_err(err)?.semigroup;
        let (a, b) = (type_of_gluing(&inst.s1, &inst.s2), invariants(&glued).semigroup_type);
        ensure(a == b, || format!("{inst:?}: product {a}, direct {b}"))?;
        let pf = pseudo_frobenius_brute(glued.gens()).map_err(err)?;
        ensure(pf.len() == b, || format!("{inst:?}: oracle type {}", pf.len()))?;
    }
    Ok(format!("<21,28,35,6,9>: type 2 = 2·1 (oracle PF {pf:?}); product holds on {} instances", corpus.len()))
}

fn c7_delorme() -> Outcome {
    let corpus = numerical_gluings(SEED, 240);
    let mut pseudo_pairs = 0;
    let mut symmetric = 0;
    for inst in &corpus {
        let glued = inst.glue().map_err(err)?.semigroup;
        let (c1, c2, c) = (classify(&inst.s1), classify(&inst.s2), classify(&glued));
        ensure(c.symmetric == (c1.symmetric && c2.symmetric), || format!("{inst:?}: symmetry"))?;
        symmetric += usize::from(c.symmetric);
        if c1.pseudo_symmetric && c2.pseudo_symmetric {
            pseudo_pairs += 1;
            ensure(!c.pseudo_symmetric, || format!("{inst:?}: glued is pseudo-symmetric"))?;
        }
    }
    ensure(pseudo_pairs > 0, || "no pseudo-symmetric pairs in the corpus".into())?;
    Ok(format!(
        "{} instances ({symmetric} symmetric); {pseudo_pairs} pseudo-symmetric pairs, none glue to pseudo-symmetric",
        corpus.len()
    ))
}

fn betti_union(s: &AffineSemigroup, p: &Partition, d: &IntVec) -> Result<bool, String> {
    let (s1, s2) = (s.subsemigroup(p.left()).map_err(err)?, s.subsemigroup(p.right()).map_err(err)?);
    let betti = |t: &AffineSemigroup| -> Result<_, String> {
        let (bound, _) = betti_safe_bound(t).map_err(err)?;
        betti_elements(t, &bound).map_err(err)
    };
    let (b, b1, b2) = (betti(s)?, betti(&s1)?, betti(&s2)?);
    if !(b.complete && b1.complete && b2.complete) {
        return Ok(false);
    }
    let expected = glued_betti(&b1, &b2, d).map_err(err)?;
    ensure(b.elements == expected.elements, || {
        format!("{s}: Betti {:?} vs union {:?}", b.elements, expected.elements)
    })?;
    Ok(true)
}

fn c8_betti_union() -> Outcome {
    let mut numerical = 0;
    for inst in numerical_gluings(SEED, 240) {
        let g = inst.glue().map_err(err)?;
        let Some(cert) = g.certificate else { continue };
        let s = g.semigroup.to_affine().map_err(err)?;
        numerical += usize::from(betti_union(&s, &cert.partition, &cert.d)?);
    }
    let mut affine = 0;
    for s in ci_semigroups(SEED, 40) {
        if let Some((p, cert)) = find_all_gluings(&s).map_err(err)?.into_iter().next() {
            affine += usize::from(betti_union(&s, &p, &cert.d)?);
        }
    }
    ensure(numerical >= 100 && affine >= 20, || format!("too few complete instances: {numerical}, {affine}"))?;
    Ok(format!("Betti(S) = Betti(S1) ∪ Betti(S2) ∪ {{d}} on {numerical} numerical and {affine} affine gluings"))
}

fn c9_frobenius_vectors() -> Outcome {
    let corpus = ci_semigroups(SEED, 56);
    ensure(corpus.len() >= 50, || format!("only {} instances", corpus.len()))?;
    let (mut checked, mut zero_hits, mut lattice_hits) = (0, 0, 0);
    for s in &corpus {
        let f = frobenius_ci(&ci_decompose(s).map_err(err)?.ok_or("not CI")?).f;
        let bx = IntVec::from_i64s(&vec![20; s.ambient_dim()]);
        let r = verify_frobenius(s, &f, &bx).map_err(err)?;
        ensure(r.passed(), || format!("{s}: f = {f}, violations {:?}", r.violations))?;
        let m = verify_minimality(s, &f, &bx, None).map_err(err)?;
        ensure(m.passed(), || format!("{s}: f = {f}, face points {:?}", m.violations))?;
        checked += r.checked;
        zero_hits += r.zero_hits.len();
        lattice_hits += usize::from(!m.lattice_hits.is_empty());
    }
    Ok(format!(
        "{} semigroups, {checked} relint points checked ({zero_hits} with f + x = 0); \
         (f + (F ∩ S)) ∩ S empty on every proper face; {lattice_hits} instances have points f + x ∈ S with x ∈ F \\ S",
        corpus.len()
    ))
}

fn c10_telescopic() -> Outcome {
    let corpus = telescopic_instances(SEED, 56);
    ensure(corpus.len() >= 50, || format!("only {} instances", corpus.len()))?;
    for t in &corpus {
        let s = t.semigroup().map_err(err)?;
        let tree = ci_decompose(&s).map_err(err)?.ok_or("free semigroup not decomposed")?;
        let (a, b, c) = (
            frobenius_telescopic(&t.base, &t.steps).map_err(err)?,
            frobenius_ci(&tree),
            frobenius_fold(&tree).map_err(err)?,
        );
        ensure(a == b && b == c, || format!("{s}: {a} {b} {c}"))?;
    }
    Ok(format!("{} telescopic instances: telescopic = CI formula = fold", corpus.len()))
}

fn c11_geometry() -> Outcome {
    let cones = random_cones(SEED, 110);
    let (mut inv, mut add, mut face) = (0, 0, 0);
    for (n, c) in cones.iter().enumerate() {
        let gens = rows(c.gens());
        let side = box_side(c.ambient_dim());
        let dim = c.ambient_dim();
        let extra: Vec<i64> = (0..dim).map(|j| gens[0][j] + 2 * gens[gens.len() - 1][j]).collect();
        inv += relint_invariance(&gens, &extra, side)?;
        let (l, r) = split(gens.len(), n as u64 * 7 + 3);
        add += relint_additivity(&gens, &l, &r, side)?;
        face += face_decomposition(&gens, &l, &r, side)?;
    }
    Ok(format!(
        "{} cones: relint invariance {inv} points, additivity {add} checks, face decomposition {face} points",
        cones.len()
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        ("1", "<4,5,6> tree, Frobenius number and Hilbert series", secs(1), c1_paper_example),
        ("2", "planar counterexample to the cone condition", secs(1), c2_planar_counterexample),
        ("3", "spatial gluing and its span line", secs(1), c3_spatial_example),
        ("4", "numerical gluing Frobenius formula vs oracle", secs(60), c4_gluing_frobenius),
        ("5", "Hilbert series gluing theorem", secs(60), c5_hilbert_gluing),
        ("6", "type of a gluing is the product of types", secs(60), c6_nari),
        ("7", "symmetry and pseudo-symmetry of gluings", secs(60), c7_delorme),
        ("8", "Betti elements of a gluing", secs(60), c8_betti_union),
        ("9", "Frobenius vectors of free and CI semigroups", secs(60), c9_frobenius_vectors),
        ("10", "telescopic, CI and folded Frobenius vectors agree", secs(60), c10_telescopic),
        ("11", "relative interior and face decomposition suites", secs(60), c11_geometry),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the time limit")),
            Err(e) => ("FAIL", e),
        };
        failed += usize::from(verdict == "FAIL");
        println!(
            "criterion {id:>2} {verdict} {title} [exact, {:.2}s <= {}s] {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

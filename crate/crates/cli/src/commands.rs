//! Subcommand handlers. Each returns the output document.

use num_bigint::BigInt;
use serde_json::{json, Value};

use semiglue::ci::{ci_decompose, frobenius_ci, verify_frobenius, verify_minimality};
use semiglue::corpus::{ci_semigroups, numerical_gluings, random_cones, telescopic_instances};
use semiglue::geometry::{extremal_rays, is_simplicial};
use semiglue::gluing::{
    check_gluing, cone_filter, find_all_gluings, GluingCertificate, GluingRejection,
    GluingVerdict, Partition,
};
use semiglue::hilbert::{expand, series_ci, series_from_apery, series_simplicial, RationalSeries};
use semiglue::numerical::{
    classify, frobenius_of_gluing, glue_numerical, invariants, is_alpha_rectangular,
    type_of_gluing, NumericalSemigroup,
};
use semiglue::presentation::{betti_elements, betti_safe_bound, minimal_presentation};
use semiglue::semigroup::{
    apery_in_box, apery_intersection, apery_numerical, make_semigroup, AffineSemigroup,
};
use semiglue::{Error, IntVec};

use crate::error::{CliError, CliResult};
use crate::input::{parse_list, parse_vector, Rows};
use crate::render;

/// The semigroup of an input document together with the input row of each
/// minimal generator.
pub struct Input {
    rows: Rows,
    s: AffineSemigroup,
}

impl Input {
    pub fn new(rows: Rows) -> CliResult<Self> {
        let s = make_semigroup(rows.dim, &rows.rows)?;
        Ok(Input { rows, s })
    }

    fn generators(&self) -> Value {
        render::vectors(self.s.gens())
    }

    /// Input row of the `i`-th minimal generator.
    fn row_of(&self, i: usize) -> usize {
        let g = &self.s.gens()[i];
        self.rows.rows.iter().position(|r| r == g).expect("minimal generators come from rows")
    }

    /// Partition of the minimal generators from a list of input rows.
    fn partition(&self, spec: &str) -> CliResult<Partition> {
        let k = self.s.embedding_dim();
        if self.rows.rows.len() != k {
            return Err(CliError::Invalid(format!(
                "partition indices refer to input rows, so the input must list exactly the \
                 {k} minimal generators (found {} rows)",
                self.rows.rows.len()
            )));
        }
        let side = parse_list(spec)?
            .into_iter()
            .map(|r| {
                let row = self.rows.rows.get(r as usize).ok_or_else(|| {
                    CliError::Invalid(format!("row {r} out of range (0..{})", self.rows.rows.len()))
                })?;
                Ok(self.s.gens().iter().position(|g| g == row).expect("rows are minimal"))
            })
            .collect::<CliResult<Vec<usize>>>()?;
        Ok(Partition::new(k, side)?)
    }

    fn partition_json(&self, p: &Partition) -> Value {
        let rows = |idx: &[usize]| -> Vec<usize> {
            let mut r: Vec<usize> = idx.iter().map(|&i| self.row_of(i)).collect();
            r.sort_unstable();
            r
        };
        let gens = |idx: &[usize]| -> Vec<IntVec> { idx.iter().map(|&i| self.s.gens()[i].clone()).collect() };
        json!({
            "left_rows": rows(p.left()),
            "right_rows": rows(p.right()),
            "left_generators": render::vectors(&gens(p.left())),
            "right_generators": render::vectors(&gens(p.right())),
        })
    }
}

fn certificate_json(c: &GluingCertificate) -> Value {
    json!({
        "d": render::vector(&c.d),
        "left_factorization": render::factorization(&c.fact_left),
        "right_factorization": render::factorization(&c.fact_right),
        "intersection": render::lattice(&c.intersection),
    })
}

fn rejection_json(r: &GluingRejection) -> Value {
    match r {
        GluingRejection::IntersectionRankZero => {
            json!({ "reason": "intersection_rank_zero", "rank": 0 })
        }
        GluingRejection::IntersectionRankHigh { rank, lattice } => json!({
            "reason": "intersection_rank_high",
            "rank": rank,
            "lattice": render::lattice(lattice),
        }),
        GluingRejection::GeneratorNotInLeft(v) => {
            json!({ "reason": "generator_not_in_left", "generator": render::vector(v) })
        }
        GluingRejection::GeneratorNotInRight(v) => {
            json!({ "reason": "generator_not_in_right", "generator": render::vector(v) })
        }
    }
}

pub fn analyze(inp: &Input) -> CliResult<Value> {
    let s = &inp.s;
    let desc = s.cone_description();
    let rays: Vec<IntVec> = extremal_rays(s.cone()).into_iter().map(|i| s.gens()[i].clone()).collect();
    let normals: Vec<IntVec> = desc.facets().iter().map(|f| f.normal.clone()).collect();
    Ok(json!({
        "ambient_dim": s.ambient_dim(),
        "generators": inp.generators(),
        "embedding_dim": s.embedding_dim(),
        "group": render::lattice(s.group()),
        "cone": {
            "dim": desc.dim(),
            "extremal_rays": render::vectors(&rays),
            "facet_normals": render::vectors(&normals),
            "equalities": render::vectors(desc.equalities()),
        },
        "simplicial": is_simplicial(s.cone()),
    }))
}

pub fn glue_check(inp: &Input, spec: &str) -> CliResult<Value> {
    let p = inp.partition(spec)?;
    let filter = cone_filter(&inp.s, &p)?;
    let (verdict, certificate, rejection) = match check_gluing(&inp.s, &p)? {
        GluingVerdict::Glued(c) => ("glued", certificate_json(&c), Value::Null),
        GluingVerdict::Rejected(r) => ("rejected", Value::Null, rejection_json(&r)),
    };
    Ok(json!({
        "generators": inp.generators(),
        "partition": inp.partition_json(&p),
        "cone_filter": filter,
        "verdict": verdict,
        "certificate": certificate,
        "rejection": rejection,
    }))
}

pub fn glue_find(inp: &Input) -> CliResult<Value> {
    let found = find_all_gluings(&inp.s)?;
    let gluings: Vec<Value> = found
        .iter()
        .map(|(p, c)| json!({ "partition": inp.partition_json(p), "d": render::vector(&c.d) }))
        .collect();
    Ok(json!({
        "generators": inp.generators(),
        "count": gluings.len(),
        "gluings": gluings,
    }))
}

pub fn ci(inp: &Input) -> CliResult<Value> {
    let tree = ci_decompose(&inp.s)?;
    Ok(json!({
        "generators": inp.generators(),
        "complete_intersection": tree.is_some(),
        "tree": tree.as_ref().map(render::tree),
        "tree_text": tree.as_ref().map(|t| t.to_string()),
        "frobenius": tree.as_ref().map(|t| render::vector(&frobenius_ci(t).f)),
    }))
}

pub fn frobenius(inp: &Input, bx: &str) -> CliResult<Value> {
    let bx = parse_vector(bx, inp.s.ambient_dim(), true)?;
    let tree = ci_decompose(&inp.s)?
        .ok_or_else(|| CliError::NotApplicable("not a complete intersection".into()))?;
    let f = frobenius_ci(&tree).f;
    let r = verify_frobenius(&inp.s, &f, &bx)?;
    let m = verify_minimality(&inp.s, &f, &bx, None)?;
    let face_points = |list: &[(Vec<usize>, IntVec)]| -> Vec<Value> {
        list.iter()
            .map(|(face, y)| json!({ "face": face, "point": render::vector(y) }))
            .collect()
    };
    Ok(json!({
        "generators": inp.generators(),
        "tree_text": tree.to_string(),
        "frobenius": render::vector(&f),
        "box": render::vector(&bx),
        "verification": {
            "passed": r.passed(),
            "in_group": r.in_group,
            "outside_semigroup": r.outside_semigroup,
            "checked": r.checked,
            "violations": render::vectors(&r.violations),
            "zero_hits": render::vectors(&r.zero_hits),
        },
        "minimality": {
            "passed": m.passed(),
            "faces_checked": m.faces_checked,
            "violations": face_points(&m.violations),
            "lattice_hits": face_points(&m.lattice_hits),
        },
    }))
}

fn simplicial_series(s: &AffineSemigroup, budget: &IntVec) -> CliResult<RationalSeries> {
    if !is_simplicial(s.cone()) {
        return Err(Error::NotSimplicial.into());
    }
    let ap = apery_intersection(s, budget)?;
    Ok(series_simplicial(s, &ap)?)
}

pub fn hilbert(inp: &Input, expand_box: Option<&str>, simplicial: bool, budget: &str) -> CliResult<Value> {
    let s = &inp.s;
    let budget = parse_vector(budget, s.ambient_dim(), true)?;
    let (method, h) = if simplicial {
        ("simplicial", simplicial_series(s, &budget)?)
    } else if let Some(tree) = ci_decompose(s)? {
        ("complete_intersection", series_ci(&tree))
    } else if s.group().rank() == 1 {
        let base = s.gens()[0].clone();
        ("apery", series_from_apery(&apery_numerical(s, &base)?, &base)?)
    } else if is_simplicial(s.cone()) {
        ("simplicial", simplicial_series(s, &budget)?)
    } else {
        return Err(CliError::NotApplicable(
            "no series method applies: not a complete intersection, not rank one, not simplicial".into(),
        ));
    };
    let expansion = match expand_box {
        Some(b) => {
            let bx = parse_vector(b, s.ambient_dim(), true)?;
            let t = expand(&h, &bx)?;
            json!({ "box": render::vector(&bx), "terms": render::terms(&t.coeffs) })
        }
        None => Value::Null,
    };
    Ok(json!({
        "generators": inp.generators(),
        "method": method,
        "series": render::series(&h),
        "expansion": expansion,
    }))
}

pub fn apery(inp: &Input, base: &str, bx: Option<&str>) -> CliResult<Value> {
    let s = &inp.s;
    let m = s.ambient_dim();
    let base = parse_vector(base, m, false)?;
    let (ap, used_box) = match bx {
        None if s.group().rank() == 1 => (apery_numerical(s, &base)?, None),
        _ => {
            let bx = match bx {
                Some(b) => parse_vector(b, m, true)?,
                None => {
                    let total = IntVec::sum_all(m, s.gens());
                    (&total + &base).scale(&BigInt::from(2))
                }
            };
            (apery_in_box(s, &base, &bx)?, Some(bx))
        }
    };
    Ok(json!({
        "generators": inp.generators(),
        "base": render::vector(&base),
        "box": used_box.as_ref().map(render::vector),
        "count": ap.len(),
        "elements": render::vectors(&ap.elements),
        "complete": ap.complete,
    }))
}

pub fn betti(inp: &Input, bound: Option<&str>) -> CliResult<Value> {
    let s = &inp.s;
    let (safe, certified) = betti_safe_bound(s)?;
    let bound = match bound {
        Some(b) => parse_vector(b, s.ambient_dim(), true)?,
        None => safe.clone(),
    };
    let set = betti_elements(s, &bound)?;
    let pres = minimal_presentation(s, &bound)?;
    let pairs: Vec<Value> = pres
        .pairs
        .iter()
        .map(|p| {
            json!({
                "element": render::vector(&p.element),
                "left": render::factorization(&p.left),
                "right": render::factorization(&p.right),
            })
        })
        .collect();
    Ok(json!({
        "generators": inp.generators(),
        "bound": render::vector(&bound),
        "safe_bound": render::vector(&safe),
        "safe_bound_certified": certified,
        "elements": render::vectors(&set.elements),
        "complete": set.complete,
        "presentation": pairs,
    }))
}

fn numerical_from(inp: &Input) -> CliResult<NumericalSemigroup> {
    if inp.rows.dim != 1 {
        return Err(CliError::Invalid(format!(
            "numerical commands need one coordinate per row, found {}",
            inp.rows.dim
        )));
    }
    let gens = inp
        .s
        .gens()
        .iter()
        .map(|g| u64::try_from(&g[0]).map_err(|_| CliError::Invalid(format!("generator {g} too large"))))
        .collect::<CliResult<Vec<u64>>>()?;
    Ok(NumericalSemigroup::new(&gens)?)
}

fn numbers(gens: &[u64]) -> Value {
    Value::Array(gens.iter().map(|g| Value::String(g.to_string())).collect())
}

fn rows_of(gens: &[u64]) -> Value {
    Value::Array(gens.iter().map(|g| json!([g.to_string()])).collect())
}

fn signed(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|g| Value::String(g.to_string())).collect())
}

pub fn numerical_invariants(inp: &Input) -> CliResult<Value> {
    let s = numerical_from(inp)?;
    let inv = invariants(&s);
    Ok(json!({
        "generators": rows_of(s.gens()),
        "multiplicity": inv.multiplicity.to_string(),
        "frobenius": inv.frobenius.to_string(),
        "conductor": inv.conductor.to_string(),
        "gaps": numbers(&inv.gaps),
        "genus": inv.gaps.len(),
        "pseudo_frobenius": signed(&inv.pseudo_frobenius),
        "type": inv.semigroup_type,
    }))
}

pub fn numerical_classify(inp: &Input) -> CliResult<Value> {
    let s = numerical_from(inp)?;
    let c = classify(&s);
    Ok(json!({
        "generators": rows_of(s.gens()),
        "symmetric": c.symmetric,
        "pseudo_symmetric": c.pseudo_symmetric,
        "almost_symmetric": c.almost_symmetric,
        "alpha_rectangular": is_alpha_rectangular(&s),
    }))
}

pub fn numerical_glue(s1: &str, d1: u64, s2: &str, d2: u64) -> CliResult<Value> {
    let a = NumericalSemigroup::new(&parse_list(s1)?)?;
    let b = NumericalSemigroup::new(&parse_list(s2)?)?;
    let g = glue_numerical(&a, d1, &b, d2)?;
    let f = frobenius_of_gluing(&a, d1, &b, d2)?;
    let inv = invariants(&g.semigroup);
    Ok(json!({
        "generators": rows_of(g.semigroup.gens()),
        "s1": numbers(a.gens()),
        "d1": d1.to_string(),
        "s2": numbers(b.gens()),
        "d2": d2.to_string(),
        "union": numbers(&g.union_gens),
        "minimal_union": g.minimal_union,
        "d": g.d.to_string(),
        "certificate": g.certificate.as_ref().map(certificate_json),
        "frobenius": f.to_string(),
        "frobenius_direct": inv.frobenius.to_string(),
        "type": type_of_gluing(&a, &b),
        "type_direct": inv.semigroup_type,
    }))
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum CorpusKind {
    Numerical,
    Telescopic,
    Ci,
    Cones,
}

pub fn corpus(kind: CorpusKind, seed: u64, count: usize) -> CliResult<Value> {
    let instances: Vec<Value> = match kind {
        CorpusKind::Numerical => numerical_gluings(seed, count)
            .into_iter()
            .map(|i| {
                let g = i.glue()?;
                Ok(json!({
                    "generators": rows_of(g.semigroup.gens()),
                    "s1": numbers(i.s1.gens()),
                    "d1": i.d1.to_string(),
                    "s2": numbers(i.s2.gens()),
                    "d2": i.d2.to_string(),
                }))
            })
            .collect::<Result<_, Error>>()?,
        CorpusKind::Telescopic => telescopic_instances(seed, count)
            .into_iter()
            .map(|t| {
                let steps: Vec<Value> = t
                    .steps
                    .iter()
                    .map(|(v, th)| json!({ "v": render::vector(v), "theta": th.to_string() }))
                    .collect();
                json!({ "generators": render::vectors(&t.gens()), "base": render::vectors(&t.base), "steps": steps })
            })
            .collect(),
        CorpusKind::Ci => ci_semigroups(seed, count)
            .iter()
            .map(|s| json!({ "generators": render::vectors(s.gens()) }))
            .collect(),
        CorpusKind::Cones => random_cones(seed, count)
            .iter()
            .map(|c| json!({ "generators": render::vectors(c.gens()) }))
            .collect(),
    };
    Ok(json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "seed": seed.to_string(),
        "count": instances.len(),
        "instances": instances,
    }))
}

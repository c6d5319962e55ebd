//! JSON rendering of library values. Integers that come from the
//! mathematics are written as decimal strings; counts and indices are plain
//! JSON numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use semiglue::ci::GluingTree;
use semiglue::geometry::Lattice;
use semiglue::hilbert::{RationalSeries, SparsePoly};
use semiglue::semigroup::Factorization;
use semiglue::IntVec;

pub fn vector(v: &IntVec) -> Value {
    Value::Array(v.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn vectors(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn factorization(f: &Factorization) -> Value {
    Value::Array(f.0.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn lattice(l: &Lattice) -> Value {
    json!({ "rank": l.rank(), "basis": vectors(l.basis()) })
}

pub fn terms(map: &BTreeMap<IntVec, BigInt>) -> Value {
    Value::Array(
        map.iter()
            .map(|(e, c)| json!({ "exponent": vector(e), "coefficient": c.to_string() }))
            .collect(),
    )
}

pub fn poly(p: &SparsePoly) -> Value {
    terms(p.terms())
}

pub fn series(h: &RationalSeries) -> Value {
    json!({
        "numerator": poly(&h.numerator),
        "numerator_factors": h.numerator_factors.as_deref().map(vectors),
        "denominator": vectors(&h.denominator),
        "text": h.to_string(),
    })
}

pub fn tree(t: &GluingTree) -> Value {
    match t {
        GluingTree::Leaf { gens } => json!({ "free": vectors(gens) }),
        GluingTree::Node { left, right, d } => {
            json!({ "d": vector(d), "left": tree(left), "right": tree(right) })
        }
    }
}

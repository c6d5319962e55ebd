//! Complete-intersection decomposition and Frobenius vectors.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::cone::faces_of;
use crate::geometry::{self, lattice_member, linalg};
use crate::gluing::{check_gluing, GluingVerdict, Partition, MAX_GLUING_SEARCH};
use crate::semigroup::{make_semigroup, member, AffineSemigroup, BoxTable};
use crate::vector::IntVec;

/// Recursive decomposition of a complete intersection into free pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingTree {
    Leaf {
        gens: Vec<IntVec>,
    },
    Node {
        left: Box<GluingTree>,
        right: Box<GluingTree>,
        d: IntVec,
    },
}

impl GluingTree {
    /// All leaf generators, left to right.
    pub fn leaf_gens(&self) -> Vec<IntVec> {
        match self {
            GluingTree::Leaf { gens } => gens.clone(),
            GluingTree::Node { left, right, .. } => {
                let mut v = left.leaf_gens();
                v.extend(right.leaf_gens());
                v
            }
        }
    }

    /// Gluing elements of all nodes, in prefix order.
    pub fn gluing_elements(&self) -> Vec<IntVec> {
        match self {
            GluingTree::Leaf { .. } => Vec::new(),
            GluingTree::Node { left, right, d } => {
                let mut v = vec![d.clone()];
                v.extend(left.gluing_elements());
                v.extend(right.gluing_elements());
                v
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            GluingTree::Leaf { gens } => gens.first().map_or(0, IntVec::dim),
            GluingTree::Node { d, .. } => d.dim(),
        }
    }
}

impl fmt::Display for GluingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluingTree::Leaf { gens } => {
                let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
                write!(f, "<{}>", parts.join(", "))
            }
            GluingTree::Node { left, right, d } => write!(f, "({left} +{d} {right})"),
        }
    }
}

/// Generators are linearly independent over Q.
pub fn is_free_leaf(gens: &[IntVec]) -> bool {
    linalg::rank(gens) == gens.len()
}

/// A gluing tree for S if and only if S is a complete intersection.
///
/// Free semigroups are leaves; otherwise canonical partitions are tried in
/// order and the first certified gluing whose parts both decompose wins.
/// Results are memoised per generator subset.
pub fn ci_decompose(s: &AffineSemigroup) -> Result<Option<GluingTree>> {
    let k = s.embedding_dim();
    if k > MAX_GLUING_SEARCH {
        return Err(Error::SearchLimit {
            size: k,
            limit: MAX_GLUING_SEARCH,
        });
    }
    let mut memo = HashMap::new();
    decompose(s, (1u32 << k) - 1, &mut memo)
}

fn decompose(
    s: &AffineSemigroup,
    mask: u32,
    memo: &mut HashMap<u32, Option<GluingTree>>,
) -> Result<Option<GluingTree>> {
    if let Some(t) = memo.get(&mask) {
        return Ok(t.clone());
    }
    let indices: Vec<usize> = (0..s.embedding_dim()).filter(|&i| mask >> i & 1 == 1).collect();
    let sub = s.subsemigroup(&indices)?;
    let result = if is_free_leaf(sub.gens()) {
        Some(GluingTree::Leaf {
            gens: sub.gens().to_vec(),
        })
    } else {
        let k = indices.len();
        let mut found = None;
        for local in 0..(1u64 << (k - 1)) - 1 {
            let p = Partition::from_mask(k, local)?;
            let GluingVerdict::Glued(cert) = check_gluing(&sub, &p)? else {
                continue;
            };
            let to_mask = |part: &[usize]| part.iter().fold(0u32, |m, &i| m | 1 << indices[i]);
            let Some(left) = decompose(s, to_mask(p.left()), memo)? else {
                continue;
            };
            let Some(right) = decompose(s, to_mask(p.right()), memo)? else {
                continue;
            };
            found = Some(GluingTree::Node {
                left: Box::new(left),
                right: Box::new(right),
                d: cert.d,
            });
            break;
        }
        found
    };
    memo.insert(mask, result.clone());
    Ok(result)
}

pub fn is_complete_intersection(s: &AffineSemigroup) -> Result<bool> {
    Ok(ci_decompose(s)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusVector {
    pub f: IntVec,
}

impl FrobeniusVector {
    /// Wraps `f` after checking `f ∈ G(S)` and `f ∉ S`.
    pub fn checked(s: &AffineSemigroup, f: IntVec) -> Result<Self> {
        if !lattice_member(s.group(), &f)? {
            return Err(Error::InvalidArgument(format!("{f} is not in G(S)")));
        }
        if member(s, &f)?.is_some() {
            return Err(Error::InvalidArgument(format!("{f} lies in S")));
        }
        Ok(FrobeniusVector { f })
    }
}

impl fmt::Display for FrobeniusVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.f.fmt(f)
    }
}

/// `-Σ a` for linearly independent generators.
pub fn frobenius_free(gens: &[IntVec]) -> Result<FrobeniusVector> {
    let Some(first) = gens.first() else {
        return Err(Error::NoGenerators);
    };
    for g in gens {
        g.check_dim(first.dim())?;
    }
    if !is_free_leaf(gens) {
        return Err(Error::NotFree);
    }
    Ok(FrobeniusVector {
        f: -&IntVec::sum_all(first.dim(), gens),
    })
}

/// `f1 + f2 + d`. A zero result is refused since 0 always lies in S.
pub fn frobenius_glue(
    f1: &FrobeniusVector,
    f2: &FrobeniusVector,
    d: &IntVec,
) -> Result<FrobeniusVector> {
    f2.f.check_dim(f1.f.dim())?;
    d.check_dim(f1.f.dim())?;
    let f = &(&f1.f + &f2.f) + d;
    if f.is_zero() {
        return Err(Error::InvalidArgument("glued Frobenius vector is 0".into()));
    }
    Ok(FrobeniusVector { f })
}

/// Sum of the gluing elements minus the sum of all leaf generators.
pub fn frobenius_ci(tree: &GluingTree) -> FrobeniusVector {
    let m = tree.ambient_dim();
    let ds = IntVec::sum_all(m, &tree.gluing_elements());
    let gens = IntVec::sum_all(m, &tree.leaf_gens());
    FrobeniusVector { f: &ds - &gens }
}

/// The same vector obtained by folding [`frobenius_glue`] up the tree.
pub fn frobenius_fold(tree: &GluingTree) -> Result<FrobeniusVector> {
    match tree {
        GluingTree::Leaf { gens } => frobenius_free(gens),
        GluingTree::Node { left, right, d } => {
            frobenius_glue(&frobenius_fold(left)?, &frobenius_fold(right)?, d)
        }
    }
}

/// `Σ (θ_j - 1) v_j - Σ v_k` for a free semigroup built from an independent
/// `base` by attaching each `v_j` with gluing element `θ_j v_j`.
///
/// Every attachment is certified: for `θ > 1` the partition splitting off
/// `v` must glue with `d = θ v`; for `θ = 1` the vector `v` must already lie
/// in the semigroup built so far.
pub fn frobenius_telescopic(base: &[IntVec], steps: &[(IntVec, u64)]) -> Result<FrobeniusVector> {
    let mut f = frobenius_free(base)?.f;
    let m = f.dim();
    let mut current = make_semigroup(m, base)?;
    for (v, theta) in steps {
        v.check_dim(m)?;
        if *theta == 0 {
            return Err(Error::GluingRejected("theta must be positive".into()));
        }
        let d = v.scale(&BigInt::from(*theta));
        if *theta == 1 {
            if member(&current, v)?.is_none() {
                return Err(Error::GluingRejected(format!("{v} is not in the semigroup")));
            }
        } else {
            let mut raw = current.gens().to_vec();
            raw.push(v.clone());
            let next = make_semigroup(m, &raw)?;
            if next.embedding_dim() != raw.len() {
                return Err(Error::GluingRejected(format!(
                    "attaching {v} breaks minimality"
                )));
            }
            let at = next.gens().iter().position(|g| g == v).expect("kept");
            let p = Partition::new(raw.len(), vec![at])?;
            match check_gluing(&next, &p)? {
                GluingVerdict::Glued(cert) if cert.d == d => {}
                GluingVerdict::Glued(cert) => {
                    return Err(Error::GluingRejected(format!(
                        "attaching {v} glues by {} not {d}",
                        cert.d
                    )))
                }
                GluingVerdict::Rejected(r) => {
                    return Err(Error::GluingRejected(format!("attaching {v}: {r:?}")))
                }
            }
            current = next;
        }
        f = &(&f + &d) - v;
    }
    Ok(FrobeniusVector { f })
}

/// Outcome of checking the defining property of a Frobenius vector on a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub in_group: bool,
    pub outside_semigroup: bool,
    /// Points `x` of the box in `relint(cone(S)) ∩ G(S)` with `f + x` not in S.
    pub violations: Vec<IntVec>,
    /// Points `x` with `f + x = 0`. These occur for free semigroups at
    /// `x = Σ a` and are reported without counting as violations.
    pub zero_hits: Vec<IntVec>,
    /// Number of box points in `relint(cone(S)) ∩ G(S)` that were tested.
    pub checked: usize,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.in_group && self.outside_semigroup && self.violations.is_empty()
    }
}

fn box_of(s: &AffineSemigroup, bx: &IntVec) -> Result<Vec<i64>> {
    bx.check_dim(s.ambient_dim())?;
    if !bx.is_nonnegative() {
        return Err(Error::InvalidArgument("box must be nonnegative".into()));
    }
    bx.try_to_i64s()
}

/// Checks `f ∈ G(S)`, `f ∉ S`, and `f + x ∈ S` for every `x` of the box in
/// `relint(cone(S)) ∩ G(S)`.
pub fn verify_frobenius(s: &AffineSemigroup, f: &IntVec, bx: &IntVec) -> Result<FrobeniusReport> {
    f.check_dim(s.ambient_dim())?;
    let bounds = box_of(s, bx)?;
    let small_f = f.try_to_i64s()?;
    let shifted: Vec<i64> = bounds.iter().zip(&small_f).map(|(b, c)| (b + c).max(0)).collect();
    let table = BoxTable::build(s, &shifted)?;
    let grid = BoxTable::from_small(&[], &bounds)?;
    let desc = s.cone_description();
    let mut report = FrobeniusReport {
        in_group: lattice_member(s.group(), f)?,
        outside_semigroup: member(s, f)?.is_none(),
        violations: Vec::new(),
        zero_hits: Vec::new(),
        checked: 0,
    };
    for x in grid.points() {
        let xv = IntVec::from_i64s(&x);
        if xv.is_zero() || !desc.contains_relint(&xv) || !lattice_member(s.group(), &xv)? {
            continue;
        }
        report.checked += 1;
        let y: Vec<i64> = x.iter().zip(&small_f).map(|(a, b)| a + b).collect();
        if y.iter().all(|&c| c == 0) {
            report.zero_hits.push(xv);
        } else if !table.contains(&y) {
            report.violations.push(xv);
        }
    }
    Ok(report)
}

/// Outcome of the face test `(f + (F ∩ S)) ∩ S = ∅` and the optional comparison
/// of a second Frobenius vector against `f + cone(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub faces_checked: usize,
    /// `(face generator indices, y)` for `y ∈ S` with `y - f ∈ F ∩ S`.
    pub violations: Vec<(Vec<usize>, IntVec)>,
    /// `(face generator indices, y)` for `y ∈ S` with `y - f ∈ F` but not in S.
    pub lattice_hits: Vec<(Vec<usize>, IntVec)>,
    pub candidate_in_cone: Option<bool>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.candidate_in_cone != Some(false)
    }
}

/// For every proper face `F` of `cone(S)`, no element of S in the box is
/// `f + x` with `x ∈ F ∩ S`; if `candidate` is given, also reports whether
/// `candidate - f` lies in `cone(S)`.
///
/// Elements `f + x` of S with `x ∈ F` but `x ∉ S` can exist for gluings
/// (`<(0,2),(2,1),(5,3)>` has `f = (13,6)` and `(13,7) ∈ S`); they are listed
/// in `lattice_hits` and do not count as violations.
pub fn verify_minimality(
    s: &AffineSemigroup,
    f: &IntVec,
    bx: &IntVec,
    candidate: Option<&IntVec>,
) -> Result<MinimalityReport> {
    f.check_dim(s.ambient_dim())?;
    let table = BoxTable::build(s, &box_of(s, bx)?)?;
    let desc = s.cone_description();
    let faces = faces_of(s.cone(), desc);
    let mut report = MinimalityReport {
        faces_checked: faces.len(),
        violations: Vec::new(),
        lattice_hits: Vec::new(),
        candidate_in_cone: None,
    };
    for y in table.elements() {
        let diff = &IntVec::from_i64s(&y) - f;
        if !desc.contains(&diff) {
            continue;
        }
        let on: Vec<&Vec<usize>> = faces
            .iter()
            .filter(|face| face.normal.dot(&diff).is_zero())
            .map(|face| &face.gen_indices)
            .collect();
        if on.is_empty() {
            continue;
        }
        let list = if diff.is_nonnegative() && member(s, &diff)?.is_some() {
            &mut report.violations
        } else {
            &mut report.lattice_hits
        };
        for support in on {
            list.push((support.clone(), IntVec::from_i64s(&y)));
        }
    }
    if let Some(c) = candidate {
        c.check_dim(s.ambient_dim())?;
        report.candidate_in_cone = Some(geometry::cone_member(s.cone(), &(c - f))?);
    }
    Ok(report)
}

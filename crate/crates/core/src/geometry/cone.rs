//! Pointed rational cones spanned by vectors of N^m.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::vector::IntVec;

use super::check_ambient;
use super::linalg::{self, Rat};
use super::lp;

/// Largest generator count accepted by the facet computation.
pub const MAX_CONE_GENS: usize = 128;

/// Generators of a cone inside the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGens {
    ambient_dim: usize,
    gens: Vec<IntVec>,
}

impl ConeGens {
    pub fn new(ambient_dim: usize, gens: Vec<IntVec>) -> Result<Self> {
        check_ambient(ambient_dim)?;
        if gens.len() > MAX_CONE_GENS {
            return Err(Error::SearchLimit {
                size: gens.len(),
                limit: MAX_CONE_GENS,
            });
        }
        for g in &gens {
            g.check_dim(ambient_dim)?;
            if !g.is_nonnegative() {
                return Err(Error::NegativeCoordinate(g.clone()));
            }
            if g.is_zero() {
                return Err(Error::InvalidArgument("zero cone generator".into()));
            }
        }
        Ok(ConeGens { ambient_dim, gens })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn gens(&self) -> &[IntVec] {
        &self.gens
    }

    /// Dimension of the cone (rank of its generators).
    pub fn dim(&self) -> usize {
        linalg::rank(&self.gens)
    }
}

/// A proper face `{x in C : normal . x = 0}` with `normal . y >= 0` on C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub normal: IntVec,
    pub gen_indices: Vec<usize>,
}

impl Face {
    /// Dimension of the face, i.e. the rank of the generators lying on it.
    pub fn dim(&self, cone: &ConeGens) -> usize {
        let on: Vec<IntVec> = self
            .gen_indices
            .iter()
            .map(|&i| cone.gens[i].clone())
            .collect();
        linalg::rank(&on)
    }
}

/// Rational subspace of Q^m given by a canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<IntVec>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, vectors: &[IntVec]) -> Self {
        Subspace {
            ambient_dim,
            basis: linalg::row_space(vectors, ambient_dim),
        }
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        linalg::in_span(&self.basis, v)
    }
}

/// Inequality description of a cone: `E y = 0` and `c . y >= 0` per facet.
#[derive(Clone, Debug)]
pub struct ConeDescription {
    ambient_dim: usize,
    dim: usize,
    equalities: Vec<IntVec>,
    facets: Vec<Face>,
}

impl ConeDescription {
    pub fn equalities(&self) -> &[IntVec] {
        &self.equalities
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn in_span(&self, x: &IntVec) -> bool {
        self.equalities.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        x.dim() == self.ambient_dim
            && self.in_span(x)
            && self.facets.iter().all(|f| !f.normal.dot(x).is_negative())
    }

    /// Membership in the relative interior: strictly inside every facet.
    pub fn contains_relint(&self, x: &IntVec) -> bool {
        x.dim() == self.ambient_dim
            && self.in_span(x)
            && self.facets.iter().all(|f| f.normal.dot(x).is_positive())
    }
}

type Bits = u128;

struct Ineq {
    row: Vec<BigInt>,
    history: Bits,
}

fn normalize(row: Vec<BigInt>) -> Vec<BigInt> {
    linalg::primitive_int(row).into_coords()
}

/// Valid inequalities `a . y >= 0` describing `cone(gens)` inside its span,
/// by Fourier-Motzkin elimination of the multipliers in `y = sum l_i g_i`.
/// Equalities are used for substitution first; the remaining multipliers
/// are eliminated pairwise, discarding rows by Chernikov's history rule.
fn fourier_motzkin(m: usize, gens: &[IntVec]) -> Vec<IntVec> {
    let k = gens.len();
    let width = m + k;
    let mut eqs: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut row = vec![BigInt::zero(); width];
            row[j] = BigInt::from(1);
            for (i, g) in gens.iter().enumerate() {
                row[m + i] = -&g[j];
            }
            row
        })
        .collect();
    let mut ineqs: Vec<Ineq> = (0..k)
        .map(|i| {
            let mut row = vec![BigInt::zero(); width];
            row[m + i] = BigInt::from(1);
            Ineq {
                row,
                history: 1 << i,
            }
        })
        .collect();

    let mut remaining = Vec::new();
    for col in m..width {
        let Some(pos) = eqs.iter().position(|e| !e[col].is_zero()) else {
            remaining.push(col);
            continue;
        };
        let e = eqs.swap_remove(pos);
        let scale = e[col].abs();
        let sign = BigInt::from(if e[col].is_negative() { -1 } else { 1 });
        let substitute = |row: &mut Vec<BigInt>| {
            if row[col].is_zero() {
                return;
            }
            let f = &sign * &row[col];
            for (x, ev) in row.iter_mut().zip(&e) {
                *x = &*x * &scale - &f * ev;
            }
            *row = normalize(std::mem::take(row));
        };
        for other in eqs.iter_mut() {
            substitute(other);
        }
        for q in ineqs.iter_mut() {
            substitute(&mut q.row);
        }
    }

    for (eliminated, &col) in remaining.iter().enumerate() {
        let limit = eliminated as u32 + 2;
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            if q.row[col].is_positive() {
                pos.push(q);
            } else if q.row[col].is_negative() {
                neg.push(q);
            } else {
                next.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let history = p.history | n.history;
                if history.count_ones() > limit {
                    continue;
                }
                let a = &p.row[col];
                let b = -&n.row[col];
                let row: Vec<BigInt> = p
                    .row
                    .iter()
                    .zip(&n.row)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                next.push(Ineq {
                    row: normalize(row),
                    history,
                });
            }
        }
        let mut seen: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
        let mut dedup: Vec<Ineq> = Vec::new();
        for q in next {
            if q.row.iter().all(Zero::is_zero) {
                continue;
            }
            if let Some(&i) = seen.get(&q.row) {
                dedup[i].history &= q.history;
                continue;
            }
            seen.insert(q.row.clone(), dedup.len());
            dedup.push(q);
        }
        ineqs = dedup;
    }

    ineqs
        .into_iter()
        .map(|q| IntVec::new(q.row[..m].to_vec()))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Facets of `cone(gens)` among candidate valid inequalities: those whose zero
/// set on the generators has rank `dim - 1`, deduplicated by zero set.
fn select_facets(gens: &[IntVec], dim: usize, candidates: Vec<IntVec>) -> Vec<Face> {
    let mut by_support: BTreeMap<Vec<usize>, IntVec> = BTreeMap::new();
    for c in candidates {
        let zeros: Vec<usize> = (0..gens.len())
            .filter(|&i| c.dot(&gens[i]).is_zero())
            .collect();
        if zeros.len() == gens.len() {
            continue;
        }
        let on: Vec<IntVec> = zeros.iter().map(|&i| gens[i].clone()).collect();
        if linalg::rank(&on) + 1 == dim {
            by_support.entry(zeros).or_insert(c);
        }
    }
    by_support
        .into_iter()
        .map(|(gen_indices, normal)| Face {
            normal,
            gen_indices,
        })
        .collect()
}

/// Inequality description of the cone: span equations plus facets.
pub fn describe(cone: &ConeGens) -> ConeDescription {
    let m = cone.ambient_dim;
    let dim = cone.dim();
    let equalities = linalg::kernel(&cone.gens, m);
    let facets = if cone.gens.is_empty() {
        Vec::new()
    } else {
        select_facets(&cone.gens, dim, fourier_motzkin(m, &cone.gens))
    };
    ConeDescription {
        ambient_dim: m,
        dim,
        equalities,
        facets,
    }
}

fn rat(c: &BigInt) -> Rat {
    Rat::from_integer(c.clone())
}

/// `x` is a nonnegative rational combination of the generators.
pub fn cone_member(cone: &ConeGens, x: &IntVec) -> Result<bool> {
    x.check_dim(cone.ambient_dim)?;
    let a: Vec<Vec<Rat>> = (0..cone.ambient_dim)
        .map(|j| cone.gens.iter().map(|g| rat(&g[j])).collect())
        .collect();
    let b: Vec<Rat> = x.coords().iter().map(rat).collect();
    Ok(lp::feasible(&a, &b).is_some())
}

/// `x` is a combination of the generators with all coefficients strictly positive.
///
/// Decided as `sum p_a a - t x = -sum a` with `p, t >= 0`: a solution yields
/// `t x = sum (1 + p_a) a`, and `t = 0` is impossible in a pointed cone.
pub fn relint_member(cone: &ConeGens, x: &IntVec) -> Result<bool> {
    x.check_dim(cone.ambient_dim)?;
    if cone.gens.is_empty() {
        return Ok(x.is_zero());
    }
    let total = IntVec::sum_all(cone.ambient_dim, &cone.gens);
    let a: Vec<Vec<Rat>> = (0..cone.ambient_dim)
        .map(|j| {
            let mut row: Vec<Rat> = cone.gens.iter().map(|g| rat(&g[j])).collect();
            row.push(-rat(&x[j]));
            row
        })
        .collect();
    let b: Vec<Rat> = total.coords().iter().map(|c| -rat(c)).collect();
    Ok(lp::feasible(&a, &b).is_some())
}

/// Indices of generators spanning the extremal rays, one per ray.
///
/// Generators sharing a ray are represented by the one with smallest
/// coordinate sum, ties broken lexicographically.
pub fn extremal_rays(cone: &ConeGens) -> Vec<usize> {
    let mut by_dir: BTreeMap<IntVec, Vec<usize>> = BTreeMap::new();
    for (i, g) in cone.gens.iter().enumerate() {
        let dir = linalg::primitive_int(g.coords().to_vec());
        by_dir.entry(dir).or_default().push(i);
    }
    let mut rays = Vec::new();
    for (dir, members) in &by_dir {
        let others: Vec<IntVec> = cone
            .gens
            .iter()
            .enumerate()
            .filter(|(i, _)| !members.contains(i))
            .map(|(_, g)| g.clone())
            .collect();
        let rest = ConeGens {
            ambient_dim: cone.ambient_dim,
            gens: others,
        };
        let inside = !rest.gens.is_empty() && cone_member(&rest, dir).unwrap_or(false);
        if !inside {
            let rep = *members
                .iter()
                .min_by(|&&a, &&b| {
                    let (ga, gb) = (&cone.gens[a], &cone.gens[b]);
                    ga.total().cmp(&gb.total()).then_with(|| ga.cmp(gb))
                })
                .unwrap();
            rays.push(rep);
        }
    }
    rays.sort_unstable();
    rays
}

/// All proper faces, as intersections of facets (the apex included).
pub fn faces(cone: &ConeGens) -> Vec<Face> {
    faces_of(cone, &describe(cone))
}

pub fn faces_of(cone: &ConeGens, desc: &ConeDescription) -> Vec<Face> {
    let facets = &desc.facets;
    let mut supports: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.gen_indices.clone()).collect();
    let mut frontier: Vec<Vec<usize>> = supports.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for f in facets {
            let meet: Vec<usize> = s
                .iter()
                .copied()
                .filter(|i| f.gen_indices.contains(i))
                .collect();
            if supports.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    supports
        .into_iter()
        .map(|support| {
            let containing = facets
                .iter()
                .filter(|f| support.iter().all(|i| f.gen_indices.contains(i)));
            let sum = IntVec::sum_all(cone.ambient_dim, containing.map(|f| &f.normal));
            Face {
                normal: linalg::primitive_int(sum.into_coords()),
                gen_indices: support,
            }
        })
        .collect()
}

fn same_dim(a: &ConeGens, b: &ConeGens) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    Ok(())
}

/// Extreme rays of `cone(C1) ∩ cone(C2)`.
///
/// The intersection is pointed, so its rays are the facet normals of its dual
/// cone, which is generated by both facet lists and both span equations.
pub fn cone_intersection(a: &ConeGens, b: &ConeGens) -> Result<ConeGens> {
    same_dim(a, b)?;
    let m = a.ambient_dim;
    let (da, db) = (describe(a), describe(b));
    let mut dual: Vec<IntVec> = Vec::new();
    for d in [&da, &db] {
        dual.extend(d.facets.iter().map(|f| f.normal.clone()));
        for e in &d.equalities {
            dual.push(e.clone());
            dual.push(-e);
        }
    }
    let dual_dim = linalg::rank(&dual);
    let candidates = fourier_motzkin(m, &dual);
    let mut rays: Vec<IntVec> = select_facets(&dual, dual_dim, candidates)
        .into_iter()
        .map(|f| f.normal)
        .collect();
    rays.sort();
    rays.dedup();
    ConeGens::new(m, rays)
}

/// `span(C1) ∩ span(C2)` over Q.
pub fn affine_span_intersection(a: &ConeGens, b: &ConeGens) -> Result<Subspace> {
    same_dim(a, b)?;
    let m = a.ambient_dim;
    let mut eqs = linalg::kernel(&a.gens, m);
    eqs.extend(linalg::kernel(&b.gens, m));
    Ok(Subspace::new(m, &linalg::kernel(&eqs, m)))
}

/// The cone is spanned by linearly independent generators.
pub fn is_simplicial(cone: &ConeGens) -> bool {
    !cone.gens.is_empty() && extremal_rays(cone).len() == cone.dim()
}

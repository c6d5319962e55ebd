//! Affine semigroups: finitely generated submonoids of N^m.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{self, ConeDescription, ConeGens, Lattice};
use crate::vector::IntVec;

/// Largest number of cells a box table may allocate.
pub const MAX_BOX_CELLS: u64 = 40_000_000;

/// Multiplicities of the generators in an expression of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization(pub Vec<u64>);

impl Factorization {
    pub fn zero(len: usize) -> Self {
        Factorization(vec![0; len])
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of generators used with positive multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// The element `sum multiplicities[i] * gens[i]`.
    pub fn evaluate(&self, gens: &[IntVec]) -> IntVec {
        let dim = gens.first().map_or(0, IntVec::dim);
        self.0
            .iter()
            .zip(gens)
            .fold(IntVec::zeros(dim), |acc, (&c, g)| &acc + &g.scale(&BigInt::from(c)))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite piece of an Apéry set.
///
/// `bases` holds the element(s) `s` whose Apéry sets are intersected: one
/// entry for `Ap(S, s)`, several for the intersection over extremal rays.
/// `complete` is set only when the listed elements are certified to be all
/// of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperySet {
    pub bases: Vec<IntVec>,
    pub elements: Vec<IntVec>,
    pub complete: bool,
}

impl AperySet {
    pub fn base(&self) -> &IntVec {
        &self.bases[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A submonoid of N^m given by its unique minimal generating set.
#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    ambient_dim: usize,
    gens: Vec<IntVec>,
    small: Vec<Vec<i64>>,
    group: Lattice,
    cone: ConeGens,
    description: OnceLock<ConeDescription>,
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.gens == other.gens
    }
}

impl Eq for AffineSemigroup {}

impl AffineSemigroup {
    /// Builds the semigroup from generators already known to be minimal and sorted.
    pub(crate) fn from_minimal(ambient_dim: usize, gens: Vec<IntVec>) -> Result<Self> {
        let small = gens
            .iter()
            .map(IntVec::try_to_i64s)
            .collect::<Result<Vec<_>>>()?;
        let group = geometry::hnf(ambient_dim, &gens)?;
        let cone = ConeGens::new(ambient_dim, gens.clone())?;
        Ok(AffineSemigroup {
            ambient_dim,
            gens,
            small,
            group,
            cone,
            description: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The minimal generators, sorted lexicographically.
    pub fn gens(&self) -> &[IntVec] {
        &self.gens
    }

    pub fn embedding_dim(&self) -> usize {
        self.gens.len()
    }

    /// `G(S)`, the group spanned by the semigroup.
    pub fn group(&self) -> &Lattice {
        &self.group
    }

    pub fn cone(&self) -> &ConeGens {
        &self.cone
    }

    /// Facet description of `cone(S)`, computed once.
    pub fn cone_description(&self) -> &ConeDescription {
        self.description
            .get_or_init(|| geometry::describe(&self.cone))
    }

    /// Sub-semigroup generated by the generators at `indices` (which stay minimal).
    pub fn subsemigroup(&self, indices: &[usize]) -> Result<AffineSemigroup> {
        let gens = indices.iter().map(|&i| self.gens[i].clone()).collect();
        AffineSemigroup::from_minimal(self.ambient_dim, gens)
    }

    pub(crate) fn small_gens(&self) -> &[Vec<i64>] {
        &self.small
    }

    /// Membership test, returning a factorization when `x` is in S.
    pub fn member(&self, x: &IntVec) -> Result<Option<Factorization>> {
        member(self, x)
    }

    pub fn contains(&self, x: &IntVec) -> Result<bool> {
        Ok(member(self, x)?.is_some())
    }
}

impl fmt::Display for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Normalises raw generators to the unique minimal generating set.
///
/// Zero vectors and duplicates are dropped, then each vector expressible by
/// the others is removed. A vector can only be written using generators of
/// strictly smaller coordinate sum, so one pass in order of increasing sum
/// suffices.
pub fn make_semigroup(ambient_dim: usize, raw: &[IntVec]) -> Result<AffineSemigroup> {
    geometry::check_ambient(ambient_dim)?;
    let mut cand: Vec<IntVec> = Vec::new();
    for g in raw {
        g.check_dim(ambient_dim)?;
        if !g.is_nonnegative() {
            return Err(Error::NegativeCoordinate(g.clone()));
        }
        if !g.is_zero() {
            cand.push(g.clone());
        }
    }
    cand.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    cand.dedup();
    if cand.is_empty() {
        return Err(Error::NoGenerators);
    }
    let mut kept: Vec<Vec<i64>> = Vec::new();
    let mut kept_big: Vec<IntVec> = Vec::new();
    for g in cand {
        let small = g.try_to_i64s()?;
        if descend(&kept, &small).is_none() {
            kept.push(small);
            kept_big.push(g);
        }
    }
    kept_big.sort();
    AffineSemigroup::from_minimal(ambient_dim, kept_big)
}

/// Convenience constructor from machine integers.
pub fn semigroup_from(rows: &[&[i64]]) -> Result<AffineSemigroup> {
    let dim = rows.first().map_or(0, |r| r.len());
    let raw: Vec<IntVec> = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
    make_semigroup(dim, &raw)
}

/// Depth-first descent from `x` subtracting generators, memoising dead ends.
/// Every intermediate point stays componentwise within `[0, x]`.
fn descend(gens: &[Vec<i64>], x: &[i64]) -> Option<Vec<usize>> {
    if x.iter().any(|&c| c < 0) {
        return None;
    }
    if x.iter().all(|&c| c == 0) {
        return Some(Vec::new());
    }
    let mut dead: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<(Vec<i64>, usize)> = vec![(x.to_vec(), 0)];
    while let Some((pt, next)) = stack.last() {
        if pt.iter().all(|&c| c == 0) {
            return Some(stack[..stack.len() - 1].iter().map(|(_, n)| n - 1).collect());
        }
        let mut found = None;
        for (j, g) in gens.iter().enumerate().skip(*next) {
            if g.iter().zip(pt).all(|(a, b)| a <= b) {
                let child: Vec<i64> = pt.iter().zip(g).map(|(a, b)| a - b).collect();
                if !dead.contains(&child) {
                    found = Some((j, child));
                    break;
                }
            }
        }
        match found {
            Some((j, child)) => {
                stack.last_mut().unwrap().1 = j + 1;
                stack.push((child, 0));
            }
            None => {
                let (pt, _) = stack.pop().unwrap();
                dead.insert(pt);
            }
        }
    }
    None
}

/// A factorization of `x` if `x` belongs to S (negative vectors never do).
pub fn member(s: &AffineSemigroup, x: &IntVec) -> Result<Option<Factorization>> {
    x.check_dim(s.ambient_dim)?;
    if !x.is_nonnegative() {
        return Ok(None);
    }
    let small = x.try_to_i64s()?;
    Ok(descend(&s.small, &small).map(|used| {
        let mut mult = vec![0u64; s.gens.len()];
        for i in used {
            mult[i] += 1;
        }
        Factorization(mult)
    }))
}

/// Every factorization of `x`, in increasing lexicographic order.
pub fn factorizations(s: &AffineSemigroup, x: &IntVec) -> Result<Vec<Factorization>> {
    x.check_dim(s.ambient_dim)?;
    let mut out = Vec::new();
    if !x.is_nonnegative() {
        return Ok(out);
    }
    let target = x.try_to_i64s()?;
    let mut current = vec![0u64; s.gens.len()];
    fill_factorizations(&s.small, 0, target, &mut current, &mut out);
    Ok(out)
}

fn fill_factorizations(
    gens: &[Vec<i64>],
    i: usize,
    rest: Vec<i64>,
    current: &mut Vec<u64>,
    out: &mut Vec<Factorization>,
) {
    if i == gens.len() {
        if rest.iter().all(|&c| c == 0) {
            out.push(Factorization(current.clone()));
        }
        return;
    }
    let g = &gens[i];
    let mut r = rest;
    let mut c = 0u64;
    loop {
        current[i] = c;
        fill_factorizations(gens, i + 1, r.clone(), current, out);
        if !g.iter().zip(&r).all(|(a, b)| a <= b) {
            break;
        }
        for (x, a) in r.iter_mut().zip(g) {
            *x -= a;
        }
        c += 1;
    }
    current[i] = 0;
}

/// Dense membership table of `S ∩ [0, box]`.
#[derive(Clone, Debug)]
pub struct BoxTable {
    bounds: Vec<i64>,
    strides: Vec<usize>,
    cells: Vec<bool>,
}

impl BoxTable {
    /// Breadth-first closure from 0 under adding generators, pruned at the box.
    pub fn build(s: &AffineSemigroup, bounds: &[i64]) -> Result<BoxTable> {
        BoxTable::from_small(&s.small, bounds)
    }

    pub(crate) fn from_small(gens: &[Vec<i64>], bounds: &[i64]) -> Result<BoxTable> {
        if bounds.iter().any(|&b| b < 0) {
            return Err(Error::InvalidArgument("box must be nonnegative".into()));
        }
        let mut volume: u64 = 1;
        for &b in bounds {
            volume = volume.saturating_mul(b as u64 + 1);
        }
        if volume > MAX_BOX_CELLS {
            return Err(Error::OutOfRange(format!(
                "box with {volume} cells exceeds {MAX_BOX_CELLS}"
            )));
        }
        let m = bounds.len();
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
        }
        let mut table = BoxTable {
            bounds: bounds.to_vec(),
            strides,
            cells: vec![false; volume as usize],
        };
        let origin = vec![0i64; m];
        table.cells[0] = true;
        let mut queue = VecDeque::from([origin]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                if let Some(idx) = table.index(&q) {
                    if !table.cells[idx] {
                        table.cells[idx] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    fn index(&self, x: &[i64]) -> Option<usize> {
        let mut idx = 0;
        for ((&c, &b), &s) in x.iter().zip(&self.bounds).zip(&self.strides) {
            if c < 0 || c > b {
                return None;
            }
            idx += c as usize * s;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> Vec<i64> {
        self.strides
            .iter()
            .map(|&s| {
                let c = idx / s;
                idx %= s;
                c as i64
            })
            .collect()
    }

    /// Whether `x` is in the box and in S.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.index(x).is_some_and(|i| self.cells[i])
    }

    /// Whether `x` lies inside the box at all.
    pub fn in_box(&self, x: &[i64]) -> bool {
        self.index(x).is_some()
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &on)| on)
            .map(|(i, _)| self.point(i))
    }

    /// Every lattice point of the box, member or not, in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.cells.len()).map(|i| self.point(i))
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }
}

fn box_bounds(s: &AffineSemigroup, bx: &IntVec) -> Result<Vec<i64>> {
    bx.check_dim(s.ambient_dim)?;
    if !bx.is_nonnegative() {
        return Err(Error::InvalidArgument("box must be nonnegative".into()));
    }
    bx.try_to_i64s()
}

/// `{x in S : 0 <= x <= box}`.
pub fn enumerate_box(s: &AffineSemigroup, bx: &IntVec) -> Result<BTreeSet<IntVec>> {
    let table = BoxTable::build(s, &box_bounds(s, bx)?)?;
    Ok(table.elements().map(|p| IntVec::from_i64s(&p)).collect())
}

fn check_base(s: &AffineSemigroup, base: &IntVec) -> Result<()> {
    base.check_dim(s.ambient_dim)?;
    if base.is_zero() {
        return Err(Error::ZeroBase);
    }
    if member(s, base)?.is_none() {
        return Err(Error::NotInSemigroup(base.clone()));
    }
    Ok(())
}

/// Rank-one data: the positive generator `h` of `G(S)` and each generator's
/// multiple of it.
pub(crate) fn rank_one_scalars(s: &AffineSemigroup) -> Result<(IntVec, Vec<u64>)> {
    if s.group.rank() != 1 {
        return Err(Error::RankNotOne(s.group.rank()));
    }
    let h = geometry::rank_one_generator(&s.group).expect("rank one");
    let scalars = s
        .gens
        .iter()
        .map(|g| scalar_multiple(&h, g))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| Error::OutOfRange("generator multiple too large".into()))?;
    Ok((h, scalars))
}

/// `t` with `v = t * h`, for nonnegative `t`.
pub(crate) fn scalar_multiple(h: &IntVec, v: &IntVec) -> Option<u64> {
    let j = h.coords().iter().position(|c| !c.is_zero())?;
    let (t, r) = v[j].div_rem(&h[j]);
    if !r.is_zero() || t.is_negative() || h.scale(&t) != *v {
        return None;
    }
    t.to_u64()
}

/// Membership sieve for `<gens>` in N with gcd 1: returns the table up to
/// and including the conductor region, and the conductor.
pub(crate) fn scalar_sieve(gens: &[u64]) -> (Vec<bool>, u64) {
    let smallest = *gens.iter().min().expect("nonempty generators") as usize;
    let mut table = vec![true];
    let mut run = 1usize;
    let mut n = 0usize;
    while run < smallest {
        n += 1;
        let inside = gens
            .iter()
            .any(|&g| (g as usize) <= n && table[n - g as usize]);
        table.push(inside);
        run = if inside { run + 1 } else { 0 };
    }
    // The last `smallest` entries are all members, so everything above is too.
    let conductor = (n + 1 - smallest) as u64;
    (table, conductor)
}

/// All Apéry elements of `base` inside the box.
///
/// The result is marked complete when the group has rank one and the number
/// of elements found equals the index `base / h`.
pub fn apery_in_box(s: &AffineSemigroup, base: &IntVec, bx: &IntVec) -> Result<AperySet> {
    check_base(s, base)?;
    let bounds = box_bounds(s, bx)?;
    let table = BoxTable::build(s, &bounds)?;
    let b = base.try_to_i64s()?;
    let elements: Vec<IntVec> = table
        .elements()
        .filter(|x| {
            let y: Vec<i64> = x.iter().zip(&b).map(|(p, q)| p - q).collect();
            !table.contains(&y)
        })
        .map(|x| IntVec::from_i64s(&x))
        .collect();
    let complete = match rank_one_scalars(s) {
        Ok((h, _)) => scalar_multiple(&h, base).is_some_and(|t| t as usize == elements.len()),
        Err(_) => false,
    };
    Ok(AperySet {
        bases: vec![base.clone()],
        elements,
        complete,
    })
}

/// The complete Apéry set of `base` when `G(S)` has rank one.
pub fn apery_numerical(s: &AffineSemigroup, base: &IntVec) -> Result<AperySet> {
    let (h, scalars) = rank_one_scalars(s)?;
    check_base(s, base)?;
    let t = scalar_multiple(&h, base).ok_or_else(|| Error::NotInSemigroup(base.clone()))? as usize;
    let (mut table, conductor) = scalar_sieve(&scalars);
    let top = conductor as usize + t;
    while table.len() <= top {
        table.push(true);
    }
    let mut elements: Vec<IntVec> = (0..=top)
        .filter(|&w| table[w] && (w < t || !table[w - t]))
        .map(|w| h.scale(&BigInt::from(w)))
        .collect();
    elements.sort();
    debug_assert_eq!(elements.len(), t);
    Ok(AperySet {
        bases: vec![base.clone()],
        elements,
        complete: true,
    })
}

/// `⋂ Ap(S, v)` over the extremal rays `v` of a simplicial semigroup.
///
/// The box starts at the sum of the generators and doubles until a doubling
/// adds nothing; the result is marked complete only if, in addition, every
/// element of `S` in the final box is `sum a_i v_i + w` for exactly one `w`
/// of the set. If the next box would exceed `budget` the partial set is
/// returned with `complete = false`.
pub fn apery_intersection(s: &AffineSemigroup, budget: &IntVec) -> Result<AperySet> {
    if !geometry::is_simplicial(&s.cone) {
        return Err(Error::NotSimplicial);
    }
    let budget = box_bounds(s, budget)?;
    let rays: Vec<IntVec> = geometry::extremal_rays(&s.cone)
        .into_iter()
        .map(|i| s.gens[i].clone())
        .collect();
    let small_rays: Vec<Vec<i64>> = rays.iter().map(|r| r.try_to_i64s()).collect::<Result<_>>()?;

    let mut bounds: Vec<i64> = IntVec::sum_all(s.ambient_dim, &s.gens).try_to_i64s()?;
    for (b, cap) in bounds.iter_mut().zip(&budget) {
        *b = (*b).min(*cap);
    }
    let mut previous: Option<Vec<Vec<i64>>> = None;
    loop {
        let table = BoxTable::build(s, &bounds)?;
        let current: Vec<Vec<i64>> = table
            .elements()
            .filter(|x| {
                small_rays.iter().all(|v| {
                    let y: Vec<i64> = x.iter().zip(v).map(|(p, q)| p - q).collect();
                    !table.contains(&y)
                })
            })
            .collect();
        let stable = previous.as_ref() == Some(&current);
        let elements = || current.iter().map(|x| IntVec::from_i64s(x)).collect();
        if stable {
            let complete = unique_representation(&table, &small_rays, &current);
            return Ok(AperySet {
                bases: rays,
                elements: elements(),
                complete,
            });
        }
        let next: Vec<i64> = bounds.iter().map(|b| (2 * b).max(1)).collect();
        if next.iter().zip(&budget).any(|(n, cap)| n > cap) {
            return Ok(AperySet {
                bases: rays,
                elements: elements(),
                complete: false,
            });
        }
        previous = Some(current);
        bounds = next;
    }
}

/// Each member of the table is `sum a_i v_i + w` for exactly one `w` in `ap`.
fn unique_representation(table: &BoxTable, rays: &[Vec<i64>], ap: &[Vec<i64>]) -> bool {
    let ray_vecs: Vec<IntVec> = rays.iter().map(|r| IntVec::from_i64s(r)).collect();
    table.elements().all(|x| {
        let reps = ap
            .iter()
            .filter(|w| {
                let diff: Vec<i64> = x.iter().zip(*w).map(|(a, b)| a - b).collect();
                diff.iter().all(|&c| c >= 0)
                    && in_free_monoid(&ray_vecs, &IntVec::from_i64s(&diff))
            })
            .count();
        reps == 1
    })
}

/// `x` is a nonnegative integer combination of linearly independent `rays`.
fn in_free_monoid(rays: &[IntVec], x: &IntVec) -> bool {
    match geometry::linalg::solve_independent(rays, x) {
        Some(coeffs) => coeffs
            .iter()
            .all(|q| q.is_integer() && !q.is_negative()),
        None => false,
    }
}

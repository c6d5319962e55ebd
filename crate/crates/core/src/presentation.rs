//! Factorization graphs, Betti elements and minimal presentations.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ci::ci_decompose;
use crate::gluing::{GluingCertificate, MAX_GLUING_SEARCH};
use crate::semigroup::{
    factorizations, member, rank_one_scalars, scalar_sieve, AffineSemigroup, BoxTable,
    Factorization,
};
use crate::vector::IntVec;

/// Two factorizations of the same element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationPair {
    pub left: Factorization,
    pub right: Factorization,
    pub element: IntVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub pairs: Vec<RelationPair>,
    pub complete: bool,
}

impl Presentation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiSet {
    pub elements: Vec<IntVec>,
    pub complete: bool,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }
}

/// Groups the factorizations of `x` into connected components, two
/// factorizations being adjacent when some generator occurs in both.
///
/// Each group is sorted, and groups are ordered by their smallest member.
pub fn factorization_graph_components(
    s: &AffineSemigroup,
    x: &IntVec,
) -> Result<Vec<Vec<Factorization>>> {
    let facts = factorizations(s, x)?;
    if facts.is_empty() {
        return Err(Error::NotInSemigroup(x.clone()));
    }
    Ok(group_factorizations(facts))
}

fn group_factorizations(facts: Vec<Factorization>) -> Vec<Vec<Factorization>> {
    let k = facts.first().map_or(0, Factorization::len);
    let mut uf = UnionFind::new(facts.len());
    // Link every factorization to the first one seen using each generator.
    let mut owner = vec![usize::MAX; k];
    for (n, f) in facts.iter().enumerate() {
        for i in f.support() {
            if owner[i] == usize::MAX {
                owner[i] = n;
            } else {
                uf.union(owner[i], n);
            }
        }
    }
    // `facts` is sorted, so each group comes out sorted and ordered by its minimum.
    uf.groups()
        .into_iter()
        .map(|g| g.into_iter().map(|n| facts[n].clone()).collect())
        .collect()
}

/// Number of factorization classes of `x`, read off the box table.
///
/// The classes correspond to the components of the graph on
/// `{i : x - a_i in S}` with `i ~ j` when `x - a_i - a_j` is in S.
fn class_count(table: &BoxTable, gens: &[Vec<i64>], x: &[i64]) -> usize {
    let sub = |p: &[i64], g: &[i64]| -> Vec<i64> { p.iter().zip(g).map(|(a, b)| a - b).collect() };
    let used: Vec<usize> = (0..gens.len())
        .filter(|&i| table.contains(&sub(x, &gens[i])))
        .collect();
    if used.len() < 2 {
        return used.len();
    }
    let mut uf = UnionFind::new(used.len());
    for a in 0..used.len() {
        let rest = sub(x, &gens[used[a]]);
        for b in a + 1..used.len() {
            if table.contains(&sub(&rest, &gens[used[b]])) {
                uf.union(a, b);
            }
        }
    }
    uf.groups().len()
}

/// Smallest box that certifies a Betti search.
///
/// With rank one, a Betti element `b` with classes containing `a_i` and
/// `a_j` respectively has `b - a_i - a_j` outside S, so it is at most
/// `F + n_k + n_(k-1)` in units of the group generator. In higher rank a
/// complete intersection gets the componentwise maximum of its gluing
/// elements, which is exact; otherwise the returned box is a heuristic (the
/// sum of the generators scaled by their number) and the flag is false.
pub fn betti_safe_bound(s: &AffineSemigroup) -> Result<(IntVec, bool)> {
    match rank_one_scalars(s) {
        Ok((h, scalars)) => {
            let mut sorted = scalars.clone();
            sorted.sort_unstable();
            if sorted.len() < 2 {
                return Ok((IntVec::zeros(s.ambient_dim()), true));
            }
            let (_, conductor) = scalar_sieve(&scalars);
            let k = sorted.len();
            let units = conductor as i128 - 1 + sorted[k - 1] as i128 + sorted[k - 2] as i128;
            Ok((h.scale(&BigInt::from(units)), true))
        }
        Err(Error::RankNotOne(_)) => {
            if s.embedding_dim() <= MAX_GLUING_SEARCH {
                if let Some(tree) = ci_decompose(s)? {
                    // The Betti elements of a complete intersection are its
                    // gluing elements.
                    let ds = tree.gluing_elements();
                    let top: Vec<BigInt> = (0..s.ambient_dim())
                        .map(|j| ds.iter().map(|d| d[j].clone()).max().unwrap_or_default())
                        .collect();
                    return Ok((IntVec::new(top), true));
                }
            }
            let total = IntVec::sum_all(s.ambient_dim(), s.gens());
            Ok((total.scale(&BigInt::from(s.embedding_dim())), false))
        }
        Err(e) => Err(e),
    }
}

/// Betti elements of S inside `[0, bound]`.
///
/// `complete` is set when `bound` dominates [`betti_safe_bound`]; for rank
/// one this is a proof, in higher rank it is the documented heuristic.
pub fn betti_elements(s: &AffineSemigroup, bound: &IntVec) -> Result<BettiSet> {
    bound.check_dim(s.ambient_dim())?;
    if !bound.is_nonnegative() {
        return Err(Error::InvalidArgument("bound must be nonnegative".into()));
    }
    let table = BoxTable::build(s, &bound.try_to_i64s()?)?;
    let gens = s.small_gens();
    let elements: Vec<IntVec> = table
        .elements()
        .filter(|x| class_count(&table, gens, x) >= 2)
        .map(|x| IntVec::from_i64s(&x))
        .collect();
    let (safe, _) = betti_safe_bound(s)?;
    Ok(BettiSet {
        elements,
        complete: safe.le_all(bound),
    })
}

/// One minimal presentation: for each Betti element with `c` classes, the
/// smallest factorizations of the classes chained in order, giving `c - 1`
/// pairs.
pub fn minimal_presentation(s: &AffineSemigroup, bound: &IntVec) -> Result<Presentation> {
    let betti = betti_elements(s, bound)?;
    let mut pairs = Vec::new();
    for b in &betti.elements {
        let groups = factorization_graph_components(s, b)?;
        let reps: Vec<&Factorization> = groups.iter().map(|g| &g[0]).collect();
        for w in reps.windows(2) {
            pairs.push(RelationPair {
                left: w[0].clone(),
                right: w[1].clone(),
                element: b.clone(),
            });
        }
    }
    Ok(Presentation {
        pairs,
        complete: betti.complete,
    })
}

fn lift(f: &Factorization, indices: &[usize], k: usize) -> Factorization {
    let mut out = vec![0u64; k];
    for (&c, &i) in f.0.iter().zip(indices) {
        out[i] = c;
    }
    Factorization(out)
}

/// Minimal presentation of a gluing from minimal presentations of its parts.
///
/// Pairs of `rho1` and `rho2` are re-indexed into the generators of S and
/// one pair for `d` (left part only against right part only) is appended.
pub fn glued_presentation(
    rho1: &Presentation,
    rho2: &Presentation,
    cert: &GluingCertificate,
) -> Result<Presentation> {
    let left = cert.partition.left();
    let right = cert.partition.right();
    let k = cert.partition.len();
    let check = |rho: &Presentation, part: &[usize]| -> Result<()> {
        if rho.pairs.iter().any(|p| p.left.len() != part.len() || p.right.len() != part.len()) {
            return Err(Error::InvalidCertificate(
                "presentation does not match the partition".into(),
            ));
        }
        Ok(())
    };
    check(rho1, left)?;
    check(rho2, right)?;
    if cert.fact_left.len() != left.len() || cert.fact_right.len() != right.len() {
        return Err(Error::InvalidCertificate("witness length".into()));
    }
    let mut pairs = Vec::with_capacity(rho1.len() + rho2.len() + 1);
    for (rho, part) in [(rho1, left), (rho2, right)] {
        for p in &rho.pairs {
            pairs.push(RelationPair {
                left: lift(&p.left, part, k),
                right: lift(&p.right, part, k),
                element: p.element.clone(),
            });
        }
    }
    pairs.push(RelationPair {
        left: lift(&cert.fact_left, left, k),
        right: lift(&cert.fact_right, right, k),
        element: cert.d.clone(),
    });
    Ok(Presentation {
        pairs,
        complete: rho1.complete && rho2.complete,
    })
}

/// `Betti(S1) ∪ Betti(S2) ∪ {d}`, sorted.
pub fn glued_betti(b1: &BettiSet, b2: &BettiSet, d: &IntVec) -> Result<BettiSet> {
    if !b1.complete || !b2.complete {
        return Err(Error::IncompleteBetti);
    }
    let mut all: BTreeSet<IntVec> = b1.elements.iter().cloned().collect();
    all.extend(b2.elements.iter().cloned());
    all.insert(d.clone());
    Ok(BettiSet {
        elements: all.into_iter().collect(),
        complete: true,
    })
}

/// Whether a gluing is uniquely presented, given whether its parts are:
/// both parts must be, and `±(d - b)` must lie outside S for every Betti
/// element `b` of either part.
pub fn is_uniquely_presented_gluing(
    s: &AffineSemigroup,
    cert: &GluingCertificate,
    b1: &BettiSet,
    b2: &BettiSet,
    parts_unique: (bool, bool),
) -> Result<bool> {
    if !b1.complete || !b2.complete {
        return Err(Error::IncompleteBetti);
    }
    if !(parts_unique.0 && parts_unique.1) {
        return Ok(false);
    }
    for b in b1.elements.iter().chain(&b2.elements) {
        let diff = &cert.d - b;
        if member(s, &diff)?.is_some() || member(s, &-&diff)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct test: S is uniquely presented exactly when every Betti element
/// has exactly two factorizations (two singleton classes).
pub fn is_uniquely_presented(s: &AffineSemigroup, bound: &IntVec) -> Result<bool> {
    let betti = betti_elements(s, bound)?;
    if !betti.complete {
        return Err(Error::IncompleteBetti);
    }
    for b in &betti.elements {
        if factorizations(s, b)?.len() != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the congruence generated by `pres` identifies every pair of
/// factorizations of each element of S in the box.
///
/// For each element, factorizations are merged whenever one is obtained
/// from the other by replacing one side of a pair with the other; the
/// presentation generates the kernel on the box iff every fiber collapses
/// to one class.
pub fn presentation_generates(
    s: &AffineSemigroup,
    pres: &Presentation,
    bx: &IntVec,
) -> Result<bool> {
    let table = BoxTable::build(s, &bx.try_to_i64s()?)?;
    for x in table.elements() {
        let facts = factorizations(s, &IntVec::from_i64s(&x))?;
        if facts.len() < 2 {
            continue;
        }
        let mut uf = UnionFind::new(facts.len());
        for (n, z) in facts.iter().enumerate() {
            for p in &pres.pairs {
                for (from, to) in [(&p.left, &p.right), (&p.right, &p.left)] {
                    if let Some(moved) = replace(z, from, to) {
                        if let Ok(m) = facts.binary_search(&moved) {
                            uf.union(n, m);
                        }
                    }
                }
            }
        }
        if uf.groups().len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn replace(z: &Factorization, from: &Factorization, to: &Factorization) -> Option<Factorization> {
    if z.len() != from.len() || from.0.iter().zip(&z.0).any(|(a, b)| a > b) {
        return None;
    }
    Some(Factorization(
        z.0.iter()
            .zip(&from.0)
            .zip(&to.0)
            .map(|((c, f), t)| c - f + t)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{check_gluing, GluingVerdict, Partition};
    use crate::iv;
    use crate::semigroup::make_semigroup;

    fn sg(rows: &[IntVec]) -> AffineSemigroup {
        make_semigroup(rows[0].dim(), rows).unwrap()
    }

    fn f(v: &[u64]) -> Factorization {
        Factorization(v.to_vec())
    }

    #[test]
    fn components() {
        let s = sg(&[iv![4], iv![6]]);
        assert_eq!(factorization_graph_components(&s, &iv![12]).unwrap().len(), 2);
        let s = sg(&[iv![4], iv![5], iv![6]]);
        assert_eq!(
            factorization_graph_components(&s, &iv![10]).unwrap(),
            vec![vec![f(&[0, 2, 0])], vec![f(&[1, 0, 1])]]
        );
        assert_eq!(factorization_graph_components(&s, &iv![4]).unwrap().len(), 1);
        assert!(factorization_graph_components(&s, &iv![7]).is_err());
    }

    #[test]
    fn betti_examples() {
        let s = sg(&[iv![4], iv![5], iv![6]]);
        let b = betti_elements(&s, &iv![40]).unwrap();
        assert_eq!(b.elements, vec![iv![10], iv![12]]);
        assert!(b.complete);
        let b = betti_elements(&sg(&[iv![2], iv![3]]), &iv![20]).unwrap();
        assert_eq!(b.elements, vec![iv![6]]);
        assert!(b.complete);
        let b = betti_elements(&sg(&[iv![1, 0], iv![0, 1]]), &iv![10, 10]).unwrap();
        assert!(b.elements.is_empty());
        assert!(b.complete);
        assert!(!betti_elements(&s, &iv![9]).unwrap().complete);
    }

    #[test]
    fn presentations() {
        let s = sg(&[iv![4], iv![5], iv![6]]);
        let p = minimal_presentation(&s, &iv![40]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!((p.pairs[0].left.clone(), p.pairs[0].right.clone()), (f(&[0, 2, 0]), f(&[1, 0, 1])));
        assert_eq!((p.pairs[1].left.clone(), p.pairs[1].right.clone()), (f(&[0, 0, 2]), f(&[3, 0, 0])));
        assert!(presentation_generates(&s, &p, &iv![40]).unwrap());
        let short = Presentation {
            pairs: p.pairs[..1].to_vec(),
            complete: false,
        };
        assert!(!presentation_generates(&s, &short, &iv![40]).unwrap());

        let p = minimal_presentation(&sg(&[iv![2], iv![3]]), &iv![20]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(minimal_presentation(&sg(&[iv![1, 0], iv![0, 1]]), &iv![5, 5]).unwrap().is_empty());
    }

    #[test]
    fn gluing_side() {
        let s = sg(&[iv![4], iv![5], iv![6]]);
        let p = Partition::new(3, vec![0, 2]).unwrap();
        let GluingVerdict::Glued(cert) = check_gluing(&s, &p).unwrap() else {
            panic!("expected a gluing")
        };
        let s1 = s.subsemigroup(cert.partition.left()).unwrap();
        let s2 = s.subsemigroup(cert.partition.right()).unwrap();
        let r1 = minimal_presentation(&s1, &iv![40]).unwrap();
        let r2 = minimal_presentation(&s2, &iv![40]).unwrap();
        let glued = glued_presentation(&r1, &r2, &cert).unwrap();
        assert_eq!(glued.len(), 2);
        assert_eq!(glued.pairs[1].left, f(&[1, 0, 1]));
        assert_eq!(glued.pairs[1].right, f(&[0, 2, 0]));
        assert!(presentation_generates(&s, &glued, &iv![40]).unwrap());

        let b1 = betti_elements(&s1, &iv![40]).unwrap();
        let b2 = betti_elements(&s2, &iv![40]).unwrap();
        let union = glued_betti(&b1, &b2, &cert.d).unwrap();
        assert_eq!(union.elements, betti_elements(&s, &iv![40]).unwrap().elements);
        assert!(is_uniquely_presented_gluing(&s, &cert, &b1, &b2, (true, true)).unwrap());
        assert!(!is_uniquely_presented_gluing(&s, &cert, &b1, &b2, (true, false)).unwrap());
        assert!(is_uniquely_presented(&s, &iv![40]).unwrap());

        let empty = BettiSet {
            elements: vec![],
            complete: true,
        };
        assert_eq!(glued_betti(&empty, &empty, &iv![7]).unwrap().elements, vec![iv![7]]);
        let partial = BettiSet {
            elements: vec![],
            complete: false,
        };
        assert_eq!(glued_betti(&partial, &empty, &iv![7]), Err(Error::IncompleteBetti));
        let same = BettiSet {
            elements: vec![iv![10]],
            complete: true,
        };
        assert_eq!(
            is_uniquely_presented_gluing(&s, &cert, &same, &empty, (true, true)),
            Ok(false)
        );
    }
}

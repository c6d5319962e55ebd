//! Detecting and certifying gluings `S = S1 +_d S2`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    self, affine_span_intersection, cone_intersection, lattice_intersect, Lattice,
};
use crate::semigroup::{member, AffineSemigroup, Factorization};
use crate::vector::IntVec;

/// Largest embedding dimension accepted by [`find_all_gluings`].
pub const MAX_GLUING_SEARCH: usize = 16;

/// A split of the generator indices `0..k` into two nonempty parts, with
/// index 0 always on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    k: usize,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Partition {
    /// Builds the canonical partition with `side` as one of its parts.
    pub fn new(k: usize, side: Vec<usize>) -> Result<Self> {
        let mut on = vec![false; k];
        for &i in &side {
            if i >= k {
                return Err(Error::InvalidPartition(format!("index {i} out of range 0..{k}")));
            }
            if on[i] {
                return Err(Error::InvalidPartition(format!("index {i} repeated")));
            }
            on[i] = true;
        }
        if side.is_empty() || side.len() == k {
            return Err(Error::InvalidPartition("both parts must be nonempty".into()));
        }
        let mut left: Vec<usize> = (0..k).filter(|&i| on[i] == on[0]).collect();
        let mut right: Vec<usize> = (0..k).filter(|&i| on[i] != on[0]).collect();
        left.sort_unstable();
        right.sort_unstable();
        Ok(Partition { k, left, right })
    }

    /// Partition whose left part is 0 plus the indices `i >= 1` with bit `i - 1` set.
    pub fn from_mask(k: usize, mask: u64) -> Result<Self> {
        let left = std::iter::once(0)
            .chain((1..k).filter(|&i| mask >> (i - 1) & 1 == 1))
            .collect();
        Partition::new(k, left)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Number of generators being split.
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    fn check(&self, s: &AffineSemigroup) -> Result<()> {
        if self.k != s.embedding_dim() {
            return Err(Error::InvalidPartition(format!(
                "partition of {} indices for {} generators",
                self.k,
                s.embedding_dim()
            )));
        }
        Ok(())
    }
}

/// Evidence that S is the gluing of the two parts by `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCertificate {
    pub partition: Partition,
    pub d: IntVec,
    /// Factorization of `d` over the left generators.
    pub fact_left: Factorization,
    /// Factorization of `d` over the right generators.
    pub fact_right: Factorization,
    /// `G(S1) ∩ G(S2)`, which equals `dZ`.
    pub intersection: Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingRejection {
    IntersectionRankZero,
    IntersectionRankHigh { rank: usize, lattice: Lattice },
    GeneratorNotInLeft(IntVec),
    GeneratorNotInRight(IntVec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingVerdict {
    Glued(GluingCertificate),
    Rejected(GluingRejection),
}

impl GluingVerdict {
    pub fn certificate(self) -> Option<GluingCertificate> {
        match self {
            GluingVerdict::Glued(c) => Some(c),
            GluingVerdict::Rejected(_) => None,
        }
    }
}

fn parts(s: &AffineSemigroup, p: &Partition) -> Result<(AffineSemigroup, AffineSemigroup)> {
    p.check(s)?;
    Ok((s.subsemigroup(&p.left)?, s.subsemigroup(&p.right)?))
}

/// Decides whether `p` realises S as a gluing and, if so, certifies it.
pub fn check_gluing(s: &AffineSemigroup, p: &Partition) -> Result<GluingVerdict> {
    let (s1, s2) = parts(s, p)?;
    let lattice = lattice_intersect(s1.group(), s2.group())?;
    let reject = |r| Ok(GluingVerdict::Rejected(r));
    match lattice.rank() {
        0 => return reject(GluingRejection::IntersectionRankZero),
        1 => {}
        rank => return reject(GluingRejection::IntersectionRankHigh { rank, lattice }),
    }
    let mut d = geometry::rank_one_generator(&lattice).expect("rank one");
    if !d.is_nonnegative() {
        d = -&d;
    }
    if !d.is_nonnegative() {
        return reject(GluingRejection::GeneratorNotInLeft(d));
    }
    let Some(fact_left) = member(&s1, &d)? else {
        return reject(GluingRejection::GeneratorNotInLeft(d));
    };
    let Some(fact_right) = member(&s2, &d)? else {
        return reject(GluingRejection::GeneratorNotInRight(d));
    };
    Ok(GluingVerdict::Glued(GluingCertificate {
        partition: p.clone(),
        d,
        fact_left,
        fact_right,
        intersection: lattice,
    }))
}

/// Re-checks every claim of a certificate against S.
pub fn verify_certificate(s: &AffineSemigroup, cert: &GluingCertificate) -> Result<bool> {
    let (s1, s2) = parts(s, &cert.partition)?;
    if cert.d.is_zero() || !cert.d.is_nonnegative() {
        return Ok(false);
    }
    if cert.fact_left.len() != s1.embedding_dim()
        || cert.fact_right.len() != s2.embedding_dim()
        || cert.fact_left.evaluate(s1.gens()) != cert.d
        || cert.fact_right.evaluate(s2.gens()) != cert.d
    {
        return Ok(false);
    }
    let lattice = lattice_intersect(s1.group(), s2.group())?;
    let expected = geometry::hnf(s.ambient_dim(), std::slice::from_ref(&cert.d))?;
    Ok(lattice == expected && cert.intersection == lattice)
}

/// Necessary condition for a gluing: `cone(S1) ∩ cone(S2)` has dimension at most one.
pub fn cone_filter(s: &AffineSemigroup, p: &Partition) -> Result<bool> {
    let (s1, s2) = parts(s, p)?;
    Ok(cone_intersection(s1.cone(), s2.cone())?.dim() <= 1)
}

/// What the gluing looks like on the line `V = span(S1) ∩ span(S2)`.
///
/// Points of the line are written `t * u` with `u` the primitive vector
/// along `d`, and each part is reported by the minimal generators of its
/// scalars `t` up to `limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanLineReport {
    pub span: geometry::Subspace,
    pub direction: Option<IntVec>,
    pub theta: u64,
    pub limit: u64,
    pub left_gens: Vec<u64>,
    pub right_gens: Vec<u64>,
    pub glued_gens: Vec<u64>,
    pub holds: bool,
}

/// Checks that `V` is the line through `d` and that, up to `limit_multiple * d`,
/// `S ∩ V` is the gluing of `S1 ∩ V` and `S2 ∩ V` by `d`.
pub fn span_intersection_check(
    s: &AffineSemigroup,
    cert: &GluingCertificate,
    limit_multiple: u64,
) -> Result<SpanLineReport> {
    let (s1, s2) = parts(s, &cert.partition)?;
    let span = affine_span_intersection(s1.cone(), s2.cone())?;
    let mut report = SpanLineReport {
        span: span.clone(),
        direction: None,
        theta: 0,
        limit: 0,
        left_gens: Vec::new(),
        right_gens: Vec::new(),
        glued_gens: Vec::new(),
        holds: false,
    };
    if !verify_certificate(s, cert)? || span.dim() != 1 || !span.contains(&cert.d) {
        return Ok(report);
    }
    let g = cert.d.coords().iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
    let u = IntVec::new(cert.d.coords().iter().map(|c| c / &g).collect());
    let theta = u64::try_from(&g).map_err(|_| Error::OutOfRange("d too large".into()))?;
    let limit = theta.saturating_mul(limit_multiple.max(2));
    let on_line = |t: &AffineSemigroup| -> Result<Vec<bool>> {
        (0..=limit)
            .map(|n| Ok(member(t, &u.scale(&BigInt::from(n)))?.is_some()))
            .collect()
    };
    let (m1, m2, m) = (on_line(&s1)?, on_line(&s2)?, on_line(s)?);
    report.direction = Some(u);
    report.theta = theta;
    report.limit = limit;
    report.left_gens = line_generators(&m1);
    report.right_gens = line_generators(&m2);
    report.glued_gens = line_generators(&m);

    let gcd_all = |v: &[u64]| v.iter().fold(0u64, |a, &b| a.gcd(&b));
    let (g1, g2) = (gcd_all(&report.left_gens), gcd_all(&report.right_gens));
    let theta_ok = m1[theta as usize] && m2[theta as usize] && g1 > 0 && g2 > 0 && g1.lcm(&g2) == theta;
    let sums_ok = (0..=limit as usize).all(|t| {
        let sum = (0..=t).any(|a| m1[a] && m2[t - a]);
        sum == m[t]
    });
    report.holds = theta_ok && sums_ok;
    Ok(report)
}

/// Minimal generators of the monoid whose members in `[0, len)` are flagged.
fn line_generators(members: &[bool]) -> Vec<u64> {
    let mut gens: Vec<usize> = Vec::new();
    let mut sums = vec![false; members.len()];
    sums[0] = true;
    for t in 1..members.len() {
        sums[t] = gens.iter().any(|&g| sums[t - g]);
        if members[t] && !sums[t] {
            gens.push(t);
            sums[t] = true;
        }
    }
    gens.into_iter().map(|g| g as u64).collect()
}

/// Every canonical partition that realises S as a gluing, in partition order.
pub fn find_all_gluings(s: &AffineSemigroup) -> Result<Vec<(Partition, GluingCertificate)>> {
    let k = s.embedding_dim();
    if k > MAX_GLUING_SEARCH {
        return Err(Error::SearchLimit {
            size: k,
            limit: MAX_GLUING_SEARCH,
        });
    }
    if k < 2 {
        return Ok(Vec::new());
    }
    let masks: Vec<u64> = (0..(1u64 << (k - 1)) - 1).collect();
    let found: Vec<Option<(Partition, GluingCertificate)>> = masks
        .par_iter()
        .map(|&mask| -> Result<Option<(Partition, GluingCertificate)>> {
            let p = Partition::from_mask(k, mask)?;
            if !cone_filter(s, &p)? {
                return Ok(None);
            }
            Ok(check_gluing(s, &p)?.certificate().map(|c| (p, c)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iv;
    use crate::semigroup::make_semigroup;

    fn sg(rows: &[IntVec]) -> AffineSemigroup {
        make_semigroup(rows[0].dim(), rows).unwrap()
    }

    #[test]
    fn partitions() {
        let p = Partition::new(3, vec![1]).unwrap();
        assert_eq!(p.left(), &[0, 2]);
        assert_eq!(p.right(), &[1]);
        assert_eq!(p, Partition::new(3, vec![2, 0]).unwrap());
        assert!(Partition::new(3, vec![]).is_err());
        assert!(Partition::new(3, vec![0, 1, 2]).is_err());
        assert!(Partition::new(3, vec![3]).is_err());
        assert!(Partition::new(3, vec![1, 1]).is_err());
        assert_eq!(Partition::from_mask(3, 0b10).unwrap(), p);
    }

    #[test]
    fn numerical_example() {
        let s = sg(&[iv![4], iv![5], iv![6]]);
        let p = Partition::new(3, vec![1]).unwrap();
        let cert = check_gluing(&s, &p).unwrap().certificate().unwrap();
        assert_eq!(cert.d, iv![10]);
        assert!(verify_certificate(&s, &cert).unwrap());
        let all = find_all_gluings(&s).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].0, p);
        assert_eq!(
            check_gluing(&s, &Partition::new(3, vec![0]).unwrap()).unwrap(),
            GluingVerdict::Rejected(GluingRejection::GeneratorNotInRight(iv![4]))
        );
        let report = span_intersection_check(&s, &cert, 4).unwrap();
        assert!(report.holds);
        assert_eq!(report.glued_gens, vec![4, 5, 6]);
    }

    #[test]
    fn two_three() {
        let s = sg(&[iv![2], iv![3]]);
        let all = find_all_gluings(&s).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].1.d, iv![6]);
    }

    #[test]
    fn free_plane_does_not_glue() {
        let s = sg(&[iv![1, 0], iv![0, 1]]);
        let p = Partition::new(2, vec![1]).unwrap();
        assert!(cone_filter(&s, &p).unwrap());
        assert_eq!(
            check_gluing(&s, &p).unwrap(),
            GluingVerdict::Rejected(GluingRejection::IntersectionRankZero)
        );
        assert!(find_all_gluings(&s).unwrap().is_empty());
    }

    #[test]
    fn planar_counterexample() {
        let s = sg(&[iv![4, 0], iv![3, 1], iv![2, 2], iv![3, 3], iv![1, 3], iv![0, 4]]);
        let side: Vec<usize> = [iv![3, 3], iv![1, 3], iv![0, 4]]
            .iter()
            .map(|g| s.gens().iter().position(|h| h == g).unwrap())
            .collect();
        let p = Partition::new(6, side).unwrap();
        assert!(cone_filter(&s, &p).unwrap());
        match check_gluing(&s, &p).unwrap() {
            GluingVerdict::Rejected(GluingRejection::IntersectionRankHigh { rank, lattice }) => {
                assert_eq!(rank, 2);
                assert_eq!(lattice.basis(), &[iv![1, 3], iv![0, 4]]);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn spatial_example() {
        let left = [iv![4, 0, 0], iv![3, 1, 0], iv![2, 2, 0]];
        let right = [iv![3, 3, 0], iv![3, 2, 1], iv![3, 0, 3]];
        let all: Vec<IntVec> = left.iter().chain(&right).cloned().collect();
        let s = sg(&all);
        let side: Vec<usize> = right
            .iter()
            .map(|g| s.gens().iter().position(|h| h == g).unwrap())
            .collect();
        let p = Partition::new(6, side).unwrap();
        let cert = check_gluing(&s, &p).unwrap().certificate().unwrap();
        assert_eq!(cert.d, iv![6, 6, 0]);
        let report = span_intersection_check(&s, &cert, 6).unwrap();
        assert!(report.holds);
        assert_eq!(report.direction, Some(iv![1, 1, 0]));
        assert_eq!(report.span.basis(), &[iv![1, 1, 0]]);
        let mut parts = [report.left_gens.clone(), report.right_gens.clone()];
        parts.sort();
        assert_eq!(parts, [vec![2], vec![3]]);
        assert_eq!(report.glued_gens, vec![2, 3]);

        let mut tampered = cert.clone();
        tampered.d = iv![12, 12, 0];
        assert!(!span_intersection_check(&s, &tampered, 6).unwrap().holds);
    }

    #[test]
    fn line_generator_extraction() {
        let members: Vec<bool> = (0..30).map(|t| t == 0 || (t >= 4 && t != 7)).collect();
        assert_eq!(line_generators(&members), vec![4, 5, 6]);
        let members: Vec<bool> = (0..20).map(|t| t % 2 == 0).collect();
        assert_eq!(line_generators(&members), vec![2]);
    }
}

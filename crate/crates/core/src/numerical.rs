//! Numerical semigroups: Frobenius number, pseudo-Frobenius numbers, type,
//! symmetry classes and gluings `d1 S1 +_{d1 d2} d2 S2`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{hnf, lattice_intersect};
use crate::gluing::{check_gluing, GluingCertificate, GluingVerdict, Partition};
use crate::semigroup::{make_semigroup, member, scalar_sieve, AffineSemigroup};
use crate::vector::IntVec;

/// `scale * <gens>` with `gens` the minimal generators of a numerical semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    gens: Vec<u64>,
    scale: u64,
}

fn minimal_generators(raw: &[u64]) -> Result<Vec<u64>> {
    let vs: Vec<IntVec> = raw.iter().map(|&g| IntVec::from_i64s(&[g as i64])).collect();
    let s = make_semigroup(1, &vs)?;
    Ok(s.gens().iter().map(|g| u64::try_from(&g[0]).expect("positive")).collect())
}

fn check_positive(raw: &[u64]) -> Result<()> {
    if raw.is_empty() || raw.iter().all(|&g| g == 0) {
        return Err(Error::NoGenerators);
    }
    if raw.iter().any(|&g| g > i64::MAX as u64 / 4) {
        return Err(Error::OutOfRange("generator too large".into()));
    }
    Ok(())
}

impl NumericalSemigroup {
    /// The numerical semigroup generated by `raw`, whose gcd must be 1.
    pub fn new(raw: &[u64]) -> Result<Self> {
        check_positive(raw)?;
        if raw.iter().fold(0u64, |a, &b| a.gcd(&b)) != 1 {
            return Err(Error::GcdNotOne);
        }
        Ok(NumericalSemigroup {
            gens: minimal_generators(raw)?,
            scale: 1,
        })
    }

    /// Writes `<raw>` as `gcd * T` with T numerical.
    pub fn scaled(raw: &[u64]) -> Result<Self> {
        check_positive(raw)?;
        let g = raw.iter().fold(0u64, |a, &b| a.gcd(&b));
        let reduced: Vec<u64> = raw.iter().map(|&x| x / g).collect();
        Ok(NumericalSemigroup {
            gens: minimal_generators(&reduced)?,
            scale: g,
        })
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn multiplicity(&self) -> u64 {
        self.gens[0]
    }

    /// The monoid `scale * <gens>` as a subsemigroup of N.
    pub fn to_affine(&self) -> Result<AffineSemigroup> {
        let vs: Vec<IntVec> = self
            .gens
            .iter()
            .map(|&g| IntVec::from_i64s(&[(g * self.scale) as i64]))
            .collect();
        make_semigroup(1, &vs)
    }

    /// Membership in `<gens>` (ignoring the scale).
    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        let (table, conductor) = scalar_sieve(&self.gens);
        x as u64 >= conductor || table[x as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalInvariants {
    pub frobenius: i64,
    pub conductor: u64,
    pub gaps: Vec<u64>,
    pub pseudo_frobenius: Vec<i64>,
    pub semigroup_type: usize,
    pub multiplicity: u64,
}

/// Invariants of `<gens>` (the scale is ignored).
///
/// N itself has Frobenius number -1, no gaps, and pseudo-Frobenius set {-1}.
pub fn invariants(s: &NumericalSemigroup) -> NumericalInvariants {
    let (table, conductor) = scalar_sieve(&s.gens);
    let gaps: Vec<u64> = (0..conductor).filter(|&g| !table[g as usize]).collect();
    let inside = |x: u64| x >= conductor || table[x as usize];
    let pseudo_frobenius: Vec<i64> = if gaps.is_empty() {
        vec![-1]
    } else {
        gaps.iter()
            .filter(|&&g| s.gens.iter().all(|&n| inside(g + n)))
            .map(|&g| g as i64)
            .collect()
    };
    NumericalInvariants {
        frobenius: conductor as i64 - 1,
        conductor,
        semigroup_type: pseudo_frobenius.len(),
        gaps,
        pseudo_frobenius,
        multiplicity: s.multiplicity(),
    }
}

/// `gcd(A) * F(<A / gcd(A)>)`.
pub fn frobenius_scaled(gens: &[u64]) -> Result<i64> {
    let s = NumericalSemigroup::scaled(gens)?;
    Ok(s.scale as i64 * invariants(&s).frobenius)
}

/// A numerical gluing `d1 S1 +_{d1 d2} d2 S2`.
///
/// When `d1 gens(S1) ∪ d2 gens(S2)` is minimal, `certificate` is the generic
/// certificate of that partition of S. Otherwise one scaled generator lies
/// in the other part (as for `7<3,4,5> + 3<2,3>`, where `21 = 6 + 6 + 9`);
/// the gluing conditions are then certified on the scaled parts themselves
/// and `certificate` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalGluing {
    pub semigroup: NumericalSemigroup,
    pub d: u64,
    pub union_gens: Vec<u64>,
    pub minimal_union: bool,
    pub certificate: Option<GluingCertificate>,
}

/// Builds and certifies `d1 S1 +_{d1 d2} d2 S2`.
pub fn glue_numerical(
    s1: &NumericalSemigroup,
    d1: u64,
    s2: &NumericalSemigroup,
    d2: u64,
) -> Result<NumericalGluing> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument("d1 and d2 must be positive".into()));
    }
    let left: Vec<u64> = s1.gens.iter().map(|&g| g * d1).collect();
    let right: Vec<u64> = s2.gens.iter().map(|&g| g * d2).collect();
    if left.iter().any(|g| right.contains(g)) {
        return Err(Error::OverlappingGenerators);
    }
    let d = d1
        .checked_mul(d2)
        .ok_or_else(|| Error::OutOfRange("d1 * d2 overflows".into()))?;
    let mut union: Vec<u64> = left.iter().chain(&right).copied().collect();
    union.sort_unstable();
    let reject = |why: String| Error::GluingRejected(why);
    if union.iter().fold(0u64, |a, &b| a.gcd(&b)) != 1 {
        return Err(reject(format!("gcd(d1, d2) = {} is not 1", d1.gcd(&d2))));
    }
    let semigroup = NumericalSemigroup::new(&union)?;
    let minimal_union = semigroup.gens.len() == union.len();
    let to_affine = |gens: &[u64]| -> Result<AffineSemigroup> {
        let vs: Vec<IntVec> = gens.iter().map(|&g| IntVec::from_i64s(&[g as i64])).collect();
        make_semigroup(1, &vs)
    };
    let dv = IntVec::from_i64s(&[d as i64]);
    let certificate = if minimal_union {
        let whole = to_affine(&union)?;
        let side: Vec<usize> = (0..union.len()).filter(|&i| right.contains(&union[i])).collect();
        let p = Partition::new(union.len(), side)?;
        match check_gluing(&whole, &p)? {
            GluingVerdict::Glued(c) if c.d == dv => Some(c),
            GluingVerdict::Glued(c) => {
                return Err(reject(format!("parts glue by {} instead of {d}", c.d)))
            }
            GluingVerdict::Rejected(r) => return Err(reject(format!("{r:?}"))),
        }
    } else {
        // Same conditions, checked on the scaled parts: G1 ∩ G2 = dZ and d ∈ S1 ∩ S2.
        let (a1, a2) = (to_affine(&left)?, to_affine(&right)?);
        let meet = lattice_intersect(a1.group(), a2.group())?;
        if meet != hnf(1, std::slice::from_ref(&dv))? {
            return Err(reject(format!("group intersection is not {d}Z")));
        }
        if member(&a1, &dv)?.is_none() || member(&a2, &dv)?.is_none() {
            return Err(reject(format!("{d} is not in both parts")));
        }
        None
    };
    Ok(NumericalGluing {
        semigroup,
        d,
        union_gens: union,
        minimal_union,
        certificate,
    })
}

/// `d1 F(S1) + d2 F(S2) + d1 d2`, after certifying the gluing.
pub fn frobenius_of_gluing(
    s1: &NumericalSemigroup,
    d1: u64,
    s2: &NumericalSemigroup,
    d2: u64,
) -> Result<i64> {
    glue_numerical(s1, d1, s2, d2)?;
    let (f1, f2) = (invariants(s1).frobenius, invariants(s2).frobenius);
    Ok(d1 as i64 * f1 + d2 as i64 * f2 + (d1 * d2) as i64)
}

/// `type(S1) * type(S2)`.
pub fn type_of_gluing(s1: &NumericalSemigroup, s2: &NumericalSemigroup) -> usize {
    invariants(s1).semigroup_type * invariants(s2).semigroup_type
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub symmetric: bool,
    pub pseudo_symmetric: bool,
    pub almost_symmetric: bool,
}

/// Symmetric: type 1. Pseudo-symmetric: PF = {F, F/2}. Almost symmetric:
/// the number of gaps is `(F + type) / 2`.
pub fn classify(s: &NumericalSemigroup) -> Classification {
    let inv = invariants(s);
    let f = inv.frobenius;
    let pseudo_symmetric =
        f > 0 && f % 2 == 0 && inv.pseudo_frobenius == vec![f / 2, f];
    Classification {
        symmetric: inv.semigroup_type == 1,
        pseudo_symmetric,
        almost_symmetric: 2 * inv.gaps.len() as i64 == f + inv.semigroup_type as i64,
    }
}

/// `Ap(S, m)` for the multiplicity `m`, sorted.
pub fn apery_of_multiplicity(s: &NumericalSemigroup) -> Vec<u64> {
    let m = s.multiplicity();
    let (table, conductor) = scalar_sieve(&s.gens);
    let inside = |x: u64| x >= conductor || table[x as usize];
    (0..conductor + m)
        .filter(|&w| inside(w) && (w < m || !inside(w - m)))
        .collect()
}

/// Whether `Ap(S, m) = {Σ a_i n_i : 0 <= a_i <= α_i}` with
/// `α_i = max{k : k n_i ∈ Ap(S, m)}`.
pub fn is_alpha_rectangular(s: &NumericalSemigroup) -> bool {
    let ap: BTreeSet<u64> = apery_of_multiplicity(s).into_iter().collect();
    let mut sums: BTreeSet<u64> = BTreeSet::from([0]);
    for &n in &s.gens[1..] {
        let alpha = (0..).take_while(|k| ap.contains(&(k * n))).last().unwrap_or(0);
        sums = sums
            .iter()
            .flat_map(|&x| (0..=alpha).map(move |k| x + k * n))
            .collect();
        if sums.len() > ap.len() {
            return false;
        }
    }
    sums == ap
}

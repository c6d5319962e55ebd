//! Hilbert series `H(S, x) = Σ_{s ∈ S} x^s` as factored rational functions.

mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use poly::SparsePoly;

use crate::ci::{is_free_leaf, GluingTree};
use crate::error::{Error, Result};
use crate::geometry::{extremal_rays, is_simplicial};
use crate::semigroup::{AffineSemigroup, AperySet};
use crate::vector::IntVec;

/// `numerator / Π_{a ∈ denominator} (1 - x^a)`.
///
/// When the numerator is known to be `Π (1 - x^d)` over a list of `d`, that
/// list is kept in `numerator_factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: SparsePoly,
    pub numerator_factors: Option<Vec<IntVec>>,
    /// Exponents of the binomial factors, sorted.
    pub denominator: Vec<IntVec>,
}

impl RationalSeries {
    fn new(numerator: SparsePoly, factors: Option<Vec<IntVec>>, mut denominator: Vec<IntVec>) -> Self {
        denominator.sort();
        RationalSeries {
            numerator,
            numerator_factors: factors,
            denominator,
        }
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominator.is_empty() {
            write!(f, " / (")?;
            for a in &self.denominator {
                write!(f, "(1 - {})", poly::fmt_monomial(a))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Coefficients of a series on the box `[0, bound]`; zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub bound: IntVec,
    pub coeffs: BTreeMap<IntVec, BigInt>,
}

impl TruncatedSeries {
    pub fn coefficient(&self, exp: &IntVec) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// Exponents carrying coefficient 1, provided every coefficient is 0 or 1.
    pub fn support_if_indicator(&self) -> Option<Vec<IntVec>> {
        let one = BigInt::from(1);
        if self.coeffs.values().all(|c| *c == one) {
            Some(self.coeffs.keys().cloned().collect())
        } else {
            None
        }
    }
}

fn check_same_dim(vs: &[IntVec]) -> Result<usize> {
    let Some(first) = vs.first() else {
        return Err(Error::NoGenerators);
    };
    for v in vs {
        v.check_dim(first.dim())?;
    }
    Ok(first.dim())
}

/// `1 / Π (1 - x^a)` for linearly independent generators.
pub fn series_free(gens: &[IntVec]) -> Result<RationalSeries> {
    let dim = check_same_dim(gens)?;
    if !is_free_leaf(gens) {
        return Err(Error::NotFree);
    }
    Ok(RationalSeries::new(
        SparsePoly::one(dim),
        Some(Vec::new()),
        gens.to_vec(),
    ))
}

/// `(1 - x^d) H1 H2`, cancelling `1 - x^d` against the denominator when an
/// identical factor is there.
pub fn series_glue(h1: &RationalSeries, h2: &RationalSeries, d: &IntVec) -> Result<RationalSeries> {
    let dim = h1.dim();
    if h2.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: h2.dim(),
        });
    }
    d.check_dim(dim)?;
    let mut den: Vec<IntVec> = h1.denominator.iter().chain(&h2.denominator).cloned().collect();
    let mut num = h1.numerator.mul(&h2.numerator);
    let mut factors = match (&h1.numerator_factors, &h2.numerator_factors) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect::<Vec<_>>()),
        _ => None,
    };
    if let Some(pos) = den.iter().position(|a| a == d) {
        den.remove(pos);
    } else {
        num = num.mul(&SparsePoly::binomial(d));
        if let Some(f) = factors.as_mut() {
            f.push(d.clone());
        }
    }
    Ok(RationalSeries::new(num, factors, den))
}

/// `Π (1 - x^{d_i}) / Π (1 - x^a)` over the nodes and leaves of a gluing tree.
pub fn series_ci(tree: &GluingTree) -> RationalSeries {
    let dim = tree.ambient_dim();
    let ds = tree.gluing_elements();
    RationalSeries::new(
        SparsePoly::product_of_binomials(dim, &ds),
        Some(ds),
        tree.leaf_gens(),
    )
}

fn apery_numerator(ap: &AperySet) -> SparsePoly {
    let dim = ap.bases[0].dim();
    ap.elements.iter().fold(SparsePoly::zero(dim), |acc, w| {
        acc.add(&SparsePoly::monomial(w.clone(), BigInt::from(1)))
    })
}

/// `(Σ_{w ∈ Ap(S, s)} x^w) / (1 - x^s)` from a complete Apéry set of `s`.
pub fn series_from_apery(ap: &AperySet, s: &IntVec) -> Result<RationalSeries> {
    if !ap.complete {
        return Err(Error::IncompleteApery);
    }
    if ap.bases.len() != 1 || ap.bases[0] != *s {
        return Err(Error::InvalidArgument(format!("Apéry set is not taken with respect to {s}")));
    }
    Ok(RationalSeries::new(apery_numerator(ap), None, vec![s.clone()]))
}

/// `P(x) / Π (1 - x^{v_i})` over the extremal rays of a simplicial semigroup,
/// with `P` the sum over `⋂ Ap(S, v_i)`.
pub fn series_simplicial(s: &AffineSemigroup, ap: &AperySet) -> Result<RationalSeries> {
    if !is_simplicial(s.cone()) {
        return Err(Error::NotSimplicial);
    }
    if !ap.complete {
        return Err(Error::IncompleteApery);
    }
    let mut rays: Vec<IntVec> = extremal_rays(s.cone())
        .into_iter()
        .map(|i| s.gens()[i].clone())
        .collect();
    rays.sort();
    let mut bases = ap.bases.clone();
    bases.sort();
    if bases != rays {
        return Err(Error::InvalidArgument(
            "Apéry set is not taken over the extremal rays".into(),
        ));
    }
    Ok(RationalSeries::new(apery_numerator(ap), None, rays))
}

/// Coefficients of `h` on `[0, bound]`.
///
/// The numerator is laid on a dense grid and each `1 / (1 - x^a)` is applied
/// as the in-place recurrence `c[x] += c[x - a]` in lexicographic order.
pub fn expand(h: &RationalSeries, bound: &IntVec) -> Result<TruncatedSeries> {
    bound.check_dim(h.dim())?;
    if !bound.is_nonnegative() {
        return Err(Error::InvalidArgument("box must be nonnegative".into()));
    }
    let bounds = bound.try_to_i64s()?;
    let m = bounds.len();
    let mut volume: u64 = 1;
    for &b in &bounds {
        volume = volume.saturating_mul(b as u64 + 1);
    }
    if volume > crate::semigroup::MAX_BOX_CELLS / 4 {
        return Err(Error::OutOfRange(format!("expansion box with {volume} cells")));
    }
    let mut strides = vec![1usize; m];
    for i in (0..m.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
    }
    let index = |x: &[i64]| -> Option<usize> {
        let mut idx = 0;
        for ((&c, &b), &s) in x.iter().zip(&bounds).zip(&strides) {
            if c < 0 || c > b {
                return None;
            }
            idx += c as usize * s;
        }
        Some(idx)
    };
    let mut grid = vec![BigInt::zero(); volume as usize];
    for (e, c) in h.numerator.terms() {
        if let Some(i) = e.to_i64s().as_deref().and_then(index) {
            grid[i] += c;
        }
    }
    let point = |mut idx: usize| -> Vec<i64> {
        strides
            .iter()
            .map(|&s| {
                let c = idx / s;
                idx %= s;
                c as i64
            })
            .collect()
    };
    for a in &h.denominator {
        let Some(a) = a.to_i64s() else { continue };
        if a.iter().zip(&bounds).any(|(x, b)| x > b) {
            continue;
        }
        let shift: usize = a.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum();
        let mut x = vec![0i64; m];
        for i in 0..grid.len() {
            if i >= shift && x.iter().zip(&a).all(|(p, q)| p >= q) && !grid[i - shift].is_zero() {
                let prev = grid[i - shift].clone();
                grid[i] += prev;
            }
            // Advance x to the next grid point in row-major order.
            for j in (0..m).rev() {
                if x[j] < bounds[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = 0;
            }
        }
    }
    let coeffs = grid
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (IntVec::from_i64s(&point(i)), c))
        .collect();
    Ok(TruncatedSeries {
        bound: bound.clone(),
        coeffs,
    })
}

/// Exact equality of two rational series by cross-multiplication after
/// cancelling common denominator factors.
pub fn series_equal(h1: &RationalSeries, h2: &RationalSeries) -> Result<bool> {
    if h1.dim() != h2.dim() {
        return Err(Error::DimensionMismatch {
            expected: h1.dim(),
            found: h2.dim(),
        });
    }
    let mut rest2 = h2.denominator.clone();
    let mut rest1 = Vec::new();
    for a in &h1.denominator {
        match rest2.iter().position(|b| b == a) {
            Some(p) => {
                rest2.remove(p);
            }
            None => rest1.push(a.clone()),
        }
    }
    let dim = h1.dim();
    let lhs = h1.numerator.mul(&SparsePoly::product_of_binomials(dim, &rest2));
    let rhs = h2.numerator.mul(&SparsePoly::product_of_binomials(dim, &rest1));
    Ok(lhs == rhs)
}

/// `h(x^k)` for a univariate series.
pub fn substitute_power(h: &RationalSeries, k: u64) -> Result<RationalSeries> {
    if h.dim() != 1 {
        return Err(Error::NotUnivariate);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let k = BigInt::from(k);
    Ok(RationalSeries::new(
        h.numerator.scale_exponents(&k),
        h.numerator_factors
            .as_ref()
            .map(|f| f.iter().map(|d| d.scale(&k)).collect()),
        h.denominator.iter().map(|a| a.scale(&k)).collect(),
    ))
}

/// `(1 - x^{d1 d2}) H1(x^{d1}) H2(x^{d2})` for the numerical gluing
/// `d1 S1 +_{d1 d2} d2 S2`.
pub fn series_numerical_glue(
    h1: &RationalSeries,
    h2: &RationalSeries,
    d1: u64,
    d2: u64,
) -> Result<RationalSeries> {
    let s1 = substitute_power(h1, d1)?;
    let s2 = substitute_power(h2, d2)?;
    let d = d1
        .checked_mul(d2)
        .ok_or_else(|| Error::OutOfRange("d1 * d2 overflows".into()))?;
    series_glue(&s1, &s2, &IntVec::from_i64s(&[d as i64]))
}

/// `Σ d_i - Σ a`: numerator degree minus denominator degree of a series in
/// complete-intersection form.
pub fn frobenius_from_series(h: &RationalSeries) -> Result<IntVec> {
    let Some(factors) = &h.numerator_factors else {
        return Err(Error::NotFactored);
    };
    let dim = h.dim();
    Ok(&IntVec::sum_all(dim, factors) - &IntVec::sum_all(dim, &h.denominator))
}

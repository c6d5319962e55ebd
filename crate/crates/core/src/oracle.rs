//! Brute-force reference computations used to test the formula modules.
//!
//! Everything here works directly from the definitions on plain `i64`
//! vectors and shares no code with the rest of the crate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hilbert::TruncatedSeries;
use crate::vector::IntVec;

/// Membership table of a generated monoid on the box `[0, bounds]`.
#[derive(Clone, Debug)]
pub struct SieveTable {
    bounds: Vec<i64>,
    cells: Vec<bool>,
}

impl SieveTable {
    fn index(&self, x: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for (&c, &b) in x.iter().zip(&self.bounds) {
            if c < 0 || c > b {
                return None;
            }
            idx = idx * (b as usize + 1) + c as usize;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> Vec<i64> {
        let mut x = vec![0i64; self.bounds.len()];
        for j in (0..self.bounds.len()).rev() {
            let w = self.bounds[j] as usize + 1;
            x[j] = (idx % w) as i64;
            idx /= w;
        }
        x
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.index(x).is_some_and(|i| self.cells[i])
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Vec<i64>> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i])
            .map(|i| self.point(i))
            .collect()
    }
}

/// Dynamic programme over the whole box: `x` is reachable iff `x = 0` or
/// `x - g` is reachable for some generator `g <= x`.
pub fn sieve_box(gens: &[Vec<i64>], bounds: &[i64]) -> SieveTable {
    let size: usize = bounds.iter().map(|&b| b.max(0) as usize + 1).product();
    let mut table = SieveTable {
        bounds: bounds.to_vec(),
        cells: vec![false; size],
    };
    for i in 0..size {
        let x = table.point(i);
        let reachable = x.iter().all(|&c| c == 0)
            || gens.iter().any(|g| {
                let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                y != x && table.contains(&y)
            });
        table.cells[i] = reachable;
    }
    table
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest integer outside `<gens>`, or -1 for N.
///
/// The sieve runs up to `min(gens) * max(gens)`, above Schur's bound
/// `(n_1 - 1)(n_k - 1) - 1` on the Frobenius number.
pub fn frobenius_brute(gens: &[u64]) -> Result<i64> {
    if gens.iter().fold(0, |a, &b| gcd(a, b)) != 1 {
        return Err(Error::GcdNotOne);
    }
    let lo = *gens.iter().filter(|&&g| g > 0).min().unwrap();
    let hi = *gens.iter().max().unwrap();
    let bound = (lo * hi) as i64;
    let rows: Vec<Vec<i64>> = gens.iter().filter(|&&g| g > 0).map(|&g| vec![g as i64]).collect();
    let table = sieve_box(&rows, &[bound]);
    Ok((0..=bound).rev().find(|&n| !table.contains(&[n])).unwrap_or(-1))
}

/// Gaps `g` of `<gens>` with `g + s` in the semigroup for every nonzero `s`,
/// checked for all `s` up to the sieve bound; `[-1]` for N.
pub fn pseudo_frobenius_brute(gens: &[u64]) -> Result<Vec<i64>> {
    let f = frobenius_brute(gens)?;
    if f < 0 {
        return Ok(vec![-1]);
    }
    let rows: Vec<Vec<i64>> = gens.iter().filter(|&&g| g > 0).map(|&g| vec![g as i64]).collect();
    let top = 3 * f + 2 * *gens.iter().max().unwrap() as i64 + 2;
    let table = sieve_box(&rows, &[top]);
    let inside = |n: i64| table.contains(&[n]);
    Ok((1..=f)
        .filter(|&g| !inside(g))
        .filter(|&g| (1..=f + 1 + *gens.iter().max().unwrap() as i64).all(|s| !inside(s) || inside(g + s)))
        .collect())
}

/// Truncated `Σ_{s ∈ S} x^s` on the box: the indicator of [`sieve_box`].
pub fn truncated_series_brute(gens: &[Vec<i64>], bounds: &[i64]) -> TruncatedSeries {
    let table = sieve_box(gens, bounds);
    let coeffs: BTreeMap<IntVec, BigInt> = table
        .members()
        .into_iter()
        .map(|x| (IntVec::from_i64s(&x), BigInt::from(1)))
        .collect();
    TruncatedSeries {
        bound: IntVec::from_i64s(bounds),
        coeffs,
    }
}

/// `{x ∈ S ∩ box : x - s ∉ S}`, read off the sieve.
pub fn apery_brute(gens: &[Vec<i64>], s: &[i64], bounds: &[i64]) -> Result<Vec<Vec<i64>>> {
    let table = sieve_box(gens, bounds);
    let whole_s = sieve_box(gens, s);
    if !whole_s.contains(s) {
        return Err(Error::NotInSemigroup(IntVec::from_i64s(s)));
    }
    Ok(table
        .members()
        .into_iter()
        .filter(|x| {
            let y: Vec<i64> = x.iter().zip(s).map(|(a, b)| a - b).collect();
            !table.contains(&y)
        })
        .collect())
}

/// All `c` with `Σ c_i gens_i = x`, by enumerating every multiplicity vector
/// under the per-generator caps; lexicographic order.
pub fn factorizations_brute(gens: &[Vec<i64>], x: &[i64]) -> Vec<Vec<u64>> {
    let caps: Vec<u64> = gens
        .iter()
        .map(|g| {
            g.iter()
                .zip(x)
                .filter(|(gi, _)| **gi > 0)
                .map(|(gi, xi)| if *xi < 0 { 0 } else { (xi / gi) as u64 })
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::new();
    let mut c = vec![0u64; gens.len()];
    loop {
        let sum: Vec<i64> = (0..x.len())
            .map(|j| gens.iter().zip(&c).map(|(g, &k)| g[j] * k as i64).sum())
            .collect();
        if sum == x {
            out.push(c.clone());
        }
        let mut j = gens.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if c[j] < caps[j] {
                c[j] += 1;
                break;
            }
            c[j] = 0;
        }
    }
}

/// Elements of the box whose factorizations split into at least two groups
/// under "shares a generator", found by exhaustive factorization.
pub fn betti_brute(gens: &[Vec<i64>], bounds: &[i64]) -> Vec<Vec<i64>> {
    let table = sieve_box(gens, bounds);
    table
        .members()
        .into_iter()
        .filter(|x| {
            let facts = factorizations_brute(gens, x);
            if facts.len() < 2 {
                return false;
            }
            let mut seen = vec![false; facts.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(a) = stack.pop() {
                for b in 0..facts.len() {
                    let shares = (0..gens.len()).any(|i| facts[a][i] > 0 && facts[b][i] > 0);
                    if !seen[b] && shares {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.iter().any(|s| !s)
        })
        .collect()
}

/// Denominator of the step used by the relative-interior oracles.
///
/// For generators with entries at most 9 in dimension at most 3 every facet
/// normal `n` has `n · a < 5000`, so `x - t a` stays in the cone for
/// `t = 1 / RELINT_STEP` whenever it does for some `t > 0`, even after
/// summing up to 20 generators.
pub const RELINT_STEP: i64 = 100_000;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solves `Σ c_i cols_i = x` when the columns are independent.
fn solve_exact(cols: &[&Vec<i64>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let (m, k) = (x.len(), cols.len());
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| q(c[r])).collect();
            row.push(x[r].clone());
            row
        })
        .collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, p);
        let pivot = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let t = &f * &a[row][c];
                    a[r][c] -= t;
                }
            }
        }
        row += 1;
    }
    if a[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(a[..k].iter().map(|r| r[k].clone()).collect())
}

/// Nonnegative coefficients writing `x` over the generators, found by
/// trying every linearly independent subset (Carathéodory).
pub fn cone_combination_brute(gens: &[Vec<i64>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    assert!(gens.len() < 20, "oracle is exponential in the generator count");
    for mask in 0u32..(1 << gens.len()) {
        let idx: Vec<usize> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).collect();
        let cols: Vec<&Vec<i64>> = idx.iter().map(|&i| &gens[i]).collect();
        if let Some(c) = solve_exact(&cols, x) {
            if c.iter().all(|v| !v.is_negative()) {
                let mut full = vec![BigRational::zero(); gens.len()];
                for (i, v) in idx.into_iter().zip(c) {
                    full[i] = v;
                }
                return Some(full);
            }
        }
    }
    None
}

pub fn cone_contains_brute(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let xq: Vec<BigRational> = x.iter().map(|&c| q(c)).collect();
    cone_combination_brute(gens, &xq).is_some()
}

/// `x` lies in the cone and a small step from `x` against every generator
/// stays in the cone.
pub fn relint_contains_brute(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let xq: Vec<BigRational> = x.iter().map(|&c| q(c)).collect();
    let eps = BigRational::new(BigInt::from(1), BigInt::from(RELINT_STEP));
    cone_combination_brute(gens, &xq).is_some()
        && gens.iter().all(|g| {
            let y: Vec<BigRational> = xq.iter().zip(g).map(|(c, &a)| c - &eps * q(a)).collect();
            cone_combination_brute(gens, &y).is_some()
        })
}

/// Strictly positive coefficients writing `x` over the generators:
/// `x - ε Σ a = Σ μ_a a` with `μ >= 0`, so `x = Σ (μ_a + ε) a`.
pub fn relint_combination_brute(gens: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigRational>> {
    let eps = BigRational::new(BigInt::from(1), BigInt::from(RELINT_STEP));
    let y: Vec<BigRational> = (0..x.len())
        .map(|j| q(x[j]) - &eps * q(gens.iter().map(|g| g[j]).sum()))
        .collect();
    let mu = cone_combination_brute(gens, &y)?;
    Some(mu.into_iter().map(|m| m + &eps).collect())
}

//! Exact linear algebra over Q for small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::vector::IntVec;

pub(crate) type Rat = BigRational;

pub(crate) fn to_rat_rows(rows: &[IntVec]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.coords().iter().map(|c| Rat::from_integer(c.clone())).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let inv = m[top][col].recip();
        for c in col..cols {
            m[top][c] = &m[top][c] * &inv;
        }
        for r in 0..m.len() {
            if r == top || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..cols {
                let t = &f * &m[top][c];
                m[r][c] -= t;
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    pivots
}

/// Dimension of the rational span of `rows`.
pub fn rank(rows: &[IntVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut m = to_rat_rows(rows);
    rref(&mut m, first.dim()).len()
}

/// Scales a rational vector to a primitive integer vector (same direction).
pub(crate) fn primitive(v: &[Rat]) -> IntVec {
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &den).to_integer()).collect();
    primitive_int(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub(crate) fn primitive_int(v: Vec<BigInt>) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return IntVec::new(v);
    }
    IntVec::new(v.into_iter().map(|c| c / &g).collect())
}

/// Flips the sign so the first nonzero coordinate is positive.
pub(crate) fn orient(v: IntVec) -> IntVec {
    match v.coords().iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -&v,
        _ => v,
    }
}

/// Canonical basis of the row space: primitive rows of the RREF.
pub fn row_space(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut m = to_rat_rows(rows);
    rref(&mut m, dim);
    m.iter().map(|r| primitive(r)).collect()
}

/// Basis of `{y : r . y = 0 for every row r}`, canonicalised via [`row_space`].
pub fn kernel(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let mut m = to_rat_rows(rows);
    let pivots = rref(&mut m, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let raw: Vec<IntVec> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); dim];
            v[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            primitive(&v)
        })
        .collect();
    row_space(&raw, dim)
}

/// Whether `v` lies in the rational span of `rows`.
pub fn in_span(rows: &[IntVec], v: &IntVec) -> bool {
    let mut with = rows.to_vec();
    with.push(v.clone());
    rank(&with) == rank(rows)
}

/// Coefficients `c` with `sum c_i * vecs[i] = x`, when `vecs` are linearly
/// independent and `x` lies in their span.
pub(crate) fn solve_independent(vecs: &[IntVec], x: &IntVec) -> Option<Vec<Rat>> {
    let k = vecs.len();
    let mut m: Vec<Vec<Rat>> = (0..x.dim())
        .map(|i| {
            let mut row: Vec<Rat> = vecs.iter().map(|v| Rat::from_integer(v[i].clone())).collect();
            row.push(Rat::from_integer(x[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some(m.iter().map(|r| r[k].clone()).collect())
}

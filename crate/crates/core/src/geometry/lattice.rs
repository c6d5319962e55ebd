//! Subgroups of Z^m in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::vector::IntVec;

use super::check_ambient;

/// A subgroup of Z^m, stored by its canonical basis.
///
/// Basis rows are in row Hermite normal form: each row's leading entry
/// (pivot) is positive, pivots move strictly right going down, and every
/// entry above a pivot lies in `[0, pivot)`. Two lattices are equal exactly
/// when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<IntVec>,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Column index of each basis row's pivot.
    fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.coords().iter().position(|c| !c.is_zero()).unwrap())
            .collect()
    }
}

/// Row Hermite normal form of the integer row span of `rows`.
pub fn hnf(ambient_dim: usize, rows: &[IntVec]) -> Result<Lattice> {
    check_ambient(ambient_dim)?;
    for r in rows {
        if r.dim() != ambient_dim {
            return Err(Error::InconsistentRows);
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let basis = hnf_rows(&mut m, ambient_dim);
    Ok(Lattice {
        ambient_dim,
        basis: basis.into_iter().map(IntVec::new).collect(),
    })
}

/// In-place echelon reduction; returns the nonzero rows in Hermite form.
fn hnf_rows(m: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut top = 0;
    for col in 0..cols {
        if top >= m.len() {
            break;
        }
        loop {
            // Bring the row with smallest nonzero |entry| in this column to `top`.
            let best = (top..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(top, best);
            let mut done = true;
            for r in top + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[top][col]);
                for c in col..cols {
                    let t = &q * &m[top][c];
                    m[r][c] -= t;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < m.len() && !m[top][col].is_zero() {
            if m[top][col].is_negative() {
                for c in col..cols {
                    m[top][c] = -&m[top][c];
                }
            }
            // Reduce the entries above the new pivot into [0, pivot).
            for r in 0..top {
                let q = m[r][col].div_floor(&m[top][col]);
                if !q.is_zero() {
                    for c in col..cols {
                        let t = &q * &m[top][c];
                        m[r][c] -= t;
                    }
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    std::mem::take(m)
}

/// Whether `v` is an integer combination of the basis of `lattice`.
pub fn lattice_member(lattice: &Lattice, v: &IntVec) -> Result<bool> {
    v.check_dim(lattice.ambient_dim)?;
    let mut rest = v.coords().to_vec();
    for (row, p) in lattice.basis.iter().zip(lattice.pivots()) {
        if rest[..p].iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return Ok(false);
        }
        for (c, b) in rest.iter_mut().zip(row.coords()).skip(p) {
            *c -= &q * b;
        }
    }
    Ok(rest.iter().all(Zero::is_zero))
}

/// The intersection of two lattices, in Hermite form.
///
/// Rows of `[B1 | B1; B2 | 0]` are reduced; the rows whose left half vanishes
/// carry the common sublattice in their right half.
pub fn lattice_intersect(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    let m = a.ambient_dim;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(a.rank() + b.rank());
    for r in &a.basis {
        let mut row = r.coords().to_vec();
        row.extend_from_slice(r.coords());
        rows.push(row);
    }
    for r in &b.basis {
        let mut row = r.coords().to_vec();
        row.extend(std::iter::repeat_n(BigInt::zero(), m));
        rows.push(row);
    }
    let reduced = hnf_rows(&mut rows, 2 * m);
    let common: Vec<IntVec> = reduced
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| IntVec::new(r[m..].to_vec()))
        .collect();
    hnf(m, &common)
}

/// The generator of a rank-one lattice, first nonzero coordinate positive.
pub fn rank_one_generator(lattice: &Lattice) -> Option<IntVec> {
    if lattice.rank() != 1 {
        return None;
    }
    Some(super::linalg::orient(lattice.basis[0].clone()))
}

/// Index of a full-rank sublattice in Z^m.
pub fn index_in_full(lattice: &Lattice) -> Option<BigInt> {
    if lattice.rank() != lattice.ambient_dim {
        return None;
    }
    let pivots = lattice.pivots();
    Some(
        lattice
            .basis
            .iter()
            .zip(pivots)
            .fold(BigInt::one(), |acc, (r, p)| acc * &r[p]),
    )
}

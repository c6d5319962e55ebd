//! Exact phase-one simplex: feasibility of `A y = b, y >= 0` over Q.

use num_traits::{Signed, Zero};

use super::linalg::Rat;

/// Returns a nonnegative solution of `a * y = b` if one exists.
///
/// Bland's rule guarantees termination; all arithmetic is exact.
pub(crate) fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(vec![Rat::zero(); vars]);
    }
    // Tableau columns: original vars, one artificial per row, then rhs.
    let width = vars + rows + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        r.extend((0..rows).map(|j| if j == i { Rat::from_integer(1.into()) } else { Rat::zero() }));
        r.push(if flip { -rhs } else { rhs.clone() });
        t.push(r);
    }
    // Objective row: minimise the sum of artificials, written as reduced costs.
    let mut obj = vec![Rat::zero(); width];
    for r in &t {
        for c in 0..vars {
            obj[c] -= &r[c];
        }
        obj[width - 1] -= &r[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (vars..vars + rows).collect();

    loop {
        let obj = &t[rows];
        let Some(enter) = (0..vars + rows).find(|&c| obj[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded descent cannot happen for a bounded phase-one objective.
            break;
        };
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }

    if !t[rows][width - 1].is_zero() {
        return None;
    }
    let mut y = vec![Rat::zero(); vars];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < vars {
            y[bv] = t[r][width - 1].clone();
        }
    }
    Some(y)
}

fn pivot(t: &mut [Vec<Rat>], pr: usize, pc: usize) {
    let inv = t[pr][pc].recip();
    for x in t[pr].iter_mut() {
        *x = &*x * &inv;
    }
    let prow = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
}

//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use semiglue::geometry::{cone_member, faces, relint_member, ConeGens};
use semiglue::oracle::{cone_combination_brute, relint_combination_brute};
use semiglue::IntVec;

/// Seed of the random corpora used across the integration tests.
pub const SEED: u64 = 20_261_016;

pub fn rows(gens: &[IntVec]) -> Vec<Vec<i64>> {
    gens.iter().map(|g| g.to_i64s().unwrap()).collect()
}

pub fn cone(dim: usize, gens: &[Vec<i64>]) -> ConeGens {
    ConeGens::new(dim, gens.iter().map(|g| IntVec::from_i64s(g)).collect()).unwrap()
}

/// All points of `[0, side]^dim` in lexicographic order.
pub fn box_points(dim: usize, side: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=side).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn box_side(dim: usize) -> i64 {
    if dim <= 2 {
        6
    } else {
        4
    }
}

/// Clears denominators of `Σ c_i g_i` over the chosen indices.
fn integral_combination(gens: &[Vec<i64>], coeffs: &[BigRational], idx: &[usize]) -> IntVec {
    let den = idx
        .iter()
        .fold(BigInt::one(), |acc, &i| acc.lcm(coeffs[i].denom()));
    let dim = gens[0].len();
    let coords: Vec<BigInt> = (0..dim)
        .map(|j| {
            idx.iter()
                .map(|&i| (&coeffs[i] * BigRational::from_integer(den.clone())).to_integer() * gens[i][j])
                .sum()
        })
        .collect();
    IntVec::new(coords)
}

/// Splits generator indices into two nonempty sides by the low bits of `mask`.
pub fn split(k: usize, mask: u64) -> (Vec<usize>, Vec<usize>) {
    let m = (mask % ((1u64 << k) - 2)) + 1;
    ((0..k).filter(|i| m >> i & 1 == 0).collect(), (0..k).filter(|i| m >> i & 1 == 1).collect())
}

fn sub(gens: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| gens[i].clone()).collect()
}

/// Appending `extra ∈ cone(C)` leaves `relint(cone(C))` unchanged on the box.
pub fn relint_invariance(gens: &[Vec<i64>], extra: &[i64], side: i64) -> Result<usize, String> {
    let dim = gens[0].len();
    let c = cone(dim, gens);
    if !cone_member(&c, &IntVec::from_i64s(extra)).unwrap() {
        return Err(format!("{extra:?} is not in the cone"));
    }
    let mut more = gens.to_vec();
    more.push(extra.to_vec());
    let c2 = cone(dim, &more);
    let pts = box_points(dim, side);
    for x in &pts {
        let xv = IntVec::from_i64s(x);
        if relint_member(&c, &xv).unwrap() != relint_member(&c2, &xv).unwrap() {
            return Err(format!("relint changes at {x:?} after adding {extra:?} to {gens:?}"));
        }
    }
    Ok(pts.len())
}

/// `relint(C1) + relint(C2) ⊆ relint(C)` on box pairs, and every relint point
/// of C in the box splits into relint points of the parts.
pub fn relint_additivity(gens: &[Vec<i64>], left: &[usize], right: &[usize], side: i64) -> Result<usize, String> {
    let dim = gens[0].len();
    let (g1, g2) = (sub(gens, left), sub(gens, right));
    let (c, c1, c2) = (cone(dim, gens), cone(dim, &g1), cone(dim, &g2));
    let pts = box_points(dim, side);
    let inside = |cc: &ConeGens| -> Vec<IntVec> {
        pts.iter()
            .map(|p| IntVec::from_i64s(p))
            .filter(|p| relint_member(cc, p).unwrap())
            .collect()
    };
    let (r1, r2) = (inside(&c1), inside(&c2));
    let mut checked = 0;
    for x1 in r1.iter().take(8) {
        for x2 in r2.iter().take(8) {
            checked += 1;
            if !relint_member(&c, &(x1 + x2)).unwrap() {
                return Err(format!("{x1} + {x2} leaves relint of {gens:?}"));
            }
        }
    }
    for x in inside(&c) {
        checked += 1;
        let lam = relint_combination_brute(gens, &x.to_i64s().unwrap())
            .ok_or_else(|| format!("no positive combination for {x} in {gens:?}"))?;
        if lam.iter().any(|l| !l.is_positive()) {
            return Err(format!("non-positive combination for {x}"));
        }
        let x1 = integral_combination(gens, &lam, left);
        let x2 = integral_combination(gens, &lam, right);
        if !relint_member(&c1, &x1).unwrap() || !relint_member(&c2, &x2).unwrap() {
            return Err(format!("{x} does not split into relint points of the parts"));
        }
    }
    Ok(checked)
}

/// Every lattice point of every face of C splits as `x1 + x2` with `x_i` on a
/// face of `cone(A_i)` contained in that face.
pub fn face_decomposition(gens: &[Vec<i64>], left: &[usize], right: &[usize], side: i64) -> Result<usize, String> {
    let dim = gens[0].len();
    let c = cone(dim, gens);
    let all: Vec<usize> = (0..gens.len()).collect();
    let mut supports: Vec<Vec<usize>> = faces(&c).into_iter().map(|f| f.gen_indices).collect();
    supports.push(all.clone());
    let part_faces = |idx: &[usize]| -> Vec<Vec<usize>> {
        let cc = cone(dim, &sub(gens, idx));
        let mut fs: Vec<Vec<usize>> = faces(&cc)
            .into_iter()
            .map(|f| f.gen_indices.iter().map(|&i| idx[i]).collect())
            .collect();
        fs.push(idx.to_vec());
        fs
    };
    let (f1s, f2s) = (part_faces(left), part_faces(right));
    let pts = box_points(dim, side);
    let mut checked = 0;
    for support in &supports {
        let face_cone = sub(gens, support);
        for x in &pts {
            let on_face = if support.is_empty() {
                x.iter().all(|&v| v == 0)
            } else {
                cone_member(&cone(dim, &face_cone), &IntVec::from_i64s(x)).unwrap()
            };
            if !on_face {
                continue;
            }
            checked += 1;
            let xq: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            let found = f1s.iter().any(|f1| {
                f2s.iter().any(|f2| {
                    if !f1.iter().chain(f2).all(|i| support.contains(i)) {
                        return false;
                    }
                    let idx: Vec<usize> = f1.iter().chain(f2).copied().collect();
                    let Some(coeffs) = cone_combination_brute(&sub(gens, &idx), &xq) else {
                        return false;
                    };
                    let mut full = vec![BigRational::from_integer(0.into()); gens.len()];
                    for (i, v) in idx.iter().zip(coeffs) {
                        full[*i] = v;
                    }
                    let x1 = integral_combination(gens, &full, f1);
                    let x2 = integral_combination(gens, &full, f2);
                    let in_face = |f: &[usize], p: &IntVec| {
                        p.is_zero() || (!f.is_empty() && cone_member(&cone(dim, &sub(gens, f)), p).unwrap())
                    };
                    in_face(f1, &x1) && in_face(f2, &x2)
                })
            });
            if !found {
                return Err(format!("{x:?} on face {support:?} of {gens:?} does not decompose"));
            }
        }
    }
    Ok(checked)
}

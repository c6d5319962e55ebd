//! Seeded random instances for property tests and the acceptance suite.
//!
//! Every generator is deterministic in its seed and returns only instances
//! that the library itself certifies (gluing checks, CI decomposition).

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ci::{frobenius_telescopic, is_complete_intersection};
use crate::geometry::{hnf, lattice_member, ConeGens};
use crate::numerical::{glue_numerical, NumericalGluing, NumericalSemigroup};
use crate::semigroup::{make_semigroup, AffineSemigroup};
use crate::vector::IntVec;
use crate::Result;

/// Largest generator allowed in a numerical gluing instance.
pub const NUMERICAL_GEN_LIMIT: u64 = 40;

/// Pseudo-symmetric parts mixed into the numerical corpus.
pub const PSEUDO_SYMMETRIC_POOL: [&[u64]; 4] = [&[3, 4, 5], &[3, 5, 7], &[4, 5, 7], &[3, 7, 11]];

const SYMMETRIC_POOL: [&[u64]; 6] = [&[1], &[2, 3], &[2, 5], &[3, 4], &[3, 5], &[4, 5, 6]];

/// `d1 S1 +_{d1 d2} d2 S2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalGluingInstance {
    pub s1: NumericalSemigroup,
    pub d1: u64,
    pub s2: NumericalSemigroup,
    pub d2: u64,
}

impl NumericalGluingInstance {
    pub fn glue(&self) -> Result<NumericalGluing> {
        glue_numerical(&self.s1, self.d1, &self.s2, self.d2)
    }
}

fn random_part(rng: &mut ChaCha8Rng) -> NumericalSemigroup {
    let raw: Vec<u64> = match rng.gen_range(0..5) {
        0 | 1 => PSEUDO_SYMMETRIC_POOL.choose(rng).unwrap().to_vec(),
        2 => SYMMETRIC_POOL.choose(rng).unwrap().to_vec(),
        _ => loop {
            let k = rng.gen_range(2..=3);
            let g: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=9)).collect();
            if g.iter().fold(0u64, |a, &b| a.gcd(&b)) == 1 {
                break g;
            }
        },
    };
    NumericalSemigroup::new(&raw).expect("gcd one")
}

/// Certified numerical gluings with every generator at most
/// [`NUMERICAL_GEN_LIMIT`], pairwise distinct.
pub fn numerical_gluings(seed: u64, count: usize) -> Vec<NumericalGluingInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let (s1, s2) = (random_part(&mut rng), random_part(&mut rng));
        let top1 = *s1.gens().last().unwrap();
        let top2 = *s2.gens().last().unwrap();
        let d1s: Vec<u64> = (2..=NUMERICAL_GEN_LIMIT / top1).filter(|&d| s2.contains(d as i64)).collect();
        let d2s: Vec<u64> = (2..=NUMERICAL_GEN_LIMIT / top2).filter(|&d| s1.contains(d as i64)).collect();
        let (Some(&d1), Some(&d2)) = (d1s.choose(&mut rng), d2s.choose(&mut rng)) else {
            continue;
        };
        if d1.gcd(&d2) != 1 {
            continue;
        }
        let key = (s1.gens().to_vec(), d1, s2.gens().to_vec(), d2);
        if seen.contains(&key) {
            continue;
        }
        let inst = NumericalGluingInstance { s1, d1, s2, d2 };
        // Non-minimal unions are kept at a reduced rate so most instances
        // carry a partition certificate.
        let keep = match inst.glue() {
            Ok(g) => g.minimal_union || rng.gen_range(0..4) == 0,
            Err(_) => false,
        };
        if keep {
            seen.insert(key);
            out.push(inst);
        }
    }
    out
}

/// A free semigroup: an independent `base` followed by attachments
/// `(v, θ)` glued with `d = θ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopicInstance {
    pub base: Vec<IntVec>,
    pub steps: Vec<(IntVec, u64)>,
}

impl TelescopicInstance {
    pub fn gens(&self) -> Vec<IntVec> {
        self.base.iter().cloned().chain(self.steps.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn semigroup(&self) -> Result<AffineSemigroup> {
        make_semigroup(self.base[0].dim(), &self.gens())
    }
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, max: i64) -> IntVec {
    loop {
        let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=max)).collect();
        if c.iter().any(|&x| x != 0) {
            return IntVec::from_i64s(&c);
        }
    }
}

fn independent_base(rng: &mut ChaCha8Rng, dim: usize, max: i64) -> Vec<IntVec> {
    loop {
        let base: Vec<IntVec> = (0..dim).map(|_| random_vec(rng, dim, max)).collect();
        if hnf(dim, &base).map(|l| l.rank() == dim).unwrap_or(false) {
            return base;
        }
    }
}

/// One attachment: the smallest `θ` with `θ v ∈ G`, kept if the step certifies.
fn try_step(
    rng: &mut ChaCha8Rng,
    inst: &TelescopicInstance,
    dim: usize,
) -> Option<(IntVec, u64)> {
    let current = inst.semigroup().ok()?;
    let v = random_vec(rng, dim, 6);
    let theta = (2..=6u64).find(|&t| {
        lattice_member(current.group(), &v.scale(&t.into())).unwrap_or(false)
    })?;
    if lattice_member(current.group(), &v).unwrap_or(true) {
        return None;
    }
    let mut steps = inst.steps.clone();
    steps.push((v.clone(), theta));
    frobenius_telescopic(&inst.base, &steps).ok()?;
    Some((v, theta))
}

/// Telescopic instances in N² and N³ with one or two attachments.
pub fn telescopic_instances(seed: u64, count: usize) -> Vec<TelescopicInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<TelescopicInstance> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 500 * count.max(1) {
        attempts += 1;
        let dim = rng.gen_range(2..=3);
        let mut inst = TelescopicInstance {
            base: independent_base(&mut rng, dim, 3),
            steps: Vec::new(),
        };
        let wanted = rng.gen_range(1..=2);
        for _ in 0..8 {
            if inst.steps.len() == wanted {
                break;
            }
            if let Some(step) = try_step(&mut rng, &inst, dim) {
                inst.steps.push(step);
            }
        }
        if inst.steps.len() == wanted && !out.contains(&inst) {
            out.push(inst);
        }
    }
    out
}

/// Complete intersections in N² and N³: alternately a telescopic instance and
/// a random three- or four-generator semigroup that decomposes.
pub fn ci_semigroups(seed: u64, count: usize) -> Vec<AffineSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = telescopic_instances(seed ^ 0x5eed, count.div_ceil(2));
    let mut out: Vec<AffineSemigroup> = free.iter().filter_map(|t| t.semigroup().ok()).collect();
    let mut attempts = 0;
    while out.len() < count && attempts < 500 * count.max(1) {
        attempts += 1;
        let dim = rng.gen_range(2..=3);
        let k = rng.gen_range(dim + 1..=dim + 1 + usize::from(dim == 2));
        let raw: Vec<IntVec> = (0..k).map(|_| random_vec(&mut rng, dim, 4)).collect();
        let Ok(s) = make_semigroup(dim, &raw) else { continue };
        if s.embedding_dim() != k || out.contains(&s) {
            continue;
        }
        if is_complete_intersection(&s).unwrap_or(false) {
            out.push(s);
        }
    }
    out
}

/// Small pointed cones in N² and N³ with two to five generators.
pub fn random_cones(seed: u64, count: usize) -> Vec<ConeGens> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dim = rng.gen_range(2..=3);
            let k = rng.gen_range(2..=5);
            let gens: Vec<IntVec> = (0..k).map(|_| random_vec(&mut rng, dim, 4)).collect();
            ConeGens::new(dim, gens).expect("small cone")
        })
        .collect()
}

//! Sparse multivariate polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::vector::IntVec;

/// `Σ c_e x^e` over exponents `e` in N^m, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    dim: usize,
    terms: BTreeMap<IntVec, BigInt>,
}

impl SparsePoly {
    pub fn zero(dim: usize) -> Self {
        SparsePoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(IntVec::zeros(dim), BigInt::one())
    }

    pub fn monomial(exp: IntVec, coeff: BigInt) -> Self {
        let mut p = Self::zero(exp.dim());
        p.add_term(exp, coeff);
        p
    }

    /// `1 - x^a`.
    pub fn binomial(a: &IntVec) -> Self {
        let mut p = Self::one(a.dim());
        p.add_term(a.clone(), -BigInt::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<IntVec, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &IntVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: IntVec, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Product of `1 - x^a` over the list.
    pub fn product_of_binomials(dim: usize, exps: &[IntVec]) -> SparsePoly {
        exps.iter()
            .fold(SparsePoly::one(dim), |acc, a| acc.mul(&SparsePoly::binomial(a)))
    }

    /// Replaces every exponent `e` by `k e`.
    pub fn scale_exponents(&self, k: &BigInt) -> SparsePoly {
        SparsePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.scale(k), c.clone())).collect(),
        }
    }
}

/// `x^(e)` with the exponent written as a tuple; the unit monomial is `1`.
pub(crate) fn fmt_monomial(e: &IntVec) -> String {
    if e.is_zero() {
        "1".to_string()
    } else {
        let parts: Vec<String> = e.coords().iter().map(ToString::to_string).collect();
        format!("x^({})", parts.join(","))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let body = if mag.is_one() {
                fmt_monomial(e)
            } else if e.is_zero() {
                mag.to_string()
            } else {
                format!("{mag}*{}", fmt_monomial(e))
            };
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

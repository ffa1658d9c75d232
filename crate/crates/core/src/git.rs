//! The GIT datum: a torus `G` of rank `r` acting on `C^k` with weights
//! `mu_1..mu_k` and a polarization `nu`, plus the support combinatorics
//! that drive everything downstream.
//!
//! Semistability of a coordinate support `T` means `nu` lies in the rational
//! cone spanned by `{mu_j : j in T}`. Indices are 0-based in the Rust API.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{cone_contains, for_each_subset, rat, IntMatrix, Rational};

#[derive(Debug)]
pub struct GitData {
    weights: IntMatrix,
    nu: Vec<Rational>,
    labels: Option<Vec<String>>,
    // memo of semistability by support bitmask
    cache: Mutex<HashMap<u64, bool>>,
}

impl Clone for GitData {
    fn clone(&self) -> Self {
        GitData {
            weights: self.weights.clone(),
            nu: self.nu.clone(),
            labels: self.labels.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for GitData {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.nu == other.nu && self.labels == other.labels
    }
}

impl Eq for GitData {}

/// A subset of coordinates together with its semistability flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    pub indices: Vec<usize>,
    pub semistable: bool,
}

impl GitData {
    /// Validates and builds the datum. `weights` is `r x k`; column `j` is `mu_j`.
    pub fn new(weights: IntMatrix, nu: Vec<Rational>, labels: Option<Vec<String>>) -> Result<Self> {
        let (r, k) = (weights.rows(), weights.cols());
        if r == 0 || k == 0 {
            return Err(Error::Schema("weight matrix must be nonempty".into()));
        }
        if k > 63 {
            return Err(Error::Schema("at most 63 coordinates are supported".into()));
        }
        if nu.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: nu.len(),
            });
        }
        if nu.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPolarization);
        }
        if let Some(j) = (0..k).find(|&j| weights.column(j).iter().all(|&x| x == 0)) {
            return Err(Error::ZeroWeight(j));
        }
        if let Some(l) = &labels {
            if l.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: l.len(),
                });
            }
        }
        let g = GitData {
            weights,
            nu,
            labels,
            cache: Mutex::new(HashMap::new()),
        };
        if !g.is_semistable(&(0..k).collect::<Vec<_>>()) {
            return Err(Error::EmptySemistableLocus);
        }
        Ok(g)
    }

    /// Convenience constructor from integer rows and an integral polarization.
    pub fn from_rows(rows: &[Vec<i64>], nu: &[i64]) -> Result<Self> {
        let w = IntMatrix::from_rows(rows)?;
        Self::new(w, nu.iter().map(|&x| rat(x)).collect(), None)
    }

    pub fn k(&self) -> usize {
        self.weights.cols()
    }

    pub fn r(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    pub fn polarization(&self) -> &[Rational] {
        &self.nu
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn weight(&self, j: usize) -> Vec<i64> {
        self.weights.column(j)
    }

    pub fn weight_rational(&self, j: usize) -> Vec<Rational> {
        self.weight(j).into_iter().map(rat).collect()
    }

    /// `<mu_j, d>`; `d` must have length `r`.
    pub fn pairing(&self, j: usize, d: &[Rational]) -> Rational {
        (0..self.r())
            .map(|i| rat(self.weights[(i, j)]) * &d[i])
            .sum()
    }

    /// `<nu, d>`.
    pub fn energy(&self, d: &[Rational]) -> Rational {
        self.nu.iter().zip(d).map(|(a, b)| a * b).sum()
    }

    pub fn check_degree(&self, d: &[Rational]) -> Result<()> {
        if d.len() != self.r() {
            return Err(Error::DimensionMismatch {
                expected: self.r(),
                found: d.len(),
            });
        }
        Ok(())
    }

    pub fn is_semistable(&self, indices: &[usize]) -> bool {
        let mask = indices.iter().fold(0u64, |m, &j| m | (1 << j));
        if let Some(&v) = self.cache.lock().unwrap().get(&mask) {
            return v;
        }
        let gens: Vec<Vec<Rational>> = indices.iter().map(|&j| self.weight_rational(j)).collect();
        let v = cone_contains(&gens, &self.nu).expect("weights share the polarization's dimension");
        self.cache.lock().unwrap().insert(mask, v);
        v
    }

    pub fn support(&self, indices: Vec<usize>) -> Support {
        let semistable = self.is_semistable(&indices);
        Support {
            indices,
            semistable,
        }
    }

    /// The fixed-limit locus `X^d = sum of X_j with <mu_j, d> >= 0`.
    pub fn limit_support(&self, d: &[Rational]) -> Result<Support> {
        self.check_degree(d)?;
        let idx = (0..self.k())
            .filter(|&j| !self.pairing(j, d).is_negative())
            .collect();
        Ok(self.support(idx))
    }

    /// Inclusion-minimal `S` such that the complement of `S` is unstable,
    /// sorted lexicographically.
    pub fn unstable_primitive_sets(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for size in 0..=k {
            for_each_subset(k, size, |s| {
                if found.iter().any(|f| is_subset(f, s)) {
                    return;
                }
                let complement: Vec<usize> = (0..k).filter(|j| !s.contains(j)).collect();
                if !self.is_semistable(&complement) {
                    found.push(s.to_vec());
                }
            });
        }
        found.sort();
        found
    }

    /// Inclusion-minimal semistable supports, sorted lexicographically.
    pub fn minimal_semistable_supports(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for size in 0..=k {
            for_each_subset(k, size, |t| {
                if found.iter().any(|f| is_subset(f, t)) {
                    return;
                }
                if self.is_semistable(t) {
                    found.push(t.to_vec());
                }
            });
        }
        found.sort();
        found
    }

    /// Smallest weight rank over the minimal semistable supports.
    fn min_semistable_rank(&self) -> usize {
        self.minimal_semistable_supports()
            .iter()
            .map(|t| self.weights.select_columns(t).rank())
            .min()
            .unwrap_or(0)
    }

    /// All stabilizers on the semistable locus are finite.
    pub fn is_dm(&self) -> bool {
        self.min_semistable_rank() == self.r()
    }

    pub fn require_dm(&self) -> Result<()> {
        let rank = self.min_semistable_rank();
        if rank < self.r() {
            return Err(Error::NotDeligneMumford {
                rank,
                expected: self.r(),
            });
        }
        Ok(())
    }

    /// Datum restricted to the listed coordinates, same polarization.
    pub fn restrict(&self, indices: &[usize]) -> Result<GitData> {
        let labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&j| l[j].clone()).collect());
        GitData::new(
            self.weights.select_columns(indices),
            self.nu.clone(),
            labels,
        )
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

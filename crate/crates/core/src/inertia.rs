//! Inertia sectors of a torus quotient, indexed by group elements
//! `exp(2 pi i xi)` with `xi in g_Q / g_Z` fixing a semistable support.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::git::{GitData, Support};
use crate::linalg::{frac, lcm_of_denominators, snf, Rational};
use crate::ring::RingPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub xi: Vec<Rational>,
    pub fixed_support: Support,
    pub age: Rational,
    pub order: u64,
}

impl Sector {
    pub fn is_untwisted(&self) -> bool {
        self.xi.iter().all(Zero::is_zero)
    }
}

/// `sum_j frac(<mu_j, xi>)`.
pub fn age(git: &GitData, xi: &[Rational]) -> Result<Rational> {
    git.check_degree(xi)?;
    Ok((0..git.k()).map(|j| frac(&git.pairing(j, xi))).sum())
}

/// Coordinates on which `exp(2 pi i xi)` acts trivially.
pub fn fixed_indices(git: &GitData, xi: &[Rational]) -> Vec<usize> {
    (0..git.k())
        .filter(|&j| git.pairing(j, xi).is_integer())
        .collect()
}

/// Representative of `-xi` with entries in `[0, 1)`.
pub fn inverse(xi: &[Rational]) -> Vec<Rational> {
    xi.iter().map(|x| frac(&-x)).collect()
}

/// The finite group `{xi : <mu_j, xi> in Z for j in T}` for a support whose
/// weights have full rank, as representatives in `[0,1)^r`.
fn kernel_group(git: &GitData, support: &[usize]) -> Vec<Vec<Rational>> {
    let r = git.r();
    // rows of A are mu_j^T, so A xi in Z^|T|
    let a = git.weights().select_columns(support).transpose();
    let res = snf(&a);
    let factors = res.invariant_factors();
    debug_assert_eq!(factors.len(), r);
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        // xi = V * (c_i / d_i)
        let eta: Vec<Rational> = c
            .iter()
            .zip(&factors)
            .map(|(&ci, &di)| Rational::new(BigInt::from(ci), BigInt::from(di)))
            .collect();
        let xi: Vec<Rational> = (0..r)
            .map(|i| {
                let s: Rational = (0..r)
                    .map(|l| Rational::from_integer(res.v[(i, l)].into()) * &eta[l])
                    .sum();
                frac(&s)
            })
            .collect();
        out.push(xi);
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            c[i] += 1;
            if c[i] < factors[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn element_order(xi: &[Rational]) -> u64 {
    lcm_of_denominators(xi)
        .to_u64()
        .expect("element order fits in u64")
}

/// All sectors, sorted by (order, lexicographic `xi`).
pub fn enumerate_sectors(git: &GitData) -> Result<Vec<Sector>> {
    git.require_dm()?;
    let mut elements: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for t in git.minimal_semistable_supports() {
        elements.extend(kernel_group(git, &t));
    }
    let mut sectors: Vec<Sector> = elements
        .into_iter()
        .map(|xi| {
            let fixed_support = git.support(fixed_indices(git, &xi));
            Sector {
                age: age(git, &xi).expect("xi has rank length"),
                order: element_order(&xi),
                fixed_support,
                xi,
            }
        })
        .collect();
    sectors.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.xi.cmp(&b.xi)));
    Ok(sectors)
}

/// Cohomology presentation of the fixed locus of a sector: the datum
/// restricted to the fixed coordinates, same polarization.
pub fn sector_ring(git: &GitData, sector: &Sector) -> Result<Arc<RingPresentation>> {
    let restricted = git.restrict(&sector.fixed_support.indices)?;
    Ok(RingPresentation::build(&restricted))
}

//! Energy-truncated Novikov series `sum_d c_d q^d` over degrees
//! `d in H_2^G(X, Q) = g_Q`, filtered by the energy `<nu, d>`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::git::GitData;
use crate::linalg::{format_rational, format_vector, Rational};

/// A degree with its cached energy. Ordered by (energy, lexicographic `d`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NovikovDegree {
    d: Vec<Rational>,
    energy: Rational,
}

impl NovikovDegree {
    pub fn new(git: &GitData, d: Vec<Rational>) -> Result<Self> {
        git.check_degree(&d)?;
        let energy = git.energy(&d);
        Ok(NovikovDegree { d, energy })
    }

    pub fn from_ints(git: &GitData, d: &[i64]) -> Result<Self> {
        Self::new(
            git,
            d.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn zero(rank: usize) -> Self {
        NovikovDegree {
            d: vec![Rational::zero(); rank],
            energy: Rational::zero(),
        }
    }

    pub fn vector(&self) -> &[Rational] {
        &self.d
    }

    pub fn energy(&self) -> &Rational {
        &self.energy
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.d.iter().all(|x| x.is_integer())
    }

    pub fn sum(&self, other: &NovikovDegree) -> NovikovDegree {
        NovikovDegree {
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
            energy: &self.energy + &other.energy,
        }
    }

    pub fn difference(&self, other: &NovikovDegree) -> NovikovDegree {
        NovikovDegree {
            d: self.d.iter().zip(&other.d).map(|(a, b)| a - b).collect(),
            energy: &self.energy - &other.energy,
        }
    }

    pub fn negated(&self) -> NovikovDegree {
        NovikovDegree {
            d: self.d.iter().map(|x| -x).collect(),
            energy: -&self.energy,
        }
    }
}

impl Ord for NovikovDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.energy
            .cmp(&other.energy)
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for NovikovDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NovikovDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", format_vector(&self.d))
    }
}

impl fmt::Display for NovikovDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.len() == 1 {
            write!(f, "q^{}", format_rational(&self.d[0]))
        } else {
            write!(f, "q^{}", format_vector(&self.d))
        }
    }
}

/// Coefficients of a Novikov series.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

#[derive(Clone, PartialEq)]
pub struct NovikovSeries<C> {
    rank: usize,
    cutoff: Rational,
    terms: BTreeMap<NovikovDegree, C>,
}

impl<C: Coefficient> NovikovSeries<C> {
    pub fn new(rank: usize, cutoff: Rational) -> Self {
        NovikovSeries {
            rank,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    /// `c * q^d`.
    pub fn monomial(degree: NovikovDegree, c: C, cutoff: Rational) -> Result<Self> {
        let mut s = Self::new(degree.rank(), cutoff);
        s.insert(degree, c)?;
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    /// Adds `c * q^d`; terms beyond the cutoff are dropped.
    pub fn insert(&mut self, degree: NovikovDegree, c: C) -> Result<()> {
        if degree.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: degree.rank(),
            });
        }
        if degree.energy().is_negative() {
            return Err(Error::NegativeEnergy(degree.to_string()));
        }
        self.accumulate(degree, c);
        Ok(())
    }

    fn accumulate(&mut self, degree: NovikovDegree, c: C) {
        if degree.energy() > &self.cutoff || c.is_zero() {
            return;
        }
        match self.terms.remove(&degree) {
            Some(old) => {
                let v = old.plus(&c);
                if !v.is_zero() {
                    self.terms.insert(degree, v);
                }
            }
            None => {
                self.terms.insert(degree, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NovikovDegree, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, degree: &NovikovDegree) -> Option<&C> {
        self.terms.get(degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch(
                format_rational(&self.cutoff),
                format_rational(&other.cutoff),
            ));
        }
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.map_coefficients(|c| c.negated())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        self.map_coefficients(|x| x.times(c))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, mut f: impl FnMut(&C) -> C) -> Self {
        let mut out = Self::new(self.rank, self.cutoff.clone());
        for (d, c) in &self.terms {
            out.accumulate(d.clone(), f(c));
        }
        out
    }

    /// Like `map_coefficients`, with access to the degree.
    pub fn map_terms(&self, mut f: impl FnMut(&NovikovDegree, &C) -> C) -> Self {
        let mut out = Self::new(self.rank, self.cutoff.clone());
        for (d, c) in &self.terms {
            out.accumulate(d.clone(), f(d, c));
        }
        out
    }

    /// Convolution product, truncated at the shared cutoff.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::new(self.rank, self.cutoff.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let d = a.sum(b);
                if d.energy() > &self.cutoff {
                    // terms are energy-sorted
                    break;
                }
                out.accumulate(d, x.times(y));
            }
        }
        Ok(out)
    }

    /// Multiplication by `q^d` (degrees must have nonnegative energy).
    pub fn shift(&self, degree: &NovikovDegree) -> Result<Self> {
        if degree.energy().is_negative() {
            return Err(Error::NegativeEnergy(degree.to_string()));
        }
        let mut out = Self::new(self.rank, self.cutoff.clone());
        for (d, c) in &self.terms {
            out.accumulate(d.sum(degree), c.clone());
        }
        Ok(out)
    }

    /// Keeps terms of energy at most `e`, with the cutoff lowered to `e`.
    pub fn truncate(&self, e: &Rational) -> Self {
        let cutoff = e.min(&self.cutoff).clone();
        let mut out = Self::new(self.rank, cutoff);
        for (d, c) in &self.terms {
            out.accumulate(d.clone(), c.clone());
        }
        out
    }
}

impl<C: fmt::Debug> fmt::Debug for NovikovSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (d, c) in &self.terms {
            m.entry(d, c);
        }
        m.finish()?;
        write!(f, " + O(E > {})", self.cutoff)
    }
}

/// Per-coordinate closed bounds on degree vectors.
pub type DegreeBox = Vec<(i64, i64)>;

/// All degrees `d = n / denominator` (integer `n`) inside `bounds` with
/// `0 <= <nu, d> <= e_max`, sorted by (energy, lexicographic `d`).
pub fn enumerate_degrees(
    git: &GitData,
    e_max: &Rational,
    bounds: &[(i64, i64)],
    denominator: u32,
) -> Result<Vec<NovikovDegree>> {
    let r = git.r();
    if bounds.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: bounds.len(),
        });
    }
    if denominator == 0 {
        return Err(Error::Schema("denominator must be positive".into()));
    }
    let den = i64::from(denominator);
    let ranges: Vec<(i64, i64)> = bounds
        .iter()
        .map(|&(lo, hi)| (lo * den, hi * den))
        .collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut n: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let d: Vec<Rational> = n
            .iter()
            .map(|&x| Rational::new(BigInt::from(x), BigInt::from(den)))
            .collect();
        let deg = NovikovDegree::new(git, d)?;
        if !deg.energy().is_negative() && deg.energy() <= e_max {
            out.push(deg);
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                return Ok(out);
            }
            n[i] += 1;
            if n[i] <= ranges[i].1 {
                break;
            }
            n[i] = ranges[i].0;
            i += 1;
        }
    }
}

/// True when some enumerated degree lies on the boundary of `bounds`.
pub fn touches_box(degrees: &[NovikovDegree], bounds: &[(i64, i64)]) -> bool {
    degrees.iter().any(|deg| {
        deg.vector().iter().zip(bounds).any(|(x, &(lo, hi))| {
            *x == Rational::from_integer(lo.into()) || *x == Rational::from_integer(hi.into())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::git::fixtures::*;
    use crate::linalg::{rat, ratio};

    fn deg(g: &GitData, d: &[i64]) -> NovikovDegree {
        NovikovDegree::from_ints(g, d).unwrap()
    }

    #[test]
    fn monomial_product_adds_degrees() {
        let g = p1xp1();
        let a = NovikovSeries::monomial(deg(&g, &[1, 0]), rat(2), rat(5)).unwrap();
        let b = NovikovSeries::monomial(deg(&g, &[0, 2]), rat(3), rat(5)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&deg(&g, &[1, 2])), Some(&rat(6)));
    }

    #[test]
    fn unit_and_truncation() {
        let g = projective(2);
        let one = NovikovSeries::monomial(NovikovDegree::zero(1), rat(1), rat(2)).unwrap();
        let mut s = NovikovSeries::new(1, rat(2));
        s.insert(deg(&g, &[1]), ratio(1, 2)).unwrap();
        s.insert(deg(&g, &[2]), rat(-1)).unwrap();
        assert_eq!(one.mul(&s).unwrap(), s);

        let q1 = NovikovSeries::monomial(deg(&g, &[1]), rat(1), rat(2)).unwrap();
        let q2 = NovikovSeries::monomial(deg(&g, &[2]), rat(1), rat(2)).unwrap();
        assert!(q1.mul(&q2).unwrap().is_zero());
    }

    #[test]
    fn addition() {
        let g = projective(2);
        let q = NovikovSeries::monomial(deg(&g, &[1]), rat(1), rat(3)).unwrap();
        let zero = NovikovSeries::new(1, rat(3));
        assert_eq!(q.add(&zero).unwrap(), q);
        let two = q.add(&q).unwrap();
        assert_eq!(two.coeff(&deg(&g, &[1])), Some(&rat(2)));
        assert_eq!(q.scale(&rat(2)), two);
        assert!(q.sub(&q).unwrap().is_zero());
        // beyond-cutoff insertion is dropped
        let mut s = NovikovSeries::new(1, rat(1));
        s.insert(deg(&g, &[2]), rat(1)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn errors() {
        let g = projective(2);
        let a = NovikovSeries::<Rational>::new(1, rat(2));
        let b = NovikovSeries::<Rational>::new(1, rat(3));
        assert!(matches!(a.mul(&b), Err(Error::CutoffMismatch(..))));
        let mut s = NovikovSeries::new(1, rat(2));
        assert!(matches!(
            s.insert(deg(&g, &[-1]), rat(1)),
            Err(Error::NegativeEnergy(_))
        ));
    }

    #[test]
    fn enumerate_examples() {
        let g = projective(2);
        let ds = enumerate_degrees(&g, &rat(3), &[(-3, 3)], 1).unwrap();
        let got: Vec<Rational> = ds.iter().map(|d| d.vector()[0].clone()).collect();
        assert_eq!(got, vec![rat(0), rat(1), rat(2), rat(3)]);

        let ds = enumerate_degrees(&p23(), &rat(1), &[(-2, 2)], 6).unwrap();
        let got: Vec<Rational> = ds.iter().map(|d| d.vector()[0].clone()).collect();
        let expected: Vec<Rational> = (0..=6).map(|i| ratio(i, 6)).collect();
        assert_eq!(got, expected);

        let g = p1xp1();
        let ds = enumerate_degrees(&g, &rat(2), &[(0, 3), (0, 3)], 1).unwrap();
        let got: Vec<Vec<i64>> = ds
            .iter()
            .map(|d| {
                d.vector()
                    .iter()
                    .map(|x| x.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(
            got,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        assert!(enumerate_degrees(&g, &rat(2), &[(0, 3)], 1).is_err());
        assert!(enumerate_degrees(&g, &rat(2), &[(3, 0), (0, 1)], 1)
            .unwrap()
            .is_empty());
    }
}

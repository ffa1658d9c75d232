//! The localized gauged graph potential (I-function) of a toric quotient:
//!
//! ```text
//! I(zeta, q) = sum_d q^d prod_j  prod_{m <= 0} (D_j + m zeta)
//!                                / prod_{m <= mu_j(d)} (D_j + m zeta)
//! ```
//!
//! evaluated at `alpha = 0`. Each coefficient is a Laurent polynomial in
//! `zeta` over the presented cohomology ring; nilpotency of the `D_j` makes
//! every inverse `(D_j + m zeta)^{-1}` a finite sum.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::novikov::{enumerate_degrees, Coefficient, NovikovDegree, NovikovSeries};
use crate::poly::Poly;
use crate::ring::{normal_form, RingElement, RingPresentation};

/// `sum_e c_e zeta^e` with ring coefficients in normal form.
#[derive(Clone)]
pub struct ZetaElement {
    pres: Arc<RingPresentation>,
    terms: BTreeMap<i32, Poly>,
}

impl ZetaElement {
    pub fn zero(pres: &Arc<RingPresentation>) -> Self {
        ZetaElement {
            pres: pres.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(pres: &Arc<RingPresentation>) -> Self {
        Self::from_ring(&RingElement::one(pres), 0)
    }

    /// `c * zeta^e`
    pub fn from_ring(c: &RingElement, e: i32) -> Self {
        let mut z = Self::zero(c.presentation());
        z.add_term(e, c.value().clone());
        z
    }

    /// `D_j + c * zeta`
    pub fn divisor_plus(pres: &Arc<RingPresentation>, j: usize, c: &Rational) -> Result<Self> {
        let mut z = Self::from_ring(&RingElement::divisor(pres, j)?, 0);
        z.add_term(1, Poly::constant(pres.nvars(), c.clone()));
        Ok(z)
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    fn add_term(&mut self, e: i32, p: Poly) {
        if p.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &p,
            None => p,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn coeff(&self, e: i32) -> RingElement {
        match self.terms.get(&e) {
            Some(p) => normal_form(p, &self.pres).expect("coefficients share the ring's arity"),
            None => RingElement::zero(&self.pres),
        }
    }

    /// `(exponent, ring coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Poly)> {
        self.terms.iter().map(|(e, p)| (*e, p))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &ZetaElement) -> ZetaElement {
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(*e, p.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ZetaElement) -> ZetaElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ZetaElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ZetaElement {
        let mut out = Self::zero(&self.pres);
        for (e, p) in &self.terms {
            out.add_term(*e, p.scale(c));
        }
        out
    }

    pub fn mul(&self, rhs: &ZetaElement) -> ZetaElement {
        let mut out = Self::zero(&self.pres);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, self.pres.reduce_poly(&(x * y)));
            }
        }
        out
    }

    /// `zeta -> -zeta`.
    pub fn reflect(&self) -> ZetaElement {
        let mut out = Self::zero(&self.pres);
        for (e, p) in &self.terms {
            let p = if e % 2 == 0 { p.clone() } else { -p };
            out.add_term(*e, p);
        }
        out
    }

    /// Every coefficient is already reduced.
    pub fn is_normalized(&self) -> bool {
        self.terms.values().all(|p| &self.pres.reduce_poly(p) == p)
    }
}

impl PartialEq for ZetaElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
            && self.terms == other.terms
    }
}

impl fmt::Debug for ZetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ZetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.pres.variable_names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, p)| {
                let c = p.display_with(&names);
                if *e == 0 {
                    format!("({c})")
                } else {
                    format!("({c})*z^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Coefficient for ZetaElement {
    fn is_zero(&self) -> bool {
        ZetaElement::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

/// Smallest `n` with `D_j^n = 0`.
fn nilpotency_index(pres: &Arc<RingPresentation>, j: usize) -> Result<u32> {
    let cap = pres.dimension().ok_or(Error::NotNilpotent(j))? as u32 + 1;
    let d = RingElement::divisor(pres, j)?;
    let mut p = RingElement::one(pres);
    for n in 0..=cap {
        if p.is_zero() {
            return Ok(n);
        }
        p = &p * &d;
    }
    Err(Error::NotNilpotent(j))
}

/// `(D_j + m zeta)^{-1} = sum_i (-1)^i D_j^i m^{-(i+1)} zeta^{-(i+1)}`, `m != 0`.
fn inverse_linear(pres: &Arc<RingPresentation>, j: usize, m: i64, nil: u32) -> Result<ZetaElement> {
    debug_assert!(m != 0);
    let d = RingElement::divisor(pres, j)?;
    let minv = rat(m).recip();
    let mut out = ZetaElement::zero(pres);
    let mut power = RingElement::one(pres);
    let mut c = minv.clone();
    for i in 0..nil {
        let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(-(i as i32) - 1, power.scale(&sign).value().clone());
        power = &power * &d;
        c *= &minv;
    }
    Ok(out)
}

/// `mu_j(d)` for every `j`, or an error naming the first non-integral one.
pub fn integral_pairings(pres: &RingPresentation, d: &NovikovDegree) -> Result<Vec<i64>> {
    let git = pres.git();
    git.check_degree(d.vector())?;
    (0..git.k())
        .map(|j| {
            let p = git.pairing(j, d.vector());
            if !p.is_integer() {
                return Err(Error::NonIntegralDegree {
                    degree: d.to_string(),
                    index: j,
                });
            }
            Ok(p.to_integer().to_i64().expect("pairing fits in i64"))
        })
        .collect()
}

/// The degree-`d` coefficient of the I-function.
pub fn degree_factor(pres: &Arc<RingPresentation>, d: &NovikovDegree) -> Result<ZetaElement> {
    let pairings = integral_pairings(pres, d)?;
    let mut out = ZetaElement::one(pres);
    for (j, &n) in pairings.iter().enumerate() {
        if n > 0 {
            let nil = nilpotency_index(pres, j)?;
            for m in 1..=n {
                out = out.mul(&inverse_linear(pres, j, m, nil)?);
            }
        } else {
            for m in (n + 1)..=0 {
                out = out.mul(&ZetaElement::divisor_plus(pres, j, &rat(m))?);
            }
        }
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// The I-function truncated to a degree box and energy cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct ISeries {
    pub series: NovikovSeries<ZetaElement>,
    pub presentation: Arc<RingPresentation>,
    /// Closed per-coordinate bounds of the degree domain.
    pub bounds: Vec<(i64, i64)>,
}

impl ISeries {
    pub fn new(pres: &Arc<RingPresentation>, cutoff: Rational, bounds: Vec<(i64, i64)>) -> Self {
        ISeries {
            series: NovikovSeries::new(pres.nvars(), cutoff),
            presentation: pres.clone(),
            bounds,
        }
    }

    pub fn cutoff(&self) -> &Rational {
        self.series.cutoff()
    }

    pub fn in_domain(&self, d: &NovikovDegree) -> bool {
        d.vector().iter().zip(&self.bounds).all(|(x, &(lo, hi))| {
            x >= &Rational::from_integer(lo.into()) && x <= &Rational::from_integer(hi.into())
        })
    }

    pub fn coeff(&self, d: &NovikovDegree) -> Option<&ZetaElement> {
        self.series.coeff(d)
    }

    pub fn with_series(&self, series: NovikovSeries<ZetaElement>) -> ISeries {
        ISeries {
            series,
            presentation: self.presentation.clone(),
            bounds: self.bounds.clone(),
        }
    }

    /// The `zeta -> -zeta` image, term by term.
    pub fn dual(&self) -> ISeries {
        self.with_series(self.series.map_coefficients(ZetaElement::reflect))
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }
}

/// Sums `q^d * degree_factor(d)` over the enumerated degrees with integral
/// pairings; vanishing coefficients are dropped.
pub fn i_series(
    pres: &Arc<RingPresentation>,
    e_max: &Rational,
    bounds: &[(i64, i64)],
    denominator: u32,
) -> Result<ISeries> {
    let git = pres.git();
    let mut out = ISeries::new(pres, e_max.clone(), bounds.to_vec());
    for d in enumerate_degrees(git, e_max, bounds, denominator)? {
        let integral = (0..git.k()).all(|j| git.pairing(j, d.vector()).is_integer());
        if !integral {
            continue;
        }
        let c = degree_factor(pres, &d)?;
        out.series.insert(d, c)?;
    }
    Ok(out)
}

/// `-sum_j max(mu_j(d), 0)`: the highest `zeta` power of a nonvanishing
/// degree factor, i.e. its leading order as `zeta -> infinity`.
pub fn expected_leading_power(pres: &RingPresentation, d: &NovikovDegree) -> i64 {
    let git = pres.git();
    -(0..git.k())
        .map(|j| {
            let p = git.pairing(j, d.vector());
            if p.is_positive() {
                p.to_integer().to_i64().unwrap()
            } else {
                0
            }
        })
        .sum::<i64>()
}

//! The cohomology ring `H(X//G; Q) = Sym(g^v) / I_SR`, presented in the `r`
//! coordinates of the Lie algebra. The divisor class `D_j` is the linear form
//! `mu_j`; the Stanley–Reisner generators are the products of `D_j` over the
//! unstable primitive sets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::git::GitData;
use crate::groebner::{groebner_basis, reduce};
use crate::linalg::Rational;
use crate::poly::{default_names, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    git: GitData,
    sr_generators: Vec<Poly>,
    groebner_basis: Vec<Poly>,
}

impl RingPresentation {
    /// Presentation of the untwisted cohomology of the quotient.
    pub fn build(git: &GitData) -> Arc<RingPresentation> {
        let sr_generators = git
            .unstable_primitive_sets()
            .iter()
            .map(|s| {
                s.iter()
                    .fold(Poly::one(git.r()), |acc, &j| &acc * &divisor_form(git, j))
            })
            .collect();
        Self::from_generators(git.clone(), sr_generators)
    }

    /// Presentation by an arbitrary list of relations in `Sym(g^v)`.
    pub fn from_generators(git: GitData, generators: Vec<Poly>) -> Arc<RingPresentation> {
        let groebner_basis = groebner_basis(&generators);
        Arc::new(RingPresentation {
            git,
            sr_generators: generators,
            groebner_basis,
        })
    }

    pub fn git(&self) -> &GitData {
        &self.git
    }

    pub fn nvars(&self) -> usize {
        self.git.r()
    }

    pub fn sr_generators(&self) -> &[Poly] {
        &self.sr_generators
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.groebner_basis
    }

    pub fn variable_names(&self) -> Vec<String> {
        default_names("u", self.nvars())
    }

    pub fn is_trivial(&self) -> bool {
        self.groebner_basis
            .iter()
            .any(|g| g.leading().is_some_and(|(m, _)| m.is_one()))
    }

    fn check_vars(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        Ok(())
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        reduce(p, &self.groebner_basis)
    }

    /// Monomials not divisible by any leading monomial of the basis, or
    /// `None` when the quotient is infinite dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.nvars();
        let leads: Vec<&Monomial> = self
            .groebner_basis
            .iter()
            .filter_map(|g| g.leading().map(|(m, _)| m))
            .collect();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = leads
                .iter()
                .filter(|m| {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .all(|(v, &e)| v == i || e == 0)
                })
                .map(|m| m.exponents()[i])
                .min()?;
            bounds.push(pure);
        }
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::new(e.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    /// Vector-space dimension of the presented ring, when finite.
    pub fn dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|s| s.len())
    }
}

/// The linear form `mu_j` in `Sym(g^v)`.
pub fn divisor_form(git: &GitData, j: usize) -> Poly {
    Poly::linear_form(&git.weight(j))
}

/// A class in the presented ring, always stored in normal form.
#[derive(Clone)]
pub struct RingElement {
    pres: Arc<RingPresentation>,
    value: Poly,
}

impl RingElement {
    pub fn zero(pres: &Arc<RingPresentation>) -> Self {
        RingElement {
            pres: pres.clone(),
            value: Poly::zero(pres.nvars()),
        }
    }

    pub fn one(pres: &Arc<RingPresentation>) -> Self {
        normal_form(&Poly::one(pres.nvars()), pres).expect("unit has the right arity")
    }

    pub fn constant(pres: &Arc<RingPresentation>, c: Rational) -> Self {
        Self::one(pres).scale(&c)
    }

    /// The divisor class `D_j`.
    pub fn divisor(pres: &Arc<RingPresentation>, j: usize) -> Result<Self> {
        let k = pres.git().k();
        if j >= k {
            return Err(Error::IndexOutOfRange { index: j, k });
        }
        normal_form(&divisor_form(pres.git(), j), pres)
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RingElement {
            pres: self.pres.clone(),
            value: self.value.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.pres);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn wrap(&self, p: Poly) -> Self {
        RingElement {
            pres: self.pres.clone(),
            value: self.pres.reduce_poly(&p),
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
            && self.value == other.value
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.display_with(&self.pres.variable_names()))
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        // sum of normal forms is a normal form
        RingElement {
            pres: self.pres.clone(),
            value: &self.value + &rhs.value,
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        RingElement {
            pres: self.pres.clone(),
            value: &self.value - &rhs.value,
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.wrap(&self.value * &rhs.value)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-Rational::one())
    }
}

pub fn build_presentation(git: &GitData) -> Arc<RingPresentation> {
    RingPresentation::build(git)
}

pub fn normal_form(p: &Poly, pres: &Arc<RingPresentation>) -> Result<RingElement> {
    pres.check_vars(p)?;
    Ok(RingElement {
        pres: pres.clone(),
        value: pres.reduce_poly(p),
    })
}

/// The classical Kirwan map `Sym(g^v) -> H(X//G)`: reduction modulo the
/// Stanley–Reisner ideal.
pub fn kirwan_classical(p: &Poly, pres: &Arc<RingPresentation>) -> Result<RingElement> {
    normal_form(p, pres)
}

/// Translation `u -> u + zeta*phi` (one extra trailing variable `zeta`) or
/// `u -> u + phi`.
pub fn translate(p: &Poly, phi: &[Rational], zeta_weighted: bool) -> Result<Poly> {
    let n = p.nvars();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.len(),
        });
    }
    let target = if zeta_weighted { n + 1 } else { n };
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let shift = if zeta_weighted {
                Poly::var(target, n).scale(&phi[i])
            } else {
                Poly::constant(target, phi[i].clone())
            };
            &Poly::var(target, i) + &shift
        })
        .collect();
    if n == 0 {
        return Ok(p.extend_vars(target - n));
    }
    Ok(p.substitute(&images))
}

//! Quantum differential operators `Box_d` acting on the I-function.
//!
//! Through the divisor equation, `zeta * d/dt_j` acts on the degree-`d'`
//! term of the I-function as multiplication by `D_j + mu_j(d') zeta`; this is
//! the operator `M_j`. `Box_d` is realized as
//!
//! ```text
//! prod_j prod_{i < a_j} (M_j - i zeta)  -  q^d prod_j prod_{i < b_j} (M_j - i zeta)
//! ```
//!
//! with `a_j = max(mu_j(d), 0)` and `b_j = max(-mu_j(d), 0)`. When every
//! exponent is at most one the shifts vanish and this is the plain product
//! of `M_j`'s; the shifted factors are what make the operator annihilate
//! the I-function when some `|mu_j(d)| > 1` (weighted projective spaces).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::git::GitData;
use crate::ifunction::{ISeries, ZetaElement};
use crate::linalg::{rat, Rational};
use crate::novikov::{NovikovDegree, NovikovSeries};
use crate::poly::Poly;
use crate::qkirwan::QsrGenerator;
use crate::ring::divisor_form;

#[derive(Clone, Debug, PartialEq)]
pub struct BoxOperator {
    pub degree: NovikovDegree,
    pub up_exponents: Vec<u32>,
    pub down_exponents: Vec<u32>,
    /// Coefficient of the `q^d` summand; 1 for the genuine operator.
    pub q_coefficient: Rational,
}

impl BoxOperator {
    pub fn new(git: &GitData, degree: NovikovDegree) -> Result<Self> {
        git.check_degree(degree.vector())?;
        if !degree.is_integral() {
            return Err(Error::NonIntegralDegree {
                degree: degree.to_string(),
                index: 0,
            });
        }
        if degree.energy().is_negative() {
            return Err(Error::NegativeEnergy(degree.to_string()));
        }
        if degree.energy().is_zero() && !degree.is_zero() {
            return Err(Error::ZeroEnergyDegree(degree.to_string()));
        }
        let mut up = Vec::with_capacity(git.k());
        let mut down = Vec::with_capacity(git.k());
        for j in 0..git.k() {
            let p = git.pairing(j, degree.vector());
            let n: i64 = p
                .to_integer()
                .try_into()
                .expect("pairing of an integral degree fits in i64");
            up.push(n.max(0) as u32);
            down.push((-n).max(0) as u32);
        }
        Ok(BoxOperator {
            degree,
            up_exponents: up,
            down_exponents: down,
            q_coefficient: Rational::one(),
        })
    }

    pub fn from_ints(git: &GitData, d: &[i64]) -> Result<Self> {
        Self::new(git, NovikovDegree::from_ints(git, d)?)
    }

    /// The same operator with `q^d` replaced by `c * q^d`.
    pub fn with_q_coefficient(mut self, c: Rational) -> Self {
        self.q_coefficient = c;
        self
    }
}

/// Multiplies each degree-`d'` coefficient by `D_j + (mu_j(d') - shift) zeta`.
pub fn apply_m_shifted(j: usize, shift: u32, s: &ISeries) -> Result<ISeries> {
    let pres = &s.presentation;
    let git = pres.git();
    if j >= git.k() {
        return Err(Error::IndexOutOfRange {
            index: j,
            k: git.k(),
        });
    }
    let mut err = None;
    let series = s.series.map_terms(|d, c| {
        let weight = git.pairing(j, d.vector()) - rat(i64::from(shift));
        match ZetaElement::divisor_plus(pres, j, &weight) {
            Ok(f) => c.mul(&f),
            Err(e) => {
                err = Some(e);
                c.clone()
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(s.with_series(series)),
    }
}

/// The operator `M_j`.
pub fn apply_m(j: usize, s: &ISeries) -> Result<ISeries> {
    apply_m_shifted(j, 0, s)
}

fn apply_product(exponents: &[u32], s: &ISeries) -> Result<ISeries> {
    let mut out = s.clone();
    for (j, &a) in exponents.iter().enumerate() {
        for i in 0..a {
            out = apply_m_shifted(j, i, &out)?;
        }
    }
    Ok(out)
}

/// Multiplication by `q^d`, truncated to the series' cutoff and degree box.
fn shift_in_domain(s: &ISeries, d: &NovikovDegree) -> Result<NovikovSeries<ZetaElement>> {
    let shifted = s.series.shift(d)?;
    let mut out = NovikovSeries::new(shifted.rank(), shifted.cutoff().clone());
    for (deg, c) in shifted.terms() {
        if s.in_domain(deg) {
            out.insert(deg.clone(), c.clone())?;
        }
    }
    Ok(out)
}

pub fn apply_box(op: &BoxOperator, s: &ISeries) -> Result<ISeries> {
    let git = s.presentation.git();
    if op.degree.rank() != git.r() {
        return Err(Error::DimensionMismatch {
            expected: git.r(),
            found: op.degree.rank(),
        });
    }
    if op.up_exponents.len() != git.k() {
        return Err(Error::DimensionMismatch {
            expected: git.k(),
            found: op.up_exponents.len(),
        });
    }
    let left = apply_product(&op.up_exponents, s)?;
    let right = apply_product(&op.down_exponents, s)?;
    let right = shift_in_domain(&right, &op.degree)?;
    let right = right.scale(&ZetaElement::one(&s.presentation).scale(&op.q_coefficient));
    Ok(s.with_series(left.series.sub(&right)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub residual: ISeries,
    pub verified_energy: Rational,
    pub ok: bool,
}

pub fn check_annihilation(op: &BoxOperator, s: &ISeries) -> Result<AnnihilationReport> {
    let residual = apply_box(op, s)?;
    Ok(AnnihilationReport {
        ok: residual.is_zero(),
        verified_energy: s.cutoff().clone(),
        residual,
    })
}

/// Classical symbol: `d/dt_j -> D_j = mu_j`.
pub fn symbol(git: &GitData, op: &BoxOperator) -> QsrGenerator {
    let product = |exps: &[u32]| {
        exps.iter()
            .enumerate()
            .fold(Poly::one(git.r()), |acc, (j, &e)| {
                &acc * &divisor_form(git, j).pow(e)
            })
    };
    QsrGenerator {
        degree: op.degree.clone(),
        classical_part: product(&op.up_exponents),
        quantum_part: product(&op.down_exponents),
    }
}

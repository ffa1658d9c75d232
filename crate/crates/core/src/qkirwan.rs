//! Quantum Stanley–Reisner generators and leading-order quantum Kirwan
//! images for a torus acting on a vector space.

use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::git::GitData;
use crate::linalg::{cone_contains, linear_span_contains, Rational};
use crate::novikov::NovikovDegree;
use crate::poly::Poly;
use crate::ring::{divisor_form, normal_form, RingElement, RingPresentation};

/// `classical_part - q^degree * quantum_part`.
#[derive(Clone, Debug, PartialEq)]
pub struct QsrGenerator {
    pub degree: NovikovDegree,
    pub classical_part: Poly,
    pub quantum_part: Poly,
}

impl QsrGenerator {
    /// The `d = 0` generator `1 - q^0 * 1` is zero.
    pub fn is_zero(&self) -> bool {
        self.degree.is_zero() && self.classical_part == self.quantum_part
    }

    /// Both parts divided by the leading coefficient of the classical part.
    pub fn monic(&self) -> QsrGenerator {
        let lc = self
            .classical_part
            .leading()
            .map_or_else(Rational::one, |(_, c)| c.clone());
        let inv = lc.recip();
        QsrGenerator {
            degree: self.degree.clone(),
            classical_part: self.classical_part.scale(&inv),
            quantum_part: self.quantum_part.scale(&inv),
        }
    }
}

/// Generator in the `k` equivariant variables `v_1..v_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantQsrGenerator {
    pub degree: NovikovDegree,
    pub classical_part: Poly,
    pub quantum_part: Poly,
}

impl EquivariantQsrGenerator {
    pub fn is_zero(&self) -> bool {
        self.degree.is_zero() && self.classical_part == self.quantum_part
    }

    /// Restriction `v_j -> mu_j` to `Sym(g^v)`.
    pub fn restrict(&self, git: &GitData) -> QsrGenerator {
        let images: Vec<Poly> = (0..git.k()).map(|j| divisor_form(git, j)).collect();
        QsrGenerator {
            degree: self.degree.clone(),
            classical_part: self.classical_part.substitute(&images),
            quantum_part: self.quantum_part.substitute(&images),
        }
    }
}

fn pairings(git: &GitData, d: &NovikovDegree) -> Result<Vec<i64>> {
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

pub fn qsr_generator(git: &GitData, d: &NovikovDegree) -> Result<QsrGenerator> {
    let mu = pairings(git, d)?;
    let mut classical = Poly::one(git.r());
    let mut quantum = Poly::one(git.r());
    for (j, &n) in mu.iter().enumerate() {
        let form = divisor_form(git, j);
        if n > 0 {
            classical = &classical * &form.pow(n as u32);
        } else if n < 0 {
            quantum = &quantum * &form.pow((-n) as u32);
        }
    }
    Ok(QsrGenerator {
        degree: d.clone(),
        classical_part: classical,
        quantum_part: quantum,
    })
}

pub fn qsr_generators(git: &GitData, degrees: &[NovikovDegree]) -> Result<Vec<QsrGenerator>> {
    degrees.iter().map(|d| qsr_generator(git, d)).collect()
}

pub fn equivariant_qsr_generator(
    git: &GitData,
    d: &NovikovDegree,
) -> Result<EquivariantQsrGenerator> {
    let mu = pairings(git, d)?;
    let k = git.k();
    let mut up = vec![0u32; k];
    let mut down = vec![0u32; k];
    for (j, &n) in mu.iter().enumerate() {
        if n > 0 {
            up[j] = n as u32;
        } else {
            down[j] = (-n) as u32;
        }
    }
    Ok(EquivariantQsrGenerator {
        degree: d.clone(),
        classical_part: Poly::from_terms(k, [(up, Rational::one())]),
        quantum_part: Poly::from_terms(k, [(down, Rational::one())]),
    })
}

/// The `q -> 0` limit of the quantum Stanley–Reisner relations at the
/// listed positive-energy degrees: the ideal of their classical parts.
pub fn quantum_sr_limit(git: &GitData, degrees: &[NovikovDegree]) -> Result<Arc<RingPresentation>> {
    let mut gens = Vec::new();
    for d in degrees {
        if !d.energy().is_positive() {
            continue;
        }
        gens.push(qsr_generator(git, d)?.classical_part);
    }
    Ok(RingPresentation::from_generators(git.clone(), gens))
}

pub const MODULO_NOTE: &str = "modulo higher order: terms q^d' with energy(d') > energy(d)";

pub const LEADING_INTERPRETATION: &str =
    "l(v_j) realized as the divisor class D_j of the untwisted sector";

/// `kappa(prod_{mu_j(d) >= 0} mu_j^{mu_j(d)}) = q^d prod_{mu_j(d) <= 0} D_j^{-mu_j(d)} + ...`
#[derive(Clone, Debug, PartialEq)]
pub struct KirwanLeadingTerm {
    pub degree: NovikovDegree,
    pub input_monomial: Poly,
    pub output: RingElement,
    pub modulo_note: &'static str,
    pub interpretation: &'static str,
    /// `nu` in the cone of `{mu_j : mu_j(d) >= 0}`; differs from the span
    /// hypothesis only in degenerate cases, reported as a warning.
    pub cone_hypothesis: bool,
}

impl KirwanLeadingTerm {
    pub fn hypotheses_disagree(&self) -> bool {
        !self.cone_hypothesis
    }
}

pub fn kirwan_leading(
    git: &GitData,
    pres: &Arc<RingPresentation>,
    d: &NovikovDegree,
) -> Result<KirwanLeadingTerm> {
    let mu = pairings(git, d)?;
    let nonneg: Vec<usize> = (0..git.k()).filter(|&j| mu[j] >= 0).collect();
    let neg_gens: Vec<Vec<Rational>> = nonneg
        .iter()
        .map(|&j| git.weight_rational(j).iter().map(|x| -x).collect())
        .collect();
    if !linear_span_contains(&neg_gens, git.polarization())? {
        return Err(Error::HypothesisViolated(d.to_string()));
    }
    let gens: Vec<Vec<Rational>> = nonneg.iter().map(|&j| git.weight_rational(j)).collect();
    let cone_hypothesis = cone_contains(&gens, git.polarization())?;

    let mut input = Poly::one(git.r());
    let mut output = Poly::one(git.r());
    for (j, &n) in mu.iter().enumerate() {
        let form = divisor_form(git, j);
        if n > 0 {
            input = &input * &form.pow(n as u32);
        } else if n < 0 {
            output = &output * &form.pow((-n) as u32);
        }
    }
    Ok(KirwanLeadingTerm {
        degree: d.clone(),
        input_monomial: input,
        output: normal_form(&output, pres)?,
        modulo_note: MODULO_NOTE,
        interpretation: LEADING_INTERPRETATION,
        cone_hypothesis,
    })
}

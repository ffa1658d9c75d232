//! JSON interchange documents. Rationals are strings `"p/q"` (or `"n"`),
//! coordinate indices are 1-based, polynomials list terms in descending
//! degrevlex order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::git::GitData;
use crate::ifunction::{ISeries, ZetaElement};
use crate::inertia::{age, Sector};
use crate::linalg::{format_rational, lcm_of_denominators, parse_rational, IntMatrix, Rational};
use crate::novikov::{NovikovDegree, NovikovSeries};
use crate::poly::{Monomial, Poly};
use crate::qde::AnnihilationReport;
use crate::qkirwan::{EquivariantQsrGenerator, KirwanLeadingTerm, QsrGenerator};
use crate::ring::{normal_form, RingElement, RingPresentation};

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub weights: Vec<Vec<i64>>,
    pub polarization: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl InputDoc {
    pub fn from_git(git: &GitData) -> Self {
        InputDoc {
            weights: git.weights().to_rows(),
            polarization: rationals(git.polarization()),
            labels: git.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_git(&self) -> Result<GitData> {
        if self.weights.is_empty() {
            return Err(Error::Schema("weights must have at least one row".into()));
        }
        let weights = IntMatrix::from_rows(&self.weights)?;
        GitData::new(
            weights,
            parse_rationals(&self.polarization)?,
            self.labels.clone(),
        )
    }
}

pub fn parse_input(json: &str) -> Result<GitData> {
    let doc: InputDoc = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    doc.to_git()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub type PolyDoc = Vec<TermDoc>;

pub fn poly_doc(p: &Poly) -> PolyDoc {
    p.terms()
        .rev()
        .map(|(m, c)| TermDoc {
            exponents: m.exponents().to_vec(),
            coeff: format_rational(c),
        })
        .collect()
}

pub fn poly_from_doc(doc: &[TermDoc], nvars: usize) -> Result<Poly> {
    let mut p = Poly::zero(nvars);
    for t in doc {
        if t.exponents.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: t.exponents.len(),
            });
        }
        p.add_term(
            Monomial::new(t.exponents.clone()),
            parse_rational(&t.coeff)?,
        );
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDoc {
    pub degree: Vec<String>,
    pub energy: String,
}

impl DegreeDoc {
    pub fn new(d: &NovikovDegree) -> Self {
        DegreeDoc {
            degree: rationals(d.vector()),
            energy: format_rational(d.energy()),
        }
    }

    pub fn to_degree(&self, git: &GitData) -> Result<NovikovDegree> {
        let d = NovikovDegree::new(git, parse_rationals(&self.degree)?)?;
        if format_rational(d.energy()) != self.energy {
            return Err(Error::Schema(format!(
                "energy {} does not match degree {}",
                self.energy, d
            )));
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTermDoc<C> {
    pub degree: Vec<String>,
    pub energy: String,
    pub coeff: C,
}

pub fn series_doc<C, D>(s: &NovikovSeries<C>, f: impl Fn(&C) -> D) -> Vec<SeriesTermDoc<D>>
where
    C: crate::novikov::Coefficient,
{
    s.terms()
        .map(|(d, c)| SeriesTermDoc {
            degree: rationals(d.vector()),
            energy: format_rational(d.energy()),
            coeff: f(c),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaTermDoc {
    pub zeta_exp: i32,
    pub value: PolyDoc,
}

pub fn zeta_doc(z: &ZetaElement) -> Vec<ZetaTermDoc> {
    z.terms()
        .map(|(e, p)| ZetaTermDoc {
            zeta_exp: e,
            value: poly_doc(p),
        })
        .collect()
}

pub fn zeta_from_doc(doc: &[ZetaTermDoc], pres: &Arc<RingPresentation>) -> Result<ZetaElement> {
    let mut z = ZetaElement::zero(pres);
    for t in doc {
        let c = normal_form(&poly_from_doc(&t.value, pres.nvars())?, pres)?;
        z = z.add(&ZetaElement::from_ring(&c, t.zeta_exp));
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ISeriesDoc {
    pub cutoff: String,
    pub bounds: Vec<(i64, i64)>,
    pub terms: Vec<SeriesTermDoc<Vec<ZetaTermDoc>>>,
}

impl ISeriesDoc {
    pub fn new(s: &ISeries) -> Self {
        ISeriesDoc {
            cutoff: format_rational(s.cutoff()),
            bounds: s.bounds.clone(),
            terms: series_doc(&s.series, zeta_doc),
        }
    }

    pub fn to_series(&self, pres: &Arc<RingPresentation>) -> Result<ISeries> {
        let git = pres.git();
        let mut s = ISeries::new(pres, parse_rational(&self.cutoff)?, self.bounds.clone());
        for t in &self.terms {
            let d = DegreeDoc {
                degree: t.degree.clone(),
                energy: t.energy.clone(),
            }
            .to_degree(git)?;
            s.series.insert(d, zeta_from_doc(&t.coeff, pres)?)?;
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorDoc {
    pub xi: Vec<String>,
    pub order: u64,
    pub age: String,
    pub fixed_support: Vec<usize>,
}

impl SectorDoc {
    pub fn new(s: &Sector) -> Self {
        SectorDoc {
            xi: rationals(&s.xi),
            order: s.order,
            age: format_rational(&s.age),
            fixed_support: s.fixed_support.indices.iter().map(|j| j + 1).collect(),
        }
    }

    pub fn to_sector(&self, git: &GitData) -> Result<Sector> {
        let xi = parse_rationals(&self.xi)?;
        let mut indices = Vec::with_capacity(self.fixed_support.len());
        for &j in &self.fixed_support {
            if j == 0 || j > git.k() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    k: git.k(),
                });
            }
            indices.push(j - 1);
        }
        let sector = Sector {
            age: parse_rational(&self.age)?,
            order: self.order,
            fixed_support: git.support(indices),
            xi,
        };
        if age(git, &sector.xi)? != sector.age
            || lcm_of_denominators(&sector.xi) != sector.order.into()
        {
            return Err(Error::Schema("sector fields are inconsistent".into()));
        }
        Ok(sector)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub variables: Vec<String>,
    pub sr_generators: Vec<PolyDoc>,
    pub groebner_basis: Vec<PolyDoc>,
    /// Absent when the quotient ring is infinite dimensional.
    pub dimension: Option<usize>,
    pub standard_monomials: Option<Vec<Vec<u32>>>,
}

impl PresentationDoc {
    pub fn new(pres: &RingPresentation) -> Self {
        let standard = pres.standard_monomials();
        PresentationDoc {
            variables: pres.variable_names(),
            sr_generators: pres.sr_generators().iter().map(poly_doc).collect(),
            groebner_basis: pres.groebner_basis().iter().map(poly_doc).collect(),
            dimension: standard.as_ref().map(Vec::len),
            standard_monomials: standard
                .map(|ms| ms.iter().map(|m| m.exponents().to_vec()).collect()),
        }
    }

    pub fn to_presentation(&self, git: &GitData) -> Result<Arc<RingPresentation>> {
        let gens = self
            .sr_generators
            .iter()
            .map(|p| poly_from_doc(p, git.r()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPresentation::from_generators(git.clone(), gens))
    }
}

/// `classical_part - q^degree * quantum_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QsrDoc {
    pub degree: Vec<String>,
    pub energy: String,
    pub variables: Vec<String>,
    pub classical_part: PolyDoc,
    pub quantum_part: PolyDoc,
}

impl QsrDoc {
    pub fn new(g: &QsrGenerator, variables: Vec<String>) -> Self {
        QsrDoc {
            degree: rationals(g.degree.vector()),
            energy: format_rational(g.degree.energy()),
            variables,
            classical_part: poly_doc(&g.classical_part),
            quantum_part: poly_doc(&g.quantum_part),
        }
    }

    pub fn from_equivariant(g: &EquivariantQsrGenerator, variables: Vec<String>) -> Self {
        QsrDoc {
            degree: rationals(g.degree.vector()),
            energy: format_rational(g.degree.energy()),
            variables,
            classical_part: poly_doc(&g.classical_part),
            quantum_part: poly_doc(&g.quantum_part),
        }
    }

    pub fn to_generator(&self, git: &GitData) -> Result<QsrGenerator> {
        let degree = DegreeDoc {
            degree: self.degree.clone(),
            energy: self.energy.clone(),
        }
        .to_degree(git)?;
        Ok(QsrGenerator {
            degree,
            classical_part: poly_from_doc(&self.classical_part, git.r())?,
            quantum_part: poly_from_doc(&self.quantum_part, git.r())?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirwanDoc {
    pub degree: Vec<String>,
    pub energy: String,
    pub variables: Vec<String>,
    pub input_monomial: PolyDoc,
    /// Ring part of `q^degree * output`.
    pub output: PolyDoc,
    pub modulo_note: String,
    pub interpretation: String,
    pub cone_hypothesis: bool,
}

impl KirwanDoc {
    pub fn new(t: &KirwanLeadingTerm, variables: Vec<String>) -> Self {
        KirwanDoc {
            degree: rationals(t.degree.vector()),
            energy: format_rational(t.degree.energy()),
            variables,
            input_monomial: poly_doc(&t.input_monomial),
            output: poly_doc(t.output.value()),
            modulo_note: t.modulo_note.to_string(),
            interpretation: t.interpretation.to_string(),
            cone_hypothesis: t.cone_hypothesis,
        }
    }

    /// Degree, input monomial and reduced output.
    pub fn to_parts(
        &self,
        pres: &Arc<RingPresentation>,
    ) -> Result<(NovikovDegree, Poly, RingElement)> {
        let git = pres.git();
        let degree = DegreeDoc {
            degree: self.degree.clone(),
            energy: self.energy.clone(),
        }
        .to_degree(git)?;
        let input = poly_from_doc(&self.input_monomial, git.r())?;
        let output = normal_form(&poly_from_doc(&self.output, git.r())?, pres)?;
        Ok((degree, input, output))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnihilationDoc {
    pub degree: Vec<String>,
    pub ok: bool,
    pub verified_energy: String,
    pub residual: ISeriesDoc,
}

impl AnnihilationDoc {
    pub fn new(d: &NovikovDegree, rep: &AnnihilationReport) -> Self {
        AnnihilationDoc {
            degree: rationals(d.vector()),
            ok: rep.ok,
            verified_energy: format_rational(&rep.verified_energy),
            residual: ISeriesDoc::new(&rep.residual),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub code: String,
    pub message: String,
}

impl ErrorDoc {
    pub fn new(e: &Error) -> Self {
        ErrorDoc {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

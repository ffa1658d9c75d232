use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Schema(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("polarization must be nonzero")]
    ZeroPolarization,

    #[error("weight of coordinate {0} is zero")]
    ZeroWeight(usize),

    #[error("empty semistable locus: polarization is not in the cone of the weights")]
    EmptySemistableLocus,

    #[error(
        "not Deligne-Mumford: a minimal semistable support has weight rank {rank} < {expected}"
    )]
    NotDeligneMumford { rank: usize, expected: usize },

    #[error("degree {degree} has non-integral pairing with weight {index}")]
    NonIntegralDegree { degree: String, index: usize },

    #[error("degree {0} has negative energy")]
    NegativeEnergy(String),

    #[error("degree {0} is nonzero but has zero energy")]
    ZeroEnergyDegree(String),

    #[error("energy cutoffs differ: {0} vs {1}")]
    CutoffMismatch(String, String),

    #[error("coordinate index {index} out of range (k = {k})")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("divisor class D_{0} is not nilpotent in the presented ring")]
    NotNilpotent(usize),

    #[error("integer overflow: result does not fit in 64 bits")]
    Overflow,

    #[error(
        "hypothesis violated: polarization is not in span{{-mu_j : mu_j(d) >= 0}} for d = {0}"
    )]
    HypothesisViolated(String),
}

impl Error {
    /// Mathematical precondition failures, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotDeligneMumford { .. }
                | Error::NonIntegralDegree { .. }
                | Error::NegativeEnergy(_)
                | Error::ZeroEnergyDegree(_)
                | Error::NotNilpotent(_)
                | Error::HypothesisViolated(_)
        )
    }

    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Schema(_) => "schema",
            Error::InvalidRational(_) => "invalid_rational",
            Error::ZeroPolarization => "zero_polarization",
            Error::ZeroWeight(_) => "zero_weight",
            Error::EmptySemistableLocus => "empty_semistable_locus",
            Error::NotDeligneMumford { .. } => "not_deligne_mumford",
            Error::NonIntegralDegree { .. } => "non_integral_degree",
            Error::NegativeEnergy(_) => "negative_energy",
            Error::ZeroEnergyDegree(_) => "zero_energy_degree",
            Error::CutoffMismatch(..) => "cutoff_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotNilpotent(_) => "not_nilpotent",
            Error::Overflow => "overflow",
            Error::HypothesisViolated(_) => "hypothesis_violated",
        }
    }
}

use std::fmt;

use thiserror::Error;

/// Broad category of a failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A parameter or input string was malformed or out of range.
    BadInput,
    /// A root finder, fixed-point solver or inversion failed.
    Numerical,
    /// Random graph or replicate generation failed.
    Generation,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    #[error("degree distribution has zero mean")]
    ZeroMean,

    #[error("target mean {target} is unreachable; achievable range is ({min}, {max})")]
    TargetMeanUnreachable { target: f64, min: f64, max: f64 },

    #[error("degree sum {0} is odd")]
    OddDegreeSum(u64),

    #[error("no simple graph after {attempts} attempts (degree sequence may not admit one, or loops/multi-edges are too frequent)")]
    SimpleGraphNotFound { attempts: usize },

    #[error("every vertex is vaccinated; there is no unvaccinated initial case")]
    AllVaccinated,

    #[error("fixed-point iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("reproduction number is not monotone in the {parameter} parameter near {at}")]
    NotMonotone { parameter: &'static str, at: f64 },

    #[error("{strategy} cannot reach criticality: R = {r_at_limit} > 1 at the parameter limit {limit}")]
    CriticalityOutOfRange {
        strategy: &'static str,
        limit: f64,
        r_at_limit: f64,
    },

    #[error("coverage {target} is not achievable by {strategy}; maximum is {max}")]
    CoverageUnreachable {
        strategy: &'static str,
        target: f64,
        max: f64,
    },

    #[error("no strategies")]
    NoStrategies,

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. }
            | Error::InvalidDistribution(_)
            | Error::ZeroMean
            | Error::TargetMeanUnreachable { .. }
            | Error::Parse { .. }
            | Error::NoStrategies
            | Error::Io(_)
            | Error::Csv(_) => ErrorKind::BadInput,
            Error::NonConvergence { .. }
            | Error::NotMonotone { .. }
            | Error::CriticalityOutOfRange { .. }
            | Error::CoverageUnreachable { .. } => ErrorKind::Numerical,
            Error::OddDegreeSum(_) | Error::SimpleGraphNotFound { .. } | Error::AllVaccinated => {
                ErrorKind::Generation
            }
        }
    }

    pub(crate) fn parse(what: &'static str, input: &str, reason: impl fmt::Display) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `lo <= value <= hi`, rejecting NaN.
pub(crate) fn check_closed(what: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::Domain { what, value, domain })
    }
}

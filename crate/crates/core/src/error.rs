use thiserror::Error;

use crate::measures::{DensityViolation, Interval};
use crate::rational::{format_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid density{}: {violation}", player_suffix(.player))]
    InvalidDensity {
        player: Option<String>,
        violation: DensityViolation,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient mass: requested {}, only {} remains", format_rational(.requested), format_rational(.available))]
    InsufficientMass {
        requested: Box<Rational>,
        available: Box<Rational>,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("median of {player} is not unique: every point of {median} is a median")]
    NonUniqueMedian {
        player: String,
        median: Box<Interval>,
    },

    #[error("equal-value cutpoints do not exist for orderings {}", format_orderings(.infeasible))]
    EpUndefined { infeasible: Vec<Vec<String>> },

    #[error("no ordering admits equal-value cutpoints")]
    NoFeasibleOrdering,

    #[error("objective is unbounded")]
    Unbounded,

    #[error("seed point is infeasible: {0}")]
    InfeasibleSeed(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("counterexample {case} mismatch in: {}", .fields.join(", "))]
    Mismatch { case: u8, fields: Vec<String> },
}

fn player_suffix(player: &Option<String>) -> String {
    player
        .as_ref()
        .map(|p| format!(" for player {p}"))
        .unwrap_or_default()
}

pub(crate) fn format_orderings(orderings: &[Vec<String>]) -> String {
    orderings
        .iter()
        .map(|o| format!("({})", o.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Error {
    /// Stable upper-case code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDensity { violation, .. } => violation.code(),
            Error::Domain(_) => "DOMAIN_ERROR",
            Error::InsufficientMass { .. } => "INSUFFICIENT_MASS",
            Error::InvalidScenario(_) => "INVALID_SCENARIO",
            Error::InvalidAllocation(_) => "INVALID_ALLOCATION",
            Error::NonUniqueMedian { .. } => "NON_UNIQUE_MEDIAN",
            Error::EpUndefined { .. } => "EP_UNDEFINED",
            Error::NoFeasibleOrdering => "NO_FEASIBLE_ORDERING",
            Error::Unbounded => "UNBOUNDED",
            Error::InfeasibleSeed(_) => "INFEASIBLE_SEED",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Mismatch { .. } => "MISMATCH",
        }
    }

    /// True for the errors a strict-mode procedure raises when it is not well defined.
    pub fn is_procedure_undefined(&self) -> bool {
        matches!(
            self,
            Error::NonUniqueMedian { .. } | Error::EpUndefined { .. } | Error::NoFeasibleOrdering
        )
    }

    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidDensity { .. }
                | Error::Domain(_)
                | Error::InvalidScenario(_)
                | Error::InvalidAllocation(_)
                | Error::Parse { .. }
        )
    }
}

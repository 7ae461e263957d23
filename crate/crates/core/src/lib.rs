//! Exact-arithmetic cake cutting.
//!
//! The cake is `[0,1]`; each player's value measure is a piecewise-constant
//! density with rational breakpoints, so every cut, value and verdict below is
//! an exact rational.
//!
//! * [`measures`]: step densities, interval sets, mass, cdf, quantiles, medians.
//! * [`procedures`]: cut-and-choose, moving knife, Surplus and Equitability procedures.
//! * [`solve`]: the equal-value cut solver, a rational simplex, Pareto checks.
//! * [`verify`]: proportionality, envy-freeness, Pareto optimality, manipulation harnesses.
//! * [`harness`]: JSON documents, the built-in counterexamples, reports.

pub mod error;
pub mod harness;
pub mod measures;
pub mod procedures;
pub mod rational;
pub mod solve;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{DensityPiece, Interval, IntervalSet, StepDensity};
pub use procedures::{
    Allocation, Player, ProcedureConfig, ProcedureKind, ProcedureOutcome, Scenario, SurplusVariant,
    TieRule,
};
pub use rational::{int, parse_rational, ratio, Rational};
pub use verify::{PropertyReport, TruthProfile};

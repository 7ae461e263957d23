//! Piecewise-constant value measures on the unit interval and the sets they measure.

mod density;
mod interval;

pub use density::{validate_density, DensityPiece, DensityViolation, StepDensity};
pub use interval::{Interval, IntervalSet};

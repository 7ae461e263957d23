//! Exact solvers: the parametric equal-value cut solver, a rational simplex,
//! and Pareto-domination checks built on it.

mod equal_value;
mod pareto;
mod simplex;

pub use equal_value::{equal_value_solve, greedy_cuts, EqualValueSolution};
pub use pareto::{
    pareto_analyze, pareto_improve, utilitarian_bound, CellDecomposition, DominationWitness,
    ParetoAnalysis,
};
pub use simplex::{simplex_max, Constraint, ConstraintOp, LinearProgram, LpSolution};

use num_traits::{Signed, Zero};

use crate::measures::Interval;
use crate::rational::Rational;

/// Zero set of a continuous nondecreasing function that is affine between
/// consecutive `grid` points, with `f(first) ≤ 0 ≤ f(last)`.
pub fn monotone_root<F>(grid: &[Rational], f: F) -> Interval
where
    F: Fn(&Rational) -> Rational,
{
    assert!(!grid.is_empty(), "empty grid");
    let values: Vec<Rational> = grid.iter().map(&f).collect();
    let m = grid.len();
    debug_assert!(!values[0].is_positive() && !values[m - 1].is_negative());

    let lo = match values.iter().position(|v| !v.is_negative()) {
        Some(0) | None => grid[0].clone(),
        Some(j) => interpolate(&grid[j - 1], &grid[j], &values[j - 1], &values[j]),
    };
    let hi = match values.iter().rposition(|v| !v.is_positive()) {
        Some(j) if j + 1 < m => interpolate(&grid[j], &grid[j + 1], &values[j], &values[j + 1]),
        _ => grid[m - 1].clone(),
    };
    Interval::new(lo, hi).expect("root set within the grid")
}

// Zero of the affine function through (x0, f0) and (x1, f1).
fn interpolate(x0: &Rational, x1: &Rational, f0: &Rational, f1: &Rational) -> Rational {
    if f0.is_zero() {
        return x0.clone();
    }
    x0 + (-f0) * (x1 - x0) / (f1 - f0)
}

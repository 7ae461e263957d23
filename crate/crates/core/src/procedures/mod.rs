//! The allocation procedures: cut-and-choose, moving knife, the Surplus
//! Procedure and the Equitability Procedure.
//!
//! Every procedure is a pure function of the declared measures. Exact ties
//! are routed through a [`TieBreaker`] so callers can pin, seed or enumerate
//! their resolution.

mod cut_choose;
mod equitability;
mod moving_knife;
mod surplus;
mod tie;
mod types;

pub use cut_choose::{cut_and_choose, cut_and_choose_with};
pub use equitability::{ep_all_orderings, ep_for_ordering, equitability, equitability_with};
pub use moving_knife::{moving_knife, moving_knife_with};
pub use surplus::{surplus_divide, surplus_divide_with};
pub use tie::{
    enumerate_tie_outcomes, LowestIndex, Scripted, Seeded, TieBreaker, MAX_TIE_BRANCHES,
};
pub use types::*;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dispatches a configured procedure with an explicit tie breaker.
pub fn run_procedure_with(
    s: &Scenario,
    config: &ProcedureConfig,
    tie: &mut dyn TieBreaker,
) -> Result<ProcedureOutcome> {
    match config.kind {
        ProcedureKind::CutAndChoose => {
            cut_and_choose_with(s, config.cutter.unwrap_or(0), config.strict, tie)
        }
        ProcedureKind::MovingKnife => moving_knife_with(s, tie),
        ProcedureKind::Surplus(variant) => surplus_divide_with(s, variant, config.strict, tie),
        ProcedureKind::Equitability => equitability_with(s, config.strict, tie),
    }
}

/// Dispatches a configured procedure using its own tie rule.
pub fn run_procedure(s: &Scenario, config: &ProcedureConfig) -> Result<ProcedureOutcome> {
    run_procedure_with(s, config, config.tie.breaker().as_mut())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

fn require_two(s: &Scenario, what: &str) -> Result<()> {
    if s.len() != 2 {
        return Err(Error::InvalidScenario(format!(
            "{what} needs exactly two players, got {}",
            s.len()
        )));
    }
    Ok(())
}

/// A player's risk-averse cut: their median, or the midpoint of the median
/// interval when it is not unique (an error in strict mode).
fn risk_averse_point(s: &Scenario, player: usize, strict: bool) -> Result<Rational> {
    let m = s.density(player).median_interval();
    if m.is_degenerate() {
        return Ok(m.lo().clone());
    }
    if strict {
        return Err(Error::NonUniqueMedian {
            player: s.players()[player].name.clone(),
            median: Box::new(m),
        });
    }
    Ok(m.midpoint())
}

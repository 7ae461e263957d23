use rayon::prelude::*;

use super::permutations;
use super::tie::TieBreaker;
use super::types::*;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::solve::{equal_value_solve, EqualValueSolution};

/// Cuts and common value equalizing every piece for one left-to-right ordering,
/// or `None` when no such cutpoints exist.
pub fn ep_for_ordering(s: &Scenario, ordering: &[usize]) -> Result<Option<EqualValueSolution>> {
    equal_value_solve(s, ordering)
}

/// Per-ordering results for all `n!` orderings, in lexicographic order.
pub fn ep_all_orderings(s: &Scenario) -> Result<Vec<(Vec<usize>, Option<EqualValueSolution>)>> {
    let orderings = permutations(s.len());
    // orderings that line up the same measures share one solve
    let mut shared: Vec<usize> = Vec::with_capacity(orderings.len());
    for (i, o) in orderings.iter().enumerate() {
        let same = (0..i).find(|&j| {
            shared[j] == j
                && orderings[j]
                    .iter()
                    .zip(o)
                    .all(|(&a, &b)| s.density(a) == s.density(b))
        });
        shared.push(same.unwrap_or(i));
    }
    let solved = (0..orderings.len())
        .into_par_iter()
        .filter(|&i| shared[i] == i)
        .map(|i| Ok((i, equal_value_solve(s, &orderings[i])?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(orderings
        .into_iter()
        .zip(shared)
        .map(|(ordering, j)| {
            let sol = solved
                .iter()
                .find(|(i, _)| *i == j)
                .and_then(|(_, x)| x.clone());
            (ordering, sol)
        })
        .collect())
}

/// Equitability Procedure.
///
/// Strict mode refuses to proceed when any ordering lacks equal-value
/// cutpoints. Lenient mode picks, among feasible orderings, one with the
/// largest common value; equal values go through `tie`, which sees them in
/// lexicographic order.
pub fn equitability(s: &Scenario, strict: bool, tie: TieRule) -> Result<ProcedureOutcome> {
    equitability_with(s, strict, tie.breaker().as_mut())
}

pub fn equitability_with(
    s: &Scenario,
    strict: bool,
    tie: &mut dyn TieBreaker,
) -> Result<ProcedureOutcome> {
    let solved = ep_all_orderings(s)?;
    let infeasible: Vec<Vec<String>> = solved
        .iter()
        .filter(|(_, sol)| sol.is_none())
        .map(|(o, _)| s.ordering_names(o))
        .collect();
    if strict && !infeasible.is_empty() {
        return Err(Error::EpUndefined { infeasible });
    }
    let feasible: Vec<(&Vec<usize>, &EqualValueSolution)> = solved
        .iter()
        .filter_map(|(o, sol)| sol.as_ref().map(|sol| (o, sol)))
        .collect();
    let best: Rational = feasible
        .iter()
        .map(|(_, sol)| sol.common_value.clone())
        .max()
        .ok_or(Error::NoFeasibleOrdering)?;
    let top: Vec<_> = feasible
        .into_iter()
        .filter(|(_, sol)| sol.common_value == best)
        .collect();

    let mut tie_events = Vec::new();
    let pick = if top.len() > 1 {
        let pick = tie.choose(top.len());
        let label = |o: &[usize]| format!("({})", s.ordering_names(o).join(","));
        tie_events.push(TieEvent {
            subject: TieSubject::Ordering,
            location: best.clone(),
            tied: top.iter().map(|(o, _)| label(o)).collect(),
            winner: label(top[pick].0),
        });
        pick
    } else {
        0
    };
    let (ordering, sol) = top[pick];
    let allocation = Allocation::contiguous(s.names(), &sol.cuts, ordering)?;
    let mut notes = vec![format!(
        "{} of {} orderings feasible; common value {}",
        solved.len() - infeasible.len(),
        solved.len(),
        format_rational(&best)
    )];
    if !infeasible.is_empty() {
        notes.push(format!(
            "infeasible orderings: {}",
            crate::error::format_orderings(&infeasible)
        ));
    }
    Ok(ProcedureOutcome {
        procedure: ProcedureKind::Equitability,
        allocation,
        cuts: sol.cuts.clone(),
        ordering: ordering.clone(),
        common_value: Some(best),
        tie_events,
        notes,
    })
}

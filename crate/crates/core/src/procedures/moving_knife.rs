use num_traits::{One, Zero};

use super::tie::TieBreaker;
use super::types::*;
use crate::error::{Error, Result};
use crate::measures::{Interval, IntervalSet};
use crate::rational::Rational;

/// Banach–Knaster moving knife.
///
/// In each round the knife sweeps the remaining suffix `[pos, 1]`. Player `i`
/// calls as soon as the slice is worth `mass_i([pos,1]) / k` to them, `k`
/// being the number of players still in. The earliest caller takes the slice
/// and leaves; the last player keeps the remainder.
pub fn moving_knife(s: &Scenario, tie: TieRule) -> Result<ProcedureOutcome> {
    moving_knife_with(s, tie.breaker().as_mut())
}

pub fn moving_knife_with(s: &Scenario, tie: &mut dyn TieBreaker) -> Result<ProcedureOutcome> {
    let n = s.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pos = Rational::zero();
    let mut cuts = Vec::with_capacity(n - 1);
    let mut ordering = Vec::with_capacity(n);
    let mut portions = vec![IntervalSet::empty(); n];
    let mut tie_events = Vec::new();

    while remaining.len() > 1 {
        let k = Rational::from_integer(remaining.len().into());
        let calls = remaining
            .iter()
            .map(|&i| {
                let d = s.density(i);
                let share = d.mass_between(&pos, &Rational::one()) / &k;
                d.quantile_left(&share, &pos)
            })
            .collect::<Result<Vec<_>>>()?;
        let first = calls.iter().min().expect("at least two callers").clone();
        let tied: Vec<usize> = (0..remaining.len())
            .filter(|&j| calls[j] == first)
            .collect();
        let slot = if tied.len() > 1 {
            let pick = tied[tie.choose(tied.len())];
            tie_events.push(TieEvent {
                subject: TieSubject::KnifeCall,
                location: first.clone(),
                tied: tied
                    .iter()
                    .map(|&j| s.players()[remaining[j]].name.clone())
                    .collect(),
                winner: s.players()[remaining[pick]].name.clone(),
            });
            pick
        } else {
            tied[0]
        };
        let winner = remaining.remove(slot);
        portions[winner] = slice(&pos, &first)?;
        ordering.push(winner);
        cuts.push(first.clone());
        pos = first;
    }
    let last = remaining[0];
    portions[last] = slice(&pos, &Rational::one())?;
    ordering.push(last);

    let allocation = Allocation::new(s.names(), portions)?;
    Ok(ProcedureOutcome {
        procedure: ProcedureKind::MovingKnife,
        allocation,
        cuts,
        ordering,
        common_value: None,
        tie_events,
        notes: Vec::new(),
    })
}

fn slice(lo: &Rational, hi: &Rational) -> Result<IntervalSet> {
    Interval::new(lo.clone(), hi.clone())
        .map(IntervalSet::from_interval)
        .map_err(|e| Error::Domain(format!("knife moved backwards: {e}")))
}

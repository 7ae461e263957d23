use num_traits::{One, Signed};

use super::tie::TieBreaker;
use super::types::*;
use super::{require_two, risk_averse_point};
use crate::error::Result;
use crate::rational::{format_rational, Rational};
use crate::solve::monotone_root;

/// Two-player Surplus Procedure.
///
/// With median points `a ≤ b` (the owner of `a` takes the left side), the
/// surplus `[a, b]` is split at a point where the two players' surplus shares
/// balance: equal masses for [`SurplusVariant::Equitable`], equal fractions of
/// each player's surplus mass for [`SurplusVariant::Proportional`]. A surplus
/// worth nothing to one player goes entirely to the other.
pub fn surplus_divide(
    s: &Scenario,
    variant: SurplusVariant,
    strict: bool,
    tie: TieRule,
) -> Result<ProcedureOutcome> {
    surplus_divide_with(s, variant, strict, tie.breaker().as_mut())
}

pub fn surplus_divide_with(
    s: &Scenario,
    variant: SurplusVariant,
    strict: bool,
    tie: &mut dyn TieBreaker,
) -> Result<ProcedureOutcome> {
    require_two(s, "the surplus procedure")?;
    let medians = [
        risk_averse_point(s, 0, strict)?,
        risk_averse_point(s, 1, strict)?,
    ];
    let mut tie_events = Vec::new();
    let left = match medians[0].cmp(&medians[1]) {
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => {
            let pick = tie.choose(2);
            tie_events.push(TieEvent {
                subject: TieSubject::MedianOrder,
                location: medians[0].clone(),
                tied: s.names(),
                winner: s.players()[pick].name.clone(),
            });
            pick
        }
    };
    let right = 1 - left;
    let a = medians[left].clone();
    let b = medians[right].clone();

    let cut = if a == b {
        a.clone()
    } else {
        let dl = s.density(left);
        let dr = s.density(right);
        let ml = dl.mass_between(&a, &b);
        let mr = dr.mass_between(&a, &b);
        match (ml.is_positive(), mr.is_positive()) {
            (false, true) => a.clone(),
            (true, false) => b.clone(),
            (false, false) => (&a + &b) / Rational::from_integer(2.into()),
            (true, true) => {
                let (wl, wr) = match variant {
                    SurplusVariant::Equitable => (Rational::one(), Rational::one()),
                    SurplusVariant::Proportional => (ml.recip(), mr.recip()),
                };
                let mut grid: Vec<Rational> = dl
                    .breakpoints()
                    .into_iter()
                    .chain(dr.breakpoints())
                    .filter(|x| x > &a && x < &b)
                    .collect();
                grid.push(a.clone());
                grid.push(b.clone());
                grid.sort();
                grid.dedup();
                let balance =
                    |x: &Rational| &wl * dl.mass_between(&a, x) - &wr * dr.mass_between(x, &b);
                monotone_root(&grid, balance).midpoint()
            }
        }
    };

    let ordering = vec![left, right];
    let allocation = Allocation::contiguous(s.names(), std::slice::from_ref(&cut), &ordering)?;
    let notes = vec![format!(
        "medians: {} at {}, {} at {}",
        s.players()[0].name,
        format_rational(&medians[0]),
        s.players()[1].name,
        format_rational(&medians[1]),
    )];
    Ok(ProcedureOutcome {
        procedure: ProcedureKind::Surplus(variant),
        allocation,
        cuts: vec![cut],
        ordering,
        common_value: None,
        tie_events,
        notes,
    })
}

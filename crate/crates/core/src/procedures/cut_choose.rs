use num_traits::{One, Zero};

use super::tie::TieBreaker;
use super::types::*;
use super::{require_two, risk_averse_point};
use crate::error::Result;
use crate::rational::{format_rational, Rational};

/// "I cut, you choose". The cutter cuts at the midpoint of their median
/// interval (strict mode demands a unique median); the chooser takes the piece
/// they value strictly more, resolving an exact tie through `tie`.
pub fn cut_and_choose(
    s: &Scenario,
    cutter: usize,
    strict: bool,
    tie: TieRule,
) -> Result<ProcedureOutcome> {
    cut_and_choose_with(s, cutter, strict, tie.breaker().as_mut())
}

pub fn cut_and_choose_with(
    s: &Scenario,
    cutter: usize,
    strict: bool,
    tie: &mut dyn TieBreaker,
) -> Result<ProcedureOutcome> {
    require_two(s, "cut-and-choose")?;
    if cutter > 1 {
        return Err(crate::Error::InvalidScenario(format!(
            "cutter index {cutter} out of range"
        )));
    }
    let chooser = 1 - cutter;
    let cut = risk_averse_point(s, cutter, strict)?;

    let d = s.density(chooser);
    let left = d.mass_between(&Rational::zero(), &cut);
    let right = d.mass_between(&cut, &Rational::one());
    let mut tie_events = Vec::new();
    let chooser_left = match left.cmp(&right) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            let pick = tie.choose(2);
            tie_events.push(TieEvent {
                subject: TieSubject::ChooserSide,
                location: cut.clone(),
                tied: vec!["left".into(), "right".into()],
                winner: if pick == 0 { "left" } else { "right" }.into(),
            });
            pick == 0
        }
    };
    let ordering = if chooser_left {
        vec![chooser, cutter]
    } else {
        vec![cutter, chooser]
    };
    let allocation = Allocation::contiguous(s.names(), std::slice::from_ref(&cut), &ordering)?;
    let notes = vec![format!(
        "cutter {} cuts at {}; chooser {} takes the {} piece",
        s.players()[cutter].name,
        format_rational(&cut),
        s.players()[chooser].name,
        if chooser_left { "left" } else { "right" }
    )];
    Ok(ProcedureOutcome {
        procedure: ProcedureKind::CutAndChoose,
        allocation,
        cuts: vec![cut],
        ordering,
        common_value: None,
        tie_events,
        notes,
    })
}

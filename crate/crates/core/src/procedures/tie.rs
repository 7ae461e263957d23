//! Tie resolution. Procedures ask a [`TieBreaker`] whenever several options are
//! exactly tied; the breaker returns the index of the chosen option.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::types::TieRule;
use crate::error::Result;

pub trait TieBreaker {
    /// Picks one of `options` (≥ 2) tied alternatives, listed in index order.
    fn choose(&mut self, options: usize) -> usize;
}

pub struct LowestIndex;

impl TieBreaker for LowestIndex {
    fn choose(&mut self, _options: usize) -> usize {
        0
    }
}

pub struct Seeded(ChaCha8Rng);

impl Seeded {
    pub fn new(seed: u64) -> Self {
        Seeded(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl TieBreaker for Seeded {
    fn choose(&mut self, options: usize) -> usize {
        self.0.gen_range(0..options)
    }
}

/// Replays a fixed choice prefix, then picks 0, recording every decision's arity.
#[derive(Debug, Default)]
pub struct Scripted {
    script: Vec<usize>,
    taken: Vec<(usize, usize)>,
}

impl Scripted {
    pub fn new(script: Vec<usize>) -> Self {
        Scripted {
            script,
            taken: Vec::new(),
        }
    }

    /// `(choice, arity)` per decision made so far.
    pub fn decisions(&self) -> &[(usize, usize)] {
        &self.taken
    }
}

impl TieBreaker for Scripted {
    fn choose(&mut self, options: usize) -> usize {
        let pick = self
            .script
            .get(self.taken.len())
            .copied()
            .unwrap_or(0)
            .min(options - 1);
        self.taken.push((pick, options));
        pick
    }
}

impl TieRule {
    pub fn breaker(&self) -> Box<dyn TieBreaker + Send> {
        match *self {
            TieRule::LowestIndex => Box::new(LowestIndex),
            TieRule::Seeded(seed) => Box::new(Seeded::new(seed)),
        }
    }
}

/// Upper bound on enumerated tie branches.
pub const MAX_TIE_BRANCHES: usize = 100_000;

/// Runs `run` once for every distinct sequence of tie resolutions, in
/// lexicographic order of choices.
pub fn enumerate_tie_outcomes<T, F>(mut run: F) -> Result<Vec<T>>
where
    F: FnMut(&mut dyn TieBreaker) -> Result<T>,
{
    let mut out = Vec::new();
    let mut script = Vec::new();
    loop {
        let mut breaker = Scripted::new(script);
        out.push(run(&mut breaker)?);
        assert!(
            out.len() <= MAX_TIE_BRANCHES,
            "tie enumeration exceeded {MAX_TIE_BRANCHES} branches"
        );
        let decisions = breaker.decisions();
        match decisions.iter().rposition(|&(c, arity)| c + 1 < arity) {
            Some(j) => {
                script = decisions[..j].iter().map(|&(c, _)| c).collect();
                script.push(decisions[j].0 + 1);
            }
            None => break,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_nested_choices() {
        // a 3-way decision followed by a 2-way decision
        let outs = enumerate_tie_outcomes(|b| {
            let x = b.choose(3);
            let y = b.choose(2);
            Ok((x, y))
        })
        .unwrap();
        assert_eq!(outs, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]);
    }

    #[test]
    fn branch_dependent_arity() {
        let outs = enumerate_tie_outcomes(|b| {
            let x = b.choose(2);
            let y = if x == 0 { 0 } else { b.choose(3) };
            Ok((x, y))
        })
        .unwrap();
        assert_eq!(outs, vec![(0, 0), (1, 0), (1, 1), (1, 2)]);
    }

    #[test]
    fn no_ties_runs_once() {
        let outs = enumerate_tie_outcomes(|_| Ok(7)).unwrap();
        assert_eq!(outs, vec![7]);
    }

    #[test]
    fn seeded_is_reproducible() {
        let mut a = Seeded::new(42);
        let mut b = Seeded::new(42);
        let xs: Vec<_> = (0..20).map(|_| a.choose(5)).collect();
        let ys: Vec<_> = (0..20).map(|_| b.choose(5)).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|&x| x < 5));
    }
}

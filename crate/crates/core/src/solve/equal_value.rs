//! Equal-value cutpoints for a fixed left-to-right ordering.
//!
//! For a common value `t`, the greedy chain places each cut at the leftmost
//! point giving the current piece's owner exactly `t`. Every cut is then a
//! nondecreasing, left-continuous, piecewise-affine function of `t`, and so is
//! the last owner's value `L(t)` of the remainder (nonincreasing). The finitely
//! many `t` where some cut crosses a density breakpoint are enumerated stage by
//! stage; between them everything is affine and `L(t) = t` is solved exactly.
//!
//! Leftmost chaining alone misses solutions that sit on a zero-density
//! plateau of an earlier owner, so the candidate `t` is confirmed by
//! propagating the whole interval of admissible positions for every cut.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measures::StepDensity;
use crate::procedures::Scenario;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualValueSolution {
    pub cuts: Vec<Rational>,
    pub common_value: Rational,
}

/// Leftmost chained cuts at target `t`; `None` when some owner runs out of mass.
/// The last piece is not checked.
pub fn greedy_cuts(
    s: &Scenario,
    ordering: &[usize],
    t: &Rational,
) -> Result<Option<Vec<Rational>>> {
    s.check_ordering(ordering)?;
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::Domain(format!(
            "target value {} outside [0,1]",
            format_rational(t)
        )));
    }
    let chain = chain_of(s, ordering);
    Ok(left_chain(&chain, t, chain.len() - 1))
}

/// Cuts and positive common value `t` such that every piece is worth exactly
/// `t` to its owner, or `None` if there are none.
///
/// The solution value is unique when it exists. A common value of zero is
/// not accepted.
pub fn equal_value_solve(s: &Scenario, ordering: &[usize]) -> Result<Option<EqualValueSolution>> {
    s.check_ordering(ordering)?;
    let chain = chain_of(s, ordering);
    Ok(solve_chain(&chain))
}

fn chain_of<'a>(s: &'a Scenario, ordering: &[usize]) -> Vec<&'a StepDensity> {
    ordering.iter().map(|&i| s.density(i)).collect()
}

fn left_chain(chain: &[&StepDensity], t: &Rational, upto: usize) -> Option<Vec<Rational>> {
    let mut cuts = Vec::with_capacity(upto);
    let mut pos = Rational::zero();
    for d in &chain[..upto] {
        pos = d.quantile_left(t, &pos).ok()?;
        cuts.push(pos.clone());
    }
    Some(cuts)
}

// L(t) - t along the greedy chain.
fn last_gap(chain: &[&StepDensity], t: &Rational) -> Option<Rational> {
    let n = chain.len();
    let cuts = left_chain(chain, t, n - 1)?;
    let start = cuts.last().cloned().unwrap_or_else(Rational::zero);
    Some(chain[n - 1].mass_between(&start, &Rational::one()) - t)
}

fn solve_chain(chain: &[&StepDensity]) -> Option<EqualValueSolution> {
    let ts: Vec<Rational> = t_breakpoints(chain).into_iter().collect();

    // sup { t > 0 : L(t) ≥ t }, attained by left-continuity
    let mut best: Option<Rational> = None;
    let mut consider = |t: Rational| {
        if best.as_ref().is_none_or(|b| &t > b) {
            best = Some(t);
        }
    };
    for t in ts.iter().filter(|t| t.is_positive()) {
        if last_gap(chain, t).is_some_and(|g| !g.is_negative()) {
            consider(t.clone());
        }
    }
    for w in ts.windows(2) {
        let Some((p1, g1, slope)) = affine_on(&w[0], &w[1], |t| last_gap(chain, t)) else {
            continue;
        };
        if slope.is_zero() {
            continue;
        }
        let root = &p1 - &g1 / &slope;
        if root > w[0] && root < w[1] {
            let exact = last_gap(chain, &root);
            debug_assert_eq!(exact.as_ref(), Some(&Rational::zero()));
            if exact.is_some_and(|g| g.is_zero()) {
                consider(root);
            }
        }
    }
    let t = best?;
    let cuts = construct_cuts(chain, &t)?;
    Some(EqualValueSolution {
        cuts,
        common_value: t,
    })
}

// Affine form of `g` on the open segment (a, b) from two interior probes:
// returns (probe, g(probe), slope).
fn affine_on<G>(a: &Rational, b: &Rational, g: G) -> Option<(Rational, Rational, Rational)>
where
    G: Fn(&Rational) -> Option<Rational>,
{
    let third = (b - a) / Rational::from_integer(3.into());
    let p1 = a + &third;
    let p2 = &p1 + &third;
    let g1 = g(&p1)?;
    let g2 = g(&p2)?;
    let slope = (&g2 - &g1) / &third;
    Some((p1, g1, slope))
}

// Adds every t in an open segment where the (segment-wise affine) `g` hits a target.
fn add_crossings<G>(ts: &mut BTreeSet<Rational>, targets: &[Rational], g: G)
where
    G: Fn(&Rational) -> Option<Rational>,
{
    let sorted: Vec<Rational> = ts.iter().cloned().collect();
    for w in sorted.windows(2) {
        let Some((p1, g1, slope)) = affine_on(&w[0], &w[1], &g) else {
            continue;
        };
        if slope.is_zero() {
            continue;
        }
        for v in targets {
            let t = &p1 + (v - &g1) / &slope;
            if t > w[0] && t < w[1] {
                ts.insert(t);
            }
        }
    }
}

fn levels(d: &StepDensity) -> Vec<Rational> {
    let mut out: Vec<Rational> = d
        .breakpoints()
        .iter()
        .map(|b| d.mass_between(&Rational::zero(), b))
        .collect();
    out.dedup();
    out
}

// Values of t in [0,1] outside of which every greedy cut and L(t) are affine.
fn t_breakpoints(chain: &[&StepDensity]) -> BTreeSet<Rational> {
    let n = chain.len();
    let mut ts = BTreeSet::from([Rational::zero(), Rational::one()]);
    for (k, d) in chain[..n - 1].iter().enumerate() {
        let prev_cut = |t: &Rational| -> Option<Rational> {
            if k == 0 {
                return Some(Rational::zero());
            }
            left_chain(chain, t, k).map(|c| c[k - 1].clone())
        };
        if k > 0 {
            add_crossings(&mut ts, &d.breakpoints(), prev_cut);
        }
        // target level of the next cut
        add_crossings(&mut ts, &levels(d), |t| {
            prev_cut(t).map(|x| d.mass_between(&Rational::zero(), &x) + t)
        });
    }
    add_crossings(&mut ts, &chain[n - 1].breakpoints(), |t| {
        left_chain(chain, t, n - 1).map(|c| c[n - 2].clone())
    });
    ts
}

// Interval of admissible positions for each cut at common value t > 0.
fn admissible_bands(chain: &[&StepDensity], t: &Rational) -> Option<Vec<(Rational, Rational)>> {
    let n = chain.len();
    let one = Rational::one();
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut bands = Vec::with_capacity(n - 1);
    for d in &chain[..n - 1] {
        let lvl_lo = d.mass_between(&Rational::zero(), &lo) + t;
        if lvl_lo > one {
            return None;
        }
        let lvl_hi = (d.mass_between(&Rational::zero(), &hi) + t).min(one.clone());
        lo = d.level_left(&lvl_lo).ok()?;
        hi = d.level_right(&lvl_hi).ok()?;
        bands.push((lo.clone(), hi.clone()));
    }
    let last = chain[n - 1];
    let need = &one - t;
    let f_lo = last.mass_between(&Rational::zero(), &lo);
    let f_hi = last.mass_between(&Rational::zero(), &hi);
    (f_lo <= need && need <= f_hi).then_some(bands)
}

fn construct_cuts(chain: &[&StepDensity], t: &Rational) -> Option<Vec<Rational>> {
    let n = chain.len();
    let greedy = left_chain(chain, t, n - 1)?;
    let last_value = chain[n - 1].mass_between(greedy.last()?, &Rational::one());
    if &last_value == t {
        return Some(greedy);
    }
    // walk back from the last cut, staying inside the admissible bands
    let bands = admissible_bands(chain, t)?;
    let mut cuts = vec![Rational::zero(); n - 1];
    let last = chain[n - 1];
    cuts[n - 2] = last
        .level_left(&(Rational::one() - t))
        .ok()?
        .max(bands[n - 2].0.clone());
    for k in (1..n - 1).rev() {
        let d = chain[k];
        let target = d.mass_between(&Rational::zero(), &cuts[k]) - t;
        cuts[k - 1] = d.level_left(&target).ok()?.max(bands[k - 1].0.clone());
    }
    let ok = piece_values(chain, &cuts).iter().all(|v| v == t);
    debug_assert!(ok, "band walk produced unequal pieces");
    ok.then_some(cuts)
}

/// Each owner's value of their piece for the given cuts.
pub(crate) fn piece_values(chain: &[&StepDensity], cuts: &[Rational]) -> Vec<Rational> {
    let mut bounds = vec![Rational::zero()];
    bounds.extend(cuts.iter().cloned());
    bounds.push(Rational::one());
    chain
        .iter()
        .zip(bounds.windows(2))
        .map(|(d, w)| d.mass_between(&w[0], &w[1]))
        .collect()
}

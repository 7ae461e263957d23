//! Seeded instance generators and independent oracles shared by the
//! integration tests. The oracles use only the measure primitives
//! (`cdf`, `breakpoints`, `density_right_of`) and plain linear algebra.

#![allow(dead_code)]

use fairslice::procedures::{Allocation, Scenario};
use fairslice::solve::{ConstraintOp, LinearProgram};
use fairslice::{ratio, Rational, StepDensity};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A step density with `1..=max_cells` cells on a grid of `1/den`.
pub fn random_density(rng: &mut ChaCha8Rng, max_cells: usize, den: i64) -> StepDensity {
    let cells = rng.gen_range(1..=max_cells.min(den as usize));
    let mut inner: Vec<i64> = (1..den).collect();
    inner.shuffle(rng);
    let mut inner: Vec<i64> = inner.into_iter().take(cells - 1).collect();
    inner.sort_unstable();
    let mut breaks = vec![Rational::zero()];
    breaks.extend(inner.into_iter().map(|k| ratio(k, den)));
    breaks.push(Rational::one());
    let mut weights: Vec<Rational> = (0..cells).map(|_| ratio(rng.gen_range(0..6), 1)).collect();
    if weights.iter().all(Zero::is_zero) {
        let k = rng.gen_range(0..cells);
        weights[k] = Rational::one();
    }
    StepDensity::from_weights(&breaks, &weights).expect("generated density")
}

pub fn random_scenario(rng: &mut ChaCha8Rng, n: usize, max_cells: usize) -> Scenario {
    let ds = (0..n).map(|_| random_density(rng, max_cells, 12)).collect();
    Scenario::numbered(ds).expect("generated scenario")
}

/// A non-contiguous allocation: every cell of a random grid goes to a random player.
pub fn random_allocation(rng: &mut ChaCha8Rng, s: &Scenario, den: i64) -> Allocation {
    use fairslice::IntervalSet;
    let mut pairs: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); s.len()];
    for k in 0..den {
        pairs[rng.gen_range(0..s.len())].push((ratio(k, den), ratio(k + 1, den)));
    }
    let portions = pairs
        .into_iter()
        .map(|p| IntervalSet::from_pairs(p).unwrap())
        .collect();
    Allocation::new(s.names(), portions).expect("grid allocation")
}

fn grid_of(measures: &[&StepDensity]) -> Vec<Rational> {
    let mut g: Vec<Rational> = measures.iter().flat_map(|d| d.breakpoints()).collect();
    g.sort();
    g.dedup();
    g
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

// Hyperplane `coeffs · x = rhs`.
type Plane = (Vec<Rational>, Rational);

/// Largest common value `t > 0` over all cut vectors for `ordering`, or
/// `None`. Exact: on every box of grid cells the piece values are affine in
/// the cuts, so the feasible set is a polytope whose vertices are found by
/// intersecting every choice of `n - 1` planes among the equal-value
/// equations, the box faces and the cut-order faces.
pub fn ep_oracle(s: &Scenario, ordering: &[usize]) -> Option<Rational> {
    let n = ordering.len();
    let m = n - 1;
    let owners: Vec<&StepDensity> = ordering.iter().map(|&i| s.density(i)).collect();
    let grid = grid_of(&s.densities());
    let cells = grid.len() - 1;
    let mut best: Option<Rational> = None;

    let mut choice = vec![0usize; m];
    loop {
        let lo: Vec<&Rational> = choice.iter().map(|&c| &grid[c]).collect();
        let hi: Vec<&Rational> = choice.iter().map(|&c| &grid[c + 1]).collect();
        // F_p(x_j) = base[p][j] + slope[p][j] * x_j inside the box
        let affine = |p: &StepDensity, j: usize| {
            let slope = p.density_right_of(lo[j]).clone();
            let base = p.cdf(lo[j]).unwrap() - &slope * lo[j];
            (base, slope)
        };
        // piece k value: F_{o_k}(x_{k+1}) - F_{o_k}(x_k) as (coeffs, constant)
        let piece = |k: usize| -> (Vec<Rational>, Rational) {
            let mut coeffs = vec![Rational::zero(); m];
            let mut constant = Rational::zero();
            let d = owners[k];
            if k < m {
                let (b, sl) = affine(d, k);
                coeffs[k] += sl;
                constant += b;
            } else {
                constant += Rational::one();
            }
            if k > 0 {
                let (b, sl) = affine(d, k - 1);
                coeffs[k - 1] -= sl;
                constant -= b;
            }
            (coeffs, constant)
        };
        let pieces: Vec<_> = (0..n).map(piece).collect();
        let mut planes: Vec<Plane> = Vec::new();
        for k in 0..m {
            let coeffs = (0..m)
                .map(|j| &pieces[k].0[j] - &pieces[k + 1].0[j])
                .collect();
            planes.push((coeffs, &pieces[k + 1].1 - &pieces[k].1));
        }
        for j in 0..m {
            let mut e = vec![Rational::zero(); m];
            e[j] = Rational::one();
            planes.push((e.clone(), lo[j].clone()));
            planes.push((e, hi[j].clone()));
            if j + 1 < m && choice[j] == choice[j + 1] {
                let mut d = vec![Rational::zero(); m];
                d[j] = Rational::one();
                d[j + 1] = -Rational::one();
                planes.push((d, Rational::zero()));
            }
        }
        for pick in subsets(planes.len(), m) {
            let a = pick.iter().map(|&i| planes[i].0.clone()).collect();
            let b = pick.iter().map(|&i| planes[i].1.clone()).collect();
            let Some(x) = solve_square(a, b) else {
                continue;
            };
            let inside = (0..m).all(|j| lo[j] <= &x[j] && &x[j] <= hi[j])
                && x.windows(2).all(|w| w[0] <= w[1]);
            if !inside {
                continue;
            }
            let values: Vec<Rational> = pieces
                .iter()
                .map(|(c, k)| c.iter().zip(&x).map(|(a, v)| a * v).sum::<Rational>() + k)
                .collect();
            let t = values[0].clone();
            if t.is_positive()
                && values.iter().all(|v| v == &t)
                && best.as_ref().is_none_or(|b| &t > b)
            {
                best = Some(t);
            }
        }
        // next nondecreasing cell choice
        let Some(j) = (0..m).rev().find(|&j| choice[j] + 1 < cells) else {
            break;
        };
        choice[j] += 1;
        for k in j + 1..m {
            choice[k] = choice[j];
        }
    }
    best
}

/// Two-player Pareto oracle: sort cells by the density ratio `d_A / d_B`,
/// hand A a prefix with one fractional boundary cell, and ask whether some
/// such threshold allocation beats the baseline for one player without
/// hurting the other. Returns `true` when the allocation is dominated.
pub fn ratio_sweep_dominated(s: &Scenario, a: &Allocation) -> bool {
    assert_eq!(s.len(), 2);
    let (da, db) = (s.density(0), s.density(1));
    let mut grid = grid_of(&s.densities());
    for p in a.portions() {
        grid.extend(p.endpoints().cloned());
    }
    grid.sort();
    grid.dedup();
    let base = a.values(&s.densities());
    // (value to A, value to B) per cell
    let mut cells: Vec<(Rational, Rational)> = grid
        .windows(2)
        .map(|w| {
            let len = &w[1] - &w[0];
            (
                da.density_right_of(&w[0]) * &len,
                db.density_right_of(&w[0]) * &len,
            )
        })
        .filter(|(x, y): &(Rational, Rational)| !(x.is_zero() && y.is_zero()))
        .collect();
    let total_b: Rational = cells.iter().map(|c| c.1.clone()).sum();
    let total_a: Rational = cells.iter().map(|c| c.0.clone()).sum();
    // best for B while A keeps at least `need`
    let best_other = |cells: &[(Rational, Rational)], need: &Rational, total_other: &Rational| {
        let mut got = Rational::zero();
        let mut cost = Rational::zero();
        for (mine, theirs) in cells {
            if &got >= need {
                break;
            }
            if mine.is_zero() {
                continue;
            }
            let missing = need - &got;
            if mine <= &missing {
                got += mine;
                cost += theirs;
            } else {
                cost += theirs * (&missing / mine);
                got = need.clone();
            }
        }
        total_other - cost
    };
    // descending d_A / d_B, with d_B = 0 first
    cells.sort_by(|x, y| (&x.0 * &y.1).cmp(&(&y.0 * &x.1)).reverse());
    let b_max = best_other(&cells, &base[0], &total_b);
    let flipped: Vec<(Rational, Rational)> = cells
        .iter()
        .rev()
        .map(|(x, y)| (y.clone(), x.clone()))
        .collect();
    let a_max = best_other(&flipped, &base[1], &total_a);
    b_max > base[1] || a_max > base[0]
}

/// A random LP with a nonnegative feasible seed, bounded by `Σ x ≤ Σ seed + 2`.
pub fn random_lp(
    rng: &mut ChaCha8Rng,
    max_vars: usize,
    max_rows: usize,
) -> (LinearProgram, Vec<Rational>) {
    let n = rng.gen_range(1..=max_vars);
    let seed: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(0..4), 2)).collect();
    let objective = (0..n).map(|_| ratio(rng.gen_range(-3..=3), 1)).collect();
    let mut lp = LinearProgram::new(n, objective);
    let rows = rng.gen_range(0..max_rows);
    for _ in 0..rows {
        let coeffs: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(-3..=3), 1)).collect();
        let at: Rational = coeffs.iter().zip(&seed).map(|(a, x)| a * x).sum();
        let slack = ratio(rng.gen_range(0..3), 2);
        let (op, rhs) = match rng.gen_range(0..6) {
            0 => (ConstraintOp::Eq, at),
            1 | 2 => (ConstraintOp::Ge, at - slack),
            _ => (ConstraintOp::Le, at + slack),
        };
        lp.constrain(coeffs, op, rhs);
    }
    let total: Rational = seed.iter().sum();
    lp.constrain(
        vec![Rational::one(); n],
        ConstraintOp::Le,
        total + ratio(2, 1),
    );
    (lp, seed)
}

/// Maximum over every basic feasible point: each choice of `n` tight planes
/// among the constraint rows and the coordinate planes.
pub fn vertex_enumeration_max(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars;
    let mut planes: Vec<Plane> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        planes.push((e, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    for pick in subsets(planes.len(), n) {
        let a = pick.iter().map(|&i| planes[i].0.clone()).collect();
        let b = pick.iter().map(|&i| planes[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if x.iter().any(Signed::is_negative) || !lp.constraints.iter().all(|c| c.satisfied_by(&x)) {
            continue;
        }
        let v = lp.objective_at(&x);
        if best.as_ref().is_none_or(|b| &v > b) {
            best = Some(v);
        }
    }
    best
}

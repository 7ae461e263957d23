use num_traits::{Signed, Zero};

use super::simplex::{simplex_max, ConstraintOp, LinearProgram};
use crate::error::Result;
use crate::measures::{Interval, IntervalSet, StepDensity};
use crate::procedures::{Allocation, Scenario};
use crate::rational::Rational;

/// Cells on which every player's density is constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDecomposition {
    /// Sorted breakpoints from 0 to 1.
    pub cuts: Vec<Rational>,
    /// `densities[player][cell]`.
    pub densities: Vec<Vec<Rational>>,
}

impl CellDecomposition {
    pub fn new<I>(measures: &[&StepDensity], extra: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let mut cuts: Vec<Rational> = measures
            .iter()
            .flat_map(|d| d.breakpoints())
            .chain(extra)
            .collect();
        cuts.sort();
        cuts.dedup();
        let densities = measures
            .iter()
            .map(|d| {
                cuts[..cuts.len() - 1]
                    .iter()
                    .map(|x| d.density_right_of(x).clone())
                    .collect()
            })
            .collect();
        CellDecomposition { cuts, densities }
    }

    pub fn cell_count(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn cell(&self, c: usize) -> (&Rational, &Rational) {
        (&self.cuts[c], &self.cuts[c + 1])
    }

    pub fn cell_len(&self, c: usize) -> Rational {
        &self.cuts[c + 1] - &self.cuts[c]
    }

    /// Value to `player` of the whole cell `c`.
    pub fn cell_value(&self, player: usize, c: usize) -> Rational {
        &self.densities[player][c] * self.cell_len(c)
    }
}

/// An allocation that weakly improves every player and strictly improves one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub allocation: Allocation,
    pub value_vector: Vec<Rational>,
    pub gains: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoAnalysis {
    pub baseline: Vec<Rational>,
    /// Maximal total gain over all allocations weakly improving everyone; zero iff Pareto optimal.
    pub optimum: Rational,
    pub witness: Option<DominationWitness>,
}

/// `∫ max_i d_i`: the largest total value any allocation can reach.
pub fn utilitarian_bound(measures: &[&StepDensity]) -> Rational {
    let cells = CellDecomposition::new(measures, std::iter::empty());
    (0..cells.cell_count())
        .map(|c| {
            let top = cells
                .densities
                .iter()
                .map(|row| &row[c])
                .max()
                .expect("at least one measure");
            top * cells.cell_len(c)
        })
        .sum()
}

/// Searches for a Pareto improvement over `a` under the scenario's declared measures.
pub fn pareto_improve(s: &Scenario, a: &Allocation) -> Result<Option<DominationWitness>> {
    a.check_against(s)?;
    Ok(pareto_analyze(&s.densities(), a, std::iter::empty())?.witness)
}

/// Solves the cell-fraction LP: maximize total gain subject to no player losing.
///
/// `extra` adds breakpoints to the cell decomposition; the verdict does not
/// depend on them.
pub fn pareto_analyze<I>(
    measures: &[&StepDensity],
    a: &Allocation,
    extra: I,
) -> Result<ParetoAnalysis>
where
    I: IntoIterator<Item = Rational>,
{
    a.check_partition()?;
    let n = measures.len();
    let endpoints: Vec<Rational> = a
        .portions()
        .iter()
        .flat_map(|p| p.endpoints().cloned().collect::<Vec<_>>())
        .collect();
    let cells = CellDecomposition::new(measures, endpoints.into_iter().chain(extra));
    let m = cells.cell_count();
    let var = |i: usize, c: usize| i * m + c;
    let baseline = a.values(measures);

    let mut objective = vec![Rational::zero(); n * m];
    for i in 0..n {
        for c in 0..m {
            objective[var(i, c)] = cells.cell_value(i, c);
        }
    }
    let mut lp = LinearProgram::new(n * m, objective);
    for c in 0..m {
        let mut row = vec![Rational::zero(); n * m];
        for i in 0..n {
            row[var(i, c)] = Rational::from_integer(1.into());
        }
        lp.constrain(row, ConstraintOp::Eq, Rational::from_integer(1.into()));
    }
    for (i, base) in baseline.iter().enumerate() {
        let mut row = vec![Rational::zero(); n * m];
        for c in 0..m {
            row[var(i, c)] = cells.cell_value(i, c);
        }
        lp.constrain(row, ConstraintOp::Ge, base.clone());
    }

    let mut seed = vec![Rational::zero(); n * m];
    for (i, portion) in a.portions().iter().enumerate() {
        for c in 0..m {
            let (lo, hi) = cells.cell(c);
            seed[var(i, c)] = portion.overlap(lo, hi) / cells.cell_len(c);
        }
    }

    let sol = simplex_max(&lp, &seed)?;
    let optimum = sol.optimum - baseline.iter().sum::<Rational>();
    debug_assert!(!optimum.is_negative());

    let witness = if optimum.is_positive() {
        let allocation = materialize(&cells, n, &sol.point, a.names().to_vec())?;
        let value_vector = allocation.values(measures);
        let gains: Vec<Rational> = value_vector
            .iter()
            .zip(&baseline)
            .map(|(v, b)| v - b)
            .collect();
        debug_assert!(gains.iter().all(|g| !g.is_negative()));
        Some(DominationWitness {
            allocation,
            value_vector,
            gains,
        })
    } else {
        None
    };
    Ok(ParetoAnalysis {
        baseline,
        optimum,
        witness,
    })
}

// Cell fractions become consecutive subintervals, players left to right by index.
fn materialize(
    cells: &CellDecomposition,
    n: usize,
    fractions: &[Rational],
    names: Vec<String>,
) -> Result<Allocation> {
    let m = cells.cell_count();
    let mut parts: Vec<Vec<Interval>> = vec![Vec::new(); n];
    for c in 0..m {
        let (lo, _) = cells.cell(c);
        let len = cells.cell_len(c);
        let mut cursor = lo.clone();
        for (i, part) in parts.iter_mut().enumerate() {
            let width = &fractions[i * m + c] * &len;
            if width.is_positive() {
                let next = &cursor + &width;
                part.push(Interval::new(cursor.clone(), next.clone())?);
                cursor = next;
            }
        }
    }
    Allocation::new(
        names,
        parts.into_iter().map(IntervalSet::from_intervals).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::registry::scenarios;
    use crate::rational::{int, ratio};

    #[test]
    fn cells_refine_all_breakpoints() {
        let s = scenarios::ce5();
        let cells = CellDecomposition::new(&s.densities(), [ratio(1, 5)]);
        assert_eq!(cells.cell_count(), 7);
        let total: Rational = (0..cells.cell_count()).map(|c| cells.cell_len(c)).sum();
        assert_eq!(total, int(1));
    }

    #[test]
    fn ce2_cut_and_choose_is_dominated() {
        let s = scenarios::ce2();
        let a = Allocation::contiguous(s.names(), &[ratio(1, 2)], &[0, 1]).unwrap();
        let w = pareto_improve(&s, &a).unwrap().expect("dominated");
        assert_eq!(w.allocation.values(&s.densities()), w.value_vector);
        assert!(w.gains.iter().all(|g| !g.is_negative()));
        assert!(w.gains.iter().any(|g| g.is_positive()));
    }

    #[test]
    fn identical_players_admit_no_improvement() {
        let s = scenarios::ce4();
        let a = Allocation::contiguous(s.names(), &[ratio(1, 7), ratio(3, 5)], &[2, 0, 1]).unwrap();
        assert_eq!(pareto_improve(&s, &a).unwrap(), None);
    }

    #[test]
    fn block_allocation_hits_utilitarian_bound() {
        let s = scenarios::ce6();
        assert_eq!(utilitarian_bound(&s.densities()), ratio(8, 5));
        let analysis =
            pareto_analyze(&s.densities(), &scenarios::ce6_block(), std::iter::empty()).unwrap();
        assert_eq!(analysis.optimum, int(0));
        assert!(analysis.witness.is_none());
    }
}

//! Dense two-phase primal simplex over exact rationals, Bland's rule throughout.
//!
//! Variables are implicitly nonnegative. The caller supplies a feasible seed
//! point; it is checked, and phase one then finds a starting basis.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintOp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub op: ConstraintOp,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, op: ConstraintOp, rhs: Rational) -> Self {
        Constraint { coeffs, op, rhs }
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.op {
            ConstraintOp::Le => lhs <= self.rhs,
            ConstraintOp::Ge => lhs >= self.rhs,
            ConstraintOp::Eq => lhs == self.rhs,
        }
    }
}

/// maximize `objective · x` subject to `constraints`, `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rational>) -> Self {
        LinearProgram {
            num_vars,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, op: ConstraintOp, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, op, rhs));
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    fn check_shape(&self) -> Result<()> {
        let bad = self.objective.len() != self.num_vars
            || self
                .constraints
                .iter()
                .any(|c| c.coeffs.len() != self.num_vars);
        if bad {
            return Err(Error::Domain(
                "linear program rows do not match the variable count".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: Rational,
    pub point: Vec<Rational>,
}

pub fn simplex_max(lp: &LinearProgram, seed: &[Rational]) -> Result<LpSolution> {
    lp.check_shape()?;
    if seed.len() != lp.num_vars {
        return Err(Error::Domain(format!(
            "seed has {} coordinates for {} variables",
            seed.len(),
            lp.num_vars
        )));
    }
    if let Some(j) = seed.iter().position(Signed::is_negative) {
        return Err(Error::InfeasibleSeed(format!("variable {j} is negative")));
    }
    if let Some(i) = lp.constraints.iter().position(|c| !c.satisfied_by(seed)) {
        return Err(Error::InfeasibleSeed(format!("constraint {i} is violated")));
    }

    let mut tab = Tableau::build(lp);
    let phase_one: Vec<Rational> = (0..tab.cols)
        .map(|j| {
            if tab.is_artificial(j) {
                -Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    tab.optimize(&phase_one, true)?;
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| tab.is_artificial(b))
        .map(|(i, _)| tab.rhs(i).clone())
        .sum();
    assert!(
        infeasibility.is_zero(),
        "phase one left infeasibility despite a feasible seed"
    );
    tab.expel_artificials();

    let mut phase_two = lp.objective.clone();
    phase_two.resize(tab.cols, Rational::zero());
    tab.optimize(&phase_two, false)?;

    let mut point = vec![Rational::zero(); lp.num_vars];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < lp.num_vars {
            point[b] = tab.rhs(i).clone();
        }
    }
    Ok(LpSolution {
        optimum: lp.objective_at(&point),
        point,
    })
}

struct Tableau {
    // rows × (cols + 1); last column is the right-hand side
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let m = lp.constraints.len();
        // normalize to rhs ≥ 0
        let normalized: Vec<(Vec<Rational>, ConstraintOp, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let op = match c.op {
                        ConstraintOp::Le => ConstraintOp::Ge,
                        ConstraintOp::Ge => ConstraintOp::Le,
                        ConstraintOp::Eq => ConstraintOp::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), op, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.op, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized
            .iter()
            .filter(|(_, op, _)| *op != ConstraintOp::Eq)
            .count();
        let artificials = normalized
            .iter()
            .filter(|(_, op, _)| *op != ConstraintOp::Le)
            .count();
        let first_artificial = n + slacks;
        let cols = first_artificial + artificials;
        let mut rows = vec![vec![Rational::zero(); cols + 1]; m];
        let mut basis = vec![0; m];
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (i, (coeffs, op, rhs)) in normalized.into_iter().enumerate() {
            rows[i][..n].clone_from_slice(&coeffs);
            rows[i][cols] = rhs;
            match op {
                ConstraintOp::Le => {
                    rows[i][next_slack] = Rational::from_integer(1.into());
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                ConstraintOp::Ge => {
                    rows[i][next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                    rows[i][next_art] = Rational::from_integer(1.into());
                    basis[i] = next_art;
                    next_art += 1;
                }
                ConstraintOp::Eq => {
                    rows[i][next_art] = Rational::from_integer(1.into());
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Tableau {
            rows,
            basis,
            cols,
            first_artificial,
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.first_artificial
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let basic: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .map(|(&b, row)| &cost[b] * &row[j])
            .sum();
        &cost[j] - basic
    }

    fn optimize(&mut self, cost: &[Rational], allow_artificial: bool) -> Result<()> {
        loop {
            let entering = (0..self.cols)
                .filter(|&j| allow_artificial || !self.is_artificial(j))
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(row, e);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    // Pivots zero-level artificials out of the basis; rows with no other
    // support are redundant and dropped.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.is_artificial(self.basis[i]) {
                let replacement = (0..self.first_artificial)
                    .find(|&j| !self.rows[i][j].is_zero() && !self.basis.contains(&j));
                match replacement {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn unit_interval() {
        let mut lp = LinearProgram::new(1, vec![int(1)]);
        lp.constrain(vec![int(1)], ConstraintOp::Le, int(1));
        let sol = simplex_max(&lp, &[int(0)]).unwrap();
        assert_eq!(sol.optimum, int(1));
        assert_eq!(sol.point, vec![int(1)]);
    }

    #[test]
    fn simplex_triangle() {
        let mut lp = LinearProgram::new(2, vec![int(1), int(1)]);
        lp.constrain(vec![int(1), int(1)], ConstraintOp::Le, ratio(3, 2));
        let sol = simplex_max(&lp, &[int(0), int(0)]).unwrap();
        assert_eq!(sol.optimum, ratio(3, 2));
        assert!(lp.constraints[0].satisfied_by(&sol.point));
    }

    #[test]
    fn equalities_and_lower_bounds() {
        // max x - y, x + y = 1, y >= 1/4
        let mut lp = LinearProgram::new(2, vec![int(1), int(-1)]);
        lp.constrain(vec![int(1), int(1)], ConstraintOp::Eq, int(1));
        lp.constrain(vec![int(0), int(1)], ConstraintOp::Ge, ratio(1, 4));
        let sol = simplex_max(&lp, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(sol.optimum, ratio(1, 2));
        assert_eq!(sol.point, vec![ratio(3, 4), ratio(1, 4)]);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2, vec![int(2), int(1)]);
        lp.constrain(vec![int(1), int(1)], ConstraintOp::Eq, int(1));
        lp.constrain(vec![int(2), int(2)], ConstraintOp::Eq, int(2));
        let sol = simplex_max(&lp, &[int(0), int(1)]).unwrap();
        assert_eq!(sol.optimum, int(2));
    }

    #[test]
    fn unbounded_is_reported() {
        let mut lp = LinearProgram::new(2, vec![int(1), int(0)]);
        lp.constrain(vec![int(1), int(-1)], ConstraintOp::Le, int(1));
        let err = simplex_max(&lp, &[int(0), int(0)]).unwrap_err();
        assert!(matches!(err, Error::Unbounded));
    }

    #[test]
    fn bad_seed_is_rejected() {
        let mut lp = LinearProgram::new(1, vec![int(1)]);
        lp.constrain(vec![int(1)], ConstraintOp::Le, int(1));
        assert!(matches!(
            simplex_max(&lp, &[int(2)]),
            Err(Error::InfeasibleSeed(_))
        ));
        assert!(matches!(
            simplex_max(&lp, &[int(-1)]),
            Err(Error::InfeasibleSeed(_))
        ));
        assert!(simplex_max(&lp, &[int(0), int(0)]).is_err());
    }
}

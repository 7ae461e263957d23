//! Property checks on allocations, scored with true measures that may differ
//! from the declared ones that drove the procedure.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::StepDensity;
use crate::procedures::{
    enumerate_tie_outcomes, run_procedure, run_procedure_with, Allocation, Player, ProcedureConfig,
    Scenario, TieRule,
};
use crate::rational::Rational;
use crate::solve::{pareto_analyze, DominationWitness};

/// True measures, one per scenario player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthProfile {
    densities: Vec<StepDensity>,
}

impl TruthProfile {
    pub fn new(s: &Scenario, densities: Vec<StepDensity>) -> Result<Self> {
        if densities.len() != s.len() {
            return Err(Error::InvalidScenario(format!(
                "truth profile has {} measures for {} players",
                densities.len(),
                s.len()
            )));
        }
        Ok(TruthProfile { densities })
    }

    /// Everyone truthful.
    pub fn declared(s: &Scenario) -> Self {
        TruthProfile {
            densities: s.players().iter().map(|p| p.declared.clone()).collect(),
        }
    }

    pub fn densities(&self) -> Vec<&StepDensity> {
        self.densities.iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Proportional,
    EnvyFree,
    ParetoOptimal,
    IdenticalMisreport,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Proportional => "proportional",
            CheckKind::EnvyFree => "envy-free",
            CheckKind::ParetoOptimal => "pareto-optimal",
            CheckKind::IdenticalMisreport => "strategy-proof",
        }
    }
}

/// Outcome of enumerating every resolution of the ties in one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieEnumeration {
    pub outcomes: usize,
    /// Smallest true value the distinguished player (player 0) gets in any branch.
    pub distinguished_min: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub check: CheckKind,
    pub players: Vec<String>,
    /// Each player's true value of their own portion.
    pub values: Vec<Rational>,
    /// Per-player verdicts; empty for whole-allocation checks.
    pub verdicts: Vec<bool>,
    pub holds: bool,
    pub value_matrix: Option<Vec<Vec<Rational>>>,
    pub witness: Option<DominationWitness>,
    pub lp_optimum: Option<Rational>,
    pub tie_enumeration: Option<TieEnumeration>,
}

impl PropertyReport {
    fn new(check: CheckKind, players: Vec<String>, values: Vec<Rational>) -> Self {
        PropertyReport {
            check,
            players,
            values,
            verdicts: Vec::new(),
            holds: true,
            value_matrix: None,
            witness: None,
            lp_optimum: None,
            tie_enumeration: None,
        }
    }
}

fn share(n: usize) -> Rational {
    Rational::new(1.into(), n.into())
}

fn checked<'a>(
    s: &Scenario,
    a: &Allocation,
    truth: &'a TruthProfile,
) -> Result<Vec<&'a StepDensity>> {
    a.check_against(s)?;
    let measures = truth.densities();
    if measures.len() != s.len() {
        return Err(Error::InvalidScenario(
            "truth profile does not match the scenario".into(),
        ));
    }
    Ok(measures)
}

/// Every player values their own portion at least `1/n`.
pub fn proportional_check(
    s: &Scenario,
    a: &Allocation,
    truth: &TruthProfile,
) -> Result<PropertyReport> {
    let measures = checked(s, a, truth)?;
    let fair = share(s.len());
    let mut report = PropertyReport::new(CheckKind::Proportional, s.names(), a.values(&measures));
    report.verdicts = report.values.iter().map(|v| v >= &fair).collect();
    report.holds = report.verdicts.iter().all(|&v| v);
    Ok(report)
}

/// No player values another portion above their own.
pub fn envy_free_check(
    s: &Scenario,
    a: &Allocation,
    truth: &TruthProfile,
) -> Result<PropertyReport> {
    let measures = checked(s, a, truth)?;
    let matrix = a.value_matrix(&measures);
    let own: Vec<Rational> = (0..s.len()).map(|i| matrix[i][i].clone()).collect();
    let mut report = PropertyReport::new(CheckKind::EnvyFree, s.names(), own);
    report.verdicts = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().all(|v| v <= &row[i]))
        .collect();
    report.holds = report.verdicts.iter().all(|&v| v);
    report.value_matrix = Some(matrix);
    Ok(report)
}

/// No allocation is at least as good for everyone and strictly better for someone.
pub fn pareto_optimal_check(
    s: &Scenario,
    a: &Allocation,
    truth: &TruthProfile,
) -> Result<PropertyReport> {
    let measures = checked(s, a, truth)?;
    let analysis = pareto_analyze(&measures, a, std::iter::empty())?;
    let mut report = PropertyReport::new(CheckKind::ParetoOptimal, s.names(), analysis.baseline);
    report.holds = analysis.witness.is_none();
    report.witness = analysis.witness;
    report.lp_optimum = Some(analysis.optimum);
    Ok(report)
}

/// Identical-misreport harness: all `n` players declare `misreport`, and each
/// portion is scored with `truth`. Since the portions partition the cake,
/// someone gets at most `1/n`, so nobody does assuredly better than a fair share.
///
/// Under a seeded tie rule every tie resolution is enumerated as well, and
/// some branch must leave player 0 with at most `1/n`.
pub fn identical_misreport_check(
    config: &ProcedureConfig,
    truth: &StepDensity,
    misreport: &StepDensity,
    n: usize,
) -> Result<PropertyReport> {
    let s = Scenario::numbered(vec![misreport.clone(); n])?;
    let fair = share(n);
    let outcome = run_procedure(&s, config)?;
    let values = outcome.allocation.values(&vec![truth; n]);
    let mut report = PropertyReport::new(CheckKind::IdenticalMisreport, s.names(), values);
    report.verdicts = report.values.iter().map(|v| v <= &fair).collect();
    report.holds = report.verdicts.iter().any(|&v| v);

    if matches!(config.tie, TieRule::Seeded(_)) {
        let branch_values = enumerate_tie_outcomes(|breaker| {
            let o = run_procedure_with(&s, config, breaker)?;
            Ok(truth.mass(o.allocation.portion(0)))
        })?;
        let distinguished_min = branch_values
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(Rational::one);
        let holds = distinguished_min <= fair;
        report.holds &= holds;
        report.tie_enumeration = Some(TieEnumeration {
            outcomes: branch_values.len(),
            distinguished_min,
            holds,
        });
    }
    Ok(report)
}

/// Player A's true value when A declares `declared_a` against an opponent declaring `opponent`.
fn value_for_a(
    config: &ProcedureConfig,
    truth_a: &StepDensity,
    declared_a: &StepDensity,
    opponent: &StepDensity,
) -> Result<Rational> {
    let s = Scenario::new(vec![
        Player {
            name: "A".into(),
            declared: declared_a.clone(),
        },
        Player {
            name: "B".into(),
            declared: opponent.clone(),
        },
    ])?;
    let outcome = run_procedure(&s, config)?;
    Ok(truth_a.mass(outcome.allocation.portion(0)))
}

/// A misreport that never hurts A and helps against at least one opponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationWitness {
    pub candidate: usize,
    pub misreport: StepDensity,
    /// A's true value when truthful, per opponent.
    pub truthful_values: Vec<Rational>,
    /// A's true value when misreporting, per opponent.
    pub manipulated_values: Vec<Rational>,
    /// Opponents against which the misreport is strictly better.
    pub strictly_better_against: Vec<usize>,
}

/// Weak manipulability of a two-player procedure, relative to the given
/// finite candidate and opponent sets only. Player A is player 0; the first
/// qualifying candidate (in list order) is returned.
pub fn weak_manipulation_search(
    config: &ProcedureConfig,
    truth_a: &StepDensity,
    candidates: &[StepDensity],
    opponents: &[StepDensity],
) -> Result<Option<ManipulationWitness>> {
    let truthful = opponents
        .par_iter()
        .map(|b| value_for_a(config, truth_a, truth_a, b))
        .collect::<Result<Vec<_>>>()?;
    let evaluated = candidates
        .par_iter()
        .enumerate()
        .map(|(ci, u)| -> Result<Option<ManipulationWitness>> {
            let manipulated = opponents
                .iter()
                .map(|b| value_for_a(config, truth_a, u, b))
                .collect::<Result<Vec<_>>>()?;
            let never_worse = manipulated.iter().zip(&truthful).all(|(m, t)| m >= t);
            let strictly: Vec<usize> = manipulated
                .iter()
                .zip(&truthful)
                .enumerate()
                .filter(|(_, (m, t))| (*m - *t).is_positive())
                .map(|(j, _)| j)
                .collect();
            Ok(
                (never_worse && !strictly.is_empty()).then(|| ManipulationWitness {
                    candidate: ci,
                    misreport: u.clone(),
                    truthful_values: truthful.clone(),
                    manipulated_values: manipulated,
                    strictly_better_against: strictly,
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(evaluated.into_iter().flatten().next())
}

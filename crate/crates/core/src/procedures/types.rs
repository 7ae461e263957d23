use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::measures::{Interval, IntervalSet, StepDensity};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Player {
    pub name: String,
    pub declared: StepDensity,
}

/// Ordered players with their declared measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    players: Vec<Player>,
}

impl Scenario {
    pub fn new(players: Vec<Player>) -> Result<Self> {
        if players.len() < 2 {
            return Err(Error::InvalidScenario(format!(
                "need at least two players, got {}",
                players.len()
            )));
        }
        let mut seen = HashSet::new();
        for p in &players {
            if p.name.is_empty() {
                return Err(Error::InvalidScenario("empty player name".into()));
            }
            if !seen.insert(p.name.as_str()) {
                return Err(Error::InvalidScenario(format!(
                    "duplicate player name {:?}",
                    p.name
                )));
            }
        }
        Ok(Scenario { players })
    }

    /// Players named `"1"`, `"2"`, … in order.
    pub fn numbered(densities: Vec<StepDensity>) -> Result<Self> {
        Scenario::new(
            densities
                .into_iter()
                .enumerate()
                .map(|(i, declared)| Player {
                    name: (i + 1).to_string(),
                    declared,
                })
                .collect(),
        )
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn len(&self) -> usize {
        self.players.len()
    }

    pub fn is_empty(&self) -> bool {
        self.players.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.players.iter().map(|p| p.name.clone()).collect()
    }

    pub fn densities(&self) -> Vec<&StepDensity> {
        self.players.iter().map(|p| &p.declared).collect()
    }

    pub fn density(&self, player: usize) -> &StepDensity {
        &self.players[player].declared
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p.name == name)
    }

    /// Same players, declared measures replaced.
    pub fn with_densities(&self, densities: Vec<StepDensity>) -> Result<Self> {
        if densities.len() != self.players.len() {
            return Err(Error::InvalidScenario(format!(
                "expected {} densities, got {}",
                self.players.len(),
                densities.len()
            )));
        }
        Ok(Scenario {
            players: self
                .players
                .iter()
                .zip(densities)
                .map(|(p, declared)| Player {
                    name: p.name.clone(),
                    declared,
                })
                .collect(),
        })
    }

    pub fn ordering_names(&self, ordering: &[usize]) -> Vec<String> {
        ordering
            .iter()
            .map(|&i| self.players[i].name.clone())
            .collect()
    }

    pub(crate) fn check_ordering(&self, ordering: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.len()];
        if ordering.len() != self.len() {
            return Err(Error::InvalidScenario(format!(
                "ordering has {} entries for {} players",
                ordering.len(),
                self.len()
            )));
        }
        for &i in ordering {
            if i >= self.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidScenario(format!(
                    "ordering {ordering:?} is not a permutation"
                )));
            }
        }
        Ok(())
    }
}

/// Each player's share of the cake, indexed like the scenario's players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    names: Vec<String>,
    portions: Vec<IntervalSet>,
}

impl Allocation {
    /// Builds and checks that the portions form a partition of `[0,1]`.
    pub fn new(names: Vec<String>, portions: Vec<IntervalSet>) -> Result<Self> {
        let a = Allocation { names, portions };
        a.check_partition()?;
        Ok(a)
    }

    /// Consecutive pieces between `cuts`, piece `k` going to `ordering[k]`.
    pub fn contiguous(names: Vec<String>, cuts: &[Rational], ordering: &[usize]) -> Result<Self> {
        if cuts.len() + 1 != ordering.len() || ordering.len() != names.len() {
            return Err(Error::InvalidAllocation(format!(
                "{} cuts cannot split the cake among {} players",
                cuts.len(),
                names.len()
            )));
        }
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(Rational::zero());
        bounds.extend(cuts.iter().cloned());
        bounds.push(Rational::one());
        let mut portions = vec![IntervalSet::empty(); names.len()];
        for (k, w) in bounds.windows(2).enumerate() {
            let iv = Interval::new(w[0].clone(), w[1].clone()).map_err(|_| {
                Error::InvalidAllocation(format!("cuts are not sorted within [0,1]: {cuts:?}"))
            })?;
            let owner = ordering[k];
            portions[owner] = portions[owner].union(&IntervalSet::from_interval(iv));
        }
        Allocation::new(names, portions)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn portions(&self) -> &[IntervalSet] {
        &self.portions
    }

    pub fn portion(&self, player: usize) -> &IntervalSet {
        &self.portions[player]
    }

    pub fn portion_by_name(&self, name: &str) -> Option<&IntervalSet> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.portions[i])
    }

    pub fn len(&self) -> usize {
        self.portions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.portions.is_empty()
    }

    /// Interior-disjoint portions covering `[0,1]`.
    pub fn check_partition(&self) -> Result<()> {
        if self.names.len() != self.portions.len() {
            return Err(Error::InvalidAllocation(
                "names and portions differ in length".into(),
            ));
        }
        let union = self
            .portions
            .iter()
            .fold(IntervalSet::empty(), |acc, p| acc.union(p));
        if union != IntervalSet::unit() {
            return Err(Error::InvalidAllocation(format!(
                "portions cover {union}, not [0, 1]"
            )));
        }
        let total: Rational = self.portions.iter().map(IntervalSet::len).sum();
        if !total.is_one() {
            return Err(Error::InvalidAllocation(
                "portions overlap on a set of positive length".into(),
            ));
        }
        Ok(())
    }

    /// Checks the allocation names exactly the scenario's players, in order.
    pub fn check_against(&self, scenario: &Scenario) -> Result<()> {
        if self.names != scenario.names() {
            return Err(Error::InvalidAllocation(format!(
                "allocation players {:?} do not match scenario players {:?}",
                self.names,
                scenario.names()
            )));
        }
        self.check_partition()
    }

    /// Value of each player's own portion under the matching measure.
    pub fn values(&self, measures: &[&StepDensity]) -> Vec<Rational> {
        self.portions
            .iter()
            .zip(measures)
            .map(|(set, d)| d.mass(set))
            .collect()
    }

    /// `matrix[i][j]` = player `i`'s value of player `j`'s portion.
    pub fn value_matrix(&self, measures: &[&StepDensity]) -> Vec<Vec<Rational>> {
        measures
            .iter()
            .map(|d| self.portions.iter().map(|set| d.mass(set)).collect())
            .collect()
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, p)) in self.names.iter().zip(&self.portions).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{n} ← {p}")?;
        }
        Ok(())
    }
}

/// How simultaneous calls (or any other exact ties) are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieRule {
    #[default]
    LowestIndex,
    Seeded(u64),
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "lowest" {
            return Ok(TieRule::LowestIndex);
        }
        s.strip_prefix("seed:")
            .and_then(|n| n.parse().ok())
            .map(TieRule::Seeded)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "tie rule {s:?} is neither `lowest` nor `seed:<u64>`"
                ))
            })
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieRule::LowestIndex => f.write_str("lowest"),
            TieRule::Seeded(s) => write!(f, "seed:{s}"),
        }
    }
}

/// A recorded tie: where it happened, who (or what) was tied and who won.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieEvent {
    pub subject: TieSubject,
    pub location: Rational,
    pub tied: Vec<String>,
    pub winner: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieSubject {
    /// Several players call at the same knife position.
    KnifeCall,
    /// The chooser values both pieces equally.
    ChooserSide,
    /// Both players share a median point; decides who takes the left side.
    MedianOrder,
    /// Several orderings reach the same maximal common value.
    Ordering,
}

impl TieSubject {
    pub fn as_str(&self) -> &'static str {
        match self {
            TieSubject::KnifeCall => "knife-call",
            TieSubject::ChooserSide => "chooser-side",
            TieSubject::MedianOrder => "median-order",
            TieSubject::Ordering => "ordering",
        }
    }
}

/// Result of running a procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureOutcome {
    pub procedure: ProcedureKind,
    pub allocation: Allocation,
    pub cuts: Vec<Rational>,
    /// Left-to-right owners of the contiguous pieces.
    pub ordering: Vec<usize>,
    pub common_value: Option<Rational>,
    pub tie_events: Vec<TieEvent>,
    pub notes: Vec<String>,
}

impl ProcedureOutcome {
    pub fn declared_values(&self, scenario: &Scenario) -> Vec<Rational> {
        self.allocation.values(&scenario.densities())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurplusVariant {
    /// Cut `e` with equal surplus masses.
    Equitable,
    /// Cut with equal surplus proportions.
    Proportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcedureKind {
    CutAndChoose,
    MovingKnife,
    Surplus(SurplusVariant),
    Equitability,
}

impl ProcedureKind {
    pub const ALL: [ProcedureKind; 5] = [
        ProcedureKind::CutAndChoose,
        ProcedureKind::MovingKnife,
        ProcedureKind::Surplus(SurplusVariant::Equitable),
        ProcedureKind::Surplus(SurplusVariant::Proportional),
        ProcedureKind::Equitability,
    ];

    /// CLI spelling.
    pub fn as_str(&self) -> &'static str {
        match self {
            ProcedureKind::CutAndChoose => "cut-choose",
            ProcedureKind::MovingKnife => "moving-knife",
            ProcedureKind::Surplus(SurplusVariant::Equitable) => "sp-e",
            ProcedureKind::Surplus(SurplusVariant::Proportional) => "sp-p",
            ProcedureKind::Equitability => "ep",
        }
    }

    pub fn two_player_only(&self) -> bool {
        matches!(
            self,
            ProcedureKind::CutAndChoose | ProcedureKind::Surplus(_)
        )
    }
}

impl FromStr for ProcedureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProcedureKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown procedure {s:?}")))
    }
}

impl fmt::Display for ProcedureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully configured procedure run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProcedureConfig {
    pub kind: ProcedureKind,
    pub strict: bool,
    /// Cutter for cut-and-choose; player 0 when absent.
    pub cutter: Option<usize>,
    pub tie: TieRule,
}

impl ProcedureConfig {
    pub fn new(kind: ProcedureKind) -> Self {
        ProcedureConfig {
            kind,
            strict: false,
            cutter: None,
            tie: TieRule::LowestIndex,
        }
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn cutter(mut self, cutter: usize) -> Self {
        self.cutter = Some(cutter);
        self
    }

    pub fn tie(mut self, tie: TieRule) -> Self {
        self.tie = tie;
        self
    }
}

//! Machine-readable reports. Every rational appears as `"p/q (decimal)"`.

use serde::Serialize;

use super::document::{to_json, SCHEMA};
use super::registry::CaseReport;
use crate::error::Error;
use crate::measures::IntervalSet;
use crate::procedures::{ProcedureOutcome, Scenario};
use crate::rational::{display_with_decimal, Rational};
use crate::verify::{ManipulationWitness, PropertyReport};

fn rat(r: &Rational) -> String {
    display_with_decimal(r)
}

fn rats(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(rat).collect()
}

fn set_text(s: &IntervalSet) -> String {
    s.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortionLine {
    pub player: String,
    pub portion: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TieLine {
    pub subject: &'static str,
    pub location: String,
    pub tied: Vec<String>,
    pub winner: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeEntry {
    pub procedure: String,
    pub cuts: Vec<String>,
    pub ordering: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_value: Option<String>,
    pub portions: Vec<PortionLine>,
    pub tie_events: Vec<TieLine>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyEntry {
    pub check: &'static str,
    pub holds: bool,
    pub players: Vec<String>,
    pub values: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_optimum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_outcomes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguished_min: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessLine {
    pub portions: Vec<PortionLine>,
    pub gains: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorEntry {
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub infeasible_orderings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseEntry {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManipulationEntry {
    pub player: String,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    pub truthful_values: Vec<String>,
    pub manipulated_values: Vec<String>,
    pub strictly_better_against: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportEntry {
    Outcome(OutcomeEntry),
    Property(PropertyEntry),
    Error(ErrorEntry),
    Counterexample(CaseEntry),
    Manipulation(ManipulationEntry),
}

impl ReportEntry {
    pub fn outcome(s: &Scenario, o: &ProcedureOutcome) -> Self {
        let values = o.declared_values(s);
        ReportEntry::Outcome(OutcomeEntry {
            procedure: o.procedure.as_str().into(),
            cuts: rats(&o.cuts),
            ordering: s.ordering_names(&o.ordering),
            common_value: o.common_value.as_ref().map(rat),
            portions: portion_lines(s.names(), o.allocation.portions(), &values),
            tie_events: o
                .tie_events
                .iter()
                .map(|t| TieLine {
                    subject: t.subject.as_str(),
                    location: rat(&t.location),
                    tied: t.tied.clone(),
                    winner: t.winner.clone(),
                })
                .collect(),
            notes: o.notes.clone(),
        })
    }

    pub fn property(r: &PropertyReport) -> Self {
        ReportEntry::Property(PropertyEntry {
            check: r.check.as_str(),
            holds: r.holds,
            players: r.players.clone(),
            values: rats(&r.values),
            verdicts: r.verdicts.clone(),
            value_matrix: r
                .value_matrix
                .as_ref()
                .map(|m| m.iter().map(|row| rats(row)).collect()),
            lp_optimum: r.lp_optimum.as_ref().map(rat),
            witness: r.witness.as_ref().map(|w| WitnessLine {
                portions: portion_lines(
                    w.allocation.names().to_vec(),
                    w.allocation.portions(),
                    &w.value_vector,
                ),
                gains: rats(&w.gains),
            }),
            tie_outcomes: r.tie_enumeration.as_ref().map(|t| t.outcomes),
            distinguished_min: r
                .tie_enumeration
                .as_ref()
                .map(|t| rat(&t.distinguished_min)),
        })
    }

    pub fn error(e: &Error) -> Self {
        let infeasible_orderings = match e {
            Error::EpUndefined { infeasible } => infeasible
                .iter()
                .map(|o| format!("({})", o.join(",")))
                .collect(),
            _ => Vec::new(),
        };
        ReportEntry::Error(ErrorEntry {
            code: e.code(),
            message: e.to_string(),
            infeasible_orderings,
        })
    }

    pub fn case(c: &CaseReport) -> Self {
        ReportEntry::Counterexample(CaseEntry {
            id: c.id,
            title: c.title.clone(),
            passed: c.passed(),
            checks: c
                .checks
                .iter()
                .map(|k| CheckLine {
                    field: k.field.clone(),
                    expected: k.expected.clone(),
                    actual: k.actual.clone(),
                    ok: k.ok,
                    source: k.source.clone(),
                })
                .collect(),
        })
    }

    pub fn manipulation(
        player: &str,
        opponents: &[String],
        candidates: &[String],
        found: Option<&ManipulationWitness>,
    ) -> Self {
        ReportEntry::Manipulation(match found {
            Some(w) => ManipulationEntry {
                player: player.into(),
                found: true,
                candidate: candidates.get(w.candidate).cloned(),
                truthful_values: rats(&w.truthful_values),
                manipulated_values: rats(&w.manipulated_values),
                strictly_better_against: w
                    .strictly_better_against
                    .iter()
                    .map(|&j| opponents[j].clone())
                    .collect(),
            },
            None => ManipulationEntry {
                player: player.into(),
                found: false,
                candidate: None,
                truthful_values: Vec::new(),
                manipulated_values: Vec::new(),
                strictly_better_against: Vec::new(),
            },
        })
    }
}

fn portion_lines(
    names: Vec<String>,
    portions: &[IntervalSet],
    values: &[Rational],
) -> Vec<PortionLine> {
    names
        .into_iter()
        .zip(portions)
        .zip(values)
        .map(|((player, set), v)| PortionLine {
            player,
            portion: set_text(set),
            value: rat(v),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub entries: Vec<ReportEntry>,
}

/// Deterministic JSON report for the given entries.
pub fn emit_report(entries: Vec<ReportEntry>) -> String {
    to_json(&Report {
        schema: SCHEMA,
        entries,
    })
}

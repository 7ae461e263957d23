//! JSON scenario, profile and allocation documents (`fairslice/1`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{DensityPiece, Interval, IntervalSet, StepDensity};
use crate::procedures::{Allocation, Player, ProcedureConfig, ProcedureKind, Scenario, TieRule};
use crate::rational::Rational;
use crate::verify::TruthProfile;

pub const SCHEMA: &str = "fairslice/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerEntry {
    pub name: String,
    pub density: Vec<DensityPiece>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcedureEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub schema: String,
    pub players: Vec<PlayerEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub procedure: Option<ProcedureEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<Vec<PlayerEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalEntry {
    #[serde(with = "crate::rational::serde_string")]
    pub from: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub to: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortionEntry {
    pub player: String,
    pub intervals: Vec<IntervalEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub schema: String,
    pub portions: Vec<PortionEntry>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn check_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::Parse {
            location: "schema".into(),
            message: format!("unsupported schema {schema:?}, expected {SCHEMA:?}"),
        });
    }
    Ok(())
}

/// Pretty JSON with a trailing newline; stable for identical input.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn parse_scenario_document(text: &str) -> Result<ScenarioDocument> {
    let doc: ScenarioDocument = parse_json(text)?;
    check_schema(&doc.schema)?;
    Ok(doc)
}

fn density_of(entry: &PlayerEntry) -> Result<StepDensity> {
    StepDensity::new(entry.density.clone()).map_err(|e| match e {
        Error::InvalidDensity { violation, .. } => Error::InvalidDensity {
            player: Some(entry.name.clone()),
            violation,
        },
        other => other,
    })
}

fn players_of(entries: &[PlayerEntry]) -> Result<Vec<Player>> {
    entries
        .iter()
        .map(|e| {
            Ok(Player {
                name: e.name.clone(),
                declared: density_of(e)?,
            })
        })
        .collect()
}

/// Exact parse plus density validation.
pub fn load_scenario(doc: &ScenarioDocument) -> Result<Scenario> {
    check_schema(&doc.schema)?;
    Scenario::new(players_of(&doc.players)?)
}

pub fn load_scenario_str(text: &str) -> Result<Scenario> {
    load_scenario(&parse_scenario_document(text)?)
}

/// Named densities from a document's `players` list, with no minimum count.
/// Used for truth profiles and for candidate/opponent sets.
pub fn load_profile_str(text: &str) -> Result<Vec<Player>> {
    players_of(&parse_scenario_document(text)?.players)
}

pub fn player_entry(p: &Player) -> PlayerEntry {
    PlayerEntry {
        name: p.name.clone(),
        density: p.declared.pieces().to_vec(),
    }
}

pub fn scenario_document(s: &Scenario) -> ScenarioDocument {
    ScenarioDocument {
        schema: SCHEMA.into(),
        players: s.players().iter().map(player_entry).collect(),
        procedure: None,
        truth: None,
    }
}

pub fn save_scenario(s: &Scenario) -> String {
    to_json(&scenario_document(s))
}

/// Truth measures matched to scenario players by name; every player must appear once.
pub fn truth_from_players(s: &Scenario, players: &[Player]) -> Result<TruthProfile> {
    let mut densities = Vec::with_capacity(s.len());
    for p in s.players() {
        let matches: Vec<&Player> = players.iter().filter(|t| t.name == p.name).collect();
        match matches.as_slice() {
            [one] => densities.push(one.declared.clone()),
            [] => {
                return Err(Error::InvalidScenario(format!(
                    "truth profile lacks player {:?}",
                    p.name
                )))
            }
            _ => {
                return Err(Error::InvalidScenario(format!(
                    "truth profile names player {:?} twice",
                    p.name
                )))
            }
        }
    }
    if players.len() != s.len() {
        return Err(Error::InvalidScenario(
            "truth profile names players outside the scenario".into(),
        ));
    }
    TruthProfile::new(s, densities)
}

/// The embedded truth profile, if the document carries one.
pub fn embedded_truth(doc: &ScenarioDocument, s: &Scenario) -> Result<Option<TruthProfile>> {
    doc.truth
        .as_ref()
        .map(|entries| truth_from_players(s, &players_of(entries)?))
        .transpose()
}

/// The embedded procedure block, if any.
pub fn embedded_procedure(doc: &ScenarioDocument, s: &Scenario) -> Result<Option<ProcedureConfig>> {
    let Some(p) = &doc.procedure else {
        return Ok(None);
    };
    let kind: ProcedureKind = p.name.parse()?;
    let mut config = ProcedureConfig::new(kind).strict(p.strict);
    if let Some(c) = &p.cutter {
        let idx = s
            .index_of(c)
            .ok_or_else(|| Error::InvalidScenario(format!("unknown cutter {c:?}")))?;
        config = config.cutter(idx);
    }
    if let Some(t) = &p.tie {
        config = config.tie(t.parse::<TieRule>()?);
    }
    Ok(Some(config))
}

pub fn allocation_document(a: &Allocation) -> AllocationDocument {
    AllocationDocument {
        schema: SCHEMA.into(),
        portions: a
            .names()
            .iter()
            .zip(a.portions())
            .map(|(name, set)| PortionEntry {
                player: name.clone(),
                intervals: set
                    .intervals()
                    .iter()
                    .map(|iv| IntervalEntry {
                        from: iv.lo().clone(),
                        to: iv.hi().clone(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn save_allocation(a: &Allocation) -> String {
    to_json(&allocation_document(a))
}

/// Parses an allocation and orders its portions like the scenario's players.
/// Players missing from the document receive nothing.
pub fn load_allocation_str(text: &str, s: &Scenario) -> Result<Allocation> {
    let doc: AllocationDocument = parse_json(text)?;
    check_schema(&doc.schema)?;
    let mut portions = vec![IntervalSet::empty(); s.len()];
    let mut seen = vec![false; s.len()];
    for entry in &doc.portions {
        let i = s.index_of(&entry.player).ok_or_else(|| {
            Error::InvalidAllocation(format!("unknown player {:?}", entry.player))
        })?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidAllocation(format!(
                "player {:?} listed twice",
                entry.player
            )));
        }
        let ivs = entry
            .intervals
            .iter()
            .map(|iv| Interval::new(iv.from.clone(), iv.to.clone()))
            .collect::<Result<Vec<_>>>()?;
        portions[i] = IntervalSet::from_intervals(ivs);
    }
    Allocation::new(s.names(), portions)
}

use super::registry::{case, run_counterexample, scenarios};

#[test]
fn every_counterexample_matches() {
    for id in 1..=6 {
        let report = run_counterexample(id).unwrap();
        for c in &report.checks {
            assert!(
                c.ok,
                "case {id} {}: expected {} got {}",
                c.field, c.expected, c.actual
            );
        }
    }
}

#[test]
fn unknown_case_is_rejected() {
    assert!(case(0).is_err());
    assert!(case(7).is_err());
}

use super::document::{load_allocation_str, load_profile_str, save_allocation};
use super::{emit_report, load_scenario_str, save_scenario, ReportEntry};
use crate::error::Error;
use crate::procedures::{equitability, TieRule};
use crate::rational::ratio;

const UNIFORM_PAIR: &str = r#"{
  "schema": "fairslice/1",
  "players": [
    {"name": "1", "density": [{"from": 0, "to": 1, "density": "1"}]},
    {"name": "2", "density": [{"from": "0", "to": "1/4", "density": 2},
                              {"from": "1/4", "to": "3/4", "density": 0},
                              {"from": "3/4", "to": "1", "density": "2"}]}
  ]
}"#;

#[test]
fn loads_exact_rationals() {
    let s = load_scenario_str(UNIFORM_PAIR).unwrap();
    assert_eq!(s.names(), vec!["1", "2"]);
    let m = s.density(1).median_interval();
    assert_eq!((m.lo().clone(), m.hi().clone()), (ratio(1, 4), ratio(3, 4)));
    let text = save_scenario(&s);
    assert_eq!(load_scenario_str(&text).unwrap(), s);
    assert_eq!(save_scenario(&load_scenario_str(&text).unwrap()), text);
}

#[test]
fn single_player_is_a_profile_not_a_scenario() {
    let one = r#"{"schema": "fairslice/1", "players": [{"name": "x", "density": [{"from": 0, "to": 1, "density": 1}]}]}"#;
    assert!(matches!(
        load_scenario_str(one),
        Err(Error::InvalidScenario(_))
    ));
    let players = load_profile_str(one).unwrap();
    assert_eq!(players[0].declared, crate::measures::StepDensity::uniform());
}

#[test]
fn rejects_negative_density_and_floats() {
    let neg = UNIFORM_PAIR.replace(r#""density": "1"}"#, r#""density": "-1"}"#);
    match load_scenario_str(&neg).unwrap_err() {
        Error::InvalidDensity { player, .. } => assert_eq!(player.as_deref(), Some("1")),
        e => panic!("unexpected {e}"),
    }
    let float = UNIFORM_PAIR.replace(r#""density": "1"}"#, r#""density": 1.0}"#);
    assert_eq!(load_scenario_str(&float).unwrap_err().code(), "PARSE_ERROR");
}

#[test]
fn parse_errors_carry_location() {
    match load_scenario_str("{\n  \"schema\": ").unwrap_err() {
        Error::Parse { location, .. } => assert!(location.starts_with("line 2")),
        e => panic!("unexpected {e}"),
    }
    let wrong = UNIFORM_PAIR.replace("fairslice/1", "fairslice/0");
    assert_eq!(load_scenario_str(&wrong).unwrap_err().code(), "PARSE_ERROR");
    let extra = UNIFORM_PAIR.replacen("\"players\"", "\"bogus\": 1, \"players\"", 1);
    assert!(load_scenario_str(&extra).is_err());
}

#[test]
fn allocations_round_trip() {
    let s = scenarios::ce5();
    let a = scenarios::ce5_block();
    assert_eq!(load_allocation_str(&save_allocation(&a), &s).unwrap(), a);
    let partial = r#"{"schema": "fairslice/1", "portions": [{"player": "A", "intervals": [{"from": 0, "to": "1/2"}]}]}"#;
    assert_eq!(
        load_allocation_str(partial, &s).unwrap_err().code(),
        "INVALID_ALLOCATION"
    );
}

#[test]
fn empty_report_has_schema() {
    let text = emit_report(Vec::new());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "fairslice/1");
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn report_shows_exact_and_decimal() {
    let s = scenarios::ce5();
    let o = equitability(&s, false, TieRule::LowestIndex).unwrap();
    let text = emit_report(vec![ReportEntry::outcome(&s, &o)]);
    assert!(text.contains("9/20 (0.45)"), "{text}");
}

#[test]
fn report_lists_infeasible_orderings() {
    let err = equitability(&scenarios::ce3(), true, TieRule::LowestIndex).unwrap_err();
    let text = emit_report(vec![ReportEntry::error(&err)]);
    assert!(text.contains("EP_UNDEFINED"));
    assert!(text.contains("(1,3,2)"), "{text}");
}

#[test]
fn mismatch_lists_fields() {
    let mut report = run_counterexample(2).unwrap();
    report.checks[0].ok = false;
    match report.ensure_passed().unwrap_err() {
        Error::Mismatch { case, fields } => {
            assert_eq!(case, 2);
            assert_eq!(fields, vec!["cut".to_string()]);
        }
        e => panic!("unexpected {e}"),
    }
}

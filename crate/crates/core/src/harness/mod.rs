//! Documents, the counterexample registry and reports.

pub mod document;
pub mod registry;
pub mod report;

pub use document::{
    load_allocation_str, load_profile_str, load_scenario, load_scenario_str,
    parse_scenario_document, save_allocation, save_scenario, scenario_document, ScenarioDocument,
    SCHEMA,
};
pub use registry::{run_counterexample, CaseReport, CounterexampleCase};
pub use report::{emit_report, ReportEntry};

#[cfg(test)]
mod tests;

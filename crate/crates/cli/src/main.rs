use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use fairslice::harness::document::{
    embedded_procedure, embedded_truth, load_allocation_str, load_profile_str, save_allocation,
    truth_from_players,
};
use fairslice::harness::{
    emit_report, load_scenario, parse_scenario_document, run_counterexample, ReportEntry,
};
use fairslice::procedures::{run_procedure, ProcedureConfig, ProcedureKind, Scenario, TieRule};
use fairslice::verify::{
    envy_free_check, pareto_optimal_check, proportional_check, weak_manipulation_search,
    TruthProfile,
};
use fairslice::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_UNDEFINED: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "fairslice",
    version,
    about = "Exact cake-cutting procedures and property checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a procedure on a scenario and print the outcome report.
    Run {
        scenario: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        procedure: ProcedureKind,
        /// Refuse ill-defined steps instead of resolving them.
        #[arg(long)]
        strict: bool,
        /// Cutter for cut-and-choose (defaults to the first player).
        #[arg(long)]
        cutter: Option<String>,
        /// `lowest` or `seed:<u64>`.
        #[arg(long, default_value = "lowest", value_parser = parse_tie)]
        tie: TieRule,
        /// Also write the resulting allocation document here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check an allocation against declared or true measures.
    Verify {
        scenario: PathBuf,
        allocation: PathBuf,
        /// Players list with the true measures (defaults to the document's
        /// `truth` block, then to the declared measures).
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "proportional,envy,pareto"
        )]
        checks: Vec<Check>,
    },
    /// Reproduce a built-in counterexample; exits 4 on any mismatch.
    PaperCe {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
    },
    /// Search finite candidate misreports for a weak manipulation.
    Manipulate {
        /// Two-player scenario with a `procedure` block.
        scenario: PathBuf,
        #[arg(long)]
        player: String,
        /// Players list of candidate declarations.
        #[arg(long)]
        candidates: PathBuf,
        /// Players list of opponent declarations.
        #[arg(long)]
        opponents: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Proportional,
    Envy,
    Pareto,
}

fn parse_kind(s: &str) -> Result<ProcedureKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tie(s: &str) -> Result<TieRule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<(fairslice::harness::ScenarioDocument, Scenario)> {
    let doc = parse_scenario_document(&read(path)?)?;
    let s = load_scenario(&doc)?;
    Ok((doc, s))
}

fn player_index(s: &Scenario, name: &str) -> Result<usize, Error> {
    s.index_of(name)
        .ok_or_else(|| Error::InvalidScenario(format!("no player named {name:?}")))
}

fn run(
    scenario: &Path,
    kind: ProcedureKind,
    strict: bool,
    cutter: Option<&str>,
    tie: TieRule,
    output: Option<&Path>,
) -> anyhow::Result<u8> {
    let (_, s) = load(scenario)?;
    let mut config = ProcedureConfig::new(kind).strict(strict).tie(tie);
    if let Some(name) = cutter {
        config = config.cutter(player_index(&s, name)?);
    }
    match run_procedure(&s, &config) {
        Ok(o) => {
            print!("{}", emit_report(vec![ReportEntry::outcome(&s, &o)]));
            if let Some(path) = output {
                fs::write(path, save_allocation(&o.allocation))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(0)
        }
        Err(e) => {
            print!("{}", emit_report(vec![ReportEntry::error(&e)]));
            Err(e.into())
        }
    }
}

fn verify(
    scenario: &Path,
    allocation: &Path,
    truth: Option<&Path>,
    checks: &[Check],
) -> anyhow::Result<u8> {
    let (doc, s) = load(scenario)?;
    let a = load_allocation_str(&read(allocation)?, &s)?;
    let truth = match truth {
        Some(path) => truth_from_players(&s, &load_profile_str(&read(path)?)?)?,
        None => embedded_truth(&doc, &s)?.unwrap_or_else(|| TruthProfile::declared(&s)),
    };
    let mut entries = Vec::new();
    for check in checks {
        let report = match check {
            Check::Proportional => proportional_check(&s, &a, &truth)?,
            Check::Envy => envy_free_check(&s, &a, &truth)?,
            Check::Pareto => pareto_optimal_check(&s, &a, &truth)?,
        };
        entries.push(ReportEntry::property(&report));
    }
    print!("{}", emit_report(entries));
    Ok(0)
}

fn paper_ce(id: u8) -> anyhow::Result<u8> {
    let report = run_counterexample(id)?;
    print!("{}", emit_report(vec![ReportEntry::case(&report)]));
    for c in report.checks.iter().filter(|c| !c.ok) {
        eprintln!(
            "MISMATCH {}: expected {}, got {}",
            c.field, c.expected, c.actual
        );
    }
    Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
}

fn manipulate(
    scenario: &Path,
    player: &str,
    candidates: &Path,
    opponents: &Path,
) -> anyhow::Result<u8> {
    let (doc, s) = load(scenario)?;
    if s.len() != 2 {
        return Err(Error::InvalidScenario("manipulation search needs two players".into()).into());
    }
    let me = player_index(&s, player)?;
    let config = embedded_procedure(&doc, &s)?.ok_or_else(|| {
        Error::InvalidScenario("scenario has no procedure block to manipulate".into())
    })?;
    // the search seats the manipulator first
    let config = match config.cutter {
        Some(c) => config.clone().cutter(usize::from(c != me)),
        None if me == 1 => config.cutter(1),
        None => config,
    };
    let truth = embedded_truth(&doc, &s)?.unwrap_or_else(|| TruthProfile::declared(&s));
    let truth_a = truth.densities()[me].clone();
    let candidates = load_profile_str(&read(candidates)?)?;
    let opponents = load_profile_str(&read(opponents)?)?;
    let found = weak_manipulation_search(
        &config,
        &truth_a,
        &candidates
            .iter()
            .map(|p| p.declared.clone())
            .collect::<Vec<_>>(),
        &opponents
            .iter()
            .map(|p| p.declared.clone())
            .collect::<Vec<_>>(),
    )?;
    let names = |ps: &[fairslice::Player]| ps.iter().map(|p| p.name.clone()).collect::<Vec<_>>();
    print!(
        "{}",
        emit_report(vec![ReportEntry::manipulation(
            player,
            &names(&opponents),
            &names(&candidates),
            found.as_ref(),
        )])
    );
    Ok(0)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_procedure_undefined() => EXIT_UNDEFINED,
        Some(Error::Mismatch { .. }) => EXIT_MISMATCH,
        Some(e) if e.is_validation() => EXIT_VALIDATION,
        Some(_) => 1,
        // unreadable or unwritable files
        None => EXIT_VALIDATION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run {
            scenario,
            procedure,
            strict,
            cutter,
            tie,
            output,
        } => run(
            scenario,
            *procedure,
            *strict,
            cutter.as_deref(),
            *tie,
            output.as_deref(),
        ),
        Command::Verify {
            scenario,
            allocation,
            truth,
            checks,
        } => verify(scenario, allocation, truth.as_deref(), checks),
        Command::PaperCe { id } => paper_ce(*id),
        Command::Manipulate {
            scenario,
            player,
            candidates,
            opponents,
        } => manipulate(scenario, player, candidates, opponents),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

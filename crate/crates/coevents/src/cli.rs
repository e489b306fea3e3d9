//! Command-line front end. The binary is a thin wrapper over
//! [`cli_main`]; everything it prints comes from the library modules.
//!
//! Exit codes: 0 on success (including a blocked deduction, which is a
//! result, not an error), 1 when a scenario's expectations block is not
//! met, 2 on input errors.

use crate::coevent::enumerate_primitives;
use crate::deduction::{check_proof, semantic_crosscheck, SchemeProfile};
use crate::error::Result;
use crate::report::{run_scenario, RunOptions};
use crate::scenario::{
    builtin_proof_names, builtin_scenario_names, load_builtin_scenario, resolve_proof,
    resolve_scenario,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "coevents",
    version,
    about = "Quantal measures, precluded events, primitive coevents, and rule-profile deductions over finite history spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Classical,
    Multiplicative,
}

impl ProfileArg {
    fn profile(self) -> SchemeProfile {
        match self {
            ProfileArg::Classical => SchemeProfile::classical(),
            ProfileArg::Multiplicative => SchemeProfile::multiplicative(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline over a scenario and print a report.
    Run {
        /// Built-in scenario name or path to a scenario JSON file.
        scenario: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        /// Cross-check the enumeration against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Worker threads for the measure sweep.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the full measure table (all events) to a file as JSON lines.
        #[arg(long, value_name = "FILE")]
        full_mu_table: Option<PathBuf>,
    },
    /// Evaluate the measure of one event.
    Mu {
        scenario: String,
        /// Comma-separated history labels; an empty string is the empty event.
        #[arg(long)]
        event: String,
    },
    /// List the precluded events and their maximal antichain.
    Preclusions { scenario: String },
    /// Enumerate the primitive coevents.
    Primitives { scenario: String },
    /// Restrict every primitive coevent to a named partition.
    Classify {
        scenario: String,
        #[arg(long)]
        partition: String,
    },
    /// Check the separability conditions for a named bipartition.
    Separability {
        scenario: String,
        #[arg(long)]
        bipartition: String,
    },
    /// Replay a proof file under an inference-rule profile.
    Deduce {
        /// Built-in proof name or path to a proof JSON file.
        proof: String,
        #[arg(long, value_enum)]
        profile: ProfileArg,
        /// Cross-check every judgment against the primitive coevents of
        /// this scenario.
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Scenario utilities.
    Scenario {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// List the built-in scenarios and proofs.
    List,
}

/// Parses `argv` (including the program name) and runs one command.
pub fn cli_main<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Run {
            scenario,
            report,
            oracle,
            workers,
            full_mu_table,
        } => {
            let scenario = resolve_scenario(&scenario)?;
            let opts = RunOptions {
                oracle,
                workers,
                mu_table_path: full_mu_table,
            };
            let result = run_scenario(&scenario, &opts)?;
            match report {
                ReportFormat::Text => print!("{}", result.render_text()),
                ReportFormat::Json => print!("{}", result.to_json()),
            }
            Ok(if result.expectations_met() { 0 } else { 1 })
        }
        Command::Mu { scenario, event } => {
            let scenario = resolve_scenario(&scenario)?;
            let labels: Vec<&str> = if event.trim().is_empty() {
                Vec::new()
            } else {
                event.split(',').map(str::trim).collect()
            };
            let e = scenario.space.event_from_labels(labels)?;
            println!("{}", scenario.measure.mu(&e)?);
            Ok(0)
        }
        Command::Preclusions { scenario } => {
            let scenario = resolve_scenario(&scenario)?;
            let nulls = scenario.measure.enumerate_precluded()?;
            println!(
                "{} precluded events (of {})",
                nulls.precluded_count(),
                scenario.space.event_count()
            );
            if nulls.precluded_count() <= 64 {
                for e in nulls.precluded_events() {
                    println!("  {e}");
                }
            }
            println!("maximal antichain:");
            for e in nulls.maximal_events() {
                println!("  {e}");
            }
            Ok(0)
        }
        Command::Primitives { scenario } => {
            let scenario = resolve_scenario(&scenario)?;
            let nulls = scenario.measure.enumerate_precluded()?;
            let primitives = enumerate_primitives(&nulls)?;
            println!("{} primitive coevents", primitives.len());
            for phi in primitives.coevents() {
                let homomorphic = phi.is_homomorphic().homomorphic;
                println!(
                    "  {phi}   homomorphic: {}",
                    if homomorphic { "yes" } else { "no" }
                );
            }
            Ok(0)
        }
        Command::Classify {
            scenario,
            partition,
        } => {
            let scenario = resolve_scenario(&scenario)?;
            let p = scenario.partitions.get(&partition).ok_or_else(|| {
                crate::Error::Scenario(format!(
                    "scenario `{}` has no partition named `{partition}`",
                    scenario.name
                ))
            })?;
            let nulls = scenario.measure.enumerate_precluded()?;
            let primitives = enumerate_primitives(&nulls)?;
            for phi in primitives.coevents() {
                let report = crate::classicality::restrict_and_check(phi, p)?;
                match report.containing_block {
                    Some(block) => println!("{phi} -> classical, inside block {block}"),
                    None => println!("{phi} -> NOT classical (support straddles blocks)"),
                }
            }
            Ok(0)
        }
        Command::Separability {
            scenario,
            bipartition,
        } => {
            let scenario = resolve_scenario(&scenario)?;
            let b = scenario.bipartitions.get(&bipartition).ok_or_else(|| {
                crate::Error::Scenario(format!(
                    "scenario `{}` has no bipartition named `{bipartition}`",
                    scenario.name
                ))
            })?;
            let nulls = scenario.measure.enumerate_precluded()?;
            let t1 = crate::classicality::check_preclusion_splits_with_nulls(&nulls, b)?;
            match &t1.witness {
                None => println!("preclusion splits across the sides: holds"),
                Some(w) => println!("preclusion splits across the sides: FAILS (witness {w})"),
            }
            for (side, event) in [("one", b.one()), ("two", b.two())] {
                let t2 = crate::classicality::check_internal_cover_with_nulls(&nulls, event)?;
                match &t2.witness {
                    None => println!("internal cover on side {side} ({event}): holds"),
                    Some(w) => {
                        println!("internal cover on side {side} ({event}): FAILS (witness {w})")
                    }
                }
            }
            let primitives = enumerate_primitives(&nulls)?;
            let sep = crate::classicality::verify_separability(&primitives, b)?;
            if sep.holds {
                println!("every primitive support lies in one side");
            } else {
                for v in &sep.violators {
                    println!("straddling support: {v}");
                }
            }
            Ok(0)
        }
        Command::Deduce {
            proof,
            profile,
            scenario,
        } => {
            let proof = resolve_proof(&proof)?;
            let profile = profile.profile();
            let check = check_proof(&proof, &profile)?;
            println!(
                "proof `{}` under the {} profile",
                proof.name.as_deref().unwrap_or("unnamed"),
                check.profile
            );
            for (index, (step, verdict)) in proof.steps.iter().zip(&check.step_verdicts).enumerate()
            {
                println!(
                    "  {}: {} [{}] -> {}",
                    step.display_name(index),
                    step.conclude,
                    step.rule,
                    verdict
                );
            }
            println!("verdict: {}", check.verdict);
            if let Some(name) = scenario {
                let scenario = resolve_scenario(&name)?;
                let nulls = scenario.measure.enumerate_precluded()?;
                let crosscheck = semantic_crosscheck(&proof, &nulls)?;
                println!(
                    "semantic crosscheck against `{}` ({} primitive coevents):",
                    scenario.name, crosscheck.primitive_count
                );
                for entry in &crosscheck.entries {
                    println!(
                        "  {}: {} holds for {} of {}",
                        entry.source, entry.judgment, entry.satisfied, entry.total
                    );
                }
            }
            Ok(0)
        }
        Command::Scenario { command } => match command {
            ScenarioCommand::List => {
                println!("built-in scenarios:");
                for name in builtin_scenario_names() {
                    let scenario = load_builtin_scenario(name)?;
                    println!(
                        "  {name}  ({} histories, {} measure)",
                        scenario.space.size(),
                        scenario.measure.kind_name()
                    );
                }
                println!("built-in proofs:");
                for name in builtin_proof_names() {
                    println!("  {name}");
                }
                Ok(0)
            }
        },
    }
}

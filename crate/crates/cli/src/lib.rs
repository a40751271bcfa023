//! `vda`: solve, justify and explain the decisions of a value driven agent
//! described in a JSON file.

pub mod agent_file;
pub mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;
use vda_argumentation::aba::{self, DeriveOptions};
use vda_argumentation::explain::{explain_action, explain_situation, render_text};
use vda_argumentation::framework::{
    epistemic_reasoning, justify_situation, practical_reasoning, FrameworkError,
};
use vda_argumentation::oracle;
use vda_argumentation::semantics::{self, Semantics};
use vda_argumentation::vda;

use agent_file::{Input, LoadedAgent};
use report::{EpistemicReport, ExplainedItem, JustifyReport, SolveReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    /// A report was produced but the outcome is a domain failure.
    #[error("{message}")]
    DomainWithReport { report: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::DomainWithReport { .. } => 1,
            _ => 2,
        }
    }
}

impl From<FrameworkError> for CliError {
    fn from(e: FrameworkError) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Grounded => Semantics::Grounded,
            SemanticsArg::Complete => Semantics::Complete,
            SemanticsArg::Preferred => Semantics::Preferred,
            SemanticsArg::Stable => Semantics::Stable,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vda",
    version,
    about = "Argumentation-based decisions for value driven agents"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solutions and the annotated ethical ordering of a situation.
    Solve {
        file: PathBuf,
        situation: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rules, arguments, attacks, extensions and statuses.
    Justify {
        file: PathBuf,
        /// Required for agent files; ignored for ABA files.
        situation: Option<String>,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Grounded)]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the attack graph in DOT instead of the report.
        #[arg(long)]
        dot: bool,
    },
    /// Why actions (or perception assumptions) were accepted or rejected.
    Explain {
        file: PathBuf,
        situation: String,
        /// Explain one action; all actions when omitted.
        action: Option<String>,
        /// Explain the epistemic verdicts on the situation's perceptions.
        #[arg(long = "situation")]
        of_situation: bool,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Grounded)]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Adjudicate perceptions and rebuild the justified situation.
    Epistemic {
        file: PathBuf,
        /// Declared situation whose perceptions are used.
        situation: Option<String>,
        /// Comma-separated true perceptions, overriding SITUATION.
        #[arg(long, value_delimiter = ',')]
        perceptions: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Grounded)]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check solvers against brute force on seeded random instances.
    #[command(hide = true)]
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(value),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn agent_input(file: &Path) -> Result<Box<LoadedAgent>, CliError> {
    match agent_file::load(file)? {
        Input::Agent(a) => Ok(a),
        Input::Aba(_) => Err(CliError::Usage(format!(
            "{}: this command needs an agent file, not an ABA framework",
            file.display()
        ))),
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve {
            file,
            situation,
            format,
        } => {
            let a = agent_input(&file)?;
            let solutions = vda::solutions(&a.agent, &situation).map_err(domain)?;
            let ordering = vda::ethical_ordering(&a.agent, &situation).map_err(domain)?;
            let report = SolveReport {
                situation,
                solutions,
                ordering,
            };
            let out = emit(format, &report, SolveReport::text);
            if report.solutions.actions.is_empty() {
                return Err(CliError::DomainWithReport {
                    report: out,
                    message: "no solution".into(),
                });
            }
            Ok(out)
        }
        Command::Justify {
            file,
            situation,
            semantics,
            format,
            dot,
        } => {
            let report = match agent_file::load(&file)? {
                Input::Agent(a) => {
                    let sid = situation.ok_or_else(|| {
                        CliError::Usage("justify on an agent file needs a SITUATION".into())
                    })?;
                    let result = practical_reasoning(&a.agent, &sid, semantics.into())?;
                    JustifyReport::practical(&result, a.agent.language().actions())
                }
                Input::Aba(f) => {
                    let framework = aba::validate_framework(&f.aba).map_err(domain)?;
                    let aaf =
                        aba::build_aaf(&framework, &DeriveOptions::default()).map_err(domain)?;
                    let acceptance = semantics::acceptance_status(aaf.graph(), semantics.into())
                        .map_err(domain)?;
                    JustifyReport::plain(&framework, &aaf, &acceptance, &f.label_prefix)
                }
            };
            if dot {
                return Ok(report.graph.to_dot());
            }
            Ok(emit(format, &report, JustifyReport::text))
        }
        Command::Explain {
            file,
            situation,
            action,
            of_situation,
            semantics,
            format,
        } => {
            let a = agent_input(&file)?;
            let names = a.duty_names();
            let mut items = Vec::new();
            if of_situation {
                a.perceptions(&situation)?;
                let universe = a.agent.language().all_atoms();
                let result = epistemic_reasoning(&a.epistemic, &universe, semantics.into())?;
                for e in explain_situation(&result) {
                    let text = render_text(&e, names).map_err(domain)?;
                    items.push(ExplainedItem {
                        explanation: e,
                        text,
                    });
                }
            } else {
                let result = practical_reasoning(&a.agent, &situation, semantics.into())?;
                let actions: Vec<String> = match action {
                    Some(x) => vec![x],
                    None => a.agent.language().actions().to_vec(),
                };
                for x in &actions {
                    let e = explain_action(&result, &a.agent, x).map_err(domain)?;
                    let text = render_text(&e, names).map_err(|e| CliError::Schema {
                        path: file.display().to_string(),
                        message: e.to_string(),
                    })?;
                    items.push(ExplainedItem {
                        explanation: e,
                        text,
                    });
                }
            }
            Ok(emit(format, &items, |xs| {
                xs.iter()
                    .map(|i| i.text.as_str())
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
        Command::Epistemic {
            file,
            situation,
            perceptions,
            semantics,
            format,
        } => {
            let a = agent_input(&file)?;
            let given: BTreeSet<String> = match (perceptions, &situation) {
                (Some(ps), _) => ps.into_iter().filter(|p| !p.is_empty()).collect(),
                (None, Some(s)) => a.perceptions(s)?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "epistemic needs a SITUATION or --perceptions".into(),
                    ))
                }
            };
            let universe = a.agent.language().all_atoms();
            let ordered: Vec<String> = universe
                .iter()
                .filter(|u| given.contains(*u))
                .cloned()
                .collect();
            let result = epistemic_reasoning(&a.epistemic, &universe, semantics.into())?;
            let mut report = EpistemicReport::new(&result, ordered);
            let id = format!("{}^J", situation.as_deref().unwrap_or("S"));
            match justify_situation(&result, &given, &id) {
                Ok(js) => {
                    report.declared_match = a
                        .agent
                        .find_situation(&js.situation)
                        .map(|s| s.id().to_string());
                    report.justified_perceptions = Some(js.perceptions);
                    report.justified_situation = Some(js.situation.to_string());
                    Ok(emit(format, &report, EpistemicReport::text))
                }
                Err(FrameworkError::Indeterminate { undecided }) => {
                    let message = format!(
                        "situation cannot be justified: undecided assumptions {}",
                        undecided.join(", ")
                    );
                    report.undecided = undecided;
                    Err(CliError::DomainWithReport {
                        report: emit(format, &report, EpistemicReport::text),
                        message,
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::OracleCheck { seed, count } => Ok(oracle_check(seed, count)?),
    }
}

fn oracle_check(seed: u64, count: u64) -> Result<String, CliError> {
    let mut solution_mismatch = Vec::new();
    let mut split_grounded = Vec::new();
    let mut accept_mismatch = Vec::new();
    let mut semantics_mismatch = Vec::new();
    let mut singles = 0;
    for s in seed..seed + count {
        let inst = oracle::random_vda(&oracle::RandomVdaSpec::new(s));
        let result = practical_reasoning(&inst.agent, &inst.situation, Semantics::Complete)?;
        let solutions: BTreeSet<String> = result.solutions.actions.iter().cloned().collect();
        let brute = oracle::brute_force_solutions(&inst.agent, &inst.situation).map_err(domain)?;
        if solutions != brute {
            solution_mismatch.push(s);
        }
        if solutions.len() == 1 {
            singles += 1;
            let g = semantics::grounded(result.aaf.graph());
            let exts = &result.acceptance.extensions;
            if !(exts.len() == 1 && exts[0].members == g.members) {
                split_grounded.push(s);
            }
        }
        let credulous: BTreeSet<String> =
            result.credulously_accepted_actions().into_iter().collect();
        if credulous != solutions {
            accept_mismatch.push(s);
        }

        let graph = oracle::random_aaf(s, 12, 0.4);
        for sem in Semantics::ALL {
            let fast: BTreeSet<BTreeSet<usize>> = semantics::extensions(&graph, sem)
                .map_err(domain)?
                .into_iter()
                .map(|e| e.members)
                .collect();
            if fast != oracle::brute_force_extensions(&graph, sem).map_err(domain)? {
                semantics_mismatch.push((s, sem));
            }
        }
    }
    let head = |xs: &[u64]| -> String {
        let shown: Vec<String> = xs.iter().take(5).map(u64::to_string).collect();
        if shown.is_empty() {
            String::new()
        } else {
            format!(" (seeds {})", shown.join(", "))
        }
    };
    let mut out = format!("seeds {}..{}\n", seed, seed + count);
    out.push_str(&format!(
        "solutions vs brute force: {} mismatches{}\n",
        solution_mismatch.len(),
        head(&solution_mismatch)
    ));
    out.push_str(&format!(
        "semantics vs brute force: {} mismatches\n",
        semantics_mismatch.len()
    ));
    out.push_str(&format!(
        "single-solution instances without a unique complete extension equal to grounded: {} of {}{}\n",
        split_grounded.len(),
        singles,
        head(&split_grounded)
    ));
    out.push_str(&format!(
        "instances where solutions differ from credulously accepted actions: {}{}\n",
        accept_mismatch.len(),
        head(&accept_mismatch)
    ));
    if solution_mismatch.is_empty() && semantics_mismatch.is_empty() {
        Ok(out)
    } else {
        Err(CliError::DomainWithReport {
            report: out,
            message: "solver and oracle disagree".into(),
        })
    }
}

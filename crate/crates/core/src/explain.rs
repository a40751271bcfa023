//! Explanations of justified and rejected actions and of justified
//! situations, as structured records plus a deterministic text rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aba::{Aaf, AbaFramework, ArgumentId};
use crate::framework::{EpistemicResult, PracticalResult};
use crate::semantics::{AcceptanceStatus, Semantics};
use crate::vda::{Literal, VdaAgent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplainError {
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, ExplainError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "name", rename_all = "kebab-case")]
pub enum Subject {
    Action(String),
    Assumption(Literal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SkepticallyJustified,
    CredulouslyJustified,
    Rejected,
    /// The action satisfies no duty, so no argument concludes it.
    RejectedAPriori,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SkepticallyJustified => "skeptically justified",
            Verdict::CredulouslyJustified => "credulously justified",
            Verdict::Rejected => "rejected",
            Verdict::RejectedAPriori => "rejected a priori",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedArgument {
    pub id: ArgumentId,
    pub label: String,
    pub premises: Vec<String>,
    pub conclusion: String,
}

impl CitedArgument {
    fn new(aaf: &Aaf, f: &AbaFramework, prefix: &str, id: ArgumentId) -> Self {
        let arg = aaf.argument(id);
        CitedArgument {
            id,
            label: format!("{prefix}{id}"),
            premises: arg
                .premises()
                .iter()
                .map(|&s| f.name(s).to_string())
                .collect(),
            conclusion: f.name(arg.conclusion).to_string(),
        }
    }

    pub fn display(&self) -> String {
        format!(
            "{} = {{{}}} ⊢ {}",
            self.label,
            self.premises.join(", "),
            self.conclusion
        )
    }
}

/// The action whose vector, together with a disjunct, defeats the subject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rival {
    pub action: String,
    pub vector: Vec<i32>,
    pub disjunct: String,
    pub bounds: Vec<i32>,
}

/// One attacker of the subject's argument, relative to one extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    /// Index into the extension list of the accompanying result.
    pub extension: usize,
    pub attacker: CitedArgument,
    /// Members of the extension attacking `attacker` (justified subjects).
    pub defenders: Vec<CitedArgument>,
    pub rival: Option<Rival>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PracticalDetail {
    pub situation: String,
    pub duties: Vec<String>,
    pub vector: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explanation {
    pub subject: Subject,
    pub verdict: Verdict,
    pub semantics: Semantics,
    /// The assumption whose acceptance decides the verdict.
    pub assumption: Option<String>,
    pub argument: Option<CitedArgument>,
    /// Extensions (by index) containing `argument`.
    pub member_of: Vec<usize>,
    /// Every attacker of `argument`.
    pub attackers: Vec<CitedArgument>,
    /// Justified: per extension and attacker, the defenders. Rejected: per
    /// extension, one attacker inside it.
    pub citations: Vec<Citation>,
    pub detail: Option<PracticalDetail>,
}

struct View<'a> {
    aaf: &'a Aaf,
    framework: &'a AbaFramework,
    acceptance: &'a AcceptanceStatus,
    prefix: &'a str,
}

impl View<'_> {
    fn cite(&self, id: usize) -> CitedArgument {
        CitedArgument::new(self.aaf, self.framework, self.prefix, ArgumentId(id))
    }

    /// Verdict and citations for argument `x`. `rank` orders candidate
    /// attackers when one must be picked per extension.
    fn judge(
        &self,
        x: usize,
        rank: impl Fn(usize) -> (usize, String, usize),
    ) -> (Verdict, Vec<usize>, Vec<Citation>) {
        let graph = self.aaf.graph();
        let exts = &self.acceptance.extensions;
        let member_of: Vec<usize> = (0..exts.len()).filter(|&i| exts[i].contains(x)).collect();
        if exts.is_empty() {
            return (Verdict::Indeterminate, member_of, Vec::new());
        }
        if !member_of.is_empty() {
            let verdict = if member_of.len() == exts.len() {
                Verdict::SkepticallyJustified
            } else {
                Verdict::CredulouslyJustified
            };
            let mut citations = Vec::new();
            for &i in &member_of {
                for &y in graph.attackers(x) {
                    let defenders = graph
                        .attackers(y)
                        .iter()
                        .filter(|&&z| exts[i].contains(z))
                        .map(|&z| self.cite(z))
                        .collect();
                    citations.push(Citation {
                        extension: i,
                        attacker: self.cite(y),
                        defenders,
                        rival: None,
                    });
                }
            }
            return (verdict, member_of, citations);
        }
        let mut citations = Vec::new();
        for (i, e) in exts.iter().enumerate() {
            let chosen = graph
                .attackers(x)
                .iter()
                .copied()
                .filter(|&y| e.contains(y))
                .min_by_key(|&y| rank(y));
            match chosen {
                Some(y) => citations.push(Citation {
                    extension: i,
                    attacker: self.cite(y),
                    defenders: Vec::new(),
                    rival: None,
                }),
                None => return (Verdict::Indeterminate, member_of, Vec::new()),
            }
        }
        (Verdict::Rejected, member_of, citations)
    }
}

pub fn explain_action(
    result: &PracticalResult,
    agent: &VdaAgent,
    action: &str,
) -> Result<Explanation> {
    if !agent.language().actions().iter().any(|a| a == action) {
        return Err(ExplainError::UnknownAction(action.to_string()));
    }
    let pf = &result.framework;
    let matrix = agent
        .matrix(&pf.situation)
        .map_err(|e| ExplainError::Schema(e.to_string()))?;
    let vector_of = |a: &str| -> Vec<i32> {
        matrix
            .vector(a)
            .map(|v| v.values.clone())
            .unwrap_or_default()
    };
    let detail = Some(PracticalDetail {
        situation: pf.situation.clone(),
        duties: agent.language().duties().to_vec(),
        vector: vector_of(action),
    });
    let assumption = crate::framework::vector_sentence(&pf.situation, action);
    let semantics = result.acceptance.semantics;

    let Some(arg) = result.action_argument(action) else {
        return Ok(Explanation {
            subject: Subject::Action(action.to_string()),
            verdict: Verdict::RejectedAPriori,
            semantics,
            assumption: None,
            argument: None,
            member_of: Vec::new(),
            attackers: Vec::new(),
            citations: Vec::new(),
            detail,
        });
    };

    let view = View {
        aaf: &result.aaf,
        framework: &pf.framework,
        acceptance: &result.acceptance,
        prefix: "X",
    };
    let principle = agent.principle();
    let rule_of = |y: usize| {
        result
            .aaf
            .argument(ArgumentId(y))
            .top_rule()
            .and_then(|r| pf.principle_rule(r))
    };
    let rank = |y: usize| match rule_of(y) {
        Some(r) => (
            principle.position(&r.disjunct).unwrap_or(usize::MAX),
            r.preferred.clone(),
            y,
        ),
        None => (usize::MAX, String::new(), y),
    };
    let (verdict, member_of, mut citations) = view.judge(arg.0, rank);
    for c in &mut citations {
        c.rival = rule_of(c.attacker.id.0).map(|r| Rival {
            action: r.preferred.clone(),
            vector: vector_of(&r.preferred),
            disjunct: r.disjunct.clone(),
            bounds: principle
                .disjunct(&r.disjunct)
                .map(|d| d.bounds.clone())
                .unwrap_or_default(),
        });
    }
    let attackers = result
        .aaf
        .graph()
        .attackers(arg.0)
        .iter()
        .map(|&y| view.cite(y))
        .collect();
    Ok(Explanation {
        subject: Subject::Action(action.to_string()),
        verdict,
        semantics,
        assumption: Some(assumption),
        argument: Some(view.cite(arg.0)),
        member_of,
        attackers,
        citations,
        detail,
    })
}

/// One explanation per epistemic assumption, in declaration order.
pub fn explain_situation(result: &EpistemicResult) -> Vec<Explanation> {
    let view = View {
        aaf: &result.aaf,
        framework: &result.framework.framework,
        acceptance: &result.acceptance,
        prefix: "Y",
    };
    result
        .verdicts
        .iter()
        .map(|v| {
            let x = v.argument.0;
            let (verdict, member_of, citations) = view.judge(x, |y| (0, String::new(), y));
            Explanation {
                subject: Subject::Assumption(v.assumption.clone()),
                verdict,
                semantics: result.acceptance.semantics,
                assumption: Some(v.assumption.to_string()),
                argument: Some(view.cite(x)),
                member_of,
                attackers: result
                    .aaf
                    .graph()
                    .attackers(x)
                    .iter()
                    .map(|&y| view.cite(y))
                    .collect(),
                citations,
                detail: None,
            }
        })
        .collect()
}

fn extension_label(i: usize) -> String {
    format!("E{}", i + 1)
}

fn labels(args: &[CitedArgument]) -> String {
    let ls: Vec<&str> = args.iter().map(|a| a.label.as_str()).collect();
    match ls.as_slice() {
        [] => String::new(),
        [one] => one.to_string(),
        [init @ .., last] => format!("{} and {}", init.join(", "), last),
    }
}

fn vector_text(v: &[i32]) -> String {
    let parts: Vec<String> = v.iter().map(i32::to_string).collect();
    format!("({})", parts.join(", "))
}

fn duty_name<'a>(names: &'a BTreeMap<String, String>, duty: &'a str) -> &'a str {
    names.get(duty).map(String::as_str).unwrap_or(duty)
}

/// "satisfying X with degree 1 (ABBR: 1)" clauses for the given duties.
fn clauses(
    names: &BTreeMap<String, String>,
    duties: &[String],
    vector: &[i32],
    keep: &[usize],
    satisfied: bool,
) -> Vec<String> {
    keep.iter()
        .filter(|&&i| {
            if satisfied {
                vector[i] > 0
            } else {
                vector[i] < 0
            }
        })
        .map(|&i| {
            format!(
                "{} with degree {} ({}: {})",
                duty_name(names, &duties[i]),
                vector[i],
                duties[i],
                vector[i]
            )
        })
        .collect()
}

fn profile(action: &str, duties: &[String], vector: &[i32], keep: &[usize]) -> String {
    let parts: Vec<String> = keep
        .iter()
        .filter(|&&i| vector[i] != 0)
        .map(|&i| format!("{}:{}", duties[i], vector[i]))
        .collect();
    format!("{action}{{{}}}", parts.join(", "))
}

fn and_list(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {}", init.join(", "), last),
    }
}

fn rivalry_text(
    names: &BTreeMap<String, String>,
    detail: &PracticalDetail,
    subject: &str,
    rival: &Rival,
) -> String {
    let duties = &detail.duties;
    let differing: Vec<usize> = (0..duties.len())
        .filter(|&i| rival.vector[i] != detail.vector[i])
        .collect();
    if differing.is_empty() {
        return format!(
            "No duty differentiates {} from {subject}; {} admits the pair as it stands.",
            rival.action, rival.disjunct
        );
    }
    let mut out = format!(
        "Differing duties: {} vs {}. ",
        profile(&rival.action, duties, &rival.vector, &differing),
        profile(subject, duties, &detail.vector, &differing)
    );
    let side = |vector: &[i32], mid_sentence: bool| -> String {
        let sat = clauses(names, duties, vector, &differing, true);
        let vio = clauses(names, duties, vector, &differing, false);
        match (sat.is_empty(), vio.is_empty()) {
            (false, true) => format!("satisfying {}", and_list(&sat)),
            (true, false) => format!("violating {}", and_list(&vio)),
            (false, false) => format!(
                "satisfying {}, even while violating {}{}",
                and_list(&sat),
                and_list(&vio),
                if mid_sentence { "," } else { "" }
            ),
            (true, true) => "neither satisfying nor violating a differing duty".to_string(),
        }
    };
    let _ = write!(
        out,
        "Under {}, for {} over {subject} by {}: {} is ethically preferable to {}.",
        detail.situation,
        rival.action,
        rival.disjunct,
        side(&rival.vector, true),
        side(&detail.vector, false)
    );
    out
}

/// Deterministic English rendering of an explanation. `duty_names` maps duty
/// abbreviations to full names and must cover every duty of a practical
/// explanation.
pub fn render_text(
    explanation: &Explanation,
    duty_names: &BTreeMap<String, String>,
) -> Result<String> {
    if let Some(d) = &explanation.detail {
        let missing: BTreeSet<&String> = d
            .duties
            .iter()
            .filter(|x| !duty_names.contains_key(*x))
            .collect();
        if let Some(m) = missing.iter().next() {
            return Err(ExplainError::Schema(format!("no name for duty `{m}`")));
        }
    }
    let subject = match &explanation.subject {
        Subject::Action(a) => a.clone(),
        Subject::Assumption(l) => l.to_string(),
    };
    let kind = match explanation.subject {
        Subject::Action(_) => "action",
        Subject::Assumption(_) => "assumption",
    };
    let mut out = format!(
        "{subject} is a {} {kind} under {} semantics.\n",
        explanation.verdict.as_str(),
        explanation.semantics
    );

    let assumption = match (&explanation.assumption, &explanation.detail) {
        (Some(a), Some(d)) => format!("{a} = {}", vector_text(&d.vector)),
        (Some(a), None) => a.clone(),
        (None, _) => String::new(),
    };

    match explanation.verdict {
        Verdict::RejectedAPriori => {
            let d = explanation.detail.as_ref();
            let _ = writeln!(
                out,
                "- {subject} satisfies no duty{}, so its consequence is no assumption and no argument concludes {subject}.",
                d.map(|d| format!(" in {}: {}", d.situation, vector_text(&d.vector)))
                    .unwrap_or_default()
            );
        }
        Verdict::SkepticallyJustified | Verdict::CredulouslyJustified => {
            let arg = explanation
                .argument
                .as_ref()
                .expect("justified verdicts cite an argument");
            let exts: Vec<String> = explanation
                .member_of
                .iter()
                .map(|&i| extension_label(i))
                .collect();
            let scope = if explanation.verdict == Verdict::SkepticallyJustified {
                "every extension"
            } else {
                "some extension"
            };
            let _ = writeln!(
                out,
                "- {} is in {scope} ({}), because:",
                arg.display(),
                exts.join(", ")
            );
            if explanation.attackers.is_empty() {
                let _ = writeln!(
                    out,
                    "- the assumption {assumption} is accepted since it has no attacker."
                );
            } else {
                let _ = writeln!(
                    out,
                    "- the assumption {assumption} is accepted since every attacker is counter-attacked:"
                );
                for c in &explanation.citations {
                    let _ = writeln!(
                        out,
                        "  - in {}, {} is attacked by {}, skeptically accepted there.",
                        extension_label(c.extension),
                        c.attacker.display(),
                        if c.defenders.is_empty() {
                            "nothing".to_string()
                        } else {
                            c.defenders
                                .iter()
                                .map(CitedArgument::display)
                                .collect::<Vec<_>>()
                                .join(" and ")
                        }
                    );
                }
                let all: BTreeSet<&str> = explanation
                    .citations
                    .iter()
                    .flat_map(|c| c.defenders.iter().map(|d| d.label.as_str()))
                    .collect();
                let defenders: Vec<String> = all.into_iter().map(str::to_string).collect();
                let _ = writeln!(out, "- {subject} is defended by {}.", and_list(&defenders));
            }
            if let (Some(d), Subject::Action(_)) = (&explanation.detail, &explanation.subject) {
                let all: Vec<usize> = (0..d.duties.len()).collect();
                let sat = clauses(duty_names, &d.duties, &d.vector, &all, true);
                let vio = clauses(duty_names, &d.duties, &d.vector, &all, false);
                let gloss = |cs: Vec<String>| -> Vec<String> {
                    cs.into_iter()
                        .map(|c| c.split(" (").next().unwrap_or_default().to_string())
                        .collect()
                };
                if vio.is_empty() {
                    let _ = writeln!(
                        out,
                        "In {}, {subject}'s satisfaction of {} is not offset by any violation.",
                        d.situation,
                        and_list(&gloss(sat))
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "In {}, {subject}'s satisfaction of {} overrides the violation of {}.",
                        d.situation,
                        and_list(&gloss(sat)),
                        and_list(&gloss(vio))
                    );
                }
            }
        }
        Verdict::Rejected => {
            let arg = explanation
                .argument
                .as_ref()
                .expect("rejected verdicts cite an argument");
            let _ = writeln!(out, "- {} is in no extension, in that:", arg.display());
            for c in &explanation.citations {
                let premises = if c.attacker.premises.is_empty() {
                    "which has no premises and is accepted".to_string()
                } else {
                    format!(
                        "whose premises ({}) are accepted",
                        c.attacker.premises.join(" and ")
                    )
                };
                let _ = writeln!(
                    out,
                    "  - in {}, the assumption {assumption} is not acceptable since it is attacked by {}, {premises}.",
                    extension_label(c.extension),
                    c.attacker.display(),
                );
            }
            if let Some(d) = &explanation.detail {
                let mut seen = BTreeSet::new();
                for c in &explanation.citations {
                    if let Some(r) = &c.rival {
                        if seen.insert((r.action.clone(), r.disjunct.clone())) {
                            let _ = writeln!(out, "{}", rivalry_text(duty_names, d, &subject, r));
                        }
                    }
                }
            }
        }
        Verdict::Indeterminate => {
            if let Some(arg) = &explanation.argument {
                let _ = writeln!(
                    out,
                    "- {} is neither in every extension nor attacked from within each one.",
                    arg.display()
                );
            }
            if explanation.attackers.is_empty() {
                let _ = writeln!(out, "- no extension exists to settle it.");
            } else {
                let _ = writeln!(out, "- its attackers: {}.", labels(&explanation.attackers));
                for a in &explanation.attackers {
                    let _ = writeln!(out, "  - {}", a.display());
                }
            }
        }
    }
    Ok(out)
}

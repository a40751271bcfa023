//! Report values shared by the text, JSON and DOT renderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use vda_argumentation::aba::{Aaf, AbaFramework, ArgumentId};
use vda_argumentation::explain::Explanation;
use vda_argumentation::framework::{AssumptionStatus, EpistemicResult, PracticalResult};
use vda_argumentation::semantics::{AcceptanceStatus, Semantics};
use vda_argumentation::vda::{OrderingStep, SolutionSet};

#[derive(Debug, Clone, Serialize)]
pub struct RuleView {
    pub label: String,
    pub head: String,
    pub body: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArgumentView {
    pub label: String,
    pub premises: Vec<String>,
    pub conclusion: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatusView {
    pub argument: String,
    pub status: String,
    pub credulously_accepted: bool,
}

/// An argument graph with its verdicts, labelled for display.
#[derive(Debug, Clone, Serialize)]
pub struct GraphView {
    pub semantics: Semantics,
    pub rules: Vec<RuleView>,
    /// Heads of empty-body given rules (disjuncts, epistemic facts).
    pub facts: Vec<String>,
    pub arguments: Vec<ArgumentView>,
    pub attacks: Vec<(String, String)>,
    pub extensions: Vec<Vec<String>>,
    pub statuses: Vec<StatusView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

fn label(prefix: &str, id: ArgumentId) -> String {
    format!("{prefix}{id}")
}

impl GraphView {
    pub fn new(f: &AbaFramework, aaf: &Aaf, acceptance: &AcceptanceStatus, prefix: &str) -> Self {
        let names = |xs: &mut dyn Iterator<Item = &vda_argumentation::aba::Sentence>| {
            xs.map(|&s| f.name(s).to_string()).collect::<Vec<_>>()
        };
        GraphView {
            semantics: acceptance.semantics,
            rules: f
                .rules()
                .iter()
                .filter(|r| !r.label.starts_with("fact:"))
                .map(|r| RuleView {
                    label: r.label.clone(),
                    head: f.name(r.head).to_string(),
                    body: names(&mut r.body.iter()),
                })
                .collect(),
            facts: f
                .rules()
                .iter()
                .filter(|r| r.label.starts_with("fact:"))
                .map(|r| f.name(r.head).to_string())
                .collect(),
            arguments: aaf
                .arguments()
                .iter()
                .map(|a| ArgumentView {
                    label: label(prefix, a.id),
                    premises: names(&mut a.premises().iter()),
                    conclusion: f.name(a.conclusion).to_string(),
                })
                .collect(),
            attacks: aaf
                .attacks()
                .into_iter()
                .map(|(a, b)| (label(prefix, a), label(prefix, b)))
                .collect(),
            extensions: acceptance
                .extensions
                .iter()
                .map(|e| {
                    e.members
                        .iter()
                        .map(|&x| label(prefix, ArgumentId(x)))
                        .collect()
                })
                .collect(),
            statuses: acceptance
                .statuses
                .iter()
                .enumerate()
                .map(|(i, s)| StatusView {
                    argument: label(prefix, ArgumentId(i)),
                    status: s.status.as_str().to_string(),
                    credulously_accepted: s.credulously_accepted,
                })
                .collect(),
            diagnostic: acceptance.diagnostic.clone(),
        }
    }

    pub fn write_text(&self, out: &mut String) {
        let _ = writeln!(out, "semantics: {}", self.semantics);
        let _ = writeln!(out, "rules:");
        for r in &self.rules {
            if r.body.is_empty() {
                let _ = writeln!(out, "  {}: {} ←", r.label, r.head);
            } else {
                let _ = writeln!(out, "  {}: {} ← {}", r.label, r.head, r.body.join(", "));
            }
        }
        if !self.facts.is_empty() {
            let _ = writeln!(out, "facts: {}", self.facts.join(", "));
        }
        let _ = writeln!(out, "arguments: {}", self.arguments.len());
        for a in &self.arguments {
            let _ = writeln!(
                out,
                "  {}: {{{}}} ⊢ {}",
                a.label,
                a.premises.join(", "),
                a.conclusion
            );
        }
        let _ = writeln!(out, "attacks: {}", self.attacks.len());
        for (a, b) in &self.attacks {
            let _ = writeln!(out, "  {a} → {b}");
        }
        let _ = writeln!(out, "extensions: {}", self.extensions.len());
        for (i, e) in self.extensions.iter().enumerate() {
            let _ = writeln!(out, "  E{}: {{{}}}", i + 1, e.join(", "));
        }
        if let Some(d) = &self.diagnostic {
            let _ = writeln!(out, "note: {d}");
        }
        let _ = writeln!(out, "statuses:");
        for s in &self.statuses {
            let _ = writeln!(out, "  {}: {}", s.argument, s.status);
        }
    }

    pub fn to_dot(&self) -> String {
        let skeptical: BTreeSet<&str> = self
            .statuses
            .iter()
            .filter(|s| s.status == "skeptically justified")
            .map(|s| s.argument.as_str())
            .collect();
        let mut out = String::from("digraph aaf {\n    rankdir=LR\n    node [shape=box]\n");
        for a in &self.arguments {
            let text = format!(
                "{}: {{{}}} ⊢ {}",
                a.label,
                a.premises.join(", "),
                a.conclusion
            );
            let style = if skeptical.contains(a.label.as_str()) {
                " style=filled fillcolor=lightgrey"
            } else {
                ""
            };
            let _ = writeln!(out, "    {} [label=\"{}\"{style}]", a.label, escape(&text));
        }
        for (a, b) in &self.attacks {
            let _ = writeln!(out, "    {a} -> {b}");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub situation: String,
    pub solutions: SolutionSet,
    pub ordering: Vec<OrderingStep>,
}

impl SolveReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "situation: {}", self.situation);
        let _ = writeln!(out, "solutions: {}", self.solutions.actions.join(", "));
        if let Some(d) = &self.solutions.diagnostic {
            let _ = writeln!(out, "note: {d}");
        }
        let mut chain = String::new();
        for (i, step) in self.ordering.iter().enumerate() {
            chain.push_str(&step.action);
            if !step.undominated {
                chain.push('*');
            }
            if i + 1 == self.ordering.len() {
                break;
            }
            if step.over_next.is_empty() {
                // incomparable with the next action
                chain.push_str(" ~ ");
            } else {
                let _ = write!(chain, " ≥{{{}}} ", step.over_next.join(", "));
            }
        }
        let _ = writeln!(out, "ordering: {chain}");
        if self.ordering.iter().any(|s| !s.undominated) {
            let _ = writeln!(
                out,
                "note: * marks a step taken from a fully dominated remainder"
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionView {
    pub action: String,
    pub argument: Option<String>,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JustifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub situation: Option<String>,
    pub graph: GraphView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<ActionView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub justified_actions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub credulously_accepted_actions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<String>>,
}

impl JustifyReport {
    pub fn practical(result: &PracticalResult, action_names: &[String]) -> Self {
        let pf = &result.framework;
        JustifyReport {
            situation: Some(pf.situation.clone()),
            graph: GraphView::new(&pf.framework, &result.aaf, &result.acceptance, "X"),
            actions: Some(
                action_names
                    .iter()
                    .map(|a| {
                        let arg = result.action_argument(a);
                        ActionView {
                            action: a.clone(),
                            argument: arg.map(|id| label("X", id)),
                            status: match arg {
                                Some(id) => result.acceptance.status(id.0).as_str().to_string(),
                                None => "no argument (satisfies no duty)".to_string(),
                            },
                        }
                    })
                    .collect(),
            ),
            justified_actions: Some(result.skeptically_justified_actions()),
            credulously_accepted_actions: Some(result.credulously_accepted_actions()),
            solutions: Some(result.solutions.actions.clone()),
        }
    }

    pub fn plain(f: &AbaFramework, aaf: &Aaf, acceptance: &AcceptanceStatus, prefix: &str) -> Self {
        JustifyReport {
            situation: None,
            graph: GraphView::new(f, aaf, acceptance, prefix),
            actions: None,
            justified_actions: None,
            credulously_accepted_actions: None,
            solutions: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.situation {
            let _ = writeln!(out, "situation: {s}");
        }
        self.graph.write_text(&mut out);
        if let Some(actions) = &self.actions {
            let _ = writeln!(out, "actions:");
            for a in actions {
                match &a.argument {
                    Some(x) => {
                        let _ = writeln!(out, "  {} ({x}): {}", a.action, a.status);
                    }
                    None => {
                        let _ = writeln!(out, "  {}: {}", a.action, a.status);
                    }
                }
            }
        }
        let lists = [
            ("justified actions", &self.justified_actions),
            (
                "credulously accepted actions",
                &self.credulously_accepted_actions,
            ),
            ("solutions", &self.solutions),
        ];
        for (name, list) in lists {
            if let Some(xs) = list {
                let _ = writeln!(out, "{name}: {}", xs.join(", "));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictView {
    pub assumption: String,
    pub argument: String,
    pub status: AssumptionStatus,
    pub attackers: Vec<String>,
    pub defenders: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpistemicReport {
    pub perceptions: Vec<String>,
    pub graph: GraphView,
    pub verdicts: Vec<VerdictView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub justified_perceptions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub justified_situation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_match: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub undecided: Vec<String>,
}

impl EpistemicReport {
    pub fn new(result: &EpistemicResult, perceptions: Vec<String>) -> Self {
        EpistemicReport {
            perceptions,
            graph: GraphView::new(
                &result.framework.framework,
                &result.aaf,
                &result.acceptance,
                "Y",
            ),
            verdicts: result
                .verdicts
                .iter()
                .map(|v| VerdictView {
                    assumption: v.assumption.to_string(),
                    argument: label("Y", v.argument),
                    status: v.status,
                    attackers: v.attackers.iter().map(|&a| label("Y", a)).collect(),
                    defenders: v.defenders.iter().map(|&a| label("Y", a)).collect(),
                })
                .collect(),
            justified_perceptions: None,
            justified_situation: None,
            declared_match: None,
            undecided: Vec::new(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "perceptions: {}", self.perceptions.join(", "));
        self.graph.write_text(&mut out);
        let _ = writeln!(out, "assumptions:");
        for v in &self.verdicts {
            let status = match v.status {
                AssumptionStatus::Justified => "justified",
                AssumptionStatus::Rejected => "rejected",
                AssumptionStatus::Undecided => "undecided",
            };
            let _ = write!(out, "  {} ({}): {status}", v.assumption, v.argument);
            if !v.attackers.is_empty() {
                let _ = write!(out, "; attackers {}", v.attackers.join(", "));
            }
            if !v.defenders.is_empty() {
                let _ = write!(out, "; defenders {}", v.defenders.join(", "));
            }
            out.push('\n');
        }
        if let Some(p) = &self.justified_perceptions {
            let _ = writeln!(out, "justified perceptions: {}", p.join(", "));
        }
        if let Some(s) = &self.justified_situation {
            let _ = writeln!(out, "justified situation: {s}");
        }
        if let Some(m) = &self.declared_match {
            let _ = writeln!(out, "declared situation: {m}");
        }
        if !self.undecided.is_empty() {
            let _ = writeln!(
                out,
                "indeterminate: undecided assumptions {}",
                self.undecided.join(", ")
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplainedItem {
    pub explanation: Explanation,
    pub text: String,
}

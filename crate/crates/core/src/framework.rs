//! Compilation of an agent into ABA frameworks: the practical framework of a
//! situation (which actions to take) and the epistemic framework over
//! perception literals (which situation holds), plus the pipeline chaining
//! them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aba::{
    self, validate_framework, Aaf, AbaError, AbaFramework, AbaSpec, ArgumentId, DeriveOptions,
    RuleId, RuleSpec,
};
use crate::semantics::{self, AcceptanceStatus, Semantics, SemanticsError, Status};
use crate::vda::{self, Literal, Situation, SolutionSet, VdaAgent, VdaError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameworkError {
    #[error(transparent)]
    Vda(#[from] VdaError),
    #[error(transparent)]
    Aba(#[from] AbaError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("situation cannot be justified: undecided assumptions {}", .undecided.join(", "))]
    Indeterminate { undecided: Vec<String> },
    #[error("no action matrix registered for the justified situation {0}")]
    NoMatrixForSituation(String),
}

pub type Result<T> = std::result::Result<T, FrameworkError>;

/// Derivation settings for practical frameworks. Every assumption vector has
/// an action rule, so the bare `{v} ⊢ v` argument would duplicate the support
/// and attackers of `{v} ⊢ α`; it is left out.
pub const PRACTICAL_DERIVATION: DeriveOptions = DeriveOptions {
    max_depth: 64,
    max_arguments: 100_000,
    assumption_arguments: false,
    inert_facts: false,
};

pub fn vector_sentence(situation: &str, action: &str) -> String {
    format!("v_{situation}({action})")
}

pub fn negated_vector_sentence(situation: &str, action: &str) -> String {
    format!("¬v_{situation}({action})")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRule {
    pub rule: RuleId,
    pub label: String,
    pub action: String,
}

/// `¬v(target) ← disjunct, v(preferred)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipleRule {
    pub rule: RuleId,
    pub label: String,
    pub disjunct: String,
    /// Every disjunct under which `preferred` is preferable (or equal) to
    /// `target`; `disjunct` is the one cited by the rule.
    pub qualifying: Vec<String>,
    pub preferred: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PracticalFramework {
    pub situation: String,
    pub framework: AbaFramework,
    pub action_rules: Vec<ActionRule>,
    pub principle_rules: Vec<PrincipleRule>,
    /// Actions whose vector is an assumption, in action order.
    pub assumed: Vec<String>,
    /// True when no vector satisfied a duty and all vectors became assumptions.
    pub fallback: bool,
}

impl PracticalFramework {
    pub fn is_assumed(&self, action: &str) -> bool {
        self.assumed.iter().any(|a| a == action)
    }

    pub fn action_rule(&self, action: &str) -> Option<&ActionRule> {
        self.action_rules.iter().find(|r| r.action == action)
    }

    pub fn principle_rule(&self, rule: RuleId) -> Option<&PrincipleRule> {
        self.principle_rules.iter().find(|r| r.rule == rule)
    }
}

/// The cited disjunct among several qualifying ones: the one with the largest
/// bound total (tightest fit), earliest in the principle on ties.
fn cited_disjunct<'a>(agent: &'a VdaAgent, qualifying: &[&'a str]) -> &'a str {
    let total = |id: &str| -> i64 {
        agent
            .principle()
            .disjunct(id)
            .map(|d| d.bounds.iter().map(|&b| i64::from(b)).sum())
            .unwrap_or(i64::MIN)
    };
    let mut best = qualifying[0];
    for &id in &qualifying[1..] {
        if total(id) > total(best) {
            best = id;
        }
    }
    best
}

pub fn practical_framework(agent: &VdaAgent, situation: &str) -> Result<PracticalFramework> {
    let matrix = agent.matrix(situation)?;
    let actions = agent.language().actions();
    let principle = agent.principle();

    let mut assumed: Vec<String> = matrix
        .vectors()
        .iter()
        .filter(|v| v.satisfies_some_duty())
        .map(|v| v.action.clone())
        .collect();
    let fallback = assumed.is_empty();
    if fallback {
        assumed = actions.to_vec();
    }

    let v = |a: &str| vector_sentence(situation, a);
    let not_v = |a: &str| negated_vector_sentence(situation, a);

    let mut spec = AbaSpec::default();
    spec.language
        .extend(principle.disjuncts().iter().map(|d| d.id.clone()));
    spec.language.extend(actions.iter().map(|a| v(a)));
    spec.language.extend(actions.iter().map(|a| not_v(a)));
    spec.language.extend(actions.iter().cloned());

    let mut action_rules = Vec::new();
    for action in &assumed {
        let id = RuleId(spec.rules.len());
        let label = format!("r{}", id.0 + 1);
        spec.rules
            .push(RuleSpec::new(label.clone(), action.clone(), &[&v(action)]));
        action_rules.push(ActionRule {
            rule: id,
            label,
            action: action.clone(),
        });
    }

    let mut principle_rules = Vec::new();
    for target in actions.iter().filter(|b| assumed.contains(b)) {
        for preferred in actions.iter().filter(|a| *a != target) {
            let qualifying = vda::prefers(matrix, principle, preferred, target)?;
            if qualifying.is_empty() {
                continue;
            }
            let disjunct = cited_disjunct(agent, &qualifying);
            let id = RuleId(spec.rules.len());
            let label = format!("r{}", id.0 + 1);
            spec.rules.push(RuleSpec::new(
                label.clone(),
                not_v(target),
                &[disjunct, &v(preferred)],
            ));
            principle_rules.push(PrincipleRule {
                rule: id,
                label,
                disjunct: disjunct.to_string(),
                qualifying: qualifying.iter().map(|s| s.to_string()).collect(),
                preferred: preferred.clone(),
                target: target.clone(),
            });
        }
    }

    // Disjuncts are given premises of principle rules.
    for d in principle.disjuncts() {
        spec.rules
            .push(RuleSpec::new(format!("fact:{}", d.id), d.id.clone(), &[]));
    }

    spec.assumptions = assumed.iter().map(|a| v(a)).collect();
    spec.contrary = assumed.iter().map(|a| (v(a), not_v(a))).collect();

    Ok(PracticalFramework {
        situation: situation.to_string(),
        framework: validate_framework(&spec)?,
        action_rules,
        principle_rules,
        assumed,
        fallback,
    })
}

/// Arguments, attacks, extensions and statuses of a practical framework.
#[derive(Debug, Clone)]
pub struct PracticalResult {
    pub framework: PracticalFramework,
    pub aaf: Aaf,
    pub acceptance: AcceptanceStatus,
    pub solutions: SolutionSet,
}

impl PracticalResult {
    /// The `{v(α)} ⊢ α` argument, if α has an action rule.
    pub fn action_argument(&self, action: &str) -> Option<ArgumentId> {
        let rule = self.framework.action_rule(action)?.rule;
        self.aaf
            .arguments()
            .iter()
            .find(|a| a.top_rule() == Some(rule))
            .map(|a| a.id)
    }

    pub fn action_status(&self, action: &str) -> Option<Status> {
        self.action_argument(action)
            .map(|id| self.acceptance.status(id.0))
    }

    pub fn skeptically_justified_actions(&self) -> Vec<String> {
        self.actions_where(|id| self.acceptance.skeptically_justified(id.0))
    }

    /// Actions whose argument belongs to at least one extension.
    pub fn credulously_accepted_actions(&self) -> Vec<String> {
        self.actions_where(|id| self.acceptance.credulously_accepted(id.0))
    }

    fn actions_where(&self, keep: impl Fn(ArgumentId) -> bool) -> Vec<String> {
        self.framework
            .action_rules
            .iter()
            .filter_map(|r| {
                let id = self.action_argument(&r.action)?;
                keep(id).then(|| r.action.clone())
            })
            .collect()
    }
}

pub fn practical_reasoning(
    agent: &VdaAgent,
    situation: &str,
    semantics: Semantics,
) -> Result<PracticalResult> {
    let framework = practical_framework(agent, situation)?;
    let aaf = aba::build_aaf(&framework.framework, &PRACTICAL_DERIVATION)?;
    let acceptance = semantics::acceptance_status(aaf.graph(), semantics)?;
    let solutions = vda::solutions(agent, situation)?;
    Ok(PracticalResult {
        framework,
        aaf,
        acceptance,
        solutions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpistemicRule {
    pub label: String,
    pub head: Literal,
    pub body: Vec<Literal>,
}

/// Epistemic rules over perception literals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpistemicSpec {
    pub rules: Vec<EpistemicRule>,
    /// Literals held unconditionally (empty-body rules).
    pub facts: Vec<Literal>,
    pub assumptions: Vec<Literal>,
    /// Overrides of the default contrary (the complement literal).
    pub contraries: BTreeMap<Literal, Literal>,
}

impl EpistemicSpec {
    pub fn contrary_of(&self, assumption: &Literal) -> Literal {
        self.contraries
            .get(assumption)
            .cloned()
            .unwrap_or_else(|| assumption.complement())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicFramework {
    pub universe: Vec<String>,
    pub framework: AbaFramework,
}

impl EpistemicFramework {
    pub fn literal(&self, s: aba::Sentence) -> Literal {
        Literal::parse(self.framework.name(s)).expect("epistemic sentences are literals")
    }
}

pub fn epistemic_framework(
    spec: &EpistemicSpec,
    universe: &[String],
) -> Result<EpistemicFramework> {
    let known = |l: &Literal, role: &str| -> Result<()> {
        if universe.contains(&l.atom) {
            Ok(())
        } else {
            Err(FrameworkError::Schema(format!(
                "{role} `{l}` is not a literal of the language"
            )))
        }
    };
    for r in &spec.rules {
        known(&r.head, "rule head")?;
        for b in &r.body {
            known(b, "rule body literal")?;
        }
    }
    for f in &spec.facts {
        known(f, "fact")?;
        if spec.assumptions.contains(f) {
            return Err(FrameworkError::Schema(format!(
                "`{f}` is declared both as a fact and as an assumption"
            )));
        }
    }
    for a in &spec.assumptions {
        known(a, "assumption")?;
        known(&spec.contrary_of(a), "contrary")?;
    }
    for a in spec.contraries.keys() {
        if !spec.assumptions.contains(a) {
            return Err(FrameworkError::Schema(format!(
                "contrary override for `{a}`, which is not an assumption"
            )));
        }
    }

    let mut aba = AbaSpec::default();
    for atom in universe {
        aba.language.push(Literal::pos(atom.as_str()).to_string());
        aba.language.push(Literal::neg(atom.as_str()).to_string());
    }
    for r in &spec.rules {
        let body: Vec<String> = r.body.iter().map(Literal::to_string).collect();
        aba.rules.push(RuleSpec {
            label: r.label.clone(),
            head: r.head.to_string(),
            body,
        });
    }
    for f in &spec.facts {
        aba.rules
            .push(RuleSpec::new(format!("fact:{f}"), f.to_string(), &[]));
    }
    aba.assumptions = spec.assumptions.iter().map(Literal::to_string).collect();
    aba.contrary = spec
        .assumptions
        .iter()
        .map(|a| (a.to_string(), spec.contrary_of(a).to_string()))
        .collect();

    Ok(EpistemicFramework {
        universe: universe.to_vec(),
        framework: validate_framework(&aba)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssumptionStatus {
    Justified,
    Rejected,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionVerdict {
    pub assumption: Literal,
    /// The `{a} ⊢ a` argument.
    pub argument: ArgumentId,
    pub status: AssumptionStatus,
    pub attackers: Vec<ArgumentId>,
    /// Skeptically justified arguments attacking some attacker.
    pub defenders: Vec<ArgumentId>,
}

#[derive(Debug, Clone)]
pub struct EpistemicResult {
    pub framework: EpistemicFramework,
    pub aaf: Aaf,
    pub acceptance: AcceptanceStatus,
    pub verdicts: Vec<AssumptionVerdict>,
}

impl EpistemicResult {
    pub fn undecided(&self) -> Vec<&AssumptionVerdict> {
        self.verdicts
            .iter()
            .filter(|v| v.status == AssumptionStatus::Undecided)
            .collect()
    }
}

pub fn epistemic_reasoning(
    spec: &EpistemicSpec,
    universe: &[String],
    semantics: Semantics,
) -> Result<EpistemicResult> {
    let framework = epistemic_framework(spec, universe)?;
    let aaf = aba::build_aaf(&framework.framework, &DeriveOptions::default())?;
    let acceptance = semantics::acceptance_status(aaf.graph(), semantics)?;
    let graph = aaf.graph();

    let mut verdicts = Vec::new();
    for &a in framework.framework.assumptions() {
        let arg = aaf
            .arguments()
            .iter()
            .find(|x| x.is_assumption_argument() && x.conclusion == a)
            .expect("every assumption has its own argument");
        let status = match acceptance.status(arg.id.0) {
            Status::SkepticallyJustified => AssumptionStatus::Justified,
            Status::SkepticallyRejected => AssumptionStatus::Rejected,
            _ => AssumptionStatus::Undecided,
        };
        let attackers: Vec<usize> = graph.attackers(arg.id.0).to_vec();
        let defenders: BTreeSet<usize> = attackers
            .iter()
            .flat_map(|&y| graph.attackers(y).iter().copied())
            .filter(|&z| acceptance.skeptically_justified(z))
            .collect();
        verdicts.push(AssumptionVerdict {
            assumption: framework.literal(a),
            argument: arg.id,
            status,
            attackers: attackers.into_iter().map(ArgumentId).collect(),
            defenders: defenders.into_iter().map(ArgumentId).collect(),
        });
    }

    Ok(EpistemicResult {
        framework,
        aaf,
        acceptance,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JustifiedSituation {
    /// Justified perceptions, in universe order.
    pub perceptions: Vec<String>,
    pub situation: Situation,
    pub verdicts: Vec<AssumptionVerdict>,
}

/// Rebuilds the situation from `perceptions` after adjudicating the
/// assumptions. Fails if some assumption is neither skeptically justified nor
/// skeptically rejected.
pub fn justify_situation(
    result: &EpistemicResult,
    perceptions: &BTreeSet<String>,
    id: &str,
) -> Result<JustifiedSituation> {
    let universe = &result.framework.universe;
    if let Some(stray) = perceptions.iter().find(|p| !universe.contains(p)) {
        return Err(FrameworkError::Schema(format!(
            "perception `{stray}` is not an atom of the language"
        )));
    }
    let undecided: Vec<String> = result
        .undecided()
        .iter()
        .map(|v| v.assumption.to_string())
        .collect();
    if !undecided.is_empty() {
        return Err(FrameworkError::Indeterminate { undecided });
    }
    let mut justified: BTreeSet<String> = perceptions.clone();
    for v in &result.verdicts {
        let atom = v.assumption.atom.clone();
        match (v.status, v.assumption.positive) {
            (AssumptionStatus::Justified, true) => {
                justified.insert(atom);
            }
            (AssumptionStatus::Rejected, true) | (AssumptionStatus::Justified, false) => {
                justified.remove(&atom);
            }
            _ => {}
        }
    }
    let ordered: Vec<String> = universe
        .iter()
        .filter(|a| justified.contains(*a))
        .cloned()
        .collect();
    let situation = Situation::from_perceptions(id, ordered.iter().map(String::as_str), universe)?;
    Ok(JustifiedSituation {
        perceptions: ordered,
        situation,
        verdicts: result.verdicts.clone(),
    })
}

pub fn justified_situation(
    spec: &EpistemicSpec,
    universe: &[String],
    perceptions: &BTreeSet<String>,
    semantics: Semantics,
    id: &str,
) -> Result<JustifiedSituation> {
    let result = epistemic_reasoning(spec, universe, semantics)?;
    justify_situation(&result, perceptions, id)
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub epistemic: EpistemicResult,
    pub justified: JustifiedSituation,
    /// Declared situation whose valuation equals the justified one.
    pub situation: String,
    pub practical: PracticalResult,
}

/// Epistemic adjudication of `perceptions`, then practical reasoning in the
/// declared situation with the same valuation.
pub fn end_to_end_decide(
    agent: &VdaAgent,
    spec: &EpistemicSpec,
    perceptions: &BTreeSet<String>,
    semantics: Semantics,
) -> Result<Decision> {
    let universe = agent.language().all_atoms();
    let epistemic = epistemic_reasoning(spec, &universe, semantics)?;
    let justified = justify_situation(&epistemic, perceptions, "S^J")?;
    let declared = agent
        .find_situation(&justified.situation)
        .ok_or_else(|| FrameworkError::NoMatrixForSituation(justified.situation.to_string()))?;
    if !agent.matrices().contains_key(declared.id()) {
        return Err(FrameworkError::NoMatrixForSituation(
            declared.id().to_string(),
        ));
    }
    let situation = declared.id().to_string();
    let practical = practical_reasoning(agent, &situation, semantics)?;
    Ok(Decision {
        epistemic,
        justified,
        situation,
        practical,
    })
}

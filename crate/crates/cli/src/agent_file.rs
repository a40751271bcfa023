//! JSON input formats: agent files and plain ABA framework files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use vda_argumentation::aba::AbaSpec;
use vda_argumentation::framework::{EpistemicRule, EpistemicSpec};
use vda_argumentation::vda::{
    ActionMatrix, DegreeRange, Disjunct, DutyVector, Literal, Principle, Situation, VdaAgent,
    VdaLanguage,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LanguageSection {
    pub atoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extension_atoms: Vec<String>,
    pub actions: Vec<String>,
    pub duties: Vec<String>,
    /// Full duty names for rendered explanations.
    #[serde(default)]
    pub duty_names: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SituationEntry {
    pub id: String,
    /// True perceptions; every other atom is false.
    pub perceptions: Vec<String>,
    /// Whether the valuation also covers the extension atoms.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub extended: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisjunctEntry {
    pub id: String,
    pub bounds: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleEntry {
    pub label: String,
    pub head: String,
    #[serde(default)]
    pub body: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpistemicSection {
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contraries: BTreeMap<String, String>,
    #[serde(default)]
    pub rules: Vec<RuleEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentFile {
    pub language: LanguageSection,
    #[serde(default)]
    pub degree_range: DegreeRange,
    pub situations: Vec<SituationEntry>,
    /// Situation id to action name to duty values in declared duty order.
    pub matrices: BTreeMap<String, BTreeMap<String, Vec<i32>>>,
    pub principle: Vec<DisjunctEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epistemic: Option<EpistemicSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbaFile {
    pub aba: AbaSpec,
    #[serde(default = "default_prefix")]
    pub label_prefix: String,
}

fn default_prefix() -> String {
    "Y".to_string()
}

#[derive(Debug, Clone)]
pub struct LoadedAgent {
    pub file: AgentFile,
    pub agent: VdaAgent,
    pub epistemic: EpistemicSpec,
}

impl LoadedAgent {
    pub fn duty_names(&self) -> &BTreeMap<String, String> {
        &self.file.language.duty_names
    }

    /// True perceptions of a declared situation.
    pub fn perceptions(&self, situation: &str) -> Result<BTreeSet<String>, CliError> {
        let s = self
            .agent
            .situation(situation)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(s.true_atoms().into_iter().map(str::to_string).collect())
    }
}

#[derive(Debug, Clone)]
pub enum Input {
    Agent(Box<LoadedAgent>),
    Aba(AbaFile),
}

fn schema(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.display().to_string(),
        message: msg.into(),
    }
}

fn parse_error(path: &Path, e: serde_json::Error) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_literal(text: &str) -> Result<Literal, String> {
    Literal::parse(text).map_err(|e| e.to_string())
}

impl AgentFile {
    pub fn to_agent(&self) -> Result<VdaAgent, String> {
        let lang = &self.language;
        let language = VdaLanguage::with_extension_atoms(
            lang.atoms.clone(),
            lang.extension_atoms.clone(),
            lang.actions.clone(),
            lang.duties.clone(),
        )
        .map_err(|e| e.to_string())?;
        if let Some(stray) = lang.duty_names.keys().find(|d| !lang.duties.contains(d)) {
            return Err(format!("duty_names mentions unknown duty `{stray}`"));
        }

        let base = language.atoms().to_vec();
        let extended = language.all_atoms();
        let situations = self
            .situations
            .iter()
            .map(|s| {
                let universe = if s.extended { &extended } else { &base };
                Situation::from_perceptions(
                    s.id.as_str(),
                    s.perceptions.iter().map(String::as_str),
                    universe,
                )
                .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut matrices = Vec::new();
        for (sid, rows) in &self.matrices {
            if let Some(stray) = rows.keys().find(|a| !lang.actions.contains(a)) {
                return Err(format!(
                    "matrix `{sid}`: row `{stray}` names no declared action"
                ));
            }
            let mut vectors = Vec::new();
            for action in &lang.actions {
                let row = rows
                    .get(action)
                    .ok_or_else(|| format!("matrix `{sid}`: missing row `{action}`"))?;
                if row.len() != lang.duties.len() {
                    return Err(format!(
                        "matrix `{sid}`: row `{action}` has {} values for {} duties",
                        row.len(),
                        lang.duties.len()
                    ));
                }
                vectors.push(DutyVector::new(action.as_str(), row.clone()));
            }
            matrices.push(
                ActionMatrix::new(sid.as_str(), vectors, &language, self.degree_range)
                    .map_err(|e| format!("matrix `{sid}`: {e}"))?,
            );
        }

        let disjuncts = self
            .principle
            .iter()
            .map(|d| Disjunct::new(d.id.as_str(), d.bounds.clone()))
            .collect();
        let principle = Principle::new(disjuncts, lang.duties.len()).map_err(|e| e.to_string())?;
        VdaAgent::new(language, situations, matrices, principle, self.degree_range)
            .map_err(|e| e.to_string())
    }

    pub fn to_epistemic(&self) -> Result<EpistemicSpec, String> {
        let Some(e) = &self.epistemic else {
            return Ok(EpistemicSpec::default());
        };
        let lits = |xs: &[String]| {
            xs.iter()
                .map(|x| parse_literal(x))
                .collect::<Result<Vec<_>, _>>()
        };
        let rules = e
            .rules
            .iter()
            .map(|r| {
                Ok(EpistemicRule {
                    label: r.label.clone(),
                    head: parse_literal(&r.head)?,
                    body: lits(&r.body)?,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        let contraries = e
            .contraries
            .iter()
            .map(|(a, c)| Ok((parse_literal(a)?, parse_literal(c)?)))
            .collect::<Result<BTreeMap<_, _>, String>>()?;
        Ok(EpistemicSpec {
            rules,
            facts: lits(&e.facts)?,
            assumptions: lits(&e.assumptions)?,
            contraries,
        })
    }
}

pub fn parse_input(path: &Path, text: &str) -> Result<Input, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    if value.get("aba").is_some() {
        let file: AbaFile = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
        return Ok(Input::Aba(file));
    }
    let file: AgentFile = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    let agent = file.to_agent().map_err(|m| schema(path, m))?;
    let epistemic = file.to_epistemic().map_err(|m| schema(path, m))?;
    Ok(Input::Agent(Box::new(LoadedAgent {
        file,
        agent,
        epistemic,
    })))
}

pub fn load(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_input(path, &text)
}

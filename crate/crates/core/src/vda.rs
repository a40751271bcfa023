//! Value driven agents: language, situations, action matrices, principles,
//! and the ethical preference / solution computations built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VdaError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("unknown situation `{0}`")]
    UnknownSituation(String),
    #[error("no action matrix for situation `{0}`")]
    MissingMatrix(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, VdaError>;

fn check_unique(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for name in names {
        if name.is_empty() {
            return Err(VdaError::Schema(format!("empty {kind} name")));
        }
        if !seen.insert(name.as_str()) {
            return Err(VdaError::Schema(format!("duplicate {kind} `{name}`")));
        }
    }
    Ok(())
}

/// Perception atoms, actions and duties of an agent.
///
/// Extension atoms are perceptions introduced after the base language was
/// fixed (for instance by epistemic rules); they take part in situations
/// that are marked as extended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdaLanguage {
    atoms: Vec<String>,
    extension_atoms: Vec<String>,
    actions: Vec<String>,
    duties: Vec<String>,
}

impl VdaLanguage {
    pub fn new(atoms: Vec<String>, actions: Vec<String>, duties: Vec<String>) -> Result<Self> {
        Self::with_extension_atoms(atoms, Vec::new(), actions, duties)
    }

    pub fn with_extension_atoms(
        atoms: Vec<String>,
        extension_atoms: Vec<String>,
        actions: Vec<String>,
        duties: Vec<String>,
    ) -> Result<Self> {
        let all_atoms: Vec<String> = atoms.iter().chain(&extension_atoms).cloned().collect();
        check_unique("atom", &all_atoms)?;
        check_unique("action", &actions)?;
        check_unique("duty", &duties)?;
        if let Some(clash) = actions.iter().find(|a| duties.contains(a)) {
            return Err(VdaError::Schema(format!(
                "`{clash}` is both an action and a duty"
            )));
        }
        if actions.is_empty() {
            return Err(VdaError::Schema("language declares no actions".into()));
        }
        if duties.is_empty() {
            return Err(VdaError::Schema("language declares no duties".into()));
        }
        Ok(Self {
            atoms,
            extension_atoms,
            actions,
            duties,
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn extension_atoms(&self) -> &[String] {
        &self.extension_atoms
    }

    /// Base atoms followed by extension atoms.
    pub fn all_atoms(&self) -> Vec<String> {
        self.atoms
            .iter()
            .chain(&self.extension_atoms)
            .cloned()
            .collect()
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn duties(&self) -> &[String] {
        &self.duties
    }

    pub fn has_atom(&self, atom: &str) -> bool {
        self.atoms
            .iter()
            .chain(&self.extension_atoms)
            .any(|a| a == atom)
    }

    pub fn action_index(&self, action: &str) -> Result<usize> {
        self.actions
            .iter()
            .position(|a| a == action)
            .ok_or_else(|| VdaError::UnknownAction(action.to_string()))
    }
}

/// A perception atom or its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub atom: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: impl Into<String>) -> Self {
        Self {
            atom: atom.into(),
            positive: true,
        }
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Self {
            atom: atom.into(),
            positive: false,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    /// Parses `p`, `¬p` or `~p`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (atom, positive) = if let Some(rest) = text.strip_prefix('¬') {
            (rest, false)
        } else if let Some(rest) = text.strip_prefix('~') {
            (rest, false)
        } else {
            (text, true)
        };
        let atom = atom.trim();
        if atom.is_empty() || atom.starts_with(['¬', '~']) {
            return Err(VdaError::Schema(format!("malformed literal `{text}`")));
        }
        Ok(Self {
            atom: atom.to_string(),
            positive,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "¬{}", self.atom)
        }
    }
}

/// A total valuation of the atoms of a universe: every atom appears exactly
/// once, either positively or negated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Situation {
    id: String,
    literals: Vec<Literal>,
}

impl Situation {
    /// Builds `P ∪ {¬p | p ∈ universe \ P}` in universe order.
    pub fn from_perceptions<'a>(
        id: impl Into<String>,
        true_atoms: impl IntoIterator<Item = &'a str>,
        universe: &[String],
    ) -> Result<Self> {
        let id = id.into();
        let truths: BTreeSet<&str> = true_atoms.into_iter().collect();
        if let Some(stray) = truths.iter().find(|t| !universe.iter().any(|u| u == *t)) {
            return Err(VdaError::Schema(format!(
                "situation `{id}` mentions unknown atom `{stray}`"
            )));
        }
        let literals = universe
            .iter()
            .map(|atom| Literal {
                atom: atom.clone(),
                positive: truths.contains(atom.as_str()),
            })
            .collect();
        Ok(Self { id, literals })
    }

    /// Validates that `literals` is a total valuation of `universe`.
    pub fn from_literals(
        id: impl Into<String>,
        literals: Vec<Literal>,
        universe: &[String],
    ) -> Result<Self> {
        let id = id.into();
        for atom in universe {
            let count = literals.iter().filter(|l| &l.atom == atom).count();
            if count != 1 {
                return Err(VdaError::Schema(format!(
                    "situation `{id}` must value atom `{atom}` exactly once (found {count})"
                )));
            }
        }
        if let Some(stray) = literals.iter().find(|l| !universe.contains(&l.atom)) {
            return Err(VdaError::Schema(format!(
                "situation `{id}` mentions unknown atom `{}`",
                stray.atom
            )));
        }
        Ok(Self { id, literals })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn true_atoms(&self) -> BTreeSet<&str> {
        self.literals
            .iter()
            .filter(|l| l.positive)
            .map(|l| l.atom.as_str())
            .collect()
    }

    pub fn holds(&self, literal: &Literal) -> bool {
        self.literals.contains(literal)
    }

    /// Atoms valued by this situation, in order.
    pub fn universe(&self) -> Vec<String> {
        self.literals.iter().map(|l| l.atom.clone()).collect()
    }

    pub fn same_valuation(&self, other: &Situation) -> bool {
        self.true_atoms() == other.true_atoms()
    }
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.literals.iter().map(Literal::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Inclusive range of admissible duty degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRange {
    pub min: i32,
    pub max: i32,
}

impl Default for DegreeRange {
    fn default() -> Self {
        Self { min: -2, max: 2 }
    }
}

impl DegreeRange {
    pub fn contains(&self, value: i32) -> bool {
        (self.min..=self.max).contains(&value)
    }
}

/// Duty satisfaction (> 0) / violation (< 0) degrees of one action, in the
/// language's duty order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DutyVector {
    pub action: String,
    pub values: Vec<i32>,
}

impl DutyVector {
    pub fn new(action: impl Into<String>, values: Vec<i32>) -> Self {
        Self {
            action: action.into(),
            values,
        }
    }

    /// True when the action satisfies at least one duty.
    pub fn satisfies_some_duty(&self) -> bool {
        self.values.iter().any(|&v| v >= 1)
    }
}

impl fmt::Display for DutyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.values)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[i32]) -> fmt::Result {
    let parts: Vec<String> = values.iter().map(i32::to_string).collect();
    write!(f, "({})", parts.join(", "))
}

/// Componentwise differential of two duty vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DutyDifferential(pub Vec<i32>);

impl fmt::Display for DutyDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// The duty vectors of every action in one situation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionMatrix {
    situation: String,
    vectors: Vec<DutyVector>,
}

impl ActionMatrix {
    /// Checks one vector per action (stored in action order), one value per
    /// duty, and every value within `range`.
    pub fn new(
        situation: impl Into<String>,
        vectors: Vec<DutyVector>,
        language: &VdaLanguage,
        range: DegreeRange,
    ) -> Result<Self> {
        let situation = situation.into();
        let mut ordered = Vec::with_capacity(language.actions().len());
        for action in language.actions() {
            let mut rows = vectors.iter().filter(|v| &v.action == action);
            let row = rows.next().ok_or_else(|| {
                VdaError::Schema(format!(
                    "matrix for `{situation}` has no row for action `{action}`"
                ))
            })?;
            if rows.next().is_some() {
                return Err(VdaError::Schema(format!(
                    "matrix for `{situation}` has several rows for action `{action}`"
                )));
            }
            if row.values.len() != language.duties().len() {
                return Err(VdaError::Schema(format!(
                    "matrix for `{situation}`, row `{action}`: expected {} duty values, got {}",
                    language.duties().len(),
                    row.values.len()
                )));
            }
            if let Some(bad) = row.values.iter().find(|v| !range.contains(**v)) {
                return Err(VdaError::Schema(format!(
                    "matrix for `{situation}`, row `{action}`: degree {bad} outside [{}, {}]",
                    range.min, range.max
                )));
            }
            ordered.push(row.clone());
        }
        if let Some(stray) = vectors
            .iter()
            .find(|v| !language.actions().contains(&v.action))
        {
            return Err(VdaError::UnknownAction(stray.action.clone()));
        }
        Ok(Self {
            situation,
            vectors: ordered,
        })
    }

    pub fn situation(&self) -> &str {
        &self.situation
    }

    pub fn vectors(&self) -> &[DutyVector] {
        &self.vectors
    }

    pub fn vector(&self, action: &str) -> Result<&DutyVector> {
        self.vectors
            .iter()
            .find(|v| v.action == action)
            .ok_or_else(|| VdaError::UnknownAction(action.to_string()))
    }
}

/// One clause of a principle: a lower bound per duty on the differential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjunct {
    pub id: String,
    pub bounds: Vec<i32>,
}

impl Disjunct {
    pub fn new(id: impl Into<String>, bounds: Vec<i32>) -> Self {
        Self {
            id: id.into(),
            bounds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Principle {
    disjuncts: Vec<Disjunct>,
}

impl Principle {
    pub fn new(disjuncts: Vec<Disjunct>, duty_count: usize) -> Result<Self> {
        if disjuncts.is_empty() {
            return Err(VdaError::Schema("principle has no disjuncts".into()));
        }
        let ids: Vec<String> = disjuncts.iter().map(|d| d.id.clone()).collect();
        check_unique("disjunct", &ids)?;
        if let Some(bad) = disjuncts.iter().find(|d| d.bounds.len() != duty_count) {
            return Err(VdaError::Schema(format!(
                "disjunct `{}`: expected {duty_count} bounds, got {}",
                bad.id,
                bad.bounds.len()
            )));
        }
        Ok(Self { disjuncts })
    }

    pub fn disjuncts(&self) -> &[Disjunct] {
        &self.disjuncts
    }

    pub fn disjunct(&self, id: &str) -> Option<&Disjunct> {
        self.disjuncts.iter().find(|d| d.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.disjuncts.iter().position(|d| d.id == id)
    }
}

/// Language, known situations, their action matrices, and the principle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdaAgent {
    language: VdaLanguage,
    situations: Vec<Situation>,
    matrices: BTreeMap<String, ActionMatrix>,
    principle: Principle,
    range: DegreeRange,
}

impl VdaAgent {
    pub fn new(
        language: VdaLanguage,
        situations: Vec<Situation>,
        matrices: Vec<ActionMatrix>,
        principle: Principle,
        range: DegreeRange,
    ) -> Result<Self> {
        let ids: Vec<String> = situations.iter().map(|s| s.id.clone()).collect();
        check_unique("situation", &ids)?;
        for situation in &situations {
            if let Some(stray) = situation
                .literals
                .iter()
                .find(|l| !language.has_atom(&l.atom))
            {
                return Err(VdaError::Schema(format!(
                    "situation `{}` mentions unknown atom `{}`",
                    situation.id, stray.atom
                )));
            }
        }
        if let Some(d) = principle
            .disjuncts()
            .iter()
            .find(|d| d.bounds.len() != language.duties().len())
        {
            return Err(VdaError::Schema(format!(
                "disjunct `{}` does not cover the duty list",
                d.id
            )));
        }
        let mut by_situation = BTreeMap::new();
        for matrix in matrices {
            if !ids.contains(&matrix.situation) {
                return Err(VdaError::UnknownSituation(matrix.situation.clone()));
            }
            if matrix.vectors.len() != language.actions().len() {
                return Err(VdaError::Schema(format!(
                    "matrix for `{}` does not cover every action",
                    matrix.situation
                )));
            }
            let key = matrix.situation.clone();
            if by_situation.insert(key.clone(), matrix).is_some() {
                return Err(VdaError::Schema(format!(
                    "several matrices for situation `{key}`"
                )));
            }
        }
        Ok(Self {
            language,
            situations,
            matrices: by_situation,
            principle,
            range,
        })
    }

    pub fn language(&self) -> &VdaLanguage {
        &self.language
    }

    pub fn situations(&self) -> &[Situation] {
        &self.situations
    }

    pub fn situation(&self, id: &str) -> Result<&Situation> {
        self.situations
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| VdaError::UnknownSituation(id.to_string()))
    }

    pub fn matrices(&self) -> &BTreeMap<String, ActionMatrix> {
        &self.matrices
    }

    pub fn matrix(&self, situation: &str) -> Result<&ActionMatrix> {
        self.situation(situation)?;
        self.matrices
            .get(situation)
            .ok_or_else(|| VdaError::MissingMatrix(situation.to_string()))
    }

    pub fn principle(&self) -> &Principle {
        &self.principle
    }

    pub fn range(&self) -> DegreeRange {
        self.range
    }

    /// First declared situation with the same true atoms as `situation`.
    pub fn find_situation(&self, situation: &Situation) -> Option<&Situation> {
        self.situations.iter().find(|s| s.same_valuation(situation))
    }
}

pub fn duty_differential(a: &DutyVector, b: &DutyVector) -> Result<DutyDifferential> {
    if a.values.len() != b.values.len() {
        return Err(VdaError::Schema(format!(
            "duty vectors of `{}` and `{}` have different lengths ({} vs {})",
            a.action,
            b.action,
            a.values.len(),
            b.values.len()
        )));
    }
    Ok(DutyDifferential(
        a.values.iter().zip(&b.values).map(|(x, y)| x - y).collect(),
    ))
}

pub fn meets_lower_bounds(w: &DutyDifferential, u: &Disjunct) -> Result<bool> {
    if w.0.len() != u.bounds.len() {
        return Err(VdaError::Schema(format!(
            "differential has {} duties but disjunct `{}` has {}",
            w.0.len(),
            u.id,
            u.bounds.len()
        )));
    }
    Ok(w.0.iter().zip(&u.bounds).all(|(d, b)| d >= b))
}

/// Ids of every disjunct under which `alpha` is ethically preferable (or
/// equal) to `beta`, in principle order.
pub fn prefers<'p>(
    matrix: &ActionMatrix,
    principle: &'p Principle,
    alpha: &str,
    beta: &str,
) -> Result<Vec<&'p str>> {
    let w = duty_differential(matrix.vector(alpha)?, matrix.vector(beta)?)?;
    let mut ids = Vec::new();
    for u in principle.disjuncts() {
        if meets_lower_bounds(&w, u)? {
            ids.push(u.id.as_str());
        }
    }
    Ok(ids)
}

/// Forward preference under some disjunct and backward preference under none.
pub fn strictly_prefers(
    matrix: &ActionMatrix,
    principle: &Principle,
    alpha: &str,
    beta: &str,
) -> Result<bool> {
    if alpha == beta {
        return Err(VdaError::Argument(format!(
            "strict preference of `{alpha}` over itself is undefined"
        )));
    }
    Ok(!prefers(matrix, principle, alpha, beta)?.is_empty()
        && prefers(matrix, principle, beta, alpha)?.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    /// Solutions in action order.
    pub actions: Vec<String>,
    /// Set when no action can head an ordering (strict-preference cycle).
    pub diagnostic: Option<String>,
}

impl SolutionSet {
    pub fn contains(&self, action: &str) -> bool {
        self.actions.iter().any(|a| a == action)
    }
}

/// Actions not strictly dominated by any other action.
pub fn solutions(agent: &VdaAgent, situation: &str) -> Result<SolutionSet> {
    let matrix = agent.matrix(situation)?;
    let actions = agent.language().actions();
    let mut undominated = Vec::new();
    for alpha in actions {
        let mut dominated = false;
        for beta in actions.iter().filter(|b| *b != alpha) {
            if strictly_prefers(matrix, agent.principle(), beta, alpha)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            undominated.push(alpha.clone());
        }
    }
    let diagnostic = undominated.is_empty().then(|| {
        format!("strict preference is cyclic in `{situation}`: every action is dominated")
    });
    Ok(SolutionSet {
        actions: undominated,
        diagnostic,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingStep {
    pub action: String,
    /// Disjuncts under which this action is preferable (or equal) to the
    /// next one; empty for the last step.
    pub over_next: Vec<String>,
    /// False when the step had to be taken from a dominated remainder.
    pub undominated: bool,
}

/// Greedy ethical ordering: repeatedly take the lexicographically smallest
/// action not strictly dominated within the remainder.
pub fn ethical_ordering(agent: &VdaAgent, situation: &str) -> Result<Vec<OrderingStep>> {
    let matrix = agent.matrix(situation)?;
    let principle = agent.principle();
    let mut remaining: Vec<String> = agent.language().actions().to_vec();
    remaining.sort();
    let mut chosen: Vec<(String, bool)> = Vec::new();
    while !remaining.is_empty() {
        let mut pick = None;
        for candidate in &remaining {
            let mut dominated = false;
            for other in remaining.iter().filter(|o| *o != candidate) {
                if strictly_prefers(matrix, principle, other, candidate)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                pick = Some(candidate.clone());
                break;
            }
        }
        let (action, undominated) = match pick {
            Some(action) => (action, true),
            None => (remaining[0].clone(), false),
        };
        remaining.retain(|a| *a != action);
        chosen.push((action, undominated));
    }
    let mut steps = Vec::with_capacity(chosen.len());
    for (i, (action, undominated)) in chosen.iter().enumerate() {
        let over_next = match chosen.get(i + 1) {
            Some((next, _)) => prefers(matrix, principle, action, next)?
                .into_iter()
                .map(str::to_string)
                .collect(),
            None => Vec::new(),
        };
        steps.push(OrderingStep {
            action: action.clone(),
            over_next,
            undominated: *undominated,
        });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s1() -> (VdaAgent, &'static str) {
        (fixtures::eldercare_agent(), "S1")
    }

    #[test]
    fn differential_of_table_rows() {
        let (agent, s) = s1();
        let m = agent.matrix(s).unwrap();
        let w = duty_differential(m.vector("warn").unwrap(), m.vector("charge").unwrap()).unwrap();
        assert_eq!(w.0, vec![0, -1, 2, 0, 0, -1, 0]);
        let w =
            duty_differential(m.vector("seekTask").unwrap(), m.vector("charge").unwrap()).unwrap();
        assert_eq!(w.0, vec![0, -2, 0, 2, 0, 0, 0]);
        let v = m.vector("notify").unwrap();
        assert!(duty_differential(v, v).unwrap().0.iter().all(|&x| x == 0));
    }

    #[test]
    fn differential_rejects_mismatched_lengths() {
        let a = DutyVector::new("a", vec![1, 2]);
        let b = DutyVector::new("b", vec![1]);
        assert!(matches!(
            duty_differential(&a, &b),
            Err(VdaError::Schema(_))
        ));
        let u = Disjunct::new("u", vec![0]);
        assert!(meets_lower_bounds(&DutyDifferential(vec![0, 0]), &u).is_err());
    }

    #[test]
    fn lower_bound_checks() {
        let u7 = Disjunct::new("u7", vec![-1, -4, 1, -2, -4, -4, 0]);
        assert!(meets_lower_bounds(&DutyDifferential(vec![0, -1, 2, 0, 0, -1, 0]), &u7).unwrap());
        let zero = Disjunct::new("z", vec![0; 7]);
        assert!(meets_lower_bounds(&DutyDifferential(vec![0; 7]), &zero).unwrap());
        let u5 = Disjunct::new("u5", vec![0, -1, 0, 0, 0, 0, 0]);
        assert!(!meets_lower_bounds(&DutyDifferential(vec![0, 1, -2, 0, 0, 1, 0]), &u5).unwrap());
    }

    #[test]
    fn preference_between_actions() {
        let (agent, s) = s1();
        let m = agent.matrix(s).unwrap();
        let p = agent.principle();
        assert!(prefers(m, p, "warn", "notify").unwrap().contains(&"u5"));
        assert!(prefers(m, p, "seekTask", "charge").unwrap().contains(&"u4"));
        assert!(prefers(m, p, "notify", "warn").unwrap().is_empty());
        assert!(strictly_prefers(m, p, "warn", "notify").unwrap());
        assert!(!strictly_prefers(m, p, "notify", "warn").unwrap());
        assert!(matches!(
            strictly_prefers(m, p, "warn", "warn"),
            Err(VdaError::Argument(_))
        ));
        assert!(matches!(
            prefers(m, p, "warn", "dance"),
            Err(VdaError::UnknownAction(_))
        ));
    }

    #[test]
    fn mutual_preference_is_not_strict() {
        let language =
            VdaLanguage::new(vec![], vec!["a".into(), "b".into()], vec!["d".into()]).unwrap();
        let situation = Situation::from_perceptions("S", [], &[]).unwrap();
        let matrix = ActionMatrix::new(
            "S",
            vec![DutyVector::new("a", vec![1]), DutyVector::new("b", vec![0])],
            &language,
            DegreeRange::default(),
        )
        .unwrap();
        let principle = Principle::new(vec![Disjunct::new("u", vec![-4])], 1).unwrap();
        let agent = VdaAgent::new(
            language,
            vec![situation],
            vec![matrix],
            principle,
            DegreeRange::default(),
        )
        .unwrap();
        let m = agent.matrix("S").unwrap();
        assert!(!strictly_prefers(m, agent.principle(), "a", "b").unwrap());
        assert!(!strictly_prefers(m, agent.principle(), "b", "a").unwrap());
        assert_eq!(solutions(&agent, "S").unwrap().actions, vec!["a", "b"]);
    }

    #[test]
    fn eldercare_solution_and_ordering() {
        let (agent, s) = s1();
        let sol = solutions(&agent, s).unwrap();
        assert_eq!(sol.actions, vec!["warn"]);
        assert!(sol.diagnostic.is_none());
        let order = ethical_ordering(&agent, s).unwrap();
        let names: Vec<&str> = order.iter().map(|o| o.action.as_str()).collect();
        assert_eq!(
            names,
            ["warn", "notify", "seekTask", "charge", "engage", "remind"]
        );
        assert!(order[0].over_next.iter().any(|u| u == "u5"));
        assert!(order[1].over_next.iter().any(|u| u == "u7"));
        assert!(order[2].over_next.iter().any(|u| u == "u4"));
        assert!(order[3].over_next.iter().any(|u| u == "u5"));
        assert!(order[4].over_next.iter().any(|u| u == "u8"));
        assert!(order.iter().all(|o| o.undominated));
    }

    #[test]
    fn missing_matrix_is_a_lookup_error() {
        let agent = fixtures::eldercare_agent();
        assert!(matches!(
            solutions(&agent, "S2"),
            Err(VdaError::MissingMatrix(_))
        ));
        assert!(matches!(
            solutions(&agent, "S9"),
            Err(VdaError::UnknownSituation(_))
        ));
    }

    #[test]
    fn language_rejects_overlap_and_duplicates() {
        let r = VdaLanguage::new(vec![], vec!["x".into()], vec!["x".into()]);
        assert!(matches!(r, Err(VdaError::Schema(_))));
        let r = VdaLanguage::new(
            vec!["p".into(), "p".into()],
            vec!["a".into()],
            vec!["d".into()],
        );
        assert!(r.is_err());
    }

    #[test]
    fn situations_are_total() {
        let universe: Vec<String> = ["p", "q"].iter().map(|s| s.to_string()).collect();
        let s = Situation::from_perceptions("S", ["p"], &universe).unwrap();
        assert_eq!(s.to_string(), "{p, ¬q}");
        let bad = Situation::from_literals(
            "T",
            vec![Literal::pos("p"), Literal::neg("p"), Literal::pos("q")],
            &universe,
        );
        assert!(bad.is_err());
        assert!(Situation::from_perceptions("U", ["r"], &universe).is_err());
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(Literal::parse("¬ab").unwrap(), Literal::neg("ab"));
        assert_eq!(Literal::parse("~ab").unwrap(), Literal::neg("ab"));
        assert_eq!(Literal::parse("lb").unwrap(), Literal::pos("lb"));
        assert!(Literal::parse("¬").is_err());
        assert!(Literal::parse("¬¬a").is_err());
    }

    #[test]
    fn matrix_rejects_out_of_range_degree() {
        let language = VdaLanguage::new(vec![], vec!["a".into()], vec!["d".into()]).unwrap();
        let r = ActionMatrix::new(
            "S",
            vec![DutyVector::new("a", vec![3])],
            &language,
            DegreeRange::default(),
        );
        assert!(matches!(r, Err(VdaError::Schema(_))));
        let wide = DegreeRange { min: -3, max: 3 };
        assert!(
            ActionMatrix::new("S", vec![DutyVector::new("a", vec![3])], &language, wide).is_ok()
        );
    }
}

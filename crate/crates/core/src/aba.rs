//! Flat assumption-based argumentation: deductive systems, argument
//! construction by backward chaining, attacks, and projection to an abstract
//! argumentation framework.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::AttackGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbaError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("assumption `{0}` has no contrary")]
    Totality(String),
    #[error("assumption `{assumption}` is the head of rule `{rule}` (only flat frameworks are supported)")]
    Flatness { assumption: String, rule: String },
    #[error("derivation exceeded {cap} (limit {limit})")]
    Resource { cap: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, AbaError>;

/// Index of a sentence in a framework's language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sentence(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RuleId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArgumentId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: RuleId,
    pub label: String,
    pub head: Sentence,
    pub body: Vec<Sentence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub label: String,
    pub head: String,
    #[serde(default)]
    pub body: Vec<String>,
}

impl RuleSpec {
    pub fn new(label: impl Into<String>, head: impl Into<String>, body: &[&str]) -> Self {
        Self {
            label: label.into(),
            head: head.into(),
            body: body.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Unvalidated framework description by sentence name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbaSpec {
    pub language: Vec<String>,
    pub rules: Vec<RuleSpec>,
    pub assumptions: Vec<String>,
    pub contrary: BTreeMap<String, String>,
}

/// A validated flat ABA framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbaFramework {
    language: Vec<String>,
    rules: Vec<Rule>,
    assumptions: Vec<Sentence>,
    contrary: BTreeMap<Sentence, Sentence>,
    is_assumption: Vec<bool>,
}

pub fn validate_framework(spec: &AbaSpec) -> Result<AbaFramework> {
    let mut index: HashMap<&str, Sentence> = HashMap::new();
    for (i, name) in spec.language.iter().enumerate() {
        if name.is_empty() {
            return Err(AbaError::Schema("empty sentence in language".into()));
        }
        if index.insert(name.as_str(), Sentence(i)).is_some() {
            return Err(AbaError::Schema(format!("duplicate sentence `{name}`")));
        }
    }
    let lookup = |name: &str, role: &str| -> Result<Sentence> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| AbaError::Schema(format!("{role} `{name}` is not in the language")))
    };

    let mut assumptions = Vec::with_capacity(spec.assumptions.len());
    let mut is_assumption = vec![false; spec.language.len()];
    for name in &spec.assumptions {
        let s = lookup(name, "assumption")?;
        if is_assumption[s.0] {
            return Err(AbaError::Schema(format!("duplicate assumption `{name}`")));
        }
        is_assumption[s.0] = true;
        assumptions.push(s);
    }

    let mut contrary = BTreeMap::new();
    for (a, c) in &spec.contrary {
        let a_s = lookup(a, "contrary key")?;
        if !is_assumption[a_s.0] {
            return Err(AbaError::Schema(format!(
                "contrary given for `{a}`, which is not an assumption"
            )));
        }
        contrary.insert(a_s, lookup(c, "contrary")?);
    }
    if let Some(missing) = spec
        .assumptions
        .iter()
        .find(|a| !spec.contrary.contains_key(*a))
    {
        return Err(AbaError::Totality(missing.clone()));
    }

    let mut rules = Vec::with_capacity(spec.rules.len());
    let mut labels = BTreeSet::new();
    for (i, r) in spec.rules.iter().enumerate() {
        if !labels.insert(r.label.as_str()) {
            return Err(AbaError::Schema(format!(
                "duplicate rule label `{}`",
                r.label
            )));
        }
        let head = lookup(&r.head, "rule head")?;
        if is_assumption[head.0] {
            return Err(AbaError::Flatness {
                assumption: r.head.clone(),
                rule: r.label.clone(),
            });
        }
        let body = r
            .body
            .iter()
            .map(|b| lookup(b, "rule body member"))
            .collect::<Result<Vec<_>>>()?;
        rules.push(Rule {
            id: RuleId(i),
            label: r.label.clone(),
            head,
            body,
        });
    }

    Ok(AbaFramework {
        language: spec.language.clone(),
        rules,
        assumptions,
        contrary,
        is_assumption,
    })
}

impl AbaFramework {
    pub fn language(&self) -> &[String] {
        &self.language
    }

    pub fn name(&self, s: Sentence) -> &str {
        &self.language[s.0]
    }

    pub fn sentence(&self, name: &str) -> Option<Sentence> {
        self.language.iter().position(|n| n == name).map(Sentence)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id.0]
    }

    pub fn assumptions(&self) -> &[Sentence] {
        &self.assumptions
    }

    pub fn is_assumption(&self, s: Sentence) -> bool {
        self.is_assumption[s.0]
    }

    pub fn contrary(&self, assumption: Sentence) -> Option<Sentence> {
        self.contrary.get(&assumption).copied()
    }

    pub fn is_contrary_of_some_assumption(&self, s: Sentence) -> bool {
        self.contrary.values().any(|c| *c == s)
    }

    pub fn format_rule(&self, rule: &Rule) -> String {
        let body: Vec<&str> = rule.body.iter().map(|b| self.name(*b)).collect();
        if body.is_empty() {
            format!("{} ←", self.name(rule.head))
        } else {
            format!("{} ← {}", self.name(rule.head), body.join(", "))
        }
    }

    /// Back to the by-name description.
    pub fn to_spec(&self) -> AbaSpec {
        AbaSpec {
            language: self.language.clone(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleSpec {
                    label: r.label.clone(),
                    head: self.name(r.head).to_string(),
                    body: r.body.iter().map(|b| self.name(*b).to_string()).collect(),
                })
                .collect(),
            assumptions: self
                .assumptions
                .iter()
                .map(|a| self.name(*a).to_string())
                .collect(),
            contrary: self
                .contrary
                .iter()
                .map(|(a, c)| (self.name(*a).to_string(), self.name(*c).to_string()))
                .collect(),
        }
    }
}

/// A deduction tree. A rule node without children is a rule with an empty
/// body (its single child is the τ marker).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeductionTree {
    Assumption(Sentence),
    Rule {
        sentence: Sentence,
        rule: RuleId,
        children: Vec<DeductionTree>,
    },
}

impl DeductionTree {
    pub fn root(&self) -> Sentence {
        match self {
            Self::Assumption(s) => *s,
            Self::Rule { sentence, .. } => *sentence,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Assumption(_) => 0,
            Self::Rule { children, .. } => {
                1 + children.iter().map(DeductionTree::depth).max().unwrap_or(0)
            }
        }
    }

    fn collect(
        &self,
        is_root: bool,
        support: &mut BTreeSet<Sentence>,
        facts: &mut BTreeSet<Sentence>,
        rules: &mut BTreeSet<RuleId>,
    ) {
        match self {
            Self::Assumption(s) => {
                support.insert(*s);
            }
            Self::Rule {
                sentence,
                rule,
                children,
            } => {
                rules.insert(*rule);
                if children.is_empty() && !is_root {
                    facts.insert(*sentence);
                }
                for c in children {
                    c.collect(false, support, facts, rules);
                }
            }
        }
    }

    /// Renders the tree with one node per line.
    pub fn render(&self, framework: &AbaFramework) -> String {
        let mut out = String::new();
        self.render_into(framework, 0, &mut out);
        out
    }

    fn render_into(&self, framework: &AbaFramework, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            Self::Assumption(s) => {
                out.push_str(&format!("{pad}{} [assumption]\n", framework.name(*s)));
            }
            Self::Rule {
                sentence,
                rule,
                children,
            } => {
                out.push_str(&format!(
                    "{pad}{} [{}]\n",
                    framework.name(*sentence),
                    framework.rule(*rule).label
                ));
                if children.is_empty() {
                    out.push_str(&format!("{pad}  τ\n"));
                }
                for c in children {
                    c.render_into(framework, indent + 1, out);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argument {
    pub id: ArgumentId,
    /// Assumptions at the leaves.
    pub support: BTreeSet<Sentence>,
    /// Non-root sentences established by empty-body rules.
    pub facts: BTreeSet<Sentence>,
    pub conclusion: Sentence,
    pub rules_used: BTreeSet<RuleId>,
    pub tree: DeductionTree,
}

impl Argument {
    fn from_tree(id: ArgumentId, tree: DeductionTree) -> Self {
        let mut support = BTreeSet::new();
        let mut facts = BTreeSet::new();
        let mut rules_used = BTreeSet::new();
        tree.collect(true, &mut support, &mut facts, &mut rules_used);
        Self {
            id,
            support,
            facts,
            conclusion: tree.root(),
            rules_used,
            tree,
        }
    }

    /// Support together with the facts the deduction rests on.
    pub fn premises(&self) -> BTreeSet<Sentence> {
        self.support.union(&self.facts).copied().collect()
    }

    /// Rule applied at the root, if any.
    pub fn top_rule(&self) -> Option<RuleId> {
        match &self.tree {
            DeductionTree::Assumption(_) => None,
            DeductionTree::Rule { rule, .. } => Some(*rule),
        }
    }

    pub fn is_assumption_argument(&self) -> bool {
        matches!(self.tree, DeductionTree::Assumption(_))
    }

    /// `{premises} ⊢ conclusion`, premises sorted by language order.
    pub fn display(&self, framework: &AbaFramework) -> String {
        let names: Vec<&str> = self.premises().iter().map(|s| framework.name(*s)).collect();
        format!(
            "{{{}}} ⊢ {}",
            names.join(", "),
            framework.name(self.conclusion)
        )
    }

    fn identity(&self) -> (BTreeSet<Sentence>, Sentence, BTreeSet<RuleId>) {
        (
            self.support.clone(),
            self.conclusion,
            self.rules_used.clone(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeriveOptions {
    pub max_depth: usize,
    pub max_arguments: usize,
    /// Emit the `{a} ⊢ a` argument for every assumption.
    pub assumption_arguments: bool,
    /// Emit arguments with empty support whose conclusion is not the contrary
    /// of any assumption. They are unattackable and attack nothing.
    pub inert_facts: bool,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        Self {
            max_depth: 64,
            max_arguments: 100_000,
            assumption_arguments: true,
            inert_facts: false,
        }
    }
}

struct Deriver<'f> {
    framework: &'f AbaFramework,
    options: DeriveOptions,
    rules_by_head: Vec<Vec<RuleId>>,
}

impl Deriver<'_> {
    /// Every deduction tree for `s` that never repeats a sentence on a branch.
    fn trees(&self, s: Sentence, path: &mut Vec<Sentence>) -> Result<Vec<DeductionTree>> {
        if self.framework.is_assumption(s) {
            return Ok(vec![DeductionTree::Assumption(s)]);
        }
        if path.contains(&s) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for &rule in &self.rules_by_head[s.0] {
            out.extend(self.trees_via(rule, path)?);
            if out.len() > self.options.max_arguments {
                return Err(AbaError::Resource {
                    cap: "max_arguments",
                    limit: self.options.max_arguments,
                });
            }
        }
        Ok(out)
    }

    fn trees_via(&self, rule: RuleId, path: &mut Vec<Sentence>) -> Result<Vec<DeductionTree>> {
        let r = self.framework.rule(rule);
        if path.len() >= self.options.max_depth {
            return Err(AbaError::Resource {
                cap: "max_depth",
                limit: self.options.max_depth,
            });
        }
        path.push(r.head);
        let mut partials: Vec<Vec<DeductionTree>> = vec![Vec::new()];
        for &b in &r.body {
            let subtrees = self.trees(b, path)?;
            let mut next = Vec::with_capacity(partials.len() * subtrees.len());
            for partial in &partials {
                for t in &subtrees {
                    let mut p = partial.clone();
                    p.push(t.clone());
                    next.push(p);
                }
            }
            if next.len() > self.options.max_arguments {
                path.pop();
                return Err(AbaError::Resource {
                    cap: "max_arguments",
                    limit: self.options.max_arguments,
                });
            }
            partials = next;
            if partials.is_empty() {
                break;
            }
        }
        path.pop();
        Ok(partials
            .into_iter()
            .map(|children| DeductionTree::Rule {
                sentence: r.head,
                rule,
                children,
            })
            .collect())
    }
}

/// All arguments of `framework`, in construction order: assumption arguments
/// in assumption order, then arguments grouped by the rule applied at their
/// root, in rule order. Arguments with equal (support, conclusion, rules) are
/// kept once.
pub fn derive_arguments(
    framework: &AbaFramework,
    options: &DeriveOptions,
) -> Result<Vec<Argument>> {
    let mut rules_by_head = vec![Vec::new(); framework.language.len()];
    for r in &framework.rules {
        rules_by_head[r.head.0].push(r.id);
    }
    let deriver = Deriver {
        framework,
        options: *options,
        rules_by_head,
    };

    let mut trees = Vec::new();
    if options.assumption_arguments {
        trees.extend(
            framework
                .assumptions
                .iter()
                .map(|a| DeductionTree::Assumption(*a)),
        );
    }
    let mut path = Vec::new();
    for r in &framework.rules {
        trees.extend(deriver.trees_via(r.id, &mut path)?);
    }

    let mut seen = BTreeSet::new();
    let mut arguments = Vec::new();
    for tree in trees {
        let arg = Argument::from_tree(ArgumentId(arguments.len()), tree);
        if arg.support.is_empty()
            && !options.inert_facts
            && !framework.is_contrary_of_some_assumption(arg.conclusion)
        {
            continue;
        }
        if seen.insert(arg.identity()) {
            arguments.push(arg);
            if arguments.len() > options.max_arguments {
                return Err(AbaError::Resource {
                    cap: "max_arguments",
                    limit: options.max_arguments,
                });
            }
        }
    }
    Ok(arguments)
}

/// `(x, y)` whenever the conclusion of `x` is the contrary of an assumption
/// supporting `y`.
pub fn compute_attacks(
    arguments: &[Argument],
    framework: &AbaFramework,
) -> BTreeSet<(ArgumentId, ArgumentId)> {
    let mut attacks = BTreeSet::new();
    for x in arguments {
        for y in arguments {
            let hits = y
                .support
                .iter()
                .any(|a| framework.contrary(*a) == Some(x.conclusion));
            if hits {
                attacks.insert((x.id, y.id));
            }
        }
    }
    attacks
}

/// Structured arguments together with the attack graph over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aaf {
    arguments: Vec<Argument>,
    graph: AttackGraph,
}

impl Aaf {
    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn argument(&self, id: ArgumentId) -> &Argument {
        &self.arguments[id.0]
    }

    pub fn graph(&self) -> &AttackGraph {
        &self.graph
    }

    pub fn attacks(&self) -> Vec<(ArgumentId, ArgumentId)> {
        self.graph
            .edges()
            .map(|(a, b)| (ArgumentId(a), ArgumentId(b)))
            .collect()
    }
}

/// Packages arguments and attacks. Argument ids are renumbered densely in
/// the given order; attacks are remapped accordingly.
pub fn to_aaf(arguments: Vec<Argument>, attacks: &BTreeSet<(ArgumentId, ArgumentId)>) -> Aaf {
    let remap: HashMap<ArgumentId, usize> = arguments
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id, i))
        .collect();
    let edges = attacks
        .iter()
        .filter_map(|(x, y)| Some((*remap.get(x)?, *remap.get(y)?)));
    let graph = AttackGraph::new(arguments.len(), edges);
    let arguments = arguments
        .into_iter()
        .enumerate()
        .map(|(i, mut a)| {
            a.id = ArgumentId(i);
            a
        })
        .collect();
    Aaf { arguments, graph }
}

/// Derivation, attacks and packaging in one step.
pub fn build_aaf(framework: &AbaFramework, options: &DeriveOptions) -> Result<Aaf> {
    let arguments = derive_arguments(framework, options)?;
    let attacks = compute_attacks(&arguments, framework);
    Ok(to_aaf(arguments, &attacks))
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

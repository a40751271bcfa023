//! Grounded, complete, preferred and stable extensions of an attack graph,
//! and per-argument acceptance status.
//!
//! Complete extensions are enumerated as complete labellings (in/out/undec)
//! by depth-first search with constraint propagation; preferred and stable
//! extensions are filtered from them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("framework has {size} arguments, above the enumeration limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("unknown semantics `{0}` (expected grounded, complete, preferred or stable)")]
    UnknownSemantics(String),
}

pub type Result<T> = std::result::Result<T, SemanticsError>;

/// Enumeration limit for complete/preferred/stable.
pub const MAX_ENUMERATION_ARGUMENTS: usize = 4096;

/// Directed attack relation over arguments `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AttackGraph {
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl AttackGraph {
    /// Edges with an endpoint outside `0..n` are dropped.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<(usize, usize)> =
            edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let mut attackers = vec![Vec::new(); n];
        let mut targets = vec![Vec::new(); n];
        for &(a, b) in &edges {
            attackers[b].push(a);
            targets[a].push(b);
        }
        Self {
            attackers,
            targets,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.attackers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attackers.is_empty()
    }

    pub fn attackers(&self, x: usize) -> &[usize] {
        &self.attackers[x]
    }

    pub fn targets(&self, x: usize) -> &[usize] {
        &self.targets[x]
    }

    pub fn attacks(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_conflict_free(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&x| self.targets[x].iter().all(|y| !set.contains(y)))
    }

    pub fn defends(&self, set: &BTreeSet<usize>, x: usize) -> bool {
        self.attackers[x]
            .iter()
            .all(|&y| self.attackers[y].iter().any(|z| set.contains(z)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Grounded,
        Semantics::Complete,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Grounded => "grounded",
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.as_str() == s)
            .ok_or_else(|| SemanticsError::UnknownSemantics(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Extension {
    pub members: BTreeSet<usize>,
    pub semantics: Semantics,
}

impl Extension {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }
}

/// Least fixpoint of the characteristic function.
pub fn grounded(graph: &AttackGraph) -> Extension {
    let n = graph.len();
    let mut inside = vec![false; n];
    let mut defeated = vec![false; n];
    let mut live_attackers: Vec<usize> = (0..n).map(|x| graph.attackers(x).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&x| live_attackers[x] == 0).collect();
    while let Some(x) = queue.pop() {
        if inside[x] {
            continue;
        }
        inside[x] = true;
        for &y in graph.targets(x) {
            if defeated[y] {
                continue;
            }
            defeated[y] = true;
            for &z in graph.targets(y) {
                live_attackers[z] -= 1;
                if live_attackers[z] == 0 && !defeated[z] {
                    queue.push(z);
                }
            }
        }
    }
    Extension {
        members: (0..n).filter(|&x| inside[x]).collect(),
        semantics: Semantics::Grounded,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Unset,
    In,
    Out,
    Undec,
}

struct LabellingSearch<'g> {
    graph: &'g AttackGraph,
    found: Vec<Vec<Label>>,
}

impl LabellingSearch<'_> {
    /// Label forced on `x` once all its attackers are labelled.
    fn required(&self, labels: &[Label], x: usize) -> Option<Label> {
        let mut all_out = true;
        for &y in self.graph.attackers(x) {
            match labels[y] {
                Label::In => return Some(Label::Out),
                Label::Out => {}
                Label::Undec => all_out = false,
                Label::Unset => return None,
            }
        }
        Some(if all_out { Label::In } else { Label::Undec })
    }

    fn assign(&self, labels: &mut [Label], x: usize, label: Label, work: &mut Vec<usize>) -> bool {
        match labels[x] {
            Label::Unset => {
                labels[x] = label;
                work.push(x);
                true
            }
            current => current == label,
        }
    }

    fn propagate(&self, labels: &mut [Label], mut work: Vec<usize>) -> bool {
        while let Some(x) = work.pop() {
            // Local consequences of x's label.
            if labels[x] == Label::In {
                for &y in self.graph.attackers(x).iter().chain(self.graph.targets(x)) {
                    if !self.assign(labels, y, Label::Out, &mut work) {
                        return false;
                    }
                }
            }
            if labels[x] == Label::Out
                && self
                    .graph
                    .attackers(x)
                    .iter()
                    .all(|&y| matches!(labels[y], Label::Out | Label::Undec))
            {
                return false;
            }
            // x and each target of x may now be fully determined.
            let mut check: Vec<usize> = self.graph.targets(x).to_vec();
            check.push(x);
            for z in check {
                if let Some(req) = self.required(labels, z) {
                    if !self.assign(labels, z, req, &mut work) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, mut labels: Vec<Label>) {
        let next = labels.iter().position(|l| *l == Label::Unset);
        let Some(x) = next else {
            self.found.push(labels);
            return;
        };
        for choice in [Label::In, Label::Out, Label::Undec] {
            let mut attempt = labels.clone();
            attempt[x] = choice;
            if self.propagate(&mut attempt, vec![x]) {
                self.search(attempt);
            }
        }
        labels.clear();
    }
}

fn check_size(graph: &AttackGraph) -> Result<()> {
    if graph.len() > MAX_ENUMERATION_ARGUMENTS {
        return Err(SemanticsError::TooLarge {
            size: graph.len(),
            limit: MAX_ENUMERATION_ARGUMENTS,
        });
    }
    Ok(())
}

/// Complete labellings as `(in, undec)` member sets.
fn complete_labellings(graph: &AttackGraph) -> Result<Vec<(BTreeSet<usize>, bool)>> {
    check_size(graph)?;
    let n = graph.len();
    // Seed with the grounded labelling, which every complete labelling extends.
    let g = grounded(graph);
    let mut labels = vec![Label::Unset; n];
    let mut work = Vec::new();
    for &x in &g.members {
        labels[x] = Label::In;
        work.push(x);
    }
    let mut search = LabellingSearch {
        graph,
        found: Vec::new(),
    };
    if !search.propagate(&mut labels, work) {
        unreachable!("grounded labelling is always consistent");
    }
    search.search(labels);
    let mut out: Vec<(BTreeSet<usize>, bool)> = search
        .found
        .into_iter()
        .map(|labels| {
            let members = (0..n).filter(|&x| labels[x] == Label::In).collect();
            let has_undec = labels.contains(&Label::Undec);
            (members, has_undec)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn wrap(sets: impl IntoIterator<Item = BTreeSet<usize>>, semantics: Semantics) -> Vec<Extension> {
    let mut out: Vec<Extension> = sets
        .into_iter()
        .map(|members| Extension { members, semantics })
        .collect();
    out.sort();
    out
}

pub fn complete(graph: &AttackGraph) -> Result<Vec<Extension>> {
    Ok(wrap(
        complete_labellings(graph)?.into_iter().map(|(m, _)| m),
        Semantics::Complete,
    ))
}

/// ⊆-maximal complete extensions.
pub fn preferred(graph: &AttackGraph) -> Result<Vec<Extension>> {
    let all: Vec<BTreeSet<usize>> = complete_labellings(graph)?
        .into_iter()
        .map(|(m, _)| m)
        .collect();
    let maximal = all
        .iter()
        .filter(|e| !all.iter().any(|f| f.len() > e.len() && e.is_subset(f)))
        .cloned();
    Ok(wrap(maximal, Semantics::Preferred))
}

/// Complete labellings without undecided arguments.
pub fn stable(graph: &AttackGraph) -> Result<Vec<Extension>> {
    Ok(wrap(
        complete_labellings(graph)?
            .into_iter()
            .filter(|(_, undec)| !undec)
            .map(|(m, _)| m),
        Semantics::Stable,
    ))
}

pub fn extensions(graph: &AttackGraph, semantics: Semantics) -> Result<Vec<Extension>> {
    match semantics {
        Semantics::Grounded => Ok(vec![grounded(graph)]),
        Semantics::Complete => complete(graph),
        Semantics::Preferred => preferred(graph),
        Semantics::Stable => stable(graph),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// In every extension.
    SkepticallyJustified,
    /// In at least one but not every extension.
    CredulouslyJustified,
    /// Attacked by a skeptically justified argument.
    SkepticallyRejected,
    /// Attacked by a credulously justified argument.
    CredulouslyRejected,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::SkepticallyJustified => "skeptically justified",
            Status::CredulouslyJustified => "credulously justified",
            Status::SkepticallyRejected => "skeptically rejected",
            Status::CredulouslyRejected => "credulously rejected",
            Status::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentStatus {
    pub status: Status,
    /// Member of at least one extension.
    pub credulously_accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptanceStatus {
    pub semantics: Semantics,
    pub extensions: Vec<Extension>,
    pub statuses: Vec<ArgumentStatus>,
    /// Set when the semantics admits no extension; statuses are then vacuous.
    pub diagnostic: Option<String>,
}

impl AcceptanceStatus {
    pub fn status(&self, x: usize) -> Status {
        self.statuses[x].status
    }

    pub fn credulously_accepted(&self, x: usize) -> bool {
        self.statuses[x].credulously_accepted
    }

    pub fn skeptically_justified(&self, x: usize) -> bool {
        self.statuses[x].status == Status::SkepticallyJustified
    }
}

/// Statuses derived from a precomputed extension set.
pub fn status_from_extensions(
    graph: &AttackGraph,
    semantics: Semantics,
    extensions: Vec<Extension>,
) -> AcceptanceStatus {
    let n = graph.len();
    if extensions.is_empty() {
        return AcceptanceStatus {
            semantics,
            extensions,
            statuses: vec![
                ArgumentStatus {
                    status: Status::Undecided,
                    credulously_accepted: false,
                };
                n
            ],
            diagnostic: Some(format!(
                "no {semantics} extension exists; every status is vacuous"
            )),
        };
    }
    let count = |x: usize| extensions.iter().filter(|e| e.contains(x)).count();
    let membership: Vec<usize> = (0..n).map(count).collect();
    let skeptical = |x: usize| membership[x] == extensions.len();
    let credulous = |x: usize| membership[x] > 0 && membership[x] < extensions.len();
    let statuses = (0..n)
        .map(|x| {
            let status = if skeptical(x) {
                Status::SkepticallyJustified
            } else if credulous(x) {
                Status::CredulouslyJustified
            } else if graph.attackers(x).iter().any(|&y| skeptical(y)) {
                Status::SkepticallyRejected
            } else if graph.attackers(x).iter().any(|&y| credulous(y)) {
                Status::CredulouslyRejected
            } else {
                Status::Undecided
            };
            ArgumentStatus {
                status,
                credulously_accepted: membership[x] > 0,
            }
        })
        .collect();
    AcceptanceStatus {
        semantics,
        extensions,
        statuses,
        diagnostic: None,
    }
}

pub fn acceptance_status(graph: &AttackGraph, semantics: Semantics) -> Result<AcceptanceStatus> {
    let exts = extensions(graph, semantics)?;
    Ok(status_from_extensions(graph, semantics, exts))
}

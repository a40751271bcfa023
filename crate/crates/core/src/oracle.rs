//! Naive reference implementations for cross-checking the solvers, and
//! seeded generators of random agents and attack graphs.
//!
//! Nothing here calls into the production preference or semantics code; the
//! only shared pieces are the data types.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::{AttackGraph, Semantics};
use crate::vda::{
    ActionMatrix, DegreeRange, Disjunct, DutyVector, Principle, Situation, VdaAgent, VdaError,
    VdaLanguage,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} of size {size} exceeds the brute-force limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Vda(#[from] VdaError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

pub const MAX_PERMUTED_ACTIONS: usize = 7;
pub const MAX_SUBSET_ARGUMENTS: usize = 16;

fn weakly(a: &[i32], b: &[i32], principle: &Principle) -> bool {
    principle.disjuncts().iter().any(|u| {
        a.iter()
            .zip(b)
            .zip(&u.bounds)
            .all(|((x, y), l)| x - y >= *l)
    })
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in all_permutations(n - 1) {
        for pos in 0..=tail.len() {
            let mut p = tail.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// First elements of every total order of the actions in which no later
/// action is strictly preferred to an earlier one.
pub fn brute_force_solutions(agent: &VdaAgent, situation: &str) -> Result<BTreeSet<String>> {
    let matrix = agent.matrix(situation)?;
    let actions = agent.language().actions();
    if actions.len() > MAX_PERMUTED_ACTIONS {
        return Err(OracleError::TooLarge {
            what: "action set",
            size: actions.len(),
            limit: MAX_PERMUTED_ACTIONS,
        });
    }
    let rows: Vec<&[i32]> = actions
        .iter()
        .map(|a| matrix.vector(a).map(|v| v.values.as_slice()))
        .collect::<std::result::Result<_, _>>()?;
    let p = agent.principle();
    let strict = |i: usize, j: usize| weakly(rows[i], rows[j], p) && !weakly(rows[j], rows[i], p);

    let mut firsts = BTreeSet::new();
    for order in all_permutations(actions.len()) {
        let valid =
            (0..order.len()).all(|i| (i + 1..order.len()).all(|j| !strict(order[j], order[i])));
        if valid {
            firsts.insert(actions[order[0]].clone());
        }
    }
    Ok(firsts)
}

/// Every subset of arguments checked against the textbook definitions.
pub fn brute_force_extensions(
    graph: &AttackGraph,
    semantics: Semantics,
) -> Result<BTreeSet<BTreeSet<usize>>> {
    let n = graph.len();
    if n > MAX_SUBSET_ARGUMENTS {
        return Err(OracleError::TooLarge {
            what: "argument set",
            size: n,
            limit: MAX_SUBSET_ARGUMENTS,
        });
    }
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let attacks = |x: usize, y: usize| edges.contains(&(x, y));
    let members = |mask: u32| (0..n).filter(move |&i| mask & (1 << i) != 0);

    let conflict_free = |mask: u32| members(mask).all(|x| members(mask).all(|y| !attacks(x, y)));
    let defends = |mask: u32, x: usize| {
        (0..n)
            .filter(|&y| attacks(y, x))
            .all(|y| members(mask).any(|z| attacks(z, y)))
    };
    let admissible = |mask: u32| conflict_free(mask) && members(mask).all(|x| defends(mask, x));
    let complete =
        |mask: u32| admissible(mask) && (0..n).all(|x| mask & (1 << x) != 0 || !defends(mask, x));

    let all: Vec<u32> = (0..(1u32 << n)).collect();
    let completes: Vec<u32> = all.iter().copied().filter(|&m| complete(m)).collect();
    let chosen: Vec<u32> = match semantics {
        Semantics::Complete => completes,
        Semantics::Grounded => completes
            .iter()
            .copied()
            .filter(|&m| completes.iter().all(|&o| m & o == m))
            .collect(),
        Semantics::Preferred => {
            let adm: Vec<u32> = all.iter().copied().filter(|&m| admissible(m)).collect();
            adm.iter()
                .copied()
                .filter(|&m| !adm.iter().any(|&o| o != m && o & m == m))
                .collect()
        }
        Semantics::Stable => all
            .iter()
            .copied()
            .filter(|&m| {
                conflict_free(m)
                    && (0..n)
                        .filter(|&y| m & (1 << y) == 0)
                        .all(|y| members(m).any(|x| attacks(x, y)))
            })
            .collect(),
    };
    Ok(chosen.into_iter().map(|m| members(m).collect()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssumptionPolicy {
    /// Values are drawn freely; some vectors may satisfy no duty.
    Natural,
    /// Every vector gets at least one satisfied duty, so all are assumptions.
    AllSatisfying,
}

/// Shape of a random agent. Counts are maxima; actual counts are drawn
/// uniformly from `1..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomVdaSpec {
    pub seed: u64,
    pub max_actions: usize,
    pub max_duties: usize,
    pub values: DegreeRange,
    pub max_disjuncts: usize,
    /// Inclusive range for disjunct bounds.
    pub bounds: (i32, i32),
    pub policy: AssumptionPolicy,
}

impl RandomVdaSpec {
    pub fn new(seed: u64) -> Self {
        RandomVdaSpec {
            seed,
            max_actions: 5,
            max_duties: 4,
            values: DegreeRange::default(),
            max_disjuncts: 4,
            bounds: (-4, 2),
            policy: AssumptionPolicy::Natural,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomInstance {
    pub agent: VdaAgent,
    pub situation: String,
}

pub fn random_vda(spec: &RandomVdaSpec) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n_actions = rng.gen_range(1..=spec.max_actions.max(1));
    let n_duties = rng.gen_range(1..=spec.max_duties.max(1));
    let n_disjuncts = rng.gen_range(1..=spec.max_disjuncts.max(1));

    let actions: Vec<String> = (0..n_actions).map(|i| format!("a{}", i + 1)).collect();
    let duties: Vec<String> = (0..n_duties).map(|i| format!("d{}", i + 1)).collect();
    let language = VdaLanguage::new(Vec::new(), actions.clone(), duties)
        .expect("generated names are distinct");

    let vectors = actions
        .iter()
        .map(|a| {
            let mut values: Vec<i32> = (0..n_duties)
                .map(|_| rng.gen_range(spec.values.min..=spec.values.max))
                .collect();
            if spec.policy == AssumptionPolicy::AllSatisfying
                && spec.values.max >= 1
                && values.iter().all(|&v| v < 1)
            {
                let k = rng.gen_range(0..n_duties);
                values[k] = rng.gen_range(1..=spec.values.max);
            }
            DutyVector::new(a.as_str(), values)
        })
        .collect();
    let disjuncts = (0..n_disjuncts)
        .map(|i| {
            let bounds = (0..n_duties)
                .map(|_| rng.gen_range(spec.bounds.0..=spec.bounds.1))
                .collect();
            Disjunct::new(format!("u{}", i + 1), bounds)
        })
        .collect();

    let situation = Situation::from_perceptions("S", [], &[]).expect("empty situation");
    let matrix = ActionMatrix::new("S", vectors, &language, spec.values)
        .expect("generated values lie in range");
    let principle = Principle::new(disjuncts, n_duties).expect("generated bounds cover duties");
    let agent = VdaAgent::new(
        language,
        vec![situation],
        vec![matrix],
        principle,
        spec.values,
    )
    .expect("generated agent is consistent");
    RandomInstance {
        agent,
        situation: "S".to_string(),
    }
}

/// A graph with up to `max_args` arguments and a random edge density in
/// `[0, max_density]`; self-attacks allowed.
pub fn random_aaf(seed: u64, max_args: usize, max_density: f64) -> AttackGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_args);
    let density = rng.gen_range(0.0..=max_density);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                edges.push((x, y));
            }
        }
    }
    AttackGraph::new(n, edges)
}

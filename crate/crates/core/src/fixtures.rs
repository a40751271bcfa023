//! Worked examples: the eldercare robot and the Nixon diamond.

use std::collections::BTreeMap;

use crate::aba::{AbaSpec, RuleSpec};
use crate::framework::{EpistemicRule, EpistemicSpec};
use crate::vda::{
    ActionMatrix, DegreeRange, Disjunct, DutyVector, Literal, Principle, Situation, VdaAgent,
    VdaLanguage,
};

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub const ELDERCARE_ATOMS: [&str; 10] = ["lb", "mrt", "r", "rm", "fc", "ni", "w", "pi", "e", "iw"];
pub const ELDERCARE_ACTIONS: [&str; 6] =
    ["charge", "remind", "engage", "warn", "notify", "seekTask"];
pub const ELDERCARE_DUTIES: [&str; 7] = ["MHC", "MMR", "mH2P", "MG2P", "mNI", "MRA", "MPPI"];

pub fn eldercare_duty_names() -> BTreeMap<String, String> {
    [
        ("MHC", "Maximize Honor Commitments"),
        ("MMR", "Maximize Maintain Readiness"),
        ("mH2P", "Minimize Harm to Patient"),
        ("MG2P", "Maximize Good to Patient"),
        ("mNI", "Minimize Non-Interaction"),
        ("MRA", "Maximize Respect Autonomy"),
        ("MPPI", "Maximize Prevent Persistent Immobility"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

pub fn eldercare_principle() -> Principle {
    let rows: [(&str, [i32; 7]); 10] = [
        ("u1", [-1, -4, -4, -2, -4, -4, 2]),
        ("u2", [-1, -4, -4, -2, 0, 0, 1]),
        ("u3", [0, -3, 0, -1, 0, 1, 0]),
        ("u4", [0, -3, 0, 1, 0, 0, 0]),
        ("u5", [0, -1, 0, 0, 0, 0, 0]),
        ("u6", [0, -3, 0, -1, 1, -1, 0]),
        ("u7", [-1, -4, 1, -2, -4, -4, 0]),
        ("u8", [1, -3, 0, -2, -4, -4, 0]),
        ("u9", [0, 3, 0, -2, 0, 0, 0]),
        ("u10", [-1, -4, 1, -1, -4, -4, -1]),
    ];
    Principle::new(
        rows.iter()
            .map(|(id, b)| Disjunct::new(*id, b.to_vec()))
            .collect(),
        7,
    )
    .expect("eldercare principle is well formed")
}

fn matrix(language: &VdaLanguage, situation: &str, rows: [[i32; 7]; 6]) -> ActionMatrix {
    let vectors = ELDERCARE_ACTIONS
        .iter()
        .zip(rows)
        .map(|(a, v)| DutyVector::new(*a, v.to_vec()))
        .collect();
    ActionMatrix::new(situation, vectors, language, DegreeRange::default())
        .expect("eldercare matrix is well formed")
}

/// The eldercare agent with situations S1, S2 (conflicting perceptions, no
/// matrix) and S2J (the justified version of S2).
pub fn eldercare_agent() -> VdaAgent {
    let language = VdaLanguage::with_extension_atoms(
        strings(&ELDERCARE_ATOMS),
        strings(&["ab"]),
        strings(&ELDERCARE_ACTIONS),
        strings(&ELDERCARE_DUTIES),
    )
    .expect("eldercare language is well formed");
    let base = language.atoms().to_vec();
    let extended = language.all_atoms();
    let situations = vec![
        Situation::from_perceptions("S1", ["mrt", "r", "rm", "fc"], &base).unwrap(),
        Situation::from_perceptions("S2", ["mrt", "r", "rm", "fc", "lb", "ab"], &extended).unwrap(),
        Situation::from_perceptions("S2J", ["lb", "mrt", "r", "rm", "ab"], &extended).unwrap(),
    ];
    let s1 = matrix(
        &language,
        "S1",
        [
            [0, 1, -1, -1, 0, 0, 0],
            [-1, -1, -1, -1, 0, 0, 0],
            [0, -1, -1, -1, 0, 0, 0],
            [0, 0, 1, -1, 0, -1, 0],
            [0, 0, 1, -1, 0, -2, 0],
            [0, -1, -1, 1, 0, 0, 0],
        ],
    );
    let s2j = matrix(
        &language,
        "S2J",
        [
            [0, 2, -1, -1, 0, 0, 0],
            [-1, -2, -1, -1, 0, 0, 0],
            [0, -2, -1, -1, 0, 0, 0],
            [0, 0, 1, -1, 0, -1, 0],
            [0, 0, 1, -1, 0, -2, 0],
            [0, -1, -1, 1, 0, 0, 0],
        ],
    );
    VdaAgent::new(
        language,
        situations,
        vec![s1, s2j],
        eldercare_principle(),
        DegreeRange::default(),
    )
    .expect("eldercare agent is well formed")
}

/// Epistemic knowledge of S2: `lb` and `fc` exclude each other unless the
/// battery is abnormal, and it is known to be abnormal.
pub fn s2_epistemic_spec() -> EpistemicSpec {
    let rule = |label: &str, head: Literal, body: Vec<Literal>| EpistemicRule {
        label: label.to_string(),
        head,
        body,
    };
    EpistemicSpec {
        rules: vec![
            rule("r11", Literal::neg("fc"), vec![Literal::pos("lb")]),
            rule(
                "r12",
                Literal::neg("lb"),
                vec![Literal::pos("fc"), Literal::neg("ab")],
            ),
            rule("r13", Literal::pos("ab"), vec![]),
        ],
        facts: vec![],
        assumptions: vec![Literal::pos("fc"), Literal::pos("lb"), Literal::neg("ab")],
        contraries: BTreeMap::new(),
    }
}

pub fn s2_perceptions() -> Vec<String> {
    strings(&["mrt", "r", "rm", "fc", "lb", "ab"])
}

pub fn nixon_spec() -> AbaSpec {
    AbaSpec {
        language: strings(&[
            "Quaker(RN)",
            "Republican(RN)",
            "pacifist(RN)",
            "¬pacifist(RN)",
            "asm_p(RN)",
            "asm_¬p(RN)",
        ]),
        rules: vec![
            RuleSpec::new("q", "Quaker(RN)", &[]),
            RuleSpec::new("rep", "Republican(RN)", &[]),
            RuleSpec::new("p", "pacifist(RN)", &["Quaker(RN)", "asm_p(RN)"]),
            RuleSpec::new("np", "¬pacifist(RN)", &["Republican(RN)", "asm_¬p(RN)"]),
        ],
        assumptions: strings(&["asm_p(RN)", "asm_¬p(RN)"]),
        contrary: [
            ("asm_p(RN)", "¬pacifist(RN)"),
            ("asm_¬p(RN)", "pacifist(RN)"),
        ]
        .into_iter()
        .map(|(a, c)| (a.to_string(), c.to_string()))
        .collect(),
    }
}

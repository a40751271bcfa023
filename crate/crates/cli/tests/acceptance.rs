//! One line per acceptance criterion. Thresholds are pinned below; the run
//! fails if any criterion fails, after every criterion has been reported.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use vda_argumentation::aba::{self, validate_framework, Aaf, AbaFramework, DeriveOptions};
use vda_argumentation::explain::{self, Verdict};
use vda_argumentation::fixtures;
use vda_argumentation::framework::{
    epistemic_reasoning, justified_situation, practical_framework, practical_reasoning,
    PRACTICAL_DERIVATION,
};
use vda_argumentation::oracle::{self, RandomVdaSpec, MAX_SUBSET_ARGUMENTS};
use vda_argumentation::semantics::{self, AttackGraph, Semantics};
use vda_argumentation::vda::Literal;
use vda_cli::agent_file::{self, AbaFile, AgentFile, Input};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C4_SEEDS: u64 = 1000;
const C4_LIMIT: Duration = Duration::from_secs(60);
const C6_GRAPHS: u64 = 500;
const C6_MAX_ARGS: usize = 12;
const C6_MAX_DENSITY: f64 = 0.4;
const C6_LIMIT: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

/// Complete extensions, by subset enumeration whenever the graph is small
/// enough and by the solver otherwise (the solver itself is checked against
/// the enumeration in criterion 6).
fn complete_extensions(g: &AttackGraph) -> BTreeSet<BTreeSet<usize>> {
    if g.len() <= MAX_SUBSET_ARGUMENTS {
        oracle::brute_force_extensions(g, Semantics::Complete).unwrap()
    } else {
        semantics::complete(g)
            .unwrap()
            .into_iter()
            .map(|e| e.members)
            .collect()
    }
}

fn grounded_by_oracle(g: &AttackGraph) -> BTreeSet<usize> {
    // Least fixpoint of the characteristic function.
    let mut current = BTreeSet::new();
    loop {
        let next: BTreeSet<usize> = (0..g.len())
            .filter(|&x| {
                g.attackers(x)
                    .iter()
                    .all(|&y| g.attackers(y).iter().any(|z| current.contains(z)))
            })
            .collect();
        if next == current {
            return current;
        }
        current = next;
    }
}

fn arguments_concluding(aaf: &Aaf, f: &AbaFramework, sentence: &str) -> Vec<usize> {
    aaf.arguments()
        .iter()
        .filter(|a| f.name(a.conclusion) == sentence)
        .map(|a| a.id.0)
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let agent = fixtures::eldercare_agent();
    let res = practical_reasoning(&agent, "S1", Semantics::Grounded).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let f = &res.framework.framework;
    let shown: Vec<String> = f
        .rules()
        .iter()
        .filter(|r| !r.label.starts_with("fact:"))
        .map(|r| {
            let body: Vec<&str> = r.body.iter().map(|&s| f.name(s)).collect();
            format!("{}: {} <- {}", r.label, f.name(r.head), body.join(", "))
        })
        .collect();
    let expected = [
        "r1: charge <- v_S1(charge)",
        "r2: warn <- v_S1(warn)",
        "r3: notify <- v_S1(notify)",
        "r4: seekTask <- v_S1(seekTask)",
        "r5: ¬v_S1(charge) <- u7, v_S1(warn)",
        "r6: ¬v_S1(charge) <- u7, v_S1(notify)",
        "r7: ¬v_S1(charge) <- u4, v_S1(seekTask)",
        "r8: ¬v_S1(notify) <- u5, v_S1(warn)",
        "r9: ¬v_S1(seekTask) <- u7, v_S1(warn)",
        "r10: ¬v_S1(seekTask) <- u7, v_S1(notify)",
    ];
    ensure(shown == expected, || format!("rules {shown:?}"))?;
    ensure(res.aaf.arguments().len() == 10, || {
        format!("{} arguments", res.aaf.arguments().len())
    })?;
    let g = grounded_by_oracle(res.aaf.graph());
    ensure(g == set(&[1, 4, 7, 8]), || format!("grounded {g:?}"))?;
    let solutions = oracle::brute_force_solutions(&agent, "S1").map_err(|e| e.to_string())?;
    ensure(solutions == BTreeSet::from(["warn".to_string()]), || {
        format!("solutions {solutions:?}")
    })?;
    let justified = res.skeptically_justified_actions();
    ensure(justified == ["warn"], || format!("justified {justified:?}"))?;
    ensure(elapsed < C1_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "10 rules, 10 arguments, grounded {{X2, X5, X8, X9}}, warn, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let f = validate_framework(&fixtures::nixon_spec()).map_err(|e| e.to_string())?;
    let aaf = aba::build_aaf(&f, &DeriveOptions::default()).map_err(|e| e.to_string())?;
    let g = aaf.graph();
    let y = |name: &str| arguments_concluding(&aaf, &f, name);
    let (y1, y2, y3, y4) = (
        y("asm_p(RN)"),
        y("asm_¬p(RN)"),
        y("pacifist(RN)"),
        y("¬pacifist(RN)"),
    );
    ensure(
        [&y1, &y2, &y3, &y4].iter().all(|v| v.len() == 1) && g.len() == 4,
        || format!("{} arguments", g.len()),
    )?;
    let pair = |a: &[usize], b: &[usize]| set(&[a[0], b[0]]);
    let two = BTreeSet::from([pair(&y1, &y3), pair(&y2, &y4)]);

    let grounded = grounded_by_oracle(g);
    ensure(grounded.is_empty(), || format!("grounded {grounded:?}"))?;
    let complete = oracle::brute_force_extensions(g, Semantics::Complete).unwrap();
    ensure(complete.len() == 3, || {
        format!("{} complete", complete.len())
    })?;
    for sem in [Semantics::Preferred, Semantics::Stable] {
        let got: BTreeSet<BTreeSet<usize>> = semantics::extensions(g, sem)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|e| e.members)
            .collect();
        ensure(got == two, || format!("{sem:?} {got:?}"))?;
    }
    let st = semantics::acceptance_status(g, Semantics::Preferred).map_err(|e| e.to_string())?;
    for x in 0..4 {
        ensure(
            st.credulously_accepted(x) && !st.skeptically_justified(x),
            || format!("status of Y{}", x + 1),
        )?;
    }
    Ok("grounded {}, 3 complete, preferred = stable = {Y1, Y3} and {Y2, Y4}".into())
}

fn criterion_3() -> Outcome {
    let agent = fixtures::eldercare_agent();
    let universe = agent.language().all_atoms();
    let spec = fixtures::s2_epistemic_spec();
    let res =
        epistemic_reasoning(&spec, &universe, Semantics::Grounded).map_err(|e| e.to_string())?;
    let f = &res.framework.framework;
    let aaf = &res.aaf;
    ensure(aaf.arguments().len() == 6, || {
        format!("{} arguments", aaf.arguments().len())
    })?;
    let attacks: BTreeSet<(usize, usize)> = aaf.graph().edges().collect();
    let expected = BTreeSet::from([(3, 0), (3, 4), (4, 1), (4, 3), (5, 2), (5, 4)]);
    ensure(attacks == expected, || format!("attacks {attacks:?}"))?;
    for sem in Semantics::ALL {
        let exts = oracle::brute_force_extensions(aaf.graph(), sem).unwrap();
        ensure(exts == BTreeSet::from([set(&[1, 3, 5])]), || {
            format!("{sem:?} extensions {exts:?}")
        })?;
    }
    let conclusions: BTreeSet<&str> = [1, 3, 5]
        .iter()
        .map(|&i| f.name(aaf.arguments()[i].conclusion))
        .collect();
    ensure(conclusions == BTreeSet::from(["lb", "¬fc", "ab"]), || {
        format!("conclusions {conclusions:?}")
    })?;

    let p2: BTreeSet<String> = fixtures::s2_perceptions().into_iter().collect();
    let js = justified_situation(&spec, &universe, &p2, Semantics::Grounded, "S2^J")
        .map_err(|e| e.to_string())?;
    let want_p: BTreeSet<String> = ["lb", "mrt", "r", "rm", "ab"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let got_p: BTreeSet<String> = js.perceptions.iter().cloned().collect();
    ensure(got_p == want_p, || format!("P2^J {got_p:?}"))?;
    let printed = [
        "lb", "mrt", "r", "rm", "¬fc", "¬ni", "¬w", "¬pi", "¬e", "¬iw", "ab",
    ];
    let want: BTreeSet<Literal> = printed.iter().map(|l| Literal::parse(l).unwrap()).collect();
    let got: BTreeSet<Literal> = js.situation.literals().iter().cloned().collect();
    ensure(got == want, || format!("S2^J {got:?}"))?;
    Ok("6 arguments, 6 attacks, extension {Y2, Y4, Y6}, S2^J as printed".into())
}

struct Corpus {
    single: usize,
    split_grounded: Vec<u64>,
    accept_mismatch: Vec<u64>,
    elapsed: Duration,
}

fn run_corpus() -> Corpus {
    let start = Instant::now();
    let mut c = Corpus {
        single: 0,
        split_grounded: Vec::new(),
        accept_mismatch: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for seed in 0..C4_SEEDS {
        let inst = oracle::random_vda(&RandomVdaSpec::new(seed));
        let agent = &inst.agent;
        let solutions = oracle::brute_force_solutions(agent, &inst.situation).unwrap();
        let pf = practical_framework(agent, &inst.situation).unwrap();
        let aaf = aba::build_aaf(&pf.framework, &PRACTICAL_DERIVATION).unwrap();
        let g = aaf.graph();
        let complete = complete_extensions(g);

        if solutions.len() == 1 {
            c.single += 1;
            let grounded = grounded_by_oracle(g);
            if complete.len() != 1 || !complete.contains(&grounded) {
                c.split_grounded.push(seed);
            }
        }

        let accepted: BTreeSet<String> = agent
            .language()
            .actions()
            .iter()
            .filter(|a| {
                arguments_concluding(&aaf, &pf.framework, a)
                    .iter()
                    .any(|x| complete.iter().any(|e| e.contains(x)))
            })
            .cloned()
            .collect();
        if accepted != solutions {
            c.accept_mismatch.push(seed);
        }
    }
    c.elapsed = start.elapsed();
    c
}

fn seeds(v: &[u64]) -> String {
    let shown: Vec<String> = v.iter().take(8).map(u64::to_string).collect();
    format!(
        "{}{}",
        shown.join(", "),
        if v.len() > 8 { ", ..." } else { "" }
    )
}

fn criterion_4(c: &Corpus) -> Outcome {
    ensure(c.elapsed < C4_LIMIT, || format!("took {:?}", c.elapsed))?;
    ensure(c.split_grounded.is_empty(), || {
        format!(
            "{} of {} single-solution instances lack a unique complete extension equal to grounded (seeds {}), {:.2?}",
            c.split_grounded.len(),
            c.single,
            seeds(&c.split_grounded),
            c.elapsed
        )
    })?;
    Ok(format!(
        "{} seeds, {} single-solution instances, {:.2?}",
        C4_SEEDS, c.single, c.elapsed
    ))
}

fn criterion_5(c: &Corpus) -> Outcome {
    ensure(c.accept_mismatch.is_empty(), || {
        format!(
            "{} of {} instances where solutions differ from actions in some complete extension (seeds {})",
            c.accept_mismatch.len(),
            C4_SEEDS,
            seeds(&c.accept_mismatch)
        )
    })?;
    Ok(format!(
        "{C4_SEEDS} seeds, solutions = credulously accepted actions"
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for seed in 0..C6_GRAPHS {
        let g = oracle::random_aaf(seed, C6_MAX_ARGS, C6_MAX_DENSITY);
        let mut got = Vec::new();
        for sem in Semantics::ALL {
            let solver: BTreeSet<BTreeSet<usize>> = semantics::extensions(&g, sem)
                .unwrap()
                .into_iter()
                .map(|e| e.members)
                .collect();
            if solver != oracle::brute_force_extensions(&g, sem).unwrap() {
                bad.push(format!("seed {seed} {sem:?}"));
            }
            got.push(solver);
        }
        let [grounded, complete, preferred, stable] = &got[..] else {
            unreachable!()
        };
        let least = grounded.len() == 1
            && grounded
                .iter()
                .all(|gr| complete.contains(gr) && complete.iter().all(|c| gr.is_subset(c)));
        if !(stable.is_subset(preferred) && preferred.is_subset(complete) && least) {
            bad.push(format!("seed {seed} lattice"));
        }
    }
    let elapsed = start.elapsed();
    ensure(
        Semantics::ALL[0] == Semantics::Grounded && Semantics::ALL[3] == Semantics::Stable,
        || "unexpected semantics order".into(),
    )?;
    ensure(bad.is_empty(), || {
        format!("{} violations: {}", bad.len(), bad.join("; "))
    })?;
    ensure(elapsed < C6_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{C6_GRAPHS} graphs, 4 semantics, lattice holds, {elapsed:.2?}"
    ))
}

fn criterion_7() -> Outcome {
    let agent = fixtures::eldercare_agent();
    let mut checked = 0;
    for sid in ["S1", "S2J"] {
        for sem in Semantics::ALL {
            let res = practical_reasoning(&agent, sid, sem).map_err(|e| e.to_string())?;
            let g = res.aaf.graph();
            let exts = &res.acceptance.extensions;
            for action in agent.language().actions() {
                let e = explain::explain_action(&res, &agent, action).map_err(|e| e.to_string())?;
                let at = || format!("{sid} {sem:?} {action}");
                if let Some(arg) = &e.argument {
                    for &i in &e.member_of {
                        ensure(exts[i].contains(arg.id.0), || {
                            format!("{}: member_of", at())
                        })?;
                    }
                    for c in &e.citations {
                        let ext = &exts[c.extension];
                        let y = c.attacker.id.0;
                        ensure(g.attacks(y, arg.id.0), || {
                            format!("{}: non-attacker cited", at())
                        })?;
                        match e.verdict {
                            Verdict::Rejected => {
                                ensure(ext.contains(y), || format!("{}: attacker outside", at()))?
                            }
                            _ => {
                                ensure(ext.contains(arg.id.0), || {
                                    format!("{}: subject outside", at())
                                })?;
                                for d in &c.defenders {
                                    ensure(ext.contains(d.id.0) && g.attacks(d.id.0, y), || {
                                        format!("{}: defender", at())
                                    })?;
                                }
                            }
                        }
                    }
                } else {
                    ensure(e.verdict == Verdict::RejectedAPriori, || {
                        format!("{}: no argument", at())
                    })?;
                }
                checked += 1;
            }
        }
    }

    let res = practical_reasoning(&agent, "S1", Semantics::Grounded).map_err(|e| e.to_string())?;
    let e = explain::explain_action(&res, &agent, "charge").map_err(|e| e.to_string())?;
    let attacker = &e
        .citations
        .first()
        .ok_or("charge explanation cites nothing")?
        .attacker;
    ensure(attacker.premises == ["u7", "v_S1(warn)"], || {
        format!("premises {:?}", attacker.premises)
    })?;
    let text =
        explain::render_text(&e, &fixtures::eldercare_duty_names()).map_err(|e| e.to_string())?;
    ensure(text.contains("u7") && text.contains("v_S1(warn)"), || {
        text.clone()
    })?;
    ensure(!text.contains("MG2P"), || format!("MG2P mentioned: {text}"))?;
    Ok(format!(
        "{checked} explanations verified; charge cites u7, v_S1(warn), omits MG2P"
    ))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run_cli(args: &[&str]) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_vda"))
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code(), o.stdout, o.stderr)
}

fn round_trip(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let first = agent_file::parse_input(path, &text).map_err(|e| e.to_string())?;
    match first {
        Input::Agent(a) => {
            let again = serde_json::to_string_pretty(&a.file).map_err(|e| e.to_string())?;
            let file: AgentFile = serde_json::from_str(&again).map_err(|e| e.to_string())?;
            ensure(file == a.file, || "agent file changed".into())?;
            let agent = file.to_agent()?;
            ensure(agent == a.agent, || "agent changed".into())?;
            ensure(file.to_epistemic()? == a.epistemic, || {
                "epistemic section changed".into()
            })
        }
        Input::Aba(a) => {
            let again = serde_json::to_string_pretty(&a).map_err(|e| e.to_string())?;
            let file: AbaFile = serde_json::from_str(&again).map_err(|e| e.to_string())?;
            ensure(file == a, || "ABA file changed".into())
        }
    }
}

fn criterion_8() -> Outcome {
    let eldercare = fixture("eldercare.json");
    let nixon = fixture("nixon.json");
    let single = fixture("single.json");
    let symmetric = fixture("symmetric.json");
    let (e, n, s, y) = (
        eldercare.to_str().unwrap(),
        nixon.to_str().unwrap(),
        single.to_str().unwrap(),
        symmetric.to_str().unwrap(),
    );
    let mut runs: Vec<Vec<&str>> = vec![
        vec!["solve", e, "S1"],
        vec!["solve", e, "S2J"],
        vec!["justify", e, "S1", "--dot"],
        vec!["explain", e, "S1"],
        vec!["explain", e, "S2", "--situation"],
        vec!["epistemic", e, "S2"],
        vec!["justify", n, "--dot"],
        vec!["solve", s, "S"],
        vec!["explain", s, "S"],
        vec!["epistemic", y, "S"],
    ];
    for sem in ["grounded", "complete", "preferred", "stable"] {
        runs.push(vec!["justify", e, "S1", "--semantics", sem]);
        runs.push(vec!["justify", n, "--semantics", sem]);
    }
    let with_json: Vec<Vec<&str>> = runs
        .iter()
        .filter(|r| !r.contains(&"--dot"))
        .map(|r| [r.as_slice(), &["--format", "json"]].concat())
        .collect();
    runs.extend(with_json);
    for args in &runs {
        let a = run_cli(args);
        let b = run_cli(args);
        ensure(a == b, || format!("output differs for {args:?}"))?;
        ensure(a.0 != Some(2), || format!("{args:?} failed to parse"))?;
    }
    for path in [&eldercare, &nixon, &single, &symmetric] {
        round_trip(path).map_err(|m| format!("{}: {m}", path.display()))?;
    }
    Ok(format!(
        "{} invocations byte-identical, 4 fixtures round-trip",
        runs.len()
    ))
}

fn main() {
    let corpus = run_corpus();
    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (1, "eldercare S1 end to end", criterion_1()),
        (2, "Nixon diamond", criterion_2()),
        (3, "epistemic S2", criterion_3()),
        (
            4,
            "unique solution gives a unique complete extension",
            criterion_4(&corpus),
        ),
        (
            5,
            "solutions equal credulously accepted actions",
            criterion_5(&corpus),
        ),
        (6, "semantics oracle equivalence", criterion_6()),
        (7, "explanation faithfulness", criterion_7()),
        (8, "determinism and round trip", criterion_8()),
    ];
    let mut failed = 0;
    for (n, title, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {title}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

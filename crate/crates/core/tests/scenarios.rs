mod common;

use adjoint_kit::derivation::{ActRef, Term};
use adjoint_kit::dynamics::AxiomOptions;
use adjoint_kit::scenario::{
    instantiate, parse_scenario, serialize, ActionBlock, AgentBlock, AtomDecl, Carrier, Mode,
    Query, QueryKind, ScenarioDoc, ScenarioError, Spanned,
};
use adjoint_kit::AlgebraError;
use common::{rng, scenario_text};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const FIXTURES: [&str; 7] = [
    "coin-honest.scn",
    "coin-lying.scn",
    "broken-miracle.scn",
    "muddy-3.scn",
    "muddy-3-lying.scn",
    "chain3.scn",
    "symbolic-only.scn",
];

#[test]
fn fixtures_round_trip() {
    for name in FIXTURES {
        let doc = parse_scenario(&scenario_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = serialize(&doc);
        let again =
            parse_scenario(&text).unwrap_or_else(|e| panic!("{name} canonical: {e}\n{text}"));
        assert_eq!(doc, again, "{name}");
        assert_eq!(serialize(&again), text, "{name}");
    }
}

#[test]
fn honest_coin_shape() {
    let doc = parse_scenario(&scenario_text("coin-honest.scn")).unwrap();
    assert_eq!(doc.agents.len(), 3);
    assert_eq!(doc.actions.len(), 1);
    assert_eq!(doc.queries.len(), 6);
    let inst = instantiate(&doc, AxiomOptions::default()).unwrap();
    let model = inst.model.as_ref().unwrap();
    assert_eq!(model.lattice().worlds().unwrap().len(), 3);
    assert!(inst.axioms.unwrap().passes());
    assert_eq!(inst.assumptions.appearance.len(), 6);
}

#[test]
fn lying_coin_assumptions() {
    let doc = parse_scenario(&scenario_text("coin-lying.scn")).unwrap();
    let inst = instantiate(&doc, AxiomOptions::default()).unwrap();
    let asm = &inst.assumptions;
    assert_eq!(asm.action_appearance_of("A", "abar"), Some("a"));
    assert_eq!(asm.action_appearance_of("B", "abar"), Some("a"));
    assert_eq!(asm.action_appearance_of("C", "abar"), Some("abar"));
    assert_eq!(asm.kernels["abar"], vec![Term::Atom("H".into())]);
    assert_eq!(asm.kernels["a"], vec![Term::Atom("T".into())]);
    assert!(inst.axioms.unwrap().passes());
}

#[test]
fn muddy_model_shape() {
    let doc = parse_scenario(&scenario_text("muddy-3.scn")).unwrap();
    let inst = instantiate(&doc, AxiomOptions::default()).unwrap();
    let model = inst.model.unwrap();
    assert_eq!(model.lattice().size(), 256);
    assert_eq!(model.algebra.mama().agent_count(), 3);
}

#[test]
fn broken_miracle_reports_the_triple() {
    let doc = parse_scenario(&scenario_text("broken-miracle.scn")).unwrap();
    let inst = instantiate(&doc, AxiomOptions::default()).unwrap();
    let report = inst.axioms.unwrap();
    match &report.violations[0] {
        AlgebraError::NoMiracleViolation {
            agent,
            action,
            element,
            ..
        } => assert_eq!(
            (agent.as_str(), action.as_str(), element.as_str()),
            ("A", "a", "{h0}")
        ),
        other => panic!("{other:?}"),
    }
}

#[test]
fn typo_is_located() {
    let text = scenario_text("coin-honest.scn").replacen("agent B", "agnt B", 1);
    let line = text.lines().position(|l| l.starts_with("agnt")).unwrap() + 1;
    match parse_scenario(&text).unwrap_err() {
        ScenarioError::Syntax(e) => {
            assert_eq!((e.line, e.column), (line, 1));
            assert!(e.expected.iter().any(|x| x == "`agent`"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn undeclared_action_is_named() {
    let text = scenario_text("coin-honest.scn") + "query q7 prove H |= after[b](fi[A](H))\n";
    match parse_scenario(&text).unwrap_err() {
        ScenarioError::Resolution { name, span, .. } => {
            assert_eq!(name, "b");
            assert_eq!(span.line, text.lines().count());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn error_locations_index_real_characters() {
    let base = scenario_text("coin-lying.scn");
    let mut r = rng(7);
    let junk = ["agnt", "->", "(", "]", "\"", "@", "end", "query", "|="];
    for _ in 0..300 {
        let mut lines: Vec<String> = base.lines().map(str::to_string).collect();
        let i = r.gen_range(0..lines.len());
        let cut = r.gen_range(0..=lines[i].len());
        if lines[i].is_char_boundary(cut) {
            lines[i].insert_str(cut, junk.choose(&mut r).unwrap());
        }
        let text = lines.join("\n");
        if let Err(e) = parse_scenario(&text) {
            let span = e.span();
            let line = text.lines().nth(span.line - 1).unwrap_or("");
            assert!(
                span.column >= 1 && span.column <= line.chars().count() + 1,
                "{e}"
            );
        }
    }
}

#[test]
fn symbolic_document_without_updates() {
    let doc = parse_scenario(&scenario_text("symbolic-only.scn")).unwrap();
    let text = serialize(&doc);
    assert!(!text.contains("update"));
    assert!(!text.contains("worlds"));
    let inst = instantiate(&doc, AxiomOptions::default()).unwrap();
    assert!(inst.model.is_none());
}

fn bare(s: &str) -> Spanned<String> {
    Spanned::bare(s.to_string())
}

struct Vocab {
    worlds: Option<Vec<String>>,
    elements: Vec<String>,
    atoms: Vec<String>,
    agents: Vec<String>,
    actions: Vec<String>,
}

fn random_actref(r: &mut impl Rng, v: &Vocab) -> ActRef {
    let base = ActRef::Name(v.actions.choose(r).unwrap().clone());
    if r.gen_bool(0.3) {
        ActRef::Appear(v.agents.choose(r).unwrap().clone(), Box::new(base))
    } else {
        base
    }
}

fn random_term(r: &mut impl Rng, v: &Vocab, depth: usize, modal: bool) -> Term {
    let leaf = depth == 0 || r.gen_bool(0.3);
    if leaf {
        return match r.gen_range(0..4) {
            0 => Term::Top,
            1 => Term::Bot,
            2 if v.worlds.is_some() => {
                let mut ws = v.worlds.clone().unwrap();
                ws.shuffle(r);
                ws.truncate(r.gen_range(0..=ws.len()));
                Term::Set(ws)
            }
            _ => {
                let pool: Vec<&String> = v.atoms.iter().chain(&v.elements).collect();
                match pool.choose(r) {
                    Some(s) => Term::Atom((*s).clone()),
                    None => Term::Top,
                }
            }
        };
    }
    let sub = |r: &mut _| Box::new(random_term(r, v, depth - 1, modal));
    let choice = if modal && !v.agents.is_empty() {
        r.gen_range(0..10)
    } else {
        r.gen_range(0..3)
    };
    let agent = |r: &mut _| v.agents.choose(r).unwrap().clone();
    match choice {
        0 => Term::Or(sub(r), sub(r)),
        1 => Term::And(sub(r), sub(r)),
        2 => Term::Not(sub(r)),
        3 => Term::App(agent(r), sub(r)),
        4 => Term::Info(agent(r), sub(r)),
        5 => Term::Know(agent(r), sub(r)),
        6 => Term::Believe(agent(r), sub(r)),
        7 => {
            let mut g = v.agents.clone();
            g.truncate(r.gen_range(1..=g.len()));
            let d = if r.gen_bool(0.5) {
                Some(r.gen_range(0..4))
            } else {
                None
            };
            Term::Ck(g, d, sub(r))
        }
        8 if !v.actions.is_empty() => Term::Upd(random_actref(r, v), sub(r)),
        _ if !v.actions.is_empty() => Term::After(random_actref(r, v), sub(r)),
        _ => Term::Not(sub(r)),
    }
}

fn random_doc(seed: u64) -> ScenarioDoc {
    let r = &mut rng(seed);
    let mode = *[Mode::Semantic, Mode::Symbolic, Mode::Both]
        .choose(r)
        .unwrap();
    let carrier = if mode.semantic() || r.gen_bool(0.5) {
        let n = r.gen_range(1..=4);
        if r.gen_bool(0.6) {
            Some(Carrier::Worlds(
                (0..n).map(|i| bare(&format!("w{i}"))).collect(),
            ))
        } else {
            let els: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
            let order = els.windows(2).map(|w| (bare(&w[0]), bare(&w[1]))).collect();
            Some(Carrier::Poset {
                elements: els.iter().map(|e| bare(e)).collect(),
                order,
            })
        }
    } else {
        None
    };
    let (worlds, elements) = match &carrier {
        Some(Carrier::Worlds(ws)) => {
            let ws: Vec<String> = ws.iter().map(|w| w.value.clone()).collect();
            (Some(ws.clone()), ws)
        }
        Some(Carrier::Poset { elements, .. }) => {
            (None, elements.iter().map(|e| e.value.clone()).collect())
        }
        None => (None, vec![]),
    };
    let mut v = Vocab {
        worlds,
        elements,
        atoms: vec![],
        agents: (0..r.gen_range(1..=3)).map(|i| format!("A{i}")).collect(),
        actions: (0..r.gen_range(0..=2)).map(|i| format!("a{i}")).collect(),
    };
    let mut atoms = Vec::new();
    for i in 0..r.gen_range(0..=3) {
        let name = format!("X{i}");
        let value = if mode.semantic() || (carrier.is_some() && r.gen_bool(0.5)) {
            Some(Spanned::bare(random_term(r, &v, 2, false)))
        } else {
            None
        };
        atoms.push(AtomDecl {
            name: bare(&name),
            value,
        });
        v.atoms.push(name);
    }
    let generators = v.elements.clone();
    let agents = v
        .agents
        .iter()
        .map(|a| AgentBlock {
            name: bare(a),
            appear: generators
                .iter()
                .filter_map(|g| {
                    r.gen_bool(0.7)
                        .then(|| (bare(g), Spanned::bare(random_term(r, &v, 2, false))))
                })
                .collect(),
            sees: v
                .actions
                .iter()
                .map(|x| (bare(x), bare(v.actions.choose(r).unwrap())))
                .collect(),
            assume: v
                .atoms
                .iter()
                .filter_map(|p| {
                    r.gen_bool(0.5)
                        .then(|| (bare(p), Spanned::bare(random_term(r, &v, 3, true))))
                })
                .collect(),
        })
        .collect();
    let names: Vec<String> = v.atoms.iter().chain(&v.elements).cloned().collect();
    let actions = v
        .actions
        .iter()
        .map(|a| ActionBlock {
            name: bare(a),
            communication: r.gen_bool(0.5),
            updates: generators
                .iter()
                .filter_map(|g| {
                    r.gen_bool(0.7)
                        .then(|| (bare(g), Spanned::bare(random_term(r, &v, 2, false))))
                })
                .collect(),
            kernel: names
                .iter()
                .filter(|_| r.gen_bool(0.3))
                .map(|n| bare(n))
                .collect(),
        })
        .collect();
    let facts = names
        .iter()
        .filter(|_| r.gen_bool(0.3))
        .map(|n| bare(n))
        .collect();
    let mut queries = Vec::new();
    for i in 0..r.gen_range(0..=4) {
        let seq = adjoint_kit::derivation::Sequent::new(
            random_term(r, &v, 3, true),
            random_term(r, &v, 3, true),
        );
        let kind = match (mode, r.gen_range(0..4)) {
            (Mode::Symbolic, _) => QueryKind::Prove { sequent: seq },
            (Mode::Both, 0) => QueryKind::Prove { sequent: seq },
            (_, 1) => QueryKind::Check {
                sequent: seq,
                expect_holds: r.gen_bool(0.5),
            },
            (_, 2) => QueryKind::Eval {
                term: random_term(r, &v, 3, true),
                expect: if r.gen_bool(0.5) {
                    Some(random_term(r, &v, 1, false))
                } else {
                    None
                },
            },
            _ => QueryKind::Validate,
        };
        queries.push(Query {
            id: bare(&format!("q{i}")),
            kind: Spanned::bare(kind),
        });
    }
    ScenarioDoc {
        name: bare(&format!("random-{}", seed % 1000)),
        description: if r.gen_bool(0.5) {
            Some("a \"quoted\" \\ text # not a comment".into())
        } else {
            None
        },
        mode,
        carrier: carrier.map(Spanned::bare),
        quantale_bound: if r.gen_bool(0.3) {
            Some(r.gen_range(1..5))
        } else {
            None
        },
        atoms,
        agents,
        actions,
        facts,
        queries,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_documents_round_trip(seed in any::<u64>()) {
        let doc = random_doc(seed);
        let text = serialize(&doc);
        let parsed = parse_scenario(&text);
        prop_assert!(parsed.is_ok(), "{:?}\n{}", parsed.err(), text);
        let parsed = parsed.unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(serialize(&parsed), text);
    }
}

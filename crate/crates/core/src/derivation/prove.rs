use std::collections::HashMap;
use std::fmt;

use super::term::{ActRef, Sequent, Term};
use super::{Assumptions, ProofTree, Rule};

pub const DEFAULT_MAX_DEPTH: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProveOptions {
    pub max_depth: usize,
    /// Allow kernel discharge against any right-hand side. When off, it only
    /// closes goals whose right-hand side is free of modalities.
    pub kernel_shortcut: bool,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            kernel_shortcut: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotProvedReason {
    DepthExhausted,
    NoApplicableRule,
}

/// A search verdict, not a refutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotProved {
    pub reason: NotProvedReason,
    /// Open subgoals along the first attempted derivation.
    pub frontier: Vec<Sequent>,
}

impl fmt::Display for NotProved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reason = match self.reason {
            NotProvedReason::DepthExhausted => "depth exhausted",
            NotProvedReason::NoApplicableRule => "no applicable rule",
        };
        write!(f, "not proved ({reason})")?;
        for s in &self.frontier {
            write!(f, "\n  open: {s}")?;
        }
        Ok(())
    }
}

/// Searches for a derivation of `goal`. Deterministic: rules are tried in
/// priority order at their first applicable position, subgoals left to right.
pub fn prove(
    goal: &Sequent,
    assumptions: &Assumptions,
    options: ProveOptions,
) -> Result<ProofTree, NotProved> {
    let mut search = Search {
        asm: assumptions,
        opts: options,
        failed: HashMap::new(),
        depth_hit: false,
    };
    search
        .run(goal, options.max_depth.max(1))
        .map_err(|frontier| NotProved {
            reason: if search.depth_hit {
                NotProvedReason::DepthExhausted
            } else {
                NotProvedReason::NoApplicableRule
            },
            frontier,
        })
}

struct Search<'a> {
    asm: &'a Assumptions,
    opts: ProveOptions,
    failed: HashMap<Sequent, usize>,
    depth_hit: bool,
}

impl Search<'_> {
    fn run(&mut self, goal: &Sequent, budget: usize) -> Result<ProofTree, Vec<Sequent>> {
        if budget == 0 {
            self.depth_hit = true;
            return Err(vec![goal.clone()]);
        }
        if self.failed.get(goal).is_some_and(|&b| b >= budget) {
            return Err(vec![goal.clone()]);
        }
        let mut first_frontier = None;
        for (rule, subgoals) in steps(goal, self.asm, self.opts) {
            let mut children = Vec::with_capacity(subgoals.len());
            let mut open = None;
            for sub in &subgoals {
                match self.run(sub, budget - 1) {
                    Ok(p) => children.push(p),
                    Err(f) => {
                        open = Some(f);
                        break;
                    }
                }
            }
            match open {
                None => {
                    return Ok(ProofTree {
                        sequent: goal.clone(),
                        rule,
                        children,
                    })
                }
                Some(f) => {
                    first_frontier.get_or_insert(f);
                }
            }
        }
        self.failed.insert(goal.clone(), budget);
        Err(first_frontier.unwrap_or_else(|| vec![goal.clone()]))
    }
}

/// Applicable rule instances in priority order.
fn steps(goal: &Sequent, asm: &Assumptions, opts: ProveOptions) -> Vec<(Rule, Vec<Sequent>)> {
    let Sequent { lhs, rhs } = goal;
    if order_closes(lhs, rhs) {
        return vec![(Rule::OrderAxiom, vec![])];
    }
    let mut out = Vec::new();
    if let Term::Upd(ActRef::Name(a), x) = lhs {
        let annihilated = **x == Term::Bot || asm.in_kernel(a, x);
        if annihilated && (opts.kernel_shortcut || rhs.is_modality_free()) {
            return vec![(Rule::KernelDischarge, vec![])];
        }
        if asm.communication.contains(a) && asm.facts.contains(rhs) {
            out.push((
                Rule::FactDischarge,
                vec![Sequent::new((**x).clone(), rhs.clone())],
            ));
        }
    }
    let substituted = substitute_appearance(lhs, asm);
    if substituted != *lhs {
        out.push((Rule::AppSubst, vec![Sequent::new(substituted, rhs.clone())]));
    }
    let resolved = Sequent::new(resolve_actions(lhs, asm), resolve_actions(rhs, asm));
    if resolved != *goal {
        out.push((Rule::ActAppSubst, vec![resolved]));
    }
    let expanded = Sequent::new(expand_definitions(lhs), expand_definitions(rhs));
    if expanded != *goal {
        out.push((Rule::DefExpand, vec![expanded]));
    }
    match rhs {
        Term::After(r, m) => out.push((
            Rule::AdjUnfoldAfter,
            vec![Sequent::new(
                Term::Upd(r.clone(), Box::new(lhs.clone())),
                (**m).clone(),
            )],
        )),
        Term::Info(agent, m) => out.push((
            Rule::AdjUnfoldInfo,
            vec![Sequent::new(
                Term::App(agent.clone(), Box::new(lhs.clone())),
                (**m).clone(),
            )],
        )),
        _ => {}
    }
    if let Some(l) = no_miracle(lhs, asm) {
        out.push((Rule::NoMiracle, vec![Sequent::new(l, rhs.clone())]));
    }
    if let Some(l) = distribute_first(lhs) {
        out.push((Rule::JoinDistrib, vec![Sequent::new(l, rhs.clone())]));
    } else if let Some(r) = distribute_first(rhs) {
        out.push((Rule::JoinDistrib, vec![Sequent::new(lhs.clone(), r)]));
    }
    if let Term::Or(x, y) = lhs {
        out.push((
            Rule::CaseSplit,
            vec![
                Sequent::new((**x).clone(), rhs.clone()),
                Sequent::new((**y).clone(), rhs.clone()),
            ],
        ));
    }
    if let Term::And(x, y) = rhs {
        out.push((
            Rule::MeetIntro,
            vec![
                Sequent::new(lhs.clone(), (**x).clone()),
                Sequent::new(lhs.clone(), (**y).clone()),
            ],
        ));
    }
    out
}

fn order_closes(lhs: &Term, rhs: &Term) -> bool {
    if lhs == rhs || *lhs == Term::Bot || *rhs == Term::Top {
        return true;
    }
    if rhs.disjuncts().contains(&lhs) || lhs.conjuncts().contains(&rhs) {
        return true;
    }
    matches!((lhs, rhs), (Term::Set(a), Term::Set(b)) if a.iter().all(|w| b.contains(w)))
}

/// Replaces every `f_A(p)` with a definition, outside negations.
fn substitute_appearance(t: &Term, asm: &Assumptions) -> Term {
    match t {
        Term::Not(_) => t.clone(),
        Term::App(agent, x) => match &**x {
            Term::Atom(p) => match asm.appearance_of(agent, p) {
                Some(def) => def.clone(),
                None => t.clone(),
            },
            _ => Term::App(agent.clone(), Box::new(substitute_appearance(x, asm))),
        },
        _ => t.with_children(
            t.children()
                .into_iter()
                .map(|c| substitute_appearance(c, asm))
                .collect(),
        ),
    }
}

fn resolve_ref(r: &ActRef, asm: &Assumptions) -> ActRef {
    match r {
        ActRef::Name(_) => r.clone(),
        ActRef::Appear(agent, inner) => {
            let inner = resolve_ref(inner, asm);
            match inner
                .as_name()
                .and_then(|a| asm.action_appearance_of(agent, a))
            {
                Some(seen) => ActRef::name(seen),
                None => ActRef::Appear(agent.clone(), Box::new(inner)),
            }
        }
    }
}

fn resolve_actions(t: &Term, asm: &Assumptions) -> Term {
    let kids = t
        .children()
        .into_iter()
        .map(|c| resolve_actions(c, asm))
        .collect();
    match t.with_children(kids) {
        Term::Upd(r, x) => Term::Upd(resolve_ref(&r, asm), x),
        Term::After(r, x) => Term::After(resolve_ref(&r, asm), x),
        other => other,
    }
}

fn group_information(group: &[String], t: &Term) -> Term {
    let mut parts = group
        .iter()
        .map(|b| Term::Info(b.clone(), Box::new(t.clone())));
    let first = parts.next().expect("groups are nonempty");
    parts.fold(first, Term::and)
}

/// Unfolds knowledge, belief and bounded common knowledge everywhere.
pub(crate) fn expand_definitions(t: &Term) -> Term {
    match t {
        Term::Know(agent, x) => {
            let x = expand_definitions(x);
            Term::and(Term::Info(agent.clone(), Box::new(x.clone())), x)
        }
        Term::Believe(agent, x) => {
            let neg = Term::not(expand_definitions(x));
            Term::not(Term::and(
                Term::Info(agent.clone(), Box::new(neg.clone())),
                neg,
            ))
        }
        Term::Ck(group, Some(d), x) => {
            let mut level = expand_definitions(x);
            let mut acc = level.clone();
            for _ in 0..*d {
                level = group_information(group, &level);
                acc = Term::and(acc, level.clone());
            }
            acc
        }
        _ => t.with_children(t.children().into_iter().map(expand_definitions).collect()),
    }
}

/// Rewrites the innermost-leftmost `f_A(h_a(t))` with a declared `f'_A(a)`.
fn no_miracle(t: &Term, asm: &Assumptions) -> Option<Term> {
    if let Term::Not(_) = t {
        return None;
    }
    let kids = t.children();
    for (i, c) in kids.iter().enumerate() {
        if let Some(new) = no_miracle(c, asm) {
            let mut rebuilt: Vec<Term> = kids.iter().map(|k| (*k).clone()).collect();
            rebuilt[i] = new;
            return Some(t.with_children(rebuilt));
        }
    }
    match t {
        Term::App(agent, x) => match &**x {
            Term::Upd(ActRef::Name(a), inner) if asm.action_appearance_of(agent, a).is_some() => {
                Some(Term::Upd(
                    ActRef::Appear(agent.clone(), Box::new(ActRef::name(a.clone()))),
                    Box::new(Term::App(agent.clone(), inner.clone())),
                ))
            }
            _ => None,
        },
        _ => None,
    }
}

fn distribute(node: &Term, x: &Term) -> Term {
    match x {
        Term::Or(a, b) => Term::or(distribute(node, a), distribute(node, b)),
        Term::Bot => Term::Bot,
        _ => node.with_children(vec![x.clone()]),
    }
}

/// Pushes the innermost-leftmost `f_A` or `h_a` over a join or `⊥`.
fn distribute_first(t: &Term) -> Option<Term> {
    let kids = t.children();
    for (i, c) in kids.iter().enumerate() {
        if let Some(new) = distribute_first(c) {
            let mut rebuilt: Vec<Term> = kids.iter().map(|k| (*k).clone()).collect();
            rebuilt[i] = new;
            return Some(t.with_children(rebuilt));
        }
    }
    match t {
        Term::App(_, x) | Term::Upd(_, x) if matches!(**x, Term::Or(..) | Term::Bot) => {
            Some(distribute(t, x))
        }
        _ => None,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::derivation::parse_sequent;
    use crate::derivation::term::atom;

    pub(crate) fn honest_assumptions() -> Assumptions {
        let mut asm = Assumptions::default();
        let ht = Term::or(atom("H"), atom("T"));
        for agent in ["A", "B", "C"] {
            asm.define_appearance(agent, "H", ht.clone()).unwrap();
            asm.define_appearance(agent, "T", ht.clone()).unwrap();
            asm.define_action_appearance(agent, "a", "a").unwrap();
        }
        asm.add_kernel("a", atom("T"));
        asm.add_fact(atom("H"));
        asm.add_fact(atom("T"));
        asm.add_communication("a");
        asm
    }

    pub(crate) fn lying_assumptions() -> Assumptions {
        let mut asm = Assumptions::default();
        let ht = Term::or(atom("H"), atom("T"));
        for agent in ["A", "B"] {
            asm.define_appearance(agent, "H", ht.clone()).unwrap();
            asm.define_appearance(agent, "T", ht.clone()).unwrap();
            asm.define_action_appearance(agent, "abar", "a").unwrap();
            asm.define_action_appearance(agent, "a", "a").unwrap();
        }
        asm.define_appearance("C", "H", atom("H")).unwrap();
        asm.define_appearance("C", "T", atom("T")).unwrap();
        asm.define_action_appearance("C", "abar", "abar").unwrap();
        asm.define_action_appearance("C", "a", "a").unwrap();
        asm.add_kernel("abar", atom("H"));
        asm.add_kernel("a", atom("T"));
        asm.add_fact(atom("H"));
        asm.add_fact(atom("T"));
        asm.add_communication("a");
        asm.add_communication("abar");
        asm
    }

    fn goal(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn honest_announcement_proof_shape() {
        let tree = prove(
            &goal("H |= after[a](fi[A](H))"),
            &honest_assumptions(),
            ProveOptions::default(),
        )
        .unwrap();
        use Rule::*;
        assert_eq!(
            tree.rules(),
            vec![
                AdjUnfoldAfter,
                AdjUnfoldInfo,
                NoMiracle,
                AppSubst,
                ActAppSubst,
                JoinDistrib,
                CaseSplit,
                FactDischarge,
                OrderAxiom,
                KernelDischarge
            ]
        );
        let leaves: Vec<String> = tree.sequents().iter().map(|s| s.to_string()).collect();
        assert!(leaves.contains(&"upd[a](H) |= H".to_string()));
        assert!(leaves.contains(&"upd[a](T) |= H".to_string()));
    }

    #[test]
    fn nested_goals_within_depth() {
        for g in [
            "H |= after[a](fi[A](fi[C](H)))",
            "H |= after[a](fi[A](fi[B](H)))",
            "H |= fi[B](fi[A](fi[B](H \\/ T)))",
        ] {
            let tree = prove(&goal(g), &honest_assumptions(), ProveOptions::default()).unwrap();
            assert!(tree.depth() <= 16, "{g}: depth {}", tree.depth());
        }
    }

    #[test]
    fn lying_properties() {
        let asm = lying_assumptions();
        let shortcut = prove(
            &goal("H |= after[abar](fi[A](H))"),
            &asm,
            ProveOptions::default(),
        )
        .unwrap();
        assert_eq!(
            shortcut.rules(),
            vec![Rule::AdjUnfoldAfter, Rule::KernelDischarge]
        );

        let opts = ProveOptions {
            kernel_shortcut: false,
            ..ProveOptions::default()
        };
        for g in [
            "H |= after[abar](fi[A](H))",
            "H |= after[abar](fi[A](fi[C](H)))",
        ] {
            let tree = prove(&goal(g), &asm, opts).unwrap();
            assert!(tree.rules().contains(&Rule::NoMiracle));
            let seqs: Vec<String> = tree.sequents().iter().map(|s| s.to_string()).collect();
            assert!(seqs.contains(&"upd[a](H) |= H".to_string()), "{g}");
            assert!(seqs.contains(&"upd[a](T) |= H".to_string()), "{g}");
        }
    }

    #[test]
    fn unprovable_goals() {
        let err = prove(
            &goal("p |= bot"),
            &Assumptions::default(),
            ProveOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err.reason, NotProvedReason::NoApplicableRule);
        assert_eq!(err.frontier, vec![goal("p |= bot")]);

        let shallow = ProveOptions {
            max_depth: 3,
            ..ProveOptions::default()
        };
        let err = prove(
            &goal("H |= after[a](fi[A](H))"),
            &honest_assumptions(),
            shallow,
        )
        .unwrap_err();
        assert_eq!(err.reason, NotProvedReason::DepthExhausted);
    }

    #[test]
    fn definitions_unfold() {
        let asm = Assumptions::default();
        let tree = prove(&goal("K[A](p) |= p"), &asm, ProveOptions::default()).unwrap();
        assert_eq!(tree.rules(), vec![Rule::DefExpand, Rule::OrderAxiom]);
        let ck = expand_definitions(&crate::derivation::parse_term("CK[A,B;1](p)").unwrap());
        assert_eq!(ck.to_string(), "p /\\ (fi[A](p) /\\ fi[B](p))");
        let tree = prove(
            &goal("CK[A;2](p) |= fi[A](fi[A](p))"),
            &asm,
            ProveOptions::default(),
        )
        .unwrap();
        assert_eq!(tree.rules(), vec![Rule::DefExpand, Rule::OrderAxiom]);
    }

    #[test]
    fn search_is_deterministic() {
        let asm = lying_assumptions();
        let g = goal("T |= after[abar](fi[A](H))");
        assert_eq!(
            prove(&g, &asm, ProveOptions::default()),
            prove(&g, &asm, ProveOptions::default())
        );
    }
}

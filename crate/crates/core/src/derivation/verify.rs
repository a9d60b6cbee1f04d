//! Re-checks each node of a proof tree against its rule, without search.

use std::fmt;

use super::term::{ActRef, Sequent, Term};
use super::{Assumptions, ProofTree, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadNode {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub sequent: Sequent,
    pub rule: Rule,
    pub reason: String,
}

impl fmt::Display for BadNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(
            f,
            "bad {} step at /{} ({}): {}",
            self.rule,
            path.join("/"),
            self.sequent,
            self.reason
        )
    }
}

pub fn verify_tree(tree: &ProofTree, assumptions: &Assumptions) -> Result<(), BadNode> {
    let mut path = Vec::new();
    walk(tree, assumptions, &mut path)
}

fn walk(node: &ProofTree, asm: &Assumptions, path: &mut Vec<usize>) -> Result<(), BadNode> {
    check_node(node, asm).map_err(|reason| BadNode {
        path: path.clone(),
        sequent: node.sequent.clone(),
        rule: node.rule,
        reason,
    })?;
    for (i, c) in node.children.iter().enumerate() {
        path.push(i);
        walk(c, asm, path)?;
        path.pop();
    }
    Ok(())
}

fn expect(cond: bool, reason: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

fn flatten<'a>(t: &'a Term, join: bool, out: &mut Vec<&'a Term>) {
    match (t, join) {
        (Term::Or(a, b), true) | (Term::And(a, b), false) => {
            flatten(a, join, out);
            flatten(b, join, out);
        }
        _ => out.push(t),
    }
}

fn closes_by_order(l: &Term, r: &Term) -> bool {
    let mut joins = Vec::new();
    flatten(r, true, &mut joins);
    let mut meets = Vec::new();
    flatten(l, false, &mut meets);
    let sets = match (l, r) {
        (Term::Set(a), Term::Set(b)) => a.iter().all(|w| b.contains(w)),
        _ => false,
    };
    l == r || *l == Term::Bot || *r == Term::Top || joins.contains(&l) || meets.contains(&r) || sets
}

/// `n` and `c` agree except where `step` licenses a local change; negations
/// are entered only when `through_not` is set.
fn related(n: &Term, c: &Term, through_not: bool, step: &dyn Fn(&Term, &Term) -> bool) -> bool {
    if n == c || step(n, c) {
        return true;
    }
    if !n.same_head(c) || (matches!(n, Term::Not(_)) && !through_not) {
        return false;
    }
    n.children()
        .into_iter()
        .zip(c.children())
        .all(|(a, b)| related(a, b, through_not, step))
}

fn one_child(node: &ProofTree) -> Result<&Sequent, String> {
    match node.children.as_slice() {
        [c] => Ok(&c.sequent),
        _ => Err(format!(
            "expected exactly one premise, found {}",
            node.children.len()
        )),
    }
}

fn ref_resolves_to(r: &ActRef, s: &ActRef, asm: &Assumptions) -> bool {
    fn resolve(r: &ActRef, asm: &Assumptions) -> ActRef {
        match r {
            ActRef::Name(_) => r.clone(),
            ActRef::Appear(agent, inner) => match resolve(inner, asm) {
                ActRef::Name(a) => match asm.action_appearance.get(&(agent.clone(), a.clone())) {
                    Some(b) => ActRef::Name(b.clone()),
                    None => ActRef::Appear(agent.clone(), Box::new(ActRef::Name(a))),
                },
                other => ActRef::Appear(agent.clone(), Box::new(other)),
            },
        }
    }
    r == s || resolve(r, asm) == *s
}

fn shallow_definition(t: &Term) -> Option<Term> {
    match t {
        Term::Know(agent, x) => Some(Term::and(
            Term::Info(agent.clone(), x.clone()),
            (**x).clone(),
        )),
        Term::Believe(agent, x) => Some(Term::not(Term::Know(
            agent.clone(),
            Box::new(Term::not((**x).clone())),
        ))),
        Term::Ck(group, Some(d), x) => {
            let mut levels = vec![(**x).clone()];
            for _ in 0..*d {
                let prev = levels.last().expect("nonempty").clone();
                let mut parts = group
                    .iter()
                    .map(|b| Term::Info(b.clone(), Box::new(prev.clone())));
                let first = parts.next()?;
                levels.push(parts.fold(first, Term::and));
            }
            let mut it = levels.into_iter();
            let first = it.next()?;
            Some(it.fold(first, Term::and))
        }
        _ => None,
    }
}

fn is_distribution(node: &Term, x: &Term, c: &Term) -> bool {
    if *c == node.with_children(vec![x.clone()]) {
        return true;
    }
    match (x, c) {
        (Term::Bot, Term::Bot) => true,
        (Term::Or(a, b), Term::Or(ca, cb)) => {
            is_distribution(node, a, ca) && is_distribution(node, b, cb)
        }
        _ => false,
    }
}

fn check_node(node: &ProofTree, asm: &Assumptions) -> Result<(), String> {
    let Sequent { lhs, rhs } = &node.sequent;
    match node.rule {
        Rule::OrderAxiom => {
            expect(node.children.is_empty(), "order axioms have no premises")?;
            expect(
                closes_by_order(lhs, rhs),
                "not an instance of an order axiom",
            )
        }
        Rule::KernelDischarge => {
            expect(node.children.is_empty(), "kernel discharge has no premises")?;
            match lhs {
                Term::Upd(ActRef::Name(a), x) => expect(
                    **x == Term::Bot || asm.kernels.get(a).is_some_and(|k| k.contains(x)),
                    &format!("{x} is not declared in the kernel of {a}"),
                ),
                _ => Err("left side is not an update by a named action".into()),
            }
        }
        Rule::FactDischarge => {
            let c = one_child(node)?;
            let Term::Upd(ActRef::Name(a), x) = lhs else {
                return Err("left side is not an update by a named action".into());
            };
            expect(
                asm.communication.contains(a),
                &format!("{a} is not a communication action"),
            )?;
            expect(asm.facts.contains(rhs), &format!("{rhs} is not a fact"))?;
            expect(
                c.lhs == **x && c.rhs == *rhs,
                "premise is not the update's argument below the fact",
            )
        }
        Rule::AppSubst => {
            let c = one_child(node)?;
            let step = |n: &Term, m: &Term| match n {
                Term::App(agent, x) => match &**x {
                    Term::Atom(p) => asm.appearance.get(&(agent.clone(), p.clone())) == Some(m),
                    _ => false,
                },
                _ => false,
            };
            expect(
                c.rhs == *rhs && c.lhs != *lhs,
                "substitution must change only the left side",
            )?;
            expect(
                related(lhs, &c.lhs, false, &step),
                "premise is not obtained by appearance definitions",
            )
        }
        Rule::ActAppSubst => {
            let c = one_child(node)?;
            let refs_ok = |r: &ActRef, s: &ActRef| ref_resolves_to(r, s, asm);
            expect(c != &node.sequent, "substitution changed nothing")?;
            expect(
                related_acts(lhs, &c.lhs, &refs_ok) && related_acts(rhs, &c.rhs, &refs_ok),
                "premise is not obtained by action appearance definitions",
            )
        }
        Rule::DefExpand => {
            let c = one_child(node)?;
            fn step(n: &Term, m: &Term) -> bool {
                shallow_definition(n).is_some_and(|d| related(&d, m, true, &step))
            }
            expect(c != &node.sequent, "expansion changed nothing")?;
            expect(
                related(lhs, &c.lhs, true, &step) && related(rhs, &c.rhs, true, &step),
                "premise is not an unfolding of definitions",
            )
        }
        Rule::AdjUnfoldAfter => {
            let c = one_child(node)?;
            let Term::After(r, m) = rhs else {
                return Err("right side is not an after-modality".into());
            };
            expect(
                c.lhs == Term::Upd(r.clone(), Box::new(lhs.clone())) && c.rhs == **m,
                "premise is not the adjoint transpose",
            )
        }
        Rule::AdjUnfoldInfo => {
            let c = one_child(node)?;
            let Term::Info(agent, m) = rhs else {
                return Err("right side is not an information modality".into());
            };
            expect(
                c.lhs == Term::App(agent.clone(), Box::new(lhs.clone())) && c.rhs == **m,
                "premise is not the adjoint transpose",
            )
        }
        Rule::NoMiracle => {
            let c = one_child(node)?;
            let step = |n: &Term, m: &Term| match (n, m) {
                (Term::App(agent, x), Term::Upd(ActRef::Appear(seer, inner), y)) => {
                    match (&**x, &**inner) {
                        (Term::Upd(ActRef::Name(a), t), ActRef::Name(b)) => {
                            seer == agent
                                && a == b
                                && asm
                                    .action_appearance
                                    .contains_key(&(agent.clone(), a.clone()))
                                && **y == Term::App(agent.clone(), t.clone())
                        }
                        _ => false,
                    }
                }
                _ => false,
            };
            expect(
                c.rhs == *rhs && c.lhs != *lhs,
                "no-miracle rewrites only the left side",
            )?;
            expect(
                related(lhs, &c.lhs, false, &step),
                "premise is not a no-miracle rewrite with a declared action appearance",
            )
        }
        Rule::JoinDistrib => {
            let c = one_child(node)?;
            let step = |n: &Term, m: &Term| match n {
                Term::App(_, x) | Term::Upd(_, x) if matches!(**x, Term::Or(..) | Term::Bot) => {
                    m != n && is_distribution(n, x, m)
                }
                _ => false,
            };
            expect(c != &node.sequent, "distribution changed nothing")?;
            expect(
                related(lhs, &c.lhs, true, &step) && related(rhs, &c.rhs, true, &step),
                "premise is not a distribution over joins",
            )
        }
        Rule::CaseSplit => {
            let Term::Or(x, y) = lhs else {
                return Err("left side is not a join".into());
            };
            let expected = [
                Sequent::new((**x).clone(), rhs.clone()),
                Sequent::new((**y).clone(), rhs.clone()),
            ];
            let got: Vec<&Sequent> = node.children.iter().map(|c| &c.sequent).collect();
            expect(
                got.len() == 2 && *got[0] == expected[0] && *got[1] == expected[1],
                "premises are not the two cases",
            )
        }
        Rule::MeetIntro => {
            let Term::And(x, y) = rhs else {
                return Err("right side is not a meet".into());
            };
            let expected = [
                Sequent::new(lhs.clone(), (**x).clone()),
                Sequent::new(lhs.clone(), (**y).clone()),
            ];
            let got: Vec<&Sequent> = node.children.iter().map(|c| &c.sequent).collect();
            expect(
                got.len() == 2 && *got[0] == expected[0] && *got[1] == expected[1],
                "premises are not the two conjuncts",
            )
        }
    }
}

/// Structural equality up to resolving action references.
fn related_acts(n: &Term, c: &Term, refs_ok: &dyn Fn(&ActRef, &ActRef) -> bool) -> bool {
    match (n, c) {
        (Term::Upd(r, x), Term::Upd(s, y)) | (Term::After(r, x), Term::After(s, y)) => {
            refs_ok(r, s) && related_acts(x, y, refs_ok)
        }
        _ => {
            n.same_head(c)
                && n.children()
                    .into_iter()
                    .zip(c.children())
                    .all(|(a, b)| related_acts(a, b, refs_ok))
        }
    }
}

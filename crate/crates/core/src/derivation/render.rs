use std::fmt;

use serde_json::{json, Value};

use super::syntax::{parse_sequent, SyntaxError};
use super::term::{Sequent, Term};
use super::{ProofTree, Rule};

fn phrase(node: &ProofTree) -> String {
    let Sequent { lhs, rhs } = &node.sequent;
    match node.rule {
        Rule::OrderAxiom => "holds in every lattice".into(),
        Rule::KernelDischarge => match lhs {
            Term::Upd(r, x) => format!("holds since {x} lies in the kernel of {r}"),
            _ => "holds by the kernel axiom".into(),
        },
        Rule::FactDischarge => format!("since {rhs} is a fact, it suffices to show"),
        Rule::AppSubst => "by the appearance assumptions, iff".into(),
        Rule::ActAppSubst => "by the action appearance assumptions, iff".into(),
        Rule::DefExpand => "unfolding definitions, iff".into(),
        Rule::AdjUnfoldAfter => match rhs {
            Term::After(r, _) => format!("by the adjunction rule on after[{r}], iff"),
            _ => "by the adjunction rule, iff".into(),
        },
        Rule::AdjUnfoldInfo => match rhs {
            Term::Info(a, _) => format!("by the adjunction rule on fi[{a}], iff"),
            _ => "by the adjunction rule, iff".into(),
        },
        Rule::NoMiracle => "by the no-miracle axiom, it suffices to show".into(),
        Rule::JoinDistrib => "as appearance and update preserve joins, iff".into(),
        Rule::CaseSplit => "by cases on the join, iff".into(),
        Rule::MeetIntro => "by the meet's universal property, iff".into(),
    }
}

fn text_into(node: &ProofTree, indent: usize, out: &mut String) {
    out.push_str(&format!(
        "{}{}   [{}] {}\n",
        "  ".repeat(indent),
        node.sequent,
        node.rule,
        phrase(node)
    ));
    for c in &node.children {
        text_into(c, indent + 1, out);
    }
}

/// One line per node, children indented below their conclusion.
pub fn render_text(tree: &ProofTree) -> String {
    let mut out = String::new();
    text_into(tree, 0, &mut out);
    out
}

/// `{goal, rule, children[]}`, goals written in scenario term syntax.
pub fn render_structured(tree: &ProofTree) -> Value {
    json!({
        "goal": tree.sequent.to_string(),
        "rule": tree.rule.name(),
        "children": tree.children.iter().map(render_structured).collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuredError {
    Shape(String),
    UnknownRule(String),
    Goal(SyntaxError),
}

impl fmt::Display for StructuredError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuredError::Shape(m) => write!(f, "malformed proof document: {m}"),
            StructuredError::UnknownRule(r) => write!(f, "unknown rule `{r}`"),
            StructuredError::Goal(e) => write!(f, "bad goal: {e}"),
        }
    }
}

impl std::error::Error for StructuredError {}

pub fn tree_from_structured(v: &Value) -> Result<ProofTree, StructuredError> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| StructuredError::Shape(format!("missing `{k}`")))
    };
    let goal = field("goal")?
        .as_str()
        .ok_or_else(|| StructuredError::Shape("`goal` is not a string".into()))?;
    let rule = field("rule")?
        .as_str()
        .ok_or_else(|| StructuredError::Shape("`rule` is not a string".into()))?;
    let children = field("children")?
        .as_array()
        .ok_or_else(|| StructuredError::Shape("`children` is not an array".into()))?;
    Ok(ProofTree {
        sequent: parse_sequent(goal).map_err(StructuredError::Goal)?,
        rule: Rule::from_name(rule)
            .ok_or_else(|| StructuredError::UnknownRule(rule.to_string()))?,
        children: children
            .iter()
            .map(tree_from_structured)
            .collect::<Result<_, _>>()?,
    })
}

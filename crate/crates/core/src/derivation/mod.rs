//! Backward-chaining proofs of symbolic entailments `lhs |= rhs`.

mod prove;
mod render;
pub mod syntax;
mod term;
mod verify;

pub use prove::{prove, NotProved, NotProvedReason, ProveOptions, DEFAULT_MAX_DEPTH};
pub use render::{render_structured, render_text, tree_from_structured, StructuredError};
pub use syntax::{parse_sequent, parse_term, SyntaxError};
pub use term::{atom, ActRef, Sequent, Term};
pub use verify::{verify_tree, BadNode};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Symbolic facts a derivation may use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    /// `f_A(atom) = term`, keyed by (agent, atom).
    pub appearance: BTreeMap<(String, String), Term>,
    /// `f'_A(a) = b`, keyed by (agent, action).
    pub action_appearance: BTreeMap<(String, String), String>,
    /// Terms known to lie in each action's kernel.
    pub kernels: BTreeMap<String, Vec<Term>>,
    pub facts: Vec<Term>,
    pub communication: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicateAssumption(pub String);

impl fmt::Display for DuplicateAssumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is defined more than once", self.0)
    }
}

impl std::error::Error for DuplicateAssumption {}

impl Assumptions {
    pub fn define_appearance(
        &mut self,
        agent: &str,
        atom: &str,
        image: Term,
    ) -> Result<(), DuplicateAssumption> {
        let key = (agent.to_string(), atom.to_string());
        if self.appearance.contains_key(&key) {
            return Err(DuplicateAssumption(format!("f[{agent}]({atom})")));
        }
        self.appearance.insert(key, image);
        Ok(())
    }

    pub fn define_action_appearance(
        &mut self,
        agent: &str,
        action: &str,
        seen: &str,
    ) -> Result<(), DuplicateAssumption> {
        let key = (agent.to_string(), action.to_string());
        if self.action_appearance.contains_key(&key) {
            return Err(DuplicateAssumption(format!("fa[{agent}]({action})")));
        }
        self.action_appearance.insert(key, seen.to_string());
        Ok(())
    }

    pub fn add_kernel(&mut self, action: &str, t: Term) {
        self.kernels.entry(action.to_string()).or_default().push(t);
    }

    pub fn add_fact(&mut self, t: Term) {
        if !self.facts.contains(&t) {
            self.facts.push(t);
        }
    }

    pub fn add_communication(&mut self, action: &str) {
        self.communication.insert(action.to_string());
    }

    pub fn appearance_of(&self, agent: &str, atom: &str) -> Option<&Term> {
        self.appearance.get(&(agent.to_string(), atom.to_string()))
    }

    pub fn action_appearance_of(&self, agent: &str, action: &str) -> Option<&str> {
        self.action_appearance
            .get(&(agent.to_string(), action.to_string()))
            .map(String::as_str)
    }

    pub fn in_kernel(&self, action: &str, t: &Term) -> bool {
        self.kernels.get(action).is_some_and(|k| k.contains(t))
    }
}

/// The rule repertoire, in search priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    OrderAxiom,
    KernelDischarge,
    FactDischarge,
    AppSubst,
    ActAppSubst,
    DefExpand,
    AdjUnfoldAfter,
    AdjUnfoldInfo,
    NoMiracle,
    JoinDistrib,
    CaseSplit,
    MeetIntro,
}

/// How a node's children relate to the node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    Iff,
    Suffices,
    Closed,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::OrderAxiom,
        Rule::KernelDischarge,
        Rule::FactDischarge,
        Rule::AppSubst,
        Rule::ActAppSubst,
        Rule::DefExpand,
        Rule::AdjUnfoldAfter,
        Rule::AdjUnfoldInfo,
        Rule::NoMiracle,
        Rule::JoinDistrib,
        Rule::CaseSplit,
        Rule::MeetIntro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::OrderAxiom => "OrderAxiom",
            Rule::KernelDischarge => "KernelDischarge",
            Rule::FactDischarge => "FactDischarge",
            Rule::AppSubst => "AppSubst",
            Rule::ActAppSubst => "ActAppSubst",
            Rule::DefExpand => "DefExpand",
            Rule::AdjUnfoldAfter => "AdjUnfoldAfter",
            Rule::AdjUnfoldInfo => "AdjUnfoldInfo",
            Rule::NoMiracle => "NoMiracle",
            Rule::JoinDistrib => "JoinDistrib",
            Rule::CaseSplit => "CaseSplit",
            Rule::MeetIntro => "MeetIntro",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn justification(self) -> Justification {
        match self {
            Rule::OrderAxiom | Rule::KernelDischarge => Justification::Closed,
            Rule::NoMiracle | Rule::FactDischarge => Justification::Suffices,
            _ => Justification::Iff,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A derivation: each node's children, under its rule, entail its sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub sequent: Sequent,
    pub rule: Rule,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    /// Nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ProofTree::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    /// Rules in pre-order.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for c in &self.children {
            out.extend(c.rules());
        }
        out
    }

    /// Every sequent in the tree, in pre-order.
    pub fn sequents(&self) -> Vec<&Sequent> {
        let mut out = vec![&self.sequent];
        for c in &self.children {
            out.extend(c.sequents());
        }
        out
    }

    /// The node at a path of child indices.
    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut ProofTree> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children.get_mut(i)?.node_mut(rest),
        }
    }

    /// Paths of all nodes, in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for (i, c) in self.children.iter().enumerate() {
            out.extend(c.paths().into_iter().map(|mut p| {
                p.insert(0, i);
                p
            }));
        }
        out
    }
}

//! The `.scn` scenario format: a line-oriented block language declaring a
//! carrier, agents, actions, facts and queries.

mod instantiate;
mod parse;
mod serialize;

pub use instantiate::{instantiate, Instance, RealizationFailure};
pub use parse::parse_scenario;
pub use serialize::serialize;

use std::fmt;

use crate::derivation::{Sequent, SyntaxError, Term};
use crate::error::AlgebraError;

pub const FORMAT_VERSION: usize = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// A value with its source position; equality ignores the position.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(value: T, span: Span) -> Self {
        Spanned { value, span }
    }

    /// A value with no source position.
    pub fn bare(value: T) -> Self {
        Spanned {
            value,
            span: Span::default(),
        }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Semantic,
    Symbolic,
    Both,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Semantic => "semantic",
            Mode::Symbolic => "symbolic",
            Mode::Both => "both",
        }
    }

    pub fn semantic(self) -> bool {
        self != Mode::Symbolic
    }

    pub fn symbolic(self) -> bool {
        self != Mode::Semantic
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Worlds(Vec<Spanned<String>>),
    Poset {
        elements: Vec<Spanned<String>>,
        order: Vec<(Spanned<String>, Spanned<String>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecl {
    pub name: Spanned<String>,
    pub value: Option<Spanned<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentBlock {
    pub name: Spanned<String>,
    /// Appearance on generators: `appear g -> image`.
    pub appear: Vec<(Spanned<String>, Spanned<Term>)>,
    /// Action appearance: `sees a -> b`.
    pub sees: Vec<(Spanned<String>, Spanned<String>)>,
    /// Symbolic appearance definitions: `assume p -> term`.
    pub assume: Vec<(Spanned<String>, Spanned<Term>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBlock {
    pub name: Spanned<String>,
    pub communication: bool,
    pub updates: Vec<(Spanned<String>, Spanned<Term>)>,
    pub kernel: Vec<Spanned<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryKind {
    /// Semantic entailment, expected to hold unless stated otherwise.
    Check {
        sequent: Sequent,
        expect_holds: bool,
    },
    Prove {
        sequent: Sequent,
    },
    Eval {
        term: Term,
        expect: Option<Term>,
    },
    Validate,
}

impl QueryKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            QueryKind::Check { .. } => "check",
            QueryKind::Prove { .. } => "prove",
            QueryKind::Eval { .. } => "eval",
            QueryKind::Validate => "validate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub id: Spanned<String>,
    pub kind: Spanned<QueryKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioDoc {
    pub name: Spanned<String>,
    pub description: Option<String>,
    pub mode: Mode,
    /// Absent only in symbolic documents.
    pub carrier: Option<Spanned<Carrier>>,
    pub quantale_bound: Option<usize>,
    pub atoms: Vec<AtomDecl>,
    pub agents: Vec<AgentBlock>,
    pub actions: Vec<ActionBlock>,
    pub facts: Vec<Spanned<String>>,
    pub queries: Vec<Query>,
}

impl ScenarioDoc {
    pub fn query(&self, id: &str) -> Option<&Query> {
        self.queries.iter().find(|q| q.id.value == id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioError {
    Syntax(SyntaxError),
    Resolution {
        span: Span,
        name: String,
        message: String,
    },
    Build {
        span: Span,
        error: AlgebraError,
    },
}

impl ScenarioError {
    pub fn span(&self) -> Span {
        match self {
            ScenarioError::Syntax(e) => Span {
                line: e.line,
                column: e.column,
            },
            ScenarioError::Resolution { span, .. } | ScenarioError::Build { span, .. } => *span,
        }
    }
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Syntax(e) => write!(f, "syntax error at {e}"),
            ScenarioError::Resolution { span, message, .. } => {
                write!(
                    f,
                    "resolution error at {}:{}: {message}",
                    span.line, span.column
                )
            }
            ScenarioError::Build { span, error } => {
                write!(
                    f,
                    "invalid declaration at {}:{}: {error}",
                    span.line, span.column
                )
            }
        }
    }
}

impl std::error::Error for ScenarioError {}

impl From<SyntaxError> for ScenarioError {
    fn from(e: SyntaxError) -> Self {
        ScenarioError::Syntax(e)
    }
}

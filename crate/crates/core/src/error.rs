use thiserror::Error;

/// Errors raised by the algebraic layers (lattices, maps, agents, actions).
///
/// Element-valued fields carry display names rather than raw ids so that
/// messages stay readable once they leave the lattice they came from.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order is not a partial order: `{0}` and `{1}` lie on a cycle")]
    NotAPoset(String, String),
    #[error("order is not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },
    #[error("lattice with {elements} elements exceeds the cap of {max_cells} order-table cells")]
    LatticeTooLarge { elements: usize, max_cells: usize },
    #[error("{worlds} worlds exceeds the powerset cap of {max}")]
    TooManyWorlds { worlds: usize, max: usize },
    #[error("element id {0} does not belong to this lattice")]
    ForeignElement(usize),
    #[error("operation requires a distributive lattice")]
    NotDistributive,
    #[error("operation requires a Boolean lattice")]
    NotBoolean,
    #[error("`{0}` is not join-irreducible and cannot carry a generator assignment")]
    NotJoinIrreducible(String),
    #[error("no assignment for join-irreducible `{0}`")]
    MissingGenerator(String),
    #[error("join-irreducible `{0}` assigned more than once")]
    DuplicateGenerator(String),
    #[error("map is not join-preserving: {0}")]
    NotJoinPreserving(String),
    #[error("map is not meet-preserving: {0}")]
    NotMeetPreserving(String),
    #[error("maps live on different lattices")]
    LatticeMismatch,
    #[error("table has {got} entries, lattice has {expected} elements")]
    TableSize { got: usize, expected: usize },
    #[error("a MAMA needs at least one agent")]
    NoAgents,
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("groups must be nonempty")]
    EmptyGroup,
    #[error("duplicate action `{0}`")]
    DuplicateAction(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("action appearance of agent `{agent}` is not defined on action `{action}`")]
    MissingActionAppearance { agent: String, action: String },
    #[error(
        "no-miracle violated for agent `{agent}`, action `{action}` at {element}: \
         f_A(h_a(l)) = {lhs} is not below h_f'(a)(f_A(l)) = {rhs}"
    )]
    NoMiracleViolation {
        agent: String,
        action: String,
        element: String,
        lhs: String,
        rhs: String,
    },
    #[error(
        "no-miracle equality fails for agent `{agent}`, action `{action}` at {element}: \
         f_A(h_a(l)) = {lhs} but h_f'(a)(f_A(l)) = {rhs}"
    )]
    NoMiracleStrict {
        agent: String,
        action: String,
        element: String,
        lhs: String,
        rhs: String,
    },
    #[error(
        "fact stability violated for action `{action}`, fact {fact} at {element}: \
         image {image} is not below the fact"
    )]
    FactStabilityViolation {
        action: String,
        fact: String,
        element: String,
        image: String,
    },
    #[error("declared kernel element {element} of action `{action}` is not annihilated")]
    KernelMismatch { action: String, element: String },
    #[error("action set must be nonempty")]
    EmptyActionSet,
    #[error("word of length {length} exceeds the quantale bound {bound}")]
    WordLengthExceeded { length: usize, bound: usize },
    #[error("quantale word bound must be at least 1")]
    ZeroWordBound,
    #[error("quantale generators do not match the algebra's actions")]
    GeneratorMismatch,
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

use std::fmt;

/// An action reference inside `upd`/`after`: a label, or an agent's view of one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActRef {
    Name(String),
    Appear(String, Box<ActRef>),
}

impl ActRef {
    pub fn name(a: impl Into<String>) -> Self {
        ActRef::Name(a.into())
    }

    pub fn as_name(&self) -> Option<&str> {
        match self {
            ActRef::Name(a) => Some(a),
            ActRef::Appear(..) => None,
        }
    }

    pub fn action_names(&self) -> Vec<&str> {
        match self {
            ActRef::Name(a) => vec![a],
            ActRef::Appear(_, inner) => inner.action_names(),
        }
    }
}

/// Symbolic propositions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Atom(String),
    /// A literal set of worlds; only meaningful against a powerset model.
    Set(Vec<String>),
    Bot,
    Top,
    Or(Box<Term>, Box<Term>),
    And(Box<Term>, Box<Term>),
    Not(Box<Term>),
    /// `f_A(t)`
    App(String, Box<Term>),
    /// `f*_A(t)`
    Info(String, Box<Term>),
    Know(String, Box<Term>),
    Believe(String, Box<Term>),
    /// Common knowledge of a group; `Some(d)` unfolds to `⋀_{i≤d}` levels.
    Ck(Vec<String>, Option<usize>, Box<Term>),
    /// `h_a(t)`
    Upd(ActRef, Box<Term>),
    /// `h*_a(t)`
    After(ActRef, Box<Term>),
}

pub fn atom(name: &str) -> Term {
    Term::Atom(name.to_string())
}

impl Term {
    pub fn or(a: Term, b: Term) -> Term {
        Term::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::And(Box::new(a), Box::new(b))
    }

    pub fn not(a: Term) -> Term {
        Term::Not(Box::new(a))
    }

    pub fn app(agent: &str, t: Term) -> Term {
        Term::App(agent.to_string(), Box::new(t))
    }

    pub fn info(agent: &str, t: Term) -> Term {
        Term::Info(agent.to_string(), Box::new(t))
    }

    pub fn upd(a: ActRef, t: Term) -> Term {
        Term::Upd(a, Box::new(t))
    }

    pub fn after(a: ActRef, t: Term) -> Term {
        Term::After(a, Box::new(t))
    }

    /// No modal operator anywhere inside.
    pub fn is_modality_free(&self) -> bool {
        match self {
            Term::Atom(_) | Term::Set(_) | Term::Bot | Term::Top => true,
            Term::Or(a, b) | Term::And(a, b) => a.is_modality_free() && b.is_modality_free(),
            Term::Not(a) => a.is_modality_free(),
            _ => false,
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Atom(_) | Term::Set(_) | Term::Bot | Term::Top => vec![],
            Term::Or(a, b) | Term::And(a, b) => vec![a, b],
            Term::Not(a)
            | Term::App(_, a)
            | Term::Info(_, a)
            | Term::Know(_, a)
            | Term::Believe(_, a)
            | Term::Ck(_, _, a)
            | Term::Upd(_, a)
            | Term::After(_, a) => vec![a],
        }
    }

    /// Rebuilds this node with new children, in `children()` order.
    pub fn with_children(&self, mut kids: Vec<Term>) -> Term {
        let mut next = || Box::new(kids.remove(0));
        match self {
            Term::Atom(_) | Term::Set(_) | Term::Bot | Term::Top => self.clone(),
            Term::Or(..) => Term::Or(next(), next()),
            Term::And(..) => Term::And(next(), next()),
            Term::Not(_) => Term::Not(next()),
            Term::App(a, _) => Term::App(a.clone(), next()),
            Term::Info(a, _) => Term::Info(a.clone(), next()),
            Term::Know(a, _) => Term::Know(a.clone(), next()),
            Term::Believe(a, _) => Term::Believe(a.clone(), next()),
            Term::Ck(g, d, _) => Term::Ck(g.clone(), *d, next()),
            Term::Upd(r, _) => Term::Upd(r.clone(), next()),
            Term::After(r, _) => Term::After(r.clone(), next()),
        }
    }

    /// Same constructor and labels, ignoring children.
    pub fn same_head(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Or(..), Term::Or(..))
            | (Term::And(..), Term::And(..))
            | (Term::Not(_), Term::Not(_)) => true,
            (Term::App(a, _), Term::App(b, _))
            | (Term::Info(a, _), Term::Info(b, _))
            | (Term::Know(a, _), Term::Know(b, _))
            | (Term::Believe(a, _), Term::Believe(b, _)) => a == b,
            (Term::Ck(g, d, _), Term::Ck(h, e, _)) => g == h && d == e,
            (Term::Upd(r, _), Term::Upd(s, _)) | (Term::After(r, _), Term::After(s, _)) => r == s,
            _ => self.children().is_empty() && self == other,
        }
    }

    /// Operands of a right- or left-nested chain of `∨`.
    pub fn disjuncts(&self) -> Vec<&Term> {
        match self {
            Term::Or(a, b) => {
                let mut v = a.disjuncts();
                v.extend(b.disjuncts());
                v
            }
            t => vec![t],
        }
    }

    pub fn conjuncts(&self) -> Vec<&Term> {
        match self {
            Term::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            t => vec![t],
        }
    }

    pub fn agents(&self, out: &mut Vec<String>) {
        match self {
            Term::App(a, _) | Term::Info(a, _) | Term::Know(a, _) | Term::Believe(a, _) => {
                out.push(a.clone())
            }
            Term::Ck(g, _, _) => out.extend(g.iter().cloned()),
            Term::Upd(r, _) | Term::After(r, _) => collect_ref_agents(r, out),
            _ => {}
        }
        for c in self.children() {
            c.agents(out);
        }
    }

    pub fn actions(&self, out: &mut Vec<String>) {
        if let Term::Upd(r, _) | Term::After(r, _) = self {
            out.extend(r.action_names().into_iter().map(String::from));
        }
        for c in self.children() {
            c.actions(out);
        }
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Term::Atom(a) => out.push(a.clone()),
            _ => self.children().into_iter().for_each(|c| c.atoms(out)),
        }
    }

    pub fn worlds(&self, out: &mut Vec<String>) {
        match self {
            Term::Set(ws) => out.extend(ws.iter().cloned()),
            _ => self.children().into_iter().for_each(|c| c.worlds(out)),
        }
    }
}

fn collect_ref_agents(r: &ActRef, out: &mut Vec<String>) {
    if let ActRef::Appear(a, inner) = r {
        out.push(a.clone());
        collect_ref_agents(inner, out);
    }
}

/// An entailment goal `lhs ≤ rhs`, written `lhs |= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub lhs: Term,
    pub rhs: Term,
}

impl Sequent {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Sequent { lhs, rhs }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |= {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for ActRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActRef::Name(a) => f.write_str(a),
            ActRef::Appear(agent, inner) => write!(f, "fa[{agent}]({inner})"),
        }
    }
}

const OR: u8 = 0;
const AND: u8 = 1;
const UNARY: u8 = 2;

fn write_at(t: &Term, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let own = match t {
        Term::Or(..) => OR,
        Term::And(..) => AND,
        _ => UNARY,
    };
    if own < level {
        write!(f, "(")?;
        write_at(t, own, f)?;
        return write!(f, ")");
    }
    match t {
        Term::Atom(a) => f.write_str(a),
        Term::Set(ws) => write!(f, "{{{}}}", ws.join(",")),
        Term::Bot => f.write_str("bot"),
        Term::Top => f.write_str("top"),
        Term::Or(a, b) => {
            write_at(a, OR, f)?;
            f.write_str(" \\/ ")?;
            write_at(b, AND, f)
        }
        Term::And(a, b) => {
            write_at(a, AND, f)?;
            f.write_str(" /\\ ")?;
            write_at(b, UNARY, f)
        }
        Term::Not(a) => {
            f.write_str("~")?;
            write_at(a, UNARY, f)
        }
        Term::App(ag, a) => write!(f, "f[{ag}]({a})"),
        Term::Info(ag, a) => write!(f, "fi[{ag}]({a})"),
        Term::Know(ag, a) => write!(f, "K[{ag}]({a})"),
        Term::Believe(ag, a) => write!(f, "B[{ag}]({a})"),
        Term::Ck(g, d, a) => match d {
            Some(d) => write!(f, "CK[{};{d}]({a})", g.join(",")),
            None => write!(f, "CK[{}]({a})", g.join(",")),
        },
        Term::Upd(r, a) => write!(f, "upd[{r}]({a})"),
        Term::After(r, a) => write!(f, "after[{r}]({a})"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, OR, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parenthesizes_by_precedence() {
        let h = atom("H");
        let t = atom("T");
        assert_eq!(Term::or(h.clone(), t.clone()).to_string(), "H \\/ T");
        assert_eq!(
            Term::and(Term::or(h.clone(), t.clone()), h.clone()).to_string(),
            "(H \\/ T) /\\ H"
        );
        assert_eq!(
            Term::or(h.clone(), Term::or(t.clone(), h.clone())).to_string(),
            "H \\/ (T \\/ H)"
        );
        assert_eq!(
            Term::not(Term::and(h.clone(), t.clone())).to_string(),
            "~(H /\\ T)"
        );
        let r = ActRef::Appear("A".into(), Box::new(ActRef::name("a")));
        assert_eq!(
            Term::upd(r, Term::app("A", h)).to_string(),
            "upd[fa[A](a)](f[A](H))"
        );
        assert_eq!(
            Term::Ck(vec!["A".into(), "B".into()], Some(2), Box::new(t)).to_string(),
            "CK[A,B;2](T)"
        );
    }

    #[test]
    fn modality_free() {
        assert!(Term::or(atom("H"), Term::Bot).is_modality_free());
        assert!(!Term::app("A", atom("H")).is_modality_free());
    }
}

//! Evaluation of terms in a concrete algebra.

use std::collections::BTreeMap;

use crate::derivation::{ActRef, Term};
use crate::dynamics::{ActionId, DynamicAlgebra};
use crate::error::{AlgebraError, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Outcome of checking `lhs ≤ rhs` in a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entailment {
    Holds,
    /// A join-irreducible below `lhs` but not below `rhs`.
    Fails {
        witness: Elem,
    },
}

impl Entailment {
    pub fn holds(self) -> bool {
        self == Entailment::Holds
    }
}

/// Negation: the complement on Boolean carriers, the pseudo-complement on
/// distributive ones.
pub fn negate(l: &FiniteLattice, e: Elem) -> Result<Elem> {
    match l.complement(e) {
        Some(c) if l.is_boolean() => Ok(c),
        _ => l.heyting_negation(e),
    }
}

/// Evaluates modality-free terms: set literals, element labels, atoms
/// bound in `atoms`, and the lattice connectives.
pub fn eval_static(l: &FiniteLattice, atoms: &BTreeMap<String, Elem>, t: &Term) -> Result<Elem> {
    match t {
        Term::Atom(name) => atoms
            .get(name)
            .copied()
            .or_else(|| l.find(name))
            .ok_or_else(|| AlgebraError::UnknownLabel(name.clone())),
        Term::Set(worlds) => l.world_set(worlds),
        Term::Bot => Ok(l.bottom()),
        Term::Top => Ok(l.top()),
        Term::Or(a, b) => Ok(l.join(eval_static(l, atoms, a)?, eval_static(l, atoms, b)?)),
        Term::And(a, b) => Ok(l.meet(eval_static(l, atoms, a)?, eval_static(l, atoms, b)?)),
        Term::Not(a) => negate(l, eval_static(l, atoms, a)?),
        _ => Err(AlgebraError::Internal(format!(
            "`{t}` needs agents or actions to evaluate"
        ))),
    }
}

/// A validated algebra together with the meaning of each atom.
#[derive(Clone, Debug)]
pub struct Model {
    pub algebra: DynamicAlgebra,
    pub atoms: BTreeMap<String, Elem>,
}

impl Model {
    pub fn new(algebra: DynamicAlgebra, atoms: BTreeMap<String, Elem>) -> Self {
        Model { algebra, atoms }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.algebra.lattice()
    }

    fn action(&self, r: &ActRef) -> Result<ActionId> {
        match r {
            ActRef::Name(a) => self.algebra.action(a),
            ActRef::Appear(agent, inner) => {
                let inner = self.action(inner)?;
                let agent = self.algebra.mama().agent(agent)?;
                Ok(self.algebra.action_appearance(agent, inner))
            }
        }
    }

    pub fn eval(&self, t: &Term) -> Result<Elem> {
        let l = self.lattice();
        let mama = self.algebra.mama();
        Ok(match t {
            Term::Atom(_) | Term::Set(_) | Term::Bot | Term::Top => eval_static(l, &self.atoms, t)?,
            Term::Or(a, b) => l.join(self.eval(a)?, self.eval(b)?),
            Term::And(a, b) => l.meet(self.eval(a)?, self.eval(b)?),
            Term::Not(a) => negate(l, self.eval(a)?)?,
            Term::App(agent, a) => mama.appearance(mama.agent(agent)?, self.eval(a)?)?,
            Term::Info(agent, a) => mama.information(mama.agent(agent)?, self.eval(a)?)?,
            Term::Know(agent, a) => mama.knowledge(mama.agent(agent)?, self.eval(a)?)?,
            Term::Believe(agent, a) => mama.belief(mama.agent(agent)?, self.eval(a)?)?,
            Term::Ck(group, depth, a) => {
                let g = mama.group(group)?;
                let x = self.eval(a)?;
                match depth {
                    None => mama.common_knowledge(&g)?.apply(x),
                    Some(d) => {
                        let info = mama.group_information(&g);
                        let mut level = x;
                        let mut acc = x;
                        for _ in 0..*d {
                            level = info.apply(level);
                            acc = l.meet(acc, level);
                        }
                        acc
                    }
                }
            }
            Term::Upd(r, a) => self
                .algebra
                .update_map(self.action(r)?)
                .try_apply(self.eval(a)?)?,
            Term::After(r, a) => self.algebra.update_result(self.action(r)?, self.eval(a)?)?,
        })
    }

    pub fn entails(&self, lhs: &Term, rhs: &Term) -> Result<Entailment> {
        let l = self.lattice();
        let (a, b) = (self.eval(lhs)?, self.eval(rhs)?);
        if l.leq(a, b) {
            return Ok(Entailment::Holds);
        }
        let witness = l
            .join_irreducibles()
            .iter()
            .copied()
            .find(|&j| l.leq(j, a) && !l.leq(j, b))
            .ok_or_else(|| {
                AlgebraError::Internal("no join-irreducible separates the sides".into())
            })?;
        Ok(Entailment::Fails { witness })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::parse_term;
    use crate::dynamics::tests::honest_coin;

    fn model() -> Model {
        let algebra = honest_coin("h1").unwrap();
        let l = algebra.lattice().clone();
        let atoms = BTreeMap::from([
            ("H".to_string(), l.world_set(&["h0", "h1"]).unwrap()),
            ("T".to_string(), l.world_set(&["t0"]).unwrap()),
        ]);
        Model::new(algebra, atoms)
    }

    fn entails(m: &Model, l: &str, r: &str) -> Entailment {
        m.entails(&parse_term(l).unwrap(), &parse_term(r).unwrap())
            .unwrap()
    }

    #[test]
    fn honest_goals_hold() {
        let m = model();
        for rhs in [
            "after[a](fi[A](H))",
            "after[a](fi[A](fi[C](H)))",
            "fi[A](H \\/ T)",
            "after[fa[A](a)](fi[B](H))",
        ] {
            assert!(entails(&m, "H", rhs).holds(), "{rhs}");
        }
    }

    #[test]
    fn failures_carry_witnesses() {
        let m = model();
        let l = m.lattice();
        assert_eq!(
            entails(&m, "H", "fi[A](H)"),
            Entailment::Fails {
                witness: l.world_set(&["h0"]).unwrap()
            }
        );
        assert!(m.eval(&parse_term("q").unwrap()).is_err());
    }

    #[test]
    fn connectives() {
        let m = model();
        let l = m.lattice();
        assert_eq!(
            m.eval(&parse_term("~H").unwrap()).unwrap(),
            l.world_set(&["t0"]).unwrap()
        );
        assert_eq!(
            m.eval(&parse_term("{h0} \\/ T").unwrap()).unwrap(),
            l.world_set(&["h0", "t0"]).unwrap()
        );
        assert_eq!(
            m.eval(&parse_term("K[A](H)").unwrap()).unwrap(),
            l.world_set(&["h1"]).unwrap()
        );
        assert_eq!(
            m.eval(&parse_term("CK[A,B;0](H)").unwrap()).unwrap(),
            l.world_set(&["h0", "h1"]).unwrap()
        );
        assert_eq!(
            m.eval(&parse_term("CK[A,B](H)").unwrap()).unwrap(),
            l.world_set(&["h1"]).unwrap()
        );
    }
}

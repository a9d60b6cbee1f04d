//! Multi-agent adjoint modal algebras.
//!
//! Each agent carries an appearance map `f_A` (join-preserving) and its right
//! adjoint `f*_A`, read as information. Knowledge is truthful information,
//! `K_A(l) = f*_A(l) ∧ l`.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::operators::{AdjointPair, LatticeMap};

/// Index of an agent within its MAMA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub(crate) usize);

impl AgentId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mama {
    lattice: Arc<FiniteLattice>,
    agents: Vec<String>,
    appearance: Vec<AdjointPair>,
}

/// Nonempty set of agents, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group(Vec<AgentId>);

impl Group {
    pub fn members(&self) -> &[AgentId] {
        &self.0
    }
}

/// Outcome of [`Mama::check_coclosure_consequences`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoclosureReport {
    /// The appearance map is not decreasing or not weakly idempotent.
    HypothesesNotMet(HypothesisWitness),
    /// Hypotheses hold; lists the first consequence that failed, if any.
    Checked {
        failures: Vec<ConsequenceFailure>,
        boolean_checked: bool,
    },
}

impl CoclosureReport {
    pub fn hypotheses_hold(&self) -> bool {
        matches!(self, CoclosureReport::Checked { .. })
    }

    pub fn all_consequences_hold(&self) -> bool {
        matches!(self, CoclosureReport::Checked { failures, .. } if failures.is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisWitness {
    /// `f_A(l) ≰ l`.
    NotDecreasing { at: Elem, image: Elem },
    /// `f_A(f_A(l)) ≰ f_A(l)`.
    NotWeaklyIdempotent { at: Elem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsequenceFailure {
    InformationNotTransitive { at: Elem },
    KnowledgeNotTransitive { at: Elem },
    KnowledgeNotIdentity { at: Elem },
    NegativeIntrospection { at: Elem },
}

impl Mama {
    /// Builds a MAMA from per-agent generator assignments.
    pub fn build<S: AsRef<str>>(
        lattice: &Arc<FiniteLattice>,
        agents: &[(S, Vec<(Elem, Elem)>)],
    ) -> Result<Self> {
        let maps = agents
            .iter()
            .map(|(name, gens)| {
                Ok((
                    name.as_ref().to_string(),
                    LatticeMap::from_generators(lattice, gens)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_maps(lattice, maps)
    }

    /// Builds a MAMA from already constructed appearance maps.
    pub fn from_maps(
        lattice: &Arc<FiniteLattice>,
        agents: Vec<(String, LatticeMap)>,
    ) -> Result<Self> {
        if agents.is_empty() {
            return Err(AlgebraError::NoAgents);
        }
        let mut names = Vec::with_capacity(agents.len());
        let mut appearance = Vec::with_capacity(agents.len());
        for (name, map) in agents {
            if names.contains(&name) {
                return Err(AlgebraError::DuplicateAgent(name));
            }
            if !crate::operators::same_lattice(map.lattice(), lattice) {
                return Err(AlgebraError::LatticeMismatch);
            }
            appearance.push(map.right_adjoint()?);
            names.push(name);
        }
        Ok(Mama {
            lattice: lattice.clone(),
            agents: names,
            appearance,
        })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn agents(&self) -> impl ExactSizeIterator<Item = (AgentId, &str)> {
        self.agents
            .iter()
            .enumerate()
            .map(|(i, n)| (AgentId(i), n.as_str()))
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent(&self, name: &str) -> Result<AgentId> {
        self.agents
            .iter()
            .position(|a| a == name)
            .map(AgentId)
            .ok_or_else(|| AlgebraError::UnknownAgent(name.to_string()))
    }

    pub fn agent_name(&self, a: AgentId) -> &str {
        &self.agents[a.0]
    }

    pub fn group<S: AsRef<str>>(&self, names: &[S]) -> Result<Group> {
        if names.is_empty() {
            return Err(AlgebraError::EmptyGroup);
        }
        let mut ids = names
            .iter()
            .map(|n| self.agent(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ids.sort();
        ids.dedup();
        Ok(Group(ids))
    }

    /// The pair `f_A ⊣ f*_A`.
    pub fn pair(&self, a: AgentId) -> &AdjointPair {
        &self.appearance[a.0]
    }

    pub fn appearance_map(&self, a: AgentId) -> &LatticeMap {
        self.appearance[a.0].left()
    }

    pub fn information_map(&self, a: AgentId) -> &LatticeMap {
        self.appearance[a.0].right()
    }

    /// `f_A(l)`: everything that appears possible to `A` when `l` holds.
    pub fn appearance(&self, a: AgentId, l: Elem) -> Result<Elem> {
        self.appearance_map(a).try_apply(l)
    }

    /// `f*_A(l)`: `A` is informed that `l` holds.
    pub fn information(&self, a: AgentId, l: Elem) -> Result<Elem> {
        self.information_map(a).try_apply(l)
    }

    /// `K_A(l) = f*_A(l) ∧ l`.
    pub fn knowledge(&self, a: AgentId, l: Elem) -> Result<Elem> {
        Ok(self.lattice.meet(self.information(a, l)?, l))
    }

    /// `B_A(l) = ¬K_A(¬l)`; Boolean carriers only.
    pub fn belief(&self, a: AgentId, l: Elem) -> Result<Elem> {
        let neg = |x| self.lattice.complement(x).ok_or(AlgebraError::NotBoolean);
        neg(self.knowledge(a, neg(self.lattice.check(l)?)?)?)
    }

    pub fn knowledge_map(&self, a: AgentId) -> LatticeMap {
        let info = self.information_map(a);
        LatticeMap::from_fn(&self.lattice, |l| self.lattice.meet(info.apply(l), l)).expect("total")
    }

    /// `f_β = ⋁_{B∈β} f_B`.
    pub fn group_appearance(&self, group: &Group) -> LatticeMap {
        let mut members = group.0.iter();
        let first = self
            .appearance_map(*members.next().expect("nonempty group"))
            .clone();
        members.fold(first, |acc, &b| {
            acc.pointwise_join(self.appearance_map(b))
                .expect("same lattice")
        })
    }

    /// `f*_β = ⋀_{B∈β} f*_B`.
    pub fn group_information(&self, group: &Group) -> LatticeMap {
        let mut members = group.0.iter();
        let first = self
            .information_map(*members.next().expect("nonempty group"))
            .clone();
        members.fold(first, |acc, &b| {
            acc.pointwise_meet(self.information_map(b))
                .expect("same lattice")
        })
    }

    /// `⋀_{i≥1} f*_β^i`: nested shared information.
    pub fn common_information(&self, group: &Group) -> Result<LatticeMap> {
        self.group_information(group).gfp_meet()
    }

    /// `⋀_{i≥0} f*_β^i`: common information that is also true.
    pub fn common_knowledge(&self, group: &Group) -> Result<LatticeMap> {
        self.group_information(group).gfp_meet_reflexive()
    }

    /// Checks the S4/S5-style consequences of a decreasing, weakly idempotent appearance.
    pub fn check_coclosure_consequences(&self, a: AgentId) -> CoclosureReport {
        let l = &self.lattice;
        let f = self.appearance_map(a);
        for x in l.elements() {
            if !l.leq(f.apply(x), x) {
                return CoclosureReport::HypothesesNotMet(HypothesisWitness::NotDecreasing {
                    at: x,
                    image: f.apply(x),
                });
            }
        }
        for x in l.elements() {
            if !l.leq(f.apply(f.apply(x)), f.apply(x)) {
                return CoclosureReport::HypothesesNotMet(HypothesisWitness::NotWeaklyIdempotent {
                    at: x,
                });
            }
        }
        let info = self.information_map(a);
        let k = self.knowledge_map(a);
        let mut failures = Vec::new();
        let mut first = |found: Option<Elem>, make: fn(Elem) -> ConsequenceFailure| {
            if let Some(at) = found {
                failures.push(make(at));
            }
        };
        first(
            l.elements()
                .find(|&x| !l.leq(info.apply(x), info.apply(info.apply(x)))),
            |at| ConsequenceFailure::InformationNotTransitive { at },
        );
        first(
            l.elements()
                .find(|&x| !l.leq(k.apply(x), k.apply(k.apply(x)))),
            |at| ConsequenceFailure::KnowledgeNotTransitive { at },
        );
        first(l.elements().find(|&x| k.apply(x) != x), |at| {
            ConsequenceFailure::KnowledgeNotIdentity { at }
        });
        let boolean_checked = l.is_boolean();
        if boolean_checked {
            let neg = |x| l.complement(x).expect("Boolean lattice");
            first(
                l.elements().find(|&x| {
                    let not_k = neg(k.apply(x));
                    !l.leq(not_k, k.apply(not_k))
                }),
                |at| ConsequenceFailure::NegativeIntrospection { at },
            );
        }
        CoclosureReport::Checked {
            failures,
            boolean_checked,
        }
    }
}

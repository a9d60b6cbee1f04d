//! Actions over a MAMA: update maps `h_a ⊣ h*_a`, the appearance of actions
//! to agents, kernels, facts, and the bounded action quantale.

mod quantale;
mod system;

pub use quantale::{
    ActionQuantale, Lift, QElem, QuantaleReport, QuantaleViolation, Word, DEFAULT_WORD_BOUND,
};
pub use system::{check_epistemic_system, ActFn, EpistemicSystemView, SystemReport};

use std::sync::Arc;

use crate::epistemic::{AgentId, Mama};
use crate::error::{AlgebraError, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::operators::{AdjointPair, LatticeMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub(crate) usize);

impl ActionId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionLabel {
    pub name: String,
    pub is_communication: bool,
}

/// One action as supplied to [`DynamicAlgebra::assemble`].
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub name: String,
    pub is_communication: bool,
    /// The update map `h_a`; must be join-preserving.
    pub update: LatticeMap,
    /// Elements declared to lie in the kernel, checked against the computed one.
    pub declared_kernel: Option<Vec<Elem>>,
}

/// Toggles for axiom validation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxiomOptions {
    /// Check no-miracle on every element instead of on join-irreducibles only.
    pub full_lattice: bool,
    /// Also check the converse of fact stability.
    pub strict_facts: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicAlgebra {
    mama: Mama,
    actions: Vec<ActionLabel>,
    update: Vec<AdjointPair>,
    /// `action_appearance[agent][action]`.
    action_appearance: Vec<Vec<ActionId>>,
    facts: Vec<Elem>,
    declared_kernels: Vec<Option<Vec<Elem>>>,
}

/// All axiom findings for an assembled algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Mandatory axioms: no-miracle, forward fact stability, declared kernels.
    pub violations: Vec<AlgebraError>,
    /// Converse fact-stability counterexamples, filled in strict mode.
    pub converse_counterexamples: Vec<FactCounterexample>,
    pub strict: bool,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty() && (!self.strict || self.converse_counterexamples.is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactCounterexample {
    pub action: ActionId,
    pub fact: Elem,
    pub element: Elem,
}

/// Result of [`DynamicAlgebra::validate_fact_stability`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactReport {
    pub forward_violations: Vec<FactCounterexample>,
    pub converse_counterexamples: Vec<FactCounterexample>,
    pub strict: bool,
}

impl FactReport {
    pub fn forward_passes(&self) -> bool {
        self.forward_violations.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.forward_passes() && (!self.strict || self.converse_counterexamples.is_empty())
    }
}

/// Kernel of an action, with the declared-kernel comparison when one was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub computed: Vec<Elem>,
    /// Declared elements missing from the computed kernel; `None` when nothing was declared.
    pub undeclared_misses: Option<Vec<Elem>>,
}

impl KernelReport {
    pub fn matches(&self) -> Option<bool> {
        self.undeclared_misses.as_ref().map(Vec::is_empty)
    }
}

impl DynamicAlgebra {
    /// Assembles an algebra and checks every mandatory axiom, failing on the
    /// first violation in (agent, action, element) order.
    pub fn build(
        mama: Mama,
        actions: Vec<ActionSpec>,
        action_appearance: &[(&str, &str, &str)],
        facts: Vec<Elem>,
        options: AxiomOptions,
    ) -> Result<Self> {
        let alg = Self::assemble(mama, actions, action_appearance, facts)?;
        let report = alg.validate(options);
        match report.violations.into_iter().next() {
            Some(v) => Err(v),
            None => Ok(alg),
        }
    }

    /// Builds the structure (adjoints included) without checking the axioms.
    pub fn assemble(
        mama: Mama,
        actions: Vec<ActionSpec>,
        action_appearance: &[(&str, &str, &str)],
        facts: Vec<Elem>,
    ) -> Result<Self> {
        let lattice = mama.lattice().clone();
        let mut labels = Vec::with_capacity(actions.len());
        let mut update = Vec::with_capacity(actions.len());
        let mut declared_kernels = Vec::with_capacity(actions.len());
        for spec in actions {
            if labels.iter().any(|l: &ActionLabel| l.name == spec.name) {
                return Err(AlgebraError::DuplicateAction(spec.name));
            }
            if !crate::operators::same_lattice(spec.update.lattice(), &lattice) {
                return Err(AlgebraError::LatticeMismatch);
            }
            update.push(spec.update.right_adjoint()?);
            if let Some(k) = &spec.declared_kernel {
                for &e in k {
                    lattice.check(e)?;
                }
            }
            declared_kernels.push(spec.declared_kernel);
            labels.push(ActionLabel {
                name: spec.name,
                is_communication: spec.is_communication,
            });
        }
        for &f in &facts {
            lattice.check(f)?;
        }
        let find = |name: &str| {
            labels
                .iter()
                .position(|l| l.name == name)
                .map(ActionId)
                .ok_or_else(|| AlgebraError::UnknownAction(name.to_string()))
        };
        let mut table: Vec<Vec<Option<ActionId>>> =
            vec![vec![None; labels.len()]; mama.agent_count()];
        for &(agent, from, to) in action_appearance {
            let a = mama.agent(agent)?;
            table[a.0][find(from)?.0] = Some(find(to)?);
        }
        let action_appearance = table
            .into_iter()
            .enumerate()
            .map(|(agent, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(action, image)| {
                        image.ok_or_else(|| AlgebraError::MissingActionAppearance {
                            agent: mama.agent_name(AgentId(agent)).to_string(),
                            action: labels[action].name.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DynamicAlgebra {
            mama,
            actions: labels,
            update,
            action_appearance,
            facts,
            declared_kernels,
        })
    }

    pub fn mama(&self) -> &Mama {
        &self.mama
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.mama.lattice()
    }

    pub fn actions(&self) -> impl ExactSizeIterator<Item = (ActionId, &ActionLabel)> {
        self.actions
            .iter()
            .enumerate()
            .map(|(i, l)| (ActionId(i), l))
    }

    pub fn action(&self, name: &str) -> Result<ActionId> {
        self.actions
            .iter()
            .position(|l| l.name == name)
            .map(ActionId)
            .ok_or_else(|| AlgebraError::UnknownAction(name.to_string()))
    }

    pub fn label(&self, a: ActionId) -> &ActionLabel {
        &self.actions[a.0]
    }

    pub fn facts(&self) -> &[Elem] {
        &self.facts
    }

    /// `h_a`.
    pub fn update_map(&self, a: ActionId) -> &LatticeMap {
        self.update[a.0].left()
    }

    /// `h*_a`.
    pub fn update_adjoint(&self, a: ActionId) -> &LatticeMap {
        self.update[a.0].right()
    }

    /// `f'_A(a)`.
    pub fn action_appearance(&self, agent: AgentId, a: ActionId) -> ActionId {
        self.action_appearance[agent.0][a.0]
    }

    /// `h*_a(l)`: after action `a`, `l` holds.
    pub fn update_result(&self, a: ActionId, l: Elem) -> Result<Elem> {
        self.update_adjoint(a).try_apply(l)
    }

    /// `{l | h_a(l) = ⊥}`.
    pub fn kernel(&self, a: ActionId) -> KernelReport {
        let l = self.lattice();
        let h = self.update_map(a);
        let computed: Vec<Elem> = l.elements().filter(|&x| h.apply(x) == l.bottom()).collect();
        let undeclared_misses = self.declared_kernels[a.0].as_ref().map(|declared| {
            declared
                .iter()
                .copied()
                .filter(|e| !computed.contains(e))
                .collect()
        });
        KernelReport {
            computed,
            undeclared_misses,
        }
    }

    /// `⋀_{i≥1} h*_α^i (l)` for `h_α = ⋁_{a∈α} h_a`.
    pub fn eventually(&self, alpha: &[ActionId], l: Elem) -> Result<Elem> {
        let (first, rest) = alpha.split_first().ok_or(AlgebraError::EmptyActionSet)?;
        self.lattice().check(l)?;
        let mut h = self.update_map(*first).clone();
        for &a in rest {
            h = h.pointwise_join(self.update_map(a))?;
        }
        Ok(h.right_adjoint()?.right().gfp_meet()?.apply(l))
    }

    /// Forward fact stability (`l ≤ φ ⟹ h_a(l) ≤ φ`) for communication actions,
    /// plus the converse in strict mode.
    pub fn validate_fact_stability(&self, strict: bool) -> FactReport {
        let l = self.lattice();
        let mut report = FactReport {
            strict,
            ..FactReport::default()
        };
        for (a, label) in self.actions() {
            if !label.is_communication {
                continue;
            }
            let h = self.update_map(a);
            for &fact in &self.facts {
                for x in l.elements() {
                    let below = l.leq(x, fact);
                    let image_below = l.leq(h.apply(x), fact);
                    let cx = FactCounterexample {
                        action: a,
                        fact,
                        element: x,
                    };
                    if below && !image_below {
                        report.forward_violations.push(cx);
                    }
                    if strict && image_below && !below {
                        report.converse_counterexamples.push(cx);
                    }
                }
            }
        }
        report
    }

    /// Points where `f_A(h_a(l)) ≰ h_{f'_A(a)}(f_A(l))`.
    ///
    /// Both sides are join-preserving in `l`, so checking join-irreducibles
    /// suffices unless `full_lattice` asks for every element.
    pub fn no_miracle_violations(&self, full_lattice: bool) -> Vec<AlgebraError> {
        self.permutation_failures(full_lattice, |lat, lhs, rhs| lat.leq(lhs, rhs), false)
    }

    /// Points where the permutation is strict, i.e. the non-paranoid equality fails.
    pub fn no_miracle_equality_failures(&self) -> Vec<AlgebraError> {
        self.permutation_failures(true, |_, lhs, rhs| lhs == rhs, true)
    }

    fn permutation_failures(
        &self,
        full_lattice: bool,
        ok: impl Fn(&FiniteLattice, Elem, Elem) -> bool,
        equality: bool,
    ) -> Vec<AlgebraError> {
        let l = self.lattice().clone();
        let domain: Vec<Elem> = if full_lattice {
            l.elements().collect()
        } else {
            l.join_irreducibles().to_vec()
        };
        let mut out = Vec::new();
        for (agent, agent_name) in self.mama.agents() {
            let f = self.mama.appearance_map(agent);
            for (a, label) in self.actions() {
                let h = self.update_map(a);
                let seen = self.update_map(self.action_appearance(agent, a));
                for &x in &domain {
                    let lhs = f.apply(h.apply(x));
                    let rhs = seen.apply(f.apply(x));
                    if !ok(&l, lhs, rhs) {
                        let (agent, action) = (agent_name.to_string(), label.name.clone());
                        let (element, lhs, rhs) = (l.name(x), l.name(lhs), l.name(rhs));
                        out.push(
                            if equality && l.leq(f.apply(h.apply(x)), seen.apply(f.apply(x))) {
                                AlgebraError::NoMiracleStrict {
                                    agent,
                                    action,
                                    element,
                                    lhs,
                                    rhs,
                                }
                            } else {
                                AlgebraError::NoMiracleViolation {
                                    agent,
                                    action,
                                    element,
                                    lhs,
                                    rhs,
                                }
                            },
                        );
                    }
                }
            }
        }
        out
    }

    /// Every mandatory axiom, in deterministic (agent, action, element) order.
    pub fn validate(&self, options: AxiomOptions) -> AxiomReport {
        let l = self.lattice();
        let mut violations = self.no_miracle_violations(options.full_lattice);
        let facts = self.validate_fact_stability(options.strict_facts);
        violations.extend(facts.forward_violations.iter().map(|c| {
            AlgebraError::FactStabilityViolation {
                action: self.actions[c.action.0].name.clone(),
                fact: l.name(c.fact),
                element: l.name(c.element),
                image: l.name(self.update_map(c.action).apply(c.element)),
            }
        }));
        for (a, label) in self.actions() {
            if let Some(misses) = self.kernel(a).undeclared_misses {
                violations.extend(misses.into_iter().map(|e| AlgebraError::KernelMismatch {
                    action: label.name.clone(),
                    element: l.name(e),
                }));
            }
        }
        AxiomReport {
            violations,
            converse_counterexamples: facts.converse_counterexamples,
            strict: options.strict_facts,
        }
    }
}

//! The two-sorted view: propositions acted on by quantale elements.

use std::fmt;
use std::sync::Arc;

use super::quantale::{ActionQuantale, Lift, QElem, QuantaleReport};
use super::{ActionSpec, AxiomOptions, AxiomReport, DynamicAlgebra};
use crate::epistemic::Mama;
use crate::error::{AlgebraError, Result};
use crate::lattice::Elem;
use crate::operators::LatticeMap;

/// The action of a single word on a proposition.
pub type ActFn = Arc<dyn Fn(Elem, &[usize]) -> Elem + Send + Sync>;

#[derive(Clone)]
pub struct EpistemicSystemView {
    pub mama: Mama,
    pub quantale: ActionQuantale,
    /// One lift per agent, in agent order.
    pub lifts: Vec<Lift>,
    pub act_word: ActFn,
    pub communication: Vec<bool>,
    pub facts: Vec<Elem>,
}

impl fmt::Debug for EpistemicSystemView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EpistemicSystemView")
            .field("quantale", &self.quantale)
            .field("lifts", &self.lifts)
            .finish_non_exhaustive()
    }
}

impl EpistemicSystemView {
    /// `act(l, X) = ⋁_{w∈X} act(l, w)`.
    pub fn act(&self, l: Elem, x: &QElem) -> Elem {
        let lat = self.mama.lattice();
        lat.join_all(x.words().map(|w| (self.act_word)(l, w)))
    }

    pub fn lift(&self, agent: usize, x: &QElem) -> QElem {
        self.lifts[agent].apply(x)
    }
}

impl DynamicAlgebra {
    /// Words act by applying their letters' update maps left to right.
    pub fn to_system(&self, q: &ActionQuantale) -> Result<EpistemicSystemView> {
        if q.generators().len() != self.actions.len()
            || q.generators()
                .iter()
                .zip(&self.actions)
                .any(|(g, a)| *g != a.name)
        {
            return Err(AlgebraError::GeneratorMismatch);
        }
        let tables: Vec<Vec<Elem>> = self
            .update
            .iter()
            .map(|p| p.left().values().to_vec())
            .collect();
        let act_word: ActFn =
            Arc::new(move |l, w| w.iter().fold(l, |acc, &g| tables[g][acc.index()]));
        let lifts = self
            .action_appearance
            .iter()
            .map(|row| Lift::letterwise(row.iter().map(|a| a.0).collect()))
            .collect();
        Ok(EpistemicSystemView {
            mama: self.mama.clone(),
            quantale: q.clone(),
            lifts,
            act_word,
            communication: self.actions.iter().map(|a| a.is_communication).collect(),
            facts: self.facts.clone(),
        })
    }

    /// Recovers the indexed family from single-letter actions; every lift must
    /// send each letter to a single letter.
    pub fn from_system(view: &EpistemicSystemView) -> Result<Self> {
        let lattice = view.mama.lattice();
        let gens = view.quantale.generators();
        if view.communication.len() != gens.len() || view.lifts.len() != view.mama.agent_count() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        let mut actions = Vec::with_capacity(gens.len());
        for (g, name) in gens.iter().enumerate() {
            let update = LatticeMap::from_fn(lattice, |l| (view.act_word)(l, &[g]))?
                .into_join_preserving()?;
            actions.push(ActionSpec {
                name: name.clone(),
                is_communication: view.communication[g],
                update,
                declared_kernel: None,
            });
        }
        let mut appearance = Vec::new();
        for ((_, agent), lift) in view.mama.agents().zip(&view.lifts) {
            for (g, name) in gens.iter().enumerate() {
                let image = lift.apply(&QElem::word(vec![g]));
                let seen = match image.words().collect::<Vec<_>>()[..] {
                    [w] if w.len() == 1 => w[0],
                    _ => return Err(AlgebraError::GeneratorMismatch),
                };
                appearance.push((agent.to_string(), name.clone(), gens[seen].clone()));
            }
        }
        let appearance: Vec<(&str, &str, &str)> = appearance
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        DynamicAlgebra::assemble(view.mama.clone(), actions, &appearance, view.facts.clone())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SystemReport {
    /// Unit, composition, join and lifted no-miracle failures, as messages.
    pub module_violations: Vec<String>,
    pub axioms: AxiomReport,
    pub quantale: QuantaleReport,
    /// Set when the view could not be read back as an indexed algebra.
    pub conversion_error: Option<AlgebraError>,
}

impl SystemReport {
    pub fn passes(&self) -> bool {
        self.module_violations.is_empty()
            && self.axioms.passes()
            && self.quantale.passes()
            && self.conversion_error.is_none()
    }
}

/// Exhaustive check of the module laws over all words within the bound,
/// together with the indexed axioms and the epistemic-quantale laws.
pub fn check_epistemic_system(
    view: &EpistemicSystemView,
    options: AxiomOptions,
    non_paranoid: bool,
) -> SystemReport {
    let lat = view.mama.lattice();
    let q = &view.quantale;
    let words = q.all_words();
    let name = |e: Elem| lat.name(e);
    let mut out = Vec::new();

    for l in lat.elements() {
        if view.act(l, &QElem::unit()) != l {
            out.push(format!("unit law fails at {}", name(l)));
        }
        if view.act(l, &QElem::zero()) != lat.bottom() {
            out.push(format!("empty choice does not annihilate {}", name(l)));
        }
    }
    for u in &words {
        let x = QElem::word(u.clone());
        for v in &words {
            let y = QElem::word(v.clone());
            for l in lat.elements() {
                if view.act(l, &x.join(&y)) != lat.join(view.act(l, &x), view.act(l, &y)) {
                    out.push(format!(
                        "join law fails at {} for {} and {}",
                        name(l),
                        q.display(&x),
                        q.display(&y)
                    ));
                }
                if u.len() + v.len() <= q.bound() {
                    let xy = q.compose(&x, &y).expect("within bound");
                    if view.act(l, &xy) != view.act(view.act(l, &x), &y) {
                        out.push(format!(
                            "composition law fails at {} for {} then {}",
                            name(l),
                            q.display(&x),
                            q.display(&y)
                        ));
                    }
                }
            }
        }
        for l1 in lat.elements() {
            for l2 in lat.elements() {
                if view.act(lat.join(l1, l2), &x) != lat.join(view.act(l1, &x), view.act(l2, &x)) {
                    out.push(format!(
                        "{} does not preserve the join of {} and {}",
                        q.display(&x),
                        name(l1),
                        name(l2)
                    ));
                }
            }
        }
        for (agent, agent_name) in view.mama.agents() {
            let f = view.mama.appearance_map(agent);
            let seen = view.lift(agent.index(), &x);
            for l in lat.elements() {
                let lhs = f.apply(view.act(l, &x));
                let rhs = view.act(f.apply(l), &seen);
                if !lat.leq(lhs, rhs) {
                    out.push(format!(
                        "lifted no-miracle fails for {agent_name} at {} under {}: {} is not below {}",
                        name(l),
                        q.display(&x),
                        name(lhs),
                        name(rhs)
                    ));
                }
            }
        }
    }

    let lifts: Vec<(String, Lift)> = view
        .mama
        .agents()
        .zip(&view.lifts)
        .map(|((_, a), l)| (a.to_string(), l.clone()))
        .collect();
    let quantale = q.check_epistemic_quantale(&lifts, non_paranoid);
    let mut report = SystemReport {
        module_violations: out,
        quantale,
        ..SystemReport::default()
    };
    match DynamicAlgebra::from_system(view) {
        Ok(alg) => {
            report.axioms = alg.validate(options);
            if non_paranoid {
                report
                    .axioms
                    .violations
                    .extend(alg.no_miracle_equality_failures());
            }
        }
        Err(e) => report.conversion_error = Some(e),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::tests::honest_coin;
    use crate::dynamics::ActionId;

    #[test]
    fn honest_coin_is_an_epistemic_system() {
        let alg = honest_coin("h1").unwrap();
        for bound in [2, 3] {
            let q = ActionQuantale::new(&["a"], bound).unwrap();
            let view = alg.to_system(&q).unwrap();
            let report = check_epistemic_system(&view, AxiomOptions::default(), false);
            assert!(report.passes(), "{report:?}");
        }
    }

    #[test]
    fn act_on_generators() {
        let alg = honest_coin("h1").unwrap();
        let l = alg.lattice().clone();
        let q = ActionQuantale::new(&["a"], 3).unwrap();
        let view = alg.to_system(&q).unwrap();
        let h0 = l.world_set(&["h0"]).unwrap();
        assert_eq!(
            view.act(h0, &q.word(&["a"]).unwrap()),
            l.world_set(&["h1"]).unwrap()
        );
        for x in l.elements() {
            assert_eq!(view.act(x, &QElem::unit()), x);
        }
        let back = DynamicAlgebra::from_system(&view).unwrap();
        assert_eq!(back.update_map(ActionId(0)), alg.update_map(ActionId(0)));
        assert_eq!(back, alg);
    }

    #[test]
    fn generator_mismatch() {
        let alg = honest_coin("h1").unwrap();
        let q = ActionQuantale::new(&["b"], 3).unwrap();
        assert_eq!(
            alg.to_system(&q).unwrap_err(),
            AlgebraError::GeneratorMismatch
        );
    }

    #[test]
    fn composition_ignoring_act_is_caught() {
        let alg = honest_coin("h1").unwrap();
        let q = ActionQuantale::new(&["a"], 3).unwrap();
        let mut view = alg.to_system(&q).unwrap();
        let h = alg.update_map(ActionId(0)).clone();
        view.act_word = Arc::new(move |l, w| match w.first() {
            Some(_) => h.apply(l),
            None => l,
        });
        let report = check_epistemic_system(&view, AxiomOptions::default(), false);
        assert!(report
            .module_violations
            .iter()
            .any(|m| m.starts_with("composition law fails")));
    }
}

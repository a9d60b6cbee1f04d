use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Carrier, ScenarioDoc, ScenarioError, Span, Spanned};
use crate::derivation::{Assumptions, Term};
use crate::dynamics::{ActionSpec, AxiomOptions, AxiomReport, DynamicAlgebra};
use crate::epistemic::Mama;
use crate::error::AlgebraError;
use crate::lattice::{Elem, FiniteLattice, Limits};
use crate::operators::LatticeMap;
use crate::semantics::{eval_static, Model};

/// A symbolic assumption that the semantic model does not satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationFailure {
    pub span: Span,
    pub agent: String,
    pub atom: String,
    /// `f[A](atom)` in the model.
    pub actual: String,
    /// The assumed bound.
    pub assumed: String,
}

/// A resolved document turned into the structures its mode asks for.
#[derive(Clone, Debug)]
pub struct Instance {
    pub doc: ScenarioDoc,
    /// Present in semantic and both modes.
    pub model: Option<Model>,
    /// Axiom findings for the model.
    pub axioms: Option<AxiomReport>,
    /// Symbolic assumptions the model violates (both mode only).
    pub realization: Vec<RealizationFailure>,
    pub assumptions: Assumptions,
}

fn build_err(span: Span) -> impl Fn(AlgebraError) -> ScenarioError {
    move |error| ScenarioError::Build { span, error }
}

fn lattice(carrier: &Spanned<Carrier>) -> Result<FiniteLattice, ScenarioError> {
    let limits = Limits::from_env();
    let values = |v: &[Spanned<String>]| v.iter().map(|s| s.value.clone()).collect::<Vec<_>>();
    match &carrier.value {
        Carrier::Worlds(ws) => FiniteLattice::powerset_with(&values(ws), limits),
        Carrier::Poset { elements, order } => {
            let pairs: Vec<(String, String)> = order
                .iter()
                .map(|(a, b)| (a.value.clone(), b.value.clone()))
                .collect();
            FiniteLattice::build_from_order_with(&values(elements), &pairs, limits)
        }
    }
    .map_err(build_err(carrier.span))
}

fn generators(
    l: &Arc<FiniteLattice>,
    atoms: &BTreeMap<String, Elem>,
    items: &[(Spanned<String>, Spanned<Term>)],
    owner: &Spanned<String>,
) -> Result<LatticeMap, ScenarioError> {
    let mut pairs = Vec::with_capacity(items.len());
    for (g, image) in items {
        let j = l.find(&g.value).ok_or_else(|| ScenarioError::Build {
            span: g.span,
            error: AlgebraError::UnknownLabel(g.value.clone()),
        })?;
        if !l.is_join_irreducible(j) {
            return Err(ScenarioError::Build {
                span: g.span,
                error: AlgebraError::NotJoinIrreducible(g.value.clone()),
            });
        }
        pairs.push((
            j,
            eval_static(l, atoms, &image.value).map_err(build_err(image.span))?,
        ));
    }
    LatticeMap::from_generators(l, &pairs).map_err(build_err(owner.span))
}

fn element(
    l: &FiniteLattice,
    atoms: &BTreeMap<String, Elem>,
    name: &Spanned<String>,
) -> Result<Elem, ScenarioError> {
    eval_static(l, atoms, &Term::Atom(name.value.clone())).map_err(build_err(name.span))
}

fn model(doc: &ScenarioDoc, carrier: &Spanned<Carrier>) -> Result<Model, ScenarioError> {
    let l = Arc::new(lattice(carrier)?);
    let mut atoms = BTreeMap::new();
    for a in &doc.atoms {
        if let Some(v) = &a.value {
            let e = eval_static(&l, &atoms, &v.value).map_err(build_err(v.span))?;
            atoms.insert(a.name.value.clone(), e);
        }
    }
    let mut maps = Vec::with_capacity(doc.agents.len());
    for agent in &doc.agents {
        maps.push((
            agent.name.value.clone(),
            generators(&l, &atoms, &agent.appear, &agent.name)?,
        ));
    }
    let mama = Mama::from_maps(&l, maps).map_err(build_err(doc.name.span))?;
    let mut actions = Vec::with_capacity(doc.actions.len());
    for a in &doc.actions {
        let kernel = if a.kernel.is_empty() {
            None
        } else {
            Some(
                a.kernel
                    .iter()
                    .map(|k| element(&l, &atoms, k))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        actions.push(ActionSpec {
            name: a.name.value.clone(),
            is_communication: a.communication,
            update: generators(&l, &atoms, &a.updates, &a.name)?,
            declared_kernel: kernel,
        });
    }
    let mut seen = Vec::new();
    for agent in &doc.agents {
        for action in &doc.actions {
            let entry = agent
                .sees
                .iter()
                .find(|(from, _)| from.value == action.name.value);
            match entry {
                Some((from, to)) => seen.push((
                    agent.name.value.as_str(),
                    from.value.as_str(),
                    to.value.as_str(),
                )),
                None => {
                    return Err(ScenarioError::Build {
                        span: agent.name.span,
                        error: AlgebraError::MissingActionAppearance {
                            agent: agent.name.value.clone(),
                            action: action.name.value.clone(),
                        },
                    })
                }
            }
        }
        if let Some((dup, _)) = agent
            .sees
            .iter()
            .enumerate()
            .find(|(i, (from, _))| agent.sees[..*i].iter().any(|(f, _)| f.value == from.value))
            .map(|(_, s)| s)
        {
            return Err(ScenarioError::Resolution {
                span: dup.span,
                name: dup.value.clone(),
                message: format!(
                    "`sees {}` is declared twice for agent `{}`",
                    dup.value, agent.name.value
                ),
            });
        }
    }
    let facts = doc
        .facts
        .iter()
        .map(|f| element(&l, &atoms, f))
        .collect::<Result<Vec<_>, _>>()?;
    let algebra =
        DynamicAlgebra::assemble(mama, actions, &seen, facts).map_err(build_err(doc.name.span))?;
    Ok(Model::new(algebra, atoms))
}

fn assumptions(doc: &ScenarioDoc) -> Result<Assumptions, ScenarioError> {
    let mut asm = Assumptions::default();
    fn dup(
        span: Span,
        name: &str,
    ) -> impl FnOnce(crate::derivation::DuplicateAssumption) -> ScenarioError + '_ {
        move |e| ScenarioError::Resolution {
            span,
            name: name.to_string(),
            message: e.to_string(),
        }
    }
    for agent in &doc.agents {
        let a = &agent.name.value;
        for (p, def) in &agent.assume {
            asm.define_appearance(a, &p.value, def.value.clone())
                .map_err(dup(p.span, &p.value))?;
        }
        for (from, to) in &agent.sees {
            asm.define_action_appearance(a, &from.value, &to.value)
                .map_err(dup(from.span, &from.value))?;
        }
    }
    for action in &doc.actions {
        for k in &action.kernel {
            asm.add_kernel(&action.name.value, Term::Atom(k.value.clone()));
        }
        if action.communication {
            asm.add_communication(&action.name.value);
        }
    }
    for f in &doc.facts {
        asm.add_fact(Term::Atom(f.value.clone()));
    }
    Ok(asm)
}

fn realization(doc: &ScenarioDoc, model: &Model) -> Result<Vec<RealizationFailure>, ScenarioError> {
    let l = model.lattice();
    let mut out = Vec::new();
    for agent in &doc.agents {
        for (p, def) in &agent.assume {
            let lhs = Term::App(
                agent.name.value.clone(),
                Box::new(Term::Atom(p.value.clone())),
            );
            let actual = model.eval(&lhs).map_err(build_err(p.span))?;
            let assumed = model.eval(&def.value).map_err(build_err(def.span))?;
            if !l.leq(actual, assumed) {
                out.push(RealizationFailure {
                    span: p.span,
                    agent: agent.name.value.clone(),
                    atom: p.value.clone(),
                    actual: l.name(actual),
                    assumed: l.name(assumed),
                });
            }
        }
    }
    Ok(out)
}

/// Builds the model and assumptions for a parsed document and validates the
/// model's axioms. Axiom violations are reported, not raised.
pub fn instantiate(doc: &ScenarioDoc, options: AxiomOptions) -> Result<Instance, ScenarioError> {
    let assumptions = assumptions(doc)?;
    let (model, axioms, realization) = match (&doc.carrier, doc.mode.semantic()) {
        (Some(carrier), true) => {
            let model = model(doc, carrier)?;
            let axioms = model.algebra.validate(options);
            let failures = if doc.mode.symbolic() {
                realization(doc, &model)?
            } else {
                Vec::new()
            };
            (Some(model), Some(axioms), failures)
        }
        _ => (None, None, Vec::new()),
    };
    Ok(Instance {
        doc: doc.clone(),
        model,
        axioms,
        realization,
        assumptions,
    })
}

//! The `adjoint-kit` command line: argument parsing, report assembly and
//! exit codes. `main.rs` only forwards to [`run_cli`].

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::derivation::{
    prove, render_structured, render_text, verify_tree, NotProvedReason, ProveOptions,
};
use crate::dynamics::{check_epistemic_system, ActionQuantale, AxiomOptions, DEFAULT_WORD_BOUND};
use crate::epistemic::{CoclosureReport, ConsequenceFailure, HypothesisWitness};
use crate::operators::verify_adjunction;
use crate::scenario::{instantiate, parse_scenario, Instance, Query, QueryKind, ScenarioError};
use crate::semantics::Entailment;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_QUERY: i32 = 1;
pub const EXIT_AXIOM: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "adjoint-kit",
    version,
    about = "Finite adjoint modal algebras: validate, query and prove scenarios"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Check every axiom and report optional hypotheses.
    Validate { file: PathBuf },
    /// Evaluate one query semantically.
    Query { file: PathBuf, id: String },
    /// Run the derivation engine on one query.
    Prove { file: PathBuf, id: String },
    /// Dump a map (`f[A]`, `h[a]`) and its adjoint; all maps when omitted.
    Tables { file: PathBuf, map: Option<String> },
    /// Validate and run every query in the file.
    Run { file: PathBuf },
}

impl Command {
    pub fn file(&self) -> &PathBuf {
        match self {
            Command::Validate { file }
            | Command::Query { file, .. }
            | Command::Prove { file, .. }
            | Command::Tables { file, .. }
            | Command::Run { file } => file,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Query { .. } => "query",
            Command::Prove { .. } => "prove",
            Command::Tables { .. } => "tables",
            Command::Run { .. } => "run",
        }
    }
}

#[derive(clap::Args, Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also require the converse of fact stability.
    #[arg(long, global = true)]
    pub strict_facts: bool,
    /// Require equalities in the no-miracle and lift composition laws.
    #[arg(long, global = true)]
    pub non_paranoid: bool,
    /// Only discharge kernel goals whose right-hand side is modality free.
    #[arg(long, global = true)]
    pub no_kernel_shortcut: bool,
    /// Check no-miracle on every element, not only on join-irreducibles.
    #[arg(long, global = true)]
    pub full_lattice_axioms: bool,
    /// Derivation depth bound.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Word length bound for the action quantale.
    #[arg(long, global = true)]
    pub word_bound: Option<usize>,
}

impl Flags {
    fn axiom_options(&self) -> AxiomOptions {
        AxiomOptions {
            full_lattice: self.full_lattice_axioms,
            strict_facts: self.strict_facts,
        }
    }

    fn prove_options(&self) -> ProveOptions {
        ProveOptions {
            max_depth: self.depth.unwrap_or(crate::derivation::DEFAULT_MAX_DEPTH),
            kernel_shortcut: !self.no_kernel_shortcut,
        }
    }
}

/// What an invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub id: String,
    pub kind: &'static str,
    /// `holds`, `fails`, `value`, `proved`, `not_proved`, `valid`, `invalid`,
    /// `unsound` or `error`.
    pub status: &'static str,
    pub success: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frontier: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip)]
    pub internal: bool,
}

impl Verdict {
    fn new(q: &Query, status: &'static str, success: bool) -> Self {
        Verdict {
            id: q.id.value.clone(),
            kind: q.kind.value.keyword(),
            status,
            success,
            goal: None,
            expected: None,
            counterexample: None,
            value: None,
            proof: None,
            proof_text: None,
            frontier: None,
            message: None,
            internal: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub check: String,
    pub passed: bool,
    /// Mandatory checks decide the exit code; the rest are informational.
    pub mandatory: bool,
    pub detail: String,
}

impl AxiomCheck {
    fn new(
        check: impl Into<String>,
        passed: bool,
        mandatory: bool,
        detail: impl Into<String>,
    ) -> Self {
        AxiomCheck {
            check: check.into(),
            passed,
            mandatory,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub scenario: String,
    pub verdicts: Vec<Verdict>,
    pub axioms: Vec<AxiomCheck>,
    /// Milliseconds per phase.
    pub timings: serde_json::Map<String, Value>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.internal) {
            EXIT_INTERNAL
        } else if self.axioms.iter().any(|a| a.mandatory && !a.passed) {
            EXIT_AXIOM
        } else if self.verdicts.iter().any(|v| !v.success) {
            EXIT_QUERY
        } else {
            EXIT_OK
        }
    }

    fn time(&mut self, phase: &str, start: Instant) {
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        self.timings.insert(format!("{phase}_ms"), json!(ms));
    }
}

/// Parses arguments and runs the command, never exiting the process.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, &cli.flags),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cmd: &Command, flags: &Flags) -> Outcome {
    match std::fs::read_to_string(cmd.file()) {
        Ok(text) => execute_source(cmd, &text, flags),
        Err(e) => error_outcome(
            flags,
            EXIT_PARSE,
            json!({"kind": "io", "message": format!("{}: {e}", cmd.file().display())}),
            format!("error: cannot read {}: {e}", cmd.file().display()),
        ),
    }
}

fn error_outcome(flags: &Flags, code: i32, error: Value, text: String) -> Outcome {
    if flags.json {
        let doc = json!({"schema_version": SCHEMA_VERSION, "error": error});
        Outcome {
            code,
            stdout: format!("{doc:#}\n"),
            stderr: String::new(),
        }
    } else {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("{text}\n"),
        }
    }
}

fn scenario_error(flags: &Flags, e: &ScenarioError) -> Outcome {
    let span = e.span();
    let (kind, expected) = match e {
        ScenarioError::Syntax(s) => ("syntax", s.expected.clone()),
        ScenarioError::Resolution { .. } => ("resolution", vec![]),
        ScenarioError::Build { .. } => ("build", vec![]),
    };
    error_outcome(
        flags,
        EXIT_PARSE,
        json!({"kind": kind, "line": span.line, "column": span.column, "message": e.to_string(), "expected": expected}),
        format!("error: {e}"),
    )
}

/// Runs a command against scenario text held in memory.
pub fn execute_source(cmd: &Command, text: &str, flags: &Flags) -> Outcome {
    let start = Instant::now();
    let doc = match parse_scenario(text) {
        Ok(d) => d,
        Err(e) => return scenario_error(flags, &e),
    };
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        command: cmd.name(),
        scenario: doc.name.value.clone(),
        verdicts: vec![],
        axioms: vec![],
        timings: serde_json::Map::new(),
    };
    report.time("parse", start);
    let start = Instant::now();
    let inst = match instantiate(&doc, flags.axiom_options()) {
        Ok(i) => i,
        Err(e) => return scenario_error(flags, &e),
    };
    report.time("instantiate", start);

    let selected = |id: &str| -> Result<&Query, Outcome> {
        doc.query(id).ok_or_else(|| {
            error_outcome(
                flags,
                EXIT_PARSE,
                json!({"kind": "resolution", "message": format!("no query `{id}`")}),
                format!("error: no query `{id}` in {}", doc.name.value),
            )
        })
    };

    let start = Instant::now();
    match cmd {
        Command::Tables { map, .. } => return tables(&inst, map.as_deref(), flags),
        Command::Validate { .. } | Command::Run { .. } => {
            report.axioms = full_validation(&inst, flags)
        }
        Command::Query { .. } | Command::Prove { .. } => {
            report.axioms = basic_validation(&inst, flags)
        }
    }
    report.time("validate", start);

    let start = Instant::now();
    match cmd {
        Command::Run { .. } => {
            for q in &doc.queries {
                report.verdicts.push(run_query(&inst, q, flags, false));
            }
        }
        Command::Query { id, .. } => match selected(id) {
            Ok(q) => report.verdicts.push(run_query(&inst, q, flags, false)),
            Err(o) => return o,
        },
        Command::Prove { id, .. } => match selected(id) {
            Ok(q) => report.verdicts.push(run_query(&inst, q, flags, true)),
            Err(o) => return o,
        },
        _ => {}
    }
    report.time("queries", start);

    let code = report.exit_code();
    let stdout = if flags.json {
        format!(
            "{:#}\n",
            serde_json::to_value(&report).unwrap_or(Value::Null)
        )
    } else {
        human(&report)
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn run_query(inst: &Instance, q: &Query, flags: &Flags, force_proof: bool) -> Verdict {
    match &q.kind.value {
        QueryKind::Prove { sequent } => prove_query(inst, q, sequent, flags),
        QueryKind::Check { sequent, .. } if force_proof && inst.doc.mode.symbolic() => {
            prove_query(inst, q, sequent, flags)
        }
        QueryKind::Check {
            sequent,
            expect_holds,
        } => {
            let model = inst
                .model
                .as_ref()
                .expect("check queries resolve only with a model");
            let mut v = match model.entails(&sequent.lhs, &sequent.rhs) {
                Ok(Entailment::Holds) => Verdict::new(q, "holds", *expect_holds),
                Ok(Entailment::Fails { witness }) => {
                    let mut v = Verdict::new(q, "fails", !*expect_holds);
                    v.counterexample = Some(model.lattice().name(witness));
                    v
                }
                Err(e) => error_verdict(q, e.to_string()),
            };
            v.goal = Some(sequent.to_string());
            v.expected = Some(if *expect_holds { "holds" } else { "fails" }.into());
            v
        }
        QueryKind::Eval { term, expect } => {
            let model = inst
                .model
                .as_ref()
                .expect("eval queries resolve only with a model");
            let value = match model.eval(term) {
                Ok(x) => x,
                Err(e) => return error_verdict(q, e.to_string()),
            };
            let mut v = match expect {
                None => Verdict::new(q, "value", true),
                Some(t) => match model.eval(t) {
                    Ok(e) => Verdict::new(q, "value", e == value),
                    Err(e) => return error_verdict(q, e.to_string()),
                },
            };
            v.goal = Some(term.to_string());
            v.value = Some(model.lattice().name(value));
            v.expected = expect
                .as_ref()
                .and_then(|t| model.eval(t).ok())
                .map(|e| model.lattice().name(e));
            v
        }
        QueryKind::Validate => {
            let checks = basic_validation(inst, flags);
            let failed: Vec<String> = checks
                .iter()
                .filter(|c| c.mandatory && !c.passed)
                .map(|c| format!("{}: {}", c.check, c.detail))
                .collect();
            let mut v = Verdict::new(
                q,
                if failed.is_empty() {
                    "valid"
                } else {
                    "invalid"
                },
                failed.is_empty(),
            );
            if !failed.is_empty() {
                v.message = Some(failed.join("; "));
            }
            v
        }
    }
}

fn error_verdict(q: &Query, message: String) -> Verdict {
    let mut v = Verdict::new(q, "error", false);
    v.message = Some(message);
    v
}

fn prove_query(
    inst: &Instance,
    q: &Query,
    sequent: &crate::derivation::Sequent,
    flags: &Flags,
) -> Verdict {
    let mut v = match prove(sequent, &inst.assumptions, flags.prove_options()) {
        Ok(tree) => {
            let mut v = Verdict::new(q, "proved", true);
            if let Err(bad) = verify_tree(&tree, &inst.assumptions) {
                v.status = "unsound";
                v.success = false;
                v.internal = true;
                v.message = Some(format!("proof failed verification: {bad}"));
            } else if inst.axioms.as_ref().is_some_and(|a| !a.passes())
                || !inst.realization.is_empty()
            {
                v.message = Some("not cross-checked: the model fails its axioms".into());
            } else if let Some(model) = &inst.model {
                match model.entails(&sequent.lhs, &sequent.rhs) {
                    Ok(Entailment::Holds) => {}
                    Ok(Entailment::Fails { witness }) => {
                        v.status = "unsound";
                        v.success = false;
                        v.internal = true;
                        v.counterexample = Some(model.lattice().name(witness));
                        v.message = Some("proved symbolically but false in the model".into());
                    }
                    Err(e) => {
                        v.status = "unsound";
                        v.success = false;
                        v.internal = true;
                        v.message = Some(format!("cross-check failed: {e}"));
                    }
                }
            }
            v.proof = Some(render_structured(&tree));
            v.proof_text = Some(render_text(&tree));
            v
        }
        Err(np) => {
            let mut v = Verdict::new(q, "not_proved", false);
            v.message = Some(
                match np.reason {
                    NotProvedReason::DepthExhausted => "depth exhausted",
                    NotProvedReason::NoApplicableRule => "no applicable rule",
                }
                .into(),
            );
            v.frontier = Some(np.frontier.iter().map(ToString::to_string).collect());
            v
        }
    };
    v.goal = Some(sequent.to_string());
    v
}

/// The mandatory axioms of the instance model and the realization of the
/// symbolic assumptions.
fn basic_validation(inst: &Instance, flags: &Flags) -> Vec<AxiomCheck> {
    let mut out = Vec::new();
    let (Some(model), Some(report)) = (&inst.model, &inst.axioms) else {
        return out;
    };
    let alg = &model.algebra;
    let l = model.lattice();
    let kind_of = |e: &crate::error::AlgebraError| match e {
        crate::error::AlgebraError::NoMiracleViolation { .. }
        | crate::error::AlgebraError::NoMiracleStrict { .. } => "no-miracle",
        crate::error::AlgebraError::FactStabilityViolation { .. } => "fact-stability",
        crate::error::AlgebraError::KernelMismatch { .. } => "kernel",
        _ => "axiom",
    };
    for v in &report.violations {
        out.push(AxiomCheck::new(kind_of(v), false, true, v.to_string()));
    }
    for name in ["no-miracle", "fact-stability", "kernel"] {
        if !out.iter().any(|c| c.check == name) {
            out.push(AxiomCheck::new(name, true, true, "holds"));
        }
    }
    if flags.strict_facts {
        let detail = match report.converse_counterexamples.first() {
            None => "holds".to_string(),
            Some(c) => format!(
                "h[{}]({}) avoids fact {} although the element is not below it",
                alg.label(c.action).name,
                l.name(c.element),
                l.name(c.fact)
            ),
        };
        out.push(AxiomCheck::new(
            "fact-stability-converse",
            report.converse_counterexamples.is_empty(),
            true,
            detail,
        ));
    }
    if flags.non_paranoid {
        let failures = alg.no_miracle_equality_failures();
        let detail = failures
            .first()
            .map_or("holds".to_string(), ToString::to_string);
        out.push(AxiomCheck::new(
            "no-miracle-equality",
            failures.is_empty(),
            true,
            detail,
        ));
    }
    if inst.doc.mode.symbolic() {
        let detail = match inst.realization.first() {
            None => "model satisfies every assume line".to_string(),
            Some(r) => format!(
                "line {}: f[{}]({}) = {} is not below {}",
                r.span.line, r.agent, r.atom, r.actual, r.assumed
            ),
        };
        out.push(AxiomCheck::new(
            "realization",
            inst.realization.is_empty(),
            true,
            detail,
        ));
    }
    out
}

/// Everything in [`basic_validation`] plus adjunctions, the epistemic
/// system laws, and the optional hypotheses.
fn full_validation(inst: &Instance, flags: &Flags) -> Vec<AxiomCheck> {
    let mut out = basic_validation(inst, flags);
    let Some(model) = &inst.model else {
        return out;
    };
    let alg = &model.algebra;
    let mama = alg.mama();
    let l = model.lattice();

    let mut adjunction = Vec::new();
    for (a, name) in mama.agents() {
        adjunction.push((
            format!("f[{name}]"),
            verify_adjunction(mama.appearance_map(a), mama.information_map(a)),
        ));
    }
    for (a, label) in alg.actions() {
        adjunction.push((
            format!("h[{}]", label.name),
            verify_adjunction(alg.update_map(a), alg.update_adjoint(a)),
        ));
    }
    let bad: Vec<String> = adjunction
        .into_iter()
        .filter_map(|(name, r)| match r {
            Ok(Ok(())) => None,
            Ok(Err(f)) => Some(format!(
                "{name} at ({}, {})",
                l.name(f.b),
                l.name(f.b_prime)
            )),
            Err(e) => Some(format!("{name}: {e}")),
        })
        .collect();
    out.push(AxiomCheck::new(
        "adjunction",
        bad.is_empty(),
        true,
        if bad.is_empty() {
            "every map has its computed adjoint".into()
        } else {
            bad.join("; ")
        },
    ));

    let bound = flags
        .word_bound
        .or(inst.doc.quantale_bound)
        .unwrap_or(DEFAULT_WORD_BOUND);
    let names: Vec<&str> = alg
        .actions()
        .map(|(_, label)| label.name.as_str())
        .collect();
    let system = ActionQuantale::new(&names, bound).and_then(|q| alg.to_system(&q));
    match system {
        Ok(view) => {
            let r = check_epistemic_system(&view, flags.axiom_options(), flags.non_paranoid);
            let mut problems: Vec<String> = r.module_violations.clone();
            problems.extend(r.quantale.violations.iter().map(ToString::to_string));
            if let Some(e) = &r.conversion_error {
                problems.push(e.to_string());
            }
            let detail = if problems.is_empty() {
                format!("module and quantale laws hold for words up to length {bound}")
            } else {
                problems.join("; ")
            };
            out.push(AxiomCheck::new(
                "epistemic-system",
                problems.is_empty(),
                true,
                detail,
            ));
        }
        Err(e) => out.push(AxiomCheck::new(
            "epistemic-system",
            false,
            true,
            e.to_string(),
        )),
    }

    for (a, name) in mama.agents() {
        let (passed, detail) = match mama.check_coclosure_consequences(a) {
            CoclosureReport::HypothesesNotMet(HypothesisWitness::NotDecreasing { at, image }) => (
                false,
                format!(
                    "not decreasing: f[{name}]({}) = {}",
                    l.name(at),
                    l.name(image)
                ),
            ),
            CoclosureReport::HypothesesNotMet(HypothesisWitness::NotWeaklyIdempotent { at }) => {
                (false, format!("not weakly idempotent at {}", l.name(at)))
            }
            CoclosureReport::Checked { failures, .. } if failures.is_empty() => (
                true,
                "decreasing and weakly idempotent; all consequences hold".to_string(),
            ),
            CoclosureReport::Checked { failures, .. } => {
                let (what, at) = match failures[0] {
                    ConsequenceFailure::InformationNotTransitive { at } => {
                        ("information is not transitive", at)
                    }
                    ConsequenceFailure::KnowledgeNotTransitive { at } => {
                        ("knowledge is not transitive", at)
                    }
                    ConsequenceFailure::KnowledgeNotIdentity { at } => {
                        ("knowledge differs from the identity", at)
                    }
                    ConsequenceFailure::NegativeIntrospection { at } => {
                        ("negative introspection fails", at)
                    }
                };
                (false, format!("{what} at {}", l.name(at)))
            }
        };
        out.push(AxiomCheck::new(
            format!("s4[{name}]"),
            passed,
            false,
            detail,
        ));
    }
    out.push(AxiomCheck::new(
        "boolean-base",
        l.is_boolean(),
        false,
        if l.is_boolean() {
            "carrier is Boolean"
        } else {
            "carrier is not Boolean"
        },
    ));
    if !flags.non_paranoid {
        let failures = alg.no_miracle_equality_failures();
        let detail = failures.first().map_or(
            "no-miracle holds with equality".to_string(),
            ToString::to_string,
        );
        out.push(AxiomCheck::new(
            "non-paranoid",
            failures.is_empty(),
            false,
            detail,
        ));
    }
    out
}

fn tables(inst: &Instance, map: Option<&str>, flags: &Flags) -> Outcome {
    let Some(model) = &inst.model else {
        return error_outcome(
            flags,
            EXIT_PARSE,
            json!({"kind": "resolution", "message": "symbolic documents have no tables"}),
            "error: symbolic documents have no tables".into(),
        );
    };
    let alg = &model.algebra;
    let mama = alg.mama();
    let l = model.lattice();
    let mut maps = Vec::new();
    for (a, name) in mama.agents() {
        maps.push((
            format!("f[{name}]"),
            format!("fi[{name}]"),
            mama.appearance_map(a),
            mama.information_map(a),
        ));
    }
    for (a, label) in alg.actions() {
        maps.push((
            format!("h[{}]", label.name),
            format!("after[{}]", label.name),
            alg.update_map(a),
            alg.update_adjoint(a),
        ));
    }
    if let Some(wanted) = map {
        maps.retain(|(name, adj, _, _)| name == wanted || adj == wanted);
        if maps.is_empty() {
            return error_outcome(
                flags,
                EXIT_PARSE,
                json!({"kind": "resolution", "message": format!("no map `{wanted}`")}),
                format!("error: no map `{wanted}`"),
            );
        }
    }
    if flags.json {
        let tables: Vec<Value> = maps
            .iter()
            .map(|(name, adj, f, g)| {
                let rows: Vec<Value> = l
                    .elements()
                    .map(|x| json!({"element": l.name(x), "value": l.name(f.apply(x)), "adjoint": l.name(g.apply(x))}))
                    .collect();
                json!({"map": name, "adjoint": adj, "rows": rows})
            })
            .collect();
        let doc = json!({"schema_version": SCHEMA_VERSION, "scenario": inst.doc.name.value, "tables": tables});
        return Outcome {
            code: EXIT_OK,
            stdout: format!("{doc:#}\n"),
            stderr: String::new(),
        };
    }
    let mut out = String::new();
    for (name, adj, f, g) in &maps {
        let rows: Vec<[String; 3]> = l
            .elements()
            .map(|x| [l.name(x), l.name(f.apply(x)), l.name(g.apply(x))])
            .collect();
        let header = ["x".to_string(), format!("{name}(x)"), format!("{adj}(x)")];
        let width: Vec<usize> = (0..3)
            .map(|i| {
                rows.iter()
                    .map(|r| r[i].chars().count())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |r: &[String; 3]| {
            format!(
                "{:<w0$}  {:<w1$}  {}",
                r[0],
                r[1],
                r[2],
                w0 = width[0],
                w1 = width[1]
            )
        };
        let _ = writeln!(out, "{}", line(&header).trim_end());
        for r in &rows {
            let _ = writeln!(out, "{}", line(r).trim_end());
        }
        out.push('\n');
    }
    Outcome {
        code: EXIT_OK,
        stdout: out,
        stderr: String::new(),
    }
}

fn human(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario {}", report.scenario);
    if !report.axioms.is_empty() {
        let _ = writeln!(out, "axioms:");
        for a in &report.axioms {
            let mark = match (a.passed, a.mandatory) {
                (true, _) => "ok",
                (false, true) => "FAIL",
                (false, false) => "no",
            };
            let _ = writeln!(out, "  [{mark}] {}: {}", a.check, a.detail);
        }
    }
    for v in &report.verdicts {
        let mark = if v.success { "ok" } else { "FAIL" };
        let goal = v
            .goal
            .as_deref()
            .map(|g| format!(" {g}"))
            .unwrap_or_default();
        let _ = write!(out, "[{mark}] {} ({}){goal}: {}", v.id, v.kind, v.status);
        if let Some(c) = &v.counterexample {
            let _ = write!(out, ", counterexample {c}");
        }
        if let Some(x) = &v.value {
            let _ = write!(out, " = {x}");
        }
        if let Some(e) = &v.expected {
            let _ = write!(out, " (expected {e})");
        }
        if let Some(m) = &v.message {
            let _ = write!(out, ": {m}");
        }
        out.push('\n');
        if let Some(t) = &v.proof_text {
            for line in t.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        for f in v.frontier.iter().flatten() {
            let _ = writeln!(out, "    open: {f}");
        }
    }
    let summary = match report.exit_code() {
        EXIT_OK => "ok",
        EXIT_QUERY => "query failure",
        EXIT_AXIOM => "axiom violation",
        _ => "internal invariant breach",
    };
    let _ = writeln!(out, "result: {summary}");
    out
}

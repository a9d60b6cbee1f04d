use std::collections::BTreeSet;

use super::{
    ActionBlock, AgentBlock, AtomDecl, Carrier, Mode, Query, QueryKind, ScenarioDoc, ScenarioError,
    Span, Spanned, FORMAT_VERSION,
};
use crate::derivation::syntax::{
    lex_line, parse_sequent_at, parse_term_at, Cursor, SyntaxError, Tok, Token,
};
use crate::derivation::Term;

const TOP_LEVEL: [&str; 11] = [
    "scenario",
    "description",
    "mode",
    "worlds",
    "poset",
    "quantale",
    "atom",
    "agent",
    "action",
    "facts",
    "query",
];

struct Line {
    number: usize,
    len: usize,
    toks: Vec<Token>,
}

impl Line {
    fn cursor(&self) -> Cursor<'_> {
        Cursor::new(&self.toks, self.number, self.len)
    }
}

fn span_of(c: &Cursor) -> Span {
    let (line, column) = c.here();
    Span { line, column }
}

fn ident(c: &mut Cursor, what: &str) -> Result<Spanned<String>, SyntaxError> {
    let span = span_of(c);
    Ok(Spanned::new(c.expect_ident(what)?, span))
}

fn term(c: &mut Cursor) -> Result<Spanned<Term>, SyntaxError> {
    let span = span_of(c);
    Ok(Spanned::new(parse_term_at(c)?, span))
}

fn keyword_error(c: &Cursor, expected: &[&str]) -> SyntaxError {
    let quoted: Vec<String> = expected.iter().map(|k| format!("`{k}`")).collect();
    let quoted: Vec<&str> = quoted.iter().map(String::as_str).collect();
    c.error("unknown keyword", &quoted)
}

/// Parses and resolves a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioDoc, ScenarioError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = lex_line(raw, i + 1)?;
        if !toks.is_empty() {
            lines.push(Line {
                number: i + 1,
                len: raw.chars().count(),
                toks,
            });
        }
    }
    let end = Span {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    let doc = Parser { lines, pos: 0, end }.document()?;
    resolve(&doc)?;
    Ok(doc)
}

struct Parser {
    lines: Vec<Line>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn next_line(&mut self, block: &str) -> Result<&Line, SyntaxError> {
        let end = self.end;
        let line = self.lines.get(self.pos).ok_or_else(|| SyntaxError {
            line: end.line,
            column: end.column,
            message: format!("unterminated `{block}` block"),
            expected: vec!["`end`".into()],
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn document(mut self) -> Result<ScenarioDoc, SyntaxError> {
        let Some(first) = self.lines.first() else {
            return Err(SyntaxError {
                line: 1,
                column: 1,
                message: "empty document".into(),
                expected: vec!["`version`".into()],
            });
        };
        let mut c = first.cursor();
        if !c.eat_keyword("version") {
            return Err(c.error("documents start with a version header", &["`version`"]));
        }
        let span = span_of(&c);
        let version = c.expect_number("a version number")?;
        if version != FORMAT_VERSION {
            return Err(SyntaxError {
                line: span.line,
                column: span.column,
                message: format!("unsupported version {version}"),
                expected: vec![FORMAT_VERSION.to_string()],
            });
        }
        c.expect_end()?;
        self.pos = 1;

        let mut name: Option<Spanned<String>> = None;
        let mut description = None;
        let mut mode = None;
        let mut carrier: Option<Spanned<Carrier>> = None;
        let mut quantale_bound = None;
        let mut atoms = Vec::new();
        let mut agents = Vec::new();
        let mut actions = Vec::new();
        let mut facts: Option<Vec<Spanned<String>>> = None;
        let mut queries = Vec::new();

        while self.pos < self.lines.len() {
            let line_index = self.pos;
            self.pos += 1;
            let line = &self.lines[line_index];
            let mut c = line.cursor();
            let head_span = span_of(&c);
            let head = match c.peek() {
                Some(Tok::Ident(w)) if TOP_LEVEL.contains(&w.as_str()) => w.clone(),
                _ => return Err(keyword_error(&c, &TOP_LEVEL)),
            };
            c.bump();
            let duplicate = |what: &str| SyntaxError {
                line: head_span.line,
                column: head_span.column,
                message: format!("second {what} declaration"),
                expected: vec![],
            };
            match head.as_str() {
                "scenario" => {
                    if name.is_some() {
                        return Err(duplicate("scenario"));
                    }
                    name = Some(ident(&mut c, "a scenario name")?);
                }
                "description" => match c.bump().map(|t| &t.tok) {
                    Some(Tok::Str(s)) => description = Some(s.clone()),
                    _ => {
                        let mut c = line.cursor();
                        c.bump();
                        return Err(c.error("expected a quoted description", &["a string"]));
                    }
                },
                "mode" => {
                    let m = match c.peek() {
                        Some(Tok::Ident(w)) if w == "semantic" => Mode::Semantic,
                        Some(Tok::Ident(w)) if w == "symbolic" => Mode::Symbolic,
                        Some(Tok::Ident(w)) if w == "both" => Mode::Both,
                        _ => {
                            return Err(
                                c.error("expected a mode", &["`semantic`", "`symbolic`", "`both`"])
                            )
                        }
                    };
                    c.bump();
                    mode = Some(m);
                }
                "worlds" => {
                    if carrier.is_some() {
                        return Err(duplicate("carrier"));
                    }
                    let mut worlds = Vec::new();
                    while !c.at_end() {
                        worlds.push(ident(&mut c, "a world name")?);
                    }
                    carrier = Some(Spanned::new(Carrier::Worlds(worlds), head_span));
                }
                "poset" => {
                    if carrier.is_some() {
                        return Err(duplicate("carrier"));
                    }
                    let mut elements = Vec::new();
                    while !c.at_end() {
                        elements.push(ident(&mut c, "an element name")?);
                    }
                    let mut order = Vec::new();
                    loop {
                        let line = self.next_line("poset")?;
                        let mut b = line.cursor();
                        if b.eat_keyword("end") {
                            b.expect_end()?;
                            break;
                        }
                        let lo = ident(&mut b, "an element name")?;
                        b.expect_sym("<")?;
                        let hi = ident(&mut b, "an element name")?;
                        b.expect_end()?;
                        order.push((lo, hi));
                    }
                    carrier = Some(Spanned::new(Carrier::Poset { elements, order }, head_span));
                    continue;
                }
                "quantale" => {
                    if quantale_bound.is_some() {
                        return Err(duplicate("quantale"));
                    }
                    quantale_bound = Some(c.expect_number("a word length bound")?);
                }
                "atom" => {
                    let name = ident(&mut c, "an atom name")?;
                    let value = if c.eat_sym("=") {
                        Some(term(&mut c)?)
                    } else {
                        None
                    };
                    atoms.push(AtomDecl { name, value });
                }
                "agent" => {
                    let name = ident(&mut c, "an agent name")?;
                    c.expect_end()?;
                    agents.push(self.agent_block(name)?);
                    continue;
                }
                "action" => {
                    let name = ident(&mut c, "an action name")?;
                    let communication = c.eat_keyword("communication");
                    c.expect_end()?;
                    actions.push(self.action_block(name, communication)?);
                    continue;
                }
                "facts" => {
                    if facts.is_some() {
                        return Err(duplicate("facts"));
                    }
                    let mut names = Vec::new();
                    while !c.at_end() {
                        names.push(ident(&mut c, "a fact name")?);
                    }
                    facts = Some(names);
                }
                "query" => queries.push(query(&mut c)?),
                _ => unreachable!("checked against the keyword list"),
            }
            c.expect_end()?;
        }

        let missing = |what: &str| SyntaxError {
            line: self.end.line,
            column: self.end.column,
            message: format!("missing `{what}` declaration"),
            expected: vec![format!("`{what}`")],
        };
        Ok(ScenarioDoc {
            name: name.ok_or_else(|| missing("scenario"))?,
            description,
            mode: mode.ok_or_else(|| missing("mode"))?,
            carrier,
            quantale_bound,
            atoms,
            agents,
            actions,
            facts: facts.unwrap_or_default(),
            queries,
        })
    }

    fn agent_block(&mut self, name: Spanned<String>) -> Result<AgentBlock, SyntaxError> {
        let mut block = AgentBlock {
            name,
            appear: vec![],
            sees: vec![],
            assume: vec![],
        };
        loop {
            let line = self.next_line("agent")?;
            let mut c = line.cursor();
            if c.eat_keyword("end") {
                c.expect_end()?;
                return Ok(block);
            }
            if c.eat_keyword("appear") {
                let g = ident(&mut c, "a generator")?;
                c.expect_sym("->")?;
                block.appear.push((g, term(&mut c)?));
            } else if c.eat_keyword("sees") {
                let a = ident(&mut c, "an action name")?;
                c.expect_sym("->")?;
                block.sees.push((a, ident(&mut c, "an action name")?));
            } else if c.eat_keyword("assume") {
                let p = ident(&mut c, "an atom name")?;
                c.expect_sym("->")?;
                block.assume.push((p, term(&mut c)?));
            } else {
                return Err(keyword_error(&c, &["appear", "sees", "assume", "end"]));
            }
            c.expect_end()?;
        }
    }

    fn action_block(
        &mut self,
        name: Spanned<String>,
        communication: bool,
    ) -> Result<ActionBlock, SyntaxError> {
        let mut block = ActionBlock {
            name,
            communication,
            updates: vec![],
            kernel: vec![],
        };
        loop {
            let line = self.next_line("action")?;
            let mut c = line.cursor();
            if c.eat_keyword("end") {
                c.expect_end()?;
                return Ok(block);
            }
            if c.eat_keyword("update") {
                let g = ident(&mut c, "a generator")?;
                c.expect_sym("->")?;
                block.updates.push((g, term(&mut c)?));
            } else if c.eat_keyword("kernel") {
                block.kernel.push(ident(&mut c, "a kernel element")?);
                while !c.at_end() {
                    block.kernel.push(ident(&mut c, "a kernel element")?);
                }
            } else {
                return Err(keyword_error(&c, &["update", "kernel", "end"]));
            }
            c.expect_end()?;
        }
    }
}

fn query(c: &mut Cursor) -> Result<Query, SyntaxError> {
    let id = ident(c, "a query id")?;
    let span = span_of(c);
    let kind = if c.eat_keyword("check") {
        let sequent = parse_sequent_at(c)?;
        let expect_holds = if c.eat_keyword("expect") {
            if c.eat_keyword("holds") {
                true
            } else if c.eat_keyword("fails") {
                false
            } else {
                return Err(c.error("expected a verdict", &["`holds`", "`fails`"]));
            }
        } else {
            true
        };
        QueryKind::Check {
            sequent,
            expect_holds,
        }
    } else if c.eat_keyword("prove") {
        QueryKind::Prove {
            sequent: parse_sequent_at(c)?,
        }
    } else if c.eat_keyword("eval") {
        let term = parse_term_at(c)?;
        let expect = if c.eat_keyword("expect") {
            Some(parse_term_at(c)?)
        } else {
            None
        };
        QueryKind::Eval { term, expect }
    } else if c.eat_keyword("validate") {
        QueryKind::Validate
    } else {
        return Err(keyword_error(c, &["check", "prove", "eval", "validate"]));
    };
    Ok(Query {
        id,
        kind: Spanned::new(kind, span),
    })
}

struct Scope<'a> {
    doc: &'a ScenarioDoc,
    worlds: Option<BTreeSet<&'a str>>,
    labels: BTreeSet<&'a str>,
    atoms: BTreeSet<&'a str>,
    agents: BTreeSet<&'a str>,
    actions: BTreeSet<&'a str>,
}

fn unresolved(span: Span, kind: &str, name: &str) -> ScenarioError {
    ScenarioError::Resolution {
        span,
        name: name.to_string(),
        message: format!("undeclared {kind} `{name}`"),
    }
}

fn insert_unique<'a>(
    set: &mut BTreeSet<&'a str>,
    s: &'a Spanned<String>,
    kind: &str,
) -> Result<(), ScenarioError> {
    if set.insert(&s.value) {
        Ok(())
    } else {
        Err(ScenarioError::Resolution {
            span: s.span,
            name: s.value.clone(),
            message: format!("duplicate {kind} `{}`", s.value),
        })
    }
}

impl Scope<'_> {
    fn element(&self, s: &Spanned<String>, kind: &str) -> Result<(), ScenarioError> {
        let ok = self.labels.contains(s.value.as_str()) || self.atoms.contains(s.value.as_str());
        if ok {
            Ok(())
        } else {
            Err(unresolved(s.span, kind, &s.value))
        }
    }

    fn generator(&self, s: &Spanned<String>) -> Result<(), ScenarioError> {
        if self.labels.contains(s.value.as_str()) {
            Ok(())
        } else {
            Err(unresolved(s.span, "generator", &s.value))
        }
    }

    fn term(&self, t: &Term, span: Span) -> Result<(), ScenarioError> {
        let mut names = Vec::new();
        t.atoms(&mut names);
        for a in &names {
            if !self.atoms.contains(a.as_str()) && !self.labels.contains(a.as_str()) {
                return Err(unresolved(span, "atom", a));
            }
        }
        names.clear();
        t.worlds(&mut names);
        for w in &names {
            match &self.worlds {
                Some(ws) if ws.contains(w.as_str()) => {}
                Some(_) => return Err(unresolved(span, "world", w)),
                None => {
                    return Err(ScenarioError::Resolution {
                        span,
                        name: w.clone(),
                        message: "set literals need a `worlds` carrier".into(),
                    })
                }
            }
        }
        names.clear();
        t.agents(&mut names);
        for a in &names {
            if !self.agents.contains(a.as_str()) {
                return Err(unresolved(span, "agent", a));
            }
        }
        names.clear();
        t.actions(&mut names);
        for a in &names {
            if !self.actions.contains(a.as_str()) {
                return Err(unresolved(span, "action", a));
            }
        }
        Ok(())
    }

    fn action(&self, s: &Spanned<String>) -> Result<(), ScenarioError> {
        if self.actions.contains(s.value.as_str()) {
            Ok(())
        } else {
            Err(unresolved(s.span, "action", &s.value))
        }
    }
}

/// Checks every cross-reference of a parsed document.
fn resolve(doc: &ScenarioDoc) -> Result<(), ScenarioError> {
    let mut scope = Scope {
        doc,
        worlds: None,
        labels: BTreeSet::new(),
        atoms: BTreeSet::new(),
        agents: BTreeSet::new(),
        actions: BTreeSet::new(),
    };
    match &doc.carrier {
        None if doc.mode.semantic() => {
            return Err(ScenarioError::Resolution {
                span: doc.name.span,
                name: doc.name.value.clone(),
                message: format!(
                    "`{}` mode needs a `worlds` or `poset` carrier",
                    doc.mode.keyword()
                ),
            })
        }
        None => {}
        Some(c) => match &c.value {
            Carrier::Worlds(ws) => {
                for w in ws {
                    insert_unique(&mut scope.labels, w, "world")?;
                }
                scope.worlds = Some(scope.labels.clone());
            }
            Carrier::Poset { elements, order } => {
                for e in elements {
                    insert_unique(&mut scope.labels, e, "element")?;
                }
                for (lo, hi) in order {
                    scope.generator(lo)?;
                    scope.generator(hi)?;
                }
            }
        },
    }
    for a in &doc.atoms {
        if scope.labels.contains(a.name.value.as_str()) {
            return Err(ScenarioError::Resolution {
                span: a.name.span,
                name: a.name.value.clone(),
                message: format!("atom `{}` shadows a carrier element", a.name.value),
            });
        }
        match &a.value {
            Some(v) => {
                scope.term(&v.value, v.span)?;
                if !v.value.is_modality_free() {
                    return Err(ScenarioError::Resolution {
                        span: v.span,
                        name: a.name.value.clone(),
                        message: "atom values may not contain modalities".into(),
                    });
                }
            }
            None if doc.mode.semantic() => {
                return Err(ScenarioError::Resolution {
                    span: a.name.span,
                    name: a.name.value.clone(),
                    message: format!(
                        "atom `{}` needs a value in `{}` mode",
                        a.name.value,
                        doc.mode.keyword()
                    ),
                })
            }
            None => {}
        }
        insert_unique(&mut scope.atoms, &a.name, "atom")?;
    }
    for a in &doc.agents {
        insert_unique(&mut scope.agents, &a.name, "agent")?;
    }
    for a in &doc.actions {
        insert_unique(&mut scope.actions, &a.name, "action")?;
    }
    for a in &doc.agents {
        for (g, image) in &a.appear {
            scope.generator(g)?;
            scope.term(&image.value, image.span)?;
        }
        for (from, to) in &a.sees {
            scope.action(from)?;
            scope.action(to)?;
        }
        for (p, def) in &a.assume {
            if !scope.atoms.contains(p.value.as_str()) {
                return Err(unresolved(p.span, "atom", &p.value));
            }
            scope.term(&def.value, def.span)?;
        }
    }
    for a in &doc.actions {
        for (g, image) in &a.updates {
            scope.generator(g)?;
            scope.term(&image.value, image.span)?;
        }
        for k in &a.kernel {
            scope.element(k, "kernel element")?;
        }
    }
    for f in &doc.facts {
        scope.element(f, "fact")?;
    }
    let mut ids = BTreeSet::new();
    for q in &doc.queries {
        insert_unique(&mut ids, &q.id, "query id")?;
        let span = q.kind.span;
        let needs = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(ScenarioError::Resolution {
                    span,
                    name: q.id.value.clone(),
                    message: format!(
                        "`{}` queries need {what}, but the mode is `{}`",
                        q.kind.value.keyword(),
                        scope.doc.mode.keyword()
                    ),
                })
            }
        };
        match &q.kind.value {
            QueryKind::Check { sequent, .. } => {
                needs(doc.mode.semantic(), "a semantic model")?;
                scope.term(&sequent.lhs, span)?;
                scope.term(&sequent.rhs, span)?;
            }
            QueryKind::Eval { term, expect } => {
                needs(doc.mode.semantic(), "a semantic model")?;
                scope.term(term, span)?;
                if let Some(e) = expect {
                    scope.term(e, span)?;
                }
            }
            QueryKind::Prove { sequent } => {
                needs(doc.mode.symbolic(), "symbolic assumptions")?;
                scope.term(&sequent.lhs, span)?;
                scope.term(&sequent.rhs, span)?;
            }
            QueryKind::Validate => needs(doc.mode.semantic(), "a semantic model")?,
        }
    }
    Ok(())
}

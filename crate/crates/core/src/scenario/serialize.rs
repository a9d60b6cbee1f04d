use std::fmt::Write;

use super::{Carrier, QueryKind, ScenarioDoc, Spanned, FORMAT_VERSION};

fn names(items: &[Spanned<String>]) -> String {
    items
        .iter()
        .map(|s| s.value.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Canonical text of a document. Parsing the output yields an equal document.
pub fn serialize(doc: &ScenarioDoc) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "version {FORMAT_VERSION}");
    let _ = writeln!(w, "scenario {}", doc.name.value);
    if let Some(d) = &doc.description {
        let _ = writeln!(w, "description {}", quote(d));
    }
    let _ = writeln!(w, "mode {}", doc.mode.keyword());
    match doc.carrier.as_ref().map(|c| &c.value) {
        Some(Carrier::Worlds(ws)) => {
            let _ = writeln!(w, "worlds {}", names(ws));
        }
        Some(Carrier::Poset { elements, order }) => {
            let _ = writeln!(w, "poset {}", names(elements));
            for (lo, hi) in order {
                let _ = writeln!(w, "  {} < {}", lo.value, hi.value);
            }
            let _ = writeln!(w, "end");
        }
        None => {}
    }
    if let Some(k) = doc.quantale_bound {
        let _ = writeln!(w, "quantale {k}");
    }
    for a in &doc.atoms {
        match &a.value {
            Some(v) => writeln!(w, "atom {} = {}", a.name.value, v.value),
            None => writeln!(w, "atom {}", a.name.value),
        }
        .ok();
    }
    for a in &doc.agents {
        let _ = writeln!(w, "\nagent {}", a.name.value);
        for (g, t) in &a.appear {
            let _ = writeln!(w, "  appear {} -> {}", g.value, t.value);
        }
        for (x, y) in &a.sees {
            let _ = writeln!(w, "  sees {} -> {}", x.value, y.value);
        }
        for (p, t) in &a.assume {
            let _ = writeln!(w, "  assume {} -> {}", p.value, t.value);
        }
        let _ = writeln!(w, "end");
    }
    for a in &doc.actions {
        let comm = if a.communication {
            " communication"
        } else {
            ""
        };
        let _ = writeln!(w, "\naction {}{comm}", a.name.value);
        for (g, t) in &a.updates {
            let _ = writeln!(w, "  update {} -> {}", g.value, t.value);
        }
        if !a.kernel.is_empty() {
            let _ = writeln!(w, "  kernel {}", names(&a.kernel));
        }
        let _ = writeln!(w, "end");
    }
    if !doc.facts.is_empty() {
        let _ = writeln!(w, "\nfacts {}", names(&doc.facts));
    }
    if !doc.queries.is_empty() {
        w.push('\n');
    }
    for q in &doc.queries {
        let id = &q.id.value;
        let _ = match &q.kind.value {
            QueryKind::Check {
                sequent,
                expect_holds,
            } => {
                let verdict = if *expect_holds { "holds" } else { "fails" };
                writeln!(w, "query {id} check {sequent} expect {verdict}")
            }
            QueryKind::Prove { sequent } => writeln!(w, "query {id} prove {sequent}"),
            QueryKind::Eval {
                term,
                expect: Some(e),
            } => writeln!(w, "query {id} eval {term} expect {e}"),
            QueryKind::Eval { term, expect: None } => writeln!(w, "query {id} eval {term}"),
            QueryKind::Validate => writeln!(w, "query {id} validate"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_scenario;
    use super::*;

    const DOC: &str = "\
version 1
scenario chain   # comment
description \"a \\\"quoted\\\" chain\"
mode semantic
poset b m t
  b < m
  m < t
end
atom X = m \\/ b

agent A
  appear m -> t
end

action go
  update m -> b
  update t -> t
  kernel m
end
facts t
query q eval after[go](X) expect t
query v validate
";

    #[test]
    fn round_trip_is_stable() {
        let doc = parse_scenario(DOC).unwrap();
        let text = serialize(&doc);
        let again = parse_scenario(&text).unwrap();
        assert_eq!(doc, again);
        assert_eq!(serialize(&again), text);
        assert!(text.contains("description \"a \\\"quoted\\\" chain\""));
        assert!(text.contains("\n  kernel m\n"));
    }
}

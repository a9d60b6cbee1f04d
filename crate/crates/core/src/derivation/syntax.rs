//! Tokens and the infix term grammar shared by the scenario language and the
//! structured proof format.

use std::fmt;

use super::term::{ActRef, Sequent, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// A lexical or grammatical error; line and column are 1-based, columns count characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxError {}

const SYMBOLS: [&str; 15] = [
    "\\/", "/\\", "|=", "->", "~", "(", ")", "[", "]", "{", "}", ",", ";", "<", "=",
];

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits one source line into tokens, dropping a trailing `#` comment.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => {
                        return Err(SyntaxError {
                            line,
                            column,
                            message: "unterminated string".into(),
                            expected: vec!["`\"`".into()],
                        })
                    }
                    Some('"') => break,
                    Some('\\') if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                        s.push(chars[i + 1]);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Token {
                tok: Tok::Str(s),
                line,
                column,
            });
        } else if ident_char(c) {
            let start = i;
            while i < chars.len()
                && (ident_char(chars[i])
                    || (chars[i] == '-' && chars.get(i + 1) != Some(&'>') && i > start))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(word),
                line,
                column,
            });
        } else if let Some(sym) = SYMBOLS
            .iter()
            .find(|s| chars[i..].starts_with(&s.chars().collect::<Vec<_>>()))
        {
            i += sym.chars().count();
            out.push(Token {
                tok: Tok::Sym(sym),
                line,
                column,
            });
        } else {
            return Err(SyntaxError {
                line,
                column,
                message: format!("unexpected character `{c}`"),
                expected: vec![],
            });
        }
    }
    Ok(out)
}

/// A cursor over the tokens of one line.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], line: usize, line_len: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_column: line_len + 1,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Position of the next token, or just past the end of the line.
    pub fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => (self.line, self.end_column),
        }
    }

    pub fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn error(&self, message: impl Into<String>, expected: &[&str]) -> SyntaxError {
        let (line, column) = self.here();
        let found = match self.peek() {
            Some(t) => format!(", found {t}"),
            None => ", found end of line".to_string(),
        };
        SyntaxError {
            line,
            column,
            message: format!("{}{found}", message.into()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn eat_sym(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, sym: &str) -> Result<(), SyntaxError> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{sym}`"), &[&format!("`{sym}`")]))
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.error(format!("expected {what}"), &[what])),
        }
    }

    pub fn expect_number(&mut self, what: &str) -> Result<usize, SyntaxError> {
        let (line, column) = self.here();
        let word = self.expect_ident(what)?;
        word.parse().map_err(|_| SyntaxError {
            line,
            column,
            message: format!("expected {what}, found `{word}`"),
            expected: vec![what.to_string()],
        })
    }

    pub fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input", &["end of line"]))
        }
    }
}

pub const RESERVED: [&str; 2] = ["top", "bot"];

pub fn parse_term_at(c: &mut Cursor) -> Result<Term, SyntaxError> {
    let mut t = parse_and(c)?;
    while c.eat_sym("\\/") {
        t = Term::or(t, parse_and(c)?);
    }
    Ok(t)
}

fn parse_and(c: &mut Cursor) -> Result<Term, SyntaxError> {
    let mut t = parse_unary(c)?;
    while c.eat_sym("/\\") {
        t = Term::and(t, parse_unary(c)?);
    }
    Ok(t)
}

fn parse_unary(c: &mut Cursor) -> Result<Term, SyntaxError> {
    if c.eat_sym("~") {
        return Ok(Term::not(parse_unary(c)?));
    }
    if c.eat_sym("(") {
        let t = parse_term_at(c)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    if c.eat_sym("{") {
        let mut worlds = Vec::new();
        if !c.eat_sym("}") {
            loop {
                worlds.push(c.expect_ident("a world name")?);
                if c.eat_sym("}") {
                    break;
                }
                c.expect_sym(",")?;
            }
        }
        return Ok(Term::Set(worlds));
    }
    let word = match c.peek() {
        Some(Tok::Ident(w)) => w.clone(),
        _ => return Err(c.error("expected a term", &["a term"])),
    };
    let modal = matches!(c.peek_at(1), Some(Tok::Sym("[")));
    if modal && !["f", "fi", "K", "B", "CK", "upd", "after"].contains(&word.as_str()) {
        let (line, column) = c.here();
        return Err(SyntaxError {
            line,
            column,
            message: format!("unknown operator `{word}`"),
            expected: ["f", "fi", "K", "B", "CK", "upd", "after"]
                .iter()
                .map(|s| format!("`{s}`"))
                .collect(),
        });
    }
    c.bump();
    if !modal {
        return Ok(match word.as_str() {
            "top" => Term::Top,
            "bot" => Term::Bot,
            _ => Term::Atom(word),
        });
    }
    c.expect_sym("[")?;
    let t = match word.as_str() {
        "f" | "fi" | "K" | "B" => {
            let agent = c.expect_ident("an agent name")?;
            c.expect_sym("]")?;
            let arg = parse_arg(c)?;
            match word.as_str() {
                "f" => Term::App(agent, arg),
                "fi" => Term::Info(agent, arg),
                "K" => Term::Know(agent, arg),
                _ => Term::Believe(agent, arg),
            }
        }
        "CK" => {
            let mut group = vec![c.expect_ident("an agent name")?];
            while c.eat_sym(",") {
                group.push(c.expect_ident("an agent name")?);
            }
            let depth = if c.eat_sym(";") {
                Some(c.expect_number("an unfolding depth")?)
            } else {
                None
            };
            c.expect_sym("]")?;
            Term::Ck(group, depth, parse_arg(c)?)
        }
        "upd" | "after" => {
            let r = parse_actref(c)?;
            c.expect_sym("]")?;
            let arg = parse_arg(c)?;
            if word == "upd" {
                Term::Upd(r, arg)
            } else {
                Term::After(r, arg)
            }
        }
        _ => unreachable!("operator names are checked above"),
    };
    Ok(t)
}

fn parse_arg(c: &mut Cursor) -> Result<Box<Term>, SyntaxError> {
    c.expect_sym("(")?;
    let t = parse_term_at(c)?;
    c.expect_sym(")")?;
    Ok(Box::new(t))
}

pub fn parse_actref(c: &mut Cursor) -> Result<ActRef, SyntaxError> {
    let name = c.expect_ident("an action name")?;
    if name == "fa" && c.eat_sym("[") {
        let agent = c.expect_ident("an agent name")?;
        c.expect_sym("]")?;
        c.expect_sym("(")?;
        let inner = parse_actref(c)?;
        c.expect_sym(")")?;
        return Ok(ActRef::Appear(agent, Box::new(inner)));
    }
    Ok(ActRef::Name(name))
}

pub fn parse_sequent_at(c: &mut Cursor) -> Result<Sequent, SyntaxError> {
    let lhs = parse_term_at(c)?;
    c.expect_sym("|=")?;
    let rhs = parse_term_at(c)?;
    Ok(Sequent::new(lhs, rhs))
}

fn whole<T>(
    text: &str,
    f: impl Fn(&mut Cursor) -> Result<T, SyntaxError>,
) -> Result<T, SyntaxError> {
    let toks = lex_line(text, 1)?;
    let mut c = Cursor::new(&toks, 1, text.chars().count());
    let out = f(&mut c)?;
    c.expect_end()?;
    Ok(out)
}

/// Parses a single term written on one line.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    whole(text, parse_term_at)
}

/// Parses `lhs |= rhs`.
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    whole(text, parse_sequent_at)
}

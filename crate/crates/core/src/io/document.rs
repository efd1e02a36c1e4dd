//! Line-oriented scenario file syntax.
//!
//! ```text
//! # comment
//! [demographics]
//! households = 3457375
//!
//! [[source]]
//! name = "hydro"
//! energy_mwh = 11457895.6
//!
//! [tariff]
//! block = 80, 0.0
//! block = inf, 0.092
//! ```
//!
//! `[name]` opens a single section, `[[name]]` one entry of a repeatable
//! section. Values are numbers, double-quoted strings, the bare word `inf`,
//! or comma-separated lists of those. A key may appear more than once in a
//! section only when every occurrence holds a list; list entries keep their
//! declaration order.

use std::fmt::Write as _;

use super::diagnostic::{Code, Diagnostic, Pos};

/// Sections the format knows, and whether they repeat.
pub const SECTIONS: &[(&str, bool)] = &[
    ("scenario", false),
    ("tariff", false),
    ("demographics", false),
    ("source", true),
    ("fuel", true),
    ("appliance", true),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Number(f64),
    Str(String),
    Inf,
}

impl Scalar {
    pub fn kind(&self) -> &'static str {
        match self {
            Scalar::Number(_) => "number",
            Scalar::Str(_) => "string",
            Scalar::Inf => "`inf`",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub scalar: Scalar,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    List(Vec<Item>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(s) => s.kind(),
            Value::List(_) => "list",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub key_pos: Pos,
    pub value: Value,
    pub value_pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub repeated: bool,
    pub pos: Pos,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub sections: Vec<Section>,
}

impl Document {
    pub fn sections_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Section> + 'a {
        self.sections.iter().filter(move |s| s.name == name)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// The same tree with every position reset, for structural comparison.
    pub fn without_positions(&self) -> Document {
        let zero = Pos::default();
        Document {
            sections: self
                .sections
                .iter()
                .map(|s| Section {
                    name: s.name.clone(),
                    repeated: s.repeated,
                    pos: zero,
                    entries: s
                        .entries
                        .iter()
                        .map(|e| Entry {
                            key: e.key.clone(),
                            key_pos: zero,
                            value: match &e.value {
                                Value::List(items) => Value::List(
                                    items
                                        .iter()
                                        .map(|i| Item {
                                            scalar: i.scalar.clone(),
                                            pos: zero,
                                        })
                                        .collect(),
                                ),
                                v => v.clone(),
                            },
                            value_pos: zero,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Canonical text form; re-parses to a structurally equal document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if s.repeated {
                let _ = writeln!(out, "[[{}]]", s.name);
            } else {
                let _ = writeln!(out, "[{}]", s.name);
            }
            for e in &s.entries {
                let value = match &e.value {
                    Value::Scalar(sc) => scalar_text(sc),
                    Value::List(items) => items
                        .iter()
                        .map(|i| scalar_text(&i.scalar))
                        .collect::<Vec<_>>()
                        .join(", "),
                };
                let _ = writeln!(out, "{} = {}", e.key, value);
            }
        }
        out
    }
}

fn scalar_text(s: &Scalar) -> String {
    match s {
        // Display for f64 never uses exponent notation
        Scalar::Number(n) => format!("{n}"),
        Scalar::Str(s) => format!("\"{}\"", s.replace('"', "\\\"")),
        Scalar::Inf => "inf".to_string(),
    }
}

/// Parses scenario text. On failure returns every syntax error found; a bad
/// line is skipped and parsing resumes on the next one.
pub fn parse(text: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut doc = Document::default();
    let mut errors = Vec::new();
    // index into doc.sections of the open section; None before any header
    // or inside an unknown section
    let mut current: Option<usize> = None;
    let mut in_unknown = false;

    for (idx, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(raw, idx + 1);
        let result = match cur.line_kind() {
            LineKind::Blank => Ok(()),
            LineKind::Header => {
                let opened = cur.header().and_then(|(name, repeated, pos)| {
                    cur.end_of_line()?;
                    open_section(&mut doc, name, repeated, pos)
                });
                // keys under a rejected header are skipped silently
                current = opened.as_ref().ok().copied();
                in_unknown = current.is_none();
                opened.map(|_| ())
            }
            LineKind::Pair => cur.pair().and_then(|entry| {
                cur.end_of_line()?;
                match current {
                    Some(i) => add_entry(&mut doc.sections[i], entry),
                    None if in_unknown => Ok(()),
                    None => Err(Diagnostic::error(
                        Code::Syntax,
                        entry.key_pos,
                        format!("key `{}` appears before any section header", entry.key),
                    )),
                }
            }),
        };
        if let Err(d) = result {
            errors.push(d);
        }
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(errors)
    }
}

fn open_section(doc: &mut Document, name: String, repeated: bool, pos: Pos) -> Result<usize, Diagnostic> {
    let Some(&(_, known_repeated)) = SECTIONS.iter().find(|(n, _)| *n == name) else {
        let known: Vec<&str> = SECTIONS.iter().map(|(n, _)| *n).collect();
        return Err(
            Diagnostic::error(Code::UnknownSection, pos, format!("unknown section `{name}`"))
                .with_hint(format!("known sections: {}", known.join(", "))),
        );
    };
    if known_repeated != repeated {
        let (want, got) = if known_repeated {
            (format!("[[{name}]]"), format!("[{name}]"))
        } else {
            (format!("[{name}]"), format!("[[{name}]]"))
        };
        return Err(Diagnostic::error(
            Code::SectionKind,
            pos,
            format!("section `{name}` must be written {want}, not {got}"),
        ));
    }
    if !repeated {
        if let Some(prev) = doc.section(&name) {
            return Err(Diagnostic::error(
                Code::DuplicateSection,
                pos,
                format!("section [{name}] already defined at line {}", prev.pos.line),
            ));
        }
    }
    doc.sections.push(Section {
        name,
        repeated,
        pos,
        entries: Vec::new(),
    });
    Ok(doc.sections.len() - 1)
}

fn add_entry(section: &mut Section, entry: Entry) -> Result<(), Diagnostic> {
    if let Some(prev) = section.get(&entry.key) {
        let both_lists = section.get_all(&entry.key).all(|e| matches!(e.value, Value::List(_)))
            && matches!(entry.value, Value::List(_));
        if !both_lists {
            return Err(Diagnostic::error(
                Code::DuplicateKey,
                entry.key_pos,
                format!(
                    "duplicate key `{}` (first defined at line {})",
                    entry.key, prev.key_pos.line
                ),
            ));
        }
    }
    section.entries.push(entry);
    Ok(())
}

enum LineKind {
    Blank,
    Header,
    Pair,
}

struct Cursor {
    chars: Vec<char>,
    at: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            at: 0,
            line,
        }
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.at + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.at += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn line_kind(&mut self) -> LineKind {
        self.skip_ws();
        match self.peek() {
            None | Some('#') => LineKind::Blank,
            Some('[') => LineKind::Header,
            _ => LineKind::Pair,
        }
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let found = match self.peek() {
            None => "end of line".to_string(),
            Some(c) => format!("`{c}`"),
        };
        Diagnostic::error(Code::Syntax, self.pos(), format!("expected {expected}, found {found}"))
    }

    fn end_of_line(&mut self) -> Result<(), Diagnostic> {
        self.skip_ws();
        match self.peek() {
            None | Some('#') => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), Diagnostic> {
        let pos = self.pos();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.unexpected("a name")),
        }
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.at += 1;
        }
        Ok((self.chars[start..self.at].iter().collect(), pos))
    }

    fn header(&mut self) -> Result<(String, bool, Pos), Diagnostic> {
        self.eat('[');
        let repeated = self.eat('[');
        self.skip_ws();
        let (name, pos) = self.ident()?;
        self.skip_ws();
        if !self.eat(']') || (repeated && !self.eat(']')) {
            return Err(self.unexpected(if repeated { "`]]`" } else { "`]`" }));
        }
        Ok((name, repeated, pos))
    }

    fn pair(&mut self) -> Result<Entry, Diagnostic> {
        let (key, key_pos) = self.ident()?;
        self.skip_ws();
        if !self.eat('=') {
            return Err(self.unexpected("`=`"));
        }
        self.skip_ws();
        let value_pos = self.pos();
        let first = self.scalar()?;
        let mut items = vec![first];
        loop {
            self.skip_ws();
            if !self.eat(',') {
                break;
            }
            self.skip_ws();
            items.push(self.scalar()?);
        }
        let value = if items.len() == 1 {
            Value::Scalar(items.pop().expect("one item").scalar)
        } else {
            Value::List(items)
        };
        Ok(Entry {
            key,
            key_pos,
            value,
            value_pos,
        })
    }

    fn scalar(&mut self) -> Result<Item, Diagnostic> {
        let pos = self.pos();
        let scalar = match self.peek() {
            Some('"') => self.string()?,
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => self.number()?,
            Some(c) if c.is_ascii_alphabetic() => {
                let (word, _) = self.ident()?;
                if word == "inf" {
                    Scalar::Inf
                } else {
                    return Err(
                        Diagnostic::error(Code::Syntax, pos, format!("unexpected word `{word}`"))
                            .with_hint("strings must be double-quoted"),
                    );
                }
            }
            _ => return Err(self.unexpected("a value")),
        };
        Ok(Item { scalar, pos })
    }

    fn string(&mut self) -> Result<Scalar, Diagnostic> {
        let pos = self.pos();
        self.eat('"');
        let mut s = String::new();
        loop {
            match self.peek() {
                None => return Err(Diagnostic::error(Code::UnterminatedString, pos, "unterminated string")),
                Some('"') => {
                    self.at += 1;
                    return Ok(Scalar::Str(s));
                }
                Some('\\') if self.chars.get(self.at + 1) == Some(&'"') => {
                    s.push('"');
                    self.at += 2;
                }
                Some(c) => {
                    s.push(c);
                    self.at += 1;
                }
            }
        }
    }

    fn number(&mut self) -> Result<Scalar, Diagnostic> {
        let pos = self.pos();
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '+' | '-')) {
            self.at += 1;
        }
        let text: String = self.chars[start..self.at].iter().collect();
        if !is_number(&text) {
            return Err(
                Diagnostic::error(Code::MalformedNumber, pos, format!("malformed number `{text}`"))
                    .with_hint("numbers are digits with an optional sign and fraction, e.g. -12.5"),
            );
        }
        text.parse::<f64>()
            .map(Scalar::Number)
            .map_err(|_| Diagnostic::error(Code::MalformedNumber, pos, format!("malformed number `{text}`")))
    }
}

fn is_number(text: &str) -> bool {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    digits(int) && frac.is_none_or(digits)
}

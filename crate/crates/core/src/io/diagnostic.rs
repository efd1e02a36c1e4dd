use std::fmt;

use serde::Serialize;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(line: usize, col: usize) -> Self {
        Self { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Code {
    // syntax
    UnterminatedString,
    MalformedNumber,
    UnknownSection,
    DuplicateKey,
    Syntax,
    SectionKind,
    DuplicateSection,
    // semantics
    ExpectedNumber,
    ExpectedInteger,
    ExpectedString,
    MissingKey,
    MissingSection,
    InvalidValue,
    Partition,
    Tariff,
    UnknownFuel,
    DuplicateName,
    // warnings
    UnknownKey,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::UnterminatedString => "E001",
            Code::MalformedNumber => "E002",
            Code::UnknownSection => "E003",
            Code::DuplicateKey => "E004",
            Code::Syntax => "E005",
            Code::SectionKind => "E006",
            Code::DuplicateSection => "E007",
            Code::ExpectedNumber => "E101",
            Code::ExpectedInteger => "E102",
            Code::ExpectedString => "E103",
            Code::MissingKey => "E104",
            Code::MissingSection => "E105",
            Code::InvalidValue => "E106",
            Code::Partition => "E107",
            Code::Tariff => "E108",
            Code::UnknownFuel => "E109",
            Code::DuplicateName => "E110",
            Code::UnknownKey => "W001",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub pos: Pos,
    pub hint: Option<String>,
}

impl Diagnostic {
    pub fn error(code: Code, pos: Pos, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            code,
            message: message.into(),
            pos,
            hint: None,
        }
    }

    pub fn warning(code: Code, pos: Pos, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            ..Self::error(code, pos, message)
        }
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Multi-line rendering with the file name; `color` adds ANSI styling.
    pub fn render(&self, file: &str, color: bool) -> String {
        let (label, style) = match self.severity {
            Severity::Error => ("error", "\x1b[1;31m"),
            Severity::Warning => ("warning", "\x1b[1;33m"),
        };
        let head = if color {
            format!("{style}{label}[{}]\x1b[0m", self.code.as_str())
        } else {
            format!("{label}[{}]", self.code.as_str())
        };
        let mut out = format!("{head}: {}\n  --> {file}:{}\n", self.message, self.pos);
        if let Some(hint) = &self.hint {
            out.push_str(&format!("  = hint: {hint}\n"));
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{label}[{}]: {}", self.pos, self.code.as_str(), self.message)
    }
}

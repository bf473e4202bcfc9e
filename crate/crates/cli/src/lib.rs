//! Code files and JSON reports for the `circuit-codes` binary.
//!
//! A code file is UTF-8 text:
//!
//! ```text
//! # comment lines start with '#'
//! d=16 k=9
//! 1 2 3 4, 5 6 ...
//! ```
//!
//! The header line is optional and may carry either or both of `d=` and
//! `k=`; it must come before the first transition. Transitions are 1-based
//! coordinate labels separated by whitespace and/or commas.

use std::fmt::Write as _;
use std::path::Path;

use circuit_codes::{CodeReport, TransitionSequence};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: `{token}` is not a positive integer label")]
    BadToken { line: usize, token: String },
    #[error("line {line}: malformed header field `{field}`")]
    BadHeader { line: usize, field: String },
    #[error("line {line}: header must precede the transitions and appear once")]
    MisplacedHeader { line: usize },
    #[error("no transitions found")]
    Empty,
    #[error("{0}")]
    Invalid(#[from] circuit_codes::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub code: TransitionSequence,
    pub declared_d: Option<usize>,
    pub declared_k: Option<usize>,
}

impl CodeFile {
    pub fn new(code: TransitionSequence, declared_k: Option<usize>) -> Self {
        CodeFile {
            declared_d: Some(code.dimension()),
            declared_k,
            code,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut labels = Vec::new();
        let mut header: Option<(Option<usize>, Option<usize>)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.starts_with("d=") || line.starts_with("k=") {
                if header.is_some() || !labels.is_empty() {
                    return Err(ParseError::MisplacedHeader { line: lineno });
                }
                header = Some(parse_header(line, lineno)?);
                continue;
            }
            for token in line.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                match token.parse::<u32>() {
                    Ok(l) if l > 0 => labels.push(l),
                    _ => {
                        return Err(ParseError::BadToken {
                            line: lineno,
                            token: token.to_string(),
                        })
                    }
                }
            }
        }
        if labels.is_empty() {
            return Err(ParseError::Empty);
        }
        let (declared_d, declared_k) = header.unwrap_or((None, None));
        let code = match declared_d {
            Some(d) => TransitionSequence::new(labels, d)?,
            None => TransitionSequence::from_labels(labels)?,
        };
        Ok(CodeFile {
            code,
            declared_d,
            declared_k,
        })
    }

    pub fn read(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Canonical text form: header, then all transitions on one line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fields: Vec<String> = [("d", self.declared_d), ("k", self.declared_k)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        if !fields.is_empty() {
            writeln!(out, "{}", fields.join(" ")).unwrap();
        }
        writeln!(out, "{}", self.code).unwrap();
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_text())
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<(Option<usize>, Option<usize>), ParseError> {
    let (mut d, mut k) = (None, None);
    for field in line.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()) {
        let bad = || ParseError::BadHeader {
            line: lineno,
            field: field.to_string(),
        };
        let (name, value) = field.split_once('=').ok_or_else(bad)?;
        let value: usize = value.parse().map_err(|_| bad())?;
        let slot = match name {
            "d" => &mut d,
            "k" => &mut k,
            _ => return Err(bad()),
        };
        if slot.replace(value).is_some() {
            return Err(bad());
        }
    }
    Ok((d, k))
}

/// Which spread verifier(s) a report used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// All-pairs distance check.
    Direct,
    /// Segment parity check; needs `N >= 2k`.
    Klee,
    /// Label-deletion characterization; needs `k >= 2`, `N > 4(k-1)`.
    Decomposition,
    /// Every applicable method, cross-checked.
    All,
}

/// The JSON document printed by `verify`, `construct` and `project`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub code: CodeReport,
    pub transitions: String,
    pub method: Option<Method>,
    pub k: Option<usize>,
    pub verified: Option<bool>,
    /// One entry per verifier that actually ran.
    pub citations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed_label: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occurrences: Option<usize>,
}

impl Report {
    pub fn of(t: &TransitionSequence) -> Self {
        Report {
            code: circuit_codes::analyze(t),
            transitions: t.to_string(),
            method: None,
            k: None,
            verified: None,
            citations: Vec::new(),
            removed_label: None,
            occurrences: None,
        }
    }
}

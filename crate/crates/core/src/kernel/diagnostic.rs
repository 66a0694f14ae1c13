use std::fmt;

use crate::surface::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A rejection (or warning) tied to a source location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub file: String,
    pub span: Span,
    pub rule: &'static str,
    pub message: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl Diagnostic {
    pub fn error(rule: &'static str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            file: String::new(),
            span,
            rule,
            message: message.into(),
            expected: None,
            actual: None,
        }
    }

    pub fn with_types(mut self, expected: Option<String>, actual: Option<String>) -> Diagnostic {
        self.expected = expected;
        self.actual = actual;
        self
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Diagnostic {
        self.file = file.into();
        self
    }

    /// The full message, including printed types when present.
    pub fn full_message(&self) -> String {
        let mut out = self.message.clone();
        if let Some(expected) = &self.expected {
            out.push_str("\n  expected: ");
            out.push_str(expected);
        }
        if let Some(actual) = &self.actual {
            out.push_str("\n  actual:   ");
            out.push_str(actual);
        }
        out
    }

    /// `severity<TAB>file<TAB>start..end<TAB>rule<TAB>message`, one line.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.severity,
            escape(&self.file),
            self.span,
            self.rule,
            escape(&self.full_message())
        )
    }

    /// Multi-line human-readable rendering.
    pub fn to_human(&self) -> String {
        format!(
            "{}: {} [{}] at {}:{}\n",
            self.severity,
            self.full_message(),
            self.rule,
            self.file,
            self.span
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

/// Escape backslashes, tabs and line breaks so a field stays on one line.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape`].
pub fn unescape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_has_five_fields() {
        let d = Diagnostic::error("type-mismatch", Span::new(3, 7), "bad\tthing")
            .with_types(Some("Nat".into()), Some("Bool".into()))
            .in_file("a.jt");
        let line = d.to_tsv();
        assert!(!line.contains('\n'));
        let fields: Vec<_> = line.split('\t').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[2], "3..7");
        assert_eq!(unescape(fields[4]), d.full_message());
    }
}

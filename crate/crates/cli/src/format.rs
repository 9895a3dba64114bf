//! Plain-text instance format.
//!
//! ```text
//! n u t
//! x1 x2 ... xn
//! ```
//!
//! `t` is an integer or `-` when absent. The element line may be omitted or
//! empty when `n` is zero, and the trailing newline is optional.

use std::fmt;

use sumset_core::{make_instance, Instance, Pruned};

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{0}")]
    Syntax(SyntaxError),
    #[error("{0}")]
    Invalid(#[from] sumset_core::Error),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax(SyntaxError {
        line,
        column,
        message: message.into(),
    })
}

fn integer(tok: &Token<'_>, line: usize, what: &str) -> Result<i64, ParseError> {
    tok.text.parse::<i64>().map_err(|_| {
        syntax(
            line,
            tok.column,
            format!("{what}: expected an integer, found `{}`", tok.text),
        )
    })
}

/// Parses and validates an instance. Duplicates and elements above `u` are
/// dropped; the returned [`Pruned`] says how many.
pub fn parse_instance(text: &str) -> Result<(Instance, Pruned), ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().copied().unwrap_or("");
    let head = tokens(header);
    if head.len() != 3 {
        let column = head.get(3).map_or(header.chars().count() + 1, |t| t.column);
        return Err(syntax(
            1,
            column,
            format!("header must be `n u t`, found {} field(s)", head.len()),
        ));
    }
    let n = integer(&head[0], 1, "n")?;
    if n < 0 {
        return Err(syntax(1, head[0].column, "n must be non-negative"));
    }
    let u = integer(&head[1], 1, "u")?;
    let t = match head[2].text {
        "-" => None,
        _ => Some(integer(&head[2], 1, "t")?),
    };

    let body = lines.get(1).copied().unwrap_or("");
    let items = tokens(body);
    let mut raw = Vec::with_capacity(items.len());
    for tok in &items {
        raw.push(integer(tok, 2, "element")?);
    }
    let n = n as usize;
    if raw.len() < n {
        return Err(syntax(
            2,
            body.chars().count() + 1,
            format!("declared {n} element(s), found {}", raw.len()),
        ));
    }
    if raw.len() > n {
        return Err(syntax(
            2,
            items[n].column,
            format!("declared {n} element(s), found {}", raw.len()),
        ));
    }
    for (k, line) in lines.iter().enumerate().skip(2) {
        if let Some(tok) = tokens(line).first() {
            return Err(syntax(k + 1, tok.column, "unexpected content after the element line"));
        }
    }
    Ok(make_instance(&raw, u, t)?)
}

/// Renders an instance in the format [`parse_instance`] reads.
pub fn write_instance(inst: &Instance) -> String {
    let t = inst.target().map_or_else(|| "-".to_string(), |t| t.to_string());
    let elements: Vec<String> = inst.elements().iter().map(|x| x.to_string()).collect();
    format!("{} {} {}\n{}\n", inst.n(), inst.u(), t, elements.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_at(text: &str) -> (usize, usize) {
        match parse_instance(text) {
            Err(ParseError::Syntax(e)) => (e.line, e.column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn reads_documented_examples() {
        let (inst, pruned) = parse_instance("3 6 5\n1 2 3\n").unwrap();
        assert_eq!((inst.elements(), inst.u(), inst.target()), (&[1, 2, 3][..], 6, Some(5)));
        assert!(pruned.is_clean());

        let (inst, _) = parse_instance("0 4 -\n\n").unwrap();
        assert_eq!((inst.n(), inst.u(), inst.target()), (0, 4, None));
        assert_eq!(parse_instance("0 4 -").unwrap().0.n(), 0);
        assert_eq!(parse_instance("2 9 -\r\n4\t7").unwrap().0.elements(), &[4, 7]);
    }

    #[test]
    fn reports_positions() {
        assert_eq!(syntax_at("2 6 5\n1\n"), (2, 2));
        assert_eq!(syntax_at("2 6 5\n1 2 3\n"), (2, 5));
        assert_eq!(syntax_at("2 6\n1 2\n"), (1, 4));
        assert_eq!(syntax_at("2 6 5 7\n1 2\n"), (1, 7));
        assert_eq!(syntax_at("2 six 5\n1 2\n"), (1, 3));
        assert_eq!(syntax_at("2 6 x\n1 2\n"), (1, 5));
        assert_eq!(syntax_at("2 6 5\n1  2.5\n"), (2, 4));
        assert_eq!(syntax_at("-1 6 5\n"), (1, 1));
        assert_eq!(syntax_at("1 6 5\n1\n9\n"), (3, 1));
        assert_eq!(syntax_at(""), (1, 1));
    }

    #[test]
    fn validation_errors_pass_through() {
        assert!(matches!(
            parse_instance("2 10 -\n0 3\n"),
            Err(ParseError::Invalid(sumset_core::Error::NonPositiveElement { .. }))
        ));
        assert!(matches!(
            parse_instance("1 4 5\n1\n"),
            Err(ParseError::Invalid(sumset_core::Error::TargetExceedsBound { .. }))
        ));
        let (inst, pruned) = parse_instance("3 6 -\n5 5 9\n").unwrap();
        assert_eq!(inst.elements(), &[5]);
        assert_eq!((pruned.duplicates, pruned.over_bound), (1, 1));
    }

    #[test]
    fn round_trips() {
        let inst = Instance::new(&[3, 10, 11], 20, Some(14)).unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap().0, inst);
        let inst = Instance::new(&[], 0, None).unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap().0, inst);
    }
}

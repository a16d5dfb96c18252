use std::fmt;

use super::{parse_at, Diagram, Pos};
use crate::error::{Error, Result};

/// Whether a move is expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expectation {
    Asserted,
    /// Recorded but never counted as a failure.
    Observational,
}

/// A named diagram equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub name: String,
    pub lhs: Diagram,
    pub rhs: Diagram,
    pub expectation: Expectation,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} == {}", self.name, self.lhs, self.rhs)?;
        if self.expectation == Expectation::Observational {
            f.write_str(" [observational]")?;
        }
        Ok(())
    }
}

pub const LIBRARY_SOURCE: &str = include_str!("moves.bfl");

/// The built-in move library.
pub fn library() -> Vec<Move> {
    parse_equation_file(LIBRARY_SOURCE).expect("built-in library parses")
}

const TAG: &str = "[observational]";

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses `LHS == RHS` starting at `start`. Both sides must have equal arities.
pub fn parse_equation(text: &str, start: Pos) -> Result<(Diagram, Diagram)> {
    let Some(split) = text.find("==") else {
        return Err(parse_error(start.line, start.column, "expected 'LHS == RHS'"));
    };
    let (lhs_src, rhs_src) = (&text[..split], &text[split + 2..]);
    let lhs = parse_at(lhs_src, start)?.arity_check()?;
    let rhs_start = Pos {
        line: start.line,
        column: start.column + text[..split + 2].chars().count(),
    };
    let rhs = parse_at(rhs_src, rhs_start)?.arity_check()?;
    let (l, r) = (lhs.arity.expect("checked"), rhs.arity.expect("checked"));
    if l != r {
        return Err(Error::Arity {
            line: rhs.pos.line,
            column: rhs.pos.column,
            message: format!("left side is {}->{} but right side is {}->{}", l.0, l.1, r.0, r.1),
        });
    }
    Ok((lhs, rhs))
}

/// Parses an equation file: `NAME : LHS == RHS [observational]` per line,
/// blank lines and `#` comments ignored.
pub fn parse_equation_file(text: &str) -> Result<Vec<Move>> {
    let mut moves: Vec<Move> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            return Err(parse_error(line, 1, "expected 'NAME : LHS == RHS'"));
        };
        let name = body[..colon].trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(parse_error(line, 1, format!("invalid equation name {name:?}")));
        }
        if moves.iter().any(|m| m.name == name) {
            return Err(parse_error(line, 1, format!("duplicate equation name {name:?}")));
        }
        let mut rest = &body[colon + 1..];
        let mut expectation = Expectation::Asserted;
        if let Some(stripped) = rest.trim_end().strip_suffix(TAG) {
            rest = stripped;
            expectation = Expectation::Observational;
        }
        let start = Pos {
            line,
            column: body[..colon + 1].chars().count() + 1,
        };
        let (lhs, rhs) = parse_equation(rest, start)?;
        moves.push(Move {
            name: name.to_string(),
            lhs,
            rhs,
            expectation,
        });
    }
    Ok(moves)
}

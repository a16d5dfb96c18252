//! A small language for string diagrams.
//!
//! ```text
//! expr   := term (";" term)*
//! term   := factor ("*" factor)*
//! factor := IDENT ("^" INT)? | "(" expr ")"
//! ```
//!
//! `f ; g` is `f` then `g` (top to bottom), `f * g` places `f` left of `g`.
//! Arities count X-wires; V-level generators such as `mu2` take doubled arities.
//! Comments run from `#` to the end of the line.

mod eval;
mod moves;
mod parser;

use std::fmt;

use crate::error::{Error, Result};

pub use eval::{check_equation, Context, EquationOutcome, Evaluator, Strategy};
pub use moves::{library, parse_equation, parse_equation_file, Expectation, Move, LIBRARY_SOURCE};
pub use parser::{parse, parse_at};

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub enum Node {
    Generator(String),
    Power(String, usize),
    Parallel(Vec<Diagram>),
    Sequential(Vec<Diagram>),
}

/// A parsed diagram. Equality ignores positions and annotations.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub node: Node,
    pub pos: Pos,
    /// `(in, out)` once arity-checked.
    pub arity: Option<(usize, usize)>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Node) -> bool {
        match (self, other) {
            (Node::Generator(a), Node::Generator(b)) => a == b,
            (Node::Power(a, k), Node::Power(b, m)) => a == b && k == m,
            (Node::Parallel(a), Node::Parallel(b)) | (Node::Sequential(a), Node::Sequential(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Node {}

impl PartialEq for Diagram {
    fn eq(&self, other: &Diagram) -> bool {
        self.node == other.node
    }
}

impl Eq for Diagram {}

/// Arities of the built-in generators.
pub fn generator_arity(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "id" | "S" => (1, 1),
        "mu" => (2, 1),
        "delta" => (1, 2),
        "eta" => (0, 1),
        "eps" => (1, 0),
        "tau" | "theta" | "Theta" => (2, 2),
        "T" => (3, 1),
        "cup" | "eps2" => (2, 0),
        "cap" | "eta2" => (0, 2),
        "beta1" | "beta1inv" => (3, 3),
        "beta" | "betainv" | "thetavv" => (4, 4),
        "mu2" => (4, 2),
        "delta2" => (2, 4),
        _ => return None,
    })
}

/// Every generator name the language knows.
pub const GENERATORS: [&str; 21] = [
    "id", "mu", "delta", "eta", "eps", "S", "tau", "T", "cup", "cap", "beta1", "beta1inv", "beta",
    "betainv", "theta", "Theta", "thetavv", "mu2", "delta2", "eta2", "eps2",
];

impl Diagram {
    fn composite(&self) -> bool {
        matches!(self.node, Node::Parallel(_) | Node::Sequential(_))
    }

    /// Annotates every node with its arity.
    pub fn arity_check(mut self) -> Result<Diagram> {
        self.annotate()?;
        Ok(self)
    }

    fn err(&self, message: String) -> Error {
        Error::Arity {
            line: self.pos.line,
            column: self.pos.column,
            message,
        }
    }

    fn annotate(&mut self) -> Result<(usize, usize)> {
        let arity = match &mut self.node {
            Node::Generator(name) => {
                let name = name.clone();
                generator_arity(&name).ok_or_else(|| self.err(format!("unknown generator {name:?}")))?
            }
            Node::Power(name, k) => {
                let (name, k) = (name.clone(), *k);
                let (a, b) = generator_arity(&name).ok_or_else(|| self.err(format!("unknown generator {name:?}")))?;
                (a * k, b * k)
            }
            Node::Parallel(children) => {
                let mut total = (0, 0);
                for c in children.iter_mut() {
                    let (a, b) = c.annotate()?;
                    total = (total.0 + a, total.1 + b);
                }
                total
            }
            Node::Sequential(children) => {
                let mut arity: Option<(usize, usize)> = None;
                for c in children.iter_mut() {
                    let (a, b) = c.annotate()?;
                    arity = Some(match arity {
                        None => (a, b),
                        Some((start, prev)) if prev == a => (start, b),
                        Some((_, prev)) => {
                            return Err(c.err(format!("expects {a} inputs but the diagram above has {prev} outputs")))
                        }
                    });
                }
                arity.unwrap_or((0, 0))
            }
        };
        self.arity = Some(arity);
        Ok(arity)
    }

    /// `(in, out)` arity, checking if needed.
    pub fn arities(&self) -> Result<(usize, usize)> {
        match self.arity {
            Some(a) => Ok(a),
            None => self.clone().annotate(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, children: &[Diagram], sep: &str| -> fmt::Result {
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                if c.composite() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            }
            Ok(())
        };
        match &self.node {
            Node::Generator(name) => f.write_str(name),
            Node::Power(name, k) => write!(f, "{name}^{k}"),
            Node::Parallel(children) => join(f, children, " * "),
            Node::Sequential(children) => join(f, children, " ; "),
        }
    }
}

#[cfg(test)]
mod tests;

use super::{Diagram, Node, Pos};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Semi,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn error(pos: Pos, message: impl Into<String>) -> Error {
        Error::Parse {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>> {
        let mut out = Vec::new();
        loop {
            while let Some(&c) = self.chars.peek() {
                if c == '#' {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                } else if c.is_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let start = self.pos;
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match c {
                ';' | '*' | '^' | '(' | ')' => {
                    self.bump();
                    match c {
                        ';' => Tok::Semi,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                        s.push(d);
                        self.bump();
                    }
                    Tok::Int(s.parse().map_err(|_| Self::error(start, "integer too large"))?)
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                        s.push(d);
                        self.bump();
                    }
                    Tok::Ident(s)
                }
                other => return Err(Self::error(start, format!("unexpected character {other:?}"))),
            };
            out.push((tok, start));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let (tok, pos) = self.peek();
        let found = match tok {
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Int(k) => k.to_string(),
            Tok::Semi => "';'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        };
        Lexer::error(*pos, format!("expected {wanted}, found {found}"))
    }

    fn list(&mut self, sep: Tok, item: fn(&mut Parser) -> Result<Diagram>, wrap: fn(Vec<Diagram>) -> Node) -> Result<Diagram> {
        let first = item(self)?;
        if self.peek().0 != sep {
            return Ok(first);
        }
        let pos = first.pos;
        let mut items = vec![first];
        while self.peek().0 == sep {
            self.next();
            items.push(item(self)?);
        }
        Ok(Diagram {
            node: wrap(items),
            pos,
            arity: None,
        })
    }

    fn expr(&mut self) -> Result<Diagram> {
        self.list(Tok::Semi, Parser::term, Node::Sequential)
    }

    fn term(&mut self) -> Result<Diagram> {
        self.list(Tok::Star, Parser::factor, Node::Parallel)
    }

    fn factor(&mut self) -> Result<Diagram> {
        match self.peek().clone() {
            (Tok::Ident(name), pos) => {
                self.next();
                let node = if self.peek().0 == Tok::Caret {
                    self.next();
                    match self.next() {
                        (Tok::Int(k), _) => Node::Power(name, k),
                        _ => {
                            self.at -= 1;
                            return Err(self.unexpected("an exponent"));
                        }
                    }
                } else {
                    Node::Generator(name)
                };
                Ok(Diagram { node, pos, arity: None })
            }
            (Tok::LParen, pos) => {
                self.next();
                let mut inner = self.expr()?;
                if self.peek().0 != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.next();
                inner.pos = pos;
                Ok(inner)
            }
            _ => Err(self.unexpected("a generator or '('")),
        }
    }
}

/// Parses a diagram expression. Positions start at line 1, column 1.
pub fn parse(src: &str) -> Result<Diagram> {
    parse_at(src, Pos { line: 1, column: 1 })
}

/// Parses with positions offset so that `src` begins at `start`.
pub fn parse_at(src: &str, start: Pos) -> Result<Diagram> {
    let toks = Lexer {
        chars: src.chars().peekable(),
        pos: start,
    }
    .tokens()?;
    let mut p = Parser { toks, at: 0 };
    let d = p.expr()?;
    if p.peek().0 != Tok::End {
        return Err(p.unexpected("';', '*' or end of input"));
    }
    Ok(d)
}

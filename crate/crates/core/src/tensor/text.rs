//! Line-oriented text form of a [`TensorMap`].
//!
//! ```text
//! # ring = Fp:2
//! # rank = 2
//! # arity = 0 -> 2
//! (0,1) <- () : 1 mod 2
//! (1,0) <- () : 1 mod 2
//! ```
//!
//! One line per nonzero entry, sorted by output then input multi-index.
//! Header lines are optional when the caller supplies the shape.

use std::fmt::Write as _;

use super::{MultiIndex, TensorMap};
use crate::error::{Error, Result};
use crate::scalar::Ring;

pub fn write_tensor_text(map: &TensorMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# ring = {}", map.ring());
    let _ = writeln!(out, "# rank = {}", map.n());
    let _ = writeln!(out, "# arity = {} -> {}", map.in_arity(), map.out_arity());
    let mut entries: Vec<_> = map.entries().collect();
    entries.sort_by_key(|(o, i, _)| (*o, *i));
    for (o, i, c) in entries {
        let _ = writeln!(
            out,
            "{} <- {} : {}",
            MultiIndex::from_flat(map.n(), map.out_arity(), o),
            MultiIndex::from_flat(map.n(), map.in_arity(), i),
            c
        );
    }
    out
}

fn parse_multi(text: &str, line: usize) -> Result<Vec<usize>> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::config(format!("line {line}: expected (i,j,...) but found {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|d| {
            d.trim()
                .parse()
                .map_err(|_| Error::config(format!("line {line}: bad index {d:?}")))
        })
        .collect()
}

/// Parses the text form. `shape` = `(ring, rank, in_arity, out_arity)` is
/// required unless the text carries a complete header; when both are present
/// they must agree.
pub fn parse_tensor_text(
    text: &str,
    shape: Option<(Ring, usize, usize, usize)>,
) -> Result<TensorMap> {
    let mut ring = None;
    let mut rank = None;
    let mut arity = None;
    let mut raw = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "ring" => ring = Some(value.parse::<Ring>()?),
                    "rank" => {
                        rank = Some(value.parse::<usize>().map_err(|_| {
                            Error::config(format!("line {lineno}: bad rank {value:?}"))
                        })?)
                    }
                    "arity" => {
                        let (a, b) = value.split_once("->").ok_or_else(|| {
                            Error::config(format!("line {lineno}: bad arity {value:?}"))
                        })?;
                        let parse = |s: &str| {
                            s.trim().parse::<usize>().map_err(|_| {
                                Error::config(format!("line {lineno}: bad arity {value:?}"))
                            })
                        };
                        arity = Some((parse(a)?, parse(b)?));
                    }
                    _ => {}
                }
            }
            continue;
        }
        let (lhs, scalar) = line
            .rsplit_once(':')
            .ok_or_else(|| Error::config(format!("line {lineno}: missing ':'")))?;
        let (out, input) = lhs
            .split_once("<-")
            .ok_or_else(|| Error::config(format!("line {lineno}: missing '<-'")))?;
        raw.push((lineno, parse_multi(out, lineno)?, parse_multi(input, lineno)?, scalar.trim().to_string()));
    }
    let header = match (ring, rank, arity) {
        (Some(r), Some(n), Some((a, b))) => Some((r, n, a, b)),
        (None, None, None) => None,
        _ => return Err(Error::config("incomplete tensor header")),
    };
    let (ring, n, a, b) = match (header, shape) {
        (Some(h), Some(s)) if h != s => {
            return Err(Error::config(format!(
                "tensor header {h:?} disagrees with expected shape {s:?}"
            )))
        }
        (Some(h), _) => h,
        (None, Some(s)) => s,
        (None, None) => return Err(Error::config("tensor text without header or shape")),
    };
    let mut entries = Vec::with_capacity(raw.len());
    for (lineno, out, input, scalar) in raw {
        if out.len() != b || input.len() != a {
            return Err(Error::config(format!(
                "line {lineno}: multi-index arity does not match {a} -> {b}"
            )));
        }
        if out.iter().chain(&input).any(|&d| d >= n) {
            return Err(Error::config(format!("line {lineno}: index out of range for rank {n}")));
        }
        let c = ring.parse_scalar(&scalar)?;
        entries.push((MultiIndex(out).flatten(n), MultiIndex(input).flatten(n), c));
    }
    TensorMap::from_entries(ring, n, a, b, entries)
}

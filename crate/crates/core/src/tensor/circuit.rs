//! Lazily evaluated composites of tensor maps.
//!
//! A [`Circuit`] is a sequence of steps, each acting on a window of adjacent
//! factors (`id^{⊗k} ⊗ f ⊗ id^{⊗m}`) or permuting factors. Circuits never
//! build the identity padding, so a composite on `X^{⊗6}` with `n = 9` can be
//! evaluated one input basis vector at a time.

use std::sync::Arc;

use rayon::prelude::*;

use super::{dim, normalize, stream_threshold, validate_perm, MultiIndex, SparseVec, TensorMap};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

const MAX_ARITY: usize = 64;

#[derive(Clone, Debug)]
enum Step {
    Map { offset: usize, map: Arc<TensorMap> },
    Permute(Vec<usize>),
    Scale(Scalar),
}

#[derive(Clone, Debug)]
pub struct Circuit {
    ring: Ring,
    n: usize,
    in_arity: usize,
    out_arity: usize,
    // Arity before each step.
    steps: Vec<(usize, Step)>,
}

impl Circuit {
    pub fn identity(ring: Ring, n: usize, arity: usize) -> Circuit {
        Circuit {
            ring,
            n,
            in_arity: arity,
            out_arity: arity,
            steps: Vec::new(),
        }
    }

    pub fn from_map(map: impl Into<Arc<TensorMap>>) -> Circuit {
        let map = map.into();
        Circuit {
            ring: map.ring(),
            n: map.n(),
            in_arity: map.in_arity(),
            out_arity: map.out_arity(),
            steps: vec![(map.in_arity(), Step::Map { offset: 0, map })],
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.out_arity
    }

    pub fn in_dim(&self) -> Result<u64> {
        dim(self.n, self.in_arity)
    }

    pub fn out_dim(&self) -> Result<u64> {
        dim(self.n, self.out_arity)
    }

    /// Appends `id^{⊗offset} ⊗ map ⊗ id^{⊗rest}`.
    pub fn then(mut self, offset: usize, map: &Arc<TensorMap>) -> Result<Circuit> {
        if map.ring() != self.ring || map.n() != self.n {
            return Err(Error::shape("circuit step over a different ring or rank"));
        }
        if offset + map.in_arity() > self.out_arity {
            return Err(Error::shape(format!(
                "step needs factors {}..{} but only {} are available",
                offset,
                offset + map.in_arity(),
                self.out_arity
            )));
        }
        let new_arity = self.out_arity - map.in_arity() + map.out_arity();
        if new_arity > MAX_ARITY {
            return Err(Error::shape("circuit arity exceeds 64 factors"));
        }
        dim(self.n, new_arity)?;
        self.steps.push((
            self.out_arity,
            Step::Map {
                offset,
                map: Arc::clone(map),
            },
        ));
        self.out_arity = new_arity;
        Ok(self)
    }

    /// Appends a factor permutation: input factor `k` moves to position `perm[k]`.
    pub fn then_permute(mut self, perm: &[usize]) -> Result<Circuit> {
        validate_perm(perm)?;
        if perm.len() != self.out_arity {
            return Err(Error::shape(format!(
                "permutation of {} factors applied to {}",
                perm.len(),
                self.out_arity
            )));
        }
        if perm.iter().enumerate().any(|(k, &p)| k != p) {
            self.steps.push((self.out_arity, Step::Permute(perm.to_vec())));
        }
        Ok(self)
    }

    /// Rearranges factors so that output position `j` holds input factor `order[j]`.
    pub fn then_select(self, order: &[usize]) -> Result<Circuit> {
        let mut perm = vec![usize::MAX; order.len()];
        for (j, &k) in order.iter().enumerate() {
            if k >= order.len() || perm[k] != usize::MAX {
                return Err(Error::shape(format!("{order:?} is not a permutation")));
            }
            perm[k] = j;
        }
        self.then_permute(&perm)
    }

    pub fn then_scale(mut self, c: &Scalar) -> Result<Circuit> {
        if c.ring() != self.ring {
            return Err(Error::shape("scale by a scalar from another ring"));
        }
        if !c.is_one() {
            self.steps.push((self.out_arity, Step::Scale(c.clone())));
        }
        Ok(self)
    }

    /// `self` then `next`.
    pub fn then_circuit(mut self, next: &Circuit) -> Result<Circuit> {
        if next.ring != self.ring || next.n != self.n {
            return Err(Error::shape("composing circuits over different spaces"));
        }
        if next.in_arity != self.out_arity {
            return Err(Error::shape(format!(
                "composing circuits: output arity {} vs input arity {}",
                self.out_arity, next.in_arity
            )));
        }
        self.steps.extend(next.steps.iter().cloned());
        self.out_arity = next.out_arity;
        Ok(self)
    }

    /// Applies `next` to the window of factors starting at `offset`.
    pub fn then_at(self, offset: usize, next: &Circuit) -> Result<Circuit> {
        let right = self
            .out_arity
            .checked_sub(offset + next.in_arity)
            .ok_or_else(|| Error::shape("window exceeds circuit arity"))?;
        let padded = next.embed(offset, right)?;
        self.then_circuit(&padded)
    }

    /// `id^{⊗left} ⊗ self ⊗ id^{⊗right}`.
    pub fn embed(&self, left: usize, right: usize) -> Result<Circuit> {
        let mut out = Circuit::identity(self.ring, self.n, left + self.in_arity + right);
        for (before, step) in &self.steps {
            let step = match step {
                Step::Map { offset, map } => Step::Map {
                    offset: offset + left,
                    map: Arc::clone(map),
                },
                Step::Permute(p) => {
                    let total = left + p.len() + right;
                    Step::Permute(
                        (0..total)
                            .map(|k| {
                                if k < left || k >= left + p.len() {
                                    k
                                } else {
                                    p[k - left] + left
                                }
                            })
                            .collect(),
                    )
                }
                Step::Scale(c) => Step::Scale(c.clone()),
            };
            out.steps.push((before + left + right, step));
        }
        out.out_arity = left + self.out_arity + right;
        dim(self.n, out.out_arity)?;
        Ok(out)
    }

    /// `self ⊗ other`, evaluated as `self` on the left factors then `other` on the right.
    pub fn tensor(&self, other: &Circuit) -> Result<Circuit> {
        let left = self.embed(0, other.in_arity)?;
        let right = other.embed(self.out_arity, 0)?;
        left.then_circuit(&right)
    }

    /// Evaluates the circuit on the basis vector with flat index `input`.
    pub fn eval_basis(&self, input: u64) -> SparseVec {
        self.eval(vec![(input, self.ring.one())])
    }

    /// Evaluates the circuit on a sparse vector.
    pub fn eval(&self, mut v: SparseVec) -> SparseVec {
        let n = self.n as u64;
        for (arity, step) in &self.steps {
            if v.is_empty() {
                break;
            }
            v = match step {
                Step::Map { offset, map } => {
                    let a = map.in_arity();
                    let b = map.out_arity();
                    let lo_count = arity - offset - a;
                    let lo_base = n.pow(lo_count as u32);
                    let mid_base = n.pow(a as u32);
                    let out_base = n.pow(b as u32);
                    let mut acc = Vec::with_capacity(v.len());
                    for (idx, c) in &v {
                        let lo = idx % lo_base;
                        let rest = idx / lo_base;
                        let mid = rest % mid_base;
                        let hi = rest / mid_base;
                        for (o, s) in map.column(mid) {
                            acc.push(((hi * out_base + o) * lo_base + lo, c * s));
                        }
                    }
                    normalize(acc)
                }
                Step::Permute(perm) => {
                    let k = perm.len();
                    let mut src = [0u64; MAX_ARITY];
                    let mut dst = [0u64; MAX_ARITY];
                    let moved: Vec<(u64, Scalar)> = v
                        .into_iter()
                        .map(|(mut idx, c)| {
                            for d in src[..k].iter_mut().rev() {
                                *d = idx % n;
                                idx /= n;
                            }
                            for (j, &p) in perm.iter().enumerate() {
                                dst[p] = src[j];
                            }
                            let flat = dst[..k].iter().fold(0u64, |acc, &d| acc * n + d);
                            (flat, c)
                        })
                        .collect();
                    normalize(moved)
                }
                Step::Scale(s) => v
                    .into_iter()
                    .map(|(i, c)| (i, &c * s))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            };
        }
        v
    }

    /// Evaluates every column.
    pub fn materialize(&self) -> Result<TensorMap> {
        let in_dim = self.in_dim()?;
        TensorMap::zero(self.ring, self.n, self.in_arity, self.out_arity)?;
        let cols = (0..in_dim)
            .into_par_iter()
            .map(|i| self.eval_basis(i))
            .collect();
        Ok(TensorMap::from_columns_unchecked(
            self.ring,
            self.n,
            self.in_arity,
            self.out_arity,
            cols,
        ))
    }

    /// Exact comparison against `other` using the process-wide threshold.
    pub fn compare(&self, other: &Circuit) -> Result<Comparison> {
        self.compare_with(other, stream_threshold())
    }

    /// Exact comparison. Materializes both sides when the flattened dimension
    /// is at most `threshold`, otherwise streams column by column.
    pub fn compare_with(&self, other: &Circuit, threshold: u64) -> Result<Comparison> {
        let mode = if self.in_dim()?.max(self.out_dim()?) <= threshold {
            CompareMode::Dense
        } else {
            CompareMode::Streaming
        };
        self.compare_in_mode(other, mode)
    }

    pub fn compare_in_mode(&self, other: &Circuit, mode: CompareMode) -> Result<Comparison> {
        if self.ring != other.ring || self.n != other.n {
            return Err(Error::shape("comparing circuits over different spaces"));
        }
        if self.in_arity != other.in_arity || self.out_arity != other.out_arity {
            return Err(Error::shape(format!(
                "comparing {}->{} with {}->{}",
                self.in_arity, self.out_arity, other.in_arity, other.out_arity
            )));
        }
        let in_dim = self.in_dim()?;
        let out_dim = self.out_dim()?;
        let mut witnesses = Vec::new();
        match mode {
            CompareMode::Dense => {
                let a = self.materialize()?;
                let b = other.materialize()?;
                for i in 0..in_dim {
                    self.diff_column(i, a.column(i), b.column(i), &mut witnesses);
                    if witnesses.len() >= MAX_WITNESSES {
                        break;
                    }
                }
            }
            CompareMode::Streaming => {
                const CHUNK: u64 = 1 << 12;
                let mut start = 0;
                while start < in_dim && witnesses.len() < MAX_WITNESSES {
                    let end = (start + CHUNK).min(in_dim);
                    let found: Vec<Vec<Witness>> = (start..end)
                        .into_par_iter()
                        .map(|i| {
                            let mut w = Vec::new();
                            self.diff_column(i, &self.eval_basis(i), &other.eval_basis(i), &mut w);
                            w
                        })
                        .collect();
                    for w in found {
                        witnesses.extend(w);
                    }
                    start = end;
                }
            }
        }
        witnesses.truncate(MAX_WITNESSES);
        Ok(Comparison {
            equal: witnesses.is_empty(),
            mode,
            in_dim,
            out_dim,
            witnesses,
        })
    }

    fn diff_column(&self, input: u64, a: &[(u64, Scalar)], b: &[(u64, Scalar)], out: &mut Vec<Witness>) {
        let zero = self.ring.zero();
        let (mut i, mut j) = (0, 0);
        while (i < a.len() || j < b.len()) && out.len() < MAX_WITNESSES {
            let ai = a.get(i).map(|t| t.0).unwrap_or(u64::MAX);
            let bj = b.get(j).map(|t| t.0).unwrap_or(u64::MAX);
            let (o, lhs, rhs) = if ai == bj {
                i += 1;
                j += 1;
                if a[i - 1].1 == b[j - 1].1 {
                    continue;
                }
                (ai, a[i - 1].1.clone(), b[j - 1].1.clone())
            } else if ai < bj {
                i += 1;
                (ai, a[i - 1].1.clone(), zero.clone())
            } else {
                j += 1;
                (bj, zero.clone(), b[j - 1].1.clone())
            };
            out.push(Witness {
                output: MultiIndex::from_flat(self.n, self.out_arity, o),
                input: MultiIndex::from_flat(self.n, self.in_arity, input),
                lhs,
                rhs,
            });
        }
    }
}

impl From<TensorMap> for Circuit {
    fn from(map: TensorMap) -> Circuit {
        Circuit::from_map(map)
    }
}

impl From<Arc<TensorMap>> for Circuit {
    fn from(map: Arc<TensorMap>) -> Circuit {
        Circuit::from_map(map)
    }
}

pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    Dense,
    Streaming,
}

/// A differing entry: `lhs` and `rhs` coefficients at `(output, input)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub output: MultiIndex,
    pub input: MultiIndex,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Outcome of an exact map comparison. Witnesses are capped and ordered by
/// input index, then output index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub mode: CompareMode,
    pub in_dim: u64,
    pub out_dim: u64,
    pub witnesses: Vec<Witness>,
}

/// A named equality between two circuits.
#[derive(Debug, Clone)]
pub struct Equation {
    pub name: String,
    pub lhs: Circuit,
    pub rhs: Circuit,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: impl Into<Circuit>, rhs: impl Into<Circuit>) -> Equation {
        Equation {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn verify(&self) -> Result<Comparison> {
        self.lhs.compare(&self.rhs)
    }

    /// True iff both sides agree exactly; shape errors count as failure.
    pub fn holds(&self) -> bool {
        self.verify().map(|c| c.equal).unwrap_or(false)
    }
}

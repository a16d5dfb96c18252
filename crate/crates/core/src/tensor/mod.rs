//! Sparse exact linear maps `X^{⊗a} → X^{⊗b}` over a rank-`n` free module.
//!
//! Basis vectors of `X^{⊗a}` are flattened big-endian: the multi-index
//! `(i_0, …, i_{a-1})` sits at `Σ i_k · n^{a-1-k}`, so the leftmost tensor
//! factor is the most significant digit.
//!
//! Composition follows diagram order: `f.compose(&g)` is "`f` then `g`".

mod circuit;
mod solve;
mod text;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Once;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

pub use circuit::{Circuit, Comparison, CompareMode, Equation, Witness};
pub use solve::solve_right_null;
pub use text::{parse_tensor_text, write_tensor_text};

/// Sorted by index, no zero coefficients.
pub type SparseVec = Vec<(u64, Scalar)>;

/// An element of `X^{⊗b}`: a map with input arity zero.
pub type Vector = TensorMap;

/// Largest input dimension a [`TensorMap`] will materialize.
pub const MAX_MATERIALIZED_INPUTS: u64 = 1 << 24;

/// Flattened dimension above which equality checks stream column by column.
pub const DEFAULT_STREAM_THRESHOLD: u64 = 100_000;

static STREAM_THRESHOLD: AtomicU64 = AtomicU64::new(DEFAULT_STREAM_THRESHOLD);
static THRESHOLD_FROM_ENV: Once = Once::new();

/// The dense/streaming switch point, initialised from `BFL_STREAM_THRESHOLD`.
pub fn stream_threshold() -> u64 {
    THRESHOLD_FROM_ENV.call_once(|| {
        if let Some(v) = std::env::var("BFL_STREAM_THRESHOLD")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            STREAM_THRESHOLD.store(v, Ordering::Relaxed);
        }
    });
    STREAM_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_stream_threshold(threshold: u64) {
    THRESHOLD_FROM_ENV.call_once(|| {});
    STREAM_THRESHOLD.store(threshold, Ordering::Relaxed);
}

/// `n^arity`, or a shape error on overflow.
pub fn dim(n: usize, arity: usize) -> Result<u64> {
    (n as u64)
        .checked_pow(arity as u32)
        .ok_or_else(|| Error::shape(format!("dimension {n}^{arity} overflows")))
}

/// A basis label of `X^{⊗arity}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn from_flat(n: usize, arity: usize, mut flat: u64) -> MultiIndex {
        let mut digits = vec![0; arity];
        for d in digits.iter_mut().rev() {
            *d = (flat % n as u64) as usize;
            flat /= n as u64;
        }
        MultiIndex(digits)
    }

    pub fn flatten(&self, n: usize) -> u64 {
        self.0.iter().fold(0u64, |acc, &d| acc * n as u64 + d as u64)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Sorts, merges duplicate indices and drops zeros.
pub(crate) fn normalize(mut terms: Vec<(u64, Scalar)>) -> SparseVec {
    if terms.len() <= 1 {
        terms.retain(|(_, c)| !c.is_zero());
        return terms;
    }
    terms.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => acc.add_assign_ref(&c),
            _ => {
                if let Some((_, last)) = out.last() {
                    if last.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, c));
            }
        }
    }
    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
        out.pop();
    }
    out
}

/// A linear map between tensor powers of `X`, stored column by column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorMap {
    ring: Ring,
    n: usize,
    in_arity: usize,
    out_arity: usize,
    cols: Vec<SparseVec>,
}

impl fmt::Debug for TensorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TensorMap({} n={} {}->{} nnz={})",
            self.ring,
            self.n,
            self.in_arity,
            self.out_arity,
            self.nnz()
        )
    }
}

impl TensorMap {
    fn check_shape(n: usize, in_arity: usize, out_arity: usize) -> Result<(u64, u64)> {
        if n == 0 {
            return Err(Error::shape("rank must be positive"));
        }
        let in_dim = dim(n, in_arity)?;
        let out_dim = dim(n, out_arity)?;
        if in_dim > MAX_MATERIALIZED_INPUTS {
            return Err(Error::shape(format!(
                "input dimension {in_dim} too large to materialize"
            )));
        }
        Ok((in_dim, out_dim))
    }

    pub fn zero(ring: Ring, n: usize, in_arity: usize, out_arity: usize) -> Result<TensorMap> {
        let (in_dim, _) = Self::check_shape(n, in_arity, out_arity)?;
        Ok(TensorMap {
            ring,
            n,
            in_arity,
            out_arity,
            cols: vec![Vec::new(); in_dim as usize],
        })
    }

    pub fn identity(ring: Ring, n: usize, arity: usize) -> Result<TensorMap> {
        let (d, _) = Self::check_shape(n, arity, arity)?;
        Ok(TensorMap {
            ring,
            n,
            in_arity: arity,
            out_arity: arity,
            cols: (0..d).map(|i| vec![(i, ring.one())]).collect(),
        })
    }

    /// Builds a map from `(out, in, coefficient)` triples of flat indices;
    /// repeated positions are summed.
    pub fn from_entries(
        ring: Ring,
        n: usize,
        in_arity: usize,
        out_arity: usize,
        entries: impl IntoIterator<Item = (u64, u64, Scalar)>,
    ) -> Result<TensorMap> {
        let (in_dim, out_dim) = Self::check_shape(n, in_arity, out_arity)?;
        let mut cols: Vec<Vec<(u64, Scalar)>> = vec![Vec::new(); in_dim as usize];
        for (o, i, c) in entries {
            if o >= out_dim || i >= in_dim {
                return Err(Error::shape(format!(
                    "entry ({o} <- {i}) outside {out_dim}x{in_dim}"
                )));
            }
            if c.ring() != ring {
                return Err(Error::shape(format!(
                    "scalar in {} for map over {ring}",
                    c.ring()
                )));
            }
            cols[i as usize].push((o, c));
        }
        Ok(TensorMap {
            ring,
            n,
            in_arity,
            out_arity,
            cols: cols.into_iter().map(normalize).collect(),
        })
    }

    pub(crate) fn from_columns_unchecked(
        ring: Ring,
        n: usize,
        in_arity: usize,
        out_arity: usize,
        cols: Vec<SparseVec>,
    ) -> TensorMap {
        debug_assert_eq!(cols.len() as u64, dim(n, in_arity).unwrap());
        TensorMap {
            ring,
            n,
            in_arity,
            out_arity,
            cols,
        }
    }

    /// An element of `X^{⊗arity}` from `(flat index, coefficient)` terms.
    pub fn vector(
        ring: Ring,
        n: usize,
        arity: usize,
        terms: impl IntoIterator<Item = (u64, Scalar)>,
    ) -> Result<Vector> {
        Self::from_entries(ring, n, 0, arity, terms.into_iter().map(|(o, c)| (o, 0, c)))
    }

    /// The basis vector `e_{digits}`.
    pub fn basis_vector(ring: Ring, n: usize, digits: &[usize]) -> Result<Vector> {
        if digits.iter().any(|&d| d >= n) {
            return Err(Error::shape(format!("basis digit out of range for rank {n}")));
        }
        let idx = MultiIndex(digits.to_vec()).flatten(n);
        Self::vector(ring, n, digits.len(), [(idx, ring.one())])
    }

    /// A scalar as a map `k → k`.
    pub fn scalar(ring: Ring, n: usize, c: Scalar) -> Result<TensorMap> {
        Self::vector(ring, n, 0, [(0, c)])
    }

    /// The factor permutation sending input factor `k` to output position `perm[k]`.
    pub fn permute(ring: Ring, n: usize, perm: &[usize]) -> Result<TensorMap> {
        validate_perm(perm)?;
        let arity = perm.len();
        let (d, _) = Self::check_shape(n, arity, arity)?;
        let cols = (0..d)
            .map(|i| {
                let src = MultiIndex::from_flat(n, arity, i);
                let mut dst = vec![0; arity];
                for (k, &p) in perm.iter().enumerate() {
                    dst[p] = src.0[k];
                }
                vec![(MultiIndex(dst).flatten(n), ring.one())]
            })
            .collect();
        Ok(Self::from_columns_unchecked(ring, n, arity, arity, cols))
    }

    /// The swap `τ(x ⊗ y) = y ⊗ x`.
    pub fn swap(ring: Ring, n: usize) -> Result<TensorMap> {
        Self::permute(ring, n, &[1, 0])
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

    pub fn in_dim(&self) -> u64 {
        self.cols.len() as u64
    }

    pub fn out_dim(&self) -> u64 {
        dim(self.n, self.out_arity).expect("validated at construction")
    }

    pub fn column(&self, input: u64) -> &[(u64, Scalar)] {
        &self.cols[input as usize]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn entry(&self, out: u64, input: u64) -> Scalar {
        let col = &self.cols[input as usize];
        match col.binary_search_by_key(&out, |(o, _)| *o) {
            Ok(pos) => col[pos].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    /// Nonzero `(out, in, coefficient)` triples, ordered by input then output.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, &Scalar)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(i, col)| col.iter().map(move |(o, c)| (*o, i as u64, c)))
    }

    /// Terms of a vector (input arity zero).
    pub fn terms(&self) -> &[(u64, Scalar)] {
        debug_assert_eq!(self.in_arity, 0);
        &self.cols[0]
    }

    fn same_space(&self, other: &TensorMap, what: &str) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::shape(format!(
                "{what}: ring mismatch ({} vs {})",
                self.ring, other.ring
            )));
        }
        if self.n != other.n {
            return Err(Error::shape(format!(
                "{what}: rank mismatch ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// `self` then `next`.
    pub fn compose(&self, next: &TensorMap) -> Result<TensorMap> {
        self.same_space(next, "compose")?;
        if self.out_arity != next.in_arity {
            return Err(Error::shape(format!(
                "compose: output arity {} does not match input arity {}",
                self.out_arity, next.in_arity
            )));
        }
        let cols = self
            .cols
            .par_iter()
            .map(|col| next.apply_sparse(col))
            .collect();
        Ok(Self::from_columns_unchecked(
            self.ring,
            self.n,
            self.in_arity,
            next.out_arity,
            cols,
        ))
    }

    /// Applies the map to a sparse vector of `X^{⊗in_arity}`.
    pub fn apply_sparse(&self, v: &[(u64, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (k, a) in v {
            for (o, b) in &self.cols[*k as usize] {
                acc.push((*o, a * b));
            }
        }
        normalize(acc)
    }

    /// The Kronecker product; `self` occupies the leftmost factors.
    pub fn tensor(&self, other: &TensorMap) -> Result<TensorMap> {
        self.same_space(other, "tensor")?;
        let (in_dim, _) = Self::check_shape(
            self.n,
            self.in_arity + other.in_arity,
            self.out_arity + other.out_arity,
        )?;
        let other_out = other.out_dim();
        let other_in = other.in_dim();
        let cols = (0..in_dim)
            .into_par_iter()
            .map(|i| {
                let left = &self.cols[(i / other_in) as usize];
                let right = &other.cols[(i % other_in) as usize];
                let mut col = Vec::with_capacity(left.len() * right.len());
                for (lo, lc) in left {
                    for (ro, rc) in right {
                        col.push((lo * other_out + ro, lc * rc));
                    }
                }
                // Lexicographic in (lo, ro) is already sorted.
                col
            })
            .collect();
        Ok(Self::from_columns_unchecked(
            self.ring,
            self.n,
            self.in_arity + other.in_arity,
            self.out_arity + other.out_arity,
            cols,
        ))
    }

    /// `f ⊗ g ⊗ …` for a list of maps.
    pub fn tensor_all<'a>(maps: impl IntoIterator<Item = &'a TensorMap>) -> Result<TensorMap> {
        let mut iter = maps.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::shape("tensor of an empty list"))?;
        iter.try_fold(first.clone(), |acc, m| acc.tensor(m))
    }

    /// Applies `self` to a vector.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.in_arity != 0 {
            return Err(Error::shape("apply expects a vector (input arity 0)"));
        }
        v.compose(self)
    }

    pub fn scale(&self, c: &Scalar) -> TensorMap {
        assert_eq!(c.ring(), self.ring, "scale: scalar from another ring");
        let cols = self
            .cols
            .iter()
            .map(|col| {
                if c.is_zero() {
                    Vec::new()
                } else {
                    col.iter().map(|(o, x)| (*o, x * c)).collect()
                }
            })
            .collect();
        Self::from_columns_unchecked(self.ring, self.n, self.in_arity, self.out_arity, cols)
    }

    fn check_same_shape(&self, other: &TensorMap, what: &str) -> Result<()> {
        self.same_space(other, what)?;
        if self.in_arity != other.in_arity || self.out_arity != other.out_arity {
            return Err(Error::shape(format!(
                "{what}: arity mismatch ({}->{} vs {}->{})",
                self.in_arity, self.out_arity, other.in_arity, other.out_arity
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorMap) -> Result<TensorMap> {
        self.check_same_shape(other, "add")?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| normalize(a.iter().chain(b.iter()).cloned().collect()))
            .collect();
        Ok(Self::from_columns_unchecked(
            self.ring,
            self.n,
            self.in_arity,
            self.out_arity,
            cols,
        ))
    }

    pub fn sub(&self, other: &TensorMap) -> Result<TensorMap> {
        self.add(&other.scale(&-&self.ring.one()))
    }

    /// The transpose `X^{⊗b} → X^{⊗a}` with respect to the standard basis.
    pub fn transpose(&self) -> Result<TensorMap> {
        let entries: Vec<_> = self.entries().map(|(o, i, c)| (i, o, c.clone())).collect();
        Self::from_entries(self.ring, self.n, self.out_arity, self.in_arity, entries)
    }

    /// Replaces one entry; zero removes it.
    pub fn with_entry(&self, out: u64, input: u64, value: Scalar) -> Result<TensorMap> {
        if input >= self.in_dim() || out >= self.out_dim() {
            return Err(Error::shape("with_entry: index out of range"));
        }
        let mut m = self.clone();
        let col = &mut m.cols[input as usize];
        col.retain(|(o, _)| *o != out);
        if !value.is_zero() {
            col.push((out, value));
            col.sort_unstable_by_key(|(o, _)| *o);
        }
        Ok(m)
    }

    /// The single coefficient of a `k → k` map.
    pub fn as_scalar(&self) -> Result<Scalar> {
        if self.in_arity != 0 || self.out_arity != 0 {
            return Err(Error::shape("not a scalar map"));
        }
        Ok(self.entry(0, 0))
    }
}

pub(crate) fn validate_perm(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::shape(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

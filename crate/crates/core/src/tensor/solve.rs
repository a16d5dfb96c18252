use super::{dim, TensorMap, Vector};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

const MAX_DENSE: u64 = 1 << 13;

/// Dense row-major matrix used only for elimination.
struct Dense {
    rows: Vec<Vec<Scalar>>,
    width: usize,
}

impl Dense {
    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.width {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().expect("pivot is nonzero");
            for x in self.rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// A basis of `{ v : M v = 0 for every M in family }`.
///
/// All maps must share ring, rank and input arity. One basis vector is
/// produced per free column of the stacked system, in increasing column order,
/// with that free coordinate set to one.
pub fn solve_right_null(family: &[TensorMap]) -> Result<Vec<Vector>> {
    let first = family
        .first()
        .ok_or_else(|| Error::shape("solve_right_null needs at least one map"))?;
    let (ring, n, arity) = (first.ring(), first.n(), first.in_arity());
    for m in family {
        if m.ring() != ring || m.n() != n || m.in_arity() != arity {
            return Err(Error::shape("solve_right_null: maps do not share a domain"));
        }
    }
    let width = dim(n, arity)?;
    if width > MAX_DENSE {
        return Err(Error::shape("solve_right_null: system too large"));
    }
    let width = width as usize;
    let mut rows = Vec::new();
    for m in family {
        let mut block = vec![vec![ring.zero(); width]; m.out_dim() as usize];
        for (o, i, c) in m.entries() {
            block[o as usize][i as usize] = c.clone();
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    let mut system = Dense { rows, width };
    let pivots = system.rref();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut terms = vec![(free as u64, ring.one())];
        for (row, &p) in pivots.iter().enumerate() {
            let c = &system.rows[row][free];
            if !c.is_zero() {
                terms.push((p as u64, -c));
            }
        }
        basis.push(TensorMap::vector(ring, n, arity, terms)?);
    }
    Ok(basis)
}

impl TensorMap {
    /// The inverse of an invertible endomorphism, by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<TensorMap> {
        if self.in_arity() != self.out_arity() {
            return Err(Error::shape("only endomorphisms can be inverted"));
        }
        let d = self.in_dim();
        if d > MAX_DENSE {
            return Err(Error::shape("inverse: matrix too large"));
        }
        let d = d as usize;
        let ring: Ring = self.ring();
        let mut rows = vec![vec![ring.zero(); 2 * d]; d];
        for (o, i, c) in self.entries() {
            rows[o as usize][i as usize] = c.clone();
        }
        for (k, row) in rows.iter_mut().enumerate() {
            row[d + k] = ring.one();
        }
        let mut m = Dense { rows, width: 2 * d };
        let pivots = m.rref();
        if pivots.len() < d || pivots[d - 1] != d - 1 {
            return Err(Error::shape("map is singular"));
        }
        let entries = m.rows.iter().enumerate().flat_map(|(o, row)| {
            row[d..]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (o as u64, i as u64, c.clone()))
        });
        TensorMap::from_entries(ring, self.n(), self.in_arity(), self.out_arity(), entries)
    }

    /// Rank of the map viewed as a matrix.
    pub fn rank(&self) -> Result<usize> {
        let (rows, cols) = (self.out_dim(), self.in_dim());
        if rows > MAX_DENSE || cols > MAX_DENSE {
            return Err(Error::shape("rank: matrix too large"));
        }
        let mut dense = vec![vec![self.ring().zero(); cols as usize]; rows as usize];
        for (o, i, c) in self.entries() {
            dense[o as usize][i as usize] = c.clone();
        }
        let mut m = Dense {
            rows: dense,
            width: cols as usize,
        };
        Ok(m.rref().len())
    }
}

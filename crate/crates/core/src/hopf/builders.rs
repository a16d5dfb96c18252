use super::{Family, HopfAlgebra, HopfParts};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::tensor::TensorMap;

fn rank_of(orders: &[usize]) -> Result<usize> {
    if orders.is_empty() {
        return Err(Error::config("a group needs at least one cyclic factor"));
    }
    if orders.contains(&0) {
        return Err(Error::config("cyclic orders must be at least 1"));
    }
    orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o))
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::config("group is too large"))
}

/// Mixed-radix digits of `g`, first factor most significant.
fn digits(orders: &[usize], mut g: usize) -> Vec<usize> {
    let mut d = vec![0; orders.len()];
    for (slot, &o) in d.iter_mut().zip(orders).rev() {
        *slot = g % o;
        g /= o;
    }
    d
}

fn undigits(orders: &[usize], d: &[usize]) -> usize {
    d.iter().zip(orders).fold(0, |acc, (&x, &o)| acc * o + x)
}

fn group_label(orders: &[usize], g: usize) -> String {
    let d = digits(orders, g);
    let single = orders.len() == 1;
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            let base = if single { "g".to_string() } else { format!("g{}", i + 1) };
            if x == 1 {
                base
            } else {
                format!("{base}^{x}")
            }
        })
        .collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join("*")
    }
}

/// `k[G]` for `G = Z_{o₁} × … × Z_{o_m}`. Basis elements are enumerated in
/// mixed radix with the first factor most significant; index 0 is `e`.
pub fn build_group_algebra(ring: Ring, orders: &[usize]) -> Result<HopfAlgebra> {
    build_group_parts(ring, orders, true)
}

fn build_group_parts(ring: Ring, orders: &[usize], check: bool) -> Result<HopfAlgebra> {
    let n = rank_of(orders)?;
    let one = ring.one();
    let op = |a: usize, b: usize| {
        let (da, db) = (digits(orders, a), digits(orders, b));
        let sum: Vec<usize> = da.iter().zip(&db).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
        undigits(orders, &sum)
    };
    let inv = |a: usize| {
        let d: Vec<usize> = digits(orders, a).iter().zip(orders).map(|(x, o)| (o - x) % o).collect();
        undigits(orders, &d)
    };
    let (nn, n64) = (n * n, n as u64);
    let mut mu = Vec::with_capacity(nn);
    for a in 0..n {
        for b in 0..n {
            mu.push((op(a, b) as u64, (a * n + b) as u64, one.clone()));
        }
    }
    let parts = HopfParts {
        mu: TensorMap::from_entries(ring, n, 2, 1, mu)?,
        unit: TensorMap::from_entries(ring, n, 0, 1, [(0, 0, one.clone())])?,
        delta: TensorMap::from_entries(
            ring,
            n,
            1,
            2,
            (0..n64).map(|g| (g * n64 + g, g, one.clone())),
        )?,
        counit: TensorMap::from_entries(ring, n, 1, 0, (0..n64).map(|g| (0, g, one.clone())))?,
        antipode: TensorMap::from_entries(
            ring,
            n,
            1,
            1,
            (0..n).map(|g| (inv(g) as u64, g as u64, one.clone())),
        )?,
    };
    let labels = (0..n).map(|g| group_label(orders, g)).collect();
    let family = Family::Group {
        orders: orders.to_vec(),
    };
    HopfAlgebra::from_parts(parts, labels, family, check)
}

/// `k[G]*`, the transpose dual of [`build_group_algebra`]. The basis is the
/// delta functions on group elements, in the same order.
pub fn build_dual_group_algebra(ring: Ring, orders: &[usize]) -> Result<HopfAlgebra> {
    let g = build_group_parts(ring, orders, false)?;
    let family = Family::DualGroup {
        orders: orders.to_vec(),
    };
    let d = g.dual(family.clone())?;
    let labels = g.labels().iter().map(|l| format!("d_{l}")).collect();
    HopfAlgebra::from_parts(d.parts(), labels, family, true)
}

/// Exponent vectors of `vars` variables, each below `top`, in graded
/// lexicographic order: by total degree, then with larger exponents on
/// earlier variables first.
fn graded_lex(top: usize, vars: usize) -> Vec<Vec<usize>> {
    let total = top.pow(vars as u32);
    let mut all: Vec<Vec<usize>> = (0..total)
        .map(|mut i| {
            let mut e = vec![0; vars];
            for slot in e.iter_mut().rev() {
                *slot = i % top;
                i /= top;
            }
            e
        })
        .collect();
    all.sort_by(|a, b| {
        let (da, db): (usize, usize) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    all
}

fn monomial_label(e: &[usize]) -> String {
    let single = e.len() == 1;
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            let base = if single { "X".to_string() } else { format!("X{}", i + 1) };
            if x == 1 {
                base
            } else {
                format!("{base}^{x}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `F_p[X₁..X_vars]/(X_i^{p^k})` with every `X_i` primitive. Requires `ring`
/// to be `F_p` for the same `p`.
pub fn build_truncated_polynomial(ring: Ring, p: u64, k: u32, vars: usize) -> Result<HopfAlgebra> {
    if ring != Ring::PrimeField(p) {
        return Err(Error::config(format!(
            "truncated polynomial algebra with p = {p} needs ring Fp:{p}, found {ring}"
        )));
    }
    if k < 1 || vars < 1 {
        return Err(Error::config("truncated polynomial needs k >= 1 and vars >= 1"));
    }
    let top = p
        .checked_pow(k)
        .filter(|&t| t <= 1 << 12)
        .ok_or_else(|| Error::config("truncation degree too large"))? as usize;
    let n = top
        .checked_pow(vars as u32)
        .filter(|&n| n <= 1 << 12)
        .ok_or_else(|| Error::config("truncated polynomial algebra too large"))?;
    let basis = graded_lex(top, vars);
    let index: std::collections::HashMap<&[usize], usize> =
        basis.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();

    // Pascal's triangle mod p up to top - 1.
    let mut binom = vec![vec![0u64; top]; top];
    for a in 0..top {
        binom[a][0] = 1;
        for j in 1..=a {
            binom[a][j] = (binom[a - 1][j - 1] + if j < a { binom[a - 1][j] } else { 0 }) % p;
        }
    }
    let scalar = |c: u64| ring.from_i64(c as i64);
    let n64 = n as u64;

    let mut mu = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&s| s < top) {
                mu.push((index[sum.as_slice()] as u64, (i * n + j) as u64, ring.one()));
            }
        }
    }

    let mut delta = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        // Δ(X^a) = Π_v Σ_j C(a_v, j) X_v^j ⊗ X_v^{a_v - j}
        let mut terms: Vec<(Vec<usize>, Vec<usize>, u64)> = vec![(Vec::new(), Vec::new(), 1)];
        for &av in a {
            let mut next = Vec::new();
            for (l, r, c) in &terms {
                for (j, &b) in binom[av].iter().enumerate().take(av + 1) {
                    if b == 0 {
                        continue;
                    }
                    let (mut l, mut r) = (l.clone(), r.clone());
                    l.push(j);
                    r.push(av - j);
                    next.push((l, r, c * b % p));
                }
            }
            terms = next;
        }
        for (l, r, c) in terms {
            let out = index[l.as_slice()] as u64 * n64 + index[r.as_slice()] as u64;
            delta.push((out, i as u64, scalar(c)));
        }
    }

    let antipode = basis.iter().enumerate().map(|(i, a)| {
        let deg: usize = a.iter().sum();
        let c: Scalar = if deg.is_multiple_of(2) { ring.one() } else { -ring.one() };
        (i as u64, i as u64, c)
    });

    let parts = HopfParts {
        mu: TensorMap::from_entries(ring, n, 2, 1, mu)?,
        unit: TensorMap::from_entries(ring, n, 0, 1, [(0, 0, ring.one())])?,
        delta: TensorMap::from_entries(ring, n, 1, 2, delta)?,
        counit: TensorMap::from_entries(ring, n, 1, 0, [(0, 0, ring.one())])?,
        antipode: TensorMap::from_entries(ring, n, 1, 1, antipode)?,
    };
    let labels = basis.iter().map(|e| monomial_label(e)).collect();
    HopfAlgebra::from_parts(parts, labels, Family::TruncatedPoly { p, k, vars }, true)
}

//! The quantum heap operation and the braidings it induces.
//!
//! Wire positions below are X-factors. `V = X⊗X` occupies two adjacent wires.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::integral::CupCap;
use crate::tensor::{Circuit, Comparison, Equation, TensorMap};

/// `T(x⊗y⊗z) = xS(y)z`.
pub fn build_heap_t(h: &HopfAlgebra) -> Result<TensorMap> {
    if !h.is_involutory() {
        return Err(Error::NotCommutative("the heap operation needs S² = 1".into()));
    }
    heap_circuit(h)?.materialize()
}

fn heap_circuit(h: &HopfAlgebra) -> Result<Circuit> {
    h.wires(3).then(1, h.antipode())?.then(0, h.mu())?.then(0, h.mu())
}

/// The heap operation together with the braidings built from it.
#[derive(Debug, Clone)]
pub struct BraidData {
    pub t: Arc<TensorMap>,
    /// `Δ^(3)`, shared by several constructions.
    pub delta3: Arc<TensorMap>,
    pub beta1: Arc<TensorMap>,
    pub beta1_inv: Arc<TensorMap>,
    pub beta: Arc<TensorMap>,
    pub beta_inv: Arc<TensorMap>,
}

impl BraidData {
    pub fn build(h: &HopfAlgebra) -> Result<BraidData> {
        let t = Arc::new(build_heap_t(h)?);
        let delta3 = Arc::new(h.sweedler(3)?);
        let beta1 = Arc::new(beta1_circuit(h, &t)?.materialize()?);
        let beta1_inv = Arc::new(beta1_inv_circuit(h, &t)?.materialize()?);
        let beta = Arc::new(beta_circuit(h, &t, &delta3)?.materialize()?);
        let beta_inv = Arc::new(beta_inv_circuit(h, &t, &delta3)?.materialize()?);
        Ok(BraidData {
            t,
            delta3,
            beta1,
            beta1_inv,
            beta,
            beta_inv,
        })
    }
}

/// `β₁(x⊗y⊗z) = y⁽¹⁾⊗z⁽¹⁾⊗T(x⊗y⁽²⁾⊗z⁽²⁾)`.
pub fn beta1_circuit(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Circuit> {
    // (x, y1, y2, z1, z2) -> (y1, z1, x, y2, z2)
    h.wires(3)
        .then(2, h.delta())?
        .then(1, h.delta())?
        .then_select(&[1, 3, 0, 2, 4])?
        .then(2, t)
}

/// `β₁⁻¹(y⊗z⊗x) = T(x⊗z⁽²⁾⊗y⁽²⁾)⊗y⁽¹⁾⊗z⁽¹⁾`.
pub fn beta1_inv_circuit(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Circuit> {
    // (y1, y2, z1, z2, x) -> (x, z2, y2, y1, z1)
    h.wires(3)
        .then(1, h.delta())?
        .then(0, h.delta())?
        .then_select(&[4, 3, 1, 0, 2])?
        .then(0, t)
}

/// `β(x⊗x'⊗y⊗z) = y⁽¹⁾⊗z⁽¹⁾⊗T(x⊗y⁽²⁾⊗z⁽²⁾)⊗T(x'⊗y⁽³⁾⊗z⁽³⁾)`.
pub fn beta_circuit(h: &HopfAlgebra, t: &Arc<TensorMap>, delta3: &Arc<TensorMap>) -> Result<Circuit> {
    // (x, x', y1, y2, y3, z1, z2, z3) -> (y1, z1, x, y2, z2, x', y3, z3)
    h.wires(4)
        .then(3, delta3)?
        .then(2, delta3)?
        .then_select(&[2, 5, 0, 3, 6, 1, 4, 7])?
        .then(2, t)?
        .then(3, t)
}

/// `β⁻¹(y⊗z⊗x⊗x') = T(x⊗z⁽²⁾⊗y⁽²⁾)⊗T(x'⊗z⁽³⁾⊗y⁽³⁾)⊗y⁽¹⁾⊗z⁽¹⁾`.
pub fn beta_inv_circuit(h: &HopfAlgebra, t: &Arc<TensorMap>, delta3: &Arc<TensorMap>) -> Result<Circuit> {
    // (y1, y2, y3, z1, z2, z3, x, x') -> (x, z2, y2, x', z3, y3, y1, z1)
    h.wires(4)
        .then(1, delta3)?
        .then(0, delta3)?
        .then_select(&[6, 4, 1, 7, 5, 2, 0, 3])?
        .then(0, t)?
        .then(1, t)
}

/// Ternary self-distributivity on `(x, y, z, u, v)`:
/// `T(T(x,y,z),u,v) = T(T(x,u⁽¹⁾,v⁽¹⁾), T(y,u⁽²⁾,v⁽²⁾), T(z,u⁽³⁾,v⁽³⁾))`.
pub fn tsd_equation(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Equation> {
    let delta3 = Arc::new(h.sweedler(3)?);
    let lhs = h.wires(5).then(0, t)?.then(0, t)?;
    let rhs = h
        .wires(5)
        .then(4, &delta3)?
        .then(3, &delta3)?
        .then_select(&[0, 3, 6, 1, 4, 7, 2, 5, 8])?
        .then(6, t)?
        .then(3, t)?
        .then(0, t)?
        .then(0, t)?;
    Ok(Equation::new("tsd", lhs, rhs))
}

pub fn check_tsd(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Comparison> {
    tsd_equation(h, t)?.verify()
}

/// The variant with `x` in all three inner first slots, made linear as
/// `ε(y)ε(z)·T(T(x⁽¹⁾,u⁽¹⁾,v⁽¹⁾), T(x⁽²⁾,u⁽²⁾,v⁽²⁾), T(x⁽³⁾,u⁽³⁾,v⁽³⁾))`.
pub fn tsd_literal_equation(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Equation> {
    let delta3 = Arc::new(h.sweedler(3)?);
    let lhs = h.wires(5).then(0, t)?.then(0, t)?;
    // (x, y, z, u, v) -> (x, u, v) -> (x1, x2, x3, u1, u2, u3, v1, v2, v3)
    let rhs = h
        .wires(5)
        .then(2, h.counit())?
        .then(1, h.counit())?
        .then(2, &delta3)?
        .then(1, &delta3)?
        .then(0, &delta3)?
        .then_select(&[0, 3, 6, 1, 4, 7, 2, 5, 8])?
        .then(6, t)?
        .then(3, t)?
        .then(0, t)?
        .then(0, t)?;
    Ok(Equation::new("tsd_literal", lhs, rhs))
}

/// `T(T(x⊗y⁽²⁾⊗z⁽²⁾)⊗z⁽¹⁾⊗y⁽¹⁾) = ε(y)ε(z)x`.
pub fn invertible_tsd_equation(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Equation> {
    // (x, y1, y2, z1, z2) -> (x, y2, z2, z1, y1)
    let lhs = h
        .wires(3)
        .then(2, h.delta())?
        .then(1, h.delta())?
        .then_select(&[0, 2, 4, 3, 1])?
        .then(0, t)?
        .then(0, t)?;
    let rhs = h.wires(3).then(2, h.counit())?.then(1, h.counit())?;
    Ok(Equation::new("invertible_tsd", lhs, rhs))
}

pub fn check_invertible_tsd(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Comparison> {
    invertible_tsd_equation(h, t)?.verify()
}

/// `Δ∘T = (T⊗T)∘shuffle∘(Δ⊗Δ⊗Δ)`.
pub fn coalgebra_morphism_equation(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<Equation> {
    let lhs = h.wires(3).then(0, t)?.then(0, h.delta())?;
    let rhs = h
        .wires(3)
        .then(2, h.delta())?
        .then(1, h.delta())?
        .then(0, h.delta())?
        .then_select(&[0, 2, 4, 1, 3, 5])?
        .then(3, t)?
        .then(0, t)?;
    Ok(Equation::new("coalgebra_morphism", lhs, rhs))
}

/// `β₁β₁⁻¹ = 1 = β₁⁻¹β₁` and `ββ⁻¹ = 1 = β⁻¹β`.
pub fn inverse_equations(h: &HopfAlgebra, b: &BraidData) -> Vec<Equation> {
    let pair = |name: &str, f: &Arc<TensorMap>, g: &Arc<TensorMap>, arity| {
        let lhs = h.wires(arity).then(0, f).and_then(|c| c.then(0, g));
        lhs.map(|lhs| Equation::new(name, lhs, h.wires(arity)))
    };
    [
        pair("beta1_then_inverse", &b.beta1, &b.beta1_inv, 3),
        pair("beta1_inverse_then_beta1", &b.beta1_inv, &b.beta1, 3),
        pair("beta_then_inverse", &b.beta, &b.beta_inv, 4),
        pair("beta_inverse_then_beta", &b.beta_inv, &b.beta, 4),
    ]
    .into_iter()
    .map(|e| e.expect("arities are fixed"))
    .collect()
}

/// `β = (β₁⊗1)∘(1⊗β₁)`: `β₁` on the last three wires, then on the first three.
pub fn factorization_equation(h: &HopfAlgebra, b: &BraidData) -> Result<Equation> {
    let lhs = h.wires(4).then(0, &b.beta)?;
    let rhs = h.wires(4).then(1, &b.beta1)?.then(0, &b.beta1)?;
    Ok(Equation::new("beta_factorization", lhs, rhs))
}

/// `(R⊗1_V)(1_V⊗R)(R⊗1_V) = (1_V⊗R)(R⊗1_V)(1_V⊗R)` on `X^{⊗6}`, for any `R: X^{⊗4} → X^{⊗4}`.
pub fn ybe_equation(r: &Arc<TensorMap>) -> Result<Equation> {
    if r.in_arity() != 4 || r.out_arity() != 4 {
        return Err(Error::shape("YBE needs a map on V⊗V = X^4"));
    }
    let w = Circuit::identity(r.ring(), r.n(), 6);
    let lhs = w.clone().then(0, r)?.then(2, r)?.then(0, r)?;
    let rhs = w.then(2, r)?.then(0, r)?.then(2, r)?;
    Ok(Equation::new("ybe", lhs, rhs))
}

pub fn check_ybe(r: &Arc<TensorMap>) -> Result<Comparison> {
    ybe_equation(r)?.verify()
}

/// The swap of the two V factors, a control braiding.
pub fn tau_v(h: &HopfAlgebra) -> Result<TensorMap> {
    TensorMap::permute(h.ring(), h.n(), &[2, 3, 0, 1])
}

/// `(1^{⊗2}⊗∪)(β₁⊗1) = (∪⊗1^{⊗2})(1⊗β₁⁻¹)` as maps `X^{⊗4} → X^{⊗2}`.
pub fn passcup_equation(h: &HopfAlgebra, cc: &CupCap, b: &BraidData) -> Result<Equation> {
    let lhs = h.wires(4).then(0, &b.beta1)?.then(2, &cc.cup)?;
    let rhs = h.wires(4).then(1, &b.beta1_inv)?.then(0, &cc.cup)?;
    Ok(Equation::new("passcup", lhs, rhs))
}

/// The vertical mirror of passcup, `X^{⊗2} → X^{⊗4}`:
/// `(β₁⁻¹⊗1)(1^{⊗2}⊗∩) = (1⊗β₁)(∩⊗1^{⊗2})`.
pub fn passcap_equation(h: &HopfAlgebra, cc: &CupCap, b: &BraidData) -> Result<Equation> {
    let lhs = h.wires(2).then(2, &cc.cap)?.then(0, &b.beta1_inv)?;
    let rhs = h.wires(2).then(0, &cc.cap)?.then(1, &b.beta1)?;
    Ok(Equation::new("passcap", lhs, rhs))
}

pub fn check_passcup(h: &HopfAlgebra, cc: &CupCap, b: &BraidData) -> Result<Comparison> {
    passcup_equation(h, cc, b)?.verify()
}

pub fn check_passcap(h: &HopfAlgebra, cc: &CupCap, b: &BraidData) -> Result<Comparison> {
    passcap_equation(h, cc, b)?.verify()
}

/// Cup and cap commute with `β` when each consumes or produces a whole V slot:
/// `(1_V⊗∪)β = ∪⊗1_V`, `(∪⊗1_V)β = 1_V⊗∪`, `β(∩⊗1_V) = 1_V⊗∩`, `β(1_V⊗∩) = ∩⊗1_V`.
pub fn cupcap_braiding_equations(h: &HopfAlgebra, cc: &CupCap, beta: &Arc<TensorMap>) -> Result<Vec<Equation>> {
    Ok(vec![
        Equation::new(
            "cup_right_through_beta",
            h.wires(4).then(0, beta)?.then(2, &cc.cup)?,
            h.wires(4).then(0, &cc.cup)?,
        ),
        Equation::new(
            "cup_left_through_beta",
            h.wires(4).then(0, beta)?.then(0, &cc.cup)?,
            h.wires(4).then(2, &cc.cup)?,
        ),
        Equation::new(
            "cap_left_through_beta",
            h.wires(2).then(0, &cc.cap)?.then(0, beta)?,
            h.wires(2).then(2, &cc.cap)?,
        ),
        Equation::new(
            "cap_right_through_beta",
            h.wires(2).then(2, &cc.cap)?.then(0, beta)?,
            h.wires(2).then(0, &cc.cap)?,
        ),
    ])
}

/// `T(g⊗g⊗z) = z` for every group-like basis element `g` and basis `z`.
pub fn check_grouplike_degeneracy(h: &HopfAlgebra, t: &TensorMap) -> bool {
    let n = h.n() as u64;
    h.group_likes().iter().all(|&g| {
        (0..n).all(|z| {
            let col = t.column((g as u64 * n + g as u64) * n + z);
            col.len() == 1 && col[0].0 == z && col[0].1.is_one()
        })
    })
}

/// `β` sends every simple tensor of group-likes to a single group-like
/// simple tensor with coefficient one, bijectively.
pub fn check_grouplike_permutation(h: &HopfAlgebra, beta: &TensorMap) -> bool {
    let likes = h.group_likes();
    let n = h.n();
    let is_like = |i: u64| {
        crate::tensor::MultiIndex::from_flat(n, 4, i)
            .0
            .iter()
            .all(|d| likes.binary_search(d).is_ok())
    };
    let mut seen = std::collections::HashSet::new();
    for a in &likes {
        for b in &likes {
            for c in &likes {
                for d in &likes {
                    let input = crate::tensor::MultiIndex(vec![*a, *b, *c, *d]).flatten(n);
                    let col = beta.column(input);
                    if col.len() != 1 || !col[0].1.is_one() || !is_like(col[0].0) || !seen.insert(col[0].0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

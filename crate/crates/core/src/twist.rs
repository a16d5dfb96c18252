//! Twists: `θ` from the heap operation and `Θ` from a cup/cap loop.

use std::sync::Arc;

use crate::braid::BraidData;
use crate::error::Result;
use crate::frobenius::FrobeniusData;
use crate::hopf::HopfAlgebra;
use crate::tensor::{Circuit, Equation, TensorMap};

/// `θ(x⊗y) = T(x⁽¹⁾⊗x⁽²⁾⊗y⁽²⁾)⊗T(y⁽¹⁾⊗x⁽³⁾⊗y⁽³⁾)`.
pub fn theta_circuit(h: &HopfAlgebra, b: &BraidData) -> Result<Circuit> {
    // (x1, x2, x3, y1, y2, y3) -> (x1, x2, y2, y1, x3, y3)
    h.wires(2)
        .then(1, &b.delta3)?
        .then(0, &b.delta3)?
        .then_select(&[0, 1, 4, 3, 2, 5])?
        .then(3, &b.t)?
        .then(0, &b.t)
}

/// `y⁽²⁾⊗y⁽¹⁾S(x)y⁽³⁾`.
pub fn theta_core_circuit(h: &HopfAlgebra, b: &BraidData) -> Result<Circuit> {
    // (x, y1, y2, y3) -> (y2, y1, x, y3)
    h.wires(2)
        .then(1, &b.delta3)?
        .then_select(&[2, 1, 0, 3])?
        .then(1, &b.t)
}

/// The componentwise heap on `V = X⊗X`:
/// `T₂((x⊗x')⊗(y⊗y')⊗(z⊗z')) = T(x⊗y⊗z)⊗T(x'⊗y'⊗z')`.
pub fn double_tsd(h: &HopfAlgebra, t: &Arc<TensorMap>) -> Result<TensorMap> {
    h.wires(6)
        .then_select(&[0, 2, 4, 1, 3, 5])?
        .then(3, t)?
        .then(0, t)?
        .materialize()
}

/// `Δ^(3)` of the tensor-product coalgebra `X⊗X`, mapping `(a, a')` to
/// `(a⁽¹⁾, a'⁽¹⁾, a⁽²⁾, a'⁽²⁾, a⁽³⁾, a'⁽³⁾)`.
pub fn doubled_delta3(h: &HopfAlgebra, b: &BraidData) -> Result<TensorMap> {
    h.wires(2)
        .then(1, &b.delta3)?
        .then(0, &b.delta3)?
        .then_select(&[0, 3, 1, 4, 2, 5])?
        .materialize()
}

/// Expands an order on V-blocks to an order on X-wires.
fn blocks(order: &[usize]) -> Vec<usize> {
    order.iter().flat_map(|&b| [2 * b, 2 * b + 1]).collect()
}

/// Ternary self-distributivity of `T₂` over the coalgebra `X⊗X`, on `V^{⊗5}`.
pub fn doubled_tsd_equation(h: &HopfAlgebra, b: &BraidData, t2: &Arc<TensorMap>) -> Result<Equation> {
    let d3 = Arc::new(doubled_delta3(h, b)?);
    let lhs = h.wires(10).then(0, t2)?.then(0, t2)?;
    let rhs = h
        .wires(10)
        .then(8, &d3)?
        .then(6, &d3)?
        .then_select(&blocks(&[0, 3, 6, 1, 4, 7, 2, 5, 8]))?
        .then(12, t2)?
        .then(6, t2)?
        .then(0, t2)?
        .then(0, t2)?;
    Ok(Equation::new("doubled_tsd", lhs, rhs))
}

/// The ribbon action `(Z⊗Z')◁(y⊗z) = T(Z⊗y⁽¹⁾⊗z⁽¹⁾)⊗T(Z'⊗y⁽²⁾⊗z⁽²⁾)`, `X^{⊗4} → X^{⊗2}`.
pub fn ribbon_action(h: &HopfAlgebra, b: &BraidData) -> Result<Circuit> {
    // (Z, Z', y1, y2, z1, z2) -> (Z, y1, z1, Z', y2, z2)
    h.wires(4)
        .then(3, h.delta())?
        .then(2, h.delta())?
        .then_select(&[0, 2, 4, 1, 3, 5])?
        .then(3, &b.t)?
        .then(0, &b.t)
}

/// `T_V(A⊗B⊗D) = (A◁B)◁D`, `V^{⊗3} → V`.
fn ribbon_heap(h: &HopfAlgebra, b: &BraidData) -> Result<Circuit> {
    let act = ribbon_action(h, b)?;
    h.wires(6).then_at(0, &act)?.then_at(0, &act)
}

/// `θ_{V,V}(c⊗d) = T_V(c⁽¹⁾⊗c⁽²⁾⊗d⁽²⁾)⊗T_V(d⁽¹⁾⊗c⁽³⁾⊗d⁽³⁾)` for `c, d ∈ V`,
/// with Sweedler legs of the tensor-product coalgebra.
pub fn theta_doubled_circuit(h: &HopfAlgebra, b: &BraidData) -> Result<Circuit> {
    let tv = ribbon_heap(h, b)?;
    // (x1..3, y1..3, u1..3, v1..3) -> (x1,y1, x2,y2, u2,v2, u1,v1, x3,y3, u3,v3)
    h.wires(4)
        .then(3, &b.delta3)?
        .then(2, &b.delta3)?
        .then(1, &b.delta3)?
        .then(0, &b.delta3)?
        .then_select(&[0, 3, 1, 4, 7, 10, 6, 9, 2, 5, 8, 11])?
        .then_at(6, &tv)?
        .then_at(0, &tv)
}

/// `Θ = (1²⊗∪)(1³⊗∪⊗1)(R⊗1²)(1³⊗∩⊗1)(1²⊗∩)` for a braiding `R` on `V⊗V`.
pub fn loop_twist_circuit(f: &FrobeniusData, r: &Arc<TensorMap>) -> Result<Circuit> {
    f.h.wires(2)
        .then(2, &f.cc.cap)?
        .then(3, &f.cc.cap)?
        .then(0, r)?
        .then(3, &f.cc.cup)?
        .then(2, &f.cc.cup)
}

/// `R∘R∘(t⊗t)` on `V⊗V`, the doubled twist a tortile structure predicts.
pub fn tortile_doubled(h: &HopfAlgebra, t: &Arc<TensorMap>, r: &Arc<TensorMap>) -> Result<Circuit> {
    h.wires(4).then(0, t)?.then(2, t)?.then(0, r)?.then(0, r)
}

/// All twist maps of one algebra.
#[derive(Debug, Clone)]
pub struct TwistData {
    pub theta: Arc<TensorMap>,
    pub theta_core: Arc<TensorMap>,
    pub theta_inv: Arc<TensorMap>,
    pub theta_doubled: Arc<TensorMap>,
    /// `Θ` built with `β`.
    pub big_theta: Arc<TensorMap>,
    /// `Θ` built with `β⁻¹`.
    pub big_theta_minus: Arc<TensorMap>,
    /// `ββ(Θ⊗Θ)`.
    pub big_theta_doubled: Arc<TensorMap>,
}

impl TwistData {
    pub fn build(f: &FrobeniusData) -> Result<TwistData> {
        let (h, b) = (&f.h, &f.braid);
        let theta = Arc::new(theta_circuit(h, b)?.materialize()?);
        let big_theta = Arc::new(loop_twist_circuit(f, &b.beta)?.materialize()?);
        Ok(TwistData {
            theta_core: Arc::new(theta_core_circuit(h, b)?.materialize()?),
            theta_inv: Arc::new(theta.inverse()?),
            theta_doubled: Arc::new(theta_doubled_circuit(h, b)?.materialize()?),
            big_theta_minus: Arc::new(loop_twist_circuit(f, &b.beta_inv)?.materialize()?),
            big_theta_doubled: Arc::new(tortile_doubled(h, &big_theta, &b.beta)?.materialize()?),
            theta,
            big_theta,
        })
    }
}

/// `θ` agrees with its simplified form `y⁽²⁾⊗y⁽¹⁾S(x)y⁽³⁾`.
pub fn theta_core_equation(h: &HopfAlgebra, t: &TwistData) -> Result<Equation> {
    Ok(Equation::new(
        "theta_closed_form",
        h.wires(2).then(0, &t.theta)?,
        h.wires(2).then(0, &t.theta_core)?,
    ))
}

/// `θθ⁻¹ = 1 = θ⁻¹θ`.
pub fn theta_inverse_equations(h: &HopfAlgebra, t: &TwistData) -> Result<Vec<Equation>> {
    Ok(vec![
        Equation::new("theta_then_inverse", h.wires(2).then(0, &t.theta)?.then(0, &t.theta_inv)?, h.wires(2)),
        Equation::new("theta_inverse_then_theta", h.wires(2).then(0, &t.theta_inv)?.then(0, &t.theta)?, h.wires(2)),
    ])
}

/// `β(t⊗1_V) = (1_V⊗t)β` and `β(1_V⊗t) = (t⊗1_V)β`.
pub fn twist_braiding_equations(
    h: &HopfAlgebra,
    t: &Arc<TensorMap>,
    r: &Arc<TensorMap>,
    tag: &str,
) -> Result<Vec<Equation>> {
    Ok(vec![
        Equation::new(
            format!("{tag}_braiding_left"),
            h.wires(4).then(0, t)?.then(0, r)?,
            h.wires(4).then(0, r)?.then(2, t)?,
        ),
        Equation::new(
            format!("{tag}_braiding_right"),
            h.wires(4).then(2, t)?.then(0, r)?,
            h.wires(4).then(0, r)?.then(0, t)?,
        ),
    ])
}

pub fn check_twist_braiding(h: &HopfAlgebra, t: &Arc<TensorMap>, r: &Arc<TensorMap>) -> Result<bool> {
    Ok(twist_braiding_equations(h, t, r, "twist")?.iter().all(Equation::holds))
}

/// `T(x⊗θ(z⊗w)) = T(x⊗z⊗w)`.
pub fn slideloop_equation(h: &HopfAlgebra, b: &BraidData, t: &TwistData) -> Result<Equation> {
    Ok(Equation::new(
        "slideloop",
        h.wires(3).then(1, &t.theta)?.then(0, &b.t)?,
        h.wires(3).then(0, &b.t)?,
    ))
}

pub fn check_slideloop(h: &HopfAlgebra, b: &BraidData, t: &TwistData) -> Result<bool> {
    Ok(slideloop_equation(h, b, t)?.holds())
}

/// `θ∘μ₂ = μ₂∘θ_{V,V}` and `Δ₂∘θ = θ_{V,V}∘Δ₂` for a twist and its doubled form.
pub fn twist_frobenius_equations(
    f: &FrobeniusData,
    t: &Arc<TensorMap>,
    t_doubled: &Arc<TensorMap>,
    tag: &str,
) -> Result<Vec<Equation>> {
    let w = |a| f.h.wires(a);
    Ok(vec![
        Equation::new(
            format!("{tag}_mu2"),
            w(4).then(0, &f.mu2)?.then(0, t)?,
            w(4).then(0, t_doubled)?.then(0, &f.mu2)?,
        ),
        Equation::new(
            format!("{tag}_delta2"),
            w(2).then(0, t)?.then(0, &f.delta2)?,
            w(2).then(0, &f.delta2)?.then(0, t_doubled)?,
        ),
    ])
}

/// `x⊗y⊗z⊗w ↦ ∪(y⊗z)·w⁽²⁾⊗w⁽¹⁾S(x)w⁽³⁾`, built entry by entry from `∪`
/// and the simplified twist.
pub fn twist_mu_closed_form(f: &FrobeniusData, t: &TwistData) -> Result<TensorMap> {
    let n = f.h.n() as u64;
    let mut entries = Vec::new();
    for (_, yz, c) in f.cc.cup.entries() {
        for x in 0..n {
            for w in 0..n {
                let input = (x * n * n + yz) * n + w;
                for (out, d) in t.theta_core.column(x * n + w) {
                    entries.push((*out, input, c * d));
                }
            }
        }
    }
    TensorMap::from_entries(f.h.ring(), f.h.n(), 4, 2, entries)
}

pub fn twist_mu_closed_form_equation(f: &FrobeniusData, t: &TwistData) -> Result<Equation> {
    Ok(Equation::new(
        "theta_mu2_closed_form",
        f.h.wires(4).then(0, &f.mu2)?.then(0, &t.theta)?,
        Circuit::from_map(twist_mu_closed_form(f, t)?),
    ))
}

pub fn check_twist_frobenius(f: &FrobeniusData, t: &TwistData) -> Result<bool> {
    let mut eqs = twist_frobenius_equations(f, &t.theta, &t.theta_doubled, "theta")?;
    eqs.push(twist_mu_closed_form_equation(f, t)?);
    Ok(eqs.iter().all(Equation::holds))
}

/// `t_doubled = ββ(t⊗t)`.
pub fn tortile_equation(
    h: &HopfAlgebra,
    t: &Arc<TensorMap>,
    t_doubled: &Arc<TensorMap>,
    r: &Arc<TensorMap>,
) -> Result<Equation> {
    Ok(Equation::new(
        "tortile",
        h.wires(4).then(0, t_doubled)?,
        tortile_doubled(h, t, r)?,
    ))
}

pub fn check_tortile(
    h: &HopfAlgebra,
    t: &Arc<TensorMap>,
    t_doubled: &Arc<TensorMap>,
    r: &Arc<TensorMap>,
) -> Result<bool> {
    Ok(tortile_equation(h, t, t_doubled, r)?.holds())
}

/// `Θ₊∘Θ₋ = 1_V`, where `Θ₋` uses `β⁻¹` in place of `β`. Recorded, not asserted.
pub fn cancelpair_equation(h: &HopfAlgebra, t: &TwistData) -> Result<Equation> {
    Ok(Equation::new(
        "cancelpair",
        h.wires(2).then(0, &t.big_theta_minus)?.then(0, &t.big_theta)?,
        h.wires(2),
    ))
}

pub fn check_cancelpair(f: &FrobeniusData, t: &TwistData) -> Result<bool> {
    Ok(cancelpair_equation(&f.h, t)?.holds())
}

/// Whether `θ = Θ`. Recorded, not asserted.
pub fn theta_equals_big_theta(t: &TwistData) -> bool {
    t.theta == t.big_theta
}

//! The Frobenius algebra on `V = X⊗X` and its compatibility with `β`.

use std::sync::Arc;

use crate::braid::BraidData;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::integral::{build_cupcap, loop_value, CupCap, IntegralPair};
use crate::scalar::Scalar;
use crate::tensor::{Circuit, Equation, TensorMap};

/// Everything derived from a Hopf algebra on the way to a braided Frobenius algebra.
#[derive(Debug, Clone)]
pub struct FrobeniusData {
    pub h: HopfAlgebra,
    pub integrals: IntegralPair,
    pub cc: CupCap,
    pub braid: BraidData,
    /// `1⊗∪⊗1`
    pub mu2: Arc<TensorMap>,
    /// `1⊗∩⊗1`
    pub delta2: Arc<TensorMap>,
    /// `∩`
    pub eta2: Arc<TensorMap>,
    /// `∪`
    pub eps2: Arc<TensorMap>,
    /// Whether `h` is commutative and cocommutative.
    pub hypotheses_hold: bool,
}

/// Builds the full structure. Unless `allow_noncommutative` is set, a Hopf
/// algebra that is not both commutative and cocommutative is rejected.
pub fn build_frobenius(h: &HopfAlgebra, allow_noncommutative: bool) -> Result<FrobeniusData> {
    if !allow_noncommutative && !(h.is_commutative() && h.is_cocommutative()) {
        return Err(Error::NotCommutative(format!(
            "{} is not both commutative and cocommutative",
            h.family()
        )));
    }
    let (cc, integrals) = build_cupcap(h, &IntegralPair::find(h)?)?;
    FrobeniusData::from_parts(h, cc, integrals, BraidData::build(h)?)
}

impl FrobeniusData {
    /// Assembles the structure from an already normalized cup/cap and braiding.
    pub fn from_parts(h: &HopfAlgebra, cc: CupCap, integrals: IntegralPair, braid: BraidData) -> Result<FrobeniusData> {
        let id = h.identity(1)?;
        let mu2 = Arc::new(TensorMap::tensor_all([&id, &cc.cup, &id])?);
        let delta2 = Arc::new(TensorMap::tensor_all([&id, &cc.cap, &id])?);
        Ok(FrobeniusData {
            h: h.clone(),
            integrals,
            eta2: cc.cap.clone(),
            eps2: cc.cup.clone(),
            cc,
            braid,
            mu2,
            delta2,
            hypotheses_hold: h.is_commutative() && h.is_cocommutative(),
        })
    }
}

impl FrobeniusData {
    fn w(&self, arity: usize) -> Circuit {
        self.h.wires(arity)
    }

    /// Associativity, coassociativity, both unit and counit laws and both
    /// Frobenius compatibilities of `(V, μ₂, η₂, Δ₂, ε₂)`.
    pub fn frobenius_equations(&self) -> Result<Vec<Equation>> {
        let (mu, delta, eta, eps) = (&self.mu2, &self.delta2, &self.eta2, &self.eps2);
        let w = |a| self.w(a);
        let delta_mu = w(4).then(0, mu)?.then(0, delta)?;
        Ok(vec![
            Equation::new(
                "associativity",
                w(6).then(0, mu)?.then(0, mu)?,
                w(6).then(2, mu)?.then(0, mu)?,
            ),
            Equation::new(
                "coassociativity",
                w(2).then(0, delta)?.then(0, delta)?,
                w(2).then(0, delta)?.then(2, delta)?,
            ),
            Equation::new("unit_left", w(2).then(0, eta)?.then(0, mu)?, w(2)),
            Equation::new("unit_right", w(2).then(2, eta)?.then(0, mu)?, w(2)),
            Equation::new("counit_left", w(2).then(0, delta)?.then(0, eps)?, w(2)),
            Equation::new("counit_right", w(2).then(0, delta)?.then(2, eps)?, w(2)),
            Equation::new(
                "frobenius_left",
                w(4).then(2, delta)?.then(0, mu)?,
                delta_mu.clone(),
            ),
            Equation::new("frobenius_right", w(4).then(0, delta)?.then(2, mu)?, delta_mu),
        ])
    }

    /// `x⊗y⊗z⊗w ↦ ∪(y⊗z)·x⊗∩(1)⊗w`, built entry by entry.
    pub fn frobenius_closed_form(&self) -> Result<TensorMap> {
        let n = self.h.n() as u64;
        let mut entries = Vec::new();
        for (_, yz, c) in self.cc.cup.entries() {
            for (cap_idx, _, d) in self.cc.cap.entries() {
                let coeff = c * d;
                for x in 0..n {
                    for w in 0..n {
                        let input = (x * n * n + yz) * n + w;
                        let output = (x * n * n + cap_idx) * n + w;
                        entries.push((output, input, coeff.clone()));
                    }
                }
            }
        }
        TensorMap::from_entries(self.h.ring(), self.h.n(), 4, 4, entries)
    }

    /// The three Frobenius composites against [`Self::frobenius_closed_form`].
    pub fn closed_form_equations(&self) -> Result<Vec<Equation>> {
        let closed = Circuit::from_map(self.frobenius_closed_form()?);
        let (mu, delta) = (&self.mu2, &self.delta2);
        Ok(vec![
            Equation::new("closed_form_delta_mu", self.w(4).then(0, mu)?.then(0, delta)?, closed.clone()),
            Equation::new("closed_form_left", self.w(4).then(2, delta)?.then(0, mu)?, closed.clone()),
            Equation::new("closed_form_right", self.w(4).then(0, delta)?.then(2, mu)?, closed),
        ])
    }

    /// `Δ₂ = (μ₂⊗1_V)∘(1_V⊗(Δ₂∘η₂))`.
    pub fn capmult_equation(&self) -> Result<Equation> {
        let lhs = self.w(2).then(0, &self.delta2)?;
        let rhs = self
            .w(2)
            .then(2, &self.eta2)?
            .then(2, &self.delta2)?
            .then(0, &self.mu2)?;
        Ok(Equation::new("capmult", lhs, rhs))
    }

    /// `ε₂∘η₂ = ∪∘∩`.
    pub fn loop_scalar(&self) -> Result<Scalar> {
        loop_value(&self.cc)
    }

    /// The eight compatibilities of `μ₂, Δ₂, η₂, ε₂` with `β`.
    pub fn braided_frobenius_equations(&self) -> Result<Vec<Equation>> {
        braided_frobenius_equations_for(self, &self.braid.beta)
    }
}

/// The eight braided Frobenius equations for an arbitrary `R: V⊗V → V⊗V`.
pub fn braided_frobenius_equations_for(f: &FrobeniusData, r: &Arc<TensorMap>) -> Result<Vec<Equation>> {
    let (mu, delta, eta, eps) = (&f.mu2, &f.delta2, &f.eta2, &f.eps2);
    let w = |a| f.w(a);
    Ok(vec![
        Equation::new(
            "bf1_mu_left",
            w(6).then(0, r)?.then(2, r)?.then(0, mu)?,
            w(6).then(2, mu)?.then(0, r)?,
        ),
        Equation::new(
            "bf2_mu_right",
            w(6).then(2, r)?.then(0, r)?.then(2, mu)?,
            w(6).then(0, mu)?.then(0, r)?,
        ),
        Equation::new(
            "bf3_delta_right",
            w(4).then(2, delta)?.then(0, r)?.then(2, r)?,
            w(4).then(0, r)?.then(0, delta)?,
        ),
        Equation::new(
            "bf4_delta_left",
            w(4).then(0, delta)?.then(2, r)?.then(0, r)?,
            w(4).then(0, r)?.then(2, delta)?,
        ),
        Equation::new("bf5_unit_left", w(2).then(0, eta)?.then(0, r)?, w(2).then(2, eta)?),
        Equation::new("bf6_unit_right", w(2).then(2, eta)?.then(0, r)?, w(2).then(0, eta)?),
        Equation::new("bf7_counit_left", w(4).then(0, r)?.then(0, eps)?, w(4).then(2, eps)?),
        Equation::new("bf8_counit_right", w(4).then(0, r)?.then(2, eps)?, w(4).then(0, eps)?),
    ])
}

/// Name and outcome of every equation.
pub fn evaluate_all(eqs: &[Equation]) -> Vec<(String, bool)> {
    eqs.iter().map(|e| (e.name.clone(), e.holds())).collect()
}

pub fn check_frobenius_axioms(f: &FrobeniusData) -> Result<Vec<(String, bool)>> {
    Ok(evaluate_all(&f.frobenius_equations()?))
}

pub fn check_braided_frobenius(f: &FrobeniusData) -> Result<Vec<(String, bool)>> {
    Ok(evaluate_all(&f.braided_frobenius_equations()?))
}

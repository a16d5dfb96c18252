//! Integral element and functional, and the cup/cap pairing built from them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::scalar::Scalar;
use crate::tensor::{solve_right_null, Circuit, Equation, TensorMap, Vector};

/// The integral element `Λ` (`x·Λ = ε(x)Λ`) and integral functional `λ`
/// (`(λ⊗1)Δ = ηλ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPair {
    pub element: Vector,
    pub functional: TensorMap,
    /// Factor applied to `element` during cup/cap normalization; one until then.
    pub normalization: Scalar,
}

/// A pairing `∪: X⊗X → k` and copairing `∩: k → X⊗X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupCap {
    pub cup: Arc<TensorMap>,
    pub cap: Arc<TensorMap>,
}

/// Rescales so the lowest-index nonzero coefficient is one.
fn monic(v: &TensorMap) -> TensorMap {
    match v.entries().next() {
        Some((_, _, c)) => v.scale(&c.inv().expect("entries are nonzero")),
        None => v.clone(),
    }
}

fn rank_one(basis: Vec<Vector>) -> Result<Vector> {
    match basis.len() {
        1 => Ok(basis.into_iter().next().expect("one vector")),
        rank => Err(Error::IntegralRank { rank }),
    }
}

/// The integral element, normalized so its first nonzero coefficient is one.
pub fn find_integral_element(h: &HopfAlgebra) -> Result<Vector> {
    let id = h.identity(1)?;
    let family = (0..h.n())
        .map(|x| {
            let eps = h.counit().entry(0, x as u64);
            h.left_mult(x)?.sub(&id.scale(&eps))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(monic(&rank_one(solve_right_null(&family)?)?))
}

/// The integral functional, normalized so its first nonzero coefficient is one.
pub fn find_integral_functional(h: &HopfAlgebra) -> Result<TensorMap> {
    let (ring, n) = (h.ring(), h.n());
    let nn = n as u64;
    let eta = h.unit();
    // For each output leg j: Σ_k λ_k Δ_{(k,j),x} − η_j λ_x = 0 for every x.
    let family = (0..nn)
        .map(|j| {
            let mut entries = Vec::new();
            for (out, x, c) in h.delta().entries() {
                if out % nn == j {
                    entries.push((x, out / nn, c.clone()));
                }
            }
            let eta_j = eta.entry(j, 0);
            if !eta_j.is_zero() {
                for x in 0..nn {
                    entries.push((x, x, -&eta_j));
                }
            }
            TensorMap::from_entries(ring, n, 1, 1, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let v = monic(&rank_one(solve_right_null(&family)?)?);
    v.transpose()
}

impl IntegralPair {
    pub fn find(h: &HopfAlgebra) -> Result<IntegralPair> {
        Ok(IntegralPair {
            element: find_integral_element(h)?,
            functional: find_integral_functional(h)?,
            normalization: h.ring().one(),
        })
    }
}

/// `x·Λ = ε(x)Λ` and `Λ·x = ε(x)Λ` for every basis `x`.
pub fn check_element_two_sided(h: &HopfAlgebra, element: &Vector) -> Result<(bool, bool)> {
    let mut left = true;
    let mut right = true;
    for x in 0..h.n() {
        let expected = element.scale(&h.counit().entry(0, x as u64));
        left &= h.left_mult(x)?.apply(element)? == expected;
        right &= h.right_mult(x)?.apply(element)? == expected;
    }
    Ok((left, right))
}

/// `(λ⊗1)Δ = ηλ` and `(1⊗λ)Δ = ηλ`.
pub fn check_functional_two_sided(h: &HopfAlgebra, functional: &TensorMap) -> Result<(bool, bool)> {
    let lambda = Arc::new(functional.clone());
    let rhs = h.wires(1).then(0, &lambda)?.then(0, h.unit())?;
    let left = h.wires(1).then(0, h.delta())?.then(0, &lambda)?;
    let right = h.wires(1).then(0, h.delta())?.then(1, &lambda)?;
    Ok((left.compare(&rhs)?.equal, right.compare(&rhs)?.equal))
}

fn unnormalized(h: &HopfAlgebra, element: &Vector, functional: &TensorMap) -> Result<(TensorMap, TensorMap)> {
    let cup = h
        .wires(2)
        .then(1, h.antipode())?
        .then(0, h.mu())?
        .then(0, &Arc::new(functional.clone()))?
        .materialize()?;
    let cap = element.compose(h.delta())?;
    Ok((cup, cap))
}

/// `(∪⊗1)(1⊗∩)`, i.e. `∩` on the right, then `∪` on the left pair.
fn zigzag_left(cc: &CupCap) -> Result<Circuit> {
    let (ring, n) = (cc.cup.ring(), cc.cup.n());
    Circuit::identity(ring, n, 1).then(1, &cc.cap)?.then(0, &cc.cup)
}

/// `(1⊗∪)(∩⊗1)`.
fn zigzag_right(cc: &CupCap) -> Result<Circuit> {
    let (ring, n) = (cc.cup.ring(), cc.cup.n());
    Circuit::identity(ring, n, 1).then(0, &cc.cap)?.then(1, &cc.cup)
}

/// The two switchback identities as equations.
pub fn switchback_equations(cc: &CupCap) -> Result<Vec<Equation>> {
    let id = Circuit::identity(cc.cup.ring(), cc.cup.n(), 1);
    Ok(vec![
        Equation::new("switchback_left", zigzag_left(cc)?, id.clone()),
        Equation::new("switchback_right", zigzag_right(cc)?, id),
    ])
}

pub fn check_switchback(cc: &CupCap) -> bool {
    switchback_equations(cc)
        .map(|eqs| eqs.iter().all(Equation::holds))
        .unwrap_or(false)
}

/// Builds `∪ = λ∘μ∘(1⊗S)` and `∩ = Δ∘Λ`, then rescales `Λ` so that both
/// switchback identities hold. `λ` is first brought to its monic
/// representative, so the result does not depend on how either input was scaled.
pub fn build_cupcap(h: &HopfAlgebra, pair: &IntegralPair) -> Result<(CupCap, IntegralPair)> {
    let functional = monic(&pair.functional);
    let (cup, cap) = unnormalized(h, &pair.element, &functional)?;
    let raw = CupCap {
        cup: Arc::new(cup),
        cap: Arc::new(cap),
    };
    let m = zigzag_left(&raw)?.materialize()?;
    let c = m.entry(0, 0);
    if m != h.identity(1)?.scale(&c) {
        return Err(Error::Switchback(
            "(∪⊗1)(1⊗∩) is not a scalar multiple of the identity".into(),
        ));
    }
    if c.is_zero() {
        return Err(Error::DegeneratePairing);
    }
    let factor = c.inv()?;
    let element = pair.element.scale(&factor);
    let cc = CupCap {
        cup: raw.cup,
        cap: Arc::new(raw.cap.scale(&factor)),
    };
    for eq in switchback_equations(&cc)? {
        if !eq.holds() {
            return Err(Error::Switchback(format!("{} fails after normalization", eq.name)));
        }
    }
    let normalized = IntegralPair {
        element,
        functional,
        normalization: &pair.normalization * &factor,
    };
    Ok((cc, normalized))
}

/// The scalar `c` with `(∪⊗1)(1⊗∩) = c·1` before normalization, if it exists.
pub fn switchback_scalar(h: &HopfAlgebra, pair: &IntegralPair) -> Result<Option<Scalar>> {
    let (cup, cap) = unnormalized(h, &pair.element, &monic(&pair.functional))?;
    let raw = CupCap {
        cup: Arc::new(cup),
        cap: Arc::new(cap),
    };
    let m = zigzag_left(&raw)?.materialize()?;
    let c = m.entry(0, 0);
    Ok((m == h.identity(1)?.scale(&c)).then_some(c))
}

/// `∪` viewed as an `n×n` matrix has full rank.
pub fn is_nondegenerate(cc: &CupCap) -> Result<bool> {
    let (ring, n) = (cc.cup.ring(), cc.cup.n());
    let nn = n as u64;
    let matrix = TensorMap::from_entries(
        ring,
        n,
        1,
        1,
        cc.cup.entries().map(|(_, i, c)| (i % nn, i / nn, c.clone())),
    )?;
    Ok(matrix.rank()? == n)
}

/// `∪∘∩`, a scalar.
pub fn loop_value(cc: &CupCap) -> Result<Scalar> {
    cc.cap.compose(&cc.cup)?.as_scalar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_dual_group_algebra, build_group_algebra, build_truncated_polynomial};
    use crate::scalar::Ring;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn fp(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn vector(r: Ring, n: usize, arity: usize, terms: &[(u64, i64)]) -> Vector {
        TensorMap::vector(r, n, arity, terms.iter().map(|&(i, c)| (i, r.from_i64(c)))).unwrap()
    }

    fn functional(r: Ring, n: usize, coeffs: &[i64]) -> TensorMap {
        TensorMap::from_entries(r, n, 1, 0, coeffs.iter().enumerate().map(|(i, &c)| (0, i as u64, r.from_i64(c))))
            .unwrap()
    }

    #[test]
    fn group_integral_is_sum_of_elements() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        assert_eq!(find_integral_element(&h).unwrap(), vector(q(), 2, 1, &[(0, 1), (1, 1)]));
        let h = build_group_algebra(q(), &[3]).unwrap();
        assert_eq!(find_integral_element(&h).unwrap(), vector(q(), 3, 1, &[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn group_functional_is_delta_e() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        assert_eq!(find_integral_functional(&h).unwrap(), functional(q(), 2, &[1, 0]));
        let h = build_group_algebra(q(), &[2, 2]).unwrap();
        assert_eq!(find_integral_functional(&h).unwrap(), functional(q(), 4, &[1, 0, 0, 0]));
    }

    #[test]
    fn truncated_integrals() {
        let r = fp(2);
        let h = build_truncated_polynomial(r, 2, 1, 1).unwrap();
        assert_eq!(find_integral_element(&h).unwrap(), vector(r, 2, 1, &[(1, 1)]));
        assert_eq!(find_integral_functional(&h).unwrap(), functional(r, 2, &[0, 1]));
    }

    #[test]
    fn z2_cupcap_closed_forms() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        let pair = IntegralPair::find(&h).unwrap();
        assert_eq!(switchback_scalar(&h, &pair).unwrap(), Some(q().one()));
        let (cc, norm) = build_cupcap(&h, &pair).unwrap();
        assert!(norm.normalization.is_one());
        let cup = TensorMap::from_entries(q(), 2, 2, 0, [(0, 0, q().one()), (0, 3, q().one())]).unwrap();
        assert_eq!(*cc.cup, cup);
        assert_eq!(*cc.cap, vector(q(), 2, 2, &[(0, 1), (3, 1)]));
        assert!(check_switchback(&cc));
        assert_eq!(loop_value(&cc).unwrap(), q().from_i64(2));
    }

    #[test]
    fn truncated_cupcap_closed_forms() {
        let r = fp(2);
        let h = build_truncated_polynomial(r, 2, 1, 1).unwrap();
        let (cc, _) = build_cupcap(&h, &IntegralPair::find(&h).unwrap()).unwrap();
        // cup(a+bX, c+dX) = ad + bc
        let cup = TensorMap::from_entries(r, 2, 2, 0, [(0, 1, r.one()), (0, 2, r.one())]).unwrap();
        assert_eq!(*cc.cup, cup);
        assert_eq!(*cc.cap, vector(r, 2, 2, &[(1, 1), (2, 1)]));
        assert!(check_switchback(&cc));
    }

    #[test]
    fn trivial_algebra_cupcap() {
        let h = build_group_algebra(q(), &[1]).unwrap();
        let (cc, _) = build_cupcap(&h, &IntegralPair::find(&h).unwrap()).unwrap();
        assert_eq!(*cc.cap, vector(q(), 1, 2, &[(0, 1)]));
        assert_eq!(cc.cup.entry(0, 0), q().one());
    }

    #[test]
    fn switchback_holds_after_normalization_everywhere() {
        let algebras = vec![
            build_group_algebra(q(), &[2, 2]).unwrap(),
            build_group_algebra(fp(5), &[3]).unwrap(),
            build_dual_group_algebra(q(), &[2]).unwrap(),
            build_dual_group_algebra(q(), &[3]).unwrap(),
            build_truncated_polynomial(fp(2), 2, 2, 1).unwrap(),
            build_truncated_polynomial(fp(3), 3, 1, 1).unwrap(),
        ];
        for h in algebras {
            let pair = IntegralPair::find(&h).unwrap();
            let (cc, _) = build_cupcap(&h, &pair).unwrap();
            assert!(check_switchback(&cc), "{}", h.family());
            assert!(is_nondegenerate(&cc).unwrap());
            assert_eq!(check_element_two_sided(&h, &pair.element).unwrap(), (true, true));
            assert_eq!(check_functional_two_sided(&h, &pair.functional).unwrap(), (true, true));
        }
    }

    #[test]
    fn dual_group_integrals() {
        let h = build_dual_group_algebra(q(), &[2]).unwrap();
        assert_eq!(find_integral_element(&h).unwrap(), vector(q(), 2, 1, &[(0, 1)]));
        assert_eq!(find_integral_functional(&h).unwrap(), functional(q(), 2, &[1, 1]));
    }

    #[test]
    fn broken_pairings_fail_switchback() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        let (cc, _) = build_cupcap(&h, &IntegralPair::find(&h).unwrap()).unwrap();
        let doubled = CupCap {
            cup: cc.cup.clone(),
            cap: Arc::new(cc.cap.scale(&q().from_i64(2))),
        };
        assert!(!check_switchback(&doubled));
        let zero = CupCap {
            cup: Arc::new(TensorMap::zero(q(), 2, 2, 0).unwrap()),
            cap: cc.cap.clone(),
        };
        assert!(!check_switchback(&zero));
    }

    #[test]
    fn normalization_ignores_input_scaling() {
        let h = build_group_algebra(q(), &[3]).unwrap();
        let pair = IntegralPair::find(&h).unwrap();
        let (base, _) = build_cupcap(&h, &pair).unwrap();
        let u = q().from_ratio(-3, 7).unwrap();
        let scaled = IntegralPair {
            element: pair.element.scale(&u),
            functional: pair.functional.scale(&u.inv().unwrap()),
            normalization: q().one(),
        };
        let (cc, norm) = build_cupcap(&h, &scaled).unwrap();
        assert_eq!(cc, base);
        assert_eq!(norm.normalization, u.inv().unwrap());
    }

    #[test]
    fn zero_element_is_degenerate() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        let mut pair = IntegralPair::find(&h).unwrap();
        pair.element = TensorMap::zero(q(), 2, 0, 1).unwrap();
        assert_eq!(build_cupcap(&h, &pair).unwrap_err(), Error::DegeneratePairing);
    }

    #[test]
    fn non_scalar_zigzag_is_a_switchback_error() {
        let h = build_group_algebra(q(), &[2]).unwrap();
        let mut pair = IntegralPair::find(&h).unwrap();
        pair.element = vector(q(), 2, 1, &[(0, 1)]);
        assert!(matches!(build_cupcap(&h, &pair), Err(Error::Switchback(_))));
    }

    #[test]
    fn rank_of_integral_space_is_enforced() {
        // ε = 0 makes every vector with x·v = 0 an integral; for the zero
        // product that is the whole space.
        let h = build_group_algebra(q(), &[2]).unwrap();
        let mut parts = h.parts();
        parts.mu = TensorMap::zero(q(), 2, 2, 1).unwrap();
        parts.counit = TensorMap::zero(q(), 2, 1, 0).unwrap();
        let bad = HopfAlgebra::from_parts(parts, vec![], crate::hopf::Family::Explicit, false).unwrap();
        assert_eq!(find_integral_element(&bad).unwrap_err(), Error::IntegralRank { rank: 2 });
    }
}

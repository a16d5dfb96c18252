//! Finite-rank Hopf algebras given by structure constants.

mod builders;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::tensor::{Circuit, Equation, TensorMap, Vector};

/// How an algebra was produced; part of its fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Group { orders: Vec<usize> },
    DualGroup { orders: Vec<usize> },
    TruncatedPoly { p: u64, k: u32, vars: usize },
    Explicit,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Group { .. } => "group",
            Family::DualGroup { .. } => "dual_group",
            Family::TruncatedPoly { .. } => "truncated_poly",
            Family::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Group { orders } => write!(f, "group{orders:?}"),
            Family::DualGroup { orders } => write!(f, "dual_group{orders:?}"),
            Family::TruncatedPoly { p, k, vars } => {
                write!(f, "truncated_poly(p={p}, k={k}, vars={vars})")
            }
            Family::Explicit => write!(f, "explicit"),
        }
    }
}

/// The seven axiom groups checked on every algebra.
pub const AXIOMS: [&str; 7] = [
    "associativity",
    "coassociativity",
    "unit",
    "counit",
    "bialgebra",
    "antipode",
    "antihom",
];

/// The raw structure maps of a Hopf algebra.
#[derive(Debug, Clone)]
pub struct HopfParts {
    pub mu: TensorMap,
    pub unit: TensorMap,
    pub delta: TensorMap,
    pub counit: TensorMap,
    pub antipode: TensorMap,
}

/// `(X, μ, η, Δ, ε, S)` over an exact ring.
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    ring: Ring,
    n: usize,
    mu: Arc<TensorMap>,
    unit: Arc<TensorMap>,
    delta: Arc<TensorMap>,
    counit: Arc<TensorMap>,
    antipode: Arc<TensorMap>,
    labels: Vec<String>,
    family: Family,
}

impl HopfAlgebra {
    /// Assembles an algebra after checking shapes. When `check_axioms` is
    /// set, every axiom is verified and the first failure is returned as a
    /// config error.
    pub fn from_parts(
        parts: HopfParts,
        labels: Vec<String>,
        family: Family,
        check_axioms: bool,
    ) -> Result<HopfAlgebra> {
        let HopfParts {
            mu,
            unit,
            delta,
            counit,
            antipode,
        } = parts;
        let ring = mu.ring();
        let n = mu.n();
        let expect = [
            ("mu", &mu, 2, 1),
            ("unit", &unit, 0, 1),
            ("delta", &delta, 1, 2),
            ("counit", &counit, 1, 0),
            ("antipode", &antipode, 1, 1),
        ];
        for (name, m, a, b) in expect {
            if m.ring() != ring || m.n() != n {
                return Err(Error::shape(format!("{name} is over a different ring or rank")));
            }
            if m.in_arity() != a || m.out_arity() != b {
                return Err(Error::shape(format!(
                    "{name} must be {a}->{b}, found {}->{}",
                    m.in_arity(),
                    m.out_arity()
                )));
            }
        }
        let labels = if labels.len() == n {
            labels
        } else {
            (0..n).map(|i| format!("b{i}")).collect()
        };
        let h = HopfAlgebra {
            ring,
            n,
            mu: Arc::new(mu),
            unit: Arc::new(unit),
            delta: Arc::new(delta),
            counit: Arc::new(counit),
            antipode: Arc::new(antipode),
            labels,
            family,
        };
        if check_axioms {
            if let Some(bad) = h.failing_axioms().first() {
                return Err(Error::config(format!("{} fails the {bad} axiom", h.family)));
            }
        }
        Ok(h)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mu(&self) -> &Arc<TensorMap> {
        &self.mu
    }

    pub fn unit(&self) -> &Arc<TensorMap> {
        &self.unit
    }

    pub fn delta(&self) -> &Arc<TensorMap> {
        &self.delta
    }

    pub fn counit(&self) -> &Arc<TensorMap> {
        &self.counit
    }

    pub fn antipode(&self) -> &Arc<TensorMap> {
        &self.antipode
    }

    pub fn parts(&self) -> HopfParts {
        HopfParts {
            mu: (*self.mu).clone(),
            unit: (*self.unit).clone(),
            delta: (*self.delta).clone(),
            counit: (*self.counit).clone(),
            antipode: (*self.antipode).clone(),
        }
    }

    /// `id` on `X^{⊗arity}` as a circuit.
    pub fn wires(&self, arity: usize) -> Circuit {
        Circuit::identity(self.ring, self.n, arity)
    }

    pub fn identity(&self, arity: usize) -> Result<TensorMap> {
        TensorMap::identity(self.ring, self.n, arity)
    }

    /// The transpose dual `X*`: multiplication `Δᵀ`, comultiplication `μᵀ`, and so on.
    pub fn dual(&self, family: Family) -> Result<HopfAlgebra> {
        let parts = HopfParts {
            mu: self.delta.transpose()?,
            unit: self.counit.transpose()?,
            delta: self.mu.transpose()?,
            counit: self.unit.transpose()?,
            antipode: self.antipode.transpose()?,
        };
        let labels = self.labels.iter().map(|l| format!("d({l})")).collect();
        HopfAlgebra::from_parts(parts, labels, family, false)
    }

    fn eq(&self, name: &str, lhs: Result<Circuit>, rhs: Result<Circuit>) -> Result<Equation> {
        Ok(Equation::new(name, lhs?, rhs?))
    }

    /// The equations making up one named axiom group from [`AXIOMS`].
    pub fn axiom_equations(&self, axiom: &str) -> Result<Vec<Equation>> {
        let (mu, unit, delta, counit, s) = (&self.mu, &self.unit, &self.delta, &self.counit, &self.antipode);
        let w = |a| self.wires(a);
        let tau = Arc::new(TensorMap::swap(self.ring, self.n)?);
        Ok(match axiom {
            "associativity" => vec![self.eq(
                "associativity",
                w(3).then(0, mu).and_then(|c| c.then(0, mu)),
                w(3).then(1, mu).and_then(|c| c.then(0, mu)),
            )?],
            "coassociativity" => vec![self.eq(
                "coassociativity",
                w(1).then(0, delta).and_then(|c| c.then(0, delta)),
                w(1).then(0, delta).and_then(|c| c.then(1, delta)),
            )?],
            "unit" => vec![
                self.eq(
                    "unit_left",
                    w(1).then(0, unit).and_then(|c| c.then(0, mu)),
                    Ok(w(1)),
                )?,
                self.eq(
                    "unit_right",
                    w(1).then(1, unit).and_then(|c| c.then(0, mu)),
                    Ok(w(1)),
                )?,
            ],
            "counit" => vec![
                self.eq(
                    "counit_left",
                    w(1).then(0, delta).and_then(|c| c.then(0, counit)),
                    Ok(w(1)),
                )?,
                self.eq(
                    "counit_right",
                    w(1).then(0, delta).and_then(|c| c.then(1, counit)),
                    Ok(w(1)),
                )?,
            ],
            "bialgebra" => vec![self.eq(
                "bialgebra",
                w(2).then(0, mu).and_then(|c| c.then(0, delta)),
                w(2).then(0, delta)
                    .and_then(|c| c.then(2, delta))
                    .and_then(|c| c.then(1, &tau))
                    .and_then(|c| c.then(0, mu))
                    .and_then(|c| c.then(1, mu)),
            )?,
            self.eq(
                "bialgebra_unit",
                w(0).then(0, unit).and_then(|c| c.then(0, delta)),
                w(0).then(0, unit).and_then(|c| c.then(1, unit)),
            )?,
            self.eq(
                "bialgebra_counit",
                w(2).then(0, mu).and_then(|c| c.then(0, counit)),
                w(2).then(0, counit).and_then(|c| c.then(0, counit)),
            )?,
            self.eq(
                "bialgebra_scalar",
                w(0).then(0, unit).and_then(|c| c.then(0, counit)),
                Ok(w(0)),
            )?],
            "antipode" => {
                let unit_counit = w(1).then(0, counit).and_then(|c| c.then(0, unit));
                vec![
                    self.eq(
                        "antipode_right",
                        w(1).then(0, delta)
                            .and_then(|c| c.then(1, s))
                            .and_then(|c| c.then(0, mu)),
                        unit_counit.clone(),
                    )?,
                    self.eq(
                        "antipode_left",
                        w(1).then(0, delta)
                            .and_then(|c| c.then(0, s))
                            .and_then(|c| c.then(0, mu)),
                        unit_counit,
                    )?,
                ]
            }
            "antihom" => vec![
                self.eq(
                    "antihom_mu",
                    w(2).then(0, &tau)
                        .and_then(|c| c.then(0, mu))
                        .and_then(|c| c.then(0, s)),
                    w(2).then(0, s)
                        .and_then(|c| c.then(1, s))
                        .and_then(|c| c.then(0, mu)),
                )?,
                self.eq(
                    "antihom_unit",
                    w(0).then(0, unit).and_then(|c| c.then(0, s)),
                    w(0).then(0, unit),
                )?,
                self.eq(
                    "antihom_counit",
                    w(1).then(0, s).and_then(|c| c.then(0, counit)),
                    w(1).then(0, counit),
                )?,
            ],
            other => return Err(Error::config(format!("unknown axiom {other:?}"))),
        })
    }

    fn axiom_holds(&self, axiom: &str) -> bool {
        self.axiom_equations(axiom)
            .map(|eqs| eqs.iter().all(Equation::holds))
            .unwrap_or(false)
    }

    pub fn check_associativity(&self) -> bool {
        self.axiom_holds("associativity")
    }

    pub fn check_coassociativity(&self) -> bool {
        self.axiom_holds("coassociativity")
    }

    pub fn check_unit(&self) -> bool {
        self.axiom_holds("unit")
    }

    pub fn check_counit(&self) -> bool {
        self.axiom_holds("counit")
    }

    /// `Δ∘μ = (μ⊗μ)∘(1⊗τ⊗1)∘(Δ⊗Δ)`, together with `Δη = η⊗η`, `εμ = ε⊗ε`
    /// and `εη = 1`.
    pub fn check_bialgebra(&self) -> bool {
        self.axiom_holds("bialgebra")
    }

    /// `μ(1⊗S)Δ = ηε = μ(S⊗1)Δ`.
    pub fn check_antipode(&self) -> bool {
        self.axiom_holds("antipode")
    }

    /// `Sμτ = μ(S⊗S)`, `Sη = η`, `εS = ε`.
    pub fn check_antihom(&self) -> bool {
        self.axiom_holds("antihom")
    }

    /// Names of the axiom groups that fail, in [`AXIOMS`] order.
    pub fn failing_axioms(&self) -> Vec<&'static str> {
        AXIOMS.iter().copied().filter(|a| !self.axiom_holds(a)).collect()
    }

    pub fn check_all_axioms(&self) -> bool {
        self.failing_axioms().is_empty()
    }

    pub fn is_commutative(&self) -> bool {
        let tau = match TensorMap::swap(self.ring, self.n) {
            Ok(t) => t,
            Err(_) => return false,
        };
        tau.compose(&self.mu).map(|m| m == *self.mu).unwrap_or(false)
    }

    pub fn is_cocommutative(&self) -> bool {
        let tau = match TensorMap::swap(self.ring, self.n) {
            Ok(t) => t,
            Err(_) => return false,
        };
        self.delta.compose(&tau).map(|d| d == *self.delta).unwrap_or(false)
    }

    /// `S² = 1`.
    pub fn is_involutory(&self) -> bool {
        self.antipode
            .compose(&self.antipode)
            .map(|s2| Ok(s2) == self.identity(1))
            .unwrap_or(false)
    }

    /// The iterated comultiplication `X → X^{⊗m}`:
    /// `Δ^(1) = 1`, `Δ^(m) = (Δ ⊗ 1^{⊗m-2}) ∘ Δ^(m-1)`.
    pub fn sweedler(&self, m: usize) -> Result<TensorMap> {
        if m < 1 {
            return Err(Error::shape("sweedler needs m >= 1"));
        }
        let mut c = self.wires(1);
        for _ in 1..m {
            c = c.then(0, &self.delta)?;
        }
        c.materialize()
    }

    /// The same iterate with the opposite bracketing, splitting the last leg each time.
    pub fn sweedler_right(&self, m: usize) -> Result<TensorMap> {
        if m < 1 {
            return Err(Error::shape("sweedler needs m >= 1"));
        }
        let mut c = self.wires(1);
        for k in 1..m {
            c = c.then(k - 1, &self.delta)?;
        }
        c.materialize()
    }

    /// Left multiplication `v ↦ x·v` by the basis element `x`.
    pub fn left_mult(&self, x: usize) -> Result<TensorMap> {
        let e = TensorMap::basis_vector(self.ring, self.n, &[x])?;
        let id = self.identity(1)?;
        e.tensor(&id)?.compose(&self.mu)
    }

    /// Right multiplication `v ↦ v·x`.
    pub fn right_mult(&self, x: usize) -> Result<TensorMap> {
        let e = TensorMap::basis_vector(self.ring, self.n, &[x])?;
        let id = self.identity(1)?;
        id.tensor(&e)?.compose(&self.mu)
    }

    /// The product of two elements.
    pub fn multiply(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.mu.apply(&a.tensor(b)?)
    }

    /// Basis indices `g` with `Δ(g) = g⊗g` and `ε(g) = 1`.
    pub fn group_likes(&self) -> Vec<usize> {
        let n = self.n as u64;
        (0..self.n)
            .filter(|&g| {
                let g64 = g as u64;
                let d = self.delta.column(g64);
                let e = self.counit.column(g64);
                d.len() == 1
                    && d[0].0 == g64 * n + g64
                    && d[0].1.is_one()
                    && e.len() == 1
                    && e[0].1.is_one()
            })
            .collect()
    }

    /// Human-readable expansion of a vector in this basis.
    pub fn format_vector(&self, v: &Vector) -> String {
        use crate::tensor::MultiIndex;
        if v.terms().is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .terms()
            .iter()
            .map(|(i, c)| {
                let idx = MultiIndex::from_flat(self.n, v.out_arity(), *i);
                let name = if idx.0.is_empty() {
                    "1".to_string()
                } else {
                    idx.0.iter().map(|&d| self.labels[d].as_str()).collect::<Vec<_>>().join("⊗")
                };
                if c.is_one() {
                    name
                } else {
                    format!("({c})·{name}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

pub use builders::{build_dual_group_algebra, build_group_algebra, build_truncated_polynomial};

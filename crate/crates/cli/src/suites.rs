//! Verification suites and the runner that orders and gates them.

use std::sync::OnceLock;
use std::time::Instant;

use bfl_core::braid::{self, BraidData};
use bfl_core::frobenius::FrobeniusData;
use bfl_core::hopf::AXIOMS;
use bfl_core::integral::{self, CupCap, IntegralPair};
use bfl_core::tensor::{Comparison, Equation};
use bfl_core::twist::{self, TwistData};
use bfl_core::{Error, Family, HopfAlgebra, Result};
use rayon::prelude::*;

use crate::config::Suite;
use crate::report::{CheckRecord, Status};

/// Derived structures, built at most once and on first use.
#[derive(Debug)]
pub struct Structures {
    pub h: HopfAlgebra,
    pub hypotheses_hold: bool,
    integrals: OnceLock<Result<IntegralPair>>,
    cupcap: OnceLock<Result<(CupCap, IntegralPair)>>,
    braid: OnceLock<Result<BraidData>>,
    frobenius: OnceLock<Result<FrobeniusData>>,
    twist: OnceLock<Result<TwistData>>,
}

fn cached<T>(cell: &OnceLock<Result<T>>, build: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(build).as_ref().map_err(Clone::clone)
}

impl Structures {
    pub fn new(h: HopfAlgebra) -> Structures {
        Structures {
            hypotheses_hold: h.is_commutative() && h.is_cocommutative(),
            h,
            integrals: OnceLock::new(),
            cupcap: OnceLock::new(),
            braid: OnceLock::new(),
            frobenius: OnceLock::new(),
            twist: OnceLock::new(),
        }
    }

    pub fn integrals(&self) -> Result<&IntegralPair> {
        cached(&self.integrals, || IntegralPair::find(&self.h))
    }

    /// Normalized cup and cap together with the rescaled integrals.
    pub fn cupcap(&self) -> Result<&(CupCap, IntegralPair)> {
        cached(&self.cupcap, || integral::build_cupcap(&self.h, self.integrals()?))
    }

    pub fn braid(&self) -> Result<&BraidData> {
        cached(&self.braid, || BraidData::build(&self.h))
    }

    pub fn frobenius(&self) -> Result<&FrobeniusData> {
        cached(&self.frobenius, || {
            let (cc, pair) = self.cupcap()?.clone();
            FrobeniusData::from_parts(&self.h, cc, pair, self.braid()?.clone())
        })
    }

    pub fn twist(&self) -> Result<&TwistData> {
        cached(&self.twist, || TwistData::build(self.frobenius()?))
    }
}

/// Result of one check before it becomes a report record.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub holds: bool,
    pub comparison: Option<Comparison>,
    pub detail: Option<String>,
}

impl Outcome {
    fn flag(holds: bool) -> Outcome {
        Outcome {
            holds,
            comparison: None,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Outcome {
        self.detail = Some(detail.into());
        self
    }

    /// Verifies every equation. Reports the first failing comparison, or the largest one.
    fn from_equations(eqs: &[Equation]) -> Result<Outcome> {
        let mut shown: Option<Comparison> = None;
        for eq in eqs {
            let cmp = eq.verify()?;
            let failed = !cmp.equal;
            if failed || shown.as_ref().is_none_or(|s| cmp.in_dim * cmp.out_dim > s.in_dim * s.out_dim) {
                shown = Some(cmp);
            }
            if failed {
                break;
            }
        }
        let shown = shown.ok_or_else(|| Error::Shape("no equations to check".into()))?;
        let mut out = Outcome::flag(shown.equal);
        if eqs.len() > 1 && !shown.equal {
            let failing = eqs.iter().find(|e| e.verify().map(|c| !c.equal).unwrap_or(true));
            out.detail = failing.map(|e| format!("{} fails", e.name));
        }
        out.comparison = Some(shown);
        Ok(out)
    }
}

type Runner<'a> = Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>;

/// A named check. Nothing is computed until it runs.
pub struct Check<'a> {
    pub name: String,
    pub asserted: bool,
    run: Runner<'a>,
}

impl<'a> Check<'a> {
    fn new(name: &str, asserted: bool, run: impl Fn() -> Result<Outcome> + Send + Sync + 'a) -> Check<'a> {
        Check {
            name: name.into(),
            asserted,
            run: Box::new(run),
        }
    }

    fn equations(name: &str, asserted: bool, eqs: impl Fn() -> Result<Vec<Equation>> + Send + Sync + 'a) -> Check<'a> {
        Check::new(name, asserted, move || Outcome::from_equations(&eqs()?))
    }

    fn equation(name: &str, asserted: bool, eq: impl Fn() -> Result<Equation> + Send + Sync + 'a) -> Check<'a> {
        Check::new(name, asserted, move || Outcome::from_equations(&[eq()?]))
    }

    /// One equation picked by name out of a family built together.
    fn named(name: &'a str, asserted: bool, eqs: impl Fn() -> Result<Vec<Equation>> + Send + Sync + 'a) -> Check<'a> {
        Check::equation(name, asserted, move || {
            eqs()?
                .into_iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Error::Shape(format!("no equation named {name}")))
        })
    }

    fn predicate(name: &str, asserted: bool, f: impl Fn() -> Result<bool> + Send + Sync + 'a) -> Check<'a> {
        Check::new(name, asserted, move || f().map(Outcome::flag))
    }

    pub fn run(&self, suite: Suite) -> CheckRecord {
        let start = Instant::now();
        let result = (self.run)();
        let wall_time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        let mut record = CheckRecord {
            name: format!("{suite}.{}", self.name),
            suite: suite.name().into(),
            status: Status::Error,
            asserted: self.asserted,
            wall_time_ms,
            dimensions: None,
            witnesses: None,
            detail: None,
        };
        match result {
            Ok(o) => {
                record.status = Status::from_outcome(self.asserted, o.holds);
                if let Some(cmp) = &o.comparison {
                    (record.dimensions, record.witnesses) = CheckRecord::from_comparison(cmp);
                }
                record.detail = o.detail;
            }
            Err(e) => record.detail = Some(e.to_string()),
        }
        record
    }
}

const FROBENIUS: [&str; 12] = [
    "associativity",
    "coassociativity",
    "unit_left",
    "unit_right",
    "counit_left",
    "counit_right",
    "frobenius_left",
    "frobenius_right",
    "closed_form_delta_mu",
    "closed_form_left",
    "closed_form_right",
    "capmult",
];

const BRAIDED_FROBENIUS: [&str; 8] = [
    "bf1_mu_left",
    "bf2_mu_right",
    "bf3_delta_right",
    "bf4_delta_left",
    "bf5_unit_left",
    "bf6_unit_right",
    "bf7_counit_left",
    "bf8_counit_right",
];

const PASSCUP: [&str; 4] = [
    "cup_right_through_beta",
    "cup_left_through_beta",
    "cap_left_through_beta",
    "cap_right_through_beta",
];

const INVERSES: [&str; 4] = [
    "beta1_then_inverse",
    "beta1_inverse_then_beta1",
    "beta_then_inverse",
    "beta_inverse_then_beta",
];

/// The checks of one suite, in report order.
pub fn checks(suite: Suite, s: &Structures) -> Vec<Check<'_>> {
    let h = &s.h;
    // Past the integrals, results on algebras outside the commutative,
    // cocommutative setting are recorded but not asserted.
    let core = s.hypotheses_hold;
    match suite {
        Suite::HopfAxioms => {
            let hyp = *h.family() != Family::Explicit;
            let mut out: Vec<Check<'_>> = AXIOMS
                .iter()
                .map(|&axiom| Check::equations(axiom, true, move || h.axiom_equations(axiom)))
                .collect();
            out.push(Check::predicate("commutative", hyp, || Ok(h.is_commutative())));
            out.push(Check::predicate("cocommutative", hyp, || Ok(h.is_cocommutative())));
            out.push(Check::predicate("involutory", hyp, || Ok(h.is_involutory())));
            out
        }
        Suite::Integrals => {
            let rank_one = |found: Result<bfl_core::Vector>| match found {
                Ok(v) => Ok(Outcome::flag(true).with_detail(h.format_vector(&v))),
                Err(e @ Error::IntegralRank { .. }) => Ok(Outcome::flag(false).with_detail(e.to_string())),
                Err(e) => Err(e),
            };
            vec![
                Check::new("integral_element", true, move || rank_one(integral::find_integral_element(h))),
                Check::new("integral_functional", true, move || {
                    rank_one(integral::find_integral_functional(h).and_then(|f| f.transpose()))
                }),
                Check::predicate("element_two_sided", core, || {
                    let (l, r) = integral::check_element_two_sided(h, &s.integrals()?.element)?;
                    Ok(l && r)
                }),
                Check::predicate("functional_two_sided", core, || {
                    let (l, r) = integral::check_functional_two_sided(h, &s.integrals()?.functional)?;
                    Ok(l && r)
                }),
                Check::new("switchback_scalar", true, || {
                    Ok(match integral::switchback_scalar(h, s.integrals()?)? {
                        Some(c) if !c.is_zero() => Outcome::flag(true).with_detail(format!("c = {c}")),
                        Some(_) => Outcome::flag(false).with_detail("pairing is degenerate"),
                        None => Outcome::flag(false).with_detail("zig-zag is not a multiple of the identity"),
                    })
                }),
            ]
        }
        Suite::Switchback => vec![
            Check::named("switchback_left", true, || integral::switchback_equations(&s.cupcap()?.0)),
            Check::named("switchback_right", true, || integral::switchback_equations(&s.cupcap()?.0)),
            Check::predicate("cup_nondegenerate", true, || integral::is_nondegenerate(&s.cupcap()?.0)),
        ],
        Suite::Tsd => vec![
            Check::equation("tsd", core, || braid::tsd_equation(h, &s.braid()?.t)),
            Check::equation("invertible_tsd", core, || braid::invertible_tsd_equation(h, &s.braid()?.t)),
            Check::equation("coalgebra_morphism", core, || braid::coalgebra_morphism_equation(h, &s.braid()?.t)),
            Check::predicate("grouplike_degeneracy", core, || Ok(braid::check_grouplike_degeneracy(h, &s.braid()?.t))),
        ],
        Suite::Braiding => {
            let mut out: Vec<Check<'_>> = INVERSES
                .iter()
                .map(|&name| Check::named(name, core, move || Ok(braid::inverse_equations(h, s.braid()?))))
                .collect();
            out.push(Check::equation("beta_factorization", core, || braid::factorization_equation(h, s.braid()?)));
            out.push(Check::predicate("grouplike_permutation", core, || {
                Ok(braid::check_grouplike_permutation(h, &s.braid()?.beta))
            }));
            out
        }
        Suite::Ybe => vec![
            Check::equation("ybe_beta", core, || braid::ybe_equation(&s.braid()?.beta)),
            Check::equation("ybe_beta_inverse", core, || braid::ybe_equation(&s.braid()?.beta_inv)),
        ],
        Suite::Passcup => {
            let mut out = vec![
                Check::equation("passcup", core, || braid::passcup_equation(h, &s.cupcap()?.0, s.braid()?)),
                Check::equation("passcap", core, || braid::passcap_equation(h, &s.cupcap()?.0, s.braid()?)),
            ];
            out.extend(PASSCUP.iter().map(|&name| {
                Check::named(name, core, move || braid::cupcap_braiding_equations(h, &s.cupcap()?.0, &s.braid()?.beta))
            }));
            out
        }
        Suite::Frobenius => FROBENIUS
            .iter()
            .map(|&name| {
                Check::named(name, core, move || {
                    let f = s.frobenius()?;
                    let mut eqs = f.frobenius_equations()?;
                    eqs.extend(f.closed_form_equations()?);
                    eqs.push(f.capmult_equation()?);
                    Ok(eqs)
                })
            })
            .collect(),
        Suite::BraidedFrobenius => BRAIDED_FROBENIUS
            .iter()
            .map(|&name| Check::named(name, core, move || s.frobenius()?.braided_frobenius_equations()))
            .collect(),
        Suite::Twist => {
            let all = move || -> Result<Vec<Equation>> {
                let f = s.frobenius()?;
                let t = s.twist()?;
                let b = &f.braid;
                let mut eqs = vec![twist::theta_core_equation(h, t)?];
                eqs.extend(twist::theta_inverse_equations(h, t)?);
                eqs.extend(twist::twist_braiding_equations(h, &t.theta, &b.beta, "theta")?);
                eqs.push(twist::slideloop_equation(h, b, t)?);
                eqs.extend(twist::twist_frobenius_equations(f, &t.theta, &t.theta_doubled, "theta")?);
                eqs.push(twist::twist_mu_closed_form_equation(f, t)?);
                eqs.extend(twist::twist_braiding_equations(h, &t.big_theta, &b.beta, "Theta")?);
                eqs.extend(twist::twist_frobenius_equations(f, &t.big_theta, &t.big_theta_doubled, "Theta")?);
                Ok(eqs)
            };
            const TWIST: [&str; 13] = [
                "theta_closed_form",
                "theta_then_inverse",
                "theta_inverse_then_theta",
                "theta_braiding_left",
                "theta_braiding_right",
                "slideloop",
                "theta_mu2",
                "theta_delta2",
                "theta_mu2_closed_form",
                "Theta_braiding_left",
                "Theta_braiding_right",
                "Theta_mu2",
                "Theta_delta2",
            ];
            TWIST.iter().map(|&name| Check::named(name, core, all)).collect()
        }
        Suite::Tortile => vec![Check::equation("tortile", core, || {
            let t = s.twist()?;
            twist::tortile_equation(h, &t.theta, &t.theta_doubled, &s.braid()?.beta)
        })],
        Suite::Observational => vec![
            Check::equation("tsd_literal", false, || braid::tsd_literal_equation(h, &s.braid()?.t)),
            Check::equation("cancelpair", false, || twist::cancelpair_equation(h, s.twist()?)),
            Check::predicate("theta_equals_Theta", false, || Ok(twist::theta_equals_big_theta(s.twist()?))),
        ],
    }
}

/// Runs the selected suites in dependency order. A suite whose selected
/// prerequisite has an asserted failure is not run; its checks are
/// reported as errors.
pub fn run_suites(s: &Structures, selected: &[Suite], pool: &rayon::ThreadPool) -> Vec<CheckRecord> {
    let mut records: Vec<CheckRecord> = Vec::new();
    let mut failed: Vec<Suite> = Vec::new();
    for suite in Suite::ALL.into_iter().filter(|x| selected.contains(x)) {
        let list = checks(suite, s);
        let blocker = suite.ancestors().into_iter().find(|a| failed.contains(a));
        let batch: Vec<CheckRecord> = match blocker {
            Some(b) => list
                .iter()
                .map(|c| CheckRecord {
                    name: format!("{suite}.{}", c.name),
                    suite: suite.name().into(),
                    status: Status::Error,
                    asserted: c.asserted,
                    wall_time_ms: 0.0,
                    dimensions: None,
                    witnesses: None,
                    detail: Some(format!("not run: prerequisite suite {b} failed")),
                })
                .collect(),
            None => pool.install(|| list.par_iter().map(|c| c.run(suite)).collect()),
        };
        if batch.iter().any(CheckRecord::is_failure) {
            failed.push(suite);
        }
        records.extend(batch);
    }
    records
}

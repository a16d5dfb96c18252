//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bfl_cli::config::Suite;
use bfl_cli::suites::{run_suites, Structures};
use bfl_cli::{verify, VerifyArgs};
use bfl_core::braid::{self, BraidData};
use bfl_core::diagram::{self, check_equation, Context, Evaluator, Expectation};
use bfl_core::frobenius::build_frobenius;
use bfl_core::hopf::{build_dual_group_algebra, build_group_algebra, build_truncated_polynomial};
use bfl_core::integral::{self, IntegralPair};
use bfl_core::tensor::{CompareMode, Equation};
use bfl_core::twist::{self, TwistData};
use bfl_core::{Family, HopfAlgebra, HopfParts, MultiIndex, Ring, TensorMap};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q() -> Ring {
    Ring::Rationals
}

fn fp(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

/// The algebras every criterion ranges over.
fn algebras() -> Vec<(String, HopfAlgebra)> {
    let mut out = Vec::new();
    for ring in [q(), fp(5)] {
        for orders in [vec![2], vec![3], vec![2, 2]] {
            let name = format!("k[Z{}] over {ring}", orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("xZ"));
            out.push((name, build_group_algebra(ring, &orders).unwrap()));
        }
    }
    out.push(("k[Z2]* over Q".into(), build_dual_group_algebra(q(), &[2]).unwrap()));
    out.push(("F2[X]/(X^2)".into(), build_truncated_polynomial(fp(2), 2, 1, 1).unwrap()));
    out.push(("F2[X]/(X^4)".into(), build_truncated_polynomial(fp(2), 2, 2, 1).unwrap()));
    out.push(("F3[X]/(X^3)".into(), build_truncated_polynomial(fp(3), 3, 1, 1).unwrap()));
    out
}

fn rank_nine() -> Vec<(String, HopfAlgebra)> {
    vec![
        ("k[Z9] over Q".into(), build_group_algebra(q(), &[9]).unwrap()),
        ("k[Z3xZ3] over Q".into(), build_group_algebra(q(), &[3, 3]).unwrap()),
    ]
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{:.2} s within {} s", t.as_secs_f64(), budget.as_secs()))
    } else {
        Err(format!("took {:.2} s, budget {} s", t.as_secs_f64(), budget.as_secs()))
    }
}

fn all_hold(label: &str, eqs: &[Equation], mode: Option<CompareMode>) -> Result<usize, String> {
    for eq in eqs {
        let cmp = match mode {
            Some(m) => eq.lhs.compare_in_mode(&eq.rhs, m),
            None => eq.verify(),
        }
        .map_err(|e| format!("{label}: {}: {e}", eq.name))?;
        if !cmp.equal {
            return Err(format!("{label}: {} fails", eq.name));
        }
    }
    Ok(eqs.len())
}

fn c1_hopf_axioms() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, h) in algebras() {
        for axiom in bfl_core::hopf::AXIOMS {
            count += all_hold(&name, &h.axiom_equations(axiom).map_err(|e| e.to_string())?, Some(CompareMode::Dense))?;
        }
    }
    let time = within(start, Duration::from_secs(5))?;
    Ok(format!("7 axiom groups ({count} equations) exact on 10 algebras; {time}"))
}

fn c2_tsd() -> Outcome {
    let start = Instant::now();
    for (name, h) in algebras() {
        let t = Arc::new(braid::build_heap_t(&h).map_err(|e| e.to_string())?);
        let eqs = [braid::tsd_equation(&h, &t).unwrap(), braid::invertible_tsd_equation(&h, &t).unwrap()];
        all_hold(&name, &eqs, None)?;
    }
    let mut largest = 0;
    for (name, h) in rank_nine() {
        let t = Arc::new(braid::build_heap_t(&h).map_err(|e| e.to_string())?);
        let eqs = [braid::tsd_equation(&h, &t).unwrap(), braid::invertible_tsd_equation(&h, &t).unwrap()];
        all_hold(&name, &eqs, Some(CompareMode::Streaming))?;
        largest = largest.max(eqs[0].lhs.in_dim().unwrap());
    }
    let time = within(start, Duration::from_secs(60))?;
    Ok(format!("TSD and invertible TSD on 10 algebras; streamed up to dimension {largest}; {time}"))
}

fn c3_ybe() -> Outcome {
    let start = Instant::now();
    for (name, h) in algebras() {
        let b = BraidData::build(&h).map_err(|e| e.to_string())?;
        all_hold(&name, &[braid::ybe_equation(&b.beta).unwrap()], Some(CompareMode::Dense))?;
    }
    let mut dim = 0;
    for (name, h) in rank_nine() {
        let b = BraidData::build(&h).map_err(|e| e.to_string())?;
        let eq = braid::ybe_equation(&b.beta).unwrap();
        dim = eq.lhs.in_dim().unwrap();
        all_hold(&name, &[eq], Some(CompareMode::Streaming))?;
    }
    let time = within(start, Duration::from_secs(600))?;
    Ok(format!("dense on X^6 for ranks <= 4, streamed on rank 9 (dimension {dim}); {time}"))
}

fn c4_switchback() -> Outcome {
    for (name, h) in algebras() {
        let (cc, _) = integral::build_cupcap(&h, &IntegralPair::find(&h).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{name}: {e}"))?;
        all_hold(&name, &integral::switchback_equations(&cc).unwrap(), None)?;
    }
    // k[Z2]: Λ = e + g, λ = δ_e, c = 1, ∪(x⊗y) = [x = y], ∩ = e⊗e + g⊗g.
    let h = build_group_algebra(q(), &[2]).unwrap();
    let one = q().one();
    let pair = IntegralPair::find(&h).unwrap();
    let c = integral::switchback_scalar(&h, &pair).unwrap();
    let (cc, normalized) = integral::build_cupcap(&h, &pair).unwrap();
    let expect = |a, b, entries: Vec<(u64, u64)>| TensorMap::from_entries(q(), 2, a, b, entries.into_iter().map(|(o, i)| (o, i, one.clone()))).unwrap();
    let checks = [
        (normalized.element == expect(0, 1, vec![(0, 0), (1, 0)]), "Λ"),
        (normalized.functional == expect(1, 0, vec![(0, 0)]), "λ"),
        (c == Some(one.clone()), "c"),
        (*cc.cup == expect(2, 0, vec![(0, 0), (0, 3)]), "cup"),
        (*cc.cap == expect(0, 2, vec![(0, 0), (3, 0)]), "cap"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(format!("k[Z2]: {what} differs from its closed form"));
    }
    // F2[X]/(X^2): Λ = X, λ = coefficient of X, c = 1, ∪ pairs 1 with X, ∩ = 1⊗X + X⊗1.
    let f2 = fp(2);
    let h = build_truncated_polynomial(f2, 2, 1, 1).unwrap();
    let one = f2.one();
    let pair = IntegralPair::find(&h).unwrap();
    let c = integral::switchback_scalar(&h, &pair).unwrap();
    let (cc, normalized) = integral::build_cupcap(&h, &pair).unwrap();
    let expect = |a, b, entries: Vec<(u64, u64)>| TensorMap::from_entries(f2, 2, a, b, entries.into_iter().map(|(o, i)| (o, i, one.clone()))).unwrap();
    let checks = [
        (normalized.element == expect(0, 1, vec![(1, 0)]), "Λ"),
        (normalized.functional == expect(1, 0, vec![(0, 1)]), "λ"),
        (c == Some(one.clone()), "c"),
        (*cc.cup == expect(2, 0, vec![(0, 1), (0, 2)]), "cup"),
        (*cc.cap == expect(0, 2, vec![(1, 0), (2, 0)]), "cap"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(format!("F2[X]/(X^2): {what} differs from its closed form"));
    }
    Ok("both identities on 10 algebras; closed forms match for k[Z2] and F2[X]/(X^2)".into())
}

fn c5_passcup() -> Outcome {
    for (name, h) in algebras() {
        let (cc, _) = integral::build_cupcap(&h, &IntegralPair::find(&h).unwrap()).map_err(|e| e.to_string())?;
        let b = BraidData::build(&h).map_err(|e| e.to_string())?;
        let mut eqs = vec![braid::passcup_equation(&h, &cc, &b).unwrap(), braid::passcap_equation(&h, &cc, &b).unwrap()];
        eqs.extend(braid::cupcap_braiding_equations(&h, &cc, &b.beta).unwrap());
        all_hold(&name, &eqs, None)?;
    }
    Ok("passcup, passcap and 4 cup/cap commutations with β on 10 algebras".into())
}

/// `x⊗y⊗z⊗w ↦ ∪(y⊗z)·x⊗∩(1)⊗w`, assembled from entries.
fn frobenius_oracle(cup: &TensorMap, cap: &TensorMap) -> TensorMap {
    let n = cup.n();
    let nn = (n * n) as u64;
    let mut entries = Vec::new();
    for (_, yz, c) in cup.entries() {
        for (ab, _, d) in cap.entries() {
            for x in 0..n as u64 {
                for w in 0..n as u64 {
                    let input = (x * nn + yz) * n as u64 + w;
                    let output = (x * nn + ab) * n as u64 + w;
                    entries.push((output, input, c * d));
                }
            }
        }
    }
    TensorMap::from_entries(cup.ring(), n, 4, 4, entries).unwrap()
}

fn c6_braided_frobenius() -> Outcome {
    for (name, h) in algebras() {
        let f = build_frobenius(&h, false).map_err(|e| format!("{name}: {e}"))?;
        let frob = f.frobenius_equations().unwrap();
        let bf = f.braided_frobenius_equations().unwrap();
        if frob.len() != 8 || bf.len() != 8 {
            return Err(format!("{name}: expected 8 + 8 equations"));
        }
        all_hold(&name, &frob, None)?;
        all_hold(&name, &bf, None)?;
        let oracle = frobenius_oracle(&f.cc.cup, &f.cc.cap);
        let id2 = h.identity(2).unwrap();
        let composites = [
            f.mu2.compose(&f.delta2).unwrap(),
            f.delta2.tensor(&id2).unwrap().compose(&id2.tensor(&f.mu2).unwrap()).unwrap(),
            id2.tensor(&f.delta2).unwrap().compose(&f.mu2.tensor(&id2).unwrap()).unwrap(),
        ];
        if composites.iter().any(|c| *c != oracle) {
            return Err(format!("{name}: a Frobenius composite differs from the closed form"));
        }
    }
    Ok("8 Frobenius and 8 braiding-naturality equations; closed form matches 3 composites on 10 algebras".into())
}

fn c7_twist() -> Outcome {
    let start = Instant::now();
    for (name, h) in algebras() {
        let f = build_frobenius(&h, false).unwrap();
        let t = TwistData::build(&f).map_err(|e| format!("{name}: {e}"))?;
        let b = &f.braid;
        let mut eqs = vec![twist::theta_core_equation(&h, &t).unwrap()];
        eqs.extend(twist::twist_braiding_equations(&h, &t.theta, &b.beta, "theta").unwrap());
        eqs.push(twist::slideloop_equation(&h, b, &t).unwrap());
        eqs.extend(twist::twist_frobenius_equations(&f, &t.theta, &t.theta_doubled, "theta").unwrap());
        eqs.push(twist::twist_mu_closed_form_equation(&f, &t).unwrap());
        eqs.push(twist::tortile_equation(&h, &t.theta, &t.theta_doubled, &b.beta).unwrap());
        eqs.extend(twist::twist_braiding_equations(&h, &t.big_theta, &b.beta, "Theta").unwrap());
        eqs.extend(twist::twist_frobenius_equations(&f, &t.big_theta, &t.big_theta_doubled, "Theta").unwrap());
        all_hold(&name, &eqs, None)?;
    }
    let time = within(start, Duration::from_secs(600))?;
    Ok(format!("θ closed form, θ and Θ braiding/μ₂/Δ₂ commutations, slide loop, tortile on 10 algebras; {time}"))
}

/// A finite abelian group with elements read off basis labels such as `g1^2*g2`.
struct GroupOracle {
    orders: Vec<usize>,
    index: BTreeMap<Vec<usize>, usize>,
    element: Vec<Vec<usize>>,
}

impl GroupOracle {
    fn new(h: &HopfAlgebra, orders: &[usize]) -> GroupOracle {
        let element: Vec<Vec<usize>> = h
            .labels()
            .iter()
            .map(|label| {
                let mut e = vec![0; orders.len()];
                if label != "e" {
                    for factor in label.split('*') {
                        let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
                        let slot = base.trim_start_matches('g').parse::<usize>().map_or(0, |i| i - 1);
                        e[slot] = exp.parse().unwrap();
                    }
                }
                e
            })
            .collect();
        let index = element.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        GroupOracle {
            orders: orders.to_vec(),
            index,
            element,
        }
    }

    fn op(&self, a: usize, b: usize, sign: i64) -> usize {
        let e: Vec<usize> = (0..self.orders.len())
            .map(|k| {
                let o = self.orders[k] as i64;
                ((self.element[a][k] as i64 + sign * self.element[b][k] as i64).rem_euclid(o)) as usize
            })
            .collect();
        self.index[&e]
    }

    /// `x·y⁻¹·z`
    fn heap(&self, x: usize, y: usize, z: usize) -> usize {
        self.op(self.op(x, y, -1), z, 1)
    }
}

fn single(map: &TensorMap, input: &[usize]) -> Option<Vec<usize>> {
    let col = map.column(MultiIndex(input.to_vec()).flatten(map.n()));
    (col.len() == 1 && col[0].1.is_one()).then(|| MultiIndex::from_flat(map.n(), map.out_arity(), col[0].0).0)
}

fn c8_group_oracle() -> Outcome {
    let mut checked = 0;
    for (name, h) in algebras() {
        let Family::Group { orders } = h.family().clone() else { continue };
        let g = GroupOracle::new(&h, &orders);
        let f = build_frobenius(&h, false).unwrap();
        let t = TwistData::build(&f).unwrap();
        let n = h.n();
        for x in 0..n {
            for y in 0..n {
                if single(&t.theta, &[x, y]) != Some(vec![y, g.heap(y, x, y)]) {
                    return Err(format!("{name}: θ({x},{y}) disagrees with the group formula"));
                }
                for u in 0..n {
                    for v in 0..n {
                        let want = vec![u, v, g.heap(x, u, v), g.heap(y, u, v)];
                        if single(&f.braid.beta, &[x, y, u, v]) != Some(want) {
                            return Err(format!("{name}: β({x},{y},{u},{v}) disagrees with the group formula"));
                        }
                    }
                }
            }
        }
        checked += 1;
    }
    Ok(format!("β and θ match the brute-force heap on all {checked} group algebras"))
}

fn c9_mutation() -> Outcome {
    let h = build_group_algebra(q(), &[2]).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().build().unwrap();
    let mut caught = Vec::new();
    for out in 0..2u64 {
        for input in 0..4u64 {
            let old = h.mu().entry(out, input);
            let new = if old.is_zero() { q().one() } else { q().zero() };
            let mut parts: HopfParts = h.parts();
            parts.mu = parts.mu.with_entry(out, input, new).unwrap();
            let mutant = HopfAlgebra::from_parts(parts, h.labels().to_vec(), Family::Explicit, false).unwrap();
            let records = run_suites(&Structures::new(mutant), &Suite::ALL, &pool);
            let failing: Vec<&str> = records.iter().filter(|r| r.is_failure()).map(|r| r.name.as_str()).collect();
            if failing.is_empty() {
                return Err(format!("flipping μ entry ({out} <- {input}) goes undetected"));
            }
            caught.push(failing[0].to_string());
        }
    }
    Ok(format!("all 8 single-entry flips of μ detected (first failures: {})", caught.join(", ")))
}

fn c10_diagram() -> Outcome {
    let library = diagram::library();
    for m in &library {
        for side in [&m.lhs, &m.rhs] {
            if diagram::parse(&side.to_string()).map_err(|e| e.to_string())? != *side {
                return Err(format!("{} does not round-trip", m.name));
            }
        }
    }
    let theta_loop = library.iter().find(|m| m.name == "theta_loop").ok_or("no theta_loop move")?;
    let cancel = library.iter().find(|m| m.name == "cancelpair").ok_or("no cancelpair move")?;
    if cancel.expectation != Expectation::Observational {
        return Err("cancelpair is not observational".into());
    }
    let mut values = Vec::new();
    for (name, h) in algebras() {
        let f = build_frobenius(&h, false).unwrap();
        let t = TwistData::build(&f).unwrap();
        let ev = Evaluator::new(Context::from_frobenius(&f, Some(&t)).unwrap());
        if *ev.evaluate(&theta_loop.lhs).unwrap() != *t.big_theta {
            return Err(format!("{name}: the library's Θ expression differs from the twist module's Θ"));
        }
        let outcome = check_equation(&cancel.lhs, &cancel.rhs, &ev).map_err(|e| format!("{name}: {e}"))?;
        values.push(format!("{name}={}/{}", outcome.equal, twist::theta_equals_big_theta(&t)));
    }
    Ok(format!(
        "{} moves round-trip; Θ expression bit-exact on 10 algebras; observed cancelpair/theta_equals_Theta: {}",
        library.len(),
        values.join(", ")
    ))
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "[algebra]\nfamily = \"truncated_poly\"\np = 2\nk = 2\n").map_err(|e| e.to_string())?;
    let mut json = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("report{k}.json"));
        let report = verify(&VerifyArgs {
            config: config.clone(),
            out: Some(out.clone()),
            jobs: Some(4),
        })
        .map_err(|e| e.to_string())?;
        let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
        let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        for check in value["checks"].as_array_mut().ok_or("no checks")? {
            check["wall_time_ms"] = serde_json::Value::Null;
        }
        if report.exit_code != 0 {
            return Err("verify did not pass".into());
        }
        json.push(serde_json::to_string(&value).unwrap());
    }
    if json[0] != json[1] {
        return Err("reports differ beyond timing fields".into());
    }
    Ok("two verify runs give identical JSON modulo wall_time_ms".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Hopf axiom suite", c1_hopf_axioms),
        ("TSD and invertibility", c2_tsd),
        ("Yang-Baxter equation", c3_ybe),
        ("switchback and closed forms", c4_switchback),
        ("passcup, passcap, cup/cap through β", c5_passcup),
        ("braided Frobenius", c6_braided_frobenius),
        ("twist suite", c7_twist),
        ("group-formula oracle", c8_group_oracle),
        ("mutation sensitivity", c9_mutation),
        ("diagram language", c10_diagram),
        ("determinism", c11_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string()) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

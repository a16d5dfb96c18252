use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::frobenius::build_frobenius;
use crate::hopf::{build_group_algebra, build_truncated_polynomial};
use crate::scalar::Ring;
use crate::tensor::TensorMap;
use crate::twist::TwistData;

fn q() -> Ring {
    Ring::Rationals
}

fn fp(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

fn gen(name: &str) -> Diagram {
    Diagram {
        node: Node::Generator(name.into()),
        pos: Pos::default(),
        arity: None,
    }
}

fn power(name: &str, k: usize) -> Diagram {
    Diagram {
        node: Node::Power(name.into(), k),
        pos: Pos::default(),
        arity: None,
    }
}

fn par(items: Vec<Diagram>) -> Diagram {
    Diagram {
        node: Node::Parallel(items),
        pos: Pos::default(),
        arity: None,
    }
}

fn seq(items: Vec<Diagram>) -> Diagram {
    Diagram {
        node: Node::Sequential(items),
        pos: Pos::default(),
        arity: None,
    }
}

fn evaluator(h: &crate::hopf::HopfAlgebra, with_twist: bool) -> Evaluator {
    let f = build_frobenius(h, false).unwrap();
    let t = with_twist.then(|| TwistData::build(&f).unwrap());
    Evaluator::new(Context::from_frobenius(&f, t.as_ref()).unwrap())
}

#[test]
fn parses_basic_expressions() {
    assert_eq!(parse("mu ; delta").unwrap(), seq(vec![gen("mu"), gen("delta")]));
    assert_eq!(parse("id^2 * cup").unwrap(), par(vec![power("id", 2), gen("cup")]));
    let ybe = parse("(beta * id^2) ; (id^2 * beta) ; (beta * id^2)").unwrap();
    let a = par(vec![gen("beta"), power("id", 2)]);
    let b = par(vec![power("id", 2), gen("beta")]);
    assert_eq!(ybe, seq(vec![a.clone(), b, a]));
}

#[test]
fn precedence_and_comments() {
    let d = parse("mu * id ; # first layer\n mu").unwrap();
    assert_eq!(d, seq(vec![par(vec![gen("mu"), gen("id")]), gen("mu")]));
    assert_eq!(parse("((mu))").unwrap(), gen("mu"));
}

#[test]
fn parse_errors_carry_positions() {
    match parse("mu ;\n  * delta") {
        Err(crate::Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("mu ^ x"), Err(crate::Error::Parse { line: 1, column: 6, .. })));
    assert!(matches!(parse("(mu"), Err(crate::Error::Parse { .. })));
    assert!(matches!(parse(""), Err(crate::Error::Parse { .. })));
    assert!(matches!(parse("mu $"), Err(crate::Error::Parse { column: 4, .. })));
}

#[test]
fn arity_examples() {
    match parse("mu ; mu").unwrap().arity_check() {
        Err(crate::Error::Arity { line, column, .. }) => assert_eq!((line, column), (1, 6)),
        other => panic!("{other:?}"),
    }
    assert_eq!(parse("cap ; cup").unwrap().arities().unwrap(), (0, 0));
    assert_eq!(parse("(id * cap * id)").unwrap().arities().unwrap(), (2, 4));
    assert!(matches!(parse("frob").unwrap().arity_check(), Err(crate::Error::Arity { .. })));
    let checked = parse("(id*cup)*id").unwrap().arity_check().unwrap();
    assert_eq!(checked.arity, Some((4, 2)));
}

#[test]
fn library_round_trips_through_the_printer() {
    let moves = library();
    assert!(moves.len() >= 40);
    for m in &moves {
        for side in [&m.lhs, &m.rhs] {
            let printed = side.to_string();
            assert_eq!(&parse(&printed).unwrap(), side, "{}", m.name);
        }
        let reparsed = parse_equation_file(&m.to_string()).unwrap();
        assert_eq!(reparsed[0], *m);
    }
}

#[test]
fn equation_file_errors() {
    assert!(matches!(parse_equation_file("x : mu == id"), Err(crate::Error::Arity { line: 1, .. })));
    assert!(matches!(parse_equation_file("\nbad line"), Err(crate::Error::Parse { line: 2, .. })));
    assert!(matches!(parse_equation_file("a : mu == mu\na : mu == mu"), Err(crate::Error::Parse { line: 2, .. })));
    assert!(matches!(parse_equation_file("a : mu mu"), Err(crate::Error::Parse { .. })));
    match parse_equation_file("e : id ==  mu") {
        Err(crate::Error::Arity { column, .. }) => assert_eq!(column, 12),
        other => panic!("{other:?}"),
    }
}

#[test]
fn evaluation_examples() {
    let ev = evaluator(&build_group_algebra(q(), &[2]).unwrap(), false);
    let loop_value = ev.evaluate(&parse("cap ; cup").unwrap()).unwrap();
    assert_eq!(loop_value.as_scalar().unwrap(), q().from_i64(2));
    let one = ev.evaluate(&parse("eta ; eps").unwrap()).unwrap();
    assert!(one.as_scalar().unwrap().is_one());

    let ev2 = evaluator(&build_group_algebra(fp(2), &[2]).unwrap(), false);
    assert!(ev2.evaluate(&parse("cap ; cup").unwrap()).unwrap().as_scalar().unwrap().is_zero());
}

#[test]
fn missing_generator_is_a_context_error() {
    let ev = evaluator(&build_group_algebra(q(), &[2]).unwrap(), false);
    assert!(matches!(ev.evaluate(&parse("theta").unwrap()), Err(crate::Error::Context(_))));
}

#[test]
fn theta_expression_matches_twist_module() {
    for h in [build_group_algebra(q(), &[2]).unwrap(), build_truncated_polynomial(fp(2), 2, 1, 1).unwrap()] {
        let f = build_frobenius(&h, false).unwrap();
        let t = TwistData::build(&f).unwrap();
        let ev = Evaluator::new(Context::from_frobenius(&f, Some(&t)).unwrap());
        let expr = "(id^2 * cap) ; (id^3 * cap * id) ; (beta * id^2) ; (id^3 * cup * id) ; (id^2 * cup)";
        assert_eq!(*ev.evaluate(&parse(expr).unwrap()).unwrap(), *t.big_theta);
    }
}

#[test]
fn asserted_library_moves_hold() {
    let algebras = [
        build_group_algebra(q(), &[2]).unwrap(),
        build_group_algebra(q(), &[3]).unwrap(),
        build_truncated_polynomial(fp(2), 2, 1, 1).unwrap(),
        build_truncated_polynomial(fp(3), 3, 1, 1).unwrap(),
    ];
    for h in &algebras {
        let ev = evaluator(h, true);
        for m in library() {
            let out = check_equation(&m.lhs, &m.rhs, &ev).unwrap();
            if m.expectation == Expectation::Asserted {
                assert!(out.equal, "{} {}: {:?}", h.family(), m.name, out.witnesses);
            }
        }
        assert!(ev.cached_entries() > 0);
    }
}

#[test]
fn failing_equation_reports_witnesses() {
    let ev = evaluator(&build_group_algebra(q(), &[3]).unwrap(), false);
    let (l, r) = parse_equation("beta ; beta == id^4", Pos { line: 1, column: 1 }).unwrap();
    let out = check_equation(&l, &r, &ev).unwrap();
    assert!(!out.equal);
    assert!(!out.witnesses.is_empty() && out.witnesses.len() <= 10);
    let mut sorted = out.witnesses.clone();
    sorted.sort_by_key(|w| (w.input.flatten(3), w.output.flatten(3)));
    assert_eq!(sorted, out.witnesses);
}

#[test]
fn mismatched_sides_are_an_arity_error() {
    let ev = evaluator(&build_group_algebra(q(), &[2]).unwrap(), false);
    let l = parse("mu").unwrap();
    let r = parse("id").unwrap();
    assert!(matches!(check_equation(&l, &r, &ev), Err(crate::Error::Arity { .. })));
}

#[test]
fn greedy_and_left_to_right_agree() {
    let h = build_truncated_polynomial(fp(2), 2, 1, 1).unwrap();
    let f = build_frobenius(&h, false).unwrap();
    let t = TwistData::build(&f).unwrap();
    let ctx = Context::from_frobenius(&f, Some(&t)).unwrap();
    let greedy = Evaluator::with_strategy(ctx.clone(), super::Strategy::Greedy);
    let ltr = Evaluator::with_strategy(ctx, super::Strategy::LeftToRight);
    for m in library() {
        for side in [&m.lhs, &m.rhs] {
            assert_eq!(greedy.evaluate(side).unwrap(), ltr.evaluate(side).unwrap(), "{}", m.name);
        }
    }
}

#[test]
fn concurrent_evaluation_shares_the_cache() {
    let ev = Arc::new(evaluator(&build_group_algebra(q(), &[2]).unwrap(), false));
    let d = parse("(beta * id^2) ; (id^2 * beta)").unwrap();
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| ev.evaluate(&d).unwrap())).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(results.windows(2).all(|w| w[0] == w[1]));
}

/// Generators usable in random diagrams over the group algebra context.
const POOL: [&str; 10] = ["id", "mu", "delta", "eta", "eps", "S", "tau", "cup", "cap", "T"];

fn random_layer(inputs: usize, picks: &[usize]) -> Option<Diagram> {
    // Fill `inputs` wires left to right with generators that fit.
    let mut remaining = inputs;
    let mut items = Vec::new();
    let mut k = 0;
    while remaining > 0 || (items.is_empty() && inputs == 0) {
        let pick = picks.get(k).copied().unwrap_or(0);
        k += 1;
        let name = POOL
            .iter()
            .cycle()
            .skip(pick % POOL.len())
            .take(POOL.len())
            .find(|g| {
                let (a, _) = generator_arity(g).unwrap();
                a <= remaining && (a > 0 || items.len() < 3)
            })?;
        let (a, _) = generator_arity(name).unwrap();
        remaining -= a;
        items.push(gen(name));
        if k > 8 {
            break;
        }
    }
    if remaining > 0 {
        return None;
    }
    Some(if items.len() == 1 { items.pop().unwrap() } else { par(items) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_compositional(start in 1usize..4, picks in proptest::collection::vec(0usize..10, 24)) {
        let h = build_group_algebra(q(), &[2]).unwrap();
        let ev = evaluator(&h, false);
        let mut layers = Vec::new();
        let mut wires = start;
        for chunk in picks.chunks(8).take(3) {
            let Some(layer) = random_layer(wires, chunk) else { break };
            let (_, out) = layer.arities().unwrap();
            if out > 4 {
                break;
            }
            wires = out;
            layers.push(layer);
        }
        prop_assume!(layers.len() >= 2);
        let whole = seq(layers.clone());
        let mut expected = ev.evaluate(&layers[0]).unwrap().as_ref().clone();
        for layer in &layers[1..] {
            expected = expected.compose(&ev.evaluate(layer).unwrap()).unwrap();
        }
        let got = ev.evaluate(&whole).unwrap();
        prop_assert_eq!(got.as_ref(), &expected);
        for layer in &layers {
            if let Node::Parallel(items) = &layer.node {
                let maps: Vec<TensorMap> = items.iter().map(|i| ev.evaluate(i).unwrap().as_ref().clone()).collect();
                let got = ev.evaluate(layer).unwrap();
                let want = TensorMap::tensor_all(maps.iter()).unwrap();
                prop_assert_eq!(got.as_ref(), &want);
            }
        }
    }
}

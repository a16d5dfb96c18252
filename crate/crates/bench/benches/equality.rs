use std::hint::black_box;

use bfl_bench::{fixtures, rank_nine};
use bfl_core::braid::{self, BraidData};
use bfl_core::diagram::{parse, Context, Evaluator, Strategy};
use bfl_core::frobenius::build_frobenius;
use bfl_core::tensor::CompareMode;
use bfl_core::twist::TwistData;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_ybe(c: &mut Criterion) {
    let mut group = c.benchmark_group("ybe");
    group.sample_size(10);
    for (name, h) in fixtures() {
        let eq = braid::ybe_equation(&BraidData::build(&h).unwrap().beta).unwrap();
        for mode in [CompareMode::Dense, CompareMode::Streaming] {
            group.bench_function(format!("{name}/{mode:?}"), |b| {
                b.iter(|| assert!(eq.lhs.compare_in_mode(black_box(&eq.rhs), mode).unwrap().equal))
            });
        }
    }
    group.finish();
}

fn bench_rank_nine(c: &mut Criterion) {
    let h = rank_nine();
    let b = BraidData::build(&h).unwrap();
    let ybe = braid::ybe_equation(&b.beta).unwrap();
    let tsd = braid::tsd_equation(&h, &b.t).unwrap();
    let mut group = c.benchmark_group("rank9_streaming");
    group.sample_size(10);
    group.bench_function("tsd", |bch| {
        bch.iter(|| tsd.lhs.compare_in_mode(&tsd.rhs, CompareMode::Streaming).unwrap())
    });
    group.bench_function("ybe", |bch| {
        bch.iter(|| ybe.lhs.compare_in_mode(&ybe.rhs, CompareMode::Streaming).unwrap())
    });
    group.finish();
}

fn bench_diagram(c: &mut Criterion) {
    let (_, h) = fixtures().swap_remove(1);
    let f = build_frobenius(&h, false).unwrap();
    let t = TwistData::build(&f).unwrap();
    let ctx = Context::from_frobenius(&f, Some(&t)).unwrap();
    let expr = parse("((id^2 * cap) ; (id^3 * cap * id) ; (betainv * id^2) ; (id^3 * cup * id) ; (id^2 * cup)) ; ((id^2 * cap) ; (id^3 * cap * id) ; (beta * id^2) ; (id^3 * cup * id) ; (id^2 * cup))").unwrap();
    let mut group = c.benchmark_group("diagram_eval");
    for strategy in [Strategy::Greedy, Strategy::LeftToRight] {
        group.bench_function(format!("{strategy:?}"), |b| {
            // A fresh evaluator per iteration so the subdiagram cache starts cold.
            b.iter(|| Evaluator::with_strategy(ctx.clone(), strategy).evaluate(black_box(&expr)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_ybe, bench_rank_nine, bench_diagram);
criterion_main!(benches);

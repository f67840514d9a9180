use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use koecher::identities::{markov_series, zeta5_series};
use koecher::transform::{accelerated_sum, TransformInstance};
use koecher::PrecisionContext;

fn accelerated(c: &mut Criterion) {
    let mut g = c.benchmark_group("accelerated");
    for digits in [15u32, 30, 60] {
        let ctx = PrecisionContext::new(digits);
        g.bench_with_input(BenchmarkId::new("zeta3_markov", digits), &ctx, |b, ctx| {
            b.iter(|| markov_series(ctx).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("zeta5_two_series", digits), &ctx, |b, ctx| {
            b.iter(|| zeta5_series(ctx).unwrap())
        });
    }
    let inst = TransformInstance::koecher(&koecher::kernel::rational::rat(1, 2)).unwrap();
    let ctx = PrecisionContext::new(30);
    g.bench_function("koecher_transform_x_half", |b| b.iter(|| accelerated_sum(&inst, &ctx).unwrap()));
    g.finish();
}

/// Direct summation at a precision where it is still feasible, for contrast.
fn direct_vs_accelerated(c: &mut Criterion) {
    let mut g = c.benchmark_group("direct_vs_accelerated");
    g.sample_size(10);
    for id in koecher_bench::cases() {
        g.bench_function(id, |b| b.iter(|| koecher_bench::run(id, 8, 1_000_000).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, accelerated, direct_vs_accelerated);
criterion_main!(benches);

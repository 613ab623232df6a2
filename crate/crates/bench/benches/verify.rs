use criterion::{black_box, criterion_group, criterion_main, Criterion};
use oarray::array::{character_sum_check, max_strength_via_distances, verify_strength};
use oarray::boolean::BooleanFunction;
use oarray::constructions::{dual_code_oa, nordstrom_robinson, LinearCode};

fn strength(c: &mut Criterion) {
    let nr = nordstrom_robinson().unwrap();
    let dual = dual_code_oa(&LinearCode::code_13_3_7()).unwrap();

    let mut group = c.benchmark_group("strength");
    group.sample_size(20);
    group.bench_function("count nr t=5", |b| b.iter(|| verify_strength(black_box(&nr), 5)));
    group.bench_function("characters nr t=5", |b| {
        b.iter(|| character_sum_check(black_box(&nr), 5))
    });
    group.bench_function("distances nr", |b| b.iter(|| max_strength_via_distances(black_box(&nr))));
    group.bench_function("count dual13 t=6", |b| b.iter(|| verify_strength(black_box(&dual), 6)));
    group.finish();
}

fn transform(c: &mut Criterion) {
    let nr = nordstrom_robinson().unwrap();
    let f = BooleanFunction::oa_to_support(&nr).unwrap();
    c.bench_function("ci_order nr indicator", |b| b.iter(|| black_box(&f).ci_order()));
}

criterion_group!(benches, strength, transform);
criterion_main!(benches);

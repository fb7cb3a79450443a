use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mmcurve::fat::fat_fn_virasoro;
use mmcurve::onecut::solve_one_cut_h;
use mmcurve::thin::{thin_frame, thin_z_of_v, thin_z_of_v_composition};
use mmcurve::Sign;
use mmcurve_bench::{dense_series, mixed_frame};

fn arithmetic(c: &mut Criterion) {
    let a = dense_series(6);
    let b = dense_series(5);
    c.bench_function("mul dense degree 6", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("invert dense degree 6", |bn| bn.iter(|| black_box(&a).invert().unwrap()));
    c.bench_function("sqrt dense degree 6", |bn| bn.iter(|| black_box(&a).sqrt(Sign::Plus).unwrap()));
}

fn pipelines(c: &mut Criterion) {
    let thin = thin_frame(&[3], 5).unwrap();
    c.bench_function("thin z g3 v^14 fixed point", |bn| bn.iter(|| thin_z_of_v(&thin, 14, 5).unwrap()));
    c.bench_function("thin z g3 v^14 composition", |bn| {
        bn.iter(|| thin_z_of_v_composition(&thin, 14, 5).unwrap())
    });
    let frame = mixed_frame(4);
    c.bench_function("fat virasoro g1g2g3 degree 4", |bn| bn.iter(|| fat_fn_virasoro(&frame, 8, 4).unwrap()));
    c.bench_function("one-cut H g1g2g3 degree 4", |bn| bn.iter(|| solve_one_cut_h(&frame, 4, 8).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = arithmetic, pipelines
}
criterion_main!(benches);

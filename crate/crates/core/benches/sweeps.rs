use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use opcalc_core::algebra::{dual_numbers, matrix_algebra};
use opcalc_core::comp_module::CompModule;
use opcalc_core::exec::Strategy;
use opcalc_core::hochschild::{build_hochschild, Caps};
use opcalc_core::homology;
use opcalc_core::operad::check_operad_axioms;
use opcalc_core::scalar::FieldSpec;
use opcalc_core::verify::{self, Suite, VerifyConfig};

fn strategies() -> Vec<(&'static str, Strategy)> {
    let mut s = vec![("sequential", Strategy::Sequential)];
    if Strategy::parallel_available() {
        s.push(("parallel", Strategy::Parallel));
    }
    s
}

fn operad_axioms(c: &mut Criterion) {
    let m = build_hochschild(&dual_numbers(FieldSpec::Rationals), None, Caps { arity: 7, degree: 6 }).unwrap();
    let mut group = c.benchmark_group("operad_axioms");
    group.sample_size(10);
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, 3), &s, |b, &s| {
            b.iter(|| black_box(check_operad_axioms(m.operad(), 3, s).unwrap()))
        });
    }
    group.finish();
}

fn homology_tables(c: &mut Criterion) {
    let m = build_hochschild(&matrix_algebra(FieldSpec::Rationals, 2), None, Caps { arity: 6, degree: 6 }).unwrap();
    let mut group = c.benchmark_group("hochschild_homology_m2");
    group.sample_size(10);
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, 3), &s, |b, &s| {
            b.iter(|| black_box(homology::hochschild_homology(&m, 3, s, None).unwrap()))
        });
    }
    group.finish();
}

fn calculus_sweep(c: &mut Criterion) {
    let m = build_hochschild(&dual_numbers(FieldSpec::Rationals), None, Caps { arity: 7, degree: 7 }).unwrap();
    let mut group = c.benchmark_group("calculus_sweep");
    group.sample_size(10);
    for (name, s) in strategies() {
        let cfg = VerifyConfig { max_degree: 3, trials: 8, strategy: s, ..VerifyConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, 3), &cfg, |b, cfg| {
            b.iter(|| black_box(verify::run(&m, Suite::Calculus, cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(sweeps, operad_axioms, homology_tables, calculus_sweep);
criterion_main!(sweeps);

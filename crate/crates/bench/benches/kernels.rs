use brauer_core::fgl::{build_group_law, v_polynomials};
use brauer_core::hyperfam::FamilyId;
use brauer_core::weil::slope_factorize;
use brauer_core::{FamilyParams, FormalGroupLogarithm, WeilPoly};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn pencil_log(p: u64, precision: u32) -> FormalGroupLogarithm {
    let spec = FamilyId::QuarticPencil1.spec();
    let params = FamilyParams::from_residues(&spec, p, precision, &[3, 1, 2, 1], Some(5), false).unwrap();
    FormalGroupLogarithm::family(&spec, &params, p, precision).unwrap()
}

fn log_coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_coefficients");
    for p in [5u64, 13, 31] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| {
                let log = pencil_log(p, 3);
                black_box(log.coeff(p * p).unwrap())
            })
        });
    }
    group.finish();
}

fn group_law(c: &mut Criterion) {
    let log = pencil_log(13, 6);
    c.bench_function("group_law_13_D20", |b| {
        b.iter(|| black_box(build_group_law(&log, 20).unwrap()))
    });
}

fn slope_factor(c: &mut Criterion) {
    // (1 - 7T)(1 - 49T)(1 - 343T) at p = 7: three slopes.
    let f = WeilPoly::from_i64(&[1, -399, 19551, -117649], 7, 1).unwrap();
    c.bench_function("slope_factorize_7_N6", |b| {
        b.iter(|| black_box(slope_factorize(&f, 6).unwrap()))
    });
}

fn v_polys(c: &mut Criterion) {
    let mut group = c.benchmark_group("v_polynomials");
    group.sample_size(10);
    for (id, p) in [(FamilyId::QuasiDiagonalQuartic, 13u64), (FamilyId::QuasiDiagonalSextic, 31)] {
        let spec = id.spec();
        group.bench_with_input(BenchmarkId::new(id.name(), p), &p, |b, &p| {
            b.iter(|| black_box(v_polynomials(&spec, p).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, log_coefficients, group_law, slope_factor, v_polys);
criterion_main!(benches);

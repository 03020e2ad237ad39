use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use knotcon::alexmod::AlexModule;
use knotcon::exactalg::Rational;
use knotcon::freegroup::{bing_curve, derived_depth_batch, FreeWord};
use knotcon::knots;
use knotcon::seifert::{rho0_batch, SeifertMatrix};
use knotcon::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn seifert_batch() -> Vec<SeifertMatrix> {
    let base = [knots::trefoil(), knots::figure_eight(), knots::five2(), knots::nine46(), knots::eight9()];
    let mats: Vec<SeifertMatrix> = base.iter().map(|k| k.seifert().unwrap().clone()).collect();
    let mut out = Vec::new();
    for a in &mats {
        for b in &mats {
            out.push(a.connected_sum(b));
        }
    }
    out
}

fn rho0(c: &mut Criterion) {
    let batch = seifert_batch();
    let tol = Rational::new(1.into(), 1_000_000_000.into());
    let mut g = c.benchmark_group("rho0_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| rho0_batch(black_box(&batch), &tol, exec).unwrap())
        });
    }
    g.finish();
}

fn derived_depths(c: &mut Criterion) {
    let mut words: Vec<FreeWord> = (1..=3).map(|n| bing_curve(n).unwrap()).collect();
    for s in ["[x1,x2]", "[[x1,x2],[x1,x2^-1]]", "[[x1,x2],x1]", "x1 x2 x1^-1", "[[x1,x2^2],[x2,x1^3]]"] {
        words.push(FreeWord::parse(s, 8).unwrap());
    }
    let mut g = c.benchmark_group("derived_depth_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| derived_depth_batch(black_box(&words), 4, exec))
        });
    }
    g.finish();
}

fn isotropic(c: &mut Criterion) {
    let v = knots::nine46().seifert().unwrap().connected_sum(knots::five2().seifert().unwrap());
    let m = AlexModule::from_seifert(&v).unwrap();
    let mut g = c.benchmark_group("isotropic_submodules");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| m.isotropic_submodules(exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, rho0, derived_depths, isotropic);
criterion_main!(benches);

//! Parallel vs sequential series kernels at figure scale (α = 100: a
//! ~1500-label Poisson window with a band-limited offset sum).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geomphase::kernel::{decayed_sum, phased_sum, phased_sum_seq, WeightedWindow};
use geomphase::poisson::poisson_weights;

fn bench_kernels(c: &mut Criterion) {
    let pw = poisson_weights(100.0, 1e-12).unwrap();
    let w = WeightedWindow { weights: &pw.weights, l_min: pw.window.l_min };
    // Fig. 3-scale coefficients: k = 0.001, η = 0.05, n_th = 100
    let delta = 2.0e-6;
    let decay = 2.0e-5;

    let mut group = c.benchmark_group("phased_sum_alpha100");
    group.bench_with_input(BenchmarkId::new("parallel", "fig3-point"), &w, |b, w| {
        b.iter(|| phased_sum(w, delta, decay, 0.0))
    });
    group.bench_with_input(BenchmarkId::new("sequential", "fig3-point"), &w, |b, w| {
        b.iter(|| phased_sum_seq(w, delta, decay, 0.0))
    });
    group.bench_with_input(BenchmarkId::new("decayed", "fig3-point"), &w, |b, w| {
        b.iter(|| decayed_sum(w, 2.0 * decay))
    });
    group.finish();
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);

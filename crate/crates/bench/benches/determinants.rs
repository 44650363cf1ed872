use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use derange_core::exact::ratio;
use derange_core::hankel::{det_bareiss, det_cofactor, det_condensation, hankel_matrix};
use derange_core::series::egf_values;
use derange_core::FamilySpec;
use std::hint::black_box;

fn kernels(c: &mut Criterion) {
    let spec = FamilySpec::Generalized { r: 2, x: ratio(-3, 5) };
    let seq = egf_values(&spec, 17).unwrap();
    let mut group = c.benchmark_group("hankel-det");
    for n in [3, 5, 8] {
        let m = hankel_matrix(&seq, n).unwrap();
        group.bench_with_input(BenchmarkId::new("bareiss", n + 1), &m, |b, m| b.iter(|| det_bareiss(black_box(m))));
        group.bench_with_input(BenchmarkId::new("condensation", n + 1), &m, |b, m| {
            b.iter(|| det_condensation(black_box(m)))
        });
        if n < 6 {
            group.bench_with_input(BenchmarkId::new("cofactor", n + 1), &m, |b, m| {
                b.iter(|| det_cofactor(black_box(m)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);

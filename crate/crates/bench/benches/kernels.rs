use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spectral_bench::{chain_modules, morphisms, sets, spectrum};
use spectral_core::{cokernel, decompose, kernel, ClosureStrategy, ScalarField};

fn fp(c: &mut Criterion) {
    let mut g = c.benchmark_group("fp");
    for n in [2, 4, 8] {
        let fs = morphisms(20, n, 3 * n as i64);
        g.bench_with_input(BenchmarkId::new("kernel", n), &fs, |b, fs| {
            b.iter(|| fs.iter().map(|f| kernel(black_box(f)).unwrap().0.len()).sum::<usize>())
        });
        g.bench_with_input(BenchmarkId::new("cokernel", n), &fs, |b, fs| {
            b.iter(|| fs.iter().map(|f| cokernel(black_box(f)).unwrap().0.len()).sum::<usize>())
        });
    }
    g.finish();
}

fn barcodes(c: &mut Criterion) {
    let field = ScalarField::ExactRationals;
    let mut g = c.benchmark_group("decompose");
    for len in [4, 8, 16] {
        let ms = chain_modules(20, 4, len);
        g.bench_with_input(BenchmarkId::from_parameter(len), &ms, |b, ms| {
            b.iter(|| ms.iter().map(|m| decompose(&field, black_box(m)).unwrap().total()).sum::<usize>())
        });
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let sp = spectrum();
    let us = sets(&sp, 50, 5);
    let mut g = c.benchmark_group("closure");
    for s in ClosureStrategy::ALL {
        g.bench_function(format!("{s:?}"), |b| {
            b.iter(|| us.iter().map(|u| sp.closure(black_box(u), s).components().len()).sum::<usize>())
        });
    }
    g.finish();
}

criterion_group!(benches, fp, barcodes, closure);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsw_core::channel::{modulate, reliability_matrix, transmit, SnrConvention};
use rsw_core::decoder::{classical_decode, reduced_decode, wu_decode};
use rsw_core::grs::Word;
use rsw_core::interp::{build_q, choose_parameters, ProjPoint};
use rsw_core::{Field, GrsCode, ReducedConfig};

fn rs63() -> GrsCode {
    GrsCode::reed_solomon(Field::with_default_modulus(6).unwrap(), 63, 31).unwrap()
}

fn noisy(code: &GrsCode, rng: &mut ChaCha8Rng, wt: usize) -> (Word, Word) {
    let c = code.random_codeword(rng);
    let mut r = c.clone();
    for i in sample(rng, code.n(), wt) {
        r[i] += code.field().random_nonzero(rng);
    }
    (c, r)
}

fn bench_classical(cr: &mut Criterion) {
    let code = rs63();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    cr.bench_function("classical_decode RS(63,31) 16 errors", |b| {
        b.iter_batched(|| noisy(&code, &mut rng, 16).1, |r| classical_decode(&code, &r).unwrap(), BatchSize::SmallInput)
    });
}

fn bench_build_q(cr: &mut Criterion) {
    let code = rs63();
    let f = code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = cr.benchmark_group("build_q");
    group.sample_size(10);
    for (n, t) in [(15usize, 9usize), (25, 12), (45, 16)] {
        let p = choose_parameters(n, t, 3, 2, false).unwrap();
        let points: Vec<ProjPoint> = (0..n)
            .map(|i| {
                let y = f.random_nonzero(&mut rng);
                ProjPoint::new(f.alpha_pow(i as i64), y, f.random(&mut rng), f).unwrap()
            })
            .collect();
        group.bench_function(format!("N={n} s={} ell={}", p.s, p.ell), |b| b.iter(|| build_q(&points, &p, f).unwrap()));
    }
    group.finish();
}

fn bench_wu(cr: &mut Criterion) {
    let code = rs63();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut group = cr.benchmark_group("wu_decode");
    group.sample_size(10);
    group.bench_function("RS(63,31) tau=19, 19 errors", |b| {
        b.iter_batched(|| noisy(&code, &mut rng, 19).1, |r| wu_decode(&code, &r, 19).unwrap(), BatchSize::SmallInput)
    });
    group.finish();
}

fn bench_reduced(cr: &mut Criterion) {
    let code = rs63();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut group = cr.benchmark_group("reduced_decode");
    group.sample_size(10);
    for l in [15, 25, 45] {
        let cfg = ReducedConfig::new(19, l);
        group.bench_function(format!("RS(63,31) tau=19 L={l}, 19 errors"), |b| {
            b.iter_batched(
                || {
                    let (_, r) = noisy(&code, &mut rng, 19);
                    let eta: Vec<f64> = (0..63).map(|_| rng.random()).collect();
                    (r, eta)
                },
                |(r, eta)| reduced_decode(&code, &r, &eta, &cfg).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_reliability(cr: &mut Criterion) {
    let code = rs63();
    let f = code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sigma = SnrConvention::EbN0.sigma(5.0, 31.0 / 63.0);
    let c = code.random_codeword(&mut rng);
    let y = transmit(&modulate(&c, f), sigma, &mut rng);
    cr.bench_function("reliability_matrix 63x64", |b| b.iter(|| reliability_matrix(&y, sigma, 6)));
}

criterion_group!(benches, bench_classical, bench_build_q, bench_wu, bench_reduced, bench_reliability);
criterion_main!(benches);

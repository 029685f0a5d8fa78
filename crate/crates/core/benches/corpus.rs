//! Compares parallel and sequential corpus verification. With the
//! `parallel` feature enabled (the default), `map_checks` fans out over
//! rayon; `map_checks_seq` is the plain iterator version.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trig_darboux::bispectral::verify_difference_identities;
use trig_darboux::corpus::random_trig_instance;
use trig_darboux::darboux::{build_trig, check_orthogonality, DarbouxTransform};
use trig_darboux::suite::{map_checks, map_checks_seq};

fn build_transforms(count: usize) -> Vec<DarbouxTransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let inst = random_trig_instance(&mut rng, 3);
        if let Ok(t) = build_trig(&inst.data, &inst.chains) {
            out.push(t);
        }
    }
    out
}

fn orthogonality(t: &DarbouxTransform) -> bool {
    let k = t.basis.len();
    check_orthogonality(t, k + 1, k + 1).unwrap_or(false)
}

fn bench_verification(c: &mut Criterion) {
    let transforms = build_transforms(8);

    let mut group = c.benchmark_group("orthogonality-corpus");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || transforms.clone(),
            |ts| map_checks(&ts, orthogonality),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || transforms.clone(),
            |ts| map_checks_seq(&ts, orthogonality),
            BatchSize::LargeInput,
        )
    });
    group.finish();

    let mut group = c.benchmark_group("difference-identity-corpus");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || transforms.clone(),
            |ts| map_checks(&ts, |t| verify_difference_identities(t).unwrap_or(false)),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || transforms.clone(),
            |ts| map_checks_seq(&ts, |t| verify_difference_identities(t).unwrap_or(false)),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_verification);
criterion_main!(benches);

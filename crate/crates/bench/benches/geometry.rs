use ck_core::clifford::{class_is_regular_spread, parallel_class, parallel_through, plane_C};
use ck_core::kleingeom::sample::{random_line, random_point};
use ck_core::{AlgebraConfig, Field, Gf2Rat, Rational};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn geometry<F: Field>(c: &mut Criterion, label: &str, json: &str, bound: u32) {
    let alg = AlgebraConfig::from_json(json)
        .unwrap()
        .build::<F>()
        .unwrap();
    let p = plane_C(&alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    c.bench_function(&format!("{label}/parallel_through"), |b| {
        b.iter_batched(
            || {
                (
                    random_point::<F, _>(&mut rng, bound),
                    random_line::<F, _>(&mut rng, bound),
                )
            },
            |(pt, m)| parallel_through(&p, &pt, &m).unwrap(),
            BatchSize::SmallInput,
        )
    });

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function(&format!("{label}/regular_spread"), |b| {
        b.iter_batched(
            || random_line::<F, _>(&mut rng, bound),
            |m| {
                let k = parallel_class(&p, &m).unwrap();
                let mut r = ChaCha8Rng::seed_from_u64(2);
                class_is_regular_spread(&k, &mut r, bound, 50).unwrap()
            },
            BatchSize::SmallInput,
        )
    });
}

fn benches(c: &mut Criterion) {
    geometry::<Rational>(
        c,
        "A1(-1,-3)",
        r#"{"case":"A1","field":"Q","a":"-1","b":"-3","validation":"definite"}"#,
        10,
    );
    geometry::<Gf2Rat>(
        c,
        "A2(s,t)",
        r#"{"case":"A2","field":"F2(s,t)","a":"s","b":"t","validation":"search:200"}"#,
        2,
    );
}

criterion_group! {
    name = group;
    config = Criterion::default().sample_size(20);
    targets = benches
}
criterion_main!(group);

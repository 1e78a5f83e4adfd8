use ck_core::clifford::{left_parallel, plane_C, plane_Cprime, right_parallel};
use ck_core::kleingeom::sample::random_line;
use ck_core::qalg::{exterior_square, DivisionCertificate};
use ck_core::{Algebra, AlgebraConfig, AlgebraElement, Error, Field, Gf2Rat, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build<F: Field>(json: &str) -> Algebra<F> {
    AlgebraConfig::from_json(json).unwrap().build().unwrap()
}

fn hamilton() -> Algebra<Rational> {
    build(r#"{"case":"A1","field":"Q","a":"-1","b":"-1","validation":"definite"}"#)
}

fn ring_laws<F: Field>(alg: &Algebra<F>, bound: u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let g = AlgebraElement::random_nonzero(&mut rng, bound);
        let h = AlgebraElement::random_nonzero(&mut rng, bound);
        let k = AlgebraElement::random_nonzero(&mut rng, bound);
        assert_eq!(alg.mul(&alg.mul(&g, &h), &k), alg.mul(&g, &alg.mul(&h, &k)));
        assert_eq!(alg.norm(&alg.mul(&g, &h)), alg.norm(&g).mul(&alg.norm(&h)));
        let gi = alg.inv(&g).unwrap();
        assert_eq!(alg.mul(&g, &gi), AlgebraElement::one());
        assert!(alg.quadratic_algebra_check(&g));
        // the induced map on V∧V is multiplicative
        let lg = alg.left_translation(&g).unwrap();
        let lh = alg.left_translation(&h).unwrap();
        let lgh = alg.left_translation(&alg.mul(&g, &h)).unwrap();
        assert_eq!(lg.compose(&lh).rows(), 4);
        assert_eq!(
            exterior_square(&lg)
                .unwrap()
                .compose(&exterior_square(&lh).unwrap()),
            exterior_square(&lgh).unwrap()
        );
    }
}

#[test]
fn quaternion_ring_laws() {
    ring_laws(&hamilton(), 10);
    ring_laws::<Gf2Rat>(
        &build(r#"{"case":"A2","field":"F2(s,t)","a":"s","b":"t","validation":"search:100"}"#),
        2,
    );
    ring_laws::<Gf2Rat>(
        &build(r#"{"case":"B","field":"F2(a,b)","a":"a","b":"b","validation":"frobenius"}"#),
        2,
    );
}

#[test]
fn hamilton_products() {
    let alg = hamilton();
    let [one, i, j, k] = [0, 1, 2, 3].map(AlgebraElement::<Rational>::basis);
    assert_eq!(alg.mul(&i, &j), k);
    assert_eq!(alg.mul(&j, &i), k.scale(&Rational::from_i64(-1)));
    assert_eq!(alg.mul(&k, &k), one.scale(&Rational::from_i64(-1)));
    assert_eq!(alg.certificate(), DivisionCertificate::CertifiedDefinite);
}

#[test]
fn split_algebras_are_rejected_with_a_zero_divisor() {
    let cfg = AlgebraConfig::from_json(
        r#"{"case":"A1","field":"Q","a":"1","b":"1","validation":"search:100"}"#,
    )
    .unwrap();
    match cfg.build::<Rational>() {
        Err(Error::NotDivisionAlgebra { .. }) | Err(Error::ZeroDivisor { .. }) => {}
        other => panic!("expected a zero divisor, got {:?}", other.map(|_| ())),
    }
    let positive = AlgebraConfig::from_json(
        r#"{"case":"A1","field":"Q","a":"1","b":"-1","validation":"definite"}"#,
    )
    .unwrap();
    assert!(positive.build::<Rational>().is_err());
}

#[test]
fn left_and_right_parallelism_differ_outside_case_b() {
    let alg = hamilton();
    let p = plane_C(&alg).unwrap();
    let pp = plane_Cprime(&alg).unwrap();
    assert_ne!(p.plane(), pp.plane());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen_left_only = false;
    for _ in 0..20 {
        let m = random_line(&mut rng, 10);
        let c = AlgebraElement::random_nonzero(&mut rng, 10);
        let n = alg.left_multiply_subspace(&c, &m).unwrap();
        assert!(left_parallel(&alg, &m, &n).unwrap());
        seen_left_only |= !right_parallel(&alg, &m, &n).unwrap();
    }
    assert!(seen_left_only);
}

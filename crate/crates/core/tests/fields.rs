use ck_core::scalars::FieldSpec;
use ck_core::{Field, Gf2Rat, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn triple<F: Field>(seed: u64, bound: u32) -> (F, F, F) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (
        F::random(&mut rng, bound),
        F::random(&mut rng, bound),
        F::random(&mut rng, bound),
    )
}

fn axioms<F: Field>(x: &F, y: &F, z: &F) {
    assert_eq!(x.add(y), y.add(x));
    assert_eq!(x.mul(y), y.mul(x));
    assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
    assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
    assert!(x.add(&x.neg()).is_zero());
    assert_eq!(x.sub(y).add(y), *x);
    if !x.is_zero() {
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(y.mul(x).div(x).unwrap(), *y);
    } else {
        assert!(x.inv().is_err());
    }
}

proptest! {
    #[test]
    fn rationals_form_a_field(seed in any::<u64>()) {
        let (x, y, z) = triple::<Rational>(seed, 50);
        axioms(&x, &y, &z);
    }

    #[test]
    fn function_field_forms_a_field(seed in any::<u64>()) {
        let (x, y, z) = triple::<Gf2Rat>(seed, 3);
        axioms(&x, &y, &z);
        prop_assert!(x.add(&x).is_zero());
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>()) {
        let q = FieldSpec::rationals();
        let f = FieldSpec::gf2_function_field("s", "t").unwrap();
        let (x, y, _) = triple::<Rational>(seed, 100);
        let r = x.div(&y).unwrap_or(x);
        prop_assert_eq!(Rational::parse(&r.render(&q), &q).unwrap(), r);
        let (u, v, _) = triple::<Gf2Rat>(seed, 3);
        let g = u.div(&v).unwrap_or(u);
        prop_assert_eq!(Gf2Rat::parse(&g.render(&f), &f).unwrap(), g);
    }
}

#[test]
fn characteristic_and_squares() {
    assert_eq!(Rational::characteristic(), 0);
    assert_eq!(Gf2Rat::characteristic(), 2);
    let s = Gf2Rat::s();
    assert_eq!(s.square().sqrt(), Some(s.clone()));
    assert_eq!(s.sqrt(), None);
    assert_eq!(Rational::from_i64(9).sqrt(), Some(Rational::from_i64(3)));
    assert_eq!(Rational::from_i64(2).sqrt(), None);
}

#[test]
fn parses_named_indeterminates() {
    let f = FieldSpec::gf2_function_field("a", "b").unwrap();
    let x = Gf2Rat::parse("(a+b)/(a*b+1)", &f).unwrap();
    let y = Gf2Rat::parse("a*b+1", &f).unwrap();
    assert_eq!(x.mul(&y), Gf2Rat::parse("b+a", &f).unwrap());
    assert!(Gf2Rat::parse("c", &f).is_err());
    assert!(Gf2Rat::parse("1/0", &f).is_err());
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::kleingeom::sample::{random_line, random_point, random_point_in};
use crate::kleingeom::{lines_meet, ComplexKind};
use crate::qalg::ValidationLevel;
use crate::scalars::{Gf2Rat, Rational};

type Q = Rational;

fn a1(a: i64, b: i64) -> Algebra<Q> {
    Algebra::new(
        FieldSpec::rationals(),
        AlgebraCase::A1,
        Q::from_i64(a),
        Q::from_i64(b),
        ValidationLevel::Definite,
    )
    .unwrap()
}

fn a2() -> Algebra<Gf2Rat> {
    Algebra::new(
        FieldSpec::gf2_function_field("s", "t").unwrap(),
        AlgebraCase::A2,
        Gf2Rat::s(),
        Gf2Rat::t(),
        ValidationLevel::Search(500),
    )
    .unwrap()
}

fn case_b() -> Algebra<Gf2Rat> {
    Algebra::new(
        FieldSpec::gf2_function_field("a", "b").unwrap(),
        AlgebraCase::B,
        Gf2Rat::s(),
        Gf2Rat::t(),
        ValidationLevel::Frobenius,
    )
    .unwrap()
}

fn bv(xs: [i64; 6]) -> Bivector<Q> {
    Bivector(xs.map(Q::from_i64))
}

fn qs(xs: [i64; 3]) -> [Q; 3] {
    xs.map(Q::from_i64)
}

fn span<F: Field>(vs: &[[i64; 4]]) -> Subspace<F> {
    let rows: Vec<Vector<F>> = vs.iter().map(|v| v.map(F::from_i64).to_vec()).collect();
    Subspace::span(4, &rows).unwrap()
}

#[test]
fn kappa_examples() {
    let h = a1(-1, -1);
    assert_eq!(kappa(&h, &bv([1, 0, 0, 0, 0, 0])), qs([1, 0, 0]));
    assert_eq!(kappa(&h, &bv([0, 0, 1, 1, 0, 0])), qs([0, 0, 0]));
    assert_eq!(kappa_prime(&h, &bv([1, 0, 0, 0, 0, 0])), qs([-1, 0, 0]));
    assert_eq!(kappa_prime(&h, &bv([0, 0, 1, -1, 0, 0])), qs([0, 0, 0]));
    let g = [
        Q::from_i64(2),
        Q::from_i64(-1),
        Q::from_i64(3),
        Q::from_i64(1),
    ];
    assert_eq!(kappa(&h, &crate::kleingeom::wedge(&g, &g)), qs([0, 0, 0]));
}

fn check_planes<F: Field>(alg: &Algebra<F>) {
    let (c, cperp) = table1(alg);
    let p = plane_C(alg).unwrap();
    let pp = plane_Cprime(alg).unwrap();
    assert_eq!(p.plane(), &c);
    assert_eq!(pp.plane(), &cperp);
    assert_eq!(&perp(p.plane()).unwrap(), pp.plane());
}

#[test]
fn planes_match_closed_forms() {
    check_planes(&a1(-1, -1));
    check_planes(&a1(-1, -3));
    check_planes(&a2());
    check_planes(&case_b());
}

#[test]
fn certificates() {
    assert_eq!(
        plane_C(&a1(-1, -1)).unwrap().certificate(),
        Certificate::CertifiedDefinite
    );
    assert_eq!(
        plane_C(&case_b()).unwrap().certificate(),
        Certificate::FrobeniusIndependent
    );
    assert_eq!(
        plane_C(&a2()).unwrap().certificate(),
        Certificate::Sampled(EXTERNALITY_SAMPLES)
    );
}

#[test]
fn characteristic_split() {
    let h = a1(-1, -3);
    let c = plane_C(&h).unwrap();
    assert!(c.plane().meet(&perp(c.plane()).unwrap()).unwrap().is_zero());

    let h = a2();
    let c = plane_C(&h).unwrap();
    let meet = c.plane().meet(&perp(c.plane()).unwrap()).unwrap();
    let (o, l) = (Gf2Rat::zero, Gf2Rat::one);
    let expected = Subspace::span(6, &[vec![Gf2Rat::t(), o(), o(), o(), o(), l()]]).unwrap();
    assert_eq!(meet, expected);

    let c = plane_C(&case_b()).unwrap();
    assert_eq!(&perp(c.plane()).unwrap(), c.plane());
}

#[test]
fn left_parallel_example() {
    let h = a1(-1, -1);
    let m = span::<Q>(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
    let n = span::<Q>(&[[0, 0, 1, 0], [0, 0, 0, 1]]);
    let c = parallel_witness(&h, &m, &n, true).unwrap().unwrap();
    assert_eq!(h.left_multiply_subspace(&c, &m).unwrap(), n);
    assert!(left_parallel(&h, &m, &m).unwrap());
    let bad = span::<Q>(&[[1, 0, 0, 0], [0, 0, 1, 0]]);
    assert!(!left_parallel(&h, &m, &bad).unwrap());
    assert_eq!(
        left_parallel(&h, &m, &span::<Q>(&[[1, 0, 0, 0]])).unwrap_err(),
        Error::NotALine(1)
    );
}

#[test]
fn parallel_through_example() {
    let h = a1(-1, -1);
    let p = plane_C(&h).unwrap();
    let m = span::<Q>(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
    let pt = span::<Q>(&[[0, 0, 1, 0]]);
    let n = parallel_through(&p, &pt, &m).unwrap();
    assert_eq!(n, span::<Q>(&[[0, 0, 1, 0], [0, 0, 0, 1]]));
    let on_m = span::<Q>(&[[1, 1, 0, 0]]);
    assert_eq!(parallel_through(&p, &on_m, &m).unwrap(), m);
}

fn check_equivalence<F: Field>(alg: &Algebra<F>, bound: u32) {
    let p = plane_C(alg).unwrap();
    let pp = plane_Cprime(alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..20 {
        let m = random_line::<F, _>(&mut rng, bound);
        let n = if trial % 2 == 0 {
            let c = AlgebraElement::random_nonzero(&mut rng, bound);
            if trial % 4 == 0 {
                alg.left_multiply_subspace(&c, &m).unwrap()
            } else {
                alg.right_multiply_subspace(&m, &c).unwrap()
            }
        } else {
            random_line::<F, _>(&mut rng, bound)
        };
        assert_eq!(
            left_parallel(alg, &m, &n).unwrap(),
            c_parallel(&p, &m, &n).unwrap()
        );
        assert_eq!(
            right_parallel(alg, &m, &n).unwrap(),
            c_parallel(&pp, &m, &n).unwrap()
        );
    }
}

#[test]
fn left_and_right_match_planes() {
    check_equivalence(&a1(-1, -1), 5);
    check_equivalence(&a1(-1, -3), 5);
    check_equivalence(&a2(), 2);
    check_equivalence(&case_b(), 2);
}

fn check_double_space<F: Field>(alg: &Algebra<F>, bound: u32) {
    let p = plane_C(alg).unwrap();
    let pp = plane_Cprime(alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let a = random_point::<F, _>(&mut rng, bound);
        let b = random_point::<F, _>(&mut rng, bound);
        let c = random_point::<F, _>(&mut rng, bound);
        match double_space_check(&p, &pp, &a, &b, &c) {
            Err(Error::NonCollinearRequired) => continue,
            r => assert!(r.unwrap()),
        }
        assert!(double_space_check(&pp, &p, &a, &b, &c).unwrap());
    }
    let a = span::<F>(&[[1, 0, 0, 0]]);
    let b = span::<F>(&[[0, 1, 0, 0]]);
    let c = span::<F>(&[[1, 1, 0, 0]]);
    assert_eq!(
        double_space_check(&p, &pp, &a, &b, &c).unwrap_err(),
        Error::NonCollinearRequired
    );
}

#[test]
fn double_space() {
    check_double_space(&a1(-1, -1), 5);
    check_double_space(&a2(), 2);
    check_double_space(&case_b(), 2);
}

fn check_classes<F: Field>(alg: &Algebra<F>, bound: u32) {
    let p = plane_C(alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let m = random_line::<F, _>(&mut rng, bound);
    let k = parallel_class(&p, &m).unwrap();
    assert_eq!(k.solid().dim(), 4);
    assert!(k.solid().contains(p.plane()).unwrap());
    let verdict = class_is_regular_spread(&k, &mut rng, bound, 100).unwrap();
    assert!(verdict.regular);
    let members = k.sample_members(&mut rng, bound, 4);
    for (i, x) in members.iter().enumerate() {
        assert!(k.contains(x).unwrap());
        for y in &members[i + 1..] {
            if x != y {
                assert!(!lines_meet(x, y).unwrap());
            }
        }
    }
    let pt = random_point::<F, _>(&mut rng, bound);
    let through = k.member_through(&pt).unwrap();
    assert!(through.contains(&pt).unwrap());
    assert!(c_parallel(&p, &through, &m).unwrap());
}

#[test]
fn classes_are_spreads() {
    check_classes(&a1(-1, -1), 5);
    check_classes(&a2(), 2);
    check_classes(&case_b(), 2);
}

#[test]
fn translations_fix_c_and_its_polar() {
    let h = a1(-1, -1);
    let p = plane_C(&h).unwrap();
    assert!(translation_invariance_check(&h, &AlgebraElement::one(), &p).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let c = AlgebraElement::random_nonzero(&mut rng, 5);
        assert!(translation_invariance_check(&h, &c, &p).unwrap());
    }
    let h = a2();
    let p = plane_C(&h).unwrap();
    let c = AlgebraElement::random_nonzero(&mut rng, 2);
    assert!(translation_invariance_check(&h, &c, &p).unwrap());
}

#[test]
fn forms_give_hyperplanes_through_c() {
    let h = a1(-1, -3);
    let p = plane_C(&h).unwrap();
    let forms = [[0, 1, 0, 0], [0, 0, 1, 0]].map(|f| f.map(Q::from_i64));
    let mut meet = Subspace::full(6);
    for phi in &forms {
        let w = hyperplane_from_form(&h, phi).unwrap();
        assert_eq!(w.dim(), 5);
        assert!(w.contains(p.plane()).unwrap());
        meet = meet.meet(&w).unwrap();
    }
    assert_eq!(meet.dim(), 4);
    let w4 = hyperplane_from_form(&h, &[0, 1, 1, 1].map(Q::from_i64)).unwrap();
    assert_eq!(&meet.meet(&w4).unwrap(), p.plane());
    assert!(matches!(
        hyperplane_from_form(&h, &[1, 0, 0, 0].map(Q::from_i64)),
        Err(Error::BadForm(_))
    ));

    let h = a2();
    let p = plane_C(&h).unwrap();
    let trace = [
        Gf2Rat::zero(),
        Gf2Rat::one(),
        Gf2Rat::zero(),
        Gf2Rat::zero(),
    ];
    let w = hyperplane_from_form(&h, &trace).unwrap();
    assert_eq!(w, p.plane().join(&perp(p.plane()).unwrap()).unwrap());
}

#[test]
fn classes_span_general_complex() {
    let h = a1(-1, -1);
    let p = plane_C(&h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let m1 = random_line::<Q, _>(&mut rng, 5);
    let m2 = random_line::<Q, _>(&mut rng, 5);
    let w = hyperplane_for_classes(&p, &m1, &m2).unwrap();
    assert_eq!(w.kind(), ComplexKind::General);
    assert!(w.contains_line(&m1).unwrap() && w.contains_line(&m2).unwrap());
    assert_eq!(
        hyperplane_for_classes(&p, &m1, &m1).unwrap_err(),
        Error::SameClass
    );
}

#[test]
fn crossed_pencils_through_a_plane() {
    let h = a1(-1, -1);
    let p = plane_C(&h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let pt = random_point::<Q, _>(&mut rng, 5);
        let z = crate::kleingeom::sample::random_extension(&mut rng, &pt, 3, 5);
        let m1 = pt.join(&random_point_in(&mut rng, &z, 5)).unwrap();
        let m2 = pt.join(&random_point_in(&mut rng, &z, 5)).unwrap();
        let q = random_point_in(&mut rng, &z, 5);
        if m1.dim() != 2 || m2.dim() != 2 || m1 == m2 || q == pt {
            continue;
        }
        let n1 = parallel_through(&p, &q, &m1).unwrap();
        let n2 = parallel_through(&p, &q, &m2).unwrap();
        assert!(is_pencil(&[&m1, &m2, &pt.join(&q).unwrap()]).unwrap());
        assert!(crossed_pencils_check(&p, &m1, &m2, &n1, &n2).unwrap());
    }
}

fn solids_agree_with_keys<F: Field>(p: &Parallelism<F>, lines: &[Subspace<F>]) {
    for m in lines {
        for n in lines {
            let by_solid = p.class_solid(m).unwrap() == p.class_solid(n).unwrap();
            assert_eq!(c_parallel(p, m, n).unwrap(), by_solid);
        }
    }
}

#[test]
fn class_keys_match_solid_equality() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let alg = a1(-1, -3);
    let p = plane_C(&alg).unwrap();
    let m = random_line::<Q, _>(&mut rng, 5);
    let mut lines = vec![m.clone()];
    for _ in 0..3 {
        let pt = random_point::<Q, _>(&mut rng, 5);
        lines.push(parallel_through(&p, &pt, &m).unwrap());
        lines.push(random_line::<Q, _>(&mut rng, 5));
    }
    solids_agree_with_keys(&p, &lines);

    // a plane through γ(span(e0, e1)) puts that line's key at zero
    let e = |i: usize| crate::linalg::unit::<Q>(6, i);
    let mutated = Parallelism::unchecked(Subspace::span(6, &[e(0), e(3), e(5)]).unwrap()).unwrap();
    let u = |i: usize| crate::linalg::unit::<Q>(4, i);
    let focus = Subspace::span(4, &[u(0), u(1)]).unwrap();
    let mut lines = vec![focus];
    lines.extend((0..4).map(|_| random_line::<Q, _>(&mut rng, 3)));
    solids_agree_with_keys(&mutated, &lines);
}

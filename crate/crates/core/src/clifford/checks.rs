use rand::Rng;

use super::{c_parallel, parallel_through, points_rank, Parallelism};
use crate::error::{Error, Result};
use crate::kleingeom::{
    check_line, complex_from_hyperplane, lines_meet, perp, LinearComplex, Regulus, PAIRS,
};
use crate::linalg::{solve_homogeneous, unit, Subspace, Vector};
use crate::qalg::{exterior_square, Algebra, AlgebraElement};
use crate::scalars::Field;

/// Axiom (D) on the triangle `p, q, r`: the `P`-parallel to `p⊕q` through
/// `r` meets the `P_perp`-parallel to `p⊕r` through `q`.
pub fn double_space_check<F: Field>(
    p: &Parallelism<F>,
    p_perp: &Parallelism<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
    c: &Subspace<F>,
) -> Result<bool> {
    if points_rank(&[a, b, c])? != 3 {
        return Err(Error::NonCollinearRequired);
    }
    let n1 = parallel_through(p, c, &a.join(b)?)?;
    let n2 = parallel_through(p_perp, b, &a.join(c)?)?;
    lines_meet(&n1, &n2)
}

/// For a regulus whose lines are mutually `P`-parallel, checks that
/// `samples.max(3)` lines of the opposite regulus are mutually
/// `P_perp`-parallel. The lines are transversals through random points of
/// the base line.
pub fn opposite_regulus_parallel_check<F: Field, R: Rng + ?Sized>(
    p: &Parallelism<F>,
    p_perp: &Parallelism<F>,
    r: &Regulus<F>,
    rng: &mut R,
    bound: u32,
    samples: usize,
) -> Result<bool> {
    let inside = r
        .plane()
        .integral_basis()
        .iter()
        .map(|x| p.solid_contains(r.base(), x))
        .collect::<Result<Vec<bool>>>()?;
    if !inside.iter().all(|&b| b) {
        return Err(Error::PreconditionFailed(
            "regulus lines are not mutually parallel".into(),
        ));
    }
    let mut lines: Vec<Subspace<F>> = Vec::new();
    while lines.len() < samples.max(3) {
        let pt = Subspace::span_owned(4, vec![r.base().random_nonzero(rng, bound)]);
        let m = r.transversal_through(&pt)?;
        if !lines.contains(&m) {
            lines.push(m);
        }
    }
    for m in &lines[1..] {
        if !c_parallel(p_perp, &lines[0], m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The linear complex whose hyperplane `T1 + T2` contains two distinct
/// parallel classes.
pub fn hyperplane_for_classes<F: Field>(
    p: &Parallelism<F>,
    m1: &Subspace<F>,
    m2: &Subspace<F>,
) -> Result<LinearComplex<F>> {
    let (t1, t2) = (p.class_solid(m1)?, p.class_solid(m2)?);
    if t1 == t2 {
        return Err(Error::SameClass);
    }
    let w = t1.join(&t2)?;
    if w.dim() != 5 {
        return Err(Error::BadDimension {
            expected: 5,
            got: w.dim(),
        });
    }
    complex_from_hyperplane(&w)
}

/// Lines through one common point inside one common plane.
pub fn is_pencil<F: Field>(lines: &[&Subspace<F>]) -> Result<bool> {
    let Some((first, rest)) = lines.split_first() else {
        return Ok(false);
    };
    check_line(first)?;
    let mut meet = (*first).clone();
    let mut join = (*first).clone();
    for l in rest {
        check_line(l)?;
        meet = meet.meet(l)?;
        join = join.join(l)?;
    }
    Ok(meet.dim() >= 1 && join.dim() <= 3)
}

/// Condition of crossed pencils for `M1 ∥ N1`, `M2 ∥ N2` with
/// `p = M1 ∩ M2` and `q = N1 ∩ N2`: if `M1, M2, p⊕q` form a pencil then so
/// do `N1, N2, p⊕q`.
pub fn crossed_pencils_check<F: Field>(
    p: &Parallelism<F>,
    m1: &Subspace<F>,
    m2: &Subspace<F>,
    n1: &Subspace<F>,
    n2: &Subspace<F>,
) -> Result<bool> {
    if !c_parallel(p, m1, n1)? || !c_parallel(p, m2, n2)? {
        return Err(Error::BadConfiguration(
            "pairs (M1, N1) and (M2, N2) must be parallel".into(),
        ));
    }
    let (pt, qt) = (m1.meet(m2)?, n1.meet(n2)?);
    if pt.dim() != 1 || qt.dim() != 1 || pt == qt {
        return Err(Error::BadConfiguration(
            "M1, M2 and N1, N2 must cross in two distinct points".into(),
        ));
    }
    let pq = pt.join(&qt)?;
    if !is_pencil(&[m1, m2, &pq])? {
        return Ok(true);
    }
    is_pencil(&[n1, n2, &pq])
}

/// Basis vectors plus their sum: a projective frame of their span.
fn frame<F: Field>(basis: &[Vector<F>]) -> Vec<Vector<F>> {
    let mut out = basis.to_vec();
    if let Some(first) = basis.first() {
        let sum = basis[1..].iter().fold(first.clone(), |acc, v| {
            acc.iter().zip(v).map(|(x, y)| x.add(y)).collect()
        });
        out.push(sum);
    }
    out
}

/// Checks that `λ_c ⋏ λ_c` fixes every subspace through `C` and every
/// point of `C^⊥`. Both are verified exactly on projective frames: a map
/// fixing a frame of a space acts on it as a scalar.
pub fn translation_invariance_check<F: Field>(
    alg: &Algebra<F>,
    c: &AlgebraElement<F>,
    p: &Parallelism<F>,
) -> Result<bool> {
    let s = exterior_square(&alg.left_translation(c)?)?;
    let plane = p.plane();
    if plane.image(&s)? != *plane {
        return Ok(false);
    }
    let mut extended = plane.clone();
    let mut complement = Vec::new();
    for i in 0..6 {
        let e = unit(6, i);
        if !extended.member(&e)? {
            extended = extended.join_vector(&e)?;
            complement.push(e);
        }
    }
    for v in frame(&complement) {
        let through = plane.join_vector(&v)?;
        if through.image(&s)? != through {
            return Ok(false);
        }
    }
    for y in frame(perp(plane)?.integral_basis()) {
        let point = Subspace::span(6, std::slice::from_ref(&y))?;
        if !point.member(&s.apply(&y))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ker ψ` for `ψ(g∧h) = φ(ḡh)`, given `φ` by its values on `1, i, j, k`.
pub fn hyperplane_from_form<F: Field>(alg: &Algebra<F>, phi: &[F; 4]) -> Result<Subspace<F>> {
    if !phi[0].is_zero() {
        return Err(Error::BadForm("phi(1) must vanish".into()));
    }
    if phi.iter().all(F::is_zero) {
        return Err(Error::BadForm("phi must be nonzero".into()));
    }
    let psi: Vector<F> = PAIRS
        .iter()
        .map(|&(s, t)| {
            let prod = alg.mul(
                &alg.conj(&AlgebraElement::basis(s)),
                &AlgebraElement::basis(t),
            );
            prod.0
                .iter()
                .zip(phi)
                .fold(F::zero(), |acc, (x, w)| acc.add(&x.mul(w)))
        })
        .collect();
    Ok(solve_homogeneous(6, &[psi])?)
}

//! Random points, lines and planes of `P(V)` for randomized verification.

use rand::Rng;

use crate::linalg::{Subspace, Vector};
use crate::scalars::Field;

pub fn random_vector<F: Field, R: Rng + ?Sized>(rng: &mut R, n: usize, bound: u32) -> Vector<F> {
    loop {
        let v: Vector<F> = (0..n).map(|_| F::random_integral(rng, bound)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Random subspace of `F^n` of the given vector dimension.
pub fn random_subspace<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    bound: u32,
) -> Subspace<F> {
    loop {
        let vs: Vec<Vector<F>> = (0..dim).map(|_| random_vector(rng, n, bound)).collect();
        let s = Subspace::span_owned(n, vs);
        if s.dim() == dim {
            return s;
        }
    }
}

pub fn random_point<F: Field, R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Subspace<F> {
    random_subspace(rng, 4, 1, bound)
}

pub fn random_line<F: Field, R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Subspace<F> {
    random_subspace(rng, 4, 2, bound)
}

/// Random point of the subspace `x`.
pub fn random_point_in<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    x: &Subspace<F>,
    bound: u32,
) -> Subspace<F> {
    Subspace::span_owned(x.ambient(), vec![x.random_nonzero(rng, bound)])
}

/// Random subspace of dimension `dim` containing `x`.
pub fn random_extension<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    x: &Subspace<F>,
    dim: usize,
    bound: u32,
) -> Subspace<F> {
    assert!(dim >= x.dim() && dim <= x.ambient());
    if dim == x.dim() {
        return x.clone();
    }
    loop {
        let mut rows = x.integral_basis().to_vec();
        rows.extend((x.dim()..dim).map(|_| random_vector(rng, x.ambient(), bound)));
        let s = Subspace::span_owned(x.ambient(), rows);
        if s.dim() == dim {
            return s;
        }
    }
}

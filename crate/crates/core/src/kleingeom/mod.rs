//! Line geometry of a 3-dimensional projective space through the Klein
//! correspondence.
//!
//! Lines of `P(V)`, `dim V = 4`, map to points of the Klein quadric in
//! `P(V∧V)`. Bivector coordinates are always ordered `(01,02,03,12,13,23)`.

mod complex;
mod regulus;
pub mod sample;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vector, solve_homogeneous, unit, Subspace, Vector};
use crate::scalars::Field;

pub use complex::{
    complex_from_hyperplane, ComplexKind, LinearComplex, NullPolarity, PencilSection,
};
pub use regulus::{regulus_through, Regulus};

/// Index of `e_σ ∧ e_τ` (σ < τ) in the bivector basis.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// An element of `V∧V` in the basis `e01, e02, e03, e12, e13, e23`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bivector<F: Field>(pub [F; 6]);

impl<F: Field> Bivector<F> {
    pub fn zero() -> Self {
        Bivector(std::array::from_fn(|_| F::zero()))
    }

    /// Basis bivector `e_σ ∧ e_τ`.
    pub fn basis(sigma: usize, tau: usize) -> Self {
        let idx = PAIRS
            .iter()
            .position(|&p| p == (sigma, tau))
            .expect("basis bivector needs sigma < tau <= 3");
        Bivector::from_vec(&unit(6, idx))
    }

    pub fn from_vec(v: &[F]) -> Self {
        assert_eq!(v.len(), 6, "bivectors have six coordinates");
        Bivector(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn to_vec(&self) -> Vector<F> {
        self.0.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Bivector(std::array::from_fn(|i| self.0[i].add(&other.0[i])))
    }

    pub fn scale(&self, c: &F) -> Self {
        Bivector(std::array::from_fn(|i| c.mul(&self.0[i])))
    }
}

/// `u ∧ v`, coordinates `u_σ v_τ − u_τ v_σ`.
pub fn wedge<F: Field>(u: &[F], v: &[F]) -> Bivector<F> {
    assert!(u.len() == 4 && v.len() == 4, "wedge needs vectors of V");
    Bivector(std::array::from_fn(|i| {
        let (s, t) = PAIRS[i];
        u[s].mul(&v[t]).sub(&u[t].mul(&v[s]))
    }))
}

/// The Klein quadratic form `x01 x23 − x02 x13 + x03 x12`.
pub fn omega<F: Field>(x: &Bivector<F>) -> F {
    let x = &x.0;
    x[0].mul(&x[5]).sub(&x[1].mul(&x[4])).add(&x[2].mul(&x[3]))
}

/// Row `r` with `r . y = polar_form(x, y)`.
pub fn gram_row<F: Field>(x: &[F]) -> Vector<F> {
    vec![
        x[5].clone(),
        x[4].neg(),
        x[3].clone(),
        x[2].clone(),
        x[1].neg(),
        x[0].clone(),
    ]
}

/// Polar form `(x+y)^ω − x^ω − y^ω` of the Klein quadric.
pub fn polar_form<F: Field>(x: &Bivector<F>, y: &Bivector<F>) -> F {
    dot(&gram_row(&x.0), &y.0)
}

fn polar_vec<F: Field>(x: &[F], y: &[F]) -> F {
    dot(&gram_row(x), y)
}

fn omega_vec<F: Field>(x: &[F]) -> F {
    omega(&Bivector::from_vec(x))
}

/// Polarity of the Klein quadric: all `y` conjugate to every vector of `x`.
pub fn perp<F: Field>(x: &Subspace<F>) -> Result<Subspace<F>> {
    check_ambient(x, 6)?;
    let rows: Vec<Vector<F>> = x.integral_basis().iter().map(|b| gram_row(b)).collect();
    Ok(solve_homogeneous(6, &rows)?)
}

pub(crate) fn check_ambient<F: Field>(x: &Subspace<F>, n: usize) -> Result<()> {
    if x.ambient() == n {
        Ok(())
    } else {
        Err(crate::linalg::LinalgError::AmbientMismatch {
            expected: n,
            got: x.ambient(),
        }
        .into())
    }
}

pub(crate) fn check_line<F: Field>(m: &Subspace<F>) -> Result<()> {
    check_ambient(m, 4)?;
    if m.dim() == 2 {
        Ok(())
    } else {
        Err(Error::NotALine(m.dim()))
    }
}

pub(crate) fn check_point<F: Field>(p: &Subspace<F>, ambient: usize) -> Result<()> {
    check_ambient(p, ambient)?;
    if p.dim() == 1 {
        Ok(())
    } else {
        Err(Error::NotAPoint(p.dim()))
    }
}

/// Canonical Plücker bivector of a line: the wedge of its RREF basis.
pub fn pluecker_vector<F: Field>(m: &Subspace<F>) -> Result<Bivector<F>> {
    check_line(m)?;
    let b = m.integral_basis();
    Ok(wedge(&b[0], &b[1]))
}

/// The Plücker embedding: the point `F(u∧v)` of a line `Fu ⊕ Fv`.
pub fn pluecker<F: Field>(m: &Subspace<F>) -> Result<Subspace<F>> {
    let x = pluecker_vector(m)?;
    Ok(Subspace::span_owned(6, vec![x.to_vec()]))
}

/// Line whose Plücker bivector is `x`. With `(a, b)` the first pair where
/// `x` is nonzero, `x_ab` times the reduced basis has rows
/// `(x_ab, 0, ·, ·)` built from the coordinates `-x_bc` and `x_ac`.
pub fn pluecker_inverse_vector<F: Field>(x: &Bivector<F>) -> Result<Subspace<F>> {
    if x.is_zero() {
        return Err(Error::ZeroBivector);
    }
    if !omega(x).is_zero() {
        return Err(Error::NotOnQuadric);
    }
    let mut rows = vec![F::clear_denominators(&x.0)];
    F::divide_content(&mut rows);
    let p = Bivector::from_vec(&rows[0]);
    let coord = |i: usize, j: usize| -> F {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => F::zero(),
            std::cmp::Ordering::Less => p.0[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => p.0[pair_index(j, i)].neg(),
        }
    };
    let (a, b) = PAIRS
        .iter()
        .copied()
        .find(|&(s, t)| !p.0[pair_index(s, t)].is_zero())
        .expect("nonzero bivector");
    let row_a: Vector<F> = (0..4)
        .map(|c| {
            if c == a {
                coord(a, b)
            } else {
                coord(b, c).neg()
            }
        })
        .collect();
    let row_b: Vector<F> = (0..4).map(|c| coord(a, c)).collect();
    Ok(Subspace::from_echelon(4, vec![row_a, row_b], vec![a, b]))
}

fn pair_index(s: usize, t: usize) -> usize {
    PAIRS.iter().position(|&p| p == (s, t)).expect("s < t < 4")
}

pub fn pluecker_inverse<F: Field>(p: &Subspace<F>) -> Result<Subspace<F>> {
    check_point(p, 6)?;
    pluecker_inverse_vector(&Bivector::from_vec(&p.integral_basis()[0]))
}

pub fn is_on_quadric<F: Field>(x: &Bivector<F>) -> bool {
    omega(x).is_zero()
}

/// Two lines meet iff their Plücker points are conjugate.
pub fn lines_meet<F: Field>(m: &Subspace<F>, n: &Subspace<F>) -> Result<bool> {
    let (x, y) = (pluecker_vector(m)?, pluecker_vector(n)?);
    let conjugate = polar_form(&x, &y).is_zero();
    debug_assert_eq!(conjugate, !m.meet(n)?.is_zero());
    Ok(conjugate)
}

/// Plane of the first system: Plücker image of the star of lines through `p`.
pub fn star_plane<F: Field>(p: &Subspace<F>) -> Result<Subspace<F>> {
    check_point(p, 4)?;
    let p0 = &p.integral_basis()[0];
    let rows = (0..4).map(|i| wedge(p0, &unit(4, i)).to_vec()).collect();
    Ok(Subspace::span_owned(6, rows))
}

/// Union of the lines through `p` whose Plücker points lie in `x`, as a
/// subspace of `V`. Its dimension is one more than `dim(star(p) ∩ x)`.
pub(crate) fn star_section<F: Field>(p: &Subspace<F>, x: &Subspace<F>) -> Result<Subspace<F>> {
    check_point(p, 4)?;
    check_ambient(x, 6)?;
    let u = &p.integral_basis()[0];
    let stars: Vec<Bivector<F>> = (0..4).map(|j| wedge(u, &unit(4, j))).collect();
    let rows: Vec<Vector<F>> = x
        .annihilator()
        .integral_basis()
        .iter()
        .map(|a| stars.iter().map(|w| dot(a, &w.0)).collect())
        .collect();
    Ok(solve_homogeneous(4, &rows)?)
}

/// Plane of the second system: Plücker image of the lines inside `z`.
pub fn ruled_plane<F: Field>(z: &Subspace<F>) -> Result<Subspace<F>> {
    check_ambient(z, 4)?;
    if z.dim() != 3 {
        return Err(Error::NotAPlane(z.dim()));
    }
    let b = z.integral_basis();
    let rows = vec![
        wedge(&b[0], &b[1]).to_vec(),
        wedge(&b[0], &b[2]).to_vec(),
        wedge(&b[1], &b[2]).to_vec(),
    ];
    Ok(Subspace::span_owned(6, rows))
}

/// Vectors `u, v1, v2` with `p = F·u` and `z = span(u, v1, v2)`.
pub(crate) fn pencil_frame<F: Field>(
    p: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<(Vector<F>, Vector<F>, Vector<F>)> {
    check_point(p, 4)?;
    check_ambient(z, 4)?;
    if z.dim() != 3 {
        return Err(Error::NotAPlane(z.dim()));
    }
    if !z.contains(p)? {
        return Err(Error::BadConfiguration(
            "point does not lie in the plane".into(),
        ));
    }
    // u = Σ c_k·row_k with c_k ∝ u[pivot_k]; dropping a row whose
    // coefficient is nonzero leaves a frame
    let u = p.integral_basis()[0].clone();
    let rows = z.integral_basis();
    let drop = z
        .pivots()
        .iter()
        .position(|&c| !u[c].is_zero())
        .expect("u is a nonzero vector of z");
    let mut others = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, r)| r.clone());
    let v1 = others.next().expect("plane has dimension 3");
    let v2 = others.next().expect("plane has dimension 3");
    Ok((u, v1, v2))
}

/// Pencil of lines through `p` inside the plane `z`, as a line of `P(V∧V)`.
pub fn pencil<F: Field>(p: &Subspace<F>, z: &Subspace<F>) -> Result<Subspace<F>> {
    let (u, v1, v2) = pencil_frame(p, z)?;
    Ok(Subspace::span_owned(
        6,
        vec![wedge(&u, &v1).to_vec(), wedge(&u, &v2).to_vec()],
    ))
}

/// Second intersection of the Klein quadric with the line through a known
/// quadric point `known` in direction `dir`: `ω(y)·x0 − ⟨x0,y⟩·y`.
///
/// `None` when the line is tangent (or lies on the quadric), i.e. when the
/// construction only returns `known` again.
pub fn second_quadric_point<F: Field>(known: &[F], dir: &[F]) -> Option<Vector<F>> {
    let f = polar_vec(known, dir);
    if f.is_zero() {
        return None;
    }
    let w = omega_vec(dir);
    let x: Vector<F> = known
        .iter()
        .zip(dir)
        .map(|(a, b)| w.mul(a).sub(&f.mul(b)))
        .collect();
    (!is_zero_vector(&x)).then_some(x)
}

/// Gram matrix of the polar form restricted to the basis of `x`.
pub fn restricted_gram<F: Field>(x: &Subspace<F>) -> Vec<Vec<F>> {
    let b = x.integral_basis();
    b.iter()
        .map(|u| b.iter().map(|v| polar_vec(u, v)).collect())
        .collect()
}

/// Definiteness of the Klein form on `x` for ordered fields, decided by
/// symmetric elimination of the restricted Gram matrix. `None` when the
/// field has no ordering.
pub fn is_definite<F: Field>(x: &Subspace<F>) -> Option<bool> {
    let mut g = restricted_gram(x);
    let n = g.len();
    let mut sign = None;
    for k in 0..n {
        let pivot = g[k][k].clone();
        let s = pivot.signum()?;
        if s == 0 {
            return Some(false);
        }
        match sign {
            None => sign = Some(s),
            Some(prev) if prev != s => return Some(false),
            _ => {}
        }
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            let factor = g[i][k].mul(&inv);
            for j in k + 1..n {
                let delta = factor.mul(&g[k][j]);
                g[i][j] = g[i][j].sub(&delta);
            }
        }
    }
    Some(true)
}

/// Whether the binary form `α λ² + β λμ + γ μ²` has a nontrivial zero.
/// `None` for the Artin–Schreier case of characteristic 2 (`β ≠ 0`), which
/// is not decided here.
pub fn binary_form_isotropic<F: Field>(alpha: &F, beta: &F, gamma: &F) -> Option<bool> {
    if alpha.is_zero() || gamma.is_zero() {
        return Some(true);
    }
    if F::characteristic() != 2 {
        let disc = beta.square().sub(&F::from_i64(4).mul(alpha).mul(gamma));
        return Some(disc.sqrt().is_some());
    }
    if beta.is_zero() {
        let ratio = gamma.div(alpha).expect("alpha nonzero");
        return Some(ratio.sqrt().is_some());
    }
    None
}

/// Exact decision, where available, of whether the projective line `l` of
/// `P(V∧V)` meets the Klein quadric.
pub fn line_meets_quadric<F: Field>(l: &Subspace<F>) -> Result<Option<bool>> {
    check_ambient(l, 6)?;
    if l.dim() != 2 {
        return Err(Error::BadDimension {
            expected: 2,
            got: l.dim(),
        });
    }
    let (x, y) = (&l.integral_basis()[0], &l.integral_basis()[1]);
    Ok(binary_form_isotropic(
        &omega_vec(x),
        &polar_vec(x, y),
        &omega_vec(y),
    ))
}

/// Searches `samples` random points of the line `l` of `P(V∧V)` for a
/// quadric point; used where [`line_meets_quadric`] cannot decide.
pub fn line_meets_quadric_sampled<F: Field, R: Rng + ?Sized>(
    l: &Subspace<F>,
    rng: &mut R,
    bound: u32,
    samples: usize,
) -> Result<bool> {
    check_ambient(l, 6)?;
    if l.dim() != 2 {
        return Err(Error::BadDimension {
            expected: 2,
            got: l.dim(),
        });
    }
    let (x, y) = (&l.integral_basis()[0], &l.integral_basis()[1]);
    let (alpha, beta, gamma) = (omega_vec(x), polar_vec(x, y), omega_vec(y));
    for _ in 0..samples {
        // integral parameters reach every point up to scaling
        let lambda = F::random_integral(rng, bound);
        let mu = F::random_integral(rng, bound);
        if lambda.is_zero() && mu.is_zero() {
            continue;
        }
        let value = alpha
            .mul(&lambda.square())
            .add(&beta.mul(&lambda.mul(&mu)))
            .add(&gamma.mul(&mu.square()));
        if value.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Gf2Rat, Rational};

    type Q = Rational;

    fn v(xs: &[i64]) -> Vector<Q> {
        xs.iter().map(|&x| Q::from_i64(x)).collect()
    }

    fn b(xs: &[i64]) -> Bivector<Q> {
        Bivector::from_vec(&v(xs))
    }

    fn line(u: &[i64], w: &[i64]) -> Subspace<Q> {
        Subspace::span(4, &[v(u), v(w)]).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&unit::<Q>(4, 0), &unit(4, 1)), Bivector::basis(0, 1));
        assert_eq!(
            wedge(&v(&[1, 0, 1, 0]), &v(&[0, 1, 0, 1])),
            b(&[1, 0, 1, -1, 0, 1])
        );
        let u = v(&[3, -1, 2, 5]);
        assert!(wedge(&u, &u).is_zero());
    }

    #[test]
    fn pluecker_examples() {
        let m = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        assert_eq!(
            pluecker(&m).unwrap(),
            Subspace::span(6, &[Bivector::<Q>::basis(0, 1).to_vec()]).unwrap()
        );
        let m = line(&[1, 0, 1, 0], &[0, 1, 0, 1]);
        let p = pluecker(&m).unwrap();
        assert_eq!(p, Subspace::span(6, &[v(&[1, 0, 1, -1, 0, 1])]).unwrap());
        assert_eq!(pluecker_inverse(&p).unwrap(), m);
        assert_eq!(
            pluecker(&Subspace::<Q>::full(4)).unwrap_err(),
            Error::NotALine(4)
        );
    }

    #[test]
    fn inverse_rejects_off_quadric() {
        assert_eq!(
            pluecker_inverse_vector(&b(&[1, 0, 0, 0, 0, 1])).unwrap_err(),
            Error::NotOnQuadric
        );
        assert_eq!(
            pluecker_inverse_vector(&Bivector::<Q>::zero()).unwrap_err(),
            Error::ZeroBivector
        );
    }

    #[test]
    fn omega_and_polar_examples() {
        assert!(omega(&Bivector::<Q>::basis(0, 1)).is_zero());
        assert_eq!(omega(&b(&[1, 0, 0, 0, 0, 1])), Q::one());
        let e01 = Bivector::<Q>::basis(0, 1);
        assert_eq!(polar_form(&e01, &Bivector::basis(2, 3)), Q::one());
        assert!(polar_form(&e01, &Bivector::basis(0, 2)).is_zero());
    }

    #[test]
    fn perp_examples() {
        let e01 = Subspace::span(6, &[Bivector::<Q>::basis(0, 1).to_vec()]).unwrap();
        let h = perp(&e01).unwrap();
        assert_eq!(h, solve_homogeneous(6, &[unit(6, 5)]).unwrap());
        assert!(perp(&Subspace::<Q>::full(6)).unwrap().is_zero());
    }

    #[test]
    fn meeting_examples() {
        let a = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let c = line(&[0, 1, 0, 0], &[0, 0, 1, 0]);
        let d = line(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        assert!(lines_meet(&a, &c).unwrap());
        assert!(!lines_meet(&a, &d).unwrap());
    }

    #[test]
    fn star_and_ruled_planes() {
        let p = Subspace::span(4, &[unit::<Q>(4, 0)]).unwrap();
        let expected = Subspace::span(
            6,
            &[
                Bivector::<Q>::basis(0, 1).to_vec(),
                Bivector::basis(0, 2).to_vec(),
                Bivector::basis(0, 3).to_vec(),
            ],
        )
        .unwrap();
        assert_eq!(star_plane(&p).unwrap(), expected);

        let z = Subspace::span(4, &[unit::<Q>(4, 0), unit(4, 1), unit(4, 2)]).unwrap();
        let expected = Subspace::span(
            6,
            &[
                Bivector::<Q>::basis(0, 1).to_vec(),
                Bivector::basis(0, 2).to_vec(),
                Bivector::basis(1, 2).to_vec(),
            ],
        )
        .unwrap();
        assert_eq!(ruled_plane(&z).unwrap(), expected);
        // p lies in z: the two planes share a pencil
        assert_eq!(pencil(&p, &z).unwrap().dim(), 2);
        assert_eq!(ruled_plane(&p).unwrap_err(), Error::NotAPlane(1));
        assert_eq!(star_plane(&z).unwrap_err(), Error::NotAPoint(3));
    }

    #[test]
    fn definiteness_over_rationals() {
        // e01+e23 and e02-e13 span a plane where the form is positive
        let x = Subspace::span(6, &[v(&[1, 0, 0, 0, 0, 1]), v(&[0, 1, 0, 0, -1, 0])]).unwrap();
        assert_eq!(is_definite(&x), Some(true));
        let y = Subspace::span(6, &[v(&[1, 0, 0, 0, 0, 1]), v(&[0, 1, 0, 0, 1, 0])]).unwrap();
        assert_eq!(is_definite(&y), Some(false));
        let z = Subspace::span(6, &[Bivector::<Gf2Rat>::basis(0, 1).to_vec()]).unwrap();
        assert_eq!(is_definite(&z), None);
    }

    #[test]
    fn binary_forms() {
        let q = |n: i64| Q::from_i64(n);
        // λ² + μ² has no rational zero, λ² − μ² does
        assert_eq!(binary_form_isotropic(&q(1), &q(0), &q(1)), Some(false));
        assert_eq!(binary_form_isotropic(&q(1), &q(0), &q(-1)), Some(true));
        assert_eq!(binary_form_isotropic(&q(0), &q(3), &q(1)), Some(true));
        let s = Gf2Rat::s();
        let one = Gf2Rat::one();
        // λ² + s μ²: s is not a square
        assert_eq!(
            binary_form_isotropic(&one, &Gf2Rat::zero(), &s),
            Some(false)
        );
        assert_eq!(
            binary_form_isotropic(&one, &Gf2Rat::zero(), &s.square()),
            Some(true)
        );
        assert_eq!(binary_form_isotropic(&one, &one, &s), None);
    }

    #[test]
    fn second_point_lies_on_quadric() {
        let known = Bivector::<Q>::basis(0, 1).to_vec();
        let x = second_quadric_point(&known, &v(&[1, 2, 0, 3, 1, 1])).unwrap();
        assert!(omega_vec(&x).is_zero());
        assert!(second_quadric_point(&known, &Bivector::<Q>::basis(0, 2).to_vec()).is_none());
    }
}

use rand::Rng;

use super::{
    check_ambient, check_line, lines_meet, omega, perp, pluecker_inverse_vector, pluecker_vector,
    restricted_gram, second_quadric_point, star_section, Bivector,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalars::Field;

/// A regulus: the lines whose Plücker points form the nondegenerate conic
/// `P(E) ∩ Q`. One member line is kept as a base point of the conic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulus<F: Field> {
    plane: Subspace<F>,
    polar: Subspace<F>,
    base: Subspace<F>,
}

/// Whether the plane section `P(E) ∩ Q` is a nondegenerate conic, given one
/// of its points.
fn nondegenerate_conic<F: Field>(plane: &Subspace<F>, polar: &Subspace<F>) -> Result<bool> {
    if F::characteristic() != 2 {
        return Ok(Matrix::from_rows(restricted_gram(plane)).rank() == 3);
    }
    // In characteristic 2 the restricted polar form is alternating, so its
    // radical E ∩ E^⊥ is at least a point; the conic is nondegenerate iff
    // the radical is exactly one point (the nucleus) and lies off Q.
    let radical = plane.meet(polar)?;
    if radical.dim() != 1 {
        return Ok(false);
    }
    Ok(!omega(&Bivector::from_vec(&radical.integral_basis()[0])).is_zero())
}

/// The regulus containing three pairwise skew lines.
pub fn regulus_through<F: Field>(
    l1: &Subspace<F>,
    l2: &Subspace<F>,
    l3: &Subspace<F>,
) -> Result<Regulus<F>> {
    for l in [l1, l2, l3] {
        check_line(l)?;
    }
    if lines_meet(l1, l2)? || lines_meet(l1, l3)? || lines_meet(l2, l3)? {
        return Err(Error::NotSkew);
    }
    let points = [l1, l2, l3]
        .iter()
        .map(|l| pluecker_vector(l).map(|x| x.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let plane = Subspace::span_owned(6, points);
    Regulus::from_plane(plane, l1.clone())
}

impl<F: Field> Regulus<F> {
    /// Regulus of the plane `plane`, given one member line `base`.
    pub fn from_plane(plane: Subspace<F>, base: Subspace<F>) -> Result<Self> {
        check_ambient(&plane, 6)?;
        if plane.dim() != 3 {
            return Err(Error::BadDimension {
                expected: 3,
                got: plane.dim(),
            });
        }
        if !plane.member(&pluecker_vector(&base)?.0)? {
            return Err(Error::PreconditionFailed(
                "base line is not on the plane section".into(),
            ));
        }
        let polar = perp(&plane)?;
        if !nondegenerate_conic(&plane, &polar)? {
            return Err(Error::DegenerateConic);
        }
        Ok(Regulus { plane, polar, base })
    }

    pub fn plane(&self) -> &Subspace<F> {
        &self.plane
    }

    /// `E^⊥`, the plane of the opposite regulus.
    pub fn polar(&self) -> &Subspace<F> {
        &self.polar
    }

    pub fn base(&self) -> &Subspace<F> {
        &self.base
    }

    pub fn contains(&self, m: &Subspace<F>) -> Result<bool> {
        Ok(self.plane.member(&pluecker_vector(m)?.0)?)
    }

    /// The opposite regulus, carried by the polar plane `E^⊥`. Its base line
    /// is the transversal through the first basis point of our base line.
    pub fn opposite(&self) -> Result<Regulus<F>> {
        let p = Subspace::span_owned(4, vec![self.base.integral_basis()[0].clone()]);
        let base = self
            .transversal_through(&p)
            .map_err(|_| Error::DegenerateConic)?;
        Regulus::from_plane(self.polar.clone(), base)
    }

    /// The line of the opposite regulus through `pt`, a point on one of
    /// our lines: the single point of `star(pt) ∩ E^⊥`.
    pub fn transversal_through(&self, pt: &Subspace<F>) -> Result<Subspace<F>> {
        let line = star_section(pt, &self.polar)?;
        if line.dim() != 2 {
            return Err(Error::PreconditionFailed(
                "point does not lie on a line of the regulus".into(),
            ));
        }
        Ok(line)
    }

    /// Random member lines, obtained by intersecting the conic with random
    /// lines of `P(E)` through the base point.
    pub fn sample_members<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        bound: u32,
        count: usize,
    ) -> Vec<Subspace<F>> {
        let known = pluecker_vector(&self.base)
            .expect("base is a line")
            .to_vec();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let dir = self.plane.random_nonzero(rng, bound);
            if let Some(x) = second_quadric_point(&known, &dir) {
                out.push(pluecker_inverse_vector(&Bivector::from_vec(&x)).expect("x is on Q"));
            }
        }
        out
    }
}

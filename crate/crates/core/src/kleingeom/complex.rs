use serde_json::{json, Value};

use super::{
    check_ambient, check_point, gram_row, omega, pencil_frame, perp, pluecker_vector, polar_form,
    wedge, Bivector,
};
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_homogeneous, unit, Subspace};
use crate::scalars::{Field, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    General,
    Special,
}

/// A linear complex of lines: the lines whose Plücker points lie in a
/// hyperplane `W` of `P(V∧V)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearComplex<F: Field> {
    hyperplane: Subspace<F>,
    pole: Bivector<F>,
    kind: ComplexKind,
}

pub fn complex_from_hyperplane<F: Field>(w: &Subspace<F>) -> Result<LinearComplex<F>> {
    check_ambient(w, 6)?;
    if w.dim() != 5 {
        return Err(Error::BadDimension {
            expected: 5,
            got: w.dim(),
        });
    }
    let pole_space = perp(w)?;
    let pole = Bivector::from_vec(&pole_space.integral_basis()[0]);
    // W is tangent to the quadric exactly when its pole lies on it
    let kind = if omega(&pole).is_zero() {
        ComplexKind::Special
    } else {
        ComplexKind::General
    };
    Ok(LinearComplex {
        hyperplane: w.clone(),
        pole,
        kind,
    })
}

impl<F: Field> LinearComplex<F> {
    pub fn hyperplane(&self) -> &Subspace<F> {
        &self.hyperplane
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Pole of the hyperplane under the Klein polarity.
    pub fn pole(&self) -> &Bivector<F> {
        &self.pole
    }

    pub fn contains_line(&self, m: &Subspace<F>) -> Result<bool> {
        let x = pluecker_vector(m)?;
        Ok(polar_form(&self.pole, &x).is_zero())
    }

    /// Axis of a special complex.
    pub fn axis(&self) -> Option<Subspace<F>> {
        match self.kind {
            ComplexKind::Special => super::pluecker_inverse_vector(&self.pole).ok(),
            ComplexKind::General => None,
        }
    }

    /// How the pencil of lines through `p` in the plane `z` meets the
    /// complex. With `ψ` the linear form cutting out `W`, the member
    /// `p ⊕ (λv1 + μv2)` lies in `W` iff `λψ(u∧v1) + μψ(u∧v2) = 0`.
    pub fn meet_pencil(&self, p: &Subspace<F>, z: &Subspace<F>) -> Result<PencilSection<F>> {
        let (u, v1, v2) = pencil_frame(p, z)?;
        let psi = gram_row(&self.pole.0);
        let a = dot(&psi, &wedge(&u, &v1).0);
        let b = dot(&psi, &wedge(&u, &v2).0);
        if a.is_zero() && b.is_zero() {
            return Ok(PencilSection::Whole);
        }
        let w: Vec<F> = v1
            .iter()
            .zip(&v2)
            .map(|(x, y)| b.mul(x).sub(&a.mul(y)))
            .collect();
        Ok(PencilSection::Single(Subspace::span_owned(4, vec![u, w])))
    }

    pub fn null_polarity(&self) -> Result<NullPolarity<F>> {
        match self.kind {
            ComplexKind::Special => Err(Error::SpecialComplex),
            ComplexKind::General => Ok(NullPolarity {
                pole: self.pole.clone(),
            }),
        }
    }

    pub fn to_json(&self, spec: &FieldSpec) -> Value {
        json!({
            "W": self.hyperplane.to_json(spec),
            "kind": match self.kind {
                ComplexKind::General => "General",
                ComplexKind::Special => "Special",
            },
        })
    }
}

/// Intersection of a pencil of lines with a linear complex: one member,
/// or the whole pencil.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PencilSection<F: Field> {
    Single(Subspace<F>),
    Whole,
}

/// Null polarity of a general linear complex: `p ↦ {v : ψ(p0 ∧ v) = 0}`
/// with `ψ = ⟨pole, ·⟩`, whose kernel is the complex's hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NullPolarity<F: Field> {
    pole: Bivector<F>,
}

impl<F: Field> NullPolarity<F> {
    /// The polar plane `p^π` of a point `p` of `P(V)`.
    pub fn image(&self, p: &Subspace<F>) -> Result<Subspace<F>> {
        check_point(p, 4)?;
        let psi = gram_row(&self.pole.0);
        let p0 = &p.integral_basis()[0];
        let row: Vec<F> = (0..4)
            .map(|j| dot(&psi, &wedge(p0, &unit(4, j)).0))
            .collect();
        let plane = solve_homogeneous(4, &[row])?;
        debug_assert_eq!(plane.dim(), 3);
        Ok(plane)
    }

    /// A line is a null line iff it lies in the polar plane of each of its
    /// points; checking two spanning points suffices.
    pub fn is_null_line(&self, m: &Subspace<F>) -> Result<bool> {
        super::check_line(m)?;
        for b in m.integral_basis() {
            let p = Subspace::span_owned(4, vec![b.clone()]);
            if !self.image(&p)?.contains(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleingeom::lines_meet;
    use crate::kleingeom::sample::{random_line, random_point};
    use crate::scalars::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn point_space(x: Bivector<Q>) -> Subspace<Q> {
        Subspace::span(6, &[x.to_vec()]).unwrap()
    }

    #[test]
    fn tangent_hyperplane_gives_special_complex() {
        let e01 = Bivector::<Q>::basis(0, 1);
        let c = complex_from_hyperplane(&perp(&point_space(e01)).unwrap()).unwrap();
        assert_eq!(c.kind(), ComplexKind::Special);
        assert_eq!(c.null_polarity().unwrap_err(), Error::SpecialComplex);

        // members are exactly the lines meeting the axis
        let axis = c.axis().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = random_line::<Q, _>(&mut rng, 5);
            assert_eq!(c.contains_line(&m).unwrap(), lines_meet(&m, &axis).unwrap());
        }
    }

    #[test]
    fn non_tangent_hyperplane_gives_general_complex() {
        let x = Bivector::<Q>::basis(0, 1).add(&Bivector::basis(2, 3));
        let c = complex_from_hyperplane(&perp(&point_space(x)).unwrap()).unwrap();
        assert_eq!(c.kind(), ComplexKind::General);
        assert!(c.axis().is_none());
    }

    #[test]
    fn bad_dimension() {
        let err = complex_from_hyperplane(&Subspace::<Q>::full(6)).unwrap_err();
        assert_eq!(
            err,
            Error::BadDimension {
                expected: 5,
                got: 6
            }
        );
    }

    #[test]
    fn null_polarity_properties() {
        let x = Bivector::<Q>::from_vec([1, 2, -1, 3, 0, 1].map(Q::from_i64).as_ref());
        let c = complex_from_hyperplane(&perp(&point_space(x)).unwrap()).unwrap();
        let pi = c.null_polarity().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = random_point::<Q, _>(&mut rng, 6);
            let q = random_point::<Q, _>(&mut rng, 6);
            let pp = pi.image(&p).unwrap();
            assert!(pp.contains(&p).unwrap());
            let qq = pi.image(&q).unwrap();
            assert_eq!(pp.contains(&q).unwrap(), qq.contains(&p).unwrap());
            // a line through p inside p^π is a null line and a member
            let r = crate::kleingeom::sample::random_point_in(&mut rng, &pp, 6);
            let m = p.join(&r).unwrap();
            if m.dim() == 2 {
                assert!(pi.is_null_line(&m).unwrap());
                assert!(c.contains_line(&m).unwrap());
            }
        }
        for _ in 0..100 {
            let m = random_line::<Q, _>(&mut rng, 6);
            assert_eq!(pi.is_null_line(&m).unwrap(), c.contains_line(&m).unwrap());
        }
    }
}

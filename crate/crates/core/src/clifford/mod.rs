//! Clifford parallelisms of `P(H)` and the external planes of the Klein
//! quadric that describe them.
//!
//! The alternating maps `κ(g∧h) = ḡh + F` and `κ′(g∧h) = gh̄ + F` have
//! kernels `C` and `C′`, planes of `P(H∧H)` without quadric points. Two lines
//! `M, N` are `C`-parallel when `C + F·γ(M) = C + F·γ(N)`, which coincides
//! with left parallelism in `H`; `C′` gives right parallelism.

mod checks;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kleingeom::{
    check_line, check_point, is_definite, line_meets_quadric, line_meets_quadric_sampled, omega,
    perp, pluecker, pluecker_inverse_vector, pluecker_vector, second_quadric_point, star_section,
    Bivector, PAIRS,
};
use crate::linalg::{dot, is_zero_vector, rank, Matrix, Subspace, Vector};
use crate::qalg::{Algebra, AlgebraCase, AlgebraElement, DivisionCertificate};
use crate::scalars::{Field, FieldSpec};

pub use checks::{
    crossed_pencils_check, double_space_check, hyperplane_for_classes, hyperplane_from_form,
    is_pencil, opposite_regulus_parallel_check, translation_invariance_check,
};

/// Points of `C` tried when no symbolic externality argument applies.
pub const EXTERNALITY_SAMPLES: usize = 200;

/// How a claim about quadric points was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The Klein form restricted to the subspace is definite.
    CertifiedDefinite,
    /// Inherited from a Frobenius independence certificate of case `B`.
    FrobeniusIndependent,
    /// Decided exactly by a square test on a binary form.
    Exact,
    /// No quadric point among `n` random points.
    Sampled(usize),
    /// Not examined; used for deliberately mutated planes.
    Unchecked,
}

impl Certificate {
    pub fn label(&self) -> String {
        match self {
            Certificate::CertifiedDefinite => "definite".into(),
            Certificate::FrobeniusIndependent => "frobenius".into(),
            Certificate::Exact => "exact".into(),
            Certificate::Sampled(n) => format!("sampled:{n}"),
            Certificate::Unchecked => "unchecked".into(),
        }
    }
}

/// Coordinates `1..3` of `x`, the fixed model of `H/F`.
fn mod_f<F: Field>(x: &AlgebraElement<F>) -> [F; 3] {
    std::array::from_fn(|i| x.0[i + 1].clone())
}

fn kappa_matrix<F: Field>(alg: &Algebra<F>, prime: bool) -> Matrix<F> {
    let columns: Vec<Vector<F>> = PAIRS
        .iter()
        .map(|&(s, t)| {
            let (g, h) = (AlgebraElement::basis(s), AlgebraElement::basis(t));
            let prod = if prime {
                alg.mul(&g, &alg.conj(&h))
            } else {
                alg.mul(&alg.conj(&g), &h)
            };
            mod_f(&prod).to_vec()
        })
        .collect();
    Matrix::from_columns(&columns)
}

/// `κ(x)`, represented by its coordinates on `i, j, k`.
pub fn kappa<F: Field>(alg: &Algebra<F>, x: &Bivector<F>) -> [F; 3] {
    let v = kappa_matrix(alg, false).apply(&x.0);
    std::array::from_fn(|i| v[i].clone())
}

/// `κ′(x)`, represented by its coordinates on `i, j, k`.
pub fn kappa_prime<F: Field>(alg: &Algebra<F>, x: &Bivector<F>) -> [F; 3] {
    let v = kappa_matrix(alg, true).apply(&x.0);
    std::array::from_fn(|i| v[i].clone())
}

/// A plane `C` of `P(H∧H)` external to the Klein quadric and the
/// parallelism `∥_C` it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelism<F: Field> {
    plane: Subspace<F>,
    /// Linear forms cutting out the plane.
    forms: Vec<Vector<F>>,
    certificate: Certificate,
}

/// All 2×2 minors of `(a, b)` vanish.
fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
}

impl<F: Field> Parallelism<F> {
    /// Wraps a plane without examining it for quadric points.
    pub fn unchecked(plane: Subspace<F>) -> Result<Self> {
        if plane.ambient() != 6 || plane.dim() != 3 {
            return Err(Error::NotAPlane(plane.dim()));
        }
        Ok(Parallelism::with_certificate(plane, Certificate::Unchecked))
    }

    fn with_certificate(plane: Subspace<F>, certificate: Certificate) -> Self {
        let forms = plane.annihilator().integral_basis().to_vec();
        Parallelism {
            plane,
            forms,
            certificate,
        }
    }

    pub fn plane(&self) -> &Subspace<F> {
        &self.plane
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    /// The solid `C + F·γ(M)` carrying the parallel class of `M`.
    pub fn class_solid(&self, m: &Subspace<F>) -> Result<Subspace<F>> {
        Ok(self.plane.join(&pluecker(m)?)?)
    }

    /// Image of `x` in `(H∧H)/C`. Two lines are parallel iff the images of
    /// their Plücker points are proportional.
    pub fn class_key(&self, x: &[F]) -> Vector<F> {
        self.forms.iter().map(|a| dot(a, x)).collect()
    }

    /// Whether the class solid of `m` contains the point `F·x`.
    pub fn solid_contains(&self, m: &Subspace<F>, x: &[F]) -> Result<bool> {
        let km = self.class_key(&pluecker_vector(m)?.0);
        let kx = self.class_key(x);
        Ok(if is_zero_vector(&km) {
            is_zero_vector(&kx)
        } else {
            proportional(&km, &kx)
        })
    }

    pub fn to_json(&self, spec: &FieldSpec) -> Value {
        json!({
            "C": self.plane.to_json(spec),
            "certificate": self.certificate.label(),
        })
    }
}

fn certify_external<F: Field>(alg: &Algebra<F>, plane: &Subspace<F>) -> Result<Certificate> {
    match alg.certificate() {
        DivisionCertificate::CertifiedDefinite if is_definite(plane) == Some(true) => {
            return Ok(Certificate::CertifiedDefinite)
        }
        // a quadric point g∧h of C would give gh ∈ F with g, h independent,
        // impossible in the field H
        DivisionCertificate::FrobeniusIndependent => return Ok(Certificate::FrobeniusIndependent),
        _ => {}
    }
    let mut rng = StdRng::seed_from_u64(0x6b6c65696e);
    for _ in 0..EXTERNALITY_SAMPLES {
        let x = Bivector::from_vec(&plane.random_nonzero(&mut rng, 2));
        if omega(&x).is_zero() {
            return Err(Error::PreconditionFailed(
                "plane meets the Klein quadric".into(),
            ));
        }
    }
    Ok(Certificate::Sampled(EXTERNALITY_SAMPLES))
}

fn kernel_plane<F: Field>(alg: &Algebra<F>, prime: bool) -> Result<Parallelism<F>> {
    let plane = kappa_matrix(alg, prime).kernel();
    if plane.dim() != 3 {
        return Err(Error::KernelDimensionUnexpected(plane.dim()));
    }
    let certificate = certify_external(alg, &plane)?;
    Ok(Parallelism::with_certificate(plane, certificate))
}

/// `C = ker κ`; its parallelism is left parallelism.
#[allow(non_snake_case)]
pub fn plane_C<F: Field>(alg: &Algebra<F>) -> Result<Parallelism<F>> {
    kernel_plane(alg, false)
}

/// `C′ = ker κ′`; its parallelism is right parallelism.
#[allow(non_snake_case)]
pub fn plane_Cprime<F: Field>(alg: &Algebra<F>) -> Result<Parallelism<F>> {
    kernel_plane(alg, true)
}

/// Closed-form bases of `C` and `C^⊥` for the algebra's case.
pub fn table1<F: Field>(alg: &Algebra<F>) -> (Subspace<F>, Subspace<F>) {
    let (a, b) = (alg.a().clone(), alg.b().clone());
    let (o, l) = (F::zero, F::one);
    let m = || F::one().neg();
    // coordinates on 1∧i, 1∧j, 1∧k, i∧j, i∧k, j∧k
    let (c, cperp) = match alg.case() {
        AlgebraCase::A1 | AlgebraCase::B => (
            vec![
                vec![b.clone(), o(), o(), o(), o(), m()],
                vec![o(), a.clone(), o(), o(), l(), o()],
                vec![o(), o(), l(), l(), o(), o()],
            ],
            vec![
                vec![b, o(), o(), o(), o(), l()],
                vec![o(), a, o(), o(), m(), o()],
                vec![o(), o(), l(), m(), o(), o()],
            ],
        ),
        AlgebraCase::A2 => (
            vec![
                vec![b.clone(), o(), o(), o(), o(), l()],
                vec![o(), a.clone(), o(), o(), l(), o()],
                vec![o(), l(), l(), l(), o(), o()],
            ],
            vec![
                vec![b, o(), o(), o(), o(), l()],
                vec![o(), a, l(), o(), l(), o()],
                vec![o(), o(), l(), l(), o(), o()],
            ],
        ),
    };
    (Subspace::span_owned(6, c), Subspace::span_owned(6, cperp))
}

/// A nonzero `c` with `cM = N` (`left`) or `Mc = N`, if one exists.
///
/// With `M = Fg + Fg′`, every `c` with `cg ∈ N` (resp. `gc ∈ N`) has the form
/// `n g⁻¹` (resp. `g⁻¹ n`) for `n ∈ N`, so the question is whether `N` meets
/// `N·u` for `u = g⁻¹g′` (resp. `u·N` for `u = g′g⁻¹`). Since `g⁻¹ = ḡ/N(g)`
/// and only spans matter, `ḡ` is used in place of `g⁻¹`.
pub fn parallel_witness<F: Field>(
    alg: &Algebra<F>,
    m: &Subspace<F>,
    n: &Subspace<F>,
    left: bool,
) -> Result<Option<AlgebraElement<F>>> {
    check_line(m)?;
    check_line(n)?;
    let g = AlgebraElement::from_slice(&m.integral_basis()[0]);
    let g2 = AlgebraElement::from_slice(&m.integral_basis()[1]);
    if alg.norm(&g).is_zero() {
        return Err(Error::ZeroDivisor {
            witness: g.render(alg.field()),
        });
    }
    let g_inv = alg.conj(&g);
    let ns: Vec<AlgebraElement<F>> = n
        .integral_basis()
        .iter()
        .map(|v| AlgebraElement::from_slice(v))
        .collect();
    let shifted: Vec<AlgebraElement<F>> = if left {
        let u = alg.mul(&g_inv, &g2);
        ns.iter().map(|x| alg.mul(x, &u)).collect()
    } else {
        let u = alg.mul(&g2, &g_inv);
        ns.iter().map(|x| alg.mul(&u, x)).collect()
    };
    let columns: Vec<Vector<F>> = ns.iter().chain(&shifted).map(|x| x.0.to_vec()).collect();
    let kernel = Matrix::from_columns(&columns).kernel();
    let Some(k) = kernel.integral_basis().first() else {
        return Ok(None);
    };
    let target = ns[0].scale(&k[2]).add(&ns[1].scale(&k[3]));
    let c = if left {
        alg.mul(&target, &g_inv)
    } else {
        alg.mul(&g_inv, &target)
    };
    Ok(Some(c))
}

/// `M ∥_ℓ N`: some `c ≠ 0` has `cM = N`.
pub fn left_parallel<F: Field>(alg: &Algebra<F>, m: &Subspace<F>, n: &Subspace<F>) -> Result<bool> {
    Ok(parallel_witness(alg, m, n, true)?.is_some())
}

/// `M ∥_r N`: some `c ≠ 0` has `Mc = N`.
pub fn right_parallel<F: Field>(
    alg: &Algebra<F>,
    m: &Subspace<F>,
    n: &Subspace<F>,
) -> Result<bool> {
    Ok(parallel_witness(alg, m, n, false)?.is_some())
}

pub fn c_parallel<F: Field>(p: &Parallelism<F>, m: &Subspace<F>, n: &Subspace<F>) -> Result<bool> {
    let km = p.class_key(&pluecker_vector(m)?.0);
    let kn = p.class_key(&pluecker_vector(n)?.0);
    Ok(is_zero_vector(&km) == is_zero_vector(&kn) && proportional(&km, &kn))
}

/// The line through `pt` that is `C`-parallel to `m`: the preimage of the
/// single point where the star plane of `pt` meets the class solid.
pub fn parallel_through<F: Field>(
    p: &Parallelism<F>,
    pt: &Subspace<F>,
    m: &Subspace<F>,
) -> Result<Subspace<F>> {
    check_point(pt, 4)?;
    let solid = p.class_solid(m)?;
    through_point(&solid, pt)
}

fn through_point<F: Field>(solid: &Subspace<F>, pt: &Subspace<F>) -> Result<Subspace<F>> {
    let line = star_section(pt, solid)?;
    if line.dim() != 2 {
        return Err(Error::MeetNotAPoint(line.dim().saturating_sub(1)));
    }
    Ok(line)
}

/// One parallel class, carried by the solid `T = C + F·γ(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass<F: Field> {
    plane: Subspace<F>,
    solid: Subspace<F>,
    base: Subspace<F>,
    certificate: Certificate,
}

pub fn parallel_class<F: Field>(p: &Parallelism<F>, m: &Subspace<F>) -> Result<ParallelClass<F>> {
    Ok(ParallelClass {
        plane: p.plane.clone(),
        solid: p.class_solid(m)?,
        base: m.clone(),
        certificate: p.certificate,
    })
}

impl<F: Field> ParallelClass<F> {
    pub fn plane(&self) -> &Subspace<F> {
        &self.plane
    }

    pub fn solid(&self) -> &Subspace<F> {
        &self.solid
    }

    pub fn base(&self) -> &Subspace<F> {
        &self.base
    }

    pub fn contains(&self, m: &Subspace<F>) -> Result<bool> {
        Ok(self.solid.member(&pluecker_vector(m)?.0)?)
    }

    pub fn member_through(&self, pt: &Subspace<F>) -> Result<Subspace<F>> {
        check_point(pt, 4)?;
        through_point(&self.solid, pt)
    }

    /// Random members, from the quadric points on random lines of `P(T)`
    /// through `γ(base)`.
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
            let dir = self.solid.random_nonzero(rng, bound);
            if let Some(x) = second_quadric_point(&known, &dir) {
                out.push(pluecker_inverse_vector(&Bivector::from_vec(&x)).expect("x is on Q"));
            }
        }
        out
    }
}

/// Outcome of a regular spread check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpreadVerdict {
    pub regular: bool,
    pub certificate: Certificate,
}

/// Whether the class is a regular spread: `T^⊥` must be a line of
/// `P(H∧H)` without quadric points. Falls back to `samples` random points
/// when no exact argument applies.
pub fn class_is_regular_spread<F: Field, R: Rng + ?Sized>(
    k: &ParallelClass<F>,
    rng: &mut R,
    bound: u32,
    samples: usize,
) -> Result<SpreadVerdict> {
    let axis = perp(&k.solid)?;
    if axis.dim() != 2 {
        return Ok(SpreadVerdict {
            regular: false,
            certificate: Certificate::Exact,
        });
    }
    if is_definite(&axis) == Some(true) {
        return Ok(SpreadVerdict {
            regular: true,
            certificate: Certificate::CertifiedDefinite,
        });
    }
    if let Some(meets) = line_meets_quadric(&axis)? {
        return Ok(SpreadVerdict {
            regular: !meets,
            certificate: Certificate::Exact,
        });
    }
    let meets = line_meets_quadric_sampled(&axis, rng, bound, samples)?;
    Ok(SpreadVerdict {
        regular: !meets,
        certificate: Certificate::Sampled(samples),
    })
}

/// Rank of the points `p, q, r` of `P(V)` as vectors.
pub(crate) fn points_rank<F: Field>(points: &[&Subspace<F>]) -> Result<usize> {
    let vs: Vec<Vector<F>> = points
        .iter()
        .map(|p| check_point(p, 4).map(|_| p.integral_basis()[0].clone()))
        .collect::<Result<_>>()?;
    Ok(rank(4, &vs)?)
}

#[cfg(test)]
mod tests;

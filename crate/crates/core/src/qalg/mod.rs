//! Quadratic division algebras `H` of dimension 4 over `F`, given by
//! structure constants `(a, b)` in the basis `1, i, j, k`.
//!
//! * `A1` (char ≠ 2): `i² = a, j² = b, ij = −ji = k`.
//! * `A2` (char 2): `i² = i + a, j² = b, ij = k, ji = j + k`.
//! * `B` (char 2): the `A1` table with signs dropped; a purely inseparable
//!   field extension whose conjugation is the identity.

mod config;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::kleingeom::{wedge, PAIRS};
use crate::linalg::{unit, Matrix, Subspace};
use crate::scalars::{check_spec, Field, FieldSpec};

pub use config::{AlgebraConfig, ValidationLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraCase {
    A1,
    A2,
    B,
}

impl AlgebraCase {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraCase::A1 => "A1",
            AlgebraCase::A2 => "A2",
            AlgebraCase::B => "B",
        }
    }
}

impl fmt::Display for AlgebraCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How strongly the division property was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisionCertificate {
    /// Rational `A1` with `a, b < 0`: the norm form is positive definite.
    CertifiedDefinite,
    /// Case `B`: `1, a, b, ab` independent over the subfield of squares.
    FrobeniusIndependent,
    /// No zero-norm element among the first `n` enumerated candidates.
    BoundedSearch(usize),
    Asserted,
}

impl DivisionCertificate {
    pub fn label(&self) -> String {
        match self {
            DivisionCertificate::CertifiedDefinite => "definite".into(),
            DivisionCertificate::FrobeniusIndependent => "frobenius".into(),
            DivisionCertificate::BoundedSearch(n) => format!("search:{n}"),
            DivisionCertificate::Asserted => "assert".into(),
        }
    }
}

/// An element `x0 + x1 i + x2 j + x3 k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<F: Field>(pub [F; 4]);

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        AlgebraElement(std::array::from_fn(|_| F::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn scalar(c: F) -> Self {
        let mut x = Self::zero();
        x.0[0] = c;
        x
    }

    pub fn basis(idx: usize) -> Self {
        Self::from_slice(&unit(4, idx))
    }

    pub fn from_slice(v: &[F]) -> Self {
        assert_eq!(v.len(), 4, "algebra elements have four coordinates");
        AlgebraElement(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    /// Random nonzero element with coordinates of the given size bound.
    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        loop {
            let x = AlgebraElement(std::array::from_fn(|_| F::random_integral(rng, bound)));
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement(std::array::from_fn(|i| self.0[i].add(&other.0[i])))
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement(std::array::from_fn(|i| self.0[i].sub(&other.0[i])))
    }

    pub fn scale(&self, c: &F) -> Self {
        AlgebraElement(std::array::from_fn(|i| c.mul(&self.0[i])))
    }

    /// Lies in `F = F·1`.
    pub fn is_scalar(&self) -> bool {
        self.0[1..].iter().all(F::is_zero)
    }

    pub fn render(&self, spec: &FieldSpec) -> String {
        const NAMES: [&str; 4] = ["1", "i", "j", "k"];
        let mut out = String::new();
        for (c, name) in self.0.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            let coeff = c.render(spec);
            let term = if c.is_one() {
                name.to_string()
            } else if c.neg().is_one() {
                format!("-{name}")
            } else if name == "1" {
                coeff
            } else if coeff.contains(['+', '/']) && !coeff.starts_with('(') {
                format!("({coeff})*{name}")
            } else {
                format!("{coeff}*{name}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// A quadratic algebra over `F` with its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    spec: FieldSpec,
    case: AlgebraCase,
    a: F,
    b: F,
    table: [[AlgebraElement<F>; 4]; 4],
    certificate: DivisionCertificate,
}

fn el<F: Field>(coords: [F; 4]) -> AlgebraElement<F> {
    AlgebraElement(coords)
}

fn table_a1<F: Field>(a: &F, b: &F) -> [[AlgebraElement<F>; 4]; 4] {
    let z = F::zero;
    let one = F::one;
    let ab = a.mul(b);
    [
        [
            el([one(), z(), z(), z()]),
            el([z(), one(), z(), z()]),
            el([z(), z(), one(), z()]),
            el([z(), z(), z(), one()]),
        ],
        // i·1, i², ij = k, ik = aj
        [
            el([z(), one(), z(), z()]),
            el([a.clone(), z(), z(), z()]),
            el([z(), z(), z(), one()]),
            el([z(), z(), a.clone(), z()]),
        ],
        // j·1, ji = −k, j² = b, jk = −bi
        [
            el([z(), z(), one(), z()]),
            el([z(), z(), z(), one().neg()]),
            el([b.clone(), z(), z(), z()]),
            el([z(), b.neg(), z(), z()]),
        ],
        // k·1, ki = −aj, kj = bi, k² = −ab
        [
            el([z(), z(), z(), one()]),
            el([z(), z(), a.neg(), z()]),
            el([z(), b.clone(), z(), z()]),
            el([ab.neg(), z(), z(), z()]),
        ],
    ]
}

fn table_a2<F: Field>(a: &F, b: &F) -> [[AlgebraElement<F>; 4]; 4] {
    let z = F::zero;
    let one = F::one;
    let ab = a.mul(b);
    [
        [
            el([one(), z(), z(), z()]),
            el([z(), one(), z(), z()]),
            el([z(), z(), one(), z()]),
            el([z(), z(), z(), one()]),
        ],
        // i·1, i² = i + a, ij = k, ik = aj + k
        [
            el([z(), one(), z(), z()]),
            el([a.clone(), one(), z(), z()]),
            el([z(), z(), z(), one()]),
            el([z(), z(), a.clone(), one()]),
        ],
        // j·1, ji = j + k, j² = b, jk = b + bi
        [
            el([z(), z(), one(), z()]),
            el([z(), z(), one(), one()]),
            el([b.clone(), z(), z(), z()]),
            el([b.clone(), b.clone(), z(), z()]),
        ],
        // k·1, ki = aj, kj = bi, k² = ab
        [
            el([z(), z(), z(), one()]),
            el([z(), z(), a.clone(), z()]),
            el([z(), b.clone(), z(), z()]),
            el([ab, z(), z(), z()]),
        ],
    ]
}

impl<F: Field> Algebra<F> {
    /// Installs the multiplication table for `case` and validates the
    /// division property at the requested level.
    pub fn new(
        spec: FieldSpec,
        case: AlgebraCase,
        a: F,
        b: F,
        level: ValidationLevel,
    ) -> Result<Self> {
        check_spec::<F>(&spec)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::BadStructureConstants(
                "a and b must be nonzero".into(),
            ));
        }
        let char2 = F::characteristic() == 2;
        match (case, char2) {
            (AlgebraCase::A1, true) => {
                return Err(Error::CharMismatch(
                    "case A1 needs characteristic other than 2; use case B".into(),
                ))
            }
            (AlgebraCase::A2 | AlgebraCase::B, false) => {
                return Err(Error::CharMismatch(format!(
                    "case {case} needs characteristic 2"
                )))
            }
            _ => {}
        }
        let table = match case {
            AlgebraCase::A1 | AlgebraCase::B => table_a1(&a, &b),
            AlgebraCase::A2 => table_a2(&a, &b),
        };
        let mut alg = Algebra {
            spec,
            case,
            a,
            b,
            table,
            certificate: DivisionCertificate::Asserted,
        };
        alg.certificate = alg.validate(level)?;
        Ok(alg)
    }

    fn validate(&self, level: ValidationLevel) -> Result<DivisionCertificate> {
        match level {
            ValidationLevel::Assert => Ok(DivisionCertificate::Asserted),
            ValidationLevel::Search(budget) => {
                if let Some(w) = self.find_zero_divisor(budget) {
                    return Err(self.not_division(&w));
                }
                Ok(DivisionCertificate::BoundedSearch(budget))
            }
            ValidationLevel::Definite => {
                let negative = |x: &F| x.signum() == Some(-1);
                if self.case == AlgebraCase::A1 && negative(&self.a) && negative(&self.b) {
                    // norm = x0² − a x1² − b x2² + ab x3², all coefficients > 0
                    return Ok(DivisionCertificate::CertifiedDefinite);
                }
                if let Some(w) = self.find_zero_divisor(1296) {
                    return Err(self.not_division(&w));
                }
                Err(Error::Uncertifiable {
                    level: "definite".into(),
                    reason: "needs case A1 over Q with a < 0 and b < 0".into(),
                })
            }
            ValidationLevel::Frobenius => {
                if self.case != AlgebraCase::B {
                    return Err(Error::Uncertifiable {
                        level: "frobenius".into(),
                        reason: "only applies to case B".into(),
                    });
                }
                let elems = [
                    F::one(),
                    self.a.clone(),
                    self.b.clone(),
                    self.a.mul(&self.b),
                ];
                let coords: Vec<[F; 4]> = elems
                    .iter()
                    .map(F::frobenius_coordinates)
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::Uncertifiable {
                        level: "frobenius".into(),
                        reason: "field has no Frobenius coordinates".into(),
                    })?;
                // column i holds the coordinates of the i-th element
                let m =
                    Matrix::from_columns(&coords.iter().map(|c| c.to_vec()).collect::<Vec<_>>());
                let kernel = m.kernel();
                match kernel.basis().first() {
                    None => Ok(DivisionCertificate::FrobeniusIndependent),
                    // Σ x_i² e_i = 0 gives h = Σ x_i e_i with h² = norm(h) = 0
                    Some(x) => Err(self.not_division(&AlgebraElement::from_slice(x))),
                }
            }
        }
    }

    fn not_division(&self, witness: &AlgebraElement<F>) -> Error {
        Error::NotDivisionAlgebra {
            witness: witness.render(&self.spec),
        }
    }

    /// Enumerates candidates with coordinates from `F::small`, in order of
    /// the largest index used, and returns the first nonzero element of
    /// norm zero.
    pub fn find_zero_divisor(&self, budget: usize) -> Option<AlgebraElement<F>> {
        let mut tried = 0;
        let mut level = 1usize;
        loop {
            let base = level + 1;
            for n in 0..base.pow(4) {
                let digits: [usize; 4] = std::array::from_fn(|k| (n / base.pow(k as u32)) % base);
                if digits.iter().all(|&d| d < level) {
                    continue;
                }
                if tried >= budget {
                    return None;
                }
                tried += 1;
                let h = AlgebraElement(digits.map(F::small));
                if self.norm(&h).is_zero() {
                    return Some(h);
                }
            }
            level += 1;
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn case(&self) -> AlgebraCase {
        self.case
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn certificate(&self) -> DivisionCertificate {
        self.certificate
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &AlgebraElement<F> {
        &self.table[i][j]
    }

    pub fn mul(&self, g: &AlgebraElement<F>, h: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (i, gi) in g.0.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, hj) in h.0.iter().enumerate() {
                if hj.is_zero() {
                    continue;
                }
                out = out.add(&self.table[i][j].scale(&gi.mul(hj)));
            }
        }
        out
    }

    pub fn conj(&self, h: &AlgebraElement<F>) -> AlgebraElement<F> {
        let x = &h.0;
        match self.case {
            AlgebraCase::A1 => el([x[0].clone(), x[1].neg(), x[2].neg(), x[3].neg()]),
            // ī = i + 1, j̄ = j, k̄ = k
            AlgebraCase::A2 => el([x[0].add(&x[1]), x[1].clone(), x[2].clone(), x[3].clone()]),
            AlgebraCase::B => h.clone(),
        }
    }

    /// `h h̄`, an element of `F`.
    pub fn norm(&self, h: &AlgebraElement<F>) -> F {
        let n = self.mul(h, &self.conj(h));
        debug_assert!(n.is_scalar());
        n.0[0].clone()
    }

    /// `h + h̄`, an element of `F`.
    pub fn trace(&self, h: &AlgebraElement<F>) -> F {
        let t = h.add(&self.conj(h));
        debug_assert!(t.is_scalar());
        t.0[0].clone()
    }

    pub fn inv(&self, h: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        if h.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.norm(h);
        if n.is_zero() {
            return Err(Error::ZeroDivisor {
                witness: h.render(&self.spec),
            });
        }
        Ok(self.conj(h).scale(&n.inv()?))
    }

    /// `h² − tr(h)·h + N(h) = 0`.
    pub fn quadratic_algebra_check(&self, h: &AlgebraElement<F>) -> bool {
        let lhs = self
            .mul(h, h)
            .sub(&h.scale(&self.trace(h)))
            .add(&AlgebraElement::scalar(self.norm(h)));
        lhs.is_zero()
    }

    fn translation(&self, c: &AlgebraElement<F>, left: bool) -> Result<Matrix<F>> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        let columns: Vec<Vec<F>> = (0..4)
            .map(|j| {
                let e = AlgebraElement::basis(j);
                let img = if left {
                    self.mul(c, &e)
                } else {
                    self.mul(&e, c)
                };
                img.0.to_vec()
            })
            .collect();
        Ok(Matrix::from_columns(&columns))
    }

    /// Matrix of `h ↦ c h`.
    pub fn left_translation(&self, c: &AlgebraElement<F>) -> Result<Matrix<F>> {
        self.translation(c, true)
    }

    /// Matrix of `h ↦ h c`.
    pub fn right_translation(&self, c: &AlgebraElement<F>) -> Result<Matrix<F>> {
        self.translation(c, false)
    }

    /// Image of a line of `P(H)` under left multiplication by `c`.
    pub fn left_multiply_subspace(
        &self,
        c: &AlgebraElement<F>,
        m: &Subspace<F>,
    ) -> Result<Subspace<F>> {
        Ok(m.image(&self.left_translation(c)?)?)
    }

    pub fn right_multiply_subspace(
        &self,
        m: &Subspace<F>,
        c: &AlgebraElement<F>,
    ) -> Result<Subspace<F>> {
        Ok(m.image(&self.right_translation(c)?)?)
    }

    /// Multiplication table rendered as strings, row `i` column `j` is
    /// `e_i e_j`.
    pub fn table_strings(&self, spec: &FieldSpec) -> Vec<Vec<String>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|x| x.render(spec)).collect())
            .collect()
    }
}

/// The induced map `u∧v ↦ L(u)∧L(v)` on `V∧V`, as a 6×6 matrix.
pub fn exterior_square<F: Field>(l: &Matrix<F>) -> Result<Matrix<F>> {
    assert!(
        l.rows() == 4 && l.cols() == 4,
        "exterior square of a 4x4 map"
    );
    if l.rank() != 4 {
        return Err(Error::SingularMap);
    }
    let columns: Vec<Vec<F>> = PAIRS
        .iter()
        .map(|&(s, t)| wedge(&l.column(s), &l.column(t)).to_vec())
        .collect();
    Ok(Matrix::from_columns(&columns))
}

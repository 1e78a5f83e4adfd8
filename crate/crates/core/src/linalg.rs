//! Exact linear algebra over a [`Field`].
//!
//! Subspaces keep a fraction-free echelon basis; their canonical reduced
//! row-echelon basis is unique and is what gets printed.

use std::sync::OnceLock;

use rand::Rng;
use serde_json::Value;
use thiserror::Error;

use crate::scalars::{Field, FieldSpec};

pub type Vector<F> = Vec<F>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
}

/// Fraction-free Gauss–Jordan elimination (Bareiss). Returns nonzero rows
/// equal to `d · RREF` for a common nonzero `d`, and their pivot columns.
/// Every division is exact, so integral input stays integral and no
/// fraction ever has to be reduced. The common content is removed at the end.
fn echelon<F: Field>(rows: Vec<Vector<F>>, ncols: usize) -> (Vec<Vector<F>>, Vec<usize>) {
    let mut rows: Vec<Vector<F>> = rows
        .into_iter()
        .filter(|r| !is_zero_vector(r))
        .map(|r| F::clear_denominators(&r))
        .collect();
    let mut prev = F::one();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let r = pivots.len();
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let pivot = rows[r].clone();
        let p = pivot[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let x = row[col].clone();
            for (y, q) in row.iter_mut().zip(&pivot) {
                let mut z = y.mul(&p);
                if !x.is_zero() && !q.is_zero() {
                    z = z.sub(&x.mul(q));
                }
                *y = if prev.is_one() { z } else { z.exact_div(&prev) };
            }
        }
        prev = p;
        pivots.push(col);
    }
    rows.truncate(pivots.len());
    F::divide_content(&mut rows);
    (rows, pivots)
}

/// A linear subspace of `F^n`.
///
/// The basis is kept fraction-free as `d · RREF`; the canonical RREF basis
/// is derived on demand. Equality is equality of subspaces.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
    canonical: OnceLock<Vec<Vector<F>>>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && other.rows.iter().all(|v| self.reduces_to_zero(v))
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> std::hash::Hash for Subspace<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis().hash(state);
    }
}

impl<F: Field> Subspace<F> {
    /// Span of the given vectors, all of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vector<F>]) -> Result<Self, LinalgError> {
        for v in vectors {
            check_len(ambient, v.len())?;
        }
        Ok(Self::span_owned(ambient, vectors.to_vec()))
    }

    /// Span of owned vectors; panics on length mismatch. For internal use
    /// where lengths are known by construction.
    pub(crate) fn span_owned(ambient: usize, vectors: Vec<Vector<F>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (rows, pivots) = echelon(vectors, ambient);
        Subspace {
            ambient,
            rows,
            pivots,
            canonical: OnceLock::new(),
        }
    }

    /// Wraps rows already in `d · RREF` form with the given pivots.
    pub(crate) fn from_echelon(ambient: usize, rows: Vec<Vector<F>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        Subspace {
            ambient,
            rows,
            pivots,
            canonical: OnceLock::new(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::span_owned(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span_owned(ambient, (0..ambient).map(|i| unit(ambient, i)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical reduced row-echelon basis.
    pub fn basis(&self) -> &[Vector<F>] {
        self.canonical.get_or_init(|| {
            self.rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &p)| {
                    let inv = r[p].inv().expect("pivot is nonzero");
                    r.iter().map(|x| x.mul(&inv)).collect()
                })
                .collect()
        })
    }

    /// A basis without denominators, each vector proportional to the
    /// corresponding canonical basis vector. Preferred for computation.
    /// Pivot columns of the integral basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn integral_basis(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `d·v − Σ v[p_i]·row_i` vanishes iff `v` lies in the span.
    fn reduces_to_zero(&self, v: &[F]) -> bool {
        let Some(first) = self.rows.first() else {
            return is_zero_vector(v);
        };
        let d = &first[self.pivots[0]];
        (0..self.ambient).all(|j| {
            let mut acc = v[j].mul(d);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !v[p].is_zero() && !row[j].is_zero() {
                    acc = acc.sub(&v[p].mul(&row[j]));
                }
            }
            acc.is_zero()
        })
    }

    pub fn member(&self, v: &[F]) -> Result<bool, LinalgError> {
        check_len(self.ambient, v.len())?;
        Ok(self.reduces_to_zero(v))
    }

    pub fn contains(&self, other: &Subspace<F>) -> Result<bool, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.rows.iter().all(|v| self.reduces_to_zero(v)))
    }

    pub fn join(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        if self.contains(other)? {
            return Ok(self.clone());
        }
        if other.contains(self)? {
            return Ok(other.clone());
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace::span_owned(self.ambient, rows))
    }

    /// Subspace spanned by `self` and one more vector.
    pub fn join_vector(&self, v: &[F]) -> Result<Subspace<F>, LinalgError> {
        check_len(self.ambient, v.len())?;
        if self.reduces_to_zero(v) {
            return Ok(self.clone());
        }
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Ok(Subspace::span_owned(self.ambient, rows))
    }

    /// Vectors `x` with `a . x = 0` for every basis vector `a` of `self`.
    pub fn annihilator(&self) -> Subspace<F> {
        kernel_of_echelon(self.ambient, &self.rows, &self.pivots)
    }

    pub fn meet(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        if self.contains(other)? {
            return Ok(other.clone());
        }
        if other.contains(self)? {
            return Ok(self.clone());
        }
        let mut rows = self.annihilator().rows;
        rows.extend(other.annihilator().rows);
        Ok(solve_rows(self.ambient, rows))
    }

    /// Image under a linear map given as a square matrix acting on columns.
    pub fn image(&self, map: &Matrix<F>) -> Result<Subspace<F>, LinalgError> {
        check_len(self.ambient, map.cols())?;
        let rows = self.rows.iter().map(|v| map.apply(v)).collect();
        Ok(Subspace::span_owned(map.rows(), rows))
    }

    /// Random linear combination of the basis with integral coefficients of
    /// the given size bound. May be zero.
    pub fn random_vector<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> Vector<F> {
        let mut v = vec![F::zero(); self.ambient];
        for row in &self.rows {
            let c = F::random_integral(rng, bound);
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.add(&c.mul(r));
                }
            }
        }
        v
    }

    /// Random nonzero vector of the subspace; panics on the zero subspace.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> Vector<F> {
        assert!(!self.is_zero(), "zero subspace has no nonzero vectors");
        loop {
            let v = self.random_vector(rng, bound);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// JSON array of canonical RREF rows, each an array of scalar strings.
    pub fn to_json(&self, spec: &FieldSpec) -> Value {
        Value::Array(
            self.basis()
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| Value::String(x.render(spec))).collect()))
                .collect(),
        )
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), LinalgError> {
    if expected == got {
        Ok(())
    } else {
        Err(LinalgError::AmbientMismatch { expected, got })
    }
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vector<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Null space of rows in `d · RREF` form with the given pivots.
fn kernel_of_echelon<F: Field>(n: usize, rows: &[Vector<F>], pivots: &[usize]) -> Subspace<F> {
    let d = rows.first().map_or_else(F::one, |r| r[pivots[0]].clone());
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); n];
        v[free] = d.clone();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = row[free].neg();
        }
        basis.push(v);
    }
    Subspace::span_owned(n, basis)
}

fn solve_rows<F: Field>(n: usize, rows: Vec<Vector<F>>) -> Subspace<F> {
    let (reduced, pivots) = echelon(rows, n);
    kernel_of_echelon(n, &reduced, &pivots)
}

/// All `x` with `row . x = 0` for every given row.
pub fn solve_homogeneous<F: Field>(
    ambient: usize,
    rows: &[Vector<F>],
) -> Result<Subspace<F>, LinalgError> {
    for r in rows {
        check_len(ambient, r.len())?;
    }
    Ok(solve_rows(ambient, rows.to_vec()))
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(ambient: usize, vectors: &[Vector<F>]) -> Result<usize, LinalgError> {
    Ok(Subspace::span(ambient, vectors)?.dim())
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

pub fn scale<F: Field>(c: &F, v: &[F]) -> Vector<F> {
    v.iter().map(|x| c.mul(x)).collect()
}

pub fn add_vectors<F: Field>(a: &[F], b: &[F]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn is_zero_vector<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// A dense matrix; `apply` multiplies a column vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    entries: Vec<Vec<F>>,
    cols: usize,
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(entries: Vec<Vec<F>>) -> Self {
        let cols = entries.first().map_or(0, Vec::len);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { entries, cols }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector<F>]) -> Self {
        let nrows = columns.first().map_or(0, Vec::len);
        let entries = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix {
            entries,
            cols: columns.len(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_rows((0..n).map(|i| unit(n, i)).collect())
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &[F]) -> Vector<F> {
        assert_eq!(v.len(), self.cols, "matrix/vector size mismatch");
        self.entries.iter().map(|r| dot(r, v)).collect()
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows(), "matrix size mismatch");
        let columns: Vec<Vector<F>> = (0..other.cols)
            .map(|j| self.apply(&other.column(j)))
            .collect();
        Matrix::from_columns(&columns)
    }

    pub fn rank(&self) -> usize {
        Subspace::span_owned(self.cols, self.entries.clone()).dim()
    }

    pub fn kernel(&self) -> Subspace<F> {
        solve_rows(self.cols, self.entries.clone())
    }
}

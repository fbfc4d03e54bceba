//! Field-generic dense linear algebra.
//!
//! Matrices are [`nalgebra::DMatrix`] over a [`Scalar`], which is either `f64`
//! or `Complex<f64>`. Subspaces are always compared through their orthogonal
//! projection matrices, never through the frames that span them, because a
//! frame is only determined up to a right unitary factor.

use std::fmt;

use nalgebra::{ComplexField, DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use nalgebra::Complex;

use crate::error::{Error, Result};

/// Dense matrix over a scalar field.
pub type Mat<T> = DMatrix<T>;
/// Dense column vector over a scalar field.
pub type Vector<T> = DVector<T>;

/// The two supported ground fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Scalar field the library is generic over.
///
/// Conjugation is an involution; for `f64` it is the identity.
pub trait Scalar:
    ComplexField<RealField = f64> + Copy + Send + Sync + fmt::Debug + PartialEq + 'static
{
    const FIELD: Field;

    /// Builds a scalar from real and imaginary parts. Real scalars drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;

    /// Standard Gaussian sample (circularly symmetric for complex scalars).
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn to_json(self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;

    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn to_json(self) -> Value {
        Value::from(self)
    }

    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_f64()
            .ok_or_else(|| Error::Schema(format!("expected a real number, found {value}")))
    }
}

impl Scalar for Complex<f64> {
    const FIELD: Field = Field::Complex;

    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }

    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    fn to_json(self) -> Value {
        Value::from(vec![self.re, self.im])
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex::new(re, im)),
                _ => Err(Error::Schema(format!("complex entry must hold two numbers, found {value}"))),
            },
            _ => Err(Error::Schema(format!("expected a complex [re, im] pair, found {value}"))),
        }
    }
}

/// Numerical tolerances used by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Bound on `max |QᴴQ - I|` for frames treated as orthonormal.
    pub eps_orth: f64,
    /// Singular values at or below this are treated as zero.
    pub eps_rank: f64,
    /// Bound on entrywise distance for matrix equality.
    pub eps_eq: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_orth: 1e-10, eps_rank: 1e-8, eps_eq: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(eps_orth: f64, eps_rank: f64, eps_eq: f64) -> Result<Self> {
        let tol = Tolerance { eps_orth, eps_rank, eps_eq };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_orth, self.eps_rank, self.eps_eq];
        if all.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidTolerance(format!(
                "all tolerances must be finite and strictly positive, got {self:?}"
            )));
        }
        if self.eps_rank < self.eps_orth {
            return Err(Error::InvalidTolerance(format!(
                "eps_rank ({:e}) must be >= eps_orth ({:e})",
                self.eps_rank, self.eps_orth
            )));
        }
        Ok(())
    }
}

/// Largest entry modulus; zero for empty matrices.
pub fn max_abs<T: Scalar>(m: &Mat<T>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.modulus()))
}

/// Entrywise distance, or `+∞` when the shapes differ.
pub fn max_abs_diff<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((*x - *y).modulus()))
}

/// Smallest singular value; `+∞` for a matrix with no singular values.
pub fn smallest_singular_value<T: Scalar>(m: &Mat<T>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return f64::INFINITY;
    }
    m.clone().singular_values().iter().fold(f64::INFINITY, |acc, s| acc.min(*s))
}

/// `max |QᴴQ - I|`.
pub fn orthonormality_residual<T: Scalar>(frame: &Mat<T>) -> f64 {
    let gram = frame.adjoint() * frame;
    max_abs_diff(&gram, &Mat::identity(frame.ncols(), frame.ncols()))
}

pub fn check_orthonormal<T: Scalar>(frame: &Mat<T>, tol: &Tolerance) -> Result<()> {
    let residual = orthonormality_residual(frame);
    if residual > tol.eps_orth || frame.ncols() > frame.nrows() {
        return Err(Error::NotOrthonormal { residual, threshold: tol.eps_orth });
    }
    Ok(())
}

/// Orthonormal basis of the column span of a full-column-rank frame.
///
/// Uses a Householder QR factorization.
pub fn orthonormalize<T: Scalar>(frame: &Mat<T>, tol: &Tolerance) -> Result<Mat<T>> {
    let (m, k) = frame.shape();
    if k == 0 {
        return Ok(Mat::zeros(m, 0));
    }
    if k > m {
        return Err(Error::RankDeficient { smallest: 0.0, threshold: tol.eps_rank });
    }
    let smallest = smallest_singular_value(frame);
    if !(smallest > tol.eps_rank) {
        return Err(Error::RankDeficient { smallest, threshold: tol.eps_rank });
    }
    Ok(frame.clone().qr().q())
}

/// Orthonormal basis of the orthogonal complement of an orthonormal frame.
pub fn orth_complement<T: Scalar>(frame: &Mat<T>, tol: &Tolerance) -> Result<Mat<T>> {
    check_orthonormal(frame, tol)?;
    let (m, k) = frame.shape();
    if m == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    // QR of [frame | I]: the leading k columns of Q span the frame, the rest
    // span its complement.
    let widened = hstack(frame, &Mat::identity(m, m));
    let q = widened.qr().q();
    Ok(q.columns(k, m - k).into_owned())
}

/// Orthogonal projection `P = Q Qᴴ` onto the span of an orthonormal frame.
pub fn proj_matrix<T: Scalar>(frame: &Mat<T>) -> Mat<T> {
    frame * frame.adjoint()
}

/// Horizontal concatenation `[a | b]`.
pub fn hstack<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    assert_eq!(a.nrows(), b.nrows(), "hstack: row counts differ");
    let mut out = Mat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Vertical concatenation `[a ; b]`.
pub fn vstack<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    assert_eq!(a.ncols(), b.ncols(), "vstack: column counts differ");
    let mut out = Mat::zeros(a.nrows() + b.nrows(), a.ncols());
    out.rows_mut(0, a.nrows()).copy_from(a);
    out.rows_mut(a.nrows(), b.nrows()).copy_from(b);
    out
}

/// Block-diagonal sum `[[a, 0], [0, b]]`.
pub fn block_diag<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let mut out = Mat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((a.nrows(), a.ncols()), b.shape()).copy_from(b);
    out
}

/// Kronecker product with row-major flattening `e_i ⊗ e_j ↦ e_{i·n + j}`.
pub fn kron<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    a.kronecker(b)
}

/// `s · m` for a real scalar `s`.
pub fn scaled<T: Scalar>(m: &Mat<T>, s: f64) -> Mat<T> {
    m * T::from_parts(s, 0.0)
}

/// Embeds `m` in the top-left corner of a zero matrix with extra rows and columns.
pub fn pad<T: Scalar>(m: &Mat<T>, extra_rows: usize, extra_cols: usize) -> Mat<T> {
    let mut out = Mat::zeros(m.nrows() + extra_rows, m.ncols() + extra_cols);
    out.view_mut((0, 0), m.shape()).copy_from(m);
    out
}

/// Permutation matrix sending basis vector `i` to basis vector `perm[i]`.
pub fn permutation_matrix<T: Scalar>(perm: &[usize]) -> Mat<T> {
    let n = perm.len();
    let mut p = Mat::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(j, i)] = T::one();
    }
    p
}

/// First `k` standard basis vectors of `F^m` as an `m × k` frame.
pub fn coordinate_frame<T: Scalar>(m: usize, k: usize) -> Mat<T> {
    assert!(k <= m, "coordinate frame needs k <= m");
    Mat::identity(m, k)
}

pub fn unit_vector<T: Scalar>(m: usize, i: usize) -> Vector<T> {
    let mut v = Vector::zeros(m);
    v[i] = T::one();
    v
}

pub fn random_matrix<T: Scalar, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat<T> {
    Mat::from_fn(rows, cols, |_, _| T::sample_gaussian(rng))
}

/// Random invertible `k × k` matrix, kept away from singularity.
pub fn random_invertible<T: Scalar, R: Rng + ?Sized>(k: usize, rng: &mut R) -> Mat<T> {
    loop {
        let m: Mat<T> = random_matrix(k, k, rng);
        if smallest_singular_value(&m) > 0.1 {
            return m;
        }
    }
}

/// Random orthonormal `m × k` frame.
pub fn random_frame<T: Scalar, R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Mat<T> {
    let tol = Tolerance::default();
    loop {
        let g: Mat<T> = random_matrix(m, k, rng);
        if let Ok(q) = orthonormalize(&g, &tol) {
            return q;
        }
    }
}

pub fn matrix_to_json<T: Scalar>(m: &Mat<T>) -> Value {
    Value::Array(
        m.row_iter()
            .map(|row| Value::Array(row.iter().map(|x| x.to_json()).collect()))
            .collect(),
    )
}

/// Parses a row-major nested array. `cols` is needed for matrices with zero rows.
pub fn matrix_from_json<T: Scalar>(value: &Value, cols_hint: Option<usize>) -> Result<Mat<T>> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Schema(format!("matrix must be an array of rows, found {value}")))?;
    let ncols = match rows.first() {
        Some(r) => r
            .as_array()
            .ok_or_else(|| Error::Schema(format!("matrix row must be an array, found {r}")))?
            .len(),
        None => cols_hint.unwrap_or(0),
    };
    let mut out = Mat::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Schema(format!("matrix row must be an array, found {row}")))?;
        if row.len() != ncols {
            return Err(Error::Schema(format!(
                "ragged matrix: row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, entry) in row.iter().enumerate() {
            out[(i, j)] = T::from_json(entry)?;
        }
    }
    Ok(out)
}

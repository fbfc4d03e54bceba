//! Points of `Gr_k(F^m)`, the standard chart atlas and the stabilization maps.
//!
//! A chart centered at `V` is given by an orthonormal basis `v` of `V` and an
//! orthonormal basis `v⊥` of its complement. Its domain is the set of
//! `k`-planes `W` whose projection onto `V` is onto, and its coordinate is the
//! unique `(m-k) × k` matrix `A` with `span(v + v⊥·A) = W`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    check_orthonormal, hstack, max_abs_diff, orth_complement, orthonormalize, pad, proj_matrix,
    random_frame, smallest_singular_value, Mat, Scalar, Tolerance,
};

/// A `k`-dimensional subspace of `F^m`, stored as an orthonormal frame.
///
/// Equality is decided on projection matrices; see [`GrPoint::distance`].
#[derive(Debug, Clone, PartialEq)]
pub struct GrPoint<T: Scalar> {
    frame: Mat<T>,
}

impl<T: Scalar> GrPoint<T> {
    /// Wraps an orthonormal frame without altering it.
    pub fn from_orthonormal(frame: Mat<T>, tol: &Tolerance) -> Result<Self> {
        check_orthonormal(&frame, tol)?;
        Ok(GrPoint { frame })
    }

    pub(crate) fn from_parts_unchecked(frame: Mat<T>) -> Self {
        GrPoint { frame }
    }

    /// Span of an arbitrary full-rank frame.
    pub fn from_spanning(frame: &Mat<T>, tol: &Tolerance) -> Result<Self> {
        Ok(GrPoint { frame: orthonormalize(frame, tol)? })
    }

    /// `span(e_1, ..., e_k)` in `F^m`.
    pub fn coordinate(ambient_dim: usize, sub_dim: usize) -> Self {
        assert!(sub_dim <= ambient_dim, "coordinate subspace needs k <= m");
        GrPoint { frame: Mat::identity(ambient_dim, sub_dim) }
    }

    /// The zero subspace of `F^m`.
    pub fn zero(ambient_dim: usize) -> Self {
        GrPoint { frame: Mat::zeros(ambient_dim, 0) }
    }

    pub fn random<R: Rng + ?Sized>(ambient_dim: usize, sub_dim: usize, rng: &mut R) -> Self {
        GrPoint { frame: random_frame(ambient_dim, sub_dim, rng) }
    }

    pub(crate) fn from_frame_unchecked(frame: Mat<T>) -> Self {
        GrPoint { frame }
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn sub_dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn frame(&self) -> &Mat<T> {
        &self.frame
    }

    pub fn projection(&self) -> Mat<T> {
        proj_matrix(&self.frame)
    }

    /// Entrywise distance between projection matrices, `+∞` if `(m, k)` differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.ambient_dim() != other.ambient_dim() || self.sub_dim() != other.sub_dim() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.projection(), &other.projection())
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.distance(other) <= tol.eps_eq
    }

    /// Zero-pads the frame into `F^{m + extra}`.
    pub fn padded(&self, extra: usize) -> Self {
        GrPoint { frame: pad(&self.frame, extra, 0) }
    }
}

/// A chart of `Gr_k(F^m)` centered at `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrChart<T: Scalar> {
    base: GrPoint<T>,
    basis_v: Mat<T>,
    basis_vperp: Mat<T>,
}

impl<T: Scalar> GrChart<T> {
    /// Canonical chart: the base frame together with the Householder complement.
    pub fn centered_at(base: &GrPoint<T>, tol: &Tolerance) -> Result<Self> {
        let basis_vperp = orth_complement(base.frame(), tol)?;
        Ok(GrChart { base: base.clone(), basis_v: base.frame.clone(), basis_vperp })
    }

    /// Chart with an explicit choice of bases; `[basis_v | basis_vperp]` must be unitary.
    pub fn with_bases(basis_v: Mat<T>, basis_vperp: Mat<T>, tol: &Tolerance) -> Result<Self> {
        if basis_v.nrows() != basis_vperp.nrows()
            || basis_v.ncols() + basis_vperp.ncols() != basis_v.nrows()
        {
            return Err(Error::ShapeMismatch(format!(
                "chart bases {:?} and {:?} do not split the ambient space",
                basis_v.shape(),
                basis_vperp.shape()
            )));
        }
        check_orthonormal(&hstack(&basis_v, &basis_vperp), tol)?;
        Ok(GrChart { base: GrPoint { frame: basis_v.clone() }, basis_v, basis_vperp })
    }

    pub fn base(&self) -> &GrPoint<T> {
        &self.base
    }

    pub fn basis_v(&self) -> &Mat<T> {
        &self.basis_v
    }

    pub fn basis_vperp(&self) -> &Mat<T> {
        &self.basis_vperp
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis_v.nrows()
    }

    pub fn sub_dim(&self) -> usize {
        self.basis_v.ncols()
    }

    /// Shape `(m - k, k)` of chart coordinates.
    pub fn coord_shape(&self) -> (usize, usize) {
        (self.ambient_dim() - self.sub_dim(), self.sub_dim())
    }

    /// The (generally non-orthonormal) basis `v + v⊥·A` of the point with coordinate `A`.
    pub fn basis_at(&self, coords: &Mat<T>) -> Result<Mat<T>> {
        if coords.shape() != self.coord_shape() {
            return Err(Error::ShapeMismatch(format!(
                "chart coordinate must be {:?}, got {:?}",
                self.coord_shape(),
                coords.shape()
            )));
        }
        Ok(&self.basis_v + &self.basis_vperp * coords)
    }

    /// Chart at the stabilized base: `v` zero-padded, `v⊥` padded and followed by
    /// the new standard basis vectors. Coordinates gain `extra` zero rows.
    pub fn padded(&self, extra: usize) -> Self {
        let m = self.ambient_dim();
        let mut vperp = pad(&self.basis_vperp, extra, extra);
        for i in 0..extra {
            vperp[(m + i, self.basis_vperp.ncols() + i)] = T::one();
        }
        GrChart { base: self.base.padded(extra), basis_v: pad(&self.basis_v, extra, 0), basis_vperp: vperp }
    }
}

/// The point `span(v + v⊥·A)`.
pub fn chart_embed<T: Scalar>(chart: &GrChart<T>, coords: &Mat<T>, tol: &Tolerance) -> Result<GrPoint<T>> {
    let basis = chart.basis_at(coords)?;
    GrPoint::from_spanning(&basis, tol)
}

/// Coordinate `A` of `W` in the chart, i.e. `A = v⊥ᴴ W (vᴴ W)⁻¹`.
pub fn chart_coords<T: Scalar>(chart: &GrChart<T>, point: &GrPoint<T>, tol: &Tolerance) -> Result<Mat<T>> {
    if point.ambient_dim() != chart.ambient_dim() || point.sub_dim() != chart.sub_dim() {
        return Err(Error::ShapeMismatch(format!(
            "point in Gr_{}(F^{}) cannot be read in a chart of Gr_{}(F^{})",
            point.sub_dim(),
            point.ambient_dim(),
            chart.sub_dim(),
            chart.ambient_dim()
        )));
    }
    let (rows, k) = chart.coord_shape();
    if k == 0 {
        return Ok(Mat::zeros(rows, 0));
    }
    let block = chart.basis_v.adjoint() * point.frame();
    let smallest = smallest_singular_value(&block);
    if !(smallest > tol.eps_rank) {
        return Err(Error::OutsideChartDomain { smallest });
    }
    let inv = block.try_inverse().ok_or(Error::OutsideChartDomain { smallest })?;
    Ok(chart.basis_vperp.adjoint() * point.frame() * inv)
}

/// Transition map between two charts, computed as `coords_to ∘ embed_from`.
pub fn chart_transition<T: Scalar>(
    from: &GrChart<T>,
    to: &GrChart<T>,
    coords: &Mat<T>,
    tol: &Tolerance,
) -> Result<Mat<T>> {
    let point = chart_embed(from, coords, tol)?;
    chart_coords(to, &point, tol)
}

/// The embedding `Gr_k(F^m) → Gr_k(F^{m+1})` induced by `x ↦ (x, 0)`.
pub fn stabilize_gr<T: Scalar>(point: &GrPoint<T>) -> GrPoint<T> {
    point.padded(1)
}

/// Shift every coordinate down one slot, then adjoin `e_1`: `Gr_k(F^m) → Gr_{k+1}(F^{m+1})`.
pub fn iota_prime<T: Scalar>(point: &GrPoint<T>) -> GrPoint<T> {
    let (m, k) = point.frame.shape();
    let mut frame = Mat::zeros(m + 1, k + 1);
    frame[(0, 0)] = T::one();
    frame.view_mut((1, 1), (m, k)).copy_from(&point.frame);
    GrPoint { frame }
}

/// `V ↦ V + <e_{k+1} ⊗ e_1>` from `Gr_k(F^k ⊗ F^trunc)` to `Gr_{k+1}(F^{k+1} ⊗ F^trunc)`.
///
/// Tensor grids are flattened row-major, `e_i ⊗ e_j ↦ e_{(i-1)·trunc + j}`, so
/// the re-indexing into the larger grid is a zero-pad by `trunc` slots.
pub fn iota_g<T: Scalar>(point: &GrPoint<T>, k: usize, trunc: usize) -> Result<GrPoint<T>> {
    if trunc == 0 || point.ambient_dim() != k * trunc || point.sub_dim() != k {
        return Err(Error::ShapeMismatch(format!(
            "iota_g expects a {k}-plane in F^{k}⊗F^{trunc} (dimension {}), got Gr_{}(F^{})",
            k * trunc,
            point.sub_dim(),
            point.ambient_dim()
        )));
    }
    let mut frame = pad(&point.frame, trunc, 1);
    frame[(k * trunc, k)] = T::one();
    Ok(GrPoint { frame })
}

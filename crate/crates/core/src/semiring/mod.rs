//! Direct sum and tensor product on `V_F` and `V_F^f`.
//!
//! `F^n ⊕ F^n` is identified with `F^{2n}` by the interleaving `θ` and
//! `F^n ⊗ F^n` with `F^{n²}` by the layered ordering `κ`; both are compatible
//! with zero-padding, which is what makes the operations stabilize.

mod functors;
mod witness;

use crate::error::{Error, Result};
use crate::grassmann::{GrChart, GrPoint};
use crate::linalg::{block_diag, hstack, kron, permutation_matrix, vstack, Mat, Scalar, Tolerance, Vector};
use crate::mor::{MorPoint, VfMor};

pub use functors::*;
pub use witness::*;

/// `θ` as an index map: summand `s ∈ {0, 1}`, slot `i` goes to `2i + s` (0-based).
pub fn theta_perm(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| if i < n { 2 * i } else { 2 * (i - n) + 1 }).collect()
}

/// `κ` as an index map on row-major tensor indices `i·n + j` (0-based).
///
/// In 1-based terms with layer `L = max(i, j)`: `e_i ⊗ e_L ↦ e_{i + (L-1)²}` and
/// `e_L ⊗ e_j ↦ e_{2L - j + (L-1)²}`.
pub fn kappa_perm(n: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let l = i.max(j);
            let base = (l - 1) * (l - 1);
            let pos = if j == l { i + base } else { 2 * l - j + base };
            perm.push(pos - 1);
        }
    }
    perm
}

pub fn theta_matrix<T: Scalar>(n: usize) -> Mat<T> {
    permutation_matrix(&theta_perm(n))
}

pub fn kappa_matrix<T: Scalar>(n: usize) -> Mat<T> {
    permutation_matrix(&kappa_perm(n))
}

fn permute<T: Scalar>(perm: &[usize], v: &Vector<T>) -> Result<Vector<T>> {
    if v.len() != perm.len() {
        return Err(Error::ShapeMismatch(format!("expected a vector of length {}, got {}", perm.len(), v.len())));
    }
    let mut out = Vector::zeros(v.len());
    for (i, &p) in perm.iter().enumerate() {
        out[p] = v[i];
    }
    Ok(out)
}

/// `θ: F^n ⊕ F^n → F^{2n}`; the input is the concatenation `(u, w)`.
pub fn theta_apply<T: Scalar>(n: usize, v: &Vector<T>) -> Result<Vector<T>> {
    permute(&theta_perm(n), v)
}

/// `κ: F^n ⊗ F^n → F^{n²}`; the input is row-major, `e_i ⊗ e_j` at `i·n + j`.
pub fn kappa_apply<T: Scalar>(n: usize, v: &Vector<T>) -> Result<Vector<T>> {
    permute(&kappa_perm(n), v)
}

fn same_ambient<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> Result<usize> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::AmbientMismatch { left: x.ambient_dim(), right: y.ambient_dim() });
    }
    Ok(x.ambient_dim())
}

/// Zero-pads `x` up to ambient dimension `n` (no-op if already there).
pub fn pad_to<T: Scalar>(x: &GrPoint<T>, n: usize) -> GrPoint<T> {
    x.padded(n.saturating_sub(x.ambient_dim()))
}

fn pad_mor_to<T: Scalar>(f: &MorPoint<T>, m: usize, n: usize) -> MorPoint<T> {
    crate::mor::mor_stabilize(f, m.saturating_sub(f.src().ambient_dim()), n.saturating_sub(f.dst().ambient_dim()))
}

/// `θ_*(X ⊕ Y) ⊂ F^{2n}` for `X, Y ⊂ F^n`.
pub fn oplus_points<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> Result<GrPoint<T>> {
    let n = same_ambient(x, y)?;
    Ok(GrPoint::from_frame_unchecked(theta_matrix::<T>(n) * block_diag(x.frame(), y.frame())))
}

/// `κ_*(X ⊗ Y) ⊂ F^{n²}` for `X, Y ⊂ F^n`.
pub fn otimes_points<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> Result<GrPoint<T>> {
    let n = same_ambient(x, y)?;
    Ok(GrPoint::from_frame_unchecked(kappa_matrix::<T>(n) * kron(x.frame(), y.frame())))
}

fn check_mor_ambients<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> Result<(usize, usize)> {
    Ok((same_ambient(f.src(), g.src())?, same_ambient(f.dst(), g.dst())?))
}

/// `f ⊕ g` with ambient matrix `θ_n · diag(f, g) · θ_mᵀ`.
pub fn oplus_mor<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> Result<MorPoint<T>> {
    let (m, n) = check_mor_ambients(f, g)?;
    let map = theta_matrix::<T>(n) * block_diag(f.map(), g.map()) * theta_matrix::<T>(m).transpose();
    Ok(MorPoint::from_parts_unchecked(oplus_points(f.src(), g.src())?, oplus_points(f.dst(), g.dst())?, map))
}

/// `f ⊗ g` with ambient matrix `κ_n · (f ⊗ g) · κ_mᵀ`.
pub fn otimes_mor<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> Result<MorPoint<T>> {
    let (m, n) = check_mor_ambients(f, g)?;
    let map = kappa_matrix::<T>(n) * kron(f.map(), g.map()) * kappa_matrix::<T>(m).transpose();
    Ok(MorPoint::from_parts_unchecked(otimes_points(f.src(), g.src())?, otimes_points(f.dst(), g.dst())?, map))
}

/// [`oplus_points`] after zero-padding both arguments to the larger ambient space.
pub fn oplus_points_stabilized<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> GrPoint<T> {
    let n = x.ambient_dim().max(y.ambient_dim());
    oplus_points(&pad_to(x, n), &pad_to(y, n)).expect("padded to a common ambient")
}

pub fn otimes_points_stabilized<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> GrPoint<T> {
    let n = x.ambient_dim().max(y.ambient_dim());
    otimes_points(&pad_to(x, n), &pad_to(y, n)).expect("padded to a common ambient")
}

fn common_pads<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> (MorPoint<T>, MorPoint<T>) {
    let m = f.src().ambient_dim().max(g.src().ambient_dim());
    let n = f.dst().ambient_dim().max(g.dst().ambient_dim());
    (pad_mor_to(f, m, n), pad_mor_to(g, m, n))
}

pub fn oplus_mor_stabilized<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> MorPoint<T> {
    let (f, g) = common_pads(f, g);
    oplus_mor(&f, &g).expect("padded to a common ambient")
}

pub fn otimes_mor_stabilized<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>) -> MorPoint<T> {
    let (f, g) = common_pads(f, g);
    otimes_mor(&f, &g).expect("padded to a common ambient")
}

fn same_chart_ambient<T: Scalar>(a: &GrChart<T>, b: &GrChart<T>) -> Result<usize> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch { left: a.ambient_dim(), right: b.ambient_dim() });
    }
    Ok(a.ambient_dim())
}

/// The chart of `θ_*(X ⊕ Y)` built from charts of the summands; coordinates
/// in it are `diag(A_X, B_Y)`.
pub fn oplus_chart<T: Scalar>(a: &GrChart<T>, b: &GrChart<T>, tol: &Tolerance) -> Result<GrChart<T>> {
    let n = same_chart_ambient(a, b)?;
    let theta = theta_matrix::<T>(n);
    GrChart::with_bases(
        &theta * block_diag(a.basis_v(), b.basis_v()),
        &theta * block_diag(a.basis_vperp(), b.basis_vperp()),
        tol,
    )
}

/// The chart of `κ_*(X ⊗ Y)` with complement basis ordered
/// `[x0 ⊗ y0⊥, x0⊥ ⊗ y0, x0⊥ ⊗ y0⊥]`; see [`otimes_chart_coords`].
pub fn otimes_chart<T: Scalar>(a: &GrChart<T>, b: &GrChart<T>, tol: &Tolerance) -> Result<GrChart<T>> {
    let n = same_chart_ambient(a, b)?;
    let kappa = kappa_matrix::<T>(n);
    let (x0, x1, y0, y1) = (a.basis_v(), a.basis_vperp(), b.basis_v(), b.basis_vperp());
    let vperp = hstack(&hstack(&kron(x0, y1), &kron(x1, y0)), &kron(x1, y1));
    GrChart::with_bases(&kappa * kron(x0, y0), &kappa * vperp, tol)
}

/// Coordinates of `X ⊗ Y` in [`otimes_chart`]: `[id ⊗ B; A ⊗ id; A ⊗ B]`.
pub fn otimes_chart_coords<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let ik = Mat::identity(a.ncols(), a.ncols());
    let il = Mat::identity(b.ncols(), b.ncols());
    vstack(&vstack(&kron(&ik, b), &kron(a, &il)), &kron(a, b))
}

/// Block-diagonal sum `F^n ⊕ F^m → F^{n+m}`.
pub fn vf_oplus<T: Scalar>(a: &VfMor<T>, b: &VfMor<T>) -> VfMor<T> {
    VfMor::new(block_diag(a.mat(), b.mat()))
}

/// Kronecker product; `e_i ⊗ e'_j` sits at row-major position `m·i + j`.
pub fn vf_otimes<T: Scalar>(a: &VfMor<T>, b: &VfMor<T>) -> VfMor<T> {
    VfMor::new(kron(a.mat(), b.mat()))
}

/// `(F^n, F^m) ↦ F^{n+m}` on objects.
pub fn vf_oplus_ob(n: usize, m: usize) -> usize {
    n + m
}

/// `(F^n, F^m) ↦ F^{nm}` on objects.
pub fn vf_otimes_ob(n: usize, m: usize) -> usize {
    n * m
}

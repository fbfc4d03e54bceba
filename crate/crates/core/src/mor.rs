//! The morphism bundle `Mor_{k,l}^{m,n}`, its charts, and the structure maps
//! `s`, `t`, `e`, `∘` of the fat category at finite ambient dimension.
//!
//! Also the matrix category (objects `F^n`, morphisms matrices) and the two
//! inclusions into the fat category.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{chart_coords, chart_embed, GrChart, GrPoint};
use crate::linalg::{
    max_abs, max_abs_diff, pad, random_matrix, smallest_singular_value, Mat, Scalar, Tolerance,
};

/// A linear map `T: X → Y` between subspaces `X ⊂ F^m`, `Y ⊂ F^n`.
///
/// `map` is the `n × m` ambient matrix; it annihilates `X⊥` and lands in `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct MorPoint<T: Scalar> {
    src: GrPoint<T>,
    dst: GrPoint<T>,
    map: Mat<T>,
}

impl<T: Scalar> MorPoint<T> {
    pub fn new(src: GrPoint<T>, dst: GrPoint<T>, map: Mat<T>, tol: &Tolerance) -> Result<Self> {
        if map.shape() != (dst.ambient_dim(), src.ambient_dim()) {
            return Err(Error::ShapeMismatch(format!(
                "map must be {}×{}, got {:?}",
                dst.ambient_dim(),
                src.ambient_dim(),
                map.shape()
            )));
        }
        let scale = tol.eps_eq * max_abs(&map).max(1.0);
        let off_source = max_abs_diff(&(&map * src.projection()), &map);
        let off_target = max_abs_diff(&(dst.projection() * &map), &map);
        if off_source > scale || off_target > scale {
            return Err(Error::InvalidMorphism(format!(
                "map does not factor through source/target (residuals {off_source:e}, {off_target:e})"
            )));
        }
        Ok(MorPoint { src, dst, map })
    }

    /// `y · t · xᴴ` for orthonormal frames `x`, `y` of source and target.
    pub fn from_frames(src: GrPoint<T>, dst: GrPoint<T>, t: &Mat<T>) -> Result<Self> {
        if t.shape() != (dst.sub_dim(), src.sub_dim()) {
            return Err(Error::ShapeMismatch(format!(
                "frame matrix must be {}×{}, got {:?}",
                dst.sub_dim(),
                src.sub_dim(),
                t.shape()
            )));
        }
        let map = dst.frame() * t * src.frame().adjoint();
        Ok(MorPoint { src, dst, map })
    }

    pub fn random<R: Rng + ?Sized>(src: GrPoint<T>, dst: GrPoint<T>, rng: &mut R) -> Self {
        let t = random_matrix(dst.sub_dim(), src.sub_dim(), rng);
        Self::from_frames(src, dst, &t).expect("shapes match by construction")
    }

    pub(crate) fn from_parts_unchecked(src: GrPoint<T>, dst: GrPoint<T>, map: Mat<T>) -> Self {
        MorPoint { src, dst, map }
    }

    pub fn src(&self) -> &GrPoint<T> {
        &self.src
    }

    pub fn dst(&self) -> &GrPoint<T> {
        &self.dst
    }

    pub fn map(&self) -> &Mat<T> {
        &self.map
    }

    /// The `l × k` matrix of the map in the stored orthonormal frames.
    pub fn frame_matrix(&self) -> Mat<T> {
        self.dst.frame().adjoint() * &self.map * self.src.frame()
    }

    /// Max of source, target and map distances; `+∞` on any shape difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.src
            .distance(&other.src)
            .max(self.dst.distance(&other.dst))
            .max(max_abs_diff(&self.map, &other.map))
    }
}

/// Chart coordinates `(A_X, B_Y, [T])` of a morphism.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartTriple<T: Scalar> {
    pub a_x: Mat<T>,
    pub b_y: Mat<T>,
    pub t_box: Mat<T>,
}

impl<T: Scalar> ChartTriple<T> {
    pub fn distance(&self, other: &Self) -> f64 {
        max_abs_diff(&self.a_x, &other.a_x)
            .max(max_abs_diff(&self.b_y, &other.b_y))
            .max(max_abs_diff(&self.t_box, &other.t_box))
    }
}

pub fn mor_source<T: Scalar>(f: &MorPoint<T>) -> &GrPoint<T> {
    &f.src
}

pub fn mor_target<T: Scalar>(f: &MorPoint<T>) -> &GrPoint<T> {
    &f.dst
}

/// `id: V → V`, whose ambient matrix is the projection onto `V`.
pub fn mor_identity<T: Scalar>(v: &GrPoint<T>) -> MorPoint<T> {
    MorPoint { src: v.clone(), dst: v.clone(), map: v.projection() }
}

/// `g ∘ f`, defined when `f.dst` and `g.src` agree within `eps_eq`.
pub fn mor_compose<T: Scalar>(f: &MorPoint<T>, g: &MorPoint<T>, tol: &Tolerance) -> Result<MorPoint<T>> {
    let gap = f.dst.distance(&g.src);
    if !(gap <= tol.eps_eq) {
        return Err(Error::NotComposable(format!(
            "target of the first factor differs from source of the second by {gap:e}"
        )));
    }
    Ok(MorPoint { src: f.src.clone(), dst: g.dst.clone(), map: &g.map * &f.map })
}

/// Reads a morphism in the chart pair centered at `(X_0, Y_0)`.
///
/// `[T]` is taken against the bases `x = x0 + x0⊥·A_X` and `y = y0 + y0⊥·B_Y`
/// themselves, not their orthonormalizations. Since `y0ᴴ y = I`, the solve
/// `T x = y [T]` reduces to `[T] = y0ᴴ T x`.
pub fn mor_chart<T: Scalar>(
    f: &MorPoint<T>,
    base_src: &GrChart<T>,
    base_dst: &GrChart<T>,
    tol: &Tolerance,
) -> Result<ChartTriple<T>> {
    let a_x = chart_coords(base_src, &f.src, tol)?;
    let b_y = chart_coords(base_dst, &f.dst, tol)?;
    let x = base_src.basis_at(&a_x)?;
    let t_box = base_dst.basis_v().adjoint() * &f.map * x;
    Ok(ChartTriple { a_x, b_y, t_box })
}

/// Inverse of [`mor_chart`]: the map `y [T] x⁺` with `x⁺ = (xᴴx)⁻¹ xᴴ`.
pub fn mor_unchart<T: Scalar>(
    triple: &ChartTriple<T>,
    base_src: &GrChart<T>,
    base_dst: &GrChart<T>,
    tol: &Tolerance,
) -> Result<MorPoint<T>> {
    if triple.t_box.shape() != (base_dst.sub_dim(), base_src.sub_dim()) {
        return Err(Error::ShapeMismatch(format!(
            "[T] must be {}×{}, got {:?}",
            base_dst.sub_dim(),
            base_src.sub_dim(),
            triple.t_box.shape()
        )));
    }
    let x = base_src.basis_at(&triple.a_x)?;
    let y = base_dst.basis_at(&triple.b_y)?;
    let src = chart_embed(base_src, &triple.a_x, tol)?;
    let dst = chart_embed(base_dst, &triple.b_y, tol)?;
    let map = if x.ncols() == 0 || y.ncols() == 0 {
        Mat::zeros(y.nrows(), x.nrows())
    } else {
        let gram_inv = (x.adjoint() * &x)
            .try_inverse()
            .ok_or_else(|| Error::ShapeMismatch("chart basis is singular".into()))?;
        &y * &triple.t_box * gram_inv * x.adjoint()
    };
    Ok(MorPoint { src, dst, map })
}

/// Factors `(C, D)` with `[T]_1 = C·[T]_0·D` when re-charting `f` from the
/// chart pair `(src0, dst0)` to `(src1, dst1)`.
///
/// `D` expresses the chart-1 basis of the source in the chart-0 basis, and `C`
/// is the inverse of the same change of basis on the target.
pub fn recharting_factors<T: Scalar>(
    f: &MorPoint<T>,
    src0: &GrChart<T>,
    dst0: &GrChart<T>,
    src1: &GrChart<T>,
    dst1: &GrChart<T>,
    tol: &Tolerance,
) -> Result<(Mat<T>, Mat<T>)> {
    let x1 = src1.basis_at(&chart_coords(src1, &f.src, tol)?)?;
    let y1 = dst1.basis_at(&chart_coords(dst1, &f.dst, tol)?)?;
    // Domain membership for the chart-0 pair.
    chart_coords(src0, &f.src, tol)?;
    chart_coords(dst0, &f.dst, tol)?;
    let d = src0.basis_v().adjoint() * x1;
    let e = dst0.basis_v().adjoint() * y1;
    let c = if e.nrows() == 0 {
        e
    } else {
        e.try_inverse().ok_or(Error::OutsideChartDomain { smallest: 0.0 })?
    };
    Ok((c, d))
}

/// True when `k = l` and `[T]` is invertible; the verdict does not depend on the chart.
pub fn is_iso<T: Scalar>(f: &MorPoint<T>, tol: &Tolerance) -> bool {
    f.src.sub_dim() == f.dst.sub_dim() && smallest_singular_value(&f.frame_matrix()) > tol.eps_rank
}

/// Zero-pads the ambient spaces of source and target.
pub fn mor_stabilize<T: Scalar>(f: &MorPoint<T>, pad_src: usize, pad_dst: usize) -> MorPoint<T> {
    MorPoint {
        src: f.src.padded(pad_src),
        dst: f.dst.padded(pad_dst),
        map: pad(&f.map, pad_dst, pad_src),
    }
}

/// A morphism `F^n → F^m` of the matrix category, stored as an `m × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct VfMor<T: Scalar> {
    mat: Mat<T>,
}

impl<T: Scalar> VfMor<T> {
    pub fn new(mat: Mat<T>) -> Self {
        VfMor { mat }
    }

    pub fn mat(&self) -> &Mat<T> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<T> {
        self.mat
    }

    /// Dimension of the source object (`n`).
    pub fn source_dim(&self) -> usize {
        self.mat.ncols()
    }

    /// Dimension of the target object (`m`).
    pub fn target_dim(&self) -> usize {
        self.mat.nrows()
    }
}

pub fn vf_identity<T: Scalar>(n: usize) -> VfMor<T> {
    VfMor { mat: Mat::identity(n, n) }
}

/// `g ∘ f` in the matrix category.
pub fn vf_compose<T: Scalar>(f: &VfMor<T>, g: &VfMor<T>) -> Result<VfMor<T>> {
    if f.target_dim() != g.source_dim() {
        return Err(Error::NotComposable(format!(
            "F^{} → F^{} then F^{} → F^{}",
            f.source_dim(),
            f.target_dim(),
            g.source_dim(),
            g.target_dim()
        )));
    }
    Ok(VfMor { mat: &g.mat * &f.mat })
}

/// Realizes `f: F^n → F^m` between coordinate subspaces `span(e_1..e_n) ⊂ F^ambient_src`
/// and `span(e_1..e_m) ⊂ F^ambient_dst`, via `(x_1..x_n) ↦ (x_1..x_n, 0..0)`.
pub fn embed_vf<T: Scalar>(f: &VfMor<T>, ambient_src: usize, ambient_dst: usize) -> Result<MorPoint<T>> {
    if ambient_src < f.source_dim() || ambient_dst < f.target_dim() {
        return Err(Error::ShapeMismatch(format!(
            "cannot embed a {}×{} matrix into ambient dimensions ({ambient_src}, {ambient_dst})",
            f.target_dim(),
            f.source_dim()
        )));
    }
    Ok(MorPoint {
        src: GrPoint::coordinate(ambient_src, f.source_dim()),
        dst: GrPoint::coordinate(ambient_dst, f.target_dim()),
        map: pad(&f.mat, ambient_dst - f.target_dim(), ambient_src - f.source_dim()),
    })
}

/// The inclusion of the Grassmannian groupoid: every point goes to its identity.
pub fn embed_g<T: Scalar>(v: &GrPoint<T>) -> MorPoint<T> {
    mor_identity(v)
}

//! Explicit isomorphisms realizing unitality, commutativity and
//! distributivity, and the comparison maps between `V_F` and `V_F^f`.

use super::{kappa_perm, oplus_points, otimes_points, pad_to, theta_matrix, theta_perm};
use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::linalg::{pad, permutation_matrix, Mat, Scalar};
use crate::mor::{MorPoint, VfMor};

/// Which side the unit or the sum sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `X' → X''`: from the stabilized `X ⊂ F^{2n}` to `θ_*(0 ⊕ X)` (left) or
/// `θ_*(X ⊕ 0)` (right), induced by `id_X`.
pub fn witness_add_unit<T: Scalar>(x: &GrPoint<T>, side: Side) -> MorPoint<T> {
    let n = x.ambient_dim();
    let zero = GrPoint::zero(n);
    let (dst, block) = match side {
        Side::Left => {
            let mut b = Mat::zeros(2 * n, 2 * n);
            b.view_mut((n, 0), (n, n)).copy_from(&x.projection());
            (oplus_points(&zero, x), b)
        }
        Side::Right => (oplus_points(x, &zero), pad(&x.projection(), n, n)),
    };
    let dst = dst.expect("equal ambient dimensions");
    MorPoint::from_parts_unchecked(x.padded(n), dst, theta_matrix::<T>(n) * block)
}

/// `θ_*(X ⊕ Y) → θ_*(Y ⊕ X)` induced by the flip `[0, id; id, 0]`.
pub fn witness_comm<T: Scalar>(x: &GrPoint<T>, y: &GrPoint<T>) -> Result<MorPoint<T>> {
    let src = oplus_points(x, y)?;
    let dst = oplus_points(y, x)?;
    let n = x.ambient_dim();
    let mut flip = Mat::zeros(2 * n, 2 * n);
    flip.view_mut((0, n), (n, n)).copy_from(&y.projection());
    flip.view_mut((n, 0), (n, n)).copy_from(&x.projection());
    let theta = theta_matrix::<T>(n);
    let map = &theta * flip * theta.transpose();
    Ok(MorPoint::from_parts_unchecked(src, dst, map))
}

/// `F^n ⊕ F^m → F^m ⊕ F^n`, the block matrix `[0, id_m; id_n, 0]`.
pub fn vf_swap<T: Scalar>(n: usize, m: usize) -> VfMor<T> {
    let perm: Vec<usize> = (0..n + m).map(|i| if i < n { m + i } else { i - n }).collect();
    VfMor::new(permutation_matrix(&perm))
}

/// The permutation `x ⊗ (y ⊕ z) → (x ⊗ y) ⊕ (x ⊗ z)` (left) or
/// `(x ⊕ y) ⊗ z → (x ⊗ z) ⊕ (y ⊗ z)` (right) on `F`-dimensions `x, y, z`.
///
/// The right variant is the identity under row-major Kronecker ordering.
pub fn witness_distrib<T: Scalar>(x: usize, y: usize, z: usize, side: Side) -> VfMor<T> {
    let perm = match side {
        Side::Left => {
            let mut perm = Vec::with_capacity(x * (y + z));
            for i in 0..x {
                perm.extend((0..y).map(|j| i * y + j));
                perm.extend((0..z).map(|l| x * y + i * z + l));
            }
            perm
        }
        Side::Right => (0..(x + y) * z).collect(),
    };
    VfMor::new(permutation_matrix(&perm))
}

/// The `V_F^f` distributivity isomorphism for `X, Y, Z ⊂ F^N`.
///
/// Left: `κ_*(X ⊗ θ_*(Y ⊕ Z)) ⊂ F^{4N²}` (with `X` padded to `F^{2N}`) onto
/// `θ_*(κ_*(X ⊗ Y) ⊕ κ_*(X ⊗ Z)) ⊂ F^{2N²}`. Right is the mirror image.
pub fn witness_distrib_fat<T: Scalar>(
    x: &GrPoint<T>,
    y: &GrPoint<T>,
    z: &GrPoint<T>,
    side: Side,
) -> Result<MorPoint<T>> {
    let n = x.ambient_dim();
    for p in [y, z] {
        if p.ambient_dim() != n {
            return Err(Error::AmbientMismatch { left: n, right: p.ambient_dim() });
        }
    }
    let (src, dst) = distrib_objects(x, y, z, side)?;
    let big = kappa_perm(2 * n);
    let small = kappa_perm(n);
    let mut l = Mat::<T>::zeros(2 * n * n, 4 * n * n);
    for a in 0..n {
        for w in 0..2 * n {
            let (summand, b) = (w % 2, w / 2);
            let from = match side {
                Side::Left => big[a * 2 * n + w],
                Side::Right => big[w * 2 * n + a],
            };
            // Left: e_a ⊗ θ(e_b in summand); right: θ(e_b in summand) ⊗ e_a.
            let pair = match side {
                Side::Left => a * n + b,
                Side::Right => b * n + a,
            };
            l[(2 * small[pair] + summand, from)] = T::one();
        }
    }
    let map = l * src.projection();
    Ok(MorPoint::from_parts_unchecked(src, dst, map))
}

/// Source and target objects of [`witness_distrib_fat`].
pub fn distrib_objects<T: Scalar>(
    x: &GrPoint<T>,
    y: &GrPoint<T>,
    z: &GrPoint<T>,
    side: Side,
) -> Result<(GrPoint<T>, GrPoint<T>)> {
    let n = x.ambient_dim();
    match side {
        Side::Left => Ok((
            otimes_points(&pad_to(x, 2 * n), &oplus_points(y, z)?)?,
            oplus_points(&otimes_points(x, y)?, &otimes_points(x, z)?)?,
        )),
        Side::Right => Ok((
            otimes_points(&oplus_points(x, y)?, &pad_to(z, 2 * n))?,
            oplus_points(&otimes_points(x, z)?, &otimes_points(y, z)?)?,
        )),
    }
}

fn check_truncation(k: usize, l: usize, n: usize) -> Result<()> {
    if k > n || l > n {
        return Err(Error::ShapeMismatch(format!("F^{k} and F^{l} do not fit in a truncation at F^{n}")));
    }
    Ok(())
}

/// `θ_*(F^k ⊕ F^l) → F^{k+l}` inside `F^{2N}`: interleaved to concatenated bases.
pub fn comparison_oplus<T: Scalar>(k: usize, l: usize, n: usize) -> Result<MorPoint<T>> {
    check_truncation(k, l, n)?;
    let theta = theta_perm(n);
    let mut map = Mat::zeros(2 * n, 2 * n);
    for i in 0..k {
        map[(i, theta[i])] = T::one();
    }
    for j in 0..l {
        map[(k + j, theta[n + j])] = T::one();
    }
    let src = oplus_points(&GrPoint::coordinate(n, k), &GrPoint::coordinate(n, l))?;
    Ok(MorPoint::from_parts_unchecked(src, GrPoint::coordinate(2 * n, k + l), map))
}

/// `κ_*(F^k ⊗ F^l) → F^{kl}` inside `F^{N²}`: `κ(e_i ⊗ e_j) ↦ e_{i·l + j}`.
pub fn comparison_otimes<T: Scalar>(k: usize, l: usize, n: usize) -> Result<MorPoint<T>> {
    check_truncation(k, l, n)?;
    let kappa = kappa_perm(n);
    let mut map = Mat::zeros(n * n, n * n);
    for i in 0..k {
        for j in 0..l {
            map[(i * l + j, kappa[i * n + j])] = T::one();
        }
    }
    let src = otimes_points(&GrPoint::coordinate(n, k), &GrPoint::coordinate(n, l))?;
    Ok(MorPoint::from_parts_unchecked(src, GrPoint::coordinate(n * n, k * l), map))
}

/// The zero map from the zero subspace of `F^m` to that of `F^n`.
pub fn zero_mor<T: Scalar>(m: usize, n: usize) -> MorPoint<T> {
    MorPoint::from_parts_unchecked(GrPoint::zero(m), GrPoint::zero(n), Mat::zeros(n, m))
}

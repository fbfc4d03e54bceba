//! Shipped bases and cocycles, coboundary twisting, and the semiring
//! operations applied samplewise.

use std::f64::consts::PI;

use rand::Rng;

use super::{BaseComplex, BaseTag, CechCocycle, Overlap, Patch};
use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::linalg::{random_frame, random_invertible, Complex, Mat, Scalar};
use crate::semiring::{oplus_mor_stabilized, oplus_points_stabilized, otimes_mor_stabilized, otimes_points_stabilized};

fn param(j: usize, n: usize) -> f64 {
    j as f64 / n as f64
}

/// Grid indices `j` of the circle grid of size `n` lying in the arc that
/// starts at `lo` and runs counterclockwise to `hi` (both in tenths of a turn).
fn arc(n: usize, lo: usize, hi: usize) -> Vec<usize> {
    let inside = |j: usize| {
        let t10 = 10 * j;
        if lo <= hi {
            t10 >= lo * n && t10 <= hi * n
        } else {
            t10 >= lo * n || t10 <= hi * n
        }
    };
    let start = (lo * n).div_ceil(10) % n;
    (0..n).map(|i| (start + i) % n).filter(|&j| inside(j)).collect()
}

fn grid(n: usize, idx: &[usize]) -> Vec<Vec<f64>> {
    idx.iter().map(|&j| vec![param(j, n)]).collect()
}

/// The circle `[0, 1)/~` sampled at `t = j/n`, covered by the arcs
/// `U0 = [0.9, 0.6]` and `U1 = [0.4, 0.1]`. The overlap components are
/// `A = [0.4, 0.6]` and `B = [0.9, 0.1]`, in that order; overlaps `0, 1` run
/// `U0 → U1` and `2, 3` run back.
pub fn circle_base(n: usize) -> Result<BaseComplex> {
    if n < 20 {
        return Err(Error::Config(format!("circle grid needs at least 20 points, got {n}")));
    }
    let u0 = grid(n, &arc(n, 9, 6));
    let u1 = grid(n, &arc(n, 4, 1));
    let a = grid(n, &arc(n, 4, 6));
    let b = grid(n, &arc(n, 9, 1));
    Ok(BaseComplex {
        tag: BaseTag::IntervalCoverCircle,
        patches: vec![Patch { id: "U0".into(), samples: u0 }, Patch { id: "U1".into(), samples: u1 }],
        overlaps: vec![
            Overlap { from: 0, to: 1, samples: a.clone() },
            Overlap { from: 0, to: 1, samples: b.clone() },
            Overlap { from: 1, to: 0, samples: a },
            Overlap { from: 1, to: 0, samples: b },
        ],
    })
}

/// Continuous lift of a circle parameter over the arc of `patch`.
pub fn circle_lift(patch: usize, t: f64) -> f64 {
    match patch {
        0 if t >= 0.75 => t - 1.0,
        1 if t <= 0.25 => t + 1.0,
        _ => t,
    }
}

/// The sphere in polar coordinates `[θ, φ]`, covered by the closed northern
/// disk `N` and southern disk `S` meeting along the equator, sampled at
/// `n_eq` equally spaced longitudes. Overlap `0` runs `N → S`, `1` back.
pub fn sphere_base(n_eq: usize) -> Result<BaseComplex> {
    if n_eq < 4 {
        return Err(Error::Config(format!("equator needs at least 4 samples, got {n_eq}")));
    }
    let ring = |theta: f64, n: usize| -> Vec<Vec<f64>> { (0..n).map(|j| vec![theta, 2.0 * PI * param(j, n)]).collect() };
    let equator = ring(PI / 2.0, n_eq);
    let mut north = vec![vec![0.0, 0.0]];
    north.extend(ring(PI / 4.0, 8));
    north.extend(equator.clone());
    let mut south = vec![vec![PI, 0.0]];
    south.extend(ring(3.0 * PI / 4.0, 8));
    south.extend(equator.clone());
    Ok(BaseComplex {
        tag: BaseTag::TwoDiskSphere,
        patches: vec![Patch { id: "N".into(), samples: north }, Patch { id: "S".into(), samples: south }],
        overlaps: vec![
            Overlap { from: 0, to: 1, samples: equator.clone() },
            Overlap { from: 1, to: 0, samples: equator },
        ],
    })
}

fn constant_locals<T: Scalar>(base: &BaseComplex, k: usize) -> Vec<Vec<GrPoint<T>>> {
    base.patches.iter().map(|p| vec![GrPoint::coordinate(k, k); p.samples.len()]).collect()
}

fn inverse<T: Scalar>(g: &Mat<T>) -> Result<Mat<T>> {
    g.clone()
        .try_inverse()
        .ok_or(Error::RankDeficient { smallest: 0.0, threshold: 0.0 })
}

/// Trivial subspace `F^k ⊂ F^k` on both arcs with constant transitions
/// `g_a` on component `A` and `g_b` on `B`.
pub fn circle_cocycle<T: Scalar>(n: usize, g_a: &Mat<T>, g_b: &Mat<T>) -> Result<CechCocycle<T>> {
    let base = circle_base(n)?;
    let k = g_a.nrows();
    if g_a.shape() != (k, k) || g_b.shape() != (k, k) {
        return Err(Error::ShapeMismatch(format!("transitions {:?} and {:?}", g_a.shape(), g_b.shape())));
    }
    let gs = [g_a.clone(), g_b.clone(), inverse(g_a)?, inverse(g_b)?];
    let maps = base.overlaps.iter().zip(&gs).map(|(ov, g)| vec![g.clone(); ov.samples.len()]).collect();
    CechCocycle::new(base.clone(), k, constant_locals(&base, k), maps)
}

/// Rank-one real cocycle with sign `a` on component `A` and `b` on `B`.
pub fn circle_sign_cocycle(n: usize, a: f64, b: f64) -> Result<CechCocycle<f64>> {
    circle_cocycle(n, &Mat::from_element(1, 1, a), &Mat::from_element(1, 1, b))
}

pub fn trivial_circle_cocycle<T: Scalar>(n: usize, k: usize) -> Result<CechCocycle<T>> {
    circle_cocycle(n, &Mat::identity(k, k), &Mat::identity(k, k))
}

/// The line through `(cos πt, sin πt)` in `R²`, with each arc trivialized by
/// that vector along its continuous lift. Every transition is the identity of
/// the line; the frames disagree by `-1` on component `B`.
pub fn moebius_cocycle(n: usize) -> Result<CechCocycle<f64>> {
    let base = circle_base(n)?;
    let frame = |patch: usize, t: f64| {
        let s = PI * circle_lift(patch, t);
        GrPoint::from_parts_unchecked(Mat::from_column_slice(2, 1, &[s.cos(), s.sin()]))
    };
    let locals: Vec<Vec<GrPoint<f64>>> = base
        .patches
        .iter()
        .enumerate()
        .map(|(a, p)| p.samples.iter().map(|x| frame(a, x[0])).collect())
        .collect();
    let maps = base
        .overlaps
        .iter()
        .map(|ov| ov.samples.iter().map(|x| frame(0, x[0]).projection()).collect())
        .collect();
    CechCocycle::new(base, 1, locals, maps)
}

fn phase(x: f64) -> Complex<f64> {
    Complex::from_polar(1.0, x)
}

/// Rank-one complex cocycle over the sphere on the trivial line `C ⊂ C`,
/// with transition `z^d` (`z = e^{iφ}`) from `N` to `S`.
pub fn clutching_cocycle(n_eq: usize, d: i64) -> Result<CechCocycle<Complex<f64>>> {
    let base = sphere_base(n_eq)?;
    let maps = base
        .overlaps
        .iter()
        .map(|ov| {
            let sign = if ov.from == 0 { 1.0 } else { -1.0 };
            ov.samples.iter().map(|x| Mat::from_element(1, 1, phase(sign * d as f64 * x[1]))).collect()
        })
        .collect();
    CechCocycle::new(base.clone(), 1, constant_locals(&base, 1), maps)
}

/// The tautological line `span(cos θ/2, e^{iφ} sin θ/2) ⊂ C²`, trivialized
/// by the frame regular at each pole. Its transition `N → S` reads `z`.
pub fn tautological_s2_cocycle(n_eq: usize) -> Result<CechCocycle<Complex<f64>>> {
    let base = sphere_base(n_eq)?;
    let frame = |patch: usize, x: &[f64]| {
        let (c, s) = ((x[0] / 2.0).cos(), (x[0] / 2.0).sin());
        let v = if patch == 0 {
            [Complex::new(c, 0.0), phase(x[1]) * s]
        } else {
            [phase(-x[1]) * c, Complex::new(s, 0.0)]
        };
        GrPoint::from_parts_unchecked(Mat::from_column_slice(2, 1, &v))
    };
    let locals: Vec<Vec<GrPoint<Complex<f64>>>> = base
        .patches
        .iter()
        .enumerate()
        .map(|(a, p)| p.samples.iter().map(|x| frame(a, x)).collect())
        .collect();
    let maps = base
        .overlaps
        .iter()
        .map(|ov| ov.samples.iter().map(|x| frame(0, x).projection()).collect())
        .collect();
    CechCocycle::new(base, 1, locals, maps)
}

/// A single patch with `n` samples and the constant local `F^k ⊂ F^m`.
pub fn single_patch_cocycle<T: Scalar>(n: usize, m: usize, k: usize) -> Result<CechCocycle<T>> {
    if k > m {
        return Err(Error::ShapeMismatch(format!("rank {k} exceeds ambient dimension {m}")));
    }
    let base = BaseComplex {
        tag: BaseTag::Abstract,
        patches: vec![Patch { id: "U".into(), samples: (0..n).map(|j| vec![j as f64]).collect() }],
        overlaps: vec![],
    };
    let locals = vec![vec![GrPoint::coordinate(m, k); n]];
    CechCocycle::new(base, k, locals, vec![])
}

/// Three patches sharing `n` samples, with random local subspaces of `F^m`
/// and transitions `F_βα = x_β h_β h_α⁻¹ x_αᴴ` from random per-patch `h`.
/// Every sample is a triple-overlap point.
pub fn abstract_three_patch<T: Scalar, R: Rng + ?Sized>(n: usize, m: usize, k: usize, rng: &mut R) -> Result<CechCocycle<T>> {
    if k == 0 || k > m || n == 0 {
        return Err(Error::Config(format!("need 0 < k <= m and n > 0, got k={k}, m={m}, n={n}")));
    }
    let samples: Vec<Vec<f64>> = (0..n).map(|j| vec![param(j, n)]).collect();
    let patches: Vec<Patch> = (0..3).map(|a| Patch { id: format!("U{a}"), samples: samples.clone() }).collect();
    let mut overlaps = Vec::new();
    for from in 0..3 {
        for to in 0..3 {
            if from != to {
                overlaps.push(Overlap { from, to, samples: samples.clone() });
            }
        }
    }
    let base = BaseComplex { tag: BaseTag::Abstract, patches, overlaps };
    let locals: Vec<Vec<GrPoint<T>>> = (0..3)
        .map(|_| (0..n).map(|_| GrPoint::from_parts_unchecked(random_frame(m, k, rng))).collect())
        .collect();
    let h: Vec<Vec<Mat<T>>> = (0..3).map(|_| (0..n).map(|_| random_invertible(k, rng)).collect()).collect();
    let mut maps = Vec::new();
    for ov in &base.overlaps {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let g = &h[ov.to][s] * inverse(&h[ov.from][s])?;
            row.push(locals[ov.to][s].frame() * g * locals[ov.from][s].frame().adjoint());
        }
        maps.push(row);
    }
    CechCocycle::new(base, k, locals, maps)
}

/// Twists `c` by per-patch automorphisms given in the local trivializations:
/// `F'_βα = (x_β H_β x_βᴴ) F_βα (x_α H_α⁻¹ x_αᴴ)`.
pub fn apply_coboundary<T: Scalar>(c: &CechCocycle<T>, h: &[Vec<Mat<T>>]) -> Result<CechCocycle<T>> {
    let base = c.base();
    if h.len() != base.patches.len() || h.iter().zip(&base.patches).any(|(r, p)| r.len() != p.samples.len()) {
        return Err(Error::InconsistentSamples("coboundary table does not match the patches".into()));
    }
    let k = c.rank();
    let automorphism = |patch: usize, sample: usize, invert: bool| -> Result<Mat<T>> {
        let m = &h[patch][sample];
        if m.shape() != (k, k) {
            return Err(Error::ShapeMismatch(format!("coboundary entry {:?}, expected ({k}, {k})", m.shape())));
        }
        let m = if invert { inverse(m)? } else { m.clone() };
        let x = c.locals(patch)[sample].frame();
        Ok(x * m * x.adjoint())
    };
    let mut maps = Vec::with_capacity(base.overlaps.len());
    for (o, ov) in base.overlaps.iter().enumerate() {
        let mut row = Vec::with_capacity(ov.samples.len());
        for (s, f) in c.transitions(o).iter().enumerate() {
            let (a, b) = c.index[o][s];
            row.push(automorphism(ov.to, b, false)? * f.map() * automorphism(ov.from, a, true)?);
        }
        maps.push(row);
    }
    CechCocycle::new(base.clone(), k, c.locals.clone(), maps)
}

/// Smooth real features of a sample point, continuous over the whole base.
fn features(tag: BaseTag, p: &[f64]) -> [f64; 3] {
    match tag {
        BaseTag::IntervalCoverCircle => [(2.0 * PI * p[0]).cos(), (2.0 * PI * p[0]).sin(), 0.0],
        BaseTag::TwoDiskSphere => [p[0].sin() * p[1].cos(), p[0].sin() * p[1].sin(), p[0].cos()],
        BaseTag::Abstract => [0, 1, 2].map(|i| p.get(i).copied().unwrap_or(0.0)),
    }
}

/// A random coboundary: on each patch, a constant invertible matrix times
/// `exp(s(x))` for a small smooth scalar function `s` of the sample.
pub fn random_coboundary_table<T: Scalar, R: Rng + ?Sized>(c: &CechCocycle<T>, rng: &mut R) -> Vec<Vec<Mat<T>>> {
    let base = c.base();
    let mut out = Vec::with_capacity(base.patches.len());
    for patch in &base.patches {
        let cst: Mat<T> = random_invertible(c.rank(), rng);
        let mut coef = || T::from_parts(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        let s0 = coef();
        let s: [T; 3] = [coef(), coef(), coef()];
        let row = patch
            .samples
            .iter()
            .map(|p| {
                let f = features(base.tag, p);
                let e = (0..3).fold(s0, |acc, i| acc + s[i] * T::from_real(f[i])).exp();
                cst.map(|x| x * e)
            })
            .collect();
        out.push(row);
    }
    out
}

pub fn random_coboundary<T: Scalar, R: Rng + ?Sized>(c: &CechCocycle<T>, rng: &mut R) -> Result<CechCocycle<T>> {
    let h = random_coboundary_table(c, rng);
    apply_coboundary(c, &h)
}

fn samplewise<T: Scalar>(
    a: &CechCocycle<T>,
    b: &CechCocycle<T>,
    rank: usize,
    point: impl Fn(&GrPoint<T>, &GrPoint<T>) -> GrPoint<T>,
    map: impl Fn(&crate::mor::MorPoint<T>, &crate::mor::MorPoint<T>) -> crate::mor::MorPoint<T>,
) -> Result<CechCocycle<T>> {
    if a.base() != b.base() {
        return Err(Error::InconsistentSamples("cocycles live over different sampled bases".into()));
    }
    let base = a.base();
    let locals = (0..base.patches.len())
        .map(|p| a.locals(p).iter().zip(b.locals(p)).map(|(x, y)| point(x, y)).collect())
        .collect();
    let maps = (0..base.overlaps.len())
        .map(|o| a.transitions(o).iter().zip(b.transitions(o)).map(|(f, g)| map(f, g).map().clone()).collect())
        .collect();
    CechCocycle::new(base.clone(), rank, locals, maps)
}

/// Samplewise `⊕` of two cocycles over the same base.
pub fn oplus_cocycle<T: Scalar>(a: &CechCocycle<T>, b: &CechCocycle<T>) -> Result<CechCocycle<T>> {
    samplewise(a, b, a.rank() + b.rank(), oplus_points_stabilized, oplus_mor_stabilized)
}

/// Samplewise `⊗` of two cocycles over the same base.
pub fn otimes_cocycle<T: Scalar>(a: &CechCocycle<T>, b: &CechCocycle<T>) -> Result<CechCocycle<T>> {
    samplewise(a, b, a.rank() * b.rank(), otimes_points_stabilized, otimes_mor_stabilized)
}

/// Copy of `c` with one transition sample multiplied by `factor`.
pub fn scale_transition<T: Scalar>(c: &CechCocycle<T>, overlap: usize, sample: usize, factor: f64) -> Result<CechCocycle<T>> {
    c.map_transitions(|o, s, m| if (o, s) == (overlap, sample) { m.map(|x| x * T::from_real(factor)) } else { m.clone() })
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{BaseTag, CechCocycle};
use crate::error::{Error, Result};
use crate::grassmann::GrChart;
use crate::linalg::{Complex, Scalar, Tolerance};
use crate::mor::{mor_chart, MorPoint};

/// Minimum number of equator samples for the clutching degree.
pub const MIN_EQUATOR_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationClass {
    Trivial,
    Moebius,
}

impl OrientationClass {
    pub fn sign(self) -> i8 {
        match self {
            OrientationClass::Trivial => 1,
            OrientationClass::Moebius => -1,
        }
    }
}

fn forward_components<T: Scalar>(c: &CechCocycle<T>) -> Result<Vec<usize>> {
    let base = c.base();
    if base.tag != BaseTag::IntervalCoverCircle || base.patches.len() != 2 {
        return Err(Error::NotCircle(format!("{:?} cover with {} patches", base.tag, base.patches.len())));
    }
    let comps: Vec<usize> = (0..base.overlaps.len()).filter(|&o| base.overlaps[o].from == 0).collect();
    if comps.len() != 2 {
        return Err(Error::NotCircle(format!("{} overlap components, expected 2", comps.len())));
    }
    Ok(comps)
}

/// Product over the two overlap components of the sign of `det g`, for a real
/// cocycle of any rank over the circle.
pub fn s1_orientation_character(c: &CechCocycle<f64>) -> Result<i8> {
    let mut sign = 1i8;
    for o in forward_components(c)? {
        let mut comp_sign = 0i8;
        for s in 0..c.transitions(o).len() {
            let det = c.transition_matrix(o, s).determinant();
            let here = if det > 0.0 {
                1
            } else if det < 0.0 {
                -1
            } else {
                return Err(Error::CocycleViolation(format!(
                    "singular transition on {} at sample {s}",
                    c.base().overlap_label(o)
                )));
            };
            if comp_sign != 0 && here != comp_sign {
                return Err(Error::Discontinuity(format!("{} at sample {s}", c.base().overlap_label(o))));
            }
            comp_sign = here;
        }
        sign *= comp_sign;
    }
    Ok(sign)
}

/// Orientation class of a real line bundle over the two-arc circle.
pub fn s1_orientation_class(c: &CechCocycle<f64>) -> Result<OrientationClass> {
    if c.rank() != 1 {
        return Err(Error::NotRankOne(c.rank()));
    }
    Ok(match s1_orientation_character(c)? {
        1 => OrientationClass::Trivial,
        _ => OrientationClass::Moebius,
    })
}

fn wrap_phase(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI { PI } else { y }
}

/// Winding number of `det g` around the equator of a two-disk sphere, with `g`
/// the transition from the first disk to the second.
pub fn s2_clutching_degree(c: &CechCocycle<Complex<f64>>) -> Result<i64> {
    let base = c.base();
    if base.tag != BaseTag::TwoDiskSphere || base.patches.len() != 2 {
        return Err(Error::NotSphere(format!("{:?} cover with {} patches", base.tag, base.patches.len())));
    }
    if c.rank() != 1 {
        return Err(Error::NotRankOne(c.rank()));
    }
    let forward: Vec<usize> = (0..base.overlaps.len()).filter(|&o| base.overlaps[o].from == 0).collect();
    let [o] = forward[..] else {
        return Err(Error::NotSphere(format!("{} equatorial components, expected 1", forward.len())));
    };
    let n = c.transitions(o).len();
    if n < MIN_EQUATOR_SAMPLES {
        return Err(Error::UndersampledLoop(format!("{n} equator samples, need at least {MIN_EQUATOR_SAMPLES}")));
    }
    let dets: Vec<Complex<f64>> = (0..n).map(|s| c.transition_matrix(o, s).determinant()).collect();
    let mut total = 0.0;
    for i in 0..n {
        let (a, b) = (dets[i], dets[(i + 1) % n]);
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::CocycleViolation(format!("vanishing equatorial transition near sample {i}")));
        }
        let step = wrap_phase(b.arg() - a.arg());
        if step.abs() >= PI / 2.0 {
            return Err(Error::UndersampledLoop(format!("phase step {step:.3} between samples {i} and {}", (i + 1) % n)));
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Distances between consecutive section values, each read in the chart
/// triple centered at the earlier sample.
pub(crate) fn section_steps<T: Scalar>(t: &[MorPoint<T>], tol: &Tolerance) -> Result<Vec<f64>> {
    t.windows(2)
        .map(|w| {
            let cx = GrChart::centered_at(w[0].src(), tol)?;
            let cy = GrChart::centered_at(w[0].dst(), tol)?;
            let here = mor_chart(&w[0], &cx, &cy, tol)?;
            let next = mor_chart(&w[1], &cx, &cy, tol)?;
            Ok(here.distance(&next))
        })
        .collect()
}

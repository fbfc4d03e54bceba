//! Čech cocycles of Grassmannian bundles over sampled covers, gluing, and two
//! complete rank-one invariants: the orientation class over the circle and the
//! clutching degree over the sphere.
//!
//! A cocycle stores, for every patch `α` and sample point `x ∈ U_α`, a local
//! subspace `X_α(x)` whose stored orthonormal frame is the trivialization over
//! `U_α`, and for every ordered overlap component `α → β` and sample `x`, an
//! isomorphism `F_βα(x): X_α(x) → X_β(x)`.

mod builders;
mod invariants;
mod schema;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::internal_cat::{Report, Tally};
use crate::linalg::{max_abs, max_abs_diff, Mat, Scalar, Tolerance, Vector};
use crate::mor::{mor_compose, mor_identity, MorPoint};

pub use builders::*;
pub use invariants::*;
pub use schema::{cocycle_from_json, cocycle_to_json, SCHEMA_VERSION};

/// Parameter points closer than this are the same sample.
pub const PARAM_MATCH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseTag {
    /// The circle `[0, 1)/~` covered by two arcs; parameters are `[t]`.
    IntervalCoverCircle,
    /// The sphere covered by two disks; parameters are `[θ, φ]`.
    TwoDiskSphere,
    Abstract,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub id: String,
    pub samples: Vec<Vec<f64>>,
}

/// One connected component of `U_from ∩ U_to`, sampled in order along it.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlap {
    pub from: usize,
    pub to: usize,
    pub samples: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseComplex {
    pub tag: BaseTag,
    pub patches: Vec<Patch>,
    pub overlaps: Vec<Overlap>,
}

fn same_param(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= PARAM_MATCH)
}

fn find_param(list: &[Vec<f64>], p: &[f64]) -> Option<usize> {
    list.iter().position(|q| same_param(q, p))
}

impl BaseComplex {
    /// Position of each overlap sample in the sample lists of its two patches.
    fn sample_index(&self) -> Result<Vec<Vec<(usize, usize)>>> {
        self.overlaps
            .iter()
            .enumerate()
            .map(|(o, ov)| {
                if ov.from >= self.patches.len() || ov.to >= self.patches.len() {
                    return Err(Error::InconsistentSamples(format!("overlap {o} names a missing patch")));
                }
                if ov.from == ov.to {
                    return Err(Error::InconsistentSamples(format!("overlap {o} joins a patch to itself")));
                }
                if ov.samples.is_empty() {
                    return Err(Error::InconsistentSamples(format!("overlap {o} has no samples")));
                }
                ov.samples
                    .iter()
                    .map(|p| {
                        let a = find_param(&self.patches[ov.from].samples, p);
                        let b = find_param(&self.patches[ov.to].samples, p);
                        a.zip(b).ok_or_else(|| {
                            Error::InconsistentSamples(format!(
                                "sample {p:?} of overlap {} → {} is missing from a patch",
                                self.patches[ov.from].id, self.patches[ov.to].id
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn overlap_label(&self, o: usize) -> String {
        let ov = &self.overlaps[o];
        format!("{}→{}", self.patches[ov.from].id, self.patches[ov.to].id)
    }

    /// The overlap `to → from` containing the parameter `p`, with the sample position.
    fn find_in(&self, from: usize, to: usize, p: &[f64]) -> Option<(usize, usize)> {
        self.overlaps
            .iter()
            .enumerate()
            .filter(|(_, ov)| ov.from == from && ov.to == to)
            .find_map(|(o, ov)| find_param(&ov.samples, p).map(|s| (o, s)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CechCocycle<T: Scalar> {
    base: BaseComplex,
    rank: usize,
    locals: Vec<Vec<GrPoint<T>>>,
    transitions: Vec<Vec<MorPoint<T>>>,
    index: Vec<Vec<(usize, usize)>>,
}

impl<T: Scalar> CechCocycle<T> {
    /// Assembles a cocycle from ambient transition matrices; sources and targets
    /// are the locals at the same sample. Shapes are validated here, the
    /// cocycle conditions by [`check_cocycle`].
    pub fn new(base: BaseComplex, rank: usize, locals: Vec<Vec<GrPoint<T>>>, maps: Vec<Vec<Mat<T>>>) -> Result<Self> {
        let index = base.sample_index()?;
        if locals.len() != base.patches.len() || maps.len() != base.overlaps.len() {
            return Err(Error::InconsistentSamples(format!(
                "{} patches with {} local tables, {} overlaps with {} transition tables",
                base.patches.len(),
                locals.len(),
                base.overlaps.len(),
                maps.len()
            )));
        }
        for (patch, table) in base.patches.iter().zip(&locals) {
            if table.len() != patch.samples.len() {
                return Err(Error::InconsistentSamples(format!(
                    "patch {} has {} samples but {} local frames",
                    patch.id,
                    patch.samples.len(),
                    table.len()
                )));
            }
            if let Some(p) = table.iter().find(|p| p.sub_dim() != rank) {
                return Err(Error::TypingMismatch(format!(
                    "patch {} holds a {}-dimensional local subspace in a rank {rank} cocycle",
                    patch.id,
                    p.sub_dim()
                )));
            }
        }
        let mut transitions = Vec::with_capacity(maps.len());
        for (o, (ov, table)) in base.overlaps.iter().zip(maps).enumerate() {
            if table.len() != ov.samples.len() {
                return Err(Error::InconsistentSamples(format!(
                    "overlap {} has {} samples but {} transitions",
                    base.overlap_label(o),
                    ov.samples.len(),
                    table.len()
                )));
            }
            let mut row = Vec::with_capacity(table.len());
            for (s, map) in table.into_iter().enumerate() {
                let (a, b) = index[o][s];
                let (src, dst) = (&locals[ov.from][a], &locals[ov.to][b]);
                if map.shape() != (dst.ambient_dim(), src.ambient_dim()) {
                    return Err(Error::ShapeMismatch(format!(
                        "transition {} at sample {s} is {:?}, expected {:?}",
                        base.overlap_label(o),
                        map.shape(),
                        (dst.ambient_dim(), src.ambient_dim())
                    )));
                }
                row.push(MorPoint::from_parts_unchecked(src.clone(), dst.clone(), map));
            }
            transitions.push(row);
        }
        Ok(CechCocycle { base, rank, locals, transitions, index })
    }

    pub fn base(&self) -> &BaseComplex {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn locals(&self, patch: usize) -> &[GrPoint<T>] {
        &self.locals[patch]
    }

    pub fn transitions(&self, overlap: usize) -> &[MorPoint<T>] {
        &self.transitions[overlap]
    }

    /// `g = x_βᴴ F x_α`: the transition read in the stored trivializations.
    pub fn transition_matrix(&self, overlap: usize, sample: usize) -> Mat<T> {
        self.transitions[overlap][sample].frame_matrix()
    }

    /// Same base and locals with each transition map replaced by `f(o, s, map)`.
    pub fn map_transitions(&self, mut f: impl FnMut(usize, usize, &Mat<T>) -> Mat<T>) -> Result<Self> {
        let maps = self
            .transitions
            .iter()
            .enumerate()
            .map(|(o, row)| row.iter().enumerate().map(|(s, t)| f(o, s, t.map())).collect())
            .collect();
        CechCocycle::new(self.base.clone(), self.rank, self.locals.clone(), maps)
    }

    #[cfg(test)]
    pub(crate) fn maps(&self) -> Vec<Vec<Mat<T>>> {
        self.transitions.iter().map(|row| row.iter().map(|t| t.map().clone()).collect()).collect()
    }
}

/// Verifies that every transition is an isomorphism between the right locals,
/// that `F_αβ ∘ F_βα = id` on double overlaps and `F_γβ ∘ F_βα = F_γα` on
/// triple overlaps.
pub fn check_cocycle<T: Scalar>(c: &CechCocycle<T>, tol: &Tolerance) -> Result<Report> {
    let base = &c.base;
    let mut typing = Tally::new("F_βα(x) maps X_α(x) into X_β(x)", tol.eps_eq);
    let mut iso = Tally::new("F_βα(x) is invertible (rank defect)", 0.0);
    let mut inverse = Tally::new("F_αβ∘F_βα = id", tol.eps_eq);
    let mut triple = Tally::new("F_γβ∘F_βα = F_γα", tol.eps_eq);
    let wit = |o: usize, s: usize| json!({ "overlap": base.overlap_label(o), "sample": s, "param": base.overlaps[o].samples[s] });

    for (o, ov) in base.overlaps.iter().enumerate() {
        for (s, f) in c.transitions[o].iter().enumerate() {
            let scale = max_abs(f.map()).max(1.0);
            let off_src = max_abs_diff(&(f.map() * f.src().projection()), f.map());
            let off_dst = max_abs_diff(&(f.dst().projection() * f.map()), f.map());
            typing.record(off_src.max(off_dst) / scale, || wit(o, s));
            let g = f.frame_matrix();
            let sv = g.singular_values();
            let defect = c.rank - sv.iter().filter(|&&x| x > tol.eps_rank).count();
            iso.record(defect as f64, || wit(o, s));

            let p = &ov.samples[s];
            let (ro, rs) = base.find_in(ov.to, ov.from, p).ok_or_else(|| {
                Error::InconsistentSamples(format!("no reverse sample for {} at {p:?}", base.overlap_label(o)))
            })?;
            let back = mor_compose(f, &c.transitions[ro][rs], tol);
            let res = back.map_or(f64::INFINITY, |b| b.distance(&mor_identity(f.src())));
            inverse.record(res, || wit(o, s));

            for (o2, ov2) in base.overlaps.iter().enumerate() {
                if ov2.from != ov.to || ov2.to == ov.from {
                    continue;
                }
                let Some(s2) = find_param(&ov2.samples, p) else { continue };
                let (o3, s3) = base.find_in(ov.from, ov2.to, p).ok_or_else(|| {
                    Error::InconsistentSamples(format!(
                        "sample {p:?} lies in {} and {} but not in their composite overlap",
                        base.overlap_label(o),
                        base.overlap_label(o2)
                    ))
                })?;
                let composite = mor_compose(f, &c.transitions[o2][s2], tol);
                let res = composite.map_or(f64::INFINITY, |g| g.distance(&c.transitions[o3][s3]));
                triple.record(res, || wit(o, s));
            }
        }
    }
    let mut report = Report::new(format!("cocycle of rank {} over {:?}", c.rank, base.tag), 0);
    for t in [typing, iso, inverse, triple] {
        report.checks.push(t.finish());
    }
    Ok(report)
}

/// The bundle obtained by gluing the trivial pieces `U_α × F^k` along the
/// sampled transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedBundle<T: Scalar> {
    cocycle: CechCocycle<T>,
    identifications: Vec<Vec<Mat<T>>>,
}

/// Glues a cocycle that passes [`check_cocycle`].
pub fn glue<T: Scalar>(c: &CechCocycle<T>, tol: &Tolerance) -> Result<GluedBundle<T>> {
    let report = check_cocycle(c, tol)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::CocycleViolation(format!(
            "{} (max residual {:e})",
            bad.name, bad.max_residual
        )));
    }
    let identifications = (0..c.base.overlaps.len())
        .map(|o| (0..c.transitions[o].len()).map(|s| c.transition_matrix(o, s)).collect())
        .collect();
    Ok(GluedBundle { cocycle: c.clone(), identifications })
}

impl<T: Scalar> GluedBundle<T> {
    pub fn fiber_dim(&self) -> usize {
        self.cocycle.rank
    }

    pub fn base(&self) -> &BaseComplex {
        &self.cocycle.base
    }

    /// The `k × k` matrix identifying `(x, v) ∈ U_α × F^k` with `(x, g·v) ∈ U_β × F^k`.
    pub fn identification(&self, overlap: usize, sample: usize) -> &Mat<T> {
        &self.identifications[overlap][sample]
    }

    pub fn identify(&self, overlap: usize, sample: usize, v: &Vector<T>) -> Result<Vector<T>> {
        if v.len() != self.fiber_dim() {
            return Err(Error::ShapeMismatch(format!("fiber vector of length {}, expected {}", v.len(), self.fiber_dim())));
        }
        Ok(&self.identifications[overlap][sample] * v)
    }

    /// The point of `F^m` represented by `(x, v)` in the trivialization over `U_α`.
    pub fn realize(&self, patch: usize, sample: usize, v: &Vector<T>) -> Vector<T> {
        self.cocycle.locals[patch][sample].frame() * v
    }

    /// The local datum over one patch.
    pub fn restrict(&self, patch: usize) -> &[GrPoint<T>] {
        &self.cocycle.locals[patch]
    }

    /// Rebuilds a cocycle from the identifications: `F_βα = x_β g x_αᴴ`.
    pub fn extract_cocycle(&self) -> Result<CechCocycle<T>> {
        let c = &self.cocycle;
        let maps = c
            .base
            .overlaps
            .iter()
            .enumerate()
            .map(|(o, ov)| {
                (0..ov.samples.len())
                    .map(|s| {
                        let (a, b) = c.index[o][s];
                        c.locals[ov.to][b].frame() * &self.identifications[o][s] * c.locals[ov.from][a].frame().adjoint()
                    })
                    .collect()
            })
            .collect();
        CechCocycle::new(c.base.clone(), c.rank, c.locals.clone(), maps)
    }
}

impl GluedBundle<f64> {
    /// Whether the glued bundle over the circle is orientable; `None` for other bases.
    pub fn is_orientable(&self) -> Option<bool> {
        s1_orientation_character(&self.cocycle).ok().map(|sign| sign > 0)
    }
}

/// Outcome of [`pullback_iso_bundle`].
///
/// The section is checked for continuity by reading consecutive samples in
/// the chart triple centered at the earlier one; a step larger than
/// `jump_factor` times the median step is flagged.
pub fn pullback_iso_bundle<T: Scalar>(
    f: &[GrPoint<T>],
    g: &[GrPoint<T>],
    t: &[MorPoint<T>],
    tol: &Tolerance,
    jump_factor: f64,
) -> Result<Report> {
    if f.len() != g.len() || f.len() != t.len() || f.is_empty() {
        return Err(Error::SectionMismatch(format!(
            "{} source samples, {} target samples, {} section samples",
            f.len(),
            g.len(),
            t.len()
        )));
    }
    let mut typing = Tally::new("T(x): f(x) → g(x) is an isomorphism", tol.eps_eq);
    for (i, ((x, y), m)) in f.iter().zip(g).zip(t).enumerate() {
        let gap = m.src().distance(x).max(m.dst().distance(y));
        typing.record(gap, || json!({ "sample": i }));
        if !(gap <= tol.eps_eq) {
            return Err(Error::SectionMismatch(format!("sample {i}: section is not a map f(x) → g(x) (gap {gap:e})")));
        }
        if !crate::mor::is_iso(m, tol) {
            return Err(Error::SectionMismatch(format!("sample {i}: section value is not an isomorphism")));
        }
    }
    let steps = invariants::section_steps(t, tol)?;
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = if sorted.is_empty() { 0.0 } else { sorted[sorted.len() / 2] };
    let bound = jump_factor * median + 1e-9;
    let mut cont = Tally::new("consecutive chart steps within bound", 1.0);
    for (i, step) in steps.iter().enumerate() {
        cont.record(step / bound, || json!({ "between_samples": [i, i + 1], "step": step, "bound": bound }));
    }
    let mut report = Report::new("section of the pulled-back isomorphism bundle", 0);
    report.checks.push(typing.finish());
    report.checks.push(cont.finish());
    Ok(report)
}

#[cfg(test)]
mod tests;

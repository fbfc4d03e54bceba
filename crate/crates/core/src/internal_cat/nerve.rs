//! The nerve: level `k` consists of chains of `k` composable morphisms.
//!
//! `d_0` and `d_k` forget the first and last morphism, inner faces compose
//! adjacent morphisms, and `s_i` inserts the identity at the `i`-th vertex.

use serde_json::{json, Value};

use super::{draw_chain, sample_rng, Report, SampledCategory, Tally};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct NerveSimplex<O, M> {
    /// The vertex `x_0`; needed at level 0 where the chain is empty.
    pub base: O,
    pub chain: Vec<M>,
}

impl<O, M> NerveSimplex<O, M> {
    pub fn level(&self) -> usize {
        self.chain.len()
    }
}

type Simplex<C> = NerveSimplex<<C as SampledCategory>::Ob, <C as SampledCategory>::Mor>;

/// The vertex `x_i`.
pub fn vertex<C: SampledCategory>(cat: &C, s: &Simplex<C>, i: usize) -> C::Ob {
    if i == 0 {
        s.base.clone()
    } else {
        cat.target(&s.chain[i - 1])
    }
}

/// `d_i`; `None` if `i > k`, at level 0, or when an inner composite is undefined.
pub fn face<C: SampledCategory>(cat: &C, s: &Simplex<C>, i: usize) -> Option<Simplex<C>> {
    let k = s.level();
    if k == 0 || i > k {
        return None;
    }
    let mut chain = s.chain.clone();
    let base = if i == 0 {
        let first = chain.remove(0);
        cat.target(&first)
    } else if i == k {
        chain.pop();
        s.base.clone()
    } else {
        let g = chain.remove(i);
        chain[i - 1] = cat.compose(&chain[i - 1], &g)?;
        s.base.clone()
    };
    Some(NerveSimplex { base, chain })
}

/// `s_i`; `None` if `i > k`.
pub fn degeneracy<C: SampledCategory>(cat: &C, s: &Simplex<C>, i: usize) -> Option<Simplex<C>> {
    if i > s.level() {
        return None;
    }
    let mut chain = s.chain.clone();
    chain.insert(i, cat.identity(&vertex(cat, s, i)));
    Some(NerveSimplex { base: s.base.clone(), chain })
}

/// Random simplices of the given level.
pub fn sample_nerve<C: SampledCategory>(cat: &C, level: usize, count: usize, seed: u64) -> Result<Vec<Simplex<C>>> {
    (0..count as u64)
        .map(|i| {
            let (base, chain) = draw_chain(cat, level, &mut sample_rng(seed, level as u64, i))?;
            Ok(NerveSimplex { base, chain })
        })
        .collect()
}

fn simplex_distance<C: SampledCategory>(cat: &C, a: Option<&Simplex<C>>, b: Option<&Simplex<C>>) -> f64 {
    let (Some(a), Some(b)) = (a, b) else { return f64::INFINITY };
    if a.level() != b.level() {
        return f64::INFINITY;
    }
    a.chain
        .iter()
        .zip(&b.chain)
        .map(|(f, g)| cat.mor_distance(f, g))
        .fold(cat.ob_distance(&a.base, &b.base), f64::max)
}

/// Largest mismatch between consecutive vertices of a simplex.
fn chain_defect<C: SampledCategory>(cat: &C, s: &Simplex<C>) -> f64 {
    let mut cur = s.base.clone();
    let mut worst = 0.0f64;
    for f in &s.chain {
        worst = worst.max(cat.ob_distance(&cat.source(f), &cur));
        cur = cat.target(f);
    }
    worst
}

fn simplex_json<C: SampledCategory>(cat: &C, s: &Simplex<C>) -> Value {
    json!({
        "base": cat.ob_json(&s.base),
        "chain": s.chain.iter().map(|f| cat.mor_json(f)).collect::<Vec<_>>(),
    })
}

/// Checks every family of simplicial identities on `samples` simplices per
/// level, for levels `0..=max_level`.
pub fn check_nerve<C: SampledCategory>(
    cat: &C,
    max_level: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let mut well = Tally::new("faces and degeneracies yield chains", tol);
    let mut dd = Tally::new("d_i d_j = d_{j-1} d_i (i<j)", tol);
    let mut ds_lo = Tally::new("d_i s_j = s_{j-1} d_i (i<j)", tol);
    let mut ds_id = Tally::new("d_j s_j = d_{j+1} s_j = id", tol);
    let mut ds_hi = Tally::new("d_i s_j = s_j d_{i-1} (i>j+1)", tol);
    let mut ss = Tally::new("s_i s_j = s_{j+1} s_i (i<=j)", tol);

    let d = |s: &Simplex<C>, i| face(cat, s, i);
    let s_ = |s: &Simplex<C>, i| degeneracy(cat, s, i);
    let dist = |a: Option<Simplex<C>>, b: Option<Simplex<C>>| simplex_distance(cat, a.as_ref(), b.as_ref());

    for k in 0..=max_level {
        for x in sample_nerve(cat, k, samples, seed)? {
            let wit = || simplex_json(cat, &x);
            for i in 0..=k {
                if k > 0 {
                    well.record(d(&x, i).map_or(f64::INFINITY, |y| chain_defect(cat, &y)), wit);
                }
                well.record(s_(&x, i).map_or(f64::INFINITY, |y| chain_defect(cat, &y)), wit);
            }
            if k >= 2 {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = d(&x, j).and_then(|y| d(&y, i));
                        let rhs = d(&x, i).and_then(|y| d(&y, j - 1));
                        dd.record(dist(lhs, rhs), wit);
                    }
                }
            }
            for j in 0..=k {
                let sj = s_(&x, j);
                for i in 0..=k + 1 {
                    let lhs = sj.as_ref().and_then(|y| d(y, i));
                    if i < j {
                        ds_lo.record(dist(lhs, d(&x, i).and_then(|y| s_(&y, j - 1))), wit);
                    } else if i == j || i == j + 1 {
                        ds_id.record(dist(lhs, Some(x.clone())), wit);
                    } else {
                        ds_hi.record(dist(lhs, d(&x, i - 1).and_then(|y| s_(&y, j))), wit);
                    }
                }
                for i in 0..=j {
                    let lhs = sj.as_ref().and_then(|y| s_(y, i));
                    let rhs = s_(&x, i).and_then(|y| s_(&y, j + 1));
                    ss.record(dist(lhs, rhs), wit);
                }
            }
        }
    }
    let mut report = Report::new(format!("nerve of {} up to level {max_level}", cat.name()), seed);
    for t in [well, dd, ds_lo, ds_id, ds_hi, ss] {
        report.checks.push(t.finish());
    }
    Ok(report)
}

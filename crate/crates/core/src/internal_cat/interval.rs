//! The product `C × [1]` and the functor `Φ: C × [1] → D` attached to a
//! candidate natural transformation.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{draw_chain, draw_object, mor_gap, sample_rng, NatTransWitness, Report, SampledCategory, SampledFunctor, Tally};
use crate::error::Result;

/// The three non-trivial-or-identity arrows of the walking arrow `0 → 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrow {
    Stay0,
    Cross,
    Stay1,
}

impl Arrow {
    pub fn start(self) -> bool {
        matches!(self, Arrow::Stay1)
    }

    pub fn end(self) -> bool {
        !matches!(self, Arrow::Stay0)
    }

    pub fn identity_at(vertex: bool) -> Arrow {
        if vertex {
            Arrow::Stay1
        } else {
            Arrow::Stay0
        }
    }

    /// `b ∘ a`, defined when `a` ends where `b` starts.
    pub fn then(self, b: Arrow) -> Option<Arrow> {
        if self.end() != b.start() {
            return None;
        }
        Some(match (self, b) {
            (Arrow::Stay0, Arrow::Stay0) => Arrow::Stay0,
            (Arrow::Stay1, Arrow::Stay1) => Arrow::Stay1,
            _ => Arrow::Cross,
        })
    }
}

/// `C × [1]`: objects `(x, v)` with `v ∈ {0, 1}` (encoded as `false`/`true`).
#[derive(Debug, Clone)]
pub struct IntervalProduct<C> {
    pub base: C,
}

impl<C: SampledCategory> SampledCategory for IntervalProduct<C> {
    type Ob = (C::Ob, bool);
    type Mor = (C::Mor, Arrow);

    fn name(&self) -> String {
        format!("{}×[1]", self.base.name())
    }

    fn source(&self, f: &Self::Mor) -> Self::Ob {
        (self.base.source(&f.0), f.1.start())
    }

    fn target(&self, f: &Self::Mor) -> Self::Ob {
        (self.base.target(&f.0), f.1.end())
    }

    fn identity(&self, x: &Self::Ob) -> Self::Mor {
        (self.base.identity(&x.0), Arrow::identity_at(x.1))
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        let arrow = f.1.then(g.1)?;
        Some((self.base.compose(&f.0, &g.0)?, arrow))
    }

    fn ob_distance(&self, a: &Self::Ob, b: &Self::Ob) -> f64 {
        if a.1 != b.1 {
            return f64::INFINITY;
        }
        self.base.ob_distance(&a.0, &b.0)
    }

    fn mor_distance(&self, f: &Self::Mor, g: &Self::Mor) -> f64 {
        if f.1 != g.1 {
            return f64::INFINITY;
        }
        self.base.mor_distance(&f.0, &g.0)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<Self::Ob> {
        let x = self.base.sample_object(rng)?;
        Some((x, rng.random_bool(0.25)))
    }

    fn sample_morphism_from(&self, x: &Self::Ob, rng: &mut ChaCha8Rng) -> Option<Self::Mor> {
        let h = self.base.sample_morphism_from(&x.0, rng)?;
        let arrow = match (x.1, rng.random_bool(0.5)) {
            (true, _) => Arrow::Stay1,
            (false, true) => Arrow::Cross,
            (false, false) => Arrow::Stay0,
        };
        Some((h, arrow))
    }

    fn corrupt(&self, f: &Self::Mor) -> Self::Mor {
        (self.base.corrupt(&f.0), f.1)
    }

    fn ob_json(&self, x: &Self::Ob) -> Value {
        json!({ "object": self.base.ob_json(&x.0), "vertex": u8::from(x.1) })
    }

    fn mor_json(&self, f: &Self::Mor) -> Value {
        json!({ "morphism": self.base.mor_json(&f.0), "arrow": format!("{:?}", f.1) })
    }
}

/// `Φ(h, a)`: `F(h)`, `G(h)`, or `φ(t(h)) ∘ F(h)` on the crossing arrow.
fn big_phi<C: SampledCategory, D: SampledCategory>(
    f: &SampledFunctor<C, D>,
    g: &SampledFunctor<C, D>,
    phi: &NatTransWitness<C, D>,
    h: &(C::Mor, Arrow),
) -> Option<D::Mor> {
    match h.1 {
        Arrow::Stay0 => Some(f.on_morphism(&h.0)),
        Arrow::Stay1 => Some(g.on_morphism(&h.0)),
        Arrow::Cross => f.target.compose(&f.on_morphism(&h.0), &phi.component(&f.source.target(&h.0))),
    }
}

fn big_phi_ob<C: SampledCategory, D: SampledCategory>(
    f: &SampledFunctor<C, D>,
    g: &SampledFunctor<C, D>,
    x: &(C::Ob, bool),
) -> D::Ob {
    if x.1 {
        g.on_object(&x.0)
    } else {
        f.on_object(&x.0)
    }
}

fn ob_gap<D: SampledCategory>(d: &D, a: Option<D::Ob>, b: &D::Ob) -> f64 {
    a.map_or(f64::INFINITY, |a| d.ob_distance(&a, b))
}

/// Functoriality of `Φ` on `C × [1]`, plus `Φ(e(x), 0→1) = φ(x)`.
pub(super) fn check_via_interval<C, D>(
    f: &SampledFunctor<C, D>,
    g: &SampledFunctor<C, D>,
    phi: &NatTransWitness<C, D>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report>
where
    C: SampledCategory + Clone,
    D: SampledCategory,
{
    let ci = IntervalProduct { base: f.source.clone() };
    let d = &f.target;
    let mut report = Report::new(String::new(), seed);
    let mut src = Tally::new("s(Φ(u)) = Φ(s(u))", tol);
    let mut tgt = Tally::new("t(Φ(u)) = Φ(t(u))", tol);
    let mut ident = Tally::new("Φ(e(x,v)) = e(Φ(x,v))", tol);
    let mut comp = Tally::new("Φ(w∘u) = Φ(w)∘Φ(u)", tol);
    let mut cross = Tally::new("Φ(e(x), 0→1) = φ(x)", tol);

    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, 2, i);
        let x = draw_object(&ci, &mut rng)?;
        let lhs = big_phi(f, g, phi, &ci.identity(&x));
        let rhs = d.identity(&big_phi_ob(f, g, &x));
        ident.record(mor_gap(d, lhs.as_ref(), Some(&rhs)), || json!({ "x": ci.ob_json(&x) }));
        let at_cross = big_phi(f, g, phi, &(f.source.identity(&x.0), Arrow::Cross));
        cross.record(mor_gap(d, at_cross.as_ref(), Some(&phi.component(&x.0))), || {
            json!({ "x": f.source.ob_json(&x.0) })
        });

        let mut rng = sample_rng(seed, 3, i);
        let (_, chain) = draw_chain(&ci, 2, &mut rng)?;
        let (u, w) = (&chain[0], &chain[1]);
        let wit = || json!({ "u": ci.mor_json(u), "w": ci.mor_json(w) });
        let pu = big_phi(f, g, phi, u);
        src.record(ob_gap(d, pu.as_ref().map(|m| d.source(m)), &big_phi_ob(f, g, &ci.source(u))), wit);
        tgt.record(ob_gap(d, pu.as_ref().map(|m| d.target(m)), &big_phi_ob(f, g, &ci.target(u))), wit);
        let whole = ci.compose(u, w).and_then(|wu| big_phi(f, g, phi, &wu));
        let parts = pu.zip(big_phi(f, g, phi, w)).and_then(|(a, b)| d.compose(&a, &b));
        comp.record(mor_gap(d, whole.as_ref(), parts.as_ref()), wit);
    }
    for t in [src, tgt, ident, comp, cross] {
        report.checks.push(t.finish());
    }
    Ok(report)
}

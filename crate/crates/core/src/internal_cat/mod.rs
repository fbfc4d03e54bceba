//! Sampled internal categories: axiom checks, functors, natural
//! transformations and the nerve.
//!
//! Object and morphism spaces are manifolds, so every checker draws seeded
//! samples and reports the largest residual seen for each axiom. Pullbacks
//! `M ×_O M` are realized by sampling `f` and then `g` out of `t(f)`.

mod interval;
mod mutation;
mod nerve;
mod report;

use std::fmt::Debug;
use std::rc::Rc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use interval::{Arrow, IntervalProduct};
pub use mutation::{MutatedCategory, MutationSite};
pub use nerve::{check_nerve, degeneracy, face, sample_nerve, NerveSimplex};
pub use report::{CheckResult, Report};
pub(crate) use report::Tally;

/// Attempts per sample before a sampler is declared exhausted.
const MAX_ATTEMPTS: usize = 64;

/// A category whose object and morphism spaces can be sampled.
///
/// `compose(f, g)` is `g ∘ f` and returns `None` when `t(f) ≠ s(g)`.
pub trait SampledCategory {
    type Ob: Clone + Debug + 'static;
    type Mor: Clone + Debug + 'static;

    fn name(&self) -> String;
    fn source(&self, f: &Self::Mor) -> Self::Ob;
    fn target(&self, f: &Self::Mor) -> Self::Ob;
    fn identity(&self, x: &Self::Ob) -> Self::Mor;
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;

    fn ob_distance(&self, a: &Self::Ob, b: &Self::Ob) -> f64;
    fn mor_distance(&self, f: &Self::Mor, g: &Self::Mor) -> f64;

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<Self::Ob>;
    fn sample_morphism_from(&self, x: &Self::Ob, rng: &mut ChaCha8Rng) -> Option<Self::Mor>;

    /// A morphism with the same shape as `f` but visibly different from it,
    /// used by the mutation harness.
    fn corrupt(&self, f: &Self::Mor) -> Self::Mor;

    fn ob_json(&self, x: &Self::Ob) -> Value;
    fn mor_json(&self, f: &Self::Mor) -> Value;
}

/// Deterministic generator for sample `index` of check number `check`.
pub fn sample_rng(seed: u64, check: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((check << 32) ^ index);
    rng
}

fn exhausted(cat: &str, what: &str) -> Error {
    Error::SamplerExhausted(format!("{cat}: no {what} after {MAX_ATTEMPTS} attempts"))
}

pub(crate) fn draw_object<C: SampledCategory>(cat: &C, rng: &mut ChaCha8Rng) -> Result<C::Ob> {
    (0..MAX_ATTEMPTS)
        .find_map(|_| cat.sample_object(rng))
        .ok_or_else(|| exhausted(&cat.name(), "object"))
}

pub(crate) fn draw_morphism<C: SampledCategory>(cat: &C, rng: &mut ChaCha8Rng) -> Result<C::Mor> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(x) = cat.sample_object(rng) {
            if let Some(f) = cat.sample_morphism_from(&x, rng) {
                return Ok(f);
            }
        }
    }
    Err(exhausted(&cat.name(), "morphism"))
}

/// A chain `f_1, ..., f_len` with `t(f_i) = s(f_{i+1})`.
pub(crate) fn draw_chain<C: SampledCategory>(
    cat: &C,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(C::Ob, Vec<C::Mor>)> {
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let Some(x) = cat.sample_object(rng) else { continue };
        let mut chain = Vec::with_capacity(len);
        let mut cur = x.clone();
        for _ in 0..len {
            let Some(f) = cat.sample_morphism_from(&cur, rng) else { continue 'attempt };
            cur = cat.target(&f);
            chain.push(f);
        }
        return Ok((x, chain));
    }
    Err(exhausted(&cat.name(), &format!("composable chain of length {len}")))
}

pub(crate) fn mor_gap<C: SampledCategory>(cat: &C, a: Option<&C::Mor>, b: Option<&C::Mor>) -> f64 {
    match (a, b) {
        (Some(a), Some(b)) => cat.mor_distance(a, b),
        _ => f64::INFINITY,
    }
}

/// Samples every axiom of an internal category `samples` times.
///
/// Checked: `s∘e = id`, `t∘e = id`, `s(g∘f) = s(f)`, `t(g∘f) = t(g)`,
/// associativity and both unit laws.
pub fn check_category_axioms<C: SampledCategory>(
    cat: &C,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let mut report = Report::new(format!("category axioms: {}", cat.name()), seed);
    let mut src_e = Tally::new("s(e(x)) = x", tol);
    let mut tgt_e = Tally::new("t(e(x)) = x", tol);
    let mut src_c = Tally::new("s(g∘f) = s(f)", tol);
    let mut tgt_c = Tally::new("t(g∘f) = t(g)", tol);
    let mut assoc = Tally::new("h∘(g∘f) = (h∘g)∘f", tol);
    let mut left = Tally::new("e(t(f))∘f = f", tol);
    let mut right = Tally::new("f∘e(s(f)) = f", tol);

    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, 0, i);
        let x = draw_object(cat, &mut rng)?;
        let e = cat.identity(&x);
        src_e.record(cat.ob_distance(&cat.source(&e), &x), || json!({ "x": cat.ob_json(&x) }));
        tgt_e.record(cat.ob_distance(&cat.target(&e), &x), || json!({ "x": cat.ob_json(&x) }));

        let mut rng = sample_rng(seed, 1, i);
        let (_, chain) = draw_chain(cat, 3, &mut rng)?;
        let (f, g, h) = (&chain[0], &chain[1], &chain[2]);
        let wit = || json!({ "f": cat.mor_json(f), "g": cat.mor_json(g), "h": cat.mor_json(h) });
        let gf = cat.compose(f, g);
        src_c.record(
            gf.as_ref().map_or(f64::INFINITY, |gf| cat.ob_distance(&cat.source(gf), &cat.source(f))),
            wit,
        );
        tgt_c.record(
            gf.as_ref().map_or(f64::INFINITY, |gf| cat.ob_distance(&cat.target(gf), &cat.target(g))),
            wit,
        );
        let h_gf = gf.as_ref().and_then(|gf| cat.compose(gf, h));
        let hg_f = cat.compose(g, h).and_then(|hg| cat.compose(f, &hg));
        assoc.record(mor_gap(cat, h_gf.as_ref(), hg_f.as_ref()), wit);

        let lf = cat.compose(f, &cat.identity(&cat.target(f)));
        left.record(mor_gap(cat, lf.as_ref(), Some(f)), || json!({ "f": cat.mor_json(f) }));
        let rf = cat.compose(&cat.identity(&cat.source(f)), f);
        right.record(mor_gap(cat, rf.as_ref(), Some(f)), || json!({ "f": cat.mor_json(f) }));
    }
    for t in [src_e, tgt_e, src_c, tgt_c, assoc, left, right] {
        report.checks.push(t.finish());
    }
    Ok(report)
}

type ObMap<C, D> = Rc<dyn Fn(&<C as SampledCategory>::Ob) -> <D as SampledCategory>::Ob>;
type MorMap<C, D> = Rc<dyn Fn(&<C as SampledCategory>::Mor) -> <D as SampledCategory>::Mor>;
type Component<C, D> = Rc<dyn Fn(&<C as SampledCategory>::Ob) -> <D as SampledCategory>::Mor>;

/// An internal functor `C → D` given by its two component maps.
pub struct SampledFunctor<C: SampledCategory, D: SampledCategory> {
    pub name: String,
    pub source: C,
    pub target: D,
    on_objects: ObMap<C, D>,
    on_morphisms: MorMap<C, D>,
}

impl<C: SampledCategory + Clone, D: SampledCategory + Clone> Clone for SampledFunctor<C, D> {
    fn clone(&self) -> Self {
        SampledFunctor {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            on_objects: self.on_objects.clone(),
            on_morphisms: self.on_morphisms.clone(),
        }
    }
}

impl<C: SampledCategory, D: SampledCategory> SampledFunctor<C, D> {
    pub fn new(
        name: impl Into<String>,
        source: C,
        target: D,
        on_objects: impl Fn(&C::Ob) -> D::Ob + 'static,
        on_morphisms: impl Fn(&C::Mor) -> D::Mor + 'static,
    ) -> Self {
        SampledFunctor {
            name: name.into(),
            source,
            target,
            on_objects: Rc::new(on_objects),
            on_morphisms: Rc::new(on_morphisms),
        }
    }

    pub fn on_object(&self, x: &C::Ob) -> D::Ob {
        (self.on_objects)(x)
    }

    pub fn on_morphism(&self, f: &C::Mor) -> D::Mor {
        (self.on_morphisms)(f)
    }

    /// Same object map, morphism map replaced by `mutate ∘ on_morphisms`.
    pub fn with_mutated_morphisms(&self, mutate: impl Fn(&D::Mor) -> D::Mor + 'static) -> Self
    where
        C: Clone,
        D: Clone,
    {
        let inner = self.on_morphisms.clone();
        SampledFunctor {
            name: format!("{} (mutated)", self.name),
            source: self.source.clone(),
            target: self.target.clone(),
            on_objects: self.on_objects.clone(),
            on_morphisms: Rc::new(move |f| mutate(&inner(f))),
        }
    }
}

impl<C: SampledCategory + Clone> SampledFunctor<C, C> {
    pub fn identity(cat: C) -> Self
    where
        C: 'static,
    {
        SampledFunctor::new(format!("id_{}", cat.name()), cat.clone(), cat, |x| x.clone(), |f| f.clone())
    }
}

/// Checks the source, target, identity and composition squares of a functor.
pub fn check_functor<C: SampledCategory, D: SampledCategory>(
    functor: &SampledFunctor<C, D>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let (c, d) = (&functor.source, &functor.target);
    let mut report = Report::new(format!("functor laws: {}", functor.name), seed);
    let mut src = Tally::new("s(F(f)) = F(s(f))", tol);
    let mut tgt = Tally::new("t(F(f)) = F(t(f))", tol);
    let mut ident = Tally::new("F(e(x)) = e(F(x))", tol);
    let mut comp = Tally::new("F(g∘f) = F(g)∘F(f)", tol);

    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, 0, i);
        let x = draw_object(c, &mut rng)?;
        let lhs = functor.on_morphism(&c.identity(&x));
        let rhs = d.identity(&functor.on_object(&x));
        ident.record(d.mor_distance(&lhs, &rhs), || json!({ "x": c.ob_json(&x) }));

        let mut rng = sample_rng(seed, 1, i);
        let (_, chain) = draw_chain(c, 2, &mut rng)?;
        let (f, g) = (&chain[0], &chain[1]);
        let ff = functor.on_morphism(f);
        let wit = || json!({ "f": c.mor_json(f), "g": c.mor_json(g) });
        src.record(d.ob_distance(&d.source(&ff), &functor.on_object(&c.source(f))), wit);
        tgt.record(d.ob_distance(&d.target(&ff), &functor.on_object(&c.target(f))), wit);
        let f_gf = c.compose(f, g).map(|gf| functor.on_morphism(&gf));
        let fg_ff = d.compose(&ff, &functor.on_morphism(g));
        comp.record(mor_gap(d, f_gf.as_ref(), fg_ff.as_ref()), wit);
    }
    for t in [src, tgt, ident, comp] {
        report.checks.push(t.finish());
    }
    Ok(report)
}

/// The components `φ(x): F(x) → G(x)` of a candidate natural transformation.
pub struct NatTransWitness<C: SampledCategory, D: SampledCategory> {
    pub name: String,
    component: Component<C, D>,
}

impl<C: SampledCategory, D: SampledCategory> Clone for NatTransWitness<C, D> {
    fn clone(&self) -> Self {
        NatTransWitness { name: self.name.clone(), component: self.component.clone() }
    }
}

impl<C: SampledCategory, D: SampledCategory> NatTransWitness<C, D> {
    pub fn new(name: impl Into<String>, component: impl Fn(&C::Ob) -> D::Mor + 'static) -> Self {
        NatTransWitness { name: name.into(), component: Rc::new(component) }
    }

    pub fn component(&self, x: &C::Ob) -> D::Mor {
        (self.component)(x)
    }

    /// The identity transformation `e ∘ F` of a functor `F`.
    pub fn identity_of(functor: &SampledFunctor<C, D>) -> Self
    where
        C: 'static,
        D: Clone + 'static,
    {
        let on_objects = functor.on_objects.clone();
        let d = functor.target.clone();
        NatTransWitness::new(format!("e∘{}", functor.name), move |x| d.identity(&on_objects(x)))
    }

    pub fn with_mutated_components(&self, mutate: impl Fn(&D::Mor) -> D::Mor + 'static) -> Self
    where
        C: 'static,
        D: 'static,
    {
        let inner = self.component.clone();
        NatTransWitness {
            name: format!("{} (mutated)", self.name),
            component: Rc::new(move |x| mutate(&inner(x))),
        }
    }
}

/// Verdicts of the two equivalent formulations of naturality.
#[derive(Debug, Clone, PartialEq)]
pub struct NatTransReport {
    /// Typing of the components and the naturality square.
    pub definition: Report,
    /// Functoriality of the induced functor `Φ: C × [1] → D` and its two restrictions.
    pub interval: Report,
}

impl NatTransReport {
    pub fn passed(&self) -> bool {
        self.definition.passed() && self.interval.passed()
    }

    pub fn formulations_agree(&self) -> bool {
        self.definition.passed() == self.interval.passed()
    }

    /// Both formulations in one report.
    pub fn combined(&self) -> Report {
        let mut out = Report::new(self.definition.title.clone(), self.definition.seed);
        out.absorb("definition", self.definition.clone());
        out.absorb("interval", self.interval.clone());
        out
    }
}

/// Checks that `φ` is a natural transformation `F ⇒ G`.
///
/// `F` and `G` must have the same source and target categories, compared by name.
pub fn check_nat_trans<C, D>(
    f: &SampledFunctor<C, D>,
    g: &SampledFunctor<C, D>,
    phi: &NatTransWitness<C, D>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NatTransReport>
where
    C: SampledCategory + Clone + 'static,
    D: SampledCategory + Clone + 'static,
{
    if f.source.name() != g.source.name() || f.target.name() != g.target.name() {
        return Err(Error::TypingMismatch(format!(
            "{}: {} → {} vs {}: {} → {}",
            f.name,
            f.source.name(),
            f.target.name(),
            g.name,
            g.source.name(),
            g.target.name()
        )));
    }
    let (c, d) = (&f.source, &f.target);
    let title = format!("natural transformation {}: {} ⇒ {}", phi.name, f.name, g.name);

    let mut definition = Report::new(title.clone(), seed);
    let mut src = Tally::new("s(φ(x)) = F(x)", tol);
    let mut tgt = Tally::new("t(φ(x)) = G(x)", tol);
    let mut nat = Tally::new("φ(t(h))∘F(h) = G(h)∘φ(s(h))", tol);
    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, 0, i);
        let x = draw_object(c, &mut rng)?;
        let px = phi.component(&x);
        src.record(d.ob_distance(&d.source(&px), &f.on_object(&x)), || json!({ "x": c.ob_json(&x) }));
        tgt.record(d.ob_distance(&d.target(&px), &g.on_object(&x)), || json!({ "x": c.ob_json(&x) }));

        let mut rng = sample_rng(seed, 1, i);
        let h = draw_morphism(c, &mut rng)?;
        let upper = d.compose(&f.on_morphism(&h), &phi.component(&c.target(&h)));
        let lower = d.compose(&phi.component(&c.source(&h)), &g.on_morphism(&h));
        nat.record(mor_gap(d, upper.as_ref(), lower.as_ref()), || json!({ "h": c.mor_json(&h) }));
    }
    for t in [src, tgt, nat] {
        definition.checks.push(t.finish());
    }

    let interval = interval::check_via_interval(f, g, phi, samples, seed, tol)?;
    Ok(NatTransReport { definition, interval: Report { title, ..interval } })
}

#[cfg(test)]
mod tests;

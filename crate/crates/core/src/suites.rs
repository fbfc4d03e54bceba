//! Ready-made property suites over the shipped categories, as run by the
//! command-line front end.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::json;

use crate::categories::{FatCategory, GrassmannGroupoid, MatrixCategory};
use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::internal_cat::{
    check_category_axioms, check_functor, check_nat_trans, check_nerve, sample_rng, MutatedCategory, MutationSite,
    NatTransWitness, Report, SampledCategory, SampledFunctor, Tally,
};
use crate::linalg::{Field, Scalar, Tolerance};
use crate::mor::{embed_vf, mor_identity, mor_stabilize, MorPoint, VfMor};
use crate::semiring::{
    add_unit_fat, add_unit_vf, comm_fat, comm_vf, comparison_witnesses, distrib_fat, distrib_vf, oplus_functor_fat,
    oplus_functor_vf, oplus_mor, oplus_points, oplus_points_stabilized, otimes_functor_fat, otimes_functor_vf,
    otimes_mor, otimes_points, otimes_points_stabilized, pair, triple, vf_oplus, vf_oplus_ob, vf_otimes,
    vf_otimes_ob, NatTransInstance, Side,
};

macro_rules! named_enum {
    ($ty:ident, $what:literal, { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $($ty::$variant => $name),* }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                $ty::ALL
                    .iter()
                    .copied()
                    .find(|x| x.as_str() == s)
                    .ok_or_else(|| Error::Config(format!(concat!("unknown ", $what, " {:?}"), s)))
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Category,
    Functor,
    NatTrans,
    Nerve,
    Semiring,
    Stabilization,
}

named_enum!(Suite, "suite", {
    Category => "category",
    Functor => "functor",
    NatTrans => "nat-trans",
    Nerve => "nerve",
    Semiring => "semiring",
    Stabilization => "stabilization",
});

/// Which category a suite runs on: `V_F`, the truncated `V_F^f`, or `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Vf,
    Vff,
    G,
}

named_enum!(Target, "target", { Vf => "vf", Vff => "vff", G => "g" });

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub m_max: usize,
    pub k_max: usize,
    /// Highest nerve level checked.
    pub level: usize,
    pub mutate: Option<MutationSite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { samples: 200, seed: 0, tol: Tolerance::default(), m_max: 4, k_max: 2, level: 4, mutate: None }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        self.tol.validate()?;
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.m_max == 0 || self.k_max == 0 {
            return Err(Error::Config("dimension caps must be at least 1".into()));
        }
        Ok(())
    }
}

fn applicable(suite: Suite, site: MutationSite) -> bool {
    use MutationSite::*;
    match suite {
        Suite::Category | Suite::Nerve => matches!(site, Compose | Identity),
        Suite::Functor => matches!(site, Compose | Identity | Functor),
        Suite::NatTrans | Suite::Semiring => true,
        Suite::Stabilization => false,
    }
}

/// Runs `suite` on `target` over the given field.
pub fn run_suite(suite: Suite, target: Target, field: Field, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    if let Some(site) = cfg.mutate {
        if !applicable(suite, site) {
            return Err(Error::Config(format!("mutation site {site} does not apply to the {suite} suite")));
        }
    }
    match field {
        Field::Real => run_typed::<f64>(suite, target, cfg),
        Field::Complex => run_typed::<crate::Complex<f64>>(suite, target, cfg),
    }
}

fn run_typed<T: Scalar>(suite: Suite, target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = match suite {
        Suite::Category => category_suite::<T>(target, cfg)?,
        Suite::Functor => functor_suite::<T>(target, cfg)?,
        Suite::NatTrans => nat_trans_suite::<T>(target, cfg)?,
        Suite::Nerve => nerve_suite::<T>(target, cfg)?,
        Suite::Semiring => semiring_suite::<T>(target, cfg)?,
        Suite::Stabilization => stabilization_suite::<T>(cfg)?,
    };
    report.title = format!("{suite} suite on {target} over {}: {}", T::FIELD, report.title);
    report.seed = cfg.seed;
    Ok(report)
}

/// Compose and identity sites corrupt the wrapped category; the others leave it intact.
fn wrap<C>(inner: C, cfg: &SuiteConfig) -> MutatedCategory<C> {
    MutatedCategory { inner, site: cfg.mutate.unwrap_or(MutationSite::Functor) }
}

fn vf<T: Scalar>(cfg: &SuiteConfig) -> MatrixCategory<T> {
    MatrixCategory::new(0, cfg.m_max)
}

fn fat<T: Scalar>(cfg: &SuiteConfig) -> FatCategory<T> {
    FatCategory::new(cfg.m_max, cfg.k_max, cfg.tol)
}

fn groupoid<T: Scalar>(cfg: &SuiteConfig) -> GrassmannGroupoid<T> {
    GrassmannGroupoid::new(cfg.m_max, cfg.k_max, cfg.tol)
}

/// Receiving category for sums and products of sampled objects.
const WIDE: usize = 1 << 12;

pub fn category_suite<T: Scalar>(target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let (n, seed, eps) = (cfg.samples, cfg.seed, cfg.tol.eps_eq);
    match target {
        Target::Vf => check_category_axioms(&wrap(vf::<T>(cfg), cfg), n, seed, eps),
        Target::Vff => check_category_axioms(&wrap(fat::<T>(cfg), cfg), n, seed, eps),
        Target::G => check_category_axioms(&wrap(groupoid::<T>(cfg), cfg), n, seed, eps),
    }
}

pub fn nerve_suite<T: Scalar>(target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let (lvl, n, seed, eps) = (cfg.level, cfg.samples, cfg.seed, cfg.tol.eps_eq);
    match target {
        Target::Vf => check_nerve(&wrap(vf::<T>(cfg), cfg), lvl, n, seed, eps),
        Target::Vff => check_nerve(&wrap(fat::<T>(cfg), cfg), lvl, n, seed, eps),
        Target::G => check_nerve(&wrap(groupoid::<T>(cfg), cfg), lvl, n, seed, eps),
    }
}

fn functor_into<C, D>(report: &mut Report, f: SampledFunctor<C, D>, cfg: &SuiteConfig) -> Result<()>
where
    C: SampledCategory + Clone + 'static,
    D: SampledCategory + Clone + 'static,
{
    let f = match cfg.mutate {
        Some(MutationSite::Functor) => {
            let d = f.target.clone();
            f.with_mutated_morphisms(move |h| d.corrupt(h))
        }
        _ => f,
    };
    let label = f.name.clone();
    report.absorb(&label, check_functor(&f, cfg.samples, cfg.seed, cfg.tol.eps_eq)?);
    Ok(())
}

fn nat_trans_into<C, D>(report: &mut Report, label: &str, inst: NatTransInstance<C, D>, cfg: &SuiteConfig) -> Result<()>
where
    C: SampledCategory + Clone + 'static,
    D: SampledCategory + Clone + 'static,
{
    let NatTransInstance { from, to, witness } = inst;
    let d = to.target.clone();
    let (to, witness) = match cfg.mutate {
        Some(MutationSite::Functor) => (to.with_mutated_morphisms(move |h| d.corrupt(h)), witness),
        Some(MutationSite::Component) => (to, witness.with_mutated_components(move |h| d.corrupt(h))),
        _ => (to, witness),
    };
    let rep = check_nat_trans(&from, &to, &witness, cfg.samples, cfg.seed, cfg.tol.eps_eq)?;
    report.absorb(label, rep.combined());
    Ok(())
}

fn identity_instance<C: SampledCategory + Clone + 'static>(cat: C) -> NatTransInstance<C, C> {
    let id = SampledFunctor::identity(cat);
    let witness = NatTransWitness::identity_of(&id);
    NatTransInstance { from: id.clone(), to: id, witness }
}

fn embed_vf_functor<T: Scalar>(cfg: &SuiteConfig) -> SampledFunctor<MatrixCategory<T>, MutatedCategory<FatCategory<T>>> {
    let n = cfg.m_max;
    SampledFunctor::new(
        "embed V_F → V_F^f",
        vf::<T>(cfg),
        wrap(fat::<T>(cfg), cfg),
        move |k: &usize| GrPoint::coordinate(n, *k),
        move |f: &VfMor<T>| embed_vf(f, n, n).expect("dimensions within the truncation"),
    )
}

fn embed_g_functor<T: Scalar>(cfg: &SuiteConfig) -> SampledFunctor<GrassmannGroupoid<T>, MutatedCategory<FatCategory<T>>> {
    SampledFunctor::new(
        "embed G → V_F^f",
        groupoid::<T>(cfg),
        wrap(fat::<T>(cfg), cfg),
        |x: &GrPoint<T>| x.clone(),
        |x: &GrPoint<T>| mor_identity(x),
    )
}

pub fn functor_suite<T: Scalar>(target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new("functor laws", cfg.seed);
    match target {
        Target::Vf => {
            functor_into(&mut report, SampledFunctor::identity(wrap(vf::<T>(cfg), cfg)), cfg)?;
            functor_into(&mut report, embed_vf_functor::<T>(cfg), cfg)?;
        }
        Target::Vff => {
            functor_into(&mut report, SampledFunctor::identity(wrap(fat::<T>(cfg), cfg)), cfg)?;
            let stab = SampledFunctor::new(
                "stabilization",
                fat::<T>(cfg),
                wrap(FatCategory::<T>::new(cfg.m_max + 1, cfg.k_max, cfg.tol), cfg),
                |x: &GrPoint<T>| x.padded(1),
                |f: &MorPoint<T>| mor_stabilize(f, 1, 1),
            );
            functor_into(&mut report, stab, cfg)?;
        }
        Target::G => {
            functor_into(&mut report, SampledFunctor::identity(wrap(groupoid::<T>(cfg), cfg)), cfg)?;
            functor_into(&mut report, embed_g_functor::<T>(cfg), cfg)?;
        }
    }
    Ok(report)
}

pub fn nat_trans_suite<T: Scalar>(target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new("natural transformations", cfg.seed);
    match target {
        Target::Vf => {
            nat_trans_into(&mut report, "identity", identity_instance(wrap(vf::<T>(cfg), cfg)), cfg)?;
            let e = embed_vf_functor::<T>(cfg);
            let inst = NatTransInstance { witness: NatTransWitness::identity_of(&e), from: e.clone(), to: e };
            nat_trans_into(&mut report, "identity of embed", inst, cfg)?;
        }
        Target::Vff => {
            nat_trans_into(&mut report, "identity", identity_instance(wrap(fat::<T>(cfg), cfg)), cfg)?;
            let big = wrap(FatCategory::<T>::new(WIDE, WIDE, cfg.tol), cfg);
            for side in [Side::Left, Side::Right] {
                nat_trans_into(&mut report, &format!("unit ({side:?})"), add_unit_fat(side, fat::<T>(cfg), big.clone()), cfg)?;
            }
        }
        Target::G => {
            nat_trans_into(&mut report, "identity", identity_instance(wrap(groupoid::<T>(cfg), cfg)), cfg)?;
            let e = embed_g_functor::<T>(cfg);
            let inst = NatTransInstance { witness: NatTransWitness::identity_of(&e), from: e.clone(), to: e };
            nat_trans_into(&mut report, "identity of embed", inst, cfg)?;
        }
    }
    Ok(report)
}

pub fn semiring_suite<T: Scalar>(target: Target, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new("semiring structure", cfg.seed);
    match target {
        Target::Vf => {
            let (small, big) = (vf::<T>(cfg), wrap(MatrixCategory::<T>::new(0, WIDE), cfg));
            functor_into(&mut report, oplus_functor_vf(pair(&small), big.clone()), cfg)?;
            functor_into(&mut report, otimes_functor_vf(pair(&small), big.clone()), cfg)?;
            nat_trans_into(&mut report, "swap", comm_vf(pair(&small), big.clone()), cfg)?;
            for side in [Side::Left, Side::Right] {
                nat_trans_into(&mut report, &format!("unit ({side:?})"), add_unit_vf(side, small.clone(), big.clone()), cfg)?;
                nat_trans_into(&mut report, &format!("distributivity ({side:?})"), distrib_vf(side, triple(&small), big.clone()), cfg)?;
            }
            report.checks.extend(vf_strictness::<T>(cfg).checks);
        }
        Target::Vff => {
            let (small, big) = (fat::<T>(cfg), wrap(FatCategory::<T>::new(WIDE, WIDE, cfg.tol), cfg));
            functor_into(&mut report, oplus_functor_fat(pair(&small), big.clone()), cfg)?;
            functor_into(&mut report, otimes_functor_fat(pair(&small), big.clone()), cfg)?;
            nat_trans_into(&mut report, "swap", comm_fat(pair(&small), big.clone()), cfg)?;
            let tiny = FatCategory::<T>::new(cfg.m_max.min(3), cfg.k_max.min(2), cfg.tol);
            for side in [Side::Left, Side::Right] {
                nat_trans_into(&mut report, &format!("unit ({side:?})"), add_unit_fat(side, small.clone(), big.clone()), cfg)?;
                nat_trans_into(&mut report, &format!("distributivity ({side:?})"), distrib_fat(side, triple(&tiny), big.clone()), cfg)?;
            }
            let (s, p) = comparison_witnesses(cfg.m_max, pair(&vf::<T>(cfg)), big);
            nat_trans_into(&mut report, "⊕ comparison", s, cfg)?;
            nat_trans_into(&mut report, "⊗ comparison", p, cfg)?;
        }
        Target::G => {
            let (small, big) = (groupoid::<T>(cfg), wrap(GrassmannGroupoid::<T>::new(WIDE, WIDE, cfg.tol), cfg));
            type P<T> = (GrPoint<T>, GrPoint<T>);
            let sum = SampledFunctor::new(
                "⊕",
                pair(&small),
                big.clone(),
                |(x, y): &P<T>| oplus_points_stabilized(x, y),
                |(x, y): &P<T>| oplus_points_stabilized(x, y),
            );
            let product = SampledFunctor::new(
                "⊗",
                pair(&small),
                big,
                |(x, y): &P<T>| otimes_points_stabilized(x, y),
                |(x, y): &P<T>| otimes_points_stabilized(x, y),
            );
            functor_into(&mut report, sum, cfg)?;
            functor_into(&mut report, product, cfg)?;
        }
    }
    Ok(report)
}

/// Strict associativity and units of `⊕`, `⊗` on `V_F`: exact on objects and
/// on `⊕` of matrices; `⊗` of matrices reassociates products of entries.
fn vf_strictness<T: Scalar>(cfg: &SuiteConfig) -> Report {
    let mut ob = Tally::new("⊕, ⊗ strictly associative and unital on objects", 0.0);
    let mut sum = Tally::new("⊕ strictly associative and unital on matrices", 0.0);
    let mut prod = Tally::new("⊗ associative and unital on matrices", cfg.tol.eps_eq);
    let gap = |a: &VfMor<T>, b: &VfMor<T>| {
        if a.mat().shape() != b.mat().shape() {
            f64::INFINITY
        } else {
            crate::linalg::max_abs_diff(a.mat(), b.mat())
        }
    };
    let cat = vf::<T>(cfg);
    for i in 0..cfg.samples as u64 {
        let mut rng = sample_rng(cfg.seed, 7, i);
        let d: Vec<usize> = (0..3).map(|_| rng.random_range(0..=cfg.m_max)).collect();
        ob.record(
            (vf_oplus_ob(vf_oplus_ob(d[0], d[1]), d[2]) != vf_oplus_ob(d[0], vf_oplus_ob(d[1], d[2]))
                || vf_otimes_ob(vf_otimes_ob(d[0], d[1]), d[2]) != vf_otimes_ob(d[0], vf_otimes_ob(d[1], d[2]))
                || vf_oplus_ob(0, d[0]) != d[0]
                || vf_otimes_ob(1, d[0]) != d[0]) as u8 as f64,
            || json!({ "dims": d }),
        );
        let m: Vec<VfMor<T>> = d.iter().map(|&x| cat.sample_morphism_from(&x, &mut rng).expect("matrix sampler")).collect();
        let wit = || json!({ "a": cat.mor_json(&m[0]), "b": cat.mor_json(&m[1]), "c": cat.mor_json(&m[2]) });
        let zero = VfMor::new(crate::Mat::zeros(0, 0));
        let one = VfMor::new(crate::Mat::identity(1, 1));
        let assoc_sum = gap(&vf_oplus(&vf_oplus(&m[0], &m[1]), &m[2]), &vf_oplus(&m[0], &vf_oplus(&m[1], &m[2])));
        let unit_sum = gap(&vf_oplus(&zero, &m[0]), &m[0]).max(gap(&vf_oplus(&m[0], &zero), &m[0]));
        sum.record(assoc_sum.max(unit_sum), wit);
        let assoc_prod = gap(&vf_otimes(&vf_otimes(&m[0], &m[1]), &m[2]), &vf_otimes(&m[0], &vf_otimes(&m[1], &m[2])));
        let unit_prod = gap(&vf_otimes(&one, &m[0]), &m[0]).max(gap(&vf_otimes(&m[0], &one), &m[0]));
        prod.record(assoc_prod.max(unit_prod), wit);
    }
    let mut r = Report::new("strictness", cfg.seed);
    r.checks.extend([ob.finish(), sum.finish(), prod.finish()]);
    r
}

/// Exact commutation of `⊕`, `⊗` and `V_F → V_F^f` with zero-padding.
pub fn stabilization_suite<T: Scalar>(cfg: &SuiteConfig) -> Result<Report> {
    let exact = |name: &str| Tally::new(name, 0.0);
    let mut pts_sum = exact("θ-sum of padded points = padded θ-sum");
    let mut pts_prod = exact("κ-product of padded points = padded κ-product");
    let mut mor_sum = exact("θ-sum of padded maps = padded θ-sum");
    let mut mor_prod = exact("κ-product of padded maps = padded κ-product");
    let mut embed = exact("embedding then padding = embedding into the larger truncation");
    let miss = |ok: bool| if ok { 0.0 } else { f64::INFINITY };

    for i in 0..cfg.samples as u64 {
        let mut rng = sample_rng(cfg.seed, 0, i);
        let n = rng.random_range(1..=cfg.m_max);
        let p = rng.random_range(1..=cfg.m_max);
        let (e, ep) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let point = |m: usize, rng: &mut rand_chacha::ChaCha8Rng| {
            let k = rng.random_range(0..=m.min(cfg.k_max));
            GrPoint::<T>::random(m, k, rng)
        };
        let (x, y) = (point(n, &mut rng), point(n, &mut rng));
        let (u, v) = (point(p, &mut rng), point(p, &mut rng));
        let wit = || json!({ "n": n, "p": p, "pad": [e, ep] });
        let grown = |m: usize, e: usize| (m + e) * (m + e) - m * m;

        pts_sum.record(miss(oplus_points(&x.padded(e), &y.padded(e))? == oplus_points(&x, &y)?.padded(2 * e)), wit);
        pts_prod.record(miss(otimes_points(&x.padded(e), &y.padded(e))? == otimes_points(&x, &y)?.padded(grown(n, e))), wit);

        let f = MorPoint::random(x.clone(), u, &mut rng);
        let g = MorPoint::random(y.clone(), v, &mut rng);
        let lhs = oplus_mor(&mor_stabilize(&f, e, ep), &mor_stabilize(&g, e, ep))?;
        mor_sum.record(miss(lhs == mor_stabilize(&oplus_mor(&f, &g)?, 2 * e, 2 * ep)), wit);
        let lhs = otimes_mor(&mor_stabilize(&f, e, ep), &mor_stabilize(&g, e, ep))?;
        mor_prod.record(miss(lhs == mor_stabilize(&otimes_mor(&f, &g)?, grown(n, e), grown(p, ep))), wit);

        let a: VfMor<T> = vf::<T>(cfg).sample_morphism_from(&rng.random_range(0..=n), &mut rng).expect("matrix sampler");
        let (s, t) = (a.source_dim(), a.target_dim());
        let small = embed_vf(&a, n.max(s), cfg.m_max.max(t))?;
        let large = embed_vf(&a, n.max(s) + e, cfg.m_max.max(t) + ep)?;
        embed.record(miss(mor_stabilize(&small, e, ep) == large), wit);
    }
    let mut report = Report::new("stabilization squares", cfg.seed);
    report.checks.extend([pts_sum, pts_prod, mor_sum, mor_prod, embed].map(Tally::finish));
    Ok(report)
}

//! `⊕` and `⊗` as sampled functors, and the witnesses packaged with the two
//! functors they relate.
//!
//! Constructors are generic over the categories so that mutated categories
//! can be substituted; any category with the right object and morphism types
//! will do.

use super::witness::{
    comparison_oplus, comparison_otimes, distrib_objects, vf_swap, witness_add_unit, witness_comm,
    witness_distrib, witness_distrib_fat, zero_mor, Side,
};
use super::{
    oplus_mor, oplus_mor_stabilized, oplus_points, oplus_points_stabilized, otimes_mor, otimes_mor_stabilized,
    otimes_points_stabilized, pad_to, vf_oplus, vf_otimes,
};
use crate::categories::ProductCategory;
use crate::grassmann::GrPoint;
use crate::internal_cat::{NatTransWitness, SampledCategory, SampledFunctor};
use crate::linalg::Scalar;
use crate::mor::{embed_vf, mor_stabilize, vf_identity, MorPoint, VfMor};

/// Categories whose objects are subspaces and morphisms are [`MorPoint`]s.
pub trait FatLike<T: Scalar>: SampledCategory<Ob = GrPoint<T>, Mor = MorPoint<T>> + Clone + 'static {}
impl<T: Scalar, C: SampledCategory<Ob = GrPoint<T>, Mor = MorPoint<T>> + Clone + 'static> FatLike<T> for C {}

/// Categories whose objects are dimensions and morphisms are matrices.
pub trait VfLike<T: Scalar>: SampledCategory<Ob = usize, Mor = VfMor<T>> + Clone + 'static {}
impl<T: Scalar, C: SampledCategory<Ob = usize, Mor = VfMor<T>> + Clone + 'static> VfLike<T> for C {}

pub type Pair<C> = ProductCategory<C, C>;
pub type Triple<C> = ProductCategory<C, ProductCategory<C, C>>;

pub fn pair<C: Clone>(c: &C) -> Pair<C> {
    ProductCategory::new(c.clone(), c.clone())
}

pub fn triple<C: Clone>(c: &C) -> Triple<C> {
    ProductCategory::new(c.clone(), pair(c))
}

/// Two parallel functors and a candidate transformation between them.
pub struct NatTransInstance<C: SampledCategory, D: SampledCategory> {
    pub from: SampledFunctor<C, D>,
    pub to: SampledFunctor<C, D>,
    pub witness: NatTransWitness<C, D>,
}

pub fn oplus_functor_vf<T: Scalar, C: VfLike<T>, D: VfLike<T>>(src: Pair<C>, dst: D) -> SampledFunctor<Pair<C>, D> {
    SampledFunctor::new("⊕", src, dst, |(n, m): &(usize, usize)| n + m, |(a, b): &(VfMor<T>, VfMor<T>)| vf_oplus(a, b))
}

pub fn otimes_functor_vf<T: Scalar, C: VfLike<T>, D: VfLike<T>>(src: Pair<C>, dst: D) -> SampledFunctor<Pair<C>, D> {
    SampledFunctor::new("⊗", src, dst, |(n, m): &(usize, usize)| n * m, |(a, b): &(VfMor<T>, VfMor<T>)| vf_otimes(a, b))
}

/// `⊕` on `V_F^f`, zero-padding both arguments to the larger ambient space.
pub fn oplus_functor_fat<T: Scalar, C: FatLike<T>, D: FatLike<T>>(src: Pair<C>, dst: D) -> SampledFunctor<Pair<C>, D> {
    SampledFunctor::new(
        "⊕",
        src,
        dst,
        |(x, y): &(GrPoint<T>, GrPoint<T>)| oplus_points_stabilized(x, y),
        |(f, g): &(MorPoint<T>, MorPoint<T>)| oplus_mor_stabilized(f, g),
    )
}

pub fn otimes_functor_fat<T: Scalar, C: FatLike<T>, D: FatLike<T>>(src: Pair<C>, dst: D) -> SampledFunctor<Pair<C>, D> {
    SampledFunctor::new(
        "⊗",
        src,
        dst,
        |(x, y): &(GrPoint<T>, GrPoint<T>)| otimes_points_stabilized(x, y),
        |(f, g): &(MorPoint<T>, MorPoint<T>)| otimes_mor_stabilized(f, g),
    )
}

/// `(n, m) ↦ n ⊕ m ⇒ m ⊕ n` via the block swap.
pub fn comm_vf<T: Scalar, C: VfLike<T>, D: VfLike<T>>(src: Pair<C>, dst: D) -> NatTransInstance<Pair<C>, D> {
    NatTransInstance {
        from: oplus_functor_vf(src.clone(), dst.clone()),
        to: SampledFunctor::new(
            "⊕∘swap",
            src,
            dst,
            |(n, m): &(usize, usize)| n + m,
            |(a, b): &(VfMor<T>, VfMor<T>)| vf_oplus(b, a),
        ),
        witness: NatTransWitness::new("swap", |(n, m): &(usize, usize)| vf_swap::<T>(*n, *m)),
    }
}

fn distrib_vf_ob(side: Side, (x, (y, z)): &(usize, (usize, usize))) -> usize {
    match side {
        Side::Left => x * (y + z),
        Side::Right => (x + y) * z,
    }
}

/// Distributivity on `V_F`; the triple `(x, (y, z))` is read as `x ⊗ (y ⊕ z)`
/// (left) or `(x ⊕ y) ⊗ z` (right).
pub fn distrib_vf<T: Scalar, C: VfLike<T>, D: VfLike<T>>(
    side: Side,
    src: Triple<C>,
    dst: D,
) -> NatTransInstance<Triple<C>, D> {
    type M<T> = (VfMor<T>, (VfMor<T>, VfMor<T>));
    let from = SampledFunctor::new(
        "product of sum",
        src.clone(),
        dst.clone(),
        move |x: &(usize, (usize, usize))| distrib_vf_ob(side, x),
        move |(a, (b, c)): &M<T>| match side {
            Side::Left => vf_otimes(a, &vf_oplus(b, c)),
            Side::Right => vf_otimes(&vf_oplus(a, b), c),
        },
    );
    let to = SampledFunctor::new(
        "sum of products",
        src,
        dst,
        move |x: &(usize, (usize, usize))| distrib_vf_ob(side, x),
        move |(a, (b, c)): &M<T>| match side {
            Side::Left => vf_oplus(&vf_otimes(a, b), &vf_otimes(a, c)),
            Side::Right => vf_oplus(&vf_otimes(a, c), &vf_otimes(b, c)),
        },
    );
    let witness = NatTransWitness::new("distributivity", move |&(x, (y, z)): &(usize, (usize, usize))| {
        witness_distrib::<T>(x, y, z, side)
    });
    NatTransInstance { from, to, witness }
}

/// `0 ⊕ F^n = F^n` strictly, so the unit transformation on `V_F` is the identity.
pub fn add_unit_vf<T: Scalar, C: VfLike<T>, D: VfLike<T>>(side: Side, src: C, dst: D) -> NatTransInstance<C, D> {
    let zero = VfMor::<T>::new(crate::Mat::zeros(0, 0));
    let z2 = zero.clone();
    NatTransInstance {
        from: SampledFunctor::new("inclusion", src.clone(), dst.clone(), |n: &usize| *n, |a: &VfMor<T>| a.clone()),
        to: SampledFunctor::new("unit sum", src, dst, |n: &usize| *n, move |a: &VfMor<T>| match side {
            Side::Left => vf_oplus(&z2, a),
            Side::Right => vf_oplus(a, &z2),
        }),
        witness: NatTransWitness::new("unit", |n: &usize| vf_identity::<T>(*n)),
    }
}

/// Stabilization `X ↦ X ⊂ F^{2n}` against `X ↦ θ_*(0 ⊕ X)` (or `θ_*(X ⊕ 0)`).
pub fn add_unit_fat<T: Scalar, C: FatLike<T>, D: FatLike<T>>(side: Side, src: C, dst: D) -> NatTransInstance<C, D> {
    let from = SampledFunctor::new(
        "stabilization",
        src.clone(),
        dst.clone(),
        |x: &GrPoint<T>| x.padded(x.ambient_dim()),
        |h: &MorPoint<T>| mor_stabilize(h, h.src().ambient_dim(), h.dst().ambient_dim()),
    );
    let to = SampledFunctor::new(
        "unit sum",
        src,
        dst,
        move |x: &GrPoint<T>| {
            let zero = GrPoint::zero(x.ambient_dim());
            match side {
                Side::Left => oplus_points(&zero, x),
                Side::Right => oplus_points(x, &zero),
            }
            .expect("equal ambient")
        },
        move |h: &MorPoint<T>| {
            let z = zero_mor(h.src().ambient_dim(), h.dst().ambient_dim());
            match side {
                Side::Left => oplus_mor(&z, h),
                Side::Right => oplus_mor(h, &z),
            }
            .expect("equal ambient")
        },
    );
    let witness = NatTransWitness::new("unit", move |x: &GrPoint<T>| witness_add_unit(x, side));
    NatTransInstance { from, to, witness }
}

/// `θ_*(X ⊕ Y) ⇒ θ_*(Y ⊕ X)` on `V_F^f`, after padding to a common ambient.
pub fn comm_fat<T: Scalar, C: FatLike<T>, D: FatLike<T>>(src: Pair<C>, dst: D) -> NatTransInstance<Pair<C>, D> {
    NatTransInstance {
        from: oplus_functor_fat(src.clone(), dst.clone()),
        to: SampledFunctor::new(
            "⊕∘swap",
            src,
            dst,
            |(x, y): &(GrPoint<T>, GrPoint<T>)| oplus_points_stabilized(y, x),
            |(f, g): &(MorPoint<T>, MorPoint<T>)| oplus_mor_stabilized(g, f),
        ),
        witness: NatTransWitness::new("swap", |(x, y): &(GrPoint<T>, GrPoint<T>)| {
            let n = x.ambient_dim().max(y.ambient_dim());
            witness_comm(&pad_to(x, n), &pad_to(y, n)).expect("padded to a common ambient")
        }),
    }
}

type FatTriple<T> = (GrPoint<T>, (GrPoint<T>, GrPoint<T>));
type FatMorTriple<T> = (MorPoint<T>, (MorPoint<T>, MorPoint<T>));

fn common3<T: Scalar>((x, (y, z)): &FatTriple<T>) -> (GrPoint<T>, GrPoint<T>, GrPoint<T>) {
    let n = x.ambient_dim().max(y.ambient_dim()).max(z.ambient_dim());
    (pad_to(x, n), pad_to(y, n), pad_to(z, n))
}

fn common3_mor<T: Scalar>((a, (b, c)): &FatMorTriple<T>) -> (MorPoint<T>, MorPoint<T>, MorPoint<T>) {
    let m = a.src().ambient_dim().max(b.src().ambient_dim()).max(c.src().ambient_dim());
    let n = a.dst().ambient_dim().max(b.dst().ambient_dim()).max(c.dst().ambient_dim());
    let p = |f: &MorPoint<T>| mor_stabilize(f, m - f.src().ambient_dim(), n - f.dst().ambient_dim());
    (p(a), p(b), p(c))
}

fn pad_mor_double<T: Scalar>(f: &MorPoint<T>) -> MorPoint<T> {
    mor_stabilize(f, f.src().ambient_dim(), f.dst().ambient_dim())
}

/// Distributivity on `V_F^f` with all three arguments padded to a common `F^N`.
pub fn distrib_fat<T: Scalar, C: FatLike<T>, D: FatLike<T>>(
    side: Side,
    src: Triple<C>,
    dst: D,
) -> NatTransInstance<Triple<C>, D> {
    let from = SampledFunctor::new(
        "product of sum",
        src.clone(),
        dst.clone(),
        move |t: &FatTriple<T>| {
            let (x, y, z) = common3(t);
            distrib_objects(&x, &y, &z, side).expect("common ambient").0
        },
        move |h: &FatMorTriple<T>| {
            let (a, b, c) = common3_mor(h);
            match side {
                Side::Left => otimes_mor(&pad_mor_double(&a), &oplus_mor(&b, &c).expect("common ambient")),
                Side::Right => otimes_mor(&oplus_mor(&a, &b).expect("common ambient"), &pad_mor_double(&c)),
            }
            .expect("common ambient")
        },
    );
    let to = SampledFunctor::new(
        "sum of products",
        src,
        dst,
        move |t: &FatTriple<T>| {
            let (x, y, z) = common3(t);
            distrib_objects(&x, &y, &z, side).expect("common ambient").1
        },
        move |h: &FatMorTriple<T>| {
            let (a, b, c) = common3_mor(h);
            let (l, r) = match side {
                Side::Left => (otimes_mor(&a, &b), otimes_mor(&a, &c)),
                Side::Right => (otimes_mor(&a, &c), otimes_mor(&b, &c)),
            };
            oplus_mor(&l.expect("common ambient"), &r.expect("common ambient")).expect("common ambient")
        },
    );
    let witness = NatTransWitness::new("distributivity", move |t: &FatTriple<T>| {
        let (x, y, z) = common3(t);
        witness_distrib_fat(&x, &y, &z, side).expect("common ambient")
    });
    NatTransInstance { from, to, witness }
}

/// The `⊕` comparison square between `V_F` and the truncation at `F^n`:
/// `θ_*(F^k ⊕ F^l) ⇒ F^{k+l}` inside `F^{2n}`.
pub fn comparison_oplus_instance<T: Scalar, C: VfLike<T>, D: FatLike<T>>(
    n: usize,
    src: Pair<C>,
    dst: D,
) -> NatTransInstance<Pair<C>, D> {
    let from = SampledFunctor::new(
        "⊕∘(embed×embed)",
        src.clone(),
        dst.clone(),
        move |&(k, l): &(usize, usize)| {
            oplus_points(&GrPoint::coordinate(n, k), &GrPoint::coordinate(n, l)).expect("same truncation")
        },
        move |(a, b): &(VfMor<T>, VfMor<T>)| {
            let (a, b) = (embed_vf(a, n, n).expect("within truncation"), embed_vf(b, n, n).expect("within truncation"));
            oplus_mor(&a, &b).expect("same truncation")
        },
    );
    let to = SampledFunctor::new(
        "embed∘⊕",
        src,
        dst,
        move |&(k, l): &(usize, usize)| GrPoint::coordinate(2 * n, k + l),
        move |(a, b): &(VfMor<T>, VfMor<T>)| embed_vf(&vf_oplus(a, b), 2 * n, 2 * n).expect("within truncation"),
    );
    let witness = NatTransWitness::new("⊕ comparison", move |&(k, l): &(usize, usize)| {
        comparison_oplus(k, l, n).expect("within truncation")
    });
    NatTransInstance { from, to, witness }
}

/// The `⊗` comparison square: `κ_*(F^k ⊗ F^l) ⇒ F^{kl}` inside `F^{n²}`.
pub fn comparison_otimes_instance<T: Scalar, C: VfLike<T>, D: FatLike<T>>(
    n: usize,
    src: Pair<C>,
    dst: D,
) -> NatTransInstance<Pair<C>, D> {
    let from = SampledFunctor::new(
        "⊗∘(embed×embed)",
        src.clone(),
        dst.clone(),
        move |&(k, l): &(usize, usize)| {
            super::otimes_points(&GrPoint::coordinate(n, k), &GrPoint::coordinate(n, l)).expect("same truncation")
        },
        move |(a, b): &(VfMor<T>, VfMor<T>)| {
            let (a, b) = (embed_vf(a, n, n).expect("within truncation"), embed_vf(b, n, n).expect("within truncation"));
            otimes_mor(&a, &b).expect("same truncation")
        },
    );
    let to = SampledFunctor::new(
        "embed∘⊗",
        src,
        dst,
        move |&(k, l): &(usize, usize)| GrPoint::coordinate(n * n, k * l),
        move |(a, b): &(VfMor<T>, VfMor<T>)| embed_vf(&vf_otimes(a, b), n * n, n * n).expect("within truncation"),
    );
    let witness = NatTransWitness::new("⊗ comparison", move |&(k, l): &(usize, usize)| {
        comparison_otimes(k, l, n).expect("within truncation")
    });
    NatTransInstance { from, to, witness }
}

/// Both comparison transformations for the truncation at `F^n`.
#[allow(clippy::type_complexity)]
pub fn comparison_witnesses<T: Scalar, C: VfLike<T>, D: FatLike<T>>(
    n: usize,
    src: Pair<C>,
    dst: D,
) -> (NatTransInstance<Pair<C>, D>, NatTransInstance<Pair<C>, D>) {
    (comparison_oplus_instance(n, src.clone(), dst.clone()), comparison_otimes_instance(n, src, dst))
}

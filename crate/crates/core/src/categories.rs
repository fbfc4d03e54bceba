//! The three shipped sampled categories: the matrix category `V_F`, finite
//! truncations of the fat category `V_F^f`, and the Grassmannian groupoid `G`,
//! together with binary products of categories.

use std::marker::PhantomData;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::grassmann::GrPoint;
use crate::internal_cat::SampledCategory;
use crate::linalg::{matrix_to_json, max_abs_diff, pad, random_invertible, random_matrix, Mat, Scalar, Tolerance};
use crate::mor::{mor_compose, mor_identity, vf_compose, vf_identity, MorPoint, VfMor};
use crate::serial::{grpoint_to_json, morpoint_to_json};

fn field_tag<T: Scalar>() -> &'static str {
    match T::FIELD {
        crate::Field::Real => "R",
        crate::Field::Complex => "C",
    }
}

/// `V_F` restricted to objects `F^n` with `min_dim <= n <= max_dim`.
#[derive(Debug, Clone)]
pub struct MatrixCategory<T> {
    pub min_dim: usize,
    pub max_dim: usize,
    _field: PhantomData<T>,
}

impl<T: Scalar> MatrixCategory<T> {
    pub fn new(min_dim: usize, max_dim: usize) -> Self {
        assert!(min_dim <= max_dim, "empty dimension range");
        MatrixCategory { min_dim, max_dim, _field: PhantomData }
    }
}

impl<T: Scalar> SampledCategory for MatrixCategory<T> {
    type Ob = usize;
    type Mor = VfMor<T>;

    fn name(&self) -> String {
        format!("V_{}[{}..{}]", field_tag::<T>(), self.min_dim, self.max_dim)
    }

    fn source(&self, f: &VfMor<T>) -> usize {
        f.source_dim()
    }

    fn target(&self, f: &VfMor<T>) -> usize {
        f.target_dim()
    }

    fn identity(&self, x: &usize) -> VfMor<T> {
        vf_identity(*x)
    }

    fn compose(&self, f: &VfMor<T>, g: &VfMor<T>) -> Option<VfMor<T>> {
        vf_compose(f, g).ok()
    }

    fn ob_distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn mor_distance(&self, f: &VfMor<T>, g: &VfMor<T>) -> f64 {
        max_abs_diff(f.mat(), g.mat())
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<usize> {
        Some(rng.random_range(self.min_dim..=self.max_dim))
    }

    fn sample_morphism_from(&self, x: &usize, rng: &mut ChaCha8Rng) -> Option<VfMor<T>> {
        let m = rng.random_range(self.min_dim..=self.max_dim);
        Some(VfMor::new(random_matrix(m, *x, rng)))
    }

    fn corrupt(&self, f: &VfMor<T>) -> VfMor<T> {
        let mut m = f.mat().clone();
        if m.is_empty() {
            return VfMor::new(pad(&m, 1, 0));
        }
        m[(0, 0)] += T::one();
        VfMor::new(m)
    }

    fn ob_json(&self, x: &usize) -> Value {
        json!(x)
    }

    fn mor_json(&self, f: &VfMor<T>) -> Value {
        json!({ "source_dim": f.source_dim(), "target_dim": f.target_dim(), "matrix": matrix_to_json(f.mat()) })
    }
}

/// Truncation of `V_F^f`: subspaces of `F^m` with `m <= m_max` and dimension `<= k_max`.
#[derive(Debug, Clone)]
pub struct FatCategory<T> {
    pub m_max: usize,
    pub k_max: usize,
    /// Sample only isomorphisms (the core groupoid of the truncation).
    pub iso_only: bool,
    pub tol: Tolerance,
    _field: PhantomData<T>,
}

impl<T: Scalar> FatCategory<T> {
    pub fn new(m_max: usize, k_max: usize, tol: Tolerance) -> Self {
        assert!(m_max >= 1, "m_max must be positive");
        FatCategory { m_max, k_max, iso_only: false, tol, _field: PhantomData }
    }

    pub fn isomorphisms(mut self) -> Self {
        self.iso_only = true;
        self
    }

    fn sample_dim(&self, m: usize, rng: &mut ChaCha8Rng) -> usize {
        rng.random_range(0..=self.k_max.min(m))
    }
}

impl<T: Scalar> SampledCategory for FatCategory<T> {
    type Ob = GrPoint<T>;
    type Mor = MorPoint<T>;

    fn name(&self) -> String {
        let iso = if self.iso_only { ",iso" } else { "" };
        format!("V_{}^f[m<={},k<={}{iso}]", field_tag::<T>(), self.m_max, self.k_max)
    }

    fn source(&self, f: &MorPoint<T>) -> GrPoint<T> {
        f.src().clone()
    }

    fn target(&self, f: &MorPoint<T>) -> GrPoint<T> {
        f.dst().clone()
    }

    fn identity(&self, x: &GrPoint<T>) -> MorPoint<T> {
        mor_identity(x)
    }

    fn compose(&self, f: &MorPoint<T>, g: &MorPoint<T>) -> Option<MorPoint<T>> {
        mor_compose(f, g, &self.tol).ok()
    }

    fn ob_distance(&self, a: &GrPoint<T>, b: &GrPoint<T>) -> f64 {
        a.distance(b)
    }

    fn mor_distance(&self, f: &MorPoint<T>, g: &MorPoint<T>) -> f64 {
        f.distance(g)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<GrPoint<T>> {
        let m = rng.random_range(1..=self.m_max);
        let k = self.sample_dim(m, rng);
        Some(GrPoint::random(m, k, rng))
    }

    fn sample_morphism_from(&self, x: &GrPoint<T>, rng: &mut ChaCha8Rng) -> Option<MorPoint<T>> {
        let k = x.sub_dim();
        if self.iso_only {
            if k > self.m_max {
                return None;
            }
            let n = rng.random_range(k.max(1)..=self.m_max);
            let dst = GrPoint::random(n, k, rng);
            let t = random_invertible(k, rng);
            return MorPoint::from_frames(x.clone(), dst, &t).ok();
        }
        let n = rng.random_range(1..=self.m_max);
        let l = self.sample_dim(n, rng);
        Some(MorPoint::random(x.clone(), GrPoint::random(n, l, rng), rng))
    }

    /// Adds `y·1·xᴴ` to the map, or retargets when a side is zero-dimensional.
    fn corrupt(&self, f: &MorPoint<T>) -> MorPoint<T> {
        let (x, y) = (f.src(), f.dst());
        if x.sub_dim() == 0 || y.sub_dim() == 0 {
            let dst = y.padded(1);
            let map = pad(f.map(), 1, 0);
            return MorPoint::from_parts_unchecked(x.clone(), dst, map);
        }
        let ones = Mat::from_element(y.sub_dim(), x.sub_dim(), T::one());
        let map = f.map() + y.frame() * ones * x.frame().adjoint();
        MorPoint::from_parts_unchecked(x.clone(), y.clone(), map)
    }

    fn ob_json(&self, x: &GrPoint<T>) -> Value {
        grpoint_to_json(x)
    }

    fn mor_json(&self, f: &MorPoint<T>) -> Value {
        morpoint_to_json(f)
    }
}

/// The groupoid `G = ∐ Gr_k(F^m)` with only identity morphisms.
///
/// A morphism is represented by the point it is the identity of.
#[derive(Debug, Clone)]
pub struct GrassmannGroupoid<T> {
    pub m_max: usize,
    pub k_max: usize,
    pub tol: Tolerance,
    _field: PhantomData<T>,
}

impl<T: Scalar> GrassmannGroupoid<T> {
    pub fn new(m_max: usize, k_max: usize, tol: Tolerance) -> Self {
        assert!(m_max >= 1, "m_max must be positive");
        GrassmannGroupoid { m_max, k_max, tol, _field: PhantomData }
    }
}

impl<T: Scalar> SampledCategory for GrassmannGroupoid<T> {
    type Ob = GrPoint<T>;
    type Mor = GrPoint<T>;

    fn name(&self) -> String {
        format!("G_{}[m<={},k<={}]", field_tag::<T>(), self.m_max, self.k_max)
    }

    fn source(&self, f: &GrPoint<T>) -> GrPoint<T> {
        f.clone()
    }

    fn target(&self, f: &GrPoint<T>) -> GrPoint<T> {
        f.clone()
    }

    fn identity(&self, x: &GrPoint<T>) -> GrPoint<T> {
        x.clone()
    }

    fn compose(&self, f: &GrPoint<T>, g: &GrPoint<T>) -> Option<GrPoint<T>> {
        (f.distance(g) <= self.tol.eps_eq).then(|| f.clone())
    }

    fn ob_distance(&self, a: &GrPoint<T>, b: &GrPoint<T>) -> f64 {
        a.distance(b)
    }

    fn mor_distance(&self, f: &GrPoint<T>, g: &GrPoint<T>) -> f64 {
        f.distance(g)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<GrPoint<T>> {
        let m = rng.random_range(1..=self.m_max);
        let k = rng.random_range(0..=self.k_max.min(m));
        Some(GrPoint::random(m, k, rng))
    }

    fn sample_morphism_from(&self, x: &GrPoint<T>, _rng: &mut ChaCha8Rng) -> Option<GrPoint<T>> {
        Some(x.clone())
    }

    fn corrupt(&self, f: &GrPoint<T>) -> GrPoint<T> {
        f.padded(1)
    }

    fn ob_json(&self, x: &GrPoint<T>) -> Value {
        grpoint_to_json(x)
    }

    fn mor_json(&self, f: &GrPoint<T>) -> Value {
        grpoint_to_json(f)
    }
}

/// `A × B`; distances are the maximum over the two factors.
#[derive(Debug, Clone)]
pub struct ProductCategory<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> ProductCategory<A, B> {
    pub fn new(left: A, right: B) -> Self {
        ProductCategory { left, right }
    }
}

impl<A: SampledCategory, B: SampledCategory> SampledCategory for ProductCategory<A, B> {
    type Ob = (A::Ob, B::Ob);
    type Mor = (A::Mor, B::Mor);

    fn name(&self) -> String {
        format!("({})×({})", self.left.name(), self.right.name())
    }

    fn source(&self, f: &Self::Mor) -> Self::Ob {
        (self.left.source(&f.0), self.right.source(&f.1))
    }

    fn target(&self, f: &Self::Mor) -> Self::Ob {
        (self.left.target(&f.0), self.right.target(&f.1))
    }

    fn identity(&self, x: &Self::Ob) -> Self::Mor {
        (self.left.identity(&x.0), self.right.identity(&x.1))
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        Some((self.left.compose(&f.0, &g.0)?, self.right.compose(&f.1, &g.1)?))
    }

    fn ob_distance(&self, a: &Self::Ob, b: &Self::Ob) -> f64 {
        self.left.ob_distance(&a.0, &b.0).max(self.right.ob_distance(&a.1, &b.1))
    }

    fn mor_distance(&self, f: &Self::Mor, g: &Self::Mor) -> f64 {
        self.left.mor_distance(&f.0, &g.0).max(self.right.mor_distance(&f.1, &g.1))
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<Self::Ob> {
        Some((self.left.sample_object(rng)?, self.right.sample_object(rng)?))
    }

    fn sample_morphism_from(&self, x: &Self::Ob, rng: &mut ChaCha8Rng) -> Option<Self::Mor> {
        Some((self.left.sample_morphism_from(&x.0, rng)?, self.right.sample_morphism_from(&x.1, rng)?))
    }

    fn corrupt(&self, f: &Self::Mor) -> Self::Mor {
        (self.left.corrupt(&f.0), f.1.clone())
    }

    fn ob_json(&self, x: &Self::Ob) -> Value {
        json!([self.left.ob_json(&x.0), self.right.ob_json(&x.1)])
    }

    fn mor_json(&self, f: &Self::Mor) -> Value {
        json!([self.left.mor_json(&f.0), self.right.mor_json(&f.1)])
    }
}

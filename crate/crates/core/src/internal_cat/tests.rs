use super::*;
use crate::categories::{FatCategory, GrassmannGroupoid, MatrixCategory};
use crate::linalg::{scaled, Complex, Tolerance};
use crate::mor::VfMor;

type C = Complex<f64>;

fn vf() -> MatrixCategory<f64> {
    MatrixCategory::new(1, 4)
}

fn id_vf() -> SampledFunctor<MatrixCategory<f64>, MatrixCategory<f64>> {
    SampledFunctor::identity(vf())
}

#[test]
fn identity_transformation_passes_exactly() {
    let f = id_vf();
    let phi = NatTransWitness::identity_of(&f);
    let r = check_nat_trans(&f, &f, &phi, 200, 1, 1e-8).unwrap();
    assert!(r.passed(), "{}", r.combined());
    assert_eq!(r.definition.max_residual(), 0.0);
    assert_eq!(r.interval.max_residual(), 0.0);
}

#[test]
fn scalar_multiple_of_identity_is_natural() {
    let f = id_vf();
    let phi = NatTransWitness::new("2·id", |n: &usize| VfMor::new(scaled(&crate::Mat::identity(*n, *n), 2.0)));
    let r = check_nat_trans(&f, &f, &phi, 200, 2, 1e-8).unwrap();
    assert!(r.passed(), "{}", r.combined());
}

#[test]
fn object_dependent_components_break_naturality_in_both_forms() {
    let f = id_vf();
    let phi = NatTransWitness::new("n·id", |n: &usize| VfMor::new(scaled(&crate::Mat::identity(*n, *n), *n as f64)));
    let r = check_nat_trans(&f, &f, &phi, 200, 3, 1e-8).unwrap();
    assert!(!r.definition.passed());
    assert!(!r.interval.passed());
    assert!(r.formulations_agree());
}

#[test]
fn mistyped_components_fail_in_both_forms() {
    let f = id_vf();
    let phi = NatTransWitness::new("wrong shape", |n: &usize| VfMor::new(crate::Mat::zeros(*n + 1, *n)));
    let r = check_nat_trans(&f, &f, &phi, 50, 4, 1e-8).unwrap();
    assert!(!r.definition.check("t(φ(x)) = G(x)").unwrap().passed);
    assert!(!r.interval.passed());
}

#[test]
fn functors_with_different_categories_are_rejected() {
    let f = id_vf();
    let g = SampledFunctor::identity(MatrixCategory::<f64>::new(1, 3));
    let phi = NatTransWitness::identity_of(&f);
    assert!(matches!(check_nat_trans(&f, &g, &phi, 10, 0, 1e-8), Err(Error::TypingMismatch(_))));
}

#[test]
fn exhausted_sampler_is_reported() {
    #[derive(Clone)]
    struct Empty;
    impl SampledCategory for Empty {
        type Ob = ();
        type Mor = ();
        fn name(&self) -> String {
            "empty".into()
        }
        fn source(&self, _: &()) {}
        fn target(&self, _: &()) {}
        fn identity(&self, _: &()) {}
        fn compose(&self, _: &(), _: &()) -> Option<()> {
            None
        }
        fn ob_distance(&self, _: &(), _: &()) -> f64 {
            0.0
        }
        fn mor_distance(&self, _: &(), _: &()) -> f64 {
            0.0
        }
        fn sample_object(&self, _: &mut ChaCha8Rng) -> Option<()> {
            Some(())
        }
        fn sample_morphism_from(&self, _: &(), _: &mut ChaCha8Rng) -> Option<()> {
            None
        }
        fn corrupt(&self, _: &()) {}
        fn ob_json(&self, _: &()) -> Value {
            Value::Null
        }
        fn mor_json(&self, _: &()) -> Value {
            Value::Null
        }
    }
    assert!(matches!(check_category_axioms(&Empty, 5, 0, 1e-8), Err(Error::SamplerExhausted(_))));
}

#[test]
fn reports_are_deterministic_under_seed() {
    let fat = FatCategory::<C>::new(4, 2, Tolerance::default());
    let a = check_category_axioms(&fat, 50, 11, 1e-8).unwrap();
    let b = check_category_axioms(&fat, 50, 11, 1e-8).unwrap();
    assert_eq!(a, b);
}

#[test]
fn faces_of_a_concrete_chain() {
    let cat = vf();
    let f = VfMor::new(crate::Mat::from_row_slice(2, 1, &[1.0, 2.0]));
    let g = VfMor::new(crate::Mat::from_row_slice(1, 2, &[3.0, 4.0]));
    let s = NerveSimplex { base: 1usize, chain: vec![f.clone(), g.clone()] };
    assert_eq!(face(&cat, &s, 0).unwrap(), NerveSimplex { base: 2, chain: vec![g.clone()] });
    assert_eq!(face(&cat, &s, 2).unwrap(), NerveSimplex { base: 1, chain: vec![f.clone()] });
    let inner = face(&cat, &s, 1).unwrap();
    assert_eq!(inner.chain[0].mat(), &crate::Mat::from_element(1, 1, 11.0));
    assert!(face(&cat, &s, 3).is_none());
    let deg = degeneracy(&cat, &s, 1).unwrap();
    assert_eq!(deg.chain[1], crate::mor::vf_identity(2));
    assert_eq!(face(&cat, &deg, 1).unwrap(), s);
    assert_eq!(face(&cat, &deg, 2).unwrap(), s);
}

#[test]
fn simplicial_identities_hold_in_matrix_and_fat_categories() {
    let r = check_nerve(&vf(), 4, 40, 12, 1e-8).unwrap();
    assert!(r.passed(), "{r}");
    let r = check_nerve(&FatCategory::<C>::new(5, 3, Tolerance::default()), 4, 20, 13, 1e-8).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn corrupted_composition_breaks_the_nerve() {
    let cat = MutatedCategory { inner: vf(), site: MutationSite::Compose };
    assert!(!check_nerve(&cat, 3, 20, 14, 1e-8).unwrap().passed());
}

#[test]
fn groupoid_nerve_faces_reindex_identities() {
    let g = GrassmannGroupoid::<f64>::new(3, 2, Tolerance::default());
    for s in sample_nerve(&g, 3, 10, 15).unwrap() {
        for i in 0..=3 {
            let d = face(&g, &s, i).unwrap();
            assert_eq!(d.level(), 2);
            assert!(d.chain.iter().all(|p| *p == s.base));
        }
    }
}

#[test]
fn interval_arrows_compose() {
    assert_eq!(Arrow::Stay0.then(Arrow::Cross), Some(Arrow::Cross));
    assert_eq!(Arrow::Cross.then(Arrow::Stay1), Some(Arrow::Cross));
    assert_eq!(Arrow::Cross.then(Arrow::Cross), None);
    assert_eq!(Arrow::Stay1.then(Arrow::Stay0), None);
}

#[test]
fn mutation_sites_parse() {
    for site in MutationSite::ALL {
        assert_eq!(site.as_str().parse::<MutationSite>().unwrap(), site);
    }
    assert!("bogus".parse::<MutationSite>().is_err());
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::Complex;

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn circle_base_components() {
    let b = circle_base(40).unwrap();
    let a: Vec<f64> = b.overlaps[0].samples.iter().map(|p| p[0]).collect();
    assert_eq!(a, vec![0.4, 0.425, 0.45, 0.475, 0.5, 0.525, 0.55, 0.575, 0.6]);
    let comp_b: Vec<f64> = b.overlaps[1].samples.iter().map(|p| p[0]).collect();
    assert_eq!(comp_b, vec![0.9, 0.925, 0.95, 0.975, 0.0, 0.025, 0.05, 0.075, 0.1]);
    assert_eq!(b.patches[0].samples.len(), 29);
    assert_eq!(b.patches[1].samples.len(), 29);
}

#[test]
fn identity_and_sign_cocycles_pass() {
    let r = check_cocycle(&trivial_circle_cocycle::<f64>(40, 2).unwrap(), &tol()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.max_residual(), 0.0);
    for (a, b) in [(1.0, 1.0), (1.0, -1.0)] {
        assert!(check_cocycle(&circle_sign_cocycle(40, a, b).unwrap(), &tol()).unwrap().passed());
    }
}

#[test]
fn orientation_classes() {
    assert_eq!(s1_orientation_class(&circle_sign_cocycle(40, 1.0, 1.0).unwrap()).unwrap(), OrientationClass::Trivial);
    assert_eq!(s1_orientation_class(&circle_sign_cocycle(40, 1.0, -1.0).unwrap()).unwrap(), OrientationClass::Moebius);
    assert_eq!(s1_orientation_class(&circle_sign_cocycle(40, -2.0, 0.5).unwrap()).unwrap(), OrientationClass::Moebius);
    let m = moebius_cocycle(40).unwrap();
    assert!(check_cocycle(&m, &tol()).unwrap().passed());
    assert_eq!(s1_orientation_class(&m).unwrap(), OrientationClass::Moebius);
    assert_eq!(glue(&m, &tol()).unwrap().is_orientable(), Some(false));
}

#[test]
fn orientation_errors() {
    assert!(matches!(s1_orientation_class(&trivial_circle_cocycle(40, 2).unwrap()), Err(Error::NotRankOne(2))));
    assert!(matches!(s1_orientation_class(&single_patch_cocycle(3, 1, 1).unwrap()), Err(Error::NotCircle(_))));
    let c = circle_sign_cocycle(40, 1.0, 1.0).unwrap();
    let flipped = c.map_transitions(|o, s, m| if o == 0 && s == 3 { -m } else { m.clone() }).unwrap();
    assert!(matches!(s1_orientation_class(&flipped), Err(Error::Discontinuity(_))));
}

#[test]
fn orientation_character_multiplies_under_oplus() {
    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let x = circle_sign_cocycle(40, 1.0, a).unwrap();
        let y = circle_sign_cocycle(40, b, 1.0).unwrap();
        let sum = oplus_cocycle(&x, &y).unwrap();
        assert!(check_cocycle(&sum, &tol()).unwrap().passed());
        let expect = s1_orientation_class(&x).unwrap().sign() * s1_orientation_class(&y).unwrap().sign();
        assert_eq!(s1_orientation_character(&sum).unwrap(), expect);
    }
}

#[test]
fn clutching_degrees() {
    for d in -3..=3 {
        let c = clutching_cocycle(64, d).unwrap();
        assert!(check_cocycle(&c, &tol()).unwrap().passed());
        assert_eq!(s2_clutching_degree(&c).unwrap(), d);
    }
    let taut = tautological_s2_cocycle(64).unwrap();
    assert!(check_cocycle(&taut, &tol()).unwrap().passed());
    assert_eq!(s2_clutching_degree(&taut).unwrap(), 1);
    let sq = otimes_cocycle(&taut, &taut).unwrap();
    assert!(check_cocycle(&sq, &tol()).unwrap().passed());
    assert_eq!(s2_clutching_degree(&sq).unwrap(), 2);
}

#[test]
fn clutching_errors() {
    assert!(matches!(s2_clutching_degree(&clutching_cocycle(32, 1).unwrap()), Err(Error::UndersampledLoop(_))));
    assert!(matches!(s2_clutching_degree(&clutching_cocycle(64, 20).unwrap()), Err(Error::UndersampledLoop(_))));
    let with_trivial = otimes_cocycle(&clutching_cocycle(64, 1).unwrap(), &clutching_cocycle(64, 0).unwrap()).unwrap();
    assert_eq!(s2_clutching_degree(&with_trivial).unwrap(), 1);
    let two = oplus_cocycle(&clutching_cocycle(64, 1).unwrap(), &clutching_cocycle(64, 0).unwrap()).unwrap();
    assert!(matches!(s2_clutching_degree(&two), Err(Error::NotRankOne(2))));
}

#[test]
fn corrupted_transition_is_located() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = abstract_three_patch::<f64, _>(5, 4, 2, &mut rng).unwrap();
    let r = check_cocycle(&c, &tol()).unwrap();
    assert!(r.passed(), "{r}");
    let bad = scale_transition(&c, 2, 3, 2.0).unwrap();
    let r = check_cocycle(&bad, &tol()).unwrap();
    let triple = r.check("F_γβ∘F_βα = F_γα").unwrap();
    assert!(!triple.passed);
    assert_eq!(triple.witness.as_ref().unwrap()["sample"], 3);
    assert!(matches!(glue(&bad, &tol()), Err(Error::CocycleViolation(_))));
}

#[test]
fn misaligned_grids_are_rejected() {
    let mut base = circle_base(40).unwrap();
    base.overlaps[2].samples.pop();
    let c = trivial_circle_cocycle::<f64>(40, 1).unwrap();
    let maps = c.maps();
    let mut short = maps.clone();
    short[2].pop();
    let c = CechCocycle::new(base.clone(), 1, c.locals.clone(), short).unwrap();
    assert!(matches!(check_cocycle(&c, &tol()), Err(Error::InconsistentSamples(_))));
    base.overlaps[0].samples[0] = vec![0.401];
    assert!(matches!(CechCocycle::new(base, 1, c.locals.clone(), maps), Err(Error::InconsistentSamples(_))));
}

#[test]
fn single_patch_glues_to_trivial_bundle() {
    let c = single_patch_cocycle::<Complex<f64>>(5, 3, 2).unwrap();
    let g = glue(&c, &tol()).unwrap();
    assert_eq!(g.fiber_dim(), 2);
    assert_eq!(g.restrict(0), c.locals(0));
    assert_eq!(g.extract_cocycle().unwrap(), c);
}

#[test]
fn glue_round_trip_keeps_invariants() {
    let m = moebius_cocycle(40).unwrap();
    let back = glue(&m, &tol()).unwrap().extract_cocycle().unwrap();
    assert_eq!(s1_orientation_class(&back).unwrap(), OrientationClass::Moebius);
    let t = tautological_s2_cocycle(80).unwrap();
    let g = glue(&t, &tol()).unwrap();
    let v = Vector::from_element(1, Complex::new(1.0, 0.0));
    let w = g.identify(0, 5, &v).unwrap();
    let (a, b) = t.index[0][5];
    let lhs = g.realize(0, a, &v);
    let rhs = g.realize(1, b, &w);
    assert!((lhs - rhs).norm() < 1e-12);
    assert_eq!(s2_clutching_degree(&g.extract_cocycle().unwrap()).unwrap(), 1);
}

#[test]
fn coboundaries_preserve_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = moebius_cocycle(40).unwrap();
    let triv = trivial_circle_cocycle::<f64>(40, 1).unwrap();
    let c2 = clutching_cocycle(64, 2).unwrap();
    for _ in 0..10 {
        let tm = random_coboundary(&m, &mut rng).unwrap();
        assert!(check_cocycle(&tm, &tol()).unwrap().passed());
        assert_eq!(s1_orientation_class(&tm).unwrap(), OrientationClass::Moebius);
        let tt = random_coboundary(&triv, &mut rng).unwrap();
        assert_eq!(s1_orientation_class(&tt).unwrap(), OrientationClass::Trivial);
        let tc = random_coboundary(&c2, &mut rng).unwrap();
        assert!(check_cocycle(&tc, &tol()).unwrap().passed());
        assert_eq!(s2_clutching_degree(&tc).unwrap(), 2);
    }
}

#[test]
fn json_round_trip() {
    let t = tautological_s2_cocycle(64).unwrap();
    let v = cocycle_to_json(&t);
    assert_eq!(v["version"], 1);
    let back: CechCocycle<Complex<f64>> = cocycle_from_json(&v, &tol()).unwrap();
    assert_eq!(back, t);
    assert!(matches!(cocycle_from_json::<f64>(&v, &tol()), Err(Error::FieldMismatch { .. })));
    let mut old = v.clone();
    old["version"] = serde_json::json!(2);
    assert!(matches!(cocycle_from_json::<Complex<f64>>(&old, &tol()), Err(Error::Schema(_))));
    let mut missing = v;
    missing.as_object_mut().unwrap().remove("version");
    assert!(matches!(cocycle_from_json::<Complex<f64>>(&missing, &tol()), Err(Error::Schema(_))));
}

fn section(n: usize, scale: impl Fn(usize) -> f64) -> (Vec<GrPoint<f64>>, Vec<MorPoint<f64>>) {
    let pts: Vec<GrPoint<f64>> = (0..n)
        .map(|i| {
            let s = 0.02 * i as f64;
            GrPoint::from_parts_unchecked(Mat::from_column_slice(3, 1, &[s.cos(), s.sin(), 0.0]))
        })
        .collect();
    let t = pts.iter().enumerate().map(|(i, p)| MorPoint::from_parts_unchecked(p.clone(), p.clone(), p.projection() * scale(i))).collect();
    (pts, t)
}

#[test]
fn pullback_sections() {
    let (f, id) = section(30, |_| 1.0);
    let r = pullback_iso_bundle(&f, &f, &id, &tol(), 10.0).unwrap();
    assert!(r.passed(), "{r}");
    let (_, smooth) = section(30, |i| 1.0 + 0.5 * (0.1 * i as f64).sin());
    assert!(pullback_iso_bundle(&f, &f, &smooth, &tol(), 10.0).unwrap().passed());
    let (_, jump) = section(30, |i| if i < 15 { 1.0 } else { -1.0 });
    let r = pullback_iso_bundle(&f, &f, &jump, &tol(), 10.0).unwrap();
    let cont = r.check("consecutive chart steps within bound").unwrap();
    assert!(!cont.passed);
    assert_eq!(cont.witness.as_ref().unwrap()["between_samples"], serde_json::json!([14, 15]));
    assert!(matches!(pullback_iso_bundle(&f, &f, &id[1..], &tol(), 10.0), Err(Error::SectionMismatch(_))));
    let (g, _) = section(31, |_| 1.0);
    assert!(matches!(pullback_iso_bundle(&f, &g[1..], &id, &tol(), 10.0), Err(Error::SectionMismatch(_))));
}

//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always reach the terminal; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use grasscat::categories::{FatCategory, GrassmannGroupoid, MatrixCategory};
use grasscat::cocycle::*;
use grasscat::grassmann::{chart_embed, GrChart, GrPoint};
use grasscat::internal_cat::{
    check_category_axioms, check_functor, check_nat_trans, check_nerve, sample_rng, NatTransReport,
    NatTransWitness, SampledCategory, SampledFunctor,
};
use grasscat::linalg::{random_matrix, scaled, smallest_singular_value};
use grasscat::mor::{is_iso, mor_chart, mor_compose, recharting_factors, MorPoint, VfMor};
use grasscat::semiring::*;
use grasscat::suites::{stabilization_suite, SuiteConfig};
use grasscat::{Complex, Mat, Scalar, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

const EPS: f64 = 1e-8;
const EPS_RECHART: f64 = 1e-7;
const DETECTION_RATE: f64 = 0.99;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let n = 1000;
    let mut worst = 0.0f64;
    let mut all = true;
    macro_rules! run {
        ($cat:expr) => {{
            let r = check_category_axioms(&$cat, n, 1, EPS).expect("sampler");
            all &= r.passed() && r.checks.iter().all(|c| c.samples == n);
            worst = worst.max(r.max_residual());
        }};
    }
    run!(MatrixCategory::<f64>::new(0, 5));
    run!(MatrixCategory::<C>::new(0, 5));
    run!(FatCategory::<f64>::new(6, 3, tol()));
    run!(FatCategory::<C>::new(6, 3, tol()));
    run!(GrassmannGroupoid::<f64>::new(6, 3, tol()));
    run!(GrassmannGroupoid::<C>::new(6, 3, tol()));
    let secs = start.elapsed().as_secs_f64();
    outcome(
        all && secs <= 60.0,
        format!("max residual {worst:.2e} <= {EPS:.0e} at {n} samples per axiom, {secs:.1} s <= 60 s"),
    )
}

/// Chart around a random point near `p`, so that `p` has nonzero coordinates.
fn chart_near<T: Scalar>(p: &GrPoint<T>, r: &mut ChaCha8Rng) -> GrChart<T> {
    let c = GrChart::centered_at(p, &tol()).unwrap();
    let (rows, cols) = c.coord_shape();
    let a = scaled(&random_matrix(rows, cols, r), 0.3);
    GrChart::centered_at(&chart_embed(&c, &a, &tol()).unwrap(), &tol()).unwrap()
}

/// Chart coordinates computed from the stored frame of the subspace.
fn oracle_coords<T: Scalar>(chart: &GrChart<T>, p: &GrPoint<T>) -> Mat<T> {
    let w = p.frame();
    let top = chart.basis_v().adjoint() * w;
    let bottom = chart.basis_vperp().adjoint() * w;
    bottom * top.try_inverse().expect("inside the chart domain")
}

fn oracle_basis<T: Scalar>(chart: &GrChart<T>, p: &GrPoint<T>) -> Mat<T> {
    chart.basis_v() + chart.basis_vperp() * oracle_coords(chart, p)
}

fn oracle_box<T: Scalar>(f: &MorPoint<T>, cx: &GrChart<T>, cy: &GrChart<T>) -> Mat<T> {
    cy.basis_v().adjoint() * f.map() * oracle_basis(cx, f.src())
}

fn diff<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    max_of(a.iter().zip(b.iter()).map(|(x, y)| (*x - *y).modulus()))
}

fn composition_residual<T: Scalar>(r: &mut ChaCha8Rng) -> f64 {
    let dims: Vec<(usize, usize)> = (0..3)
        .map(|_| {
            let m = r.random_range(2..=5);
            (m, r.random_range(1..m))
        })
        .collect();
    let pts: Vec<GrPoint<T>> = dims.iter().map(|&(m, k)| GrPoint::random(m, k, r)).collect();
    let f = MorPoint::random(pts[0].clone(), pts[1].clone(), r);
    let g = MorPoint::random(pts[1].clone(), pts[2].clone(), r);
    let charts: Vec<GrChart<T>> = pts.iter().map(|p| chart_near(p, r)).collect();
    let gf = mor_compose(&f, &g, &tol()).unwrap();
    let lib = mor_chart(&gf, &charts[0], &charts[2], &tol()).unwrap();
    let formula = oracle_box(&g, &charts[1], &charts[2]) * oracle_box(&f, &charts[0], &charts[1]);
    max_of([
        diff(&lib.a_x, &oracle_coords(&charts[0], &pts[0])),
        diff(&lib.b_y, &oracle_coords(&charts[2], &pts[2])),
        diff(&lib.t_box, &formula),
    ])
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let worst = max_of((0..500).map(|i| {
        if i % 2 == 0 {
            composition_residual::<f64>(&mut r)
        } else {
            composition_residual::<C>(&mut r)
        }
    }));
    outcome(worst <= EPS, format!("500 composable pairs, max residual {worst:.2e} <= {EPS:.0e}"))
}

fn rechart_instance<T: Scalar>(r: &mut ChaCha8Rng, singular: bool) -> (f64, bool) {
    let m = r.random_range(2..=5);
    let n = r.random_range(2..=5);
    let k = r.random_range(1..m.min(n));
    let (x, y) = (GrPoint::<T>::random(m, k, r), GrPoint::<T>::random(n, k, r));
    let mut f = MorPoint::random(x.clone(), y.clone(), r);
    if singular {
        let mut low = f.frame_matrix();
        low.column_mut(0).fill(T::zero());
        f = MorPoint::from_frames(x.clone(), y.clone(), &low).unwrap();
    }
    let (cx0, cy0) = (chart_near(&x, r), chart_near(&y, r));
    let (cx1, cy1) = (chart_near(&x, r), chart_near(&y, r));
    let t0 = mor_chart(&f, &cx0, &cy0, &tol()).unwrap().t_box;
    let t1 = mor_chart(&f, &cx1, &cy1, &tol()).unwrap().t_box;
    let (c, d) = recharting_factors(&f, &cx0, &cy0, &cx1, &cy1, &tol()).unwrap();
    let d_oracle = cx0.basis_v().adjoint() * oracle_basis(&cx1, &x);
    let c_oracle = (cy0.basis_v().adjoint() * oracle_basis(&cy1, &y)).try_inverse().unwrap();
    let residual = max_of([diff(&t1, &(&c * &t0 * &d)), diff(&c, &c_oracle), diff(&d, &d_oracle)]);
    let iso = |t: &Mat<T>| smallest_singular_value(t) > tol().eps_rank;
    let verdicts = [iso(&t0), iso(&t1), is_iso(&f, &tol()), !singular];
    (residual, verdicts.iter().all(|&v| v == verdicts[0]))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    let mut agree = 0;
    for i in 0..200 {
        let singular = i % 4 >= 2;
        let (res, ok) = if i % 2 == 0 {
            rechart_instance::<f64>(&mut r, singular)
        } else {
            rechart_instance::<C>(&mut r, singular)
        };
        worst = worst.max(res);
        agree += ok as usize;
    }
    outcome(
        worst <= EPS_RECHART && agree == 200,
        format!("200 re-chartings, max residual {worst:.2e} <= {EPS_RECHART:.0e}, iso verdict invariant in {agree}/200"),
    )
}

/// Walks the `n × n` grid layer by layer: down the new column, then left along the new row.
fn snake_oracle(n: usize) -> Vec<usize> {
    let mut perm = vec![usize::MAX; n * n];
    let mut pos = 0;
    for layer in 0..n {
        let (mut i, mut j) = (0usize, layer);
        loop {
            perm[i * n + j] = pos;
            pos += 1;
            if i < layer {
                i += 1;
            } else if j > 0 {
                j -= 1;
            } else {
                break;
            }
        }
    }
    perm
}

fn is_permutation_matrix(m: &Mat<f64>) -> bool {
    let n = m.nrows();
    m.ncols() == n
        && m.iter().all(|&x| x == 0.0 || x == 1.0)
        && (0..n).all(|i| m.row(i).sum() == 1.0 && m.column(i).sum() == 1.0)
        && m.transpose() * m == Mat::identity(n, n)
}

fn criterion_4() -> Outcome {
    let perm_ok = (1..=32)
        .all(|n| is_permutation_matrix(&theta_matrix::<f64>(n)) && is_permutation_matrix(&kappa_matrix::<f64>(n)));
    let mismatches: usize = (1..=16)
        .map(|n| kappa_perm(n).iter().zip(snake_oracle(n)).filter(|(a, b)| **a != *b).count())
        .sum();
    outcome(
        perm_ok && mismatches == 0,
        format!("θ, κ permutation matrices for n <= 32: {perm_ok}; κ vs snake walk n <= 16: {mismatches} mismatches"),
    )
}

fn criterion_5() -> Outcome {
    let n = 500;
    let mut worst = 0.0f64;
    let mut all = true;
    macro_rules! run {
        ($f:expr) => {{
            let r = check_functor(&$f, n, 5, EPS).expect("sampler");
            all &= r.passed();
            worst = worst.max(r.max_residual());
        }};
    }
    let vf = MatrixCategory::<f64>::new(0, 4);
    let vf_big = MatrixCategory::<f64>::new(0, 16);
    run!(oplus_functor_vf(pair(&vf), vf_big.clone()));
    run!(otimes_functor_vf(pair(&vf), vf_big));
    let fat = FatCategory::<C>::new(4, 2, tol());
    let fat_big = FatCategory::<C>::new(16, 4, tol());
    run!(oplus_functor_fat(pair(&fat), fat_big.clone()));
    run!(otimes_functor_fat(pair(&fat), fat_big));

    let mut strict = true;
    for a in 0..=6 {
        for b in 0..=6 {
            for c in 0..=6 {
                strict &= vf_oplus_ob(vf_oplus_ob(a, b), c) == vf_oplus_ob(a, vf_oplus_ob(b, c));
                strict &= vf_otimes_ob(vf_otimes_ob(a, b), c) == vf_otimes_ob(a, vf_otimes_ob(b, c));
            }
        }
        strict &= vf_oplus_ob(0, a) == a && vf_oplus_ob(a, 0) == a;
        strict &= vf_otimes_ob(1, a) == a && vf_otimes_ob(a, 1) == a;
    }
    let mut r = rng(55);
    let zero = VfMor::<f64>::new(Mat::zeros(0, 0));
    for _ in 0..n {
        let ms: Vec<VfMor<f64>> = (0..3)
            .map(|_| {
                let (p, q) = (r.random_range(0..=3), r.random_range(0..=3));
                VfMor::new(random_matrix(p, q, &mut r))
            })
            .collect();
        strict &= vf_oplus(&vf_oplus(&ms[0], &ms[1]), &ms[2]) == vf_oplus(&ms[0], &vf_oplus(&ms[1], &ms[2]));
        strict &= vf_oplus(&zero, &ms[0]) == ms[0] && vf_oplus(&ms[0], &zero) == ms[0];
    }
    outcome(
        all && strict,
        format!("⊕, ⊗ functor laws on V_F and V_F^f at {n} samples: max residual {worst:.2e} <= {EPS:.0e}; strict on objects: {strict}"),
    )
}

fn criterion_6() -> Outcome {
    let cfg = SuiteConfig { samples: 500, seed: 6, ..SuiteConfig::default() };
    let real = stabilization_suite::<f64>(&cfg).unwrap();
    let complex = stabilization_suite::<C>(&cfg).unwrap();
    let worst = real.max_residual().max(complex.max_residual());
    let all = real.passed()
        && complex.passed()
        && real.checks.iter().chain(&complex.checks).all(|c| c.samples == 500 && c.tolerance == 0.0);
    outcome(
        all && worst == 0.0,
        format!("{} squares × 500 samples per field, max residual {worst:.1e} (exact)", real.checks.len()),
    )
}

struct WitnessTally {
    worst: f64,
    natural: bool,
    iso: bool,
    count: usize,
}

impl WitnessTally {
    fn add(&mut self, rep: NatTransReport, iso: bool) {
        self.worst = self.worst.max(rep.definition.max_residual()).max(rep.interval.max_residual());
        self.natural &= rep.passed();
        self.iso &= iso;
        self.count += 1;
    }
}

fn fat_components_iso<S, D>(src: &S, w: &NatTransWitness<S, D>, n: u64) -> bool
where
    S: SampledCategory,
    D: SampledCategory<Mor = MorPoint<C>>,
{
    (0..n).all(|i| {
        let x = src.sample_object(&mut sample_rng(77, 0, i)).expect("sampler");
        is_iso(&w.component(&x), &tol())
    })
}

fn vf_components_iso<S, D>(src: &S, w: &NatTransWitness<S, D>, n: u64) -> bool
where
    S: SampledCategory,
    D: SampledCategory<Mor = VfMor<C>>,
{
    (0..n).all(|i| {
        let x = src.sample_object(&mut sample_rng(77, 0, i)).expect("sampler");
        let m = w.component(&x).into_mat();
        m.is_square() && (m.nrows() == 0 || smallest_singular_value(&m) > tol().eps_rank)
    })
}

fn criterion_7() -> Outcome {
    let n = 500;
    let mut t = WitnessTally { worst: 0.0, natural: true, iso: true, count: 0 };
    let fat = FatCategory::<C>::new(3, 2, tol());
    let small = FatCategory::<C>::new(2, 2, tol());
    let big = FatCategory::<C>::new(64, 16, tol());
    let vf = MatrixCategory::<C>::new(0, 3);
    let vf_big = MatrixCategory::<C>::new(0, 64);
    macro_rules! run {
        ($inst:expr, $iso:ident) => {{
            let i = $inst;
            let rep = check_nat_trans(&i.from, &i.to, &i.witness, n, 7, EPS).expect("sampler");
            let iso = $iso(&i.from.source, &i.witness, n as u64);
            t.add(rep, iso);
        }};
    }
    for side in [Side::Left, Side::Right] {
        run!(add_unit_fat(side, fat.clone(), big.clone()), fat_components_iso);
        run!(distrib_fat(side, triple(&small), big.clone()), fat_components_iso);
        run!(add_unit_vf(side, vf.clone(), vf_big.clone()), vf_components_iso);
        run!(distrib_vf(side, triple(&vf), vf_big.clone()), vf_components_iso);
    }
    run!(comm_fat(pair(&fat), big.clone()), fat_components_iso);
    run!(comm_vf(pair(&vf), vf_big.clone()), vf_components_iso);
    let (s, p) = comparison_witnesses(3, pair(&vf), big.clone());
    run!(s, fat_components_iso);
    run!(p, fat_components_iso);
    outcome(
        t.natural && t.iso,
        format!(
            "{} witnesses × {n} samples: max naturality residual {:.2e} <= {EPS:.0e}; all components iso: {}",
            t.count, t.worst, t.iso
        ),
    )
}

fn criterion_8() -> Outcome {
    let (lvl, n) = (4, 200);
    let vf = check_nerve(&MatrixCategory::<f64>::new(0, 4), lvl, n, 8, EPS).unwrap();
    let fat = check_nerve(&FatCategory::<C>::new(4, 2, tol()), lvl, n, 8, EPS).unwrap();
    let g = check_nerve(&GrassmannGroupoid::<C>::new(4, 2, tol()), lvl, n, 8, EPS).unwrap();
    outcome(
        vf.passed() && fat.passed() && g.passed() && g.max_residual() == 0.0,
        format!(
            "levels 0..=4: V_F {:.2e}, V_F^f {:.2e} <= {EPS:.0e}; G {:.1e} (exact)",
            vf.max_residual(),
            fat.max_residual(),
            g.max_residual()
        ),
    )
}

fn mutate<T: Scalar>(c: &CechCocycle<T>, r: &mut ChaCha8Rng) -> CechCocycle<T> {
    let o = r.random_range(0..c.base().overlaps.len());
    let s = r.random_range(0..c.transitions(o).len());
    let kind = r.random_range(0..3);
    let factor = if r.random_bool(0.5) { r.random_range(1.5..3.0) } else { r.random_range(0.2..0.7) };
    let f = &c.transitions(o)[s];
    let replacement = MorPoint::random(f.src().clone(), f.dst().clone(), r);
    let noise: Mat<T> =
        f.dst().frame() * scaled(&random_matrix(c.rank(), c.rank(), r), 0.1) * f.src().frame().adjoint();
    c.map_transitions(|oo, ss, m| {
        if (oo, ss) != (o, s) {
            return m.clone();
        }
        match kind {
            0 => scaled(m, factor),
            1 => m + &noise,
            _ => replacement.map().clone(),
        }
    })
    .unwrap()
}

fn detected<T: Scalar>(r: &mut ChaCha8Rng) -> (bool, usize, bool) {
    let c = abstract_three_patch::<T, _>(4, 3, 2, r).unwrap();
    let rep = check_cocycle(&c, &tol()).unwrap();
    let triples = rep.check("F_γβ∘F_βα = F_γα").map_or(0, |k| k.samples);
    let caught = !check_cocycle(&mutate(&c, r), &tol()).unwrap().passed();
    (rep.passed(), triples, caught)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    // (a)
    let (mut valid, mut triples, mut caught) = (true, 0, 0);
    let total = 1000;
    for i in 0..total {
        let mut r = rng(9000 + i as u64);
        let (v, t, c) = if i % 2 == 0 { detected::<f64>(&mut r) } else { detected::<C>(&mut r) };
        valid &= v;
        triples += t;
        caught += c as usize;
    }
    let rate = caught as f64 / total as f64;
    ok &= valid && triples > 0 && rate >= DETECTION_RATE;
    notes.push(format!("(a) valid {valid}, {triples} triple points, detected {caught}/{total} >= {DETECTION_RATE}"));

    // (b)
    let sign = |c: CechCocycle<f64>| s1_orientation_class(&c).unwrap().sign();
    let moebius = sign(moebius_cocycle(40).unwrap());
    let flipped = sign(circle_sign_cocycle(40, 1.0, -1.0).unwrap());
    let trivial = sign(trivial_circle_cocycle(40, 1).unwrap());
    ok &= moebius == -1 && flipped == -1 && trivial == 1;
    notes.push(format!("(b) Möbius {moebius:+}, trivial {trivial:+}"));

    // (c)
    let deg = |c: &CechCocycle<C>| s2_clutching_degree(c).unwrap();
    let base_ok = deg(&clutching_cocycle(64, 0).unwrap()) == 0
        && deg(&clutching_cocycle(64, 1).unwrap()) == 1
        && deg(&clutching_cocycle(64, 2).unwrap()) == 2
        && deg(&tautological_s2_cocycle(64).unwrap()) == 1;
    let mut additive = 0;
    for d in -3..=3i64 {
        for e in -3..=3i64 {
            let a = clutching_cocycle(64, d).unwrap();
            let b = clutching_cocycle(64, e).unwrap();
            additive += (deg(&otimes_cocycle(&a, &b).unwrap()) == d + e) as usize;
        }
    }
    let taut = tautological_s2_cocycle(64).unwrap();
    let taut_ok = deg(&otimes_cocycle(&taut, &taut).unwrap()) == 2;
    ok &= base_ok && additive == 49 && taut_ok;
    notes.push(format!("(c) degrees 0/1/2/tautological {base_ok}, additivity {additive}/49, tautological squared {taut_ok}"));

    // (d)
    let mut r = rng(99);
    let (mut kept, mut cases) = (0, 0);
    let circles = [
        (moebius_cocycle(40).unwrap(), -1i8),
        (trivial_circle_cocycle(40, 1).unwrap(), 1),
        (circle_sign_cocycle(40, -1.0, 1.0).unwrap(), -1),
    ];
    for (c, expect) in &circles {
        for _ in 0..100 {
            let t = random_coboundary(c, &mut r).unwrap();
            kept += (check_cocycle(&t, &tol()).unwrap().passed()
                && s1_orientation_class(&t).unwrap().sign() == *expect) as usize;
            cases += 1;
        }
    }
    let spheres = [
        (clutching_cocycle(64, 0).unwrap(), 0),
        (clutching_cocycle(64, -2).unwrap(), -2),
        (clutching_cocycle(64, 3).unwrap(), 3),
        (tautological_s2_cocycle(64).unwrap(), 1),
    ];
    for (c, expect) in &spheres {
        for _ in 0..100 {
            let t = random_coboundary(c, &mut r).unwrap();
            kept += (check_cocycle(&t, &tol()).unwrap().passed() && s2_clutching_degree(&t).unwrap() == *expect)
                as usize;
            cases += 1;
        }
    }
    ok &= kept == cases;
    notes.push(format!("(d) invariants kept under {kept}/{cases} random coboundaries"));

    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 120.0;
    notes.push(format!("{secs:.1} s <= 120 s"));
    outcome(ok, notes.join("; "))
}

fn corrupt_witness<S, D>(w: &NatTransWitness<S, D>, target: &D) -> NatTransWitness<S, D>
where
    S: SampledCategory + 'static,
    D: SampledCategory + Clone + 'static,
{
    let d = target.clone();
    w.with_mutated_components(move |h| d.corrupt(h))
}

fn criterion_10() -> Outcome {
    let n = 20;
    let (mut agree, mut passes, mut fails, mut expected) = (0, 0, 0, 0);
    let fat = FatCategory::<f64>::new(3, 2, tol());
    let big = FatCategory::<f64>::new(64, 16, tol());
    let vf = MatrixCategory::<f64>::new(0, 3);
    let vf_big = MatrixCategory::<f64>::new(0, 64);
    let g = GrassmannGroupoid::<f64>::new(3, 2, tol());
    for i in 0..200u64 {
        let broken = i % 2 == 1;
        let rep = match (i / 2) % 5 {
            0 => {
                let id = SampledFunctor::identity(fat.clone());
                let w = NatTransWitness::identity_of(&id);
                let w = if broken { corrupt_witness(&w, &fat) } else { w };
                check_nat_trans(&id, &id, &w, n, i, EPS)
            }
            1 => {
                let inst = comm_vf(pair(&vf), vf_big.clone());
                let w = if broken {
                    NatTransWitness::new("identity in place of swap", |&(a, b): &(usize, usize)| {
                        VfMor::<f64>::new(Mat::identity(a + b, a + b))
                    })
                } else {
                    inst.witness
                };
                check_nat_trans(&inst.from, &inst.to, &w, n, i, EPS)
            }
            2 => {
                let inst = add_unit_fat(Side::Left, fat.clone(), big.clone());
                let to = if broken {
                    let d = big.clone();
                    inst.to.with_mutated_morphisms(move |h| d.corrupt(h))
                } else {
                    inst.to
                };
                check_nat_trans(&inst.from, &to, &inst.witness, n, i, EPS)
            }
            3 => {
                let id = SampledFunctor::identity(g.clone());
                let w = NatTransWitness::identity_of(&id);
                let w = if broken { corrupt_witness(&w, &g) } else { w };
                check_nat_trans(&id, &id, &w, n, i, EPS)
            }
            _ => {
                let inst = distrib_vf(Side::Left, triple(&vf), vf_big.clone());
                let w = if broken { corrupt_witness(&inst.witness, &vf_big) } else { inst.witness };
                check_nat_trans(&inst.from, &inst.to, &w, n, i, EPS)
            }
        }
        .expect("sampler");
        agree += rep.formulations_agree() as usize;
        passes += rep.definition.passed() as usize;
        fails += !rep.definition.passed() as usize;
        expected += (rep.definition.passed() != broken) as usize;
    }
    outcome(
        agree == 200 && passes > 0 && fails > 0,
        format!("200 instances ({passes} pass, {fails} fail, {expected} as constructed): formulations agree on {agree}/200"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("internal-category axioms", criterion_1),
        ("chart composition law", criterion_2),
        ("chart transition covariance", criterion_3),
        ("θ/κ permutations", criterion_4),
        ("⊕/⊗ functor laws and strictness", criterion_5),
        ("stabilization squares", criterion_6),
        ("natural-transformation witnesses", criterion_7),
        ("nerve simplicial identities", criterion_8),
        ("cocycles and bundle invariants", criterion_9),
        ("naturality formulations agree", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        println!(
            "criterion {:>2} {:<34} {}  {} [{:.1} s]",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += !o.passed as usize;
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use harmsphere::curve::fs_distance;
use harmsphere::family::CurveFamily;
use harmsphere::gauss::{
    conformality_residual, degree_energy, harmonicity_residual, Calibration, Chart, ControlLift,
    GaussEvaluator, HolomorphicLift, Lift, QuadratureSpec, SampleGrid, SpherePoint,
};
use harmsphere::{random, HoloCurve, ProjPoint};
use num_rational::BigRational;

fn test_curves() -> Vec<(&'static str, HoloCurve)> {
    vec![
        ("veronese", HoloCurve::veronese()),
        (
            "coalesce(1)",
            CurveFamily::coalesce()
                .at(&BigRational::from_integer(1.into()))
                .unwrap(),
        ),
        (
            "cmr(4,1)",
            CurveFamily::cmr(4, 1)
                .unwrap()
                .at(&BigRational::from_integer(0.into()))
                .unwrap(),
        ),
    ]
}

#[test]
fn gauss_transforms_have_predicted_degree_and_energy() {
    let spec = QuadratureSpec::default();
    let cal = Calibration::from_veronese(&spec).unwrap();
    for (name, f) in test_curves() {
        let s = f.invariants();
        let de = degree_energy(&GaussEvaluator::new(f).unwrap(), &spec, &cal).unwrap();
        assert!(
            (de.d_num - s.d as f64).abs() <= 1e-3,
            "{name}: d = {}",
            de.d_num
        );
        assert!(
            (de.e_num - s.energy as f64).abs() <= 1e-3,
            "{name}: E = {}",
            de.e_num
        );
        let mut got = [de.e_partial_plus, de.e_partial_minus];
        let mut want = [s.k as f64, (2 * s.k - 2 - s.r) as f64];
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!(
                (g - w).abs() <= 1e-3,
                "{name}: partials {got:?} vs {want:?}"
            );
        }
    }
}

#[test]
fn holomorphic_veronese_is_its_own_calibration() {
    let spec = QuadratureSpec::default();
    let de = degree_energy(
        &HolomorphicLift::new(&HoloCurve::veronese()),
        &spec,
        &Calibration::analytic(),
    )
    .unwrap();
    assert!((de.d_num - 2.0).abs() < 1e-9 && (de.e_num - 2.0).abs() < 1e-9);
    assert!(de.e_partial_minus.abs() < 1e-9);
}

#[test]
fn veronese_quadrature_converges() {
    let spec = QuadratureSpec::default();
    let de = degree_energy(
        &GaussEvaluator::new(HoloCurve::veronese()).unwrap(),
        &spec,
        &Calibration::analytic(),
    )
    .unwrap();
    assert!(
        de.refinement_delta_d < 1e-6 && de.refinement_delta_e < 1e-6,
        "{de:?}"
    );
}

#[test]
fn chart_split_does_not_matter() {
    let ev = GaussEvaluator::new(test_curves().remove(1).1).unwrap();
    let cal = Calibration::analytic();
    let a = degree_energy(&ev, &QuadratureSpec::default(), &cal).unwrap();
    let b = degree_energy(
        &ev,
        &QuadratureSpec {
            split_radius: 0.7,
            ..QuadratureSpec::default()
        },
        &cal,
    )
    .unwrap();
    assert!((a.e_num - b.e_num).abs() < 1e-6 && (a.d_num - b.d_num).abs() < 1e-6);
}

#[test]
fn residuals_separate_harmonic_from_control() {
    let grid = SampleGrid::default();
    let mut lifts: Vec<(String, Box<dyn Lift>)> = Vec::new();
    for (name, f) in test_curves() {
        lifts.push((format!("hol {name}"), Box::new(HolomorphicLift::new(&f))));
        lifts.push((
            format!("gauss {name}"),
            Box::new(GaussEvaluator::new(f).unwrap()),
        ));
    }
    for (name, lift) in &lifts {
        for chart in [Chart::Z, Chart::W] {
            let g = SampleGrid { chart, ..grid };
            let h = harmonicity_residual(lift.as_ref(), &g, 1e-3);
            let c = conformality_residual(lift.as_ref(), &g, 1e-3);
            assert!(h <= 1e-3, "{name} {chart:?}: harmonicity {h}");
            assert!(c <= 1e-3, "{name} {chart:?}: conformality {c}");
        }
    }
    assert!(harmonicity_residual(&ControlLift, &grid, 1e-3) > 1e-1);
}

#[test]
fn gauss_transform_never_vanishes_and_charts_agree() {
    let mut rng = random::rng(17);
    for i in 0..20 {
        let f = random::curve(&mut rng, 2 + i % 4, i % 2 == 0);
        let ev = GaussEvaluator::new(f).unwrap();
        for z in [(1, 0), (0, 1), (-2, 1), (3, -1)] {
            let z = harmsphere::GaussianRational::from_integers(z.0, z.1);
            let here = ev.gauss_eval(&SpherePoint::Exact(z.clone()));
            assert!(!here.is_zero());
            let there = ev.phi_approx(Chart::W, z.inv().unwrap().to_approx());
            assert!(here.proj_eq(&ProjPoint::Approx(there), 1e-9));
        }
        assert!(!ev.gauss_eval(&SpherePoint::Infinity).is_zero());
    }
}

#[test]
fn distinct_curves_in_a_stratum_have_distinct_transforms() {
    let mut rng = random::rng(23);
    let pts = SampleGrid {
        n: 7,
        ..SampleGrid::default()
    }
    .points();
    for i in 0..20 {
        let (f, g) = random::same_stratum_pair(&mut rng, 2 + i % 4, i % 2 == 1);
        let (ef, eg) = (
            GaussEvaluator::new(f).unwrap(),
            GaussEvaluator::new(g).unwrap(),
        );
        let sep = pts
            .iter()
            .map(|&z| fs_distance(&ef.phi_approx(Chart::Z, z), &eg.phi_approx(Chart::Z, z)))
            .fold(0.0, f64::max);
        assert!(sep > 1e-6, "pair {i}: {sep}");
    }
}

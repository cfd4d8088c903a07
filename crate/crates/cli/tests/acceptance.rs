//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal; exits nonzero if any
//! criterion fails.

use std::f64::consts::FRAC_PI_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use harmsphere::curve::InvariantSheet;
use harmsphere::family::{
    differential_probe, smooth_divisor, symmetric_grid, trace_gauss, uniform_grid, CurveFamily,
};
use harmsphere::gauss::{
    conformality_residual, degree_energy, harmonicity_residual, Calibration, ControlLift,
    GaussEvaluator, HolomorphicLift, Lift, QuadratureSpec, SampleGrid, SpherePoint,
};
use harmsphere::kernel::{build_t, divisibility_check, kernel_report, pkl_basis, KernelSpec};
use harmsphere::poly::BezoutBranch;
use harmsphere::{random, Degree, ExactPoly, GaussianRational, HoloCurve, ProjPoint};
use num_rational::BigRational;

type Verdict = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn require(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct Run {
    failures: usize,
}

impl Run {
    fn criterion(&mut self, n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let (ok, detail) = match verdict {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        if !ok {
            self.failures += 1;
        }
        println!(
            "criterion {n:>2} {} {title} ({:.2} s of {} s{}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" },
        );
    }
}

fn kernel_example() -> KernelSpec {
    let a = ExactPoly::from_roots(&[
        (0.into(), 1),
        (1.into(), 1),
        ((-1).into(), 1),
        (2.into(), 1),
    ]);
    KernelSpec::normalized(a, ExactPoly::from_ints(&[4, -4, 2, 0, 10, -12, 4])).unwrap()
}

fn exact_invariants() -> Verdict {
    let b = CurveFamily::burstall();
    let c = CurveFamily::coalesce();
    let mut curves = vec![
        ("veronese".to_string(), HoloCurve::veronese(), (2, 0)),
        ("burstall(0)".into(), b.at(&q(0, 1)).unwrap(), (3, 1)),
        ("burstall(1)".into(), b.at(&q(1, 1)).unwrap(), (3, 0)),
        ("coalesce(0)".into(), c.at(&q(0, 1)).unwrap(), (4, 2)),
        ("coalesce(1)".into(), c.at(&q(1, 1)).unwrap(), (4, 2)),
    ];
    for k in 2..=8 {
        for r in 0..=k - 2 {
            let f = CurveFamily::cmr(k, r).unwrap().at(&q(0, 1)).unwrap();
            curves.push((format!("cmr({k},{r})"), f, (k, r)));
        }
    }
    for (name, f, (k, r)) in &curves {
        let h = f.conjugate_polar().unwrap();
        let got = (f.degree() as i64, f.ramification().r_total as i64);
        let sheet = f.invariants();
        let want = InvariantSheet::from_kr(*k, *r);
        let polar = (h.degree() as i64, h.ramification().r_total as i64);
        if got != (*k, *r)
            || sheet != want
            || (want.d, want.energy) != (k - r - 2, 3 * k - r - 2)
            || polar != (want.k_polar, want.r_polar)
        {
            return Err(format!(
                "{name}: (k, r) = {got:?}, polar {polar:?}, sheet {sheet:?}"
            ));
        }
    }
    Ok(format!("{} curves", curves.len()))
}

fn kernel_example_dimension() -> Verdict {
    let spec = kernel_example();
    let rep = kernel_report(&build_t(&spec));
    require(
        (spec.k(), spec.r(), rep.dim_kernel) == (6, 4, 4),
        format!(
            "k = {}, r = {}, dim ker = {}",
            spec.k(),
            spec.r(),
            rep.dim_kernel
        ),
    )
}

fn kernel_dimension_in_range() -> Verdict {
    let mut rng = random::rng(3);
    for i in 0..200 {
        let spec = random::kernel_spec(&mut rng, 10, true);
        let rep = kernel_report(&build_t(&spec));
        if rep.dim_kernel != spec.k() + 1 - spec.r() {
            return Err(format!(
                "spec {i}: k = {}, r = {}, dim = {}",
                spec.k(),
                spec.r(),
                rep.dim_kernel
            ));
        }
        pkl_basis(&spec).map_err(|e| format!("spec {i}: {e}"))?;
    }
    Ok("200 specs, all pivots nonzero".into())
}

fn divisibility_criterion() -> Verdict {
    let mut rng = random::rng(4);
    let mut yes = 0;
    for i in 0..100 {
        let (a, f) = random::divisibility_instance(&mut rng, 6);
        let c = divisibility_check(&a, &f).map_err(|e| e.to_string())?;
        if !c.agree() {
            return Err(format!("instance {i}: {c:?}"));
        }
        yes += c.divides as usize;
    }
    Ok(format!("100 instances, {yes} divisible"))
}

fn bounded_bezout() -> Verdict {
    let mut rng = random::rng(5);
    let mut reduced = 0;
    for i in 0..500 {
        let (g, h, l) = random::planted_gcd_pair(&mut rng);
        let b = ExactPoly::bezout_bounded(&g, &h).map_err(|e| e.to_string())?;
        let combo = &(&b.lambda * &g) + &(&b.mu * &h);
        if combo != l || b.hcf != l {
            return Err(format!("pair {i}: identity fails"));
        }
        if b.branch == BezoutBranch::Reduced {
            reduced += 1;
            let dl = l.degree().unwrap();
            let bounds = b.lambda.degree() < Degree::Finite(h.degree().unwrap() - dl)
                && b.mu.degree() < Degree::Finite(g.degree().unwrap() - dl);
            let dim = ExactPoly::bezout_solution_space_dim(&g, &h).map_err(|e| e.to_string())?;
            if !bounds || dim != 1 {
                return Err(format!("pair {i}: bounds {bounds}, solution space {dim}"));
            }
        }
    }
    Ok(format!(
        "500 pairs, {reduced} with both cofactors nonconstant"
    ))
}

fn polar_involution() -> Verdict {
    let mut rng = random::rng(6);
    for i in 0..100 {
        let f = random::curve(&mut rng, 2 + i % 5, i % 2 == 0);
        let h = f.conjugate_polar().unwrap();
        let r = f.ramification().r_total;
        if h.degree() != 2 * f.degree() - 2 - r
            || !h.conjugate_polar().unwrap().projectively_equal(&f)
        {
            return Err(format!(
                "curve {i}: k = {}, r = {r}, polar degree {}",
                f.degree(),
                h.degree()
            ));
        }
    }
    Ok("100 curves, k from 2 to 6".into())
}

fn burstall_discontinuity() -> Verdict {
    let grid = symmetric_grid(&q(1, 100), 20);
    let tr = trace_gauss(
        &CurveFamily::burstall(),
        &SpherePoint::Exact(0.into()),
        &grid,
        0.25,
    )
    .map_err(|e| e.to_string())?;
    for (t, v) in tr.t.iter().zip(&tr.values) {
        let want = if *t == q(0, 1) { [0, 0, 1] } else { [0, 1, 0] };
        if !matches!(v, ProjPoint::Exact(_)) || !v.proj_eq(&ProjPoint::from_ints(want), 0.0) {
            return Err(format!("t = {t}: {v:?}"));
        }
    }
    let d = tr.jumps.first().map(|j| j.distance).unwrap_or(f64::NAN);
    require(
        grid.len() == 41 && tr.jumps.len() == 1 && (d - FRAC_PI_2).abs() <= 1e-12,
        format!(
            "{} samples, {} jump(s), distance {d:.16e}",
            grid.len(),
            tr.jumps.len()
        ),
    )
}

fn coalesce_smoothness() -> Verdict {
    let fam = CurveFamily::coalesce();
    let grid = uniform_grid(&q(-1, 2), &q(1, 2), 41);
    let tr = smooth_divisor(&fam, &grid, false).map_err(|e| e.to_string())?;
    for (t, d) in tr.t.iter().zip(&tr.divisors) {
        if *d != ExactPoly::new(vec![GaussianRational::real(-t.clone()), 0.into(), 1.into()]) {
            return Err(format!("t = {t}: divisor {d}"));
        }
    }
    let first = tr.coefficient_quotients[0]
        .clone()
        .ok_or("missing quotient")?;
    if first[0] != GaussianRational::from(-1)
        || tr
            .coefficient_quotients
            .iter()
            .any(|c| c.as_ref() != Some(&first))
    {
        return Err("coefficient quotients vary".into());
    }
    let t0 = q(1, 10000);
    let near = smooth_divisor(&fam, &[t0.clone(), &t0 + q(1, 1_000_000)], true)
        .map_err(|e| e.to_string())?;
    let rq = near.root_quotients[0].ok_or("root isolation failed")?;
    require(rq > 10.0, format!("divisor z^2 - t at 41 samples, quotients constant -1, root quotient {rq:.3} at t = 1e-4"))
}

fn test_curves() -> Vec<(&'static str, HoloCurve)> {
    vec![
        ("veronese", HoloCurve::veronese()),
        ("coalesce(1)", CurveFamily::coalesce().at(&q(1, 1)).unwrap()),
        (
            "cmr(4,1)",
            CurveFamily::cmr(4, 1).unwrap().at(&q(0, 1)).unwrap(),
        ),
    ]
}

fn numerical_geometry(run: &mut Run) {
    let spec = QuadratureSpec::default();
    let cal = Calibration::from_veronese(&spec).unwrap();
    for (name, f) in test_curves() {
        let title = format!("degree and energy of the {name} transform");
        run.criterion(9, &title, Duration::from_secs(60), || {
            let s = f.invariants();
            let de = degree_energy(&GaussEvaluator::new(f.clone()).unwrap(), &spec, &cal)
                .map_err(|e| e.to_string())?;
            let mut got = [de.e_partial_plus, de.e_partial_minus];
            let mut want = [s.k as f64, (2 * s.k - 2 - s.r) as f64];
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            let ok = (de.d_num - s.d as f64).abs() <= 1e-3
                && (de.e_num - s.energy as f64).abs() <= 1e-3
                && got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 1e-3);
            require(
                ok,
                format!(
                    "d = {:.6} ({}), E = {:.6} ({}), partials {:.6}, {:.6} ({}, {})",
                    de.d_num, s.d, de.e_num, s.energy, got[0], got[1], want[0], want[1]
                ),
            )
        });
    }
}

fn residuals() -> Verdict {
    let grid = SampleGrid::default();
    let mut worst: f64 = 0.0;
    for (name, f) in test_curves() {
        let lifts: [(&str, Box<dyn Lift>); 2] = [
            (
                "transform",
                Box::new(GaussEvaluator::new(f.clone()).unwrap()),
            ),
            ("holomorphic", Box::new(HolomorphicLift::new(&f))),
        ];
        for (kind, lift) in &lifts {
            let h = harmonicity_residual(lift.as_ref(), &grid, 1e-3);
            let c = conformality_residual(lift.as_ref(), &grid, 1e-3);
            if h > 1e-3 || c > 1e-3 {
                return Err(format!(
                    "{name} {kind}: harmonicity {h:.3e}, conformality {c:.3e}"
                ));
            }
            worst = worst.max(h).max(c);
        }
    }
    let control = harmonicity_residual(&ControlLift, &grid, 1e-3);
    require(
        control > 1e-1,
        format!("largest residual {worst:.3e}, control {control:.3e}"),
    )
}

fn probe() -> Verdict {
    let deltas = [q(1, 100), q(1, 1000), q(1, 10000)];
    let mut limits = Vec::new();
    for (fam, t0) in [
        (CurveFamily::coalesce(), q(1, 4)),
        (CurveFamily::burstall(), q(1, 2)),
    ] {
        let v: Vec<f64> = deltas
            .iter()
            .map(|d| differential_probe(&fam, &t0, d).unwrap())
            .collect();
        if !(v.iter().all(|&x| x > 0.0) && (v[2] - v[1]).abs() < 0.05 * v[2]) {
            return Err(format!("{}: {v:?}", fam.name));
        }
        limits.push(format!("{} {:.6}", fam.name, v[2]));
    }
    let fam = CurveFamily::coalesce();
    let small = q(1, 100000);
    let base = differential_probe(&fam, &q(1, 4), &small).unwrap();
    let fast = differential_probe(&fam.reparametrize(&q(2, 1)), &q(1, 8), &small).unwrap();
    if (fast / base - 2.0).abs() > 0.1 {
        return Err(format!("reparametrized ratio {}", fast / base));
    }
    let constant = CurveFamily::constant("veronese", &HoloCurve::veronese());
    for d in &deltas {
        let v = differential_probe(&constant, &q(0, 1), d).unwrap();
        if v != 0.0 {
            return Err(format!("constant family gives {v}"));
        }
    }
    Ok(format!(
        "limits [{}], reparametrized ratio {:.4}, constant family 0",
        limits.join(", "),
        fast / base
    ))
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_harmsphere"))
            .args(["selftest", "--seed", "11"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    require(
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!(
            "exit {:?}, {} bytes, identical {}",
            a.status.code(),
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() {
    let mut run = Run { failures: 0 };
    let s = Duration::from_secs;
    run.criterion(1, "exact invariants of the presets", s(1), exact_invariants);
    run.criterion(
        2,
        "kernel dimension of the non-generic example",
        s(1),
        kernel_example_dimension,
    );
    run.criterion(
        3,
        "kernel dimension k + 1 - r in range",
        s(30),
        kernel_dimension_in_range,
    );
    run.criterion(
        4,
        "divisibility equals kernel membership",
        s(60),
        divisibility_criterion,
    );
    run.criterion(5, "bounded Bezout identity", s(30), bounded_bezout);
    run.criterion(
        6,
        "conjugate polar is an involution",
        s(60),
        polar_involution,
    );
    run.criterion(
        7,
        "burstall Gauss transform jumps at t = 0",
        s(5),
        burstall_discontinuity,
    );
    run.criterion(
        8,
        "coalescing divisor moves smoothly",
        s(10),
        coalesce_smoothness,
    );
    numerical_geometry(&mut run);
    run.criterion(
        10,
        "conformality and harmonicity residuals",
        s(30),
        residuals,
    );
    run.criterion(11, "differential probe", s(30), probe);
    run.criterion(12, "selftest is byte-reproducible", s(120), determinism);
    if run.failures > 0 {
        println!("{} criterion line(s) failed", run.failures);
        std::process::exit(1);
    }
    println!("all criteria passed");
}

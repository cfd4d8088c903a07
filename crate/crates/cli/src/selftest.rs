//! The worked examples, rerun end to end, plus seeded property samples.
//! The report contains no timings, so equal seeds give equal bytes.

use std::error::Error;
use std::f64::consts::FRAC_PI_2;

use harmsphere::curve::InvariantSheet;
use harmsphere::family::{smooth_divisor, symmetric_grid, trace_gauss, uniform_grid, CurveFamily};
use harmsphere::gauss::{
    degree_energy, harmonicity_residual, Calibration, ControlLift, GaussEvaluator, HolomorphicLift,
    Lift, SampleGrid, SpherePoint,
};
use harmsphere::kernel::{build_t, kernel_report, pkl_basis, KernelSpec};
use harmsphere::{random, ExactPoly, GaussianRational, HoloCurve, ProjPoint};
use num_rational::BigRational;
use serde::Serialize;

use crate::commands::partials_match;
use crate::json::{self, float};
use crate::{Outcome, RunConfig, Tolerances};

type CheckResult = Result<(bool, String), Box<dyn Error>>;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub schema: u32,
    pub seed: u64,
    pub quad_order: usize,
    pub chart_split: f64,
    pub fd_step: f64,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn p(c: &[i64]) -> ExactPoly {
    ExactPoly::from_ints(c)
}

fn curve(p0: &[i64], p1: &[i64], p2: &[i64]) -> HoloCurve {
    HoloCurve::from_ints(p0, p1, p2).expect("fixed example curves are valid")
}

/// `ψ_t` with `F_t ∧ F_t′ = (z² − t)·ψ_t` for the coalescing family.
fn coalesce_cofactor(t: &BigRational) -> [ExactPoly; 3] {
    let c = |coeffs: &[i64]| {
        GaussianRational::real(
            coeffs
                .iter()
                .rev()
                .fold(BigRational::from_integer(0.into()), |acc, &x| {
                    acc * t + q(x, 1)
                }),
        )
    };
    [
        ExactPoly::new(vec![c(&[-3, 0, 4, 0, -1]), 0.into(), c(&[0, -2, 0, 6])]),
        ExactPoly::new(vec![0.into(), 4.into(), 0.into(), c(&[0, 4])]),
        ExactPoly::new(vec![
            c(&[3, 0, -1]),
            0.into(),
            c(&[0, 8]),
            0.into(),
            c(&[-1, 0, 3]),
        ]),
    ]
}

/// The six integers `(k, r, d, E, k′, r′)` with `k′, r′` read off the
/// computed polar rather than the formula.
fn measured_sheet(f: &HoloCurve) -> Result<InvariantSheet, Box<dyn Error>> {
    let h = f.conjugate_polar()?;
    let (k, r) = (f.degree() as i64, f.ramification().r_total as i64);
    Ok(InvariantSheet {
        k,
        r,
        d: k - r - 2,
        energy: 3 * k - r - 2,
        k_polar: h.degree() as i64,
        r_polar: h.ramification().r_total as i64,
    })
}

fn show(f: &HoloCurve) -> String {
    let [a, b, c] = f.components();
    format!("({a}, {b}, {c})")
}

fn sheet_str(s: &InvariantSheet) -> String {
    format!(
        "(k, r, d, E, k', r') = ({}, {}, {}, {}, {}, {})",
        s.k, s.r, s.d, s.energy, s.k_polar, s.r_polar
    )
}

/// The kernel example with a non-monic `p₀`, normalized before use.
pub fn kernel_example() -> KernelSpec {
    let a = ExactPoly::from_roots(&[
        (0.into(), 1),
        (1.into(), 1),
        ((-1).into(), 1),
        (2.into(), 1),
    ]);
    KernelSpec::normalized(a, p(&[4, -4, 2, 0, 10, -12, 4])).expect("example spec is valid")
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn add(&mut self, name: &str, f: impl FnOnce() -> CheckResult) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn report(cfg: &RunConfig) -> SelftestReport {
    let tol = cfg.tol;
    let mut s = Suite { checks: Vec::new() };
    let burstall = CurveFamily::burstall();
    let coalesce = CurveFamily::coalesce();

    s.add("wedge of (1, z^3, z^2)", || {
        let w = curve(&[1], &[0, 0, 0, 1], &[0, 0, 1]).wedge();
        let want = [p(&[0, 0, 0, 0, -1]), p(&[0, -2]), p(&[0, 0, 3])];
        Ok((w == want, format!("({}, {}, {})", w[0], w[1], w[2])))
    });

    s.add("coalescing wedge factors through z^2 - t", || {
        let mut ok = true;
        for t in [q(-1, 1), q(-1, 2), q(0, 1), q(1, 3), q(1, 1)] {
            let w = coalesce.at(&t)?.wedge();
            let factor =
                ExactPoly::new(vec![GaussianRational::real(-t.clone()), 0.into(), 1.into()]);
            let psi = coalesce_cofactor(&t);
            ok &= (0..3).all(|i| w[i] == &factor * &psi[i]);
        }
        Ok((ok, "t in {-1, -1/2, 0, 1/3, 1}".into()))
    });

    s.add("divisors of the worked examples", || {
        let c1 = coalesce.at(&q(1, 1))?.ramification();
        let b0 = burstall.at(&q(0, 1))?.ramification();
        let b1 = burstall.at(&q(1, 1))?.ramification();
        let c0 = coalesce.at(&q(0, 1))?.ramification();
        let ok = c1.divisor == p(&[-1, 0, 1])
            && c1.r_total == 2
            && b0.divisor == p(&[0, 1])
            && b0.r_total == 1
            && b1.divisor == p(&[1])
            && b1.r_total == 0
            && c0.divisor == p(&[0, 0, 1])
            && c0.r_total == 2;
        let detail = format!(
            "coalesce(1): {}, coalesce(0): {}, burstall(0): {}, burstall(1): {}",
            c1.divisor, c0.divisor, b0.divisor, b1.divisor
        );
        Ok((ok, detail))
    });

    s.add("polar degree 2k - 2 - r", || {
        let h = coalesce.at(&q(1, 1))?.conjugate_polar()?;
        Ok((
            h.degree() == 4,
            format!("coalesce(1) polar has degree {}", h.degree()),
        ))
    });

    s.add("invariant formulas", || {
        let want = [
            ((2, 0), (0, 4, 2, 0)),
            ((4, 2), (0, 8, 4, 2)),
            ((3, 0), (1, 7, 4, 3)),
        ];
        let ok = want.iter().all(|&((k, r), w)| {
            let s = InvariantSheet::from_kr(k, r);
            (s.d, s.energy, s.k_polar, s.r_polar) == w
        });
        Ok((ok, "(2,0), (4,2), (3,0)".into()))
    });

    s.add("preset invariants match the formulas", || {
        let mut curves = vec![
            ("veronese".to_string(), HoloCurve::veronese()),
            ("burstall(0)".into(), burstall.at(&q(0, 1))?),
            ("burstall(1)".into(), burstall.at(&q(1, 1))?),
            ("coalesce(0)".into(), coalesce.at(&q(0, 1))?),
            ("coalesce(1)".into(), coalesce.at(&q(1, 1))?),
        ];
        for k in 2..=8 {
            for r in 0..=k - 2 {
                curves.push((
                    format!("cmr({k},{r})"),
                    CurveFamily::cmr(k, r)?.at(&q(0, 1))?,
                ));
            }
        }
        let mut bad = Vec::new();
        for (name, f) in &curves {
            let got = measured_sheet(f)?;
            let want = InvariantSheet::from_kr(got.k, got.r);
            if got != want {
                bad.push(format!("{name}: {}", sheet_str(&got)));
            }
        }
        Ok((
            bad.is_empty(),
            format!("{} curves; mismatches: [{}]", curves.len(), bad.join("; ")),
        ))
    });

    s.add("presets reproduce the example curves", || {
        let b1 = burstall.at(&q(1, 1))?;
        let cmr = CurveFamily::cmr(3, 1)?.at(&q(0, 1))?;
        let ok = b1 == curve(&[1], &[0, 1, 0, 1], &[0, 0, 1])
            && (b1.degree(), b1.ramification().r_total) == (3, 0)
            && cmr == curve(&[1], &[1, 1], &[0, 0, 0, 1])
            && cmr.ramification().r_total == 1;
        Ok((
            ok,
            format!("burstall(1) = {}, cmr(3,1) = {}", show(&b1), show(&cmr)),
        ))
    });

    s.add("gauss transform of burstall at z = 0", || {
        let zero = SpherePoint::Exact(0.into());
        let v1 = GaussEvaluator::new(burstall.at(&q(1, 1))?)?.gauss_eval(&zero);
        let v0 = GaussEvaluator::new(burstall.at(&q(0, 1))?)?.gauss_eval(&zero);
        let ok = v1.proj_eq(&ProjPoint::from_ints([0, 1, 0]), 0.0)
            && v0.proj_eq(&ProjPoint::from_ints([0, 0, 1]), 0.0);
        Ok((ok, "t = 1 gives [0,1,0], t = 0 gives [0,0,1]".into()))
    });

    let cal = Calibration::from_veronese(&cfg.quad);
    let geometry_case = |lift: &dyn Lift, d: f64, e: f64, partials: [f64; 2]| -> CheckResult {
        let cal = cal.clone()?;
        let de = degree_energy(lift, &cfg.quad, &cal)?;
        let ok = (de.d_num - d).abs() <= tol.geometry
            && (de.e_num - e).abs() <= tol.geometry
            && partials_match(
                [de.e_partial_plus, de.e_partial_minus],
                partials,
                tol.geometry,
            );
        let detail = format!(
            "d = {}, E = {}, partials = ({}, {})",
            float(de.d_num),
            float(de.e_num),
            float(de.e_partial_plus),
            float(de.e_partial_minus)
        );
        Ok((ok, detail))
    };
    s.add("veronese gauss transform degree and energy", || {
        geometry_case(
            &GaussEvaluator::new(HoloCurve::veronese())?,
            0.0,
            4.0,
            [2.0, 2.0],
        )
    });
    s.add("coalesce(1) gauss transform degree and energy", || {
        geometry_case(
            &GaussEvaluator::new(coalesce.at(&q(1, 1))?)?,
            0.0,
            8.0,
            [4.0, 4.0],
        )
    });
    s.add("veronese as a holomorphic map", || {
        geometry_case(
            &HolomorphicLift::new(&HoloCurve::veronese()),
            2.0,
            2.0,
            [2.0, 0.0],
        )
    });

    s.add("harmonicity residual separates the control", || {
        let grid = SampleGrid::default();
        let g = harmonicity_residual(
            &GaussEvaluator::new(HoloCurve::veronese())?,
            &grid,
            cfg.fd_step,
        );
        let c = harmonicity_residual(&ControlLift, &grid, cfg.fd_step);
        Ok((
            g <= tol.residual && c > tol.control,
            format!("veronese transform {}, control {}", float(g), float(c)),
        ))
    });

    s.add("kernel example has dimension 4", || {
        let t = build_t(&kernel_example());
        let rep = kernel_report(&t);
        let shape = (t.entries.rows(), t.entries.cols());
        Ok((
            shape == (4, 7) && rep.dim_kernel == 4,
            format!(
                "{}x{} matrix, rank {}, kernel {}",
                shape.0, shape.1, rep.rank, rep.dim_kernel
            ),
        ))
    });

    s.add("kernel dimension k + 1 - r on seeded specs", || {
        let mut rng = random::rng(cfg.seed);
        let mut bad = 0;
        for _ in 0..200 {
            let spec = random::kernel_spec(&mut rng, 10, true);
            let rep = kernel_report(&build_t(&spec));
            if rep.dim_kernel != spec.k() + 1 - spec.r() || pkl_basis(&spec).is_err() {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("200 specs, {bad} failures")))
    });

    s.add("polar involution on seeded curves", || {
        let mut rng = random::rng(cfg.seed.wrapping_add(1));
        let mut bad = 0;
        for i in 0..30 {
            let f = random::curve(&mut rng, 2 + i % 5, i % 2 == 0);
            let h = f.conjugate_polar()?;
            if !h.conjugate_polar()?.projectively_equal(&f)
                || h.degree() != 2 * f.degree() - 2 - f.ramification().r_total
            {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("30 curves, {bad} failures")))
    });

    s.add("burstall trace jumps once by pi/2", || {
        let grid = symmetric_grid(&q(1, 100), 20);
        let tr = trace_gauss(&burstall, &SpherePoint::Exact(0.into()), &grid, 0.25)?;
        let values_ok = tr.t.iter().zip(&tr.values).all(|(t, v)| {
            let want = if *t == q(0, 1) { [0, 0, 1] } else { [0, 1, 0] };
            v.proj_eq(&ProjPoint::from_ints(want), 0.0)
        });
        let jump = tr.jumps.first().map(|j| j.distance).unwrap_or(0.0);
        let ok = values_ok && tr.jumps.len() == 1 && (jump - FRAC_PI_2).abs() <= tol.jump;
        Ok((
            ok,
            format!(
                "{} samples, {} jump(s), distance {}",
                grid.len(),
                tr.jumps.len(),
                float(jump)
            ),
        ))
    });

    s.add("coalesce trace at z = 1 has no jumps", || {
        let grid = uniform_grid(&q(-1, 2), &q(1, 2), 101);
        let tr = trace_gauss(&coalesce, &SpherePoint::Exact(1.into()), &grid, 0.25)?;
        let largest = tr.distances.iter().copied().fold(0.0, f64::max);
        Ok((
            tr.jumps.is_empty(),
            format!("largest step {}", float(largest)),
        ))
    });

    s.add("coalesce divisor is z^2 - t", || {
        let grid = uniform_grid(&q(-1, 2), &q(1, 2), 21);
        let tr = smooth_divisor(&coalesce, &grid, false)?;
        let exact = tr.t.iter().zip(&tr.divisors).all(|(t, d)| {
            *d == ExactPoly::new(vec![GaussianRational::real(-t.clone()), 0.into(), 1.into()])
        });
        let minus_one = GaussianRational::from(-1);
        let quotients = tr
            .coefficient_quotients
            .iter()
            .all(|c| c.as_ref().is_some_and(|c| c[0] == minus_one));
        Ok((
            exact && quotients && tr.stratum_changes.is_empty(),
            format!("{} samples", grid.len()),
        ))
    });

    s.add("burstall changes stratum at t = 0", || {
        let tr = smooth_divisor(&burstall, &symmetric_grid(&q(1, 10), 5), false)?;
        let at: Vec<&str> = tr.stratum_changes.iter().map(|c| c.t.as_str()).collect();
        Ok((at == ["0/1"], format!("changes at {at:?}")))
    });

    let passed = s.checks.iter().filter(|c| c.passed).count();
    SelftestReport {
        schema: harmsphere::io::SCHEMA_VERSION,
        seed: cfg.seed,
        quad_order: cfg.quad.order,
        chart_split: cfg.quad.split_radius,
        fd_step: cfg.fd_step,
        tolerances: tol,
        failed: s.checks.len() - passed,
        passed,
        checks: s.checks,
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let r = report(cfg);
    Outcome {
        passed: r.failed == 0,
        text: json::to_string(&r),
    }
}

use std::fmt::Write as _;

use harmsphere::curve::normalize_phase;
use harmsphere::family::{
    smooth_divisor, trace_gauss, uniform_grid, CurveFamily, DivisorTrace, GaussTrace,
};
use harmsphere::gauss::{
    geometry as measure, Chart, GaussEvaluator, GeometryConfig, GeometryReport, HolomorphicLift,
    Lift, SampleGrid, SpherePoint,
};
use harmsphere::io::{parse_curve, parse_kernel_spec, CurveFile, SCHEMA_VERSION};
use harmsphere::kernel::{build_t, kernel_report, pkl_basis, KernelReport};
use harmsphere::scalar::parse_rational;
use harmsphere::{ExactPoly, GaussianRational, InvariantSheet};
use num_rational::BigRational;
use serde::Serialize;

use crate::json::{self, float};
use crate::{CliError, Outcome, RunConfig, TraceFormat};

#[derive(Serialize)]
struct Ramification {
    divisor: ExactPoly,
    r_finite: usize,
    r_infinity: usize,
    r_total: usize,
}

#[derive(Serialize)]
struct Stratum {
    k: usize,
    r: usize,
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema: u32,
    curve: CurveFile,
    ramification: Ramification,
    invariants: InvariantSheet,
    polar: Stratum,
}

pub fn analyze(input: &str) -> Result<Outcome, CliError> {
    let f = parse_curve(input)?;
    let ram = f.ramification();
    let h = f.conjugate_polar()?;
    let report = AnalyzeReport {
        schema: SCHEMA_VERSION,
        curve: CurveFile::from_curve(&f),
        ramification: Ramification {
            divisor: ram.divisor,
            r_finite: ram.r_finite,
            r_infinity: ram.r_infinity,
            r_total: ram.r_total,
        },
        invariants: f.invariants(),
        polar: Stratum {
            k: h.degree(),
            r: h.ramification().r_total,
        },
    };
    let sheet = report.invariants;
    let consistent =
        (sheet.k_polar, sheet.r_polar) == (report.polar.k as i64, report.polar.r as i64);
    Ok(Outcome {
        text: json::to_string(&report),
        passed: consistent,
    })
}

pub fn polar(input: &str) -> Result<Outcome, CliError> {
    let h = parse_curve(input)?.conjugate_polar()?;
    let mut text = harmsphere::io::curve_to_json(&h);
    text.push('\n');
    Ok(Outcome::ok(text))
}

pub fn gauss_sample(
    input: &str,
    n: usize,
    half_width: f64,
    chart: Chart,
) -> Result<Outcome, CliError> {
    if n == 0 || !(half_width > 0.0) {
        return Err(CliError::Argument(
            "grid must be nonempty with positive half-width".into(),
        ));
    }
    let ev = GaussEvaluator::new(parse_curve(input)?)?;
    let grid = SampleGrid {
        n,
        half_width,
        chart,
        ..SampleGrid::default()
    };
    let flag = match chart {
        Chart::Z => "z",
        Chart::W => "w",
    };
    let mut s = String::from("z_re,z_im,phi0_re,phi0_im,phi1_re,phi1_im,phi2_re,phi2_im,chart\n");
    for z in grid.points() {
        let v = normalize_phase(&ev.phi_approx(chart, z));
        let _ = write!(s, "{},{}", float(z.re), float(z.im));
        for c in v {
            let _ = write!(s, ",{},{}", float(c.re), float(c.im));
        }
        let _ = writeln!(s, ",{flag}");
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct Expected {
    d: f64,
    #[serde(rename = "E")]
    energy: f64,
    partials: [f64; 2],
}

#[derive(Serialize)]
struct Checks {
    degree: bool,
    energy: bool,
    partials: bool,
    conformality: bool,
    harmonicity: bool,
}

#[derive(Serialize)]
struct GeometryOutput {
    schema: u32,
    map: &'static str,
    invariants: InvariantSheet,
    expected: Expected,
    report: GeometryReport,
    tolerance: f64,
    residual_tolerance: f64,
    checks: Checks,
}

/// Sorted `{E₊, E₋}` against sorted expected partials.
pub fn partials_match(got: [f64; 2], want: [f64; 2], tol: f64) -> bool {
    let mut got = got;
    let mut want = want;
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= tol)
}

pub fn geometry(
    input: &str,
    holomorphic: bool,
    n: usize,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let f = parse_curve(input)?;
    let sheet = f.invariants();
    let geo = GeometryConfig::calibrated(
        cfg.quad,
        SampleGrid {
            n,
            ..SampleGrid::default()
        },
        cfg.fd_step,
    )?;
    let (map, lift, expected): (_, Box<dyn Lift>, _) = if holomorphic {
        let k = sheet.k as f64;
        (
            "holomorphic",
            Box::new(HolomorphicLift::new(&f)),
            Expected {
                d: k,
                energy: k,
                partials: [k, 0.0],
            },
        )
    } else {
        let expected = Expected {
            d: sheet.d as f64,
            energy: sheet.energy as f64,
            partials: [sheet.k as f64, (2 * sheet.k - 2 - sheet.r) as f64],
        };
        ("gauss", Box::new(GaussEvaluator::new(f)?), expected)
    };
    let report = measure(lift.as_ref(), &geo)?;
    let tol = cfg.tol.geometry;
    let checks = Checks {
        degree: (report.d_num - expected.d).abs() <= tol,
        energy: (report.e_num - expected.energy).abs() <= tol,
        partials: partials_match(
            [report.e_partial_plus, report.e_partial_minus],
            expected.partials,
            tol,
        ),
        conformality: report.conformality_residual <= cfg.tol.residual,
        harmonicity: report.harmonicity_residual <= cfg.tol.residual,
    };
    let passed = checks.degree
        && checks.energy
        && checks.partials
        && checks.conformality
        && checks.harmonicity;
    let out = GeometryOutput {
        schema: SCHEMA_VERSION,
        map,
        invariants: sheet,
        expected,
        report,
        tolerance: tol,
        residual_tolerance: cfg.tol.residual,
        checks,
    };
    Ok(Outcome {
        text: json::to_string(&out),
        passed,
    })
}

#[derive(Serialize)]
struct Witnesses {
    polynomials: Vec<ExactPoly>,
    values: Vec<Vec<GaussianRational>>,
}

#[derive(Serialize)]
struct KernelOutput {
    schema: u32,
    #[serde(flatten)]
    report: KernelReport,
    expected_dim: Option<usize>,
    matrix: Vec<Vec<GaussianRational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Witnesses>,
}

pub fn kernel(input: &str, witnesses: bool) -> Result<Outcome, CliError> {
    let spec = parse_kernel_spec(input)?;
    let t = build_t(&spec);
    let report = kernel_report(&t);
    let expected_dim = report.expected_dim();
    let passed = expected_dim.is_none_or(|d| d == report.dim_kernel);
    let rows = |m: &harmsphere::ExactMatrix| (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let witnesses = if witnesses {
        let w = pkl_basis(&spec)?;
        Some(Witnesses {
            values: rows(&w.values),
            polynomials: w.witnesses,
        })
    } else {
        None
    };
    let out = KernelOutput {
        schema: SCHEMA_VERSION,
        matrix: rows(&t.entries),
        report,
        expected_dim,
        witnesses,
    };
    Ok(Outcome {
        text: json::to_string(&out),
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct TraceOptions {
    pub z0: String,
    pub t_min: Option<String>,
    pub t_max: Option<String>,
    pub samples: usize,
    pub threshold: f64,
    pub roots: bool,
    pub format: TraceFormat,
}

fn rational_arg(s: &str) -> Result<BigRational, CliError> {
    parse_rational(s).map_err(|e| CliError::Argument(e.to_string()))
}

/// `inf`, `re` or `re,im` with rational parts.
pub fn parse_sphere_point(s: &str) -> Result<SpherePoint, CliError> {
    if s.trim() == "inf" {
        return Ok(SpherePoint::Infinity);
    }
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (rational_arg(re)?, rational_arg(im)?),
        None => (rational_arg(s)?, BigRational::from_integer(0.into())),
    };
    Ok(SpherePoint::Exact(GaussianRational::new(re, im)))
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    schema: u32,
    gauss: &'a GaussTrace,
    /// Unit representatives of `φ_t(z₀)`, as `[re, im]` pairs.
    gauss_values: Vec<[[f64; 2]; 3]>,
    divisor: &'a DivisorTrace,
}

pub fn family(fam: &CurveFamily, opts: &TraceOptions) -> Result<Outcome, CliError> {
    let lo = opts
        .t_min
        .as_deref()
        .map(rational_arg)
        .transpose()?
        .unwrap_or_else(|| fam.domain.0.clone());
    let hi = opts
        .t_max
        .as_deref()
        .map(rational_arg)
        .transpose()?
        .unwrap_or_else(|| fam.domain.1.clone());
    if opts.samples < 2 || lo >= hi {
        return Err(CliError::Argument(
            "need at least two samples on a nonempty t interval".into(),
        ));
    }
    let grid = uniform_grid(&lo, &hi, opts.samples);
    if let Some(t) = grid.iter().find(|t| !fam.contains(t)) {
        return Err(harmsphere::family::FamilyError::OutsideDomain(t.to_string()).into());
    }
    let z0 = parse_sphere_point(&opts.z0)?;
    let text = match opts.format {
        TraceFormat::GaussCsv => trace_gauss(fam, &z0, &grid, opts.threshold)?.to_csv(),
        TraceFormat::DivisorCsv => smooth_divisor(fam, &grid, opts.roots)?.to_csv(),
        TraceFormat::Json => {
            let gauss = trace_gauss(fam, &z0, &grid, opts.threshold)?;
            let divisor = smooth_divisor(fam, &grid, opts.roots)?;
            let gauss_values = gauss
                .values
                .iter()
                .map(|v| v.normalized().map(|c| [c.re, c.im]))
                .collect();
            json::to_string(&FamilyOutput {
                schema: SCHEMA_VERSION,
                gauss: &gauss,
                gauss_values,
                divisor: &divisor,
            })
        }
    };
    Ok(Outcome::ok(text))
}

//! One-parameter families `t ↦ f_t` whose coefficients are polynomials in `t`,
//! and diagnostics for how the divisor and Gauss transform move with `t`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{fs_distance, normalize_phase, CurveError, HoloCurve, ProjPoint, Triple};
use crate::gauss::{Chart, GaussError, GaussEvaluator, SpherePoint};
use crate::poly::{ApproxPoly, ExactPoly};
use crate::scalar::{format_rational, GaussianRational};

/// Residual bound accepted for a numerically isolated divisor root.
pub const ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset parameters out of range: k = {k}, r = {r} (need k >= 2 and 0 <= r <= k - 2)")]
    RangeViolation { k: i64, r: i64 },
    #[error("preset {name:?} takes {expected} parameter(s), got {got}")]
    ParameterCount {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("empty or reversed parameter domain")]
    InvalidDomain,
    #[error("t = {0} lies outside the family's domain")]
    OutsideDomain(String),
    #[error("stratum changes at t = {t}: (k, r) = {from:?} -> {to:?}")]
    StratumJump {
        t: String,
        from: (usize, usize),
        to: (usize, usize),
    },
    #[error("family curve at t = {t}: {source}")]
    Curve { t: String, source: CurveError },
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `p_i(z; t) = Σ_j tables[i][j](t) · zʲ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    pub name: String,
    pub tables: [Vec<ExactPoly>; 3],
    pub domain: (BigRational, BigRational),
}

impl CurveFamily {
    pub fn new(
        name: impl Into<String>,
        tables: [Vec<ExactPoly>; 3],
        domain: (BigRational, BigRational),
    ) -> Result<Self, FamilyError> {
        if domain.0 > domain.1 {
            return Err(FamilyError::InvalidDomain);
        }
        Ok(Self {
            name: name.into(),
            tables,
            domain,
        })
    }

    /// `name` is one of `burstall`, `coalesce`, or `cmr` with `params = [k, r]`.
    pub fn preset(name: &str, params: &[i64]) -> Result<Self, FamilyError> {
        let expect = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(FamilyError::ParameterCount {
                    name: name.to_string(),
                    expected: n,
                    got: params.len(),
                })
            }
        };
        match name {
            "burstall" => expect(0).map(|_| Self::burstall()),
            "coalesce" => expect(0).map(|_| Self::coalesce()),
            "cmr" => {
                expect(2)?;
                Self::cmr(params[0], params[1])
            }
            _ => Err(FamilyError::UnknownPreset(name.to_string())),
        }
    }

    /// `(1, tz + z³, z²)`, unramified for `t ≠ 0` and ramified at `0` for `t = 0`.
    pub fn burstall() -> Self {
        let c = ExactPoly::from_ints;
        let zero = ExactPoly::zero;
        Self {
            name: "burstall".into(),
            tables: [
                vec![c(&[1])],
                vec![zero(), c(&[0, 1]), zero(), c(&[1])],
                vec![zero(), zero(), c(&[1])],
            ],
            domain: (rat(-1, 1), rat(1, 1)),
        }
    }

    /// `(z⁴ + 1, (1 − 3t²)z³ + (t³ − 3t)z, 2tz² + 1 − t²)`, with divisor `z² − t`.
    pub fn coalesce() -> Self {
        let c = ExactPoly::from_ints;
        let zero = ExactPoly::zero;
        Self {
            name: "coalesce".into(),
            tables: [
                vec![c(&[1]), zero(), zero(), zero(), c(&[1])],
                vec![zero(), c(&[0, -3, 0, 1]), zero(), c(&[1, 0, -3])],
                vec![c(&[1, 0, -1]), zero(), c(&[0, 2])],
            ],
            domain: (rat(-1, 1), rat(1, 1)),
        }
    }

    /// The constant family `(1, (z + 1)^(k−r−1), zᵏ)`, of degree `k` with all
    /// `r` ramification at infinity.
    pub fn cmr(k: i64, r: i64) -> Result<Self, FamilyError> {
        if k < 2 || r < 0 || r > k - 2 {
            return Err(FamilyError::RangeViolation { k, r });
        }
        let (k, m) = (k as usize, (k - r - 1) as usize);
        let base = ExactPoly::from_ints(&[1, 1]);
        let mut q = ExactPoly::one();
        for _ in 0..m {
            q = &q * &base;
        }
        let konst = |p: &ExactPoly| {
            p.coeffs()
                .iter()
                .map(|c| ExactPoly::constant(c.clone()))
                .collect::<Vec<_>>()
        };
        let fam = Self {
            name: format!("cmr({k},{r})"),
            tables: [
                vec![ExactPoly::one()],
                konst(&q),
                konst(&ExactPoly::monomial(1.into(), k)),
            ],
            domain: (rat(-1, 1), rat(1, 1)),
        };
        let got = fam.at(&BigRational::zero())?.ramification().r_total;
        assert_eq!(got as i64, r, "cmr preset has the wrong ramification");
        Ok(fam)
    }

    /// The family `t ↦ f` for a single curve.
    pub fn constant(name: impl Into<String>, f: &HoloCurve) -> Self {
        let konst = |p: &ExactPoly| {
            p.coeffs()
                .iter()
                .map(|c| ExactPoly::constant(c.clone()))
                .collect::<Vec<_>>()
        };
        let [p0, p1, p2] = f.components();
        Self {
            name: name.into(),
            tables: [konst(p0), konst(p1), konst(p2)],
            domain: (rat(-1, 1), rat(1, 1)),
        }
    }

    /// `t ↦ f_{c·t}`, on the correspondingly rescaled domain.
    pub fn reparametrize(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero(), "reparametrization by zero");
        let cg = GaussianRational::real(c.clone());
        let scale = |p: &ExactPoly| {
            let mut pow = GaussianRational::one();
            let mut out = Vec::with_capacity(p.coeffs().len());
            for coeff in p.coeffs() {
                out.push(coeff * &pow);
                pow *= &cg;
            }
            ExactPoly::new(out)
        };
        let tables = self
            .tables
            .clone()
            .map(|row| row.iter().map(scale).collect());
        let (a, b) = (&self.domain.0 / c, &self.domain.1 / c);
        let domain = if a <= b { (a, b) } else { (b, a) };
        Self {
            name: format!("{}[t*{}]", self.name, format_rational(c)),
            tables,
            domain,
        }
    }

    pub fn contains(&self, t: &BigRational) -> bool {
        self.domain.0 <= *t && *t <= self.domain.1
    }

    pub fn triple_at(&self, t: &BigRational) -> Triple {
        let tg = GaussianRational::real(t.clone());
        [0, 1, 2].map(|i| ExactPoly::compose_constant_coeffs(&self.tables[i], &tg))
    }

    pub fn at(&self, t: &BigRational) -> Result<HoloCurve, FamilyError> {
        if !self.contains(t) {
            return Err(FamilyError::OutsideDomain(format_rational(t)));
        }
        HoloCurve::from_triple(self.triple_at(t)).map_err(|source| FamilyError::Curve {
            t: format_rational(t),
            source,
        })
    }

    /// `(k, r_total)` at `t`.
    pub fn stratum_at(&self, t: &BigRational) -> Result<(usize, usize), FamilyError> {
        let f = self.at(t)?;
        Ok((f.degree(), f.ramification().r_total))
    }
}

/// `{lo + i·(hi − lo)/(n − 1)}`, `n ≥ 2` points.
pub fn uniform_grid(lo: &BigRational, hi: &BigRational, n: usize) -> Vec<BigRational> {
    assert!(n >= 2, "grid needs at least two points");
    let step = (hi - lo) / BigRational::from_integer((n - 1).into());
    (0..n)
        .map(|i| lo + &step * BigRational::from_integer(i.into()))
        .collect()
}

/// `{j·step : −count ≤ j ≤ count}`.
pub fn symmetric_grid(step: &BigRational, count: usize) -> Vec<BigRational> {
    let c = count as i64;
    (-c..=c)
        .map(|j| step * BigRational::from_integer(j.into()))
        .collect()
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// A run of consecutive flagged steps, between samples `start` and `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jump {
    pub start: usize,
    pub end: usize,
    pub distance: f64,
}

/// `φ_t(z₀)` along a grid of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussTrace {
    pub family: String,
    pub z0: String,
    #[serde(serialize_with = "ser_rationals")]
    pub t: Vec<BigRational>,
    #[serde(skip)]
    pub values: Vec<ProjPoint>,
    /// Fubini–Study distance between consecutive samples.
    pub distances: Vec<f64>,
    /// `distance / Δt`.
    pub quotients: Vec<f64>,
    /// `distance > threshold`, per consecutive pair.
    pub flags: Vec<bool>,
    pub threshold: f64,
    pub jumps: Vec<Jump>,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn sphere_label(z: &SpherePoint) -> String {
    match z {
        SpherePoint::Exact(z) => z.to_string(),
        SpherePoint::Approx(z) => format!("{:.16e}{:+.16e}i", z.re, z.im),
        SpherePoint::Infinity => "inf".into(),
    }
}

fn group_jumps(flags: &[bool], distances: &[f64]) -> Vec<Jump> {
    let mut out: Vec<Jump> = Vec::new();
    for (i, &f) in flags.iter().enumerate() {
        if !f {
            continue;
        }
        match out.last_mut() {
            Some(j) if j.end == i => {
                j.end = i + 1;
                j.distance = j.distance.max(distances[i]);
            }
            _ => out.push(Jump {
                start: i,
                end: i + 1,
                distance: distances[i],
            }),
        }
    }
    out
}

pub fn trace_gauss(
    fam: &CurveFamily,
    z0: &SpherePoint,
    grid: &[BigRational],
    threshold: f64,
) -> Result<GaussTrace, FamilyError> {
    let mut values = Vec::with_capacity(grid.len());
    for t in grid {
        let ev = GaussEvaluator::new(fam.at(t)?)?;
        values.push(ev.gauss_eval(z0));
    }
    let mut distances = Vec::new();
    let mut quotients = Vec::new();
    for i in 1..values.len() {
        let d = values[i - 1].fs_distance(&values[i]);
        distances.push(d);
        quotients.push(d / to_f64(&(&grid[i] - &grid[i - 1])).abs());
    }
    let flags: Vec<bool> = distances.iter().map(|&d| d > threshold).collect();
    let jumps = group_jumps(&flags, &distances);
    Ok(GaussTrace {
        family: fam.name.clone(),
        z0: sphere_label(z0),
        t: grid.to_vec(),
        values,
        distances,
        quotients,
        flags,
        threshold,
        jumps,
    })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

impl GaussTrace {
    /// One row per sample: exact `t`, unit phase-normalized value, and the
    /// step statistics from the previous sample (empty on the first row).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,re0,im0,re1,im1,re2,im2,fs_distance,quotient,jump\n");
        for (i, (t, v)) in self.t.iter().zip(&self.values).enumerate() {
            let n = normalize_phase(&v.to_approx());
            let _ = write!(s, "{}", format_rational(t));
            for c in n {
                let _ = write!(s, ",{},{}", fmt_f(c.re), fmt_f(c.im));
            }
            if i == 0 {
                s.push_str(",,,\n");
            } else {
                let _ = writeln!(
                    s,
                    ",{},{},{}",
                    fmt_f(self.distances[i - 1]),
                    fmt_f(self.quotients[i - 1]),
                    self.flags[i - 1]
                );
            }
        }
        s
    }
}

/// A sample whose `(k, r)` differs from the most common one on the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumChange {
    pub index: usize,
    pub t: String,
    pub generic: (usize, usize),
    pub found: (usize, usize),
}

/// The divisor `R(f_t)` along a grid of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorTrace {
    pub family: String,
    #[serde(serialize_with = "ser_rationals")]
    pub t: Vec<BigRational>,
    pub strata: Vec<(usize, usize)>,
    pub divisors: Vec<ExactPoly>,
    /// Exact `(R(t_{i+1}) − R(t_i)) / Δt` coefficientwise, when both divisors
    /// have the same degree and stratum.
    pub coefficient_quotients: Vec<Option<Vec<GaussianRational>>>,
    /// Numerically isolated roots, `None` when isolation was skipped or failed.
    #[serde(skip)]
    pub roots: Vec<Option<Vec<Complex64>>>,
    /// Largest root displacement over `Δt`, roots matched to nearest neighbours.
    pub root_quotients: Vec<Option<f64>>,
    pub stratum_changes: Vec<StratumChange>,
}

impl DivisorTrace {
    pub fn require_constant_stratum(&self) -> Result<(), FamilyError> {
        match self.stratum_changes.first() {
            None => Ok(()),
            Some(c) => Err(FamilyError::StratumJump {
                t: c.t.clone(),
                from: c.generic,
                to: c.found,
            }),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s =
            String::from("t,k,r,divisor,coefficient_quotients,root_quotient,stratum_change\n");
        for i in 0..self.t.len() {
            let (k, r) = self.strata[i];
            let _ = write!(
                s,
                "{},{k},{r},{}",
                format_rational(&self.t[i]),
                self.divisors[i]
            );
            let (cq, rq) = match i {
                0 => (String::new(), String::new()),
                _ => (
                    self.coefficient_quotients[i - 1]
                        .as_ref()
                        .map(|q| {
                            q.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .unwrap_or_default(),
                    self.root_quotients[i - 1].map(fmt_f).unwrap_or_default(),
                ),
            };
            let changed = self.stratum_changes.iter().any(|c| c.index == i);
            let _ = writeln!(s, ",{cq},{rq},{changed}");
        }
        s
    }
}

/// Roots of a monic polynomial as eigenvalues of its companion matrix,
/// Newton-polished and accepted only if each residual is within [`ROOT_TOL`]
/// relative to the coefficient scale.
pub fn isolate_roots(a: &ExactPoly) -> Option<Vec<Complex64>> {
    let n = a.degree().finite()?;
    if n == 0 {
        return Some(Vec::new());
    }
    let ap = a.to_approx();
    let lead = ap.0[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -ap.0[i] / lead;
    }
    let eig = Schur::try_new(m, f64::EPSILON, 10_000)?.eigenvalues()?;
    let d = ap.derivative();
    let polish = |mut x: Complex64, p: &ApproxPoly| {
        for _ in 0..3 {
            let dv = d.eval(x);
            if dv.norm() == 0.0 {
                break;
            }
            x -= p.eval(x) / dv;
        }
        x
    };
    let mut roots: Vec<Complex64> = eig.iter().map(|&x| polish(x, &ap)).collect();
    for x in &roots {
        let scale: f64 =
            ap.0.iter()
                .enumerate()
                .map(|(i, c)| c.norm() * x.norm().powi(i as i32))
                .sum();
        if ap.eval(*x).norm() > ROOT_TOL * scale.max(1.0) {
            return None;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Some(roots)
}

/// Largest `|x − nearest unused y|` under greedy matching.
fn matched_displacement(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    let mut used = vec![false; ys.len()];
    let mut worst: f64 = 0.0;
    for x in xs {
        let (j, d) = ys
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("equal root counts");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

pub fn smooth_divisor(
    fam: &CurveFamily,
    grid: &[BigRational],
    isolate: bool,
) -> Result<DivisorTrace, FamilyError> {
    let mut strata = Vec::with_capacity(grid.len());
    let mut divisors = Vec::with_capacity(grid.len());
    for t in grid {
        let f = fam.at(t)?;
        let ram = f.ramification();
        strata.push((f.degree(), ram.r_total));
        divisors.push(ram.divisor);
    }
    let roots: Vec<Option<Vec<Complex64>>> = divisors
        .iter()
        .map(|d| if isolate { isolate_roots(d) } else { None })
        .collect();
    let generic = strata
        .iter()
        .max_by_key(|s| {
            (
                strata.iter().filter(|x| x == s).count(),
                std::cmp::Reverse(strata.iter().position(|x| x == *s)),
            )
        })
        .copied()
        .unwrap_or((0, 0));
    let stratum_changes: Vec<StratumChange> = strata
        .iter()
        .enumerate()
        .filter(|(_, s)| **s != generic)
        .map(|(index, s)| StratumChange {
            index,
            t: format_rational(&grid[index]),
            generic,
            found: *s,
        })
        .collect();
    let mut coefficient_quotients = Vec::new();
    let mut root_quotients = Vec::new();
    for i in 1..grid.len() {
        let dt = &grid[i] - &grid[i - 1];
        let comparable =
            strata[i] == strata[i - 1] && divisors[i].degree() == divisors[i - 1].degree();
        coefficient_quotients.push(comparable.then(|| {
            let inv = GaussianRational::real(dt.recip());
            let n = divisors[i].coeffs().len();
            (0..n)
                .map(|j| &(&divisors[i].coeff(j) - &divisors[i - 1].coeff(j)) * &inv)
                .collect()
        }));
        root_quotients.push(match (comparable, &roots[i - 1], &roots[i]) {
            (true, Some(a), Some(b)) => Some(matched_displacement(b, a) / to_f64(&dt).abs()),
            _ => None,
        });
    }
    Ok(DivisorTrace {
        family: fam.name.clone(),
        t: grid.to_vec(),
        strata,
        divisors,
        coefficient_quotients,
        roots,
        root_quotients,
        stratum_changes,
    })
}

/// Ratio between the largest and smallest coefficient quotient magnitude of
/// `(R(t₀ + h) − R(t₀))/h` over the given spacings. Values near 1 are what a
/// smoothly varying divisor produces; this is evidence, not a proof.
pub fn quotient_spread(
    fam: &CurveFamily,
    t0: &BigRational,
    spacings: &[BigRational],
) -> Result<f64, FamilyError> {
    let mut mags = Vec::new();
    for h in spacings {
        let grid = [t0.clone(), t0 + h];
        let tr = smooth_divisor(fam, &grid, false)?;
        tr.require_constant_stratum()?;
        let q = tr.coefficient_quotients[0]
            .as_ref()
            .ok_or_else(|| FamilyError::StratumJump {
                t: format_rational(&grid[1]),
                from: tr.strata[0],
                to: tr.strata[1],
            })?;
        mags.push(q.iter().map(|c| c.to_approx().norm()).fold(0.0, f64::max));
    }
    let hi = mags.iter().copied().fold(0.0, f64::max);
    let lo = mags.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(if hi == 0.0 { 1.0 } else { hi / lo })
}

/// Points at which [`differential_probe`] compares the two maps: a 9 × 9
/// grid on `[−3/2, 3/2]²` in the `z` chart and the point at infinity.
pub fn probe_points() -> Vec<(Chart, Complex64)> {
    let mut out: Vec<(Chart, Complex64)> = (0..9)
        .flat_map(|i| {
            (0..9).map(move |j| {
                (
                    Chart::Z,
                    Complex64::new(-1.5 + 0.375 * i as f64, -1.5 + 0.375 * j as f64),
                )
            })
        })
        .collect();
    out.push((Chart::W, Complex64::new(0.0, 0.0)));
    out
}

/// `sup_z dist(φ_{t₀+δ}(z), φ_{t₀}(z)) / δ` over [`probe_points`].
pub fn differential_probe(
    fam: &CurveFamily,
    t0: &BigRational,
    delta: &BigRational,
) -> Result<f64, FamilyError> {
    assert!(delta.is_positive(), "probe step must be positive");
    let t1 = t0 + delta;
    let (s0, s1) = (fam.stratum_at(t0)?, fam.stratum_at(&t1)?);
    if s0 != s1 {
        return Err(FamilyError::StratumJump {
            t: format_rational(&t1),
            from: s0,
            to: s1,
        });
    }
    let e0 = GaussEvaluator::new(fam.at(t0)?)?;
    let e1 = GaussEvaluator::new(fam.at(&t1)?)?;
    let d = to_f64(delta);
    Ok(probe_points()
        .into_iter()
        .map(|(chart, z)| fs_distance(&e1.phi_approx(chart, z), &e0.phi_approx(chart, z)) / d)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn presets() {
        let f = CurveFamily::burstall().at(&rat(1, 1)).unwrap();
        assert_eq!(
            f,
            HoloCurve::from_ints(&[1], &[0, 1, 0, 1], &[0, 0, 1]).unwrap()
        );
        assert_eq!(f.ramification().r_total, 0);
        let f = CurveFamily::coalesce().at(&BigRational::zero()).unwrap();
        assert_eq!(f.ramification().divisor, ExactPoly::from_ints(&[0, 0, 1]));
        let f = CurveFamily::cmr(3, 1)
            .unwrap()
            .at(&BigRational::zero())
            .unwrap();
        assert_eq!(
            f,
            HoloCurve::from_ints(&[1], &[1, 1], &[0, 0, 0, 1]).unwrap()
        );
        assert_eq!(
            CurveFamily::cmr(3, 2).unwrap_err(),
            FamilyError::RangeViolation { k: 3, r: 2 }
        );
        assert!(matches!(
            CurveFamily::preset("nope", &[]),
            Err(FamilyError::UnknownPreset(_))
        ));
    }

    #[test]
    fn burstall_trace_jumps_once() {
        let grid = symmetric_grid(&rat(1, 100), 20);
        let tr = trace_gauss(
            &CurveFamily::burstall(),
            &SpherePoint::Exact(0.into()),
            &grid,
            0.25,
        )
        .unwrap();
        assert_eq!(tr.jumps.len(), 1);
        assert!((tr.jumps[0].distance - FRAC_PI_2).abs() < 1e-12);
        assert_eq!((tr.jumps[0].start, tr.jumps[0].end), (19, 21));
    }

    #[test]
    fn coalesce_divisor_moves_linearly() {
        let grid = uniform_grid(&rat(-1, 2), &rat(1, 2), 11);
        let tr = smooth_divisor(&CurveFamily::coalesce(), &grid, true).unwrap();
        tr.require_constant_stratum().unwrap();
        for (t, d) in tr.t.iter().zip(&tr.divisors) {
            let want = ExactPoly::new(vec![GaussianRational::real(-t), 0.into(), 1.into()]);
            assert_eq!(*d, want);
        }
        for q in &tr.coefficient_quotients {
            assert_eq!(q.as_ref().unwrap()[0], GaussianRational::from(-1));
        }
    }

    #[test]
    fn burstall_stratum_change_reported() {
        let grid = symmetric_grid(&rat(1, 10), 2);
        let tr = smooth_divisor(&CurveFamily::burstall(), &grid, false).unwrap();
        assert_eq!(tr.stratum_changes.len(), 1);
        assert_eq!(tr.stratum_changes[0].t, "0/1");
        assert!(tr.require_constant_stratum().is_err());
    }

    #[test]
    fn companion_roots() {
        let roots = isolate_roots(&ExactPoly::from_ints(&[-4, 0, 1])).unwrap();
        assert!((roots[0] + 2.0).norm() < 1e-12 && (roots[1] - 2.0).norm() < 1e-12);
    }

    #[test]
    fn probe_is_zero_on_constant_family() {
        let fam = CurveFamily::cmr(4, 1).unwrap();
        assert_eq!(
            differential_probe(&fam, &rat(1, 4), &rat(1, 1000)).unwrap(),
            0.0
        );
    }
}

use num_complex::Complex64;

use super::{conj3, cross_c, eval3, Chart, GaussEvaluator};
use crate::curve::HoloCurve;
use crate::poly::ApproxPoly;

pub type Mat3 = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Value of a lift `Φ: U → ℂ³ \ {0}` and its Wirtinger derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: [Complex64; 3],
    pub dz: [Complex64; 3],
    pub dzbar: [Complex64; 3],
}

/// A map `S² → ℂP²` given by a homogeneous lift in each chart.
pub trait Lift {
    fn jet(&self, chart: Chart, z: Complex64) -> Jet;

    fn value(&self, chart: Chart, z: Complex64) -> [Complex64; 3] {
        self.jet(chart, z).value
    }
}

/// The holomorphic curve itself, `F = p(z)`, as a map.
#[derive(Debug, Clone)]
pub struct HolomorphicLift {
    charts: [([ApproxPoly; 3], [ApproxPoly; 3]); 2],
}

impl HolomorphicLift {
    pub fn new(f: &HoloCurve) -> Self {
        let pair = |c: &HoloCurve| {
            let d = c.derivative();
            (
                [0, 1, 2].map(|i| c.components()[i].to_approx()),
                [0, 1, 2].map(|i| d[i].to_approx()),
            )
        };
        Self {
            charts: [pair(f), pair(&f.chart_flip())],
        }
    }
}

impl Lift for HolomorphicLift {
    fn jet(&self, chart: Chart, z: Complex64) -> Jet {
        let (p, dp) = &self.charts[chart as usize];
        Jet {
            value: eval3(p, z),
            dz: eval3(dp, z),
            dzbar: [ZERO; 3],
        }
    }
}

impl Lift for GaussEvaluator {
    /// `∂Φ = conj(p) × h′` and `∂̄Φ = conj(p′) × h`.
    fn jet(&self, chart: Chart, z: Complex64) -> Jet {
        let a = self.approx(chart);
        let p_bar = conj3(&eval3(&a.p, z));
        let dp_bar = conj3(&eval3(&a.dp, z));
        let h = eval3(&a.h, z);
        let dh = eval3(&a.dh, z);
        Jet {
            value: cross_c(&p_bar, &h),
            dz: cross_c(&p_bar, &dh),
            dzbar: cross_c(&dp_bar, &h),
        }
    }
}

/// `z ↦ [1, z + z̄², z²]`, a smooth map that is not harmonic. It does not
/// extend continuously to `∞`; the `w` chart lift vanishes at `w = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ControlLift;

impl Lift for ControlLift {
    fn jet(&self, chart: Chart, z: Complex64) -> Jet {
        let zb = z.conj();
        match chart {
            Chart::Z => Jet {
                value: [Complex64::new(1.0, 0.0), z + zb * zb, z * z],
                dz: [ZERO, Complex64::new(1.0, 0.0), 2.0 * z],
                dzbar: [ZERO, 2.0 * zb, ZERO],
            },
            // (w²w̄², w w̄² + w², w̄²)
            Chart::W => Jet {
                value: [z * z * zb * zb, z * zb * zb + z * z, zb * zb],
                dz: [2.0 * z * zb * zb, zb * zb + 2.0 * z, ZERO],
                dzbar: [2.0 * z * z * zb, 2.0 * z * zb, 2.0 * zb],
            },
        }
    }
}

pub(crate) fn outer(u: &[Complex64; 3], v: &[Complex64; 3]) -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = u[i] * v[j].conj();
        }
    }
    m
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    m
}

pub(crate) fn mat_lin(a: &Mat3, s: f64, b: &Mat3, t: f64) -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i][j] * s + b[i][j] * t;
        }
    }
    m
}

pub(crate) fn trace(a: &Mat3) -> Complex64 {
    a[0][0] + a[1][1] + a[2][2]
}

pub(crate) fn frobenius(a: &Mat3) -> f64 {
    a.iter()
        .flatten()
        .map(Complex64::norm_sqr)
        .sum::<f64>()
        .sqrt()
}

/// `Re tr(AB) / 2`, the pullback of the Fubini–Study metric.
pub(crate) fn metric(a: &Mat3, b: &Mat3) -> f64 {
    trace(&mat_mul(a, b)).re / 2.0
}

/// `ΦΦ*/|Φ|²`.
pub fn projector_from_vector(v: &[Complex64; 3]) -> Mat3 {
    let n: f64 = v.iter().map(Complex64::norm_sqr).sum();
    let m = outer(v, v);
    mat_lin(&m, 1.0 / n, &m, 0.0)
}

/// Projector `P` with its real partial derivatives `P_x`, `P_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorJet {
    pub p: Mat3,
    pub px: Mat3,
    pub py: Mat3,
}

impl ProjectorJet {
    /// Exact product-rule derivatives of `P = ΦΦ*/|Φ|²`.
    pub fn from_jet(j: &Jet) -> Self {
        let phi = j.value;
        let n: f64 = phi.iter().map(Complex64::norm_sqr).sum();
        let p = projector_from_vector(&phi);
        let phi_x = [0, 1, 2].map(|i| j.dz[i] + j.dzbar[i]);
        let phi_y = [0, 1, 2].map(|i| I * (j.dz[i] - j.dzbar[i]));
        let deriv = |d: &[Complex64; 3]| {
            let a = outer(d, &phi);
            let mut sym = [[ZERO; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    sym[r][c] = a[r][c] + a[c][r].conj();
                }
            }
            let dn = 2.0 * trace(&a).re;
            mat_lin(&sym, 1.0 / n, &p, -dn / n)
        };
        Self {
            p,
            px: deriv(&phi_x),
            py: deriv(&phi_y),
        }
    }

    /// `q(P_x, P_x) + q(P_y, P_y)`.
    pub fn energy_density(&self) -> f64 {
        metric(&self.px, &self.px) + metric(&self.py, &self.py)
    }

    /// `Im tr(P P_x P_y)`, the pulled-back Kähler form; equals half the
    /// energy density for holomorphic maps.
    pub fn kahler_density(&self) -> f64 {
        trace(&mat_mul(&mat_mul(&self.p, &self.px), &self.py)).im
    }

    /// `|q(P_x,P_x) − q(P_y,P_y)| + 2|q(P_x,P_y)|`.
    pub fn conformality_defect(&self) -> f64 {
        (metric(&self.px, &self.px) - metric(&self.py, &self.py)).abs()
            + 2.0 * metric(&self.px, &self.py).abs()
    }
}

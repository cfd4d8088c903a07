//! Degree and energy of a map `S² → ℂP²` by two-chart quadrature.
//!
//! Both integrands (energy density and pulled-back Kähler form) are
//! conformally invariant 2-forms, so each chart is integrated in its own
//! coordinate with no area factor: the disk `|z| ≤ R` in the `z` chart and
//! `|w| ≤ 1/R` in the `w = 1/z` chart, each in polar coordinates with a
//! tensor Gauss–Legendre rule.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::projector::{HolomorphicLift, Lift, ProjectorJet};
use super::residual::{conformality_residual, harmonicity_residual, SampleGrid};
use super::{Chart, GaussError};
use crate::curve::HoloCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    /// Gauss–Legendre in radius and angle on each chart disk.
    TensorGaussLegendrePolar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub split_radius: f64,
    pub order: usize,
    pub scheme: QuadratureScheme,
    /// Largest change in `d` or `E` tolerated when the order is doubled.
    pub convergence_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            split_radius: 1.0,
            order: 64,
            scheme: QuadratureScheme::TensorGaussLegendrePolar,
            convergence_tol: 1e-4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_order(order: usize) -> Self {
        Self {
            order,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), GaussError> {
        if self.order < 8 {
            return Err(GaussError::InvalidQuadrature("order must be at least 8"));
        }
        if !(self.split_radius > 0.0 && self.split_radius.is_finite()) {
            return Err(GaussError::InvalidQuadrature(
                "split radius must be positive and finite",
            ));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(GaussError::InvalidQuadrature(
                "convergence tolerance must be positive",
            ));
        }
        Ok(())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // three-term recurrence for P_n(x) and P_{n-1}(x)
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let step = pn / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Raw integrals `(∫ Im tr(P P_x P_y), ∫ energy density)` over one chart disk.
fn disk_integrals(
    lift: &dyn Lift,
    chart: Chart,
    radius: f64,
    nodes: &(Vec<f64>, Vec<f64>),
) -> (f64, f64) {
    let (x, w) = nodes;
    let (mut kahler, mut energy) = (0.0, 0.0);
    for (xr, wr) in x.iter().zip(w) {
        let rho = radius * (xr + 1.0) / 2.0;
        let wrho = radius / 2.0 * wr * rho;
        for (xt, wt) in x.iter().zip(w) {
            let theta = PI * (xt + 1.0);
            let weight = wrho * PI * wt;
            let pj = ProjectorJet::from_jet(&lift.jet(chart, Complex64::from_polar(rho, theta)));
            kahler += weight * pj.kahler_density();
            energy += weight * pj.energy_density();
        }
    }
    (kahler, energy)
}

fn sphere_integrals(lift: &dyn Lift, spec: &QuadratureSpec, order: usize) -> (f64, f64) {
    let nodes = gauss_legendre(order);
    let (k1, e1) = disk_integrals(lift, Chart::Z, spec.split_radius, &nodes);
    let (k2, e2) = disk_integrals(lift, Chart::W, 1.0 / spec.split_radius, &nodes);
    (k1 + k2, e1 + e2)
}

/// Scale factors turning raw integrals into degree and energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub degree_scale: f64,
    pub energy_scale: f64,
}

impl Calibration {
    /// Fixed so that the Veronese curve, as a holomorphic map, has `d = E = 2`.
    pub fn from_veronese(spec: &QuadratureSpec) -> Result<Self, GaussError> {
        spec.validate()?;
        let lift = HolomorphicLift::new(&HoloCurve::veronese());
        let (kahler, energy) = sphere_integrals(&lift, spec, spec.order);
        Ok(Self {
            degree_scale: 2.0 / kahler,
            energy_scale: 2.0 / energy,
        })
    }

    /// Closed-form constants for the metric `Re tr(dP dP)/2`, under which
    /// `ℂP¹` has area `π`.
    pub fn analytic() -> Self {
        Self {
            degree_scale: 1.0 / PI,
            energy_scale: 1.0 / (2.0 * PI),
        }
    }
}

/// Degree, energy and the two partial energies `E± = (E ± d)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeEnergy {
    pub d_num: f64,
    pub e_num: f64,
    pub e_partial_plus: f64,
    pub e_partial_minus: f64,
    /// `|d(2n) − d(n)|` and `|E(2n) − E(n)|`.
    pub refinement_delta_d: f64,
    pub refinement_delta_e: f64,
}

/// Integrates at `order` and `2·order` and reports the finer result.
pub fn degree_energy(
    lift: &dyn Lift,
    spec: &QuadratureSpec,
    cal: &Calibration,
) -> Result<DegreeEnergy, GaussError> {
    spec.validate()?;
    let (k1, e1) = sphere_integrals(lift, spec, spec.order);
    let (k2, e2) = sphere_integrals(lift, spec, 2 * spec.order);
    let (d1, d2) = (cal.degree_scale * k1, cal.degree_scale * k2);
    let (en1, en2) = (cal.energy_scale * e1, cal.energy_scale * e2);
    let (delta_d, delta_e) = ((d2 - d1).abs(), (en2 - en1).abs());
    for (quantity, delta) in [("degree", delta_d), ("energy", delta_e)] {
        if !(delta <= spec.convergence_tol) {
            return Err(GaussError::QuadratureDiverged {
                order: spec.order,
                quantity,
                delta,
            });
        }
    }
    Ok(DegreeEnergy {
        d_num: d2,
        e_num: en2,
        e_partial_plus: (en2 + d2) / 2.0,
        e_partial_minus: (en2 - d2) / 2.0,
        refinement_delta_d: delta_d,
        refinement_delta_e: delta_e,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    pub quad: QuadratureSpec,
    pub calibration: Calibration,
    pub grid: SampleGrid,
    pub fd_step: f64,
}

impl GeometryConfig {
    pub fn calibrated(
        quad: QuadratureSpec,
        grid: SampleGrid,
        fd_step: f64,
    ) -> Result<Self, GaussError> {
        Ok(Self {
            quad,
            calibration: Calibration::from_veronese(&quad)?,
            grid,
            fd_step,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureMeta {
    pub order: usize,
    pub refined_order: usize,
    pub split_radius: f64,
    pub scheme: QuadratureScheme,
    pub refinement_delta_d: f64,
    pub refinement_delta_e: f64,
    pub calibration: Calibration,
    pub grid_points: usize,
    pub fd_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryReport {
    pub d_num: f64,
    #[serde(rename = "E_num")]
    pub e_num: f64,
    #[serde(rename = "E_partial_plus")]
    pub e_partial_plus: f64,
    #[serde(rename = "E_partial_minus")]
    pub e_partial_minus: f64,
    pub conformality_residual: f64,
    pub harmonicity_residual: f64,
    pub quadrature: QuadratureMeta,
}

/// Degree, energy and both residuals for one map.
pub fn geometry(lift: &dyn Lift, cfg: &GeometryConfig) -> Result<GeometryReport, GaussError> {
    let de = degree_energy(lift, &cfg.quad, &cfg.calibration)?;
    Ok(GeometryReport {
        d_num: de.d_num,
        e_num: de.e_num,
        e_partial_plus: de.e_partial_plus,
        e_partial_minus: de.e_partial_minus,
        conformality_residual: conformality_residual(lift, &cfg.grid, cfg.fd_step),
        harmonicity_residual: harmonicity_residual(lift, &cfg.grid, cfg.fd_step),
        quadrature: QuadratureMeta {
            order: cfg.quad.order,
            refined_order: 2 * cfg.quad.order,
            split_radius: cfg.quad.split_radius,
            scheme: cfg.quad.scheme,
            refinement_delta_d: de.refinement_delta_d,
            refinement_delta_e: de.refinement_delta_e,
            calibration: cfg.calibration,
            grid_points: cfg.grid.len(),
            fd_step: cfg.fd_step,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [8, 9, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            // ∫ x^(2n-2) = 2/(2n-1)
            let deg = 2 * n - 2;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((s - 2.0 / (deg as f64 + 1.0)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn calibration_matches_closed_form() {
        let cal = Calibration::from_veronese(&QuadratureSpec::default()).unwrap();
        let exact = Calibration::analytic();
        assert!((cal.degree_scale - exact.degree_scale).abs() < 1e-9);
        assert!((cal.energy_scale - exact.energy_scale).abs() < 1e-9);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::with_order(4).validate().is_err());
        let bad = QuadratureSpec {
            split_radius: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(bad.validate().is_err());
    }
}

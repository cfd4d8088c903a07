//! Finite-difference checks of harmonicity and conformality on a sample grid.

use num_complex::Complex64;
use serde::Serialize;

use super::projector::{
    frobenius, mat_lin, mat_mul, projector_from_vector, Lift, Mat3, ProjectorJet,
};
use super::Chart;

/// An `n × n` grid of points filling the square of half-width `half_width`
/// about `center`, in one chart, turned by `rotation` radians about the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleGrid {
    pub center: (f64, f64),
    pub half_width: f64,
    pub n: usize,
    pub chart: Chart,
    pub rotation: f64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self {
            center: (0.0, 0.0),
            half_width: 1.5,
            n: 20,
            chart: Chart::Z,
            rotation: 0.0,
        }
    }
}

impl SampleGrid {
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn points(&self) -> Vec<Complex64> {
        let step = if self.n > 1 {
            2.0 * self.half_width / (self.n - 1) as f64
        } else {
            0.0
        };
        let start = if self.n > 1 { -self.half_width } else { 0.0 };
        let center = Complex64::new(self.center.0, self.center.1);
        let turn = Complex64::from_polar(1.0, self.rotation);
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.n {
            for j in 0..self.n {
                let offset = Complex64::new(start + step * i as f64, start + step * j as f64);
                out.push(
                    center
                        + if self.rotation == 0.0 {
                            offset
                        } else {
                            turn * offset
                        },
                );
            }
        }
        out
    }
}

fn projector_at(lift: &dyn Lift, chart: Chart, z: Complex64) -> Mat3 {
    projector_from_vector(&lift.value(chart, z))
}

fn central(lift: &dyn Lift, chart: Chart, z: Complex64, dir: Complex64, h: f64) -> Mat3 {
    let plus = projector_at(lift, chart, z + dir * h);
    let minus = projector_at(lift, chart, z - dir * h);
    mat_lin(&plus, 0.5 / h, &minus, -0.5 / h)
}

/// `P`, `P_x`, `P_y` with derivatives from central differences of step `h`,
/// optionally Richardson-extrapolated against step `h/2`.
pub fn fd_projector_derivatives(
    lift: &dyn Lift,
    chart: Chart,
    z: Complex64,
    h: f64,
    richardson: bool,
) -> ProjectorJet {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let diff = |dir: Complex64| {
        let coarse = central(lift, chart, z, dir, h);
        if richardson {
            let fine = central(lift, chart, z, dir, h / 2.0);
            mat_lin(&fine, 4.0 / 3.0, &coarse, -1.0 / 3.0)
        } else {
            coarse
        }
    };
    ProjectorJet {
        p: projector_at(lift, chart, z),
        px: diff(one),
        py: diff(i),
    }
}

/// Largest relative conformality defect `(|q_xx − q_yy| + 2|q_xy|)/(q_xx + q_yy)`
/// over the grid, skipping points where the differential vanishes.
pub fn conformality_residual(lift: &dyn Lift, grid: &SampleGrid, h: f64) -> f64 {
    grid.points()
        .into_iter()
        .filter_map(|z| {
            let pj = fd_projector_derivatives(lift, grid.chart, z, h, true);
            let e = pj.energy_density();
            (e > 1e-12).then(|| pj.conformality_defect() / e)
        })
        .fold(0.0, f64::max)
}

/// Largest `‖[ΔP, P]‖_F` over the grid, with `ΔP` the five-point Laplacian
/// `(ΣP(neighbours) − 4P)/(4h²)`.
pub fn harmonicity_residual(lift: &dyn Lift, grid: &SampleGrid, h: f64) -> f64 {
    let steps = [
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, -h),
    ];
    grid.points()
        .into_iter()
        .map(|z| {
            let p = projector_at(lift, grid.chart, z);
            let mut lap = mat_lin(&p, -4.0 / (4.0 * h * h), &p, 0.0);
            for s in steps {
                lap = mat_lin(
                    &lap,
                    1.0,
                    &projector_at(lift, grid.chart, z + s),
                    1.0 / (4.0 * h * h),
                );
            }
            frobenius(&mat_lin(&mat_mul(&lap, &p), 1.0, &mat_mul(&p, &lap), -1.0))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HoloCurve;
    use crate::gauss::{ControlLift, GaussEvaluator, HolomorphicLift};

    fn max_diff(a: &Mat3, b: &Mat3) -> f64 {
        frobenius(&mat_lin(a, 1.0, b, -1.0))
    }

    #[test]
    fn finite_differences_match_exact_jets() {
        let f = HoloCurve::from_ints(&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1]).unwrap();
        let ev = GaussEvaluator::new(f).unwrap();
        for (k, chart) in [Chart::Z, Chart::W].into_iter().enumerate() {
            for m in 0..6 {
                let z = Complex64::from_polar(0.2 + 0.15 * m as f64, 1.3 * m as f64 + k as f64);
                let exact = ProjectorJet::from_jet(&ev.jet(chart, z));
                let fd = fd_projector_derivatives(&ev, chart, z, 1e-3, true);
                assert!(max_diff(&exact.px, &fd.px) < 1e-8, "{chart:?} {z}");
                assert!(max_diff(&exact.py, &fd.py) < 1e-8, "{chart:?} {z}");
            }
        }
    }

    #[test]
    fn harmonic_maps_pass_and_control_fails() {
        let grid = SampleGrid::default();
        let ev = GaussEvaluator::new(HoloCurve::veronese()).unwrap();
        assert!(harmonicity_residual(&ev, &grid, 1e-3) < 1e-4);
        assert!(conformality_residual(&ev, &grid, 1e-3) < 1e-4);
        let hol = HolomorphicLift::new(&HoloCurve::veronese());
        assert!(harmonicity_residual(&hol, &grid, 1e-3) < 1e-4);
        assert!(harmonicity_residual(&ControlLift, &grid, 1e-3) > 0.1);
    }

    #[test]
    fn quarter_turn_leaves_residuals() {
        let f = HoloCurve::from_ints(&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1]).unwrap();
        let ev = GaussEvaluator::new(f).unwrap();
        let grid = SampleGrid::default();
        let turned = SampleGrid {
            rotation: std::f64::consts::FRAC_PI_2,
            ..grid
        };
        let c = (
            conformality_residual(&ev, &grid, 1e-3),
            conformality_residual(&ev, &turned, 1e-3),
        );
        let h = (
            harmonicity_residual(&ev, &grid, 1e-3),
            harmonicity_residual(&ev, &turned, 1e-3),
        );
        assert!((c.0 - c.1).abs() < 1e-9, "{c:?}");
        assert!((h.0 - h.1).abs() < 1e-9, "{h:?}");
    }

    #[test]
    fn grid_shape() {
        let g = SampleGrid::default();
        let pts = g.points();
        assert_eq!(pts.len(), 400);
        assert_eq!(pts[0], Complex64::new(-1.5, -1.5));
        assert_eq!(pts[399], Complex64::new(1.5, 1.5));
    }
}

//! The harmonic Gauss transform `φ = f^⊥ ∩ f₍₁₎` of a full holomorphic curve.
//!
//! With `p` the polynomial lift of `f` and `h` its conjugate polar, the
//! vector `Φ = conj(p) × h` spans `φ` everywhere on `ℂ`: it is Hermitian
//! orthogonal to `p` and to `conj(h)`, and never vanishes because `p` and
//! `conj(h)` are never parallel. Near infinity the same formula is applied to
//! the chart-flipped curve.

mod bipoly;
mod projector;
mod quadrature;
mod residual;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{cross, dot, CurveError, HoloCurve, ProjPoint, Triple};
use crate::poly::{ApproxPoly, ExactPoly};
use crate::scalar::{ApproxComplex, GaussianRational};

pub use bipoly::BiPoly;
pub use projector::{
    projector_from_vector, ControlLift, HolomorphicLift, Jet, Lift, Mat3, ProjectorJet,
};
pub use quadrature::{
    degree_energy, gauss_legendre, geometry, Calibration, DegreeEnergy, GeometryConfig,
    GeometryReport, QuadratureMeta, QuadratureScheme, QuadratureSpec,
};
pub use residual::{
    conformality_residual, fd_projector_derivatives, harmonicity_residual, SampleGrid,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussError {
    #[error("quadrature did not converge: doubling order {order} changed {quantity} by {delta:e}")]
    QuadratureDiverged {
        order: usize,
        quantity: &'static str,
        delta: f64,
    },
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(&'static str),
    #[error("orthogonality identity failed: {0}")]
    IdentityFailed(&'static str),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Local coordinate chart on `S² = ℂ ∪ {∞}`: `z`, or `w = 1/z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Z,
    W,
}

/// A point of the sphere as accepted by [`GaussEvaluator::gauss_eval`].
#[derive(Debug, Clone, PartialEq)]
pub enum SpherePoint {
    Exact(GaussianRational),
    Approx(ApproxComplex),
    Infinity,
}

#[derive(Debug, Clone)]
pub(crate) struct ApproxPair {
    pub p: [ApproxPoly; 3],
    pub dp: [ApproxPoly; 3],
    pub h: [ApproxPoly; 3],
    pub dh: [ApproxPoly; 3],
}

impl ApproxPair {
    fn new(f: &HoloCurve, h: &HoloCurve) -> Self {
        let ap = |t: &Triple| [0, 1, 2].map(|i| t[i].to_approx());
        Self {
            p: ap(f.components()),
            dp: ap(&f.derivative()),
            h: ap(h.components()),
            dh: ap(&h.derivative()),
        }
    }
}

pub(crate) fn eval3(t: &[ApproxPoly; 3], z: Complex64) -> [Complex64; 3] {
    [t[0].eval(z), t[1].eval(z), t[2].eval(z)]
}

pub(crate) fn cross_c(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn conj3(a: &[Complex64; 3]) -> [Complex64; 3] {
    a.map(|c| c.conj())
}

/// A curve together with its conjugate polar, in both charts.
#[derive(Debug, Clone)]
pub struct GaussEvaluator {
    f: HoloCurve,
    h: HoloCurve,
    flipped_f: HoloCurve,
    flipped_h: HoloCurve,
    approx: [ApproxPair; 2],
}

impl GaussEvaluator {
    pub fn new(f: HoloCurve) -> Result<Self, GaussError> {
        let h = f.conjugate_polar()?;
        let flipped_f = f.chart_flip();
        let flipped_h = flipped_f.conjugate_polar()?;
        for (a, b) in [(&f, &h), (&flipped_f, &flipped_h)] {
            if !dot(a.components(), b.components()).is_zero() {
                return Err(GaussError::IdentityFailed("p · h is not identically zero"));
            }
        }
        let approx = [
            ApproxPair::new(&f, &h),
            ApproxPair::new(&flipped_f, &flipped_h),
        ];
        Ok(Self {
            f,
            h,
            flipped_f,
            flipped_h,
            approx,
        })
    }

    pub fn curve(&self) -> &HoloCurve {
        &self.f
    }

    pub fn polar(&self) -> &HoloCurve {
        &self.h
    }

    pub fn flipped(&self) -> (&HoloCurve, &HoloCurve) {
        (&self.flipped_f, &self.flipped_h)
    }

    pub(crate) fn approx(&self, chart: Chart) -> &ApproxPair {
        match chart {
            Chart::Z => &self.approx[0],
            Chart::W => &self.approx[1],
        }
    }

    /// `Φ = conj(p) × h` at a point of the sphere; exact input gives exact output.
    pub fn gauss_eval(&self, z: &SpherePoint) -> ProjPoint {
        let phi = match z {
            SpherePoint::Exact(z) => ProjPoint::Exact(exact_phi(&self.f, &self.h, z)),
            SpherePoint::Infinity => ProjPoint::Exact(exact_phi(
                &self.flipped_f,
                &self.flipped_h,
                &GaussianRational::zero(),
            )),
            SpherePoint::Approx(z) => ProjPoint::Approx(self.phi_approx(Chart::Z, *z)),
        };
        assert!(!phi.is_zero(), "Gauss transform lift vanished at {z:?}");
        phi
    }

    /// Floating-point `Φ` in the given chart.
    pub fn phi_approx(&self, chart: Chart, z: Complex64) -> [Complex64; 3] {
        let a = self.approx(chart);
        cross_c(&conj3(&eval3(&a.p, z)), &eval3(&a.h, z))
    }

    /// Verifies `⟨Φ, F⟩ = 0` and `⟨Φ, conj(H)⟩ = 0` as polynomial identities
    /// in `z` and `z̄`, with `⟨u, v⟩ = Σ uᵢ·conj(vᵢ)`.
    pub fn orthogonality_check(&self) -> Result<OrthogonalityProof, GaussError> {
        let p_bar = self
            .f
            .components()
            .clone()
            .map(|c| BiPoly::antiholomorphic(&c));
        let h = self.h.components().clone().map(|c| BiPoly::holomorphic(&c));
        let phi = bipoly::cross(&p_bar, &h);
        // conj(F) = p̄ and conj(conj(H)) = h
        let with_f = bipoly::dot(&phi, &p_bar);
        let with_conj_h = bipoly::dot(&phi, &h);
        if !with_f.is_zero() {
            return Err(GaussError::IdentityFailed(
                "<Phi, F> does not reduce to zero",
            ));
        }
        if !with_conj_h.is_zero() {
            return Err(GaussError::IdentityFailed(
                "<Phi, conj(H)> does not reduce to zero",
            ));
        }
        Ok(OrthogonalityProof {
            phi,
            with_f,
            with_conj_h,
        })
    }
}

fn exact_phi(f: &HoloCurve, h: &HoloCurve, z: &GaussianRational) -> [GaussianRational; 3] {
    let p = f.eval(z).map(|c| c.conj());
    let hv = h.eval(z);
    let tri = |v: &[GaussianRational; 3]| v.clone().map(ExactPoly::constant);
    let c = cross(&tri(&p), &tri(&hv));
    c.map(|x| x.coeff(0))
}

/// The reduced identities produced by [`GaussEvaluator::orthogonality_check`].
#[derive(Debug, Clone)]
pub struct OrthogonalityProof {
    pub phi: [BiPoly; 3],
    pub with_f: BiPoly,
    pub with_conj_h: BiPoly,
}

impl OrthogonalityProof {
    /// Monomials of `Φ` as `(power of z, power of z̄) → coefficient`.
    pub fn phi_terms(&self) -> [BTreeMap<(usize, usize), GaussianRational>; 3] {
        self.phi.clone().map(|b| b.terms().clone())
    }
}

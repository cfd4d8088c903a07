//! Full holomorphic curves `S² → ℂP²` given by coprime polynomial triples,
//! their ramification divisors, conjugate polars, chart changes and the
//! `PGL₂ × PGL₃` action.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::ExactMatrix;
use crate::poly::{Degree, ExactPoly, PolyError};
use crate::scalar::{ApproxComplex, GaussianRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("components are not coprime: common factor {factor}")]
    NotCoprime { factor: ExactPoly },
    #[error("curve is not full: the Wronskian vanishes identically")]
    NotFull,
    #[error("degree {k} is below 2")]
    DegreeTooSmall { k: usize },
    #[error("conjugate polar failed validation: {0}")]
    PolarDegenerate(Box<CurveError>),
    #[error("singular transform: {0}")]
    SingularTransform(&'static str),
    #[error("no generic position found within {budget} candidate transforms")]
    GenericPositionNotFound { budget: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Triple = [ExactPoly; 3];

/// Cross product of polynomial triples, `(a₁b₂ − a₂b₁, a₂b₀ − a₀b₂, a₀b₁ − a₁b₀)`.
pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &Triple, b: &Triple) -> ExactPoly {
    a.iter()
        .zip(b)
        .fold(ExactPoly::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn derivative(p: &Triple) -> Triple {
    [p[0].derivative(), p[1].derivative(), p[2].derivative()]
}

fn max_degree(p: &Triple) -> Degree {
    p.iter()
        .map(ExactPoly::degree)
        .max()
        .unwrap_or(Degree::NegInfinity)
}

/// Determinant with rows `p`, `p′`, `p″`.
pub fn wronskian(p: &Triple) -> ExactPoly {
    let d1 = derivative(p);
    let d2 = derivative(&d1);
    dot(p, &cross(&d1, &d2))
}

/// A validated element of `Hol*_k(ℂP²)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HoloCurve {
    p: Triple,
    k: usize,
}

impl HoloCurve {
    /// Checks coprimality, then fullness, then `k ≥ 2`.
    pub fn validate(p0: ExactPoly, p1: ExactPoly, p2: ExactPoly) -> Result<Self, CurveError> {
        let p = [p0, p1, p2];
        let factor = ExactPoly::gcd_family(&p)?;
        if !factor.is_one() {
            return Err(CurveError::NotCoprime { factor });
        }
        if wronskian(&p).is_zero() {
            return Err(CurveError::NotFull);
        }
        let k = max_degree(&p).unwrap();
        if k < 2 {
            return Err(CurveError::DegreeTooSmall { k });
        }
        Ok(Self { p, k })
    }

    pub fn from_triple(p: Triple) -> Result<Self, CurveError> {
        let [a, b, c] = p;
        Self::validate(a, b, c)
    }

    pub fn from_ints(p0: &[i64], p1: &[i64], p2: &[i64]) -> Result<Self, CurveError> {
        Self::validate(
            ExactPoly::from_ints(p0),
            ExactPoly::from_ints(p1),
            ExactPoly::from_ints(p2),
        )
    }

    /// The Veronese curve `[1, z, z²]`.
    pub fn veronese() -> Self {
        Self::from_ints(&[1], &[0, 1], &[0, 0, 1]).expect("the Veronese curve is full")
    }

    pub fn components(&self) -> &Triple {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn derivative(&self) -> Triple {
        derivative(&self.p)
    }

    /// `(p₁p₂′ − p₁′p₂, p₂p₀′ − p₂′p₀, p₀p₁′ − p₀′p₁)`.
    pub fn wedge(&self) -> Triple {
        cross(&self.p, &self.derivative())
    }

    pub fn ramification(&self) -> RamificationData {
        let wedge = self.wedge();
        let divisor = ExactPoly::gcd_family(&wedge).expect("wedge of a full curve is nonzero");
        let r_finite = divisor.degree().unwrap();
        let r_infinity = 2 * self.k - 2 - max_degree(&wedge).unwrap();
        let by_flip = self.r_infinity_by_flip();
        assert_eq!(
            r_infinity, by_flip,
            "ramification at infinity: degree drop and chart flip disagree"
        );
        RamificationData {
            divisor,
            r_finite,
            r_infinity,
            r_total: r_finite + r_infinity,
        }
    }

    /// Vanishing order at `w = 0` of the wedge of the chart-flipped curve.
    pub fn r_infinity_by_flip(&self) -> usize {
        let flipped = self.chart_flip();
        let wedge = flipped.wedge();
        wedge
            .iter()
            .filter_map(ExactPoly::zero_order)
            .min()
            .expect("nonzero wedge")
    }

    pub fn invariants(&self) -> InvariantSheet {
        InvariantSheet::from_kr(self.k as i64, self.ramification().r_total as i64)
    }

    /// `wedge(f) / R(f)`, a curve of degree `2k − 2 − r`.
    pub fn conjugate_polar(&self) -> Result<HoloCurve, CurveError> {
        let wedge = self.wedge();
        let divisor = ExactPoly::gcd_family(&wedge)?;
        let reduced = wedge.map(|w| {
            w.div_exact(&divisor)
                .ok()
                .flatten()
                .expect("divisor divides the wedge")
        });
        Self::from_triple(reduced).map_err(|e| CurveError::PolarDegenerate(Box::new(e)))
    }

    /// The same map in the chart `w = 1/z`: `wᵏ·p(1/w)` with any common
    /// factor removed.
    pub fn chart_flip(&self) -> HoloCurve {
        let rev = self
            .p
            .clone()
            .map(|c| c.reverse(self.k).expect("component degree at most k"));
        let g = ExactPoly::gcd_family(&rev).expect("nonzero triple");
        let rev = rev.map(|c| c.div_exact(&g).ok().flatten().expect("gcd divides"));
        Self::from_triple(rev).expect("chart flip of a full curve is full")
    }

    /// `proj · p((az+b)/(cz+d))`, homogenized in degree `k`.
    pub fn act(&self, mobius: &Mobius, proj: &ExactMatrix) -> Result<HoloCurve, CurveError> {
        if mobius.determinant().is_zero() {
            return Err(CurveError::SingularTransform("Möbius matrix is singular"));
        }
        if proj.rows() != 3 || proj.cols() != 3 || proj.determinant().is_zero() {
            return Err(CurveError::SingularTransform(
                "projective matrix is singular",
            ));
        }
        let sub = self.p.clone().map(|c| {
            c.mobius_substitute(self.k, &mobius.0)
                .expect("degree at most k")
        });
        let out = [0, 1, 2].map(|i| {
            (0..3).fold(ExactPoly::zero(), |acc, j| {
                &acc + &sub[j].scale(&proj[(i, j)])
            })
        });
        Self::from_triple(out)
    }

    pub fn act_by(&self, g: &GroupElement) -> Result<HoloCurve, CurveError> {
        self.act(&g.mobius, &g.proj)
    }

    /// Whether `p₀` is monic of degree `k` with distinct roots and the curve
    /// is unramified at infinity.
    pub fn is_generic(&self) -> bool {
        let p0 = &self.p[0];
        p0.degree() == Degree::Finite(self.k)
            && p0.is_monic()
            && p0.is_squarefree()
            && self.r_infinity_by_flip() == 0
    }

    /// Deterministic search for a group element moving the curve into
    /// generic position. Möbius candidates are tried in a fixed order, and for
    /// each the first projective row `(1, u, v)` in order of `|u| + |v|` whose
    /// combination has degree `k` and distinct roots is taken.
    pub fn generic_position(&self) -> Result<(GroupElement, HoloCurve), CurveError> {
        let mobii = generic_mobius_candidates();
        let rows = generic_row_candidates();
        for mobius in &mobii {
            let moved = self.act(mobius, &ExactMatrix::identity(3))?;
            if moved.r_infinity_by_flip() != 0 {
                continue;
            }
            let [q0, q1, q2] = moved.components();
            for &(u, v) in &rows {
                let (u, v) = (GaussianRational::from(u), GaussianRational::from(v));
                let combo = &(q0 + &q1.scale(&u)) + &q2.scale(&v);
                if combo.degree() != Degree::Finite(self.k) || !combo.is_squarefree() {
                    continue;
                }
                let inv_lc = combo
                    .leading_coeff()
                    .and_then(GaussianRational::inv)
                    .expect("nonzero");
                let mut proj = ExactMatrix::identity(3);
                proj[(0, 0)] = inv_lc.clone();
                proj[(0, 1)] = &u * &inv_lc;
                proj[(0, 2)] = &v * &inv_lc;
                let g = GroupElement {
                    mobius: mobius.clone(),
                    proj,
                };
                let out = self.act_by(&g)?;
                debug_assert!(out.is_generic());
                return Ok((g, out));
            }
        }
        Err(CurveError::GenericPositionNotFound {
            budget: mobii.len() * rows.len(),
        })
    }

    /// Projective equality: `other = c·self` for a single nonzero scalar `c`.
    pub fn projectively_equal(&self, other: &HoloCurve) -> bool {
        let Some(i) = (0..3).find(|&i| !self.p[i].is_zero()) else {
            return false;
        };
        let (Some(a), Some(b)) = (self.p[i].leading_coeff(), other.p[i].leading_coeff()) else {
            return false;
        };
        let c = b / a;
        (0..3).all(|j| self.p[j].scale(&c) == other.p[j])
    }

    pub fn eval(&self, z: &GaussianRational) -> [GaussianRational; 3] {
        [0, 1, 2].map(|i| self.p[i].evaluate(z))
    }

    pub fn eval_approx(&self, z: ApproxComplex) -> [ApproxComplex; 3] {
        [0, 1, 2].map(|i| self.p[i].to_approx().eval(z))
    }
}

impl fmt::Debug for HoloCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HoloCurve[k={}; {}; {}; {}]",
            self.k, self.p[0], self.p[1], self.p[2]
        )
    }
}

/// `R(f)` with the finite, infinite and total ramification indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationData {
    pub divisor: ExactPoly,
    pub r_finite: usize,
    pub r_infinity: usize,
    pub r_total: usize,
}

/// Integer invariants of `Hol*_{k,r}`: the harmonic degree and energy of the
/// Gauss transform and the stratum of the conjugate polar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantSheet {
    pub k: i64,
    pub r: i64,
    pub d: i64,
    #[serde(rename = "E")]
    pub energy: i64,
    pub k_polar: i64,
    pub r_polar: i64,
}

impl InvariantSheet {
    pub fn from_kr(k: i64, r: i64) -> Self {
        let (k_polar, r_polar) = polar_stratum(k, r);
        Self {
            k,
            r,
            d: k - r - 2,
            energy: 3 * k - r - 2,
            k_polar,
            r_polar,
        }
    }
}

/// `(k, r) ↦ (2k − r − 2, 3k − 2r − 6)`; an involution on ℤ².
pub fn polar_stratum(k: i64, r: i64) -> (i64, i64) {
    (2 * k - r - 2, 3 * k - 2 * r - 6)
}

/// Whether `Hol*_{k,r}` is nonempty: `k ≥ 2` and `0 ≤ 2r ≤ 3k − 6`.
pub fn stratum_nonempty(k: i64, r: i64) -> bool {
    k >= 2 && r >= 0 && 2 * r <= 3 * k - 6
}

/// `[[a, b], [c, d]]` acting by `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius(pub [GaussianRational; 4]);

impl Mobius {
    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self([a.into(), b.into(), c.into(), d.into()])
    }

    pub fn determinant(&self) -> GaussianRational {
        let [a, b, c, d] = &self.0;
        &(a * d) - &(b * c)
    }

    /// Monic divisor vanishing at the preimages of the roots of `a`.
    pub fn transport_divisor(&self, a: &ExactPoly) -> ExactPoly {
        let n = a.degree().finite().unwrap_or(0);
        a.mobius_substitute(n, &self.0)
            .expect("degree fits")
            .monic()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub mobius: Mobius,
    pub proj: ExactMatrix,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            mobius: Mobius::identity(),
            proj: ExactMatrix::identity(3),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

const SMALL_INTS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

fn generic_mobius_candidates() -> Vec<Mobius> {
    let mut out = vec![Mobius::identity()];
    for s in [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6] {
        // z ↦ s + 1/z sends ∞ to s
        out.push(Mobius::from_ints(s, 1, 1, 0));
    }
    out
}

fn generic_row_candidates() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for size in 0..=6 {
        for &u in &SMALL_INTS {
            for &v in &SMALL_INTS {
                if u.abs() + v.abs() == size {
                    out.push((u, v));
                }
            }
        }
    }
    out
}

/// A point of `ℂP²` in homogeneous coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjPoint {
    Exact([GaussianRational; 3]),
    Approx([ApproxComplex; 3]),
}

/// Default tolerance for approximate projective equality.
pub const PROJ_TOL: f64 = 1e-9;

impl ProjPoint {
    pub fn from_ints(v: [i64; 3]) -> Self {
        ProjPoint::Exact(v.map(GaussianRational::from))
    }

    pub fn to_approx(&self) -> [ApproxComplex; 3] {
        match self {
            ProjPoint::Exact(v) => [0, 1, 2].map(|i| v[i].to_approx()),
            ProjPoint::Approx(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ProjPoint::Exact(v) => v.iter().all(Zero::is_zero),
            ProjPoint::Approx(v) => v.iter().all(|c| c.norm_sqr() == 0.0),
        }
    }

    /// Exact points compare by a vanishing cross product; anything else by
    /// Fubini–Study distance below `tol`.
    pub fn proj_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        match (self, other) {
            (ProjPoint::Exact(u), ProjPoint::Exact(v)) => {
                let c = |i: usize, j: usize| &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
                c(1, 2).is_zero() && c(2, 0).is_zero() && c(0, 1).is_zero()
            }
            _ => self.fs_distance(other) < tol,
        }
    }

    pub fn fs_distance(&self, other: &ProjPoint) -> f64 {
        fs_distance(&self.to_approx(), &other.to_approx())
    }

    /// Unit vector with the largest-modulus coordinate real and positive.
    pub fn normalized(&self) -> [ApproxComplex; 3] {
        normalize_phase(&self.to_approx())
    }
}

/// `arccos(|⟨u,v⟩| / |u||v|)`, computed as `atan2(|u∧v|, |⟨u,v⟩|)` so that
/// nearby lines keep full relative precision.
pub fn fs_distance(u: &[Complex64; 3], v: &[Complex64; 3]) -> f64 {
    let inner: Complex64 = (0..3).map(|i| u[i] * v[i].conj()).sum();
    let wedge_sq: f64 = [(1, 2), (2, 0), (0, 1)]
        .iter()
        .map(|&(i, j)| (u[i] * v[j] - u[j] * v[i]).norm_sqr())
        .sum();
    wedge_sq.sqrt().atan2(inner.norm())
}

pub fn normalize_phase(v: &[Complex64; 3]) -> [Complex64; 3] {
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let big = v.iter().copied().fold(Complex64::new(0.0, 0.0), |best, c| {
        if c.norm() > best.norm() {
            c
        } else {
            best
        }
    });
    if norm == 0.0 || big.norm() == 0.0 {
        return *v;
    }
    let phase = big.conj() / big.norm();
    v.map(|c| c * phase / norm)
}

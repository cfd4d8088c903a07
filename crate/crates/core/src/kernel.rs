//! The linear map `T(a, p₀): p ↦ (p₀p′ − p₀′p) mod a` on polynomials of
//! degree `≤ k`, its kernel, and the divisibility criterion it encodes.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, HoloCurve};
use crate::linalg::ExactMatrix;
use crate::poly::{Degree, ExactPoly};
use crate::scalar::GaussianRational;

/// Which membership condition of a [`KernelSpec`] failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    ANotMonic,
    ADegreeZero,
    P0NotMonic,
    P0DegreeZero,
    NotCoprime,
    RepeatedRoot,
    RootsDisagree,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::ANotMonic => "a is not monic",
            Condition::ADegreeZero => "a has degree 0",
            Condition::P0NotMonic => "p0 is not monic",
            Condition::P0DegreeZero => "p0 has degree 0",
            Condition::NotCoprime => "a and p0 are not coprime",
            Condition::RepeatedRoot => "p0 has a repeated root",
            Condition::RootsDisagree => "root list does not multiply out to a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("spec violation: {0}")]
    SpecViolation(Condition),
    #[error("witness construction needs 2r <= k + 1, got k = {k}, r = {r}")]
    RangeViolation { k: usize, r: usize },
    #[error("witness construction needs the roots of a")]
    MissingRoots,
    #[error("witness matrix is not in echelon form at row {row}")]
    EchelonFailed { row: usize },
    #[error("curve component {index} has degree above k = {k}")]
    ComponentTooLarge { index: usize, k: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A pair `(a, p₀)`: `a` monic of degree `r ≥ 1`, `p₀` monic squarefree of
/// degree `k`, coprime to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSpec {
    a: ExactPoly,
    p0: ExactPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<Vec<(GaussianRational, usize)>>,
}

impl KernelSpec {
    /// Rejects input that is not already in normal form.
    pub fn new(a: ExactPoly, p0: ExactPoly) -> Result<Self, KernelError> {
        use Condition::*;
        let check = |ok: bool, c: Condition| {
            if ok {
                Ok(())
            } else {
                Err(KernelError::SpecViolation(c))
            }
        };
        check(
            matches!(a.degree(), Degree::Finite(d) if d >= 1),
            ADegreeZero,
        )?;
        check(a.is_monic(), ANotMonic)?;
        check(
            matches!(p0.degree(), Degree::Finite(d) if d >= 1),
            P0DegreeZero,
        )?;
        check(p0.is_monic(), P0NotMonic)?;
        let g = ExactPoly::gcd_pair(&a, &p0).expect("nonzero inputs");
        check(g.is_constant(), NotCoprime)?;
        check(p0.is_squarefree(), RepeatedRoot)?;
        Ok(Self { a, p0, roots: None })
    }

    /// Scales `a` and `p₀` to be monic first. Neither scaling changes the
    /// kernel of `T`.
    pub fn normalized(a: ExactPoly, p0: ExactPoly) -> Result<Self, KernelError> {
        Self::new(a.monic(), p0.monic())
    }

    /// `a = ∏ (z − αⱼ)^mⱼ` given by its distinct roots.
    pub fn from_roots(
        roots: Vec<(GaussianRational, usize)>,
        p0: ExactPoly,
    ) -> Result<Self, KernelError> {
        let mut spec = Self::new(ExactPoly::from_roots(&roots), p0)?;
        spec.roots = Some(roots);
        spec.check_roots()?;
        Ok(spec)
    }

    /// Attaches a root list to an existing spec, checking it against `a`.
    pub fn with_roots(
        mut self,
        roots: Vec<(GaussianRational, usize)>,
    ) -> Result<Self, KernelError> {
        self.roots = Some(roots);
        self.check_roots()?;
        Ok(self)
    }

    fn check_roots(&self) -> Result<(), KernelError> {
        let Some(roots) = &self.roots else {
            return Ok(());
        };
        let distinct = roots
            .iter()
            .enumerate()
            .all(|(i, (x, m))| *m > 0 && roots[..i].iter().all(|(y, _)| y != x));
        if !distinct || ExactPoly::from_roots(roots) != self.a {
            return Err(KernelError::SpecViolation(Condition::RootsDisagree));
        }
        Ok(())
    }

    pub fn a(&self) -> &ExactPoly {
        &self.a
    }

    pub fn p0(&self) -> &ExactPoly {
        &self.p0
    }

    pub fn roots(&self) -> Option<&[(GaussianRational, usize)]> {
        self.roots.as_deref()
    }

    pub fn k(&self) -> usize {
        self.p0.degree().unwrap()
    }

    pub fn r(&self) -> usize {
        self.a.degree().unwrap()
    }

    /// Whether `2r ≤ k + 1`, where the kernel dimension is known to be `k + 1 − r`.
    pub fn in_dimension_range(&self) -> bool {
        2 * self.r() <= self.k() + 1
    }

    /// `h(p) = p₀p′ − p₀′p`.
    pub fn h(&self, p: &ExactPoly) -> ExactPoly {
        &(&self.p0 * &p.derivative()) - &(&self.p0.derivative() * p)
    }

    /// `h(p) mod a`, computed by polynomial division.
    pub fn apply_by_division(&self, p: &ExactPoly) -> ExactPoly {
        self.h(p).rem(&self.a).expect("a is nonzero")
    }
}

/// The `r × (k+1)` matrix of `T` in the monomial bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMatrix {
    pub entries: ExactMatrix,
    pub spec: KernelSpec,
}

impl TMatrix {
    /// `T(p)` as a matrix–vector product; `p` must have degree `≤ k`.
    pub fn apply(&self, p: &ExactPoly) -> ExactPoly {
        let k = self.spec.k();
        assert!(
            p.degree() <= Degree::Finite(k),
            "polynomial degree exceeds k"
        );
        let v: Vec<_> = (0..=k).map(|j| p.coeff(j)).collect();
        ExactPoly::new(self.entries.mul_vec(&v))
    }
}

pub fn build_t(spec: &KernelSpec) -> TMatrix {
    let (k, r) = (spec.k(), spec.r());
    let mut entries = ExactMatrix::zeros(r, k + 1);
    for j in 0..=k {
        let col = spec.apply_by_division(&ExactPoly::monomial(GaussianRational::from(1), j));
        for i in 0..r {
            entries[(i, j)] = col.coeff(i);
        }
    }
    TMatrix {
        entries,
        spec: spec.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub k: usize,
    pub r: usize,
    pub rank: usize,
    pub dim_kernel: usize,
    pub kernel_basis: Vec<ExactPoly>,
}

impl KernelReport {
    /// `k + 1 − r` when `2r ≤ k + 1`; no prediction otherwise.
    pub fn expected_dim(&self) -> Option<usize> {
        (2 * self.r <= self.k + 1).then(|| self.k + 1 - self.r)
    }
}

pub fn kernel_report(t: &TMatrix) -> KernelReport {
    let rank = t.entries.rank();
    let kernel_basis: Vec<ExactPoly> = t
        .entries
        .kernel_basis()
        .into_iter()
        .map(ExactPoly::new)
        .collect();
    debug_assert_eq!(rank + kernel_basis.len(), t.entries.cols());
    KernelReport {
        k: t.spec.k(),
        r: t.spec.r(),
        rank,
        dim_kernel: kernel_basis.len(),
        kernel_basis,
    }
}

/// Witness polynomials certifying `rank T = r`, with the evaluation matrix
/// `(h(P_{K,L}))^{(I)}(α_J)` that certifies them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBasis {
    /// `P_{K,L}` in order `(L, K)`.
    pub witnesses: Vec<ExactPoly>,
    /// Row per witness, column per `(J, I)` in lexicographic order.
    pub values: ExactMatrix,
}

/// `P_{K,L} = (z − α_L)^K ∏_{J≠L} (z − α_J)^{m_J+1}` for every root `α_L` and
/// `K = 1..m_L`. Each has degree at most `r + R − 1 ≤ 2r − 1 ≤ k`.
pub fn pkl_basis(spec: &KernelSpec) -> Result<WitnessBasis, KernelError> {
    let (k, r) = (spec.k(), spec.r());
    if !spec.in_dimension_range() {
        return Err(KernelError::RangeViolation { k, r });
    }
    let roots = spec.roots().ok_or(KernelError::MissingRoots)?;
    let mut witnesses = Vec::with_capacity(r);
    for (l, (_, m)) in roots.iter().enumerate() {
        for kk in 1..=*m {
            let factors: Vec<_> = roots
                .iter()
                .enumerate()
                .map(|(j, (beta, mj))| (beta.clone(), if j == l { kk } else { mj + 1 }))
                .collect();
            let p = ExactPoly::from_roots(&factors);
            debug_assert!(p.degree() <= Degree::Finite(k));
            witnesses.push(p);
        }
    }
    let columns: Vec<(usize, usize)> = roots
        .iter()
        .enumerate()
        .flat_map(|(j, (_, m))| (0..*m).map(move |i| (j, i)))
        .collect();
    let values = ExactMatrix::from_fn(witnesses.len(), columns.len(), |row, col| {
        let (j, i) = columns[col];
        spec.h(&witnesses[row])
            .nth_derivative(i)
            .evaluate(&roots[j].0)
    });
    for row in 0..values.rows() {
        if values[(row, row)].is_zero() || (0..row).any(|c| !values[(row, c)].is_zero()) {
            return Err(KernelError::EchelonFailed { row });
        }
    }
    Ok(WitnessBasis { witnesses, values })
}

/// Both sides of the criterion "`a` divides `R(f)` iff `p₁, p₂ ∈ ker T(a, p₀)`",
/// each computed on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityCheck {
    pub divides: bool,
    pub in_kernel: bool,
}

impl DivisibilityCheck {
    pub fn agree(&self) -> bool {
        self.divides == self.in_kernel
    }
}

/// `f` must already have `p₀` monic and squarefree of degree `k`; see
/// [`HoloCurve::generic_position`].
pub fn divisibility_check(a: &ExactPoly, f: &HoloCurve) -> Result<DivisibilityCheck, KernelError> {
    let [p0, p1, p2] = f.components();
    let k = f.degree();
    if p0.degree() != Degree::Finite(k) {
        return Err(KernelError::SpecViolation(Condition::P0NotMonic));
    }
    let spec = KernelSpec::new(a.clone(), p0.clone())?;
    for (index, p) in [(1, p1), (2, p2)] {
        if p.degree() > Degree::Finite(k) {
            return Err(KernelError::ComponentTooLarge { index, k });
        }
    }
    let divides = a.divides(&f.ramification().divisor);
    let t = build_t(&spec);
    let in_kernel = t.apply(p1).is_zero() && t.apply(p2).is_zero();
    Ok(DivisibilityCheck { divides, in_kernel })
}

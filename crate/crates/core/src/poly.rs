//! Univariate polynomials over the Gaussian rationals.
//!
//! Everything here is exact. GCDs are normalized monic, the Euclidean
//! remainder sequence is made monic at every step to keep coefficients small,
//! and the zero polynomial carries the [`Degree::NegInfinity`] sentinel.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::ExactMatrix;
use crate::scalar::{ApproxComplex, GaussianRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degenerate divisor: {0}")]
    DegenerateDivisor(&'static str),
    #[error("degree overflow: polynomial of degree {degree} cannot be reversed in degree {n}")]
    DegreeOverflow { degree: usize, n: usize },
    #[error("recombination found no admissible matrix after {attempts} patterns")]
    RecombinationFailed { attempts: usize },
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Panics on the zero-polynomial sentinel.
    pub fn unwrap(self) -> usize {
        self.finite().expect("degree of the zero polynomial")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients in ascending powers, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<GaussianRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·zⁿ`.
    pub fn monomial(c: GaussianRational, n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    /// `∏ (z − root)^mult`.
    pub fn from_roots(roots: &[(GaussianRational, usize)]) -> Self {
        roots.iter().fold(Self::one(), |acc, (root, m)| {
            let lin = Self::new(vec![-root, GaussianRational::one()]);
            (0..*m).fold(acc, |a, _| &a * &lin)
        })
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `zⁱ`, zero past the degree.
    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Divides by the leading coefficient; the zero polynomial maps to itself.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(GaussianRational::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussianRational::from(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn evaluate(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluates a polynomial whose coefficients are themselves polynomials
    /// (in another variable) at `x`, yielding a polynomial.
    pub fn compose_constant_coeffs(table: &[ExactPoly], x: &GaussianRational) -> ExactPoly {
        ExactPoly::new(table.iter().map(|c| c.evaluate(x)).collect())
    }

    pub fn to_approx(&self) -> ApproxPoly {
        ApproxPoly(
            self.coeffs
                .iter()
                .map(GaussianRational::to_approx)
                .collect(),
        )
    }

    /// Order of vanishing at zero; `None` for the zero polynomial.
    pub fn zero_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `p = q·d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly), PolyError> {
        let dd = d.degree().finite().ok_or(PolyError::DegenerateDivisor(
            "division by the zero polynomial",
        ))?;
        let inv_lc = d
            .leading_coeff()
            .and_then(GaussianRational::inv)
            .expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &inv_lc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= &t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &ExactPoly) -> Result<ExactPoly, PolyError> {
        Ok(self.divmod(d)?.1)
    }

    /// `Some(q)` with `self = q·d` exactly, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &ExactPoly) -> Result<Option<ExactPoly>, PolyError> {
        let (q, r) = self.divmod(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Whether `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &ExactPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// `wⁿ·p(1/w)`.
    pub fn reverse(&self, n: usize) -> Result<ExactPoly, PolyError> {
        match self.degree() {
            Degree::NegInfinity => Ok(Self::zero()),
            Degree::Finite(d) if d > n => Err(PolyError::DegreeOverflow { degree: d, n }),
            Degree::Finite(_) => {
                let mut out = vec![GaussianRational::zero(); n + 1];
                for (i, c) in self.coeffs.iter().enumerate() {
                    out[n - i] = c.clone();
                }
                Ok(Self::new(out))
            }
        }
    }

    /// Homogenized substitution `(cz+d)ⁿ·p((az+b)/(cz+d))` for the Möbius
    /// matrix `[[a, b], [c, d]]`.
    pub fn mobius_substitute(
        &self,
        n: usize,
        m: &[GaussianRational; 4],
    ) -> Result<ExactPoly, PolyError> {
        if let Degree::Finite(d) = self.degree() {
            if d > n {
                return Err(PolyError::DegreeOverflow { degree: d, n });
            }
        }
        let num = ExactPoly::new(vec![m[1].clone(), m[0].clone()]);
        let den = ExactPoly::new(vec![m[3].clone(), m[2].clone()]);
        let mut num_pows = vec![Self::one()];
        let mut den_pows = vec![Self::one()];
        for i in 1..=n {
            num_pows.push(&num_pows[i - 1] * &num);
            den_pows.push(&den_pows[i - 1] * &den);
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .fold(Self::zero(), |acc, (j, c)| {
                &acc + &(&num_pows[j] * &den_pows[n - j]).scale(c)
            }))
    }

    /// Exact `(gcd, s, t)` with `s·g + t·h = gcd`, gcd monic.
    fn extended_euclid(g: &ExactPoly, h: &ExactPoly) -> (ExactPoly, ExactPoly, ExactPoly) {
        let normalize = |r: ExactPoly, s: ExactPoly, t: ExactPoly| match r
            .leading_coeff()
            .and_then(GaussianRational::inv)
        {
            Some(inv) => (r.scale(&inv), s.scale(&inv), t.scale(&inv)),
            None => (r, s, t),
        };
        let (mut r0, mut s0, mut t0) = normalize(g.clone(), Self::one(), Self::zero());
        let (mut r1, mut s1, mut t1) = normalize(h.clone(), Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            let (r, s, t) = normalize(r, s, t);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn gcd_pair(g: &ExactPoly, h: &ExactPoly) -> Result<ExactPoly, PolyError> {
        if g.is_zero() && h.is_zero() {
            return Err(PolyError::DegenerateDivisor("gcd of two zero polynomials"));
        }
        let (mut a, mut b) = (g.monic(), h.monic());
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = std::mem::replace(&mut b, r);
        }
        Ok(a)
    }

    /// Monic GCD of a family by iterated pairwise GCDs.
    pub fn gcd_family(polys: &[ExactPoly]) -> Result<ExactPoly, PolyError> {
        let mut nonzero = polys.iter().filter(|p| !p.is_zero());
        let first = nonzero
            .next()
            .ok_or(PolyError::DegenerateDivisor("gcd of an all-zero family"))?;
        let mut acc = first.monic();
        for p in nonzero {
            if acc.is_one() {
                break;
            }
            acc = Self::gcd_pair(&acc, p)?;
        }
        Ok(acc)
    }

    /// Monic GCD of a family through a recombination matrix near the
    /// identity: two rows of `Ã·(p₀, …, pₙ)` are combined so that their
    /// pairwise GCD is already the global one. A pattern is accepted only
    /// when the pairwise GCD divides every input.
    pub fn gcd_family_recombined(
        polys: &[ExactPoly],
    ) -> Result<(ExactPoly, Recombination), PolyError> {
        let inputs: Vec<&ExactPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
        let n = inputs.len();
        if n == 0 {
            return Err(PolyError::DegenerateDivisor("gcd of an all-zero family"));
        }
        if n <= 2 {
            let g = if n == 1 {
                inputs[0].monic()
            } else {
                Self::gcd_pair(inputs[0], inputs[1])?
            };
            return Ok((
                g,
                Recombination {
                    matrix: ExactMatrix::identity(n),
                    attempts: 0,
                },
            ));
        }
        for attempt in 1..=RECOMBINATION_BUDGET {
            let matrix = recombination_matrix(n, attempt);
            if matrix.determinant().is_zero() {
                continue;
            }
            let combo = |row: usize| {
                inputs.iter().enumerate().fold(Self::zero(), |acc, (j, p)| {
                    &acc + &p.scale(&matrix[(row, j)])
                })
            };
            let (g, h) = (combo(0), combo(1));
            if g.is_zero() && h.is_zero() {
                continue;
            }
            let l = Self::gcd_pair(&g, &h)?;
            if inputs.iter().all(|p| l.divides(p)) {
                return Ok((
                    l,
                    Recombination {
                        matrix,
                        attempts: attempt,
                    },
                ));
            }
        }
        Err(PolyError::RecombinationFailed {
            attempts: RECOMBINATION_BUDGET,
        })
    }

    /// Bézout pair with the degree bounds `deg λ < deg(h/l)`, `deg μ < deg(g/l)`,
    /// or the divisibility-branch answer when one input divides the other.
    pub fn bezout_bounded(g: &ExactPoly, h: &ExactPoly) -> Result<BezoutPair, PolyError> {
        let (Some(lc_g), Some(lc_h)) = (g.leading_coeff(), h.leading_coeff()) else {
            return Err(PolyError::DegenerateDivisor(
                "bezout pair with a zero input",
            ));
        };
        if g.divides(h) {
            return Ok(BezoutPair {
                lambda: Self::constant(lc_g.inv().expect("nonzero")),
                mu: Self::zero(),
                hcf: g.monic(),
                branch: BezoutBranch::Divisibility,
            });
        }
        if h.divides(g) {
            return Ok(BezoutPair {
                lambda: Self::zero(),
                mu: Self::constant(lc_h.inv().expect("nonzero")),
                hcf: h.monic(),
                branch: BezoutBranch::Divisibility,
            });
        }
        let (l, s, _) = Self::extended_euclid(g, h);
        let h_red = h.div_exact(&l)?.expect("gcd divides h");
        let lambda = s.rem(&h_red)?;
        let mu = (&l - &(&lambda * g))
            .div_exact(h)?
            .expect("bezout remainder divisible by h");
        Ok(BezoutPair {
            lambda,
            mu,
            hcf: l,
            branch: BezoutBranch::Reduced,
        })
    }

    /// Dimension of the space of `(λ, μ)` with `deg λ < deg(h/l)`,
    /// `deg μ < deg(g/l)` and `deg(λg + μh) ≤ deg l`, found by solving the
    /// homogeneous linear system on the coefficients. Uniqueness of the
    /// bounded Bézout pair means this is exactly 1 off the divisibility branch.
    pub fn bezout_solution_space_dim(g: &ExactPoly, h: &ExactPoly) -> Result<usize, PolyError> {
        let l = Self::gcd_pair(g, h)?;
        let (dg, dh, dl) = (
            g.degree().unwrap(),
            h.degree().unwrap(),
            l.degree().unwrap(),
        );
        let (n_lambda, n_mu) = (dh - dl, dg - dl);
        let unknowns = n_lambda + n_mu;
        let top = (dg + dh).saturating_sub(dl + 1);
        let rows = top.saturating_sub(dl);
        let mat = ExactMatrix::from_fn(rows, unknowns, |row, col| {
            let power = dl + 1 + row;
            if col < n_lambda {
                power
                    .checked_sub(col)
                    .map(|p| g.coeff(p))
                    .unwrap_or_default()
            } else {
                power
                    .checked_sub(col - n_lambda)
                    .map(|p| h.coeff(p))
                    .unwrap_or_default()
            }
        });
        Ok(unknowns - mat.rank())
    }

    pub fn is_squarefree(&self) -> bool {
        match Self::gcd_pair(self, &self.derivative()) {
            Ok(g) => g.is_one(),
            Err(_) => false,
        }
    }
}

const RECOMBINATION_BUDGET: usize = 16;

/// `I + P/1000·s` with a fixed integer pattern `P`; deterministic in `attempt`.
fn recombination_matrix(n: usize, attempt: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            GaussianRational::one()
        } else {
            let entry = ((3 * i + 5 * j + 7 * attempt) % 11 + 1) as i64;
            GaussianRational::ratio(entry, 1000 * attempt as i64)
        }
    })
}

/// Matrix used by [`ExactPoly::gcd_family_recombined`] and the number of
/// patterns tried.
#[derive(Debug, Clone)]
pub struct Recombination {
    pub matrix: ExactMatrix,
    pub attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BezoutBranch {
    /// One input divides the other; `(λ, μ)` is `(1/lc, 0)` or `(0, 1/lc)`.
    Divisibility,
    /// Unique pair under the degree bounds.
    Reduced,
}

/// `lambda·g + mu·h = hcf`, `hcf` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPair {
    pub lambda: ExactPoly,
    pub mu: ExactPoly,
    pub hcf: ExactPoly,
    pub branch: BezoutBranch,
}

impl BezoutPair {
    pub fn verify(&self, g: &ExactPoly, h: &ExactPoly) -> bool {
        (&(&(&self.lambda * g) + &(&self.mu * h)) - &self.hcf).is_zero()
    }
}

impl Zero for ExactPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ExactPoly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Add<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => {}
                _ => write!(f, "{c}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(Vec::<GaussianRational>::deserialize(d)?))
    }
}

/// Floating-point mirror of an [`ExactPoly`], for evaluation only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ApproxPoly(pub Vec<ApproxComplex>);

impl ApproxPoly {
    pub fn eval(&self, z: ApproxComplex) -> ApproxComplex {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> ApproxPoly {
        ApproxPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(&[0, 1, 0, 1]).derivative(), p(&[1, 0, 3]));
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert!(p(&[1, 0, 1]).evaluate(&GaussianRational::i()).is_zero());
        assert_eq!(p(&[5]).derivative(), ExactPoly::zero());
        assert_eq!(ExactPoly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(
            ExactPoly::new(vec![1.into(), 0.into(), 0.into()]).degree(),
            Degree::Finite(0)
        );
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(
            p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), ExactPoly::zero())
        );
        // z³ = z·(z²+1) − z
        assert_eq!(
            p(&[0, 0, 0, 1]).divmod(&p(&[1, 0, 1])).unwrap(),
            (p(&[0, 1]), p(&[0, -1]))
        );
        assert_eq!(
            p(&[5]).divmod(&p(&[0, 1])).unwrap(),
            (ExactPoly::zero(), p(&[5]))
        );
        assert!(matches!(
            p(&[1, 1]).divmod(&ExactPoly::zero()),
            Err(PolyError::DegenerateDivisor(_))
        ));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            ExactPoly::gcd_pair(&p(&[-1, 0, 1]), &p(&[-2, 1, 1])).unwrap(),
            p(&[-1, 1])
        );
        assert_eq!(
            ExactPoly::gcd_pair(&p(&[2, 4]), &ExactPoly::zero()).unwrap(),
            p(&[1, 2]).monic()
        );
        assert_eq!(
            ExactPoly::gcd_pair(&p(&[0, 1]), &p(&[1, 1])).unwrap(),
            ExactPoly::one()
        );
        assert!(ExactPoly::gcd_pair(&ExactPoly::zero(), &ExactPoly::zero()).is_err());
    }

    #[test]
    fn gcd_family_examples() {
        let fam = [p(&[-1, 0, 1]), p(&[-2, 1, 1]), p(&[-1, 0, 0, 1])];
        assert_eq!(ExactPoly::gcd_family(&fam).unwrap(), p(&[-1, 1]));
        assert_eq!(
            ExactPoly::gcd_family_recombined(&fam).unwrap().0,
            p(&[-1, 1])
        );

        // every pair shares a root but the three share none
        let fam = [p(&[0, -2, 1]), p(&[0, -3, 1]), p(&[6, -5, 1])];
        assert_eq!(ExactPoly::gcd_family(&fam).unwrap(), ExactPoly::one());
        assert_eq!(
            ExactPoly::gcd_family_recombined(&fam).unwrap().0,
            ExactPoly::one()
        );

        let q = p(&[3, 0, 6]);
        let fam = [q.clone(), q.clone(), q.clone()];
        assert_eq!(ExactPoly::gcd_family(&fam).unwrap(), q.monic());
        assert_eq!(ExactPoly::gcd_family_recombined(&fam).unwrap().0, q.monic());
        assert!(ExactPoly::gcd_family(&[ExactPoly::zero(), ExactPoly::zero()]).is_err());
    }

    #[test]
    fn bezout_examples() {
        let (g, h) = (p(&[-1, 0, 1]), p(&[-2, 1, 1]));
        let b = ExactPoly::bezout_bounded(&g, &h).unwrap();
        assert_eq!(
            (b.lambda.clone(), b.mu.clone(), b.hcf.clone()),
            (p(&[-1]), p(&[1]), p(&[-1, 1]))
        );
        assert!(b.verify(&g, &h));
        assert_eq!(ExactPoly::bezout_solution_space_dim(&g, &h).unwrap(), 1);

        let (g, h) = (p(&[0, 1]), p(&[-1, 1]));
        let b = ExactPoly::bezout_bounded(&g, &h).unwrap();
        assert_eq!(
            (b.lambda, b.mu, b.hcf),
            (p(&[1]), p(&[-1]), ExactPoly::one())
        );

        let (g, h) = (p(&[-1, 1]), p(&[-1, 0, 1]));
        let b = ExactPoly::bezout_bounded(&g, &h).unwrap();
        assert_eq!(b.branch, BezoutBranch::Divisibility);
        assert_eq!(b.hcf, p(&[-1, 1]));
        assert!(b.verify(&g, &h));

        assert!(ExactPoly::bezout_bounded(&ExactPoly::zero(), &h).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[1, 0, 1]).reverse(2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).reverse(3).unwrap(), p(&[1]));
        assert_eq!(p(&[3, 2]).reverse(4).unwrap(), p(&[0, 0, 0, 2, 3]));
        assert_eq!(
            p(&[3, 2, 1]).reverse(1),
            Err(PolyError::DegreeOverflow { degree: 2, n: 1 })
        );
    }

    #[test]
    fn mobius_translation() {
        // z ↦ z + 1 on z²
        let one = GaussianRational::one();
        let m = [one.clone(), one.clone(), GaussianRational::zero(), one];
        assert_eq!(
            p(&[0, 0, 1]).mobius_substitute(2, &m).unwrap(),
            p(&[1, 2, 1])
        );
    }

    #[test]
    fn serde_round_trip() {
        let q = ExactPoly::new(vec![GaussianRational::ratio(1, 3), GaussianRational::i()]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"[{"re":"1/3","im":"0/1"},{"re":"0/1","im":"1/1"}]"#);
        assert_eq!(serde_json::from_str::<ExactPoly>(&s).unwrap(), q);
    }
}

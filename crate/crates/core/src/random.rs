//! Seeded generators for property tests and the self-test.
//!
//! Everything is driven by a `ChaCha8Rng`, so a seed fixes every instance.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::HoloCurve;
use crate::kernel::KernelSpec;
use crate::linalg::ExactMatrix;
use crate::poly::{Degree, ExactPoly};
use crate::scalar::GaussianRational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a + bi` with `|a|, |b| ≤ bound`.
pub fn gaussian_int(rng: &mut SeededRng, bound: i64) -> GaussianRational {
    GaussianRational::from_integers(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn nonzero_gaussian(rng: &mut SeededRng, bound: i64) -> GaussianRational {
    loop {
        let c = gaussian_int(rng, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Degree exactly `deg`, small Gaussian-integer coefficients.
pub fn poly_of_degree(rng: &mut SeededRng, deg: usize, bound: i64) -> ExactPoly {
    let mut c: Vec<_> = (0..deg).map(|_| gaussian_int(rng, bound)).collect();
    c.push(nonzero_gaussian(rng, bound));
    ExactPoly::new(c)
}

fn monic_of_degree(rng: &mut SeededRng, deg: usize, bound: i64) -> ExactPoly {
    let mut c: Vec<_> = (0..deg).map(|_| gaussian_int(rng, bound)).collect();
    c.push(GaussianRational::one());
    ExactPoly::new(c)
}

fn poly_in(rng: &mut SeededRng, lo: usize, hi: usize, bound: i64) -> ExactPoly {
    let d = rng.gen_range(lo..=hi);
    poly_of_degree(rng, d, bound)
}

fn monic_in(rng: &mut SeededRng, lo: usize, hi: usize, bound: i64) -> ExactPoly {
    let d = rng.gen_range(lo..=hi);
    monic_of_degree(rng, d, bound)
}

fn linear_power(alpha: &GaussianRational, m: usize) -> ExactPoly {
    ExactPoly::from_roots(&[(alpha.clone(), m)])
}

/// A random full curve of degree `k`. With `plant` set, one to two points
/// are forced to ramify by making `p₁, p₂` vanish to high order there before
/// mixing by a random invertible matrix; the actual ramification is whatever
/// the curve computes.
pub fn curve(rng: &mut SeededRng, k: usize, plant: bool) -> HoloCurve {
    assert!(k >= 2);
    loop {
        let candidate = if plant {
            planted_triple(rng, k)
        } else {
            plain_triple(rng, k)
        };
        if let Some(f) = candidate.and_then(|t| HoloCurve::from_triple(t).ok()) {
            if f.degree() == k {
                return f;
            }
        }
    }
}

fn plain_triple(rng: &mut SeededRng, k: usize) -> Option<[ExactPoly; 3]> {
    let lead = rng.gen_range(0..3);
    Some([0, 1, 2].map(|i| {
        let d = if i == lead { k } else { rng.gen_range(0..=k) };
        poly_of_degree(rng, d, 3)
    }))
}

fn planted_triple(rng: &mut SeededRng, k: usize) -> Option<[ExactPoly; 3]> {
    if k < 3 {
        return plain_triple(rng, k);
    }
    let points = if k >= 5 && rng.gen_bool(0.5) { 2 } else { 1 };
    let mut factor = ExactPoly::one();
    let mut used = Vec::new();
    for _ in 0..points {
        let alpha = gaussian_int(rng, 2);
        if used.contains(&alpha) {
            return None;
        }
        let m = rng.gen_range(1..=((k - 1) / points - 1).max(1));
        factor = &factor * &linear_power(&alpha, m + 1);
        used.push(alpha);
    }
    let fd = factor.degree().unwrap();
    if fd >= k {
        return None;
    }
    let p0 = poly_in(rng, 0, k, 3);
    let a = &factor * &poly_in(rng, 0, k - fd, 3);
    let b = &factor * &poly_in(rng, 0, k - fd, 3);
    let m = invertible_matrix(rng);
    let base = [p0, a, b];
    Some([0, 1, 2].map(|i| {
        (0..3).fold(ExactPoly::zero(), |acc, j| {
            &acc + &base[j].scale(&m[(i, j)])
        })
    }))
}

/// A random `3 × 3` integer matrix with nonzero determinant.
pub fn invertible_matrix(rng: &mut SeededRng) -> ExactMatrix {
    loop {
        let m = ExactMatrix::from_fn(3, 3, |_, _| GaussianRational::from(rng.gen_range(-2..=2)));
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// `(g, h) = (l·u, l·v)` with `l` monic and `u, v` coprime. About one in
/// eight instances has `u` or `v` constant, exercising the divisibility branch.
pub fn planted_gcd_pair(rng: &mut SeededRng) -> (ExactPoly, ExactPoly, ExactPoly) {
    loop {
        let l = monic_in(rng, 0, 3, 3);
        let (du, dv) = if rng.gen_ratio(1, 8) {
            (0, rng.gen_range(1..=4))
        } else {
            (rng.gen_range(1..=4), rng.gen_range(1..=4))
        };
        let u = poly_of_degree(rng, du, 4);
        let v = poly_of_degree(rng, dv, 4);
        if ExactPoly::gcd_pair(&u, &v).expect("nonzero").is_constant() {
            let (g, h) = if rng.gen_bool(0.5) {
                (&l * &u, &l * &v)
            } else {
                (&l * &v, &l * &u)
            };
            return (g, h, l);
        }
    }
}

/// Three polynomials built from a shared factor and pairwise shared roots,
/// so that pairwise and global GCDs can differ.
pub fn gcd_triple(rng: &mut SeededRng) -> [ExactPoly; 3] {
    let shared = monic_in(rng, 0, 2, 2);
    let roots: Vec<_> = (0..3).map(|_| gaussian_int(rng, 3)).collect();
    let lin = |a: &GaussianRational| linear_power(a, 1);
    let extra = |rng: &mut SeededRng| poly_in(rng, 0, 2, 3);
    // factor i is shared by the two polynomials other than i
    [0, 1, 2].map(|i| {
        let mut p = &shared * &extra(rng);
        for (j, r) in roots.iter().enumerate() {
            if j != i && rng.gen_ratio(3, 4) {
                p = &p * &lin(r);
            }
        }
        p
    })
}

/// `a` with distinct small-integer roots, `p₀` monic with small
/// Gaussian-integer coefficients, rejection-sampled into the valid set.
/// `k ≤ k_max`; with `in_range`, `2r ≤ k + 1`.
pub fn kernel_spec(rng: &mut SeededRng, k_max: usize, in_range: bool) -> KernelSpec {
    loop {
        let k = rng.gen_range(1..=k_max);
        let r_max = if in_range { (k + 1) / 2 } else { k + 1 };
        let r = rng.gen_range(1..=r_max.max(1));
        let mut pool: Vec<i64> = (-5..=5).collect();
        pool.shuffle(rng);
        let mut roots = Vec::new();
        let mut left = r;
        for &x in &pool {
            if left == 0 {
                break;
            }
            let m = rng.gen_range(1..=left);
            roots.push((GaussianRational::from(x), m));
            left -= m;
        }
        let p0 = monic_of_degree(rng, k, 3);
        if let Ok(spec) = KernelSpec::from_roots(roots, p0) {
            return spec;
        }
    }
}

/// A curve with `p₀` monic squarefree of degree `k`, together with a monic
/// `a` coprime to `p₀`. Roughly a third of the instances plant `a | R(f)`.
pub fn divisibility_instance(rng: &mut SeededRng, k_max: usize) -> (ExactPoly, HoloCurve) {
    loop {
        let k = rng.gen_range(2..=k_max);
        let alpha = gaussian_int(rng, 2);
        let m = rng.gen_range(1..=(k - 1).min(3));
        let p0 = monic_of_degree(rng, k, 3);
        if p0.evaluate(&alpha).is_zero() || !p0.is_squarefree() {
            continue;
        }
        let planted = rng.gen_bool(0.5);
        let factor = linear_power(&alpha, if planted { m + 1 } else { 0 });
        let fd = factor.degree().unwrap();
        if fd > k {
            continue;
        }
        let mix = |rng: &mut SeededRng| {
            let c = gaussian_int(rng, 2);
            &p0.scale(&c) + &(&factor * &poly_in(rng, 0, k - fd, 3))
        };
        let (p1, p2) = (mix(rng), mix(rng));
        let Ok(f) = HoloCurve::validate(p0.clone(), p1, p2) else {
            continue;
        };
        if f.degree() != k {
            continue;
        }
        let a = if planted && rng.gen_bool(0.75) {
            linear_power(&alpha, rng.gen_range(1..=m))
        } else {
            match rng.gen_range(0..3) {
                0 => linear_power(&alpha, rng.gen_range(1..=m + 1)),
                1 => linear_power(&gaussian_int(rng, 3), 1),
                _ => &linear_power(&alpha, 1) * &linear_power(&gaussian_int(rng, 3), 1),
            }
        };
        let coprime = ExactPoly::gcd_pair(&a, &p0)
            .map(|g| g.is_constant())
            .unwrap_or(false);
        if coprime && a.degree() >= Degree::Finite(1) {
            return (a, f);
        }
    }
}

/// Two distinct curves of degree `k` in the same `(k, r)` stratum.
pub fn same_stratum_pair(rng: &mut SeededRng, k: usize, plant: bool) -> (HoloCurve, HoloCurve) {
    loop {
        let f = curve(rng, k, plant);
        let g = curve(rng, k, plant);
        if f.ramification().r_total == g.ramification().r_total && !f.projectively_equal(&g) {
            return (f, g);
        }
    }
}

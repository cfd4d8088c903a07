use std::collections::BTreeMap;

use num_traits::Zero;

use crate::poly::ExactPoly;
use crate::scalar::GaussianRational;

/// Polynomial in `z` and `z̄`: `Σ c_{ij} zⁱ z̄ʲ`, zero terms dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), GaussianRational>,
}

impl BiPoly {
    /// `p(z)`.
    pub fn holomorphic(p: &ExactPoly) -> Self {
        let mut out = Self::default();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((i, 0), c.clone());
        }
        out
    }

    /// `conj(p(z)) = Σ conj(cᵢ) z̄ⁱ`.
    pub fn antiholomorphic(p: &ExactPoly) -> Self {
        let mut out = Self::default();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((0, i), c.conj());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (usize, usize), c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

pub(crate) fn cross(a: &[BiPoly; 3], b: &[BiPoly; 3]) -> [BiPoly; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub(crate) fn dot(a: &[BiPoly; 3], b: &[BiPoly; 3]) -> BiPoly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

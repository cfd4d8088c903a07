//! Dense exact matrices over the Gaussian rationals.
//!
//! Two independent elimination routes are provided: fraction-free
//! (Bareiss) elimination for rank and determinant, and Gauss-Jordan reduction
//! for reduced echelon forms and kernel bases.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(
            v.len(),
            self.cols,
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(GaussianRational::zero(), |acc, l| {
                acc + &self[(i, l)] * &other[(l, j)]
            })
        })
    }

    /// Copy with every row scaled to Gaussian-integer entries.
    fn integral_rows(&self) -> ExactMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            let lcm = self.row(i).iter().fold(BigInt::one(), |acc, x| {
                num_integer::Integer::lcm(&acc, &x.denominator_lcm())
            });
            let scale = GaussianRational::real(lcm.into());
            for j in 0..self.cols {
                out[(i, j)] = &out[(i, j)] * &scale;
            }
        }
        out
    }

    /// Fraction-free forward elimination. Returns the echelon matrix and the
    /// pivot columns; every intermediate entry is a Gaussian integer.
    pub fn bareiss_echelon(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.integral_rows();
        let mut pivots = Vec::new();
        let mut prev = GaussianRational::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let pivot = m[(row, col)].clone();
            for i in row + 1..self.rows {
                let factor = m[(i, col)].clone();
                for j in 0..self.cols {
                    let v = &(&pivot * &m[(i, j)]) - &(&factor * &m[(row, j)]);
                    m[(i, j)] = &v / &prev;
                }
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return GaussianRational::one();
        }
        let mut m = self.clone();
        let mut sign = GaussianRational::one();
        let mut prev = GaussianRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[(k, k)] * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = &v / &prev;
                }
                m[(i, k)] = GaussianRational::zero();
            }
            prev = m[(k, k)].clone();
        }
        &sign * &m[(n - 1, n - 1)]
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, with pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for j in 0..self.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in 0..self.cols {
                    let v = &m[(i, j)] - &(&factor * &m[(row, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Kernel basis read off the reduced echelon form: one vector per free
    /// column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[fc] = GaussianRational::one();
                for (pr, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(pr, fc)];
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

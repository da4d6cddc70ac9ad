//! Dense real matrices and the handful of kernels the rest of the crate needs:
//! pivoted LU solves, the matrix exponential, integer powers and power iteration.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Deref, Index, IndexMut};

use crate::error::{Error, Result};

/// Relative pivot size below which a matrix is treated as singular.
pub const SINGULAR_PIVOT: f64 = 1e-14;
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
pub const DEFAULT_EIG_MAX_ITER: usize = 10_000;

/// Row-major dense matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Non-empty vector of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

fn check_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&entries)?;
        Ok(Vector(entries))
    }

    pub fn zeros(len: usize) -> Self {
        Vector(vec![0.0; len])
    }

    pub fn ones(len: usize) -> Self {
        Vector(vec![1.0; len])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(nrows, ncols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        norm_inf(&self.data)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self + c * I`.
    pub fn shift(&self, c: f64) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += c;
        }
        m
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial (row) pivoting.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Lu> {
        let n = a.ensure_square()?;
        let scale = a.max_abs();
        if scale == 0.0 {
            return Err(Error::SingularMatrix);
        }
        let threshold = SINGULAR_PIVOT * scale;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].abs()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax < threshold {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= factor * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Lu { n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        check_finite(&x).map_err(|_| Error::Overflow)?;
        Ok(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Matrix> {
        if b.rows != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: b.rows,
            });
        }
        let bt = b.transpose();
        let mut xt = Matrix::zeros(b.cols, b.rows);
        for j in 0..b.cols {
            let col = self.solve(bt.row(j))?;
            xt.data[j * b.rows..(j + 1) * b.rows].copy_from_slice(&col);
        }
        Ok(xt.transpose())
    }
}

/// Solves `A x = b` by row-pivoted Gaussian elimination.
pub fn solve_linear(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.ensure_square()?;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    Lu::factor(a)?.solve(b)
}

// Coefficients of the degree-13 diagonal Padé approximant to exp.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Scaled norm at or below which the Padé approximant is applied directly.
const EXPM_SCALED_NORM: f64 = 0.5;

/// Matrix exponential by scaling and squaring around a [13/13] Padé approximant.
pub fn mat_exp(a: &Matrix) -> Result<Matrix> {
    let n = a.ensure_square()?;
    let mut norm = a.norm_inf();
    let mut squarings = 0u32;
    while norm > EXPM_SCALED_NORM {
        norm /= 2.0;
        squarings += 1;
        if squarings > 1100 {
            return Err(Error::Overflow);
        }
    }
    let scaled = a.scale(libm::ldexp(1.0, -(squarings as i32)));

    let b = &PADE13;
    let ident = Matrix::identity(n);
    let a2 = scaled.matmul(&scaled)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let lin = |terms: &[(f64, &Matrix)]| -> Matrix {
        let mut acc = Matrix::zeros(n, n);
        for (c, m) in terms {
            for (d, s) in acc.data.iter_mut().zip(&m.data) {
                *d += c * s;
            }
        }
        acc
    };

    let u_inner = a6.matmul(&lin(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]))?;
    let u_inner = u_inner.add(&lin(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &ident)]))?;
    let u = scaled.matmul(&u_inner)?;
    let v = a6.matmul(&lin(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]))?;
    let v = v.add(&lin(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &ident)]))?;

    let numer = v.add(&u)?;
    let denom = v.sub(&u)?;
    let mut r = Lu::factor(&denom)?.solve_matrix(&numer)?;
    for _ in 0..squarings {
        r = r.matmul(&r)?;
        if !r.is_finite() {
            return Err(Error::Overflow);
        }
    }
    if !r.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(r)
}

/// `A^k` by binary exponentiation; `A^0 = I`.
pub fn mat_pow(a: &Matrix, k: u64) -> Result<Matrix> {
    let n = a.ensure_square()?;
    let mut result = Matrix::identity(n);
    let mut base = a.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.matmul(&base)?;
        }
        k >>= 1;
        if k > 0 {
            base = base.matmul(&base)?;
        }
    }
    if !result.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(result)
}

/// Power iteration from the all-ones vector.
///
/// Returns `(lambda, v)` with `||A v - lambda v||_inf <= tol * ||v||_inf` and `v`
/// of unit Euclidean length. Intended for nonnegative matrices with a positive
/// diagonal, where the iterate stays nonnegative and converges to the Perron vector.
pub fn dominant_eigenpair(a: &Matrix, tol: f64, max_iter: usize) -> Result<(f64, Vector)> {
    let n = a.ensure_square()?;
    let mut v = vec![1.0 / libm::sqrt(n as f64); n];
    for _ in 0..max_iter {
        let w = a.mul_vec(&v)?;
        let lambda = dot(&v, &w) / dot(&v, &v);
        let residual = w
            .iter()
            .zip(&v)
            .fold(0.0f64, |m, (wi, vi)| m.max((wi - lambda * vi).abs()));
        if residual <= tol * norm_inf(&v) {
            return Ok((lambda, Vector(v)));
        }
        let len = norm2(&w);
        if len == 0.0 || !len.is_finite() {
            return Err(Error::NoConvergence { iterations: max_iter });
        }
        v = w.into_iter().map(|x| x / len).collect();
    }
    Err(Error::NoConvergence { iterations: max_iter })
}

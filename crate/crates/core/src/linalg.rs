//! Dense real linear algebra shared by the regression and MANOVA modules.
//!
//! A minimal row-major matrix type plus the handful of operations the rest of
//! the crate needs: column centering, Gram matrices, and symmetric
//! positive-definite solves via Cholesky factorization. Nothing here ever
//! forms an explicit inverse; every `(·)⁻¹(·)` product is a factored solve.

use crate::error::{Error, Result};

/// A dense real matrix in row-major order.
///
/// Construction rejects NaN and infinity eagerly: every identity check
/// downstream is meaningless with non-finite inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Creates a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidLength {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Creates a matrix from row slices.
    ///
    /// # Panics
    /// Panics on empty input, ragged rows, or non-finite entries; intended
    /// for literals in tests and examples.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data).expect("invalid literal matrix")
    }

    /// Creates an n×k matrix from column slices.
    pub fn from_cols(cols: &[&[f64]]) -> Self {
        assert!(!cols.is_empty(), "matrix needs at least one column");
        let rows = cols[0].len();
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        assert!(m.data.iter().all(|v| v.is_finite()), "non-finite entry");
        m
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` copied into a new vector.
    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Raw row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                rows: (self.rows, other.rows),
                cols: (self.cols, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                rows: (self.rows, v.len()),
                cols: (self.cols, 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// Entrywise difference `self − other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                rows: (self.rows, other.rows),
                cols: (self.cols, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A finite real column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    /// Wraps entries after checking they are nonempty and finite.
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidLength {
                expected: 1,
                got: 0,
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { data })
    }

    /// Convenience constructor for literals.
    ///
    /// # Panics
    /// Panics on empty or non-finite input.
    pub fn from_slice(data: &[f64]) -> Self {
        Self::new(data.to_vec()).expect("invalid literal vector")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;

    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

/// Mean of a slice.
pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Plain left-to-right dot product.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Subtracts each column's mean, i.e. applies the projector `I − 11ᵀ/n` to
/// every column.
pub fn center_columns(m: &Matrix) -> Matrix {
    let mut out = m.clone();
    let n = m.rows() as f64;
    for j in 0..m.cols() {
        let mu = (0..m.rows()).map(|i| m.get(i, j)).sum::<f64>() / n;
        for i in 0..m.rows() {
            out.set(i, j, m.get(i, j) - mu);
        }
    }
    out
}

/// Gram matrix `MᵀM`.
///
/// Only the upper triangle is summed; the lower triangle is mirrored, so the
/// result is bitwise symmetric.
pub fn gram(m: &Matrix) -> Matrix {
    let k = m.cols();
    let mut g = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let mut s = 0.0;
            for i in 0..m.rows() {
                s += m.get(i, a) * m.get(i, b);
            }
            g.set(a, b, s);
            g.set(b, a, s);
        }
    }
    g
}

/// Replaces `m` by `(m + mᵀ)/2`, removing rounding asymmetry before a solve.
pub fn symmetrize(m: &mut Matrix) {
    assert_eq!(m.rows(), m.cols(), "symmetrize needs a square matrix");
    for i in 0..m.rows() {
        for j in (i + 1)..m.cols() {
            let avg = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, avg);
            m.set(j, i, avg);
        }
    }
}

/// Cholesky factorization `S = LLᵀ` of a symmetric positive-definite matrix.
///
/// A pivot counts as failing when it drops below `1e−12` times the largest
/// diagonal entry of `S`; the scale-relative threshold keeps badly scaled
/// data from tripping the check spuriously.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    // lower triangle of L, row-major over the full n×n layout
    l: Vec<f64>,
}

impl Cholesky {
    /// Factors `s`, reading only its lower triangle.
    pub fn factor(s: &Matrix) -> Result<Self> {
        if s.rows() != s.cols() {
            return Err(Error::DimensionMismatch {
                rows: (s.rows(), s.cols()),
                cols: (s.rows(), s.cols()),
            });
        }
        let n = s.rows();
        let max_diag = (0..n).fold(0.0_f64, |m, i| m.max(s.get(i, i)));
        let tol = 1e-12 * max_diag;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = s.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d <= tol || !d.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: j });
            }
            let root = d.sqrt();
            l[j * n + j] = root;
            for i in (j + 1)..n {
                let mut v = s.get(i, j);
                for k in 0..j {
                    v -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = v / root;
            }
        }
        Ok(Self { n, l })
    }

    /// Solves `S x = b` by forward and back substitution.
    pub fn solve_vec(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::InvalidLength {
                expected: self.n,
                got: b.len(),
            });
        }
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        Ok(y)
    }

    /// Solves `S X = Rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix> {
        if rhs.rows() != self.n {
            return Err(Error::DimensionMismatch {
                rows: (self.n, rhs.rows()),
                cols: (self.n, rhs.cols()),
            });
        }
        let mut out = Matrix::zeros(self.n, rhs.cols());
        for j in 0..rhs.cols() {
            let x = self.solve_vec(&rhs.col(j))?;
            for (i, v) in x.iter().enumerate() {
                out.set(i, j, *v);
            }
        }
        Ok(out)
    }
}

/// Solves the symmetric positive-definite system `S X = Rhs`.
pub fn spd_solve(s: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    Cholesky::factor(s)?.solve_matrix(rhs)
}

/// Applies `F₂₂ = (YᵀY − Yᵀ11ᵀY/n)⁻¹` to a right-hand side, i.e. solves the
/// centered Gram system `T X = Rhs`.
///
/// Fails with [`Error::NotPositiveDefinite`] when the columns of `Y` are
/// collinear after centering.
pub fn centered_gram_inverse_apply(y: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let t = gram(&center_columns(y));
    spd_solve(&t, rhs)
}

//! Dense complex linear algebra shared by every other module.
//!
//! Matrices are row-major `Vec<Complex64>` with explicit dimensions. The
//! sizes that actually occur are tiny (4, 5, 10 and Kronecker products
//! thereof), so everything here is a straightforward dense routine:
//! Householder QR with column pivoting for least squares, Hessenberg
//! reduction plus shifted QR iteration for eigenvalues. All values are
//! immutable after construction and safe to share across threads.

use num_complex::Complex64;
use thiserror::Error;

/// Default absolute tolerance on max-norm comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("eigenvalue iteration did not converge within {iterations} sweeps")]
    NonConvergence { iterations: usize },
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// Dense complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real row slices; handy for the integer-entry bases.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
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

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
        if self.cols != other.rows {
            return Err(NumericsError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vector(&self, v: &ComplexVector) -> Result<ComplexVector, NumericsError> {
        if self.cols != v.dim() {
            return Err(NumericsError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.dim(),
                right_cols: 1,
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self[(i, j)] * v[j];
            }
        }
        Ok(ComplexVector::new(out))
    }

    pub fn commutator(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
        Ok(self.matmul(other)?.sub(&other.matmul(self)?))
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.sub(other).max_norm() <= tol
    }

    /// Eigenvalues with algebraic multiplicity, sorted by (re, im).
    ///
    /// Hessenberg reduction followed by explicitly shifted QR iteration with
    /// Wilkinson shifts; trailing 2x2 blocks are solved in closed form.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>, NumericsError> {
        if !self.is_square() {
            return Err(NumericsError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut h = hessenberg(self);
        let scale = h.max_norm().max(1.0);
        let eps = f64::EPSILON;
        let mut eigenvalues = Vec::with_capacity(n);
        let mut hi = n - 1;
        let max_sweeps = 60 * n;
        let mut sweeps = 0usize;
        loop {
            // Zero negligible subdiagonals, then deflate converged 1x1/2x2 tails.
            for i in 1..=hi {
                let off = h[(i, i - 1)].norm();
                let local = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
                if off <= eps * local.max(scale * eps) {
                    h[(i, i - 1)] = Complex64::new(0.0, 0.0);
                }
            }
            if hi == 0 || h[(hi, hi - 1)] == Complex64::new(0.0, 0.0) {
                eigenvalues.push(h[(hi, hi)]);
                if hi == 0 {
                    break;
                }
                hi -= 1;
                continue;
            }
            if hi == 1 || h[(hi - 1, hi - 2)] == Complex64::new(0.0, 0.0) {
                let (l1, l2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
                eigenvalues.push(l1);
                eigenvalues.push(l2);
                if hi == 1 {
                    break;
                }
                hi -= 2;
                continue;
            }
            // Active block [lo, hi] with nonzero subdiagonals.
            let mut lo = hi;
            while lo > 0 && h[(lo, lo - 1)] != Complex64::new(0.0, 0.0) {
                lo -= 1;
            }
            sweeps += 1;
            if sweeps > max_sweeps {
                return Err(NumericsError::NonConvergence { iterations: sweeps });
            }
            let shift = if sweeps % 12 == 0 {
                // Exceptional shift to break rare symmetric stagnation.
                h[(hi, hi)] + Complex64::new(1.0, 0.5) * h[(hi, hi - 1)].norm()
            } else {
                let (l1, l2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
                let d = h[(hi, hi)];
                if (l1 - d).norm() <= (l2 - d).norm() {
                    l1
                } else {
                    l2
                }
            };
            qr_step(&mut h, lo, hi, shift);
        }
        eigenvalues.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("eigenvalues are finite")
        });
        Ok(eigenvalues)
    }

    /// Minimizes ||Ax - b||_2 via Householder QR with column pivoting.
    ///
    /// Returns a basic solution (free variables set to zero for
    /// rank-deficient systems) together with the residual norm recomputed
    /// from the original data.
    pub fn solve_linear_least_squares(
        &self,
        b: &ComplexVector,
    ) -> Result<(ComplexVector, f64), NumericsError> {
        if self.rows != b.dim() {
            return Err(NumericsError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: b.dim(),
                right_cols: 1,
            });
        }
        let m = self.rows;
        let n = self.cols;
        let k = m.min(n);
        let mut r = self.clone();
        let mut qtb: Vec<Complex64> = b.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for step in 0..k {
            // Column pivot: largest remaining subcolumn norm.
            let mut best = step;
            let mut best_norm = 0.0;
            for j in step..n {
                let norm: f64 = (step..m).map(|i| r[(i, j)].norm_sqr()).sum();
                if norm > best_norm {
                    best_norm = norm;
                    best = j;
                }
            }
            if best != step {
                for i in 0..m {
                    let tmp = r[(i, step)];
                    r[(i, step)] = r[(i, best)];
                    r[(i, best)] = tmp;
                }
                perm.swap(step, best);
            }
            let norm = best_norm.sqrt();
            if norm == 0.0 {
                continue;
            }
            // Householder reflector sending the subcolumn onto alpha*e1.
            let x0 = r[(step, step)];
            let phase = if x0.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * norm;
            let mut v: Vec<Complex64> = (step..m).map(|i| r[(i, step)]).collect();
            v[0] -= alpha;
            let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vnorm_sqr > 0.0 {
                for j in step..n {
                    let dot: Complex64 = (0..v.len())
                        .map(|i| v[i].conj() * r[(step + i, j)])
                        .sum();
                    let factor = dot * (2.0 / vnorm_sqr);
                    for i in 0..v.len() {
                        r[(step + i, j)] -= factor * v[i];
                    }
                }
                let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * qtb[step + i]).sum();
                let factor = dot * (2.0 / vnorm_sqr);
                for i in 0..v.len() {
                    qtb[step + i] -= factor * v[i];
                }
            }
            r[(step, step)] = alpha;
            for i in step + 1..m {
                r[(i, step)] = Complex64::new(0.0, 0.0);
            }
        }
        // Numerical rank from the pivoted diagonal.
        let lead = r[(0, 0)].norm();
        let rank_tol = lead * (m.max(n) as f64) * f64::EPSILON;
        let mut rank = 0;
        for i in 0..k {
            if r[(i, i)].norm() > rank_tol {
                rank = i + 1;
            } else {
                break;
            }
        }
        // Back substitution on the leading rank x rank triangle.
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..rank).rev() {
            let mut acc = qtb[i];
            for j in i + 1..rank {
                acc -= r[(i, j)] * y[j];
            }
            y[i] = acc / r[(i, i)];
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (pos, &col) in perm.iter().enumerate() {
            x[col] = y[pos];
        }
        let x = ComplexVector::new(x);
        let residual = self
            .mul_vector(&x)
            .expect("dimensions checked above")
            .sub(b)
            .norm();
        Ok((x, residual))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::ops::Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Operator form of [`ComplexMatrix::matmul`]; panics on dimension mismatch.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("conformable dimensions")
    }
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn add(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), other.dim());
        ComplexVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), other.dim());
        ComplexVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: Complex64) -> ComplexVector {
        ComplexVector::new(self.entries.iter().map(|a| a * factor).collect())
    }

    /// Euclidean inner product, conjugating the left argument.
    pub fn dot(&self, other: &ComplexVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> ComplexVector {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    /// Kronecker (tensor) product of two vectors.
    pub fn kron(&self, other: &ComplexVector) -> ComplexVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                out.push(a * b);
            }
        }
        ComplexVector::new(out)
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

/// Eigenvalues of a 2x2 complex matrix [[a, b], [c, d]].
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_trace = (a + d) * 0.5;
    let disc = ((a - d) * 0.5) * ((a - d) * 0.5) + b * c;
    let root = disc.sqrt();
    (half_trace + root, half_trace - root)
}

/// Unitary similarity reduction to upper Hessenberg form.
fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut h = a.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n)
            .map(|i| h[(i, k)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        // H <- P H P with P = I - 2 v v^dagger / (v^dagger v).
        for j in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            let factor = dot * (2.0 / vnorm_sqr);
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= factor * v[i];
            }
        }
        for i in 0..n {
            let dot: Complex64 = (0..v.len()).map(|j| h[(i, k + 1 + j)] * v[j]).sum();
            let factor = dot * (2.0 / vnorm_sqr);
            for j in 0..v.len() {
                h[(i, k + 1 + j)] -= factor * v[j].conj();
            }
        }
    }
    h
}

/// One explicitly shifted QR sweep on the Hessenberg block [lo, hi].
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    // Factor with Givens rotations, saving (c, s) per elimination.
    let mut rotations = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let a = h[(i, i)];
        let b = h[(i + 1, i)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        rotations.push((c, s));
        let cols = h.cols();
        for j in i..cols.min(hi + 1) {
            let top = h[(i, j)];
            let bottom = h[(i + 1, j)];
            h[(i, j)] = c.conj() * top + s.conj() * bottom;
            h[(i + 1, j)] = -s * top + c * bottom;
        }
    }
    // RQ: apply the adjoint rotations on the right.
    for (idx, (c, s)) in rotations.iter().enumerate() {
        let i = lo + idx;
        for row in lo..=(i + 1).min(hi) {
            let left = h[(row, i)];
            let right = h[(row, i + 1)];
            h[(row, i)] = left * c + right * s;
            h[(row, i + 1)] = -left * s.conj() + right * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

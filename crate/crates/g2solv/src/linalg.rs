//! Dense matrices over a [`Scalar`] field: row reduction, kernels, linear
//! solving, and a Jacobi eigensolver for symmetric double-precision matrices.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Largest entry magnitude (estimate in exact mode).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_hint).fold(0.0, f64::max)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (self[(i, j)].clone() + self[(j, i)].clone()).is_zero())
            })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks matrices vertically; all must share a column count.
    pub fn vstack(parts: &[Self]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols));
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            data.extend_from_slice(&p.data);
        }
        Matrix { rows, cols, data }
    }

    /// Stacks matrices horizontally; all must share a row count.
    pub fn hstack(parts: &[Self]) -> Self {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows));
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    m[(i, off + j)] = p[(i, j)].clone();
                }
            }
            off += p.cols;
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; returns the pivot column list.
    ///
    /// Exact fields pick the first usable pivot (deterministic); doubles pick
    /// the largest magnitude (partial pivoting) and treat entries below the
    /// zero tolerance as zero.
    pub fn rref(mut self) -> (Self, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = if F::EXACT {
                (r..self.rows).find(|&i| !self[(i, c)].is_zero())
            } else {
                (r..self.rows)
                    .filter(|&i| !self[(i, c)].is_zero())
                    .max_by(|&a, &b| {
                        self[(a, c)].abs_hint().total_cmp(&self[(b, c)].abs_hint())
                    })
            };
            let Some(p) = pivot_row else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    self[(i, j)] = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (self, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().1.len()
    }

    /// Basis of the nullspace. Exact mode guarantees `m·v = 0` identically.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (red, pivots) = self.clone().rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red[(row, fc)].clone();
                }
                v
            })
            .collect()
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug)]
pub enum LinearSolution<F> {
    Unique(Vec<F>),
    /// Underdetermined: the affine solution set `particular + span(kernel)`.
    Affine { particular: Vec<F>, kernel: Vec<Vec<F>> },
    /// A row reduced to `0 = nonzero`; the index names the offending
    /// reduced row.
    Inconsistent { row: usize },
}

impl<F: Scalar> Matrix<F> {
    /// Solves `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &[F]) -> LinearSolution<F> {
        assert_eq!(self.rows, rhs.len());
        let aug = Matrix::hstack(&[
            self.clone(),
            Matrix { rows: self.rows, cols: 1, data: rhs.to_vec() },
        ]);
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            let row = pivots.iter().position(|&c| c == self.cols).unwrap();
            return LinearSolution::Inconsistent { row };
        }
        let mut particular = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = red[(row, self.cols)].clone();
        }
        let kernel = self.kernel();
        if kernel.is_empty() {
            LinearSolution::Unique(particular)
        } else {
            LinearSolution::Affine { particular, kernel }
        }
    }

    /// True if `v` lies in the column span of `self`.
    pub fn contains_in_span(&self, v: &[F]) -> bool {
        !matches!(self.solve(v), LinearSolution::Inconsistent { .. })
    }
}

impl Matrix<f64> {
    /// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi
    /// rotations. Returns (eigenvalues, eigenvectors as columns), unsorted.
    pub fn symmetric_eigen(&self) -> (Vec<f64>, Matrix<f64>) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut v = Matrix::<f64>::identity(n);
        for _ in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += a[(i, j)] * a[(i, j)];
                }
            }
            if off < 1e-28 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
        ((0..n).map(|i| a[(i, i)]).collect(), v)
    }

    /// Eigenvector for the smallest eigenvalue of a symmetric matrix.
    pub fn smallest_eigenpair(&self) -> (f64, Vec<f64>) {
        let (vals, vecs) = self.symmetric_eigen();
        let (idx, &val) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        (val, (0..self.rows).map(|i| vecs[(i, idx)]).collect())
    }

    /// Smallest singular value and its right singular vector, via one-sided
    /// Jacobi orthogonalization of the columns. Unlike going through the
    /// Gram matrix, this resolves singular values far below sqrt(eps) times
    /// the matrix norm, which matters when the system is nearly rank
    /// deficient.
    pub fn smallest_singular_pair(&self) -> (f64, Vec<f64>) {
        let rows = self.rows;
        let cols = self.cols;
        let mut u = self.clone();
        let mut v = Matrix::<f64>::identity(cols);
        for _ in 0..60 {
            let mut worst = 0.0f64;
            for p in 0..cols {
                for q in (p + 1)..cols {
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut apq = 0.0;
                    for r in 0..rows {
                        app += u[(r, p)] * u[(r, p)];
                        aqq += u[(r, q)] * u[(r, q)];
                        apq += u[(r, p)] * u[(r, q)];
                    }
                    if apq == 0.0 || app == 0.0 || aqq == 0.0 {
                        continue;
                    }
                    worst = worst.max(apq.abs() / (app * aqq).sqrt());
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for r in 0..rows {
                        let a = u[(r, p)];
                        let b = u[(r, q)];
                        u[(r, p)] = c * a - s * b;
                        u[(r, q)] = s * a + c * b;
                    }
                    for r in 0..cols {
                        let a = v[(r, p)];
                        let b = v[(r, q)];
                        v[(r, p)] = c * a - s * b;
                        v[(r, q)] = s * a + c * b;
                    }
                }
            }
            if worst < 1e-15 {
                break;
            }
        }
        let mut best = (f64::INFINITY, 0usize);
        for j in 0..cols {
            let norm = (0..rows).map(|r| u[(r, j)] * u[(r, j)]).sum::<f64>().sqrt();
            if norm < best.0 {
                best = (norm, j);
            }
        }
        (best.0, (0..cols).map(|r| v[(r, best.1)]).collect())
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert!(Matrix::<Rational>::identity(2).kernel().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(3, 3).kernel().len(), 3);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = Matrix::<Rational>::identity(3);
        let rhs = vec![q(1, 2), q(-3, 1), q(0, 1)];
        match id.solve(&rhs) {
            LinearSolution::Unique(x) => assert_eq!(x, rhs),
            other => panic!("expected unique solution, got {other:?}"),
        }
        let zero = Matrix::<Rational>::zeros(1, 1);
        assert!(matches!(
            zero.solve(&[q(1, 1)]),
            LinearSolution::Inconsistent { .. }
        ));
    }

    #[test]
    fn underdetermined_reports_affine_set() {
        // x + y = 1 has a 1-dimensional solution set.
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)]]);
        match m.solve(&[q(1, 1)]) {
            LinearSolution::Affine { particular, kernel } => {
                assert_eq!(particular, vec![q(1, 1), q(0, 1)]);
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("expected affine set, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_diagonalizes_simple_matrix() {
        let m = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let (val, vec) = m.smallest_eigenpair();
        assert!((val - 1.0).abs() < 1e-12);
        let mv = m.mul_vec(&vec);
        for (a, b) in mv.iter().zip(&vec) {
            assert!((a - val * b).abs() < 1e-10);
        }
    }

    proptest! {
        /// Kernel vectors are exactly annihilated on random small rational
        /// matrices.
        #[test]
        fn kernel_vectors_annihilated(
            entries in proptest::collection::vec((-6i64..=6, 1i64..=3), 12)
        ) {
            let m = Matrix::from_fn(3, 4, |i, j| {
                let (n, d) = entries[i * 4 + j];
                q(n, d)
            });
            for v in m.kernel() {
                let mv = m.mul_vec(&v);
                prop_assert!(mv.iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(m.rank() + m.kernel().len(), 4);
        }
    }
}

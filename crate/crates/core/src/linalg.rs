//! Small dense linear algebra.
//!
//! Matrices here are at most a few dozen rows and columns (3 per generator or
//! relator), so a one-sided Jacobi SVD is accurate and fast enough. Exact
//! elimination over a [`Field`] lives in [`exact`].

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn from_array3(a: &[[T; 3]; 3]) -> Self {
        Self::from_rows(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Adds `block` into the submatrix starting at (`r0`, `c0`).
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = self[(r0 + i, c0 + j)] + block[(i, j)];
                self[(r0 + i, c0 + j)] = v;
            }
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| *v * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<T>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// Largest absolute entry; zero for empty matrices.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Singular value decomposition.
    pub fn svd(&self) -> Svd<T> {
        Svd::new(self)
    }

    /// Determinant of a square matrix by partial-pivot LU.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().partial_cmp(&a[(j, k)].abs()).unwrap())
                .unwrap();
            if a[(p, k)] == T::zero() {
                return T::zero();
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[(k, k)];
            det = det * pivot;
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                for j in k..n {
                    let v = a[(i, j)] - f * a[(k, j)];
                    a[(i, j)] = v;
                }
            }
        }
        det
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let c = self.cols;
            writeln!(f, "  {:?}", &self.data[i * c..(i + 1) * c])?;
        }
        write!(f, "]")
    }
}

/// Thin SVD `A = U diag(s) Vᵀ` from one-sided Jacobi rotations.
///
/// Singular values are sorted in decreasing order; `v` is always a full
/// `cols × cols` orthogonal matrix, so trailing columns span the null space.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    pub v: Matrix<T>,
    /// `A V` with columns in the same order as `singular_values` (not normalized).
    pub av: Matrix<T>,
}

impl<T: Real> Svd<T> {
    fn new(a: &Matrix<T>) -> Self {
        let (m, n) = (a.rows, a.cols);
        let mut u = a.clone();
        let mut v = Matrix::identity(n);
        let eps = T::epsilon();
        for _sweep in 0..80 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                    for i in 0..m {
                        let up = u[(i, p)];
                        let uq = u[(i, q)];
                        alpha = alpha + up * up;
                        beta = beta + uq * uq;
                        gamma = gamma + up * uq;
                    }
                    if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = c * t;
                    for i in 0..m {
                        let up = u[(i, p)];
                        let uq = u[(i, q)];
                        u[(i, p)] = c * up - s * uq;
                        u[(i, q)] = s * up + c * uq;
                    }
                    for i in 0..n {
                        let vp = v[(i, p)];
                        let vq = v[(i, q)];
                        v[(i, p)] = c * vp - s * vq;
                        v[(i, q)] = s * vp + c * vq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let norms: Vec<T> = (0..n)
            .map(|j| (0..m).fold(T::zero(), |acc, i| acc + u[(i, j)] * u[(i, j)]).sqrt())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
        let mut vs = Matrix::zeros(n, n);
        let mut avs = Matrix::zeros(m, n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                vs[(i, new_j)] = v[(i, old_j)];
            }
            for i in 0..m {
                avs[(i, new_j)] = u[(i, old_j)];
            }
        }
        // Only min(m, n) singular values are meaningful; the rest are zero.
        let k = m.min(n);
        let mut singular_values: Vec<T> = order.iter().map(|&j| norms[j]).collect();
        singular_values.truncate(k);
        Svd {
            singular_values,
            v: vs,
            av: avs,
        }
    }

    pub fn largest(&self) -> T {
        self.singular_values.first().copied().unwrap_or(T::zero())
    }
}

/// Rank decision with the data needed to audit it.
#[derive(Debug, Clone)]
pub struct RankInfo<T> {
    pub rank: usize,
    pub threshold: T,
    pub singular_values: Vec<T>,
    /// Smallest retained singular value over the threshold, or infinity at rank 0.
    pub gap_above: T,
    /// Largest discarded singular value over the threshold, zero if none.
    pub gap_below: T,
}

impl<T: Real> RankInfo<T> {
    /// Threshold is `rel_tol * max(1, largest singular value)`.
    pub fn from_svd(svd: &Svd<T>, rel_tol: T) -> Self {
        let threshold = rel_tol * svd.largest().max(T::one());
        let rank = svd
            .singular_values
            .iter()
            .filter(|s| **s > threshold)
            .count();
        let gap_above = if rank == 0 {
            T::infinity()
        } else {
            svd.singular_values[rank - 1] / threshold
        };
        let gap_below = svd
            .singular_values
            .get(rank)
            .map_or(T::zero(), |s| *s / threshold);
        RankInfo {
            rank,
            threshold,
            singular_values: svd.singular_values.clone(),
            gap_above,
            gap_below,
        }
    }

    /// A singular value within a factor of ten of the threshold makes the
    /// rank answer unreliable.
    pub fn is_ill_conditioned(&self) -> bool {
        let ten = T::lit(10.0);
        self.gap_above < ten || self.gap_below * ten > T::one()
    }
}

pub fn rank<T: Real>(a: &Matrix<T>, rel_tol: T) -> RankInfo<T> {
    if a.rows == 0 || a.cols == 0 {
        return RankInfo {
            rank: 0,
            threshold: rel_tol,
            singular_values: Vec::new(),
            gap_above: T::infinity(),
            gap_below: T::zero(),
        };
    }
    RankInfo::from_svd(&a.svd(), rel_tol)
}

/// Orthonormal basis (as vectors) of the null space of `a`.
pub fn null_space<T: Real>(a: &Matrix<T>, rel_tol: T) -> Vec<Vec<T>> {
    if a.rows == 0 {
        return (0..a.cols)
            .map(|j| (0..a.cols).map(|i| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
    }
    let svd = a.svd();
    let info = RankInfo::from_svd(&svd, rel_tol);
    (info.rank..a.cols).map(|j| svd.v.column(j)).collect()
}

/// Orthonormal basis of the column space of `a`.
pub fn column_space<T: Real>(a: &Matrix<T>, rel_tol: T) -> Vec<Vec<T>> {
    if a.cols == 0 || a.rows == 0 {
        return Vec::new();
    }
    let svd = a.svd();
    let info = RankInfo::from_svd(&svd, rel_tol);
    (0..info.rank)
        .map(|j| {
            let col = svd.av.column(j);
            let s = svd.singular_values[j];
            col.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

/// Exact elimination over an ordered field.
pub mod exact {
    use crate::scalar::Field;

    /// Solves the square system `a x = b`; `None` when singular.
    pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
        let n = a.len();
        let mut m: Vec<Vec<F>> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        for k in 0..n {
            let p = pivot_row(&m, k, k)?;
            m.swap(k, p);
            for i in 0..n {
                if i == k || m[i][k].is_negligible() {
                    continue;
                }
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..=n {
                    let v = m[i][j].clone() - f.clone() * m[k][j].clone();
                    m[i][j] = v;
                }
            }
        }
        Some((0..n).map(|i| m[i][n].clone() / m[i][i].clone()).collect())
    }

    /// Rank of the matrix whose rows are given.
    pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
        let mut m: Vec<Vec<F>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let Some(p) = pivot_row(&m, r, c) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..m.len() {
                if m[i][c].is_negligible() {
                    continue;
                }
                let f = m[i][c].clone() / m[r][c].clone();
                for j in c..cols {
                    let v = m[i][j].clone() - f.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
            r += 1;
        }
        r
    }

    pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
        let n = a.len();
        let mut m = a.to_vec();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = pivot_row(&m, k, k) else {
                return F::zero();
            };
            if p != k {
                m.swap(k, p);
                det = -det;
            }
            det = det * m[k][k].clone();
            for i in k + 1..n {
                if m[i][k].is_negligible() {
                    continue;
                }
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..n {
                    let v = m[i][j].clone() - f.clone() * m[k][j].clone();
                    m[i][j] = v;
                }
            }
        }
        det
    }

    // Largest-magnitude pivot; for exact fields any nonzero entry would do.
    fn pivot_row<F: Field>(m: &[Vec<F>], from: usize, col: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, row) in m.iter().enumerate().skip(from) {
            if row[col].is_negligible() {
                continue;
            }
            match best {
                Some(b) if m[b][col].abs() >= row[col].abs() => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::FromPrimitive;

    #[test]
    fn svd_recovers_rank_of_outer_product() {
        let a = Matrix::from_rows(&[
            vec![1.0_f64, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![-1.0, -2.0, -3.0],
        ]);
        let info = rank(&a, 1e-10);
        assert_eq!(info.rank, 1);
        assert!(!info.is_ill_conditioned());
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn svd_values_match_known_diagonal() {
        let a = Matrix::from_rows(&[vec![0.0_f64, 3.0], vec![-2.0, 0.0], vec![0.0, 0.0]]);
        let s = a.svd().singular_values;
        assert!((s[0] - 3.0).abs() < 1e-14 && (s[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn wide_matrix_null_space() {
        let a = Matrix::from_rows(&[vec![1.0, 1.0, 0.0, 0.0]]);
        assert_eq!(null_space(&a, 1e-10).len(), 3);
        assert_eq!(column_space(&a, 1e-10).len(), 1);
    }

    #[test]
    fn empty_matrix_rank_is_zero() {
        let a: Matrix<f64> = Matrix::zeros(0, 6);
        assert_eq!(rank(&a, 1e-8).rank, 0);
        assert_eq!(null_space(&a, 1e-8).len(), 6);
    }

    #[test]
    fn determinants_agree_float_and_exact() {
        let rows = [[2, -1, 0], [1, 3, 4], [0, 5, -2]];
        let f = Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| x as f64).collect())
                .collect::<Vec<_>>(),
        );
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_i64(x).unwrap()).collect())
            .collect();
        let d = exact::determinant(&q);
        assert_eq!(d, BigRational::from_i64(-54).unwrap());
        assert!((f.determinant() + 54.0).abs() < 1e-12);
        assert_eq!(exact::rank(&q), 3);
    }

    #[test]
    fn exact_solve_rejects_singular() {
        let q = |x: i64| BigRational::from_i64(x).unwrap();
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(exact::solve(&a, &[q(1), q(1)]).is_none());
        let b = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(exact::solve(&b, &[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
    }
}

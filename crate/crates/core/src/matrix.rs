//! Dense matrices over the rationals.
//!
//! Row-major storage, exact arithmetic, and the elimination-based kernels
//! the solvers are built on. Reduction is deterministic (leftmost pivot,
//! topmost row), so kernel bases and ranks are reproducible down to the
//! ordering of basis vectors.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Literal matrix with integer entries: `mat![[1, 2], [3, 4]]`.
#[macro_export]
macro_rules! mat {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::matrix::Matrix::from_rows(vec![
            $(vec![$($crate::rational::int($x)),*]),*
        ]).expect("literal matrix is well formed")
    };
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Identity of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Rows must be nonempty and rectangular.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::BadShape("matrix needs at least one row and column".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape("rows have unequal lengths".into()));
        }
        let r = rows.len();
        Ok(Matrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix entrywise from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Jordan block `J_n(eig)`: `eig` on the diagonal, 1 on the superdiagonal.
    pub fn jordan_block(n: usize, eig: &Rational) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                eig.clone()
            } else if j == i + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    /// Unit matrix with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m.set(i, j, Rational::one());
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// `self^k` by repeated multiplication; `self^0` is the identity.
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.get(i1, j1) * other.get(i2, j2)
            },
        )
    }

    /// Column-stacking vectorization: `vec(M)[j*rows + i] = M[i][j]`.
    pub fn vec_cols(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Inverse of [`Matrix::vec_cols`] for the given shape.
    pub fn unvec(rows: usize, cols: usize, v: &[Rational]) -> Matrix {
        assert_eq!(rows * cols, v.len(), "unvec length mismatch");
        Matrix::from_fn(rows, cols, |i, j| v[j * rows + i].clone())
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j).clone(), m.get(p, j).clone());
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &(m.get(r, j) * &f);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Echelon-normalized kernel basis: one vector per free column, with a 1
    /// in the free coordinate and pivot coordinates filled from the reduced
    /// form. Returns vectors of length `cols`, ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref { reduced, pivots } = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for c in 0..self.cols {
            if piv_iter.peek() == Some(&c) {
                piv_iter.next();
            } else {
                free_cols.push(c);
            }
        }
        for f in free_cols {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(i, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse, or an error if the matrix is singular or non-square.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).rref().reduced;
        for i in 0..n {
            if !(aug.get(i, i).is_one()) {
                return Err(Error::BadShape("matrix is singular".into()));
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// A particular solution `X` of `self * X = rhs`, or `None` if the system
    /// is inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Largest absolute value of an entry (for test diagnostics).
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Outcome of Gauss-Jordan elimination.
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", rational::display(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "mul shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Rank of the row span of a set of vectors.
pub fn rank_of_vectors(len: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    assert!(vectors.iter().all(|v| v.len() == len), "vector length mismatch");
    Matrix::from_rows(vectors.to_vec()).expect("nonempty vector set").rank()
}

/// True when two sets of vectors span the same subspace of `Q^len`.
pub fn span_equal_vectors(len: usize, xs: &[Vec<Rational>], ys: &[Vec<Rational>]) -> bool {
    let rx = rank_of_vectors(len, xs);
    let ry = rank_of_vectors(len, ys);
    if rx != ry {
        return false;
    }
    let mut all = xs.to_vec();
    all.extend_from_slice(ys);
    rank_of_vectors(len, &all) == rx
}

/// True when two sets of equal-shaped matrices span the same subspace.
pub fn span_equal(xs: &[Matrix], ys: &[Matrix]) -> bool {
    let shape = xs
        .first()
        .or_else(|| ys.first())
        .map(|m| (m.rows(), m.cols()));
    let Some((r, c)) = shape else {
        return true;
    };
    let flat = |ms: &[Matrix]| ms.iter().map(|m| m.vec_cols()).collect::<Vec<_>>();
    span_equal_vectors(r * c, &flat(xs), &flat(ys))
}

/// Basis of the intersection of two column spans in `Q^len`.
pub fn intersect_subspaces(
    len: usize,
    u: &[Vec<Rational>],
    w: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let um = Matrix::from_columns(len, u);
    let wm = Matrix::from_columns(len, w);
    let stacked = um.hstack(&wm.scale(&-Rational::one()));
    let mut out = Vec::new();
    for k in stacked.kernel_basis() {
        let coeffs = &k[..u.len()];
        let v = um.mul_vec(coeffs);
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    independent_subset(len, out)
}

/// Greedy maximal linearly independent subset, keeping first occurrences.
pub fn independent_subset(len: usize, vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank_of_vectors(len, &trial) > basis.len() {
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn literal_macro_builds_row_major() {
        let m = mat![[1, 2], [3, 4]];
        assert_eq!(m.get(0, 1), &int(2));
        assert_eq!(m.get(1, 0), &int(3));
    }

    #[test]
    fn from_rows_rejects_ragged_and_empty() {
        assert!(Matrix::from_rows(vec![]).is_err());
        assert!(Matrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
    }

    #[test]
    fn product_against_hand_computation() {
        let a = mat![[1, 2], [3, 4]];
        let b = mat![[0, 1], [1, 0]];
        assert_eq!(&a * &b, mat![[2, 1], [4, 3]]);
        assert_eq!(&b * &a, mat![[3, 4], [1, 2]]);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // rows are proportional, so the kernel is spanned by (-2, 1)
        let m = mat![[1, 2], [2, 4]];
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(4).kernel_basis().is_empty());
        assert_eq!(Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn kernel_dimension_complements_rank() {
        let m = mat![[1, 2, 3], [2, 4, 6], [0, 0, 1]];
        let k = m.kernel_basis();
        assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()), "kernel vector not annihilated");
        }
    }

    #[test]
    fn rref_pivots_are_leftmost() {
        let m = mat![[0, 2, 1], [0, 4, 3]];
        let r = m.rref();
        assert_eq!(r.pivots, vec![1, 2]);
        assert_eq!(r.reduced, mat![[0, 1, 0], [0, 0, 1]]);
    }

    #[test]
    fn inverse_round_trips() {
        let m = mat![[2, 1], [1, 1]];
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(inv, mat![[1, -1], [-1, 2]]);
        assert!(mat![[1, 2], [2, 4]].inverse().is_err());
    }

    #[test]
    fn fractional_elimination_is_exact() {
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 5), ratio(1, 7)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat![[1, 2], [2, 4]];
        let consistent = mat![[3], [6]];
        let x = a.solve(&consistent).unwrap();
        assert_eq!(&a * &x, consistent);
        assert!(a.solve(&mat![[1], [0]]).is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = mat![[1, 2], [3, 4]];
        let e = mat![[0, 1], [0, 0]];
        let k = a.kron(&e);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(
            k,
            mat![
                [0, 1, 0, 2],
                [0, 0, 0, 0],
                [0, 3, 0, 4],
                [0, 0, 0, 0]
            ]
        );
    }

    #[test]
    fn vectorization_identity() {
        // vec(A X B) = (B^T kron A) vec(X), column-stacking convention
        let a = mat![[1, 2], [0, 1]];
        let x = mat![[1, -1], [2, 3]];
        let b = mat![[0, 1], [1, 1]];
        let lhs = (&(&a * &x) * &b).vec_cols();
        let rhs = b.transpose().kron(&a).mul_vec(&x.vec_cols());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vec_unvec_round_trip() {
        let m = mat![[1, 2, 3], [4, 5, 6]];
        assert_eq!(Matrix::unvec(2, 3, &m.vec_cols()), m);
    }

    #[test]
    fn span_comparison() {
        let e1 = mat![[1, 0], [0, 0]];
        let e2 = mat![[0, 0], [0, 1]];
        let sum = &e1 + &e2;
        assert!(span_equal(
            &[e1.clone(), e2.clone()],
            &[sum.clone(), e1.clone()]
        ));
        assert!(!span_equal(&[e1.clone()], &[e2.clone()]));
        assert!(span_equal(&[], &[]));
        assert!(!span_equal(&[e1], &[Matrix::zeros(2, 2)]));
    }

    #[test]
    fn subspace_intersection() {
        // span{e1, e2} meets span{e2, e3} in span{e2}
        let e = |i: usize| {
            let mut v = vec![int(0); 3];
            v[i] = int(1);
            v
        };
        let got = intersect_subspaces(3, &[e(0), e(1)], &[e(1), e(2)]);
        assert_eq!(got.len(), 1);
        assert!(span_equal_vectors(3, &got, &[e(1)]));
        assert!(intersect_subspaces(3, &[e(0)], &[e(2)]).is_empty());
    }

    #[test]
    fn block_utilities() {
        let j = Matrix::jordan_block(3, &int(5));
        assert_eq!(j, mat![[5, 1, 0], [0, 5, 1], [0, 0, 5]]);
        let b = Matrix::block_diag(&[Matrix::identity(1), Matrix::jordan_block(2, &int(0))]);
        assert_eq!(b, mat![[1, 0, 0], [0, 0, 1], [0, 0, 0]]);
        let p = j.pow(2);
        assert_eq!(p, mat![[25, 10, 1], [0, 25, 10], [0, 0, 25]]);
    }
}

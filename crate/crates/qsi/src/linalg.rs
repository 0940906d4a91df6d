//! Dense exact linear algebra, generic over the scalar type.
//!
//! Everything here works over any field-like scalar implementing the
//! `Scalar` bound (the concrete instantiations are `QScalar` and
//! `BigRational`; see the aliases at the crate root).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Field-like scalar bound for the exact solvers.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// Kronecker product with row-major index flattening
    /// `(i1, i2) -> i1 * other.rows + i2`.
    pub fn kronecker(&self, other: &Matrix<F>) -> Matrix<F> {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            self[(i1, j1)].clone() * other[(i2, j2)].clone()
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_cols(self.cols)
    }

    /// Row reduction pivoting only on the first `limit` columns;
    /// trailing columns are carried along, which supports solving for
    /// several right-hand sides with one elimination.
    pub fn rref_cols(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = F::one() / self[(row, col)].clone();
            for j in col..self.cols {
                self[(row, j)] = self[(row, j)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let v = self[(r, j)].clone()
                            - factor.clone() * self[(row, j)].clone();
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space (vectors v with self * v = 0).
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_row = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (c, pr) in pivot_row.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = -m[(*r, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution x of self * x = b, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// One solution per right-hand side, sharing a single elimination.
    pub fn solve_many(&self, bs: &[Vec<F>]) -> Vec<Option<Vec<F>>> {
        let k = bs.len();
        let mut aug = Matrix::from_fn(self.rows, self.cols + k, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                bs[j - self.cols][i].clone()
            }
        });
        let pivots = aug.rref_cols(self.cols);
        let rank = pivots.len();
        (0..k)
            .map(|t| {
                let colt = self.cols + t;
                for r in rank..self.rows {
                    if !aug[(r, colt)].is_zero() {
                        return None;
                    }
                }
                let mut x = vec![F::zero(); self.cols];
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = aug[(r, colt)].clone();
                }
                Some(x)
            })
            .collect()
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                for j in col..n {
                    let v = m[(r, j)].clone() - factor.clone() * m[(col, j)].clone();
                    m[(r, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
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

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QScalar;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<QScalar> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(QScalar::from_int).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_inverse() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.det(), QScalar::from_int(-2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let singular = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.det().is_zero());
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn null_space_and_solve() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let b = vec![QScalar::from_int(6), QScalar::from_int(12)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let inconsistent = vec![QScalar::from_int(1), QScalar::from_int(0)];
        assert!(a.solve(&inconsistent).is_none());
    }

    #[test]
    fn kronecker_shape() {
        let a = m(vec![vec![1, 0], vec![0, 2]]);
        let b = m(vec![vec![3]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows, k.cols), (2, 2));
        assert_eq!(k[(1, 1)], QScalar::from_int(6));
    }

    #[test]
    fn rank_over_qq() {
        let q = QScalar::q();
        // [[q, 1], [q^2, q]] has rank 1
        let a = Matrix::from_rows(vec![
            vec![q.clone(), QScalar::one()],
            vec![q.clone().mul(&q), q.clone()],
        ]);
        assert_eq!(a.rank(), 1);
    }
}

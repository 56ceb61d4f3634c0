//! Dense exact matrices over an arbitrary scalar, with Gaussian
//! elimination for solving and determinants over commutative fields.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Mat<T> {
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Keeps the rows and columns whose indices satisfy the predicates.
    pub fn submatrix(&self, keep_row: impl Fn(usize) -> bool, keep_col: impl Fn(usize) -> bool) -> Mat<T> {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| keep_row(i)).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| keep_col(j)).collect();
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    /// Matrix product; entry order is `self[i][k] * other[k][j]`, so the
    /// result is correct over non-commutative scalars as well.
    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "mul: inner dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }
}

impl<T> Mat<T>
where
    T: Clone + Add<Output = T>,
{
    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }
}

impl<T> Mat<T>
where
    T: Clone + Sub<Output = T>,
{
    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Scalars forming a commutative field, as needed by elimination.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
}

impl<T> FieldScalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
{
}

impl<T: FieldScalar> Mat<T> {
    /// Determinant by fraction-full Gaussian elimination. Assumes the
    /// scalar type is a commutative field.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "det: matrix must be square");
        let n = self.rows;
        let mut a = self.data.clone();
        let at = |a: &Vec<T>, i: usize, j: usize| a[i * n + j].clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !at(&a, r, col).is_zero());
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pv = at(&a, col, col);
            det = det * pv.clone();
            for r in col + 1..n {
                let factor = at(&a, r, col) / pv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = at(&a, r, j) - factor.clone() * at(&a, col, j);
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination on the augmented matrix.
    pub fn inverse(&self) -> Result<Mat<T>, MatError> {
        assert_eq!(self.rows, self.cols, "inverse: matrix must be square");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<T>::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(MatError::Singular);
            };
            if p != col {
                for j in 0..n {
                    let (x, y) = (a.at(p, j).clone(), a.at(col, j).clone());
                    a.set(p, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.at(p, j).clone(), inv.at(col, j).clone());
                    inv.set(p, j, y);
                    inv.set(col, j, x);
                }
            }
            let pv = a.at(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.at(col, j).clone() / pv.clone());
                inv.set(col, j, inv.at(col, j).clone() / pv.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.at(r, j).clone() - factor.clone() * a.at(col, j).clone());
                    inv.set(r, j, inv.at(r, j).clone() - factor.clone() * inv.at(col, j).clone());
                }
            }
        }
        Ok(inv)
    }
}

/// Exact solution of `A x = b` over a commutative field.
///
/// Returns `Ok(None)` when the system is inconsistent. Underdetermined
/// systems are resolved by setting every free variable to zero, which
/// makes the output deterministic.
pub fn solve_linear<T: FieldScalar>(a: &Mat<T>, b: &[T]) -> Result<Option<Vec<T>>, MatError> {
    if a.rows() != b.len() {
        return Err(MatError::DimensionMismatch(format!(
            "matrix has {} rows but rhs has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut aug = Mat::from_fn(m, n + 1, |i, j| {
        if j < n {
            a.at(i, j).clone()
        } else {
            b[i].clone()
        }
    });

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let pivot = (row..m).find(|&r| !aug.at(r, col).is_zero());
        let Some(p) = pivot else {
            continue;
        };
        if p != row {
            for j in 0..=n {
                let (x, y) = (aug.at(p, j).clone(), aug.at(row, j).clone());
                aug.set(p, j, y);
                aug.set(row, j, x);
            }
        }
        let pv = aug.at(row, col).clone();
        for j in col..=n {
            aug.set(row, j, aug.at(row, j).clone() / pv.clone());
        }
        for r in 0..m {
            if r == row {
                continue;
            }
            let factor = aug.at(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..=n {
                aug.set(r, j, aug.at(r, j).clone() - factor.clone() * aug.at(row, j).clone());
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }

    // A zero row with nonzero rhs means no solution exists.
    for r in row..m {
        if !aug.at(r, n).is_zero() {
            return Ok(None);
        }
    }

    let mut x = vec![T::zero(); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug.at(r, n).clone();
    }
    Ok(Some(x))
}

/// Convenience alias used throughout the crate.
pub type RatMat = Mat<Rat>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn m(rows: Vec<Vec<i64>>) -> RatMat {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    fn v(entries: Vec<i64>) -> Vec<Rat> {
        entries.into_iter().map(rat_int).collect()
    }

    #[test]
    fn solve_identity() {
        let a = RatMat::identity(3);
        let x = solve_linear(&a, &v(vec![1, 2, 3])).unwrap().unwrap();
        assert_eq!(x, v(vec![1, 2, 3]));
    }

    #[test]
    fn solve_symmetric_two_by_two() {
        let a = m(vec![vec![1, 1], vec![1, -1]]);
        let x = solve_linear(&a, &v(vec![2, 0])).unwrap().unwrap();
        assert_eq!(x, v(vec![1, 1]));
    }

    #[test]
    fn solve_inconsistent_rows() {
        let a = m(vec![vec![1, 0], vec![1, 0]]);
        assert_eq!(solve_linear(&a, &v(vec![0, 1])).unwrap(), None);
    }

    #[test]
    fn solve_underdetermined_zeroes_free_variables() {
        let a = m(vec![vec![1, 1]]);
        let x = solve_linear(&a, &v(vec![5])).unwrap().unwrap();
        assert_eq!(x, v(vec![5, 0]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = m(vec![vec![1, 0]]);
        assert!(matches!(
            solve_linear(&a, &v(vec![1, 2])),
            Err(MatError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn det_and_inverse() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(), rat_int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        assert_eq!(inv.at(0, 0), &rat(1, 1));

        let singular = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.det().is_zero());
        assert!(singular.inverse().is_err());
    }
}

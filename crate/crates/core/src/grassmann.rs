//! Quaternionic Grassmannians `Gr_k(H^n)`: full-rank `n x k` quaternion
//! matrices modulo right multiplication by `GL(k, H)`.
//!
//! A point is stored with its canonical representative, the reduced
//! column echelon form: pivot entries are 1 and pivot rows vanish in the
//! other columns. Column operations act on the right, so this form is a
//! complete invariant of the plane; two points are equal exactly when
//! their canonical forms are equal.
//!
//! The open cover used for the retraction argument consists of the
//! complements of the subvarieties `X_{j,k}` of planes containing the
//! `j`-th standard basis vector; `Y_{j,k}` is the set of planes whose
//! representatives all have zero `j`-th row, and scaling that row by
//! `1 - s` retracts the complement of `X_{j,k}` onto `Y_{j,k}`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::Rat;
use crate::matrix::Mat;
use crate::quaternion::{quat_mul, quat_rank, QuatMat, Quaternion};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassError {
    #[error("matrix has rank {rank}, expected full column rank {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("index {index} out of range (valid 1..={max})")]
    BadIndex { index: usize, max: usize },
    #[error("plane does not avoid X_{{{j},{k}}}: deleting row {j} drops the rank")]
    InXSet { j: usize, k: usize },
    #[error("retraction parameter must lie in [0, 1]")]
    BadParameter,
}

/// A point of `Gr_k(H^n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassPoint {
    rep: QuatMat,
    canonical: QuatMat,
}

impl GrassPoint {
    pub fn new(rep: QuatMat) -> Result<Self, GrassError> {
        let k = rep.cols();
        let rank = quat_rank(&rep);
        if rank != k {
            return Err(GrassError::RankDeficient { rank, k });
        }
        let canonical = column_echelon(&rep);
        Ok(GrassPoint { rep, canonical })
    }

    pub fn n(&self) -> usize {
        self.rep.rows()
    }

    pub fn k(&self) -> usize {
        self.rep.cols()
    }

    pub fn rep(&self) -> &QuatMat {
        &self.rep
    }

    pub fn canonical(&self) -> &QuatMat {
        &self.canonical
    }

    /// Same plane: canonical forms agree.
    pub fn same_plane(&self, other: &GrassPoint) -> bool {
        self.canonical == other.canonical
    }
}

/// Reduced column echelon form over the quaternions; column operations
/// are right multiplications, so the result represents the same plane.
pub fn column_echelon(m: &QuatMat) -> QuatMat {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Quaternion>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivot_count = 0;
    for row in 0..rows {
        if pivot_count == cols {
            break;
        }
        let Some(p) = (pivot_count..cols).find(|&c| !a[row][c].is_zero()) else {
            continue;
        };
        for r in 0..rows {
            a[r].swap(pivot_count, p);
        }
        // Right-scale the pivot column so the pivot entry is 1.
        let inv = a[row][pivot_count].inv().expect("nonzero pivot");
        for r in 0..rows {
            a[r][pivot_count] = quat_mul(&a[r][pivot_count], &inv);
        }
        // Clear the pivot row in every other column.
        for c in 0..cols {
            if c == pivot_count || a[row][c].is_zero() {
                continue;
            }
            let factor = a[row][c].clone();
            for r in 0..rows {
                let sub = quat_mul(&a[r][pivot_count], &factor);
                a[r][c] = a[r][c].clone() - sub;
            }
        }
        pivot_count += 1;
    }
    Mat::from_rows(a)
}

/// Whether the plane contains the `j`-th standard basis vector (so lies
/// in `X_{j,k}`): adjoining `e_j` must not raise the rank.
pub fn in_x(j: usize, x: &GrassPoint) -> Result<bool, GrassError> {
    let (n, k) = (x.n(), x.k());
    if j == 0 || j > k + 1 || j > n {
        return Err(GrassError::BadIndex {
            index: j,
            max: (k + 1).min(n),
        });
    }
    let aug = Mat::from_fn(n, k + 1, |r, c| {
        if c < k {
            x.rep().at(r, c).clone()
        } else if r == j - 1 {
            Quaternion::one()
        } else {
            Quaternion::zero()
        }
    });
    Ok(quat_rank(&aug) == k)
}

/// Whether the plane lies in `Y_{j,k}`: row `j` of every representative
/// vanishes, which is visible on the canonical form.
pub fn in_y(j: usize, x: &GrassPoint) -> Result<bool, GrassError> {
    let n = x.n();
    if j == 0 || j > n {
        return Err(GrassError::BadIndex { index: j, max: n });
    }
    Ok((0..x.k()).all(|c| x.canonical().at(j - 1, c).is_zero()))
}

/// Retraction of the complement of `X_{j,k}` onto `Y_{j,k}`: scales row
/// `j` by `1 - s`. The rank is preserved for every `s` in `[0, 1]`
/// because deleting row `j` already leaves full rank.
pub fn retract(j: usize, x: &GrassPoint, s: &Rat) -> Result<GrassPoint, GrassError> {
    use num_traits::Signed;
    let (n, k) = (x.n(), x.k());
    if j == 0 || j > n {
        return Err(GrassError::BadIndex { index: j, max: n });
    }
    if s.is_negative() || s > &Rat::one() {
        return Err(GrassError::BadParameter);
    }
    if in_x(j, x).unwrap_or(false) {
        return Err(GrassError::InXSet { j, k });
    }
    let factor = Rat::one() - s;
    let rep = Mat::from_fn(n, k, |r, c| {
        let entry = x.rep().at(r, c).clone();
        if r == j - 1 {
            entry.scale(&factor)
        } else {
            entry
        }
    });
    GrassPoint::new(rep)
}

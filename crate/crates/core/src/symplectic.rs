//! The quaternionic model of `Sp(n)`: unitary quaternion matrices of
//! reduced norm one, the complex embedding `phi`, the reduced norm
//! `nu = det(phi(.))`, the vertex involutions `diag(-I_k, I_{n-k})`, and
//! the map sending a conjugate of a vertex involution to the plane of its
//! `(-1)`-eigenspace.
//!
//! Writing each entry as `q = A + B j` with complex `A = a + b i` and
//! `B = c + d i` makes `phi(A + B j) = [[A, B], [-conj B, conj A]]` an
//! injective algebra homomorphism into `M_{2n}(C)`, which the tests
//! exercise on random rational matrices.

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::exact::{rat_int, CRat, Rat};
use crate::grassmann::GrassPoint;
use crate::matrix::Mat;
use crate::quaternion::{QuatMat, Quaternion};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix must be square")]
    NotSquare,
    #[error("index {index} out of range for size {n}")]
    BadIndex { index: usize, n: usize },
    #[error("first columns of the matrix do not avoid row {0}")]
    NotInY(usize),
    #[error("grassmann: {0}")]
    Grassmann(#[from] crate::grassmann::GrassError),
    #[error("polar iteration failed to converge in {0} steps")]
    NoConvergence(usize),
}

pub type CMat = Mat<CRat>;

/// Conjugate transpose of a quaternion matrix.
pub fn conj_transpose(m: &QuatMat) -> QuatMat {
    Mat::from_fn(m.cols(), m.rows(), |i, j| m.at(j, i).conj())
}

/// The complex `2n x 2n` image of an `n x n` quaternion matrix.
pub fn phi_embed(m: &QuatMat) -> CMat {
    assert_eq!(m.rows(), m.cols(), "phi: square input");
    let n = m.rows();
    Mat::from_fn(2 * n, 2 * n, |i, j| {
        let (a, b) = m.at(i % n, j % n).complex_parts();
        match (i < n, j < n) {
            (true, true) => a,
            (true, false) => b,
            (false, true) => -b.conj(),
            (false, false) => a.conj(),
        }
    })
}

/// Reduced norm `nu = det(phi(.))`.
pub fn reduced_norm(m: &QuatMat) -> CRat {
    phi_embed(m).det()
}

/// Membership in `Sp(n)`: quaternion-unitary with reduced norm one.
pub fn is_symplectic(g: &QuatMat) -> bool {
    if g.rows() != g.cols() {
        return false;
    }
    if g.mul(&conj_transpose(g)) != QuatMat::identity(g.rows()) {
        return false;
    }
    reduced_norm(g) == CRat::one()
}

/// `exp v_k = diag(-I_k, I_{n-k})`.
pub fn sp_exp_vertex(n: usize, k: usize) -> QuatMat {
    assert!(k <= n);
    Mat::from_fn(n, n, |i, j| {
        if i != j {
            Quaternion::zero()
        } else if i < k {
            Quaternion::from_int(-1)
        } else {
            Quaternion::one()
        }
    })
}

/// Image of the orbit point `c_g(exp v_k)` in the Grassmannian: the span
/// of the first `k` columns of `g` when `k <= n - k`, and of the last
/// `n - k` columns otherwise.
pub fn tau(g: &QuatMat, k: usize) -> Result<GrassPoint, SymplecticError> {
    let n = g.rows();
    if k == 0 || k >= n {
        return Err(SymplecticError::BadIndex { index: k, n });
    }
    if !is_symplectic(g) {
        return Err(SymplecticError::NotSymplectic);
    }
    let d = k.min(n - k);
    let cols: Vec<usize> = if d == k {
        (0..k).collect()
    } else {
        (k..n).collect()
    };
    let rep = Mat::from_fn(n, cols.len(), |i, j| g.at(i, cols[j]).clone());
    GrassPoint::new(rep).map_err(Into::into)
}

/// Checks that an orbit element `g` (a symplectic conjugate of a vertex
/// involution) whose plane avoids row `j` has the expected block shape:
/// row and column `j` are the standard basis vector, the complementary
/// block is symplectic, and it is the vertex involution of `Sp(n-1)` with
/// `k` negative entries, detected by the involution property together
/// with the trace of the complex image.
pub fn block_structure_check(g: &QuatMat, j: usize, k: usize) -> Result<bool, SymplecticError> {
    let n = g.rows();
    if j == 0 || j > n {
        return Err(SymplecticError::BadIndex { index: j, n });
    }
    if !is_symplectic(g) {
        return Err(SymplecticError::NotSymplectic);
    }
    let row = j - 1;
    // Row and column j must be exactly e_j.
    for t in 0..n {
        let expect = if t == row {
            Quaternion::one()
        } else {
            Quaternion::zero()
        };
        if g.at(row, t) != &expect || g.at(t, row) != &expect {
            return Ok(false);
        }
    }
    let block = g.submatrix(|i| i != row, |c| c != row);
    if !is_symplectic(&block) {
        return Ok(false);
    }
    if block.mul(&block) != QuatMat::identity(n - 1) {
        return Ok(false);
    }
    // Involutions in Sp(n-1) are classified by the multiplicity of -1;
    // the complex image of diag(-I_k, I_{n-1-k}) has trace 2(n-1-2k).
    let trace = {
        let phi = phi_embed(&block);
        let mut acc = CRat::zero();
        for i in 0..phi.rows() {
            acc += phi.at(i, i).clone();
        }
        acc
    };
    let expected = rat_int(2 * ((n as i64 - 1) - 2 * k as i64));
    Ok(trace == CRat::new(expected, Rat::zero()))
}

/// A small pool of exact unit quaternions, used to synthesize random
/// symplectic matrices without any numerical orthogonalization.
pub fn unit_quaternion_pool() -> Vec<Quaternion> {
    let q = |a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)| {
        Quaternion::new(
            crate::exact::rat(a.0, a.1),
            crate::exact::rat(b.0, b.1),
            crate::exact::rat(c.0, c.1),
            crate::exact::rat(d.0, d.1),
        )
    };
    vec![
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
        q((1, 2), (1, 2), (1, 2), (1, 2)),
        q((3, 5), (4, 5), (0, 1), (0, 1)),
        q((3, 5), (0, 1), (4, 5), (0, 1)),
        q((5, 13), (0, 1), (0, 1), (12, 13)),
        q((1, 5), (2, 5), (2, 5), (4, 5)),
        q((2, 7), (3, 7), (6, 7), (0, 1)),
    ]
}

/// Random element of `Sp(n)` with exact rational entries: a product of
/// block-embedded unit quaternions, permutations, and two-by-two rotors.
pub fn random_symplectic<R: Rng>(n: usize, steps: usize, rng: &mut R) -> QuatMat {
    let pool = unit_quaternion_pool();
    let mut g = QuatMat::identity(n);
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                // Unit quaternion in one diagonal slot.
                let i = rng.gen_range(0..n);
                let q = pool[rng.gen_range(0..pool.len())].clone();
                let mut f = QuatMat::identity(n);
                f.set(i, i, q);
                g = g.mul(&f);
            }
            1 => {
                // Transposition of two slots.
                if n >= 2 {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n);
                    if i == j {
                        j = (j + 1) % n;
                    }
                    let mut f = QuatMat::identity(n);
                    f.set(i, i, Quaternion::zero());
                    f.set(j, j, Quaternion::zero());
                    f.set(i, j, Quaternion::one());
                    f.set(j, i, Quaternion::from_int(-1));
                    g = g.mul(&f);
                }
            }
            _ => {
                // Exact rotation in a coordinate plane.
                if n >= 2 {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n);
                    if i == j {
                        j = (j + 1) % n;
                    }
                    let (c, s) = (crate::exact::rat(3, 5), crate::exact::rat(4, 5));
                    let mut f = QuatMat::identity(n);
                    f.set(i, i, Quaternion::from_rat(c.clone()));
                    f.set(j, j, Quaternion::from_rat(c));
                    f.set(i, j, Quaternion::from_rat(s.clone()));
                    f.set(j, i, Quaternion::from_rat(-s));
                    g = g.mul(&f);
                }
            }
        }
    }
    g
}

// ---------------------------------------------------------------------
// Floating-point polar part, the one numerical routine in the crate.
// ---------------------------------------------------------------------

/// Quaternion with f64 coefficients, used only by the polar projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuatF64 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl QuatF64 {
    pub fn zero() -> Self {
        QuatF64 { a: 0.0, b: 0.0, c: 0.0, d: 0.0 }
    }

    pub fn from_exact(q: &Quaternion) -> Self {
        let f = |r: &Rat| r.numer().to_string().parse::<f64>().unwrap()
            / r.denom().to_string().parse::<f64>().unwrap();
        QuatF64 { a: f(&q.a), b: f(&q.b), c: f(&q.c), d: f(&q.d) }
    }

    fn conj(self) -> Self {
        QuatF64 { a: self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    fn mul(self, o: Self) -> Self {
        QuatF64 {
            a: self.a * o.a - self.b * o.b - self.c * o.c - self.d * o.d,
            b: self.a * o.b + self.b * o.a + self.c * o.d - self.d * o.c,
            c: self.a * o.c - self.b * o.d + self.c * o.a + self.d * o.b,
            d: self.a * o.d + self.b * o.c - self.c * o.b + self.d * o.a,
        }
    }

    fn add(self, o: Self) -> Self {
        QuatF64 { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c, d: self.d + o.d }
    }

    fn scale(self, s: f64) -> Self {
        QuatF64 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    fn norm_sq(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    fn inv(self) -> Self {
        self.conj().scale(1.0 / self.norm_sq())
    }
}

pub type QuatF64Mat = Vec<Vec<QuatF64>>;

pub fn to_f64_matrix(m: &QuatMat) -> QuatF64Mat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| QuatF64::from_exact(m.at(i, j))).collect())
        .collect()
}

fn f64_mat_mul(a: &QuatF64Mat, b: &QuatF64Mat) -> QuatF64Mat {
    let n = a.len();
    let mut out = vec![vec![QuatF64::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = QuatF64::zero();
            for k in 0..n {
                acc = acc.add(a[i][k].mul(b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn f64_conj_transpose(a: &QuatF64Mat) -> QuatF64Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// Gaussian inverse over the float quaternions.
fn f64_mat_inv(a: &QuatF64Mat) -> Option<QuatF64Mat> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv: QuatF64Mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { QuatF64 { a: 1.0, ..QuatF64::zero() } } else { QuatF64::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| {
            m[x][col]
                .norm_sq()
                .partial_cmp(&m[y][col].norm_sq())
                .unwrap()
        })?;
        if m[pivot][col].norm_sq() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].inv();
        for j in 0..n {
            m[col][j] = p.mul(m[col][j]);
            inv[col][j] = p.mul(inv[col][j]);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col];
            for j in 0..n {
                m[r][j] = m[r][j].add(f.mul(m[col][j]).scale(-1.0));
                inv[r][j] = inv[r][j].add(f.mul(inv[col][j]).scale(-1.0));
            }
        }
    }
    Some(inv)
}

fn unitary_defect(g: &QuatF64Mat) -> f64 {
    let n = g.len();
    let gg = f64_mat_mul(g, &f64_conj_transpose(g));
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut e = gg[i][j];
            if i == j {
                e.a -= 1.0;
            }
            worst = worst.max(e.norm_sq().sqrt());
        }
    }
    worst
}

/// The symplectic factor `kappa(g) = g (g* g)^{-1/2}` of an invertible
/// matrix of reduced norm one, by the Newton iteration
/// `U <- (U + (U*)^{-1}) / 2` converging to the unitary polar factor.
pub fn polar_sp_part(g: &QuatF64Mat) -> Result<QuatF64Mat, SymplecticError> {
    let mut u = g.clone();
    for _ in 0..100 {
        if unitary_defect(&u) <= 1e-10 {
            return Ok(u);
        }
        let inv_star = f64_mat_inv(&f64_conj_transpose(&u))
            .ok_or(SymplecticError::NoConvergence(100))?;
        let n = u.len();
        for i in 0..n {
            for j in 0..n {
                u[i][j] = u[i][j].add(inv_star[i][j]).scale(0.5);
            }
        }
    }
    if unitary_defect(&u) <= 1e-10 {
        Ok(u)
    } else {
        Err(SymplecticError::NoConvergence(100))
    }
}

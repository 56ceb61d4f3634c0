//! Rational quaternions `a + b i + c j + d k` and rank computation for
//! quaternion matrices viewed as maps of right vector spaces.

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{rat_str, Rat};
use crate::matrix::Mat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Quaternion {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quaternion::new(a, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Quaternion::from_rat(crate::exact::rat_int(n))
    }

    pub fn i() -> Self {
        Quaternion::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn j() -> Self {
        Quaternion::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero())
    }

    pub fn k() -> Self {
        Quaternion::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::one())
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn norm_sq(&self) -> Rat {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    /// `q^{-1} = conj(q) / |q|^2`; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Quaternion::new(c.a / &n, c.b / &n, c.c / &n, c.d / &n))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Quaternion::new(s * &self.a, s * &self.b, s * &self.c, s * &self.d)
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Complex pair `(a + b i, c + d i)` so that `q = A + B j`.
    pub fn complex_parts(&self) -> (crate::exact::CRat, crate::exact::CRat) {
        (
            crate::exact::CRat::new(self.a.clone(), self.b.clone()),
            crate::exact::CRat::new(self.c.clone(), self.d.clone()),
        )
    }
}

/// Hamilton product.
pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    Quaternion::new(
        &p.a * &q.a - &p.b * &q.b - &p.c * &q.c - &p.d * &q.d,
        &p.a * &q.b + &p.b * &q.a + &p.c * &q.d - &p.d * &q.c,
        &p.a * &q.c - &p.b * &q.d + &p.c * &q.a + &p.d * &q.b,
        &p.a * &q.d + &p.b * &q.c - &p.c * &q.b + &p.d * &q.a,
    )
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        quat_mul(&self, &o)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Quaternion::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Quaternion::from_rat(Rat::one())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (coeff, unit) in [(&self.a, ""), (&self.b, "i"), (&self.c, "j"), (&self.d, "k")] {
            if coeff.is_zero() {
                continue;
            }
            let mag = rat_str(&coeff.clone().abs());
            let body = if unit.is_empty() {
                mag
            } else if mag == "1" {
                unit.to_string()
            } else {
                format!("{mag}{unit}")
            };
            if parts.is_empty() {
                parts.push(if coeff < &Rat::zero() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!(
                    "{} {body}",
                    if coeff < &Rat::zero() { "-" } else { "+" }
                ));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type QuatMat = Mat<Quaternion>;

/// Rank over the quaternions of a matrix acting on a right vector space,
/// by row reduction with left row operations. Left multiplication by an
/// invertible matrix does not change the dimension of the image, so the
/// pivot count is the rank.
pub fn quat_rank(m: &QuatMat) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Quaternion>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for j in col..cols {
            a[rank][j] = quat_mul(&inv, &a[rank][j]);
        }
        for r in 0..rows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..cols {
                let sub = quat_mul(&factor, &a[rank][j]);
                a[r][j] = a[r][j].clone() - sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

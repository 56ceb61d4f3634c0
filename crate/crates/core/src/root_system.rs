//! Root data for the simple Lie types.
//!
//! Classical families live in the coordinates of the table everyone uses:
//! `A_n` in the trace-zero hyperplane of an `(n+1)`-dimensional ambient
//! space with simple roots `e_i - e_{i+1}`, and `B_n`, `C_n`, `D_n` in an
//! `n`-dimensional ambient space. Exceptional types are built from their
//! Cartan data: roots are expressed in the simple-root basis and points of
//! the torus algebra in the dual (fundamental coweight) basis, so that the
//! pairing of a root with a point is the plain dot product of coordinate
//! vectors in every family.
//!
//! The invariant form is stored as the Gram matrix of the root coordinate
//! functionals, normalized so long roots have squared length 2. Coroots
//! are insensitive to that normalization (rescaling the form rescales
//! `u_alpha` inversely), which is checked in the tests; the chosen scale
//! keeps the coroot lattice an integer lattice in these coordinates.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{dot, rat, rat_int, rat_str, vec_add, vec_neg, Rat};
use crate::matrix::{solve_linear, Mat, RatMat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("vector is not a root of this system")]
    NotARoot,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieFamily {
    pub fn letter(self) -> char {
        match self {
            LieFamily::A => 'A',
            LieFamily::B => 'B',
            LieFamily::C => 'C',
            LieFamily::D => 'D',
            LieFamily::E => 'E',
            LieFamily::F => 'F',
            LieFamily::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(LieFamily::A),
            'B' => Some(LieFamily::B),
            'C' => Some(LieFamily::C),
            'D' => Some(LieFamily::D),
            'E' => Some(LieFamily::E),
            'F' => Some(LieFamily::F),
            'G' => Some(LieFamily::G),
            _ => None,
        }
    }

    /// The compact simply connected group with this root system.
    pub fn group_name(self, rank: usize) -> String {
        match self {
            LieFamily::A => format!("SU({})", rank + 1),
            LieFamily::B => format!("Spin({})", 2 * rank + 1),
            LieFamily::C => format!("Sp({rank})"),
            LieFamily::D => format!("Spin({})", 2 * rank),
            LieFamily::E => format!("E{rank}"),
            LieFamily::F => "F4".to_string(),
            LieFamily::G => "G2".to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LieType {
    pub family: LieFamily,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: LieFamily, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            LieFamily::A => rank >= 1,
            LieFamily::B => rank >= 2,
            LieFamily::C => rank >= 1, // C_1 = A_1 as a realization of Sp(1)
            LieFamily::D => rank >= 3,
            LieFamily::E => (6..=8).contains(&rank),
            LieFamily::F => rank == 4,
            LieFamily::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(RootError::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// The full root datum of one simple type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<Rat>>,
    pub roots: Vec<Vec<Rat>>,
    pub positive_roots: Vec<Vec<Rat>>,
    pub highest_root: Vec<Rat>,
    /// Gram matrix of the root coordinates under the invariant form,
    /// normalized so long roots have squared length 2.
    pub form: RatMat,
    /// `cartan[i][j] = alpha_j(h_{alpha_i})`.
    pub cartan_matrix: Vec<Vec<i64>>,
    marks: Vec<u64>,
    /// Coroot of each root, in torus coordinates.
    coroots: HashMap<Vec<Rat>, Vec<Rat>>,
    /// Simple coroots; an integral basis of the coroot lattice.
    pub coroot_basis: Vec<Vec<Rat>>,
    root_set: HashSet<Vec<Rat>>,
    /// Alcove vertices, solved on first use and shared across clones.
    pub(crate) vertex_cache: Arc<OnceLock<Vec<Vec<Rat>>>>,
    /// Inverse of the form, the metric on torus points; lazily computed.
    pub(crate) form_inverse_cache: Arc<OnceLock<RatMat>>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn is_root(&self, v: &[Rat]) -> bool {
        self.root_set.contains(v)
    }

    /// `alpha(H)` in the coordinate systems fixed by this crate.
    pub fn pair(&self, alpha: &[Rat], h: &[Rat]) -> Rat {
        dot(alpha, h)
    }

    /// Squared length of a root under the invariant form.
    pub fn root_length_sq(&self, alpha: &[Rat]) -> Rat {
        dot(&self.form.mul_vec(alpha), alpha)
    }

    /// Invariant inner product of two roots.
    pub fn root_inner(&self, alpha: &[Rat], beta: &[Rat]) -> Rat {
        dot(&self.form.mul_vec(alpha), beta)
    }

    /// Coroot `h_alpha = 2 u_alpha / B(u_alpha, u_alpha)`.
    pub fn coroot(&self, alpha: &[Rat]) -> Result<Vec<Rat>, RootError> {
        self.coroots.get(alpha).cloned().ok_or(RootError::NotARoot)
    }

    /// Reflection in the wall of `alpha`, acting on torus coordinates:
    /// `s_alpha(H) = H - alpha(H) h_alpha`.
    pub fn weyl_reflection(&self, alpha: &[Rat]) -> Result<RatMat, RootError> {
        let h = self.coroot(alpha)?;
        let n = self.ambient_dim;
        Ok(Mat::from_fn(n, n, |i, j| {
            let base = if i == j { Rat::one() } else { Rat::zero() };
            base - &h[i] * &alpha[j]
        }))
    }

    /// Image of the root `beta` under the reflection in `alpha`, acting on
    /// the dual side: `s_alpha(beta) = beta - beta(h_alpha) alpha`.
    pub fn reflect_root(&self, alpha: &[Rat], beta: &[Rat]) -> Result<Vec<Rat>, RootError> {
        let h = self.coroot(alpha)?;
        let coeff = dot(beta, &h);
        Ok(beta
            .iter()
            .zip(alpha)
            .map(|(b, a)| b - &coeff * a)
            .collect())
    }

    /// Marks `m_j` with `alpha_0 = sum m_j alpha_j`.
    pub fn marks(&self) -> &[u64] {
        &self.marks
    }

    pub fn build(t: LieType) -> Result<RootSystem, RootError> {
        let n = t.rank;
        let (simple_roots, form): (Vec<Vec<Rat>>, RatMat) = match t.family {
            LieFamily::A => {
                let dim = n + 1;
                let mut simple = Vec::new();
                for i in 0..n {
                    let mut v = crate::exact::zero_vec(dim);
                    v[i] = Rat::one();
                    v[i + 1] = -Rat::one();
                    simple.push(v);
                }
                (simple, RatMat::identity(dim))
            }
            LieFamily::B => {
                let mut simple = Vec::new();
                for i in 0..n - 1 {
                    let mut v = crate::exact::zero_vec(n);
                    v[i] = Rat::one();
                    v[i + 1] = -Rat::one();
                    simple.push(v);
                }
                let mut last = crate::exact::zero_vec(n);
                last[n - 1] = Rat::one();
                simple.push(last);
                (simple, RatMat::identity(n))
            }
            LieFamily::C => {
                let mut simple = Vec::new();
                for i in 0..n - 1 {
                    let mut v = crate::exact::zero_vec(n);
                    v[i] = Rat::one();
                    v[i + 1] = -Rat::one();
                    simple.push(v);
                }
                let mut last = crate::exact::zero_vec(n);
                last[n - 1] = rat_int(2);
                simple.push(last);
                // Long roots have euclidean squared length 4; halve the form.
                let form = RatMat::identity(n).map(|x| x.clone() * rat(1, 2));
                (simple, form)
            }
            LieFamily::D => {
                let mut simple = Vec::new();
                for i in 0..n - 1 {
                    let mut v = crate::exact::zero_vec(n);
                    v[i] = Rat::one();
                    v[i + 1] = -Rat::one();
                    simple.push(v);
                }
                let mut last = crate::exact::zero_vec(n);
                last[n - 2] = Rat::one();
                last[n - 1] = Rat::one();
                simple.push(last);
                (simple, RatMat::identity(n))
            }
            LieFamily::E | LieFamily::F | LieFamily::G => {
                let simple = (0..n)
                    .map(|i| {
                        let mut v = crate::exact::zero_vec(n);
                        v[i] = Rat::one();
                        v
                    })
                    .collect();
                (simple, exceptional_form(t))
            }
        };

        let ambient_dim = simple_roots[0].len();

        // Roots: closure of the simple roots and their negatives under the
        // simple reflections, breadth-first over newly found roots.
        // Reflections are computed directly from the form here, before
        // coroots exist.
        let dual_simple: Vec<Vec<Rat>> = simple_roots.iter().map(|a| form.mul_vec(a)).collect();
        let simple_len: Vec<Rat> = simple_roots
            .iter()
            .zip(&dual_simple)
            .map(|(a, u)| dot(u, a))
            .collect();
        let mut root_set: HashSet<Vec<Rat>> = HashSet::new();
        let mut frontier: Vec<Vec<Rat>> = Vec::new();
        for a in &simple_roots {
            for r in [a.clone(), vec_neg(a)] {
                if root_set.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        while let Some(beta) = frontier.pop() {
            for ((alpha, u), len) in simple_roots.iter().zip(&dual_simple).zip(&simple_len) {
                let coeff = rat_int(2) * dot(u, &beta) / len;
                debug_assert!(coeff.denom().is_one(), "Cartan pairing must be integral");
                let image: Vec<Rat> = beta
                    .iter()
                    .zip(alpha)
                    .map(|(b, a)| b - &coeff * a)
                    .collect();
                if !root_set.contains(&image) {
                    root_set.insert(image.clone());
                    frontier.push(image);
                }
            }
        }

        let mut roots: Vec<Vec<Rat>> = root_set.iter().cloned().collect();
        roots.sort();

        let positive_roots: Vec<Vec<Rat>> = roots
            .iter()
            .filter(|r| is_positive(t.family, r))
            .cloned()
            .collect();
        assert_eq!(positive_roots.len() * 2, roots.len());

        // Highest root: saturate any positive root by adding simple roots
        // while the sum is still a root.
        let mut highest = positive_roots[0].clone();
        'grow: loop {
            for alpha in &simple_roots {
                let cand = vec_add(&highest, alpha);
                if root_set.contains(&cand) {
                    highest = cand;
                    continue 'grow;
                }
            }
            break;
        }

        // Coroots: h_alpha = 2 (form a) / (a^T form a).
        let mut coroots = HashMap::new();
        for alpha in &roots {
            let u = form.mul_vec(alpha);
            let len_sq = dot(&u, alpha);
            let h: Vec<Rat> = u.iter().map(|x| rat_int(2) * x / &len_sq).collect();
            coroots.insert(alpha.clone(), h);
        }
        let coroot_basis: Vec<Vec<Rat>> =
            simple_roots.iter().map(|a| coroots[a].clone()).collect();

        // Marks: expand the highest root in the simple-root basis.
        let basis = Mat::from_fn(ambient_dim, n, |i, j| simple_roots[j][i].clone());
        let coeffs = solve_linear(&basis, &highest)
            .expect("dimensions fixed above")
            .expect("highest root lies in the root lattice");
        let marks: Vec<u64> = coeffs
            .iter()
            .map(|c| {
                assert!(
                    c.denom().is_one() && c.is_positive(),
                    "marks are positive integers"
                );
                u64::try_from(c.numer().clone()).expect("mark fits in u64")
            })
            .collect();

        let cartan_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = dot(&simple_roots[j], &coroots[&simple_roots[i]]);
                        assert!(v.denom().is_one());
                        i64::try_from(v.numer().clone()).expect("Cartan entry fits in i64")
                    })
                    .collect()
            })
            .collect();

        Ok(RootSystem {
            lie_type: t,
            ambient_dim,
            simple_roots,
            roots,
            positive_roots,
            highest_root: highest,
            form,
            cartan_matrix,
            marks,
            coroots,
            coroot_basis,
            root_set,
            vertex_cache: Arc::new(OnceLock::new()),
            form_inverse_cache: Arc::new(OnceLock::new()),
        })
    }

    /// Positivity with respect to the standard positive system, decided
    /// coordinate-wise.
    pub fn is_positive_root(&self, v: &[Rat]) -> bool {
        self.is_root(v) && is_positive(self.lie_type.family, v)
    }

    /// True when `v` is an integer combination of the simple coroots.
    pub fn in_coroot_lattice(&self, v: &[Rat]) -> bool {
        let basis = Mat::from_fn(self.ambient_dim, self.rank(), |i, j| {
            self.coroot_basis[j][i].clone()
        });
        match solve_linear(&basis, v) {
            Ok(Some(coeffs)) => {
                // In family A the basis does not span the ambient space, so
                // re-check the candidate combination.
                let mut recomputed = crate::exact::zero_vec(self.ambient_dim);
                for (c, b) in coeffs.iter().zip(&self.coroot_basis) {
                    for (r, x) in recomputed.iter_mut().zip(b) {
                        *r += c * x;
                    }
                }
                recomputed == v && coeffs.iter().all(|c| c.denom().is_one())
            }
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let vecs = |vs: &[Vec<Rat>]| -> Value {
            Value::Array(
                vs.iter()
                    .map(|v| Value::Array(v.iter().map(|x| Value::String(rat_str(x))).collect()))
                    .collect(),
            )
        };
        json!({
            "type": self.lie_type.to_string(),
            "group": self.lie_type.family.group_name(self.rank()),
            "rank": self.rank(),
            "ambient_dim": self.ambient_dim,
            "simple_roots": vecs(&self.simple_roots),
            "num_roots": self.roots.len(),
            "roots": vecs(&self.roots),
            "positive_roots": vecs(&self.positive_roots),
            "highest_root": Value::Array(
                self.highest_root.iter().map(|x| Value::String(rat_str(x))).collect()
            ),
            "marks": self.marks,
            "cartan_matrix": self.cartan_matrix,
        })
    }
}

fn is_positive(family: LieFamily, root: &[Rat]) -> bool {
    match family {
        // In epsilon coordinates the standard positive roots are exactly
        // those whose first nonzero coordinate is positive.
        LieFamily::A | LieFamily::B | LieFamily::C | LieFamily::D => root
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_positive())
            .unwrap_or(false),
        // In the simple-root basis the coordinates are the expansion.
        LieFamily::E | LieFamily::F | LieFamily::G => {
            root.iter().any(|x| x.is_positive()) && !root.iter().any(|x| x.is_negative())
        }
    }
}

/// Gram matrix `(alpha_i, alpha_j)` for the exceptional types, long roots
/// normalized to squared length 2.
fn exceptional_form(t: LieType) -> RatMat {
    match (t.family, t.rank) {
        (LieFamily::G, 2) => {
            // alpha_1 short (squared length 2/3), alpha_2 long.
            Mat::from_rows(vec![
                vec![rat(2, 3), rat_int(-1)],
                vec![rat_int(-1), rat_int(2)],
            ])
        }
        (LieFamily::F, 4) => {
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
            Mat::from_rows(vec![
                vec![rat_int(2), rat_int(-1), rat_int(0), rat_int(0)],
                vec![rat_int(-1), rat_int(2), rat_int(-1), rat_int(0)],
                vec![rat_int(0), rat_int(-1), rat_int(1), rat(-1, 2)],
                vec![rat_int(0), rat_int(0), rat(-1, 2), rat_int(1)],
            ])
        }
        (LieFamily::E, n @ 6..=8) => {
            let edges: &[(usize, usize)] = match n {
                6 => &[(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)],
                7 => &[(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7)],
                _ => &[(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
            };
            Mat::from_fn(n, n, |i, j| {
                if i == j {
                    rat_int(2)
                } else if edges.contains(&(i + 1, j + 1)) || edges.contains(&(j + 1, i + 1)) {
                    rat_int(-1)
                } else {
                    Rat::zero()
                }
            })
        }
        _ => unreachable!("validated by LieType::new"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{vec_scale, zero_vec};

    fn build(f: LieFamily, n: usize) -> RootSystem {
        RootSystem::build(LieType::new(f, n).unwrap()).unwrap()
    }

    fn eps(dim: usize, entries: &[(usize, i64)]) -> Vec<Rat> {
        let mut v = zero_vec(dim);
        for &(i, c) in entries {
            v[i] = rat_int(c);
        }
        v
    }

    #[test]
    fn rank_validation() {
        assert!(LieType::new(LieFamily::D, 2).is_err());
        assert!(LieType::new(LieFamily::B, 1).is_err());
        assert!(LieType::new(LieFamily::E, 5).is_err());
        assert!(LieType::new(LieFamily::C, 1).is_ok());
        assert!(LieType::new(LieFamily::G, 2).is_ok());
    }

    #[test]
    fn a1_smallest_case() {
        let rs = build(LieFamily::A, 1);
        assert_eq!(rs.roots.len(), 2);
        assert!(rs.is_root(&eps(2, &[(0, 1), (1, -1)])));
        assert!(rs.is_root(&eps(2, &[(0, -1), (1, 1)])));
    }

    #[test]
    fn c2_matches_the_table() {
        let rs = build(LieFamily::C, 2);
        assert_eq!(rs.highest_root, eps(2, &[(0, 2)]));
        assert_eq!(rs.simple_roots[0], eps(2, &[(0, 1), (1, -1)]));
        assert_eq!(rs.simple_roots[1], eps(2, &[(1, 2)]));
        assert_eq!(rs.roots.len(), 8);
        assert_eq!(rs.marks(), &[2, 1]);
    }

    #[test]
    fn classical_root_counts() {
        for n in 1..=6 {
            assert_eq!(build(LieFamily::A, n).roots.len(), n * (n + 1));
            assert_eq!(build(LieFamily::C, n).roots.len(), 2 * n * n);
        }
        for n in 2..=6 {
            assert_eq!(build(LieFamily::B, n).roots.len(), 2 * n * n);
        }
        for n in 3..=6 {
            assert_eq!(build(LieFamily::D, n).roots.len(), 2 * n * (n - 1));
        }
    }

    #[test]
    fn exceptional_root_counts() {
        assert_eq!(build(LieFamily::G, 2).roots.len(), 12);
        assert_eq!(build(LieFamily::F, 4).roots.len(), 48);
        assert_eq!(build(LieFamily::E, 6).roots.len(), 72);
        assert_eq!(build(LieFamily::E, 7).roots.len(), 126);
        assert_eq!(build(LieFamily::E, 8).roots.len(), 240);
    }

    #[test]
    fn marks_by_family() {
        for n in 1..=6 {
            assert!(build(LieFamily::A, n).marks().iter().all(|&m| m == 1));
        }
        assert_eq!(build(LieFamily::C, 4).marks(), &[2, 2, 2, 1]);
        assert_eq!(build(LieFamily::B, 4).marks(), &[1, 2, 2, 2]);
        assert_eq!(build(LieFamily::D, 5).marks(), &[1, 2, 2, 1, 1]);
        assert_eq!(build(LieFamily::G, 2).marks(), &[3, 2]);
        assert_eq!(build(LieFamily::F, 4).marks(), &[2, 3, 4, 2]);
        assert_eq!(build(LieFamily::E, 8).marks().iter().max(), Some(&6));
    }

    #[test]
    fn highest_root_is_dominant() {
        for rs in [
            build(LieFamily::A, 3),
            build(LieFamily::B, 3),
            build(LieFamily::C, 3),
            build(LieFamily::D, 4),
            build(LieFamily::G, 2),
            build(LieFamily::F, 4),
            build(LieFamily::E, 6),
        ] {
            for alpha in &rs.simple_roots {
                assert!(!rs.root_inner(&rs.highest_root, alpha).is_negative());
                assert!(!rs.is_root(&vec_add(&rs.highest_root, alpha)));
            }
            // Re-expand the marks and compare.
            let mut expanded = zero_vec(rs.ambient_dim);
            for (m, alpha) in rs.marks().iter().zip(&rs.simple_roots) {
                expanded = vec_add(&expanded, &vec_scale(&rat_int(*m as i64), alpha));
            }
            assert_eq!(expanded, rs.highest_root);
        }
    }

    #[test]
    fn coroot_of_long_and_short_roots() {
        let rs = build(LieFamily::C, 2);
        // Long root 2 eps_1 has coroot eps_1 and invariant squared length 2.
        let long = eps(2, &[(0, 2)]);
        assert_eq!(rs.root_length_sq(&long), rat_int(2));
        assert_eq!(rs.coroot(&long).unwrap(), eps(2, &[(0, 1)]));
        // Short roots of C_2 are coordinate self-dual.
        let short = eps(2, &[(0, 1), (1, -1)]);
        assert_eq!(rs.coroot(&short).unwrap(), short);
        assert!(rs.coroot(&eps(2, &[(0, 3)])).is_err());

        // Roots of squared length 2 are self-dual wherever the form is the
        // standard one.
        for rs in [build(LieFamily::B, 3), build(LieFamily::D, 4), build(LieFamily::A, 2)] {
            for alpha in &rs.roots {
                if rs.root_length_sq(alpha) == rat_int(2) {
                    assert_eq!(&rs.coroot(alpha).unwrap(), alpha);
                }
            }
        }
    }

    #[test]
    fn coroot_invariant_under_form_rescaling() {
        // Recompute coroots from a rescaled form and compare.
        let rs = build(LieFamily::B, 3);
        for alpha in &rs.roots {
            for c in [rat_int(3), rat(1, 5)] {
                let scaled = rs.form.map(|x| x.clone() * &c);
                let u = scaled.mul_vec(alpha);
                let len = dot(&u, alpha);
                let h: Vec<Rat> = u.iter().map(|x| rat_int(2) * x / &len).collect();
                assert_eq!(h, rs.coroot(alpha).unwrap());
            }
        }
    }

    #[test]
    fn all_coroots_lie_in_the_coroot_lattice() {
        for rs in [
            build(LieFamily::A, 4),
            build(LieFamily::B, 3),
            build(LieFamily::C, 3),
            build(LieFamily::D, 4),
            build(LieFamily::G, 2),
            build(LieFamily::F, 4),
        ] {
            for alpha in &rs.roots {
                assert!(rs.in_coroot_lattice(&rs.coroot(alpha).unwrap()));
            }
        }
    }

    #[test]
    fn reflections_permute_the_roots() {
        for rs in [build(LieFamily::C, 2), build(LieFamily::G, 2), build(LieFamily::D, 4)] {
            for alpha in &rs.roots {
                let s = rs.weyl_reflection(alpha).unwrap();
                assert_eq!(s.mul(&s), RatMat::identity(rs.ambient_dim));
                for beta in &rs.roots {
                    let image = rs.reflect_root(alpha, beta).unwrap();
                    assert!(rs.is_root(&image));
                    // Pairings are preserved: beta'(s H) = beta(H).
                    let h = rs.coroot(&rs.simple_roots[0]).unwrap();
                    assert_eq!(dot(&image, &s.mul_vec(&h)), dot(beta, &h));
                }
            }
        }
    }

    #[test]
    fn a2_simple_reflection_swaps_coordinates() {
        let rs = build(LieFamily::A, 2);
        let s = rs.weyl_reflection(&rs.simple_roots[0]).unwrap();
        let p = vec![rat_int(5), rat_int(-2), rat_int(-3)];
        assert_eq!(s.mul_vec(&p), vec![rat_int(-2), rat_int(5), rat_int(-3)]);
    }

    #[test]
    fn c2_coxeter_element_has_order_four() {
        let rs = build(LieFamily::C, 2);
        let cox = rs
            .weyl_reflection(&rs.simple_roots[0])
            .unwrap()
            .mul(&rs.weyl_reflection(&rs.simple_roots[1]).unwrap());
        let mut p = cox.clone();
        let mut order = 1;
        while p != RatMat::identity(2) {
            p = p.mul(&cox);
            order += 1;
            assert!(order <= 16);
        }
        assert_eq!(order, 4);
    }

    #[test]
    fn reflection_closure_of_simple_roots_regenerates_delta() {
        // Independent recomputation: close the simple roots under *all*
        // root reflections rather than just the simple ones.
        for rs in [build(LieFamily::C, 2), build(LieFamily::B, 3), build(LieFamily::G, 2)] {
            let mut set: HashSet<Vec<Rat>> = HashSet::new();
            for a in &rs.simple_roots {
                set.insert(a.clone());
                set.insert(vec_neg(a));
            }
            loop {
                let mut fresh = Vec::new();
                let current: Vec<Vec<Rat>> = set.iter().cloned().collect();
                for alpha in &current {
                    let u = rs.form.mul_vec(alpha);
                    let len = dot(&u, alpha);
                    for beta in &current {
                        let coeff = rat_int(2) * dot(&u, beta) / &len;
                        let image: Vec<Rat> = beta
                            .iter()
                            .zip(alpha)
                            .map(|(b, a)| b - &coeff * a)
                            .collect();
                        if !set.contains(&image) {
                            fresh.push(image);
                        }
                    }
                }
                if fresh.is_empty() {
                    break;
                }
                set.extend(fresh);
            }
            let mut regenerated: Vec<Vec<Rat>> = set.into_iter().collect();
            regenerated.sort();
            assert_eq!(regenerated, rs.roots);
        }
    }

    #[test]
    fn weyl_group_orders_by_bfs() {
        // Closure of the simple reflections under multiplication.
        let order = |rs: &RootSystem| {
            let gens: Vec<RatMat> = rs
                .simple_roots
                .iter()
                .map(|a| rs.weyl_reflection(a).unwrap())
                .collect();
            let mut seen: HashSet<Vec<Rat>> = HashSet::new();
            let id = RatMat::identity(rs.ambient_dim);
            let key =
                |m: &RatMat| -> Vec<Rat> { (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect() };
            seen.insert(key(&id));
            let mut frontier = vec![id];
            while let Some(w) = frontier.pop() {
                for g in &gens {
                    let next = w.mul(g);
                    if seen.insert(key(&next)) {
                        frontier.push(next);
                    }
                }
            }
            seen.len()
        };
        assert_eq!(order(&build(LieFamily::A, 2)), 6);
        assert_eq!(order(&build(LieFamily::C, 2)), 8);
        assert_eq!(order(&build(LieFamily::G, 2)), 12);
    }

    #[test]
    fn json_document_shape() {
        let rs = build(LieFamily::C, 2);
        let doc = rs.to_json();
        assert_eq!(doc["type"], "C2");
        assert_eq!(doc["num_roots"], 8);
        assert_eq!(doc["highest_root"][0], "2");
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), text);
    }
}

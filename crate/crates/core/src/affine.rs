//! The fundamental alcove and the affine Weyl group.
//!
//! With the crate's normalization the closed fundamental alcove is
//!
//! ```text
//! closure(A_0) = { H : alpha_j(H) >= 0 for 1 <= j <= n,  alpha_0(H) <= 1 }
//! ```
//!
//! and the affine Weyl group is generated by the reflections `r_0, .., r_n`
//! across its walls: `r_j(H) = H - alpha_j(H) h_j` for `j >= 1` and
//! `r_0(H) = H - (alpha_0(H) - 1) h_0`. An element is stored as a linear
//! part together with a coroot-lattice translation; since the group acts
//! simply transitively on alcoves, an alcove is represented by the unique
//! element carrying the fundamental one onto it.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{dot, rat_int, vec_add, vec_lerp, zero_vec, Rat};
use crate::matrix::{solve_linear, Mat, RatMat};
use crate::root_system::RootSystem;

/// Default cap on breadth-first group closures. Stabilizers are finite,
/// so hitting the cap signals a bug rather than a big group.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlcoveError {
    #[error("point lies outside the closed fundamental alcove")]
    OutsideAlcove,
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("point is not in the cell of vertex {0}")]
    NotInCell(usize),
    #[error("retraction parameter must lie in [0, 1]")]
    BadParameter,
    #[error("vertex index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
}

/// Element of the affine Weyl group, acting as `H -> linear H + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineIsometry {
    pub linear: RatMat,
    pub translation: Vec<Rat>,
}

impl AffineIsometry {
    pub fn identity(dim: usize) -> Self {
        AffineIsometry {
            linear: RatMat::identity(dim),
            translation: zero_vec(dim),
        }
    }

    pub fn apply(&self, p: &[Rat]) -> Vec<Rat> {
        vec_add(&self.linear.mul_vec(p), &self.translation)
    }

    /// `self` after `other`: `(w1, t1)(w2, t2) = (w1 w2, w1 t2 + t1)`.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: self.linear.mul(&other.linear),
            translation: vec_add(&self.linear.mul_vec(&other.translation), &self.translation),
        }
    }

    pub fn inverse(&self) -> AffineIsometry {
        let inv = self
            .linear
            .inverse()
            .expect("Weyl group linear parts are invertible");
        let t = inv.mul_vec(&self.translation);
        AffineIsometry {
            linear: inv,
            translation: t.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|x| x.is_zero())
            && self.linear == RatMat::identity(self.linear.rows())
    }
}

/// An alcove, named by the unique group element mapping `A_0` onto it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Alcove {
    pub rep: AffineIsometry,
}

impl Alcove {
    /// Whether `p` lies in the closed alcove `rep(closure(A_0))`.
    pub fn closure_contains(&self, rs: &RootSystem, p: &[Rat]) -> bool {
        in_closed_alcove(rs, &self.rep.inverse().apply(p))
    }
}

/// Vertices `v_0 = 0, v_1, .., v_n` of the closed fundamental alcove,
/// solved exactly from `alpha_j(v_k) = 0 (j != k)`, `alpha_0(v_k) = 1`,
/// plus the trace-zero condition in family A. Solved once per root
/// system and cached.
pub fn vertices(rs: &RootSystem) -> &[Vec<Rat>] {
    rs.vertex_cache.get_or_init(|| {
        let n = rs.rank();
        let dim = rs.ambient_dim;
        let mut out = vec![zero_vec(dim)];
        for k in 1..=n {
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            let mut rhs: Vec<Rat> = Vec::new();
            for j in 1..=n {
                if j != k {
                    rows.push(rs.simple_roots[j - 1].clone());
                    rhs.push(Rat::zero());
                }
            }
            rows.push(rs.highest_root.clone());
            rhs.push(Rat::one());
            if dim > n {
                rows.push(vec![Rat::one(); dim]);
                rhs.push(Rat::zero());
            }
            let a = Mat::from_rows(rows);
            let v = solve_linear(&a, &rhs)
                .expect("shapes agree")
                .expect("vertex equations are consistent");
            out.push(v);
        }
        out
    })
}

/// Reflection across the wall `F_k` of the fundamental alcove.
pub fn wall_reflection(rs: &RootSystem, k: usize) -> Result<AffineIsometry, AlcoveError> {
    let n = rs.rank();
    if k > n {
        return Err(AlcoveError::BadIndex { index: k, rank: n });
    }
    if k == 0 {
        let alpha = &rs.highest_root;
        let h = rs.coroot(alpha).expect("highest root is a root");
        let linear = rs.weyl_reflection(alpha).expect("highest root is a root");
        Ok(AffineIsometry {
            linear,
            translation: h,
        })
    } else {
        let alpha = &rs.simple_roots[k - 1];
        Ok(AffineIsometry {
            linear: rs.weyl_reflection(alpha).expect("simple root is a root"),
            translation: zero_vec(rs.ambient_dim),
        })
    }
}

/// All `n + 1` wall reflections, indexed by wall.
pub fn wall_reflections(rs: &RootSystem) -> Vec<AffineIsometry> {
    (0..=rs.rank())
        .map(|k| wall_reflection(rs, k).expect("index in range"))
        .collect()
}

/// Whether `u` satisfies the closed alcove conditions.
pub fn in_closed_alcove(rs: &RootSystem, u: &[Rat]) -> bool {
    rs.simple_roots
        .iter()
        .all(|a| !rs.pair(a, u).is_negative())
        && rs.pair(&rs.highest_root, u) <= Rat::one()
}

/// Whether a point of the closed alcove lies on the wall `F_k`.
pub fn on_face(rs: &RootSystem, k: usize, u: &[Rat]) -> bool {
    if k == 0 {
        rs.pair(&rs.highest_root, u) == Rat::one()
    } else {
        rs.pair(&rs.simple_roots[k - 1], u).is_zero()
    }
}

/// Reduces `u` into the closed fundamental alcove.
///
/// Repeatedly applies the lowest-indexed violated wall reflection; the
/// distance to an interior point strictly decreases at every step and the
/// orbit is discrete, so the loop terminates. Returns the reduced point
/// together with `w` such that `w(reduced) = u`. The reduced point is
/// unique; `w` need not be.
pub fn reduce_to_alcove(rs: &RootSystem, u: &[Rat]) -> (Vec<Rat>, AffineIsometry) {
    let reflections = wall_reflections(rs);
    let mut current = u.to_vec();
    let mut w = AffineIsometry::identity(rs.ambient_dim);
    loop {
        let mut violated = None;
        if rs.pair(&rs.highest_root, &current) > Rat::one() {
            violated = Some(0);
        } else {
            for j in 1..=rs.rank() {
                if rs.pair(&rs.simple_roots[j - 1], &current).is_negative() {
                    violated = Some(j);
                    break;
                }
            }
        }
        match violated {
            None => return (current, w),
            Some(j) => {
                current = reflections[j].apply(&current);
                // Maintain w(current) = u; each reflection is an involution.
                w = w.compose(&reflections[j]);
            }
        }
    }
}

/// Breadth-first closure of a set of generators, in deterministic order.
pub fn closure(
    generators: &[AffineIsometry],
    dim: usize,
    cap: usize,
) -> Result<Vec<AffineIsometry>, AlcoveError> {
    let mut seen: HashSet<AffineIsometry> = HashSet::new();
    let mut elements = vec![AffineIsometry::identity(dim)];
    seen.insert(elements[0].clone());
    let mut cursor = 0;
    while cursor < elements.len() {
        let w = elements[cursor].clone();
        cursor += 1;
        for g in generators {
            let next = w.compose(g);
            if !seen.contains(&next) {
                if elements.len() >= cap {
                    return Err(AlcoveError::CapExceeded(cap));
                }
                seen.insert(next.clone());
                elements.push(next);
            }
        }
    }
    Ok(elements)
}

/// A finite reflection subgroup of the affine Weyl group.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    pub generators: Vec<AffineIsometry>,
    pub elements: Vec<AffineIsometry>,
}

impl StabilizerGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &AffineIsometry) -> bool {
        self.elements.contains(w)
    }
}

/// Stabilizer of the vertex `v_k`, generated by the wall reflections that
/// fix it, i.e. all `r_j` with `j != k`.
pub fn stabilizer(rs: &RootSystem, k: usize) -> Result<StabilizerGroup, AlcoveError> {
    stabilizer_with_cap(rs, k, DEFAULT_CLOSURE_CAP)
}

pub fn stabilizer_with_cap(
    rs: &RootSystem,
    k: usize,
    cap: usize,
) -> Result<StabilizerGroup, AlcoveError> {
    let n = rs.rank();
    if k > n {
        return Err(AlcoveError::BadIndex { index: k, rank: n });
    }
    let generators: Vec<AffineIsometry> = (0..=n)
        .filter(|&j| j != k)
        .map(|j| wall_reflection(rs, j).expect("index in range"))
        .collect();
    let elements = closure(&generators, rs.ambient_dim, cap)?;
    Ok(StabilizerGroup {
        generators,
        elements,
    })
}

/// Stabilizer of an arbitrary point of the closed alcove, generated by
/// the reflections across the walls containing it.
pub fn point_stabilizer(rs: &RootSystem, u: &[Rat]) -> Result<StabilizerGroup, AlcoveError> {
    if !in_closed_alcove(rs, u) {
        return Err(AlcoveError::OutsideAlcove);
    }
    let generators: Vec<AffineIsometry> = (0..=rs.rank())
        .filter(|&j| on_face(rs, j, u))
        .map(|j| wall_reflection(rs, j).expect("index in range"))
        .collect();
    let elements = closure(&generators, rs.ambient_dim, DEFAULT_CLOSURE_CAP)?;
    Ok(StabilizerGroup {
        generators,
        elements,
    })
}

/// The alcoves whose closure contains `v_k`: the stabilizer orbit of the
/// fundamental alcove.
pub fn alcoves_at_vertex(rs: &RootSystem, k: usize) -> Result<Vec<Alcove>, AlcoveError> {
    let stab = stabilizer(rs, k)?;
    Ok(stab
        .elements
        .into_iter()
        .map(|rep| Alcove { rep })
        .collect())
}

/// Orbit of the point `p` under the group generated by `generators`.
pub(crate) fn point_orbit(generators: &[AffineIsometry], p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut orbit = vec![p.to_vec()];
    seen.insert(p.to_vec());
    let mut cursor = 0;
    while cursor < orbit.len() {
        let q = orbit[cursor].clone();
        cursor += 1;
        for g in generators {
            let next = g.apply(&q);
            if seen.insert(next.clone()) {
                orbit.push(next);
            }
        }
    }
    orbit
}

/// Whether `target` lies in the orbit of `p` under the group generated
/// by `generators`, stopping as soon as it is found.
pub(crate) fn orbit_contains(
    generators: &[AffineIsometry],
    p: &[Rat],
    target: &[Rat],
) -> bool {
    if p == target {
        return true;
    }
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut frontier = vec![p.to_vec()];
    seen.insert(p.to_vec());
    while let Some(q) = frontier.pop() {
        for g in generators {
            let next = g.apply(&q);
            if next == target {
                return true;
            }
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    false
}

/// Squared distance under the invariant form on the torus algebra. The
/// point coordinates pair with root coordinates through the identity, so
/// the metric on points is the inverse of the stored dual form.
pub(crate) fn point_distance_sq(rs: &RootSystem, a: &[Rat], b: &[Rat]) -> Rat {
    let diff = crate::exact::vec_sub(a, b);
    // Cache the inverse form alongside the vertices.
    let inv = rs
        .form_inverse_cache
        .get_or_init(|| rs.form.inverse().expect("invariant form is nondegenerate"));
    crate::exact::dot(&inv.mul_vec(&diff), &diff)
}

/// Membership in the cell `C_k`, the union over the stabilizer of `v_k`
/// of the translates of the closed alcove minus its wall opposite `v_k`.
///
/// Decision procedure: reduce `u` to the closed alcove as `(ur, w)`. The
/// reduced point is unique, so any element carrying `ur` to `u` differs
/// from `w` by a point stabilizer element `s`; `u` lies in `C_k` exactly
/// when `ur` avoids `F_k` and some `w s` fixes `v_k`, i.e. when
/// `w^{-1}(v_k)` lies in the stabilizer orbit of `v_k`.
pub fn in_cell(rs: &RootSystem, k: usize, u: &[Rat]) -> bool {
    let (ur, w) = reduce_to_alcove(rs, u);
    if on_face(rs, k, &ur) {
        return false;
    }
    let vk = &vertices(rs)[k];
    let target = w.inverse().apply(vk);
    if &target == vk {
        return true;
    }
    // The stabilizer of the reduced point acts by isometries fixing it,
    // so matching distances are a necessary condition; this settles most
    // negative queries without the orbit search.
    if point_distance_sq(rs, &ur, vk) != point_distance_sq(rs, &ur, &target) {
        return false;
    }
    let gens: Vec<AffineIsometry> = (0..=rs.rank())
        .filter(|&j| on_face(rs, j, &ur))
        .map(|j| wall_reflection(rs, j).expect("index in range"))
        .collect();
    orbit_contains(&gens, vk, &target)
}

/// Straight-line retraction of a cell point toward its vertex:
/// `(1 - s) u + s v_k`.
pub fn retract_torus(
    rs: &RootSystem,
    k: usize,
    u: &[Rat],
    s: &Rat,
) -> Result<Vec<Rat>, AlcoveError> {
    if s.is_negative() || s > &Rat::one() {
        return Err(AlcoveError::BadParameter);
    }
    if !in_cell(rs, k, u) {
        return Err(AlcoveError::NotInCell(k));
    }
    let vk = &vertices(rs)[k];
    Ok(vec_lerp(u, vk, s))
}

/// All elements of word length at most `radius` in the wall reflections.
pub fn weyl_ball(rs: &RootSystem, radius: usize, cap: usize) -> Result<Vec<AffineIsometry>, AlcoveError> {
    let gens = wall_reflections(rs);
    let mut seen: HashSet<AffineIsometry> = HashSet::new();
    let mut elements = vec![AffineIsometry::identity(rs.ambient_dim)];
    seen.insert(elements[0].clone());
    let mut layer_start = 0;
    for _ in 0..radius {
        let layer_end = elements.len();
        for i in layer_start..layer_end {
            let w = elements[i].clone();
            for g in &gens {
                let next = w.compose(g);
                if !seen.contains(&next) {
                    if elements.len() >= cap {
                        return Err(AlcoveError::CapExceeded(cap));
                    }
                    seen.insert(next.clone());
                    elements.push(next);
                }
            }
        }
        if elements.len() == layer_end {
            break;
        }
        layer_start = layer_end;
    }
    Ok(elements)
}

/// Barycenter of the wall `F_j` (the face opposite `v_j`).
pub fn face_barycenter(rs: &RootSystem, j: usize) -> Vec<Rat> {
    let verts = vertices(rs);
    let n = rs.rank();
    let mut sum = zero_vec(rs.ambient_dim);
    for (i, v) in verts.iter().enumerate() {
        if i != j {
            sum = vec_add(&sum, v);
        }
    }
    let scale = Rat::new(rat_int(1).numer().clone(), rat_int(n as i64).numer().clone());
    sum.iter().map(|x| x * &scale).collect()
}

/// Barycenter of the closed alcove.
pub fn alcove_barycenter(rs: &RootSystem) -> Vec<Rat> {
    let verts = vertices(rs);
    let mut sum = zero_vec(rs.ambient_dim);
    for v in verts {
        sum = vec_add(&sum, v);
    }
    let scale = Rat::new(
        rat_int(1).numer().clone(),
        rat_int(verts.len() as i64).numer().clone(),
    );
    sum.iter().map(|x| x * &scale).collect()
}

/// The affine functional of the wall `F_j`, returned as `(alpha, c)` with
/// the wall being `alpha(H) = c`; vanishing of `alpha(H) - c` defines it.
pub fn wall_equation(rs: &RootSystem, j: usize) -> (Vec<Rat>, Rat) {
    if j == 0 {
        (rs.highest_root.clone(), Rat::one())
    } else {
        (rs.simple_roots[j - 1].clone(), Rat::zero())
    }
}

/// Whether the point `p` satisfies the equation of the wall `w(F_j)`.
pub fn image_wall_contains(rs: &RootSystem, w: &AffineIsometry, j: usize, p: &[Rat]) -> bool {
    let (alpha, c) = wall_equation(rs, j);
    dot(&alpha, &w.inverse().apply(p)) == c
}

//! Seeded brute-force verification campaigns.
//!
//! Each check is a finite certificate at a chosen scale, not a proof:
//! alcove combinatorics are enumerated exhaustively, while statements
//! about cells, retractions, and covers are tested on pseudo-random
//! rational points drawn from a deterministic generator. Failed checks
//! carry a counterexample holding the exact inputs, and re-running the
//! counterexample through the underlying operation reproduces the
//! failure.
//!
//! The alcove-ball enumeration works in scaled integer arithmetic: in
//! the coordinate systems of this crate every wall reflection has an
//! integer matrix and an integer coroot translation, and the vertices
//! have bounded denominators, so clearing one common denominator turns
//! the whole breadth-first search into `i64` work. Exactness is
//! preserved; the conversion asserts integrality at construction, and a
//! test cross-checks the integer path against the rational one.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::affine::{
    face_barycenter, image_wall_contains, in_cell, on_face, stabilizer, vertices, weyl_ball,
    AffineIsometry, Alcove, AlcoveError,
};
use crate::clifford::{
    rotor_from_circle_point, so_block_rotation, spin_exp_block, spin_vertex_element, vector_action,
};
use crate::exact::{rat, rat_as_int, rat_int, rat_str, vec_lerp, Rat};
use crate::grassmann::{in_x, in_y, retract, GrassPoint};
use crate::matrix::{Mat, RatMat};
use crate::orbits::classify_orbit;
use crate::quaternion::Quaternion;
use crate::root_system::{LieFamily, LieType, RootSystem};

/// Cap on the number of alcoves visited by the ball enumeration.
pub const BALL_CAP: usize = 4_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("check {check} is not supported for {lie_type}")]
    UnsupportedCheck { check: CheckKind, lie_type: LieType },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Alcove(#[from] AlcoveError),
    #[error("alcove enumeration exceeded the cap of {0} elements")]
    EnumerationCap(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum CheckKind {
    Lemma33,
    Prop34b,
    Prop34c,
    Prop34d,
    Thm41WellDef,
    GrassCover,
    SpinDoubleCover,
    DimIdentity,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Lemma33,
        CheckKind::Prop34b,
        CheckKind::Prop34c,
        CheckKind::Prop34d,
        CheckKind::Thm41WellDef,
        CheckKind::GrassCover,
        CheckKind::SpinDoubleCover,
        CheckKind::DimIdentity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Lemma33 => "lemma33",
            CheckKind::Prop34b => "prop34b",
            CheckKind::Prop34c => "prop34c",
            CheckKind::Prop34d => "prop34d",
            CheckKind::Thm41WellDef => "thm41_welldef",
            CheckKind::GrassCover => "grass_cover",
            CheckKind::SpinDoubleCover => "spin_double_cover",
            CheckKind::DimIdentity => "dim_identity",
        }
    }

    pub fn from_str_name(s: &str) -> Option<CheckKind> {
        CheckKind::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    pub fn supports(self, family: LieFamily) -> bool {
        match self {
            CheckKind::GrassCover => family == LieFamily::C,
            CheckKind::SpinDoubleCover => matches!(family, LieFamily::B | LieFamily::D),
            CheckKind::DimIdentity => matches!(
                family,
                LieFamily::A | LieFamily::B | LieFamily::C | LieFamily::D
            ),
            _ => true,
        }
    }

    /// The checks applicable to a given type, in canonical order.
    ///
    /// The enumeration-heavy alcove checks are included only at small
    /// rank, where they finish in seconds: the ball of `lemma33` grows
    /// out of reach beyond rank 3, and `prop34b` walks every wall of
    /// every stabilizer translate. Both can still be requested
    /// explicitly at any rank.
    pub fn all_for(t: LieType) -> Vec<CheckKind> {
        CheckKind::ALL
            .iter()
            .copied()
            .filter(|c| c.supports(t.family))
            .filter(|c| match c {
                CheckKind::Lemma33 => t.rank <= 3,
                CheckKind::Prop34b => t.rank <= 4,
                _ => true,
            })
            .collect()
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub lie_type: LieType,
    pub checks: Vec<CheckKind>,
    pub seed: u64,
    pub samples: usize,
    pub word_length_bound: usize,
    pub grid_denominator: u64,
}

impl VerifyPlan {
    pub fn new(lie_type: LieType) -> Self {
        VerifyPlan {
            lie_type,
            checks: CheckKind::all_for(lie_type),
            seed: 7,
            samples: 500,
            word_length_bound: 8,
            grid_denominator: 12,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.lie_type.to_string(),
            "checks": self.checks.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            "seed": self.seed,
            "samples": self.samples,
            "word_length_bound": self.word_length_bound,
            "grid_denominator": self.grid_denominator,
        })
    }
}

/// Exact inputs of a failed instance; enough to re-run the underlying
/// operation on its own.
#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample {
    /// An alcove in exactly one of: the stabilizer orbit, the set of
    /// alcoves whose closure contains the vertex.
    Lemma33 {
        k: usize,
        element: AffineIsometry,
        in_stabilizer: bool,
    },
    /// A wall sample lying in the cell whose wall misses the vertex.
    WallSample {
        k: usize,
        element: AffineIsometry,
        wall: usize,
        sample: Vec<Rat>,
    },
    /// A group element moving a cell point within the cell but moving
    /// the vertex, or breaking the retraction segment at parameter `s`.
    CellEquivariance {
        k: usize,
        u1: Vec<Rat>,
        witness: AffineIsometry,
        s: Option<Rat>,
    },
    /// A grid point covered by no cell.
    GridPoint { point: Vec<Rat> },
    /// An orbit dimension differing from the closed form.
    DimIdentity { k: usize, expected: u64, actual: u64 },
    /// A Grassmannian point violating the cover or retraction claims.
    GrassCover {
        n: usize,
        k: usize,
        entries: Vec<Vec<Quaternion>>,
        failure: String,
    },
    /// A spin vertex element violating the double-cover claims.
    SpinCover {
        family: LieFamily,
        n: usize,
        k: usize,
        failure: String,
    },
}

fn affine_to_json(w: &AffineIsometry) -> Value {
    json!({
        "linear": (0..w.linear.rows())
            .map(|i| w.linear.row(i).iter().map(rat_str).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "translation": w.translation.iter().map(rat_str).collect::<Vec<_>>(),
    })
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        match self {
            Counterexample::Lemma33 {
                k,
                element,
                in_stabilizer,
            } => json!({
                "kind": "lemma33",
                "k": k,
                "element": affine_to_json(element),
                "in_stabilizer": in_stabilizer,
            }),
            Counterexample::WallSample {
                k,
                element,
                wall,
                sample,
            } => json!({
                "kind": "wall_sample",
                "k": k,
                "element": affine_to_json(element),
                "wall": wall,
                "sample": sample.iter().map(rat_str).collect::<Vec<_>>(),
            }),
            Counterexample::CellEquivariance { k, u1, witness, s } => json!({
                "kind": "cell_equivariance",
                "k": k,
                "u1": u1.iter().map(rat_str).collect::<Vec<_>>(),
                "witness": affine_to_json(witness),
                "s": s.as_ref().map(rat_str),
            }),
            Counterexample::GridPoint { point } => json!({
                "kind": "grid_point",
                "point": point.iter().map(rat_str).collect::<Vec<_>>(),
            }),
            Counterexample::DimIdentity { k, expected, actual } => json!({
                "kind": "dim_identity",
                "k": k,
                "expected": expected,
                "actual": actual,
            }),
            Counterexample::GrassCover {
                n,
                k,
                entries,
                failure,
            } => json!({
                "kind": "grass_cover",
                "n": n,
                "k": k,
                "entries": entries
                    .iter()
                    .map(|row| row
                        .iter()
                        .map(|q| vec![rat_str(&q.a), rat_str(&q.b), rat_str(&q.c), rat_str(&q.d)])
                        .collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "failure": failure,
            }),
            Counterexample::SpinCover { family, n, k, failure } => json!({
                "kind": "spin_cover",
                "family": family.letter().to_string(),
                "n": n,
                "k": k,
                "failure": failure,
            }),
        }
    }

    /// Re-runs the failing instance through the public operations. Returns
    /// true when the failure is genuine.
    pub fn reproduces(&self, rs: &RootSystem) -> bool {
        match self {
            Counterexample::Lemma33 {
                k,
                element,
                in_stabilizer,
            } => {
                let vk = &vertices(rs)[*k];
                let contains = Alcove {
                    rep: element.clone(),
                }
                .closure_contains(rs, vk);
                let in_stab = match stabilizer(rs, *k) {
                    Ok(stab) => stab.contains(element),
                    Err(_) => return false,
                };
                in_stab == *in_stabilizer && contains != in_stab
            }
            Counterexample::WallSample {
                k,
                element,
                wall,
                sample,
            } => {
                let vk = &vertices(rs)[*k];
                in_cell(rs, *k, &element.apply(sample))
                    && !image_wall_contains(rs, element, *wall, vk)
            }
            Counterexample::CellEquivariance { k, u1, witness, s } => {
                let vk = &vertices(rs)[*k];
                if !in_cell(rs, *k, u1) || !in_cell(rs, *k, &witness.apply(u1)) {
                    return false;
                }
                match s {
                    None => witness.apply(vk) != *vk,
                    Some(s) => {
                        witness.apply(&vec_lerp(u1, vk, s))
                            != vec_lerp(&witness.apply(u1), vk, s)
                    }
                }
            }
            Counterexample::GridPoint { point } => {
                (0..=rs.rank()).all(|k| !in_cell(rs, k, point))
            }
            Counterexample::DimIdentity { k, expected, .. } => {
                classify_orbit(rs, *k).orbit_dim as u64 != *expected
            }
            Counterexample::GrassCover {
                k, entries, failure, ..
            } => {
                let rep = Mat::from_rows(entries.clone());
                let Ok(point) = GrassPoint::new(rep) else {
                    return false;
                };
                match failure.as_str() {
                    "cover" => (1..=k + 1).all(|j| in_x(j, &point).unwrap_or(false)),
                    "disjoint" => {
                        in_x(1, &point).unwrap_or(false) && in_x(2, &point).unwrap_or(false)
                    }
                    _ => {
                        // Retraction failure at the recorded j (encoded in
                        // the tag as "retract:j").
                        let j: usize = failure
                            .strip_prefix("retract:")
                            .and_then(|t| t.parse().ok())
                            .unwrap_or(0);
                        if j == 0 {
                            return false;
                        }
                        retraction_fails(j, &point)
                    }
                }
            }
            Counterexample::SpinCover { family, n, k, failure } => {
                spin_cover_instance_fails(*family, *n, *k, failure)
            }
        }
    }
}

fn retraction_fails(j: usize, point: &GrassPoint) -> bool {
    for s in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        if retract(j, point, &s).is_err() {
            return true;
        }
    }
    match retract(j, point, &Rat::one()) {
        Ok(end) => !in_y(j, &end).unwrap_or(false),
        Err(_) => true,
    }
}

fn spin_cover_instance_fails(family: LieFamily, n: usize, k: usize, failure: &str) -> bool {
    let Ok(g) = spin_vertex_element(family, n, k) else {
        return false;
    };
    let m = g.m;
    match failure {
        "block_form" => {
            let Ok(action) = vector_action(&g) else {
                return true;
            };
            action != expected_vertex_action(family, n, k, m)
        }
        "fiber" => {
            let neg = g.neg();
            if g == neg {
                return true;
            }
            match (vector_action(&g), vector_action(&neg)) {
                (Ok(a), Ok(b)) => a != b,
                _ => true,
            }
        }
        _ => false,
    }
}

fn expected_vertex_action(family: LieFamily, n: usize, k: usize, m: usize) -> RatMat {
    let minus_block = if family == LieFamily::D && k == n - 1 && k >= 2 {
        2 * n
    } else if k == 1 || k == 0 {
        0
    } else {
        2 * k
    };
    Mat::from_fn(m, m, |i, j| {
        if i != j {
            Rat::zero()
        } else if i < minus_block {
            rat_int(-1)
        } else {
            Rat::one()
        }
    })
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check: CheckKind,
    pub passed: bool,
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
    pub duration: Duration,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub plan: VerifyPlan,
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    /// Canonical JSON form. Wall-clock durations are deliberately left
    /// out so that identical plans serialize byte-for-byte identically.
    pub fn to_json(&self) -> Value {
        json!({
            "plan": self.plan.to_json(),
            "results": self.results.iter().map(|r| json!({
                "check": r.check.as_str(),
                "passed": r.passed,
                "instances": r.instances,
                "counterexample": r.counterexample.as_ref().map(|c| c.to_json()),
            })).collect::<Vec<_>>(),
            "all_passed": self.all_passed(),
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verification of {} (seed {})",
            self.plan.lie_type, self.plan.seed
        )?;
        writeln!(
            f,
            "{:<18} {:>8} {:>10} {:>9}",
            "check", "status", "instances", "time"
        )?;
        for r in &self.results {
            writeln!(
                f,
                "{:<18} {:>8} {:>10} {:>8.1?}",
                r.check.as_str(),
                if r.passed { "pass" } else { "FAIL" },
                r.instances,
                r.duration,
            )?;
            if let Some(ce) = &r.counterexample {
                writeln!(f, "  counterexample: {}", ce.to_json())?;
            }
        }
        Ok(())
    }
}

/// Runs every check of the plan, in plan order.
pub fn run(plan: &VerifyPlan) -> Result<VerifyReport, VerifyError> {
    if plan.samples == 0 {
        return Err(VerifyError::InvalidPlan("samples must be positive".into()));
    }
    if plan.word_length_bound == 0 {
        return Err(VerifyError::InvalidPlan(
            "word length bound must be at least 1".into(),
        ));
    }
    if plan.grid_denominator == 0 {
        return Err(VerifyError::InvalidPlan(
            "grid denominator must be positive".into(),
        ));
    }
    for check in &plan.checks {
        if !check.supports(plan.lie_type.family) {
            return Err(VerifyError::UnsupportedCheck {
                check: *check,
                lie_type: plan.lie_type,
            });
        }
    }
    let rs = RootSystem::build(plan.lie_type)
        .map_err(|e| VerifyError::InvalidPlan(e.to_string()))?;

    let mut results = Vec::new();
    for check in &plan.checks {
        // Each check draws from its own stream so results do not depend
        // on which other checks run.
        let mut rng =
            ChaCha8Rng::seed_from_u64(plan.seed ^ (*check as u64).wrapping_mul(0x9E3779B97F4A7C15));
        let start = Instant::now();
        let (passed, instances, counterexample) = match check {
            CheckKind::Lemma33 => check_lemma33(&rs)?,
            CheckKind::Prop34b => check_prop34b(&rs)?,
            CheckKind::Prop34c => check_prop34c(&rs, plan, &mut rng)?,
            CheckKind::Prop34d => check_prop34d(&rs, plan.grid_denominator)?,
            CheckKind::Thm41WellDef => check_thm41(&rs, plan, &mut rng)?,
            CheckKind::GrassCover => check_grass_cover(&rs, plan, &mut rng),
            CheckKind::SpinDoubleCover => check_spin_double_cover(&rs),
            CheckKind::DimIdentity => check_dim_identity(&rs),
        };
        results.push(CheckResult {
            check: *check,
            passed,
            instances,
            counterexample,
            duration: start.elapsed(),
        });
    }
    Ok(VerifyReport {
        plan: plan.clone(),
        results,
    })
}

type CheckOutcome = (bool, u64, Option<Counterexample>);

// -------------------------------------------------------------------
// Scaled integer arithmetic for the alcove-ball enumeration.
// -------------------------------------------------------------------

/// Wall data with one common denominator cleared: all wall functionals,
/// coroots, and reflection matrices are integral in the coordinates used
/// here, and alcove vertices live in `(1/den) Z^dim`.
struct ScaledWalls {
    dim: usize,
    den: i64,
    alphas: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    /// Scaled affine offset of each wall: `den` for wall 0, else 0.
    offsets: Vec<i64>,
    lins: Vec<Vec<i64>>,
    trs: Vec<Vec<i64>>,
}

impl ScaledWalls {
    fn new(rs: &RootSystem) -> ScaledWalls {
        let dim = rs.ambient_dim;
        let verts = vertices(rs);
        let mut den: i64 = 1;
        for v in verts {
            for x in v {
                let d = i64::try_from(x.denom().clone()).expect("small denominator");
                den = num_integer::lcm(den, d);
            }
        }
        let mut alphas = Vec::new();
        let mut coroots = Vec::new();
        let mut offsets = Vec::new();
        let mut lins = Vec::new();
        let mut trs = Vec::new();
        for j in 0..=rs.rank() {
            let alpha = if j == 0 {
                rs.highest_root.clone()
            } else {
                rs.simple_roots[j - 1].clone()
            };
            let h = rs.coroot(&alpha).expect("wall roots are roots");
            let a_i: Vec<i64> = alpha.iter().map(rat_as_int).collect();
            let h_i: Vec<i64> = h.iter().map(rat_as_int).collect();
            // Linear part I - h a^T.
            let mut lin = vec![0i64; dim * dim];
            for r in 0..dim {
                for c in 0..dim {
                    lin[r * dim + c] = i64::from(r == c) - h_i[r] * a_i[c];
                }
            }
            let offset = if j == 0 { den } else { 0 };
            let tr: Vec<i64> = h_i.iter().map(|x| x * offset).collect();
            alphas.push(a_i);
            coroots.push(h_i);
            offsets.push(offset);
            lins.push(lin);
            trs.push(tr);
        }
        ScaledWalls {
            dim,
            den,
            alphas,
            coroots,
            offsets,
            lins,
            trs,
        }
    }

    fn scale_point(&self, p: &[Rat]) -> Vec<i64> {
        p.iter()
            .map(|x| rat_as_int(&(x * rat_int(self.den))))
            .collect()
    }

    /// `r_j` applied to a scaled point: `u - (alpha u - offset) h`.
    fn reflect_point(&self, j: usize, u: &[i64]) -> Vec<i64> {
        let a = &self.alphas[j];
        let pairing: i64 = a.iter().zip(u).map(|(x, y)| x * y).sum();
        let coeff = pairing - self.offsets[j];
        u.iter()
            .zip(&self.coroots[j])
            .map(|(x, h)| x - coeff * h)
            .collect()
    }

    fn in_closed_alcove(&self, u: &[i64]) -> bool {
        for (j, a) in self.alphas.iter().enumerate() {
            let pairing: i64 = a.iter().zip(u).map(|(x, y)| x * y).sum();
            if j == 0 {
                if pairing > self.den {
                    return false;
                }
            } else if pairing < 0 {
                return false;
            }
        }
        true
    }

    fn identity_state(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lin = vec![0i64; self.dim * self.dim];
        for i in 0..self.dim {
            lin[i * self.dim + i] = 1;
        }
        (lin, vec![0i64; self.dim])
    }

    /// Right-multiplication by the generator `j`.
    fn compose_gen(&self, lin: &[i64], tr: &[i64], j: usize) -> (Vec<i64>, Vec<i64>) {
        let d = self.dim;
        let gl = &self.lins[j];
        let gt = &self.trs[j];
        let mut nlin = vec![0i64; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = 0i64;
                for t in 0..d {
                    acc += lin[r * d + t] * gl[t * d + c];
                }
                nlin[r * d + c] = acc;
            }
        }
        let mut ntr = tr.to_vec();
        for r in 0..d {
            let mut acc = 0i64;
            for t in 0..d {
                acc += lin[r * d + t] * gt[t];
            }
            ntr[r] += acc;
        }
        (nlin, ntr)
    }

    fn key(&self, lin: &[i64], tr: &[i64]) -> Vec<i32> {
        lin.iter()
            .chain(tr.iter())
            .map(|&x| i32::try_from(x).expect("scaled entries stay small"))
            .collect()
    }

    fn key_of_exact(&self, w: &AffineIsometry) -> Vec<i32> {
        let d = self.dim;
        let mut lin = vec![0i64; d * d];
        for r in 0..d {
            for c in 0..d {
                lin[r * d + c] = rat_as_int(w.linear.at(r, c));
            }
        }
        let tr: Vec<i64> = w
            .translation
            .iter()
            .map(|x| rat_as_int(&(x * rat_int(self.den))))
            .collect();
        self.key(&lin, &tr)
    }

    fn exact_of_key(&self, key: &[i32]) -> AffineIsometry {
        let d = self.dim;
        let linear = Mat::from_fn(d, d, |r, c| rat_int(key[r * d + c] as i64));
        let translation = (0..d)
            .map(|r| rat(key[d * d + r] as i64, self.den))
            .collect();
        AffineIsometry {
            linear,
            translation,
        }
    }
}

/// Lemma about alcoves at a vertex: within the ball of word length twice
/// the stabilizer order, the alcoves whose closed inequalities hold at
/// `v_k` are exactly the stabilizer translates of the fundamental one.
fn check_lemma33(rs: &RootSystem) -> Result<CheckOutcome, VerifyError> {
    let scaled = ScaledWalls::new(rs);
    let verts = vertices(rs);
    let n = rs.rank();
    let mut instances = 0u64;
    for k in 0..=n {
        let stab = stabilizer(rs, k)?;
        let radius = 2 * stab.order();
        let u0 = scaled.scale_point(&verts[k]);
        let (id_lin, id_tr) = scaled.identity_state();
        let id_key = scaled.key(&id_lin, &id_tr);

        let mut visited: HashSet<Vec<i32>> = HashSet::new();
        visited.insert(id_key.clone());
        let mut matches: Vec<Vec<i32>> = Vec::new();
        if scaled.in_closed_alcove(&u0) {
            matches.push(id_key);
        }
        let mut frontier = vec![(id_lin, id_tr, u0)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (lin, tr, u) in &frontier {
                for j in 0..=n {
                    let (nlin, ntr) = scaled.compose_gen(lin, tr, j);
                    let key = scaled.key(&nlin, &ntr);
                    if visited.contains(&key) {
                        continue;
                    }
                    if visited.len() >= BALL_CAP {
                        return Err(VerifyError::EnumerationCap(BALL_CAP));
                    }
                    visited.insert(key.clone());
                    // u tracks w^{-1}(v_k): right multiplication by r_j
                    // prepends r_j to the inverse.
                    let nu = scaled.reflect_point(j, u);
                    if scaled.in_closed_alcove(&nu) {
                        matches.push(key);
                    }
                    next.push((nlin, ntr, nu));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        instances += visited.len() as u64;

        let stab_keys: Vec<Vec<i32>> = stab
            .elements
            .iter()
            .map(|w| scaled.key_of_exact(w))
            .collect();
        let stab_set: HashSet<&Vec<i32>> = stab_keys.iter().collect();
        let match_set: HashSet<&Vec<i32>> = matches.iter().collect();
        for key in &stab_keys {
            if !match_set.contains(key) {
                return Ok((
                    false,
                    instances,
                    Some(Counterexample::Lemma33 {
                        k,
                        element: scaled.exact_of_key(key),
                        in_stabilizer: true,
                    }),
                ));
            }
        }
        for key in &matches {
            if !stab_set.contains(key) {
                return Ok((
                    false,
                    instances,
                    Some(Counterexample::Lemma33 {
                        k,
                        element: scaled.exact_of_key(key),
                        in_stabilizer: false,
                    }),
                ));
            }
        }
    }
    Ok((true, instances, None))
}

/// Walls meeting a cell contain its vertex, tested on exact points of
/// each wall of each alcove at the vertex: the wall barycenter and its
/// midpoints toward the wall vertices.
fn check_prop34b(rs: &RootSystem) -> Result<CheckOutcome, VerifyError> {
    let n = rs.rank();
    let verts = vertices(rs);
    let mut instances = 0u64;
    for k in 0..=n {
        let stab = stabilizer(rs, k)?;
        for w in &stab.elements {
            for wall in 0..=n {
                let bary = face_barycenter(rs, wall);
                let mut samples = vec![bary.clone()];
                for (i, v) in verts.iter().enumerate() {
                    if i != wall {
                        samples.push(vec_lerp(&bary, v, &rat(1, 2)));
                    }
                }
                for p in samples {
                    let moved = w.apply(&p);
                    instances += 1;
                    if in_cell(rs, k, &moved) && !image_wall_contains(rs, w, wall, &verts[k]) {
                        return Ok((
                            false,
                            instances,
                            Some(Counterexample::WallSample {
                                k,
                                element: w.clone(),
                                wall,
                                sample: p,
                            }),
                        ));
                    }
                }
            }
        }
    }
    Ok((true, instances, None))
}

/// Draws barycentric weights over the alcove vertices summing to the
/// grid denominator. Boundary-heavy samples zero out some weights since
/// the delicate cases sit on faces.
fn sample_weights<R: Rng>(
    count: usize,
    denom: u64,
    require_positive: Option<usize>,
    rng: &mut R,
) -> Vec<u64> {
    let mut weights = vec![0u64; count];
    let mut remaining = denom;
    if let Some(k) = require_positive {
        weights[k] = 1;
        remaining -= 1;
    }
    let boundary_heavy = rng.gen_range(0..4) == 0;
    let mut allowed: Vec<usize> = (0..count).collect();
    if boundary_heavy && count > 1 {
        let excluded = rng.gen_range(1..count);
        for _ in 0..excluded {
            if allowed.len() <= 1 {
                break;
            }
            let idx = rng.gen_range(0..allowed.len());
            if Some(allowed[idx]) != require_positive {
                allowed.remove(idx);
            }
        }
    }
    for _ in 0..remaining {
        let slot = allowed[rng.gen_range(0..allowed.len())];
        weights[slot] += 1;
    }
    weights
}

fn weights_to_point(rs: &RootSystem, verts: &[Vec<Rat>], weights: &[u64], denom: u64) -> Vec<Rat> {
    let mut p = crate::exact::zero_vec(rs.ambient_dim);
    for (w, v) in weights.iter().zip(verts) {
        if *w == 0 {
            continue;
        }
        let c = rat(*w as i64, denom as i64);
        for (x, y) in p.iter_mut().zip(v) {
            *x += &c * y;
        }
    }
    p
}

/// Fast cell-membership for points of the form `w(p)` with `p` in the
/// closed alcove: the reduction of `w(p)` is `p` itself, so membership
/// only asks whether `w^{-1}(v_k)` lies in the stabilizer orbit of
/// `v_k`. Equivalent to the public `in_cell`, which is cross-checked in
/// the tests.
struct CellTester {
    base_off_face: bool,
    vk: Vec<Rat>,
    vertex_distance: Rat,
    base: Vec<Rat>,
    generators: Vec<AffineIsometry>,
    orbit: std::cell::OnceCell<HashSet<Vec<Rat>>>,
}

impl CellTester {
    fn new(rs: &RootSystem, k: usize, p: &[Rat]) -> Result<CellTester, VerifyError> {
        if !crate::affine::in_closed_alcove(rs, p) {
            return Err(VerifyError::Alcove(AlcoveError::OutsideAlcove));
        }
        let generators: Vec<AffineIsometry> = (0..=rs.rank())
            .filter(|&j| on_face(rs, j, p))
            .map(|j| crate::affine::wall_reflection(rs, j).expect("index in range"))
            .collect();
        let vk = vertices(rs)[k].clone();
        Ok(CellTester {
            base_off_face: !on_face(rs, k, p),
            vertex_distance: crate::affine::point_distance_sq(rs, p, &vk),
            vk,
            base: p.to_vec(),
            generators,
            orbit: std::cell::OnceCell::new(),
        })
    }

    /// Whether `w(p)` lies in the cell, for `w` with known inverse; the
    /// argument is `w^{-1}(v_k)`. The stabilizer orbit of the vertex is
    /// built at most once, and only when the isometry-invariant distance
    /// to the base point matches.
    fn contains_image(&self, rs: &RootSystem, w_inverse_of_vk: &[Rat]) -> bool {
        if !self.base_off_face {
            return false;
        }
        if w_inverse_of_vk == self.vk.as_slice() {
            return true;
        }
        if crate::affine::point_distance_sq(rs, &self.base, w_inverse_of_vk)
            != self.vertex_distance
        {
            return false;
        }
        let orbit = self.orbit.get_or_init(|| {
            crate::affine::point_orbit(&self.generators, &self.vk)
                .into_iter()
                .collect()
        });
        orbit.contains(w_inverse_of_vk)
    }
}

/// A pseudo-random word in the given generators, of length up to `max_len`.
fn random_word<R: Rng>(
    generators: &[AffineIsometry],
    dim: usize,
    max_len: usize,
    rng: &mut R,
) -> AffineIsometry {
    let len = rng.gen_range(0..=max_len);
    let mut w = AffineIsometry::identity(dim);
    for _ in 0..len {
        w = w.compose(&generators[rng.gen_range(0..generators.len())]);
    }
    w
}

/// The wall reflections fixing `v_k`, i.e. all but the one opposite it.
fn vertex_stabilizer_generators(rs: &RootSystem, k: usize) -> Vec<AffineIsometry> {
    (0..=rs.rank())
        .filter(|&j| j != k)
        .map(|j| crate::affine::wall_reflection(rs, j).expect("index in range"))
        .collect()
}

/// Cell equivariance: group elements moving one cell point to another
/// fix the vertex. Enumerates the whole ball of the given word length
/// for each sampled point.
fn check_prop34c(
    rs: &RootSystem,
    plan: &VerifyPlan,
    rng: &mut ChaCha8Rng,
) -> Result<CheckOutcome, VerifyError> {
    let n = rs.rank();
    let verts = vertices(rs);
    let ball = weyl_ball(rs, plan.word_length_bound, BALL_CAP)
        .map_err(VerifyError::from)?;
    let ball_inv: Vec<AffineIsometry> = ball.iter().map(|w| w.inverse()).collect();
    let mut instances = 0u64;
    for i in 0..plan.samples {
        let k = i % (n + 1);
        let weights = sample_weights(n + 1, plan.grid_denominator, Some(k), rng);
        let p = weights_to_point(rs, verts, &weights, plan.grid_denominator);
        let stab_gens = vertex_stabilizer_generators(rs, k);
        let w0 = random_word(&stab_gens, rs.ambient_dim, 2 * plan.word_length_bound, rng);
        let u1 = w0.apply(&p);
        let tester = CellTester::new(rs, k, &p)?;
        debug_assert!(in_cell(rs, k, &u1));
        let w0_inv = w0.inverse();
        for (what, what_inv) in ball.iter().zip(&ball_inv) {
            let target = w0_inv.apply(&what_inv.apply(&verts[k]));
            if tester.contains_image(rs, &target) {
                instances += 1;
                if what.apply(&verts[k]) != verts[k] {
                    return Ok((
                        false,
                        instances,
                        Some(Counterexample::CellEquivariance {
                            k,
                            u1,
                            witness: what.clone(),
                            s: None,
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, instances, None))
}

/// The closed alcove is covered by the cells: every barycentric grid
/// point lies in at least one.
fn check_prop34d(rs: &RootSystem, denom: u64) -> Result<CheckOutcome, VerifyError> {
    let n = rs.rank();
    let verts = vertices(rs);
    let mut instances = 0u64;
    let mut weights = vec![0u64; n + 1];
    let mut failure = None;
    enumerate_compositions(denom, n + 1, &mut weights, 0, &mut |w| {
        if failure.is_some() {
            return;
        }
        instances += 1;
        let p = weights_to_point(rs, verts, w, denom);
        if !(0..=n).any(|k| in_cell(rs, k, &p)) {
            failure = Some(Counterexample::GridPoint { point: p });
        }
    });
    Ok((failure.is_none(), instances, failure))
}

fn enumerate_compositions(
    total: u64,
    slots: usize,
    scratch: &mut Vec<u64>,
    index: usize,
    f: &mut impl FnMut(&[u64]),
) {
    if index == slots - 1 {
        scratch[index] = total;
        f(scratch);
        return;
    }
    for v in 0..=total {
        scratch[index] = v;
        enumerate_compositions(total - v, slots, scratch, index + 1, f);
    }
}

/// Well-definedness of the retraction at torus level: any group element
/// matching two cell points fixes the vertex and intertwines the whole
/// retraction segment.
pub fn thm41_welldef_check(
    rs: &RootSystem,
    k: usize,
    trials: usize,
    word_length_bound: usize,
    grid_denominator: u64,
    rng: &mut ChaCha8Rng,
) -> Result<CheckOutcome, VerifyError> {
    let n = rs.rank();
    let verts = vertices(rs);
    let gens = crate::affine::wall_reflections(rs);
    let stab_gens = vertex_stabilizer_generators(rs, k);
    let svals = [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)];
    let mut instances = 0u64;
    for _ in 0..trials {
        let weights = sample_weights(n + 1, grid_denominator, Some(k), rng);
        let p = weights_to_point(rs, verts, &weights, grid_denominator);
        let w0 = random_word(&stab_gens, rs.ambient_dim, 2 * word_length_bound, rng);
        let u1 = w0.apply(&p);
        let tester = CellTester::new(rs, k, &p)?;
        let w0_inv = w0.inverse();

        // Half the draws are free words, half words in the stabilizer
        // generators so that in-cell hits actually occur.
        let what = if rng.gen_bool(0.5) {
            random_word(&gens, rs.ambient_dim, word_length_bound, rng)
        } else {
            random_word(&stab_gens, rs.ambient_dim, word_length_bound, rng)
        };
        let target = w0_inv.apply(&what.inverse().apply(&verts[k]));
        if !tester.contains_image(rs, &target) {
            continue;
        }
        instances += 1;
        if what.apply(&verts[k]) != verts[k] {
            return Ok((
                false,
                instances,
                Some(Counterexample::CellEquivariance {
                    k,
                    u1,
                    witness: what,
                    s: None,
                }),
            ));
        }
        let wu1 = what.apply(&u1);
        for s in &svals {
            if what.apply(&vec_lerp(&u1, &verts[k], s)) != vec_lerp(&wu1, &verts[k], s) {
                return Ok((
                    false,
                    instances,
                    Some(Counterexample::CellEquivariance {
                        k,
                        u1,
                        witness: what,
                        s: Some(s.clone()),
                    }),
                ));
            }
        }
    }
    Ok((true, instances, None))
}

fn check_thm41(
    rs: &RootSystem,
    plan: &VerifyPlan,
    rng: &mut ChaCha8Rng,
) -> Result<CheckOutcome, VerifyError> {
    let n = rs.rank();
    let per_k = plan.samples / (n + 1) + 1;
    let mut instances = 0u64;
    for k in 0..=n {
        let (ok, count, ce) = thm41_welldef_check(
            rs,
            k,
            per_k,
            plan.word_length_bound,
            plan.grid_denominator,
            rng,
        )?;
        instances += count;
        if !ok {
            return Ok((false, instances, ce));
        }
    }
    Ok((true, instances, None))
}

/// Orbit dimensions against the closed forms for the classical families.
fn check_dim_identity(rs: &RootSystem) -> CheckOutcome {
    let n = rs.rank();
    let mut instances = 0u64;
    for k in 0..=n {
        let orbit = classify_orbit(rs, k);
        let expected: Option<u64> = match rs.lie_type.family {
            LieFamily::A => Some(0),
            LieFamily::C => {
                if k == 0 || k == n {
                    Some(0)
                } else {
                    Some(4 * k as u64 * (n - k) as u64)
                }
            }
            LieFamily::B => {
                if k >= 2 {
                    Some(2 * k as u64 * (2 * n + 1 - 2 * k) as u64)
                } else {
                    Some(0)
                }
            }
            LieFamily::D => {
                if orbit.is_central {
                    Some(0)
                } else {
                    Some(2 * k as u64 * (2 * n - 2 * k) as u64)
                }
            }
            _ => None,
        };
        let Some(expected) = expected else { continue };
        instances += 1;
        if orbit.orbit_dim as u64 != expected {
            return (
                false,
                instances,
                Some(Counterexample::DimIdentity {
                    k,
                    expected,
                    actual: orbit.orbit_dim as u64,
                }),
            );
        }
    }
    (true, instances, None)
}

fn random_grass_point<R: Rng>(n: usize, k: usize, denom: u64, rng: &mut R) -> GrassPoint {
    let d = denom.min(4) as i64;
    loop {
        let rep = Mat::from_fn(n, k, |_, _| {
            Quaternion::new(
                rat(rng.gen_range(-3..4), rng.gen_range(1..=d)),
                rat(rng.gen_range(-3..4), rng.gen_range(1..=d)),
                rat(rng.gen_range(-3..4), rng.gen_range(1..=d)),
                rat(rng.gen_range(-3..4), rng.gen_range(1..=d)),
            )
        });
        if let Ok(p) = GrassPoint::new(rep) {
            return p;
        }
    }
}

fn grass_entries(p: &GrassPoint) -> Vec<Vec<Quaternion>> {
    (0..p.n()).map(|i| p.rep().row(i).to_vec()).collect()
}

/// Cover of the Grassmannians attached to the orbits of `Sp(n)`: every
/// sampled plane avoids some `X_{j,k}`, the row-scaling retraction
/// preserves rank and lands in `Y_{j,k}`, and no line contains two
/// coordinate vectors.
fn check_grass_cover(rs: &RootSystem, plan: &VerifyPlan, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let n = rs.rank();
    let mut instances = 0u64;
    for k in 1..n.max(1) {
        let per_pair = plan.samples;
        for _ in 0..per_pair {
            let point = random_grass_point(n, k, plan.grid_denominator, rng);
            instances += 1;
            let avoiding: Vec<usize> = (1..=k + 1)
                .filter(|&j| !in_x(j, &point).unwrap())
                .collect();
            if avoiding.is_empty() {
                return (
                    false,
                    instances,
                    Some(Counterexample::GrassCover {
                        n,
                        k,
                        entries: grass_entries(&point),
                        failure: "cover".into(),
                    }),
                );
            }
            if k == 1 && in_x(1, &point).unwrap() && in_x(2, &point).unwrap() {
                return (
                    false,
                    instances,
                    Some(Counterexample::GrassCover {
                        n,
                        k,
                        entries: grass_entries(&point),
                        failure: "disjoint".into(),
                    }),
                );
            }
            let j = avoiding[0];
            if retraction_fails(j, &point) {
                return (
                    false,
                    instances,
                    Some(Counterexample::GrassCover {
                        n,
                        k,
                        entries: grass_entries(&point),
                        failure: format!("retract:{j}"),
                    }),
                );
            }
        }
    }
    (true, instances, None)
}

/// The spin double cover on vertex elements: block rotation images, the
/// two-fold fiber over each non-central vertex image, and agreement of
/// the two exponentials on exact rotor angles.
fn check_spin_double_cover(rs: &RootSystem) -> CheckOutcome {
    let family = rs.lie_type.family;
    let n = rs.rank();
    let m = if family == LieFamily::B { 2 * n + 1 } else { 2 * n };
    let mut instances = 0u64;
    for k in 0..=n {
        let g = spin_vertex_element(family, n, k).expect("valid vertex");
        let fail = |tag: &str| {
            Some(Counterexample::SpinCover {
                family,
                n,
                k,
                failure: tag.into(),
            })
        };
        instances += 1;
        match vector_action(&g) {
            Ok(action) => {
                if action != expected_vertex_action(family, n, k, m) {
                    return (false, instances, fail("block_form"));
                }
            }
            Err(_) => return (false, instances, fail("block_form")),
        }
        // Two-fold fiber: for non-scalar vertex elements, flipping the
        // first block angle negates the element without changing its
        // image downstairs.
        if k >= 2 {
            instances += 1;
            let neg = g.neg();
            if g == neg
                || vector_action(&g).unwrap() != vector_action(&neg).unwrap()
            {
                return (false, instances, fail("fiber"));
            }
            let special_even = family == LieFamily::D && k == n - 1;
            let mut flipped = spin_exp_block(m, 1, &rat(-1, 2)).unwrap();
            for j in 2..=k {
                flipped = flipped
                    .mul(&spin_exp_block(m, j, &rat(1, 2)).unwrap())
                    .unwrap();
            }
            if special_even {
                flipped = flipped
                    .mul(&spin_exp_block(m, n, &rat(-1, 2)).unwrap())
                    .unwrap();
            }
            if flipped != neg {
                return (false, instances, fail("fiber"));
            }
        }
    }
    // Exact rotor grid: the action of the half-angle rotor equals the
    // doubled-angle block rotation.
    let circle = [
        (rat_int(1), rat_int(0)),
        (rat_int(0), rat_int(1)),
        (rat_int(-1), rat_int(0)),
        (rat_int(0), rat_int(-1)),
        (rat(3, 5), rat(4, 5)),
    ];
    for k in 1..=n {
        for (c, s) in &circle {
            instances += 1;
            let rotor = rotor_from_circle_point(m, k, c, s).unwrap();
            let expected = so_block_rotation(m, k, &(c * c - s * s), &(rat_int(2) * c * s));
            if vector_action(&rotor).unwrap() != expected {
                return (
                    false,
                    instances,
                    Some(Counterexample::SpinCover {
                        family,
                        n,
                        k,
                        failure: "grid".into(),
                    }),
                );
            }
        }
    }
    (true, instances, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{alcove_barycenter, in_closed_alcove};

    fn plan_for(f: LieFamily, n: usize) -> VerifyPlan {
        VerifyPlan::new(LieType::new(f, n).unwrap())
    }

    #[test]
    fn check_names_round_trip() {
        for c in CheckKind::ALL {
            assert_eq!(CheckKind::from_str_name(c.as_str()), Some(c));
        }
        assert_eq!(CheckKind::from_str_name("nope"), None);
    }

    #[test]
    fn unsupported_checks_are_rejected() {
        let mut plan = plan_for(LieFamily::B, 3);
        plan.checks = vec![CheckKind::GrassCover];
        match run(&plan) {
            Err(VerifyError::UnsupportedCheck { check, .. }) => {
                assert_eq!(check, CheckKind::GrassCover)
            }
            other => panic!("expected unsupported-check error, got {other:?}"),
        }
        let mut plan = plan_for(LieFamily::C, 2);
        plan.samples = 0;
        assert!(matches!(run(&plan), Err(VerifyError::InvalidPlan(_))));
    }

    #[test]
    fn a1_lemma_counts() {
        let rs = RootSystem::build(LieType::new(LieFamily::A, 1).unwrap()).unwrap();
        let (ok, instances, ce) = check_lemma33(&rs).unwrap();
        assert!(ok, "{ce:?}");
        assert!(instances > 0);
        assert_eq!(stabilizer(&rs, 0).unwrap().order(), 2);
    }

    #[test]
    fn scaled_walls_agree_with_exact_arithmetic() {
        // Same ball two ways on C2: scaled keys vs exact elements.
        let rs = RootSystem::build(LieType::new(LieFamily::C, 2).unwrap()).unwrap();
        let scaled = ScaledWalls::new(&rs);
        let radius = 5;
        let exact = weyl_ball(&rs, radius, 100_000).unwrap();
        let exact_keys: HashSet<Vec<i32>> =
            exact.iter().map(|w| scaled.key_of_exact(w)).collect();

        let (id_lin, id_tr) = scaled.identity_state();
        let mut visited: HashSet<Vec<i32>> = HashSet::new();
        visited.insert(scaled.key(&id_lin, &id_tr));
        let mut frontier = vec![(id_lin, id_tr)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (lin, tr) in &frontier {
                for j in 0..=rs.rank() {
                    let (nl, nt) = scaled.compose_gen(lin, tr, j);
                    let key = scaled.key(&nl, &nt);
                    if visited.insert(key) {
                        next.push((nl, nt));
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(visited, exact_keys);

        // Scaled reflections match exact ones pointwise, on points of the
        // vertex lattice (the only points the integer path ever sees).
        let p = vec![rat(5, 2), rat(-3, 2)];
        let sp = scaled.scale_point(&p);
        for j in 0..=rs.rank() {
            let exact_image = crate::affine::wall_reflection(&rs, j).unwrap().apply(&p);
            assert_eq!(scaled.reflect_point(j, &sp), scaled.scale_point(&exact_image));
        }
        assert!(scaled.in_closed_alcove(&sp) == in_closed_alcove(&rs, &p));
    }

    #[test]
    fn cell_tester_matches_public_in_cell() {
        let rs = RootSystem::build(LieType::new(LieFamily::C, 2).unwrap()).unwrap();
        let verts = vertices(&rs);
        let ball = weyl_ball(&rs, 4, 100_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 0..=2 {
            let stab_gens = vertex_stabilizer_generators(&rs, k);
            for _ in 0..4 {
                let weights = sample_weights(3, 12, Some(k), &mut rng);
                let p = weights_to_point(&rs, verts, &weights, 12);
                let w0 = random_word(&stab_gens, 2, 10, &mut rng);
                let u1 = w0.apply(&p);
                let tester = CellTester::new(&rs, k, &p).unwrap();
                let w0_inv = w0.inverse();
                for what in &ball {
                    let fast = tester
                        .contains_image(&rs, &w0_inv.apply(&what.inverse().apply(&verts[k])));
                    let slow = in_cell(&rs, k, &what.apply(&u1));
                    assert_eq!(fast, slow);
                }
            }
        }
    }

    #[test]
    fn lemma33_as_a_set_identity_at_small_rank() {
        // Exhaustive at rank <= 3: the ball of word length twice the
        // stabilizer order is enumerated in full for every vertex.
        for (f, n) in [
            (LieFamily::A, 2),
            (LieFamily::A, 3),
            (LieFamily::B, 3),
            (LieFamily::C, 2),
            (LieFamily::C, 3),
            (LieFamily::G, 2),
        ] {
            let rs = RootSystem::build(LieType::new(f, n).unwrap()).unwrap();
            let (ok, instances, ce) = check_lemma33(&rs).unwrap();
            assert!(ok, "{f:?}{n}: {ce:?}");
            assert!(instances > 0);
        }
    }

    #[test]
    fn full_c2_campaign_passes() {
        let mut plan = plan_for(LieFamily::C, 2);
        plan.samples = 120;
        let report = run(&plan).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn spin_checks_pass_for_b3_and_d4() {
        for (f, n) in [(LieFamily::B, 3), (LieFamily::D, 4)] {
            let mut plan = plan_for(f, n);
            plan.checks = vec![CheckKind::SpinDoubleCover, CheckKind::DimIdentity];
            let report = run(&plan).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn c3_dim_identity_values() {
        let rs = RootSystem::build(LieType::new(LieFamily::C, 3).unwrap()).unwrap();
        let (ok, _, _) = check_dim_identity(&rs);
        assert!(ok);
        // 4k(3-k) gives (8, 8) for k = 1, 2.
        assert_eq!(classify_orbit(&rs, 1).orbit_dim, 8);
        assert_eq!(classify_orbit(&rs, 2).orbit_dim, 8);
    }

    #[test]
    fn thm41_c2_k1_passes() {
        let rs = RootSystem::build(LieType::new(LieFamily::C, 2).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (ok, instances, ce) = thm41_welldef_check(&rs, 1, 200, 8, 12, &mut rng).unwrap();
        assert!(ok, "{ce:?}");
        assert!(instances > 0, "sampler must produce in-cell hits");
    }

    #[test]
    fn reports_are_deterministic() {
        let mut plan = plan_for(LieFamily::C, 2);
        plan.samples = 60;
        plan.seed = 99;
        let a = run(&plan).unwrap();
        let b = run(&plan).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&a.to_json()).unwrap(),
            serde_json::to_string_pretty(&b.to_json()).unwrap()
        );
    }

    #[test]
    fn synthetic_counterexamples_reproduce() {
        let rs = RootSystem::build(LieType::new(LieFamily::C, 2).unwrap()).unwrap();
        // A wrong dimension claim is confirmed by re-running the op.
        let ce = Counterexample::DimIdentity {
            k: 1,
            expected: 999,
            actual: 4,
        };
        assert!(ce.reproduces(&rs));
        // The true dimension is not a counterexample.
        let ce = Counterexample::DimIdentity {
            k: 1,
            expected: 4,
            actual: 4,
        };
        assert!(!ce.reproduces(&rs));
        // A grid point that in fact lies in some cell does not reproduce.
        let ce = Counterexample::GridPoint {
            point: alcove_barycenter(&rs),
        };
        assert!(!ce.reproduces(&rs));
        // An honest stabilizer element is in both sets, so no mismatch.
        let w = stabilizer(&rs, 1).unwrap().elements[1].clone();
        let ce = Counterexample::Lemma33 {
            k: 1,
            element: w,
            in_stabilizer: true,
        };
        assert!(!ce.reproduces(&rs));
        // A cell-equivariance claim about the identity cannot reproduce.
        let ce = Counterexample::CellEquivariance {
            k: 1,
            u1: alcove_barycenter(&rs),
            witness: AffineIsometry::identity(2),
            s: None,
        };
        assert!(!ce.reproduces(&rs));
    }

    #[test]
    fn report_json_shape() {
        let mut plan = plan_for(LieFamily::A, 1);
        plan.samples = 30;
        let report = run(&plan).unwrap();
        let doc = report.to_json();
        assert_eq!(doc["all_passed"], true);
        assert_eq!(doc["plan"]["type"], "A1");
        assert!(doc["results"].as_array().unwrap().len() >= 5);
        // Durations are excluded from the canonical form.
        assert!(doc["results"][0].get("duration").is_none());
    }
}

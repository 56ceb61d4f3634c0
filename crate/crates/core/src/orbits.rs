//! Classification of the distinguished conjugacy classes.
//!
//! The class of `exp v_k` is controlled by the root subsystem
//! `Sigma_k = { alpha : alpha(v_k) is an integer }`: the centralizer of
//! `exp v_k` has root system `Sigma_k`, the orbit has dimension
//! `|Delta| - |Sigma_k|`, and the orbit is a single central point exactly
//! when `Sigma_k` is everything. For the classical families the orbits
//! are Grassmannians: quaternionic ones for `Sp(n)` and oriented real
//! ones for the spin groups. Summing relative-category contributions over
//! the vertices gives the upper bound for the category of the group.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::affine::vertices;
use crate::exact::{rat_as_int, rat_str, Rat};
use crate::root_system::{LieFamily, LieType, RootSystem};

/// What the orbit of `exp v_k` is, as a homogeneous space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Identification {
    /// A single point of the center.
    CenterPoint,
    /// `Gr_d(H^n)`, quaternionic `d`-planes in `H^n`.
    QuaternionicGrassmannian { d: usize, n: usize },
    /// Oriented `p`-planes in `R^m`.
    OrientedRealGrassmannian { p: usize, m: usize },
    /// No named identification is attached.
    Generic,
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::CenterPoint => write!(f, "center point"),
            Identification::QuaternionicGrassmannian { d, n } => write!(f, "Gr_{d}(H^{n})"),
            Identification::OrientedRealGrassmannian { p, m } => write!(f, "Gr~_{p}(R^{m})"),
            Identification::Generic => write!(f, "generic"),
        }
    }
}

/// Relative L-S category of an orbit inside the group, with provenance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CategoryValue {
    Known(u32),
    Conjectured(u32),
    Unknown,
}

impl fmt::Display for CategoryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryValue::Known(v) => write!(f, "{v} (known)"),
            CategoryValue::Conjectured(v) => write!(f, "{v} (conjectured)"),
            CategoryValue::Unknown => write!(f, "unknown"),
        }
    }
}

/// Everything computed about one distinguished vertex class.
#[derive(Clone, Debug)]
pub struct VertexOrbit {
    pub k: usize,
    pub vertex: Vec<Rat>,
    pub subsystem: Vec<Vec<Rat>>,
    pub components: Vec<LieType>,
    pub is_central: bool,
    pub orbit_dim: usize,
    pub identification: Identification,
    pub rel_cat: CategoryValue,
}

/// Roots taking an integer value on `v_k`.
pub fn vertex_subsystem(rs: &RootSystem, k: usize) -> Vec<Vec<Rat>> {
    let v = &vertices(rs)[k];
    rs.roots
        .iter()
        .filter(|alpha| rs.pair(alpha, v).denom().is_one())
        .cloned()
        .collect()
}

/// Splits a closed symmetric subsystem into irreducible Dynkin types.
///
/// The indecomposable elements of the positive part form a simple system;
/// its Cartan matrix is classified up to simultaneous permutation.
/// Coinciding low-rank types are reported canonically: any rank-1 piece
/// as A1, the rank-2 double-bond diagram as C2, and the D3 diagram as A3.
pub fn classify_subsystem(rs: &RootSystem, sigma: &[Vec<Rat>]) -> Vec<LieType> {
    let positive: Vec<&Vec<Rat>> = sigma
        .iter()
        .filter(|a| rs.is_positive_root(a))
        .collect();
    // Roots have integer coordinates in every family here; the pair scan
    // below runs on machine integers.
    let to_int = |v: &Vec<Rat>| -> Vec<i64> { v.iter().map(rat_as_int).collect() };
    let positive_int: Vec<Vec<i64>> = positive.iter().map(|v| to_int(v)).collect();
    let positive_set: HashSet<&Vec<i64>> = positive_int.iter().collect();
    // Indecomposable: not the sum of two positive elements of sigma.
    let mut base: Vec<&Vec<Rat>> = Vec::new();
    for (alpha, alpha_int) in positive.iter().zip(&positive_int) {
        let decomposable = positive_int.iter().any(|beta| {
            if beta == alpha_int {
                return false;
            }
            let rest: Vec<i64> = alpha_int.iter().zip(beta).map(|(a, b)| a - b).collect();
            positive_set.contains(&rest)
        });
        if !decomposable {
            base.push(alpha);
        }
    }

    let r = base.len();
    let mut cartan = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let num = crate::exact::rat_int(2) * rs.root_inner(base[i], base[j]);
            let den = rs.root_length_sq(base[i]);
            let c = num / den;
            assert!(c.denom().is_one(), "Cartan pairing of a subsystem base");
            cartan[i][j] = i64::try_from(c.numer().clone()).expect("small Cartan entry");
        }
    }

    // Connected components of the Dynkin diagram.
    let mut seen = vec![false; r];
    let mut components = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut cursor = 0;
        while cursor < comp.len() {
            let i = comp[cursor];
            cursor += 1;
            for j in 0..r {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort();
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        components.push(identify_cartan(&sub));
    }
    components.sort();
    components
}

/// Matches a connected Cartan matrix against the irreducible types.
fn identify_cartan(cartan: &[Vec<i64>]) -> LieType {
    let r = cartan.len();
    let candidates: Vec<LieType> = match r {
        1 => vec![LieType::new(LieFamily::A, 1).unwrap()],
        2 => vec![
            LieType::new(LieFamily::A, 2).unwrap(),
            LieType::new(LieFamily::C, 2).unwrap(),
            LieType::new(LieFamily::G, 2).unwrap(),
        ],
        3 => vec![
            LieType::new(LieFamily::A, 3).unwrap(),
            LieType::new(LieFamily::B, 3).unwrap(),
            LieType::new(LieFamily::C, 3).unwrap(),
        ],
        4 => vec![
            LieType::new(LieFamily::A, 4).unwrap(),
            LieType::new(LieFamily::B, 4).unwrap(),
            LieType::new(LieFamily::C, 4).unwrap(),
            LieType::new(LieFamily::D, 4).unwrap(),
            LieType::new(LieFamily::F, 4).unwrap(),
        ],
        _ => {
            let mut c = vec![
                LieType::new(LieFamily::A, r).unwrap(),
                LieType::new(LieFamily::B, r).unwrap(),
                LieType::new(LieFamily::C, r).unwrap(),
                LieType::new(LieFamily::D, r).unwrap(),
            ];
            if (6..=8).contains(&r) {
                c.push(LieType::new(LieFamily::E, r).unwrap());
            }
            c
        }
    };
    for t in candidates {
        if cartan_permutation_equivalent(cartan, &cartan_matrix_of(t)) {
            return t;
        }
    }
    panic!("connected Cartan matrix {cartan:?} matches no irreducible type");
}

/// Standard Cartan matrix of an irreducible type, in the convention
/// `cartan[i][j] = alpha_j(h_{alpha_i})`. Matches `RootSystem::build`
/// without constructing the root system; the agreement is pinned by a
/// test.
pub fn cartan_matrix_of(t: LieType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |m: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    };
    match t.family {
        LieFamily::A => chain(&mut c, r - 1),
        LieFamily::B => {
            chain(&mut c, r - 1);
            // Short last simple root: its coroot pairs to -2.
            c[r - 1][r - 2] = -2;
        }
        LieFamily::C => {
            chain(&mut c, r - 1);
            if r >= 2 {
                c[r - 2][r - 1] = -2;
            }
        }
        LieFamily::D => {
            chain(&mut c, r - 2);
            c[r - 3][r - 1] = -1;
            c[r - 1][r - 3] = -1;
        }
        LieFamily::E => {
            // Chain 1-3-4-5-..-r with the branch 2-4.
            let edges: Vec<(usize, usize)> = {
                let mut e = vec![(0, 2), (1, 3)];
                for i in 2..r - 1 {
                    e.push((i, i + 1));
                }
                e
            };
            for (i, j) in edges {
                c[i][j] = -1;
                c[j][i] = -1;
            }
        }
        LieFamily::F => {
            chain(&mut c, 3);
            c[1][2] = -1;
            c[2][1] = -2;
        }
        LieFamily::G => {
            c[0][1] = -3;
            c[1][0] = -1;
        }
    }
    c
}

/// Whether two Cartan matrices agree up to a simultaneous permutation.
fn cartan_permutation_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let r = a.len();
    if b.len() != r {
        return false;
    }
    // Row signatures prune the search: multiset of off-diagonal entries.
    let sig = |m: &[Vec<i64>], i: usize| -> Vec<i64> {
        let mut row: Vec<i64> = (0..r).filter(|&j| j != i).map(|j| m[i][j]).collect();
        row.sort();
        row
    };
    let mut assignment = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn go(
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        sig_a: &[Vec<i64>],
        sig_b: &[Vec<i64>],
        assignment: &mut [usize],
        used: &mut [bool],
        i: usize,
    ) -> bool {
        let r = a.len();
        if i == r {
            return true;
        }
        for cand in 0..r {
            if used[cand] || sig_a[i] != sig_b[cand] {
                continue;
            }
            let consistent = (0..i).all(|prev| {
                a[i][prev] == b[cand][assignment[prev]] && a[prev][i] == b[assignment[prev]][cand]
            });
            if !consistent {
                continue;
            }
            assignment[i] = cand;
            used[cand] = true;
            if go(a, b, sig_a, sig_b, assignment, used, i + 1) {
                return true;
            }
            used[cand] = false;
            assignment[i] = usize::MAX;
        }
        false
    }
    let sig_a: Vec<Vec<i64>> = (0..r).map(|i| sig(a, i)).collect();
    let sig_b: Vec<Vec<i64>> = (0..r).map(|i| sig(b, i)).collect();
    go(a, b, &sig_a, &sig_b, &mut assignment, &mut used, 0)
}

/// Order of the Weyl group of an irreducible type.
pub fn weyl_order(t: &LieType) -> u128 {
    let n = t.rank as u128;
    let factorial = |m: u128| (1..=m).product::<u128>();
    match t.family {
        LieFamily::A => factorial(n + 1),
        LieFamily::B | LieFamily::C => (1u128 << n) * factorial(n),
        LieFamily::D => (1u128 << (n - 1)) * factorial(n),
        LieFamily::G => 12,
        LieFamily::F => 1152,
        LieFamily::E => match t.rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
    }
}

/// Conjectured relative category of `Gr_d(H^n)` in `Sp(n)`: the value `d`.
fn base_category(identification: &Identification) -> CategoryValue {
    match identification {
        Identification::CenterPoint => CategoryValue::Known(0),
        Identification::QuaternionicGrassmannian { d, .. } => CategoryValue::Conjectured(*d as u32),
        Identification::OrientedRealGrassmannian { .. } | Identification::Generic => {
            CategoryValue::Unknown
        }
    }
}

/// Relative category attached to an identified orbit.
pub fn relative_category(orbit: &VertexOrbit) -> CategoryValue {
    base_category(&orbit.identification)
}

/// Full classification of the orbit of `exp v_k`.
pub fn classify_orbit(rs: &RootSystem, k: usize) -> VertexOrbit {
    let n = rs.rank();
    let vertex = vertices(rs)[k].clone();
    let subsystem = vertex_subsystem(rs, k);
    let is_central = subsystem.len() == rs.roots.len();
    let orbit_dim = rs.roots.len() - subsystem.len();
    let components = classify_subsystem(rs, &subsystem);

    let identification = if is_central {
        Identification::CenterPoint
    } else {
        match rs.lie_type.family {
            // Every vertex of SU(n+1) exponentiates to the center;
            // non-central cases cannot occur.
            LieFamily::A => Identification::CenterPoint,
            LieFamily::C => Identification::QuaternionicGrassmannian {
                d: k.min(n - k),
                n,
            },
            LieFamily::B => Identification::OrientedRealGrassmannian {
                p: 2 * k,
                m: 2 * n + 1,
            },
            LieFamily::D => Identification::OrientedRealGrassmannian { p: 2 * k, m: 2 * n },
            _ => Identification::Generic,
        }
    };
    let rel_cat = base_category(&identification);
    VertexOrbit {
        k,
        vertex,
        subsystem,
        components,
        is_central,
        orbit_dim,
        identification,
        rel_cat,
    }
}

/// All orbits `k = 0..=n`.
pub fn classify_all(rs: &RootSystem) -> Vec<VertexOrbit> {
    (0..=rs.rank()).map(|k| classify_orbit(rs, k)).collect()
}

#[derive(Clone, Debug, Default)]
pub struct BoundOptions {
    /// Treat conjectured quaternionic-Grassmannian values as assumed.
    pub assume_conjecture: bool,
    /// Replace the value of orbit `k`; always echoed in the assumptions.
    pub overrides: BTreeMap<usize, u32>,
}

/// The category upper bound `sum_k (cat + 1) - 1` with its inputs.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub lie_type: LieType,
    pub orbits: Vec<VertexOrbit>,
    /// Value actually used per orbit, after conjecture/overrides.
    pub used_values: Vec<Option<u32>>,
    pub upper_bound: Option<u64>,
    pub assumptions: Vec<String>,
    pub known_lower_bound: Option<(u64, String)>,
}

/// Evaluates the vertex-orbit upper bound for the category of the group.
pub fn ls_bound(rs: &RootSystem, opts: &BoundOptions) -> BoundReport {
    let orbits = classify_all(rs);
    let mut assumptions = Vec::new();
    if opts.assume_conjecture
        && orbits.iter().any(|o| matches!(o.rel_cat, CategoryValue::Conjectured(_)))
    {
        assumptions.push("conjecture assumed: cat_G of Gr_d(H^n) orbits equals d".to_string());
    }
    let mut used_values = Vec::new();
    for orbit in &orbits {
        let value = if let Some(&v) = opts.overrides.get(&orbit.k) {
            assumptions.push(format!("override: orbit {} set to {v}", orbit.k));
            Some(v)
        } else {
            match orbit.rel_cat {
                CategoryValue::Known(v) => Some(v),
                CategoryValue::Conjectured(v) if opts.assume_conjecture => Some(v),
                _ => None,
            }
        };
        used_values.push(value);
    }
    let upper_bound = used_values
        .iter()
        .map(|v| v.map(|x| x as u64 + 1))
        .sum::<Option<u64>>()
        .map(|total| total - 1);

    let known_lower_bound = if rs.lie_type.family == LieFamily::C && rs.rank() >= 3 {
        Some((
            rs.rank() as u64 + 2,
            "cat Sp(n) >= n + 2 for n >= 3 (Fernandez-Suarez/Gomez-Tato/Strom/Tanre; Iwase/Mimura)"
                .to_string(),
        ))
    } else {
        None
    };

    BoundReport {
        lie_type: rs.lie_type,
        orbits,
        used_values,
        upper_bound,
        assumptions,
        known_lower_bound,
    }
}

impl VertexOrbit {
    pub fn components_string(&self) -> String {
        if self.components.is_empty() {
            "trivial".to_string()
        } else {
            self.components
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "vertex": self.vertex.iter().map(rat_str).collect::<Vec<_>>(),
            "subsystem_size": self.subsystem.len(),
            "stabilizer_components": self.components.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "is_central": self.is_central,
            "orbit_dim": self.orbit_dim,
            "identification": self.identification.to_string(),
            "rel_cat": match self.rel_cat {
                CategoryValue::Known(v) => json!({"kind": "known", "value": v}),
                CategoryValue::Conjectured(v) => json!({"kind": "conjectured", "value": v}),
                CategoryValue::Unknown => json!({"kind": "unknown"}),
            },
        })
    }
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "type": self.lie_type.to_string(),
            "group": self.lie_type.family.group_name(self.lie_type.rank),
            "orbits": self.orbits.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            "used_values": self.used_values,
            "upper_bound": match self.upper_bound {
                Some(v) => json!(v),
                None => json!("unknown"),
            },
            "assumptions": self.assumptions,
            "known_lower_bound": match &self.known_lower_bound {
                Some((v, cite)) => json!({"value": v, "citation": cite}),
                None => Value::Null,
            },
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} = {}",
            self.lie_type,
            self.lie_type.family.group_name(self.lie_type.rank)
        )?;
        writeln!(
            f,
            "{:>3}  {:<16} {:>9}  {:<18} {:>5}",
            "k", "identification", "orbit dim", "rel cat", "used"
        )?;
        for (orbit, used) in self.orbits.iter().zip(&self.used_values) {
            writeln!(
                f,
                "{:>3}  {:<16} {:>9}  {:<18} {:>5}",
                orbit.k,
                orbit.identification.to_string(),
                orbit.orbit_dim,
                orbit.rel_cat.to_string(),
                used.map_or("-".to_string(), |v| v.to_string()),
            )?;
        }
        match self.upper_bound {
            Some(v) => writeln!(f, "upper bound: cat <= {v}")?,
            None => writeln!(f, "upper bound: unknown (unresolved orbit categories)")?,
        }
        for a in &self.assumptions {
            writeln!(f, "assumption: {a}")?;
        }
        if let Some((v, cite)) = &self.known_lower_bound {
            writeln!(f, "known lower bound: cat >= {v} [{cite}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn build(f: LieFamily, n: usize) -> RootSystem {
        RootSystem::build(LieType::new(f, n).unwrap()).unwrap()
    }

    fn ty(f: LieFamily, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn subsystem_at_origin_is_everything() {
        for rs in [build(LieFamily::C, 3), build(LieFamily::G, 2)] {
            assert_eq!(vertex_subsystem(&rs, 0).len(), rs.roots.len());
        }
    }

    #[test]
    fn c2_subsystems() {
        let rs = build(LieFamily::C, 2);
        // v_2 = (1/2, 1/2) is central: all 8 roots are integral there.
        assert_eq!(vertex_subsystem(&rs, 2).len(), 8);
        // v_1 = (1/2, 0) keeps only the long roots +-2eps_1, +-2eps_2.
        let sigma = vertex_subsystem(&rs, 1);
        assert_eq!(sigma.len(), 4);
        for alpha in &sigma {
            assert_eq!(rs.root_length_sq(alpha), rat_int(2), "long roots only");
        }
        assert_eq!(
            classify_subsystem(&rs, &sigma),
            vec![ty(LieFamily::A, 1), ty(LieFamily::A, 1)]
        );
    }

    #[test]
    fn cartan_formula_matches_built_systems() {
        let mut types = vec![
            ty(LieFamily::G, 2),
            ty(LieFamily::F, 4),
            ty(LieFamily::E, 6),
            ty(LieFamily::E, 7),
            ty(LieFamily::E, 8),
        ];
        for n in 1..=6 {
            types.push(ty(LieFamily::A, n));
            types.push(ty(LieFamily::C, n));
        }
        for n in 2..=6 {
            types.push(ty(LieFamily::B, n));
        }
        for n in 3..=6 {
            types.push(ty(LieFamily::D, n));
        }
        for t in types {
            let rs = RootSystem::build(t).unwrap();
            assert_eq!(cartan_matrix_of(t), rs.cartan_matrix, "{t}");
        }
    }

    #[test]
    fn classify_full_systems() {
        for (f, n) in [
            (LieFamily::A, 3),
            (LieFamily::B, 3),
            (LieFamily::C, 4),
            (LieFamily::D, 4),
            (LieFamily::G, 2),
            (LieFamily::F, 4),
            (LieFamily::E, 6),
        ] {
            let rs = build(f, n);
            let whole: Vec<Vec<Rat>> = rs.roots.clone();
            assert_eq!(classify_subsystem(&rs, &whole), vec![rs.lie_type]);
        }
    }

    #[test]
    fn c_family_splits_into_c_blocks() {
        let rs = build(LieFamily::C, 4);
        // At v_k the index set splits into the first k and last n-k slots.
        let got = classify_subsystem(&rs, &vertex_subsystem(&rs, 1));
        assert_eq!(got, vec![ty(LieFamily::A, 1), ty(LieFamily::C, 3)]);
        let got = classify_subsystem(&rs, &vertex_subsystem(&rs, 2));
        assert_eq!(got, vec![ty(LieFamily::C, 2), ty(LieFamily::C, 2)]);
    }

    #[test]
    fn b_family_splits_into_d_and_b_blocks() {
        let rs = build(LieFamily::B, 4);
        // D_2 degenerates to A1 x A1 and D_3 is reported as A3.
        let got = classify_subsystem(&rs, &vertex_subsystem(&rs, 2));
        assert_eq!(
            got,
            vec![ty(LieFamily::A, 1), ty(LieFamily::A, 1), ty(LieFamily::C, 2)]
        );
        let got = classify_subsystem(&rs, &vertex_subsystem(&rs, 3));
        assert_eq!(got, vec![ty(LieFamily::A, 1), ty(LieFamily::A, 3)]);
        let rs5 = build(LieFamily::B, 5);
        let got = classify_subsystem(&rs5, &vertex_subsystem(&rs5, 4));
        assert_eq!(got, vec![ty(LieFamily::A, 1), ty(LieFamily::D, 4)]);
    }

    #[test]
    fn subsystems_are_reflection_closed() {
        for rs in [
            build(LieFamily::A, 5),
            build(LieFamily::C, 6),
            build(LieFamily::B, 4),
            build(LieFamily::D, 6),
            build(LieFamily::F, 4),
            build(LieFamily::E, 6),
        ] {
            for k in 0..=rs.rank() {
                let sigma = vertex_subsystem(&rs, k);
                for alpha in &sigma {
                    for beta in &sigma {
                        let image = rs.reflect_root(alpha, beta).unwrap();
                        assert!(sigma.contains(&image));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_dimensions_match_grassmannians() {
        // Family C: 4k(n-k); family B (k >= 2): 2k(2n+1-2k).
        for n in 2..=6 {
            let rs = build(LieFamily::C, n);
            for k in 1..n {
                let orbit = classify_orbit(&rs, k);
                assert_eq!(orbit.orbit_dim, 4 * k * (n - k), "C{n} k={k}");
            }
        }
        for n in 2..=6 {
            let rs = build(LieFamily::B, n);
            for k in 2..=n {
                let orbit = classify_orbit(&rs, k);
                assert_eq!(orbit.orbit_dim, 2 * k * (2 * n + 1 - 2 * k), "B{n} k={k}");
            }
        }
        for n in 4..=6 {
            let rs = build(LieFamily::D, n);
            for k in 2..=n - 2 {
                let orbit = classify_orbit(&rs, k);
                assert!(!orbit.is_central);
                assert_eq!(orbit.orbit_dim, 2 * k * (2 * n - 2 * k), "D{n} k={k}");
            }
        }
    }

    #[test]
    fn identifications_by_family() {
        let rs = build(LieFamily::A, 4);
        for k in 0..=4 {
            let orbit = classify_orbit(&rs, k);
            assert!(orbit.is_central);
            assert_eq!(orbit.identification, Identification::CenterPoint);
            assert_eq!(orbit.rel_cat, CategoryValue::Known(0));
        }

        let rs = build(LieFamily::C, 3);
        let orbit = classify_orbit(&rs, 1);
        assert_eq!(
            orbit.identification,
            Identification::QuaternionicGrassmannian { d: 1, n: 3 }
        );
        assert_eq!(orbit.orbit_dim, 8); // HP^2
        assert_eq!(orbit.rel_cat, CategoryValue::Conjectured(1));

        // Conjectured value d_2 = min(2, 2) for Sp(4).
        let rs = build(LieFamily::C, 4);
        let orbit = classify_orbit(&rs, 2);
        assert_eq!(orbit.rel_cat, CategoryValue::Conjectured(2));

        let rs = build(LieFamily::D, 4);
        let orbit = classify_orbit(&rs, 2);
        assert_eq!(
            orbit.identification,
            Identification::OrientedRealGrassmannian { p: 4, m: 8 }
        );
        assert_eq!(orbit.rel_cat, CategoryValue::Unknown);

        let rs = build(LieFamily::B, 3);
        let orbit = classify_orbit(&rs, 2);
        assert_eq!(
            orbit.identification,
            Identification::OrientedRealGrassmannian { p: 4, m: 7 }
        );
        assert_eq!(orbit.orbit_dim, 12);
        assert_eq!(orbit.rel_cat, CategoryValue::Unknown);
        // Spin(7) vertices 0 and 1 are central.
        assert!(classify_orbit(&rs, 0).is_central);
        assert!(classify_orbit(&rs, 1).is_central);
    }

    #[test]
    fn d_family_central_vertices_found_by_computation() {
        let rs = build(LieFamily::D, 4);
        let central: Vec<usize> = (0..=4)
            .filter(|&k| classify_orbit(&rs, k).is_central)
            .collect();
        assert_eq!(central, vec![0, 1, 3, 4]);
        // D3 = A3 has |center| = 4: every vertex is central.
        let rs3 = build(LieFamily::D, 3);
        assert!((0..=3).all(|k| classify_orbit(&rs3, k).is_central));
    }

    #[test]
    fn stabilizer_order_consistency_small_rank() {
        // |W_k| from the affine closure equals the product of the Weyl
        // orders of the classified components.
        for rs in [
            build(LieFamily::A, 3),
            build(LieFamily::B, 3),
            build(LieFamily::C, 3),
            build(LieFamily::D, 4),
            build(LieFamily::G, 2),
            build(LieFamily::F, 4),
        ] {
            for k in 0..=rs.rank() {
                let bfs = crate::affine::stabilizer(&rs, k).unwrap().order() as u128;
                let orbit = classify_orbit(&rs, k);
                let formula: u128 = orbit.components.iter().map(weyl_order).product();
                assert_eq!(bfs, formula, "{} k={k}", rs.lie_type);
            }
        }
    }

    #[test]
    fn su_bound_recovers_rank() {
        for n in 1..=6 {
            let rs = build(LieFamily::A, n);
            let report = ls_bound(&rs, &BoundOptions::default());
            assert_eq!(report.upper_bound, Some(n as u64));
            assert!(report.orbits.iter().all(|o| o.is_central));
        }
    }

    #[test]
    fn sp_bound_with_conjecture() {
        let expected = [1u64, 3, 5, 8, 11, 15];
        for (n, want) in (1..=6).zip(expected) {
            let rs = build(LieFamily::C, n);
            let opts = BoundOptions {
                assume_conjecture: true,
                ..Default::default()
            };
            let report = ls_bound(&rs, &opts);
            assert_eq!(report.upper_bound, Some(want), "C{n}");
            let floor = ((n as u64 + 2) * (n as u64 + 2)) / 4 - 1;
            assert_eq!(report.upper_bound, Some(floor));
        }
    }

    #[test]
    fn sp_bound_without_conjecture_is_unknown() {
        let rs = build(LieFamily::C, 3);
        let report = ls_bound(&rs, &BoundOptions::default());
        assert_eq!(report.upper_bound, None);
        assert!(report.known_lower_bound.is_some());
        assert_eq!(report.known_lower_bound.as_ref().unwrap().0, 5);
    }

    #[test]
    fn b_family_bound_unknown_without_overrides() {
        let rs = build(LieFamily::B, 3);
        let report = ls_bound(&rs, &BoundOptions::default());
        assert_eq!(report.upper_bound, None);
        let central: usize = report.orbits.iter().filter(|o| o.is_central).count();
        assert_eq!(central, 2);
    }

    #[test]
    fn overrides_fill_unknowns_and_are_recorded() {
        let rs = build(LieFamily::B, 3);
        let mut overrides = BTreeMap::new();
        overrides.insert(2usize, 4u32);
        overrides.insert(3usize, 3u32);
        let report = ls_bound(
            &rs,
            &BoundOptions {
                assume_conjecture: false,
                overrides,
            },
        );
        // Orbits: k=0,1 central (0), k=2 -> 4, k=3 -> 3.
        assert_eq!(report.upper_bound, Some(1 + 1 + 5 + 4 - 1));
        assert_eq!(report.assumptions.len(), 2);
        assert!(report.assumptions[0].contains("orbit 2"));
    }

    #[test]
    fn conjectured_closed_form_telescopes() {
        // sum over k of (min(k, n-k) + 1) plus the two central endpoints,
        // minus one, is floor((n+2)^2 / 4) - 1.
        for n in 1..=20u64 {
            let direct: u64 = (0..=n)
                .map(|k| {
                    let d = k.min(n - k);
                    d + 1
                })
                .sum::<u64>()
                - 1;
            assert_eq!(direct, (n + 2) * (n + 2) / 4 - 1, "n={n}");
        }
    }

    #[test]
    fn report_serialization_round_trips() {
        let rs = build(LieFamily::C, 2);
        let opts = BoundOptions {
            assume_conjecture: true,
            ..Default::default()
        };
        let report = ls_bound(&rs, &opts);
        let doc = report.to_json();
        assert_eq!(doc["upper_bound"], 3);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), text);
        // And the table renders.
        let table = report.to_string();
        assert!(table.contains("upper bound"));
    }
}

//! The Clifford algebra `C_m(R)` with `e_i^2 = -1`, its even subalgebra,
//! the spin group sitting inside it, and the conjugation action giving the
//! double cover of `SO(m)`.
//!
//! Elements are stored as maps from index subsets (bitmasks over
//! `{1, .., m}`) to rational coefficients; only nonzero coefficients are
//! kept and a `BTreeMap` keeps iteration order canonical. The torus of
//! `Spin(m)` is generated by rotors `cos t - sin t e_{2k-1} e_{2k}`; the
//! exact constructors below accept precisely the angles whose half-angle
//! sine and cosine are rational, which covers every vertex element.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rat, rat_int, rat_str, Rat};
use crate::matrix::{Mat, RatMat};
use crate::root_system::LieFamily;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliffordError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("element is not in the spin group")]
    NotSpin,
    #[error("angle does not have a rational half-angle: {0} turns")]
    InexactAngle(String),
    #[error("(c, s) = ({0}, {1}) is not on the unit circle")]
    NotOnCircle(String, String),
    #[error("index {index} out of range for ambient dimension {m}")]
    BadIndex { index: usize, m: usize },
    #[error("vertex index {k} invalid for {family}{n}")]
    BadVertex { family: char, n: usize, k: usize },
}

/// Element of `C_m(R)` as a finite sum of signed basis blades.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordElement {
    pub m: usize,
    coeffs: BTreeMap<u32, Rat>,
}

/// Product of two basis blades: resulting blade and sign.
fn blade_mul(a: u32, b: u32) -> (u32, i32) {
    let mut sign = 1i32;
    let mut acc = a;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // Move e_j leftward through the generators of `acc` above j.
        let above = acc >> (j + 1);
        if above.count_ones() % 2 == 1 {
            sign = -sign;
        }
        if acc & (1 << j) != 0 {
            sign = -sign; // e_j e_j = -1
        }
        acc ^= 1 << j;
    }
    (acc, sign)
}

impl CliffordElement {
    pub fn zero(m: usize) -> Self {
        CliffordElement {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(m: usize, value: Rat) -> Self {
        let mut out = Self::zero(m);
        if !value.is_zero() {
            out.coeffs.insert(0, value);
        }
        out
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Rat::one())
    }

    /// The generator `e_i`, indices starting at 1.
    pub fn basis_vector(m: usize, i: usize) -> Result<Self, CliffordError> {
        if i == 0 || i > m {
            return Err(CliffordError::BadIndex { index: i, m });
        }
        let mut out = Self::zero(m);
        out.coeffs.insert(1 << (i - 1), Rat::one());
        Ok(out)
    }

    /// A single blade `c e_{i_1} .. e_{i_r}` with strictly increasing indices.
    pub fn blade(m: usize, indices: &[usize], coeff: Rat) -> Result<Self, CliffordError> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > m {
                return Err(CliffordError::BadIndex { index: i, m });
            }
            assert!(mask & (1 << (i - 1)) == 0, "blade indices must be distinct");
            mask |= 1 << (i - 1);
        }
        let mut out = Self::zero(m);
        if !coeff.is_zero() {
            out.coeffs.insert(mask, coeff);
        }
        Ok(out)
    }

    pub fn coeff(&self, mask: u32) -> Rat {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "ambient mismatch");
        let mut coeffs = self.coeffs.clone();
        for (mask, c) in &other.coeffs {
            let entry = coeffs.entry(*mask).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(mask);
            }
        }
        CliffordElement { m: self.m, coeffs }
    }

    pub fn neg(&self) -> Self {
        CliffordElement {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        CliffordElement {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, c * v)).collect(),
        }
    }

    /// Clifford product.
    pub fn mul(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.m != other.m {
            return Err(CliffordError::AmbientMismatch(self.m, other.m));
        }
        let mut coeffs: BTreeMap<u32, Rat> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let (mask, sign) = blade_mul(*a, *b);
                let term = ca * cb * rat_int(sign as i64);
                let entry = coeffs.entry(mask).or_insert_with(Rat::zero);
                *entry += term;
                if entry.is_zero() {
                    coeffs.remove(&mask);
                }
            }
        }
        Ok(CliffordElement { m: self.m, coeffs })
    }

    /// Conjugation: on a product of `r` vectors it is `(-1)^r` times the
    /// reversal, so a blade of grade `r` picks up `(-1)^{r (r + 1) / 2}`.
    pub fn conj(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(mask, c)| {
                let r = mask.count_ones();
                let sign = if (r * (r + 1) / 2) % 2 == 0 { 1 } else { -1 };
                (*mask, c * rat_int(sign))
            })
            .collect();
        CliffordElement { m: self.m, coeffs }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|mask| mask.count_ones() % 2 == 0)
    }

    /// If the element is a pure vector, its coordinates.
    pub fn as_vector(&self) -> Option<Vec<Rat>> {
        if !self.coeffs.keys().all(|mask| mask.count_ones() == 1) {
            return None;
        }
        let mut v = vec![Rat::zero(); self.m];
        for (mask, c) in &self.coeffs {
            v[mask.trailing_zeros() as usize] = c.clone();
        }
        Some(v)
    }

    /// Signed monomial rendering, e.g. `-e1e2e3e4` or `1/2 + e1e2`.
    pub fn monomial_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (mask, c) in &self.coeffs {
            let blade: String = (0..self.m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("e{}", i + 1))
                .collect();
            let body = if blade.is_empty() {
                rat_str(c)
            } else if c == &Rat::one() {
                blade
            } else if c == &(-Rat::one()) {
                format!("-{blade}")
            } else {
                format!("{} {blade}", rat_str(c))
            };
            if parts.is_empty() {
                parts.push(body);
            } else if let Some(rest) = body.strip_prefix('-') {
                parts.push(format!("- {rest}"));
            } else {
                parts.push(format!("+ {body}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.monomial_string())
    }
}

/// Membership in `Spin(m)`: even, unit norm under conjugation, and the
/// twisted conjugation sends every generator back into `R^m`.
pub fn is_spin(g: &CliffordElement) -> bool {
    if !g.is_even() {
        return false;
    }
    let gg = g.mul(&g.conj()).expect("same ambient");
    if gg != CliffordElement::one(g.m) {
        return false;
    }
    for i in 1..=g.m {
        let e = CliffordElement::basis_vector(g.m, i).expect("valid index");
        let image = g.mul(&e).and_then(|x| x.mul(&g.conj())).expect("same ambient");
        if image.as_vector().is_none() {
            return false;
        }
    }
    true
}

/// The rotation `x -> g x g*` as an `m x m` matrix (columns are the images
/// of the generators). Errors unless `g` is in the spin group.
pub fn vector_action(g: &CliffordElement) -> Result<RatMat, CliffordError> {
    if !is_spin(g) {
        return Err(CliffordError::NotSpin);
    }
    let m = g.m;
    let mut cols = Vec::with_capacity(m);
    for i in 1..=m {
        let e = CliffordElement::basis_vector(m, i)?;
        let image = g.mul(&e)?.mul(&g.conj())?;
        cols.push(image.as_vector().expect("checked by is_spin"));
    }
    Ok(Mat::from_fn(m, m, |r, c| cols[c][r].clone()))
}

/// Rotor `c - s e_{2k-1} e_{2k}` from an exact point on the unit circle.
///
/// Under the double cover this acts on the `(2k-1, 2k)`-plane as the
/// rotation with cosine `c^2 - s^2` and sine `2 c s`.
pub fn rotor_from_circle_point(
    m: usize,
    k: usize,
    c: &Rat,
    s: &Rat,
) -> Result<CliffordElement, CliffordError> {
    if c * c + s * s != Rat::one() {
        return Err(CliffordError::NotOnCircle(rat_str(c), rat_str(s)));
    }
    if k == 0 || 2 * k > m {
        return Err(CliffordError::BadIndex { index: 2 * k, m });
    }
    let scalar = CliffordElement::scalar(m, c.clone());
    let plane = CliffordElement::blade(m, &[2 * k - 1, 2 * k], -s.clone())?;
    Ok(scalar.add(&plane))
}

/// `exp(theta E_k)` for `theta` in turns: the rotor with half-angle
/// `pi theta`. Exact only when the half-angle trig values are rational,
/// i.e. for `theta` a multiple of a half turn.
pub fn spin_exp_block(m: usize, k: usize, theta_turns: &Rat) -> Result<CliffordElement, CliffordError> {
    // Half-angle in turns is theta/2; rational cos/sin requires it to be
    // a multiple of a quarter turn.
    let quarter_turns = theta_turns * rat_int(2); // half-angle / (1/4 turn)
    if !quarter_turns.denom().is_one() {
        return Err(CliffordError::InexactAngle(rat_str(theta_turns)));
    }
    let q: i64 = (quarter_turns.numer() % rat_int(4).numer())
        .try_into()
        .expect("small residue");
    let (c, s) = match q.rem_euclid(4) {
        0 => (rat_int(1), rat_int(0)),
        1 => (rat_int(0), rat_int(1)),
        2 => (rat_int(-1), rat_int(0)),
        _ => (rat_int(0), rat_int(-1)),
    };
    rotor_from_circle_point(m, k, &c, &s)
}

/// The `SO(m)` block rotation by the angle with the given exact cosine
/// and sine in the `(2k-1, 2k)`-plane.
pub fn so_block_rotation(m: usize, k: usize, cos: &Rat, sin: &Rat) -> RatMat {
    let mut out = RatMat::identity(m);
    let (i, j) = (2 * k - 2, 2 * k - 1);
    out.set(i, i, cos.clone());
    out.set(i, j, sin.clone());
    out.set(j, i, -sin.clone());
    out.set(j, j, cos.clone());
    out
}

/// `exp v_k` in the spin group for the odd (`B`, `m = 2n+1`) and even
/// (`D`, `m = 2n`) cases.
///
/// The vertex torus elements are `v_0 = 0`, `v_1 = 2 pi E_1`,
/// `v_k = pi sum_{j<=k} E_j`, and additionally for `D` the vertex
/// `v_{n-1} = pi sum_{j<n} E_j - pi E_n`. Multiplying the block rotors
/// gives `1`, `-1`, `(-1)^k e_1 e_2 .. e_{2k}`, and for the special even
/// vertex `(-1)^{n-1} e_1 .. e_{2n}`.
pub fn spin_vertex_element(
    family: LieFamily,
    n: usize,
    k: usize,
) -> Result<CliffordElement, CliffordError> {
    let m = match family {
        LieFamily::B => 2 * n + 1,
        LieFamily::D => 2 * n,
        _ => {
            return Err(CliffordError::BadVertex {
                family: family.letter(),
                n,
                k,
            })
        }
    };
    if k > n {
        return Err(CliffordError::BadVertex {
            family: family.letter(),
            n,
            k,
        });
    }
    let one = CliffordElement::one(m);
    if k == 0 {
        return Ok(one);
    }
    if k == 1 {
        // exp(2 pi E_1) = cos(pi) - sin(pi) e_1 e_2 = -1.
        return spin_exp_block(m, 1, &rat_int(1));
    }
    let half_turn = rat(1, 2);
    if family == LieFamily::D && k == n - 1 {
        let mut g = one;
        for j in 1..n {
            g = g.mul(&spin_exp_block(m, j, &half_turn)?)?;
        }
        return g.mul(&spin_exp_block(m, n, &(-half_turn))?);
    }
    let mut g = one;
    for j in 1..=k {
        g = g.mul(&spin_exp_block(m, j, &half_turn)?)?;
    }
    Ok(g)
}

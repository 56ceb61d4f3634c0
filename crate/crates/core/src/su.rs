//! The complex model for family A: every alcove vertex of `SU(n+1)`
//! exponentiates to a scalar unitary matrix.
//!
//! A torus point `H = (h_1, .., h_{n+1})` exponentiates to
//! `diag(e^{2 pi i h_1}, .., e^{2 pi i h_{n+1}})`, so the matrix is
//! determined exactly by the coordinate fractions modulo 1. The vertex
//! `v_k` has all coordinates congruent to `-k/(n+1)`, giving the central
//! element `e^{-2 pi i k/(n+1)} Id`.

use crate::affine::vertices;
use crate::exact::{fract_mod_one, rat, Rat};
use crate::root_system::{LieFamily, RootSystem};

/// The claimed common phase of `exp v_k` in turns: `-k/(n+1)` mod 1.
pub fn central_turn(n: usize, k: usize) -> Rat {
    fract_mod_one(&rat(-(k as i64), (n + 1) as i64))
}

/// Phases (in turns, reduced mod 1) of the diagonal of `exp v_k`.
pub fn exp_vertex_turns(rs: &RootSystem, k: usize) -> Vec<Rat> {
    assert_eq!(rs.lie_type.family, LieFamily::A, "complex model is for family A");
    vertices(rs)[k].iter().map(fract_mod_one).collect()
}

/// When `exp v_k` is scalar, its common phase in turns.
pub fn exp_vertex_scalar(rs: &RootSystem, k: usize) -> Option<Rat> {
    let turns = exp_vertex_turns(rs, k);
    let first = turns[0].clone();
    turns.iter().all(|t| t == &first).then_some(first)
}

/// `e^{2 pi i t}` for display purposes.
pub fn unit_complex_f64(turn: &Rat) -> (f64, f64) {
    let t = turn.numer().to_string().parse::<f64>().unwrap()
        / turn.denom().to_string().parse::<f64>().unwrap();
    let angle = 2.0 * std::f64::consts::PI * t;
    (angle.cos(), angle.sin())
}

/// Exact check that `exp v_k = e^{-2 pi i k/(n+1)} Id` for all vertices.
pub fn verify_central_model(rs: &RootSystem) -> bool {
    let n = rs.rank();
    (0..=n).all(|k| exp_vertex_scalar(rs, k) == Some(central_turn(n, k)))
}

//! Tangent spaces of stabilizers and the open orbit criterion.
//!
//! The Lie algebra of `G = prod GL_{n_j}` is coordinatized by the matrix
//! entries of each factor, so `dim G = sum n_j^2`.

use crate::exact::{rank, Rat, RatMat};
use crate::invariants::points::*;
use crate::invariants::Tensor;
use crate::rep::{identity_element, ExtFactor, GroupSpec, RepSpec, Summand};
use crate::ring::Dual;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

/// The `dim V x dim G` matrix of `X -> X w`.
pub fn lie_action(rep: &RepSpec, w: &[Rat]) -> RatMat {
    rep.lie_action(w)
}

/// `dim T_e(G_w)`, the kernel dimension of [`lie_action`].
pub fn stabilizer_dim(rep: &RepSpec, w: &[Rat]) -> usize {
    rep.group().dim() - rank(&lie_action(rep, w))
}

/// True when `G w` is Zariski open, i.e. `dim T_e(G_w) = dim G - dim V`.
pub fn open_orbit_certify(rep: &RepSpec, w: &[Rat]) -> bool {
    let (g, v) = (rep.group().dim(), rep.dim());
    g >= v && stabilizer_dim(rep, w) == g - v
}

/// The matrix of [`lie_action`] computed instead from the full group action
/// over dual numbers: column `E_ab` is the `eps` part of `(I + eps E_ab) w`.
pub fn lie_action_dual(rep: &RepSpec, w: &[Rat]) -> RatMat {
    let group = rep.group();
    let xw: Vec<Dual> = w.iter().map(|v| Dual::new(v.clone(), Rat::from_integer(0.into()))).collect();
    let mut m = RatMat::zeros(rep.dim(), group.dim());
    for (j, &n) in group.factor_sizes().iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let mut g: Vec<Vec<Vec<Dual>>> = identity_element(group);
                g[j][a][b].eps = Rat::one();
                let col = group.lie_offset(j) + a * n + b;
                for (r, v) in rep.act(&g, &xw).into_iter().enumerate() {
                    m[(r, col)] = v.eps;
                }
            }
        }
    }
    m
}

/// Stabilizer dimension from [`lie_action_dual`].
pub fn stabilizer_dim_dual(rep: &RepSpec, w: &[Rat]) -> usize {
    rep.group().dim() - rank(&lie_action_dual(rep, w))
}

/// A point with a known stabilizer dimension.
#[derive(Clone, Debug)]
pub struct StabilizerFixture {
    pub name: &'static str,
    pub point: Tensor,
    pub expected: usize,
}

fn build(sizes: Vec<usize>, summands: Vec<Vec<(usize, usize)>>) -> RepSpec {
    let group = GroupSpec::new(sizes).expect("valid group");
    let summands = summands
        .into_iter()
        .map(|f| Summand { factors: f.into_iter().map(|(g, d)| ExtFactor::new(g, d)).collect() })
        .collect();
    RepSpec::new(group, summands).expect("valid representation")
}

/// `(GL_4 x GL_2 x GL_2, Aff^4 (x) Aff^2 + wedge^2 Aff^4 (x) Aff^2)`.
pub fn rep_42_wedge42() -> RepSpec {
    build(vec![4, 2, 2], vec![vec![(0, 1), (1, 1)], vec![(0, 2), (2, 1)]])
}

/// `(GL_3 x GL_2 x GL_2 x GL_1, wedge^2 Aff^3 + Aff^3 (x) Aff^2 (x) Aff^2)`,
/// the `GL_1` factor scaling the first summand.
pub fn rep_wedge3_plus_322() -> RepSpec {
    build(vec![3, 2, 2, 1], vec![vec![(0, 2), (3, 1)], vec![(0, 1), (1, 1), (2, 1)]])
}

/// `(GL_2^3, Aff^2 (x) Aff^2 (x) Aff^2 + Aff^2)`, plus a second `Aff^2` under
/// the second factor when `two_vectors` is set.
pub fn rep_222_plus_vectors(two_vectors: bool) -> RepSpec {
    let mut s = vec![vec![(0, 1), (1, 1), (2, 1)], vec![(0, 1)]];
    if two_vectors {
        s.push(vec![(1, 1)]);
    }
    build(vec![2, 2, 2], s)
}

fn t3(s: usize, a: usize, b: usize, c: usize) -> (usize, Vec<Vec<usize>>, i64) {
    (s, vec![vec![a], vec![b], vec![c]], 1)
}

/// The standard point of [`rep_42_wedge42`].
pub fn w_42_wedge42() -> Tensor {
    let v = |i: usize, r: usize| (0, vec![vec![i], vec![r]], 1);
    let p = |i: usize, j: usize, q: usize| (1, vec![vec![i, j], vec![q]], 1);
    Tensor::from_terms(rep_42_wedge42(), &[v(1, 0), v(3, 0), v(0, 1), v(2, 1), p(0, 1, 0), p(2, 3, 1)])
}

/// `(p_23, (diag(-1, 1), E_12, E_21))` in [`rep_wedge3_plus_322`].
pub fn w_wedge3_plus_322() -> Tensor {
    let mut terms = vec![(0, vec![vec![1, 2], vec![0]], 1)];
    for (idx, c) in w_322().coeffs().iter().enumerate() {
        if *c != Rat::from_integer(0.into()) {
            let co = w_322().rep().coordinate(idx + 1).clone();
            let v: i64 = c.to_integer().try_into().expect("small coefficient");
            terms.push((1, co.indices.clone(), v));
        }
    }
    Tensor::from_terms(rep_wedge3_plus_322(), &terms)
}

/// `(E_11, E_22, (1, 1))`, with a second `(1, 1)` when `two_vectors` is set.
pub fn w_222_plus_vectors(two_vectors: bool) -> Tensor {
    let mut terms = vec![t3(0, 0, 0, 0), t3(0, 1, 1, 1), (1, vec![vec![0]], 1), (1, vec![vec![1]], 1)];
    if two_vectors {
        terms.extend([(2, vec![vec![0]], 1), (2, vec![vec![1]], 1)]);
    }
    Tensor::from_terms(rep_222_plus_vectors(two_vectors), &terms)
}

/// The built-in stabilizer fixtures.
pub fn fixtures() -> Vec<StabilizerFixture> {
    let f = |name, point, expected| StabilizerFixture { name, point, expected };
    vec![
        f("tensor_222", w_222(), 4),
        f("tensor_332", w_332(), 4),
        f("wedge42", w_wedge42(), 8),
        f("wedge53", w_wedge53(), 4),
        f("wedge43", w_wedge43(), 7),
        f("wedge43_plus4", w_wedge43_plus4(), 3),
        f("tensor_322", w_322(), 5),
        f("wedge3_plus_332", w_wedge3_plus_332(), 2),
        f("vec42_plus_wedge42", w_42_wedge42(), 4),
        f("wedge3_plus_322", w_wedge3_plus_322(), 3),
        f("tensor_222_plus_vector", w_222_plus_vectors(false), 2),
        f("tensor_222_plus_two_vectors", w_222_plus_vectors(true), 0),
    ]
}

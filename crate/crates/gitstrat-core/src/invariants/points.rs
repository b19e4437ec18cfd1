//! Standard points of the small prehomogeneous spaces, as dense tensors over
//! the native representations of [`super`].

use super::{rep_tensor3, rep_wedge2_tensor, rep_wedge3_plus_332, rep_wedge43_plus4, Tensor};
use alloc::vec;
use alloc::vec::Vec;

type Term = (usize, Vec<Vec<usize>>, i64);

fn wedge(k: usize, i: usize, j: usize, c: i64) -> Term {
    (0, vec![vec![i - 1, j - 1], vec![k - 1]], c)
}

fn t3(s: usize, a: usize, b: usize, c: usize, v: i64) -> Term {
    (s, vec![vec![a - 1], vec![b - 1], vec![c - 1]], v)
}

/// `p_1 (x) p_1 (x) p_1 + p_2 (x) p_2 (x) p_2`.
pub fn w_222() -> Tensor {
    Tensor::from_terms(rep_tensor3(2, 2, 2), &[t3(0, 1, 1, 1, 1), t3(0, 2, 2, 2, 1)])
}

fn pair_332(s: usize) -> Vec<Term> {
    // (diag(1, -1, 0), diag(0, 1, -1))
    vec![t3(s, 1, 1, 1, 1), t3(s, 2, 2, 1, -1), t3(s, 2, 2, 2, 1), t3(s, 3, 3, 2, -1)]
}

/// The pair `(diag(1, -1, 0), diag(0, 1, -1))` in `Aff^3 (x) Aff^3 (x) Aff^2`.
pub fn w_332() -> Tensor {
    Tensor::from_terms(rep_tensor3(3, 3, 2), &pair_332(0))
}

/// `(diag(-1, 1), E_12, E_21)` in `Aff^3 (x) Aff^2 (x) Aff^2`.
pub fn w_322() -> Tensor {
    Tensor::from_terms(rep_tensor3(3, 2, 2), &[t3(0, 1, 1, 1, -1), t3(0, 1, 2, 2, 1), t3(0, 2, 1, 2, 1), t3(0, 3, 2, 1, 1)])
}

/// `p_12 (x) q_1 + p_34 (x) q_2` in `wedge^2 Aff^4 (x) Aff^2`.
pub fn w_wedge42() -> Tensor {
    Tensor::from_terms(rep_wedge2_tensor(4, 2), &[wedge(1, 1, 2, 1), wedge(2, 3, 4, 1)])
}

fn wedge53_terms(c24: i64) -> Vec<Term> {
    vec![
        wedge(1, 1, 4, 1),
        wedge(1, 2, 3, -1),
        wedge(2, 1, 5, -1),
        wedge(2, 2, 4, c24),
        wedge(3, 2, 5, 1),
        wedge(3, 3, 4, -1),
    ]
}

/// The standard point of `wedge^2 Aff^5 (x) Aff^3`.
pub fn w_wedge53() -> Tensor {
    Tensor::from_terms(rep_wedge2_tensor(5, 3), &wedge53_terms(2))
}

/// The variant of [`w_wedge53`] with unit entry at `(2, 4)` of the second slice.
pub fn w_wedge53_prime() -> Tensor {
    Tensor::from_terms(rep_wedge2_tensor(5, 3), &wedge53_terms(1))
}

fn wedge43_terms() -> Vec<Term> {
    // (J 0; 0 0), (0 J; J 0), (0 0; 0 J)
    vec![wedge(1, 1, 2, 1), wedge(2, 1, 4, 1), wedge(2, 2, 3, -1), wedge(3, 3, 4, 1)]
}

/// The standard point of `wedge^2 Aff^4 (x) Aff^3`.
pub fn w_wedge43() -> Tensor {
    Tensor::from_terms(rep_wedge2_tensor(4, 3), &wedge43_terms())
}

/// The standard point of `wedge^2 Aff^4 (x) Aff^3 + Aff^4`, with vector `[1, 0, 0, 1]`.
pub fn w_wedge43_plus4() -> Tensor {
    let mut t = wedge43_terms();
    t.push((1, vec![vec![0]], 1));
    t.push((1, vec![vec![3]], 1));
    Tensor::from_terms(rep_wedge43_plus4(), &t)
}

/// `(q_12 - q_13 + q_23, (diag(1, -1, 0), diag(0, 1, -1)))` in
/// `wedge^2 W_2 + W_1 (x) W_2 (x) Aff^2`.
pub fn w_wedge3_plus_332() -> Tensor {
    let mut t = vec![(0, vec![vec![0, 1], vec![0]], 1), (0, vec![vec![0, 2], vec![0]], -1), (0, vec![vec![1, 2], vec![0]], 1)];
    t.extend(pair_332(1));
    Tensor::from_terms(rep_wedge3_plus_332(), &t)
}

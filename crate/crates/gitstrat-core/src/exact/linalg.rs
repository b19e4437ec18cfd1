//! Fraction-free Gaussian elimination.

use super::{Int, Rat, RatMat, RatVec};
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Result of [`solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `A x = b` has solutions `particular + span(kernel)`.
    Solvable { particular: RatVec, kernel: Vec<RatVec> },
    /// The system is inconsistent.
    NoSolution,
}

impl Solution {
    /// Kernel dimension of a solvable system.
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            Solution::Solvable { kernel, .. } => Some(kernel.len()),
            Solution::NoSolution => None,
        }
    }
}

/// Scales every row to integers.
fn integer_rows(a: &RatMat, rhs: Option<&RatVec>) -> (Vec<Vec<Int>>, Vec<Int>) {
    let cols = a.cols() + usize::from(rhs.is_some());
    let mut rows = Vec::with_capacity(a.rows());
    let mut scales = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut den = Int::one();
        for x in a.row(i) {
            den = den.lcm(x.denom());
        }
        if let Some(b) = rhs {
            den = den.lcm(b[i].denom());
        }
        let mut row = Vec::with_capacity(cols);
        for x in a.row(i) {
            row.push(x.numer() * (&den / x.denom()));
        }
        if let Some(b) = rhs {
            row.push(b[i].numer() * (&den / b[i].denom()));
        }
        rows.push(row);
        scales.push(den);
    }
    (rows, scales)
}

/// Bareiss forward elimination over the first `ncols` columns.
///
/// Returns the pivot columns and the sign of the row permutation. Rows below
/// the last pivot are zero in the first `ncols` columns on exit.
fn bareiss(m: &mut [Vec<Int>], ncols: usize) -> (Vec<usize>, i32) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = Int::one();
    let mut perm_sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            perm_sign = -perm_sign;
        }
        let width = m[r].len();
        for i in r + 1..nrows {
            let f = m[i][c].clone();
            if f.is_zero() {
                for j in c + 1..width {
                    m[i][j] = (&m[i][j] * &m[r][c]) / &prev;
                }
            } else {
                for j in c + 1..width {
                    m[i][j] = (&m[i][j] * &m[r][c] - &f * &m[r][j]) / &prev;
                }
            }
            m[i][c] = Int::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, perm_sign)
}

/// Solves `A x = b` exactly.
///
/// The kernel basis has one vector per free column in ascending order; the
/// vector for free column `f` has a 1 in position `f` and 0 in the other free
/// positions.
pub fn solve(a: &RatMat, b: &RatVec) -> Solution {
    assert_eq!(a.rows(), b.dim(), "solve: rows of A must equal dim(b)");
    let n = a.cols();
    let (mut m, _) = integer_rows(a, Some(b));
    let (pivots, _) = bareiss(&mut m, n);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return Solution::NoSolution;
    }
    // Back substitution to reduced echelon form over the rationals.
    let mut red: Vec<Vec<Rat>> = m[..rank]
        .iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let p = &row[pc];
            row.iter().map(|x| Rat::new(x.clone(), p.clone())).collect()
        })
        .collect();
    for k in (0..rank).rev() {
        let pc = pivots[k];
        for i in 0..k {
            let f = red[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..=n {
                let delta = &f * &red[k][j];
                red[i][j] -= delta;
            }
        }
    }
    let mut particular = RatVec::zeros(n);
    for (k, &pc) in pivots.iter().enumerate() {
        particular[pc] = red[k][n].clone();
    }
    let mut is_pivot = alloc::vec![false; n];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = RatVec::zeros(n);
        v[f] = Rat::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[k][f].clone();
        }
        kernel.push(v);
    }
    Solution::Solvable { particular, kernel }
}

/// Rank of a rational matrix.
pub fn rank(a: &RatMat) -> usize {
    let (mut m, _) = integer_rows(a, None);
    bareiss(&mut m, a.cols()).0.len()
}

pub(super) fn det(a: &RatMat) -> Rat {
    let n = a.rows();
    if n == 0 {
        return Rat::one();
    }
    let (mut m, scales) = integer_rows(a, None);
    let (pivots, sign) = bareiss(&mut m, n);
    if pivots.len() < n {
        return Rat::zero();
    }
    let mut scale = Int::one();
    for s in &scales {
        scale *= s;
    }
    let d = &m[n - 1][n - 1] * Int::from(sign);
    Rat::new(d, scale)
}

//! Exact minimum-norm points of affine hulls and convex hulls.

use super::field::{Field, Overflow};
use super::{Rat, RatVec};
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

/// Failure modes of the min-norm routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinNormError {
    /// The input points are affinely dependent.
    AffinelyDependent,
    /// The empty point set has no min-norm point.
    Empty,
    /// A fixed-width field overflowed; retry with [`Rat`].
    Overflow,
}

impl From<Overflow> for MinNormError {
    fn from(_: Overflow) -> Self {
        MinNormError::Overflow
    }
}

impl fmt::Display for MinNormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinNormError::AffinelyDependent => f.write_str("points are affinely dependent"),
            MinNormError::Empty => f.write_str("empty point set"),
            MinNormError::Overflow => f.write_str("fixed-width arithmetic overflow"),
        }
    }
}

/// Barycentric coefficients of the projection of the origin onto the affine
/// hull of the points indexed by `support`, given the Gram matrix `gram`.
///
/// Solves the normal equations `G_S c + mu 1 = 0`, `sum c = 1` exactly.
pub fn affine_min_norm<F: Field>(gram: &[Vec<F>], support: &[usize]) -> Result<Vec<F>, MinNormError> {
    let k = support.len();
    if k == 0 {
        return Err(MinNormError::Empty);
    }
    let n = k + 1;
    // Augmented system [[G_S, 1], [1^T, 0]] [c; mu] = [0; 1].
    let mut m: Vec<Vec<F>> = Vec::with_capacity(n);
    for &i in support {
        let mut row: Vec<F> = support.iter().map(|&j| gram[i][j].clone()).collect();
        row.push(F::one_value());
        row.push(F::zero_value());
        m.push(row);
    }
    let mut last = alloc::vec![F::one_value(); k];
    last.push(F::zero_value());
    last.push(F::one_value());
    m.push(last);
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c].sign() != 0).ok_or(MinNormError::AffinelyDependent)?;
        m.swap(p, c);
        let piv = m[c][c].clone();
        for j in c..=n {
            m[c][j] = m[c][j].try_div(&piv)?;
        }
        for r in 0..n {
            if r == c || m[r][c].sign() == 0 {
                continue;
            }
            let f = m[r][c].clone();
            for j in c..=n {
                let t = f.try_mul(&m[c][j])?;
                m[r][j] = m[r][j].try_sub(&t)?;
            }
        }
    }
    Ok(m[..k].iter().map(|row| row[n].clone()).collect())
}

/// Projection of the origin onto the affine hull of `points`.
///
/// Returns the point and its barycentric coefficients in input order.
pub fn min_norm_affine(points: &[RatVec]) -> Result<(RatVec, Vec<Rat>), MinNormError> {
    if points.is_empty() {
        return Err(MinNormError::Empty);
    }
    let dim = points[0].dim();
    let k = points.len();
    let gram: Vec<Vec<Rat>> = points
        .iter()
        .map(|a| points.iter().map(|b| a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum()).collect())
        .collect();
    // Affine independence: differences to the first point must be independent.
    if k > 1 {
        let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| p.sub(&points[0]).0).collect();
        let m = super::RatMat::from_rows(diffs);
        if super::rank(&m) < k - 1 {
            return Err(MinNormError::AffinelyDependent);
        }
    }
    let support: Vec<usize> = (0..k).collect();
    let coeffs = affine_min_norm(&gram, &support)?;
    let mut p = RatVec::zeros(dim);
    for (c, s) in coeffs.iter().zip(points) {
        for d in 0..dim {
            p[d] += c * &s[d];
        }
    }
    Ok((p, coeffs))
}

/// Whether barycentric coefficients describe a point of the convex hull.
pub fn in_hull(coeffs: &[Rat]) -> bool {
    coeffs.iter().all(|c| c >= &Rat::zero())
}

/// Outcome of [`wolfe`]: the support of the min-norm point and its
/// strictly positive barycentric coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WolfeResult<F> {
    pub support: Vec<usize>,
    pub coeffs: Vec<F>,
}

fn point_dot<F: Field>(gram: &[Vec<F>], support: &[usize], lam: &[F], p: usize) -> Result<F, Overflow> {
    let mut acc = F::zero_value();
    for (&s, l) in support.iter().zip(lam) {
        acc = acc.try_add(&l.try_mul(&gram[s][p])?)?;
    }
    Ok(acc)
}

/// Exact Wolfe algorithm for the min-norm point of the convex hull of the
/// points indexed by `points`, using only their Gram matrix.
///
/// The returned support is affinely independent and the min-norm point is
/// `sum coeffs[i] * point[support[i]]`.
pub fn wolfe<F: Field>(gram: &[Vec<F>], points: &[usize]) -> Result<WolfeResult<F>, MinNormError> {
    let start = *points
        .iter()
        .min_by(|&&a, &&b| gram[a][a].cmp(&gram[b][b]).then(a.cmp(&b)))
        .ok_or(MinNormError::Empty)?;
    let mut support = alloc::vec![start];
    let mut lam = alloc::vec![F::one_value()];
    loop {
        // x = sum lam_i p_i; look for the point most violating (x, p) >= (x, x).
        let mut xx = F::zero_value();
        for (&s, l) in support.iter().zip(&lam) {
            xx = xx.try_add(&l.try_mul(&point_dot(gram, &support, &lam, s)?)?)?;
        }
        let mut best: Option<(F, usize)> = None;
        for &p in points {
            let v = point_dot(gram, &support, &lam, p)?;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, p));
            }
        }
        let (v, p) = best.expect("nonempty");
        if v >= xx || support.contains(&p) {
            return Ok(WolfeResult { support, coeffs: lam });
        }
        support.push(p);
        lam.push(F::zero_value());
        // Minor cycles: move towards the affine min-norm point of the corral.
        loop {
            let alpha = affine_min_norm(gram, &support)?;
            if alpha.iter().all(|a| a.sign() > 0) {
                lam = alpha;
                break;
            }
            let mut theta: Option<F> = None;
            for (a, l) in alpha.iter().zip(&lam) {
                if a.sign() <= 0 {
                    let t = l.try_div(&l.try_sub(a)?)?;
                    if theta.as_ref().is_none_or(|th| t < *th) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.expect("some coefficient is non-positive");
            let mut next_support = Vec::with_capacity(support.len());
            let mut next_lam = Vec::with_capacity(support.len());
            for ((&s, l), a) in support.iter().zip(&lam).zip(&alpha) {
                let nl = l.try_add(&theta.try_mul(&a.try_sub(l)?)?)?;
                if nl.sign() > 0 {
                    next_support.push(s);
                    next_lam.push(nl);
                }
            }
            support = next_support;
            lam = next_lam;
        }
    }
}

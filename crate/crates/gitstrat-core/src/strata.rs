//! Per-stratum data: the 1-PS `lambda_beta`, the coordinate sets of `Z_beta`
//! and `W_beta`, the Levi block structure of `M_beta` and the character
//! `chi_beta`.

use crate::beta::FlatEngine;
use crate::exact::{inner, solve, Rat, RatMat, RatVec, Solution};
use crate::rep::{GroupSpec, RepSpec, WeightTable};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Failures of the stratum computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrataError {
    ZeroBeta,
    NotSumZero,
    DimensionMismatch,
    /// The character equations have no admissible solution.
    NoCharacter,
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::ZeroBeta => f.write_str("beta is zero"),
            StrataError::NotSumZero => f.write_str("beta does not sum to zero on every block"),
            StrataError::DimensionMismatch => f.write_str("beta has the wrong dimension"),
            StrataError::NoCharacter => f.write_str("no integral character proportional to beta"),
        }
    }
}

/// Derived data of one stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumData {
    pub beta: RatVec,
    pub norm_sq: Rat,
    /// Primitive integral positive multiple of `beta`.
    pub lambda: Vec<i64>,
    /// Ordinals `i` with `(gamma_i, beta) = (beta, beta)`.
    pub z: Vec<usize>,
    /// Ordinals `i` with `(gamma_i, beta) > (beta, beta)`.
    pub w: Vec<usize>,
    /// Per group factor, the 1-based positions after which the entries of
    /// `beta` change.
    pub cuts: Vec<Vec<usize>>,
    /// One exponent per diagonal block, factor by factor.
    pub chi: Vec<i64>,
}

fn check_beta(beta: &RatVec, group: &GroupSpec) -> Result<(), StrataError> {
    if beta.dim() != group.torus_rank() {
        return Err(StrataError::DimensionMismatch);
    }
    if beta.is_zero() {
        return Err(StrataError::ZeroBeta);
    }
    for b in group.blocks() {
        let s: Rat = beta.as_slice()[b].iter().sum();
        if !s.is_zero() {
            return Err(StrataError::NotSumZero);
        }
    }
    Ok(())
}

/// Smallest positive multiple of `beta` with integer entries.
pub fn lambda_of(beta: &RatVec) -> Result<Vec<i64>, StrataError> {
    if beta.is_zero() {
        return Err(StrataError::ZeroBeta);
    }
    let (n, _) = beta.to_primitive();
    Ok(n.iter().map(|x| x.to_i64().expect("lambda entries fit in i64")).collect())
}

/// Ordinals of `Z_beta` and `W_beta` (exact comparisons).
pub fn split_zwy(beta: &RatVec, weights: &WeightTable) -> (Vec<usize>, Vec<usize>) {
    let nn = beta.norm_sq();
    let mut z = Vec::new();
    let mut w = Vec::new();
    for (i, g) in weights.gamma.iter().enumerate() {
        let v = inner(g, beta).expect("weight dimension");
        if v == nn {
            z.push(i + 1);
        } else if v > nn {
            w.push(i + 1);
        }
    }
    (z, w)
}

/// Cut positions of the maximal runs of equal entries in every factor.
pub fn mbeta_blocks(beta: &RatVec, group: &GroupSpec) -> Vec<Vec<usize>> {
    group
        .blocks()
        .into_iter()
        .map(|b| (b.start + 1..b.end).filter(|&k| beta[k - 1] != beta[k]).map(|k| k - b.start).collect())
        .collect()
}

/// Torus index ranges of the diagonal blocks described by `cuts`.
pub fn block_ranges(cuts: &[Vec<usize>], group: &GroupSpec) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    for (b, c) in group.blocks().into_iter().zip(cuts) {
        let mut start = b.start;
        for &k in c {
            out.push(start..b.start + k);
            start = b.start + k;
        }
        out.push(start..b.end);
    }
    out
}

/// Exponents `c_b` of `chi = prod_b det(g_b)^{c_b}` over the diagonal blocks.
///
/// Solves `c_{b(k)} = a beta_k` for all torus indices `k`, scales to a
/// primitive integer solution with `a > 0`, and checks that the character is
/// trivial on the connected kernel `T_0` of the central torus, i.e. that the
/// central exponents `sum_{b in j} c_b |b|` lie in the span of the scalar
/// degrees of the summands.
pub fn chi_exponents(rep: &RepSpec, beta: &RatVec, cuts: &[Vec<usize>]) -> Result<Vec<i64>, StrataError> {
    let group = rep.group();
    check_beta(beta, group)?;
    let blocks = block_ranges(cuts, group);
    let nb = blocks.len();
    let n = group.torus_rank();
    let mut a = RatMat::zeros(n, nb + 1);
    for (b, r) in blocks.iter().enumerate() {
        for k in r.clone() {
            a[(k, b)] = Rat::one();
            a[(k, nb)] = -beta[k].clone();
        }
    }
    let kernel = match solve(&a, &RatVec::zeros(n)) {
        Solution::Solvable { kernel, .. } if kernel.len() == 1 => kernel.into_iter().next().expect("one vector"),
        _ => return Err(StrataError::NoCharacter),
    };
    let scale = if kernel[nb].is_negative() { -Rat::one() } else { Rat::one() };
    let (ints, _) = RatVec(kernel.0[..nb].to_vec()).scale(&scale).to_primitive();
    let c: Vec<i64> = ints.iter().map(|x| x.to_i64().expect("small exponent")).collect();
    // Triviality on T_0: central exponents in the span of the scalar degrees.
    let degs = rep.scalar_degrees();
    let nf = group.num_factors();
    let mut central = RatVec::zeros(nf);
    let mut bi = 0;
    for (j, cut) in cuts.iter().enumerate() {
        for _ in 0..=cut.len() {
            central[j] += Rat::from_integer((c[bi] * blocks[bi].len() as i64).into());
            bi += 1;
        }
    }
    let span = RatMat::from_rows((0..nf).map(|j| degs.iter().map(|d| Rat::from_integer(d[j].into())).collect()).collect());
    if degs.is_empty() || matches!(solve(&span, &central), Solution::NoSolution) {
        return Err(StrataError::NoCharacter);
    }
    Ok(c)
}

/// The functional on `t*` induced by block exponents, mean-centred per factor.
pub fn chi_functional(group: &GroupSpec, cuts: &[Vec<usize>], chi: &[i64]) -> RatVec {
    let blocks = block_ranges(cuts, group);
    let mut v = RatVec::zeros(group.torus_rank());
    for (r, &c) in blocks.iter().zip(chi) {
        for k in r.clone() {
            v[k] = Rat::from_integer(c.into());
        }
    }
    for b in group.blocks() {
        let mean: Rat = v.as_slice()[b.clone()].iter().sum::<Rat>() / Rat::from_integer((b.len() as i64).into());
        for k in b {
            v[k] -= &mean;
        }
    }
    v
}

/// All derived data for `beta` in the weight system of `rep`.
pub fn stratum(rep: &RepSpec, weights: &WeightTable, beta: &RatVec) -> Result<StratumData, StrataError> {
    check_beta(beta, rep.group())?;
    let lambda = lambda_of(beta)?;
    let (z, w) = split_zwy(beta, weights);
    let cuts = mbeta_blocks(beta, rep.group());
    let chi = chi_exponents(rep, beta, &cuts)?;
    Ok(StratumData { beta: beta.clone(), norm_sq: beta.norm_sq(), lambda, z, w, cuts, chi })
}

/// Whether `beta` is the min-norm point of the convex hull of the weights
/// in `Z_beta`, i.e. of some subset of the weights.
pub fn is_min_norm_point(weights: &WeightTable, beta: &RatVec) -> bool {
    if beta.is_zero() || weights.gamma.first().is_none_or(|g| g.dim() != beta.dim()) {
        return false;
    }
    let (z, _) = split_zwy(beta, weights);
    if z.is_empty() {
        return false;
    }
    let pts: Vec<RatVec> = z.iter().map(|&o| weights.gamma[o - 1].clone()).collect();
    let engine = FlatEngine::new(&pts);
    let all = (0..pts.len()).fold(0u128, |m, i| m | 1 << i);
    engine.flat_beta(all).is_some_and(|r| r.beta == *beta)
}

/// Whether `v` is a positive rational multiple of `beta`.
pub fn is_positive_multiple(v: &RatVec, beta: &RatVec) -> bool {
    let Some(k) = (0..beta.dim()).find(|&k| !beta[k].is_zero()) else { return false };
    let r = &v[k] / &beta[k];
    r.is_positive() && *v == beta.scale(&r)
}

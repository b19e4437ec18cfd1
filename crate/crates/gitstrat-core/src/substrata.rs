//! Candidates for the stratification of `(M_beta, Z_beta)`.
//!
//! A min-norm point `beta'` of the shifted weights `{gamma_i - beta : i in
//! I_beta}` gives `beta'' = beta' + beta`, a min-norm point of the original
//! weights. Two routes are provided: a scan over Weyl conjugates of the known
//! set `B` of the ambient representation, and a direct enumeration on the
//! shifted weights.

use crate::beta::{candidate_betas, chamber_normalize, in_chamber, FlatEngine};
use crate::exact::{inner, RatVec};
use crate::rep::{GroupSpec, WeightTable};
use crate::strata::{block_ranges, split_zwy, StratumData};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

/// One permutation per group factor (0-based images).
pub type WeylElement = Vec<Vec<usize>>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Lexicographic order.
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// All elements of `prod_j S_{n_j}` in lexicographic order.
pub fn weyl_elements(group: &GroupSpec) -> Vec<WeylElement> {
    let mut out: Vec<WeylElement> = alloc::vec![Vec::new()];
    for &n in group.factor_sizes() {
        let perms = permutations(n);
        out = out.iter().flat_map(|w| perms.iter().map(move |p| {
            let mut v = w.clone();
            v.push(p.clone());
            v
        })).collect();
    }
    out
}

/// `w beta` with `(w beta)[w_j(k)] = beta[k]` inside every factor block.
pub fn weyl_apply(w: &WeylElement, beta: &RatVec, group: &GroupSpec) -> RatVec {
    let mut out = beta.clone();
    for (p, b) in w.iter().zip(group.blocks()) {
        for (k, &img) in p.iter().enumerate() {
            out[b.start + img] = beta[b.start + k].clone();
        }
    }
    out
}

/// The chamber of `M_beta`: ascending entries inside every block of `beta`.
pub fn mbeta_chamber(stratum: &StratumData, group: &GroupSpec) -> Vec<Range<usize>> {
    block_ranges(&stratum.cuts, group)
}

/// Distinct vectors `w b - beta` over all Weyl elements `w`, kept when
/// orthogonal to `beta`, nonzero and in the chamber of `M_beta`.
pub fn scan_one(stratum: &StratumData, b: &RatVec, weyl: &[WeylElement], group: &GroupSpec) -> BTreeSet<RatVec> {
    let beta = &stratum.beta;
    let chamber = mbeta_chamber(stratum, group);
    let mut out = BTreeSet::new();
    if b.norm_sq() < stratum.norm_sq {
        // |w b - beta|^2 = |b|^2 - |beta|^2 when orthogonal.
        return out;
    }
    let mut seen = BTreeSet::new();
    for w in weyl {
        let wb = weyl_apply(w, b, group);
        if !seen.insert(wb.clone()) {
            continue;
        }
        if inner(&wb, beta).expect("dimension") != stratum.norm_sq {
            continue;
        }
        let d = wb.sub(beta);
        if !d.is_zero() && in_chamber(&d, &chamber) {
            out.insert(d);
        }
    }
    out
}

/// `{ w b - beta : w in W, b in frak_b }` filtered by orthogonality to
/// `beta`, the `M_beta` chamber and nonvanishing.
pub fn substrata_scan(stratum: &StratumData, frak_b: &[RatVec], group: &GroupSpec) -> BTreeSet<RatVec> {
    let weyl = weyl_elements(group);
    frak_b.iter().flat_map(|b| scan_one(stratum, b, &weyl, group)).collect()
}

/// Whether `beta' + beta` is the min-norm point of a subset of the weights of
/// `Z_beta`.
pub fn is_realizable(stratum: &StratumData, weights: &WeightTable, beta_prime: &RatVec) -> bool {
    let bb = stratum.beta.add(beta_prime);
    let nn = bb.norm_sq();
    let pts: Vec<RatVec> = stratum.z.iter().map(|&o| weights.gamma[o - 1].clone()).collect();
    let on: Vec<usize> = (0..pts.len()).filter(|&i| inner(&pts[i], &bb).expect("dimension") == nn).collect();
    if on.is_empty() {
        return false;
    }
    let engine = FlatEngine::new(&pts);
    let mask = on.iter().fold(0u128, |m, &i| m | 1 << i);
    engine.flat_beta(mask).is_some_and(|r| r.beta == bb)
}

/// [`substrata_scan`] restricted to realizable candidates.
pub fn substrata_scan_realizable(
    stratum: &StratumData,
    weights: &WeightTable,
    frak_b: &[RatVec],
    group: &GroupSpec,
) -> BTreeSet<RatVec> {
    substrata_scan(stratum, frak_b, group).into_iter().filter(|b| is_realizable(stratum, weights, b)).collect()
}

/// Nonzero min-norm points of the shifted weights of `Z_beta`, normalized
/// into the chamber of `M_beta`.
pub fn substrata_direct(stratum: &StratumData, weights: &WeightTable, group: &GroupSpec) -> BTreeSet<RatVec> {
    let shifted: Vec<RatVec> = stratum.z.iter().map(|&o| weights.gamma[o - 1].sub(&stratum.beta)).collect();
    let chamber = mbeta_chamber(stratum, group);
    candidate_betas(&shifted).into_iter().map(|r| chamber_normalize(&r.beta, &chamber).1).collect()
}

/// `beta' + beta` is not Weyl conjugate to an element of the known set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInFrakC;

impl fmt::Display for NotInFrakC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("beta' + beta is not conjugate to a known min-norm point")
    }
}

/// Containment flags for `beta'' = beta' + beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Applicability {
    /// `I_{beta''}` is contained in `I_beta`.
    pub z_contained: bool,
    /// Every block of `M_{beta''}` lies in a block of `M_beta`.
    pub m_contained: bool,
}

/// Containment flags for the pair `(beta, beta')`; `frak_b` is the
/// chamber-normalized set of min-norm points.
pub fn proposition_applicability(
    stratum: &StratumData,
    beta_prime: &RatVec,
    weights: &WeightTable,
    frak_b: &BTreeSet<RatVec>,
    group: &GroupSpec,
) -> Result<Applicability, NotInFrakC> {
    let bb = stratum.beta.add(beta_prime);
    if !frak_b.contains(&chamber_normalize(&bb, &group.blocks()).1) {
        return Err(NotInFrakC);
    }
    let (z2, _) = split_zwy(&bb, weights);
    let z: BTreeSet<usize> = stratum.z.iter().copied().collect();
    let z_contained = z2.iter().all(|o| z.contains(o));
    // Centralizers: equal entries of beta'' force equal entries of beta.
    let m_contained = group.blocks().into_iter().all(|b| {
        b.clone().all(|k| b.clone().all(|l| bb[k] != bb[l] || stratum.beta[k] == stratum.beta[l]))
    });
    Ok(Applicability { z_contained, m_contained })
}

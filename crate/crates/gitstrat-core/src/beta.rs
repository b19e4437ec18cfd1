//! Enumeration of the finite set of min-norm points of convex hulls of
//! weight subsets, and its Weyl-chamber normal form.
//!
//! The min-norm point of `Conv(S)` is the projection of the origin onto the
//! affine hull of its support, and that projection only depends on the flat
//! `aff(S)`. So instead of walking subsets we walk the lattice of flats
//! spanned by the weights, level by level, and run an exact Wolfe solver on
//! the weights contained in each flat.

use crate::exact::{wolfe, Field, MinNormError, Q128, Rat, RatVec, WolfeResult};
use crate::rep::{GroupSpec, RepSpec};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bit set of point indices.
pub type Mask = u128;

/// Indices of the set bits of a mask, ascending.
pub fn mask_indices(m: Mask) -> Vec<usize> {
    (0..128).filter(|&i| m >> i & 1 == 1).collect()
}

/// A min-norm point together with the data that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRecord {
    pub beta: RatVec,
    pub norm_sq: Rat,
    /// Support of the min-norm point (0-based point indices, ascending).
    pub support: Vec<usize>,
    /// Positive barycentric coefficients matching `support`.
    pub coeffs: Vec<Rat>,
    /// All points of the flat the point was found in.
    pub hull: Vec<usize>,
    /// Whether `beta` has been moved into the Weyl chamber.
    pub normalized: bool,
}

/// Canonical order: ascending squared norm, then lexicographic entries.
pub fn canonical_cmp(a: &RatVec, b: &RatVec) -> Ordering {
    a.norm_sq().cmp(&b.norm_sq()).then_with(|| a.cmp(b))
}

fn gcd_slice(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Exact flat-lattice engine over a fixed point set.
#[derive(Clone, Debug)]
pub struct FlatEngine {
    points: Vec<RatVec>,
    /// Points scaled to a common integer lattice.
    lattice: Vec<Vec<i128>>,
    gram_q: Option<Vec<Vec<Q128>>>,
    gram: Vec<Vec<Rat>>,
}

impl FlatEngine {
    /// Engine over at most 128 points of equal dimension.
    pub fn new(points: &[RatVec]) -> Self {
        assert!(points.len() <= 128, "at most 128 points");
        let mut den = num_bigint::BigInt::one();
        for p in points {
            for x in p.as_slice() {
                den = den.lcm(x.denom());
            }
        }
        let lattice = points
            .iter()
            .map(|p| {
                p.as_slice()
                    .iter()
                    .map(|x| (x.numer() * (&den / x.denom())).to_i128().expect("lattice coordinates fit in i128"))
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Rat>> = points.iter().map(|a| points.iter().map(|b| dot(a, b)).collect()).collect();
        let gram_q = gram.iter().map(|row| row.iter().map(|x| Q128::from_rat(x).ok()).collect::<Option<Vec<_>>>()).collect();
        FlatEngine { points: points.to_vec(), lattice, gram_q, gram }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RatVec] {
        &self.points
    }

    /// The rank-0 flats: single points, with coincident points merged.
    pub fn initial_level(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = (0..self.len())
            .map(|i| (0..self.len()).filter(|&j| self.lattice[j] == self.lattice[i]).fold(0, |m, j| m | 1 << j))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Echelon basis (pivot column, row) of the direction space of a flat.
    fn basis(&self, idx: &[usize]) -> Vec<(usize, Vec<i128>)> {
        let base = &self.lattice[idx[0]];
        let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
        for &i in &idx[1..] {
            let mut d: Vec<i128> = self.lattice[i].iter().zip(base).map(|(a, b)| a - b).collect();
            reduce(&basis, &mut d);
            if let Some(p) = d.iter().position(|&x| x != 0) {
                basis.push((p, d));
            }
        }
        basis
    }

    /// Flats covering `flat` (one dimension higher), ascending.
    pub fn covers(&self, flat: Mask) -> Vec<Mask> {
        let idx = mask_indices(flat);
        let base = &self.lattice[idx[0]];
        let basis = self.basis(&idx);
        // Points outside the flat grouped by their primitive residual direction.
        let mut keyed: Vec<(Vec<i128>, usize)> = Vec::new();
        for k in 0..self.len() {
            if flat >> k & 1 == 1 {
                continue;
            }
            let mut d: Vec<i128> = self.lattice[k].iter().zip(base).map(|(a, b)| a - b).collect();
            reduce(&basis, &mut d);
            let g = gcd_slice(&d);
            let lead = d.iter().find(|&&x| x != 0).copied().expect("point outside the flat");
            let s = if lead < 0 { -g } else { g };
            for x in d.iter_mut() {
                *x /= s;
            }
            keyed.push((d, k));
        }
        keyed.sort();
        let mut out = Vec::new();
        let mut i = 0;
        while i < keyed.len() {
            let mut m = flat;
            let mut j = i;
            while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                m |= 1 << keyed[j].1;
                j += 1;
            }
            out.push(m);
            i = j;
        }
        out.sort_unstable();
        out
    }

    /// All covers of a level, sorted and deduplicated.
    pub fn next_level(&self, level: &[Mask]) -> Vec<Mask> {
        let mut next: Vec<Mask> = level.iter().flat_map(|&f| self.covers(f)).collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    /// Min-norm point of the convex hull of the points of `flat`, or `None`
    /// if it is the origin.
    pub fn flat_beta(&self, flat: Mask) -> Option<BetaRecord> {
        let idx = mask_indices(flat);
        let res = self.wolfe_points(&idx);
        let mut beta = RatVec::zeros(self.points[0].dim());
        for (&s, c) in res.support.iter().zip(&res.coeffs) {
            beta = beta.add(&self.points[s].scale(c));
        }
        if beta.is_zero() {
            return None;
        }
        let norm_sq = beta.norm_sq();
        let mut order: Vec<usize> = (0..res.support.len()).collect();
        order.sort_by_key(|&k| res.support[k]);
        Some(BetaRecord {
            beta,
            norm_sq,
            support: order.iter().map(|&k| res.support[k]).collect(),
            coeffs: order.iter().map(|&k| res.coeffs[k].clone()).collect(),
            hull: idx,
            normalized: false,
        })
    }

    /// Exact Wolfe run on a point subset, using 128-bit arithmetic when it
    /// does not overflow.
    pub fn wolfe_points(&self, idx: &[usize]) -> WolfeResult<Rat> {
        if let Some(g) = &self.gram_q {
            match wolfe(g, idx) {
                Ok(r) => {
                    return WolfeResult { support: r.support, coeffs: r.coeffs.iter().map(Field::to_rat).collect() };
                }
                Err(MinNormError::Overflow) => {}
                Err(e) => panic!("wolfe failed: {e}"),
            }
        }
        wolfe(&self.gram, idx).expect("exact wolfe on rationals")
    }
}

fn dot(a: &RatVec, b: &RatVec) -> Rat {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y).sum()
}

/// Eliminates the pivots of an echelon basis from `v`, keeping entries primitive.
fn reduce(basis: &[(usize, Vec<i128>)], v: &mut [i128]) {
    for (p, row) in basis {
        if v[*p] == 0 {
            continue;
        }
        let a = row[*p];
        let b = v[*p];
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        for (x, r) in v.iter_mut().zip(row) {
            *x = *x * a - b * r;
        }
        let g = gcd_slice(v);
        if g > 1 {
            for x in v.iter_mut() {
                *x /= g;
            }
        }
    }
}

/// Inserts a candidate into a value-keyed map, keeping the first witness.
pub fn merge_candidate(acc: &mut BTreeMap<RatVec, BetaRecord>, rec: BetaRecord) {
    acc.entry(rec.beta.clone()).or_insert(rec);
}

/// All nonzero min-norm points of convex hulls of subsets of `points`,
/// deduplicated by value and sorted canonically.
pub fn candidate_betas(points: &[RatVec]) -> Vec<BetaRecord> {
    if points.is_empty() {
        return Vec::new();
    }
    let engine = FlatEngine::new(points);
    let mut acc = BTreeMap::new();
    let mut level = engine.initial_level();
    while !level.is_empty() {
        for &f in &level {
            if let Some(r) = engine.flat_beta(f) {
                merge_candidate(&mut acc, r);
            }
        }
        level = engine.next_level(&level);
    }
    sort_canonical(acc.into_values().collect())
}

/// Sorts records by [`canonical_cmp`].
pub fn sort_canonical(mut v: Vec<BetaRecord>) -> Vec<BetaRecord> {
    v.sort_by(|a, b| canonical_cmp(&a.beta, &b.beta));
    v
}

/// Sorts each block ascending (stably). Returns `perm` with
/// `sorted[off + k] = beta[off + perm[j][k]]` for block `j`, and the sorted vector.
pub fn chamber_normalize(beta: &RatVec, blocks: &[core::ops::Range<usize>]) -> (Vec<Vec<usize>>, RatVec) {
    let mut sorted = beta.clone();
    let mut perms = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut p: Vec<usize> = (0..b.len()).collect();
        p.sort_by(|&x, &y| beta[b.start + x].cmp(&beta[b.start + y]));
        for (k, &i) in p.iter().enumerate() {
            sorted[b.start + k] = beta[b.start + i].clone();
        }
        perms.push(p);
    }
    (perms, sorted)
}

/// Whether `beta` is ascending within every block.
pub fn in_chamber(beta: &RatVec, blocks: &[core::ops::Range<usize>]) -> bool {
    blocks.iter().all(|b| (b.start + 1..b.end).all(|k| beta[k - 1] <= beta[k]))
}

/// Inverse of per-block sorting permutations: old index to new index.
pub fn inverse_perms(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|p| {
            let mut inv = vec![0; p.len()];
            for (k, &i) in p.iter().enumerate() {
                inv[i] = k;
            }
            inv
        })
        .collect()
}

/// Moves a record of `rep`'s weight set into the Weyl chamber, mapping its
/// witness coordinates along.
pub fn normalize_record(rep: &RepSpec, rec: &BetaRecord) -> BetaRecord {
    let blocks = rep.group().blocks();
    let (perms, sorted) = chamber_normalize(&rec.beta, &blocks);
    let inv = inverse_perms(&perms);
    let map = |i: usize| rep.permute_position(i, &inv).expect("Weyl image of a coordinate");
    let mut pairs: Vec<(usize, Rat)> = rec.support.iter().map(|&i| map(i)).zip(rec.coeffs.iter().cloned()).collect();
    pairs.sort_by_key(|p| p.0);
    let mut hull: Vec<usize> = rec.hull.iter().map(|&i| map(i)).collect();
    hull.sort_unstable();
    BetaRecord {
        norm_sq: sorted.norm_sq(),
        beta: sorted,
        support: pairs.iter().map(|p| p.0).collect(),
        coeffs: pairs.into_iter().map(|p| p.1).collect(),
        hull,
        normalized: true,
    }
}

/// Chamber-normalizes candidates and deduplicates by value, keeping the
/// first record met in the given order; output in canonical order.
pub fn frak_b_from_candidates(rep: &RepSpec, cands: &[BetaRecord]) -> Vec<BetaRecord> {
    let mut acc = BTreeMap::new();
    for c in cands {
        merge_candidate(&mut acc, normalize_record(rep, c));
    }
    sort_canonical(acc.into_values().collect())
}

/// The chamber-normalized set of all nonzero min-norm points of `rep`.
pub fn compute_frak_b(rep: &RepSpec) -> Vec<BetaRecord> {
    let w = rep.weights();
    frak_b_from_candidates(rep, &candidate_betas(&w.gamma))
}

/// Checks the optimality conditions of a record against its point set:
/// `(p, beta) >= (beta, beta)` on the hull with equality on the support,
/// positive coefficients summing to one, and `beta = sum c_i p_i`.
pub fn check_optimality(points: &[RatVec], rec: &BetaRecord) -> bool {
    let nn = rec.beta.norm_sq();
    if nn != rec.norm_sq || nn.is_zero() {
        return false;
    }
    let mut sum = RatVec::zeros(rec.beta.dim());
    let mut total = Rat::zero();
    for (&s, c) in rec.support.iter().zip(&rec.coeffs) {
        if !c.is_positive() || dot(&points[s], &rec.beta) != nn {
            return false;
        }
        sum = sum.add(&points[s].scale(c));
        total += c;
    }
    total.is_one() && sum == rec.beta && rec.hull.iter().all(|&h| dot(&points[h], &rec.beta) >= nn)
}

/// Whole-group chamber of a group: ascending entries in every factor block.
pub fn group_chamber(group: &GroupSpec) -> Vec<core::ops::Range<usize>> {
    group.blocks()
}

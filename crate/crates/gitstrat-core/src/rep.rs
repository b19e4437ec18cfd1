//! Groups `GL_{n_1} x ... x GL_{n_k}`, representations built from exterior
//! powers of their standard representations, coordinates, torus weights and
//! the (infinitesimal) group action.

use crate::exact::{Rat, RatMat, RatVec};
use crate::ring::{det, Ring};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

/// Validation failures for groups and representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    EmptyGroup,
    ZeroFactor(usize),
    UnknownFactor { summand: usize, group: usize },
    BadDegree { summand: usize, degree: usize, size: usize },
    BadRange { summand: usize },
    TooManyCoordinates(usize),
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::EmptyGroup => f.write_str("group has no factors"),
            RepError::ZeroFactor(j) => write!(f, "factor {j} has size 0"),
            RepError::UnknownFactor { summand, group } => {
                write!(f, "summand {summand} refers to missing group factor {group}")
            }
            RepError::BadDegree { summand, degree, size } => {
                write!(f, "summand {summand}: exterior degree {degree} is not in 1..={size}")
            }
            RepError::BadRange { summand } => write!(f, "summand {summand}: sub-block range out of bounds"),
            RepError::TooManyCoordinates(n) => write!(f, "{n} coordinates exceed the supported 128"),
        }
    }
}

/// A product of general linear groups `GL_{n_1} x ... x GL_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factor_sizes: Vec<usize>,
}

impl GroupSpec {
    pub fn new(factor_sizes: Vec<usize>) -> Result<Self, RepError> {
        if factor_sizes.is_empty() {
            return Err(RepError::EmptyGroup);
        }
        if let Some(j) = factor_sizes.iter().position(|&n| n == 0) {
            return Err(RepError::ZeroFactor(j));
        }
        Ok(GroupSpec { factor_sizes })
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.factor_sizes
    }

    pub fn num_factors(&self) -> usize {
        self.factor_sizes.len()
    }

    /// Rank of the maximal torus, `sum n_j`.
    pub fn torus_rank(&self) -> usize {
        self.factor_sizes.iter().sum()
    }

    /// Dimension of the group, `sum n_j^2`.
    pub fn dim(&self) -> usize {
        self.factor_sizes.iter().map(|n| n * n).sum()
    }

    /// Position of the first torus index of factor `j`.
    pub fn offset(&self, j: usize) -> usize {
        self.factor_sizes[..j].iter().sum()
    }

    /// Torus index ranges of the factors.
    pub fn blocks(&self) -> Vec<core::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.factor_sizes.len());
        let mut start = 0;
        for &n in &self.factor_sizes {
            out.push(start..start + n);
            start += n;
        }
        out
    }

    /// Offset of factor `j` in the Lie algebra coordinates (`E_ab` blocks).
    pub fn lie_offset(&self, j: usize) -> usize {
        self.factor_sizes[..j].iter().map(|n| n * n).sum()
    }
}

/// `wedge^degree` of the standard representation of one group factor, or of
/// the span of the basis vectors `range.0 .. range.1` when a range is given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtFactor {
    pub group: usize,
    pub degree: usize,
    pub range: Option<(usize, usize)>,
}

impl ExtFactor {
    pub fn new(group: usize, degree: usize) -> Self {
        ExtFactor { group, degree, range: None }
    }

    pub fn with_range(group: usize, degree: usize, start: usize, end: usize) -> Self {
        ExtFactor { group, degree, range: Some((start, end)) }
    }

    fn span(&self, group: &GroupSpec) -> (usize, usize) {
        self.range.unwrap_or((0, group.factor_sizes[self.group]))
    }
}

/// A tensor product of exterior factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub factors: Vec<ExtFactor>,
}

/// A direct sum of tensor products of exterior powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepSpec {
    group: GroupSpec,
    summands: Vec<Summand>,
    coords: Vec<Coordinate>,
    index: BTreeMap<(usize, Vec<Vec<usize>>), usize>,
    /// Per summand: coordinate offset and per-factor basis lists.
    layout: Vec<SummandLayout>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SummandLayout {
    offset: usize,
    bases: Vec<Vec<Vec<usize>>>,
}

/// A basis vector of a representation.
///
/// `indices[f]` is the strictly increasing multi-index (0-based, within the
/// group factor) of tensor factor `f`; `ordinal` is the 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub summand: usize,
    pub indices: Vec<Vec<usize>>,
    pub ordinal: usize,
}

impl Coordinate {
    /// Concatenated 1-based indices, e.g. `121` for `(p_1 ^ p_2) (x) f_1`.
    pub fn label(&self) -> String {
        let wide = self.indices.iter().flatten().any(|&i| i >= 9);
        let mut s = String::new();
        for (f, idx) in self.indices.iter().enumerate() {
            if wide && f > 0 {
                s.push('|');
            }
            for (k, &i) in idx.iter().enumerate() {
                if wide && k > 0 {
                    s.push('.');
                }
                s.push_str(&format!("{}", i + 1));
            }
        }
        s
    }
}

fn combinations(start: usize, end: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, end: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..end {
            if end - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, end, d, cur, out);
            cur.pop();
        }
    }
    rec(start, end, d, &mut cur, &mut out);
    out
}

/// Sign of the permutation sorting `v` (entries distinct), or 0 on a repeat.
fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl RepSpec {
    /// Validates and lays out a representation.
    ///
    /// Coordinates are ordered summand by summand; within a summand the
    /// multi-index of the first tensor factor varies fastest and each
    /// exterior multi-index runs through its subsets in lexicographic order.
    pub fn new(group: GroupSpec, summands: Vec<Summand>) -> Result<Self, RepError> {
        let mut coords = Vec::new();
        let mut index = BTreeMap::new();
        let mut layout = Vec::with_capacity(summands.len());
        for (s, summand) in summands.iter().enumerate() {
            let mut bases = Vec::with_capacity(summand.factors.len());
            for fac in &summand.factors {
                let Some(&n) = group.factor_sizes.get(fac.group) else {
                    return Err(RepError::UnknownFactor { summand: s, group: fac.group });
                };
                let (a, b) = fac.span(&group);
                if a >= b || b > n {
                    return Err(RepError::BadRange { summand: s });
                }
                if fac.degree == 0 || fac.degree > b - a {
                    return Err(RepError::BadDegree { summand: s, degree: fac.degree, size: b - a });
                }
                bases.push(combinations(a, b, fac.degree));
            }
            let offset = coords.len();
            let count: usize = bases.iter().map(Vec::len).product();
            for local in 0..count {
                let mut rest = local;
                let mut indices = Vec::with_capacity(bases.len());
                for basis in &bases {
                    indices.push(basis[rest % basis.len()].clone());
                    rest /= basis.len();
                }
                let ordinal = coords.len() + 1;
                index.insert((s, indices.clone()), ordinal - 1);
                coords.push(Coordinate { summand: s, indices, ordinal });
            }
            layout.push(SummandLayout { offset, bases });
        }
        if coords.len() > 128 {
            return Err(RepError::TooManyCoordinates(coords.len()));
        }
        Ok(RepSpec { group, summands, coords, index, layout })
    }

    /// `(GL_5 x GL_4, wedge^2 Aff^5 (x) Aff^4)`.
    pub fn flagship() -> Self {
        let group = GroupSpec::new(vec![5, 4]).expect("valid group");
        let summand = Summand { factors: vec![ExtFactor::new(0, 2), ExtFactor::new(1, 1)] };
        RepSpec::new(group, vec![summand]).expect("valid representation")
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// All coordinates in canonical order.
    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    /// Coordinate with the given 1-based ordinal.
    pub fn coordinate(&self, ordinal: usize) -> &Coordinate {
        &self.coords[ordinal - 1]
    }

    /// 0-based position of a basis vector given by summand and multi-indices.
    pub fn position(&self, summand: usize, indices: &[Vec<usize>]) -> Option<usize> {
        self.index.get(&(summand, indices.to_vec())).copied()
    }

    /// Indicator-sum torus character of a coordinate.
    pub fn raw_weight(&self, c: &Coordinate) -> Vec<i64> {
        let mut w = vec![0i64; self.group.torus_rank()];
        for (fac, idx) in self.summands[c.summand].factors.iter().zip(&c.indices) {
            let off = self.group.offset(fac.group);
            for &i in idx {
                w[off + i] += 1;
            }
        }
        w
    }

    /// Raw weight minus its mean on every group block.
    pub fn tstar_weight(&self, c: &Coordinate) -> RatVec {
        center(&self.raw_weight(c), &self.group)
    }

    /// Weight table of all coordinates.
    pub fn weights(&self) -> WeightTable {
        let raw: Vec<Vec<i64>> = self.coords.iter().map(|c| self.raw_weight(c)).collect();
        let gamma = raw.iter().map(|r| center(r, &self.group)).collect();
        WeightTable { raw, gamma }
    }

    /// Per group factor, the total exterior degree of every summand. A
    /// central element `(t_j I)` acts on summand `s` by `prod t_j^deg[s][j]`.
    pub fn scalar_degrees(&self) -> Vec<Vec<i64>> {
        self.summands
            .iter()
            .map(|s| {
                let mut d = vec![0i64; self.group.num_factors()];
                for f in &s.factors {
                    d[f.group] += f.degree as i64;
                }
                d
            })
            .collect()
    }

    /// Position of the image of coordinate `pos` under block-wise index
    /// permutations (`perm[j][i]` is the new index of old index `i`).
    pub fn permute_position(&self, pos: usize, perm: &[Vec<usize>]) -> Option<usize> {
        let c = &self.coords[pos];
        let mut indices = Vec::with_capacity(c.indices.len());
        for (fac, idx) in self.summands[c.summand].factors.iter().zip(&c.indices) {
            let mut v: Vec<usize> = idx.iter().map(|&i| perm[fac.group][i]).collect();
            v.sort_unstable();
            indices.push(v);
        }
        self.position(c.summand, &indices)
    }

    /// Action of `g = (g_1, ..., g_k)` on a dense coefficient vector.
    ///
    /// Each exterior factor acts through the matrix of its minors, so the same
    /// code serves numeric, dual-number and symbolic group elements. Factors
    /// restricted to a sub-block use the corresponding diagonal block of `g_j`.
    pub fn act<R: Ring>(&self, g: &[Vec<Vec<R>>], x: &[R]) -> Vec<R> {
        assert_eq!(g.len(), self.group.num_factors(), "one matrix per group factor");
        assert_eq!(x.len(), self.dim(), "tensor length");
        let mut out = vec![R::zero_elem(); x.len()];
        for (summand, lay) in self.summands.iter().zip(&self.layout) {
            let count: usize = lay.bases.iter().map(Vec::len).product();
            let mut t: Vec<R> = x[lay.offset..lay.offset + count].to_vec();
            let mut stride = 1;
            for (fac, basis) in summand.factors.iter().zip(&lay.bases) {
                let m = exterior_matrix(&g[fac.group], basis);
                t = apply_mode(&t, &m, stride, basis.len());
                stride *= basis.len();
            }
            out[lay.offset..lay.offset + count].clone_from_slice(&t);
        }
        out
    }

    /// Derivative at the identity of the action of `E_ab` in factor `j`.
    pub fn lie_derivative(&self, j: usize, a: usize, b: usize, x: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); x.len()];
        for (pos, c) in self.coords.iter().enumerate() {
            if x[pos].is_zero() {
                continue;
            }
            let factors = &self.summands[c.summand].factors;
            for (f, fac) in factors.iter().enumerate() {
                if fac.group != j {
                    continue;
                }
                let (lo, hi) = fac.span(&self.group);
                if !(lo..hi).contains(&a) || !(lo..hi).contains(&b) {
                    continue;
                }
                for slot in 0..c.indices[f].len() {
                    if c.indices[f][slot] != b {
                        continue;
                    }
                    let mut idx = c.indices[f].clone();
                    idx[slot] = a;
                    let sign = sort_sign(&mut idx);
                    if sign == 0 {
                        continue;
                    }
                    let mut indices = c.indices.clone();
                    indices[f] = idx;
                    let target = self.position(c.summand, &indices).expect("image is a basis vector");
                    if sign > 0 {
                        out[target] += &x[pos];
                    } else {
                        out[target] -= &x[pos];
                    }
                }
            }
        }
        out
    }

    /// The `dim V x dim G` matrix of the Lie algebra action at `x`. Column
    /// `lie_offset(j) + a n_j + b` is the image of `E_ab` in factor `j`.
    pub fn lie_action(&self, x: &[Rat]) -> RatMat {
        let mut m = RatMat::zeros(self.dim(), self.group.dim());
        for (j, &n) in self.group.factor_sizes.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let col = self.group.lie_offset(j) + a * n + b;
                    let d = self.lie_derivative(j, a, b, x);
                    for (r, v) in d.into_iter().enumerate() {
                        m[(r, col)] = v;
                    }
                }
            }
        }
        m
    }
}

fn center(raw: &[i64], group: &GroupSpec) -> RatVec {
    let mut out = Vec::with_capacity(raw.len());
    for block in group.blocks() {
        let n = block.len() as i64;
        let sum: i64 = raw[block.clone()].iter().sum();
        for &r in &raw[block] {
            out.push(Rat::new((r * n - sum).into(), n.into()));
        }
    }
    RatVec(out)
}

/// Matrix of minors `M[J][I] = det g[J, I]` on the given basis of subsets.
fn exterior_matrix<R: Ring>(g: &[Vec<R>], basis: &[Vec<usize>]) -> Vec<Vec<R>> {
    basis
        .iter()
        .map(|rows| {
            basis
                .iter()
                .map(|cols| {
                    let sub: Vec<Vec<R>> = rows.iter().map(|&r| cols.iter().map(|&c| g[r][c].clone()).collect()).collect();
                    det(&sub)
                })
                .collect()
        })
        .collect()
}

/// Applies `m` along one mode of a tensor stored with the given stride.
fn apply_mode<R: Ring>(t: &[R], m: &[Vec<R>], stride: usize, len: usize) -> Vec<R> {
    let mut out = vec![R::zero_elem(); t.len()];
    let block = stride * len;
    for base in (0..t.len()).step_by(block) {
        for inner in 0..stride {
            for i in 0..len {
                let v = &t[base + inner + i * stride];
                if v.is_zero_elem() {
                    continue;
                }
                for (j, row) in m.iter().enumerate() {
                    if row[i].is_zero_elem() {
                        continue;
                    }
                    let k = base + inner + j * stride;
                    out[k] = out[k].plus(&row[i].times(v));
                }
            }
        }
    }
    out
}

/// Projected weights and raw weights of all coordinates of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub raw: Vec<Vec<i64>>,
    pub gamma: Vec<RatVec>,
}

impl WeightTable {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Identity matrices for every group factor.
pub fn identity_element<R: Ring>(group: &GroupSpec) -> Vec<Vec<Vec<R>>> {
    group
        .factor_sizes()
        .iter()
        .map(|&n| (0..n).map(|i| (0..n).map(|j| if i == j { R::one_elem() } else { R::zero_elem() }).collect()).collect())
        .collect()
}

/// Converts rational matrices into ring matrices.
pub fn lift_element<R: Ring>(g: &[Vec<Vec<Rat>>]) -> Vec<Vec<Vec<R>>> {
    g.iter().map(|m| m.iter().map(|r| r.iter().map(R::from_rat).collect()).collect()).collect()
}

/// Determinant of a rational matrix given as rows.
pub fn det_rows(m: &[Vec<Rat>]) -> Rat {
    if m.is_empty() {
        return Rat::one();
    }
    RatMat::from_rows(m.to_vec()).det()
}

//! Relative invariants and equivariant maps of small prehomogeneous spaces.
//!
//! Tensors are dense coefficient vectors over the coordinates of a
//! [`RepSpec`]. Auxiliary variables `u_1, u_2, ...` of pencils and quadratic
//! forms are the polynomial variables `0, 1, ...`.

pub mod points;
pub mod recipe;

use crate::exact::{Rat, RatMat};
use crate::poly::{Monomial, Poly};
use crate::rep::{ExtFactor, GroupSpec, RepSpec, Summand};
use crate::ring::{det, Ring};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

/// Square matrix of polynomials.
pub type PolyMatrix = Vec<Vec<Poly>>;

/// Failures of invariant evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    NotSquare,
    OddSize,
    NotAlternating,
    /// A form has the wrong degree or too many variables.
    WrongDegree,
    Shape { expected: usize, got: usize },
    /// The normalizing form is degenerate.
    DegenerateAnchor,
    /// A value that should be a number still depends on auxiliary variables.
    NotConstant,
    UnknownPrimitive(String),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::NotSquare => f.write_str("matrix is not square"),
            InvariantError::OddSize => f.write_str("Pfaffian of an odd-size matrix"),
            InvariantError::NotAlternating => f.write_str("matrix is not alternating"),
            InvariantError::WrongDegree => f.write_str("form has the wrong degree or arity"),
            InvariantError::Shape { expected, got } => write!(f, "expected {expected} coordinates, got {got}"),
            InvariantError::DegenerateAnchor => f.write_str("normalizing form is degenerate"),
            InvariantError::NotConstant => f.write_str("value depends on auxiliary variables"),
            InvariantError::UnknownPrimitive(p) => write!(f, "unknown primitive `{p}`"),
        }
    }
}

/// A dense element of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    rep: RepSpec,
    coeffs: Vec<Rat>,
}

impl Tensor {
    pub fn new(rep: RepSpec, coeffs: Vec<Rat>) -> Result<Self, InvariantError> {
        if coeffs.len() != rep.dim() {
            return Err(InvariantError::Shape { expected: rep.dim(), got: coeffs.len() });
        }
        Ok(Tensor { rep, coeffs })
    }

    pub fn zero(rep: RepSpec) -> Self {
        let coeffs = vec![Rat::zero(); rep.dim()];
        Tensor { rep, coeffs }
    }

    /// Sum of `c * e_{summand, indices}` with 0-based multi-indices.
    pub fn from_terms(rep: RepSpec, terms: &[(usize, Vec<Vec<usize>>, i64)]) -> Self {
        let mut t = Tensor::zero(rep);
        for (s, idx, c) in terms {
            let p = t.rep.position(*s, idx).expect("basis vector of the representation");
            t.coeffs[p] += Rat::from_integer((*c).into());
        }
        t
    }

    pub fn rep(&self) -> &RepSpec {
        &self.rep
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn get(&self, summand: usize, indices: &[Vec<usize>]) -> Rat {
        self.rep.position(summand, indices).map_or_else(Rat::zero, |p| self.coeffs[p].clone())
    }

    /// Image under a group element.
    pub fn act(&self, g: &[Vec<Vec<Rat>>]) -> Tensor {
        Tensor { rep: self.rep.clone(), coeffs: self.rep.act(g, &self.coeffs) }
    }
}

fn check_square<R>(m: &[Vec<R>]) -> Result<usize, InvariantError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(InvariantError::NotSquare);
    }
    Ok(n)
}

fn pfaffian_rec<R: Ring>(m: &[Vec<R>], idx: &[usize]) -> R {
    if idx.is_empty() {
        return R::one_elem();
    }
    let first = idx[0];
    let mut acc = R::zero_elem();
    for k in 1..idx.len() {
        let a = &m[first][idx[k]];
        if a.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(j, _)| j + 1 != k).map(|(_, &v)| v).collect();
        let t = a.times(&pfaffian_rec(m, &rest));
        acc = if k % 2 == 1 { acc.plus(&t) } else { acc.minus(&t) };
    }
    acc
}

fn check_alternating<R: Ring>(m: &[Vec<R>]) -> Result<usize, InvariantError> {
    let n = check_square(m)?;
    for i in 0..n {
        if !m[i][i].is_zero_elem() {
            return Err(InvariantError::NotAlternating);
        }
        for j in i + 1..n {
            if !m[i][j].plus(&m[j][i]).is_zero_elem() {
                return Err(InvariantError::NotAlternating);
            }
        }
    }
    Ok(n)
}

/// Pfaffian of an alternating matrix, normalized so that the standard
/// symplectic block matrix has Pfaffian 1.
pub fn pfaffian<R: Ring>(m: &[Vec<R>]) -> Result<R, InvariantError> {
    let n = check_alternating(m)?;
    if n % 2 == 1 {
        return Err(InvariantError::OddSize);
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pfaffian_rec(m, &idx))
}

/// Signed principal `4 x 4` sub-Pfaffians of a `5 x 5` alternating matrix:
/// entry `i` is `(-1)^i` times the Pfaffian with row and column `i` removed.
pub fn sub_pfaffians_5(a: &PolyMatrix) -> Result<[Poly; 5], InvariantError> {
    if check_alternating(a)? != 5 {
        return Err(InvariantError::Shape { expected: 5, got: a.len() });
    }
    let mut out: [Poly; 5] = Default::default();
    for (i, slot) in out.iter_mut().enumerate() {
        let keep: Vec<usize> = (0..5).filter(|&k| k != i).collect();
        let sub: PolyMatrix = keep.iter().map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect()).collect();
        let p = pfaffian(&sub)?;
        *slot = if i % 2 == 0 { p } else { p.negate() };
    }
    Ok(out)
}

/// Sign of the permutation sorting the concatenation of two index lists, or
/// 0 when an index repeats.
pub fn wedge_sign(a: &[usize], b: &[usize]) -> i32 {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return 0;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

/// Element of `X (x) wedge^m Aff^n`, keyed by (basis label of `X`, `m`-subset).
pub type SplitTensor = BTreeMap<(Vec<usize>, Vec<usize>), Rat>;

/// Bilinear pairing `X (x) wedge^m Aff^n` times `Y (x) wedge^{n-m} Aff^n`
/// into `X (x) Y`, identifying `wedge^n Aff^n` with `Aff^1` via `p_{1..n} -> 1`.
pub fn wedge_pair(n: usize, a: &SplitTensor, b: &SplitTensor) -> Result<SplitTensor, InvariantError> {
    let mut out = SplitTensor::new();
    for ((la, wa), ca) in a {
        for ((lb, wb), cb) in b {
            if wa.len() + wb.len() != n {
                return Err(InvariantError::Shape { expected: n, got: wa.len() + wb.len() });
            }
            let s = wedge_sign(wa, wb);
            if s == 0 {
                continue;
            }
            let v = out.entry((la.clone(), lb.clone())).or_insert_with(Rat::zero);
            if s > 0 {
                *v += ca * cb;
            } else {
                *v -= ca * cb;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Determinant of a square polynomial matrix.
pub fn det_poly(m: &PolyMatrix) -> Result<Poly, InvariantError> {
    check_square(m)?;
    Ok(det(m))
}

/// Discriminant of a binary form of degree 2 or 3 in variables 0 and 1.
pub fn disc_binary(q: &Poly, degree: u32) -> Result<Rat, InvariantError> {
    if !(2..=3).contains(&degree) || !q.is_homogeneous_of(degree) || q.variables().iter().any(|&v| v > 1) {
        return Err(InvariantError::WrongDegree);
    }
    let c = |i: u16| q.coeff(&Monomial::from_exponents(&[degree as u16 - i, i]));
    let r = |v: i64| Rat::from_integer(v.into());
    Ok(if degree == 2 {
        let (a, b, cc) = (c(0), c(1), c(2));
        &b * &b - r(4) * a * cc
    } else {
        let (a, b, cc, d) = (c(0), c(1), c(2), c(3));
        &b * &b * &cc * &cc - r(4) * &a * &cc * &cc * &cc - r(4) * &b * &b * &b * &d - r(27) * &a * &a * &d * &d
            + r(18) * a * b * cc * d
    })
}

/// Symmetric matrix `M` with `q(x) = x^T M x / 2` for a quadratic form in `n` variables.
pub fn doubled_gram(q: &Poly, n: usize) -> Result<RatMat, InvariantError> {
    if !q.is_homogeneous_of(2) || q.variables().iter().any(|&v| v >= n) {
        return Err(InvariantError::WrongDegree);
    }
    let mut m = RatMat::zeros(n, n);
    for (mono, c) in q.terms() {
        let vars: Vec<usize> = mono.support().collect();
        match vars.as_slice() {
            [i] => m[(*i, *i)] = c * Rat::from_integer(2.into()),
            [i, j] => {
                m[(*i, *j)] = c.clone();
                m[(*j, *i)] = c.clone();
            }
            _ => return Err(InvariantError::WrongDegree),
        }
    }
    Ok(m)
}

/// Discriminant of a quadratic form in `n` variables, scaled to be 1 at `anchor`.
pub fn disc_quadratic_form(q: &Poly, n: usize, anchor: &Poly) -> Result<Rat, InvariantError> {
    let d = doubled_gram(anchor, n)?.det();
    if d.is_zero() {
        return Err(InvariantError::DegenerateAnchor);
    }
    Ok(doubled_gram(q, n)?.det() / d)
}

fn var(i: usize) -> Poly {
    Poly::var(i)
}

/// The split form `v_1 v_4 - v_2 v_3`.
pub fn anchor_quaternary() -> Poly {
    var(0).times(&var(3)).minus(&var(1).times(&var(2)))
}

/// The ternary form `u_1 u_3 + u_2^2`.
pub fn anchor_ternary() -> Poly {
    var(0).times(&var(2)).plus(&var(1).power(2))
}

/// `sum_k u_k M_k` for rational matrices `M_k`.
pub fn pencil(mats: &[Vec<Vec<Rat>>]) -> PolyMatrix {
    let r = mats.first().map_or(0, Vec::len);
    let c = mats.first().and_then(|m| m.first()).map_or(0, Vec::len);
    let mut out = vec![vec![Poly::zero(); c]; r];
    for (k, m) in mats.iter().enumerate() {
        for i in 0..r {
            for j in 0..c {
                if !m[i][j].is_zero() {
                    out[i][j] = out[i][j].plus(&var(k).scale(&m[i][j]));
                }
            }
        }
    }
    out
}

fn ext(group: usize, degree: usize) -> ExtFactor {
    ExtFactor::new(group, degree)
}

fn build(sizes: Vec<usize>, summands: Vec<Vec<ExtFactor>>) -> RepSpec {
    let group = GroupSpec::new(sizes).expect("valid group");
    RepSpec::new(group, summands.into_iter().map(|factors| Summand { factors }).collect()).expect("valid representation")
}

/// `(GL_n x GL_m, wedge^2 Aff^n (x) Aff^m)`.
pub fn rep_wedge2_tensor(n: usize, m: usize) -> RepSpec {
    build(vec![n, m], vec![vec![ext(0, 2), ext(1, 1)]])
}

/// `(GL_a x GL_b x GL_c, Aff^a (x) Aff^b (x) Aff^c)`.
pub fn rep_tensor3(a: usize, b: usize, c: usize) -> RepSpec {
    build(vec![a, b, c], vec![vec![ext(0, 1), ext(1, 1), ext(2, 1)]])
}

/// `(GL_4 x GL_3, wedge^2 Aff^4 (x) Aff^3 + Aff^4)`.
pub fn rep_wedge43_plus4() -> RepSpec {
    build(vec![4, 3], vec![vec![ext(0, 2), ext(1, 1)], vec![ext(0, 1)]])
}

/// `(GL_3 x GL_3 x GL_2 x GL_1, wedge^2 W_2 + W_1 (x) W_2 (x) Aff^2)` with
/// the `GL_1` factor scaling the first summand.
pub fn rep_wedge3_plus_332() -> RepSpec {
    build(vec![3, 3, 2, 1], vec![vec![ext(1, 2), ext(3, 1)], vec![ext(0, 1), ext(1, 1), ext(2, 1)]])
}

fn check_len(rep: &RepSpec, x: &[Rat]) -> Result<(), InvariantError> {
    if x.len() != rep.dim() {
        return Err(InvariantError::Shape { expected: rep.dim(), got: x.len() });
    }
    Ok(())
}

/// The alternating matrices `A_k` of an element of `wedge^2 Aff^n (x) Aff^m`
/// stored in summand `summand`, where the second factor has size `m`.
pub fn wedge_slices(rep: &RepSpec, x: &[Rat], summand: usize, n: usize, m: usize) -> Vec<Vec<Vec<Rat>>> {
    (0..m)
        .map(|k| {
            let mut a = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let p = rep.position(summand, &[vec![i, j], vec![k]]).expect("coordinate");
                    a[i][j] = x[p].clone();
                    a[j][i] = -x[p].clone();
                }
            }
            a
        })
        .collect()
}

/// Slices `x_{abc}` of a 3-tensor in summand `summand` along `axis`; the
/// remaining two indices (in order) index rows and columns.
pub fn tensor3_slices(rep: &RepSpec, x: &[Rat], summand: usize, dims: [usize; 3], axis: usize) -> Vec<Vec<Vec<Rat>>> {
    let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    (0..dims[axis])
        .map(|s| {
            (0..dims[others[0]])
                .map(|r| {
                    (0..dims[others[1]])
                        .map(|c| {
                            let mut idx = [0usize; 3];
                            idx[axis] = s;
                            idx[others[0]] = r;
                            idx[others[1]] = c;
                            let p = rep
                                .position(summand, &[vec![idx[0]], vec![idx[1]], vec![idx[2]]])
                                .expect("coordinate");
                            x[p].clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Signed sub-Pfaffians of `u_1 x_1 + u_2 x_2 + u_3 x_3` for `x` in
/// `wedge^2 Aff^5 (x) Aff^3`.
pub fn pfaff_vector_53(x: &[Rat]) -> Result<[Poly; 5], InvariantError> {
    let rep = rep_wedge2_tensor(5, 3);
    check_len(&rep, x)?;
    sub_pfaffians_5(&pencil(&wedge_slices(&rep, x, 0, 5, 3)))
}

/// Monomials `u_1^2, u_1 u_2, u_1 u_3, u_2^2, u_2 u_3, u_3^2`.
pub fn ternary_quadratic_basis() -> [Monomial; 6] {
    let m = |e: [u16; 3]| Monomial::from_exponents(&e);
    [m([2, 0, 0]), m([1, 1, 0]), m([1, 0, 1]), m([0, 2, 0]), m([0, 1, 1]), m([0, 0, 2])]
}

/// Wedge of the five sub-Pfaffian quadrics, in the dual of the quadratic
/// basis: `y_k = (-1)^k` times the minor omitting basis monomial `k`.
pub fn phi_wedge53(x: &[Rat]) -> Result<[Rat; 6], InvariantError> {
    let q = pfaff_vector_53(x)?;
    let basis = ternary_quadratic_basis();
    let c: Vec<Vec<Rat>> = q.iter().map(|p| basis.iter().map(|m| p.coeff(m)).collect()).collect();
    let mut y: [Rat; 6] = Default::default();
    for (k, slot) in y.iter_mut().enumerate() {
        let cols: Vec<usize> = (0..6).filter(|&j| j != k).collect();
        let d = RatMat::from_rows(c.clone()).submatrix(&[0, 1, 2, 3, 4], &cols).det();
        *slot = if k % 2 == 0 { d } else { -d };
    }
    Ok(y)
}

/// The relative invariant of `wedge^2 Aff^5 (x) Aff^3`: minus the determinant
/// of the symmetric arrangement of `phi_wedge53`.
pub fn p_wedge53(x: &[Rat]) -> Result<Rat, InvariantError> {
    let y = phi_wedge53(x)?;
    let m = RatMat::from_rows(vec![
        vec![y[0].clone(), y[1].clone(), y[2].clone()],
        vec![y[1].clone(), y[3].clone(), y[4].clone()],
        vec![y[2].clone(), y[4].clone(), y[5].clone()],
    ]);
    Ok(-m.det())
}

/// Sign of a sequence of distinct indices relative to increasing order.
fn levi(idx: &[usize]) -> i32 {
    wedge_sign(idx, &[])
}

/// The quaternary quadratic form attached to `x` in `wedge^2 Aff^4 (x) Aff^3`.
pub fn phi_sym2_of_wedge43(x: &[Rat]) -> Result<Poly, InvariantError> {
    let rep = rep_wedge2_tensor(4, 3);
    check_len(&rep, x)?;
    let a = wedge_slices(&rep, x, 0, 4, 3);
    let mut coeff = [[Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()], Default::default(), Default::default(), Default::default()];
    for (perm, sg) in PERMS3 {
        let (a1, a2, a3) = (&a[perm[0]], &a[perm[1]], &a[perm[2]]);
        for i1 in 0..4 {
            for i2 in 0..4 {
                if a1[i1][i2].is_zero() {
                    continue;
                }
                for i3 in 0..4 {
                    for i5 in 0..4 {
                        let e = levi(&[i1, i2, i3, i5]);
                        if e == 0 {
                            continue;
                        }
                        for i4 in 0..4 {
                            if a2[i3][i4].is_zero() {
                                continue;
                            }
                            for i6 in 0..4 {
                                if a3[i5][i6].is_zero() {
                                    continue;
                                }
                                let t = &a1[i1][i2] * &a2[i3][i4] * &a3[i5][i6];
                                if sg * e > 0 {
                                    coeff[i4][i6] += t;
                                } else {
                                    coeff[i4][i6] -= t;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut q = Poly::zero();
    let twelfth = Rat::new(1.into(), 12.into());
    for (i, row) in coeff.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            q = q.plus(&var(i).times(&var(j)).scale(&(c * &twelfth)));
        }
    }
    Ok(q)
}

/// Degree 12 invariant of `wedge^2 Aff^4 (x) Aff^3`: the discriminant of
/// [`phi_sym2_of_wedge43`], equal to 1 at the split form.
pub fn p_wedge43(x: &[Rat]) -> Result<Rat, InvariantError> {
    disc_quadratic_form(&phi_sym2_of_wedge43(x)?, 4, &anchor_quaternary())
}

const PERMS3: [([usize; 3], i32); 6] =
    [([0, 1, 2], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];

type Split433 = (Vec<Vec<Vec<Rat>>>, Vec<Rat>);

fn split_433(x: &[Rat]) -> Result<Split433, InvariantError> {
    let rep = rep_wedge43_plus4();
    check_len(&rep, x)?;
    let a = wedge_slices(&rep, x, 0, 4, 3);
    let x0 = (0..4).map(|i| x[rep.position(1, &[vec![i]]).expect("coordinate")].clone()).collect();
    Ok((a, x0))
}

/// `a ^ p_i ^ x0` in `wedge^4 Aff^4 = Aff^1` for an alternating matrix `a`.
fn wedge_a_p_x(a: &[Vec<Rat>], i: usize, x0: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for p in 0..4 {
        for q in p + 1..4 {
            if a[p][q].is_zero() {
                continue;
            }
            for (r, xr) in x0.iter().enumerate() {
                let e = levi(&[p, q, i, r]);
                if e != 0 && !xr.is_zero() {
                    let t = &a[p][q] * xr;
                    if e > 0 {
                        s += t;
                    } else {
                        s -= t;
                    }
                }
            }
        }
    }
    s
}

/// The degree `(3, 2)` invariant of `wedge^2 Aff^4 (x) Aff^3 + Aff^4`.
pub fn p1_433(x: &[Rat]) -> Result<Rat, InvariantError> {
    let (a, x0) = split_433(x)?;
    let mut tot = Rat::zero();
    for (perm, sg) in PERMS3 {
        let (a1, a2, a3) = (&a[perm[0]], &a[perm[1]], &a[perm[2]]);
        let mut s = Rat::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                if a3[i][j].is_zero() {
                    continue;
                }
                let t = wedge_a_p_x(a1, i, &x0) * wedge_a_p_x(a2, j, &x0) - wedge_a_p_x(a1, j, &x0) * wedge_a_p_x(a2, i, &x0);
                s += &a3[i][j] * t;
            }
        }
        if sg > 0 {
            tot += s;
        } else {
            tot -= s;
        }
    }
    Ok(-tot / Rat::from_integer(6.into()))
}

/// Pfaffian of `u_1 x_1 + u_2 x_2 + u_3 x_3` for the `wedge^2` part.
pub fn phi3_433(x: &[Rat]) -> Result<Poly, InvariantError> {
    let (a, _) = split_433(x)?;
    pfaffian(&pencil(&a))
}

/// Discriminant of [`phi3_433`], equal to 1 at `u_1 u_3 + u_2^2`.
pub fn p2_433(x: &[Rat]) -> Result<Rat, InvariantError> {
    disc_quadratic_form(&phi3_433(x)?, 3, &anchor_ternary())
}

/// `det(v_1 M_1 + v_2 M_2)` for `x` in `Aff^n (x) Aff^n (x) Aff^2` with
/// `M_c[a][b] = x_{abc}`.
pub fn binary_det_form(rep: &RepSpec, x: &[Rat], summand: usize, n: usize) -> Result<Poly, InvariantError> {
    let m = tensor3_slices(rep, x, summand, [n, n, 2], 2);
    det_poly(&pencil(&m))
}

/// Degree 4 invariant of `Aff^2 (x) Aff^2 (x) Aff^2`.
pub fn p_222(x: &[Rat]) -> Result<Rat, InvariantError> {
    let rep = rep_tensor3(2, 2, 2);
    check_len(&rep, x)?;
    disc_binary(&binary_det_form(&rep, x, 0, 2)?, 2)
}

/// Degree 12 invariant of `Aff^3 (x) Aff^3 (x) Aff^2`.
pub fn p1_332(x: &[Rat]) -> Result<Rat, InvariantError> {
    let rep = rep_tensor3(3, 3, 2);
    check_len(&rep, x)?;
    disc_binary(&binary_det_form(&rep, x, 0, 3)?, 3)
}

/// Degree 4 invariant of `wedge^2 Aff^4 (x) Aff^2`.
pub fn p_wedge42(x: &[Rat]) -> Result<Rat, InvariantError> {
    let rep = rep_wedge2_tensor(4, 2);
    check_len(&rep, x)?;
    disc_binary(&pfaffian(&pencil(&wedge_slices(&rep, x, 0, 4, 2)))?, 2)
}

/// The value `-u_1^2 - u_2 u_3` of `det(sum_a u_a A_a)` at the standard point.
pub fn anchor_322() -> Poly {
    var(0).power(2).plus(&var(1).times(&var(2))).negate()
}

/// Degree 6 invariant of `Aff^3 (x) Aff^2 (x) Aff^2`: the discriminant of the
/// ternary form `det(sum_a u_a A_a)`, `A_a[b][c] = x_{abc}`.
pub fn p_322(x: &[Rat]) -> Result<Rat, InvariantError> {
    let rep = rep_tensor3(3, 2, 2);
    check_len(&rep, x)?;
    let a = tensor3_slices(&rep, x, 0, [3, 2, 2], 0);
    disc_quadratic_form(&det_poly(&pencil(&a))?, 3, &anchor_322())
}

/// The equivariant map `W_1 (x) W_2 (x) Aff^2 -> W_2^{(x)3}` for the
/// `3 x 3 x 2` summand; entry `9 b_1 + 3 b_2 + b_3`.
pub fn phi_332(x: &[Rat]) -> Result<Vec<Rat>, InvariantError> {
    let rep = rep_wedge3_plus_332();
    check_len(&rep, x)?;
    let at = |a: usize, b: usize, c: usize| x[rep.position(1, &[vec![a], vec![b], vec![c]]).expect("coordinate")].clone();
    // y[(a, b), (a', b')] = x_{ab1} x_{a'b'2} - x_{ab2} x_{a'b'1}
    let mut y = vec![vec![Rat::zero(); 9]; 9];
    for p in 0..9 {
        for q in 0..9 {
            let (a, b, a2, b2) = (p / 3, p % 3, q / 3, q % 3);
            y[p][q] = at(a, b, 0) * at(a2, b2, 1) - at(a, b, 1) * at(a2, b2, 0);
        }
    }
    let perms: Vec<([usize; 3], i32)> = PERMS3.to_vec();
    let mut out = vec![Rat::zero(); 27];
    for (pb, sb) in &perms {
        let (b1, b2, b4) = (pb[0], pb[1], pb[2]);
        for b3 in 0..3 {
            for b5 in 0..3 {
                for b6 in 0..3 {
                    let mut t = Rat::zero();
                    for (pa, sa) in &perms {
                        for (pa2, sa2) in &perms {
                            let v = &y[pa[0] * 3 + b1][pa2[0] * 3 + b4]
                                * &y[pa[1] * 3 + b2][pa2[1] * 3 + b5]
                                * &y[pa[2] * 3 + b3][pa2[2] * 3 + b6];
                            if sa * sa2 > 0 {
                                t += v;
                            } else {
                                t -= v;
                            }
                        }
                    }
                    let k = 9 * b3 + 3 * b5 + b6;
                    if *sb > 0 {
                        out[k] -= t;
                    } else {
                        out[k] += t;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The degree `(3, 6)` invariant of `wedge^2 W_2 + W_1 (x) W_2 (x) Aff^2`.
pub fn p2_332(x: &[Rat]) -> Result<Rat, InvariantError> {
    let rep = rep_wedge3_plus_332();
    let phi = phi_332(x)?;
    let at = |i: usize, j: usize| x[rep.position(0, &[vec![i, j], vec![0]]).expect("coordinate")].clone();
    // x_1 ^ q_i in wedge^3 W_2.
    let s = [at(1, 2), -at(0, 2), at(0, 1)];
    let mut tot = Rat::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                tot += &phi[9 * i + 3 * j + k] * &s[i] * &s[j] * &s[k];
            }
        }
    }
    Ok(tot / Rat::from_integer(6.into()))
}

/// An implemented invariant together with its native representation and
/// the exponents `e_j` of its character `prod_j det(g_j)^{e_j}`.
#[derive(Clone, Debug)]
pub struct InvariantSpec {
    pub name: &'static str,
    pub rep: RepSpec,
    pub character: Vec<i64>,
    pub degree: u32,
    pub eval: fn(&[Rat]) -> Result<Rat, InvariantError>,
}

/// All implemented invariants.
pub fn catalogue() -> Vec<InvariantSpec> {
    let spec = |name, rep, character: &[i64], degree, eval| InvariantSpec { name, rep, character: character.to_vec(), degree, eval };
    vec![
        spec("p_222", rep_tensor3(2, 2, 2), &[2, 2, 2], 4, p_222 as fn(&[Rat]) -> _),
        spec("p1_332", rep_tensor3(3, 3, 2), &[4, 4, 6], 12, p1_332),
        spec("p_322", rep_tensor3(3, 2, 2), &[2, 3, 3], 6, p_322),
        spec("p_wedge42", rep_wedge2_tensor(4, 2), &[2, 2], 4, p_wedge42),
        spec("p_wedge53", rep_wedge2_tensor(5, 3), &[12, 10], 30, p_wedge53),
        spec("p_wedge43", rep_wedge2_tensor(4, 3), &[6, 4], 12, p_wedge43),
        spec("p1_433", rep_wedge43_plus4(), &[2, 1], 5, p1_433),
        spec("p2_433", rep_wedge43_plus4(), &[3, 2], 6, p2_433),
        spec("p2_332", rep_wedge3_plus_332(), &[2, 4, 3, 3], 9, p2_332),
    ]
}

/// Looks up an invariant by name.
pub fn primitive(name: &str) -> Result<InvariantSpec, InvariantError> {
    catalogue().into_iter().find(|s| s.name == name).ok_or_else(|| InvariantError::UnknownPrimitive(name.into()))
}

/// `prod_j det(g_j)^{e_j}`.
pub fn character_value(g: &[Vec<Vec<Rat>>], exps: &[i64]) -> Rat {
    let mut v = Rat::one();
    for (m, &e) in g.iter().zip(exps) {
        let d = crate::rep::det_rows(m);
        let p = d.power(e.unsigned_abs() as u32);
        v *= if e >= 0 { p } else { Rat::one() / p };
    }
    v
}

#[cfg(test)]
mod tests;

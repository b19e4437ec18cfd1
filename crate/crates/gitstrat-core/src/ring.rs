//! Commutative rings used by the generic group action and determinant code.

use crate::exact::Rat;
use core::fmt::Debug;
use num_traits::{One, Zero};

/// A commutative ring with unit containing the rationals.
///
/// Method names avoid the `num_traits` and `core::ops` vocabularies so the
/// trait can be implemented for [`Rat`] without ambiguity.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rat(v: &Rat) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rat(&Rat::from_integer(v.into()))
    }

    /// `self^e` by repeated squaring.
    fn power(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_elem();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for Rat {
    fn zero_elem() -> Self {
        Rat::zero()
    }
    fn one_elem() -> Self {
        Rat::one()
    }
    fn from_rat(v: &Rat) -> Self {
        v.clone()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// Dual numbers `a + b eps` with `eps^2 = 0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub re: Rat,
    pub eps: Rat,
}

impl Dual {
    pub fn new(re: Rat, eps: Rat) -> Self {
        Dual { re, eps }
    }
}

impl Ring for Dual {
    fn zero_elem() -> Self {
        Dual::new(Rat::zero(), Rat::zero())
    }
    fn one_elem() -> Self {
        Dual::new(Rat::one(), Rat::zero())
    }
    fn from_rat(v: &Rat) -> Self {
        Dual::new(v.clone(), Rat::zero())
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.eps)
    }
    fn plus(&self, o: &Self) -> Self {
        Dual::new(&self.re + &o.re, &self.eps + &o.eps)
    }
    fn minus(&self, o: &Self) -> Self {
        Dual::new(&self.re - &o.re, &self.eps - &o.eps)
    }
    fn times(&self, o: &Self) -> Self {
        Dual::new(&self.re * &o.re, &self.re * &o.eps + &self.eps * &o.re)
    }
    fn negate(&self) -> Self {
        Dual::new(-&self.re, -&self.eps)
    }
}

/// Determinant of a square matrix over any ring by Laplace expansion along
/// the first row. Intended for the small sizes (at most 6) used here.
pub fn det<R: Ring>(m: &[alloc::vec::Vec<R>]) -> R {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let cols: alloc::vec::Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols)
}

fn det_rec<R: Ring>(m: &[alloc::vec::Vec<R>], row: usize, cols: &[usize]) -> R {
    if cols.is_empty() {
        return R::one_elem();
    }
    let mut acc = R::zero_elem();
    for (k, &c) in cols.iter().enumerate() {
        let a = &m[row][c];
        if a.is_zero_elem() {
            continue;
        }
        let rest: alloc::vec::Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.times(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

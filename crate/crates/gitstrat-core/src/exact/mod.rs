//! Exact rational arithmetic, linear algebra and convex projection primitives.
//!
//! Everything here is exact. The hot loops of the enumeration engine run on
//! [`Q128`], a checked 128-bit rational that reports overflow instead of
//! wrapping; callers retry on [`Rat`] whenever that happens.

mod field;
mod linalg;
mod minnorm;

pub use field::{Field, Overflow, Q128};
pub use linalg::{rank, solve, Solution};
pub use minnorm::{affine_min_norm, in_hull, min_norm_affine, wolfe, MinNormError, WolfeResult};

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Arbitrary precision rational, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Rational from an integer.
pub fn ri(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Errors raised by the exact primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// Two operands have different dimensions.
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
        }
    }
}

/// A fixed-dimension vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    /// Zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        RatVec(alloc::vec![Rat::zero(); dim])
    }

    /// Vector from integer entries.
    pub fn from_ints(v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| ri(x)).collect())
    }

    /// `scale * (entries)` for integer entries, the usual way vectors are printed.
    pub fn scaled(scale: Rat, v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| &scale * ri(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * s).collect())
    }

    /// Squared norm `(v, v)`.
    pub fn norm_sq(&self) -> Rat {
        self.0.iter().map(|a| a * a).sum()
    }

    /// Clears denominators: returns the primitive integer vector `n` and the
    /// positive denominator `d` with `self = n / d` and `gcd(n, d) = 1`.
    pub fn to_primitive(&self) -> (Vec<Int>, Int) {
        let mut den = Int::one();
        for x in &self.0 {
            den = den.lcm(x.denom());
        }
        let nums: Vec<Int> = self.0.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let mut g = den.clone();
        for n in &nums {
            g = g.gcd(n);
        }
        if g.is_zero() || g.is_one() {
            return (nums, den);
        }
        (nums.iter().map(|n| n / &g).collect(), den / g)
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_primitive();
        if !d.is_one() {
            write!(f, "(1/{d})")?;
        }
        write!(f, "(")?;
        for (k, x) in n.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Exact dot product.
pub fn inner(a: &RatVec, b: &RatVec) -> Result<Rat, ExactError> {
    if a.dim() != b.dim() {
        return Err(ExactError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

/// A dense rectangular matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: alloc::vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape");
        RatVec((0..self.rows).map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        linalg::det(self)
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMat {
        let mut m = RatMat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

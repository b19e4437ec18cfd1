//! Exact ordered fields used by the generic solvers.

use super::{Int, Rat};
use core::cmp::Ordering;
use core::fmt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Marker for an arithmetic overflow in a fixed-width field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

impl fmt::Display for Overflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("fixed-width arithmetic overflow")
    }
}

/// An exact ordered field whose operations may report overflow.
///
/// [`Rat`] never overflows. [`Q128`] overflows when a reduced numerator or
/// denominator leaves the `i128` range.
pub trait Field: Clone + PartialEq + Eq + PartialOrd + Ord + core::hash::Hash + fmt::Debug + Sized {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rat(v: &Rat) -> Result<Self, Overflow>;
    fn to_rat(&self) -> Rat;
    fn try_add(&self, o: &Self) -> Result<Self, Overflow>;
    fn try_sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn try_mul(&self, o: &Self) -> Result<Self, Overflow>;
    /// Division; the divisor must be nonzero.
    fn try_div(&self, o: &Self) -> Result<Self, Overflow>;
    fn try_neg(&self) -> Result<Self, Overflow>;
    /// Sign as -1, 0 or 1.
    fn sign(&self) -> i32;
}

impl Field for Rat {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(Int::from(v))
    }
    fn from_rat(v: &Rat) -> Result<Self, Overflow> {
        Ok(v.clone())
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn try_add(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn try_sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn try_div(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self / o)
    }
    fn try_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn sign(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
}

/// A reduced rational with `i128` numerator and positive `i128` denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Q128 {
    num: i128,
    den: i128,
}

impl fmt::Debug for Q128 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

impl Q128 {
    /// Builds a reduced value; fails only if normalization overflows.
    pub fn new(num: i128, den: i128) -> Result<Self, Overflow> {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().ok_or(Overflow)?;
            d = d.checked_neg().ok_or(Overflow)?;
        }
        Ok(Q128 { num: n, den: d })
    }

    pub const fn from_int(v: i128) -> Self {
        Q128 { num: v, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }
}

impl PartialOrd for Q128 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q128 {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        match (self.num.checked_mul(other.den), other.num.checked_mul(self.den)) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_rat().cmp(&other.to_rat()),
        }
    }
}

impl Field for Q128 {
    fn zero_value() -> Self {
        Q128 { num: 0, den: 1 }
    }
    fn one_value() -> Self {
        Q128 { num: 1, den: 1 }
    }
    fn from_i64(v: i64) -> Self {
        Q128 { num: v as i128, den: 1 }
    }
    fn from_rat(v: &Rat) -> Result<Self, Overflow> {
        let n = v.numer().to_i128().ok_or(Overflow)?;
        let d = v.denom().to_i128().ok_or(Overflow)?;
        Ok(Q128 { num: n, den: d })
    }
    fn to_rat(&self) -> Rat {
        Rat::new(Int::from(self.num), Int::from(self.den))
    }
    fn try_add(&self, o: &Self) -> Result<Self, Overflow> {
        if self.den == o.den {
            return Q128::new(self.num.checked_add(o.num).ok_or(Overflow)?, self.den);
        }
        let g = gcd(self.den, o.den);
        let a = self.den / g;
        let b = o.den / g;
        let n1 = self.num.checked_mul(b).ok_or(Overflow)?;
        let n2 = o.num.checked_mul(a).ok_or(Overflow)?;
        let n = n1.checked_add(n2).ok_or(Overflow)?;
        let d = self.den.checked_mul(b).ok_or(Overflow)?;
        Q128::new(n, d)
    }
    fn try_sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.try_add(&o.try_neg()?)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, Overflow> {
        if self.num == 0 || o.num == 0 {
            return Ok(Self::zero_value());
        }
        let g1 = gcd(self.num, o.den);
        let g2 = gcd(o.num, self.den);
        let n = (self.num / g1).checked_mul(o.num / g2).ok_or(Overflow)?;
        let d = (self.den / g2).checked_mul(o.den / g1).ok_or(Overflow)?;
        Ok(Q128 { num: n, den: d })
    }
    fn try_div(&self, o: &Self) -> Result<Self, Overflow> {
        assert!(o.num != 0, "division by zero");
        let inv = if o.num < 0 {
            Q128 { num: o.den.checked_neg().ok_or(Overflow)?, den: o.num.checked_neg().ok_or(Overflow)? }
        } else {
            Q128 { num: o.den, den: o.num }
        };
        self.try_mul(&inv)
    }
    fn try_neg(&self) -> Result<Self, Overflow> {
        Ok(Q128 { num: self.num.checked_neg().ok_or(Overflow)?, den: self.den })
    }
    fn sign(&self) -> i32 {
        self.num.signum() as i32
    }
}

//! Sparse multivariate polynomials with rational coefficients.

use crate::exact::Rat;
use crate::ring::Ring;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use num_traits::{One, Signed, Zero};

/// Exponent vector with trailing zeros removed, so equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The monomial `x_var`.
    pub fn var(var: usize) -> Self {
        let mut e = alloc::vec![0; var + 1];
        e[var] = 1;
        Monomial(e)
    }

    /// Monomial from an exponent vector.
    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut e = exps.to_vec();
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        let e: Vec<u16> = (0..n).map(|i| self.exponent(i) + o.exponent(i)).collect();
        Monomial(e)
    }
}

/// A polynomial as a map from monomials to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// The variable `x_var`.
    pub fn var(var: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(var), Rat::one());
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Variables occurring in some term, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Evaluates at a point; missing variables are treated as zero.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).cloned().unwrap_or_else(Rat::zero);
                    t *= x.power(u32::from(e));
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes polynomials for variables; missing entries keep the variable.
    pub fn substitute(&self, images: &[Option<Poly>]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match images.get(i) {
                    Some(Some(p)) => p.clone(),
                    _ => Poly::var(i),
                };
                t = t.times(&base.power(u32::from(e)));
            }
            out = out.plus(&t);
        }
        out
    }

    /// Formats with the given variable names (`x{i}` when a name is missing).
    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if !a.is_one() || is_const {
                let _ = write!(s, "{a}");
                if !is_const {
                    s.push('*');
                }
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                match names.get(i) {
                    Some(n) => s.push_str(n),
                    None => {
                        let _ = write!(s, "x{i}");
                    }
                }
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl Ring for Poly {
    fn zero_elem() -> Self {
        Poly::zero()
    }
    fn one_elem() -> Self {
        Poly::constant(Rat::one())
    }
    fn from_rat(v: &Rat) -> Self {
        Poly::constant(v.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ri};
    use alloc::vec;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0u16..3, 0u16..3, 0u16..3, -5i64..6), 0..5).prop_map(|ts| {
            let mut p = Poly::zero();
            for (a, b, c, k) in ts {
                p.add_term(Monomial::from_exponents(&[a, b, c]), ri(k));
            }
            p
        })
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Poly::var(0);
        let d = x.minus(&x);
        assert!(d.is_zero());
        assert_eq!(d.degree(), None);
    }

    #[test]
    fn display_and_eval() {
        let u = |i| Poly::var(i);
        let q = u(0).times(&u(2)).minus(&u(1).power(2));
        assert_eq!(q.fmt_with(&["u1", "u2", "u3"]), "u1*u3 - u2^2");
        assert_eq!(q.eval(&[ri(2), ri(3), rat(1, 2)]), ri(-8));
        assert!(q.is_homogeneous_of(2));
    }

    #[test]
    fn substitution() {
        let p = Poly::var(0).times(&Poly::var(1));
        let s = p.substitute(&[Some(Poly::var(1).plus(&Poly::one_elem())), None]);
        assert_eq!(s, Poly::var(1).power(2).plus(&Poly::var(1)));
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert_eq!(a.plus(&b).minus(&b), a.clone());
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_poly(), b in small_poly(), x in -4i64..5, y in -4i64..5, z in -4i64..5) {
            let pt = vec![ri(x), ri(y), ri(z)];
            prop_assert_eq!(a.times(&b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        }
    }
}

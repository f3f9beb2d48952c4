//! Exact sparse Laurent polynomials in `x, y, p, q` over the integers.
//!
//! `x` and `y` only ever carry nonnegative exponents; `p` and `q` may be
//! negative so that `q -> 1/q` stays inside the ring. Coefficients are
//! arbitrary precision. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose derived ordering is lexicographic on
//! `(ex, ey, ep, eq)`; canonical text lists terms from largest to smallest.

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    P,
    Q,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::P, Var::Q];

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::P => 'p',
            Var::Q => 'q',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'p' => Some(Var::P),
            'q' => Some(Var::Q),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exponent vector `x^ex y^ey p^ep q^eq`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ep: i32,
    pub eq: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        ex: 0,
        ey: 0,
        ep: 0,
        eq: 0,
    };

    pub const fn new(ex: u32, ey: u32, ep: i32, eq: i32) -> Self {
        Monomial { ex, ey, ep, eq }
    }

    pub const fn x_pow(e: u32) -> Self {
        Monomial::new(e, 0, 0, 0)
    }

    pub const fn y_pow(e: u32) -> Self {
        Monomial::new(0, e, 0, 0)
    }

    pub const fn p_pow(e: i32) -> Self {
        Monomial::new(0, 0, e, 0)
    }

    pub const fn q_pow(e: i32) -> Self {
        Monomial::new(0, 0, 0, e)
    }

    pub fn exponent(&self, var: Var) -> i64 {
        match var {
            Var::X => self.ex as i64,
            Var::Y => self.ey as i64,
            Var::P => self.ep as i64,
            Var::Q => self.eq as i64,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    /// Builds a monomial from wide exponents, rejecting negative `x`/`y`
    /// exponents and anything that does not fit.
    pub fn from_exponents(ex: i64, ey: i64, ep: i64, eq: i64) -> Result<Self> {
        if ex < 0 {
            return Err(Error::NegativeExponent { var: Var::X });
        }
        if ey < 0 {
            return Err(Error::NegativeExponent { var: Var::Y });
        }
        Ok(Monomial {
            ex: u32::try_from(ex).map_err(|_| Error::ExponentOverflow)?,
            ey: u32::try_from(ey).map_err(|_| Error::ExponentOverflow)?,
            ep: i32::try_from(ep).map_err(|_| Error::ExponentOverflow)?,
            eq: i32::try_from(eq).map_err(|_| Error::ExponentOverflow)?,
        })
    }

    fn wide(&self) -> [i64; 4] {
        [self.ex as i64, self.ey as i64, self.ep as i64, self.eq as i64]
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let (a, b) = (self.wide(), other.wide());
        Monomial::from_exponents(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
    }

    /// `self / other`, which may fail when an `x` or `y` exponent would go
    /// negative.
    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial> {
        let (a, b) = (self.wide(), other.wide());
        Monomial::from_exponents(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])
    }

    pub fn checked_pow(&self, k: i64) -> Result<Monomial> {
        let a = self.wide();
        let m = |e: i64| e.checked_mul(k).ok_or(Error::ExponentOverflow);
        Monomial::from_exponents(m(a[0])?, m(a[1])?, m(a[2])?, m(a[3])?)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        self.checked_mul(&rhs).expect("monomial exponent overflow")
    }
}

/// A Laurent polynomial in canonical form: no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(1, m)
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::monomial(match v {
            Var::X => Monomial::x_pow(1),
            Var::Y => Monomial::y_pow(1),
            Var::P => Monomial::p_pow(1),
            Var::Q => Monomial::q_pow(1),
        })
    }

    /// `q^e`, the most common building block.
    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::monomial(Monomial::q_pow(i32::try_from(e).expect("q exponent overflow")))
    }

    /// Collects `(coefficient, monomial)` pairs, combining repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Monomial)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentPoly::zero();
        for (c, m) in terms {
            out.add_term(m, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&BigInt> {
        self.terms.get(m)
    }

    /// The largest term under the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: Monomial, c: &BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiplies every term by `c * m`.
    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Result<LaurentPoly> {
        if c.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut terms = BTreeMap::new();
        for (tm, tc) in &self.terms {
            terms.insert(tm.checked_mul(m)?, tc * c);
        }
        Ok(LaurentPoly { terms })
    }

    /// Multiplies by the monomial `m` (coefficient 1).
    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        self.mul_term(&BigInt::one(), m).expect("monomial exponent overflow")
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        self.mul_term(c, &Monomial::ONE).expect("unreachable: unit monomial")
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Product, failing instead of panicking on exponent overflow.
    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = ca * cb;
                out.add_term(ma.checked_mul(mb)?, c);
            }
        }
        Ok(out)
    }

    /// Replaces every occurrence of `var^k` by `replacement^k`.
    ///
    /// Fails if any resulting `x` or `y` exponent would be negative.
    pub fn subst_monomial(&self, var: Var, replacement: &Monomial) -> Result<LaurentPoly> {
        if (var == Var::X && replacement.ex != 1)
            || (var == Var::Y && replacement.ey != 1)
            || (var == Var::P && replacement.ep != 1)
            || (var == Var::Q && replacement.eq != 1)
        {
            return self.subst_general(var, replacement);
        }
        // var -> var * rest: exponents only shift, order is preserved.
        let mut rest = replacement.wide();
        match var {
            Var::X => rest[0] -= 1,
            Var::Y => rest[1] -= 1,
            Var::P => rest[2] -= 1,
            Var::Q => rest[3] -= 1,
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            let w = m.wide();
            let e = |i: usize| -> Result<i64> {
                rest[i]
                    .checked_mul(k)
                    .and_then(|d| w[i].checked_add(d))
                    .ok_or(Error::ExponentOverflow)
            };
            let nm = Monomial::from_exponents(e(0)?, e(1)?, e(2)?, e(3)?)?;
            out.add_term_ref(nm, c);
        }
        Ok(out)
    }

    fn subst_general(&self, var: Var, replacement: &Monomial) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            let mut stripped = m.wide();
            match var {
                Var::X => stripped[0] = 0,
                Var::Y => stripped[1] = 0,
                Var::P => stripped[2] = 0,
                Var::Q => stripped[3] = 0,
            }
            let r = replacement.wide();
            let mut e = [0i64; 4];
            for i in 0..4 {
                e[i] = r[i]
                    .checked_mul(k)
                    .and_then(|d| stripped[i].checked_add(d))
                    .ok_or(Error::ExponentOverflow)?;
            }
            out.add_term_ref(Monomial::from_exponents(e[0], e[1], e[2], e[3])?, c);
        }
        Ok(out)
    }

    /// `P(x q^a p^b, y q^a p^b)`: the shifted argument used throughout the
    /// Fibonacci identities.
    pub fn shift_xy(&self, q_shift: i64, p_shift: i64) -> Result<LaurentPoly> {
        if q_shift == 0 && p_shift == 0 {
            return Ok(self.clone());
        }
        let q = i32::try_from(q_shift).map_err(|_| Error::ExponentOverflow)?;
        let p = i32::try_from(p_shift).map_err(|_| Error::ExponentOverflow)?;
        self.subst_monomial(Var::X, &Monomial::new(1, 0, p, q))?
            .subst_monomial(Var::Y, &Monomial::new(0, 1, p, q))
    }

    /// `q -> 1/q`.
    pub fn invert_q(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial { eq: -m.eq, ..*m }, c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    fn degree_box(&self) -> Option<([i64; 4], [i64; 4])> {
        let mut it = self.terms.keys();
        let first = it.next()?.wide();
        let (mut lo, mut hi) = (first, first);
        for m in it {
            let w = m.wide();
            for i in 0..4 {
                lo[i] = lo[i].min(w[i]);
                hi[i] = hi[i].max(w[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact division by leading-term elimination.
    ///
    /// Returns [`Error::InexactDivision`] whenever `divisor` does not divide
    /// `self` in the Laurent ring.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (bm, bc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (bm, bc) = (*bm, bc.clone());
        let Some((alo, ahi)) = self.degree_box() else {
            return Ok(LaurentPoly::zero());
        };
        let (blo, bhi) = divisor.degree_box().expect("nonzero divisor");
        // Per-variable degree bounds the quotient must satisfy.
        let mut qlo = [0i64; 4];
        let mut qhi = [0i64; 4];
        for i in 0..4 {
            qlo[i] = alo[i] - blo[i];
            qhi[i] = ahi[i] - bhi[i];
            if qlo[i] > qhi[i] {
                return Err(Error::InexactDivision);
            }
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let qm = lm.checked_div(&bm).map_err(|_| Error::InexactDivision)?;
            let w = qm.wide();
            if (0..4).any(|i| w[i] < qlo[i] || w[i] > qhi[i]) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = lc.div_rem(&bc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            rem -= &divisor.mul_term(&qc, &qm)?;
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Evaluates the assigned variables at integers, leaving the others
    /// symbolic.
    pub fn specialize(&self, assignments: &[(Var, BigInt)]) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut w = m.wide();
            for (var, value) in assignments {
                let i = Var::ALL.iter().position(|v| v == var).expect("known variable");
                let k = w[i];
                if k == 0 {
                    continue;
                }
                if k < 0 {
                    if value.is_zero() {
                        return Err(Error::ZeroToNegativePower { var: *var });
                    }
                    if !value.abs().is_one() {
                        return Err(Error::NonIntegralSpecialization {
                            var: *var,
                            value: value.to_string(),
                        });
                    }
                }
                let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::ExponentOverflow)?;
                coeff *= num_traits::pow::Pow::pow(value, e);
                w[i] = 0;
            }
            out.add_term(Monomial::from_exponents(w[0], w[1], w[2], w[3])?, coeff);
        }
        Ok(out)
    }

    /// Convenience wrapper over [`specialize`](Self::specialize) for small
    /// integer values.
    pub fn specialize_ints(&self, assignments: &[(Var, i64)]) -> Result<LaurentPoly> {
        let a: Vec<(Var, BigInt)> = assignments.iter().map(|&(v, c)| (v, BigInt::from(c))).collect();
        self.specialize(&a)
    }

    /// The polynomial evaluated at `x = y = p = q = 1`.
    pub fn at_ones(&self) -> BigInt {
        self.coefficient_sum()
    }

    /// Highest exponent of `var`, if nonzero.
    pub fn max_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn min_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term_ref(*m, c);
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }

        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(mut self, rhs: LaurentPoly) -> LaurentPoly {
                self.$assign(&rhs);
                self
            }
        }

        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(mut self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$assign(rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("monomial exponent overflow")
    }
}

impl Mul<LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut out = LaurentPoly::zero();
        for p in iter {
            out += p;
        }
        out
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut out = LaurentPoly::one();
        for p in iter {
            out = &out * &p;
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format(self))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("3*x^2*q^-1 - y + 7");
        assert_eq!(&a + &LaurentPoly::zero(), a);
    }

    #[test]
    fn geometric_product_matches_term_by_term() {
        let prod = &p("q + 1") * &p("q^2 + 1");
        // term-by-term: every pair (i, j) with i in {0,1}, j in {0,2}
        let mut oracle = LaurentPoly::zero();
        for i in [0, 1] {
            for j in [0, 2] {
                oracle.add_term(Monomial::q_pow(i + j), BigInt::one());
            }
        }
        assert_eq!(prod, oracle);
        assert_eq!(prod, p("q^3 + q^2 + q + 1"));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = p("x*q - 2*y");
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
        let mut b = p("q");
        b.add_term(Monomial::q_pow(1), BigInt::from(-1));
        assert!(b.terms().all(|(_, c)| !c.is_zero()));
        assert!(b.is_zero());
    }

    #[test]
    fn subst_exponent_arithmetic() {
        let r = p("x^2*q").subst_monomial(Var::X, &Monomial::new(1, 0, 0, 3)).unwrap();
        assert_eq!(r, p("x^2*q^7"));
        let f2 = p("x^2*q + y");
        assert_eq!(
            f2.subst_monomial(Var::X, &Monomial::new(1, 0, 0, 1)).unwrap(),
            p("x^2*q^3 + y")
        );
        assert_eq!(f2.subst_monomial(Var::X, &Monomial::x_pow(1)).unwrap(), f2);
    }

    #[test]
    fn subst_rejects_negative_x() {
        let e = p("x^2").subst_monomial(Var::Q, &Monomial::new(0, 0, 0, 1));
        assert!(e.is_ok());
        let e = p("x^2*q^-1").subst_monomial(Var::Q, &Monomial::new(1, 0, 0, 1));
        assert_eq!(e.unwrap(), p("x*q^-1"));
        let e = p("x*q^-2").subst_monomial(Var::Q, &Monomial::new(1, 0, 0, 1));
        assert_eq!(e, Err(Error::NegativeExponent { var: Var::X }));
    }

    #[test]
    fn subst_can_merge_terms() {
        let r = p("x + y").subst_monomial(Var::X, &Monomial::y_pow(1)).unwrap();
        assert_eq!(r, p("2*y"));
    }

    #[test]
    fn invert_q_examples() {
        assert_eq!(p("q^3 + q").invert_q(), p("q^-3 + q^-1"));
        let fk3 = p("1 + q + q^2");
        let f3 = p("q^3 + q^2 + q");
        assert_eq!(fk3.invert_q().mul_monomial(&Monomial::q_pow(3)), f3);
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p("q^2 - 1").exact_div(&p("q - 1")).unwrap(), p("q + 1"));
        let num = &p("q^4 - 1") * &p("q^3 - 1");
        let den = &p("q - 1") * &p("q^2 - 1");
        assert_eq!(num.exact_div(&den).unwrap(), p("1 + q + 2*q^2 + q^3 + q^4"));
        let a = p("x*y*q^-2 + 5");
        assert_eq!(a.exact_div(&LaurentPoly::one()).unwrap(), a);
    }

    #[test]
    fn exact_division_failures() {
        assert_eq!(p("q^2 + 1").exact_div(&p("q - 1")), Err(Error::InexactDivision));
        assert_eq!(p("x").exact_div(&p("y")), Err(Error::InexactDivision));
        assert_eq!(p("3*q").exact_div(&p("2")), Err(Error::InexactDivision));
        assert_eq!(p("q").exact_div(&LaurentPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(p("0").exact_div(&p("q - 1")).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn exact_division_by_laurent_monomial() {
        assert_eq!(p("q^2 + q^-1").exact_div(&p("q^-3")).unwrap(), p("q^5 + q^2"));
    }

    #[test]
    fn specialize_partial() {
        assert_eq!(p("x^2*q + y").specialize_ints(&[(Var::Y, 3)]).unwrap(), p("x^2*q + 3"));
        assert_eq!(
            p("x^2*q + y")
                .specialize_ints(&[(Var::X, 1), (Var::Y, 1), (Var::Q, 1)])
                .unwrap(),
            p("2")
        );
    }

    #[test]
    fn specialize_negative_exponents() {
        assert_eq!(
            p("q^-1").specialize_ints(&[(Var::Q, 0)]),
            Err(Error::ZeroToNegativePower { var: Var::Q })
        );
        assert_eq!(p("q^-3 + q").specialize_ints(&[(Var::Q, -1)]).unwrap(), p("-2"));
        assert!(matches!(
            p("q^-1").specialize_ints(&[(Var::Q, 2)]),
            Err(Error::NonIntegralSpecialization { .. })
        ));
        assert_eq!(p("q^2").specialize_ints(&[(Var::Q, 0)]).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = p("x + q^-1");
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert!(a.pow(0).is_one());
    }

    #[test]
    fn shift_xy_is_two_substitutions() {
        let a = p("x^2*q + y");
        assert_eq!(a.shift_xy(3, 0).unwrap(), p("x^2*q^7 + y*q^3"));
        assert_eq!(a.shift_xy(0, 2).unwrap(), p("x^2*p^4*q + y*p^2"));
    }
}

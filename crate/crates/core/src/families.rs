//! The polynomial families and their coefficient objects.
//!
//! Every family is available two ways: by its recursion and by summing
//! weights over the objects it counts. Results are memoized per
//! `(family, route, n)` for the unshifted family; shifted arguments are
//! applied by substitution afterwards.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::binom2;
use crate::combinat::{layered_matchings, layered_partitions, BinarySeq, IntegerPartition, MorseSeq};
use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    /// `A_n(q)`: `rb` over layered partitions.
    A,
    /// `F_n(q)`: `rb` over layered matchings.
    Fq,
    /// `F_n(x,y,q)`.
    Fxyq,
    /// Carlitz `F^K_n(q)`.
    FK,
    /// Cigler `F^C_n(x,y,q)`.
    FC,
    /// `F_n(x,y,p,q)`: `(ls, rb)` over layered matchings.
    Fxypq,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::A,
        FamilyTag::Fq,
        FamilyTag::Fxyq,
        FamilyTag::FK,
        FamilyTag::FC,
        FamilyTag::Fxypq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::A => "A",
            FamilyTag::Fq => "F",
            FamilyTag::Fxyq => "Fxyq",
            FamilyTag::FK => "FK",
            FamilyTag::FC => "FC",
            FamilyTag::Fxypq => "Fxypq",
        }
    }

    /// Whether the family has `x` and `y`, so shifted arguments make sense.
    pub fn has_xy(self) -> bool {
        matches!(self, FamilyTag::Fxyq | FamilyTag::FC | FamilyTag::Fxypq)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "a" => FamilyTag::A,
            "F" | "Fq" | "F_q" => FamilyTag::Fq,
            "Fxyq" | "F_xyq" => FamilyTag::Fxyq,
            "FK" | "K" => FamilyTag::FK,
            "FC" | "C" => FamilyTag::FC,
            "Fxypq" | "F_xypq" => FamilyTag::Fxypq,
            _ => return Err(Error::InvalidArgument(format!("unknown family `{s}`"))),
        })
    }
}

/// A family with its arguments shifted: `x -> x q^a p^b`, `y -> y q^a p^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub tag: FamilyTag,
    pub q_shift: u32,
    pub p_shift: u32,
}

impl Family {
    pub const fn new(tag: FamilyTag) -> Self {
        Family {
            tag,
            q_shift: 0,
            p_shift: 0,
        }
    }

    pub fn with_q_shift(mut self, a: u32) -> Self {
        self.q_shift = a;
        self
    }

    pub fn with_p_shift(mut self, b: u32) -> Self {
        self.p_shift = b;
        self
    }

    fn validate(&self) -> Result<()> {
        if (self.q_shift != 0 || self.p_shift != 0) && !self.tag.has_xy() {
            return Err(Error::InvalidArgument(format!(
                "family {} has no x or y to shift",
                self.tag
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    Recursion,
    Enumeration,
}

impl FromStr for Via {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursion" | "rec" => Ok(Via::Recursion),
            "enumeration" | "enum" => Ok(Via::Enumeration),
            _ => Err(Error::InvalidArgument(format!("unknown route `{s}`"))),
        }
    }
}

type Key = (FamilyTag, Via, usize);

fn cache() -> &'static Mutex<HashMap<Key, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(key: Key, build: impl FnOnce() -> Result<LaurentPoly>) -> Result<LaurentPoly> {
    if let Some(p) = cache().lock().expect("family cache poisoned").get(&key) {
        return Ok(p.clone());
    }
    // Built outside the lock; concurrent fills compute the same value.
    let p = build()?;
    cache()
        .lock()
        .expect("family cache poisoned")
        .entry(key)
        .or_insert_with(|| p.clone());
    Ok(p)
}

/// The `n`th member of `fam`, built by `via`.
pub fn family_poly(fam: &Family, n: usize, via: Via, ceilings: &Ceilings) -> Result<LaurentPoly> {
    fam.validate()?;
    Ceilings::check("family index", n, ceilings.family)?;
    base(fam.tag, n, via)?.shift_xy(fam.q_shift as i64, fam.p_shift as i64)
}

/// Unshifted, unchecked; callers bound `n`.
pub(crate) fn base(tag: FamilyTag, n: usize, via: Via) -> Result<LaurentPoly> {
    cached((tag, via, n), || match via {
        Via::Recursion => recursion(tag, n),
        Via::Enumeration => Ok(enumeration(tag, n)),
    })
}

/// `F_n(x q^a, y q^a, q)` from the recursion, zero for negative `n`.
pub(crate) fn fxyq(n: i64, a: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Ok(LaurentPoly::zero());
    }
    base(FamilyTag::Fxyq, n as usize, Via::Recursion)?.shift_xy(a, 0)
}

/// `F_n(x q^a p^b, y q^a p^b, p, q)` from the recursion, zero for negative `n`.
pub(crate) fn fxypq(n: i64, a: i64, b: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Ok(LaurentPoly::zero());
    }
    base(FamilyTag::Fxypq, n as usize, Via::Recursion)?.shift_xy(a, b)
}

fn q_term(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

fn mono(ex: u32, ey: u32, ep: i64, eq: i64) -> Monomial {
    Monomial::new(ex, ey, ep as i32, eq as i32)
}

fn recursion(tag: FamilyTag, n: usize) -> Result<LaurentPoly> {
    let prev = |k: usize| base(tag, k, Via::Recursion);
    let ni = n as i64;
    Ok(match (tag, n) {
        (FamilyTag::A, 0) => LaurentPoly::one(),
        // The last block has size j and contributes n - j.
        (FamilyTag::A, _) => {
            let mut acc = LaurentPoly::zero();
            for j in 1..=n {
                acc += prev(n - j)?.mul_monomial(&Monomial::q_pow((n - j) as i32));
            }
            acc
        }
        (FamilyTag::Fq | FamilyTag::FK, 0 | 1) => LaurentPoly::one(),
        (FamilyTag::Fxyq | FamilyTag::FC | FamilyTag::Fxypq, 0) => LaurentPoly::one(),
        (FamilyTag::Fxyq | FamilyTag::FC | FamilyTag::Fxypq, 1) => LaurentPoly::var(Var::X),
        (FamilyTag::Fq, _) => {
            prev(n - 1)?.mul_monomial(&mono(0, 0, 0, ni - 1)) + prev(n - 2)?.mul_monomial(&mono(0, 0, 0, ni - 2))
        }
        (FamilyTag::Fxyq, _) => {
            prev(n - 1)?.mul_monomial(&mono(1, 0, 0, ni - 1)) + prev(n - 2)?.mul_monomial(&mono(0, 1, 0, ni - 2))
        }
        (FamilyTag::FK, _) => prev(n - 1)? + prev(n - 2)?.mul_monomial(&mono(0, 0, 0, ni - 1)),
        (FamilyTag::FC, _) => {
            prev(n - 1)?.mul_monomial(&mono(1, 0, 0, 0)) + prev(n - 2)?.mul_monomial(&mono(0, 1, 0, ni - 1))
        }
        (FamilyTag::Fxypq, _) => {
            prev(n - 1)?.shift_xy(0, 1)?.mul_monomial(&mono(1, 0, 0, ni - 1))
                + prev(n - 2)?.shift_xy(0, 2)?.mul_monomial(&mono(0, 1, 0, ni - 2))
        }
    })
}

fn enumeration(tag: FamilyTag, n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let one = BigInt::from(1);
    match tag {
        FamilyTag::A => {
            for pi in layered_partitions(n) {
                acc.add_term(Monomial::q_pow(pi.rb() as i32), one.clone());
            }
        }
        FamilyTag::Fq => {
            for pi in layered_matchings(n) {
                acc.add_term(Monomial::q_pow(pi.rb() as i32), one.clone());
            }
        }
        FamilyTag::Fxyq => {
            for pi in layered_matchings(n) {
                let w = crate::combinat::omega(&pi, crate::combinat::WeightMode::Xyq)
                    .expect("layered matchings are matchings");
                acc += w;
            }
        }
        FamilyTag::FK => {
            // F^K_0 = 1 by convention; otherwise sum over BS_{n-1}.
            if n == 0 {
                return LaurentPoly::one();
            }
            for beta in BinarySeq::all(n - 1) {
                acc.add_term(Monomial::q_pow(beta.rho() as i32), one.clone());
            }
        }
        FamilyTag::FC => {
            for nu in MorseSeq::all(n) {
                acc += nu.weight();
            }
        }
        FamilyTag::Fxypq => {
            for pi in layered_matchings(n) {
                let s = pi.stats();
                let m = Monomial::new(s.singletons as u32, s.doubletons as u32, s.ls as i32, s.rb as i32);
                acc.add_term(m, one.clone());
            }
        }
    }
    acc
}

/// `∏_{i=1}^{n-1} (1 + q^i)`.
pub fn a_product(n: usize) -> LaurentPoly {
    (1..n).map(|i| LaurentPoly::one() + q_term(i as i64)).product()
}

fn q_minus_one(e: i64) -> LaurentPoly {
    q_term(e) - LaurentPoly::one()
}

/// `[n choose k]_q` by the q-Pascal recursion
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`; zero outside `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // row[j] = [m choose j] for the current m.
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let top = m.min(k);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut v = if j > 0 { row[j - 1].clone() } else { LaurentPoly::zero() };
            if j < row.len() {
                v += row[j].mul_monomial(&Monomial::q_pow(j as i32));
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// `[n choose k]_q` from the product formula, by exact division.
pub fn qbinom_product(n: i64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || n < 0 || k > n {
        return Ok(LaurentPoly::zero());
    }
    let num: LaurentPoly = (1..=k).map(|i| q_minus_one(n - i + 1)).product();
    let den: LaurentPoly = (1..=k).map(q_minus_one).product();
    num.exact_div(&den)
}

/// `Σ q^|λ|` over partitions in a `k x (n-k)` box.
pub fn qbinom_box(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::zero();
    for l in IntegerPartition::in_box(k as usize, (n - k) as usize) {
        acc.add_term(Monomial::q_pow(l.size() as i32), BigInt::from(1));
    }
    acc
}

fn pq_diff(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(mono(0, 0, e, 0)) - LaurentPoly::monomial(mono(0, 0, 0, e))
}

/// `[n choose k]_{p,q}` from the product formula, by exact division.
pub fn pqbinom(n: i64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || n < 0 || k > n {
        return Ok(LaurentPoly::zero());
    }
    let num: LaurentPoly = (1..=k).map(|i| pq_diff(n - i + 1)).product();
    let den: LaurentPoly = (1..=k).map(pq_diff).product();
    num.exact_div(&den)
}

/// `[n choose k]_{p,q}` by `[n,k] = p^(n-k) [n-1,k-1] + q^k [n-1,k]`.
pub fn pqbinom_pascal(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    if k == 0 || k == n {
        return LaurentPoly::one();
    }
    pqbinom_pascal(n - 1, k - 1).mul_monomial(&mono(0, 0, n - k, 0))
        + pqbinom_pascal(n - 1, k).mul_monomial(&mono(0, 0, 0, k))
}

/// `q^{C(k,2)+C(n-k,2)} [n-k choose k]_q`, the `rb` generating function of
/// layered matchings of `[n]` with `k` doubletons.
pub fn carlitz_slice(n: usize, k: usize) -> LaurentPoly {
    if 2 * k > n {
        return LaurentPoly::zero();
    }
    let (n, k) = (n as i64, k as i64);
    qbinom(n - k, k).mul_monomial(&Monomial::q_pow((binom2(k) + binom2(n - k)) as i32))
}

/// `Σ_k x^{n-2k} y^k q^{C(k,2)+C(n-k,2)} [n-k choose k]_q`.
pub fn carlitz_closed_form(n: usize) -> LaurentPoly {
    (0..=n / 2)
        .map(|k| carlitz_slice(n, k).mul_monomial(&Monomial::new((n - 2 * k) as u32, k as u32, 0, 0)))
        .sum()
}

/// The q -> 1/q relations between the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    /// `F_n(q) = q^C(n,2) F^K_n(1/q)`.
    Carlitz,
    /// `F_n(x,y,q) = q^C(n,2) F^C_n(x,y,1/q)`.
    Cigler,
    /// `F_n(xq^a,yq^a,q) = q^{C(n,2)+na} F^C_n(x,y/q^a,1/q)`.
    Extension { a: u32 },
}

/// Both sides of a transform, the left from enumeration and the right from
/// the other family's recursion.
pub fn transform_sides(t: Transform, n: usize, ceilings: &Ceilings) -> Result<(LaurentPoly, LaurentPoly)> {
    Ceilings::check("family index", n, ceilings.family)?;
    let twist = |e: i64| Monomial::q_pow(e as i32);
    let c = binom2(n as i64);
    Ok(match t {
        Transform::Carlitz => (
            base(FamilyTag::Fq, n, Via::Enumeration)?,
            base(FamilyTag::FK, n, Via::Recursion)?
                .invert_q()
                .mul_monomial(&twist(c)),
        ),
        Transform::Cigler => (
            base(FamilyTag::Fxyq, n, Via::Enumeration)?,
            base(FamilyTag::FC, n, Via::Recursion)?
                .invert_q()
                .mul_monomial(&twist(c)),
        ),
        Transform::Extension { a } => {
            let a = a as i64;
            let lhs = base(FamilyTag::Fxyq, n, Via::Enumeration)?.shift_xy(a, 0)?;
            let rhs = base(FamilyTag::FC, n, Via::Recursion)?
                .invert_q()
                .subst_monomial(Var::Y, &mono(0, 1, 0, -a))?
                .mul_monomial(&twist(c + n as i64 * a));
            (lhs, rhs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn fam(tag: FamilyTag, n: usize, via: Via) -> LaurentPoly {
        family_poly(&Family::new(tag), n, via, &Ceilings::default()).unwrap()
    }

    #[test]
    fn documented_values() {
        for via in [Via::Recursion, Via::Enumeration] {
            assert_eq!(fam(FamilyTag::Fq, 3, via), poly("q^3 + q^2 + q"));
            assert_eq!(fam(FamilyTag::Fxyq, 1, via), poly("x"));
            assert_eq!(fam(FamilyTag::FK, 3, via), poly("1 + q + q^2"));
            assert_eq!(fam(FamilyTag::Fxyq, 2, via), poly("x^2*q + y"));
            assert_eq!(fam(FamilyTag::Fxyq, 3, via), poly("x^3*q^3 + x*y*q^2 + x*y*q"));
            assert_eq!(fam(FamilyTag::Fxypq, 1, via), poly("x"));
        }
        assert_eq!(fam(FamilyTag::A, 4, Via::Enumeration).at_ones(), BigInt::from(8));
    }

    #[test]
    fn routes_agree() {
        for tag in FamilyTag::ALL {
            let top = if tag == FamilyTag::A { 14 } else { 18 };
            for n in 0..=top {
                assert_eq!(
                    fam(tag, n, Via::Recursion),
                    fam(tag, n, Via::Enumeration),
                    "{tag} n={n}"
                );
            }
        }
    }

    #[test]
    fn collapse_to_integers() {
        for n in 0..=16 {
            let fib = fibonacci(n);
            for tag in [
                FamilyTag::Fq,
                FamilyTag::Fxyq,
                FamilyTag::FK,
                FamilyTag::FC,
                FamilyTag::Fxypq,
            ] {
                assert_eq!(fam(tag, n, Via::Recursion).at_ones(), fib, "{tag} n={n}");
            }
            let two = if n == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(1) << (n - 1)
            };
            assert_eq!(fam(FamilyTag::A, n, Via::Recursion).at_ones(), two);
        }
    }

    #[test]
    fn shifts() {
        let f = Family::new(FamilyTag::Fxyq).with_q_shift(1);
        let got = family_poly(&f, 2, Via::Enumeration, &Ceilings::default()).unwrap();
        assert_eq!(got, poly("x^2*q^3 + y*q"));
        let bad = Family::new(FamilyTag::Fq).with_q_shift(1);
        assert!(family_poly(&bad, 2, Via::Recursion, &Ceilings::default()).is_err());
        let c = Ceilings {
            family: 4,
            ..Ceilings::default()
        };
        assert!(matches!(
            family_poly(&Family::new(FamilyTag::Fq), 5, Via::Recursion, &c),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn product_formula() {
        assert_eq!(a_product(3), poly("1 + q + q^2 + q^3"));
        assert!(a_product(1).is_one());
        assert!(a_product(0).is_one());
        assert_eq!(a_product(4).at_ones(), BigInt::from(8));
        for n in 0..=12 {
            assert_eq!(a_product(n), fam(FamilyTag::A, n, Via::Enumeration));
        }
    }

    #[test]
    fn q_binomials_three_ways() {
        assert_eq!(qbinom(2, 1), poly("1 + q"));
        assert_eq!(qbinom(4, 2), poly("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(qbinom(3, 5).is_zero());
        assert!(qbinom(3, -1).is_zero());
        for n in 0..=12 {
            for k in 0..=n {
                let p = qbinom(n, k);
                assert_eq!(p, qbinom_product(n, k).unwrap(), "n={n} k={k}");
                assert_eq!(p, qbinom_box(n, k), "n={n} k={k}");
                if k >= 1 {
                    let pascal = qbinom(n - 1, k - 1) + qbinom(n - 1, k).mul_monomial(&Monomial::q_pow(k as i32));
                    assert_eq!(p, pascal);
                }
            }
        }
    }

    #[test]
    fn pq_binomials() {
        assert_eq!(pqbinom(2, 1).unwrap(), poly("p + q"));
        assert!(pqbinom(7, 0).unwrap().is_one());
        for n in 0..=10 {
            for k in 0..=n {
                let p = pqbinom(n, k).unwrap();
                assert_eq!(p, pqbinom_pascal(n, k));
                assert_eq!(p.specialize_ints(&[(Var::P, 1)]).unwrap(), qbinom(n, k));
                assert_eq!(swap_pq(&p), pqbinom(n, n - k).unwrap());
            }
        }
    }

    fn swap_pq(p: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            p.terms()
                .map(|(m, c)| (c.clone(), Monomial::new(m.ex, m.ey, m.eq, m.ep))),
        )
    }

    #[test]
    fn carlitz() {
        assert_eq!(carlitz_closed_form(2), poly("x^2*q + y"));
        assert!(carlitz_closed_form(0).is_one());
        assert_eq!(carlitz_slice(3, 1), poly("q^2 + q"));
        for n in 0..=16 {
            assert_eq!(carlitz_closed_form(n), fam(FamilyTag::Fxyq, n, Via::Enumeration));
        }
    }

    #[test]
    fn transforms() {
        let c = Ceilings::default();
        for n in 0..=14 {
            for t in [Transform::Carlitz, Transform::Cigler] {
                let (l, r) = transform_sides(t, n, &c).unwrap();
                assert_eq!(l, r, "{t:?} n={n}");
            }
            for a in 0..4 {
                let (l, r) = transform_sides(Transform::Extension { a }, n, &c).unwrap();
                assert_eq!(l, r, "a={a} n={n}");
            }
        }
        let fc9 = fam(FamilyTag::FC, 9, Via::Recursion);
        let m = Monomial::new(3, 3, 0, 16);
        assert!(fc9.coeff(&m).is_some_and(|c| *c >= BigInt::from(1)));
    }
}

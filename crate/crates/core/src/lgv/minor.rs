use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::paths::{check_tuple_ceiling, signed_tuple_sum, IndexSequences, TupleFilter};
use crate::binom2;
use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::families::{base, fxyq, FamilyTag, Via};
use crate::poly::{LaurentPoly, Monomial, Var};

/// Entry `(r, c)` of the Toeplitz-like matrix: `F_{c-r}(xq^r, yq^r, q)`, or
/// zero below the diagonal.
pub fn matrix_entry(r: usize, c: usize) -> Result<LaurentPoly> {
    if c < r {
        return Ok(LaurentPoly::zero());
    }
    fxyq((c - r) as i64, r as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorMethod {
    /// Laplace expansion of the submatrix.
    Cofactor,
    /// Signed sum over every tuple of paths.
    AllTuples,
    /// Signed sum over vertex-disjoint tuples only.
    NoncrossingTuples,
    /// Overlap splicing, the ballot filter and reducible cuts, finishing
    /// with single entries and the interleaved closed form.
    Reduction,
}

impl MinorMethod {
    pub const ALL: [MinorMethod; 4] = [
        MinorMethod::Cofactor,
        MinorMethod::AllTuples,
        MinorMethod::NoncrossingTuples,
        MinorMethod::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MinorMethod::Cofactor => "cofactor",
            MinorMethod::AllTuples => "all_tuples",
            MinorMethod::NoncrossingTuples => "noncrossing_tuples",
            MinorMethod::Reduction => "reduction",
        }
    }
}

impl fmt::Display for MinorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MinorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cofactor" => MinorMethod::Cofactor,
            "all_tuples" | "all-tuples" | "tuples" => MinorMethod::AllTuples,
            "noncrossing_tuples" | "noncrossing-tuples" | "noncrossing" => MinorMethod::NoncrossingTuples,
            "reduction" => MinorMethod::Reduction,
            _ => return Err(Error::InvalidArgument(format!("unknown minor method `{s}`"))),
        })
    }
}

fn check_entry_ceiling(s: &IndexSequences, ceilings: &Ceilings) -> Result<()> {
    Ceilings::check("minor size", s.k(), ceilings.minor)?;
    Ceilings::check("family index", s.max_vertex(), ceilings.family)
}

/// `det F_{u,v}`.
pub fn minor(s: &IndexSequences, method: MinorMethod, ceilings: &Ceilings) -> Result<LaurentPoly> {
    match method {
        MinorMethod::Cofactor => {
            check_entry_ceiling(s, ceilings)?;
            cofactor(s)
        }
        MinorMethod::AllTuples => signed_tuple_sum(s, TupleFilter::All, ceilings),
        MinorMethod::NoncrossingTuples => signed_tuple_sum(s, TupleFilter::Noncrossing, ceilings),
        MinorMethod::Reduction => {
            check_entry_ceiling(s, ceilings)?;
            reduce(s.u(), s.v())
        }
    }
}

fn cofactor(s: &IndexSequences) -> Result<LaurentPoly> {
    let m: Vec<Vec<LaurentPoly>> = s
        .u()
        .iter()
        .map(|&r| s.v().iter().map(|&c| matrix_entry(r, c)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(determinant(&m))
}

/// Laplace expansion along successive rows.
pub(crate) fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    fn go(m: &[Vec<LaurentPoly>], row: usize, used: &mut Vec<bool>) -> LaurentPoly {
        if row == m.len() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        let mut free = 0;
        for col in 0..m.len() {
            if used[col] {
                continue;
            }
            let sign_neg = free % 2 == 1;
            free += 1;
            if m[row][col].is_zero() {
                continue;
            }
            used[col] = true;
            let sub = go(m, row + 1, used);
            used[col] = false;
            if sub.is_zero() {
                continue;
            }
            let term = &m[row][col] * &sub;
            if sign_neg {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()])
}

/// Outcome of the ballot condition `0 <= u(c) - v(c) <= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Ballot {
    Satisfied,
    /// Fails at `c`; the minor is then zero.
    Violated {
        c: usize,
    },
}

/// Checks `0 <= u(c) - v(c) <= 2` for every `c`, where `u(c)` counts the
/// `u_i < c`. Requires `u_i != v_j` throughout.
pub fn ballot_check(s: &IndexSequences) -> Result<Ballot> {
    if let Some(c) = s.overlap() {
        return Err(Error::OverlappingVertices(c));
    }
    if s.k() == 0 {
        return Ok(Ballot::Satisfied);
    }
    for c in 0..=s.max_vertex() + 1 {
        let (a, b) = (s.u_count(c), s.v_count(c));
        if a < b || a - b > 2 {
            return Ok(Ballot::Violated { c });
        }
    }
    Ok(Ballot::Satisfied)
}

/// The smallest `c` with `u_1 < c <= v_k` and `u(c) = v(c)`: every tuple
/// from `u` to `v` then splits at `c`.
pub fn reducible_at(s: &IndexSequences) -> Option<usize> {
    let (first, last) = (*s.u().first()?, *s.v().last()?);
    (first + 1..=last).find(|&c| s.u_count(c) == s.v_count(c))
}

fn split_at(xs: &[usize], c: usize) -> (&[usize], &[usize]) {
    xs.split_at(xs.partition_point(|&x| x < c))
}

fn reduce(u: &[usize], v: &[usize]) -> Result<LaurentPoly> {
    let k = u.len();
    if k == 0 {
        return Ok(LaurentPoly::one());
    }
    if let Some(c) = u.iter().copied().find(|c| v.binary_search(c).is_ok()) {
        // The path at c has length zero; at most one other path can jump
        // over it, along c-1 -> c+1.
        let (ul, ur) = split_at(u, c);
        let (vl, vr) = split_at(v, c);
        let (ur, vr) = (&ur[1..], &vr[1..]);
        return match ul.len() as i64 - vl.len() as i64 {
            0 => Ok(reduce(ul, vl)? * reduce(ur, vr)?),
            1 => {
                if vl.last() == Some(&(c - 1)) || ur.first() == Some(&(c + 1)) {
                    return Ok(LaurentPoly::zero());
                }
                let mut vl2 = vl.to_vec();
                vl2.push(c - 1);
                let mut ur2 = vec![c + 1];
                ur2.extend_from_slice(ur);
                let jump = LaurentPoly::term(-1, Monomial::new(0, 1, 0, (c - 1) as i32));
                Ok(jump * reduce(ul, &vl2)? * reduce(&ur2, vr)?)
            }
            _ => Ok(LaurentPoly::zero()),
        };
    }
    let s = IndexSequences::new(u.to_vec(), v.to_vec())?;
    if let Ballot::Violated { .. } = ballot_check(&s)? {
        return Ok(LaurentPoly::zero());
    }
    if let Some(c) = reducible_at(&s) {
        let (ul, ur) = split_at(u, c);
        let (vl, vr) = split_at(v, c);
        return Ok(reduce(ul, vl)? * reduce(ur, vr)?);
    }
    if k == 1 {
        return matrix_entry(u[0], v[0]);
    }
    closed_form_minor(&s)?.value()
}

/// `F_n(xq^shift, yq^shift, q)`; zero when `n < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedF {
    pub n: i64,
    pub shift: i64,
}

/// `(-y)^e1 q^e2 ∏ F_{n_i}(xq^{a_i}, yq^{a_i}, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub neg_y_power: u32,
    pub q_power: i64,
    pub factors: Vec<ShiftedF>,
}

impl ClosedForm {
    pub fn value(&self) -> Result<LaurentPoly> {
        let sign = if self.neg_y_power % 2 == 0 { 1 } else { -1 };
        let q = i32::try_from(self.q_power).map_err(|_| Error::ExponentOverflow)?;
        let mut acc = LaurentPoly::term(sign, Monomial::new(0, self.neg_y_power, 0, q));
        for f in &self.factors {
            acc *= &fxyq(f.n, f.shift)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-y)^{}*q^{}", self.neg_y_power, self.q_power)?;
        for s in &self.factors {
            write!(f, "*F_{}(x*q^{},y*q^{})", s.n, s.shift, s.shift)?;
        }
        Ok(())
    }
}

/// The closed form of the minor for an interleaved pair
/// `u_1 < u_2 < v_1 < u_3 < v_2 < ... < u_k < v_{k-1} < v_k`.
pub fn closed_form_minor(s: &IndexSequences) -> Result<ClosedForm> {
    if !s.is_interleaved() {
        return Err(Error::NotInterleaved);
    }
    let k = s.k();
    let u: Vec<i64> = s.u().iter().map(|&x| x as i64).collect();
    let v: Vec<i64> = s.v().iter().map(|&x| x as i64).collect();
    let mut e1 = 0;
    let mut e2 = 0;
    for i in 0..k - 1 {
        e1 += v[i] - u[i + 1] + 1;
        e2 += binom2(v[i]) - binom2(u[i + 1] - 1);
    }
    let mut factors = vec![
        ShiftedF {
            n: u[1] - u[0] - 1,
            shift: u[0],
        },
        ShiftedF {
            n: v[k - 1] - v[k - 2] - 1,
            shift: v[k - 2] + 1,
        },
    ];
    for i in 0..k - 2 {
        factors.push(ShiftedF {
            n: u[i + 2] - v[i] - 2,
            shift: v[i] + 1,
        });
    }
    Ok(ClosedForm {
        neg_y_power: e1 as u32,
        q_power: e2,
        factors,
    })
}

fn require_positive(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("need n, m >= 1, got n={n}, m={m}")));
    }
    Ok(())
}

/// `F_n F_{n+m-1}(xq,yq) - F_{n-1}(xq,yq) F_{n+m}` and
/// `(-y)^n q^C(n,2) F_{m-1}(xq^{n+1}, yq^{n+1})`.
pub fn euler_cassini_sides(n: usize, m: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    require_positive(n, m)?;
    let (n, m) = (n as i64, m as i64);
    let lhs = fxyq(n, 0)? * fxyq(n + m - 1, 1)? - fxyq(n - 1, 1)? * fxyq(n + m, 0)?;
    let rhs = neg_y_q(n, binom2(n)) * fxyq(m - 1, n + 1)?;
    Ok((lhs, rhs))
}

fn neg_y_q(n: i64, e: i64) -> LaurentPoly {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    LaurentPoly::term(sign, Monomial::new(0, n as u32, 0, e as i32))
}

/// `F^C_n(x, yq^a, q)` from the recursion; zero when `n < 0`.
fn fc(n: i64, a: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Ok(LaurentPoly::zero());
    }
    base(FamilyTag::FC, n as usize, Via::Recursion)?.subst_monomial(Var::Y, &Monomial::new(0, 1, 0, a as i32))
}

/// Both sides of the Cigler identity
/// `F^C_n F^C_{n+m-1}(x,yq) - F^C_{n-1}(x,yq) F^C_{n+m} = (-y)^n q^C(n+1,2) F^C_{m-1}(x,yq^{n+1})`,
/// built from the Cigler polynomials directly.
pub fn cigler_sides(n: usize, m: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    require_positive(n, m)?;
    let (n, m) = (n as i64, m as i64);
    let lhs = fc(n, 0)? * fc(n + m - 1, 1)? - fc(n - 1, 1)? * fc(n + m, 0)?;
    let rhs = neg_y_q(n, binom2(n + 1)) * fc(m - 1, n + 1)?;
    Ok((lhs, rhs))
}

/// The Cigler identity checked twice: directly, and by pushing both sides
/// of the Euler-Cassini minor through `P -> q^{C(n,2)+C(n+m,2)} P(1/q)`,
/// which the extension identity turns into the Cigler sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiglerCheck {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub lhs_from_minor: LaurentPoly,
    pub rhs_from_minor: LaurentPoly,
}

impl CiglerCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.lhs == self.lhs_from_minor && self.rhs == self.rhs_from_minor
    }
}

pub fn cigler_identity(n: usize, m: usize) -> Result<CiglerCheck> {
    let (lhs, rhs) = cigler_sides(n, m)?;
    let (l, r) = euler_cassini_sides(n, m)?;
    let twist = Monomial::q_pow((binom2(n as i64) + binom2((n + m) as i64)) as i32);
    Ok(CiglerCheck {
        lhs,
        rhs,
        lhs_from_minor: l.invert_q().mul_monomial(&twist),
        rhs_from_minor: r.invert_q().mul_monomial(&twist),
    })
}

/// Tuple enumeration is exponential in the total path length; the
/// reduction and cofactor methods are not.
pub fn tuple_methods_feasible(s: &IndexSequences, ceilings: &Ceilings) -> bool {
    check_tuple_ceiling(s, ceilings).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci;
    use num_bigint::BigInt;

    fn seq(u: &[usize], v: &[usize]) -> IndexSequences {
        IndexSequences::new(u.to_vec(), v.to_vec()).unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn all_methods(s: &IndexSequences) -> LaurentPoly {
        let c = Ceilings::default();
        let first = minor(s, MinorMethod::Cofactor, &c).unwrap();
        for m in MinorMethod::ALL {
            assert_eq!(minor(s, m, &c).unwrap(), first, "{s} via {m}");
        }
        first
    }

    #[test]
    fn entries() {
        assert_eq!(matrix_entry(0, 2).unwrap(), poly("x^2*q + y"));
        assert!(matrix_entry(5, 3).unwrap().is_zero());
        assert!(matrix_entry(2, 2).unwrap().is_one());
    }

    #[test]
    fn small_minors() {
        assert_eq!(all_methods(&seq(&[0], &[3])), poly("x^3*q^3 + x*y*q^2 + x*y*q"));
        assert!(all_methods(&seq(&[0, 2, 5], &[0, 2, 5])).is_one());
        assert!(all_methods(&seq(&[], &[])).is_one());
        assert!(all_methods(&seq(&[0, 1, 2], &[3, 4, 5])).is_zero());
    }

    #[test]
    fn ballot() {
        assert_eq!(
            ballot_check(&seq(&[0, 1, 2], &[3, 4, 5])).unwrap(),
            Ballot::Violated { c: 3 }
        );
        assert_eq!(ballot_check(&seq(&[0], &[1])).unwrap(), Ballot::Satisfied);
        assert!(matches!(
            ballot_check(&seq(&[0, 1, 2], &[10, 11, 12])).unwrap(),
            Ballot::Violated { .. }
        ));
        assert!(matches!(
            ballot_check(&seq(&[0, 2], &[2, 3])),
            Err(Error::OverlappingVertices(2))
        ));
        // a sink before every source
        assert_eq!(ballot_check(&seq(&[1], &[0])).unwrap(), Ballot::Violated { c: 1 });
    }

    #[test]
    fn reducibility() {
        assert_eq!(reducible_at(&seq(&[0, 3], &[2, 5])), Some(3));
        assert_eq!(reducible_at(&seq(&[0, 1], &[2, 3])), None);
    }

    #[test]
    fn closed_form_examples() {
        let s = seq(&[0, 1, 3], &[2, 5, 7]);
        assert_eq!(closed_form_minor(&s).unwrap().value().unwrap(), all_methods(&s));
        assert!(matches!(
            closed_form_minor(&seq(&[0, 2], &[1, 3])),
            Err(Error::NotInterleaved)
        ));
        // k = 2, u = (0,1), v = (n, n+m)
        for n in 1..6 {
            for m in 1..6 {
                let s = seq(&[0, 1], &[n, n + m]);
                let (l, r) = euler_cassini_sides(n, m).unwrap();
                assert_eq!(l, r);
                assert_eq!(all_methods(&s), l);
                // n = 1 puts a sink on the second source
                if n >= 2 {
                    let cf = closed_form_minor(&s).unwrap();
                    assert_eq!(cf.neg_y_power as usize, n);
                    assert_eq!(cf.q_power, binom2(n as i64));
                    assert_eq!(cf.value().unwrap(), l);
                }
            }
        }
    }

    #[test]
    fn integer_euler_cassini() {
        let ones = [(Var::X, 1), (Var::Y, 1), (Var::Q, 1)];
        let (l, _) = euler_cassini_sides(2, 2).unwrap();
        assert_eq!(l.specialize_ints(&ones).unwrap().as_constant(), Some(BigInt::from(1)));
        for n in 1..8 {
            for m in 1..8 {
                let (l, _) = cigler_sides(n, m).unwrap();
                let want = fibonacci(n) * fibonacci(n + m - 1) - fibonacci(n - 1) * fibonacci(n + m);
                assert_eq!(l.specialize_ints(&ones).unwrap().as_constant(), Some(want.clone()));
                let sign = if n % 2 == 0 { 1 } else { -1 };
                assert_eq!(want, BigInt::from(sign) * fibonacci(m - 1));
            }
        }
    }

    #[test]
    fn cigler_both_routes() {
        for n in 1..=6 {
            for m in 1..=6 {
                assert!(cigler_identity(n, m).unwrap().holds(), "n={n} m={m}");
            }
        }
        assert!(cigler_sides(0, 2).is_err());
    }

    #[test]
    fn overlap_reduction_matches_cofactor() {
        let c = Ceilings::default();
        for k in 1..=3 {
            for s in IndexSequences::all_with_k(k, 6) {
                if s.overlap().is_none() {
                    continue;
                }
                assert_eq!(
                    minor(&s, MinorMethod::Reduction, &c).unwrap(),
                    minor(&s, MinorMethod::Cofactor, &c).unwrap(),
                    "{s}"
                );
            }
        }
    }
}

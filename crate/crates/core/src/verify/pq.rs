//! The p,q-identities. Left sides come from bistatistic enumeration, right
//! sides from the recursion; each is also specialized at `p = 1` and
//! compared with the corresponding q-identity.

use super::q::{self, delta_class, mono, refine, total};
use super::Ctx;
use crate::binom2;
use crate::combinat::{layered_partitions, omega, SetPartition, WeightMode};
use crate::error::Result;
use crate::families::{base, carlitz_closed_form, fxypq, fxyq, pqbinom, FamilyTag, Via};
use crate::poly::{LaurentPoly, Var};

type Terms = Vec<(String, LaurentPoly)>;

/// `F_n(xq^a p^b, yq^a p^b, p, q)` by enumeration.
fn fenum(ctx: &Ctx, n: i64, a: i64, b: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Ok(LaurentPoly::zero());
    }
    ctx.need_layered(n)?;
    base(FamilyTag::Fxypq, n as usize, Via::Enumeration)?.shift_xy(a, b)
}

fn at_p1(p: &LaurentPoly) -> Result<LaurentPoly> {
    p.specialize_ints(&[(Var::P, 1)])
}

/// Compares both sides, then their `p = 1` images with the q-identity.
fn sides(ctx: &mut Ctx, lhs: &LaurentPoly, rhs: &LaurentPoly, q_lhs: &LaurentPoly, q_rhs: &LaurentPoly) -> Result<()> {
    ctx.eq("lhs vs rhs", lhs, rhs);
    ctx.eq("lhs at p=1", &at_p1(lhs)?, q_lhs);
    ctx.eq("rhs at p=1", &at_p1(rhs)?, q_rhs);
    Ok(())
}

fn pq_weight(p: &SetPartition) -> LaurentPoly {
    omega(p, WeightMode::Xypq).expect("layered matchings are matchings")
}

pub(super) fn rec(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n)?;
    let e = fenum(ctx, n, 0, 0)?;
    let r = fxypq(n, 0, 0)?;
    sides(ctx, &e, &r, &fxyq(n, 0)?, &fxyq(n, 0)?)
}

pub(super) fn pq1_terms(n: i64) -> Result<Terms> {
    let c = binom2(n + 2);
    let mut t = vec![("singletons".to_string(), mono(n + 2, 0, c, c)?)];
    for j in 0..=n {
        let k = binom2(j);
        t.push((
            format!("j={j}"),
            mono(j, 1, n * (j + 1) - k, k + j)? * fxypq(n - j, j + 2, 0)?,
        ));
    }
    Ok(t)
}

pub(super) fn pq1(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 2)?;
    let rhs = total(&pq1_terms(n)?);
    sides(
        ctx,
        &fenum(ctx, n + 2, 0, 0)?,
        &rhs,
        &fxyq(n + 2, 0)?,
        &total(&q::thm41_terms(n)?),
    )
}

pub(super) fn pq2(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n + 1)?;
    let mut rhs = LaurentPoly::zero();
    for j in 0..=n {
        rhs += mono(1, j, (2 * n - j) * (j + 1) - j, j * (j + 1))? * fxypq(2 * n - 2 * j, 2 * j + 1, 0)?;
    }
    sides(
        ctx,
        &fenum(ctx, 2 * n + 1, 0, 0)?,
        &rhs,
        &fxyq(2 * n + 1, 0)?,
        &total(&q::thm42_odd_terms(n)?),
    )
}

pub(super) fn pq3(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n)?;
    let mut rhs = mono(0, n, n * (n - 1), n * (n - 1))?;
    for j in 0..n {
        rhs += mono(1, j, (2 * n - j - 1) * (j + 1) - j, j * (j + 1))? * fxypq(2 * n - 2 * j - 1, 2 * j + 1, 0)?;
    }
    sides(
        ctx,
        &fenum(ctx, 2 * n, 0, 0)?,
        &rhs,
        &fxyq(2 * n, 0)?,
        &total(&q::thm42_even_terms(n)?),
    )
}

pub(super) fn pq4(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (m, n) = (a[0], a[1]);
    ctx.need_family(m + n)?;
    let rhs = fxypq(m, 0, n)? * fxypq(n, m, 0)?
        + mono(0, 1, n - 1, m - 1)? * fxypq(m - 1, 0, n + 1)? * fxypq(n - 1, m + 1, 0)?;
    sides(
        ctx,
        &fenum(ctx, m + n, 0, 0)?,
        &rhs,
        &fxyq(m + n, 0)?,
        &total(&q::thm43_terms(m, n)?),
    )
}

pub(super) fn pq5(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (m, n) = (a[0], a[1]);
    ctx.need_family(m + n + 1)?;
    let lhs = fenum(ctx, m + 1, 0, n)? * fenum(ctx, n + 1, m, 0)?;
    let rhs = mono(1, 0, n, m)? * fxypq(m + n + 1, 0, 0)?
        + mono(0, 2, 2 * n - 1, 2 * m - 1)? * fxypq(m - 1, 0, n + 2)? * fxypq(n - 1, m + 2, 0)?;
    sides(
        ctx,
        &lhs,
        &rhs,
        &(fxyq(m + 1, 0)? * fxyq(n + 1, m)?),
        &total(&q::thm44_terms(m, n)?),
    )
}

pub(super) fn pq6(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 1)?;
    let lhs = fenum(ctx, n, 0, 0)? * fenum(ctx, n + 1, 0, 0)?;
    let mut rhs = LaurentPoly::zero();
    for j in 0..=n {
        rhs += mono(1, j, n * (j + 1) - j * (j + 3) / 2, j * j / 2)? * fxypq(n - j, j, 0)? * fxypq(n - j, j + 1, 0)?;
    }
    sides(
        ctx,
        &lhs,
        &rhs,
        &(fxyq(n, 0)? * fxyq(n + 1, 0)?),
        &total(&q::thm45_terms(n)?),
    )
}

pub(super) fn pq7(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n)?;
    let mut rhs = LaurentPoly::zero();
    for k in 0..=n / 2 {
        let e = binom2(n) - k * (n - k);
        rhs += mono(n - 2 * k, k, e, e)? * pqbinom(n - k, k)?;
    }
    sides(
        ctx,
        &fenum(ctx, n, 0, 0)?,
        &rhs,
        &fxyq(n, 0)?,
        &carlitz_closed_form(n as usize),
    )
}

/// The `F_{2n}` expansion with the suffix factor missing the
/// `p^{n(n-k)}` that the `n - k` trailing elements pick up in `ls`.
pub(super) fn pq8_bare_terms(n: i64) -> Result<Terms> {
    pq8_terms_with(n, |_| 0)
}

pub(super) fn pq8_terms(n: i64) -> Result<Terms> {
    pq8_terms_with(n, |k| n * (n - k))
}

fn pq8_terms_with(n: i64, extra_p: impl Fn(i64) -> i64) -> Result<Terms> {
    (0..=n)
        .map(|k| {
            let e = binom2(n + k) - n * k;
            Ok((
                format!("k={k}"),
                mono(n - k, k, e + extra_p(k), e)? * pqbinom(n, k)? * fxypq(n - k, n + k, 0)?,
            ))
        })
        .collect()
}

pub(super) fn pq8_bare(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n)?;
    ctx.eq("lhs vs rhs", &fenum(ctx, 2 * n, 0, 0)?, &total(&pq8_bare_terms(n)?));
    Ok(())
}

pub(super) fn pq8(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n)?;
    let terms = pq8_terms(n)?;
    sides(
        ctx,
        &fenum(ctx, 2 * n, 0, 0)?,
        &total(&terms),
        &fxyq(2 * n, 0)?,
        &total(&q::thm47_terms(n)?),
    )?;
    let set = q::matchings(ctx, 2 * n)?;
    refine(ctx, set, |p| delta_class(p, n as usize), pq_weight, &terms);
    Ok(())
}

fn one_plus_pq_range(n: i64, lo: i64) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for i in lo..=n {
        acc = acc * (LaurentPoly::one() + mono(0, 0, n - i + 1, i)?);
    }
    Ok(acc)
}

fn at_xy1(p: &LaurentPoly) -> Result<LaurentPoly> {
    p.specialize_ints(&[(Var::X, 1), (Var::Y, 1)])
}

pub(super) fn pq9(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 1)?;
    ctx.need_layered(n + 1)?;
    let lhs = one_plus_pq_range(n, 1)?;
    let mut rhs = at_xy1(&fxypq(n + 1, 0, 0)?)?;
    for k in 0..=n - 2 {
        rhs += LaurentPoly::q_pow(k) * at_xy1(&fxypq(k, 0, n - k + 1)?)? * one_plus_pq_range(n, k + 3)?;
    }
    sides(ctx, &lhs, &rhs, &q::one_plus_q_range(1, n), &total(&q::thm48_terms(n)?))?;
    let mut layered = LaurentPoly::zero();
    for p in layered_partitions((n + 1) as usize) {
        let s = p.stats();
        layered += mono(0, 0, s.ls as i64, s.rb as i64)?;
    }
    ctx.eq("(ls, rb) over layered partitions", &layered, &lhs);
    Ok(())
}

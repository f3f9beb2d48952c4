//! Determinant identities, checked exhaustively over index sequences with
//! every vertex in `0..=top`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::Ctx;
use crate::error::Result;
use crate::fibonacci;
use crate::lgv::paths::{check_tuple_ceiling, visit_tuples};
use crate::lgv::{
    ballot_check, cigler_identity, closed_form_minor, euler_cassini_sides, minor, reducible_at, tail_swap, Ballot,
    IndexSequences, MinorMethod, TupleFilter,
};
use crate::poly::{LaurentPoly, Var};

/// Runs `f` on every sequence pair in parallel and folds the results into
/// `ctx` in input order.
fn each<F>(ctx: &mut Ctx, seqs: &[IndexSequences], f: F) -> Result<()>
where
    F: Fn(&IndexSequences, &mut Ctx) -> Result<()> + Sync,
{
    let parts: Vec<Result<Ctx>> = seqs
        .par_iter()
        .map(|s| {
            let mut sub = ctx.fork();
            f(s, &mut sub)?;
            Ok(sub)
        })
        .collect();
    for p in parts {
        ctx.merge(p?);
        if ctx.failed() {
            break;
        }
    }
    Ok(())
}

fn sequences(ctx: &Ctx, k: i64, top: i64) -> Result<Vec<IndexSequences>> {
    ctx.need_family(top)?;
    crate::config::Ceilings::check("minor size", k as usize, ctx.ceilings.minor)?;
    Ok(IndexSequences::all_with_k(k as usize, top as usize))
}

fn at_ones(p: &LaurentPoly) -> Result<LaurentPoly> {
    p.specialize_ints(&[(Var::X, 1), (Var::Y, 1), (Var::Q, 1)])
}

fn int(v: BigInt) -> LaurentPoly {
    LaurentPoly::constant(v)
}

pub(super) fn noncross(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let seqs = sequences(ctx, a[0], a[1])?;
    each(ctx, &seqs, |s, ctx| {
        check_tuple_ceiling(s, ctx.ceilings)?;
        let det = minor(s, MinorMethod::Cofactor, ctx.ceilings)?;
        let mut all = LaurentPoly::zero();
        let mut swap_err = None;
        visit_tuples(s, TupleFilter::All, |t| {
            all.add_term(t.weight_monomial(), t.sign().into());
            if t.is_noncrossing() || swap_err.is_some() {
                return;
            }
            let ok = tail_swap(t).and_then(|t2| {
                let back = tail_swap(&t2)?;
                Ok(back == *t && t2.sign() == -t.sign() && t2.weight_monomial() == t.weight_monomial())
            });
            match ok {
                Ok(true) => {}
                Ok(false) => swap_err = Some(Ok(t.to_string())),
                Err(e) => swap_err = Some(Err(e)),
            }
        });
        if let Some(e) = swap_err {
            ctx.check(format!("tail swap at {s}"), false, e?, "a sign-reversing involution");
        }
        let mut nc = LaurentPoly::zero();
        let mut split = true;
        let cut = reducible_at(s);
        visit_tuples(s, TupleFilter::Noncrossing, |t| {
            nc.add_term(t.weight_monomial(), t.sign().into());
            if let Some(c) = cut {
                split &= t.is_reducible_at(c);
            }
        });
        ctx.eq(format!("cofactor vs all tuples at {s}"), &det, &all);
        ctx.eq(format!("cofactor vs noncrossing tuples at {s}"), &det, &nc);
        ctx.eq(
            format!("cofactor vs reduction at {s}"),
            &det,
            &minor(s, MinorMethod::Reduction, ctx.ceilings)?,
        );
        ctx.check(
            format!("noncrossing tuples split at {s}"),
            split,
            "crossing the cut",
            "split",
        );
        Ok(())
    })
}

pub(super) fn ballot(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let seqs: Vec<IndexSequences> = sequences(ctx, a[0], a[1])?
        .into_iter()
        .filter(|s| s.overlap().is_none())
        .collect();
    each(ctx, &seqs, |s, ctx| {
        if let Ballot::Violated { c } = ballot_check(s)? {
            let det = minor(s, MinorMethod::Cofactor, ctx.ceilings)?;
            ctx.eq(format!("minor at {s}, violated at {c}"), &det, &LaurentPoly::zero());
            let mut any = None;
            visit_tuples(s, TupleFilter::Noncrossing, |t| {
                any.get_or_insert_with(|| t.to_string());
            });
            ctx.check(
                format!("noncrossing tuples at {s}"),
                any.is_none(),
                any.unwrap_or_default(),
                "none",
            );
        }
        Ok(())
    })
}

fn interleaved(k: usize, top: usize) -> Vec<IndexSequences> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * k);
    fn go(start: usize, need: usize, top: usize, cur: &mut Vec<usize>, k: usize, out: &mut Vec<IndexSequences>) {
        if need == 0 {
            // cur is u1 u2 v1 u3 v2 ... uk v_{k-1} v_k in increasing order.
            let mut u = vec![cur[0], cur[1]];
            let mut v = Vec::new();
            let mut i = 2;
            for _ in 0..k - 2 {
                v.push(cur[i]);
                u.push(cur[i + 1]);
                i += 2;
            }
            v.push(cur[i]);
            v.push(cur[i + 1]);
            out.push(IndexSequences::new(u, v).expect("interleaved sequences are increasing"));
            return;
        }
        for x in start..=top {
            if top + 1 - x < need {
                break;
            }
            cur.push(x);
            go(x + 1, need - 1, top, cur, k, out);
            cur.pop();
        }
    }
    go(0, 2 * k, top, &mut cur, k, &mut out);
    out
}

pub(super) fn minor_closed_form(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (k, top) = (a[0], a[1]);
    ctx.need_family(top)?;
    crate::config::Ceilings::check("minor size", k as usize, ctx.ceilings.minor)?;
    let seqs = interleaved(k as usize, top as usize);
    each(ctx, &seqs, |s, ctx| {
        let cf = closed_form_minor(s)?;
        ctx.eq(
            format!("{cf} at {s}"),
            &cf.value()?,
            &minor(s, MinorMethod::Cofactor, ctx.ceilings)?,
        );
        Ok(())
    })
}

fn euler_cassini_int(n: usize, m: usize) -> BigInt {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    BigInt::from(sign) * fibonacci(m - 1)
}

pub(super) fn euler_cassini(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, m) = (a[0] as usize, a[1] as usize);
    ctx.need_family((n + m) as i64)?;
    let (lhs, rhs) = euler_cassini_sides(n, m)?;
    ctx.eq("sides", &lhs, &rhs);
    let s = IndexSequences::new(vec![0, 1], vec![n, n + m])?;
    ctx.eq(
        format!("minor at {s}"),
        &minor(&s, MinorMethod::Cofactor, ctx.ceilings)?,
        &lhs,
    );
    let fib = fibonacci;
    let direct = fib(n) * fib(n + m - 1) - fib(n - 1) * fib(n + m);
    ctx.eq("integer identity", &int(direct.clone()), &int(euler_cassini_int(n, m)));
    ctx.eq("lhs at x=y=q=1", &at_ones(&lhs)?, &int(direct));
    Ok(())
}

pub(super) fn cigler(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, m) = (a[0] as usize, a[1] as usize);
    ctx.need_family((n + m) as i64)?;
    let c = cigler_identity(n, m)?;
    ctx.eq("sides", &c.lhs, &c.rhs);
    ctx.eq("lhs via the minor", &c.lhs, &c.lhs_from_minor);
    ctx.eq("rhs via the minor", &c.rhs, &c.rhs_from_minor);
    ctx.eq("rhs at x=y=q=1", &at_ones(&c.rhs)?, &int(euler_cassini_int(n, m)));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleaved_count() {
        // C(top+1, 2k) choices of the merged sequence.
        assert_eq!(interleaved(2, 4).len(), 5);
        assert_eq!(interleaved(3, 7).len(), 28);
        assert!(interleaved(3, 7).iter().all(IndexSequences::is_interleaved));
    }
}

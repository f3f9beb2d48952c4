//! Checks for the q-identities: the `ls`/`rb` equidistribution, the
//! families and their recursions, and the combinatorial identities with
//! their class refinements.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::Ctx;
use crate::binom2;
use crate::combinat::pattern::{pattern_123, pattern_13_2};
use crate::combinat::{
    complement, layered_matchings, layered_partitions, omega, phi, shift, to_binary_seq, AllPartitions,
    IntegerPartition, SetPartition, WeightMode,
};
use crate::error::Result;
use crate::families::{
    a_product, base, carlitz_closed_form, carlitz_slice, fxyq, qbinom, qbinom_box, qbinom_product, transform_sides,
    FamilyTag, Transform, Via,
};
use crate::poly::{LaurentPoly, Monomial};

/// `x^ex y^ey p^ep q^eq` as a polynomial.
pub(super) fn mono(ex: i64, ey: i64, ep: i64, eq: i64) -> Result<LaurentPoly> {
    Ok(LaurentPoly::monomial(Monomial::from_exponents(ex, ey, ep, eq)?))
}

pub(super) fn xyq(pi: &SetPartition) -> LaurentPoly {
    omega(pi, WeightMode::Xyq).expect("layered matchings are matchings")
}

pub(super) fn matchings(ctx: &Ctx, n: i64) -> Result<Vec<SetPartition>> {
    ctx.need_layered(n)?;
    Ok(layered_matchings(n.max(0) as usize).collect())
}

/// Sums `weight` over `items` per class and compares every class with its
/// term; a class without a term must sum to zero.
pub(super) fn refine<T>(
    ctx: &mut Ctx,
    items: impl IntoIterator<Item = T>,
    classify: impl Fn(&T) -> String,
    weight: impl Fn(&T) -> LaurentPoly,
    terms: &[(String, LaurentPoly)],
) {
    let mut sums: BTreeMap<String, LaurentPoly> = BTreeMap::new();
    for it in items {
        *sums.entry(classify(&it)).or_default() += weight(&it);
    }
    for (label, term) in terms {
        let got = sums.remove(label).unwrap_or_default();
        ctx.eq(format!("class {label}"), &got, term);
    }
    for (label, got) in sums {
        ctx.eq(format!("class {label} (no matching term)"), &got, &LaurentPoly::zero());
    }
}

pub(super) fn total(terms: &[(String, LaurentPoly)]) -> LaurentPoly {
    terms.iter().map(|(_, t)| t.clone()).sum()
}

fn q_gf(items: impl Iterator<Item = usize>) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for e in items {
        acc.add_term(Monomial::q_pow(e as i32), BigInt::from(1));
    }
    acc
}

/// Cross-checks the layered generators against the filtered generic
/// enumeration while that is cheap.
const GENERIC_CROSSCHECK: i64 = 9;

fn ls_rb(ctx: &mut Ctx, n: i64, patterns: &[SetPartition], matchings_only: bool) -> Result<()> {
    ctx.need_layered(n)?;
    let nu = n as usize;
    let set: Vec<SetPartition> = if matchings_only {
        layered_matchings(nu).collect()
    } else {
        layered_partitions(nu).collect()
    };
    if n <= GENERIC_CROSSCHECK && n as usize <= ctx.ceilings.generic {
        let mut generic: Vec<SetPartition> = AllPartitions::new(nu)
            .filter(|s| crate::combinat::avoids_all(s, patterns))
            .collect();
        let mut fast = set.clone();
        generic.sort();
        fast.sort();
        ctx.check("generic enumeration agrees", generic == fast, generic.len(), fast.len());
    }
    let ls = q_gf(set.iter().map(|p| p.ls()));
    let rb = q_gf(set.iter().map(|p| p.rb()));
    ctx.eq("ls vs rb", &ls, &rb);
    for p in &set {
        let c = complement(p)?;
        let ok = c.ls() == p.rb() && (!matchings_only || c.is_layered_matching());
        ctx.check(format!("complement of {p}"), ok, c.ls(), p.rb());
    }
    Ok(())
}

pub(super) fn thm11(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    ls_rb(ctx, a[0], &[pattern_13_2()], false)
}

pub(super) fn thm11_123(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    ls_rb(ctx, a[0], &[pattern_13_2(), pattern_123()], true)
}

pub(super) fn thm21(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_layered(n)?;
    let nu = n as usize;
    ctx.eq("A_n", &base(FamilyTag::A, nu, Via::Enumeration)?, &a_product(nu));
    let mut images = Vec::new();
    for p in layered_partitions(nu) {
        let l = phi(&p)?;
        ctx.check(format!("rb vs |phi| at {p}"), p.rb() == l.size(), p.rb(), l.size());
        images.push(l);
    }
    images.sort();
    let mut target = IntegerPartition::distinct_max(nu.saturating_sub(1));
    target.sort();
    ctx.check(
        "phi is onto distinct parts",
        images == target,
        images.len(),
        target.len(),
    );
    Ok(())
}

pub(super) fn prop31(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n)?;
    ctx.need_layered(n)?;
    let nu = n as usize;
    ctx.eq(
        "F_n(q)",
        &base(FamilyTag::Fq, nu, Via::Enumeration)?,
        &base(FamilyTag::Fq, nu, Via::Recursion)?,
    );
    Ok(())
}

pub(super) fn prop32(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_layered(n)?;
    let (l, r) = transform_sides(Transform::Carlitz, n as usize, ctx.ceilings)?;
    ctx.eq("F_n(q) vs q^C(n,2) F^K_n(1/q)", &l, &r);
    ctx.eq(
        "F^K_n",
        &base(FamilyTag::FK, n as usize, Via::Enumeration)?,
        &base(FamilyTag::FK, n as usize, Via::Recursion)?,
    );
    if n >= 1 {
        for p in layered_matchings(n as usize) {
            let b = to_binary_seq(&p)?;
            let want = binom2(n) - b.rho() as i64;
            ctx.check(format!("rb vs rho at {p}"), p.rb() as i64 == want, p.rb(), want);
        }
    }
    Ok(())
}

pub(super) fn prop33(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_layered(n)?;
    let (l, r) = transform_sides(Transform::Cigler, n as usize, ctx.ceilings)?;
    ctx.eq("F_n(x,y,q) vs q^C(n,2) F^C_n(x,y,1/q)", &l, &r);
    ctx.eq(
        "F^C_n",
        &base(FamilyTag::FC, n as usize, Via::Enumeration)?,
        &base(FamilyTag::FC, n as usize, Via::Recursion)?,
    );
    Ok(())
}

pub(super) fn ext(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, sh) = (a[0], a[1]);
    ctx.need_layered(n)?;
    let (l, r) = transform_sides(Transform::Extension { a: sh as u32 }, n as usize, ctx.ceilings)?;
    ctx.eq("shifted F_n vs twisted F^C_n", &l, &r);
    Ok(())
}

pub(super) fn eq_fn(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n)?;
    let set = matchings(ctx, n)?;
    let enumerated: LaurentPoly = set.iter().map(xyq).sum();
    ctx.eq(
        "F_n(x,y,q)",
        &enumerated,
        &base(FamilyTag::Fxyq, n as usize, Via::Recursion)?,
    );
    for p in &set {
        let s = p.stats();
        let m = LaurentPoly::monomial(Monomial::new(s.singletons as u32, s.doubletons as u32, 0, s.rb as i32));
        ctx.eq(format!("block weights vs statistics at {p}"), &xyq(p), &m);
    }
    Ok(())
}

fn first_doubleton(p: &SetPartition) -> Option<usize> {
    p.blocks().iter().find(|b| b.len() == 2).map(|b| b[0])
}

fn first_singleton(p: &SetPartition) -> Option<usize> {
    p.blocks().iter().find(|b| b.len() == 1).map(|b| b[0])
}

/// Terms indexed as in the proofs; reused by the p = 1 comparisons.
pub(super) fn thm41_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    let mut t = vec![("singletons".to_string(), mono(n + 2, 0, 0, binom2(n + 2))?)];
    for j in 0..=n {
        t.push((format!("j={j}"), mono(j, 1, 0, binom2(j + 1))? * fxyq(n - j, j + 2)?));
    }
    Ok(t)
}

pub(super) fn thm41(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 2)?;
    let terms = thm41_terms(n)?;
    ctx.eq("F_{n+2}", &fxyq(n + 2, 0)?, &total(&terms));
    let set = matchings(ctx, n + 2)?;
    refine(
        ctx,
        set,
        |p| match first_doubleton(p) {
            None => "singletons".to_string(),
            Some(m) => format!("j={}", m - 1),
        },
        xyq,
        &terms,
    );
    Ok(())
}

pub(super) fn thm42_odd_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    (0..=n)
        .map(|j| {
            Ok((
                format!("j={j}"),
                mono(1, j, 0, j * (j + 1))? * fxyq(2 * n - 2 * j, 2 * j + 1)?,
            ))
        })
        .collect()
}

pub(super) fn thm42_even_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    let mut t = vec![("doubletons".to_string(), mono(0, n, 0, n * (n - 1))?)];
    for j in 0..n {
        t.push((
            format!("j={j}"),
            mono(1, j, 0, j * (j + 1))? * fxyq(2 * n - 2 * j - 1, 2 * j + 1)?,
        ));
    }
    Ok(t)
}

fn singleton_class(p: &SetPartition) -> String {
    match first_singleton(p) {
        None => "doubletons".to_string(),
        Some(m) => format!("j={}", (m - 1) / 2),
    }
}

pub(super) fn thm42_odd(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n + 1)?;
    let terms = thm42_odd_terms(n)?;
    ctx.eq("F_{2n+1}", &fxyq(2 * n + 1, 0)?, &total(&terms));
    let set = matchings(ctx, 2 * n + 1)?;
    refine(ctx, set, singleton_class, xyq, &terms);
    Ok(())
}

pub(super) fn thm42_even(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n)?;
    let terms = thm42_even_terms(n)?;
    ctx.eq("F_{2n}", &fxyq(2 * n, 0)?, &total(&terms));
    let set = matchings(ctx, 2 * n)?;
    refine(ctx, set, singleton_class, xyq, &terms);
    Ok(())
}

pub(super) fn thm43_terms(m: i64, n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    Ok(vec![
        ("apart".to_string(), fxyq(m, 0)? * fxyq(n, m)?),
        (
            "together".to_string(),
            mono(0, 1, 0, m - 1)? * fxyq(m - 1, 0)? * fxyq(n - 1, m + 1)?,
        ),
    ])
}

pub(super) fn thm43(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (m, n) = (a[0], a[1]);
    ctx.need_family(m + n)?;
    let terms = thm43_terms(m, n)?;
    ctx.eq("F_{m+n}", &fxyq(m + n, 0)?, &total(&terms));
    let set = matchings(ctx, m + n)?;
    let mu = m as usize;
    refine(
        ctx,
        set,
        |p| {
            let joined = mu >= 1 && p.blocks().iter().any(|b| b.as_slice() == [mu, mu + 1]);
            if joined { "together" } else { "apart" }.to_string()
        },
        xyq,
        &terms,
    );
    Ok(())
}

pub(super) fn thm44_terms(m: i64, n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    Ok(vec![
        ("singleton".to_string(), mono(1, 0, 0, m)? * fxyq(m + n + 1, 0)?),
        (
            "doubletons".to_string(),
            mono(0, 2, 0, 2 * m - 1)? * fxyq(m - 1, 0)? * fxyq(n - 1, m + 2)?,
        ),
    ])
}

pub(super) fn thm44(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (m, n) = (a[0], a[1]);
    ctx.need_family(m + n + 1)?;
    let terms = thm44_terms(m, n)?;
    ctx.eq(
        "F_{m+1} F_{n+1}(xq^m)",
        &(fxyq(m + 1, 0)? * fxyq(n + 1, m)?),
        &total(&terms),
    );
    let left = matchings(ctx, m + 1)?;
    let right = matchings(ctx, n + 1)?;
    let pairs = left.iter().flat_map(|p| right.iter().map(move |r| (p, r)));
    refine(
        ctx,
        pairs,
        |(p, r)| {
            let ends = p.blocks().last().is_some_and(|b| b.len() == 2);
            let begins = r.blocks().first().is_some_and(|b| b.len() == 2);
            if ends && begins { "doubletons" } else { "singleton" }.to_string()
        },
        |(p, r)| xyq(p) * shift(r, m as usize).omega().expect("matching"),
        &terms,
    );
    Ok(())
}

pub(super) fn thm45_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    (0..=n)
        .map(|j| {
            Ok((
                format!("j={j}"),
                mono(1, j, 0, j * j / 2)? * fxyq(n - j, j)? * fxyq(n - j, j + 1)?,
            ))
        })
        .collect()
}

/// Scans `B_1, A_1, B_2, A_2, ...` for the first singleton.
fn convolution_class(a: &SetPartition, b: &SetPartition) -> String {
    let (ab, bb) = (a.blocks(), b.blocks());
    for i in 0..ab.len().max(bb.len()) {
        if let Some(blk) = bb.get(i) {
            if blk.len() == 1 {
                return format!("j={}", blk[0] - 1);
            }
        }
        if let Some(blk) = ab.get(i) {
            if blk.len() == 1 {
                return format!("j={}", blk[0]);
            }
        }
    }
    "no singleton".to_string()
}

pub(super) fn thm45(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 1)?;
    let terms = thm45_terms(n)?;
    ctx.eq("F_n F_{n+1}", &(fxyq(n, 0)? * fxyq(n + 1, 0)?), &total(&terms));
    let first = matchings(ctx, n)?;
    let second = matchings(ctx, n + 1)?;
    let w1: Vec<LaurentPoly> = first.iter().map(xyq).collect();
    let w2: Vec<LaurentPoly> = second.iter().map(xyq).collect();
    let pairs = (0..first.len()).flat_map(|i| (0..second.len()).map(move |j| (i, j)));
    refine(
        ctx,
        pairs,
        |&(i, j)| convolution_class(&first[i], &second[j]),
        |&(i, j)| &w1[i] * &w2[j],
        &terms,
    );
    Ok(())
}

fn doubleton_count(p: &SetPartition) -> usize {
    p.blocks().iter().filter(|b| b.len() == 2).count()
}

pub(super) fn thm46(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n)?;
    let nu = n as usize;
    ctx.eq("F_n(x,y,q)", &fxyq(n, 0)?, &carlitz_closed_form(nu));
    let terms: Vec<(String, LaurentPoly)> = (0..=nu / 2).map(|k| (format!("k={k}"), carlitz_slice(nu, k))).collect();
    let set = matchings(ctx, n)?;
    refine(
        ctx,
        set,
        |p| format!("k={}", doubleton_count(p)),
        |p| LaurentPoly::q_pow(p.rb() as i64),
        &terms,
    );
    Ok(())
}

pub(super) fn eq_box(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, k) = (a[0], a[1]);
    let pascal = qbinom(n, k);
    ctx.eq("Pascal vs product", &pascal, &qbinom_product(n, k)?);
    ctx.eq("Pascal vs box partitions", &pascal, &qbinom_box(n, k));
    ctx.eq("symmetry", &pascal, &qbinom(n, n - k));
    Ok(())
}

/// The partition read off the block sequence: one part per singleton,
/// equal to the number of doubletons before it.
fn lattice_partition(p: &SetPartition) -> Result<IntegerPartition> {
    let mut seen = 0;
    let mut parts = Vec::new();
    for b in p.blocks() {
        if b.len() == 2 {
            seen += 1;
        } else if seen > 0 {
            parts.push(seen);
        }
    }
    IntegerPartition::new(parts)
}

pub(super) fn eq_qrb(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, k) = (a[0], a[1]);
    let (nu, ku) = (n as usize, k as usize);
    let set: Vec<SetPartition> = matchings(ctx, n)?
        .into_iter()
        .filter(|p| doubleton_count(p) == ku)
        .collect();
    ctx.eq(
        "rb over k doubletons",
        &q_gf(set.iter().map(|p| p.rb())),
        &carlitz_slice(nu, ku),
    );
    if 2 * k > n {
        return Ok(());
    }
    let shift = binom2(k) + binom2(n - k);
    let mut images = Vec::new();
    for p in &set {
        let l = lattice_partition(p)?;
        let want = l.size() as i64 + shift;
        ctx.check(format!("rb at {p}"), p.rb() as i64 == want, p.rb(), want);
        images.push(l);
    }
    images.sort();
    let mut target = IntegerPartition::in_box(ku, nu - 2 * ku);
    target.sort();
    ctx.check(
        "lattice paths fill the box",
        images == target,
        images.len(),
        target.len(),
    );
    Ok(())
}

pub(super) fn thm47_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    (0..=n)
        .map(|k| {
            Ok((
                format!("k={k}"),
                mono(n - k, k, 0, binom2(n + k) - n * k)? * qbinom(n, k) * fxyq(n - k, n + k)?,
            ))
        })
        .collect()
}

/// Doubletons among the first `n` blocks.
pub(super) fn delta_class(p: &SetPartition, n: usize) -> String {
    format!("k={}", p.blocks().iter().take(n).filter(|b| b.len() == 2).count())
}

pub(super) fn thm47(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(2 * n)?;
    let terms = thm47_terms(n)?;
    ctx.eq("F_{2n}", &fxyq(2 * n, 0)?, &total(&terms));
    let set = matchings(ctx, 2 * n)?;
    refine(ctx, set, |p| delta_class(p, n as usize), xyq, &terms);
    Ok(())
}

pub(super) fn one_plus_q_range(lo: i64, hi: i64) -> LaurentPoly {
    (lo..=hi).map(|i| LaurentPoly::one() + LaurentPoly::q_pow(i)).product()
}

pub(super) fn thm48_terms(n: i64) -> Result<Vec<(String, LaurentPoly)>> {
    let fq = |k: i64| base(FamilyTag::Fq, k as usize, Via::Recursion);
    let mut t = vec![("matching".to_string(), fq(n + 1)?)];
    for k in 0..=n - 2 {
        t.push((
            format!("k={k}"),
            LaurentPoly::q_pow(k) * fq(k)? * one_plus_q_range(k + 3, n),
        ));
    }
    Ok(t)
}

pub(super) fn thm48(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let n = a[0];
    ctx.need_family(n + 1)?;
    ctx.need_layered(n + 1)?;
    let terms = thm48_terms(n)?;
    ctx.eq("prod (1+q^i)", &one_plus_q_range(1, n), &total(&terms));
    let set: Vec<SetPartition> = layered_partitions((n + 1) as usize).collect();
    refine(
        ctx,
        set,
        |p| match p.blocks().iter().find(|b| b.len() >= 3) {
            None => "matching".to_string(),
            Some(b) => format!("k={}", b[0] - 1),
        },
        |p| LaurentPoly::q_pow(p.rb() as i64),
        &terms,
    );
    Ok(())
}

pub(super) fn shifted_weight(a: &[i64], ctx: &mut Ctx) -> Result<()> {
    let (n, k) = (a[0], a[1]);
    ctx.need_family(n)?;
    let mut acc = LaurentPoly::zero();
    for p in matchings(ctx, n)? {
        acc += shift(&p, k as usize).omega()?;
    }
    ctx.eq("shifted weights", &acc, &fxyq(n, k)?);
    Ok(())
}

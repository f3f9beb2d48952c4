//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qfib_core::combinat::{enumerate_avoiders, enumerate_avoiders_generic, layered_partitions, SetPartition};
use qfib_core::families::{family_poly, Family, FamilyTag, Via};
use qfib_core::lgv::{cigler_identity, enumerate_paths};
use qfib_core::poly::{LaurentPoly, Monomial, Var};
use qfib_core::verify::{run_identity, ParamRange, Profile, Report, Status};
use qfib_core::Ceilings;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fib(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn pat(s: &str) -> SetPartition {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs one registered identity on exactly `ranges` (or its quick domain if
/// empty) and insists on a non-vacuous pass.
fn pass(key: &str, ranges: &[&str]) -> Result<Report, String> {
    let overrides: Vec<ParamRange> = ranges.iter().map(|r| r.parse().unwrap()).collect();
    let r = run_identity(key, Profile::Quick, &overrides, &Ceilings::default()).map_err(|e| format!("{key}: {e}"))?;
    for o in &overrides {
        ensure(r.domain.contains(o), || {
            format!("{key}: domain {:?} lacks {o:?}", r.domain)
        })?;
    }
    match r.status {
        Status::Pass if r.instances > 0 => Ok(r),
        _ => Err(format!("{key}: {r}")),
    }
}

fn pass_all(list: &[(&str, &[&str])]) -> Result<(u64, u64), String> {
    let (mut inst, mut cmp) = (0, 0);
    for (key, ranges) in list {
        let r = pass(key, ranges)?;
        inst += r.instances;
        cmp += r.comparisons;
    }
    Ok((inst, cmp))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn counting() -> Outcome {
    let start = Instant::now();
    let c = Ceilings::default();
    let layered = [pat("13/2")];
    let matchings = [pat("13/2"), pat("123")];
    for n in 1..=20usize {
        let got = enumerate_avoiders(n, &layered, &c).unwrap().count() as u128;
        ensure(got == 1 << (n - 1), || format!("#Pi_{n}(13/2) = {got}"))?;
    }
    for n in 0..=25usize {
        let got = enumerate_avoiders(n, &matchings, &c).unwrap().count() as u128;
        ensure(got == fib(n), || format!("#Pi_{n}(13/2,123) = {got}, want {}", fib(n)))?;
    }
    // The dedicated generators against filtering all partitions.
    for n in 0..=9usize {
        for ps in [&layered[..], &matchings[..]] {
            let a: Vec<_> = enumerate_avoiders(n, ps, &c).unwrap().collect();
            let b: Vec<_> = enumerate_avoiders_generic(n, ps).collect();
            ensure(a.len() == b.len() && a.iter().all(|p| b.contains(p)), || {
                format!("generators disagree with filtering at n={n}")
            })?;
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("2^(n-1) for n<=20, F_n for n<=25 in {t:.2?}"))
}

fn equidistribution() -> Outcome {
    let (inst, _) = pass_all(&[
        ("thm1.1-ls-rb-132", &["n=0..14"]),
        ("thm1.1-ls-rb-132-123", &["n=0..14"]),
    ])?;
    // ls and rb histograms from the generic enumeration.
    for n in 0..=9usize {
        for ps in [vec![pat("13/2")], vec![pat("13/2"), pat("123")]] {
            let mut ls = BTreeMap::new();
            let mut rb = BTreeMap::new();
            for p in enumerate_avoiders_generic(n, &ps) {
                *ls.entry(p.ls()).or_insert(0) += 1;
                *rb.entry(p.rb()).or_insert(0) += 1;
            }
            ensure(ls == rb, || format!("ls and rb differ at n={n}"))?;
        }
    }
    Ok(format!("both classes, n<=14, {inst} instances"))
}

fn product() -> Outcome {
    let (inst, _) = pass_all(&[("thm2.1-product", &["n=0..14"])])?;
    for n in 1..=14usize {
        let mut want = vec![1u64];
        for i in 1..n {
            let mut next = vec![0u64; want.len() + i];
            for (e, c) in want.iter().enumerate() {
                next[e] += c;
                next[e + i] += c;
            }
            want = next;
        }
        let mut got = vec![0u64; want.len()];
        for p in layered_partitions(n) {
            got[p.rb()] += 1;
        }
        ensure(got == want, || format!("rb histogram at n={n}: {got:?}"))?;
    }
    Ok(format!("n<=14, {inst} instances"))
}

fn recursions() -> Outcome {
    let (inst, _) = pass_all(&[
        ("prop3.1-rec", &["n=0..20"]),
        ("prop3.2-carlitz", &["n=0..20"]),
        ("prop3.3-cigler", &["n=0..20"]),
        ("eqFn-rec", &["n=0..20"]),
    ])?;
    let nu: qfib_core::combinat::MorseSeq = "..--.-".parse().unwrap();
    let m = Monomial::new(3, 3, 0, 16);
    ensure(nu.length() == 9 && nu.weight() == LaurentPoly::monomial(m), || {
        format!("weight of {nu} is {}", nu.weight())
    })?;
    let fc9 = family_poly(&Family::new(FamilyTag::FC), 9, Via::Recursion, &Ceilings::default()).unwrap();
    let c = fc9.coeff(&m).cloned().unwrap_or_default();
    ensure(c >= 1.into(), || format!("coefficient of x^3*y^3*q^16 in F^C_9 is {c}"))?;
    Ok(format!(
        "n<=20 incl. transforms, {inst} instances; x^3*y^3*q^16 in F^C_9 with coefficient {c}"
    ))
}

fn fourth() -> Outcome {
    let start = Instant::now();
    let (inst, cmp) = pass_all(&[
        ("thm4.1", &["n=0..12"]),
        ("thm4.2-odd", &["n=0..12"]),
        ("thm4.2-even", &["n=0..12"]),
        ("thm4.3-addition", &["m=0..12", "n=0..12"]),
        ("thm4.4", &["m=1..12", "n=1..12"]),
        ("thm4.5-convolution", &["n=0..12"]),
        ("thm4.6-carlitz-binom", &["n=0..12"]),
        ("eq-box", &["n=0..12", "k=0..12"]),
        ("eq-qrb", &["n=0..12", "k=0..6"]),
        ("thm4.7", &["n=0..12"]),
        ("thm4.8-product-split", &["n=0..12"]),
        ("shifted-weight", &["n=0..12", "k=0..12"]),
    ])?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{inst} instances, {cmp} comparisons incl. class refinements, in {t:.2?}"
    ))
}

fn paths() -> Outcome {
    let c = Ceilings::default();
    for a in 0..=12usize {
        for len in 0..=12usize {
            let ps = enumerate_paths(a, a + len);
            ensure(ps.len() as u128 == fib(len), || {
                format!("{} paths from {a} to {}", ps.len(), a + len)
            })?;
            let sum: LaurentPoly = ps.iter().map(|p| p.weight()).sum();
            let fam = Family::new(FamilyTag::Fxyq).with_q_shift(a as u32);
            let want = family_poly(&fam, len, Via::Recursion, &c).unwrap();
            ensure(sum == want, || format!("path weights from {a} to {}: {sum}", a + len))?;
        }
    }
    let (inst, _) = pass_all(&[
        ("thm5.2-noncross-det", &["k=1..3", "top=8"]),
        ("lem5.3-ballot", &["k=1..3", "top=8"]),
        ("thm5.4-minor", &["k=2..4", "top=10"]),
        ("cor5.5-euler-cassini", &["n=1..8", "m=1..8"]),
        ("thm5.1-cigler", &["n=1..8", "m=1..8"]),
    ])?;
    let ones = [(Var::X, 1), (Var::Y, 1), (Var::Q, 1)];
    let rhs = cigler_identity(2, 2).unwrap().rhs.specialize_ints(&ones).unwrap();
    let direct = fib(2) as i128 * fib(3) as i128 - fib(1) as i128 * fib(4) as i128;
    ensure(rhs == LaurentPoly::one() && direct == 1, || {
        format!("n=m=2 gives {rhs}, integers give {direct}")
    })?;
    Ok(format!("spans<=12, {inst} instances, n=m=2 specializes to 1"))
}

fn pq() -> Outcome {
    let (inst, _) = pass_all(&[
        ("pq-rec", &["n=0..14"]),
        ("pq-1", &["n=0..10"]),
        ("pq-2", &["n=0..10"]),
        ("pq-3", &["n=0..10"]),
        ("pq-4", &["m=0..10", "n=0..10"]),
        ("pq-5", &["m=1..10", "n=1..10"]),
        ("pq-6", &["n=0..10"]),
        ("pq-7", &["n=0..10"]),
        ("pq-8", &["n=0..10"]),
        ("pq-9", &["n=0..10"]),
    ])?;
    let bare = run_identity("pq-8-no-p-factor", Profile::Quick, &[], &Ceilings::default()).unwrap();
    let n1 = bare.counterexample.as_ref().map(|c| c.params["n"]);
    ensure(bare.status == Status::Fail && n1 == Some(1), || {
        format!("pq-8 without the factor unexpectedly {bare}")
    })?;
    Ok(format!(
        "{inst} instances with p=1 collapses; pq-8 needs a p^(n(n-k)) factor, without it the identity fails at n=1"
    ))
}

fn qfib(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qfib")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        start.elapsed(),
    )
}

fn cli_gate() -> Outcome {
    let (code, out, t) = qfib(&["verify", "--all", "--profile", "quick"]);
    ensure(code == 0, || format!("exit {code}:\n{out}"))?;
    ensure(t <= Duration::from_secs(60), || format!("took {t:?}"))?;
    let summary = out.lines().last().unwrap_or_default().to_string();
    let (code, out, _) = qfib(&["verify", "--identity", "pq-8-no-p-factor"]);
    ensure(code == 1, || format!("failing identity exited {code}"))?;
    let field = |k: &str| {
        out.lines()
            .find_map(|l| l.trim().strip_prefix(k))
            .map(|s| s.trim().to_string())
            .ok_or_else(|| format!("no `{k}` line in:\n{out}"))
    };
    let (lhs, rhs) = (field("lhs:")?, field("rhs:")?);
    for s in [&lhs, &rhs] {
        let p: LaurentPoly = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
        ensure(p.to_string() == *s, || format!("`{s}` is not canonical"))?;
    }
    ensure(lhs != rhs, || "counterexample sides agree".into())?;
    Ok(format!(
        "{summary} in {t:.2?}; a failing identity exits 1 with canonical sides"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("counting", counting),
        ("ls/rb equidistribution", equidistribution),
        ("rb product formula", product),
        ("recursions, transforms, Morse weight", recursions),
        ("q-identities and refinements", fourth),
        ("paths and minors", paths),
        ("p,q-identities", pq),
        ("verify --all gate", cli_gate),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("criterion {}: PASS  {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

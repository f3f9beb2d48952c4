//! The `qfib` command line.
//!
//! Exit codes: 0 success or pass, 1 identity failure, 2 usage error,
//! 3 ceiling exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinat::{
    complement, enumerate_avoiders, from_binary_seq, from_morse, omega, phi, phi_inv, shift, to_binary_seq, to_morse,
    BinarySeq, IntegerPartition, MorseSeq, SetPartition, WeightMode,
};
use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::families::{family_poly, Family, FamilyTag, Via};
use crate::lgv::{minor, IndexSequences, MinorMethod};
use crate::poly::{LaurentPoly, Monomial, Var};
use crate::verify::{self, ParamRange, Profile, Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qfib",
    version,
    about = "Set partition statistics and q-Fibonacci polynomials"
)]
struct Cli {
    /// Output format; csv applies to enumerate and verify only.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of [n] avoiding the given patterns.
    Enumerate(EnumerateArgs),
    /// Build a polynomial family member.
    Poly(PolyArgs),
    /// Apply one of the bijections.
    Biject(BijectArgs),
    /// A minor of the matrix of shifted F_n(x,y,q).
    Minor(MinorArgs),
    /// Check registered identities.
    Verify(VerifyArgs),
    /// Randomized checks of the polynomial ring.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Patterns such as `13/2,123`; use `;` between patterns written with
    /// commas.
    #[arg(long)]
    avoid: Option<String>,
    /// Add ls, rb, singleton and doubleton columns.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// A, F, Fxyq, FK, FC or Fxypq.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "recursion")]
    via: String,
    /// Evaluate at x q^a, y q^a.
    #[arg(long, default_value_t = 0)]
    q_shift: u32,
    /// Evaluate at x p^b, y p^b.
    #[arg(long, default_value_t = 0)]
    p_shift: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BijectMap {
    /// Layered partition to its complement.
    Complement,
    /// Layered partition to distinct-part integer partition.
    Phi,
    /// Integer partition back to a layered partition of [n].
    PhiInv,
    /// Layered matching to binary word.
    Binary,
    /// Binary word to layered matching.
    FromBinary,
    /// Layered matching to Morse sequence.
    Morse,
    /// Morse sequence to layered matching.
    FromMorse,
    /// Weight of a matching.
    Omega,
    /// Shift a partition right by k positions.
    Shift,
}

#[derive(Args, Debug)]
struct BijectArgs {
    #[arg(long, value_enum)]
    map: BijectMap,
    /// The object to map, in its text form.
    #[arg(long)]
    input: String,
    /// Size of the target for phi-inv.
    #[arg(long)]
    n: Option<usize>,
    /// Weight mode for omega.
    #[arg(long, default_value = "xyq")]
    mode: String,
    /// Shift amount.
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Args, Debug)]
struct MinorArgs {
    /// Row indices, e.g. `0,1`.
    #[arg(long)]
    rows: String,
    /// Column indices, e.g. `4,6`.
    #[arg(long)]
    cols: String,
    /// cofactor, all_tuples, noncrossing_tuples, reduction, or all.
    #[arg(long, default_value = "cofactor")]
    method: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every registered identity.
    #[arg(long, conflicts_with = "identity")]
    all: bool,
    /// Run one identity by key.
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, default_value = "quick")]
    profile: String,
    /// Replace a parameter range, e.g. `n=2..20`; repeatable.
    #[arg(long = "range")]
    ranges: Vec<String>,
    /// Omit timings so that output is reproducible byte for byte.
    #[arg(long)]
    deterministic: bool,
    /// List the registry instead of running it.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    cases: usize,
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = Ceilings::from_env().and_then(|c| dispatch(&cli, &c, out));
    match result {
        Ok(code) => code,
        Err(Error::Internal(m)) if m == BROKEN_PIPE => EXIT_FAILURE,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CeilingExceeded { .. } => EXIT_CEILING,
        Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

const BROKEN_PIPE: &str = "output closed";

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::Internal(BROKEN_PIPE.into());
    }
    Error::Internal(format!("write failed: {e}"))
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn no_csv(fmt: Format, verb: &str) -> Result<()> {
    if fmt == Format::Csv {
        return Err(Error::InvalidArgument(format!(
            "csv output is not available for `{verb}`"
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli, ceilings: &Ceilings, out: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    match &cli.command {
        Command::Enumerate(a) => enumerate(a, fmt, ceilings, out),
        Command::Poly(a) => {
            no_csv(fmt, "poly")?;
            poly(a, fmt, ceilings, out)
        }
        Command::Biject(a) => {
            no_csv(fmt, "biject")?;
            biject(a, fmt, out)
        }
        Command::Minor(a) => {
            no_csv(fmt, "minor")?;
            minor_cmd(a, fmt, ceilings, out)
        }
        Command::Verify(a) => verify_cmd(a, fmt, ceilings, out),
        Command::Selftest(a) => {
            no_csv(fmt, "selftest")?;
            selftest(a, fmt, out)
        }
    }
}

/// Splits a pattern list on `;` if present, else on `,`.
pub fn parse_patterns(s: &str) -> Result<Vec<SetPartition>> {
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split(sep)
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse())
        .collect()
}

#[derive(Serialize)]
struct Row {
    partition: SetPartition,
    #[serde(skip_serializing_if = "Option::is_none")]
    ls: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rb: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
}

fn enumerate(a: &EnumerateArgs, fmt: Format, ceilings: &Ceilings, out: &mut dyn Write) -> Result<i32> {
    let patterns = match &a.avoid {
        Some(s) => parse_patterns(s)?,
        None => Vec::new(),
    };
    let rows: Vec<Row> = enumerate_avoiders(a.n, &patterns, ceilings)?
        .map(|p| {
            let st = a.stats.then(|| p.stats());
            Row {
                ls: st.map(|s| s.ls),
                rb: st.map(|s| s.rb),
                s: st.map(|s| s.singletons),
                d: st.map(|s| s.doubletons),
                partition: p,
            }
        })
        .collect();
    match fmt {
        Format::Json => json_line(out, &rows)?,
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.partition.to_string().chars().count())
                .chain(std::iter::once("partition".len()))
                .max()
                .unwrap_or(0);
            if a.stats {
                writeln!(out, "{:<width$}  ls  rb  s  d", "partition").map_err(io)?;
            }
            for r in &rows {
                let p = r.partition.to_string();
                if a.stats {
                    let pad = " ".repeat(width - p.chars().count());
                    let (ls, rb, s, d) = (r.ls.unwrap_or(0), r.rb.unwrap_or(0), r.s.unwrap_or(0), r.d.unwrap_or(0));
                    writeln!(out, "{p}{pad}  {ls:>2}  {rb:>2}  {s}  {d}").map_err(io)?;
                } else {
                    writeln!(out, "{p}").map_err(io)?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: &[&str] = if a.stats {
                &["partition", "ls", "rb", "s", "d"]
            } else {
                &["partition"]
            };
            w.write_record(header).map_err(csv_err)?;
            for r in &rows {
                let mut rec = vec![r.partition.to_string()];
                if a.stats {
                    for v in [r.ls, r.rb, r.s, r.d] {
                        rec.push(v.unwrap_or(0).to_string());
                    }
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            out.write_all(&bytes).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

fn poly(a: &PolyArgs, fmt: Format, ceilings: &Ceilings, out: &mut dyn Write) -> Result<i32> {
    let tag: FamilyTag = a.family.parse()?;
    let via: Via = a.via.parse()?;
    let fam = Family::new(tag).with_q_shift(a.q_shift).with_p_shift(a.p_shift);
    let p = family_poly(&fam, a.n, via, ceilings)?;
    match fmt {
        Format::Json => json_line(
            out,
            &json!({
                "family": tag.name(),
                "n": a.n,
                "via": a.via,
                "q_shift": a.q_shift,
                "p_shift": a.p_shift,
                "poly": p,
            }),
        )?,
        _ => writeln!(out, "{p}").map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn to_json(v: &impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn biject(a: &BijectArgs, fmt: Format, out: &mut dyn Write) -> Result<i32> {
    let s = a.input.as_str();
    let (text, value): (String, Value) = match a.map {
        BijectMap::Complement => {
            let r = complement(&s.parse()?)?;
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::Phi => {
            let r = phi(&s.parse()?)?;
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::PhiInv => {
            let n = a.n.ok_or_else(|| Error::InvalidArgument("phi-inv needs --n".into()))?;
            let l: IntegerPartition = s.parse()?;
            let r = phi_inv(&l, n)?;
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::Binary => {
            let r = to_binary_seq(&s.parse()?)?;
            (r.to_string(), Value::String(r.to_string()))
        }
        BijectMap::FromBinary => {
            let b: BinarySeq = s.parse()?;
            let r = from_binary_seq(&b);
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::Morse => {
            let r = to_morse(&s.parse()?)?;
            (r.to_string(), Value::String(r.to_string()))
        }
        BijectMap::FromMorse => {
            let m: MorseSeq = s.parse()?;
            let r = from_morse(&m);
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::Omega => {
            let mode: WeightMode = a.mode.parse()?;
            let r = omega(&s.parse()?, mode)?;
            (r.to_string(), to_json(&r)?)
        }
        BijectMap::Shift => {
            let r = shift(&s.parse()?, a.k);
            (r.to_string(), to_json(&r.blocks())?)
        }
    };
    match fmt {
        Format::Json => json_line(
            out,
            &json!({
                "map": a.map.to_possible_value().map(|v| v.get_name().to_string()),
                "input": a.input,
                "output": value,
                "text": text,
            }),
        )?,
        _ => writeln!(out, "{text}").map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad index `{t}`")))
        })
        .collect()
}

/// The three methods `--method all` compares.
const ALL_METHODS: [MinorMethod; 3] = [
    MinorMethod::Cofactor,
    MinorMethod::AllTuples,
    MinorMethod::NoncrossingTuples,
];

fn minor_cmd(a: &MinorArgs, fmt: Format, ceilings: &Ceilings, out: &mut dyn Write) -> Result<i32> {
    let s = IndexSequences::new(parse_indices(&a.rows)?, parse_indices(&a.cols)?)?;
    let methods: Vec<MinorMethod> = if a.method == "all" {
        ALL_METHODS.to_vec()
    } else {
        vec![a.method.parse()?]
    };
    let mut results = Vec::new();
    for m in &methods {
        results.push((m.name(), minor(&s, *m, ceilings)?));
    }
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    match fmt {
        Format::Json => {
            let map: serde_json::Map<String, Value> = results
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
                .collect();
            json_line(
                out,
                &json!({ "rows": s.u(), "cols": s.v(), "results": map, "agree": agree }),
            )?;
        }
        _ => {
            if results.len() == 1 {
                writeln!(out, "{}", results[0].1).map_err(io)?;
            } else {
                for (k, v) in &results {
                    writeln!(out, "{k}: {v}").map_err(io)?;
                }
            }
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILURE })
}

fn verify_cmd(a: &VerifyArgs, fmt: Format, ceilings: &Ceilings, out: &mut dyn Write) -> Result<i32> {
    let profile: Profile = a.profile.parse()?;
    if a.list {
        for id in verify::registry() {
            writeln!(out, "{:<24} {}", id.key, id.title).map_err(io)?;
        }
        for id in verify::refuted() {
            writeln!(out, "{:<24} {} (refuted; not in --all)", id.key, id.title).map_err(io)?;
        }
        return Ok(EXIT_OK);
    }
    let overrides: Vec<ParamRange> = a.ranges.iter().map(|r| r.parse()).collect::<Result<_>>()?;
    let mut reports = if let Some(key) = &a.identity {
        vec![verify::run_identity(key, profile, &overrides, ceilings)?]
    } else if a.all {
        if !overrides.is_empty() {
            return Err(Error::InvalidArgument("--range needs --identity".into()));
        }
        verify::run_all(profile, ceilings)
    } else {
        return Err(Error::InvalidArgument("verify needs --all or --identity".into()));
    };
    if a.deterministic {
        verify::make_deterministic(&mut reports);
    }
    write_reports(&reports, profile, fmt, out)?;
    Ok(verify_exit(&reports))
}

fn verify_exit(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        return EXIT_FAILURE;
    }
    let mut code = EXIT_OK;
    for r in reports.iter().filter(|r| r.status == Status::Error) {
        match &r.error_kind {
            Some(Error::CeilingExceeded { .. }) => code = code.max(EXIT_CEILING),
            _ => return EXIT_FAILURE,
        }
    }
    code
}

fn write_reports(reports: &[Report], profile: Profile, fmt: Format, out: &mut dyn Write) -> Result<()> {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    match fmt {
        Format::Json => json_line(
            out,
            &json!({
                "profile": profile,
                "passed": verify::all_passed(reports),
                "reports": reports,
            }),
        ),
        Format::Text => {
            for r in reports {
                writeln!(out, "{r}").map_err(io)?;
            }
            writeln!(
                out,
                "{} identities: {} pass, {} fail, {} vacuous, {} error",
                reports.len(),
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Vacuous),
                count(Status::Error)
            )
            .map_err(io)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "name",
                "status",
                "domain",
                "instances",
                "comparisons",
                "elapsed_ms",
                "counterexample",
            ])
            .map_err(csv_err)?;
            for r in reports {
                let dom: Vec<String> = r.domain.iter().map(ToString::to_string).collect();
                let cx = r
                    .counterexample
                    .as_ref()
                    .map(|c| {
                        let ps: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        format!("{}: {}", ps.join(" "), c.what)
                    })
                    .or_else(|| r.error.clone())
                    .unwrap_or_default();
                w.write_record([
                    r.name.clone(),
                    format!("{:?}", r.status).to_lowercase(),
                    dom.join(" "),
                    r.instances.to_string(),
                    r.comparisons.to_string(),
                    r.elapsed_ms.map(|m| m.to_string()).unwrap_or_default(),
                    cx,
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            out.write_all(&bytes).map_err(io)
        }
    }
}

fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..5) {
        let m = Monomial::new(
            rng.gen_range(0..3),
            rng.gen_range(0..3),
            rng.gen_range(-2..3),
            rng.gen_range(-3..4),
        );
        p.add_term(m, rng.gen_range(-4i64..5).into());
    }
    p
}

/// Ring axioms, `q -> 1/q` as an involution, exact division and
/// composition of substitutions on seeded random polynomials.
fn selftest(a: &SelftestArgs, fmt: Format, out: &mut dyn Write) -> Result<i32> {
    let mut rng = StdRng::seed_from_u64(a.seed);
    let mut failures = Vec::new();
    for case in 0..a.cases {
        let (p, q, r) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        let (i, j) = (rng.gen_range(-2..3), rng.gen_range(-2..3));
        let sub = |x: &LaurentPoly, e: i32| x.subst_monomial(Var::Q, &Monomial::new(0, 0, 0, e));
        let checks = [
            ("commutativity", &p * &q == &q * &p),
            ("associativity", (&p * &q) * &r == &p * &(&q * &r)),
            ("distributivity", &p * &(q.clone() + r.clone()) == &p * &q + &p * &r),
            ("additive inverse", (p.clone() - p.clone()).is_zero()),
            ("invert_q involution", p.invert_q().invert_q() == p),
            (
                "exact division",
                q.is_zero() || (&p * &q).exact_div(&q).as_ref() == Ok(&p),
            ),
            (
                "substitution composes",
                sub(&p, i)
                    .and_then(|s| sub(&s, j))
                    .ok()
                    .zip(sub(&p, i * j).ok())
                    .map_or(true, |(a, b)| a == b),
            ),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(json!({ "case": case, "property": name, "p": p, "q": q, "r": r }));
            }
        }
    }
    match fmt {
        Format::Json => json_line(out, &json!({ "seed": a.seed, "cases": a.cases, "failures": failures }))?,
        _ => {
            for f in &failures {
                writeln!(out, "FAIL {f}").map_err(io)?;
            }
            writeln!(
                out,
                "selftest seed={} cases={}: {}",
                a.seed,
                a.cases,
                if failures.is_empty() { "ok" } else { "FAILED" }
            )
            .map_err(io)?;
        }
    }
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qfib").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn patterns_split() {
        assert_eq!(parse_patterns("13/2,123").unwrap().len(), 2);
        assert_eq!(parse_patterns("1,3/2;1,2,3").unwrap().len(), 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["poly", "--family", "nope", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["poly", "--family", "F", "--n", "3", "--format", "csv"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn selftest_is_deterministic() {
        let a = run_str(&["selftest", "--seed", "7", "--cases", "50"]);
        assert_eq!(a.0, EXIT_OK, "{}", a.1);
        assert_eq!(a, run_str(&["selftest", "--seed", "7", "--cases", "50"]));
    }
}

//! A registry of exact identities and a runner that checks each one over a
//! range of parameters.
//!
//! Where an identity has a bijective proof, the check also splits the
//! enumerated objects into the classes the proof uses and compares each
//! class sum with its term on the right-hand side.

mod det;
mod pq;
mod q;
mod registry;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub use registry::{lookup, refuted, registry, Identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidArgument(format!("unknown profile `{s}`"))),
        }
    }
}

/// An inclusive range for one parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}..{}", self.name, self.lo, self.hi)
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    /// `n=2..20` or `n=5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad range `{s}`, expected name=lo..hi"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let v = range.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        Ok(ParamRange {
            name: name.trim().to_string(),
            lo,
            hi,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, i64>,
    pub what: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No parameter assignment was checked.
    Vacuous,
    /// A builder failed, e.g. a ceiling was exceeded.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Vacuous => "vacuous",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub title: String,
    pub domain: Vec<ParamRange>,
    /// Parameter assignments checked.
    pub instances: u64,
    /// Individual polynomial comparisons made, refinements included.
    pub comparisons: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub error_kind: Option<Error>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Collects comparisons for one parameter assignment and keeps the first
/// mismatch.
pub struct Ctx<'a> {
    pub ceilings: &'a Ceilings,
    comparisons: u64,
    mismatch: Option<(String, String, String)>,
}

impl<'a> Ctx<'a> {
    fn new(ceilings: &'a Ceilings) -> Self {
        Ctx {
            ceilings,
            comparisons: 0,
            mismatch: None,
        }
    }

    pub(crate) fn eq(&mut self, what: impl fmt::Display, lhs: &LaurentPoly, rhs: &LaurentPoly) {
        self.comparisons += 1;
        if self.mismatch.is_none() && lhs != rhs {
            self.mismatch = Some((what.to_string(), lhs.to_string(), rhs.to_string()));
        }
    }

    pub(crate) fn check(&mut self, what: impl fmt::Display, ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.comparisons += 1;
        if self.mismatch.is_none() && !ok {
            self.mismatch = Some((what.to_string(), lhs.to_string(), rhs.to_string()));
        }
    }

    pub(crate) fn merge(&mut self, other: Ctx<'_>) {
        self.comparisons += other.comparisons;
        if self.mismatch.is_none() {
            self.mismatch = other.mismatch;
        }
    }

    pub(crate) fn fork(&self) -> Ctx<'a> {
        Ctx::new(self.ceilings)
    }

    pub(crate) fn failed(&self) -> bool {
        self.mismatch.is_some()
    }

    pub(crate) fn need_family(&self, n: i64) -> Result<()> {
        Ceilings::check("family index", n.max(0) as usize, self.ceilings.family)
    }

    pub(crate) fn need_layered(&self, n: i64) -> Result<()> {
        Ceilings::check("layered enumeration size", n.max(0) as usize, self.ceilings.layered)
    }
}

fn domain(id: &Identity, profile: Profile, overrides: &[ParamRange]) -> Result<Vec<ParamRange>> {
    let base = match profile {
        Profile::Quick => id.quick,
        Profile::Full => id.full,
    };
    let mut out: Vec<ParamRange> = id
        .params
        .iter()
        .zip(base)
        .map(|(name, &(lo, hi))| ParamRange {
            name: name.to_string(),
            lo,
            hi,
        })
        .collect();
    for o in overrides {
        let slot = out
            .iter_mut()
            .find(|r| r.name == o.name)
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no parameter `{}`", id.key, o.name)))?;
        slot.lo = o.lo;
        slot.hi = o.hi;
    }
    Ok(out)
}

fn assignments(id: &Identity, dom: &[ParamRange], profile: Profile) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in dom {
        let mut next = Vec::new();
        for prefix in &out {
            for v in r.lo..=r.hi {
                let mut a = prefix.clone();
                a.push(v);
                next.push(a);
            }
        }
        out = next;
    }
    out.retain(|a| (id.constraint)(a, profile));
    out
}

/// Number of parameter assignments in an identity's domain.
pub fn domain_size(id: &Identity, profile: Profile) -> usize {
    domain(id, profile, &[])
        .map(|d| assignments(id, &d, profile).len())
        .unwrap_or(0)
}

/// Checks `name` on every assignment of its (possibly overridden) domain,
/// stopping at the first counterexample.
pub fn run_identity(name: &str, profile: Profile, overrides: &[ParamRange], ceilings: &Ceilings) -> Result<Report> {
    let id = lookup(name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))?;
    let dom = domain(id, profile, overrides)?;
    Ok(run(id, dom, profile, ceilings))
}

fn run(id: &Identity, dom: Vec<ParamRange>, profile: Profile, ceilings: &Ceilings) -> Report {
    let start = Instant::now();
    let mut report = Report {
        name: id.key.to_string(),
        title: id.title.to_string(),
        domain: dom.clone(),
        instances: 0,
        comparisons: 0,
        status: Status::Pass,
        counterexample: None,
        error: None,
        error_kind: None,
        elapsed_ms: None,
    };
    let all = assignments(id, &dom, profile);
    if all.is_empty() {
        report.status = Status::Vacuous;
    }
    for a in all {
        let mut ctx = Ctx::new(ceilings);
        let outcome = (id.check)(&a, &mut ctx);
        report.instances += 1;
        report.comparisons += ctx.comparisons;
        if let Err(e) = outcome {
            report.status = Status::Error;
            report.error = Some(e.to_string());
            report.error_kind = Some(e);
            break;
        }
        if let Some((what, lhs, rhs)) = ctx.mismatch {
            report.status = Status::Fail;
            report.counterexample = Some(Counterexample {
                params: id.params.iter().map(|p| p.to_string()).zip(a.iter().copied()).collect(),
                what,
                lhs,
                rhs,
            });
            break;
        }
    }
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    report
}

/// Runs every registered identity concurrently; reports come back in
/// registry order.
pub fn run_all(profile: Profile, ceilings: &Ceilings) -> Vec<Report> {
    registry()
        .par_iter()
        .map(|id| match domain(id, profile, &[]) {
            Ok(d) => run(id, d, profile, ceilings),
            Err(e) => unreachable!("registry domains are well formed: {e}"),
        })
        .collect()
}

/// Drops timing so that reports compare byte for byte.
pub fn make_deterministic(reports: &mut [Report]) {
    for r in reports {
        r.elapsed_ms = None;
    }
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom: Vec<String> = self.domain.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{:<7} {:<24} [{}] instances={} comparisons={}",
            self.status.to_string(),
            self.name,
            dom.join(", "),
            self.instances,
            self.comparisons
        )?;
        if let Some(ms) = self.elapsed_ms {
            write!(f, " {ms}ms")?;
        }
        if let Some(c) = &self.counterexample {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(
                f,
                "\n  counterexample at {}: {}\n  lhs: {}\n  rhs: {}",
                params.join(", "),
                c.what,
                c.lhs,
                c.rhs
            )?;
        }
        if let Some(e) = &self.error {
            write!(f, "\n  error: {e}")?;
        }
        Ok(())
    }
}

//! Enumeration ceilings.
//!
//! Defaults keep every exhaustive computation in this crate to a few
//! seconds. `QFIB_CEILING` overrides them, either with a single number that
//! applies to every partition/family ceiling or a comma-separated list of
//! `key=value` pairs (`generic`, `layered`, `family`, `path_length`,
//! `minor`).

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "QFIB_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ceilings {
    /// Largest `n` for unrestricted partition enumeration (Bell growth).
    pub generic: usize,
    /// Largest `n` for the layered and layered-matching generators.
    pub layered: usize,
    /// Largest index for polynomial families.
    pub family: usize,
    /// Largest total path length in one path tuple.
    pub path_length: usize,
    /// Largest minor size.
    pub minor: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            generic: 12,
            layered: 25,
            family: 25,
            path_length: 40,
            minor: 5,
        }
    }
}

impl Ceilings {
    /// Defaults with the `QFIB_CEILING` override applied, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(s) => Ceilings::default().with_override(&s),
            Err(_) => Ok(Ceilings::default()),
        }
    }

    pub fn with_override(mut self, spec: &str) -> Result<Self> {
        let bad = |s: &str| Error::InvalidArgument(format!("bad {ENV_VAR} value `{s}`"));
        let spec = spec.trim();
        if let Ok(n) = spec.parse::<usize>() {
            self.generic = n;
            self.layered = n;
            self.family = n;
            return Ok(self);
        }
        for item in spec.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(item))?;
            let v: usize = v.trim().parse().map_err(|_| bad(item))?;
            match k.trim() {
                "generic" => self.generic = v,
                "layered" => self.layered = v,
                "family" => self.family = v,
                "path_length" => self.path_length = v,
                "minor" => self.minor = v,
                _ => return Err(bad(item)),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, requested: usize, ceiling: usize) -> Result<()> {
        if requested > ceiling {
            Err(Error::CeilingExceeded {
                what,
                requested,
                ceiling,
            })
        } else {
            Ok(())
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts stored weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    /// Sorts the parts into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "integer partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Partitions into distinct parts each at most `max`, i.e. `D_max`.
    /// Ordered by the subset of parts used, read as a binary number.
    pub fn distinct_max(max: usize) -> Vec<IntegerPartition> {
        let mut out = Vec::with_capacity(1 << max.min(30));
        for mask in 0u64..(1u64 << max) {
            let parts = (1..=max).rev().filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            out.push(IntegerPartition { parts });
        }
        out
    }

    /// Partitions with at most `max_parts` parts, each at most `max_part`
    /// (those fitting in a `max_parts x max_part` box).
    pub fn in_box(max_part: usize, max_parts: usize) -> Vec<IntegerPartition> {
        fn go(cap: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            out.push(IntegerPartition { parts: cur.clone() });
            if left == 0 {
                return;
            }
            for part in 1..=cap {
                cur.push(part);
                go(part, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(max_part, max_parts, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for IntegerPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(IntegerPartition::default());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(0, format!("bad part `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerPartition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ip(parts: &[usize]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn distinct_max_three() {
        let got: BTreeSet<_> = IntegerPartition::distinct_max(3).into_iter().collect();
        let want: BTreeSet<_> = [
            ip(&[]),
            ip(&[1]),
            ip(&[2]),
            ip(&[3]),
            ip(&[2, 1]),
            ip(&[3, 1]),
            ip(&[3, 2]),
            ip(&[3, 2, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert_eq!(IntegerPartition::distinct_max(3).len(), 8);
    }

    #[test]
    fn box_two_by_two() {
        let got: Vec<_> = IntegerPartition::in_box(2, 2);
        let set: BTreeSet<_> = got.iter().cloned().collect();
        assert_eq!(set.len(), got.len(), "duplicate-free");
        let want: BTreeSet<_> = [ip(&[]), ip(&[1]), ip(&[2]), ip(&[1, 1]), ip(&[2, 1]), ip(&[2, 2])]
            .into_iter()
            .collect();
        assert_eq!(set, want);
        let mut sizes: Vec<usize> = got.iter().map(|l| l.size()).collect();
        sizes.sort();
        assert_eq!(sizes, [0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn degenerate_boxes() {
        assert_eq!(IntegerPartition::in_box(0, 5), vec![ip(&[])]);
        assert_eq!(IntegerPartition::in_box(4, 0), vec![ip(&[])]);
        assert_eq!(IntegerPartition::distinct_max(0), vec![ip(&[])]);
    }

    #[test]
    fn box_count_is_binomial() {
        fn c(n: u64, k: u64) -> u64 {
            (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
        }
        for k in 0..6 {
            for l in 0..6 {
                assert_eq!(IntegerPartition::in_box(k, l).len() as u64, c((k + l) as u64, k as u64));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let l = ip(&[1, 3, 2]);
        assert_eq!(l.to_string(), "(3,2,1)");
        assert_eq!("(3,2,1)".parse::<IntegerPartition>().unwrap(), l);
        assert_eq!("()".parse::<IntegerPartition>().unwrap(), ip(&[]));
        assert!(IntegerPartition::new(vec![0]).is_err());
    }
}

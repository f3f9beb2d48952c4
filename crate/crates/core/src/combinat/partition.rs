use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `[n]` with blocks in standard order (increasing
/// minima) and each block sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Statistics of a set partition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stats {
    /// Left-smaller pairs.
    pub ls: usize,
    /// Right-bigger pairs.
    pub rb: usize,
    pub singletons: usize,
    pub doubletons: usize,
    /// Number of blocks.
    pub length: usize,
}

impl SetPartition {
    /// Canonicalizes `blocks` and checks that they partition `[n]`, where
    /// `n` is the total number of elements.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let n = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &e in blocks.iter().flatten() {
            if e == 0 || e > n {
                return Err(Error::InvalidPartition(format!("element {e} is outside [1, {n}]")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidPartition(format!("element {e} appears twice")));
            }
        }
        Ok(SetPartition { n, blocks })
    }

    pub fn empty() -> Self {
        SetPartition {
            n: 0,
            blocks: Vec::new(),
        }
    }

    /// The layered partition `[1,c1]/[c1+1,c1+c2]/...`.
    pub fn from_block_sizes(sizes: &[usize]) -> Self {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut next = 1;
        for &s in sizes {
            assert!(s > 0, "block sizes must be positive");
            blocks.push((next..next + s).collect());
            next += s;
        }
        SetPartition { n: next - 1, blocks }
    }

    /// From a restricted growth string (`rgs[i]` is the 0-based block of
    /// element `i + 1`).
    pub fn from_rgs(rgs: &[usize]) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            match b.cmp(&blocks.len()) {
                std::cmp::Ordering::Less => blocks[b].push(i + 1),
                std::cmp::Ordering::Equal => blocks.push(vec![i + 1]),
                std::cmp::Ordering::Greater => {
                    return Err(Error::InvalidPartition("not a restricted growth string".into()))
                }
            }
        }
        Ok(SetPartition { n: rgs.len(), blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn rgs(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in b {
                out[e - 1] = i;
            }
        }
        out
    }

    /// Every block is an interval and the intervals appear in order.
    pub fn is_layered(&self) -> bool {
        let mut next = 1;
        for b in &self.blocks {
            for &e in b {
                if e != next {
                    return false;
                }
                next += 1;
            }
        }
        true
    }

    /// Every block has at most two elements.
    pub fn is_matching(&self) -> bool {
        self.blocks.iter().all(|b| b.len() <= 2)
    }

    pub fn is_layered_matching(&self) -> bool {
        self.is_matching() && self.is_layered()
    }

    pub(crate) fn require_layered(&self) -> Result<()> {
        if self.is_layered() {
            Ok(())
        } else {
            Err(Error::NotLayered(self.to_string()))
        }
    }

    pub(crate) fn require_layered_matching(&self) -> Result<()> {
        self.require_layered()?;
        if self.is_matching() {
            Ok(())
        } else {
            Err(Error::NotMatching(self.to_string()))
        }
    }

    /// Counts of left-smaller pairs `(b, B_j)` with `b` in a later block and
    /// `min B_j < b`, and right-bigger pairs `(b, B_j)` with `b` in an
    /// earlier block and `max B_j > b`, straight from the definitions.
    pub fn stats(&self) -> Stats {
        let mut ls = 0;
        let mut rb = 0;
        for (i, block) in self.blocks.iter().enumerate() {
            for &b in block {
                ls += self.blocks[..i].iter().filter(|bj| bj[0] < b).count();
                rb += self.blocks[i + 1..]
                    .iter()
                    .filter(|bj| *bj.last().expect("nonempty") > b)
                    .count();
            }
        }
        let stats = Stats {
            ls,
            rb,
            singletons: self.blocks.iter().filter(|b| b.len() == 1).count(),
            doubletons: self.blocks.iter().filter(|b| b.len() == 2).count(),
            length: self.blocks.len(),
        };
        debug_assert!(
            !self.is_layered() || stats.rb == self.blocks.iter().skip(1).map(|b| b[0] - 1).sum::<usize>(),
            "layered rb must equal the sum of block contributions"
        );
        stats
    }

    pub fn ls(&self) -> usize {
        self.stats().ls
    }

    pub fn rb(&self) -> usize {
        self.stats().rb
    }

    fn fmt_blocks(blocks: &[Vec<usize>], compact: bool) -> String {
        let sep = if compact { "" } else { "," };
        blocks
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep))
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Text form of a list of blocks; compact digits when every element is a
    /// single digit.
    pub(crate) fn format_blocks(blocks: &[Vec<usize>]) -> String {
        let compact = blocks.iter().flatten().all(|&e| e <= 9);
        Self::fmt_blocks(blocks, compact)
    }
}

pub(crate) const EMPTY_SYMBOL: &str = "∅";

impl fmt::Display for SetPartition {
    /// `13/2` when `n <= 9`, otherwise `1,3/2,10`; the empty partition is
    /// `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return f.write_str(EMPTY_SYMBOL);
        }
        f.write_str(&Self::fmt_blocks(&self.blocks, self.n <= 9))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY_SYMBOL {
            return Ok(SetPartition::empty());
        }
        let comma = s.contains(',');
        let mut blocks = Vec::new();
        let mut offset = 0;
        for part in s.split('/') {
            let mut block = Vec::new();
            if comma {
                for tok in part.split(',') {
                    let tok = tok.trim();
                    let e = tok
                        .parse::<usize>()
                        .map_err(|_| Error::parse(offset, format!("bad element `{tok}`")))?;
                    block.push(e);
                }
            } else {
                for (i, ch) in part.trim().char_indices() {
                    match ch.to_digit(10) {
                        Some(d) if d > 0 => block.push(d as usize),
                        _ => return Err(Error::parse(offset + i, format!("bad element `{ch}`"))),
                    }
                }
            }
            if block.is_empty() {
                return Err(Error::parse(offset, "empty block"));
            }
            blocks.push(block);
            offset += part.len() + 1;
        }
        let p = SetPartition::new(blocks)?;
        if !comma && p.n > 9 {
            return Err(Error::InvalidPartition(
                "compact notation is limited to n <= 9; separate elements with commas".into(),
            ));
        }
        Ok(p)
    }
}

impl TryFrom<Vec<Vec<usize>>> for SetPartition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        SetPartition::new(blocks)
    }
}

impl From<SetPartition> for Vec<Vec<usize>> {
    fn from(p: SetPartition) -> Self {
        p.blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_order() {
        let p = SetPartition::new(vec![vec![5, 2], vec![7, 1, 3], vec![6], vec![4]]).unwrap();
        assert_eq!(p.to_string(), "137/25/4/6");
        assert_eq!(p, sp("25/137/6/4"));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(SetPartition::new(vec![vec![1], vec![1, 2]]).is_err());
        assert!(SetPartition::new(vec![vec![1], vec![3]]).is_err());
        assert!(SetPartition::new(vec![vec![1], vec![]]).is_err());
        assert!("1/0".parse::<SetPartition>().is_err());
        assert!("12//3".parse::<SetPartition>().is_err());
    }

    #[test]
    fn multi_digit_syntax() {
        let p = sp("1,3/2,10/4,5,6,7,8,9");
        assert_eq!(p.n(), 10);
        assert_eq!(p.to_string(), "1,3/2,10/4,5,6,7,8,9");
        assert_eq!(sp("1,3/2"), sp("13/2"));
    }

    #[test]
    fn empty_partition() {
        let e = sp("");
        assert_eq!(e, SetPartition::empty());
        assert_eq!(e.to_string(), "∅");
        assert_eq!(sp("∅"), e);
        assert_eq!(e.stats(), Stats::default());
        assert!(e.is_layered_matching());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(sp("123").stats().ls, 0);
        assert_eq!(sp("123").stats().rb, 0);
        let s = sp("12/3").stats();
        assert_eq!((s.ls, s.rb, s.singletons, s.doubletons, s.length), (1, 2, 1, 1, 2));
        for n in 1..=9usize {
            let blocks = (1..=n).map(|i| vec![i]).collect();
            let all = SetPartition::new(blocks).unwrap();
            assert_eq!(all.rb(), n * (n - 1) / 2);
        }
        // 1/2/34/56: contributions 1 + 2 + 4 = 7
        assert_eq!(sp("1/2/34/56").rb(), 7);
    }

    #[test]
    fn rgs_round_trip() {
        let p = sp("137/25/4/6");
        assert_eq!(p.rgs(), vec![0, 1, 0, 2, 1, 3, 0]);
        assert_eq!(SetPartition::from_rgs(&p.rgs()).unwrap(), p);
        assert!(SetPartition::from_rgs(&[0, 2]).is_err());
    }

    #[test]
    fn classes() {
        assert!(sp("123/4567/8/9").is_layered());
        assert!(sp("12/34/5/67/8").is_layered_matching());
        assert!(!sp("13/2").is_layered());
        assert!(!sp("123").is_matching());
        assert_eq!(SetPartition::from_block_sizes(&[2, 1, 3]), sp("12/3/456"));
    }

    #[test]
    fn json_form() {
        let p = sp("13/2");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, "[[1,3],[2]]");
        assert_eq!(serde_json::from_str::<SetPartition>(&j).unwrap(), p);
        assert!(serde_json::from_str::<SetPartition>("[[1],[1]]").is_err());
    }
}

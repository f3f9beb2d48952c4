//! Pattern containment and enumeration of `Π_n(P)`.

use super::partition::SetPartition;
use crate::config::Ceilings;
use crate::error::Result;

/// A sub-partition of `σ` (chosen elements grouped by the distinct blocks of
/// `σ` they came from) whose standardization is the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCopy {
    pub blocks: Vec<Vec<usize>>,
}

impl PatternCopy {
    pub fn standardize(&self) -> SetPartition {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let rank = |e: usize| all.binary_search(&e).expect("element of copy") + 1;
        SetPartition::new(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&e| rank(e)).collect())
                .collect(),
        )
        .expect("standardized copy is a partition")
    }
}

impl std::fmt::Display for PatternCopy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&SetPartition::format_blocks(&self.blocks))
    }
}

/// Checks that `copy` really witnesses `pattern` in `sigma`: its blocks sit
/// inside pairwise distinct blocks of `sigma` and it standardizes to
/// `pattern`.
pub fn is_copy(sigma: &SetPartition, copy: &PatternCopy, pattern: &SetPartition) -> bool {
    let owner = sigma.rgs();
    let mut used = Vec::new();
    for b in &copy.blocks {
        if b.is_empty() || b.iter().any(|&e| e == 0 || e > sigma.n()) {
            return false;
        }
        let host = owner[b[0] - 1];
        if b.iter().any(|&e| owner[e - 1] != host) || used.contains(&host) {
            return false;
        }
        used.push(host);
    }
    let mut all: Vec<usize> = copy.blocks.iter().flatten().copied().collect();
    let count = all.len();
    all.sort_unstable();
    all.dedup();
    all.len() == count && copy.standardize() == *pattern
}

struct Search<'a> {
    owner: Vec<usize>,
    pattern_owner: Vec<usize>,
    n: usize,
    /// pattern block -> sigma block
    host: Vec<Option<usize>>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    pattern: &'a SetPartition,
}

impl Search<'_> {
    /// Places pattern element `e` (0-based) at some position `>= from`.
    fn place(&mut self, e: usize, from: usize) -> bool {
        let m = self.pattern_owner.len();
        if e == m {
            return true;
        }
        let pb = self.pattern_owner[e];
        // Leave room for the remaining pattern elements.
        let last = self.n - (m - e - 1);
        for pos in from..last {
            let sb = self.owner[pos];
            match self.host[pb] {
                Some(h) if h != sb => continue,
                Some(_) => {
                    self.chosen.push(pos + 1);
                    if self.place(e + 1, pos + 1) {
                        return true;
                    }
                    self.chosen.pop();
                }
                None => {
                    if self.used[sb] {
                        continue;
                    }
                    self.host[pb] = Some(sb);
                    self.used[sb] = true;
                    self.chosen.push(pos + 1);
                    if self.place(e + 1, pos + 1) {
                        return true;
                    }
                    self.chosen.pop();
                    self.used[sb] = false;
                    self.host[pb] = None;
                }
            }
        }
        false
    }
}

/// Searches for a copy of `pattern` in `sigma` by backtracking over the
/// pattern's elements in increasing order, opening a fresh block of `sigma`
/// exactly when a pattern block is first met (i.e. in order of the pattern's
/// block minima).
pub fn find_copy(sigma: &SetPartition, pattern: &SetPartition) -> Option<PatternCopy> {
    if pattern.n() > sigma.n() || pattern.len() > sigma.len() {
        return None;
    }
    let mut s = Search {
        owner: sigma.rgs(),
        pattern_owner: pattern.rgs(),
        n: sigma.n(),
        host: vec![None; pattern.len()],
        used: vec![false; sigma.len()],
        chosen: Vec::with_capacity(pattern.n()),
        pattern,
    };
    if !s.place(0, 0) {
        return None;
    }
    let mut blocks = vec![Vec::new(); s.pattern.len()];
    for (i, &pos) in s.chosen.iter().enumerate() {
        blocks[s.pattern_owner[i]].push(pos);
    }
    Some(PatternCopy { blocks })
}

pub fn contains_pattern(sigma: &SetPartition, pattern: &SetPartition) -> bool {
    find_copy(sigma, pattern).is_some()
}

pub fn avoids_all(sigma: &SetPartition, patterns: &[SetPartition]) -> bool {
    patterns.iter().all(|p| !contains_pattern(sigma, p))
}

/// All partitions of `[n]` in restricted-growth-string order.
#[derive(Clone, Debug)]
pub struct AllPartitions {
    rgs: Vec<usize>,
    /// prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl AllPartitions {
    pub fn new(n: usize) -> Self {
        AllPartitions {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for AllPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_rgs(&self.rgs).expect("valid restricted growth string");
        self.advance();
        Some(out)
    }
}

/// Compositions of `n` with parts in `[1, max_part]`, lexicographically.
/// Each composition is read as the block sizes of a layered partition.
#[derive(Clone, Debug)]
pub struct Compositions {
    n: usize,
    max_part: usize,
    parts: Vec<usize>,
    done: bool,
}

impl Compositions {
    pub fn new(n: usize, max_part: usize) -> Self {
        assert!(max_part >= 1);
        Compositions {
            n,
            max_part,
            parts: vec![1; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let mut prefix: usize = self.parts.iter().sum();
        for i in (0..self.parts.len()).rev() {
            prefix -= self.parts[i];
            if self.parts[i] < self.max_part && prefix + self.parts[i] < self.n {
                self.parts[i] += 1;
                let used = prefix + self.parts[i];
                self.parts.truncate(i + 1);
                self.parts.extend(std::iter::repeat(1).take(self.n - used));
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.parts.clone();
        self.advance();
        Some(out)
    }
}

/// `Π_n(13/2)`: layered partitions, in composition-lex order.
pub fn layered_partitions(n: usize) -> impl Iterator<Item = SetPartition> {
    Compositions::new(n, n.max(1)).map(|c| SetPartition::from_block_sizes(&c))
}

/// `Π_n(13/2, 123)`: layered matchings, in composition-lex order.
pub fn layered_matchings(n: usize) -> impl Iterator<Item = SetPartition> {
    Compositions::new(n, 2).map(|c| SetPartition::from_block_sizes(&c))
}

/// Which generator serves a pattern set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvoidanceClass {
    Unrestricted,
    Layered,
    LayeredMatchings,
    Filtered,
}

pub fn pattern_13_2() -> SetPartition {
    SetPartition::new(vec![vec![1, 3], vec![2]]).expect("valid")
}

pub fn pattern_123() -> SetPartition {
    SetPartition::new(vec![vec![1, 2, 3]]).expect("valid")
}

pub fn classify(patterns: &[SetPartition]) -> AvoidanceClass {
    let mut ps = patterns.to_vec();
    ps.sort();
    ps.dedup();
    let mut layered_matching = vec![pattern_13_2(), pattern_123()];
    layered_matching.sort();
    if ps.is_empty() {
        AvoidanceClass::Unrestricted
    } else if ps == [pattern_13_2()] {
        AvoidanceClass::Layered
    } else if ps == layered_matching {
        AvoidanceClass::LayeredMatchings
    } else {
        AvoidanceClass::Filtered
    }
}

/// Iterator over `Π_n(P)`.
pub struct Avoiders {
    inner: Box<dyn Iterator<Item = SetPartition> + Send>,
    class: AvoidanceClass,
}

impl Avoiders {
    pub fn class(&self) -> AvoidanceClass {
        self.class
    }
}

impl Iterator for Avoiders {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.inner.next()
    }
}

/// The partitions of `[n]` avoiding every pattern in `patterns`.
///
/// `{13/2}` and `{13/2, 123}` use the direct layered generators (ceiling
/// `layered`); everything else filters the restricted-growth enumeration
/// (ceiling `generic`).
pub fn enumerate_avoiders(n: usize, patterns: &[SetPartition], ceilings: &Ceilings) -> Result<Avoiders> {
    let class = classify(patterns);
    let inner: Box<dyn Iterator<Item = SetPartition> + Send> = match class {
        AvoidanceClass::Layered => {
            Ceilings::check("layered partition size", n, ceilings.layered)?;
            Box::new(layered_partitions(n))
        }
        AvoidanceClass::LayeredMatchings => {
            Ceilings::check("layered partition size", n, ceilings.layered)?;
            Box::new(layered_matchings(n))
        }
        AvoidanceClass::Unrestricted => {
            Ceilings::check("partition size", n, ceilings.generic)?;
            Box::new(AllPartitions::new(n))
        }
        AvoidanceClass::Filtered => {
            Ceilings::check("partition size", n, ceilings.generic)?;
            let ps = patterns.to_vec();
            Box::new(AllPartitions::new(n).filter(move |s| avoids_all(s, &ps)))
        }
    };
    Ok(Avoiders { inner, class })
}

/// Filters the generic enumeration regardless of the pattern set; the
/// reference the specialized generators are tested against.
pub fn enumerate_avoiders_generic(n: usize, patterns: &[SetPartition]) -> impl Iterator<Item = SetPartition> {
    let ps = patterns.to_vec();
    AllPartitions::new(n).filter(move |s| avoids_all(s, &ps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &v in &row {
                next.push(next.last().unwrap() + v);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn containment_examples() {
        let sigma = sp("137/25/4/6");
        let copy = find_copy(&sigma, &sp("12/3")).expect("contains 12/3");
        assert!(is_copy(&sigma, &copy, &sp("12/3")));
        let documented = PatternCopy {
            blocks: vec![vec![2, 5], vec![6]],
        };
        assert!(is_copy(&sigma, &documented, &sp("12/3")));
        assert!(!contains_pattern(&sigma, &sp("12/34")));
        // 2/5/6 would need 2 and 5 in separate blocks
        let bad = PatternCopy {
            blocks: vec![vec![2], vec![5], vec![6]],
        };
        assert!(!is_copy(&sigma, &bad, &sp("1/2/3")));
        assert!(contains_pattern(&sigma, &sp("1")));
        assert!(contains_pattern(&sp("1"), &sp("1")));
        assert!(!contains_pattern(&SetPartition::empty(), &sp("1")));
        assert!(contains_pattern(&sigma, &SetPartition::empty()));
    }

    #[test]
    fn rgs_enumeration_counts() {
        for n in 0..=8 {
            assert_eq!(AllPartitions::new(n).count(), bell(n), "n = {n}");
        }
        let first: Vec<String> = AllPartitions::new(3).map(|p| p.to_string()).collect();
        assert_eq!(first, ["123", "12/3", "13/2", "1/23", "1/2/3"]);
    }

    #[test]
    fn composition_order() {
        let c: Vec<Vec<usize>> = Compositions::new(3, 3).collect();
        assert_eq!(c, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        let c: Vec<Vec<usize>> = Compositions::new(4, 2).collect();
        assert_eq!(c.len(), 5);
        assert_eq!(Compositions::new(0, 1).count(), 1);
    }

    #[test]
    fn avoider_counts() {
        let c = Ceilings::default();
        assert_eq!(enumerate_avoiders(4, &[sp("13/2")], &c).unwrap().count(), 8);
        assert_eq!(enumerate_avoiders(5, &[sp("13/2"), sp("123")], &c).unwrap().count(), 8);
        let empty: Vec<_> = enumerate_avoiders(0, &[], &c).unwrap().collect();
        assert_eq!(empty, vec![SetPartition::empty()]);
        assert_eq!(enumerate_avoiders(4, &[sp("1")], &c).unwrap().count(), 0);
        assert_eq!(enumerate_avoiders(0, &[sp("1")], &c).unwrap().count(), 1);
    }

    #[test]
    fn ceiling_is_enforced() {
        let c = Ceilings::default();
        assert!(enumerate_avoiders(13, &[], &c).is_err());
        assert!(enumerate_avoiders(26, &[sp("13/2")], &c).is_err());
        assert!(enumerate_avoiders(25, &[sp("123"), sp("13/2")], &c).is_ok());
    }

    #[test]
    fn specialized_generators_match_filtering() {
        let c = Ceilings::default();
        for n in 0..=8 {
            for ps in [
                vec![sp("13/2")],
                vec![sp("13/2"), sp("123")],
                vec![sp("123"), sp("13/2")],
            ] {
                let mut fast: Vec<_> = enumerate_avoiders(n, &ps, &c).unwrap().collect();
                let mut slow: Vec<_> = enumerate_avoiders_generic(n, &ps).collect();
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "n = {n}");
            }
        }
    }

    #[test]
    fn characterizations_agree_with_embedding_search() {
        for n in 0..=8 {
            for s in AllPartitions::new(n) {
                assert_eq!(!contains_pattern(&s, &pattern_13_2()), s.is_layered(), "{s}");
                assert_eq!(!contains_pattern(&s, &pattern_123()), s.is_matching(), "{s}");
            }
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial};

/// Weight of the arc `from -> to`: `x q^from` for a unit step, `y q^from`
/// for a step of two.
pub fn arc_weight(from: usize, to: usize) -> Option<Monomial> {
    match to.checked_sub(from) {
        Some(1) => Some(Monomial::new(1, 0, 0, from as i32)),
        Some(2) => Some(Monomial::new(0, 1, 0, from as i32)),
        _ => None,
    }
}

/// A directed path in the digraph on `0, 1, 2, ...` with arcs `n -> n+1`
/// and `n -> n+2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DigraphPath {
    vertices: Vec<usize>,
}

impl DigraphPath {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("a path needs at least one vertex".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| arc_weight(w[0], w[1]).is_none()) {
            return Err(Error::InvalidArgument(format!("no arc from {} to {}", w[0], w[1])));
        }
        Ok(DigraphPath { vertices })
    }

    /// The length-0 path at `v`.
    pub fn trivial(v: usize) -> Self {
        DigraphPath { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn weight_monomial(&self) -> Monomial {
        self.vertices
            .windows(2)
            .map(|w| arc_weight(w[0], w[1]).expect("validated"))
            .fold(Monomial::ONE, |a, b| a * b)
    }

    pub fn weight(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.weight_monomial())
    }

    fn shares_vertex(&self, other: &DigraphPath) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

impl fmt::Display for DigraphPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        f.write_str(&v.join("->"))
    }
}

impl TryFrom<Vec<usize>> for DigraphPath {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        DigraphPath::new(v)
    }
}

impl From<DigraphPath> for Vec<usize> {
    fn from(p: DigraphPath) -> Self {
        p.vertices
    }
}

/// All paths from `a` to `b`, in lexicographic order of vertex lists; empty
/// when `a > b`.
pub fn enumerate_paths(a: usize, b: usize) -> Vec<DigraphPath> {
    fn go(b: usize, cur: &mut Vec<usize>, out: &mut Vec<DigraphPath>) {
        let last = *cur.last().expect("nonempty");
        if last == b {
            out.push(DigraphPath { vertices: cur.clone() });
            return;
        }
        for step in [1, 2] {
            if last + step <= b {
                cur.push(last + step);
                go(b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if a <= b {
        go(b, &mut vec![a], &mut out);
    }
    out
}

/// Sources `u_1 < ... < u_k` and sinks `v_1 < ... < v_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSequences")]
pub struct IndexSequences {
    u: Vec<usize>,
    v: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSequences {
    u: Vec<usize>,
    v: Vec<usize>,
}

impl TryFrom<RawSequences> for IndexSequences {
    type Error = Error;

    fn try_from(r: RawSequences) -> Result<Self> {
        IndexSequences::new(r.u, r.v)
    }
}

impl IndexSequences {
    pub fn new(u: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows but {} columns",
                u.len(),
                v.len()
            )));
        }
        for (name, s) in [("rows", &u), ("columns", &v)] {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!("{name} must be strictly increasing")));
            }
        }
        Ok(IndexSequences { u, v })
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }

    /// Number of `u_i < c`.
    pub fn u_count(&self, c: usize) -> usize {
        self.u.partition_point(|&x| x < c)
    }

    /// Number of `v_i < c`.
    pub fn v_count(&self, c: usize) -> usize {
        self.v.partition_point(|&x| x < c)
    }

    /// A vertex that is both a source and a sink, if any.
    pub fn overlap(&self) -> Option<usize> {
        self.u.iter().copied().find(|c| self.v.binary_search(c).is_ok())
    }

    /// The largest vertex mentioned, or 0 when empty.
    pub fn max_vertex(&self) -> usize {
        self.u.iter().chain(&self.v).copied().max().unwrap_or(0)
    }

    /// `Σ v - Σ u`: the total length of every tuple, whatever its permutation.
    pub fn total_length(&self) -> Option<usize> {
        let su: usize = self.u.iter().sum();
        let sv: usize = self.v.iter().sum();
        sv.checked_sub(su)
    }

    /// `u_1 < u_2 < v_1 < u_3 < v_2 < ... < u_k < v_{k-1} < v_k`, `k >= 2`.
    pub fn is_interleaved(&self) -> bool {
        let k = self.k();
        if k < 2 {
            return false;
        }
        let mut merged = vec![self.u[0], self.u[1]];
        for i in 0..k - 2 {
            merged.push(self.v[i]);
            merged.push(self.u[i + 2]);
        }
        merged.push(self.v[k - 2]);
        merged.push(self.v[k - 1]);
        merged.windows(2).all(|w| w[0] < w[1])
    }

    /// Every pair of `k`-subsets of `0..=max_vertex`, in lexicographic order.
    pub fn all_with_k(k: usize, max_vertex: usize) -> Vec<IndexSequences> {
        let subsets = k_subsets(k, max_vertex + 1);
        let mut out = Vec::with_capacity(subsets.len() * subsets.len());
        for u in &subsets {
            for v in &subsets {
                out.push(IndexSequences {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
        out
    }
}

impl fmt::Display for IndexSequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |s: &[usize]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "u=({}) v=({})", j(&self.u), j(&self.v))
    }
}

fn k_subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// Permutations of `0..k` in lexicographic order with their signs.
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i8)>) {
        if cur.len() == used.len() {
            out.push((cur.clone(), sign_of(cur)));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

pub(crate) fn sign_of(perm: &[usize]) -> i8 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Paths `p_i: u_i -> v_{α(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathTuple {
    /// `alpha[i]` is the 0-based sink index of path `i`.
    pub alpha: Vec<usize>,
    pub paths: Vec<DigraphPath>,
}

impl PathTuple {
    pub fn sign(&self) -> i8 {
        sign_of(&self.alpha)
    }

    pub fn weight_monomial(&self) -> Monomial {
        self.paths
            .iter()
            .map(DigraphPath::weight_monomial)
            .fold(Monomial::ONE, |a, b| a * b)
    }

    pub fn weight(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.weight_monomial())
    }

    /// `sgn(P) ω(P)`.
    pub fn signed_weight(&self) -> LaurentPoly {
        LaurentPoly::term(self.sign() as i64, self.weight_monomial())
    }

    /// No two paths share a vertex.
    pub fn is_noncrossing(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// The smallest index whose path shares a vertex with another path.
    fn first_crossing(&self) -> Option<usize> {
        (0..self.paths.len())
            .find(|&i| (0..self.paths.len()).any(|j| j != i && self.paths[i].shares_vertex(&self.paths[j])))
    }

    /// No path has a vertex below `c` and a vertex at or above `c`.
    pub fn is_reducible_at(&self, c: usize) -> bool {
        self.paths.iter().all(|p| p.end() < c || p.start() >= c)
    }

    /// Arc multiset, for weight-independent comparisons.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .paths
            .iter()
            .flat_map(|p| p.vertices.windows(2).map(|w| (w[0], w[1])))
            .collect();
        arcs.sort_unstable();
        arcs
    }
}

impl fmt::Display for PathTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.paths.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// Which tuples [`enumerate_tuples`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TupleFilter {
    All,
    Noncrossing,
}

pub(crate) fn check_tuple_ceiling(s: &IndexSequences, ceilings: &Ceilings) -> Result<()> {
    Ceilings::check("minor size", s.k(), ceilings.minor)?;
    Ceilings::check("total path length", s.total_length().unwrap_or(0), ceilings.path_length)
}

/// Calls `f` on every tuple from `s.u` to `s.v`, permutations in
/// lexicographic order and paths in lexicographic order within each.
pub(crate) fn visit_tuples(s: &IndexSequences, filter: TupleFilter, mut f: impl FnMut(&PathTuple)) {
    let k = s.k();
    let table: Vec<Vec<Vec<DigraphPath>>> =
        s.u.iter()
            .map(|&a| s.v.iter().map(|&b| enumerate_paths(a, b)).collect())
            .collect();
    let mut tuple = PathTuple {
        alpha: Vec::new(),
        paths: Vec::with_capacity(k),
    };
    for (alpha, _) in permutations(k) {
        if (0..k).any(|i| table[i][alpha[i]].is_empty()) {
            continue;
        }
        tuple.alpha = alpha;
        fill(&table, &mut tuple, 0, filter, &mut f);
    }

    fn fill(
        table: &[Vec<Vec<DigraphPath>>],
        tuple: &mut PathTuple,
        i: usize,
        filter: TupleFilter,
        f: &mut impl FnMut(&PathTuple),
    ) {
        if i == tuple.alpha.len() {
            f(tuple);
            return;
        }
        for p in &table[i][tuple.alpha[i]] {
            if filter == TupleFilter::Noncrossing && tuple.paths.iter().any(|q| q.shares_vertex(p)) {
                continue;
            }
            tuple.paths.push(p.clone());
            fill(table, tuple, i + 1, filter, f);
            tuple.paths.pop();
        }
    }
}

/// Every tuple of paths from `s.u` to `s.v`, optionally only vertex-disjoint
/// ones.
pub fn enumerate_tuples(s: &IndexSequences, filter: TupleFilter, ceilings: &Ceilings) -> Result<Vec<PathTuple>> {
    check_tuple_ceiling(s, ceilings)?;
    let mut out = Vec::new();
    visit_tuples(s, filter, |t| out.push(t.clone()));
    Ok(out)
}

/// `Σ sgn(P) ω(P)` over the tuples kept by `filter`.
pub fn signed_tuple_sum(s: &IndexSequences, filter: TupleFilter, ceilings: &Ceilings) -> Result<LaurentPoly> {
    check_tuple_ceiling(s, ceilings)?;
    let mut acc = LaurentPoly::zero();
    visit_tuples(s, filter, |t| acc.add_term(t.weight_monomial(), t.sign().into()));
    Ok(acc)
}

/// Exchanges the tails of the first crossing pair: `p_i` is the smallest
/// index meeting another path, `w` its first shared vertex and `p_j` the
/// smallest other path through `w`.
pub fn tail_swap(tuple: &PathTuple) -> Result<PathTuple> {
    let i = tuple.first_crossing().ok_or(Error::Noncrossing)?;
    let pi = &tuple.paths[i];
    let (w, j) = pi
        .vertices
        .iter()
        .find_map(|&w| {
            (0..tuple.paths.len())
                .find(|&j| j != i && tuple.paths[j].contains(w))
                .map(|j| (w, j))
        })
        .ok_or_else(|| Error::Internal("crossing path has no shared vertex".into()))?;
    let pj = &tuple.paths[j];
    let cut_i = pi.vertices.binary_search(&w).expect("w on p_i");
    let cut_j = pj.vertices.binary_search(&w).expect("w on p_j");
    let mut new_i = pi.vertices[..cut_i].to_vec();
    new_i.extend_from_slice(&pj.vertices[cut_j..]);
    let mut new_j = pj.vertices[..cut_j].to_vec();
    new_j.extend_from_slice(&pi.vertices[cut_i..]);
    let mut out = tuple.clone();
    out.paths[i] = DigraphPath { vertices: new_i };
    out.paths[j] = DigraphPath { vertices: new_j };
    out.alpha.swap(i, j);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci;

    fn seq(u: &[usize], v: &[usize]) -> IndexSequences {
        IndexSequences::new(u.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn path_counts_and_weights() {
        assert_eq!(enumerate_paths(0, 5).len(), 8);
        let trivial = enumerate_paths(3, 3);
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].weight().is_one());
        assert!(enumerate_paths(4, 2).is_empty());
        let total: LaurentPoly = enumerate_paths(0, 2).iter().map(DigraphPath::weight).sum();
        assert_eq!(total, "x^2*q + y".parse().unwrap());
        for a in 0..4 {
            for b in a..a + 12 {
                assert_eq!(enumerate_paths(a, b).len(), usize::try_from(fibonacci(b - a)).unwrap());
            }
        }
    }

    #[test]
    fn path_validation() {
        assert!(DigraphPath::new(vec![0, 3]).is_err());
        assert!(DigraphPath::new(vec![]).is_err());
        assert_eq!(DigraphPath::new(vec![0, 1, 3]).unwrap().to_string(), "0->1->3");
    }

    #[test]
    fn sequences() {
        assert!(IndexSequences::new(vec![0, 0], vec![1, 2]).is_err());
        assert!(IndexSequences::new(vec![0], vec![1, 2]).is_err());
        let s = seq(&[0, 1, 3], &[2, 5, 7]);
        assert!(s.is_interleaved());
        assert!(!seq(&[0, 2], &[1, 3]).is_interleaved());
        assert_eq!(s.u_count(3), 2);
        assert_eq!(s.v_count(3), 1);
        assert_eq!(IndexSequences::all_with_k(2, 3).len(), 36);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"u":[0,1,3],"v":[2,5,7]}"#);
        assert_eq!(serde_json::from_str::<IndexSequences>(&j).unwrap(), s);
        assert!(serde_json::from_str::<IndexSequences>(r#"{"u":[1,0],"v":[2,3]}"#).is_err());
    }

    #[test]
    fn tuple_examples() {
        let c = Ceilings::default();
        assert_eq!(
            enumerate_tuples(&seq(&[0], &[2]), TupleFilter::All, &c).unwrap().len(),
            2
        );
        // 0->1 with 1->2, plus each of the two paths 0->2 with the empty path at 1
        let s = seq(&[0, 1], &[1, 2]);
        assert_eq!(enumerate_tuples(&s, TupleFilter::All, &c).unwrap().len(), 3);
        let nc = enumerate_tuples(&s, TupleFilter::Noncrossing, &c).unwrap();
        // only 0->2 with the empty path at 1 survives
        assert_eq!(nc.len(), 1);
        assert_eq!(nc[0].alpha, vec![1, 0]);
        let one = enumerate_tuples(&seq(&[4], &[4]), TupleFilter::All, &c).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].sign(), 1);
        assert!(one[0].weight().is_one());
    }

    #[test]
    fn tail_swap_examples() {
        let p = |v: &[usize]| DigraphPath::new(v.to_vec()).unwrap();
        let disjoint = PathTuple {
            alpha: vec![1, 0],
            paths: vec![p(&[0, 2]), p(&[1])],
        };
        assert!(matches!(tail_swap(&disjoint), Err(Error::Noncrossing)));
        let t = PathTuple {
            alpha: vec![0, 1],
            paths: vec![p(&[0, 1, 2]), p(&[1, 2, 3])],
        };
        let s = tail_swap(&t).unwrap();
        assert_eq!(s.paths, vec![p(&[0, 1, 2, 3]), p(&[1, 2])]);
        assert_eq!(s.alpha, vec![1, 0]);
        assert_eq!(s.sign(), -t.sign());
        assert_eq!(s.weight(), t.weight());
        assert_eq!(tail_swap(&s).unwrap(), t);
    }

    #[test]
    fn tail_swap_is_an_involution_on_small_crossings() {
        let c = Ceilings::default();
        let s = seq(&[0, 1], &[2, 3]);
        let mut crossing = 0;
        for t in enumerate_tuples(&s, TupleFilter::All, &c).unwrap() {
            if t.is_noncrossing() {
                continue;
            }
            crossing += 1;
            let u = tail_swap(&t).unwrap();
            assert_ne!(u, t);
            assert_eq!(u.arcs(), t.arcs());
            assert_eq!(u.sign(), -t.sign());
            assert_eq!(tail_swap(&u).unwrap(), t);
        }
        assert!(crossing > 0);
    }

    #[test]
    fn ceiling() {
        let c = Ceilings {
            path_length: 3,
            ..Ceilings::default()
        };
        assert!(matches!(
            enumerate_tuples(&seq(&[0], &[4]), TupleFilter::All, &c),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1 as i32).sum::<i32>(), 0);
        assert_eq!(sign_of(&[1, 0, 2]), -1);
        assert_eq!(sign_of(&[1, 2, 0]), 1);
    }
}

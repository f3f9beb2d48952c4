//! The bijections and weights on layered partitions and layered matchings.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::integer_partition::IntegerPartition;
use super::partition::SetPartition;
use super::sequences::{BinarySeq, Morse, MorseSeq};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial};

/// `π^c = B_k^c / ... / B_1^c` with `B^c = {n - b + 1}`; exchanges `ls` and
/// `rb` on layered partitions.
pub fn complement(pi: &SetPartition) -> Result<SetPartition> {
    pi.require_layered()?;
    let n = pi.n();
    let sizes: Vec<usize> = pi.block_sizes().into_iter().rev().collect();
    let out = SetPartition::from_block_sizes(&sizes);
    debug_assert_eq!(
        out,
        SetPartition::new(
            pi.blocks()
                .iter()
                .map(|b| b.iter().map(|&e| n - e + 1).collect())
                .collect()
        )
        .expect("complement of a partition")
    );
    Ok(out)
}

/// Partial sums of the first `k - 1` block sizes. Distinct parts, each at
/// most `n - 1`, with `|phi(π)| = rb(π)`.
pub fn phi(pi: &SetPartition) -> Result<IntegerPartition> {
    pi.require_layered()?;
    let mut acc = 0;
    let mut parts = Vec::with_capacity(pi.len().saturating_sub(1));
    for b in pi.blocks().iter().take(pi.len().saturating_sub(1)) {
        acc += b.len();
        parts.push(acc);
    }
    IntegerPartition::new(parts)
}

/// Inverse of [`phi`] onto `Π_n(13/2)`: consecutive differences of the
/// increasing parts, closed off by `n`, are the block sizes.
pub fn phi_inv(lambda: &IntegerPartition, n: usize) -> Result<SetPartition> {
    if !lambda.has_distinct_parts() || lambda.parts().iter().any(|&p| p >= n) {
        return Err(Error::InvalidArgument(format!(
            "{lambda} is not a partition into distinct parts below {n}"
        )));
    }
    if n == 0 {
        return Ok(SetPartition::empty());
    }
    let mut prev = 0;
    let mut sizes = Vec::with_capacity(lambda.len() + 1);
    for &p in lambda.parts().iter().rev().chain(std::iter::once(&n)) {
        sizes.push(p - prev);
        prev = p;
    }
    Ok(SetPartition::from_block_sizes(&sizes))
}

/// `b_i = 1` iff `i` and `i + 1` share a block; `rb = C(n,2) - ρ`.
pub fn to_binary_seq(pi: &SetPartition) -> Result<BinarySeq> {
    pi.require_layered_matching()?;
    if pi.n() == 0 {
        return Err(Error::InvalidArgument(
            "the empty partition has no binary sequence".into(),
        ));
    }
    let owner = pi.rgs();
    BinarySeq::new(owner.windows(2).map(|w| w[0] == w[1]).collect())
}

/// Inverse of [`to_binary_seq`]; a sequence of length `m` gives a layered
/// matching of `[m + 1]`.
pub fn from_binary_seq(beta: &BinarySeq) -> SetPartition {
    let mut sizes = vec![1];
    for &b in beta.bits() {
        if b {
            *sizes.last_mut().expect("nonempty") += 1;
        } else {
            sizes.push(1);
        }
    }
    SetPartition::from_block_sizes(&sizes)
}

/// Singleton block ↦ dot, doubleton ↦ dash.
pub fn to_morse(pi: &SetPartition) -> Result<MorseSeq> {
    pi.require_layered_matching()?;
    Ok(MorseSeq::new(
        pi.blocks()
            .iter()
            .map(|b| if b.len() == 1 { Morse::Dot } else { Morse::Dash })
            .collect(),
    ))
}

pub fn from_morse(nu: &MorseSeq) -> SetPartition {
    let sizes: Vec<usize> = nu.symbols().iter().map(|s| s.length()).collect();
    SetPartition::from_block_sizes(&sizes)
}

/// Variables carried by [`omega`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// `∏ ω(B_j)` with `ω(B) = x q^(min B - 1)` or `y q^(min B - 1)`.
    Xyq,
    /// `x^s y^d p^ls q^rb`.
    Xypq,
}

impl std::str::FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xyq" => Ok(WeightMode::Xyq),
            "xypq" => Ok(WeightMode::Xypq),
            _ => Err(Error::InvalidArgument(format!("unknown weight mode `{s}`"))),
        }
    }
}

fn block_weight(block: &[usize], offset: usize) -> Monomial {
    let e = (block[0] + offset - 1) as i32;
    if block.len() == 1 {
        Monomial::new(1, 0, 0, e)
    } else {
        Monomial::new(0, 1, 0, e)
    }
}

/// The weight of a matching.
pub fn omega(pi: &SetPartition, mode: WeightMode) -> Result<LaurentPoly> {
    if !pi.is_matching() {
        return Err(Error::NotMatching(pi.to_string()));
    }
    let m = match mode {
        WeightMode::Xyq => pi
            .blocks()
            .iter()
            .fold(Monomial::ONE, |acc, b| acc * block_weight(b, 0)),
        WeightMode::Xypq => {
            let s = pi.stats();
            Monomial::new(s.singletons as u32, s.doubletons as u32, s.ls as i32, s.rb as i32)
        }
    };
    Ok(LaurentPoly::monomial(m))
}

/// A partition preceded by `shift` blank positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedPartition {
    pub shift: usize,
    pub base: SetPartition,
}

impl ShiftedPartition {
    /// Blocks of `[shift + 1, shift + n]`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.base
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&e| e + self.shift).collect())
            .collect()
    }

    /// `∏ ω(B')` over the shifted blocks; each block's exponent is its base
    /// exponent plus the shift.
    pub fn omega(&self) -> Result<LaurentPoly> {
        if !self.base.is_matching() {
            return Err(Error::NotMatching(self.base.to_string()));
        }
        let m = self
            .blocks()
            .iter()
            .fold(Monomial::ONE, |acc, b| acc * block_weight(b, 0));
        Ok(LaurentPoly::monomial(m))
    }
}

impl fmt::Display for ShiftedPartition {
    /// `_ _ /356/47` for `134/25` shifted by two.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            return write!(f, "{}", self.base);
        }
        for _ in 0..self.shift {
            f.write_str("_ ")?;
        }
        if !self.base.is_empty() {
            write!(f, "/{}", SetPartition::format_blocks(&self.blocks()))?;
        }
        Ok(())
    }
}

pub fn shift(pi: &SetPartition, k: usize) -> ShiftedPartition {
    ShiftedPartition {
        shift: k,
        base: pi.clone(),
    }
}

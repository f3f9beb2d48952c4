use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial};

/// A binary word with no two adjacent ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySeq {
    bits: Vec<bool>,
}

impl BinarySeq {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.windows(2).any(|w| w[0] && w[1]) {
            return Err(Error::InvalidSequence("binary sequence has consecutive ones".into()));
        }
        Ok(BinarySeq { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `b_1 + 2 b_2 + ... + n b_n`.
    pub fn rho(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .sum()
    }

    /// Every sequence in `BS_n`, lexicographically (0 before 1).
    pub fn all(n: usize) -> Vec<BinarySeq> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn go(n: usize, cur: &mut Vec<bool>, out: &mut Vec<BinarySeq>) {
            if cur.len() == n {
                out.push(BinarySeq { bits: cur.clone() });
                return;
            }
            cur.push(false);
            go(n, cur, out);
            cur.pop();
            if cur.last() != Some(&true) {
                cur.push(true);
                go(n, cur, out);
                cur.pop();
            }
        }
        go(n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .char_indices()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(i, format!("expected 0 or 1, found `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BinarySeq::new(bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Morse {
    Dot,
    Dash,
}

impl Morse {
    pub fn length(self) -> usize {
        match self {
            Morse::Dot => 1,
            Morse::Dash => 2,
        }
    }
}

/// A word of dots (length 1) and dashes (length 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorseSeq {
    symbols: Vec<Morse>,
}

impl MorseSeq {
    pub fn new(symbols: Vec<Morse>) -> Self {
        MorseSeq { symbols }
    }

    pub fn symbols(&self) -> &[Morse] {
        &self.symbols
    }

    /// Total length: dots plus twice the dashes.
    pub fn length(&self) -> usize {
        self.symbols.iter().map(|s| s.length()).sum()
    }

    pub fn dots(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == Morse::Dot).count()
    }

    pub fn dashes(&self) -> usize {
        self.symbols.len() - self.dots()
    }

    /// Product of symbol weights: `x` per dot, `y q^(a+1)` per dash where
    /// `a` is the length of everything before the dash.
    pub fn weight(&self) -> LaurentPoly {
        let mut m = Monomial::ONE;
        let mut before = 0usize;
        for s in &self.symbols {
            match s {
                Morse::Dot => m.ex += 1,
                Morse::Dash => {
                    m.ey += 1;
                    m.eq += before as i32 + 1;
                }
            }
            before += s.length();
        }
        debug_assert_eq!(self.dots() + 2 * self.dashes(), before);
        LaurentPoly::monomial(m)
    }

    /// Every Morse sequence of total length `n` (dots before dashes).
    pub fn all(n: usize) -> Vec<MorseSeq> {
        fn go(rem: usize, cur: &mut Vec<Morse>, out: &mut Vec<MorseSeq>) {
            if rem == 0 {
                out.push(MorseSeq::new(cur.clone()));
                return;
            }
            for s in [Morse::Dot, Morse::Dash] {
                if s.length() <= rem {
                    cur.push(s);
                    go(rem - s.length(), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MorseSeq {
    /// ASCII form: `.` for a dot and `-` for a dash.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Morse::Dot => ".",
                Morse::Dash => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MorseSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .char_indices()
            .map(|(i, c)| match c {
                '.' | '•' | '·' => Ok(Morse::Dot),
                '-' | '−' | '–' | '—' => Ok(Morse::Dash),
                _ => Err(Error::parse(i, format!("expected a dot or a dash, found `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MorseSeq::new(symbols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci;

    #[test]
    fn rho_and_validation() {
        let b: BinarySeq = "00101".parse().unwrap();
        assert_eq!(b.rho(), 8);
        assert!("0110".parse::<BinarySeq>().is_err());
        assert!("012".parse::<BinarySeq>().is_err());
        assert_eq!(BinarySeq::all(2).iter().map(|b| b.rho()).collect::<Vec<_>>(), [0, 2, 1]);
    }

    #[test]
    fn counts_are_fibonacci() {
        for n in 0..15 {
            assert_eq!(BinarySeq::all(n).len(), usize::try_from(fibonacci(n + 1)).unwrap());
            assert_eq!(MorseSeq::all(n).len(), usize::try_from(fibonacci(n)).unwrap());
        }
        assert_eq!(MorseSeq::all(4).len(), 5);
    }

    #[test]
    fn documented_weight() {
        let nu: MorseSeq = "••−−•−".parse().unwrap();
        assert_eq!(nu.length(), 9);
        assert_eq!(nu.weight(), "x^3*y^3*q^16".parse().unwrap());
        assert_eq!(nu.to_string(), "..--.-");
        let dots: MorseSeq = ".....".parse().unwrap();
        assert_eq!(dots.weight(), "x^5".parse().unwrap());
    }
}

//! Canonical text form, e.g. `x^3*y^3*q^16` or `q^3 + q^2 + q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Monomial, Var};
use crate::error::{Error, Result};

pub(super) fn format(poly: &LaurentPoly) -> String {
    if poly.is_zero() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, (m, c)) in poly.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        let mut first = true;
        for var in Var::ALL {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push(var.symbol());
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let d = self
            .digits()
            .ok_or_else(|| Error::parse(self.pos, "expected exponent digits"))?;
        let v: i64 = d.parse().map_err(|_| Error::parse(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self, exps: &mut [i64; 4]) -> Result<()> {
        let at = self.pos;
        let var = self
            .peek()
            .and_then(|b| Var::from_symbol(b as char))
            .ok_or_else(|| Error::parse(at, "expected one of x, y, p, q"))?;
        self.pos += 1;
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        let i = Var::ALL.iter().position(|v| *v == var).expect("known variable");
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| Error::parse(at, "exponent out of range"))?;
        Ok(())
    }

    /// `[coeff][*]var[^exp][*var[^exp]...]`
    fn term(&mut self) -> Result<(BigInt, [i64; 4])> {
        self.skip_ws();
        let mut coeff = BigInt::one();
        let mut exps = [0i64; 4];
        if let Some(d) = self.digits() {
            coeff = d.parse().expect("digits");
            self.skip_ws();
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b) if Var::from_symbol(b as char).is_some() => {}
                _ => return Ok((coeff, exps)),
            }
        }
        loop {
            self.skip_ws();
            self.factor(&mut exps)?;
            self.skip_ws();
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
        }
        Ok((coeff, exps))
    }
}

pub(super) fn parse(s: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut out = LaurentPoly::zero();
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut sign_neg = false;
    if p.peek() == Some(b'-') {
        sign_neg = true;
        p.pos += 1;
    } else if p.peek() == Some(b'+') {
        p.pos += 1;
    }
    loop {
        let at = p.pos;
        let (c, e) = p.term()?;
        let m = Monomial::from_exponents(e[0], e[1], e[2], e[3]).map_err(|err| Error::parse(at, err.to_string()))?;
        out.add_term(m, if sign_neg { -c } else { c });
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => sign_neg = false,
            Some(b'-') => sign_neg = true,
            Some(b) => return Err(Error::parse(p.pos, format!("unexpected character `{}`", b as char))),
        }
        p.pos += 1;
    }
    debug_assert!(out.terms().all(|(_, c)| !c.is_zero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let f3: LaurentPoly = "q^3 + q^2 + q".parse().unwrap();
        assert_eq!(f3.len(), 3);
        assert_eq!(f3.to_string(), "q^3 + q^2 + q");
        assert!(parse("0").unwrap().is_zero());
        assert_eq!(format(&LaurentPoly::zero()), "0");
        let m = parse("x^3*y^3*q^16").unwrap();
        assert_eq!(m, LaurentPoly::monomial(Monomial::new(3, 3, 0, 16)));
    }

    #[test]
    fn any_term_order_and_fixed_output_order() {
        let a = parse("y + x^2*q").unwrap();
        assert_eq!(a.to_string(), "x^2*q + y");
        let b = parse("1 + q + 2q^2 + q^3 + q^4").unwrap();
        assert_eq!(b.to_string(), "q^4 + q^3 + 2*q^2 + q + 1");
    }

    #[test]
    fn signs_and_negative_exponents() {
        let a = parse("-q^-3 + 2*p^-1*q - 5").unwrap();
        // p^-1 sorts below the constant under lex order on (ex, ey, ep, eq)
        assert_eq!(a.to_string(), "-5 - q^-3 + 2*p^-1*q");
        assert_eq!(parse(&a.to_string()).unwrap(), a);
        assert_eq!(parse("- x").unwrap().to_string(), "-x");
    }

    #[test]
    fn repeated_terms_combine() {
        assert_eq!(parse("q + q - 2*q").unwrap(), LaurentPoly::zero());
        assert_eq!(parse("q*q*x").unwrap().to_string(), "x*q^2");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("q +"), Err(Error::parse(3, "expected one of x, y, p, q")));
        match parse("x^") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x ? y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x^-1"), Err(Error::Parse { pos: 0, .. })));
        assert!(parse("").is_err());
        assert!(parse("z").is_err());
    }
}

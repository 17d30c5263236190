//! Text form of cyclotomic values: `2*E(5)+E(5)^4`, `-1/2`, `7`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{BigInt, BigRat, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad cyclotomic literal {text:?} at offset {offset}: {message}")]
pub struct LiteralError {
    pub text: String,
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError {
            text: self.src.to_string(),
            offset: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LiteralError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<i64, LiteralError> {
        let at = self.pos;
        let n = self.integer()?;
        i64::try_from(n).or_else(|_| {
            self.pos = at;
            self.fail("integer out of range")
        })
    }

    fn coeff(&mut self) -> Result<BigRat, LiteralError> {
        let num = self.integer()?;
        if self.eat('/') {
            let den = self.integer()?;
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            Ok(BigRat::new(num, den))
        } else {
            Ok(BigRat::from_integer(num))
        }
    }

    // E(n)^k, returned as (n, k)
    fn atom(&mut self) -> Result<(u64, i64), LiteralError> {
        self.expect('E')?;
        self.expect('(')?;
        let n = self.small()?;
        if n < 1 {
            return self.fail("conductor must be positive");
        }
        self.expect(')')?;
        let k = if self.eat('^') {
            let neg = self.eat('-');
            let k = self.small()?;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok((n as u64, k))
    }

    fn term(&mut self) -> Result<Cyclotomic, LiteralError> {
        if self.peek() == Some('E') {
            let (n, k) = self.atom()?;
            return Ok(Cyclotomic::root_of_unity(n, k));
        }
        let c = self.coeff()?;
        if self.eat('*') {
            let (n, k) = self.atom()?;
            Ok(Cyclotomic::from_terms(n, [(k, c)]))
        } else {
            Ok(Cyclotomic::from_rational(c))
        }
    }

    fn value(&mut self) -> Result<Cyclotomic, LiteralError> {
        let mut acc = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            acc.push(if sign < 0 { -t } else { t });
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return self.fail("unexpected character"),
            }
        }
        Ok(super::sum_values(acc.iter()))
    }
}

impl FromStr for Cyclotomic {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: s,
            chars,
            pos: 0,
        };
        if p.chars.is_empty() {
            return p.fail("empty literal");
        }
        p.value()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRat) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let n = self.conductor;
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if *k == 0 {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            if *k == 1 {
                write!(f, "E({n})")?;
            } else {
                write!(f, "E({n})^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Cyclotomic {
        s.parse().unwrap()
    }

    #[test]
    fn round_trips() {
        for s in [
            "0",
            "7",
            "-1/2",
            "-1/2*E(3)",
            "E(7)-E(7)^3",
            "E(4)",
            "-1+E(5)-E(5)^2-E(5)^3",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
        // E(5)^4 is not a power-basis element of ℚ(ζ5)
        let x = parse("2*E(5)+E(5)^4");
        assert_eq!(x.to_string(), "-1+E(5)-E(5)^2-E(5)^3");
        assert_eq!(parse(&x.to_string()), x);
    }

    #[test]
    fn normalizes_on_parse() {
        assert_eq!(parse("E(3) + E(3)^2").to_string(), "-1");
        assert_eq!(parse(" - E(6) ").to_string(), "-1-E(3)");
        assert_eq!(parse("E(4)^2"), parse("-1"));
        assert_eq!(parse("3*E(8)^-1"), parse("3*E(8)^7"));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "E(0)", "1/0", "2*", "E3", "1++2", "x"] {
            assert!(s.parse::<Cyclotomic>().is_err(), "{s}");
        }
    }
}

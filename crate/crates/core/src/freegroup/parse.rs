//! Grammar:
//!
//! ```text
//! word   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := 'x' digits | '1' | '(' word ')' | '[' word ',' word ']'
//! ```

use super::FreeWord;
use crate::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    rank: usize,
}

pub fn parse(s: &str, rank: usize) -> Result<FreeWord> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, rank };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in word", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> Result<FreeWord> {
        let mut w = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    w = w.mul(&self.factor()?);
                }
                Some(b'x' | b'(' | b'[' | b'1') => w = w.mul(&self.factor()?),
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let a = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            return Ok(a.pow(k));
        }
        Ok(a)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<FreeWord> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let idx: usize = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("expected a generator index after 'x'"))?;
                if idx == 0 || idx > self.rank {
                    return Err(self.err(&format!("generator x{idx} outside rank {}", self.rank)));
                }
                Ok(FreeWord::generator(self.rank, idx - 1))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(FreeWord::identity(self.rank))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(FreeWord::commutator(&u, &v))
            }
            _ => Err(self.err("expected a generator, '1', '(' or '['")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_agree() {
        let a = parse("x1 x2 x1^-1 x2^-1", 2).unwrap();
        let b = parse("[x1,x2]", 2).unwrap();
        let c = parse("x1*x2*(x2 x1)^-1", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(parse("x1^3 x1^-3", 1).unwrap(), FreeWord::identity(1));
        assert_eq!(parse("1", 3).unwrap(), FreeWord::identity(3));
    }

    #[test]
    fn errors() {
        for bad in ["x3", "x0", "[x1 x2]", "x1^", "(x1", "y", "x1 ]"] {
            assert!(matches!(parse(bad, 2), Err(Error::Parse(_))), "{bad}");
        }
    }
}

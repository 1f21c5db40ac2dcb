//! Ideal expressions.
//!
//! ```text
//! query := sum (('<=' | '==') sum)?
//! sum   := prod ('+' prod)*
//! prod  := atom (('*' | '&') atom)*
//! atom  := 'p' digits | 'F' | 'A' | '0' | '{' patterns? '}' | '(' sum ')'
//! ```
//!
//! `F` is `F^{⊗n}`, `A` the whole algebra, `&` intersection, `A <= B`
//! containment of `A` in `B`.

use jac_core::{IdealNF, Pattern};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Ideal(IdealNF),
    Contained(IdealNF, IdealNF),
    Equal(IdealNF, IdealNF),
}

struct P<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

fn syntax(col: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { col, msg: msg.into() }
}

impl P<'_> {
    fn skip(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn col(&mut self) -> usize {
        self.skip();
        self.pos + 1
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(syntax(self.col(), format!("expected '{s}'")))
        }
    }

    fn number(&mut self) -> Result<usize, CliError> {
        let col = self.col();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| syntax(col, "expected a number"))
    }

    fn query(&mut self) -> Result<Query, CliError> {
        let a = self.sum()?;
        let q = if self.eat("<=") {
            Query::Contained(a, self.sum()?)
        } else if self.eat("==") {
            Query::Equal(a, self.sum()?)
        } else {
            Query::Ideal(a)
        };
        if self.peek().is_some() {
            return Err(syntax(self.col(), "unexpected trailing input"));
        }
        Ok(q)
    }

    fn sum(&mut self) -> Result<IdealNF, CliError> {
        let mut acc = self.prod()?;
        while self.eat("+") {
            acc = acc.sum(&self.prod()?)?;
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<IdealNF, CliError> {
        let mut acc = self.atom()?;
        loop {
            if self.eat("*") {
                acc = acc.product(&self.atom()?)?;
            } else if self.eat("&") {
                acc = acc.intersect(&self.atom()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn pattern(&mut self) -> Result<Pattern, CliError> {
        self.expect("(")?;
        let mut vals = Vec::new();
        loop {
            let col = self.col();
            match self.peek() {
                Some(b'0') => vals.push(0u8),
                Some(b'1') => vals.push(1u8),
                _ => return Err(syntax(col, "expected 0 or 1")),
            }
            self.pos += 1;
            if !self.eat(",") {
                break;
            }
        }
        let col = self.col();
        self.expect(")")?;
        if vals.len() != self.n {
            return Err(CliError::Arity(format!(
                "pattern ending at column {col} has {} entries, expected {}",
                vals.len(),
                self.n
            )));
        }
        Ok(Pattern::from_values(&vals))
    }

    fn atom(&mut self) -> Result<IdealNF, CliError> {
        let col = self.col();
        let n = self.n;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(")")?;
                Ok(a)
            }
            Some(b'{') => {
                self.pos += 1;
                let mut pats = Vec::new();
                if !self.eat("}") {
                    pats.push(self.pattern()?);
                    while self.eat(",") {
                        pats.push(self.pattern()?);
                    }
                    self.expect("}")?;
                }
                Ok(IdealNF::canon(n, pats)?)
            }
            Some(b'p') => {
                self.pos += 1;
                let i = self.number()?;
                if i == 0 || i > n {
                    return Err(CliError::Arity(format!(
                        "prime p{i} at column {col} is outside p1..p{n}"
                    )));
                }
                Ok(IdealNF::prime(n, i))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(IdealNF::f_tensor(n))
            }
            Some(b'A') => {
                self.pos += 1;
                Ok(IdealNF::full(n))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(IdealNF::zero(n))
            }
            None => Err(syntax(col, "unexpected end of input")),
            Some(_) => Err(syntax(col, "expected an ideal")),
        }
    }
}

pub fn parse_query(src: &str, n: usize) -> Result<Query, CliError> {
    P { src: src.as_bytes(), pos: 0, n }.query()
}

pub fn parse_ideal(src: &str, n: usize) -> Result<IdealNF, CliError> {
    match parse_query(src, n)? {
        Query::Ideal(a) => Ok(a),
        _ => Err(CliError::Usage("expected an ideal, not a comparison".into())),
    }
}

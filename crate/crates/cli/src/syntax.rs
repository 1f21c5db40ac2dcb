//! Surface syntax for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' '-'? digits)?
//! atom   := rational | generator | '(' expr ')'
//! ```
//!
//! Generators carry a 1-based slot suffix (`x2`, `D1`, `E1[0,3]`) that may be
//! dropped when there is a single variable.

use jac_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    X(usize),
    D(usize),
    H(usize),
    /// `h = H - 1`.
    SmallH(usize),
    Int(usize),
    E { slot: usize, row: u64, col: u64 },
    /// `E[(a_1,…,a_n),(b_1,…,b_n)]`, a matrix unit across all slots.
    EMulti { row: Vec<u64>, col: Vec<u64> },
    Pi { slot: usize, i: u64 },
    /// `RHO[i]` is `ρ_i`; `RHO[j,i]` is `ρ_{ji}`.
    Rho { slot: usize, j: Option<u32>, i: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String, Option<usize>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    n: usize,
}

fn syntax(col: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { col, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let chars: Vec<char> = src.chars().collect();
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let p: BigInt = digits(&mut i).parse().expect("digits");
            let mut q = BigInt::from(1);
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let dcol = i + 1;
                let d = digits(&mut i);
                if d.is_empty() {
                    return Err(syntax(dcol, "expected a denominator after '/'"));
                }
                q = d.parse().expect("digits");
                if q.is_zero() {
                    return Err(syntax(dcol, "zero denominator"));
                }
            }
            out.push((Tok::Num(Rational::new(p, q)), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let scol = i + 1;
            let s = digits(&mut i);
            let slot = if s.is_empty() {
                None
            } else {
                Some(s.parse().map_err(|_| syntax(scol, "slot index too large"))?)
            };
            out.push((Tok::Ident(name, slot), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '/' => return Err(syntax(col, "'/' is only allowed inside a rational literal")),
            _ => return Err(syntax(col, format!("unexpected character '{c}'"))),
        };
        out.push((t, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), CliError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.col(), format!("expected {what}")))
        }
    }

    fn uint(&mut self) -> Result<u64, CliError> {
        let col = self.col();
        match self.bump() {
            Tok::Num(q) if q.is_integer() => {
                u64::try_from(q.to_integer()).map_err(|_| syntax(col, "index too large"))
            }
            _ => Err(syntax(col, "expected a non-negative integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let col = self.col();
        let k = self.uint()?;
        let k = i64::try_from(k).map_err(|_| syntax(col, "exponent too large"))?;
        if *self.peek() == Tok::Caret {
            return Err(syntax(self.col(), "'^' is not associative; use parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn slot(&self, slot: Option<usize>, col: usize, name: &str) -> Result<usize, CliError> {
        match slot {
            None if self.n == 1 => Ok(1),
            None => Err(CliError::Arity(format!(
                "'{name}' needs a slot index 1..{} at column {col}",
                self.n
            ))),
            Some(s) if s >= 1 && s <= self.n => Ok(s),
            Some(s) => Err(CliError::Arity(format!(
                "slot {s} of '{name}' at column {col} is outside 1..{}",
                self.n
            ))),
        }
    }

    fn index_list(&mut self) -> Result<Vec<u64>, CliError> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = vec![self.uint()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.uint()?);
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let col = self.col();
        match self.bump() {
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name, slot) => self.generator(&name, slot, col),
            Tok::End => Err(syntax(col, "unexpected end of input")),
            _ => Err(syntax(col, "expected an operand")),
        }
    }

    fn generator(&mut self, name: &str, slot: Option<usize>, col: usize) -> Result<Expr, CliError> {
        let a = match name {
            "x" => Atom::X(self.slot(slot, col, name)?),
            "D" => Atom::D(self.slot(slot, col, name)?),
            "H" => Atom::H(self.slot(slot, col, name)?),
            "h" => Atom::SmallH(self.slot(slot, col, name)?),
            "INT" => Atom::Int(self.slot(slot, col, name)?),
            "E" => {
                self.expect(Tok::LBrack, "'['")?;
                if *self.peek() == Tok::LParen {
                    if slot.is_some() {
                        return Err(syntax(col, "a multi-index matrix unit takes no slot"));
                    }
                    let row = self.index_list()?;
                    self.expect(Tok::Comma, "','")?;
                    let col2 = self.col();
                    let c = self.index_list()?;
                    self.expect(Tok::RBrack, "']'")?;
                    if row.len() != self.n || c.len() != self.n {
                        return Err(CliError::Arity(format!(
                            "matrix unit at column {col2} needs {} indices per side",
                            self.n
                        )));
                    }
                    Atom::EMulti { row, col: c }
                } else {
                    let s = self.slot(slot, col, name)?;
                    let row = self.uint()?;
                    self.expect(Tok::Comma, "','")?;
                    let c = self.uint()?;
                    self.expect(Tok::RBrack, "']'")?;
                    Atom::E { slot: s, row, col: c }
                }
            }
            "PI" => {
                let s = self.slot(slot, col, name)?;
                self.expect(Tok::LBrack, "'['")?;
                let i = self.uint()?;
                self.expect(Tok::RBrack, "']'")?;
                Atom::Pi { slot: s, i }
            }
            "RHO" => {
                let s = self.slot(slot, col, name)?;
                self.expect(Tok::LBrack, "'['")?;
                let first = self.uint()?;
                let (j, i) = if *self.peek() == Tok::Comma {
                    self.bump();
                    let jcol = col;
                    let j = u32::try_from(first).map_err(|_| syntax(jcol, "power too large"))?;
                    (Some(j), self.uint()?)
                } else {
                    (None, first)
                };
                self.expect(Tok::RBrack, "']'")?;
                Atom::Rho { slot: s, j, i }
            }
            _ => return Err(syntax(col, format!("unknown generator '{name}'"))),
        };
        Ok(Expr::Atom(a))
    }
}

/// Parses `src` as an expression in `n` variables.
pub fn parse(src: &str, n: usize) -> Result<Expr, CliError> {
    let mut lx = Lexer {
        toks: lex(src)?,
        pos: 0,
        n,
    };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return Err(syntax(lx.col(), "unexpected trailing input"));
    }
    Ok(e)
}

fn slot_name(base: &str, slot: usize, n: usize) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}{slot}")
    }
}

fn atom_text(a: &Atom, n: usize) -> String {
    match a {
        Atom::X(s) => slot_name("x", *s, n),
        Atom::D(s) => slot_name("D", *s, n),
        Atom::H(s) => slot_name("H", *s, n),
        Atom::SmallH(s) => slot_name("h", *s, n),
        Atom::Int(s) => slot_name("INT", *s, n),
        Atom::E { slot, row, col } => format!("{}[{row},{col}]", slot_name("E", *slot, n)),
        Atom::EMulti { row, col } => {
            let show = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            format!("E[({}),({})]", show(row), show(col))
        }
        Atom::Pi { slot, i } => format!("{}[{i}]", slot_name("PI", *slot, n)),
        Atom::Rho { slot, j: None, i } => format!("{}[{i}]", slot_name("RHO", *slot, n)),
        Atom::Rho { slot, j: Some(j), i } => format!("{}[{j},{i}]", slot_name("RHO", *slot, n)),
    }
}

// binding strength: sum 1, product 2, unary 3, power 4, atom 5
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(_) | Expr::Atom(_) => 5,
    }
}

fn write_at(out: &mut String, e: &Expr, min: u8, n: usize) {
    if level(e) < min {
        out.push('(');
        write_expr(out, e, n);
        out.push(')');
    } else {
        write_expr(out, e, n);
    }
}

fn write_expr(out: &mut String, e: &Expr, n: usize) {
    match e {
        Expr::Num(q) => out.push_str(&q.to_string()),
        Expr::Atom(a) => out.push_str(&atom_text(a, n)),
        Expr::Neg(a) => {
            out.push('-');
            write_at(out, a, 3, n);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(out, a, 1, n);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_at(out, b, 2, n);
        }
        Expr::Mul(a, b) => {
            write_at(out, a, 2, n);
            out.push('*');
            write_at(out, b, 3, n);
        }
        Expr::Pow(a, k) => {
            write_at(out, a, 5, n);
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

/// Prints `e` with the fewest parentheses that parse back to `e`.
pub fn pretty(e: &Expr, n: usize) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, n);
    out
}

//! Tiny expression grammar for building modules on the command line:
//!
//! ```text
//! expr := "nat" | "ext" "(" expr "," int ")"
//!       | "tensor" "(" expr "," expr ")" | "dual" "(" expr ")"
//! ```
//!
//! Whitespace is ignored everywhere.

use crate::CliError;
use unirep::MatRep;

#[derive(Debug, PartialEq, Eq)]
pub enum Expr {
    Nat,
    Ext(Box<Expr>, usize),
    Tensor(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
}

pub fn parse(input: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(CliError::Parse(format!(
            "trailing input at position {}: '{}'",
            p.pos,
            p.rest()
        )));
    }
    Ok(e)
}

pub fn build(e: &Expr, natural: &MatRep) -> Result<MatRep, CliError> {
    Ok(match e {
        Expr::Nat => natural.clone(),
        Expr::Ext(inner, i) => build(inner, natural)?.exterior_power(*i)?,
        Expr::Tensor(a, b) => build(a, natural)?.tensor(&build(b, natural)?)?,
        Expr::Dual(inner) => build(inner, natural)?.dual(),
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn rest(&self) -> String {
        self.chars[self.pos..].iter().collect()
    }

    fn eat(&mut self, c: char) -> Result<(), CliError> {
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CliError::Parse(format!(
                "expected '{c}' at position {}, found '{}'",
                self.pos,
                self.rest()
            )))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<usize, CliError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| CliError::Parse(format!("expected a number at position {start}")))
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let name = self.ident();
        match name.as_str() {
            "nat" => Ok(Expr::Nat),
            "ext" => {
                self.eat('(')?;
                let inner = self.expr()?;
                self.eat(',')?;
                let i = self.number()?;
                self.eat(')')?;
                Ok(Expr::Ext(Box::new(inner), i))
            }
            "tensor" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                Ok(Expr::Tensor(Box::new(a), Box::new(b)))
            }
            "dual" => {
                self.eat('(')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(Expr::Dual(Box::new(inner)))
            }
            other => Err(CliError::Parse(format!(
                "unknown constructor '{other}' (expected nat, ext, tensor, or dual)"
            ))),
        }
    }
}

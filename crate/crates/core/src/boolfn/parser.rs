//! Recursive-descent parser for Boolean expressions.
//!
//! Grammar, loosest binding first: `|`, `^`, `&`, unary `!`. Atoms are
//! declared variable names, the literals `0` and `1`, and parenthesised
//! expressions.

use std::collections::HashMap;

use super::function::{BooleanFunction, PartySpec};
use super::{BoolFnError, MAX_VARIABLES};
use crate::bits::Bit;

enum Expr {
    Var(usize),
    Const(Bit),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, assignment: &[Bit]) -> Bit {
        match self {
            Expr::Var(i) => assignment[*i],
            Expr::Const(b) => *b,
            Expr::Not(e) => !e.eval(assignment),
            // OR and NOT lower into the XOR/AND/1 algebra:
            // a|b = a⊕b⊕ab and !a = 1⊕a, which is what these evaluate.
            Expr::And(a, b) => a.eval(assignment) & b.eval(assignment),
            Expr::Xor(a, b) => a.eval(assignment) ^ b.eval(assignment),
            Expr::Or(a, b) => {
                let (a, b) = (a.eval(assignment), b.eval(assignment));
                a ^ b ^ (a & b)
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a HashMap<&'a str, usize>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> BoolFnError {
        BoolFnError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn parse_or(&mut self) -> Result<Expr, BoolFnError> {
        let mut lhs = self.parse_xor()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let rhs = self.parse_xor()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_xor(&mut self) -> Result<Expr, BoolFnError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let rhs = self.parse_and()?;
            lhs = Expr::Xor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Expr, BoolFnError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr, BoolFnError> {
        match self.peek() {
            Some(b'!') | Some(b'~') => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.parse_unary()?)))
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, BoolFnError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Expr::Const(Bit::ZERO))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::Const(Bit::ONE))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                match self.vars.get(name) {
                    Some(idx) => Ok(Expr::Var(*idx)),
                    None => Err(BoolFnError::UndeclaredVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parse an expression over the declared party variables and tabulate it.
pub fn parse_expression(text: &str, parties: &[PartySpec]) -> Result<BooleanFunction, BoolFnError> {
    let ordered: Vec<&str> = parties
        .iter()
        .flat_map(|p| p.variables.iter().map(String::as_str))
        .collect();
    let n = ordered.len();
    if n > MAX_VARIABLES {
        return Err(BoolFnError::TooManyVariables(n));
    }
    let mut vars = HashMap::new();
    for (idx, name) in ordered.iter().enumerate() {
        if vars.insert(*name, idx).is_some() {
            return Err(BoolFnError::DuplicateVariable(name.to_string()));
        }
    }

    let mut parser = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        vars: &vars,
    };
    let expr = parser.parse_or()?;
    if parser.peek().is_some() {
        return Err(parser.error("trailing input"));
    }

    // Tabulate over all assignments; the first variable is the most
    // significant index bit.
    let mut truth_table = Vec::with_capacity(1 << n);
    let mut assignment = vec![Bit::ZERO; n];
    for idx in 0..(1usize << n) {
        for (k, slot) in assignment.iter_mut().enumerate() {
            *slot = Bit(idx & (1 << (n - 1 - k)) != 0);
        }
        truth_table.push(expr.eval(&assignment));
    }
    Ok(BooleanFunction::new(parties.to_vec(), truth_table))
}

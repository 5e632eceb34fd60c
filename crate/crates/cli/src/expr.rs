//! Localisation expressions.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor (('*' | '&') factor)*
//! factor := 'id' | 'zero' | 'rat' | 'ploc' '(' prime ')'
//!         | 'lift' '(' prime ',' extnat ')'
//!         | 'invert' '{' prime (',' prime)* '}'
//!         | 'params' '(' extnat (';' prime '->' extnat)* ')'
//!         | '(' expr ')'
//! extnat := decimal-integer | 'inf'
//! ```
//!
//! `*` and `&` both denote composition, which is the meet. Whitespace between
//! tokens is ignored.

use std::collections::BTreeSet;
use std::fmt;

use chromloc_core::{ExtNat, GlobalFiniteLoc, LatticeError, PLocalFiniteLoc, Prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinOp {
    Compose,
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeExpr {
    Id,
    Zero,
    Rat,
    PLoc(Prime),
    Lift(Prime, ExtNat),
    Invert(Vec<Prime>),
    Params(ExtNat, Vec<(Prime, ExtNat)>),
    Binary(BinOp, Box<LatticeExpr>, Box<LatticeExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at byte {offset}: expected {}, found {found}", ExpectedList(.expected))]
    Parse {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("at byte {offset}: {value} is not prime")]
    Prime { offset: usize, value: u64 },
    #[error("at byte {offset}: prime {prime} listed twice")]
    DuplicatePrime { offset: usize, prime: Prime },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [one] => f.write_str(one),
            many => {
                f.write_str("one of ")?;
                for (i, e) in many.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(e)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    Punct(&'static str),
    Unknown(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) | Tok::Number(w) => write!(f, "`{w}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Unknown(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const PUNCT: [&str; 10] = ["->", "(", ")", "{", "}", ",", ";", "*", "&", "|"];
const FACTOR_START: [&str; 8] = ["`id`", "`zero`", "`rat`", "`ploc`", "`lift`", "`invert`", "`params`", "`(`"];

fn tokenize(text: &str) -> Vec<(Tok, usize)> {
    let mut out = Vec::new();
    let mut rest = text.char_indices().peekable();
    while let Some(&(i, c)) = rest.peek() {
        if c.is_whitespace() {
            rest.next();
        } else if c.is_ascii_alphabetic() || c.is_ascii_digit() {
            let numeric = c.is_ascii_digit();
            let mut end = i;
            while let Some(&(j, d)) = rest.peek() {
                let keep = if numeric { d.is_ascii_digit() } else { d.is_ascii_alphanumeric() || d == '_' };
                if !keep {
                    break;
                }
                end = j + d.len_utf8();
                rest.next();
            }
            let s = text[i..end].to_string();
            out.push((if numeric { Tok::Number(s) } else { Tok::Word(s) }, i));
        } else if let Some(p) = PUNCT.iter().find(|p| text[i..].starts_with(*p)) {
            for _ in 0..p.len() {
                rest.next();
            }
            out.push((Tok::Punct(p), i));
        } else {
            rest.next();
            out.push((Tok::Unknown(c), i));
        }
    }
    out.push((Tok::End, text.len()));
    out
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, expected: &[&'static str]) -> ExprError {
        ExprError::Parse {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, p: &'static str) -> bool {
        if *self.peek() == Tok::Punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &'static str, label: &'static str) -> Result<(), ExprError> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn expr(&mut self) -> Result<LatticeExpr, ExprError> {
        let mut lhs = self.term()?;
        while self.eat("|") {
            let rhs = self.term()?;
            lhs = LatticeExpr::Binary(BinOp::Join, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<LatticeExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat("*") {
                BinOp::Compose
            } else if self.eat("&") {
                BinOp::Meet
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = LatticeExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<LatticeExpr, ExprError> {
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")", "`)`")?;
            return Ok(inner);
        }
        let Tok::Word(word) = self.peek().clone() else {
            return Err(self.error(&FACTOR_START));
        };
        let atom = match word.as_str() {
            "id" => LatticeExpr::Id,
            "zero" => LatticeExpr::Zero,
            "rat" => LatticeExpr::Rat,
            "ploc" | "lift" | "invert" | "params" => {
                self.pos += 1;
                return self.call(&word);
            }
            _ => return Err(self.error(&FACTOR_START)),
        };
        self.pos += 1;
        Ok(atom)
    }

    fn call(&mut self, name: &str) -> Result<LatticeExpr, ExprError> {
        match name {
            "ploc" => {
                self.expect("(", "`(`")?;
                let p = self.prime()?;
                self.expect(")", "`)`")?;
                Ok(LatticeExpr::PLoc(p))
            }
            "lift" => {
                self.expect("(", "`(`")?;
                let p = self.prime()?;
                self.expect(",", "`,`")?;
                let n = self.ext_nat()?;
                self.expect(")", "`)`")?;
                Ok(LatticeExpr::Lift(p, n))
            }
            "invert" => {
                self.expect("{", "`{`")?;
                let mut seen = BTreeSet::new();
                let mut primes = Vec::new();
                loop {
                    let offset = self.offset();
                    let p = self.prime()?;
                    if !seen.insert(p) {
                        return Err(ExprError::DuplicatePrime { offset, prime: p });
                    }
                    primes.push(p);
                    if self.eat("}") {
                        return Ok(LatticeExpr::Invert(primes));
                    }
                    if !self.eat(",") {
                        return Err(self.error(&["`,`", "`}`"]));
                    }
                }
            }
            "params" => {
                self.expect("(", "`(`")?;
                let default = self.ext_nat()?;
                let mut seen = BTreeSet::new();
                let mut exceptions = Vec::new();
                loop {
                    if self.eat(")") {
                        return Ok(LatticeExpr::Params(default, exceptions));
                    }
                    if !self.eat(";") && !(!exceptions.is_empty() && self.eat(",")) {
                        let expected: &[_] = if exceptions.is_empty() { &["`;`", "`)`"] } else { &["`;`", "`,`", "`)`"] };
                        return Err(self.error(expected));
                    }
                    let offset = self.offset();
                    let p = self.prime()?;
                    if !seen.insert(p) {
                        return Err(ExprError::DuplicatePrime { offset, prime: p });
                    }
                    self.expect("->", "`->`")?;
                    exceptions.push((p, self.ext_nat()?));
                }
            }
            _ => unreachable!("dispatched on known names"),
        }
    }

    fn integer(&mut self, expected: &[&'static str]) -> Result<u64, ExprError> {
        let Tok::Number(digits) = self.peek() else {
            return Err(self.error(expected));
        };
        let value = digits.parse().map_err(|_| ExprError::Parse {
            offset: self.offset(),
            expected: vec!["an integer below 2^64"],
            found: self.peek().to_string(),
        })?;
        self.pos += 1;
        Ok(value)
    }

    fn prime(&mut self) -> Result<Prime, ExprError> {
        let offset = self.offset();
        let value = self.integer(&["a prime"])?;
        Prime::new(value).map_err(|_| ExprError::Prime { offset, value })
    }

    fn ext_nat(&mut self) -> Result<ExtNat, ExprError> {
        if *self.peek() == Tok::Word("inf".into()) {
            self.pos += 1;
            return Ok(ExtNat::Infinite);
        }
        self.integer(&["an integer", "`inf`"]).map(ExtNat::Finite)
    }
}

pub fn parse_lattice_expr(text: &str) -> Result<LatticeExpr, ExprError> {
    let mut parser = Parser { toks: tokenize(text), pos: 0 };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["`*`", "`&`", "`|`", "end of input"]));
    }
    Ok(e)
}

pub fn eval_lattice(e: &LatticeExpr) -> Result<GlobalFiniteLoc, ExprError> {
    Ok(match e {
        LatticeExpr::Id => GlobalFiniteLoc::identity(),
        LatticeExpr::Zero => GlobalFiniteLoc::Zero,
        LatticeExpr::Rat => GlobalFiniteLoc::rationalisation(),
        LatticeExpr::PLoc(p) => GlobalFiniteLoc::p_localisation(*p),
        LatticeExpr::Lift(p, n) => GlobalFiniteLoc::lift(*p, PLocalFiniteLoc::LnF(*n))?,
        LatticeExpr::Invert(primes) => GlobalFiniteLoc::invert_primes(primes.iter().copied()),
        LatticeExpr::Params(d, ex) => GlobalFiniteLoc::from_params(*d, ex.iter().copied()),
        LatticeExpr::Binary(op, lhs, rhs) => {
            let (l, r) = (eval_lattice(lhs)?, eval_lattice(rhs)?);
            match op {
                BinOp::Compose => l.compose(&r),
                BinOp::Meet => l.meet(&r),
                BinOp::Join => l.join(&r),
            }
        }
    })
}

/// Parses and evaluates in one step.
pub fn evaluate(text: &str) -> Result<GlobalFiniteLoc, ExprError> {
    eval_lattice(&parse_lattice_expr(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(evaluate("ploc(2) * ploc(3)"), Ok(GlobalFiniteLoc::rationalisation()));
        assert_eq!(parse_lattice_expr("id"), Ok(LatticeExpr::Id));
        assert_eq!(parse_lattice_expr("ploc(4)"), Err(ExprError::Prime { offset: 5, value: 4 }));
        assert_eq!(
            evaluate("lift(2,1) & lift(7,0)"),
            Ok(GlobalFiniteLoc::from_params(ExtNat::Infinite, [(p(2), ExtNat::Finite(1)), (p(7), ExtNat::ZERO)]))
        );
        assert_eq!(evaluate("zero | ploc(5)"), evaluate("ploc(5)"));
        assert_eq!(evaluate("rat * id"), Ok(GlobalFiniteLoc::rationalisation()));
    }

    #[test]
    fn precedence_and_associativity() {
        // `*` binds tighter than `|`.
        assert_eq!(
            evaluate("ploc(2) | ploc(3) * ploc(5)").unwrap(),
            evaluate("ploc(2) | (ploc(3) * ploc(5))").unwrap()
        );
        assert_ne!(
            evaluate("ploc(2) | ploc(3) * ploc(5)").unwrap(),
            evaluate("(ploc(2) | ploc(3)) * ploc(5)").unwrap()
        );
        let e = parse_lattice_expr("id * rat & zero").unwrap();
        let LatticeExpr::Binary(BinOp::Meet, lhs, _) = e else { panic!("{e:?}") };
        assert!(matches!(*lhs, LatticeExpr::Binary(BinOp::Compose, _, _)));
    }

    #[test]
    fn atoms() {
        assert_eq!(evaluate("invert{2, 3}"), Ok(GlobalFiniteLoc::invert_primes([p(2), p(3)])));
        assert_eq!(evaluate("params(inf)"), Ok(GlobalFiniteLoc::identity()));
        assert_eq!(
            evaluate("params(0; 2->inf, 3->1)"),
            Ok(GlobalFiniteLoc::from_params(ExtNat::ZERO, [(p(2), ExtNat::Infinite), (p(3), ExtNat::Finite(1))]))
        );
        assert_eq!(evaluate("params(1;3->2;5->0)"), evaluate("params(1; 3->2, 5->0)"));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_lattice_expr("ploc(2) *") {
            Err(ExprError::Parse { offset: 9, expected, found }) => {
                assert!(expected.contains(&"`ploc`"));
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_lattice_expr("ploc 2"), Err(ExprError::Parse { offset: 5, .. })));
        assert!(matches!(parse_lattice_expr("id id"), Err(ExprError::Parse { offset: 3, .. })));
        assert!(matches!(parse_lattice_expr("invert{}"), Err(ExprError::Parse { offset: 7, .. })));
        assert!(matches!(parse_lattice_expr("params(0, 2->1)"), Err(ExprError::Parse { offset: 8, .. })));
        assert!(matches!(parse_lattice_expr("lift(2, -1)"), Err(ExprError::Parse { offset: 8, .. })));
        assert!(matches!(parse_lattice_expr("ploc(99999999999999999999)"), Err(ExprError::Parse { .. })));
        assert_eq!(
            parse_lattice_expr("invert{3, 3}"),
            Err(ExprError::DuplicatePrime { offset: 10, prime: p(3) })
        );
        assert!(matches!(parse_lattice_expr("params(0; 5->1, 5->2)"), Err(ExprError::DuplicatePrime { .. })));
        assert!(matches!(parse_lattice_expr("ploc(1)"), Err(ExprError::Prime { value: 1, .. })));
        assert!(matches!(parse_lattice_expr("μ"), Err(ExprError::Parse { offset: 0, .. })));
        assert!(matches!(parse_lattice_expr(""), Err(ExprError::Parse { offset: 0, .. })));
    }

    #[test]
    fn error_messages() {
        let err = parse_lattice_expr("(id").unwrap_err();
        assert_eq!(err.to_string(), "parse error at byte 3: expected `)`, found end of input");
        let err = parse_lattice_expr("ploc(9)").unwrap_err();
        assert_eq!(err.to_string(), "at byte 5: 9 is not prime");
    }
}

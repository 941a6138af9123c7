//! Text form of words and combinations.
//!
//! ```text
//! combination := ["-"] term (("+" | "-") term)* | "0"
//! term        := [coefficient ["*"]] word
//! coefficient := integer ["/" integer]
//! word        := factor ("|" factor)* | "()"
//! factor      := "W(" label ("," label)* ")"
//!              | ("F" | "AF") "(" wheel ("," wheel)* ")"
//! ```
//!
//! Whitespace is ignored between tokens.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use strip_cells::Label;
use strip_chains::Q;

use crate::wheel::ProperWheel;
use crate::word::{Factor, GeneratorWord, WordCombination};
use crate::CycleError;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CycleError> {
        Err(CycleError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), CycleError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<&'a str, CycleError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.err("expected a number");
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn label(&mut self) -> Result<Label, CycleError> {
        let start = self.pos;
        let d = self.digits()?;
        match d.parse::<Label>() {
            Ok(l) if l > 0 => Ok(l),
            _ => Err(CycleError::Parse { pos: start, msg: format!("`{d}` is not a positive label") }),
        }
    }

    fn wheel(&mut self) -> Result<ProperWheel, CycleError> {
        self.expect("W")?;
        self.expect("(")?;
        let start = self.pos;
        let mut labels = vec![self.label()?];
        while self.eat(",") {
            labels.push(self.label()?);
        }
        self.expect(")")?;
        ProperWheel::new(labels).map_err(|e| CycleError::Parse { pos: start, msg: e.to_string() })
    }

    fn factor(&mut self) -> Result<Factor, CycleError> {
        match self.peek() {
            Some('W') => Ok(Factor::Wheel(self.wheel()?)),
            Some('A') | Some('F') => {
                let averaged = self.eat("AF");
                if !averaged {
                    self.expect("F")?;
                }
                self.expect("(")?;
                let mut ws = vec![self.wheel()?];
                while self.eat(",") {
                    ws.push(self.wheel()?);
                }
                self.expect(")")?;
                if ws.len() < 2 {
                    return self.err("a filter needs at least two wheels");
                }
                Ok(if averaged { Factor::Averaged(ws) } else { Factor::Filter(ws) })
            }
            _ => self.err("expected `W(`, `F(` or `AF(`"),
        }
    }

    fn word(&mut self) -> Result<GeneratorWord, CycleError> {
        let start = self.pos;
        if self.eat("()") {
            return Ok(GeneratorWord::empty());
        }
        let mut factors = vec![self.factor()?];
        while self.eat("|") {
            factors.push(self.factor()?);
        }
        GeneratorWord::new(factors).map_err(|e| CycleError::Parse { pos: start, msg: e.to_string() })
    }

    fn coefficient(&mut self) -> Result<Option<Q>, CycleError> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let start = self.pos;
        let n: BigInt = self.digits()?.parse().expect("digits");
        let d: BigInt = if self.eat("/") { self.digits()?.parse().expect("digits") } else { 1.into() };
        if d.is_zero() {
            return Err(CycleError::Parse { pos: start, msg: "zero denominator".into() });
        }
        self.eat("*");
        Ok(Some(Q::new(n, d)))
    }

    fn combination(&mut self) -> Result<WordCombination, CycleError> {
        let mut out = WordCombination::zero();
        let mut negative = self.eat("-");
        if !negative && self.eat("0") {
            if self.at_end() {
                return Ok(out);
            }
            return self.err("unexpected input after `0`");
        }
        loop {
            let c = self.coefficient()?.unwrap_or_else(|| Q::from_integer(1.into()));
            let w = self.word()?;
            out.add_term(w, if negative { -c } else { c });
            if self.eat("+") {
                negative = false;
            } else if self.eat("-") {
                negative = true;
            } else if self.at_end() {
                return Ok(out);
            } else {
                return self.err("expected `+`, `-`, `|` or end of input");
            }
        }
    }
}

pub fn parse_word(s: &str) -> Result<GeneratorWord, CycleError> {
    let mut p = Parser::new(s);
    let w = p.word()?;
    if !p.at_end() {
        return p.err("unexpected input after word");
    }
    Ok(w)
}

pub fn parse_combination(s: &str) -> Result<WordCombination, CycleError> {
    Parser::new(s).combination()
}

impl FromStr for GeneratorWord {
    type Err = CycleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl FromStr for WordCombination {
    type Err = CycleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_combination(s)
    }
}

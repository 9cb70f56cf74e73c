//! Textual form of tower elements.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! element  := rational
//!           | "(" element " + " element "*sqrt(" element ")" ")"
//!           | "sqrt(" element ")"
//! rational := ["-"] digits ["/" digits]
//! ```
//!
//! Parsing is tower-building: each `sqrt(...)` radicand is adjoined to the
//! supplied tower, which silently normalizes radicands that are already
//! squares there (`sqrt(9/4)` parses to the rational `3/2`). Formatting is
//! canonical — fully parenthesized, reduced rationals, no redundant terms —
//! so `format` then `parse` is the identity on canonical text, and `parse`
//! then `format` is the identity on elements when parsing reuses the
//! element's own tower.
//!
//! Syntax errors report a byte offset; semantic errors from adjunction
//! (non-positive radicand, growth cap) pass through unchanged.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::rational::BigRational;
use crate::tower::{FieldTower, TowerElement};

/// Parse `input` as a single element, adjoining radicands to `tower`.
pub fn parse_element(input: &str, tower: &mut FieldTower) -> Result<TowerElement> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    let elem = p.element(tower)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(elem)
}

/// Canonical text for `elem`, resolving radicand symbols through `tower`.
pub fn format_element(tower: &FieldTower, elem: &TowerElement) -> String {
    match elem {
        TowerElement::Base(q) => format_rational(q),
        TowerElement::Ext(node) => format!(
            "({} + {}*sqrt({}))",
            format_element(tower, &node.lo),
            format_element(tower, &node.hi),
            format_element(tower, tower.radicand(node.level)),
        ),
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> CoreError {
        CoreError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{token}`")))
        }
    }

    fn try_token(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn element(&mut self, tower: &mut FieldTower) -> Result<TowerElement> {
        self.skip_ws();
        if self.try_token("sqrt(") {
            let rad = self.element(tower)?;
            self.expect(")")?;
            return adjoin(tower, &rad);
        }
        if self.try_token("(") {
            let lo = self.element(tower)?;
            self.expect("+")?;
            let hi = self.element(tower)?;
            self.expect("*")?;
            self.expect("sqrt(")?;
            let rad = self.element(tower)?;
            self.expect(")")?;
            self.expect(")")?;
            let root = adjoin(tower, &rad)?;
            let term = tower.mul(&hi, &root)?;
            return tower.add(&lo, &term);
        }
        self.rational().map(TowerElement::from_ratio)
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let negative = self.try_token("-");
        self.skip_ws();
        let numer = self.digits()?;
        let denom = if self.try_token("/") {
            self.skip_ws();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let numer = if negative { -numer } else { numer };
        Ok(BigRational::new(numer, denom))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses as integer"))
    }
}

fn adjoin(tower: &mut FieldTower, radicand: &TowerElement) -> Result<TowerElement> {
    let (extended, root) = tower.adjoin_sqrt(radicand)?;
    *tower = extended;
    Ok(root)
}

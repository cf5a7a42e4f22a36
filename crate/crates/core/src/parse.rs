//! Parser for the command-line element and monomial grammar.
//!
//! ```text
//! element   := term (('+' | '-') term)*
//! term      := ['-'] [coeff ('·' | '*')?] symbol
//! coeff     := int ['/' int]
//! symbol    := 'x+' '[' weight ';' exp ']' | 'x-' '[' weight ';' exp ']'
//!            | 'h' '[' ('mu' int | int) ';' exp ']'
//! weight    := [int] 'mu' int ('+' [int] 'mu' int)*
//! exp       := '(' int (',' int)* ')'
//! monomial  := factor+                       (separated by spaces, '·' or '*')
//! factor    := '(' symbol ')' ['^' '(' int ')'] | symbol
//!            | ('Λ' | 'L') '[' int ';' exp ';' int ']' | 'B' '[' int ';' int ']'
//! ```
//!
//! Restricted weights are written in the folded simple weights mu1, mu2, …;
//! Cartan indices are 1-based.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::integral::{IntegralForm, MGenerator};
use crate::multiloop::{LoopAlgebra, LoopElement, LoopKind, LoopSymbol};

/// A symbol as written, before validation against an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawSymbol {
    X { plus: bool, weight: Vec<(i64, usize)>, r: Vec<i64> },
    H { i: usize, r: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawFactor {
    Power(RawSymbol, u32),
    Lambda { i: usize, s: Vec<i64>, n: u32 },
    Binom { i: usize, n: u32 },
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let cs: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&cs) {
            self.pos += cs.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut r = vec![self.int()?];
        while self.eat(',') {
            r.push(self.int()?);
        }
        self.expect(')')?;
        Ok(r)
    }

    fn weight(&mut self) -> Result<Vec<(i64, usize)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let c = if self.peek().is_some_and(|c| c.is_ascii_digit()) { self.uint()? as i64 } else { 1 };
            if !self.eat_str("mu") {
                return self.err("expected 'mu'");
            }
            let i = self.uint()? as usize;
            if i == 0 {
                return self.err("weights are numbered from mu1");
            }
            out.push((c, i - 1));
            if !self.eat('+') {
                return Ok(out);
            }
        }
    }

    fn symbol(&mut self) -> Result<RawSymbol> {
        self.skip_ws();
        if self.eat_str("x+") || self.eat_str("x-") {
            let plus = self.chars[self.pos - 1] == '+';
            self.expect('[')?;
            let weight = self.weight()?;
            self.expect(';')?;
            let r = self.exponent()?;
            self.expect(']')?;
            return Ok(RawSymbol::X { plus, weight, r });
        }
        if self.eat('h') {
            self.expect('[')?;
            self.eat_str("mu");
            let i = self.uint()? as usize;
            if i == 0 {
                return self.err("Cartan indices start at 1");
            }
            self.expect(';')?;
            let r = self.exponent()?;
            self.expect(']')?;
            return Ok(RawSymbol::H { i: i - 1, r });
        }
        self.err("expected a symbol x+[..], x-[..] or h[..]")
    }

    fn coeff(&mut self) -> Result<Option<Rational>> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let n = self.uint()? as i64;
        let c = if self.eat('/') {
            let d = self.uint()? as i64;
            if d == 0 {
                return self.err("zero denominator");
            }
            Rational::new(n, d)
        } else {
            Rational::integer(n)
        };
        if !self.eat('·') {
            self.eat('*');
        }
        Ok(Some(c))
    }

    fn factor(&mut self) -> Result<RawFactor> {
        self.skip_ws();
        if self.eat('(') {
            let s = self.symbol()?;
            self.expect(')')?;
            let n = if self.eat('^') {
                self.expect('(')?;
                let n = self.uint()?;
                self.expect(')')?;
                n as u32
            } else {
                1
            };
            return Ok(RawFactor::Power(s, n));
        }
        if self.eat('Λ') || self.eat('L') {
            self.expect('[')?;
            let i = self.uint()? as usize;
            self.expect(';')?;
            let s = self.exponent()?;
            self.expect(';')?;
            let n = self.uint()? as u32;
            self.expect(']')?;
            if i == 0 {
                return self.err("Cartan indices start at 1");
            }
            return Ok(RawFactor::Lambda { i: i - 1, s, n });
        }
        if self.eat('B') {
            self.expect('[')?;
            let i = self.uint()? as usize;
            self.expect(';')?;
            let n = self.uint()? as u32;
            self.expect(']')?;
            if i == 0 {
                return self.err("Cartan indices start at 1");
            }
            return Ok(RawFactor::Binom { i: i - 1, n });
        }
        Ok(RawFactor::Power(self.symbol()?, 1))
    }
}

/// Parses an element expression into raw (coefficient, symbol) terms.
pub fn parse_element_raw(src: &str) -> Result<Vec<(Rational, RawSymbol)>> {
    let mut c = Cursor::new(src);
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let neg = if first {
            c.eat('-')
        } else if c.eat('+') {
            false
        } else if c.eat('-') {
            true
        } else {
            return c.err("expected '+' or '-'");
        };
        first = false;
        let coeff = c.coeff()?.unwrap_or_else(Rational::one);
        let s = c.symbol()?;
        terms.push((if neg { -coeff } else { coeff }, s));
        if c.at_end() {
            return Ok(terms);
        }
    }
}

/// Parses a product of generators.
pub fn parse_monomial_raw(src: &str) -> Result<Vec<RawFactor>> {
    let mut c = Cursor::new(src);
    let mut out = Vec::new();
    while !c.at_end() {
        if !out.is_empty() && !c.eat('·') {
            c.eat('*');
        }
        out.push(c.factor()?);
    }
    if out.is_empty() {
        return c.err("empty monomial");
    }
    Ok(out)
}

fn render_raw(s: &RawSymbol) -> String {
    match s {
        RawSymbol::X { plus, weight, r } => {
            let w: Vec<String> = weight
                .iter()
                .map(|(c, i)| if *c == 1 { format!("mu{}", i + 1) } else { format!("{c}mu{}", i + 1) })
                .collect();
            format!("x{}[{};{}]", if *plus { '+' } else { '-' }, w.join("+"), LoopAlgebra::render_exponent(r))
        }
        RawSymbol::H { i, r } => format!("h[mu{};{}]", i + 1, LoopAlgebra::render_exponent(r)),
    }
}

/// Resolves a raw symbol against an algebra (InvalidSymbol when it is not a basis element).
pub fn resolve_symbol(alg: &LoopAlgebra, s: &RawSymbol) -> Result<LoopSymbol> {
    let invalid = || Error::InvalidSymbol(render_raw(s));
    match s {
        RawSymbol::X { plus, weight, r } => {
            let mut mu = vec![0; alg.rank0()];
            for &(c, i) in weight {
                *mu.get_mut(i).ok_or_else(invalid)? += c;
            }
            let w = alg.tt.weight_index(&mu).ok_or_else(invalid)?;
            let kind = if *plus { LoopKind::XPlus(w) } else { LoopKind::XMinus(w) };
            alg.symbol(kind, r.clone()).map_err(|_| invalid())
        }
        RawSymbol::H { i, r } => {
            if *i >= alg.rank0() {
                return Err(invalid());
            }
            alg.h(*i, r.clone()).map_err(|_| invalid())
        }
    }
}

pub fn parse_element(alg: &LoopAlgebra, src: &str) -> Result<LoopElement> {
    let mut e = LoopElement::zero();
    for (c, s) in parse_element_raw(src)? {
        e.add_term(resolve_symbol(alg, &s)?, c);
    }
    Ok(e)
}

pub fn parse_generators(f: &IntegralForm, src: &str) -> Result<Vec<MGenerator>> {
    let zero = vec![0; f.alg().m];
    parse_monomial_raw(src)?
        .into_iter()
        .map(|rf| match rf {
            RawFactor::Power(s, n) => {
                let sym = resolve_symbol(f.alg(), &s)?;
                if sym.is_cartan() {
                    if sym.r() != zero.as_slice() {
                        return Err(Error::InvalidSymbol(format!(
                            "{}: write Λ[i;(r);1] for Cartan elements with r ≠ 0",
                            render_raw(&s)
                        )));
                    }
                    let LoopKind::H(i) = sym.kind() else { unreachable!() };
                    if n != 1 {
                        return Err(Error::InvalidSymbol(format!("{}: write B[i;n] for binomials", render_raw(&s))));
                    }
                    return f.h_binom(i, 1);
                }
                f.divided_power(&sym, n)
            }
            RawFactor::Lambda { i, s, n } => {
                if i >= f.alg().rank0() {
                    return Err(Error::InvalidSymbol(format!("Λ[{};..]", i + 1)));
                }
                f.lambda_gen(i, &s, n)
            }
            RawFactor::Binom { i, n } => {
                if i >= f.alg().rank0() {
                    return Err(Error::InvalidSymbol(format!("B[{};{n}]", i + 1)));
                }
                f.h_binom(i, n)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::TypeLabel;

    #[test]
    fn symbols_and_errors() {
        let alg = LoopAlgebra::standard(TypeLabel::A, 3, 2, 1).unwrap();
        let e = parse_element(&alg, "x+[mu1+mu2;(1)] - 2·h[1;(0)] + 1/2 x-[2mu1+mu2;(0)]").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(alg.render(&e), "1/2·x-[2mu1+mu2;(0)] - 2·h[mu1;(0)] + x+[mu1+mu2;(1)]");
        assert!(matches!(parse_element(&alg, "x+[mu1;(0)"), Err(Error::Parse { pos: 10, .. })));
        assert!(matches!(parse_element(&alg, "y[mu1;(0)]"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element(&alg, "x+[mu2;(1)]"), Err(Error::InvalidSymbol(_))));
        assert!(matches!(parse_element(&alg, "x+[mu1;(0,1)]"), Err(Error::InvalidSymbol(_))));
    }

    #[test]
    fn monomials() {
        let f = IntegralForm::standard(TypeLabel::A, 2, 2, 1).unwrap();
        let g = parse_generators(&f, "(x+[mu1;(0)])^(2) Λ[1;(1);1] · B[1;2] x-[2mu1;(1)]").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(f.render_generator(&g[1]), "Λ[1;(1);1]");
        assert!(matches!(parse_generators(&f, "L[1;(2);1]"), Err(Error::InvalidSymbol(_))));
        assert!(matches!(parse_generators(&f, "(x+[mu1;(0)])^("), Err(Error::Parse { .. })));
    }
}

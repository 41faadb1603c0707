//! Text grammar and JSON encoding for multivectors.
//!
//! ```text
//! mv       := term (('+' | '-') term)*
//! term     := rational ['*' blade] | blade
//! rational := integer ['/' positive-integer]
//! blade    := 'e{' index (',' index)* '}' | 'e' digit+
//! ```
//!
//! A leading sign is allowed. The compact form `e14` spells one index per digit.
//! Indices written out of order are sorted, picking up the permutation sign.
//! Canonical output uses the bracketed form with terms in canonical blade order.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Blade, Multivector, Rational, Signature};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// Canonical text of a multivector; `0` for zero.
pub fn render_multivector(x: &Multivector) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (blade, c)) in x.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if blade.is_scalar() {
            write!(out, "{magnitude}").unwrap();
        } else if magnitude.is_one() {
            write!(out, "{blade}").unwrap();
        } else {
            write!(out, "{magnitude}*{blade}").unwrap();
        }
    }
    out
}

/// Parses the text grammar into a multivector of signature `sig`.
pub fn parse_multivector(text: &str, sig: Signature) -> Result<Multivector> {
    let mut parser = Parser::new(text);
    let mv = parser.multivector(sig)?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected character '{c}'")));
    }
    Ok(mv)
}

/// Parses a comma separated list of blades such as `e13,e24` or `e{1,3},e{2,4}`.
///
/// Each blade must be written with increasing indices.
pub fn parse_generators(text: &str, sig: Signature) -> Result<Vec<Blade>> {
    let mut parser = Parser::new(text);
    let mut out = Vec::new();
    loop {
        parser.skip_ws();
        let start = parser.position();
        let (sign, blade) = parser.blade(sig)?;
        if sign < 0 {
            return Err(parser.error_at(start, "generator indices must be increasing".into()));
        }
        out.push(blade);
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(',') => parser.bump(),
            Some(c) => return Err(parser.error(format!("expected ',' but found '{c}'"))),
        }
    }
    Ok(out)
}

/// Parses `P,Q`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("signature must look like P,Q, got '{text}'"),
    };
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    let q: usize = q.trim().parse().map_err(|_| bad())?;
    Signature::new(p, q)
}

#[derive(Clone, Copy)]
struct Pos {
    offset: usize,
    line: usize,
    column: usize,
}

struct Parser {
    chars: Vec<char>,
    pos: Pos,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: Pos {
                offset: 0,
                line: 1,
                column: 1,
            },
        }
    }

    fn position(&self) -> Pos {
        self.pos
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos.offset).copied()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos.offset += 1;
            if c == '\n' {
                self.pos.line += 1;
                self.pos.column = 1;
            } else {
                self.pos.column += 1;
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: String) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: Pos, message: String) -> Error {
        Error::Parse {
            line: pos.line,
            column: pos.column,
            message,
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}' but found '{c}'"))),
            None => Err(self.error(format!("expected '{want}' but reached end of input"))),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a digit but found '{c}'")),
                None => self.error("expected a digit but reached end of input".into()),
            });
        }
        Ok(s)
    }

    fn multivector(&mut self, sig: Signature) -> Result<Multivector> {
        let mut total = Multivector::zero(sig);
        self.skip_ws();
        let mut negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            self.skip_ws();
            let (coeff, blade) = self.term(sig)?;
            let coeff = if negative { -coeff } else { coeff };
            total = &total + &Multivector::term(sig, blade, coeff);
            self.skip_ws();
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => break,
            }
            self.bump();
        }
        Ok(total)
    }

    fn term(&mut self, sig: Signature) -> Result<(Rational, Blade)> {
        match self.peek() {
            Some('e') => {
                let (sign, blade) = self.blade(sig)?;
                Ok((Rational::from_integer(BigInt::from(sign)), blade))
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.rational()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.bump();
                    self.skip_ws();
                    let (sign, blade) = self.blade(sig)?;
                    Ok((value * Rational::from_integer(BigInt::from(sign)), blade))
                } else {
                    Ok((value, Blade::SCALAR))
                }
            }
            Some(c) => Err(self.error(format!("expected a term but found '{c}'"))),
            None => Err(self.error("expected a term but reached end of input".into())),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num: BigInt = self.digits()?.parse().expect("ascii digits");
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        self.skip_ws();
        let at = self.position();
        let den: BigInt = self.digits()?.parse().expect("ascii digits");
        if den.is_zero() {
            return Err(self.error_at(at, "zero denominator".into()));
        }
        Ok(Rational::new(num, den))
    }

    /// Returns the reordering sign together with the canonical blade.
    fn blade(&mut self, sig: Signature) -> Result<(i32, Blade)> {
        let start = self.position();
        self.expect('e')?;
        let mut indices: Vec<(usize, Pos)> = Vec::new();
        if self.peek() == Some('{') {
            self.bump();
            loop {
                self.skip_ws();
                let at = self.position();
                let index: usize = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.error_at(at, "index too large".into()))?;
                indices.push((index, at));
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.bump(),
                    Some('}') => {
                        self.bump();
                        break;
                    }
                    Some(c) => {
                        return Err(self.error(format!("expected ',' or '}}' but found '{c}'")))
                    }
                    None => return Err(self.error("unterminated blade".into())),
                }
            }
        } else {
            let at = self.position();
            let digits = self.digits()?;
            for (i, d) in digits.chars().enumerate() {
                let pos = Pos {
                    offset: at.offset + i,
                    line: at.line,
                    column: at.column + i,
                };
                indices.push((d.to_digit(10).unwrap() as usize, pos));
            }
        }
        let mut bits = 0u32;
        for &(index, at) in &indices {
            if index == 0 || index > sig.dim() {
                return Err(self.error_at(
                    at,
                    format!(
                        "index {index} outside 1..={} for signature {sig}",
                        sig.dim()
                    ),
                ));
            }
            if bits & 1 << (index - 1) != 0 {
                return Err(self.error_at(at, format!("repeated index {index}")));
            }
            bits |= 1 << (index - 1);
        }
        let order: Vec<usize> = indices.iter().map(|&(i, _)| i).collect();
        let inversions = (0..order.len())
            .flat_map(|a| (a + 1..order.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| order[a] > order[b])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        if bits == 0 {
            return Err(self.error_at(start, "empty blade".into()));
        }
        Ok((sign, Blade::from_bits(bits)))
    }
}

// ---- JSON ----

fn big_number(n: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&n.to_string()).expect("integer literal")
}

fn number_to_big<E: serde::de::Error>(n: &serde_json::Number) -> std::result::Result<BigInt, E> {
    BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("expected an integer, got {n}")))
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.p(), self.q()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[usize; 2]>::deserialize(d)?;
        Signature::new(p, q).map_err(D::Error::custom)
    }
}

impl Serialize for Blade {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Blade {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(d)?;
        Blade::from_indices(&indices).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    indices: Vec<usize>,
    num: serde_json::Number,
    den: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct MultivectorJson {
    signature: Signature,
    terms: Vec<TermJson>,
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(b, c)| TermJson {
                indices: b.indices(),
                num: big_number(c.numer()),
                den: big_number(c.denom()),
            })
            .collect();
        MultivectorJson {
            signature: self.signature(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MultivectorJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let num = number_to_big::<D::Error>(&t.num)?;
            let den = number_to_big::<D::Error>(&t.den)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            let blade = Blade::from_indices(&t.indices).map_err(D::Error::custom)?;
            terms.push((blade, Rational::new(num, den)));
        }
        Multivector::from_terms(raw.signature, terms).map_err(D::Error::custom)
    }
}

/// Matrix entries are written as rational strings such as `"-1"` or `"1/2"`.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        Rational::from_str(x)
                            .ok()
                            .filter(|_| !x.ends_with("/0"))
                            .ok_or_else(|| D::Error::custom(format!("bad rational '{x}'")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RationalMatrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

//! Signatures of non-Euclidean crystallographic groups: parsing, canonical
//! printing, validation and the combinatorial counts every other module is
//! built on.
//!
//! A signature bundles a sign, a genus, a cusp count, a list of periods and a
//! list of period cycles. The text form is
//! `(g,s,+,[m1,...,mr],{(n11,...),(),...})`, with the bracket shorthand
//! `[g,s;m1,...,mr]` for signatures without period cycles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The full signature datum. Periods and cycles keep their input order;
/// downstream index conventions refer to that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub sign: Sign,
    pub genus: u64,
    pub cusps: u64,
    pub periods: Vec<u64>,
    pub cycles: Vec<Vec<u64>>,
}

/// Counts derived from a signature, in the notation used throughout:
/// `r` periods, `s` cusps, `k` non-empty cycles, `d` empty cycles,
/// `c_e`/`c_t` even/odd cycle periods, `c_o` non-empty all-odd cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivedCounts {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub d: usize,
    pub c_e: usize,
    pub c_t: usize,
    pub c_o: usize,
    pub sum_si: usize,
}

/// Which of the three computation regimes a signature falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupCase {
    /// Orientable, no cusps, no period cycles (cocompact Fuchsian).
    CocompactFuchsian,
    /// Orientable with at least one cusp or boundary component.
    OrientableWithPeriphery,
    /// Non-orientable quotient.
    NonOrientable,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("period {0} is smaller than 2")]
    BadPeriod(u64),
    #[error("non-orientable signatures need genus at least 1")]
    NonOrientableGenusZero,
    #[error("signature is not hyperbolic (measure {0})")]
    NotHyperbolic(BigRational),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl Signature {
    pub fn new(
        sign: Sign,
        genus: u64,
        cusps: u64,
        periods: Vec<u64>,
        cycles: Vec<Vec<u64>>,
    ) -> Self {
        Signature { sign, genus, cusps, periods, cycles }
    }

    /// Fuchsian signature `[g,s;m1,...,mr]`.
    pub fn fuchsian(genus: u64, cusps: u64, periods: Vec<u64>) -> Self {
        Signature::new(Sign::Plus, genus, cusps, periods, Vec::new())
    }

    pub fn derived_counts(&self) -> DerivedCounts {
        let mut c_e = 0;
        let mut c_t = 0;
        let mut c_o = 0;
        let mut k = 0;
        let mut d = 0;
        let mut sum_si = 0;
        for cycle in &self.cycles {
            if cycle.is_empty() {
                d += 1;
                continue;
            }
            k += 1;
            sum_si += cycle.len();
            let evens = cycle.iter().filter(|&&n| n % 2 == 0).count();
            c_e += evens;
            c_t += cycle.len() - evens;
            if evens == 0 {
                c_o += 1;
            }
        }
        DerivedCounts {
            r: self.periods.len(),
            s: self.cusps as usize,
            k,
            d,
            c_e,
            c_t,
            c_o,
            sum_si,
        }
    }

    /// The hyperbolicity measure: positive exactly when an NEC group with
    /// this signature exists. For sign `+` it is
    /// `2g - 2 + s + r + d + k + (sum s_i)/2 - sum 1/m_j - (sum 1/n_il)/2`,
    /// with `2g` replaced by `g` for sign `-`.
    pub fn hyperbolic_measure(&self) -> BigRational {
        let c = self.derived_counts();
        let genus_term = match self.sign {
            Sign::Plus => 2 * self.genus,
            Sign::Minus => self.genus,
        };
        let mut mu = BigRational::from_integer(BigInt::from(
            genus_term as i64 - 2
                + c.s as i64
                + c.r as i64
                + c.d as i64
                + c.k as i64,
        ));
        mu += BigRational::new(BigInt::from(c.sum_si), BigInt::from(2));
        for &m in &self.periods {
            mu -= BigRational::new(BigInt::one(), BigInt::from(m));
        }
        for cycle in &self.cycles {
            for &n in cycle {
                mu -= BigRational::new(BigInt::one(), BigInt::from(2 * n));
            }
        }
        mu
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        for &m in &self.periods {
            if m < 2 {
                return Err(ValidationError::BadPeriod(m));
            }
        }
        for cycle in &self.cycles {
            for &n in cycle {
                if n < 2 {
                    return Err(ValidationError::BadPeriod(n));
                }
            }
        }
        if self.sign == Sign::Minus && self.genus == 0 {
            return Err(ValidationError::NonOrientableGenusZero);
        }
        let mu = self.hyperbolic_measure();
        if !mu.is_positive() {
            return Err(ValidationError::NotHyperbolic(mu));
        }
        Ok(())
    }

    pub fn case(&self) -> GroupCase {
        match self.sign {
            Sign::Minus => GroupCase::NonOrientable,
            Sign::Plus => {
                if self.cusps == 0 && self.cycles.is_empty() {
                    GroupCase::CocompactFuchsian
                } else {
                    GroupCase::OrientableWithPeriphery
                }
            }
        }
    }

    /// Orientable with no period cycles (cusps allowed).
    pub fn is_fuchsian(&self) -> bool {
        self.sign == Sign::Plus && self.cycles.is_empty()
    }

    pub fn parse(text: &str) -> Result<Signature, ParseError> {
        Parser::new(text).parse()
    }
}

impl fmt::Display for Signature {
    /// Canonical text form; `Signature::parse` of the output returns the
    /// same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "({},{},{},[", self.genus, self.cusps, sign)?;
        for (i, m) in self.periods.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "],{{")?;
        for (i, cycle) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, n) in cycle.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{n}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}})")
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn parse(mut self) -> Result<Signature, ParseError> {
        self.skip_ws();
        let sig = match self.peek() {
            Some(b'(') => self.parse_nec()?,
            Some(b'[') => self.parse_fuchsian()?,
            _ => return Err(self.err("expected '(' or '['")),
        };
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input after signature"));
        }
        Ok(sig)
    }

    fn parse_nec(&mut self) -> Result<Signature, ParseError> {
        self.expect(b'(')?;
        let genus = self.parse_int()?;
        self.expect(b',')?;
        let cusps = self.parse_int()?;
        self.expect(b',')?;
        let sign = self.parse_sign()?;
        self.expect(b',')?;
        let periods = self.parse_period_list(b'[', b']')?;
        self.expect(b',')?;
        self.expect(b'{')?;
        let mut cycles = Vec::new();
        self.skip_ws();
        if self.peek() != Some(b'}') {
            loop {
                cycles.push(self.parse_period_list(b'(', b')')?);
                self.skip_ws();
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b'}')?;
        self.expect(b')')?;
        Ok(Signature::new(sign, genus, cusps, periods, cycles))
    }

    fn parse_fuchsian(&mut self) -> Result<Signature, ParseError> {
        self.expect(b'[')?;
        let genus = self.parse_int()?;
        self.expect(b',')?;
        let cusps = self.parse_int()?;
        self.expect(b';')?;
        let mut periods = Vec::new();
        self.skip_ws();
        if self.peek() != Some(b']') {
            loop {
                periods.push(self.parse_period()?);
                self.skip_ws();
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b']')?;
        Ok(Signature::fuchsian(genus, cusps, periods))
    }

    fn parse_period_list(&mut self, open: u8, close: u8) -> Result<Vec<u64>, ParseError> {
        self.expect(open)?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() != Some(close) {
            loop {
                out.push(self.parse_period()?);
                self.skip_ws();
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(close)?;
        Ok(out)
    }

    fn parse_period(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let v = self.parse_int()?;
        if v < 2 {
            self.pos = start;
            return Err(self.err(&format!("period {v} is smaller than 2")));
        }
        Ok(v)
    }

    fn parse_sign(&mut self) -> Result<Sign, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Ok(Sign::Plus)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Sign::Minus)
            }
            // Tolerate the typeset minus sign on input.
            _ if self.text[self.pos..].starts_with('\u{2212}') => {
                self.pos += '\u{2212}'.len_utf8();
                Ok(Sign::Minus)
            }
            _ => Err(self.err("expected sign '+' or '-'")),
        }
    }

    fn parse_int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| ParseError { position: start, message: "integer too large".into() })
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.to_string() }
    }
}

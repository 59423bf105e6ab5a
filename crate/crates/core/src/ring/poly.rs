//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically with the first
/// variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// All monomials of total degree at most `max_degree`, ascending.
    pub fn up_to_degree(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut layer = Vec::new();
            compositions(nvars, d, &mut Vec::with_capacity(nvars), &mut layer);
            layer.sort();
            out.extend(layer);
        }
        out
    }
}

fn compositions(nvars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(remaining);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in 0..=remaining {
        prefix.push(e);
        compositions(nvars, remaining - e, prefix, out);
        prefix.pop();
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Leading term under a graded-lex order in which variables are
    /// compared in the order given by `precedence`.
    pub fn leading_term_by(&self, precedence: &[usize]) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            a.degree().cmp(&b.degree()).then_with(|| {
                precedence
                    .iter()
                    .map(|&i| a.0[i].cmp(&b.0[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
        })
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let is_unit = abs.is_one();
            let mut factors: Vec<String> = Vec::new();
            if !is_unit || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }

    pub fn parse(src: &str, vars: &[String]) -> Result<Poly> {
        Parser::new(src, vars).parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a [String]) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            vars,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        let n = self.vars.len();
        let mut acc = Poly::zero();
        let mut sign = BigRational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.err("empty input")),
            _ => {}
        }
        loop {
            let (m, c) = self.term(n)?;
            acc.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(acc),
                Some('+') => sign = BigRational::one(),
                Some('-') => sign = -BigRational::one(),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self, n: usize) -> Result<(Monomial, BigRational)> {
        let mut m = Monomial::one(n);
        let mut c = BigRational::one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => c *= self.number()?,
                Some(ch) if ch.is_alphabetic() || ch == '_' => {
                    let name = self.ident();
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.uint()?;
                    }
                    m.0[idx] += e;
                }
                _ => return Err(self.err("expected a number or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((m, c));
            }
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn uint(&mut self) -> Result<u32> {
        let d = self.digits();
        d.parse().map_err(|_| self.err("expected an exponent"))
    }

    fn number(&mut self) -> Result<BigRational> {
        let num: BigInt = self.digits().parse().map_err(|_| self.err("bad number"))?;
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            let den: BigInt = self
                .digits()
                .parse()
                .map_err(|_| self.err("bad denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vec<String> {
        vec!["X".into(), "Y".into()]
    }

    #[test]
    fn graded_lex_ascending_enumeration() {
        let ms = Monomial::up_to_degree(2, 2);
        let rendered: Vec<String> = ms
            .iter()
            .map(|m| Poly::term(m.clone(), BigRational::one()).render(&xy()))
            .collect();
        assert_eq!(rendered, ["1", "Y", "X", "Y^2", "X*Y", "X^2"]);
    }

    #[test]
    fn parse_render_roundtrip() {
        let p = Poly::parse("X^2*Y - 3/2*X + 1 + X", &xy()).unwrap();
        assert_eq!(p.render(&xy()), "X^2*Y - 1/2*X + 1");
        assert_eq!(Poly::parse(&p.render(&xy()), &xy()).unwrap(), p);
        assert!(Poly::parse("X - X", &xy()).unwrap().is_zero());
        assert!(Poly::parse("Z", &xy()).is_err());
        assert!(Poly::parse("", &xy()).is_err());
    }

    #[test]
    fn product_cancels_and_canonicalises() {
        let v = xy();
        let a = Poly::parse("X + Y", &v).unwrap();
        let b = Poly::parse("X - Y", &v).unwrap();
        assert_eq!(a.mul(&b).render(&v), "X^2 - Y^2");
        let x = Poly::parse("X", &v).unwrap();
        let xy_ = Poly::parse("X*Y", &v).unwrap();
        assert_eq!(x.mul(&xy_).render(&v), "X^2*Y");
    }
}

//! Commutative rings with 1 and their elements.
//!
//! Five backends are supported: residues modulo `n`, finite products,
//! the integers, polynomials over the rationals, and rings given by Cayley
//! tables. Elements are kept in canonical form so that equality is
//! structural.

mod ideal;
mod integer;
mod poly;
mod table;
mod window;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::Value as Json;

use crate::error::{Error, Result};

pub use ideal::{is_prime_ideal, Ideal, PrimeCheck, PrimeWitness};
pub use integer::Integer;
pub use poly::{Monomial, Poly};
pub use table::{FiniteTables, TableRing};
pub use window::Window;

/// Largest finite ring for which index tables are materialised.
pub const MAX_TABLE_SIZE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Modular(u64),
    Product(Vec<Ring>),
    Integers,
    Polynomial { vars: Vec<String> },
    Table(TableRing),
}

/// A ring element in canonical form for its backend.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Elem {
    Residue(u64),
    Tuple(Vec<Elem>),
    Int(Integer),
    Poly(Poly),
    Index(usize),
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(Integer::from(v))
    }

    pub fn as_int(&self) -> Option<&Integer> {
        match self {
            Elem::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Elem::Poly(p) => Some(p),
            _ => None,
        }
    }
}

fn mismatch(op: &str) -> Error {
    Error::structural(format!("operand of `{op}` does not belong to the ring"))
}

impl Ring {
    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::structural(format!("modulus must be at least 2, got {n}")));
        }
        Ok(Ring::Modular(n))
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::structural("product ring needs at least one factor"));
        }
        if let Some(f) = factors.iter().find(|f| !f.is_finite()) {
            return Err(Error::structural(format!(
                "product factors must be finite, got {f}"
            )));
        }
        Ok(Ring::Product(factors))
    }

    pub fn polynomial<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::structural("polynomial ring needs at least one variable"));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::structural(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::structural(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring::Polynomial { vars })
    }

    pub fn table(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: Option<usize>,
        one: Option<usize>,
    ) -> Result<Ring> {
        TableRing::new(add, mul, zero, one).map(Ring::Table)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::Modular(_) | Ring::Product(_) | Ring::Table(_))
    }

    /// Number of elements for finite backends.
    pub fn size(&self) -> Option<usize> {
        match self {
            Ring::Modular(n) => usize::try_from(*n).ok(),
            Ring::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.size()?)),
            Ring::Table(t) => Some(t.size()),
            Ring::Integers | Ring::Polynomial { .. } => None,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Ring::Polynomial { vars } => vars.len(),
            _ => 0,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            Ring::Polynomial { vars } => vars,
            _ => &[],
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Modular(n), Elem::Residue(r)) => r < n,
            (Ring::Product(fs), Elem::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::Polynomial { vars }, Elem::Poly(p)) => {
                p.terms().all(|(m, _)| m.0.len() == vars.len())
            }
            (Ring::Table(t), Elem::Index(i)) => *i < t.size(),
            _ => false,
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::structural(format!("element {x:?} is not in ring {self}")))
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Modular(_) => Elem::Residue(0),
            Ring::Product(fs) => Elem::Tuple(fs.iter().map(Ring::zero).collect()),
            Ring::Integers => Elem::Int(Integer::zero()),
            Ring::Polynomial { .. } => Elem::Poly(Poly::zero()),
            Ring::Table(t) => Elem::Index(t.zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Ring::Modular(_) => Elem::Residue(1),
            Ring::Product(fs) => Elem::Tuple(fs.iter().map(Ring::one).collect()),
            Ring::Integers => Elem::Int(Integer::one()),
            Ring::Polynomial { vars } => {
                Elem::Poly(Poly::constant(vars.len(), BigRational::one()))
            }
            Ring::Table(t) => Elem::Index(t.one()),
        }
    }

    pub fn minus_one(&self) -> Elem {
        self.neg_in(&self.one())
    }

    /// Embedding of an integer via repeated addition of 1.
    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Ring::Modular(n) => Elem::Residue((v as i128).rem_euclid(*n as i128) as u64),
            Ring::Product(fs) => Elem::Tuple(fs.iter().map(|f| f.from_i64(v)).collect()),
            Ring::Integers => Elem::int(v),
            Ring::Polynomial { vars } => Elem::Poly(Poly::constant(
                vars.len(),
                BigRational::from_integer(BigInt::from(v)),
            )),
            Ring::Table(t) => Elem::Index(t.from_i64(v)),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(mismatch("add"));
        }
        Ok(self.add_in(a, b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(mismatch("mul"));
        }
        Ok(self.mul_in(a, b))
    }

    pub fn neg(&self, a: &Elem) -> Result<Elem> {
        if !self.contains(a) {
            return Err(mismatch("neg"));
        }
        Ok(self.neg_in(a))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn eq(&self, a: &Elem, b: &Elem) -> Result<bool> {
        if !self.contains(a) || !self.contains(b) {
            return Err(mismatch("eq"));
        }
        Ok(a == b)
    }

    // Unchecked variants for operands already known to be ring members.

    pub(crate) fn add_in(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Modular(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Ring::Product(fs), Elem::Tuple(xs), Elem::Tuple(ys)) => Elem::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.add_in(x, y))
                    .collect(),
            ),
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x.add(y)),
            (Ring::Polynomial { .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y)),
            (Ring::Table(t), Elem::Index(x), Elem::Index(y)) => Elem::Index(t.add(*x, *y)),
            _ => panic!("add: operands {a:?}, {b:?} outside ring {self}"),
        }
    }

    pub(crate) fn mul_in(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Modular(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (Ring::Product(fs), Elem::Tuple(xs), Elem::Tuple(ys)) => Elem::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.mul_in(x, y))
                    .collect(),
            ),
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x.mul(y)),
            (Ring::Polynomial { .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.mul(y)),
            (Ring::Table(t), Elem::Index(x), Elem::Index(y)) => Elem::Index(t.mul(*x, *y)),
            _ => panic!("mul: operands {a:?}, {b:?} outside ring {self}"),
        }
    }

    pub(crate) fn neg_in(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::Modular(n), Elem::Residue(x)) => Elem::Residue((n - x) % n),
            (Ring::Product(fs), Elem::Tuple(xs)) => {
                Elem::Tuple(fs.iter().zip(xs).map(|(f, x)| f.neg_in(x)).collect())
            }
            (Ring::Integers, Elem::Int(x)) => Elem::Int(x.neg()),
            (Ring::Polynomial { .. }, Elem::Poly(x)) => Elem::Poly(x.neg()),
            (Ring::Table(t), Elem::Index(x)) => Elem::Index(t.neg(*x)),
            _ => panic!("neg: operand {a:?} outside ring {self}"),
        }
    }

    pub(crate) fn sub_in(&self, a: &Elem, b: &Elem) -> Elem {
        self.add_in(a, &self.neg_in(b))
    }

    /// Every element exactly once, in the canonical order: residues
    /// ascending, tuples lexicographic, table indices ascending.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        match self {
            Ring::Modular(n) => Ok((0..*n).map(Elem::Residue).collect()),
            Ring::Table(t) => Ok((0..t.size()).map(Elem::Index).collect()),
            Ring::Product(fs) => {
                let mut acc: Vec<Vec<Elem>> = vec![Vec::new()];
                for f in fs {
                    let fe = f.elements()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            fe.iter().map(move |e| {
                                let mut p = prefix.clone();
                                p.push(e.clone());
                                p
                            })
                        })
                        .collect();
                }
                Ok(acc.into_iter().map(Elem::Tuple).collect())
            }
            Ring::Integers | Ring::Polynomial { .. } => Err(Error::unsupported(format!(
                "cannot enumerate the infinite ring {self}"
            ))),
        }
    }

    /// Position of `x` in [`Ring::elements`] order.
    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        match (self, x) {
            (Ring::Modular(n), Elem::Residue(r)) if r < n => usize::try_from(*r).ok(),
            (Ring::Table(t), Elem::Index(i)) if *i < t.size() => Some(*i),
            (Ring::Product(fs), Elem::Tuple(xs)) if fs.len() == xs.len() => {
                let mut idx = 0usize;
                for (f, x) in fs.iter().zip(xs) {
                    idx = idx.checked_mul(f.size()?)?.checked_add(f.index_of(x)?)?;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    /// Integral domain: no zero divisors, 0 ≠ 1.
    pub fn is_integral_domain(&self) -> bool {
        match self {
            Ring::Integers | Ring::Polynomial { .. } => true,
            Ring::Modular(n) => is_prime_u64(*n),
            Ring::Product(fs) => fs.len() == 1 && fs[0].is_integral_domain(),
            Ring::Table(_) => match self.tables() {
                Ok(t) => t.is_integral_domain(),
                Err(_) => false,
            },
        }
    }

    /// A finite integral domain is a field; the infinite backends are not.
    pub fn is_field(&self) -> bool {
        self.is_finite() && self.is_integral_domain()
    }

    /// Index tables for a finite ring.
    pub fn tables(&self) -> Result<FiniteTables> {
        FiniteTables::build(self)
    }

    pub fn render(&self, x: &Elem) -> String {
        match (self, x) {
            (Ring::Polynomial { vars }, Elem::Poly(p)) => p.render(vars),
            (Ring::Product(fs), Elem::Tuple(xs)) => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.render(x)).collect();
                format!("({})", parts.join(","))
            }
            (_, Elem::Residue(r)) => r.to_string(),
            (_, Elem::Int(i)) => i.to_string(),
            (_, Elem::Index(i)) => i.to_string(),
            (_, other) => format!("{other:?}"),
        }
    }

    /// Parses an element from its JSON form: a number for residues,
    /// integers and table indices; an array for tuples; a number or a
    /// string expression for polynomials.
    pub fn parse_elem(&self, v: &Json) -> Result<Elem> {
        let bad = || Error::Parse(format!("cannot read {v} as an element of {self}"));
        let elem = match self {
            Ring::Modular(n) => {
                let k = json_integer(v).ok_or_else(bad)?;
                Elem::Residue(k.rem_euclid(*n))
            }
            Ring::Integers => Elem::Int(json_integer(v).ok_or_else(bad)?),
            Ring::Table(t) => {
                let k = v.as_u64().ok_or_else(bad)? as usize;
                if k >= t.size() {
                    return Err(bad());
                }
                Elem::Index(k)
            }
            Ring::Product(fs) => {
                let arr = v.as_array().ok_or_else(bad)?;
                if arr.len() != fs.len() {
                    return Err(bad());
                }
                Elem::Tuple(
                    fs.iter()
                        .zip(arr)
                        .map(|(f, x)| f.parse_elem(x))
                        .collect::<Result<_>>()?,
                )
            }
            Ring::Polynomial { vars } => match v {
                Json::String(s) => Elem::Poly(Poly::parse(s, vars)?),
                _ => {
                    let k = json_integer(v).ok_or_else(bad)?;
                    Elem::Poly(Poly::constant(
                        vars.len(),
                        BigRational::from_integer(k.to_big()),
                    ))
                }
            },
        };
        Ok(elem)
    }

    pub fn elem_to_json(&self, x: &Elem) -> Json {
        match (self, x) {
            (Ring::Product(fs), Elem::Tuple(xs)) => {
                Json::Array(fs.iter().zip(xs).map(|(f, x)| f.elem_to_json(x)).collect())
            }
            (_, Elem::Residue(r)) => Json::from(*r),
            (_, Elem::Index(i)) => Json::from(*i),
            (_, Elem::Int(i)) => match i.as_i64() {
                Some(v) => Json::from(v),
                None => Json::String(i.to_string()),
            },
            _ => Json::String(self.render(x)),
        }
    }

    pub fn describe(&self) -> Json {
        match self {
            Ring::Modular(n) => serde_json::json!({"kind": "modular", "n": n}),
            Ring::Integers => serde_json::json!({"kind": "integers"}),
            Ring::Polynomial { vars } => serde_json::json!({"kind": "polynomial", "vars": vars}),
            Ring::Product(fs) => serde_json::json!({
                "kind": "product",
                "factors": fs.iter().map(Ring::describe).collect::<Vec<_>>(),
            }),
            Ring::Table(t) => serde_json::json!({"kind": "table", "n": t.size()}),
        }
    }
}

fn json_integer(v: &Json) -> Option<Integer> {
    if let Some(i) = v.as_i64() {
        return Some(Integer::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.trim().parse().ok();
    }
    None
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Modular(n) => write!(f, "Z/{n}"),
            Ring::Integers => write!(f, "Z"),
            Ring::Polynomial { vars } => write!(f, "Q[{}]", vars.join(",")),
            Ring::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|r| r.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            Ring::Table(t) => write!(f, "Table({})", t.size()),
        }
    }
}

pub(crate) fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modular_addition_reduces() {
        let r = Ring::modular(12).unwrap();
        assert_eq!(
            r.add(&Elem::Residue(7), &Elem::Residue(8)).unwrap(),
            Elem::Residue(3)
        );
        assert_eq!(r.neg(&Elem::Residue(0)).unwrap(), Elem::Residue(0));
        assert!(Ring::modular(1).is_err());
    }

    #[test]
    fn polynomial_monomial_product() {
        let r = Ring::polynomial(["X", "Y"]).unwrap();
        let x = r.parse_elem(&Json::from("X")).unwrap();
        let xy = r.parse_elem(&Json::from("X*Y")).unwrap();
        let p = r.mul(&x, &xy).unwrap();
        assert_eq!(r.render(&p), "X^2*Y");
    }

    #[test]
    fn integer_negation() {
        assert_eq!(Ring::Integers.neg(&Elem::int(5)).unwrap(), Elem::int(-5));
    }

    #[test]
    fn mixed_ring_operands_are_rejected() {
        let r = Ring::modular(12).unwrap();
        assert!(matches!(
            r.add(&Elem::Residue(1), &Elem::int(1)),
            Err(Error::Structural(_))
        ));
        assert!(r.mul(&Elem::Residue(12), &Elem::Residue(1)).is_err());
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(
            Ring::modular(4).unwrap().elements().unwrap(),
            (0..4).map(Elem::Residue).collect::<Vec<_>>()
        );
        let p = Ring::product(vec![Ring::Modular(2), Ring::Modular(2)]).unwrap();
        let els = p.elements().unwrap();
        assert_eq!(els.len(), 4);
        let rendered: Vec<String> = els.iter().map(|e| p.render(e)).collect();
        assert_eq!(rendered, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(p.index_of(e), Some(i));
        }
        assert!(matches!(
            Ring::Integers.elements(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn descriptor_invariants() {
        assert!(Ring::product(vec![]).is_err());
        assert!(Ring::product(vec![Ring::Integers]).is_err());
        assert!(Ring::polynomial(Vec::<String>::new()).is_err());
        assert!(Ring::polynomial(["X", "X"]).is_err());
    }

    #[test]
    fn domains_and_fields() {
        assert!(Ring::Modular(7).is_field());
        assert!(!Ring::Modular(6).is_integral_domain());
        assert!(Ring::Integers.is_integral_domain());
        assert!(!Ring::Integers.is_field());
    }

    fn finite_rings() -> Vec<Ring> {
        vec![
            Ring::Modular(2),
            Ring::Modular(6),
            Ring::Modular(9),
            Ring::product(vec![Ring::Modular(2), Ring::Modular(3)]).unwrap(),
            Ring::product(vec![Ring::Modular(2), Ring::Modular(2), Ring::Modular(2)]).unwrap(),
        ]
    }

    #[test]
    fn ring_laws_hold_exhaustively_on_finite_backends() {
        for r in finite_rings() {
            let els = r.elements().unwrap();
            let (zero, one) = (r.zero(), r.one());
            for a in &els {
                assert_eq!(r.add_in(a, &zero), *a);
                assert_eq!(r.mul_in(a, &one), *a);
                assert_eq!(r.add_in(a, &r.neg_in(a)), zero);
                for b in &els {
                    assert_eq!(r.mul_in(a, b), r.mul_in(b, a), "{r}");
                    assert_eq!(r.add_in(a, b), r.add_in(b, a), "{r}");
                    for c in &els {
                        assert_eq!(r.add_in(&r.add_in(a, b), c), r.add_in(a, &r.add_in(b, c)));
                        assert_eq!(r.mul_in(&r.mul_in(a, b), c), r.mul_in(a, &r.mul_in(b, c)));
                        assert_eq!(
                            r.mul_in(a, &r.add_in(b, c)),
                            r.add_in(&r.mul_in(a, b), &r.mul_in(a, c))
                        );
                    }
                }
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..4).prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter()
                    .map(|((i, j), c)| (Monomial(vec![i, j]), rational(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn polynomial_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            let r = Ring::polynomial(["X", "Y"]).unwrap();
            let (a, b, c) = (Elem::Poly(a), Elem::Poly(b), Elem::Poly(c));
            prop_assert_eq!(r.mul_in(&a, &b), r.mul_in(&b, &a));
            prop_assert_eq!(
                r.mul_in(&a, &r.add_in(&b, &c)),
                r.add_in(&r.mul_in(&a, &b), &r.mul_in(&a, &c))
            );
            prop_assert_eq!(r.add_in(&a, &r.neg_in(&a)), r.zero());
            // Canonical form is stable under re-parsing.
            let s = r.render(&a);
            prop_assert_eq!(r.parse_elem(&Json::from(s)).unwrap(), a);
        }
    }
}

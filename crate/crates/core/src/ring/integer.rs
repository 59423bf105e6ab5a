//! Arbitrary-precision integers with an inline fast path.
//!
//! Values that fit in an `i64` are stored inline; overflow promotes to a
//! heap-backed `BigInt`. The representation is canonical: a value is `Big`
//! only when it does not fit in `i64`, so derived equality and hashing are
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    pub fn zero() -> Self {
        Integer(Repr::Small(0))
    }

    pub fn one() -> Self {
        Integer(Repr::Small(1))
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer(Repr::Small(v)),
            None => Integer(Repr::Big(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn add(&self, other: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_add(*b) {
                return Integer(Repr::Small(s));
            }
        }
        Integer::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Integer) -> Integer {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(p) = a.checked_mul(*b) {
                return Integer(Repr::Small(p));
            }
        }
        Integer::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Integer(Repr::Small(n)),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Integer::from_big(-b),
        }
    }

    /// Exponent of the prime `p` in `self`; `None` for zero.
    pub fn multiplicity(&self, p: u64) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match &self.0 {
            Repr::Small(v) => {
                if p == 2 {
                    return Some(v.trailing_zeros());
                }
                let p = p as i128;
                let mut n = *v as i128;
                let mut k = 0;
                while n % p == 0 {
                    n /= p;
                    k += 1;
                }
                Some(k)
            }
            Repr::Big(b) => {
                let p = BigInt::from(p);
                let mut n = b.clone();
                let mut k = 0;
                loop {
                    let (q, r) = n.div_rem(&p);
                    if !r.is_zero() {
                        break;
                    }
                    n = q;
                    k += 1;
                }
                Some(k)
            }
        }
    }

    /// Non-negative remainder modulo `m`.
    pub fn rem_euclid(&self, m: u64) -> u64 {
        match &self.0 {
            Repr::Small(v) => (*v as i128).rem_euclid(m as i128) as u64,
            Repr::Big(b) => b.mod_floor(&BigInt::from(m)).to_u64().unwrap_or(0),
        }
    }

    pub fn divisible_by(&self, m: &Integer) -> bool {
        if m.is_zero() {
            return self.is_zero();
        }
        match (&self.0, &m.0) {
            (Repr::Small(a), Repr::Small(b)) => (*a as i128) % (*b as i128) == 0,
            _ => (self.to_big() % m.to_big()).is_zero(),
        }
    }

    pub fn abs(&self) -> Integer {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(Repr::Small(v))
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigInt::from_str(s).map(Integer::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Integer::from(i64::MAX).add(&Integer::one());
        assert!(big.as_i64().is_none());
        let back = big.sub(&Integer::one());
        assert_eq!(back, Integer::from(i64::MAX));
        assert_eq!(back.as_i64(), Some(i64::MAX));
        assert_eq!(Integer::from(i64::MIN).neg().to_string(), "9223372036854775808");
    }

    #[test]
    fn multiplicity_matches_factorisation() {
        assert_eq!(Integer::from(12).multiplicity(2), Some(2));
        assert_eq!(Integer::from(-27).multiplicity(3), Some(3));
        assert_eq!(Integer::from(7).multiplicity(5), Some(0));
        assert_eq!(Integer::zero().multiplicity(2), None);
        let big = Integer::from(1i64 << 40).mul(&Integer::from(1i64 << 40));
        assert_eq!(big.multiplicity(2), Some(80));
    }

    proptest! {
        #[test]
        fn arithmetic_agrees_with_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Integer::from(a), Integer::from(b));
            prop_assert_eq!(x.add(&y).to_big(), BigInt::from(a) + BigInt::from(b));
            prop_assert_eq!(x.mul(&y).to_big(), BigInt::from(a) * BigInt::from(b));
            prop_assert_eq!(x.sub(&y).to_big(), BigInt::from(a) - BigInt::from(b));
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        }
    }
}

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

use super::{is_prime_u64, Elem, Integer, Ring};

/// An ideal, given by generators and, on finite rings, its full element set
/// in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<Elem>,
    pub elements: Option<Vec<Elem>>,
}

impl Ideal {
    /// Ideal generated by `generators`. Finite rings get their element set by
    /// fixpoint closure; on the integers the generators are replaced by their
    /// gcd. Polynomial rings only support the zero ideal.
    pub fn generated(ring: &Ring, generators: Vec<Elem>) -> Result<Ideal> {
        for g in &generators {
            ring.check(g)?;
        }
        match ring {
            _ if ring.is_finite() => {
                let t = ring.tables()?;
                let mut member = vec![false; t.len()];
                member[t.zero] = true;
                let mut frontier: Vec<usize> = generators
                    .iter()
                    .map(|g| ring.index_of(g).expect("checked"))
                    .collect();
                for &g in &frontier {
                    member[g] = true;
                }
                while let Some(a) = frontier.pop() {
                    for r in 0..t.len() {
                        let prod = t.mul(a, r);
                        if !member[prod] {
                            member[prod] = true;
                            frontier.push(prod);
                        }
                        if member[r] {
                            let sum = t.add(a, r);
                            if !member[sum] {
                                member[sum] = true;
                                frontier.push(sum);
                            }
                        }
                    }
                }
                let elements = (0..t.len())
                    .filter(|&i| member[i])
                    .map(|i| t.elems[i].clone())
                    .collect();
                Ok(Ideal {
                    generators,
                    elements: Some(elements),
                })
            }
            Ring::Integers => {
                let g = generators
                    .iter()
                    .filter_map(Elem::as_int)
                    .fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_big()));
                Ok(Ideal {
                    generators: vec![Elem::Int(Integer::from(g.abs()))],
                    elements: None,
                })
            }
            Ring::Polynomial { .. } => {
                if generators.iter().all(|g| g.as_poly().is_some_and(|p| p.is_zero())) {
                    Ok(Ideal {
                        generators: vec![ring.zero()],
                        elements: None,
                    })
                } else {
                    Err(Error::unsupported(
                        "only the zero ideal is supported in polynomial rings",
                    ))
                }
            }
            _ => unreachable!("finite backends handled above"),
        }
    }

    /// Ideal from an explicit element set on a finite ring, with closure
    /// verified exhaustively.
    pub fn from_elements(ring: &Ring, elements: Vec<Elem>) -> Result<Ideal> {
        let t = ring.tables()?;
        let mut member = vec![false; t.len()];
        for e in &elements {
            ring.check(e)?;
            member[ring.index_of(e).expect("checked")] = true;
        }
        let render = |i: usize| ring.render(&t.elems[i]);
        if !member[t.zero] {
            return Err(Error::InvalidIdeal {
                message: "does not contain 0".into(),
                witness: vec![render(t.zero)],
            });
        }
        for a in (0..t.len()).filter(|&a| member[a]) {
            for b in 0..t.len() {
                if member[b] && !member[t.add(a, b)] {
                    return Err(Error::InvalidIdeal {
                        message: "not closed under addition".into(),
                        witness: vec![render(a), render(b)],
                    });
                }
                if !member[t.mul(a, b)] {
                    return Err(Error::InvalidIdeal {
                        message: "not closed under multiplication by ring elements".into(),
                        witness: vec![render(a), render(b)],
                    });
                }
            }
        }
        let elements = (0..t.len())
            .filter(|&i| member[i])
            .map(|i| t.elems[i].clone())
            .collect();
        Ok(Ideal {
            generators: Vec::new(),
            elements: Some(elements),
        })
    }

    /// On finite rings, replaces the generators by the first element (in
    /// enumeration order) generating the ideal as a principal ideal, when
    /// one exists.
    pub fn with_principal_generator(mut self, ring: &Ring) -> Ideal {
        let Some(els) = &self.elements else {
            return self;
        };
        let Ok(all) = ring.elements() else {
            return self;
        };
        let principal = els.iter().find(|g| {
            let mut multiples: Vec<Elem> = all.iter().map(|r| ring.mul_in(g, r)).collect();
            multiples.sort_by_key(|e| ring.index_of(e));
            multiples.dedup();
            multiples == *els
        });
        if let Some(g) = principal {
            self.generators = vec![g.clone()];
        }
        self
    }

    pub fn contains(&self, ring: &Ring, x: &Elem) -> bool {
        if let Some(els) = &self.elements {
            return els.contains(x);
        }
        match (ring, x) {
            (Ring::Integers, Elem::Int(v)) => match self.generators.first().and_then(Elem::as_int) {
                Some(g) => v.divisible_by(g),
                None => v.is_zero(),
            },
            (Ring::Polynomial { .. }, Elem::Poly(p)) => p.is_zero(),
            _ => false,
        }
    }

    /// Non-negative generator of an ideal of the integers.
    pub fn integer_generator(&self) -> Option<&Integer> {
        self.generators.first().and_then(Elem::as_int)
    }

    pub fn is_zero_ideal(&self, ring: &Ring) -> bool {
        match &self.elements {
            Some(els) => els.len() == 1,
            None => match ring {
                Ring::Integers => self.integer_generator().is_none_or(Integer::is_zero),
                _ => true,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeWitness {
    /// The ideal contains 1.
    Improper,
    /// `x·y` lies in the ideal but neither factor does.
    Product(Elem, Elem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub prime: bool,
    pub witness: Option<PrimeWitness>,
}

impl PrimeCheck {
    fn yes() -> Self {
        PrimeCheck {
            prime: true,
            witness: None,
        }
    }

    fn no(w: PrimeWitness) -> Self {
        PrimeCheck {
            prime: false,
            witness: Some(w),
        }
    }
}

/// Primality by exhaustive product scan on finite rings; by factoring the
/// generator on the integers.
pub fn is_prime_ideal(ring: &Ring, ideal: &Ideal) -> Result<PrimeCheck> {
    if ring.is_finite() {
        let elements = ideal
            .elements
            .clone()
            .ok_or_else(|| Error::precondition("finite-ring ideals need an element set"))?;
        // Re-validate closure; reports InvalidIdeal with a witness.
        let ideal = Ideal::from_elements(ring, elements)?;
        let t = ring.tables()?;
        let member: Vec<bool> = t.elems.iter().map(|e| ideal.contains(ring, e)).collect();
        if member[t.one] {
            return Ok(PrimeCheck::no(PrimeWitness::Improper));
        }
        for x in 0..t.len() {
            for y in 0..t.len() {
                if member[t.mul(x, y)] && !member[x] && !member[y] {
                    return Ok(PrimeCheck::no(PrimeWitness::Product(
                        t.elems[x].clone(),
                        t.elems[y].clone(),
                    )));
                }
            }
        }
        return Ok(PrimeCheck::yes());
    }
    match ring {
        Ring::Integers => {
            let g = ideal
                .integer_generator()
                .cloned()
                .unwrap_or_else(Integer::zero)
                .abs();
            if g.is_zero() {
                return Ok(PrimeCheck::yes());
            }
            let n = g
                .as_i64()
                .ok_or_else(|| Error::unsupported("primality of huge integer generators"))?
                as u64;
            if n == 1 {
                return Ok(PrimeCheck::no(PrimeWitness::Improper));
            }
            if is_prime_u64(n) {
                return Ok(PrimeCheck::yes());
            }
            let d = (2..n).find(|d| n % d == 0).expect("composite has a divisor");
            Ok(PrimeCheck::no(PrimeWitness::Product(
                Elem::int(d as i64),
                Elem::int((n / d) as i64),
            )))
        }
        Ring::Polynomial { .. } => Ok(PrimeCheck::yes()),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_ideal(n: u64, gen: u64) -> (Ring, Ideal) {
        let r = Ring::modular(n).unwrap();
        let i = Ideal::generated(&r, vec![Elem::Residue(gen)]).unwrap();
        (r, i)
    }

    #[test]
    fn generated_ideals_in_z12() {
        let (_, i) = zmod_ideal(12, 4);
        assert_eq!(
            i.elements.unwrap(),
            [0, 4, 8].map(Elem::Residue).to_vec()
        );
        let (_, i) = zmod_ideal(12, 9);
        assert_eq!(
            i.elements.unwrap(),
            [0, 3, 6, 9].map(Elem::Residue).to_vec()
        );
    }

    #[test]
    fn primality_in_z12() {
        let (r, i) = zmod_ideal(12, 2);
        assert!(is_prime_ideal(&r, &i).unwrap().prime);
        let (r, i) = zmod_ideal(12, 4);
        let c = is_prime_ideal(&r, &i).unwrap();
        assert!(!c.prime);
        assert_eq!(
            c.witness,
            Some(PrimeWitness::Product(Elem::Residue(2), Elem::Residue(2)))
        );
    }

    #[test]
    fn zero_ideal_of_z6_is_not_prime() {
        let r = Ring::modular(6).unwrap();
        let i = Ideal::from_elements(&r, vec![Elem::Residue(0)]).unwrap();
        let c = is_prime_ideal(&r, &i).unwrap();
        assert_eq!(
            c.witness,
            Some(PrimeWitness::Product(Elem::Residue(2), Elem::Residue(3)))
        );
    }

    #[test]
    fn whole_ring_is_improper() {
        let (r, i) = zmod_ideal(12, 5);
        assert_eq!(i.elements.as_ref().unwrap().len(), 12);
        assert_eq!(
            is_prime_ideal(&r, &i).unwrap().witness,
            Some(PrimeWitness::Improper)
        );
    }

    #[test]
    fn non_ideal_is_reported_with_witness() {
        let r = Ring::modular(12).unwrap();
        let err = Ideal::from_elements(&r, vec![Elem::Residue(0), Elem::Residue(3)]).unwrap_err();
        match err {
            Error::InvalidIdeal { witness, .. } => assert_eq!(witness, ["3", "2"]),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn integer_ideals() {
        let z = Ring::Integers;
        let i = Ideal::generated(&z, vec![Elem::int(6), Elem::int(-9)]).unwrap();
        assert_eq!(i.integer_generator(), Some(&Integer::from(3)));
        assert!(i.contains(&z, &Elem::int(-12)));
        assert!(!i.contains(&z, &Elem::int(4)));
        assert!(is_prime_ideal(&z, &i).unwrap().prime);
        let four = Ideal::generated(&z, vec![Elem::int(4)]).unwrap();
        assert_eq!(
            is_prime_ideal(&z, &four).unwrap().witness,
            Some(PrimeWitness::Product(Elem::int(2), Elem::int(2)))
        );
        let zero = Ideal::generated(&z, vec![]).unwrap();
        assert!(is_prime_ideal(&z, &zero).unwrap().prime);
        assert!(zero.is_zero_ideal(&z));
    }
}

//! Total preorders on rings: representations, the axiom engine, supports
//! and the lemma suite.

mod axioms;
pub(crate) mod engine;
mod lemmas;

use crate::error::{Error, Result};
use crate::gallery::sec3_key;
use crate::order::OrderSpec;
use crate::ring::{is_prime_ideal, Elem, Ideal, Ring, Window};
use crate::valuation::ValuationSpec;

pub(crate) use axioms::with_universe;
pub use axioms::{check_axioms, check_support_prime, Axiom, AxiomReport, SupportPrimeCheck};
pub use lemmas::{lemma_suite, LemmaReport};

#[derive(Clone, Debug)]
pub enum QuasiOrderSpec {
    /// `leq[i][j]` compares the i-th and j-th elements in enumeration order.
    ExplicitMatrix { leq: Vec<Vec<bool>> },
    /// `x ⪯ y ⇔ v(y) ≤ v(x)`.
    FromValuation(ValuationSpec),
    FromOrder(OrderSpec),
    /// `x ⪯ y ⇔ x ∈ 𝔭 ∨ y ∉ 𝔭`: the relation induced by the trivial
    /// valuation with support 𝔭.
    TrivialAtPrime(Ideal),
    /// The two-variable relation ordering polynomials by their largest
    /// monomial class.
    CounterexampleSec3,
}

impl QuasiOrderSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            QuasiOrderSpec::ExplicitMatrix { .. } => "matrix",
            QuasiOrderSpec::FromValuation(_) => "valuation",
            QuasiOrderSpec::FromOrder(_) => "order",
            QuasiOrderSpec::TrivialAtPrime(_) => "trivial_at_prime",
            QuasiOrderSpec::CounterexampleSec3 => "counterexample_sec3",
        }
    }
}

/// A relation spec bound to its ring, with `leq`, `equiv` and `strict`.
#[derive(Clone, Debug)]
pub struct Relation {
    ring: Ring,
    spec: QuasiOrderSpec,
}

impl Relation {
    pub fn new(ring: Ring, spec: QuasiOrderSpec) -> Result<Relation> {
        match &spec {
            QuasiOrderSpec::ExplicitMatrix { leq } => {
                validate_matrix(&ring, leq)?;
            }
            QuasiOrderSpec::FromValuation(v) => v.validate(&ring)?,
            QuasiOrderSpec::FromOrder(o) => o.validate(&ring)?,
            QuasiOrderSpec::TrivialAtPrime(ideal) => {
                let check = is_prime_ideal(&ring, ideal)?;
                if !check.prime {
                    return Err(Error::precondition(format!(
                        "trivial_at_prime needs a prime ideal ({:?})",
                        check.witness
                    )));
                }
            }
            QuasiOrderSpec::CounterexampleSec3 => match &ring {
                Ring::Polynomial { vars } if vars.len() == 2 => {}
                _ => {
                    return Err(Error::structural(format!(
                        "the counterexample relation needs a polynomial ring in exactly two variables, got {ring}"
                    )))
                }
            },
        }
        Ok(Relation { ring, spec })
    }

    /// The trivial quasi-order at the ideal generated by `generators`.
    pub fn trivial_at(ring: Ring, generators: Vec<Elem>) -> Result<Relation> {
        let ideal = Ideal::generated(&ring, generators)?;
        Relation::new(ring, QuasiOrderSpec::TrivialAtPrime(ideal))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn spec(&self) -> &QuasiOrderSpec {
        &self.spec
    }

    pub fn leq(&self, x: &Elem, y: &Elem) -> Result<bool> {
        self.ring.check(x)?;
        self.ring.check(y)?;
        Ok(self.le(x, y))
    }

    pub fn equiv(&self, x: &Elem, y: &Elem) -> Result<bool> {
        Ok(self.leq(x, y)? && self.leq(y, x)?)
    }

    pub fn strict(&self, x: &Elem, y: &Elem) -> Result<bool> {
        Ok(self.leq(x, y)? && !self.leq(y, x)?)
    }

    /// Comparator for operands already known to be in the ring.
    pub(crate) fn le(&self, x: &Elem, y: &Elem) -> bool {
        match &self.spec {
            QuasiOrderSpec::ExplicitMatrix { leq } => {
                let i = self.ring.index_of(x).expect("element of a finite ring");
                let j = self.ring.index_of(y).expect("element of a finite ring");
                leq[i][j]
            }
            QuasiOrderSpec::FromValuation(v) => v.cmp_values(&self.ring, y, x).is_le(),
            QuasiOrderSpec::FromOrder(o) => o.le(&self.ring, x, y),
            QuasiOrderSpec::TrivialAtPrime(ideal) => {
                ideal.contains(&self.ring, x) || !ideal.contains(&self.ring, y)
            }
            QuasiOrderSpec::CounterexampleSec3 => {
                let (Elem::Poly(f), Elem::Poly(g)) = (x, y) else {
                    panic!("sec3 operands must be polynomials");
                };
                sec3_key(f) <= sec3_key(g)
            }
        }
    }

    pub(crate) fn eqv(&self, x: &Elem, y: &Elem) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    pub(crate) fn lt(&self, x: &Elem, y: &Elem) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    /// Relation matrix over a finite ring, in enumeration order.
    pub fn to_matrix(&self) -> Result<Vec<Vec<bool>>> {
        let els = self.ring.elements()?;
        Ok(els
            .iter()
            .map(|a| els.iter().map(|b| self.le(a, b)).collect())
            .collect())
    }
}

fn validate_matrix(ring: &Ring, leq: &[Vec<bool>]) -> Result<()> {
    let n = ring
        .size()
        .ok_or_else(|| Error::structural("matrix relations need a finite ring"))?;
    if leq.len() != n || leq.iter().any(|r| r.len() != n) {
        return Err(Error::structural(format!("relation matrix must be {n}x{n}")));
    }
    for i in 0..n {
        if !leq[i][i] {
            return Err(Error::structural(format!("relation matrix is not reflexive at {i}")));
        }
        for j in 0..n {
            if !leq[i][j] && !leq[j][i] {
                return Err(Error::structural(format!(
                    "relation matrix is not total at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// `E₀`: the ∼-class of 0. Exact on finite rings; the window members on
/// infinite rings, with membership decided by the comparator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub members: Vec<Elem>,
    pub exhaustive: bool,
}

impl SupportSet {
    pub fn contains(&self, relation: &Relation, x: &Elem) -> bool {
        relation.eqv(x, &relation.ring.zero())
    }

    pub fn is_zero_only(&self) -> bool {
        self.members.len() == 1
    }

    pub fn to_json(&self, ring: &Ring) -> serde_json::Value {
        serde_json::Value::Array(self.members.iter().map(|e| ring.elem_to_json(e)).collect())
    }
}

pub fn compute_support(relation: &Relation, window: Option<&Window>) -> Result<SupportSet> {
    let ring = relation.ring();
    let (els, exhaustive) = if ring.is_finite() && window.is_none_or(Window::is_exhaustive) {
        (ring.elements()?, true)
    } else {
        let w = window.ok_or_else(|| {
            Error::precondition("infinite rings need a window to compute the support")
        })?;
        (w.elements(ring)?, false)
    };
    let zero = ring.zero();
    let members = els.into_iter().filter(|x| relation.eqv(x, &zero)).collect();
    Ok(SupportSet {
        members,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_at_prime_support_in_z12() {
        let rel = Relation::trivial_at(Ring::Modular(12), vec![Elem::Residue(3)]).unwrap();
        let s = compute_support(&rel, None).unwrap();
        assert_eq!(s.members, [0, 3, 6, 9].map(Elem::Residue).to_vec());
        assert!(s.exhaustive);
    }

    #[test]
    fn trivial_at_non_prime_is_rejected() {
        assert!(Relation::trivial_at(Ring::Modular(12), vec![Elem::Residue(4)]).is_err());
    }

    #[test]
    fn reflexivity_of_every_backend() {
        let rel = Relation::trivial_at(Ring::Modular(6), vec![Elem::Residue(2)]).unwrap();
        for x in rel.ring().elements().unwrap() {
            assert!(rel.leq(&x, &x).unwrap());
        }
    }

    #[test]
    fn matrix_invariants_enforced() {
        let ring = Ring::Modular(2);
        let not_total = vec![vec![true, false], vec![false, true]];
        assert!(Relation::new(ring.clone(), QuasiOrderSpec::ExplicitMatrix { leq: not_total }).is_err());
        let ok = vec![vec![true, true], vec![false, true]];
        let rel = Relation::new(ring, QuasiOrderSpec::ExplicitMatrix { leq: ok }).unwrap();
        assert!(rel.strict(&Elem::Residue(0), &Elem::Residue(1)).unwrap());
        assert!(rel.leq(&Elem::Residue(2), &Elem::Residue(1)).is_err());
    }

    #[test]
    fn support_of_infinite_ring_needs_window() {
        let rel = Relation::new(
            Ring::Integers,
            QuasiOrderSpec::FromValuation(ValuationSpec::PAdic { p: 2 }),
        )
        .unwrap();
        assert!(compute_support(&rel, None).is_err());
        let s = compute_support(&rel, Some(&Window::interval(10))).unwrap();
        assert_eq!(s.members, vec![Elem::int(0)]);
        assert!(!s.exhaustive);
    }
}

//! Ring valuations `v: R → Γ ∪ {∞}`.

use std::cmp::Ordering;

use serde_json::Value as Json;

use crate::checks::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::group::{GroupElem, OrderedAbelianGroup, Value};
use crate::relation::QuasiOrderSpec;
use crate::ring::{is_prime_ideal, is_prime_u64, Elem, Ideal, PrimeWitness, Ring, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationSpec {
    /// Exponent of `p` on the integers.
    PAdic { p: u64 },
    /// On a polynomial ring: `weights[i]` is the (lexicographically
    /// positive) value of the i-th variable; `v(f)` is the minimum weight
    /// over the monomials of `f`.
    Monomial { weights: Vec<Vec<i64>> },
    /// `∞` on the ideal, `0` elsewhere.
    Trivial { ideal: Ideal },
    /// Values listed in enumeration order of a finite ring.
    Table { values: Vec<Value> },
}

impl ValuationSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ValuationSpec::PAdic { .. } => "padic",
            ValuationSpec::Monomial { .. } => "monomial",
            ValuationSpec::Trivial { .. } => "trivial",
            ValuationSpec::Table { .. } => "table",
        }
    }

    /// Trivial valuation with support generated by `generators`.
    pub fn trivial(ring: &Ring, generators: Vec<Elem>) -> Result<ValuationSpec> {
        Ok(ValuationSpec::Trivial {
            ideal: Ideal::generated(ring, generators)?,
        })
    }

    pub fn validate(&self, ring: &Ring) -> Result<()> {
        match (self, ring) {
            (ValuationSpec::PAdic { p }, Ring::Integers) => {
                if !is_prime_u64(*p) {
                    return Err(Error::structural(format!("p-adic valuation needs a prime, got {p}")));
                }
            }
            (ValuationSpec::PAdic { .. }, _) => {
                return Err(Error::structural(format!("p-adic valuations live on Z, not {ring}")))
            }
            (ValuationSpec::Monomial { weights }, Ring::Polynomial { vars }) => {
                if weights.len() != vars.len() {
                    return Err(Error::structural(format!(
                        "monomial valuation needs {} weights, got {}",
                        vars.len(),
                        weights.len()
                    )));
                }
                let rank = weights.first().map_or(0, Vec::len);
                for (w, name) in weights.iter().zip(vars) {
                    if w.len() != rank || rank == 0 {
                        return Err(Error::structural("monomial weights must share one positive rank"));
                    }
                    if GroupElem(w.clone()).cmp_lex(&GroupElem::zero(rank)).is_le() {
                        return Err(Error::structural(format!("weight of {name} must be positive")));
                    }
                }
            }
            (ValuationSpec::Monomial { .. }, _) => {
                return Err(Error::structural(format!(
                    "monomial valuations live on polynomial rings, not {ring}"
                )))
            }
            (ValuationSpec::Trivial { ideal }, _) => {
                let check = is_prime_ideal(ring, ideal)?;
                if !check.prime {
                    return Err(Error::precondition(format!(
                        "a trivial valuation needs a prime support ({:?})",
                        check.witness
                    )));
                }
            }
            (ValuationSpec::Table { values }, _) => {
                let n = ring
                    .size()
                    .ok_or_else(|| Error::structural("table valuations need a finite ring"))?;
                if values.len() != n {
                    return Err(Error::structural(format!(
                        "table valuation needs {n} values, got {}",
                        values.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vmap(&self, ring: &Ring, x: &Elem) -> Value {
        match self {
            ValuationSpec::PAdic { p } => match x.as_int().and_then(|v| v.multiplicity(*p)) {
                Some(k) => Value::scalar(i64::from(k)),
                None => Value::Infinity,
            },
            ValuationSpec::Monomial { weights } => {
                let Some(f) = x.as_poly() else {
                    return Value::Infinity;
                };
                f.terms()
                    .map(|(m, _)| {
                        m.0.iter()
                            .zip(weights)
                            .fold(GroupElem::zero(weights[0].len()), |acc, (&e, w)| {
                                acc.add(&GroupElem(w.iter().map(|c| c * i64::from(e)).collect()))
                            })
                    })
                    .min_by(|a, b| a.cmp_lex(b))
                    .map_or(Value::Infinity, Value::Finite)
            }
            ValuationSpec::Trivial { ideal } => {
                if ideal.contains(ring, x) {
                    Value::Infinity
                } else {
                    Value::Finite(GroupElem::zero(0))
                }
            }
            ValuationSpec::Table { values } => {
                let i = ring.index_of(x).expect("element of a finite ring");
                values[i].clone()
            }
        }
    }

    /// `v(a)` against `v(b)`, avoiding allocation on the p-adic path.
    pub fn cmp_values(&self, ring: &Ring, a: &Elem, b: &Elem) -> Ordering {
        if let ValuationSpec::PAdic { p } = self {
            if let (Some(x), Some(y)) = (a.as_int(), b.as_int()) {
                return match (x.multiplicity(*p), y.multiplicity(*p)) {
                    (Some(i), Some(j)) => i.cmp(&j),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => Ordering::Equal,
                };
            }
        }
        self.vmap(ring, a).cmp(&self.vmap(ring, b))
    }

    /// The value group the spec declares.
    pub fn group(&self) -> OrderedAbelianGroup {
        match self {
            ValuationSpec::PAdic { .. } => OrderedAbelianGroup::FreeRankOne,
            ValuationSpec::Monomial { weights } => {
                OrderedAbelianGroup::lex(weights.first().map_or(0, Vec::len))
            }
            ValuationSpec::Trivial { .. } => OrderedAbelianGroup::Trivial,
            ValuationSpec::Table { values } => {
                let rank = values
                    .iter()
                    .filter_map(|v| match v {
                        Value::Finite(g) if !g.is_zero() => Some(g.0.len()),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0);
                OrderedAbelianGroup::lex(rank)
            }
        }
    }

    pub fn to_json(&self, ring: &Ring) -> Json {
        match self {
            ValuationSpec::PAdic { p } => serde_json::json!({"kind": "padic", "p": p}),
            ValuationSpec::Monomial { weights } => {
                let map: serde_json::Map<String, Json> = ring
                    .vars()
                    .iter()
                    .zip(weights)
                    .map(|(v, w)| (v.clone(), Json::from(w.clone())))
                    .collect();
                serde_json::json!({"kind": "monomial", "weights": map})
            }
            ValuationSpec::Trivial { ideal } => {
                let gens = if ideal.generators.is_empty() {
                    ideal.elements.clone().unwrap_or_default()
                } else {
                    ideal.generators.clone()
                };
                serde_json::json!({
                    "kind": "trivial",
                    "generators": gens.iter().map(|g| ring.elem_to_json(g)).collect::<Vec<_>>(),
                })
            }
            ValuationSpec::Table { values } => serde_json::json!({
                "kind": "table",
                "values": values.iter().map(Value::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

/// `x ⪯ y ⇔ v(y) ≤ v(x)`.
pub fn induce_quasiorder_from_valuation(v: ValuationSpec) -> QuasiOrderSpec {
    QuasiOrderSpec::FromValuation(v)
}

/// V1–V4 over window pairs, the equality `v(x+y) = min{v(x), v(y)}` when
/// `v(x) ≠ v(y)`, and primality of the support. Exhaustive on finite rings
/// with [`Window::All`]. Sums and products are valued exactly even when
/// they leave the window.
pub fn check_valuation_axioms(v: &ValuationSpec, ring: &Ring, window: &Window) -> Result<CheckReport> {
    v.validate(ring)?;
    let exhaustive = ring.is_finite() && window.is_exhaustive();
    let els = if exhaustive {
        ring.elements()?
    } else {
        window.elements(ring)?
    };
    let vals: Vec<Value> = els.iter().map(|x| v.vmap(ring, x)).collect();
    let zero_val = Value::Finite(GroupElem::zero(0));

    let mut report = CheckReport::default();
    let mut push = |name: &str, w: Option<Vec<Elem>>| {
        report.push(Check::from_witness(name, ring, exhaustive, w));
    };
    let zero = ring.zero();
    let one = ring.one();
    push("V1", (!v.vmap(ring, &zero).is_infinite()).then(|| vec![zero.clone()]));
    push("V2", (v.vmap(ring, &one) != zero_val).then(|| vec![one.clone()]));

    let pairs = || (0..els.len()).flat_map(|i| (0..els.len()).map(move |j| (i, j)));
    let v3 = pairs().find(|&(i, j)| {
        v.vmap(ring, &ring.mul_in(&els[i], &els[j])) != vals[i].add(&vals[j])
    });
    push("V3", v3.map(|(i, j)| vec![els[i].clone(), els[j].clone()]));

    let sum_vals = |i: usize, j: usize| v.vmap(ring, &ring.add_in(&els[i], &els[j]));
    let v4 = pairs().find(|&(i, j)| sum_vals(i, j) < vals[i].clone().min(vals[j].clone()));
    push("V4", v4.map(|(i, j)| vec![els[i].clone(), els[j].clone()]));
    let min_eq = pairs()
        .find(|&(i, j)| vals[i] != vals[j] && sum_vals(i, j) != vals[i].clone().min(vals[j].clone()));
    push("min-equality", min_eq.map(|(i, j)| vec![els[i].clone(), els[j].clone()]));

    let support_witness = if exhaustive {
        let members: Vec<Elem> = els
            .iter()
            .zip(&vals)
            .filter(|(_, val)| val.is_infinite())
            .map(|(x, _)| x.clone())
            .collect();
        match Ideal::from_elements(ring, members) {
            Ok(ideal) => match is_prime_ideal(ring, &ideal)?.witness {
                Some(PrimeWitness::Improper) => Some(vec![one.clone()]),
                Some(PrimeWitness::Product(a, b)) => Some(vec![a, b]),
                None => None,
            },
            Err(Error::InvalidIdeal { .. }) => Some(vec![zero.clone()]),
            Err(e) => return Err(e),
        }
    } else if v.vmap(ring, &one).is_infinite() {
        Some(vec![one.clone()])
    } else {
        pairs()
            .find(|&(i, j)| {
                !vals[i].is_infinite()
                    && !vals[j].is_infinite()
                    && v.vmap(ring, &ring.mul_in(&els[i], &els[j])).is_infinite()
            })
            .map(|(i, j)| vec![els[i].clone(), els[j].clone()])
    };
    push("support-prime", support_witness);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padic(p: u64) -> ValuationSpec {
        ValuationSpec::PAdic { p }
    }

    #[test]
    fn padic_values() {
        let z = Ring::Integers;
        assert_eq!(padic(2).vmap(&z, &Elem::int(12)), Value::scalar(2));
        assert_eq!(padic(3).vmap(&z, &Elem::int(-27)), Value::scalar(3));
        assert_eq!(padic(5).vmap(&z, &Elem::int(0)), Value::Infinity);
    }

    #[test]
    fn trivial_valuation_on_z12() {
        let r = Ring::Modular(12);
        let v = ValuationSpec::trivial(&r, vec![Elem::Residue(3)]).unwrap();
        assert_eq!(v.vmap(&r, &Elem::Residue(4)), Value::scalar(0));
        assert_eq!(v.vmap(&r, &Elem::Residue(9)), Value::Infinity);
    }

    #[test]
    fn padic_axioms_on_window() {
        let r = check_valuation_axioms(&padic(3), &Ring::Integers, &Window::interval(100)).unwrap();
        assert!(r.all_pass(), "{r:?}");
        // 9 + 18 = 27: equal values, strict inequality allowed.
        let z = Ring::Integers;
        assert_eq!(padic(3).vmap(&z, &Elem::int(27)), Value::scalar(3));
    }

    #[test]
    fn trivial_on_z6_passes_exhaustively() {
        let r = Ring::Modular(6);
        let v = ValuationSpec::trivial(&r, vec![Elem::Residue(2)]).unwrap();
        let rep = check_valuation_axioms(&v, &r, &Window::All).unwrap();
        assert!(rep.all_pass());
        assert!(rep.checks.iter().all(|c| c.status == crate::checks::Status::Pass));
    }

    #[test]
    fn broken_table_is_caught() {
        // v(2) = 1 on Z/4 would need v(0) = v(2·2) = 2, not ∞.
        let r = Ring::Modular(4);
        let v = ValuationSpec::Table {
            values: vec![Value::Infinity, Value::scalar(0), Value::scalar(1), Value::scalar(0)],
        };
        let rep = check_valuation_axioms(&v, &r, &Window::All).unwrap();
        assert!(!rep.get("V3").unwrap().passed());
    }

    #[test]
    fn monomial_valuation_takes_minimum() {
        let r = Ring::polynomial(["X", "Y"]).unwrap();
        let v = ValuationSpec::Monomial {
            weights: vec![vec![1, 0], vec![0, 1]],
        };
        v.validate(&r).unwrap();
        let f = r.parse_elem(&Json::from("X^2*Y + X*Y^3")).unwrap();
        assert_eq!(v.vmap(&r, &f), Value::Finite(GroupElem(vec![1, 3])));
        let rep = check_valuation_axioms(&v, &r, &Window::poly(2, &[-1, 1])).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn validation() {
        assert!(padic(4).validate(&Ring::Integers).is_err());
        assert!(padic(2).validate(&Ring::Modular(4)).is_err());
        let bad = ValuationSpec::Monomial { weights: vec![vec![0]] };
        assert!(bad.validate(&Ring::polynomial(["X"]).unwrap()).is_err());
    }
}

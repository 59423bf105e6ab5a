//! Positive cones and ring orders.

use std::collections::HashSet;

use num_traits::Signed;
use serde_json::Value as Json;

use crate::checks::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::relation::{engine, with_universe, QuasiOrderSpec, Relation};
use crate::ring::{Elem, Ring, Window};

#[derive(Clone, Debug)]
pub enum PositiveCone {
    /// `{x ∈ Z : x ≥ 0}`.
    NonNegativeIntegers,
    /// Zero and the polynomials whose leading coefficient is positive under
    /// graded-lex with the given variable precedence.
    LeadingCoefficientPositive { precedence: Vec<usize> },
    /// An explicit finite set of elements.
    Explicit { elements: Vec<Elem> },
    /// `{x : 0 ⪯ x}` for a relation on the same ring.
    Relation(Box<Relation>),
}

impl PositiveCone {
    pub fn contains(&self, ring: &Ring, x: &Elem) -> bool {
        match self {
            PositiveCone::NonNegativeIntegers => x.as_int().is_some_and(|v| v.signum() >= 0),
            PositiveCone::LeadingCoefficientPositive { precedence } => {
                leading_sign(x, precedence) >= 0
            }
            PositiveCone::Explicit { elements } => elements.contains(x),
            PositiveCone::Relation(r) => r.le(&ring.zero(), x),
        }
    }

    pub fn validate(&self, ring: &Ring) -> Result<()> {
        match self {
            PositiveCone::NonNegativeIntegers if *ring != Ring::Integers => Err(Error::structural(
                format!("the nonnegative cone lives on Z, not {ring}"),
            )),
            PositiveCone::LeadingCoefficientPositive { precedence } => {
                validate_precedence(ring, precedence)
            }
            PositiveCone::Explicit { elements } => elements.iter().try_for_each(|e| ring.check(e)),
            PositiveCone::Relation(r) if r.ring() != ring => {
                Err(Error::structural("cone relation lives on a different ring"))
            }
            _ => Ok(()),
        }
    }

    /// Members of the cone inside a window, in window order.
    pub fn members(&self, ring: &Ring, window: &Window) -> Result<Vec<Elem>> {
        Ok(window_elements(ring, window)?
            .0
            .into_iter()
            .filter(|x| self.contains(ring, x))
            .collect())
    }
}

fn leading_sign(x: &Elem, precedence: &[usize]) -> i32 {
    match x.as_poly().and_then(|f| f.leading_term_by(precedence)) {
        Some((_, c)) if c.is_positive() => 1,
        Some(_) => -1,
        None => 0,
    }
}

fn validate_precedence(ring: &Ring, precedence: &[usize]) -> Result<()> {
    let n = ring.nvars();
    if n == 0 {
        return Err(Error::structural(format!(
            "the order at infinity lives on polynomial rings, not {ring}"
        )));
    }
    let mut seen = vec![false; n];
    for &i in precedence {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::structural("precedence must list every variable once"));
        }
    }
    if precedence.len() != n {
        return Err(Error::structural("precedence must list every variable once"));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum OrderSpec {
    StandardInteger,
    /// `f ≤ g` iff `g − f` is zero or has positive leading coefficient.
    PolynomialAtInfinity { precedence: Vec<usize> },
    /// `x ≤ y ⇔ y − x ∈ P`.
    FromCone(PositiveCone),
    /// `leq[i][j]` over a finite ring in enumeration order.
    ExplicitMatrix { leq: Vec<Vec<bool>> },
}

impl OrderSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            OrderSpec::StandardInteger => "standard",
            OrderSpec::PolynomialAtInfinity { .. } => "poly_at_infinity",
            OrderSpec::FromCone(_) => "cone",
            OrderSpec::ExplicitMatrix { .. } => "matrix",
        }
    }

    pub fn validate(&self, ring: &Ring) -> Result<()> {
        match self {
            OrderSpec::StandardInteger if *ring != Ring::Integers => Err(Error::structural(
                format!("the standard order lives on Z, not {ring}"),
            )),
            OrderSpec::StandardInteger => Ok(()),
            OrderSpec::PolynomialAtInfinity { precedence } => validate_precedence(ring, precedence),
            OrderSpec::FromCone(c) => c.validate(ring),
            OrderSpec::ExplicitMatrix { leq } => {
                let n = ring
                    .size()
                    .ok_or_else(|| Error::structural("matrix orders need a finite ring"))?;
                if leq.len() != n || leq.iter().any(|r| r.len() != n) {
                    return Err(Error::structural(format!("order matrix must be {n}x{n}")));
                }
                Ok(())
            }
        }
    }

    pub fn le(&self, ring: &Ring, x: &Elem, y: &Elem) -> bool {
        match self {
            OrderSpec::StandardInteger => match (x.as_int(), y.as_int()) {
                (Some(a), Some(b)) => a <= b,
                _ => panic!("standard order operands must be integers"),
            },
            OrderSpec::PolynomialAtInfinity { precedence } => {
                leading_sign(&ring.sub_in(y, x), precedence) >= 0
            }
            OrderSpec::FromCone(c) => c.contains(ring, &ring.sub_in(y, x)),
            OrderSpec::ExplicitMatrix { leq } => {
                let i = ring.index_of(x).expect("element of a finite ring");
                let j = ring.index_of(y).expect("element of a finite ring");
                leq[i][j]
            }
        }
    }

    pub fn to_json(&self, ring: &Ring) -> Json {
        match self {
            OrderSpec::StandardInteger => serde_json::json!({"kind": "standard"}),
            OrderSpec::PolynomialAtInfinity { precedence } => serde_json::json!({
                "kind": "poly_at_infinity",
                "precedence": precedence.iter().map(|&i| ring.vars()[i].clone()).collect::<Vec<_>>(),
            }),
            OrderSpec::FromCone(PositiveCone::Explicit { elements }) => serde_json::json!({
                "kind": "cone",
                "elements": elements.iter().map(|e| ring.elem_to_json(e)).collect::<Vec<_>>(),
            }),
            OrderSpec::FromCone(PositiveCone::Relation(_)) => {
                serde_json::json!({"kind": "cone", "cone": "nonnegative_elements_of_input"})
            }
            OrderSpec::FromCone(PositiveCone::NonNegativeIntegers) => {
                serde_json::json!({"kind": "cone", "cone": "nonnegative_integers"})
            }
            OrderSpec::FromCone(PositiveCone::LeadingCoefficientPositive { .. }) => {
                serde_json::json!({"kind": "cone", "cone": "leading_coefficient_positive"})
            }
            OrderSpec::ExplicitMatrix { leq } => serde_json::json!({"kind": "matrix", "rows": leq}),
        }
    }
}

pub fn cone_to_order(cone: PositiveCone) -> OrderSpec {
    OrderSpec::FromCone(cone)
}

/// `{x ∈ window : 0 ≤ x}` as an explicit cone.
pub fn order_to_cone(order: &OrderSpec, ring: &Ring, window: &Window) -> Result<PositiveCone> {
    order.validate(ring)?;
    let zero = ring.zero();
    let elements = window_elements(ring, window)?
        .0
        .into_iter()
        .filter(|x| order.le(ring, &zero, x))
        .collect();
    Ok(PositiveCone::Explicit { elements })
}

pub fn induce_quasiorder_from_order(order: OrderSpec) -> QuasiOrderSpec {
    QuasiOrderSpec::FromOrder(order)
}

fn window_elements(ring: &Ring, window: &Window) -> Result<(Vec<Elem>, bool)> {
    if ring.is_finite() && window.is_exhaustive() {
        Ok((ring.elements()?, true))
    } else {
        Ok((window.elements(ring)?, false))
    }
}

/// P0–P3 on a window. Closure of `P` and of the support is only tested
/// for sums and products that land in the window.
pub fn check_cone(ring: &Ring, cone: &PositiveCone, window: &Window) -> Result<CheckReport> {
    cone.validate(ring)?;
    let (els, exhaustive) = window_elements(ring, window)?;
    let in_window: HashSet<&Elem> = els.iter().collect();
    let n = els.len();
    let member: Vec<bool> = els.iter().map(|x| cone.contains(ring, x)).collect();
    let in_cone = |x: &Elem| cone.contains(ring, x);
    let in_support = |x: &Elem| in_cone(x) && in_cone(&ring.neg_in(x));
    let support: Vec<usize> = (0..n).filter(|&i| in_support(&els[i])).collect();
    let pairs = |idx: &[usize]| -> Vec<(usize, usize)> {
        idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).collect()
    };
    let all: Vec<usize> = (0..n).collect();
    let wit = |(i, j): (usize, usize)| vec![els[i].clone(), els[j].clone()];

    let mut report = CheckReport::default();
    let p0 = (0..n).find(|&i| !member[i] && !in_cone(&ring.neg_in(&els[i])));
    report.push(Check::from_witness("P0", ring, exhaustive, p0.map(|i| vec![els[i].clone()])));

    let one = ring.one();
    let p1 = if in_support(&one) {
        Some(vec![one])
    } else {
        let bad_sum = pairs(&support).into_iter().find(|&(i, j)| {
            let s = ring.add_in(&els[i], &els[j]);
            in_window.contains(&s) && !in_support(&s)
        });
        let bad_mul = || {
            support.iter().flat_map(|&i| all.iter().map(move |&j| (i, j))).find(|&(i, j)| {
                let p = ring.mul_in(&els[i], &els[j]);
                in_window.contains(&p) && !in_support(&p)
            })
        };
        let not_prime = || {
            pairs(&all).into_iter().find(|&(i, j)| {
                let p = ring.mul_in(&els[i], &els[j]);
                !in_support(&els[i])
                    && !in_support(&els[j])
                    && in_window.contains(&p)
                    && in_support(&p)
            })
        };
        bad_sum.or_else(bad_mul).or_else(not_prime).map(wit)
    };
    report.push(Check::from_witness("P1", ring, exhaustive, p1));

    let positive: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
    let closed = |op: &dyn Fn(&Elem, &Elem) -> Elem| {
        pairs(&positive).into_iter().find(|&(i, j)| {
            let r = op(&els[i], &els[j]);
            in_window.contains(&r) && !in_cone(&r)
        })
    };
    let p2 = closed(&|a, b| ring.mul_in(a, b));
    report.push(Check::from_witness("P2", ring, exhaustive, p2.map(wit)));
    let p3 = closed(&|a, b| ring.add_in(a, b));
    report.push(Check::from_witness("P3", ring, exhaustive, p3.map(wit)));
    Ok(report)
}

/// Reflexivity, transitivity, totality and O1–O4 on a window, both forms
/// O2 and O2' of the product axiom with their agreement, and primality of
/// the support.
pub fn check_order_axioms(order: &OrderSpec, ring: &Ring, window: &Window) -> Result<CheckReport> {
    let relation = Relation::new(ring.clone(), QuasiOrderSpec::FromOrder(order.clone()))?;
    fn collect<U: engine::Universe>(
        u: &U,
        ring: &Ring,
        exhaustive: bool,
        to_elems: &dyn Fn(&[usize]) -> Vec<Elem>,
    ) -> CheckReport {
        let mut report = CheckReport::default();
        let mut push = |name: &str, w: Option<Vec<usize>>| {
            report.push(Check::from_witness(name, ring, exhaustive, w.map(|w| to_elems(&w))));
        };
        push("reflexive", engine::reflexive(u));
        push("transitive", engine::transitive(u));
        push("total", engine::total(u));
        push("O1", engine::qr1(u));
        let o2 = engine::qr2(u);
        let o2_prime = engine::support_domain(u);
        let agree = o2.is_none() == o2_prime.is_none();
        push("O2", o2);
        push("O2'", o2_prime);
        report.push(Check::flag(
            "O2-O2'-agree",
            exhaustive,
            agree,
            Some("O2 and O2' disagree".to_string()),
        ));
        let mut push = |name: &str, w: Option<Vec<usize>>| {
            report.push(Check::from_witness(name, ring, exhaustive, w.map(|w| to_elems(&w))));
        };
        push("O3", engine::qr3(u));
        push("O4", engine::translation(u));
        push("support-prime", engine::support_prime(u).map(|(_, w)| w));
        report
    }
    with_universe(
        &relation,
        window,
        |u, els| collect(u, ring, true, &|w| w.iter().map(|&i| els[i].clone()).collect()),
        |u| collect(u, ring, false, &|w| u.to_elems(w)),
    )
}

/// First window triple `(x, y, z)` with `x ≤ y` but not `x + z ≤ y + z`
/// for the relation `x ≤ y ⇔ y − x ∈ T`, where `T` is any subset.
pub fn translation_witness(ring: &Ring, subset: Vec<Elem>, window: &Window) -> Result<Option<Vec<Elem>>> {
    let order = OrderSpec::FromCone(PositiveCone::Explicit { elements: subset });
    let relation = Relation::new(ring.clone(), QuasiOrderSpec::FromOrder(order))?;
    with_universe(
        &relation,
        window,
        |u, els| engine::translation(u).map(|w| w.iter().map(|&i| els[i].clone()).collect()),
        |u| engine::translation(u).map(|w| u.to_elems(&w)),
    )
}

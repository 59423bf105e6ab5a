//! The ordered/valued dichotomy: a verified quasi-order is exhibited either
//! as a ring order with its positive cone or as the relation induced by a
//! valuation, with the support preserved.

use std::collections::HashMap;

use serde_json::Value as Json;

use crate::checks::{Check, CheckReport};
use crate::constructions::{
    build_value_monoid, grothendieck_group, lift_order, lift_valuation, quotient_of_checked,
    QuotientRingView,
};
use crate::error::{Error, Result};
use crate::group::OrderedAbelianGroup;
use crate::order::{check_cone, check_order_axioms, OrderSpec, PositiveCone};
use crate::relation::{check_axioms, compute_support, QuasiOrderSpec, Relation, SupportSet};
use crate::ring::{Elem, Ring, Window};
use crate::valuation::{check_valuation_axioms, ValuationSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Ordered,
    Valued,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Ordered => "ordered",
            Branch::Valued => "valued",
        }
    }
}

/// Where `−1` sits relative to `0` and `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignOfMinusOne {
    pub below_zero: bool,
    pub above_zero: bool,
    pub equiv_one: bool,
}

impl SignOfMinusOne {
    fn of(relation: &Relation) -> Self {
        let ring = relation.ring();
        let (zero, one, m) = (ring.zero(), ring.one(), ring.minus_one());
        SignOfMinusOne {
            below_zero: relation.lt(&m, &zero),
            above_zero: relation.lt(&zero, &m),
            equiv_one: relation.eqv(&m, &one),
        }
    }
}

/// A value of the synthesized map `w`: an integer when the group embeds in
/// `Z`, otherwise the index of a value-monoid class (classes are numbered in
/// ascending order, so indices compare like values).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassValue {
    Int(i64),
    Class(usize),
    Infinity,
}

impl ClassValue {
    pub fn to_json(self) -> Json {
        match self {
            ClassValue::Int(k) => Json::from(k),
            ClassValue::Class(i) => Json::from(format!("class:{i}")),
            ClassValue::Infinity => Json::from("inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witnessing {
    Ordered {
        order: OrderSpec,
        cone: PositiveCone,
        /// Window members of the cone, in window order.
        cone_window: Vec<Elem>,
    },
    Valued {
        /// Closed form, when a known backend reproduces the relation.
        valuation: Option<ValuationSpec>,
        group: OrderedAbelianGroup,
        /// `w` on every window element, in window order.
        map: Vec<(Elem, ClassValue)>,
    },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub ring: Ring,
    pub window: Window,
    pub support: SupportSet,
    pub sign: SignOfMinusOne,
    pub structure: Witnessing,
    /// Cone and order axioms, or valuation axioms, on the window.
    pub soundness: CheckReport,
}

impl Classification {
    pub fn branch(&self) -> Branch {
        match self.structure {
            Witnessing::Ordered { .. } => Branch::Ordered,
            Witnessing::Valued { .. } => Branch::Valued,
        }
    }

    pub fn group(&self) -> Option<&OrderedAbelianGroup> {
        match &self.structure {
            Witnessing::Valued { group, .. } => Some(group),
            Witnessing::Ordered { .. } => None,
        }
    }

    /// `w(x)` for a window element.
    pub fn value_of(&self, x: &Elem) -> Option<ClassValue> {
        match &self.structure {
            Witnessing::Valued { map, .. } => map.iter().find(|(e, _)| e == x).map(|(_, v)| *v),
            Witnessing::Ordered { .. } => None,
        }
    }

    /// The relation re-induced from the witnessing structure.
    pub fn induced(&self) -> Induced {
        match &self.structure {
            Witnessing::Ordered { order, .. } => Induced::Spec(order_relation(&self.ring, order)),
            Witnessing::Valued {
                valuation: Some(v), ..
            } => Induced::Spec(valuation_relation(&self.ring, v)),
            Witnessing::Valued { map, .. } => Induced::Map(map.iter().cloned().collect()),
        }
    }

    pub fn to_json(&self) -> Json {
        let ring = &self.ring;
        let els = |xs: &[Elem]| Json::Array(xs.iter().map(|e| ring.elem_to_json(e)).collect());
        let mut obj = serde_json::json!({
            "branch": self.branch().as_str(),
            "support": els(&self.support.members),
            "minus_one": if self.sign.below_zero { "negative" } else { "positive" },
        });
        match &self.structure {
            Witnessing::Ordered { order, cone_window, .. } => {
                obj["cone_window"] = els(cone_window);
                obj["order"] = order.to_json(ring);
            }
            Witnessing::Valued { valuation, group, map } => {
                obj["group"] = group.to_json();
                obj["map"] = Json::Array(
                    map.iter()
                        .map(|(x, v)| Json::Array(vec![Json::from(ring.render(x)), v.to_json()]))
                        .collect(),
                );
                obj["valuation"] = valuation.as_ref().map_or(Json::Null, |v| v.to_json(ring));
            }
        }
        obj["soundness"] = self.soundness.to_json();
        obj
    }
}

/// A comparator rebuilt from a classification.
#[derive(Clone, Debug)]
pub enum Induced {
    Spec(Relation),
    /// `x ⪯ y ⇔ w(y) ≤ w(x)` on window elements.
    Map(HashMap<Elem, ClassValue>),
}

impl Induced {
    pub fn le(&self, x: &Elem, y: &Elem) -> Option<bool> {
        match self {
            Induced::Spec(r) => Some(r.le(x, y)),
            Induced::Map(m) => Some(m.get(y)? <= m.get(x)?),
        }
    }
}

fn order_relation(ring: &Ring, order: &OrderSpec) -> Relation {
    Relation::new(ring.clone(), QuasiOrderSpec::FromOrder(order.clone()))
        .expect("classified orders validate on their ring")
}

fn valuation_relation(ring: &Ring, v: &ValuationSpec) -> Relation {
    Relation::new(ring.clone(), QuasiOrderSpec::FromValuation(v.clone()))
        .expect("classified valuations validate on their ring")
}

fn window_elements(ring: &Ring, window: &Window) -> Result<Vec<Elem>> {
    if ring.is_finite() && window.is_exhaustive() {
        ring.elements()
    } else {
        window.elements(ring)
    }
}

/// True when `candidate` agrees with `relation` on every window pair.
fn agrees(relation: &Relation, candidate: &Relation, els: &[Elem]) -> bool {
    use rayon::prelude::*;
    els.par_iter()
        .all(|x| els.iter().all(|y| relation.le(x, y) == candidate.le(x, y)))
}

/// Classifies a relation that passes the axioms on `window`.
pub fn classify(relation: &Relation, window: &Window) -> Result<Classification> {
    let report = check_axioms(relation, window)?;
    if !report.all_pass() {
        return Err(Error::RejectedInput(Box::new(report)));
    }
    let ring = relation.ring();
    let support = compute_support(relation, Some(window))?;
    let view = quotient_of_checked(relation, window)?;
    let sign = SignOfMinusOne::of(view.relation());
    if sign.below_zero == sign.above_zero {
        return Err(Error::Inconsistency {
            message: "-1 is equivalent to 0".into(),
            witness: vec![ring.render(&ring.minus_one())],
        });
    }
    let els = window_elements(ring, window)?;

    let (structure, soundness) = if sign.below_zero {
        let quotient_order = match relation.spec() {
            QuasiOrderSpec::FromOrder(o) if view.is_identity() => o.clone(),
            _ => OrderSpec::FromCone(PositiveCone::Relation(Box::new(view.relation().clone()))),
        };
        let order = lift_order(&quotient_order, &view)?;
        let cone = PositiveCone::Relation(Box::new(relation.clone()));
        let zero = ring.zero();
        let cone_window = els.iter().filter(|x| relation.le(&zero, x)).cloned().collect();
        let mut soundness = check_cone(ring, &cone, window)?;
        soundness.checks.extend(check_order_axioms(&order, ring, window)?.checks);
        (
            Witnessing::Ordered {
                order,
                cone,
                cone_window,
            },
            soundness,
        )
    } else if view.ring().is_finite() {
        valued_finite(relation, &view, &els, window)?
    } else {
        valued_domain(relation, &els, window)?
    };
    Ok(Classification {
        ring: ring.clone(),
        window: window.clone(),
        support,
        sign,
        structure,
        soundness,
    })
}

/// A finite quotient is a finite field, whose only valuation is trivial.
fn valued_finite(
    relation: &Relation,
    view: &QuotientRingView,
    els: &[Elem],
    window: &Window,
) -> Result<(Witnessing, CheckReport)> {
    let ring = relation.ring();
    let q = view.ring();
    let monoid = build_value_monoid(view.relation(), &Window::All)?;
    if monoid.class_count() != 1 {
        return Err(Error::Inconsistency {
            message: format!(
                "a finite quotient carries {} nonzero value classes",
                monoid.class_count()
            ),
            witness: monoid.classes().iter().map(|c| q.render(&c[0])).collect(),
        });
    }
    let qv = ValuationSpec::trivial(q, vec![q.zero()])?;
    let v = lift_valuation(&qv, view)?;
    let zero = ring.zero();
    let map = els
        .iter()
        .map(|x| {
            let w = if relation.eqv(x, &zero) {
                ClassValue::Infinity
            } else {
                ClassValue::Int(0)
            };
            (x.clone(), w)
        })
        .collect();
    let soundness = check_valuation_axioms(&v, ring, window)?;
    Ok((
        Witnessing::Valued {
            valuation: Some(v),
            group: OrderedAbelianGroup::Trivial,
            map,
        },
        soundness,
    ))
}

/// Support `{0}` on an infinite domain: classes of the value monoid, its
/// group of differences, and a closed form when one matches.
fn valued_domain(relation: &Relation, els: &[Elem], window: &Window) -> Result<(Witnessing, CheckReport)> {
    let ring = relation.ring();
    let monoid = build_value_monoid(relation, window)?;
    let classes = monoid.class_count();
    let group = grothendieck_group(monoid)?;
    let rank_one = group.rank_one();
    let zero = ring.zero();
    let mut map = Vec::with_capacity(els.len());
    for x in els {
        let w = if *x == zero {
            ClassValue::Infinity
        } else {
            let c = group.monoid().class_of(x).ok_or_else(|| Error::Inconsistency {
                message: "window element outside every value class".into(),
                witness: vec![ring.render(x)],
            })?;
            match &rank_one {
                Some(r) => ClassValue::Int(r.values[c]),
                None => ClassValue::Class(c),
            }
        };
        map.push((x.clone(), w));
    }
    let candidate = match relation.spec() {
        QuasiOrderSpec::FromValuation(v) => Some(v.clone()),
        QuasiOrderSpec::TrivialAtPrime(ideal) => Some(ValuationSpec::Trivial { ideal: ideal.clone() }),
        _ => None,
    };
    let valuation = candidate.filter(|v| agrees(relation, &valuation_relation(ring, v), els));
    let group = if classes == 1 {
        OrderedAbelianGroup::Trivial
    } else if rank_one.is_some() {
        OrderedAbelianGroup::FreeRankOne
    } else {
        OrderedAbelianGroup::FormalDifference(group)
    };
    let soundness = match &valuation {
        Some(v) => check_valuation_axioms(v, ring, window)?,
        None => check_map_axioms(ring, &map),
    };
    Ok((Witnessing::Valued { valuation, group, map }, soundness))
}

/// V1–V4 for a window map, restricted to sums and products in the window.
/// Values add only in the rank-one case; elsewhere V3 is checked as
/// monotonicity of the class order under multiplication.
fn check_map_axioms(ring: &Ring, map: &[(Elem, ClassValue)]) -> CheckReport {
    let table: HashMap<&Elem, ClassValue> = map.iter().map(|(x, v)| (x, *v)).collect();
    let zero = ring.zero();
    let one = ring.one();
    let mut report = CheckReport::default();
    let mut push = |name: &str, w: Option<Vec<Elem>>| {
        report.push(Check::from_witness(name, ring, false, w));
    };
    push("V1", (table.get(&zero) != Some(&ClassValue::Infinity)).then(|| vec![zero.clone()]));
    let unit = table.get(&one).copied();
    push(
        "V2",
        (!matches!(unit, Some(ClassValue::Int(0)) | Some(ClassValue::Class(_)))).then(|| vec![one.clone()]),
    );
    let add = |a: ClassValue, b: ClassValue| match (a, b) {
        (ClassValue::Int(a), ClassValue::Int(b)) => Some(ClassValue::Int(a + b)),
        (ClassValue::Infinity, _) | (_, ClassValue::Infinity) => Some(ClassValue::Infinity),
        _ => None,
    };
    let pairs = || map.iter().flat_map(|a| map.iter().map(move |b| (a, b)));
    let v3 = pairs().find(|((x, a), (y, b))| {
        let Some(p) = table.get(&ring.mul_in(x, y)) else {
            return false;
        };
        match add(*a, *b) {
            Some(s) => *p != s,
            // Class indices: multiplying by y must not reverse the order.
            None => map.iter().any(|(z, c)| {
                let Some(q) = table.get(&ring.mul_in(z, y)) else {
                    return false;
                };
                a < c && q < p
            }),
        }
    });
    push("V3", v3.map(|((x, _), (y, _))| vec![x.clone(), y.clone()]));
    let v4 = pairs().find(|((x, a), (y, b))| {
        table
            .get(&ring.add_in(x, y))
            .is_some_and(|s| s < a.min(b))
    });
    push("V4", v4.map(|((x, _), (y, _))| vec![x.clone(), y.clone()]));
    report
}

/// First window pair on which the re-induced relation differs from the
/// input, or a support mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub agree: bool,
    pub support_equal: bool,
    pub witness: Option<(Elem, Elem)>,
    pub pairs_checked: usize,
}

impl RoundTrip {
    pub fn ok(&self) -> bool {
        self.agree && self.support_equal
    }

    pub fn to_json(&self, ring: &Ring) -> Json {
        serde_json::json!({
            "ok": self.ok(),
            "agree": self.agree,
            "support_equal": self.support_equal,
            "pairs_checked": self.pairs_checked,
            "witness": self.witness.as_ref().map(|(x, y)| vec![ring.render(x), ring.render(y)]),
        })
    }
}

/// Re-induces a relation from `classification` and compares it with
/// `relation` on every window pair; also compares supports.
pub fn roundtrip_check(relation: &Relation, classification: &Classification) -> Result<RoundTrip> {
    let ring = relation.ring();
    let els = window_elements(ring, &classification.window)?;
    let induced = classification.induced();
    let mut witness = None;
    'outer: for x in &els {
        for y in &els {
            if induced.le(x, y) != Some(relation.le(x, y)) {
                witness = Some((x.clone(), y.clone()));
                break 'outer;
            }
        }
    }
    let zero = ring.zero();
    let induced_support: Vec<Elem> = els
        .iter()
        .filter(|x| induced.le(x, &zero) == Some(true) && induced.le(&zero, x) == Some(true))
        .cloned()
        .collect();
    let input_support = compute_support(relation, Some(&classification.window))?;
    Ok(RoundTrip {
        agree: witness.is_none(),
        support_equal: induced_support == input_support.members
            && input_support == classification.support,
        witness,
        pairs_checked: els.len() * els.len(),
    })
}

//! Ordered abelian value groups and the values `Γ ∪ {∞}`.

use std::cmp::Ordering;
use std::fmt;

use serde_json::Value as Json;

use crate::constructions::FormalDifferenceGroup;

/// An element of `Z^k` under the lexicographic order. The trivial group is
/// `k = 0`; the integers are `k = 1`. Missing trailing coordinates count
/// as 0, so `[]`, `[0]` and `[0, 0]` are the same element.
#[derive(Clone, Debug)]
pub struct GroupElem(pub Vec<i64>);

impl GroupElem {
    fn trimmed(&self) -> &[i64] {
        let end = self.0.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for GroupElem {}

impl std::hash::Hash for GroupElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl GroupElem {
    pub fn zero(rank: usize) -> Self {
        GroupElem(vec![0; rank])
    }

    pub fn scalar(v: i64) -> Self {
        GroupElem(vec![v])
    }

    pub fn add(&self, other: &GroupElem) -> GroupElem {
        let n = self.0.len().max(other.0.len());
        GroupElem(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn neg(&self) -> GroupElem {
        GroupElem(self.0.iter().map(|v| -v).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Lexicographic comparison treating missing trailing entries as 0.
    pub fn cmp_lex(&self, other: &GroupElem) -> Ordering {
        let n = self.0.len().max(other.0.len());
        (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0).cmp(other.0.get(i).unwrap_or(&0)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    pub fn to_json(&self) -> Json {
        match self.0.as_slice() {
            [] => Json::from(0),
            [v] => Json::from(*v),
            vs => Json::from(vs.to_vec()),
        }
    }
}

/// A valuation value: a group element or the absorbing `∞`, which lies
/// above every group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(GroupElem),
    Infinity,
}

impl Value {
    pub fn scalar(v: i64) -> Self {
        Value::Finite(GroupElem::scalar(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.add(b)),
            _ => Value::Infinity,
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Finite(g) => g.to_json(),
            Value::Infinity => Json::from("inf"),
        }
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.cmp_lex(b),
            (Value::Finite(_), Value::Infinity) => Ordering::Less,
            (Value::Infinity, Value::Finite(_)) => Ordering::Greater,
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => write!(f, "inf"),
            Value::Finite(g) => match g.0.as_slice() {
                [] => write!(f, "0"),
                [v] => write!(f, "{v}"),
                vs => write!(f, "{vs:?}"),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub enum OrderedAbelianGroup {
    Trivial,
    /// The integers with the usual order.
    FreeRankOne,
    /// `Z^k` with the lexicographic order.
    LexPower(usize),
    /// Formal differences of value-monoid classes.
    FormalDifference(FormalDifferenceGroup),
}

impl OrderedAbelianGroup {
    pub fn kind(&self) -> &'static str {
        match self {
            OrderedAbelianGroup::Trivial => "trivial",
            OrderedAbelianGroup::FreeRankOne => "free_rank_one",
            OrderedAbelianGroup::LexPower(_) => "lex_power",
            OrderedAbelianGroup::FormalDifference(_) => "formal_difference",
        }
    }

    pub fn rank_hint(&self) -> Option<usize> {
        match self {
            OrderedAbelianGroup::Trivial => Some(0),
            OrderedAbelianGroup::FreeRankOne => Some(1),
            OrderedAbelianGroup::LexPower(k) => Some(*k),
            OrderedAbelianGroup::FormalDifference(_) => None,
        }
    }

    /// Group of lexicographic rank `k`, collapsing the small cases.
    pub fn lex(k: usize) -> Self {
        match k {
            0 => OrderedAbelianGroup::Trivial,
            1 => OrderedAbelianGroup::FreeRankOne,
            k => OrderedAbelianGroup::LexPower(k),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            OrderedAbelianGroup::LexPower(k) => serde_json::json!({"kind": "lex_power", "rank": k}),
            OrderedAbelianGroup::FormalDifference(g) => serde_json::json!({
                "kind": "formal_difference",
                "classes": g.monoid().class_count(),
            }),
            other => serde_json::json!({"kind": other.kind()}),
        }
    }
}

/// Outcome of the sampled group-law checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLawReport {
    pub compatible: bool,
    pub torsion_free: bool,
    pub witness: Option<Vec<GroupElem>>,
}

/// Order compatibility `a ≤ b ⇒ a + c ≤ b + c` over all sample triples and
/// torsion-freeness `n·a = 0 ⇒ a = 0` for `1 ≤ n ≤ max_multiple`.
pub fn check_lex_group_laws(samples: &[GroupElem], max_multiple: i64) -> GroupLawReport {
    for a in samples {
        for b in samples {
            if a.cmp_lex(b).is_gt() {
                continue;
            }
            for c in samples {
                if a.add(c).cmp_lex(&b.add(c)).is_gt() {
                    return GroupLawReport {
                        compatible: false,
                        torsion_free: true,
                        witness: Some(vec![a.clone(), b.clone(), c.clone()]),
                    };
                }
            }
        }
    }
    for a in samples.iter().filter(|a| !a.is_zero()) {
        let mut acc = a.clone();
        for _ in 1..max_multiple {
            if acc.is_zero() {
                return GroupLawReport {
                    compatible: true,
                    torsion_free: false,
                    witness: Some(vec![a.clone()]),
                };
            }
            acc = acc.add(a);
        }
    }
    GroupLawReport {
        compatible: true,
        torsion_free: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        let three = Value::scalar(3);
        assert!(three < Value::Infinity);
        assert_eq!(three.add(&Value::Infinity), Value::Infinity);
        assert_eq!(Value::scalar(1).add(&Value::scalar(2)), Value::scalar(3));
    }

    #[test]
    fn lexicographic_order() {
        let a = GroupElem(vec![0, 5]);
        let b = GroupElem(vec![1, -7]);
        assert!(a.cmp_lex(&b).is_lt());
    }

    proptest! {
        #[test]
        fn lex_groups_are_ordered_and_torsion_free(
            pts in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 1..8)
        ) {
            let samples: Vec<GroupElem> = pts.into_iter().map(GroupElem).collect();
            let r = check_lex_group_laws(&samples, 6);
            prop_assert!(r.compatible && r.torsion_free, "{:?}", r.witness);
        }
    }
}

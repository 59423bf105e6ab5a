use crate::checks::{Check, CheckReport};
use crate::error::Result;
use crate::ring::{Elem, Ring, Window};

use super::axioms::with_universe;
use super::engine::{self, Universe};
use super::Relation;

pub type LemmaReport = CheckReport;

fn collect<U: Universe>(
    u: &U,
    ring: &Ring,
    exhaustive: bool,
    to_elems: &dyn Fn(&[usize]) -> Vec<Elem>,
) -> LemmaReport {
    let mut report = CheckReport::default();
    let mut push = |name: &str, w: Option<Vec<usize>>| {
        report.push(Check::from_witness(name, ring, exhaustive, w.map(|w| to_elems(&w))));
    };
    push("absorbs-support", engine::absorbs_support(u));
    push("cancellation", engine::cancellation(u));
    push("squares-nonnegative", engine::squares_nonnegative(u));
    push("support-prime", engine::support_prime(u).map(|(_, w)| w));
    // A QR2 violation may only appear alongside a QR5 violation.
    let qr2 = engine::qr2(u);
    let qr5 = engine::qr5(u);
    push("qr5-implies-qr2", if qr5.is_none() { qr2 } else { None });
    if ring.is_field() {
        push("field-Q1", engine::trivial_support(u));
        push("field-Q2", engine::qr3(u));
        push("field-Q3", engine::qr4(u));
    }
    report
}

/// Consequences of the axioms, checked over window tuples:
///
/// * `absorbs-support`: `x ≁ 0 ∧ y ∼ 0 ⇒ x + y ∼ x`
/// * `cancellation`: `z ≁ 0 ∧ xz ∼ yz ⇒ x ∼ y`
/// * `squares-nonnegative`: `0 ⪯ x²`
/// * `support-prime`: `E₀` is a prime ideal
/// * `qr5-implies-qr2`: no QR2 violation without a QR5 violation
/// * on fields, `field-Q1..Q3`: `E₀ = {0}` and the field axioms.
///
/// Relations that are not quasi-orders may be passed for diagnosis.
pub fn lemma_suite(relation: &Relation, window: &Window) -> Result<LemmaReport> {
    let ring = relation.ring();
    with_universe(
        relation,
        window,
        |u, els| collect(u, ring, true, &|w| w.iter().map(|&i| els[i].clone()).collect()),
        |u| collect(u, ring, false, &|w| u.to_elems(w)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::QuasiOrderSpec;

    #[test]
    fn two_element_field() {
        let rel = Relation::new(
            Ring::Modular(2),
            QuasiOrderSpec::ExplicitMatrix {
                leq: vec![vec![true, true], vec![false, true]],
            },
        )
        .unwrap();
        let r = lemma_suite(&rel, &Window::All).unwrap();
        assert!(r.all_pass(), "{:?}", r);
        assert!(r.get("field-Q1").is_some());
    }

    #[test]
    fn sec3_breaks_cancellation_at_x_x2_y() {
        let ring = Ring::polynomial(["X", "Y"]).unwrap();
        let rel = Relation::new(ring.clone(), QuasiOrderSpec::CounterexampleSec3).unwrap();
        let r = lemma_suite(&rel, &Window::poly(3, &[-2, -1, 1, 2])).unwrap();
        let c = r.get("cancellation").unwrap();
        assert!(!c.passed());
        // Re-verify the reported witness against the comparator.
        let w = c.witness.as_ref().unwrap();
        let (x, y, z) = (&w[0], &w[1], &w[2]);
        assert!(!rel.eqv(z, &ring.zero()));
        assert!(rel.eqv(&ring.mul_in(x, z), &ring.mul_in(y, z)));
        assert!(!rel.eqv(x, y));
    }
}

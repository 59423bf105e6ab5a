use serde_json::Value as Json;

use crate::checks::{Check, CheckReport, Status};
use crate::error::Result;
use crate::ring::{Elem, Ring, Window};

use super::engine::{self, FiniteScan, IndexTables, Universe, WindowScan};
use super::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Reflexive,
    Transitive,
    Total,
    Qr1,
    Qr2,
    Qr3,
    Qr4,
    Qr5,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Reflexive,
        Axiom::Transitive,
        Axiom::Total,
        Axiom::Qr1,
        Axiom::Qr2,
        Axiom::Qr3,
        Axiom::Qr4,
        Axiom::Qr5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "reflexive",
            Axiom::Transitive => "transitive",
            Axiom::Total => "total",
            Axiom::Qr1 => "QR1",
            Axiom::Qr2 => "QR2",
            Axiom::Qr3 => "QR3",
            Axiom::Qr4 => "QR4",
            Axiom::Qr5 => "QR5",
        }
    }
}

/// Per-axiom verdicts over one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: CheckReport,
    pub window_size: usize,
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.all_pass()
    }

    pub fn check(&self, axiom: Axiom) -> &Check {
        self.checks.get(axiom.name()).expect("every axiom is reported")
    }

    pub fn status(&self, axiom: Axiom) -> Status {
        self.check(axiom).status
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&[Elem]> {
        self.check(axiom).witness.as_deref()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.failures().next()
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .checks
            .failures()
            .map(|c| match &c.rendered {
                Some(w) => format!("{} fails at ({})", c.name, w.join(", ")),
                None => format!("{} fails", c.name),
            })
            .collect();
        if failed.is_empty() {
            "all axioms hold".to_string()
        } else {
            failed.join("; ")
        }
    }

    pub fn to_json(&self) -> Json {
        serde_json::json!({
            "exhaustive": self.exhaustive,
            "window_size": self.window_size,
            "axioms": self.checks.to_json(),
        })
    }
}

fn collect<U: Universe>(
    u: &U,
    ring: &Ring,
    exhaustive: bool,
    to_elems: &dyn Fn(&[usize]) -> Vec<Elem>,
) -> CheckReport {
    let scans: [(Axiom, fn(&U) -> Option<engine::Witness>); 8] = [
        (Axiom::Reflexive, engine::reflexive),
        (Axiom::Transitive, engine::transitive),
        (Axiom::Total, engine::total),
        (Axiom::Qr1, engine::qr1),
        (Axiom::Qr2, engine::qr2),
        (Axiom::Qr3, engine::qr3),
        (Axiom::Qr4, engine::qr4),
        (Axiom::Qr5, engine::qr5),
    ];
    let mut report = CheckReport::default();
    for (axiom, scan) in scans {
        let witness = scan(u).map(|w| to_elems(&w));
        report.push(Check::from_witness(axiom.name(), ring, exhaustive, witness));
    }
    report
}

/// Runs `f` on the universe for `relation` over `window`: the whole ring
/// as index tables for finite rings with [`Window::All`], otherwise the
/// materialised window.
pub(crate) fn with_universe<R>(
    relation: &Relation,
    window: &Window,
    finite: impl FnOnce(&FiniteScan<'_>, &[Elem]) -> R,
    windowed: impl FnOnce(&WindowScan<'_>) -> R,
) -> Result<R> {
    let ring = relation.ring();
    if ring.is_finite() && window.is_exhaustive() {
        let t = ring.tables()?;
        let idx = IndexTables::new(&t);
        let leq = t
            .elems
            .iter()
            .flat_map(|a| t.elems.iter().map(move |b| relation.le(a, b)))
            .collect();
        let scan = FiniteScan::new(&idx, leq);
        Ok(finite(&scan, &t.elems))
    } else {
        let els = window.elements(ring)?;
        let scan = WindowScan::new(relation, els);
        Ok(windowed(&scan))
    }
}

/// Checks reflexivity and totality over window pairs; transitivity, QR3,
/// QR4 and QR5 over window triples; QR1 as `0 ≺ 1`; QR2 over pairs whose
/// product lies in the window.
pub fn check_axioms(relation: &Relation, window: &Window) -> Result<AxiomReport> {
    let ring = relation.ring();
    with_universe(
        relation,
        window,
        |u, els| AxiomReport {
            checks: collect(u, ring, true, &|w| w.iter().map(|&i| els[i].clone()).collect()),
            window_size: els.len(),
            exhaustive: true,
        },
        |u| AxiomReport {
            checks: collect(u, ring, false, &|w| u.to_elems(w)),
            window_size: u.size(),
            exhaustive: false,
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPrimeCheck {
    pub prime: bool,
    pub status: Status,
    /// Which property failed: proper, closed-under-addition,
    /// absorbs-multiplication or prime.
    pub property: Option<&'static str>,
    pub witness: Option<Vec<Elem>>,
}

/// Verifies that `E₀` is a prime ideal: exhaustively on finite rings,
/// over window pairs otherwise.
pub fn check_support_prime(relation: &Relation, window: &Window) -> Result<SupportPrimeCheck> {
    let finish = |exhaustive: bool, r: Option<(&'static str, Vec<Elem>)>| SupportPrimeCheck {
        prime: r.is_none(),
        status: if r.is_some() {
            Status::Fail
        } else {
            Status::passed(exhaustive)
        },
        property: r.as_ref().map(|(p, _)| *p),
        witness: r.map(|(_, w)| w),
    };
    with_universe(
        relation,
        window,
        |u, els| {
            let r = engine::support_prime(u)
                .map(|(p, w)| (p, w.iter().map(|&i| els[i].clone()).collect()));
            finish(true, r)
        },
        |u| {
            let r = engine::support_prime(u).map(|(p, w)| (p, u.to_elems(&w)));
            finish(false, r)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderSpec;
    use crate::relation::QuasiOrderSpec;

    fn z_standard() -> Relation {
        Relation::new(Ring::Integers, QuasiOrderSpec::FromOrder(OrderSpec::StandardInteger))
            .unwrap()
    }

    #[test]
    fn standard_integer_order_passes_on_window() {
        let r = check_axioms(&z_standard(), &Window::interval(10)).unwrap();
        assert!(r.all_pass(), "{}", r.summary());
        for a in Axiom::ALL {
            assert_eq!(r.status(a), Status::PassOnWindow);
        }
    }

    #[test]
    fn z6_trivial_at_three_passes_exhaustively() {
        let rel = Relation::trivial_at(Ring::Modular(6), vec![Elem::Residue(3)]).unwrap();
        let r = check_axioms(&rel, &Window::All).unwrap();
        assert!(r.all_pass(), "{}", r.summary());
        assert!(Axiom::ALL.iter().all(|&a| r.status(a) == Status::Pass));
    }

    #[test]
    fn support_not_prime_in_z12() {
        // x ⪯ y ⇔ x ∈ (4) ∨ y ∉ (4).
        let ring = Ring::Modular(12);
        let four = |x: usize| x % 4 == 0;
        let leq = (0..12)
            .map(|x| (0..12).map(|y| four(x) || !four(y)).collect())
            .collect();
        let rel = Relation::new(ring, QuasiOrderSpec::ExplicitMatrix { leq }).unwrap();
        let c = check_support_prime(&rel, &Window::All).unwrap();
        assert!(!c.prime);
        assert_eq!(c.property, Some("prime"));
        assert_eq!(c.witness, Some(vec![Elem::Residue(2), Elem::Residue(2)]));
        let r = check_axioms(&rel, &Window::All).unwrap();
        assert!(!r.all_pass());
    }

    #[test]
    fn invalid_window_is_an_error() {
        let w = Window::Interval { lo: 0, hi: 3 };
        assert!(matches!(
            check_axioms(&z_standard(), &w),
            Err(crate::Error::InvalidWindow(_))
        ));
    }

    #[test]
    fn witnesses_are_deterministic() {
        let rel = Relation::new(
            Ring::polynomial(["X", "Y"]).unwrap(),
            QuasiOrderSpec::CounterexampleSec3,
        )
        .unwrap();
        let w = Window::poly(2, &[-1, 1]);
        let a = check_axioms(&rel, &w).unwrap();
        let b = check_axioms(&rel, &w).unwrap();
        assert_eq!(a, b);
    }
}

use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::relation::{check_axioms, compute_support, QuasiOrderSpec, Relation, SupportSet};
use crate::ring::{Elem, Ideal, Integer, Ring, Window};
use crate::valuation::ValuationSpec;

#[derive(Clone, Debug)]
enum Kind {
    /// `E₀ = {0}` on an infinite domain: the quotient is the ring itself.
    Identity,
    /// Cosets of a finite ring; `class_of[i]` is the coset of the i-th
    /// element, `reps[c]` the least element of coset `c`.
    Finite { class_of: Vec<usize>, reps: Vec<Elem> },
    /// `Z / (p)`.
    IntegersMod(u64),
}

/// `R/E₀` with the induced relation `x̄ ⪯' ȳ ⇔ x ⪯ y`.
#[derive(Clone, Debug)]
pub struct QuotientRingView {
    base: Relation,
    support: SupportSet,
    ring: Ring,
    relation: Relation,
    kind: Kind,
}

impl QuotientRingView {
    pub fn base(&self) -> &Relation {
        &self.base
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    /// The quotient ring.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The induced relation on the quotient.
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, Kind::Identity)
    }

    /// `x ↦ x̄`.
    pub fn project(&self, x: &Elem) -> Elem {
        match &self.kind {
            Kind::Identity => x.clone(),
            Kind::Finite { class_of, .. } => {
                let i = self.base.ring().index_of(x).expect("element of the base ring");
                Elem::Index(class_of[i])
            }
            Kind::IntegersMod(p) => {
                Elem::Residue(x.as_int().expect("integer element").rem_euclid(*p))
            }
        }
    }

    /// The least base element of a coset.
    pub fn representative(&self, c: &Elem) -> Elem {
        match (&self.kind, c) {
            (Kind::Finite { reps, .. }, Elem::Index(i)) => reps[*i].clone(),
            (Kind::IntegersMod(_), Elem::Residue(r)) => Elem::int(*r as i64),
            _ => c.clone(),
        }
    }

    /// The support ideal of the base relation, when it is known exactly.
    pub fn support_ideal(&self) -> Result<Ideal> {
        let ring = self.base.ring();
        match &self.kind {
            Kind::Identity => Ideal::generated(ring, vec![ring.zero()]),
            Kind::Finite { .. } => Ok(Ideal::from_elements(ring, self.support.members.clone())?
                .with_principal_generator(ring)),
            Kind::IntegersMod(p) => Ideal::generated(ring, vec![Elem::int(*p as i64)]),
        }
    }
}

fn symbolic_support(relation: &Relation) -> Option<&Ideal> {
    match relation.spec() {
        QuasiOrderSpec::TrivialAtPrime(ideal) => Some(ideal),
        QuasiOrderSpec::FromValuation(ValuationSpec::Trivial { ideal }) => Some(ideal),
        _ => None,
    }
}

/// Builds `R/E₀` after checking the axioms on `window`. Finite rings are
/// handled exactly; `Z` with a symbolic support `(p)` maps to `Z/p`; other
/// infinite rings need `E₀ ∩ window = {0}` and give the identity quotient.
pub fn quotient_quasiorder(relation: &Relation, window: &Window) -> Result<QuotientRingView> {
    let report = check_axioms(relation, window)?;
    if !report.all_pass() {
        return Err(Error::RejectedInput(Box::new(report)));
    }
    quotient_of_checked(relation, window)
}

/// [`quotient_quasiorder`] for a relation whose axioms already passed.
pub(crate) fn quotient_of_checked(relation: &Relation, window: &Window) -> Result<QuotientRingView> {
    let ring = relation.ring();
    if ring.is_finite() {
        return finite_quotient(relation);
    }
    let support = compute_support(relation, Some(window))?;
    if let Some(p) = symbolic_support(relation)
        .and_then(Ideal::integer_generator)
        .and_then(Integer::as_i64)
        .filter(|&p| p > 0)
    {
        let p = p as u64;
        let q = Ring::modular(p)?;
        let leq = (0..p)
            .map(|a| {
                (0..p)
                    .map(|b| relation.le(&Elem::int(a as i64), &Elem::int(b as i64)))
                    .collect()
            })
            .collect();
        let induced = Relation::new(q.clone(), QuasiOrderSpec::ExplicitMatrix { leq })?;
        let view = QuotientRingView {
            base: relation.clone(),
            support,
            ring: q,
            relation: induced,
            kind: Kind::IntegersMod(p),
        };
        spot_check(&view, window)?;
        return Ok(view);
    }
    if !support.is_zero_only() {
        return Err(Error::unsupported(format!(
            "cannot form the quotient of {ring} by a support other than {{0}} or (p)"
        )));
    }
    Ok(QuotientRingView {
        base: relation.clone(),
        support,
        ring: ring.clone(),
        relation: relation.clone(),
        kind: Kind::Identity,
    })
}

/// `x ∼ x + c` for window elements `x` and small multiples `c` of `p`.
fn spot_check(view: &QuotientRingView, window: &Window) -> Result<()> {
    let Kind::IntegersMod(p) = view.kind else {
        return Ok(());
    };
    let ring = view.base.ring();
    for x in window.elements(ring)? {
        for k in [-2i64, -1, 1, 2] {
            let c = Elem::Int(Integer::from(k).mul(&Integer::from(p as i64)));
            let shifted = ring.add_in(&x, &c);
            if !view.base.eqv(&x, &shifted) {
                return Err(Error::Inconsistency {
                    message: "relation is not constant on cosets of the support".into(),
                    witness: vec![ring.render(&x), ring.render(&c)],
                });
            }
        }
    }
    Ok(())
}

fn finite_quotient(relation: &Relation) -> Result<QuotientRingView> {
    let ring = relation.ring();
    let t = ring.tables()?;
    let n = t.len();
    let zero = &t.elems[t.zero];
    let support: Vec<usize> = (0..n).filter(|&i| relation.eqv(&t.elems[i], zero)).collect();
    for x in 0..n {
        for &c in &support {
            if !relation.eqv(&t.elems[x], &t.elems[t.add(x, c)]) {
                return Err(Error::Inconsistency {
                    message: "relation is not constant on cosets of the support".into(),
                    witness: vec![ring.render(&t.elems[x]), ring.render(&t.elems[c])],
                });
            }
        }
    }
    // Least coset member, then dense coset numbering in that order.
    let least: Vec<usize> = (0..n)
        .map(|x| support.iter().map(|&c| t.add(x, c)).min().expect("0 is in the support"))
        .collect();
    let mut rep_idx: Vec<usize> = least.clone();
    rep_idx.sort_unstable();
    rep_idx.dedup();
    let pos = |i: usize| rep_idx.binary_search(&least[i]).expect("representative");
    let class_of: Vec<usize> = (0..n).map(pos).collect();
    let m = rep_idx.len();
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..m)
            .map(|a| (0..m).map(|b| class_of[op(rep_idx[a], rep_idx[b])]).collect())
            .collect()
    };
    let add = table(&|a, b| t.add(a, b));
    let mul = table(&|a, b| t.mul(a, b));
    let q = Ring::table(add, mul, Some(class_of[t.zero]), Some(class_of[t.one]))?;
    let reps: Vec<Elem> = rep_idx.iter().map(|&i| t.elems[i].clone()).collect();
    let leq = reps
        .iter()
        .map(|a| reps.iter().map(|b| relation.le(a, b)).collect())
        .collect();
    let induced = Relation::new(q.clone(), QuasiOrderSpec::ExplicitMatrix { leq })?;
    Ok(QuotientRingView {
        base: relation.clone(),
        support: SupportSet {
            members: support.iter().map(|&i| t.elems[i].clone()).collect(),
            exhaustive: true,
        },
        ring: q,
        relation: induced,
        kind: Kind::Finite { class_of, reps },
    })
}

fn quotient_support_is_zero(view: &QuotientRingView, is_zero: impl Fn(&Elem) -> bool) -> Result<()> {
    if view.ring.is_finite() {
        let zero = view.ring.zero();
        if let Some(x) = view.ring.elements()?.into_iter().find(|x| *x != zero && is_zero(x)) {
            return Err(Error::precondition(format!(
                "the quotient structure has support beyond 0 (at {})",
                view.ring.render(&x)
            )));
        }
    }
    Ok(())
}

/// `v(x) = v̄(x̄)`. A lift taking only the values 0 and ∞ is reported as the
/// trivial valuation at `E₀`.
pub fn lift_valuation(v: &ValuationSpec, view: &QuotientRingView) -> Result<ValuationSpec> {
    v.validate(&view.ring)?;
    quotient_support_is_zero(view, |x| v.vmap(&view.ring, x).is_infinite())?;
    let base = view.base.ring();
    match &view.kind {
        Kind::Identity => {
            if let ValuationSpec::Trivial { ideal } = v {
                if !ideal.is_zero_ideal(base) {
                    return Err(Error::precondition("the quotient valuation has support beyond 0"));
                }
            }
            Ok(v.clone())
        }
        Kind::Finite { .. } | Kind::IntegersMod(_) => {
            let qels = view.ring.elements()?;
            let trivial = qels.iter().all(|x| {
                let val = v.vmap(&view.ring, x);
                val.is_infinite() || val == crate::group::Value::scalar(0)
            });
            if trivial {
                return Ok(ValuationSpec::Trivial {
                    ideal: view.support_ideal()?,
                });
            }
            if matches!(view.kind, Kind::IntegersMod(_)) {
                return Err(Error::unsupported("nontrivial valuation on a finite quotient of Z"));
            }
            let values = base
                .elements()?
                .iter()
                .map(|x| v.vmap(&view.ring, &view.project(x)))
                .collect();
            Ok(ValuationSpec::Table { values })
        }
    }
}

/// `x ≤ y ⇔ x̄ ≤' ȳ`.
pub fn lift_order(order: &OrderSpec, view: &QuotientRingView) -> Result<OrderSpec> {
    order.validate(&view.ring)?;
    let zero = view.ring.zero();
    quotient_support_is_zero(view, |x| {
        order.le(&view.ring, x, &zero) && order.le(&view.ring, &zero, x)
    })?;
    match &view.kind {
        Kind::Identity => Ok(order.clone()),
        Kind::Finite { .. } => {
            let els = view.base.ring().elements()?;
            let proj: Vec<Elem> = els.iter().map(|x| view.project(x)).collect();
            let leq = proj
                .iter()
                .map(|a| proj.iter().map(|b| order.le(&view.ring, a, b)).collect())
                .collect();
            Ok(OrderSpec::ExplicitMatrix { leq })
        }
        Kind::IntegersMod(_) => Err(Error::unsupported("orders do not lift from a finite quotient of Z")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Value;
    use crate::relation::check_axioms;

    fn trivial(n: u64, p: u64) -> Relation {
        Relation::trivial_at(Ring::Modular(n), vec![Elem::Residue(p)]).unwrap()
    }

    #[test]
    fn z12_at_three_gives_three_cosets() {
        let q = quotient_quasiorder(&trivial(12, 3), &Window::All).unwrap();
        assert_eq!(q.ring().size(), Some(3));
        assert!(q.ring().is_field());
        assert_eq!(q.support().members, [0, 3, 6, 9].map(Elem::Residue).to_vec());
        let s = compute_support(q.relation(), None).unwrap();
        assert!(s.is_zero_only());
        assert!(check_axioms(q.relation(), &Window::All).unwrap().all_pass());
        assert_eq!(q.project(&Elem::Residue(7)), q.project(&Elem::Residue(1)));
        assert_eq!(q.representative(&q.project(&Elem::Residue(8))), Elem::Residue(2));
    }

    #[test]
    fn z6_at_two_gives_two_element_field() {
        let q = quotient_quasiorder(&trivial(6, 2), &Window::All).unwrap();
        assert_eq!(q.ring().size(), Some(2));
        let (z, o) = (q.ring().zero(), q.ring().one());
        assert!(q.relation().lt(&z, &o));
    }

    #[test]
    fn padic_quotient_is_identity() {
        let rel = Relation::new(
            Ring::Integers,
            QuasiOrderSpec::FromValuation(ValuationSpec::PAdic { p: 2 }),
        )
        .unwrap();
        let q = quotient_quasiorder(&rel, &Window::interval(16)).unwrap();
        assert!(q.is_identity());
        assert_eq!(*q.ring(), Ring::Integers);
    }

    #[test]
    fn integers_at_a_prime_give_residues() {
        let rel = Relation::trivial_at(Ring::Integers, vec![Elem::int(5)]).unwrap();
        let q = quotient_quasiorder(&rel, &Window::interval(20)).unwrap();
        assert_eq!(*q.ring(), Ring::Modular(5));
        let lifted = lift_valuation(&ValuationSpec::trivial(q.ring(), vec![]).unwrap(), &q).unwrap();
        assert!(matches!(lifted, ValuationSpec::Trivial { .. }));
    }

    #[test]
    fn lift_of_trivial_valuation() {
        let rel = trivial(6, 2);
        let q = quotient_quasiorder(&rel, &Window::All).unwrap();
        let v = ValuationSpec::trivial(q.ring(), vec![]).unwrap();
        let lifted = lift_valuation(&v, &q).unwrap();
        let ring = rel.ring();
        assert_eq!(lifted.vmap(ring, &Elem::Residue(3)), crate::group::Value::scalar(0));
        assert!(lifted.vmap(ring, &Elem::Residue(4)).is_infinite());
        let ValuationSpec::Trivial { ideal } = lifted else {
            panic!()
        };
        assert_eq!(ideal.generators, vec![Elem::Residue(2)]);
    }

    #[test]
    fn lift_rejects_support_mismatch() {
        let q = quotient_quasiorder(&trivial(6, 3), &Window::All).unwrap();
        let one = q.ring().one();
        // Support of this valuation on the quotient is everything but 1.
        let all = ValuationSpec::Table {
            values: q
                .ring()
                .elements()
                .unwrap()
                .iter()
                .map(|x| if *x == one { Value::scalar(0) } else { Value::Infinity })
                .collect(),
        };
        assert!(lift_valuation(&all, &q).is_err());
    }
}

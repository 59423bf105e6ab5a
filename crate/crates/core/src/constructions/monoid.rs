use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::relation::{compute_support, engine, with_universe, Relation};
use crate::ring::{Elem, Ring, Window};

/// Classes of `∼` on the nonzero window elements of a domain, ordered by
/// `[x] ≤ [y] ⇔ y ⪯ x` and multiplied by `[x]·[y] = [xy]`.
#[derive(Clone, Debug)]
pub struct ValueMonoid {
    relation: Relation,
    /// Classes in ascending monoid order; each lists its window members in
    /// window order.
    classes: Vec<Vec<Elem>>,
    exhaustive: bool,
}

fn cmp_by(relation: &Relation, a: &Elem, b: &Elem) -> Ordering {
    match (relation.le(a, b), relation.le(b, a)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

impl ValueMonoid {
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn ring(&self) -> &Ring {
        self.relation.ring()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    /// First window member of each class.
    pub fn representative(&self, class: usize) -> &Elem {
        &self.classes[class][0]
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// The window class equivalent to `x`, if any.
    pub fn class_of(&self, x: &Elem) -> Option<usize> {
        let r = &self.relation;
        self.classes
            .binary_search_by(|c| cmp_by(r, x, &c[0]))
            .ok()
    }

    /// `[x] ≤ [y]` in the monoid order.
    pub fn le(&self, x: &Elem, y: &Elem) -> bool {
        self.relation.le(y, x)
    }

    /// Class of the product of two class representatives, when it is one of
    /// the window classes.
    pub fn mul_class(&self, i: usize, j: usize) -> Option<usize> {
        let p = self.ring().mul_in(self.representative(i), self.representative(j));
        self.class_of(&p)
    }
}

/// Partitions `window ∖ {0}` into `∼`-classes. Requires support `{0}` on
/// the window and `0 ≺ −1`; verifies cancellation `z ≁ 0 ∧ xz ∼ yz ⇒ x ∼ y`
/// over all window triples.
pub fn build_value_monoid(relation: &Relation, window: &Window) -> Result<ValueMonoid> {
    let ring = relation.ring();
    let support = compute_support(relation, Some(window))?;
    if !support.is_zero_only() {
        return Err(Error::precondition("value monoids need support {0}"));
    }
    let zero = ring.zero();
    if !relation.lt(&zero, &ring.minus_one()) {
        return Err(Error::precondition("value monoids need 0 ≺ -1"));
    }
    let cancel = with_universe(
        relation,
        window,
        |u, els| engine::cancellation(u).map(|w| w.iter().map(|&i| els[i].clone()).collect::<Vec<_>>()),
        |u| engine::cancellation(u).map(|w| u.to_elems(&w)),
    )?;
    if let Some(w) = cancel {
        return Err(Error::Inconsistency {
            message: "cancellation fails: xz ∼ yz with z ≁ 0 but x ≁ y".into(),
            witness: w.iter().map(|e| ring.render(e)).collect(),
        });
    }
    let exhaustive = ring.is_finite() && window.is_exhaustive();
    let els = if exhaustive {
        ring.elements()?
    } else {
        window.elements(ring)?
    };
    let mut nonzero: Vec<Elem> = els.into_iter().filter(|x| *x != zero).collect();
    // Stable sort, ⪯-largest first: ascending monoid order.
    nonzero.sort_by(|a, b| cmp_by(relation, b, a));
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in nonzero {
        match classes.last_mut() {
            Some(c) if relation.eqv(&c[0], &x) => c.push(x),
            _ => classes.push(vec![x]),
        }
    }
    Ok(ValueMonoid {
        relation: relation.clone(),
        classes,
        exhaustive,
    })
}

/// `[pos] − [neg]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub pos: Elem,
    pub neg: Elem,
}

/// An integer embedding of the group: `values[c]` is the image of class
/// `c`, with `[generator]` mapped to ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOne {
    pub generator: Elem,
    pub values: Vec<i64>,
}

/// Formal differences of value-monoid classes, with `([a],[b]) = ([c],[d])
/// ⇔ ad ∼ cb` and `([a],[b]) ≤ ([c],[d]) ⇔ cb ⪯ ad`.
#[derive(Clone, Debug)]
pub struct FormalDifferenceGroup {
    monoid: ValueMonoid,
}

const MAX_POWER: u32 = 64;
const SAMPLE_CLASSES: usize = 10;

impl FormalDifferenceGroup {
    pub fn monoid(&self) -> &ValueMonoid {
        &self.monoid
    }

    fn ring(&self) -> &Ring {
        self.monoid.ring()
    }

    pub fn zero(&self) -> Difference {
        let one = self.ring().one();
        Difference {
            pos: one.clone(),
            neg: one,
        }
    }

    /// `w(x) = [x] − [1]`.
    pub fn embed(&self, x: &Elem) -> Difference {
        Difference {
            pos: x.clone(),
            neg: self.ring().one(),
        }
    }

    pub fn add(&self, d: &Difference, e: &Difference) -> Difference {
        let r = self.ring();
        Difference {
            pos: r.mul_in(&d.pos, &e.pos),
            neg: r.mul_in(&d.neg, &e.neg),
        }
    }

    pub fn neg(&self, d: &Difference) -> Difference {
        Difference {
            pos: d.neg.clone(),
            neg: d.pos.clone(),
        }
    }

    pub fn eq(&self, d: &Difference, e: &Difference) -> bool {
        let r = self.ring();
        self.monoid
            .relation
            .eqv(&r.mul_in(&d.pos, &e.neg), &r.mul_in(&e.pos, &d.neg))
    }

    pub fn le(&self, d: &Difference, e: &Difference) -> bool {
        let r = self.ring();
        self.monoid
            .relation
            .le(&r.mul_in(&e.pos, &d.neg), &r.mul_in(&d.pos, &e.neg))
    }

    pub fn cmp(&self, d: &Difference, e: &Difference) -> Ordering {
        match (self.le(d, e), self.le(e, d)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Detects an order embedding into the integers: the class just above
    /// (or below) `[1]` is taken as generator `π`, and every window class must
    /// be `[π^k]` or `−[π^k]`.
    pub fn rank_one(&self) -> Option<RankOne> {
        let m = &self.monoid;
        let ring = self.ring();
        let one = ring.one();
        let u = m.class_of(&one)?;
        let (pi_class, sign) = if u + 1 < m.class_count() {
            (u + 1, 1)
        } else if u > 0 {
            (u - 1, -1)
        } else {
            return None;
        };
        let pi = m.representative(pi_class).clone();
        let rel = &m.relation;
        let mut values = Vec::with_capacity(m.class_count());
        for c in 0..m.class_count() {
            let r = m.representative(c);
            let mut power = one.clone();
            let mut found = None;
            for k in 0..=MAX_POWER {
                if rel.eqv(r, &power) {
                    found = Some(sign * k as i64);
                    break;
                }
                if rel.eqv(&ring.mul_in(r, &power), &one) {
                    found = Some(-sign * k as i64);
                    break;
                }
                power = ring.mul_in(&power, &pi);
            }
            values.push(found?);
        }
        values.windows(2).all(|w| w[0] < w[1]).then_some(RankOne {
            generator: pi,
            values,
        })
    }
}

/// Completes a value monoid to its group of formal differences, verifying
/// on differences of (up to ten) class representatives that equality is an
/// equivalence, comparisons do not depend on representatives, the order is
/// total and translation invariant, and negation inverts.
pub fn grothendieck_group(monoid: ValueMonoid) -> Result<FormalDifferenceGroup> {
    let g = FormalDifferenceGroup { monoid };
    let m = &g.monoid;
    let k = m.class_count().min(SAMPLE_CLASSES);
    let ring = g.ring().clone();
    let mut samples: Vec<Difference> = Vec::new();
    for a in 0..k {
        for b in 0..k {
            samples.push(Difference {
                pos: m.representative(a).clone(),
                neg: m.representative(b).clone(),
            });
        }
    }
    let render = |ds: &[&Difference]| -> Vec<String> {
        ds.iter()
            .map(|d| format!("[{}]-[{}]", ring.render(&d.pos), ring.render(&d.neg)))
            .collect()
    };
    let fail = |message: &str, ds: &[&Difference]| Error::Inconsistency {
        message: message.to_string(),
        witness: render(ds),
    };
    // Alternative representatives: the last window member of each class.
    let alt = |d: &Difference| -> Difference {
        let last = |x: &Elem| {
            m.class_of(x)
                .map_or_else(|| x.clone(), |c| m.classes[c].last().expect("nonempty").clone())
        };
        Difference {
            pos: last(&d.pos),
            neg: last(&d.neg),
        }
    };
    let zero = g.zero();
    for d in &samples {
        if !g.eq(&g.add(d, &g.neg(d)), &zero) {
            return Err(fail("d + (-d) differs from 0", &[d]));
        }
        let d2 = alt(d);
        if !g.eq(d, &d2) {
            return Err(fail("representatives of one class are unequal", &[d, &d2]));
        }
        for e in &samples {
            if g.le(d, e) != g.le(&d2, e) || g.le(e, d) != g.le(e, &d2) {
                return Err(fail("order depends on representatives", &[d, &d2, e]));
            }
            if !g.le(d, e) && !g.le(e, d) {
                return Err(fail("order is not total", &[d, e]));
            }
            if g.eq(d, e) != g.eq(e, d) {
                return Err(fail("equality is not symmetric", &[d, e]));
            }
        }
    }
    for d in &samples {
        for e in samples.iter().filter(|e| g.le(d, e)) {
            for f in &samples {
                if !g.le(&g.add(d, f), &g.add(e, f)) {
                    return Err(fail("order is not translation invariant", &[d, e, f]));
                }
                if g.eq(d, e) && g.eq(e, f) && !g.eq(d, f) {
                    return Err(fail("equality is not transitive", &[d, e, f]));
                }
            }
        }
    }
    Ok(g)
}

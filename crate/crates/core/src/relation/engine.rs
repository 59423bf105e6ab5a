//! Scan engine for the quasi-order axioms.
//!
//! A [`Universe`] is a finite window together with precomputed window-pair
//! comparisons, sums and products. Sums and products may leave the window;
//! the comparator is evaluated on them exactly. Every scan returns the first
//! violation in scan order (outer index first), so parallel and serial runs
//! report the same witness.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::ring::{Elem, FiniteTables};

use super::Relation;

pub(crate) trait Universe: Sync {
    type V: Sync;

    fn size(&self) -> usize;
    fn leq(&self, i: usize, j: usize) -> bool;
    fn sum(&self, i: usize, j: usize) -> &Self::V;
    fn product(&self, i: usize, j: usize) -> &Self::V;
    fn leq_v(&self, a: &Self::V, b: &Self::V) -> bool;
    /// Index of a value inside the window, if it lies there.
    fn position(&self, v: &Self::V) -> Option<usize>;
    fn zero(&self) -> usize;
    fn one(&self) -> usize;

    fn equiv(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    fn strict(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    fn equiv_v(&self, a: &Self::V, b: &Self::V) -> bool {
        self.leq_v(a, b) && self.leq_v(b, a)
    }
}

pub(crate) type Witness = Vec<usize>;

fn first_in_order<F>(n: usize, f: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(f)
}

pub(crate) fn reflexive<U: Universe>(u: &U) -> Option<Witness> {
    (0..u.size()).find(|&i| !u.leq(i, i)).map(|i| vec![i])
}

pub(crate) fn total<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    first_in_order(n, |i| {
        (0..n)
            .find(|&j| !u.leq(i, j) && !u.leq(j, i))
            .map(|j| vec![i, j])
    })
}

/// Transitivity in O(n²) for total relations: a total relation is
/// transitive iff `x ⪯ y ⇔ |↓x| ≤ |↓y|` where `↓x = {w : w ⪯ x}`. On
/// failure (or for non-total input) falls back to the ordered triple scan so
/// the witness is the scan-order minimum.
pub(crate) fn transitive<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    if total(u).is_none() {
        let down: Vec<usize> = (0..n)
            .into_par_iter()
            .map(|x| (0..n).filter(|&w| u.leq(w, x)).count())
            .collect();
        let consistent = (0..n)
            .into_par_iter()
            .all(|x| (0..n).all(|y| u.leq(x, y) == (down[x] <= down[y])));
        if consistent {
            return None;
        }
    }
    first_in_order(n, |x| {
        for y in 0..n {
            if !u.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if u.leq(y, z) && !u.leq(x, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `0 ≺ 1`.
pub(crate) fn qr1<U: Universe>(u: &U) -> Option<Witness> {
    (!u.strict(u.zero(), u.one())).then(|| vec![u.zero(), u.one()])
}

/// `xy ⪯ 0 ⇒ x ⪯ 0 ∨ y ⪯ 0`, for pairs whose product lies in the window.
pub(crate) fn qr2<U: Universe>(u: &U) -> Option<Witness> {
    let (n, z) = (u.size(), u.zero());
    first_in_order(n, |x| {
        if u.leq(x, z) {
            return None;
        }
        (0..n)
            .find(|&y| {
                !u.leq(y, z)
                    && u.position(u.product(x, y))
                        .is_some_and(|k| u.leq(k, z))
            })
            .map(|y| vec![x, y])
    })
}

/// `x ⪯ y, 0 ⪯ z ⇒ xz ⪯ yz`.
pub(crate) fn qr3<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    let nonneg: Vec<usize> = (0..n).filter(|&z| u.leq(u.zero(), z)).collect();
    first_in_order(n, |x| {
        for y in 0..n {
            if !u.leq(x, y) {
                continue;
            }
            for &z in &nonneg {
                if !u.leq_v(u.product(x, z), u.product(y, z)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `x ⪯ y, z ≁ y ⇒ x + z ⪯ y + z`.
pub(crate) fn qr4<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    first_in_order(n, |x| {
        for y in 0..n {
            if !u.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if !u.equiv(z, y) && !u.leq_v(u.sum(x, z), u.sum(y, z)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `x ⪯ y ⇒ x + z ⪯ y + z`, without the side condition of QR4.
pub(crate) fn translation<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    first_in_order(n, |x| {
        for y in 0..n {
            if !u.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if !u.leq_v(u.sum(x, z), u.sum(y, z)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `xy ∼ 0 ⇒ x ∼ 0 ∨ y ∼ 0`, products evaluated exactly.
pub(crate) fn support_domain<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    let z = u.zero();
    let zero_v = u.sum(z, z);
    first_in_order(n, |x| {
        if u.equiv(x, z) {
            return None;
        }
        (0..n)
            .find(|&y| !u.equiv(y, z) && u.equiv_v(u.product(x, y), zero_v))
            .map(|y| vec![x, y])
    })
}

/// Multiplicative cancellation by positive elements, scanned in its
/// strict-monotonicity form `0 ≺ z, x ≺ y ⇒ xz ≺ yz`. A witness `(x, y, z)`
/// has `x ≺ y`, `0 ≺ z` and `yz ⪯ xz`, i.e. the hypothesis `yz ⪯ xz` of
/// the cancellation axiom holds while its conclusion `y ⪯ x` fails.
pub(crate) fn qr5<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    let positive: Vec<usize> = (0..n).filter(|&z| u.strict(u.zero(), z)).collect();
    first_in_order(n, |x| {
        for y in 0..n {
            if !u.strict(x, y) {
                continue;
            }
            for &z in &positive {
                if u.leq_v(u.product(y, z), u.product(x, z)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `x ≁ 0 ∧ y ∼ 0 ⇒ x + y ∼ x`.
pub(crate) fn absorbs_support<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    let support: Vec<usize> = (0..n).filter(|&y| u.equiv(y, u.zero())).collect();
    first_in_order(n, |x| {
        if u.equiv(x, u.zero()) {
            return None;
        }
        support
            .iter()
            .find(|&&y| {
                let s = u.sum(x, y);
                let xv = u.sum(x, u.zero());
                !u.equiv_v(s, xv)
            })
            .map(|&y| vec![x, y])
    })
}

/// `z ≁ 0 ∧ xz ∼ yz ⇒ x ∼ y`.
pub(crate) fn cancellation<U: Universe>(u: &U) -> Option<Witness> {
    let n = u.size();
    let nonzero: Vec<usize> = (0..n).filter(|&z| !u.equiv(z, u.zero())).collect();
    first_in_order(n, |x| {
        for y in 0..n {
            if u.equiv(x, y) {
                continue;
            }
            for &z in &nonzero {
                if u.equiv_v(u.product(x, z), u.product(y, z)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}

/// `0 ⪯ x²`.
pub(crate) fn squares_nonnegative<U: Universe>(u: &U) -> Option<Witness> {
    let z = u.sum(u.zero(), u.zero());
    (0..u.size())
        .find(|&x| !u.leq_v(z, u.product(x, x)))
        .map(|x| vec![x])
}

/// Support of the relation restricted to the window.
pub(crate) fn support_indices<U: Universe>(u: &U) -> Vec<usize> {
    (0..u.size()).filter(|&i| u.equiv(i, u.zero())).collect()
}

/// Checks that `E₀` is a proper ideal and prime: sums and ring multiples of
/// window support elements stay in `E₀`, `1 ∉ E₀`, and `xy ∼ 0` forces a
/// factor into `E₀`. Returns the name of the failing property with its
/// witness.
pub(crate) fn support_prime<U: Universe>(u: &U) -> Option<(&'static str, Witness)> {
    let n = u.size();
    let z = u.zero();
    let zero_v = u.sum(z, z);
    let support = support_indices(u);
    if u.equiv(u.one(), z) {
        return Some(("proper", vec![u.one()]));
    }
    for &a in &support {
        for &b in &support {
            if !u.equiv_v(u.sum(a, b), zero_v) {
                return Some(("closed-under-addition", vec![a, b]));
            }
        }
        for r in 0..n {
            if !u.equiv_v(u.product(a, r), zero_v) {
                return Some(("absorbs-multiplication", vec![a, r]));
            }
        }
    }
    support_domain(u).map(|w| ("prime", w))
}

/// `x ∼ 0 ⇒ x = 0`.
pub(crate) fn trivial_support<U: Universe>(u: &U) -> Option<Witness> {
    (0..u.size())
        .find(|&x| x != u.zero() && u.equiv(x, u.zero()))
        .map(|x| vec![x])
}

/// Window over an arbitrary relation, with sums and products materialised.
pub(crate) struct WindowScan<'a> {
    relation: &'a Relation,
    elems: Vec<Elem>,
    leq: Vec<bool>,
    sums: Vec<Elem>,
    prods: Vec<Elem>,
    index: HashMap<Elem, usize>,
    zero: usize,
    one: usize,
}

impl<'a> WindowScan<'a> {
    pub(crate) fn new(relation: &'a Relation, elems: Vec<Elem>) -> Self {
        let ring = relation.ring();
        let n = elems.len();
        let index: HashMap<Elem, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let pairs = |f: &(dyn Fn(&Elem, &Elem) -> Elem + Sync)| -> Vec<Elem> {
            (0..n * n)
                .into_par_iter()
                .map(|k| f(&elems[k / n], &elems[k % n]))
                .collect()
        };
        let sums = pairs(&|a, b| ring.add_in(a, b));
        let prods = pairs(&|a, b| ring.mul_in(a, b));
        let leq = (0..n * n)
            .into_par_iter()
            .map(|k| relation.le(&elems[k / n], &elems[k % n]))
            .collect();
        let zero = index[&ring.zero()];
        let one = index[&ring.one()];
        WindowScan {
            relation,
            elems,
            leq,
            sums,
            prods,
            index,
            zero,
            one,
        }
    }

    pub(crate) fn to_elems(&self, w: &[usize]) -> Vec<Elem> {
        w.iter().map(|&i| self.elems[i].clone()).collect()
    }
}

impl Universe for WindowScan<'_> {
    type V = Elem;

    fn size(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elems.len() + j]
    }

    #[inline]
    fn sum(&self, i: usize, j: usize) -> &Elem {
        &self.sums[i * self.elems.len() + j]
    }

    #[inline]
    fn product(&self, i: usize, j: usize) -> &Elem {
        &self.prods[i * self.elems.len() + j]
    }

    fn leq_v(&self, a: &Elem, b: &Elem) -> bool {
        self.relation.le(a, b)
    }

    fn position(&self, v: &Elem) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }
}

/// A finite ring with a relation given as a boolean matrix over element
/// indices. Every sum and product lies in the universe.
pub(crate) struct FiniteScan<'a> {
    tables: &'a IndexTables,
    leq: Vec<bool>,
}

/// Index arithmetic in a layout the scans can borrow.
pub(crate) struct IndexTables {
    n: usize,
    sum: Vec<usize>,
    prod: Vec<usize>,
    zero: usize,
    one: usize,
}

impl IndexTables {
    pub(crate) fn new(t: &FiniteTables) -> Self {
        let n = t.len();
        let mut sum = Vec::with_capacity(n * n);
        let mut prod = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sum.push(t.add(a, b));
                prod.push(t.mul(a, b));
            }
        }
        IndexTables {
            n,
            sum,
            prod,
            zero: t.zero,
            one: t.one,
        }
    }
}

impl<'a> FiniteScan<'a> {
    pub(crate) fn new(tables: &'a IndexTables, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), tables.n * tables.n);
        FiniteScan { tables, leq }
    }
}

impl Universe for FiniteScan<'_> {
    type V = usize;

    fn size(&self) -> usize {
        self.tables.n
    }

    #[inline]
    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.tables.n + j]
    }

    #[inline]
    fn sum(&self, i: usize, j: usize) -> &usize {
        &self.tables.sum[i * self.tables.n + j]
    }

    #[inline]
    fn product(&self, i: usize, j: usize) -> &usize {
        &self.tables.prod[i * self.tables.n + j]
    }

    #[inline]
    fn leq_v(&self, a: &usize, b: &usize) -> bool {
        self.leq(*a, *b)
    }

    fn position(&self, v: &usize) -> Option<usize> {
        Some(*v)
    }

    fn zero(&self) -> usize {
        self.tables.zero
    }

    fn one(&self) -> usize {
        self.tables.one
    }
}

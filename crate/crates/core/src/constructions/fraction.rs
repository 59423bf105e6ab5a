use std::collections::HashMap;

use num_integer::Integer as _;
use rayon::prelude::*;

use crate::checks::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::relation::{check_axioms, compute_support, engine, Relation};
use crate::ring::{Elem, Integer, Ring, Window};

/// `num / den` with `den ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: Elem,
    pub den: Elem,
}

/// The fraction field of a domain carrying a quasi-order with support
/// `{0}`, ordered by `a/b ⊴ x/y ⇔ a·b·y² ⪯ x·y·b²`.
#[derive(Clone, Debug)]
pub struct FractionExtension {
    base: Relation,
    /// Every `(a, b)` with `a, b` in the window and `b ≠ 0`.
    window: Vec<Fraction>,
    /// One fraction per equality class, first occurrence in window order.
    reps: Vec<Fraction>,
}

/// Reduced form of an integer fraction, used as a hash key.
fn integer_key(f: &Fraction) -> Option<(Integer, Integer)> {
    let (a, b) = (f.num.as_int()?.to_big(), f.den.as_int()?.to_big());
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / &g, b / &g);
    if b < num_bigint::BigInt::from(0) {
        a = -a;
        b = -b;
    }
    Some((Integer::from(a), Integer::from(b)))
}

impl FractionExtension {
    pub fn base(&self) -> &Relation {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn representatives(&self) -> &[Fraction] {
        &self.reps
    }

    pub fn window_size(&self) -> usize {
        self.window.len()
    }

    pub fn fraction(&self, num: Elem, den: Elem) -> Result<Fraction> {
        let ring = self.ring();
        ring.check(&num)?;
        ring.check(&den)?;
        if den == ring.zero() {
            return Err(Error::structural("zero denominator"));
        }
        Ok(Fraction { num, den })
    }

    /// `a/b = c/d ⇔ ad = cb`.
    pub fn equal(&self, f: &Fraction, g: &Fraction) -> bool {
        let r = self.ring();
        r.mul_in(&f.num, &g.den) == r.mul_in(&g.num, &f.den)
    }

    pub fn leq(&self, f: &Fraction, g: &Fraction) -> Result<bool> {
        for h in [f, g] {
            self.fraction(h.num.clone(), h.den.clone())?;
        }
        Ok(self.le(f, g))
    }

    pub(crate) fn le(&self, f: &Fraction, g: &Fraction) -> bool {
        let r = self.ring();
        let (a, b, x, y) = (&f.num, &f.den, &g.num, &g.den);
        let lhs = r.mul_in(&r.mul_in(a, b), &r.mul_in(y, y));
        let rhs = r.mul_in(&r.mul_in(x, y), &r.mul_in(b, b));
        self.base.le(&lhs, &rhs)
    }

    pub fn add(&self, f: &Fraction, g: &Fraction) -> Fraction {
        let r = self.ring();
        Fraction {
            num: r.add_in(&r.mul_in(&f.num, &g.den), &r.mul_in(&g.num, &f.den)),
            den: r.mul_in(&f.den, &g.den),
        }
    }

    pub fn mul(&self, f: &Fraction, g: &Fraction) -> Fraction {
        let r = self.ring();
        Fraction {
            num: r.mul_in(&f.num, &g.num),
            den: r.mul_in(&f.den, &g.den),
        }
    }

    pub fn render(&self, f: &Fraction) -> String {
        format!("{}/{}", self.ring().render(&f.num), self.ring().render(&f.den))
    }

    /// Reflexivity, transitivity, totality and Q1–Q3 over the
    /// representatives; independence of the representative over the whole
    /// fraction window; agreement with the base relation on denominators 1.
    pub fn check(&self) -> CheckReport {
        let scan = FractionScan::new(self);
        let ring = self.ring();
        let mut report = CheckReport::default();
        let frac_check = |name: &str, w: Option<Vec<usize>>| Check {
            name: name.to_string(),
            status: if w.is_some() {
                crate::checks::Status::Fail
            } else {
                crate::checks::Status::PassOnWindow
            },
            rendered: w
                .as_ref()
                .map(|w| w.iter().map(|&i| self.render(&self.reps[i])).collect()),
            witness: None,
        };
        report.push(frac_check("reflexive", engine::reflexive(&scan)));
        report.push(frac_check("transitive", engine::transitive(&scan)));
        report.push(frac_check("total", engine::total(&scan)));
        report.push(frac_check("Q1", engine::trivial_support(&scan)));
        report.push(frac_check("Q2", engine::qr3(&scan)));
        report.push(frac_check("Q3", engine::qr4(&scan)));

        let ill_defined = self
            .window
            .par_iter()
            .find_map_first(|f| {
                let rep = &self.reps[scan.position_of(f).expect("every fraction has a representative")];
                self.reps
                    .iter()
                    .find(|g| self.le(f, g) != self.le(rep, g) || self.le(g, f) != self.le(g, rep))
                    .map(|g| vec![self.render(f), self.render(g)])
            });
        report.push(Check {
            name: "well-defined".into(),
            status: if ill_defined.is_some() {
                crate::checks::Status::Fail
            } else {
                crate::checks::Status::PassOnWindow
            },
            witness: None,
            rendered: ill_defined,
        });

        let one = ring.one();
        let nums: Vec<&Elem> = self.window.iter().filter(|f| f.den == one).map(|f| &f.num).collect();
        let mismatch = nums.iter().find_map(|a| {
            nums.iter()
                .find(|x| {
                    let fa = Fraction { num: (*a).clone(), den: one.clone() };
                    let fx = Fraction { num: (**x).clone(), den: one.clone() };
                    self.le(&fa, &fx) != self.base.le(a, x)
                })
                .map(|x| vec![(*a).clone(), (*x).clone()])
        });
        report.push(Check::from_witness("extends-base", ring, false, mismatch));
        report
    }
}

/// Builds the extension over `{(a, b) : a, b ∈ window, b ≠ 0}`. The base
/// ring must be a domain, the relation must pass the axioms on the window
/// and have support `{0}` there.
pub fn fraction_extension(relation: &Relation, window: &Window) -> Result<FractionExtension> {
    let ring = relation.ring();
    let support = compute_support(relation, Some(window))?;
    if !support.is_zero_only() {
        return Err(Error::precondition(
            "the support is not {0}; take the quotient by the support first",
        ));
    }
    if !ring.is_integral_domain() {
        return Err(Error::precondition(format!("{ring} is not an integral domain")));
    }
    let report = check_axioms(relation, window)?;
    if !report.all_pass() {
        return Err(Error::RejectedInput(Box::new(report)));
    }
    let els = if ring.is_finite() && window.is_exhaustive() {
        ring.elements()?
    } else {
        window.elements(ring)?
    };
    let zero = ring.zero();
    let all: Vec<Fraction> = els
        .iter()
        .flat_map(|a| {
            els.iter().filter(|b| **b != zero).map(move |b| Fraction {
                num: a.clone(),
                den: b.clone(),
            })
        })
        .collect();
    let mut ext = FractionExtension {
        base: relation.clone(),
        window: all,
        reps: Vec::new(),
    };
    let mut reps: Vec<Fraction> = Vec::new();
    let mut keys: HashMap<(Integer, Integer), usize> = HashMap::new();
    for f in &ext.window {
        match integer_key(f) {
            Some(k) => {
                if !keys.contains_key(&k) {
                    keys.insert(k, reps.len());
                    reps.push(f.clone());
                }
            }
            None => {
                if !reps.iter().any(|g| ext.equal(f, g)) {
                    reps.push(f.clone());
                }
            }
        }
    }
    ext.reps = reps;
    Ok(ext)
}

/// Universe over fraction representatives with exact sums and products.
struct FractionScan<'a> {
    ext: &'a FractionExtension,
    leq: Vec<bool>,
    sums: Vec<Fraction>,
    prods: Vec<Fraction>,
    keys: HashMap<(Integer, Integer), usize>,
    zero: usize,
    one: usize,
}

impl<'a> FractionScan<'a> {
    fn new(ext: &'a FractionExtension) -> Self {
        let reps = &ext.reps;
        let n = reps.len();
        let grid = |f: &(dyn Fn(&Fraction, &Fraction) -> Fraction + Sync)| -> Vec<Fraction> {
            (0..n * n).into_par_iter().map(|k| f(&reps[k / n], &reps[k % n])).collect()
        };
        let sums = grid(&|a, b| ext.add(a, b));
        let prods = grid(&|a, b| ext.mul(a, b));
        let leq = (0..n * n)
            .into_par_iter()
            .map(|k| ext.le(&reps[k / n], &reps[k % n]))
            .collect();
        let keys = reps
            .iter()
            .enumerate()
            .filter_map(|(i, f)| integer_key(f).map(|k| (k, i)))
            .collect();
        let ring = ext.ring();
        let mut scan = FractionScan {
            ext,
            leq,
            sums,
            prods,
            keys,
            zero: 0,
            one: 0,
        };
        let unit = |num: Elem| Fraction { num, den: ring.one() };
        scan.zero = scan.position_of(&unit(ring.zero())).expect("0/1 is in the window");
        scan.one = scan.position_of(&unit(ring.one())).expect("1/1 is in the window");
        scan
    }

    fn position_of(&self, f: &Fraction) -> Option<usize> {
        match integer_key(f) {
            Some(k) => self.keys.get(&k).copied(),
            None => self.ext.reps.iter().position(|g| self.ext.equal(f, g)),
        }
    }
}

impl engine::Universe for FractionScan<'_> {
    type V = Fraction;

    fn size(&self) -> usize {
        self.ext.reps.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.ext.reps.len() + j]
    }

    fn sum(&self, i: usize, j: usize) -> &Fraction {
        &self.sums[i * self.ext.reps.len() + j]
    }

    fn product(&self, i: usize, j: usize) -> &Fraction {
        &self.prods[i * self.ext.reps.len() + j]
    }

    fn leq_v(&self, a: &Fraction, b: &Fraction) -> bool {
        self.ext.le(a, b)
    }

    fn position(&self, v: &Fraction) -> Option<usize> {
        self.position_of(v)
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderSpec;
    use crate::relation::QuasiOrderSpec;
    use crate::valuation::ValuationSpec;

    fn frac(a: i64, b: i64) -> Fraction {
        Fraction {
            num: Elem::int(a),
            den: Elem::int(b),
        }
    }

    #[test]
    fn formula_instances() {
        let padic = Relation::new(
            Ring::Integers,
            QuasiOrderSpec::FromValuation(ValuationSpec::PAdic { p: 2 }),
        )
        .unwrap();
        let ext = fraction_extension(&padic, &Window::interval(4)).unwrap();
        assert!(ext.leq(&frac(3, 1), &frac(1, 2)).unwrap());
        assert!(!ext.leq(&frac(1, 2), &frac(3, 1)).unwrap());
        let std = Relation::new(Ring::Integers, QuasiOrderSpec::FromOrder(OrderSpec::StandardInteger))
            .unwrap();
        let ext = fraction_extension(&std, &Window::interval(4)).unwrap();
        assert!(ext.leq(&frac(1, 2), &frac(3, 4)).unwrap());
        assert!(ext.leq(&frac(1, 0), &frac(1, 1)).is_err());
    }

    #[test]
    fn representatives_are_distinct_fractions() {
        let std = Relation::new(Ring::Integers, QuasiOrderSpec::FromOrder(OrderSpec::StandardInteger))
            .unwrap();
        let ext = fraction_extension(&std, &Window::interval(3)).unwrap();
        // 0 and ±{1, 2, 3, 1/2, 1/3, 2/3, 3/2}.
        assert_eq!(ext.representatives().len(), 15);
        let r = ext.check();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn nontrivial_support_is_refused() {
        let rel = Relation::trivial_at(Ring::Integers, vec![Elem::int(3)]).unwrap();
        assert!(matches!(
            fraction_extension(&rel, &Window::interval(5)),
            Err(Error::Precondition(_))
        ));
        let z6 = Relation::trivial_at(Ring::Modular(6), vec![Elem::Residue(2)]).unwrap();
        assert!(fraction_extension(&z6, &Window::All).is_err());
    }
}

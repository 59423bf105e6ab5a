//! Named structures: the standard examples and the two-variable
//! counterexample relation.

use serde_json::Value as Json;

use crate::checks::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::relation::{engine, with_universe, QuasiOrderSpec, Relation};
use crate::ring::{Elem, Ideal, Monomial, Poly, Ring, Window};
use crate::valuation::ValuationSpec;

/// Class of a polynomial under the counterexample relation: 0 below
/// everything, then the pure powers `X^i` by exponent, then one class for
/// every monomial involving `Y`. A polynomial takes the largest class among
/// its monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sec3Key {
    Zero,
    XPow(u32),
    YClass,
}

fn monomial_key(m: &Monomial) -> Sec3Key {
    if m.exponent(1) > 0 {
        Sec3Key::YClass
    } else {
        Sec3Key::XPow(m.exponent(0))
    }
}

pub(crate) fn sec3_key(f: &Poly) -> Sec3Key {
    f.terms()
        .map(|(m, _)| monomial_key(m))
        .max()
        .unwrap_or(Sec3Key::Zero)
}

/// The counterexample relation on a polynomial ring in exactly two
/// variables, the first playing `X` and the second `Y`.
pub fn sec3_relation(ring: &Ring) -> Result<Relation> {
    Relation::new(ring.clone(), QuasiOrderSpec::CounterexampleSec3)
}

pub fn sec3_window() -> Window {
    Window::poly(3, &[-2, -1, 1, 2])
}

/// The verified failure of cancellation at `x ≺ y`, `0 ≺ z`, `xz ∼ yz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationWitness {
    pub triple: [Elem; 3],
    pub x_below_y: bool,
    pub z_positive: bool,
    pub products_equivalent: bool,
}

impl CancellationWitness {
    pub fn holds(&self) -> bool {
        self.x_below_y && self.z_positive && self.products_equivalent
    }
}

#[derive(Clone, Debug)]
pub struct Prop32Report {
    /// Reflexivity, transitivity, totality, O1–O3 and the additivity axiom.
    pub checks: CheckReport,
    pub minus_one_positive: bool,
    /// The scan verdict for QR5 on the window.
    pub qr5: Check,
    pub witness: CancellationWitness,
    pub window_size: usize,
}

impl Prop32Report {
    /// Part (1) passes, `0 ≺ −1`, QR5 fails and the triple is a violation.
    pub fn reproduced(&self) -> bool {
        self.checks.all_pass() && self.minus_one_positive && !self.qr5.passed() && self.witness.holds()
    }

    pub fn to_json(&self, ring: &Ring) -> Json {
        serde_json::json!({
            "window_size": self.window_size,
            "axioms": self.checks.to_json(),
            "minus_one_positive": self.minus_one_positive,
            "qr5": self.qr5.to_json(),
            "cancellation_witness": {
                "x": ring.render(&self.witness.triple[0]),
                "y": ring.render(&self.witness.triple[1]),
                "z": ring.render(&self.witness.triple[2]),
                "x_below_y": self.witness.x_below_y,
                "z_positive": self.witness.z_positive,
                "products_equivalent": self.witness.products_equivalent,
            },
            "reproduced": self.reproduced(),
        })
    }
}

/// Runs the counterexample checks on `Q[X,Y]` over `window`.
pub fn prop32_report(window: &Window) -> Result<Prop32Report> {
    let ring = Ring::polynomial(["X", "Y"])?;
    let relation = sec3_relation(&ring)?;
    let (checks, qr5, window_size) = with_universe(
        &relation,
        window,
        |_, _| unreachable!("polynomial rings are infinite"),
        |u| {
            let mut checks = CheckReport::default();
            let mut push = |name: &str, w: Option<Vec<usize>>| {
                checks.push(Check::from_witness(name, &ring, false, w.map(|w| u.to_elems(&w))));
            };
            push("reflexive", engine::reflexive(u));
            push("transitive", engine::transitive(u));
            push("total", engine::total(u));
            push("O1", engine::qr1(u));
            push("O2", engine::qr2(u));
            push("O3", engine::qr3(u));
            push("Q3", engine::qr4(u));
            let qr5 = Check::from_witness("QR5", &ring, false, engine::qr5(u).map(|w| u.to_elems(&w)));
            (checks, qr5, engine::Universe::size(u))
        },
    )?;
    let x = Elem::Poly(Poly::term(Monomial::var(2, 0, 1), crate::ring::rational(1)));
    let x2 = Elem::Poly(Poly::term(Monomial::var(2, 0, 2), crate::ring::rational(1)));
    let y = Elem::Poly(Poly::term(Monomial::var(2, 1, 1), crate::ring::rational(1)));
    let zero = ring.zero();
    let witness = CancellationWitness {
        x_below_y: relation.lt(&x, &x2),
        z_positive: relation.lt(&zero, &y),
        products_equivalent: relation.eqv(&ring.mul_in(&x, &y), &ring.mul_in(&x2, &y)),
        triple: [x, x2, y],
    };
    Ok(Prop32Report {
        checks,
        minus_one_positive: relation.lt(&zero, &ring.minus_one()),
        qr5,
        witness,
        window_size,
    })
}

/// A ready-to-check structure.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: String,
    pub relation: Relation,
    pub window: Window,
}

impl Builtin {
    pub fn ring(&self) -> &Ring {
        self.relation.ring()
    }
}

const NAMES: [&str; 7] = [
    "z_standard",
    "z_padic_2",
    "z_padic_3",
    "z_padic_5",
    "poly_at_infinity",
    "poly_x_adic",
    "sec3",
];

/// Registry names; `zmod_trivial_<n>_<p>` stands for the family of trivial
/// quasi-orders on `Z/n` at the prime `p | n`.
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    names.push("zmod_trivial_<n>_<p>".to_string());
    names
}

/// Concrete builtins covering the registry, with small members of the
/// `zmod_trivial` family.
pub fn sample_builtins() -> Result<Vec<Builtin>> {
    let family = ["zmod_trivial_6_2", "zmod_trivial_6_3", "zmod_trivial_12_2", "zmod_trivial_12_3"];
    NAMES.iter().chain(family.iter()).map(|n| builtin(n)).collect()
}

fn lookup_error(name: &str) -> Error {
    Error::Lookup {
        name: name.to_string(),
        available: builtin_names(),
    }
}

fn small_poly_window(max_degree: u32) -> Window {
    Window::Poly {
        max_degree,
        coeffs: vec![-2, -1, 1, 2],
        max_terms: 2,
    }
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let padic = |p: u64, bound: i64| -> Result<(Relation, Window)> {
        let rel = Relation::new(Ring::Integers, QuasiOrderSpec::FromValuation(ValuationSpec::PAdic { p }))?;
        Ok((rel, Window::interval(bound)))
    };
    let (relation, window) = match name {
        "z_standard" => (
            Relation::new(Ring::Integers, QuasiOrderSpec::FromOrder(OrderSpec::StandardInteger))?,
            Window::interval(20),
        ),
        "z_padic_2" => padic(2, 64)?,
        "z_padic_3" => padic(3, 81)?,
        "z_padic_5" => padic(5, 50)?,
        "poly_at_infinity" => {
            let ring = Ring::polynomial(["X"])?;
            let order = OrderSpec::PolynomialAtInfinity { precedence: vec![0] };
            (Relation::new(ring, QuasiOrderSpec::FromOrder(order))?, small_poly_window(2))
        }
        "poly_x_adic" => {
            let ring = Ring::polynomial(["X"])?;
            let v = ValuationSpec::Monomial { weights: vec![vec![1]] };
            (Relation::new(ring, QuasiOrderSpec::FromValuation(v))?, small_poly_window(3))
        }
        "sec3" => (sec3_relation(&Ring::polynomial(["X", "Y"])?)?, sec3_window()),
        _ => {
            let rest = name.strip_prefix("zmod_trivial_").ok_or_else(|| lookup_error(name))?;
            let (n, p) = rest.split_once('_').ok_or_else(|| lookup_error(name))?;
            let n: u64 = n.parse().map_err(|_| lookup_error(name))?;
            let p: u64 = p.parse().map_err(|_| lookup_error(name))?;
            if !crate::ring::is_prime_u64(p) || n < 2 || n % p != 0 {
                return Err(Error::precondition(format!(
                    "{name}: p must be a prime dividing n"
                )));
            }
            let ring = Ring::modular(n)?;
            if ring.size().is_none_or(|s| s > crate::ring::MAX_TABLE_SIZE) {
                return Err(Error::Limit(format!("{name}: ring too large")));
            }
            let ideal = Ideal::generated(&ring, vec![Elem::Residue(p)])?;
            (Relation::new(ring, QuasiOrderSpec::TrivialAtPrime(ideal))?, Window::All)
        }
    };
    Ok(Builtin {
        name: name.to_string(),
        relation,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &Ring, s: &str) -> Elem {
        ring.parse_elem(&Json::from(s)).unwrap()
    }

    #[test]
    fn chain_facts() {
        let ring = Ring::polynomial(["X", "Y"]).unwrap();
        let rel = sec3_relation(&ring).unwrap();
        let p = |s| poly(&ring, s);
        assert!(rel.lt(&p("1"), &p("X")));
        assert!(rel.lt(&p("X"), &p("X^2")));
        assert!(rel.lt(&p("X^2"), &p("X^3")));
        assert!(rel.le(&p("X^2"), &p("Y")));
        for s in ["X*Y", "X^2*Y", "Y^2"] {
            assert!(rel.eqv(&p("Y"), &p(s)));
        }
        assert!(rel.eqv(&p("5*X^3"), &p("X^3")));
        assert!(rel.le(&p("X + Y"), &p("Y^2")));
    }

    #[test]
    fn univariate_ring_is_rejected() {
        assert!(sec3_relation(&Ring::polynomial(["X"]).unwrap()).is_err());
        assert!(sec3_relation(&Ring::Integers).is_err());
    }

    #[test]
    fn unknown_builtin_lists_names() {
        match builtin("nope") {
            Err(Error::Lookup { available, .. }) => assert!(available.contains(&"sec3".to_string())),
            other => panic!("{other:?}"),
        }
        assert!(builtin("zmod_trivial_12_5").is_err());
    }

    #[test]
    fn zmod_family_resolves() {
        let b = builtin("zmod_trivial_12_3").unwrap();
        assert_eq!(*b.ring(), Ring::Modular(12));
        assert_eq!(b.window, Window::All);
    }
}

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{rational, Elem, Monomial, Poly, Ring};

const MAX_WINDOW: usize = 200_001;

/// A finite, negation-closed universe over which universally quantified
/// axioms are tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Window {
    /// Every element of a finite ring.
    All,
    /// `[lo, hi]` in the integers.
    Interval { lo: i64, hi: i64 },
    /// Polynomials with at most `max_terms` terms, each a coefficient from
    /// `coeffs` times a monomial of total degree at most `max_degree`.
    Poly {
        max_degree: u32,
        coeffs: Vec<i64>,
        #[serde(default = "one_term")]
        max_terms: usize,
    },
}

fn one_term() -> usize {
    1
}

impl Window {
    pub fn interval(bound: i64) -> Window {
        Window::Interval {
            lo: -bound,
            hi: bound,
        }
    }

    pub fn poly(max_degree: u32, coeffs: &[i64]) -> Window {
        Window::Poly {
            max_degree,
            coeffs: coeffs.to_vec(),
            max_terms: 1,
        }
    }

    /// True when the window is the whole (finite) ring.
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Window::All)
    }

    /// Window members in scan order. Rejects windows lacking 0, 1 or −1, or
    /// not closed under negation.
    pub fn elements(&self, ring: &Ring) -> Result<Vec<Elem>> {
        let els = match (self, ring) {
            (Window::All, r) if r.is_finite() => r.elements()?,
            (Window::All, r) => {
                return Err(Error::InvalidWindow(format!(
                    "the infinite ring {r} needs a bounded window"
                )))
            }
            (Window::Interval { lo, hi }, Ring::Integers) => {
                if lo > hi {
                    return Err(Error::InvalidWindow(format!("empty interval [{lo}, {hi}]")));
                }
                let len = (*hi as i128 - *lo as i128 + 1) as u128;
                if len > MAX_WINDOW as u128 {
                    return Err(Error::Limit(format!("interval of {len} elements")));
                }
                (*lo..=*hi).map(Elem::int).collect()
            }
            (Window::Poly { max_degree, coeffs, max_terms }, Ring::Polynomial { vars }) => {
                poly_window(vars.len(), *max_degree, coeffs, *max_terms)?
            }
            (w, r) => {
                return Err(Error::InvalidWindow(format!(
                    "window {w:?} does not apply to ring {r}"
                )))
            }
        };
        validate(ring, &els)?;
        Ok(els)
    }
}

fn poly_window(nvars: usize, max_degree: u32, coeffs: &[i64], max_terms: usize) -> Result<Vec<Elem>> {
    if max_terms == 0 {
        return Err(Error::InvalidWindow("max_terms must be at least 1".into()));
    }
    let mut cs: Vec<i64> = coeffs.iter().copied().filter(|&c| c != 0).collect();
    cs.sort_by_key(|&c| (c.unsigned_abs(), c < 0));
    cs.dedup();
    let monomials = Monomial::up_to_degree(nvars, max_degree);
    let mut out = vec![Elem::Poly(Poly::zero())];
    for t in 1..=max_terms.min(monomials.len()) {
        for ms in monomials.iter().combinations(t) {
            for chosen in std::iter::repeat_n(cs.iter(), t).multi_cartesian_product() {
                let p = Poly::from_terms(
                    ms.iter()
                        .zip(&chosen)
                        .map(|(m, &&c)| ((*m).clone(), rational(c))),
                );
                out.push(Elem::Poly(p));
                if out.len() > MAX_WINDOW {
                    return Err(Error::Limit("polynomial window too large".into()));
                }
            }
        }
    }
    Ok(out)
}

fn validate(ring: &Ring, els: &[Elem]) -> Result<()> {
    let set: std::collections::HashSet<&Elem> = els.iter().collect();
    for (name, e) in [("0", ring.zero()), ("1", ring.one()), ("-1", ring.minus_one())] {
        if !set.contains(&e) {
            return Err(Error::InvalidWindow(format!("window lacks {name}")));
        }
    }
    if let Some(x) = els.iter().find(|x| !set.contains(&ring.neg_in(x))) {
        return Err(Error::InvalidWindow(format!(
            "window is not closed under negation: -({}) is missing",
            ring.render(x)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_window() {
        let els = Window::interval(2).elements(&Ring::Integers).unwrap();
        assert_eq!(els, (-2..=2).map(Elem::int).collect::<Vec<_>>());
    }

    #[test]
    fn windows_lacking_minus_one_are_rejected() {
        let w = Window::Interval { lo: 0, hi: 5 };
        assert!(matches!(
            w.elements(&Ring::Integers),
            Err(Error::InvalidWindow(_))
        ));
        let w = Window::Interval { lo: -1, hi: 5 };
        assert!(matches!(
            w.elements(&Ring::Integers),
            Err(Error::InvalidWindow(_))
        ));
        let r = Ring::polynomial(["X"]).unwrap();
        assert!(Window::poly(2, &[1, 2]).elements(&r).is_err());
        assert!(Window::All.elements(&Ring::Integers).is_err());
    }

    #[test]
    fn poly_window_order_and_size() {
        let r = Ring::polynomial(["X", "Y"]).unwrap();
        let els = Window::poly(3, &[-2, -1, 1, 2]).elements(&r).unwrap();
        // 10 monomials of degree <= 3, 4 coefficients each, plus zero.
        assert_eq!(els.len(), 41);
        let head: Vec<String> = els.iter().take(7).map(|e| r.render(e)).collect();
        assert_eq!(head, ["0", "1", "-1", "2", "-2", "Y", "-Y"]);
        let two_terms = Window::Poly {
            max_degree: 1,
            coeffs: vec![1, -1],
            max_terms: 2,
        };
        // 3 monomials: 1 + 3*2 + 3*4.
        assert_eq!(two_terms.elements(&r).unwrap().len(), 19);
    }

    #[test]
    fn window_json_shapes() {
        let w: Window = serde_json::from_str(r#"{"kind":"interval","lo":-20,"hi":20}"#).unwrap();
        assert_eq!(w, Window::interval(20));
        let w: Window =
            serde_json::from_str(r#"{"kind":"poly","max_degree":3,"coeffs":[-2,-1,1,2]}"#).unwrap();
        assert_eq!(w, Window::poly(3, &[-2, -1, 1, 2]));
        assert!(serde_json::from_str::<Window>(r#"{"kind":"interval","lo":-1,"hi":1,"x":0}"#).is_err());
    }
}

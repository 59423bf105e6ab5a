use proptest::prelude::*;

use qring::constructions::fraction_extension;
use qring::model_finder::{enumerate_quasiorders, WeakOrderCode};
use qring::order::{OrderSpec, PositiveCone};
use qring::valuation::ValuationSpec;
use qring::{check_axioms, classify, roundtrip_check, Branch, Elem, QuasiOrderSpec, Relation, Ring, Window};

fn v(x: i64, p: i64) -> Option<u32> {
    (x != 0).then(|| {
        let (mut x, mut k) = (x, 0);
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        k
    })
}

/// Rank vectors with contiguous image, by brute force over all maps.
fn naive_weak_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut r = vec![0; n];
        for slot in r.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        let max = *r.iter().max().unwrap();
        if (0..=max).all(|k| r.contains(&k)) {
            out.push(r);
        }
    }
    out
}

/// Quasi-orders on Z/n, checked axiom by axiom on residues.
fn naive_quasiorders(n: usize) -> Vec<Vec<usize>> {
    let le = |r: &[usize], a: usize, b: usize| r[a] <= r[b];
    let lt = |r: &[usize], a: usize, b: usize| r[a] < r[b];
    naive_weak_orders(n)
        .into_iter()
        .filter(|r| {
            let (add, mul) = (|a, b| (a + b) % n, |a, b| (a * b) % n);
            if !lt(r, 0, 1 % n) {
                return false;
            }
            for x in 0..n {
                for y in 0..n {
                    if le(r, mul(x, y), 0) && !le(r, x, 0) && !le(r, y, 0) {
                        return false;
                    }
                    for z in 0..n {
                        if le(r, x, y) && le(r, 0, z) && !le(r, mul(x, z), mul(y, z)) {
                            return false;
                        }
                        let z_equiv_y = le(r, z, y) && le(r, y, z);
                        if le(r, x, y) && !z_equiv_y && !le(r, add(x, z), add(y, z)) {
                            return false;
                        }
                        if lt(r, x, y) && lt(r, 0, z) && !lt(r, mul(x, z), mul(y, z)) {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect()
}

#[test]
fn enumeration_matches_naive_filter() {
    for n in 2..=6 {
        let ring = Ring::modular(n as u64).unwrap();
        let mut got: Vec<Vec<usize>> = enumerate_quasiorders(&ring)
            .unwrap()
            .quasiorders
            .iter()
            .map(|q| q.code.as_ref().unwrap().ranks().iter().map(|&r| r as usize).collect())
            .collect();
        let mut want = naive_quasiorders(n);
        got.sort();
        want.sort();
        assert_eq!(got, want, "Z/{n}");
    }
}

fn padic(p: u64) -> Relation {
    Relation::new(Ring::Integers, QuasiOrderSpec::FromValuation(ValuationSpec::PAdic { p })).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn padic_comparator_matches_oracle(p in prop::sample::select(vec![2u64, 3, 5, 7]), x in -5000i64..5000, y in -5000i64..5000) {
        let got = padic(p).leq(&Elem::int(x), &Elem::int(y)).unwrap();
        let want = match (v(x, p as i64), v(y, p as i64)) {
            (_, None) => true,
            (None, _) => false,
            (Some(a), Some(b)) => b <= a,
        };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn padic_qr3_qr4_on_random_triples(p in prop::sample::select(vec![2u64, 3, 5]), x in -300i64..300, y in -300i64..300, z in -300i64..300) {
        let rel = padic(p);
        let le = |a: i64, b: i64| rel.leq(&Elem::int(a), &Elem::int(b)).unwrap();
        if le(x, y) && le(0, z) {
            prop_assert!(le(x * z, y * z));
        }
        if le(x, y) && !(le(z, y) && le(y, z)) {
            prop_assert!(le(x + z, y + z));
        }
    }

    #[test]
    fn weak_order_blocks_round_trip(ranks in prop::collection::vec(0u8..6, 1..7)) {
        // Compress to a contiguous image first.
        let mut levels = ranks.clone();
        levels.sort();
        levels.dedup();
        let ranks: Vec<u8> = ranks.iter().map(|r| levels.iter().position(|l| l == r).unwrap() as u8).collect();
        let code = WeakOrderCode::from_ranks(ranks.clone()).unwrap();
        let again = WeakOrderCode::from_blocks(&code.blocks()).unwrap();
        prop_assert_eq!(again.ranks(), &ranks[..]);
        for i in 0..ranks.len() {
            for j in 0..ranks.len() {
                prop_assert_eq!(code.leq(i, j), ranks[i] <= ranks[j]);
            }
        }
    }

    #[test]
    fn trivial_quasiorders_classify_valued(n in 2u64..40) {
        let ring = Ring::modular(n).unwrap();
        let p = (2..=n).find(|d| n % d == 0).unwrap();
        let rel = Relation::trivial_at(ring.clone(), vec![ring.from_i64(p as i64)]).unwrap();
        prop_assert!(check_axioms(&rel, &Window::All).unwrap().all_pass());
        let c = classify(&rel, &Window::All).unwrap();
        prop_assert_eq!(c.branch(), Branch::Valued);
        prop_assert!(roundtrip_check(&rel, &c).unwrap().ok());
    }

    #[test]
    fn random_cone_translation_invariant(mask in any::<u32>(), x in -10i64..=10, y in -10i64..=10, z in -10i64..=10) {
        let t: Vec<Elem> = (-10..=10).filter(|i| mask >> (i + 10) & 1 == 1).map(Elem::int).collect();
        let rel = Relation::new(
            Ring::Integers,
            QuasiOrderSpec::FromOrder(OrderSpec::FromCone(PositiveCone::Explicit { elements: t })),
        ).unwrap();
        let le = |a: i64, b: i64| rel.leq(&Elem::int(a), &Elem::int(b)).unwrap();
        if le(x, y) {
            prop_assert!(le(x + z, y + z));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fractions_independent_of_representative(a in 1i64..6, b in 1i64..6, c in 1i64..6, d in 1i64..6, k in 1i64..3) {
        let ext = fraction_extension(&padic(3), &Window::interval(12)).unwrap();
        let f = |n: i64, m: i64| ext.fraction(Elem::int(n), Elem::int(m)).unwrap();
        let (ab, cd) = (f(a, b), f(c, d));
        let (kab, kcd) = (f(k * a, k * b), f(k * c, k * d));
        prop_assert_eq!(ext.leq(&ab, &cd).unwrap(), ext.leq(&kab, &kcd).unwrap());
    }
}

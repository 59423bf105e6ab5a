//! Exhaustive search for quasi-orders on small finite rings, checked
//! against the prime ideals of the ring.

use rayon::prelude::*;
use serde_json::Value as Json;

use crate::classifier::{classify, roundtrip_check, Branch, Classification};
use crate::error::{Error, Result};
use crate::group::OrderedAbelianGroup;
use crate::relation::{check_axioms, compute_support, QuasiOrderSpec, Relation};
use crate::ring::{is_prime_ideal, Elem, Ideal, Ring, Window};

/// Default size bound for the exhaustive path.
pub const DEFAULT_MAX_N: usize = 8;
/// No weak-order enumeration beyond this size.
pub const HARD_MAX_N: usize = 9;

/// A total preorder on `0..n`: `ranks[i]` is the block of element `i`,
/// blocks numbered from least to greatest and every block nonempty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakOrderCode {
    ranks: Vec<u8>,
}

impl WeakOrderCode {
    pub fn from_ranks(ranks: Vec<u8>) -> Result<Self> {
        let k = ranks.iter().map(|&r| r as usize + 1).max().unwrap_or(0);
        let mut seen = vec![false; k];
        for &r in &ranks {
            seen[r as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::structural("weak order ranks must cover 0..k"));
        }
        Ok(WeakOrderCode { ranks })
    }

    /// Ordered set partition, least block first.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut ranks = vec![u8::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::structural("empty block in ordered set partition"));
            }
            for &i in block {
                if i >= n || ranks[i] != u8::MAX {
                    return Err(Error::structural("blocks must partition 0..n"));
                }
                ranks[i] = b as u8;
            }
        }
        Ok(WeakOrderCode { ranks })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn block_count(&self) -> usize {
        self.ranks.iter().map(|&r| r as usize + 1).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &r) in self.ranks.iter().enumerate() {
            blocks[r as usize].push(i);
        }
        blocks
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.ranks[i] <= self.ranks[j]
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.leq(i, j)).collect()).collect()
    }
}

fn weak_order_ranks(n: usize) -> Vec<Vec<u8>> {
    // Each weak order on 0..=i restricts to a unique one on 0..i; element i
    // joins an existing block or opens a new one at any position.
    let mut codes: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for code in &codes {
            let k = code.iter().map(|&r| r + 1).max().unwrap_or(0);
            for r in 0..k {
                let mut c = code.clone();
                c.push(r);
                next.push(c);
            }
            for p in 0..=k {
                let mut c: Vec<u8> = code.iter().map(|&r| if r >= p { r + 1 } else { r }).collect();
                c.push(p);
                next.push(c);
            }
        }
        codes = next;
    }
    codes.sort_unstable();
    codes
}

/// Every total preorder on `n` elements once, in lexicographic order of
/// rank vectors.
pub fn enumerate_weak_orders(n: usize) -> Result<impl Iterator<Item = WeakOrderCode>> {
    weak_orders_capped(n, DEFAULT_MAX_N)
}

fn weak_orders_capped(n: usize, cap: usize) -> Result<impl Iterator<Item = WeakOrderCode>> {
    if n == 0 || n > cap.min(HARD_MAX_N) {
        return Err(Error::Limit(format!(
            "weak orders are enumerated for 1 ≤ n ≤ {}, got {n}",
            cap.min(HARD_MAX_N)
        )));
    }
    Ok(weak_order_ranks(n).into_iter().map(|ranks| WeakOrderCode { ranks }))
}

/// A quasi-order found by the search, with its support.
#[derive(Clone, Debug)]
pub struct EnumeratedQuasiOrder {
    pub code: Option<WeakOrderCode>,
    pub relation: Relation,
    pub support: Vec<Elem>,
}

impl EnumeratedQuasiOrder {
    pub fn matrix(&self) -> &[Vec<bool>] {
        match self.relation.spec() {
            QuasiOrderSpec::ExplicitMatrix { leq } => leq,
            _ => unreachable!("enumerated relations are matrices"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuasiOrderEnumeration {
    pub ring: Ring,
    /// False for the theory-guided path.
    pub exhaustive: bool,
    pub codes_scanned: usize,
    pub quasiorders: Vec<EnumeratedQuasiOrder>,
}

/// Arithmetic on element indices for the rank filter.
struct Tables {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

impl Tables {
    fn new(ring: &Ring) -> Result<Self> {
        let t = ring.tables()?;
        let n = t.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(t.add(a, b));
                mul.push(t.mul(a, b));
            }
        }
        Ok(Tables {
            n,
            add,
            mul,
            zero: t.zero,
            one: t.one,
        })
    }

    /// QR1, then QR3, QR4, QR5 and QR2 on a rank vector. Reflexivity,
    /// totality and transitivity hold by construction.
    fn passes(&self, r: &[u8]) -> bool {
        let n = self.n;
        let (z0, add, mul) = (r[self.zero], &self.add, &self.mul);
        if r[self.zero] >= r[self.one] {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                if r[x] > r[y] {
                    continue;
                }
                for z in 0..n {
                    // QR3
                    if z0 <= r[z] && r[mul[x * n + z]] > r[mul[y * n + z]] {
                        return false;
                    }
                    // QR4
                    if r[z] != r[y] && r[add[x * n + z]] > r[add[y * n + z]] {
                        return false;
                    }
                    // QR5, strict form
                    if r[x] < r[y] && z0 < r[z] && r[mul[x * n + z]] >= r[mul[y * n + z]] {
                        return false;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if r[mul[x * n + y]] <= z0 && r[x] > z0 && r[y] > z0 {
                    return false;
                }
            }
        }
        true
    }
}

fn matrix_relation(ring: &Ring, leq: Vec<Vec<bool>>) -> Result<Relation> {
    Relation::new(ring.clone(), QuasiOrderSpec::ExplicitMatrix { leq })
}

fn enumerated(code: Option<WeakOrderCode>, relation: Relation) -> Result<EnumeratedQuasiOrder> {
    let support = compute_support(&relation, None)?.members;
    Ok(EnumeratedQuasiOrder {
        code,
        relation,
        support,
    })
}

/// All quasi-orders on a finite ring with at most [`DEFAULT_MAX_N`]
/// elements; larger rings take the theory-guided path.
pub fn enumerate_quasiorders(ring: &Ring) -> Result<QuasiOrderEnumeration> {
    enumerate_quasiorders_with(ring, DEFAULT_MAX_N)
}

/// As [`enumerate_quasiorders`] with the exhaustive bound `max_n`.
pub fn enumerate_quasiorders_with(ring: &Ring, max_n: usize) -> Result<QuasiOrderEnumeration> {
    let n = ring
        .size()
        .ok_or_else(|| Error::unsupported(format!("cannot enumerate quasi-orders on {ring}")))?;
    if n > max_n {
        return theory_guided(ring);
    }
    let tables = Tables::new(ring)?;
    let codes: Vec<WeakOrderCode> = weak_orders_capped(n, max_n)?.collect();
    let scanned = codes.len();
    let survivors: Vec<WeakOrderCode> = codes
        .into_par_iter()
        .filter(|c| tables.passes(&c.ranks))
        .collect();
    let mut quasiorders = Vec::with_capacity(survivors.len());
    for code in survivors {
        let relation = matrix_relation(ring, code.to_matrix())?;
        let report = check_axioms(&relation, &Window::All)?;
        if !report.all_pass() {
            return Err(Error::Inconsistency {
                message: format!("rank filter accepted a relation failing {}", report.summary()),
                witness: code.ranks.iter().map(u8::to_string).collect(),
            });
        }
        quasiorders.push(enumerated(Some(code), relation)?);
    }
    Ok(QuasiOrderEnumeration {
        ring: ring.clone(),
        exhaustive: true,
        codes_scanned: scanned,
        quasiorders,
    })
}

/// One trivial quasi-order per prime ideal, each verified exhaustively.
fn theory_guided(ring: &Ring) -> Result<QuasiOrderEnumeration> {
    let mut quasiorders = Vec::new();
    for ideal in enumerate_prime_ideals(ring)? {
        let trivial = Relation::new(ring.clone(), QuasiOrderSpec::TrivialAtPrime(ideal))?;
        let relation = matrix_relation(ring, trivial.to_matrix()?)?;
        let report = check_axioms(&relation, &Window::All)?;
        if !report.all_pass() {
            return Err(Error::Inconsistency {
                message: format!("trivial quasi-order fails {}", report.summary()),
                witness: Vec::new(),
            });
        }
        quasiorders.push(enumerated(None, relation)?);
    }
    Ok(QuasiOrderEnumeration {
        ring: ring.clone(),
        exhaustive: false,
        codes_scanned: 0,
        quasiorders,
    })
}

/// Prime ideals of a finite ring, ordered by their element index lists.
pub fn enumerate_prime_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    let t = ring.tables()?;
    let n = t.len();
    let principal = |g: usize| -> Vec<bool> {
        let mut m = vec![false; n];
        for r in 0..n {
            m[t.mul(g, r)] = true;
        }
        m
    };
    let sum = |a: &[bool], b: &[bool]| -> Vec<bool> {
        let mut m = vec![false; n];
        for x in (0..n).filter(|&x| a[x]) {
            for y in (0..n).filter(|&y| b[y]) {
                m[t.add(x, y)] = true;
            }
        }
        m
    };
    let mut ideals: Vec<Vec<bool>> = Vec::new();
    for g in 0..n {
        let p = principal(g);
        if !ideals.contains(&p) {
            ideals.push(p);
        }
    }
    loop {
        let mut added = false;
        let k = ideals.len();
        for i in 0..k {
            for j in i + 1..k {
                let s = sum(&ideals[i], &ideals[j]);
                if !ideals.contains(&s) {
                    ideals.push(s);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut index_lists: Vec<Vec<usize>> = ideals
        .iter()
        .map(|m| (0..n).filter(|&i| m[i]).collect())
        .collect();
    index_lists.sort();
    let mut primes = Vec::new();
    for idx in index_lists {
        let ideal = Ideal::from_elements(ring, idx.iter().map(|&i| t.elems[i].clone()).collect())?
            .with_principal_generator(ring);
        if is_prime_ideal(ring, &ideal)?.prime {
            primes.push(ideal);
        }
    }
    Ok(primes)
}

/// Outcome of matching enumerated quasi-orders against prime ideals.
#[derive(Clone, Debug)]
pub struct DichotomyReport {
    pub exhaustive: bool,
    pub classifications: Vec<Classification>,
    pub prime_ideals: Vec<Ideal>,
    /// `(quasi-order index, prime ideal index)` by equal support.
    pub pairing: Vec<(usize, Option<usize>)>,
    pub all_valued_trivial: bool,
    pub bijection: bool,
    pub none_ordered: bool,
    pub roundtrips_ok: bool,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.all_valued_trivial && self.bijection && self.none_ordered && self.roundtrips_ok
    }

    pub fn to_json(&self, ring: &Ring) -> Json {
        let ideal_json = |i: &Ideal| {
            Json::Array(
                i.elements
                    .iter()
                    .flatten()
                    .map(|e| ring.elem_to_json(e))
                    .collect(),
            )
        };
        serde_json::json!({
            "passed": self.passed(),
            "exhaustive": self.exhaustive,
            "all_valued_trivial": self.all_valued_trivial,
            "bijection": self.bijection,
            "none_ordered": self.none_ordered,
            "roundtrips_ok": self.roundtrips_ok,
            "prime_ideals": self.prime_ideals.iter().map(ideal_json).collect::<Vec<_>>(),
            "pairing": self.pairing.iter().map(|(q, p)| serde_json::json!([q, p])).collect::<Vec<_>>(),
        })
    }
}

/// Classifies every quasi-order from `enumeration` and pairs supports with
/// prime ideals.
pub fn cross_check_dichotomy(enumeration: &QuasiOrderEnumeration) -> Result<DichotomyReport> {
    let ring = &enumeration.ring;
    let prime_ideals = enumerate_prime_ideals(ring)?;
    let mut classifications = Vec::new();
    let mut roundtrips_ok = true;
    for q in &enumeration.quasiorders {
        let c = classify(&q.relation, &Window::All)?;
        roundtrips_ok &= roundtrip_check(&q.relation, &c)?.ok();
        classifications.push(c);
    }
    let all_valued_trivial = classifications.iter().all(|c| {
        c.branch() == Branch::Valued && matches!(c.group(), Some(OrderedAbelianGroup::Trivial))
    });
    let none_ordered = classifications.iter().all(|c| c.branch() != Branch::Ordered);
    let pairing: Vec<(usize, Option<usize>)> = enumeration
        .quasiorders
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let p = prime_ideals
                .iter()
                .position(|ideal| ideal.elements.as_deref() == Some(q.support.as_slice()));
            (i, p)
        })
        .collect();
    let mut hit = vec![0usize; prime_ideals.len()];
    for (_, p) in &pairing {
        if let Some(p) = p {
            hit[*p] += 1;
        }
    }
    let bijection = pairing.iter().all(|(_, p)| p.is_some()) && hit.iter().all(|&h| h == 1);
    Ok(DichotomyReport {
        exhaustive: enumeration.exhaustive,
        classifications,
        prime_ideals,
        pairing,
        all_valued_trivial,
        bijection,
        none_ordered,
        roundtrips_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weak_order_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_weak_orders(n).unwrap().count()).collect();
        assert_eq!(counts, [1, 3, 13, 75]);
        assert!(enumerate_weak_orders(0).is_err());
        assert!(enumerate_weak_orders(9).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        for code in enumerate_weak_orders(4).unwrap() {
            assert_eq!(WeakOrderCode::from_blocks(&code.blocks()).unwrap(), code);
        }
        assert!(WeakOrderCode::from_ranks(vec![0, 2]).is_err());
    }

    #[test]
    fn z6_has_two() {
        let e = enumerate_quasiorders(&Ring::Modular(6)).unwrap();
        assert_eq!(e.codes_scanned, 4683);
        let supports: Vec<Vec<Elem>> = e.quasiorders.iter().map(|q| q.support.clone()).collect();
        assert_eq!(supports.len(), 2);
        assert!(supports.contains(&[0, 2, 4].map(Elem::Residue).to_vec()));
        assert!(supports.contains(&[0, 3].map(Elem::Residue).to_vec()));
        assert!(cross_check_dichotomy(&e).unwrap().passed());
    }

    #[test]
    fn prime_ideals_of_z12_and_products() {
        let p = enumerate_prime_ideals(&Ring::Modular(12)).unwrap();
        let gens: Vec<Elem> = p.iter().map(|i| i.generators[0].clone()).collect();
        assert_eq!(gens, [Elem::Residue(2), Elem::Residue(3)]);
        assert_eq!(enumerate_prime_ideals(&Ring::Modular(7)).unwrap().len(), 1);
        let prod = Ring::product(vec![Ring::Modular(2), Ring::Modular(3)]).unwrap();
        assert_eq!(enumerate_prime_ideals(&prod).unwrap().len(), 2);
    }

    #[test]
    fn theory_guided_beyond_the_bound() {
        let e = enumerate_quasiorders_with(&Ring::Modular(12), 8).unwrap();
        assert!(!e.exhaustive);
        assert_eq!(e.quasiorders.len(), 2);
        let exhaustive = enumerate_quasiorders(&Ring::Modular(6)).unwrap();
        let guided = enumerate_quasiorders_with(&Ring::Modular(6), 1).unwrap();
        for q in &guided.quasiorders {
            assert!(exhaustive.quasiorders.iter().any(|e| e.matrix() == q.matrix()));
        }
    }
}

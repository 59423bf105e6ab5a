use crate::error::{Error, Result};

use super::{Elem, Ring, MAX_TABLE_SIZE};

/// A finite ring given by its Cayley tables. Construction verifies every
/// commutative-ring-with-1 axiom exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRing {
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl TableRing {
    pub fn new(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: Option<usize>,
        one: Option<usize>,
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::structural("table ring must have at least one element"));
        }
        if n > MAX_TABLE_SIZE {
            return Err(Error::Limit(format!("table ring of size {n} exceeds {MAX_TABLE_SIZE}")));
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n);
        if !square(&add) || !square(&mul) {
            return Err(Error::structural(format!("tables must both be {n}x{n}")));
        }
        if add.iter().chain(&mul).flatten().any(|&v| v >= n) {
            return Err(Error::structural("table entry out of range"));
        }
        let identity = |t: &Vec<Vec<usize>>| (0..n).find(|&e| (0..n).all(|x| t[e][x] == x));
        let zero = match zero {
            Some(z) => z,
            None => identity(&add)
                .ok_or_else(|| Error::structural("addition table has no identity"))?,
        };
        let one = match one {
            Some(o) => o,
            None => identity(&mul)
                .ok_or_else(|| Error::structural("multiplication table has no identity"))?,
        };
        if zero >= n || one >= n {
            return Err(Error::structural("identity index out of range"));
        }
        let fail = |law: &str, w: &[usize]| {
            Err(Error::structural(format!("table ring violates {law} at {w:?}")))
        };
        for x in 0..n {
            if add[zero][x] != x {
                return fail("additive identity", &[x]);
            }
            if mul[one][x] != x {
                return fail("multiplicative identity", &[x]);
            }
            for y in 0..n {
                if add[x][y] != add[y][x] {
                    return fail("commutativity of +", &[x, y]);
                }
                if mul[x][y] != mul[y][x] {
                    return fail("commutativity of *", &[x, y]);
                }
                for z in 0..n {
                    if add[add[x][y]][z] != add[x][add[y][z]] {
                        return fail("associativity of +", &[x, y, z]);
                    }
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return fail("associativity of *", &[x, y, z]);
                    }
                    if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]] {
                        return fail("distributivity", &[x, y, z]);
                    }
                }
            }
        }
        let mut neg = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| add[x][y] == zero) {
                Some(y) => neg.push(y),
                None => return fail("additive inverses", &[x]),
            }
        }
        Ok(TableRing {
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub(crate) fn from_i64(&self, v: i64) -> usize {
        let n = self.size() as i64;
        // Characteristic divides n, so reduce first.
        let k = v.rem_euclid(n);
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add[acc][self.one];
        }
        acc
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// Index tables for a finite ring, in [`Ring::elements`] order.
#[derive(Clone, Debug)]
pub struct FiniteTables {
    pub elems: Vec<Elem>,
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    pub zero: usize,
    pub one: usize,
}

impl FiniteTables {
    pub(crate) fn build(ring: &Ring) -> Result<Self> {
        let n = ring
            .size()
            .ok_or_else(|| Error::unsupported(format!("{ring} is not finite")))?;
        if n > MAX_TABLE_SIZE {
            return Err(Error::Limit(format!(
                "ring of size {n} exceeds the table limit {MAX_TABLE_SIZE}"
            )));
        }
        let elems = ring.elements()?;
        let idx = |e: &Elem| ring.index_of(e).expect("ring operations stay in the ring") as u32;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                add.push(idx(&ring.add_in(a, b)));
                mul.push(idx(&ring.mul_in(a, b)));
            }
        }
        let neg = elems.iter().map(|a| idx(&ring.neg_in(a))).collect();
        Ok(FiniteTables {
            zero: idx(&ring.zero()) as usize,
            one: idx(&ring.one()) as usize,
            elems,
            n,
            add,
            mul,
            neg,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn is_integral_domain(&self) -> bool {
        if self.zero == self.one {
            return false;
        }
        (0..self.n).all(|a| {
            a == self.zero || (0..self.n).all(|b| b == self.zero || self.mul(a, b) != self.zero)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn zmod_tables(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        (add, mul)
    }

    #[test]
    fn z6_table_loads_and_enumerates() {
        let (add, mul) = zmod_tables(6);
        let r = Ring::table(add, mul, None, None).unwrap();
        assert_eq!(r.elements().unwrap().len(), 6);
        assert_eq!(r.one(), Elem::Index(1));
        assert_eq!(r.from_i64(-1), Elem::Index(5));
        assert!(!r.is_integral_domain());
    }

    #[test]
    fn broken_table_is_rejected() {
        let (add, mut mul) = zmod_tables(4);
        mul[2][3] = 1;
        let err = Ring::table(add, mul, None, None).unwrap_err();
        assert!(err.to_string().contains("violates"), "{err}");
    }

    #[test]
    fn f4_table_is_a_field() {
        // F4 = {0, 1, a, a+1} with a^2 = a + 1.
        let add = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 1],
            vec![0, 3, 1, 2],
        ];
        let r = Ring::table(add, mul, Some(0), Some(1)).unwrap();
        assert!(r.is_field());
    }
}

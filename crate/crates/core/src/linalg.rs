//! Exact linear algebra over ℚ and ℤ on sparse vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::Rational;

pub type SparseQ = BTreeMap<usize, Rational>;
pub type SparseZ = BTreeMap<usize, BigInt>;

fn lead<T>(v: &BTreeMap<usize, T>) -> Option<usize> {
    v.keys().next().copied()
}

fn axpy_q(y: &mut SparseQ, a: &Rational, x: &SparseQ) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(Rational::zero);
        *e += &(a * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Row-echelon basis of a subspace of ℚⁿ, built incrementally.
#[derive(Clone, Debug, Default)]
pub struct RationalEchelon {
    rows: BTreeMap<usize, SparseQ>,
}

impl RationalEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, mut v: SparseQ) -> SparseQ {
        let mut out = SparseQ::new();
        while let Some(q) = lead(&v) {
            if let Some(r) = self.rows.get(&q) {
                let f = &v[&q] / &r[&q];
                axpy_q(&mut v, &-f, r);
            } else {
                let (k, c) = v.pop_first().unwrap();
                out.insert(k, c);
            }
        }
        out
    }

    /// Adds a vector; returns true iff it increased the rank.
    pub fn insert(&mut self, v: SparseQ) -> bool {
        let r = self.reduce(v);
        match lead(&r) {
            Some(p) => {
                self.rows.insert(p, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &SparseQ) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of a set of sparse rational vectors.
pub fn rank(vectors: impl IntoIterator<Item = SparseQ>) -> usize {
    let mut e = RationalEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Solves `Σ x_j cols_j = target` exactly. Returns `None` if there is no
/// solution or it is not unique.
pub fn solve_unique(cols: &[SparseQ], target: &SparseQ) -> Option<Vec<Rational>> {
    // Gaussian elimination on the augmented system, column by column.
    let n = cols.len();
    let mut rows: BTreeMap<usize, (Vec<Rational>, Rational)> = BTreeMap::new();
    let mut keys: Vec<usize> = cols.iter().flat_map(|c| c.keys().copied()).collect();
    keys.extend(target.keys().copied());
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        let coeffs: Vec<Rational> = cols
            .iter()
            .map(|c| c.get(&k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        rows.insert(k, (coeffs, target.get(&k).cloned().unwrap_or_else(Rational::zero)));
    }
    let mut eqs: Vec<(Vec<Rational>, Rational)> = rows.into_values().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let p = (r..eqs.len()).find(|&i| !eqs[i].0[c].is_zero())?;
        eqs.swap(r, p);
        let inv = eqs[r].0[c].recip().ok()?;
        for j in 0..n {
            eqs[r].0[j] = &eqs[r].0[j] * &inv;
        }
        eqs[r].1 = &eqs[r].1 * &inv;
        for i in 0..eqs.len() {
            if i != r && !eqs[i].0[c].is_zero() {
                let f = eqs[i].0[c].clone();
                for j in 0..n {
                    let d = &eqs[r].0[j] * &f;
                    eqs[i].0[j] -= &d;
                }
                let d = &eqs[r].1 * &f;
                eqs[i].1 -= &d;
            }
        }
        pivots.push(r);
        r += 1;
    }
    if eqs[r..].iter().any(|(_, b)| !b.is_zero()) {
        return None;
    }
    Some((0..n).map(|c| eqs[pivots[c]].1.clone()).collect())
}

/// Result of a lattice membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    /// In the ℤ-span.
    Member,
    /// In the ℚ-span but not in the ℤ-span.
    NonMember,
    /// Not even in the ℚ-span of the enumerated vectors: the bounds decide nothing.
    Unknown,
}

/// Integer lattice with an echelon (Hermite-type) basis, built incrementally.
#[derive(Clone, Debug, Default)]
pub struct IntLattice {
    rows: BTreeMap<usize, SparseZ>,
}

fn combine(a: &BigInt, x: &SparseZ, b: &BigInt, y: &SparseZ) -> SparseZ {
    let mut out = SparseZ::new();
    for (k, v) in x {
        out.insert(*k, a * v);
    }
    for (k, v) in y {
        let e = out.entry(*k).or_insert_with(BigInt::zero);
        *e += b * v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl IntLattice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: SparseZ) {
        v.retain(|_, x| !x.is_zero());
        while let Some(p) = lead(&v) {
            match self.rows.get(&p) {
                None => {
                    if v[&p].is_negative() {
                        for x in v.values_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows.insert(p, v);
                    return;
                }
                Some(row) => {
                    let a = &row[&p];
                    let b = &v[&p];
                    let eg = a.extended_gcd(b);
                    let g = eg.gcd;
                    // new pivot row: x·row + y·v, with pivot g
                    let new_row = combine(&eg.x, row, &eg.y, &v);
                    // residual: (b/g)·row − (a/g)·v, pivot entry cancels
                    let resid = combine(&(b / &g), row, &(-(a / &g)), &v);
                    self.rows.insert(p, new_row);
                    v = resid;
                }
            }
        }
    }

    /// Decides membership of an integer vector (given with rational entries).
    pub fn membership(&self, target: &SparseQ) -> Membership {
        if target.values().any(|c| !c.is_integer()) {
            return if self.in_rational_span(target) {
                Membership::NonMember
            } else {
                Membership::Unknown
            };
        }
        let mut t: SparseZ = target
            .iter()
            .map(|(k, v)| (*k, v.to_bigint().unwrap()))
            .collect();
        t.retain(|_, x| !x.is_zero());
        while let Some(p) = lead(&t) {
            match self.rows.get(&p) {
                Some(row) if t[&p].is_multiple_of(&row[&p]) => {
                    let f = &t[&p] / &row[&p];
                    t = combine(&BigInt::one(), &t, &-f, row);
                }
                _ => {
                    return if self.in_rational_span(target) {
                        Membership::NonMember
                    } else {
                        Membership::Unknown
                    };
                }
            }
        }
        Membership::Member
    }

    pub fn in_rational_span(&self, target: &SparseQ) -> bool {
        let mut e = RationalEchelon::new();
        for row in self.rows.values() {
            e.insert(row.iter().map(|(k, v)| (*k, Rational::from_bigint(v.clone()))).collect());
        }
        e.contains(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[(usize, i64)]) -> SparseQ {
        v.iter().map(|&(k, x)| (k, Rational::integer(x))).collect()
    }

    fn z(v: &[(usize, i64)]) -> SparseZ {
        v.iter().map(|&(k, x)| (k, BigInt::from(x))).collect()
    }

    #[test]
    fn parity_obstruction() {
        let mut l = IntLattice::new();
        l.insert(z(&[(0, 2)]));
        l.insert(z(&[(1, 1)]));
        assert_eq!(l.membership(&q(&[(0, 1)])), Membership::NonMember);
        assert_eq!(l.membership(&q(&[(0, 4), (1, -3)])), Membership::Member);
        assert_eq!(l.membership(&q(&[(2, 1)])), Membership::Unknown);
    }

    #[test]
    fn gcd_combination() {
        let mut l = IntLattice::new();
        l.insert(z(&[(0, 3), (1, 1)]));
        l.insert(z(&[(0, 4), (1, 1)]));
        // (1,0) = (4,1) − (3,1)
        assert_eq!(l.membership(&q(&[(0, 1)])), Membership::Member);
        assert_eq!(l.membership(&q(&[(1, 1)])), Membership::Member);
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn rational_solve_and_rank() {
        let cols = vec![q(&[(0, 1), (1, 1)]), q(&[(0, 1), (1, -1)])];
        let x = solve_unique(&cols, &q(&[(0, 2)])).unwrap();
        assert_eq!(x, vec![Rational::one(), Rational::one()]);
        assert!(solve_unique(&cols, &q(&[(2, 1)])).is_none());
        assert_eq!(rank(vec![q(&[(0, 1)]), q(&[(0, 2)]), q(&[(1, 1)])]), 2);
    }
}

//! Exact linear systems over the rationals.
//!
//! Rows are stored as sparse integer vectors and eliminated fraction-free:
//! each new row is reduced against the current echelon rows by cross
//! multiplication and then divided by its content, so entries stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Q;

type Row = BTreeMap<usize, BigInt>;

/// Linear equations `sum coeff_i * u_i + constant = 0`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    unknowns: Vec<String>,
    /// Echelon rows keyed by pivot column. The constant lives in column `n`.
    echelon: BTreeMap<usize, Row>,
    inconsistent: bool,
    rows_added: usize,
}

impl LinearSystem {
    pub fn new(n: usize) -> LinearSystem {
        LinearSystem::with_unknowns((0..n).map(|i| format!("u{}", i + 1)).collect())
    }

    pub fn with_unknowns(unknowns: Vec<String>) -> LinearSystem {
        LinearSystem {
            unknowns,
            ..Default::default()
        }
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn rows_added(&self) -> usize {
        self.rows_added
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds `sum coeffs[i] * u_i + constant = 0`. Panics on an index outside
    /// the declared unknowns.
    pub fn add_row<I>(&mut self, coeffs: I, constant: &Q)
    where
        I: IntoIterator<Item = (usize, Q)>,
    {
        let n = self.unknowns.len();
        let mut entries: Vec<(usize, Q)> = Vec::new();
        for (i, c) in coeffs {
            assert!(i < n, "row references undeclared unknown {i}");
            if !c.is_zero() {
                entries.push((i, c));
            }
        }
        if !constant.is_zero() {
            entries.push((n, constant.clone()));
        }
        self.rows_added += 1;
        if entries.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        for (_, c) in &entries {
            den = den.lcm(c.denom());
        }
        let mut row = Row::new();
        for (i, c) in entries {
            let v = c.numer() * (&den / c.denom());
            let slot = row.entry(i).or_insert_with(BigInt::zero);
            *slot += v;
            if slot.is_zero() {
                row.remove(&i);
            }
        }
        self.insert(row);
    }

    fn insert(&mut self, mut row: Row) {
        let n = self.unknowns.len();
        loop {
            let Some((&col, lead)) = row.iter().next() else {
                return;
            };
            if col == n {
                self.inconsistent = true;
                return;
            }
            let Some(pivot) = self.echelon.get(&col) else {
                make_primitive(&mut row);
                self.echelon.insert(col, row);
                return;
            };
            let p = &pivot[&col];
            let g = lead.gcd(p);
            let fr = p / &g;
            let fp = lead / &g;
            let mut next = Row::new();
            for (&i, v) in row.iter() {
                next.insert(i, v * &fr);
            }
            for (&i, v) in pivot.iter() {
                let slot = next.entry(i).or_insert_with(BigInt::zero);
                *slot -= v * &fp;
            }
            next.retain(|_, v| !v.is_zero());
            make_primitive(&mut next);
            row = next;
        }
    }

    fn pivots(&self) -> Vec<usize> {
        self.echelon.keys().copied().collect()
    }

    /// Back substitution with the given free-variable values.
    fn back_substitute(&self, free_values: &BTreeMap<usize, Q>, with_constant: bool) -> Vec<Q> {
        let n = self.unknowns.len();
        let mut x = vec![Q::zero(); n];
        for (&i, v) in free_values {
            x[i] = v.clone();
        }
        for (&p, row) in self.echelon.iter().rev() {
            let mut s = Q::zero();
            for (&j, a) in row.iter() {
                if j == p {
                    continue;
                }
                if j == n {
                    if with_constant {
                        s += Q::from_integer(a.clone());
                    }
                } else if !x[j].is_zero() {
                    s += &x[j] * Q::from_integer(a.clone());
                }
            }
            x[p] = -s / Q::from_integer(row[&p].clone());
        }
        x
    }

    /// Basis of the homogeneous solution space. Constants are ignored.
    ///
    /// One vector per free column in increasing column order; each vector is
    /// scaled to coprime integers with its first nonzero entry positive.
    pub fn solve_nullspace(&self) -> Vec<Vec<Q>> {
        let n = self.unknowns.len();
        let pivots = self.pivots();
        let mut basis = Vec::new();
        for f in (0..n).filter(|i| pivots.binary_search(i).is_err()) {
            let mut free = BTreeMap::new();
            free.insert(f, Q::one());
            let v = self.back_substitute(&free, false);
            basis.push(normalize_vector(v));
        }
        basis
    }

    /// One solution of the affine system with all free unknowns set to zero,
    /// or `None` when the rows are inconsistent.
    pub fn solve_particular(&self) -> Option<Vec<Q>> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(&BTreeMap::new(), true))
    }

    /// Indices of the unknowns left free by the elimination.
    pub fn free_unknowns(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.unknowns.len())
            .filter(|i| pivots.binary_search(i).is_err())
            .collect()
    }
}

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let lead_negative = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

fn normalize_vector(v: Vec<Q>) -> Vec<Q> {
    let mut den = BigInt::one();
    for c in &v {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| Q::from_integer(c / &g)).collect()
}

/// Checks `sum coeffs[i] * x_i + constant == 0` exactly.
pub fn row_holds(coeffs: &[(usize, Q)], constant: &Q, x: &[Q]) -> bool {
    let mut s = constant.clone();
    for (i, c) in coeffs {
        s += c * &x[*i];
    }
    s.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::poly::q;

    #[test]
    fn single_equation() {
        let mut s = LinearSystem::new(2);
        s.add_row([(0, q(1)), (1, q(1))], &q(0));
        assert_eq!(s.solve_nullspace(), vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn rank_deficient() {
        let mut s = LinearSystem::new(2);
        s.add_row([(0, q(1))], &q(0));
        s.add_row([(0, q(1))], &q(0));
        assert_eq!(s.rank(), 1);
        assert_eq!(s.solve_nullspace(), vec![vec![q(0), q(1)]]);
    }

    #[test]
    fn particular_solution() {
        // u1 + 2 u2 = 3, u2 - u3 = 1
        let mut s = LinearSystem::new(3);
        s.add_row([(0, q(1)), (1, q(2))], &q(-3));
        s.add_row([(1, q(1)), (2, q(-1))], &q(-1));
        let x = s.solve_particular().unwrap();
        assert_eq!(x, vec![q(1), q(1), q(0)]);
        let mut bad = LinearSystem::new(1);
        bad.add_row([(0, q(1))], &q(1));
        bad.add_row([(0, q(2))], &q(1));
        assert!(bad.solve_particular().is_none());
    }
}

//! Undetermined-coefficient ansatz over bounded Laurent supports.
//!
//! An unknown function is written as `sum k_i * m_i` with rational unknowns
//! `k_i` and Laurent monomials `m_i`. Substituting into linear differential
//! equations gives expressions `sum k_i * E_i + C` that vanish identically;
//! clearing denominators and collecting monomials turns them into rows of a
//! [`LinearSystem`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gcd::lcm;
use super::monomial::Monomial;
use super::poly::{Poly, Q};
use super::rational::RF;
use super::var::Var;
use super::LinearSystem;

pub const DEFAULT_CAP: usize = 200;

/// Rectangle of Laurent exponents in x and y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzWindow {
    pub x: (i32, i32),
    pub y: (i32, i32),
    /// Total degree cap for monomials in extension symbols and constants.
    pub ext_degree: u32,
    /// Upper bound on the number of generated monomials.
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("empty exponent range {0}:{1}")]
    Empty(i32, i32),
    #[error("window has {size} monomials, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
}

impl Default for AnsatzWindow {
    fn default() -> Self {
        AnsatzWindow::square(4)
    }
}

impl AnsatzWindow {
    pub fn new(x: (i32, i32), y: (i32, i32)) -> AnsatzWindow {
        AnsatzWindow {
            x,
            y,
            ext_degree: 0,
            cap: DEFAULT_CAP,
        }
    }

    pub fn square(r: i32) -> AnsatzWindow {
        let mut w = AnsatzWindow::new((-r, r), (-r, r));
        w.cap = w.cap.max(w.size());
        w
    }

    /// The automatic escalation sequence.
    pub fn escalation() -> [AnsatzWindow; 3] {
        [
            AnsatzWindow::square(4),
            AnsatzWindow::square(6),
            AnsatzWindow::square(8),
        ]
    }

    pub fn size(&self) -> usize {
        let w = (self.x.1 - self.x.0 + 1).max(0) as usize;
        let h = (self.y.1 - self.y.0 + 1).max(0) as usize;
        w * h
    }

    pub fn validate(&self) -> Result<(), WindowError> {
        for r in [self.x, self.y] {
            if r.0 > r.1 {
                return Err(WindowError::Empty(r.0, r.1));
            }
        }
        if self.size() > self.cap {
            return Err(WindowError::TooLarge {
                size: self.size(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Exponent pairs, ordered by descending total degree then descending
    /// y exponent, so the first entries are the order-greatest monomials.
    pub fn exponents(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::with_capacity(self.size());
        for i in self.x.0..=self.x.1 {
            for j in self.y.0..=self.y.1 {
                out.push((i, j));
            }
        }
        out.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        out
    }

    pub fn monomials(&self) -> Vec<RF> {
        self.exponents()
            .into_iter()
            .map(|(i, j)| RF::laurent(Q::one(), &[(Var::X, i), (Var::Y, j)]))
            .collect()
    }

    /// Laurent monomials multiplied by every power product of `symbols` of
    /// total degree at most `ext_degree`.
    pub fn monomials_with(&self, symbols: &[Var]) -> Vec<RF> {
        let factors = power_products(symbols, self.ext_degree);
        let base = self.monomials();
        let mut out = Vec::with_capacity(base.len() * factors.len());
        for f in &factors {
            let f = RF::from_poly(Poly::term(f.clone(), Q::one()));
            for m in &base {
                out.push(m * &f);
            }
        }
        out
    }
}

impl fmt::Display for AnsatzWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}:{}", self.x.0, self.x.1, self.y.0, self.y.1)
    }
}

impl std::str::FromStr for AnsatzWindow {
    type Err = String;

    /// Parses `XMIN:XMAX,YMIN:YMAX`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_range = |r: &str| -> Result<(i32, i32), String> {
            let (a, b) = r
                .split_once(':')
                .ok_or_else(|| format!("expected MIN:MAX, got {r:?}"))?;
            let a = a.trim().parse::<i32>().map_err(|e| format!("{a:?}: {e}"))?;
            let b = b.trim().parse::<i32>().map_err(|e| format!("{b:?}: {e}"))?;
            Ok((a, b))
        };
        let (xs, ys) = s
            .split_once(',')
            .ok_or_else(|| format!("expected XMIN:XMAX,YMIN:YMAX, got {s:?}"))?;
        let mut w = AnsatzWindow::new(parse_range(xs)?, parse_range(ys)?);
        w.cap = w.cap.max(w.size());
        w.validate().map_err(|e| e.to_string())?;
        Ok(w)
    }
}

fn power_products(symbols: &[Var], max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            for &s in symbols {
                let n = m.mul(&Monomial::var(s));
                if !next.contains(&n) && !out.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Builds a linear system from identities `sum k_i * E_i + C = 0`.
pub struct Collector {
    sys: LinearSystem,
}

impl Collector {
    pub fn new(unknowns: usize) -> Collector {
        Collector {
            sys: LinearSystem::new(unknowns),
        }
    }

    /// Adds the identity `sum terms[j].1 * k_{terms[j].0} + constant = 0`,
    /// one row per monomial after clearing denominators.
    pub fn add_identity(&mut self, terms: &[(usize, RF)], constant: &RF) {
        let mut dens: Vec<&Poly> = Vec::new();
        for (_, e) in terms.iter().filter(|(_, e)| !e.is_zero()) {
            if !dens.contains(&e.denom()) {
                dens.push(e.denom());
            }
        }
        if !constant.is_zero() && !dens.contains(&constant.denom()) {
            dens.push(constant.denom());
        }
        if dens.is_empty() {
            return;
        }
        let mut l = Poly::one();
        for d in &dens {
            if !d.is_one() {
                l = lcm(&l, d);
            }
        }
        let mut cofactors: Vec<(&Poly, Poly)> = Vec::with_capacity(dens.len());
        for d in dens {
            cofactors.push((d, l.div_exact(d).expect("lcm is divisible")));
        }
        let cof = |d: &Poly| -> &Poly {
            &cofactors
                .iter()
                .find(|(k, _)| *k == d)
                .expect("denominator registered")
                .1
        };

        let mut rows: BTreeMap<Monomial, (Vec<(usize, Q)>, Q)> = BTreeMap::new();
        for (k, e) in terms {
            if e.is_zero() {
                continue;
            }
            let p = e.numer() * cof(e.denom());
            for (m, c) in p.terms() {
                rows.entry(m.clone())
                    .or_insert_with(|| (Vec::new(), Q::zero()))
                    .0
                    .push((*k, c.clone()));
            }
        }
        if !constant.is_zero() {
            let p = constant.numer() * cof(constant.denom());
            for (m, c) in p.terms() {
                rows.entry(m.clone())
                    .or_insert_with(|| (Vec::new(), Q::zero()))
                    .1 += c;
            }
        }
        for (_, (coeffs, c)) in rows {
            self.sys.add_row(coeffs, &c);
        }
    }

    pub fn system(&self) -> &LinearSystem {
        &self.sys
    }

    pub fn finish(self) -> LinearSystem {
        self.sys
    }
}

/// Assembles `sum coeffs[i] * basis[i]`.
pub fn combine(coeffs: &[Q], basis: &[RF]) -> RF {
    let mut num_terms: BTreeMap<&Poly, Vec<(usize, &Q)>> = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            num_terms.entry(basis[i].denom()).or_default().push((i, c));
        }
    }
    let mut acc = RF::zero();
    for (den, items) in num_terms {
        let mut num = Poly::zero();
        for (i, c) in items {
            num = &num + &basis[i].numer().scale(c);
        }
        acc = &acc + &RF::new(num, den.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::poly::q;

    #[test]
    fn window_parsing_and_order() {
        let w: AnsatzWindow = "0:2,-1:1".parse().unwrap();
        assert_eq!(w.size(), 9);
        let e = w.exponents();
        assert_eq!(e[0], (2, 1));
        assert_eq!(*e.last().unwrap(), (0, -1));
        assert!("3:1,0:0".parse::<AnsatzWindow>().is_err());
    }

    #[test]
    fn antiderivative_by_ansatz() {
        // find u with u_x = 2 x y, u_y = x^2 - 3/y^2 in window [-2..2]^2
        let w = AnsatzWindow::square(2);
        let basis = w.monomials();
        let x = RF::x();
        let y = RF::y();
        let mut col = Collector::new(basis.len());
        let ux: Vec<(usize, RF)> = basis.iter().enumerate().map(|(i, m)| (i, m.dx())).collect();
        let uy: Vec<(usize, RF)> = basis.iter().enumerate().map(|(i, m)| (i, m.dy())).collect();
        col.add_identity(&ux, &-(&(&RF::int(2) * &x) * &y));
        let rhs = &x.pow(2) - &(&RF::int(3) / &y.pow(2));
        col.add_identity(&uy, &-rhs);
        let sol = col.finish().solve_particular().unwrap();
        let u = combine(&sol, &basis);
        let expected = &(&x.pow(2) * &y) + &(&RF::int(3) / &y);
        assert_eq!(u, expected);
        assert_eq!(combine(&vec![q(0); 3], &basis[..3]), RF::zero());
    }
}

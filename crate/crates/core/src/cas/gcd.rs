//! Multivariate polynomial gcd by recursive subresultant remainder sequences.
//!
//! The polynomial ring is viewed as univariate in one main variable over the
//! ring of the remaining variables; contents are computed recursively.

use super::monomial::Monomial;
use super::poly::Poly;
use super::var::Var;

/// Greatest common divisor, normalized to an integral primitive polynomial
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.primitive();
    }
    if let Some((m, _)) = a.single_term() {
        return Poly::term(gcd_monomial(m, b), num_traits::One::one());
    }
    if let Some((m, _)) = b.single_term() {
        return Poly::term(gcd_monomial(m, a), num_traits::One::one());
    }

    // Common monomial factor first; what is left has no monomial content.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = if ma.is_one() { a.clone() } else { a.div_exact(&Poly::term(ma, num_traits::One::one())).unwrap() };
    let b = if mb.is_one() { b.clone() } else { b.div_exact(&Poly::term(mb, num_traits::One::one())).unwrap() };
    let rest = gcd_no_monomial(&a, &b);
    rest.mul_monomial(&mg).primitive()
}

fn gcd_monomial(m: &Monomial, p: &Poly) -> Monomial {
    let mut g = m.clone();
    for (n, _) in p.terms() {
        if g.is_one() {
            break;
        }
        g = g.gcd(n);
    }
    g
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    // A variable present in only one argument cannot occur in the gcd.
    if let Some(&v) = va.iter().rev().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().rev().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    // Main variable: the one with the smallest degree keeps sequences short.
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), std::cmp::Reverse(v)))
        .expect("non-constant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, v);
    (&c * &g).primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let mut coeffs: Vec<Poly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

/// Primitive part of `p` with respect to `v`.
pub fn primitive_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    p.div_exact(&content_in(p, v)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `v`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree_in(v);
    let da = a.degree_in(v);
    if b.is_zero() {
        panic!("pseudo-remainder by zero");
    }
    if da < db {
        return a.clone();
    }
    let lcb = b.lc_in(v);
    let mut r = a.clone();
    let mut steps = da - db + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let t = r.lc_in(v).mul_monomial(&Monomial::power(v, dr - db));
        r = &(&lcb * &r) - &(&t * b);
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lcb.pow(steps);
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if b.degree_in(v) == 0 {
        return Poly::one();
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return primitive_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc_in(v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact"),
        };
    }
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::poly::q;

    fn x() -> Poly {
        Poly::var(Var::X)
    }
    fn y() -> Poly {
        Poly::var(Var::Y)
    }
    fn k() -> Poly {
        Poly::var(Var::constant("k"))
    }

    #[test]
    fn univariate_common_factor() {
        let f = &x() - &Poly::int(1);
        let a = &f * &(&x() + &Poly::int(2));
        let b = &f * &(&x() - &Poly::int(5));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn multivariate_common_factor() {
        let f = &(&x() * &y()) + &(&k() * &x()) - &Poly::int(3);
        let a = &(&f * &f) * &(&y() + &x());
        let b = &f * &(&(&y() * &y()) - &x());
        assert_eq!(gcd(&a, &b), f.primitive());
        assert!(gcd(&(&y() + &x()), &(&y() - &x())).is_one());
    }

    #[test]
    fn monomial_fast_path() {
        let a = Poly::term(Monomial::from_pairs([(Var::X, 2), (Var::Y, 3)]), q(6));
        let b = &(&x() * &y()) + &(&x() * &x());
        assert_eq!(gcd(&a, &b), x());
    }

    #[test]
    fn prem_matches_definition() {
        let a = &x().pow(3) + &y();
        let b = &(&y() * &x()) + &Poly::int(1);
        let r = prem(&a, &b, Var::X);
        // lc(b)^3 * a = Q*b + r with deg_x r < 1
        assert_eq!(r.degree_in(Var::X), 0);
        let lhs = &y().pow(3) * &a;
        let diff = &lhs - &r;
        assert!(diff.div_exact(&b).is_some());
    }
}

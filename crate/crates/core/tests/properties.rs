use geolin3::cas::linear::row_holds;
use geolin3::cas::{q, LinearSystem, Monomial, Poly, Var, Q, RF};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_from(terms: &[(u32, u32, i64)]) -> Poly {
    Poly::from_terms(
        terms
            .iter()
            .map(|&(i, j, c)| (Monomial::from_pairs([(Var::X, i), (Var::Y, j)]), q(c))),
    )
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 1..4).prop_map(|t| poly_from(&t))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = RF> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RF::new(n, d))
}

/// a + b·ε with ε² = 0.
#[derive(Clone, Debug)]
struct Dual(Q, Q);

impl Dual {
    fn mul(&self, o: &Dual) -> Dual {
        Dual(&self.0 * &o.0, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn pow(&self, n: u32) -> Dual {
        (0..n).fold(Dual(Q::one(), Q::zero()), |acc, _| acc.mul(self))
    }
}

fn dual_poly(p: &Poly, x: &Dual, y: &Dual) -> Dual {
    let mut acc = Dual(Q::zero(), Q::zero());
    for (m, c) in p.terms() {
        let t = x.pow(m.exponent(Var::X)).mul(&y.pow(m.exponent(Var::Y)));
        acc = Dual(acc.0 + c * &t.0, acc.1 + c * &t.1);
    }
    acc
}

/// Directional derivative of `f` at a point, by exact dual arithmetic.
fn dual_derivative(f: &RF, at: (i64, i64), dir: (i64, i64)) -> Option<Q> {
    let x = Dual(q(at.0), q(dir.0));
    let y = Dual(q(at.1), q(dir.1));
    let n = dual_poly(f.numer(), &x, &y);
    let d = dual_poly(f.denom(), &x, &y);
    if d.0.is_zero() {
        return None;
    }
    // (n0 + n1 ε) / (d0 + d1 ε) = n0/d0 + (n1 d0 - n0 d1)/d0² ε
    Some((&n.1 * &d.0 - &n.0 * &d.1) / (&d.0 * &d.0))
}

fn at(f: &RF, p: (i64, i64)) -> Option<Q> {
    f.evaluate(&|v| match v {
        Var::X => Some(q(p.0)),
        Var::Y => Some(q(p.1)),
        _ => None,
    })
    .ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_unique(a in rf(), h in nonzero_poly()) {
        let scaled = RF::new(a.numer() * &h, a.denom() * &h);
        prop_assert_eq!(&scaled, &a);
        prop_assert!(a.denom().leading_coeff() > Q::zero());
    }

    #[test]
    fn field_operations(a in rf(), b in rf()) {
        prop_assert_eq!(&(&(&a + &b) - &b), &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&(&a / &b) * &b), &a);
        }
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn derivative_matches_dual_numbers(f in rf(), px in -3i64..=3, py in -3i64..=3) {
        for (v, dir) in [(Var::X, (1, 0)), (Var::Y, (0, 1))] {
            let symbolic = at(&f.diff(v), (px, py));
            let dual = dual_derivative(&f, (px, py), dir);
            if let (Some(s), Some(d)) = (symbolic, dual) {
                prop_assert_eq!(s, d);
            }
        }
    }

    #[test]
    fn differentiation_rules(a in rf(), b in rf()) {
        let lhs = (&a * &b).dx();
        let rhs = &(&a.dx() * &b) + &(&a * &b.dx());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.dx().dy(), a.dy().dx());
    }

    #[test]
    fn square_roots(a in rf()) {
        let s = a.pow(2).sqrt_exact().expect("a square has a root");
        prop_assert!(s == a || s == -&a);
    }

    #[test]
    fn nullspace_vectors_solve_the_system(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)
    ) {
        let mut sys = LinearSystem::new(5);
        for r in &rows {
            sys.add_row(r.iter().enumerate().map(|(i, c)| (i, q(*c))), &Q::zero());
        }
        let basis = sys.solve_nullspace();
        prop_assert_eq!(basis.len(), 5 - sys.rank());
        for v in &basis {
            for r in &rows {
                let coeffs: Vec<(usize, Q)> = r.iter().enumerate().map(|(i, c)| (i, q(*c))).collect();
                prop_assert!(row_holds(&coeffs, &Q::zero(), v));
            }
        }
    }
}

#[test]
fn relations_reduce_to_normal_form() {
    let doc = geolin3::parser::parse(
        "ext s(y): d/dy = c;\next c(y): d/dy = -s;\nrel s^2 + c^2 = 1;\nmap: u = x*c; v = x*s;",
    )
    .unwrap();
    let m = doc.map().unwrap();
    let r2 = &m.u.pow(2) + &m.v.pow(2);
    assert_eq!(r2, RF::x().pow(2));
    // d/dy (s^2 + c^2) = 0
    assert!(r2.dy().is_zero());
}

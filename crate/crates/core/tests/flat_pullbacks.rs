use geolin3::cas::{q, RF};
use geolin3::criteria::{lie_residuals, scalar_residuals};
use geolin3::geometry::{christoffel, riemann};
use geolin3::reduction::{project, scalar_of, SecondOrderCubic};
use geolin3::solver::seeded_sample;

fn d(f: &RF, s: &str) -> RF {
    s.chars().fold(f.clone(), |acc, c| if c == 'x' { acc.dx() } else { acc.dy() })
}

fn sum(terms: &[(i64, RF)]) -> RF {
    terms.iter().fold(RF::zero(), |acc, (k, t)| &acc + &t.scale(&q(*k)))
}

/// Classical Lie conditions for y'' + c y'^3 - g y'^2 + h y' - d = 0,
/// written out independently of the library. `printed` drops the
/// `c d_y` and `d c_x` terms.
fn lie_conditions(e: &SecondOrderCubic, printed: bool) -> [RF; 2] {
    let (c, g, h, dd) = (&e.c, &e.g, &e.h, &e.d);
    let extra = if printed { 0 } else { 6 };
    let s1 = sum(&[
        (3, d(&(c * h), "x")),
        (3, dd * &d(c, "y")),
        (extra, c * &d(dd, "y")),
        (-2, g * &d(g, "x")),
        (-1, g * &d(h, "y")),
        (-3, d(c, "xx")),
        (-2, d(g, "xy")),
        (-1, d(h, "yy")),
    ]);
    let s2 = sum(&[
        (3, d(&(dd * g), "y")),
        (3, c * &d(dd, "x")),
        (extra, dd * &d(c, "x")),
        (-2, h * &d(h, "y")),
        (-1, h * &d(g, "x")),
        (-3, d(dd, "yy")),
        (-2, d(h, "xy")),
        (-1, d(g, "xx")),
    ]);
    [s1, s2]
}

#[test]
fn scalar_criteria_vanish_on_flat_pullbacks() {
    for seed in 0..20 {
        let s = seeded_sample(seed);
        let conn = christoffel(&s.metric.metric().unwrap());
        assert!(riemann(&conn).is_zero(), "seed {seed}");
        assert!(lie_residuals(&s.system).iter().all(|r| r.holds()), "seed {seed}");
        let eq2 = scalar_of(&project(&conn));
        let lib = scalar_residuals(&eq2);
        let oracle = lie_conditions(&eq2, false);
        for (r, o) in lib.iter().zip(&oracle) {
            assert_eq!(&r.value, o, "seed {seed}");
            assert!(r.holds(), "seed {seed}: {} = {}", r.name, r.value);
        }
    }
}

#[test]
fn printed_variant_rejects_a_flat_pullback() {
    // u = x - y^2, v = y + 2 x^2 has d != 0, which exposes the missing terms.
    let s = seeded_sample(3);
    let eq2 = scalar_of(&project(&s.system.connection()));
    assert!(!eq2.d.is_zero());
    let printed = lie_conditions(&eq2, true);
    assert!(printed.iter().any(|r| !r.is_zero()));
    assert!(scalar_residuals(&eq2).iter().all(|r| r.holds()));
}

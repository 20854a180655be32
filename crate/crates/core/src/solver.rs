//! Constructive side: metric recovery, flat coordinates, the linearizing
//! point map, the two-parameter solution family and exact verification.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};

use crate::cas::ansatz::{combine, Collector};
use crate::cas::gcd::{lcm, prem};
use crate::cas::rational::total_diff;
use crate::cas::{ext, AnsatzWindow, Monomial, Poly, Var, Q, RF};
use crate::criteria::lie_residuals;
use crate::geometry::{christoffel, covariant_hessian, metric_residuals, GeodesicSystem2, Metric};
use crate::reduction::{project, scalar_of, JetEquation, Residual, SecondOrderCubic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("geodesic system is not flat (residual {0} does not vanish)")]
    NotFlat(String),
    #[error("no nonzero metric in the ansatz window {0}; try a wider window")]
    EmptyBasis(AnsatzWindow),
    #[error("every scanned metric combination is degenerate (pr - q^2 = 0)")]
    Degenerate,
    #[error("point map has vanishing Jacobian determinant")]
    DegenerateMap,
    #[error("the family does not define y as a function of x (F_y = 0)")]
    NotAFunction,
}

/// Coefficients of `p dx^2 + 2 q dx dy + r dy^2`, possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MetricTriple {
    pub p: RF,
    pub q: RF,
    pub r: RF,
}

impl MetricTriple {
    pub fn new(p: RF, q: RF, r: RF) -> MetricTriple {
        MetricTriple { p, q, r }
    }

    pub fn det(&self) -> RF {
        &(&self.p * &self.r) - &self.q.pow(2)
    }

    pub fn scale(&self, k: &RF) -> MetricTriple {
        MetricTriple::new(&self.p * k, &self.q * k, &self.r * k)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    pub fn metric(&self) -> Option<Metric> {
        Metric::two(self.p.clone(), self.q.clone(), self.r.clone()).ok()
    }

    /// Whether `other = k * self` for a nonzero constant `k`; returns `k`.
    pub fn projective_ratio(&self, other: &MetricTriple) -> Option<RF> {
        let pairs = [(&self.p, &other.p), (&self.q, &other.q), (&self.r, &other.r)];
        let (a, b) = pairs.iter().find(|(a, _)| !a.is_zero())?;
        let k = *b / *a;
        if k.is_zero() || !k.is_coordinate_free() {
            return None;
        }
        pairs
            .iter()
            .all(|(a, b)| (&(*a * &k) - *b).is_zero())
            .then_some(k)
    }

    fn add(&self, o: &MetricTriple) -> MetricTriple {
        MetricTriple::new(&self.p + &o.p, &self.q + &o.q, &self.r + &o.r)
    }

    fn sub(&self, o: &MetricTriple) -> MetricTriple {
        MetricTriple::new(&self.p - &o.p, &self.q - &o.q, &self.r - &o.r)
    }
}

impl fmt::Display for MetricTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {}, q = {}, r = {}", self.p, self.q, self.r)
    }
}

/// Solves the metric compatibility system by a Laurent ansatz for p, q, r.
pub fn recover_metric(
    sys: &GeodesicSystem2,
    window: &AnsatzWindow,
) -> Result<Vec<MetricTriple>, SolverError> {
    if let Some(r) = lie_residuals(sys).iter().find(|r| !r.holds()) {
        return Err(SolverError::NotFlat(r.name.clone()));
    }
    let basis = window.monomials();
    let n = basis.len();
    let GeodesicSystem2 { a, b, c, d, e, f } = sys;
    let two = RF::int(2);
    let ae = a + e;
    let bf = b + f;
    // Unknowns: p coefficients, then q, then r.
    let mut col = Collector::new(3 * n);
    let mut identity = |fp: &dyn Fn(&RF) -> RF, fq: &dyn Fn(&RF) -> RF, fr: &dyn Fn(&RF) -> RF| {
        let mut terms = Vec::with_capacity(3 * n);
        for (i, m) in basis.iter().enumerate() {
            terms.push((i, fp(m)));
            terms.push((n + i, fq(m)));
            terms.push((2 * n + i, fr(m)));
        }
        col.add_identity(&terms, &RF::zero());
    };
    let z = |_: &RF| RF::zero();
    identity(&|m| &m.dx() + &(&two * &(a * m)), &|m| &two * &(d * m), &z);
    identity(&|m| b * m, &|m| &m.dx() + &(&ae * m), &|m| d * m);
    identity(&z, &|m| &two * &(b * m), &|m| &m.dx() + &(&two * &(e * m)));
    identity(&|m| &m.dy() + &(&two * &(b * m)), &|m| &two * &(e * m), &z);
    identity(&|m| c * m, &|m| &m.dy() + &(&bf * m), &|m| e * m);
    identity(&z, &|m| &two * &(c * m), &|m| &m.dy() + &(&two * &(f * m)));
    let sys_lin = col.finish();
    let out: Vec<MetricTriple> = sys_lin
        .solve_nullspace()
        .into_iter()
        .map(|v| {
            MetricTriple::new(
                combine(&v[..n], &basis),
                combine(&v[n..2 * n], &basis),
                combine(&v[2 * n..], &basis),
            )
        })
        .collect();
    if out.is_empty() {
        return Err(SolverError::EmptyBasis(*window));
    }
    for m in &out {
        debug_assert!(metric_residuals(sys, &m.p, &m.q, &m.r).iter().all(RF::is_zero));
    }
    Ok(out)
}

pub fn recover_metric_escalating(
    sys: &GeodesicSystem2,
    windows: &[AnsatzWindow],
) -> Result<(Vec<MetricTriple>, AnsatzWindow), SolverError> {
    let mut last = Err(SolverError::EmptyBasis(AnsatzWindow::default()));
    for w in windows {
        match recover_metric(sys, w) {
            Ok(b) => return Ok((b, *w)),
            Err(SolverError::EmptyBasis(w)) => last = Err(SolverError::EmptyBasis(w)),
            Err(e) => return Err(e),
        }
    }
    last
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedMetric {
    pub metric: MetricTriple,
    /// `pr - q^2`, the nondegeneracy certificate.
    pub det: RF,
    /// The determinant is a positive constant times a square and p has a
    /// positive leading coefficient.
    pub definite: bool,
}

/// `f = k * s^2` with a positive rational `k`.
fn positive_square_multiple(f: &RF) -> bool {
    let num = f.numer();
    let k = num.content();
    if !k.is_positive() {
        return false;
    }
    let rest = RF::new(num.scale(&k.recip()), f.denom().clone());
    rest.sqrt_exact().is_some()
}

/// Deterministic choice among basis combinations: single elements, then
/// pairwise sums, then pairwise differences. A combination whose
/// determinant is a positive multiple of a square is preferred; otherwise
/// the first nondegenerate one is taken.
pub fn select_metric(basis: &[MetricTriple]) -> Result<SelectedMetric, SolverError> {
    let mut combos: Vec<MetricTriple> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            combos.push(basis[i].add(&basis[j]));
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            combos.push(basis[i].sub(&basis[j]));
        }
    }
    let mut fallback: Option<SelectedMetric> = None;
    for m in combos {
        let det = m.det();
        if det.is_zero() {
            continue;
        }
        if positive_square_multiple(&det) {
            let m = if m.p.is_negative() { m.scale(&RF::int(-1)) } else { m };
            return Ok(SelectedMetric {
                metric: m,
                det,
                definite: true,
            });
        }
        if fallback.is_none() {
            fallback = Some(SelectedMetric {
                metric: m,
                det,
                definite: false,
            });
        }
    }
    fallback.ok_or(SolverError::Degenerate)
}

/// `u = u(x, y)`, `v = v(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    pub u: RF,
    pub v: RF,
}

impl PointMap {
    pub fn new(u: RF, v: RF) -> PointMap {
        PointMap { u, v }
    }

    pub fn identity() -> PointMap {
        PointMap::new(RF::x(), RF::y())
    }

    pub fn jacobian(&self) -> RF {
        &(&self.u.dx() * &self.v.dy()) - &(&self.u.dy() * &self.v.dx())
    }

    /// Pullback of the Euclidean metric, `J^T J`.
    pub fn pullback_metric(&self) -> MetricTriple {
        let (ux, uy, vx, vy) = (self.u.dx(), self.u.dy(), self.v.dx(), self.v.dy());
        MetricTriple::new(
            &ux.pow(2) + &vx.pow(2),
            &(&ux * &uy) + &(&vx * &vy),
            &uy.pow(2) + &vy.pow(2),
        )
    }
}

impl fmt::Display for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}; v = {}", self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCoordinates {
    /// Dimension of the solution space including constants.
    pub dimension: usize,
    /// Non-constant solutions in reduced echelon form over the window's
    /// monomial order.
    pub coordinates: Vec<RF>,
    pub window: AnsatzWindow,
    pub map: Option<PointMap>,
}

/// Reduced row echelon form, columns in the given order.
fn rref(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot) {
                    *a = &*a - &(&f * b);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Functions with vanishing covariant Hessian for the system's connection,
/// found in the window.
pub fn flat_coordinates(
    sys: &GeodesicSystem2,
    window: &AnsatzWindow,
) -> Result<FlatCoordinates, SolverError> {
    if let Some(r) = lie_residuals(sys).iter().find(|r| !r.holds()) {
        return Err(SolverError::NotFlat(r.name.clone()));
    }
    let conn = sys.connection();
    let basis = window.monomials();
    let hs: Vec<[RF; 3]> = basis.iter().map(|m| covariant_hessian(&conn, m)).collect();
    let mut col = Collector::new(basis.len());
    for k in 0..3 {
        let terms: Vec<(usize, RF)> = hs.iter().enumerate().map(|(i, h)| (i, h[k].clone())).collect();
        col.add_identity(&terms, &RF::zero());
    }
    let null = col.finish().solve_nullspace();
    let dimension = null.len();
    let constant = window.exponents().iter().position(|&e| e == (0, 0));
    let rows: Vec<Vec<Q>> = null
        .into_iter()
        .map(|mut v| {
            if let Some(i) = constant {
                v[i] = Q::zero();
            }
            v
        })
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let coordinates: Vec<RF> = rref(rows).iter().map(|v| combine(v, &basis)).collect();
    let map = if coordinates.len() == 2 {
        let m = PointMap::new(coordinates[0].clone(), coordinates[1].clone());
        (!m.jacobian().is_zero()).then_some(m)
    } else {
        None
    };
    Ok(FlatCoordinates {
        dimension,
        coordinates,
        window: *window,
        map,
    })
}

pub fn flat_coordinates_escalating(
    sys: &GeodesicSystem2,
    windows: &[AnsatzWindow],
) -> Result<FlatCoordinates, SolverError> {
    let mut last = None;
    for w in windows {
        let fc = flat_coordinates(sys, w)?;
        if fc.map.is_some() {
            return Ok(fc);
        }
        last = Some(fc);
    }
    Ok(last.expect("at least one window"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformCheck {
    /// Constant with `J^T J = λ g`.
    pub lambda: Option<RF>,
    pub residuals: Vec<Residual>,
    pub ok: bool,
}

/// Checks that the map carries the Euclidean metric to a constant multiple
/// of `metric`.
pub fn verify_transformation(map: &PointMap, metric: &MetricTriple) -> TransformCheck {
    let pulled = map.pullback_metric();
    let names = ["transform-p", "transform-q", "transform-r"];
    let gs = [&metric.p, &metric.q, &metric.r];
    let us = [&pulled.p, &pulled.q, &pulled.r];
    let lambda = gs
        .iter()
        .zip(us.iter())
        .find(|(g, _)| !g.is_zero())
        .map(|(g, u)| *u / *g);
    let Some(lambda) = lambda else {
        let residuals = names
            .iter()
            .zip(us.iter())
            .map(|(n, u)| Residual::new(n, (*u).clone()))
            .collect();
        return TransformCheck {
            lambda: None,
            residuals,
            ok: false,
        };
    };
    let residuals: Vec<Residual> = names
        .iter()
        .zip(gs.iter().zip(us.iter()))
        .map(|(n, (g, u))| Residual::new(n, *u - &(&lambda * *g)))
        .collect();
    let admissible = !lambda.is_zero()
        && lambda.is_coordinate_free()
        && lambda.as_constant().is_none_or(|c| c.is_positive());
    let ok = admissible && residuals.iter().all(Residual::holds);
    TransformCheck {
        lambda: Some(lambda),
        residuals,
        ok,
    }
}

pub fn constant_a() -> Var {
    Var::constant("A")
}

pub fn constant_b() -> Var {
    Var::constant("B")
}

/// The implicit family `A u + B v = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub u: RF,
    pub v: RF,
}

impl SolutionFamily {
    /// `F = A u + B v - 1`.
    pub fn implicit(&self) -> RF {
        let a = RF::var(constant_a());
        let b = RF::var(constant_b());
        &(&(&a * &self.u) + &(&b * &self.v)) - &RF::one()
    }
}

fn factor_text(f: &RF) -> String {
    if f.is_polynomial() && f.numer().len() > 1 {
        format!("({f})")
    } else {
        f.to_string()
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |name: &str, e: &RF| -> (bool, String) {
            if e.is_one() {
                return (false, name.to_string());
            }
            let neg = e.is_negative();
            let e = if neg { -e } else { e.clone() };
            if e.is_one() {
                (neg, name.to_string())
            } else {
                (neg, format!("{name}*{}", factor_text(&e)))
            }
        };
        let mut out = String::new();
        let mut first = true;
        for (name, e) in [("A", &self.u), ("B", &self.v)] {
            if e.is_zero() {
                continue;
            }
            let (neg, t) = term(name, e);
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&t);
            first = false;
        }
        if first {
            out.push('0');
        }
        write!(f, "{out} = 1")
    }
}

pub fn solution_family(map: &PointMap) -> SolutionFamily {
    SolutionFamily {
        u: map.u.clone(),
        v: map.v.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCheck {
    pub ok: bool,
    /// Variable used for the pseudo-remainder.
    pub eliminant: Var,
    /// Reduced residual; zero exactly when verified.
    pub remainder: Poly,
}

/// Substitutes the implicitly defined `y(x)` into the equation and reduces
/// the residual numerator modulo the family's numerator.
pub fn verify_solution(
    family: &SolutionFamily,
    ode: &JetEquation,
) -> Result<SolutionCheck, SolverError> {
    let f = family.implicit();
    if f.dy().is_zero() {
        return Err(SolverError::NotAFunction);
    }
    let fnum = f.numer();
    let eliminant = [constant_a(), constant_b(), Var::Y]
        .into_iter()
        .find(|v| fnum.degree_in(*v) > 0)
        .expect("F_y != 0 implies F involves y");
    let cleared = match implicit_jets(fnum) {
        Some(jets) => cleared_residual(ode, &jets),
        None => rational_residual(&f, ode),
    };
    let remainder = ext::reduce(&prem(&cleared, fnum, eliminant));
    Ok(SolutionCheck {
        ok: remainder.is_zero(),
        eliminant,
        remainder,
    })
}

fn poly_diff(p: &Poly, v: Var) -> Option<Poly> {
    let r = total_diff(p, v);
    r.denom().is_one().then(|| ext::reduce(r.numer()))
}

/// Numerators of y', y'', y''' on the curve `F = 0` over `F_y`, `F_y^3`,
/// `F_y^5`, followed by `F_y`. Staying polynomial lets the extension
/// relations act on every step; `None` when a derivative leaves the ring.
fn implicit_jets(f: &Poly) -> Option<[Poly; 4]> {
    let fx = poly_diff(f, Var::X)?;
    let fy = poly_diff(f, Var::Y)?;
    let fyx = poly_diff(&fy, Var::X)?;
    let fyy = poly_diff(&fy, Var::Y)?;
    // T(N / D^m) = ((N_x D - m N D_x) D - F_x (N_y D - m N D_y)) / D^(m+2)
    let step = |n: &Poly, m: i64| -> Option<Poly> {
        let mn = n.scale(&Q::from_integer(m.into()));
        let a = &(&poly_diff(n, Var::X)? * &fy) - &(&mn * &fyx);
        let b = &(&poly_diff(n, Var::Y)? * &fy) - &(&mn * &fyy);
        Some(ext::reduce(&(&(&a * &fy) - &(&fx * &b))))
    };
    let n1 = fx.scale(&Q::from_integer((-1).into()));
    let n2 = step(&n1, 1)?;
    let n3 = step(&n2, 3)?;
    Some([n1, n2, n3, fy])
}

/// The residual times `F_y^M` and the common denominator of the
/// coefficients.
fn cleared_residual(ode: &JetEquation, jets: &[Poly; 4]) -> Poly {
    let weight = |m: &Monomial| {
        m.exponent(Var::Jet(1)) + 3 * m.exponent(Var::Jet(2)) + 5 * m.exponent(Var::Jet(3))
    };
    let top = ode.terms().map(|(m, _)| weight(m)).max().unwrap_or(0);
    let mut common = Poly::one();
    for (_, c) in ode.terms() {
        common = lcm(&common, c.denom());
    }
    let mut acc = Poly::zero();
    for (m, c) in ode.terms() {
        let mut t = c.numer() * &common.div_exact(c.denom()).expect("lcm is a multiple");
        for (k, n) in jets[..3].iter().enumerate() {
            t = &t * &n.pow(m.exponent(Var::Jet(k as u8 + 1)));
        }
        t = &t * &jets[3].pow(top - weight(m));
        acc = &acc + &ext::reduce(&t);
    }
    acc
}

fn rational_residual(f: &RF, ode: &JetEquation) -> Poly {
    let y1 = -(&f.dx() / &f.dy());
    let total = |phi: &RF| &phi.dx() + &(&y1 * &phi.dy());
    let y2 = total(&y1);
    let y3 = total(&y2);
    ode.evaluate(&y1, &y2, &y3).numer().clone()
}

/// A flat geodesic system built from a known map, with its ground truth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackSample {
    pub map: PointMap,
    pub metric: MetricTriple,
    pub system: GeodesicSystem2,
}

pub fn flat_pullback_generator(map: &PointMap) -> Result<PullbackSample, SolverError> {
    if map.jacobian().is_zero() {
        return Err(SolverError::DegenerateMap);
    }
    let metric = map.pullback_metric();
    let g = metric.metric().ok_or(SolverError::DegenerateMap)?;
    let system = GeodesicSystem2::from_connection(&christoffel(&g));
    Ok(PullbackSample {
        map: map.clone(),
        metric,
        system,
    })
}

/// The second-order equation whose solutions are the preimages of straight
/// lines under `map`.
pub fn induced_equation(map: &PointMap) -> Result<SecondOrderCubic, SolverError> {
    let sample = flat_pullback_generator(map)?;
    Ok(scalar_of(&project(&sample.system.connection())))
}

/// Random polynomial map `u = x + k1*m1`, `v = y + k2*m2` with quadratic
/// monomials `m1`, `m2` and coefficients in {-2, -1, 1, 2}.
pub fn random_map<R: Rng>(rng: &mut R) -> PointMap {
    let supports: [(u32, u32); 3] = [(2, 0), (1, 1), (0, 2)];
    let mut part = |base: Var| -> RF {
        let (i, j) = supports[rng.gen_range(0..supports.len())];
        let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        let m = Monomial::from_pairs([(Var::X, i), (Var::Y, j)]);
        RF::from_poly(&Poly::var(base) + &Poly::term(m, Q::from_integer(c.into())))
    };
    let u = part(Var::X);
    let v = part(Var::Y);
    PointMap::new(u, v)
}

/// Draws maps until the pullback system is nondegenerate and has `c != 0`.
pub fn random_sample<R: Rng>(rng: &mut R) -> PullbackSample {
    loop {
        let map = random_map(rng);
        if let Ok(s) = flat_pullback_generator(&map) {
            if !s.system.c.is_zero() {
                return s;
            }
        }
    }
}

/// Deterministic sample for a seed.
pub fn seeded_sample(seed: u64) -> PullbackSample {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_sample(&mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RF {
        RF::x()
    }
    fn y() -> RF {
        RF::y()
    }

    fn rational_system() -> GeodesicSystem2 {
        GeodesicSystem2 {
            a: RF::zero(),
            b: RF::zero(),
            c: -(&x() / &y().pow(2)),
            d: RF::zero(),
            e: -x().inv().unwrap(),
            f: y().inv().unwrap(),
        }
    }

    #[test]
    fn rational_system_flat_coordinates() {
        let fc = flat_coordinates(&rational_system(), &AnsatzWindow::new((0, 2), (-2, 2))).unwrap();
        assert_eq!(fc.dimension, 3);
        let map = fc.map.unwrap();
        assert_eq!(map.to_string(), "u = x*y; v = x/y");
    }

    #[test]
    fn rational_system_metric_space() {
        let basis = recover_metric(&rational_system(), &AnsatzWindow::new((0, 2), (-4, 2))).unwrap();
        assert_eq!(basis.len(), 3);
        let m = select_metric(&basis).unwrap();
        assert!(m.definite);
        let printed_metric = MetricTriple::new(
            &(&y().pow(2) + &y().pow(-2)) / &RF::int(2),
            &(&(&x() * &y()) - &(&x() / &y().pow(3))) / &RF::int(2),
            &(&x().pow(2) + &(&x().pow(2) / &y().pow(4))) / &RF::int(2),
        );
        assert!(printed_metric.projective_ratio(&m.metric).is_some());
    }

    #[test]
    fn transformation_scale() {
        let printed_metric = MetricTriple::new(
            &(&y().pow(2) + &y().pow(-2)) / &RF::int(2),
            &(&(&x() * &y()) - &(&x() / &y().pow(3))) / &RF::int(2),
            &(&x().pow(2) + &(&x().pow(2) / &y().pow(4))) / &RF::int(2),
        );
        let map = PointMap::new(&x() * &y(), &x() / &y());
        let t = verify_transformation(&map, &printed_metric);
        assert!(t.ok);
        assert_eq!(t.lambda, Some(RF::int(2)));
        let bad = verify_transformation(
            &PointMap::identity(),
            &MetricTriple::new(RF::one(), RF::zero(), x().pow(2)),
        );
        assert!(!bad.ok);
    }

    #[test]
    fn family_printing() {
        let fam = solution_family(&PointMap::new(&x() * &y(), &x() / &y()));
        assert_eq!(fam.to_string(), "A*x*y + B*x/y = 1");
        let lines = solution_family(&PointMap::identity());
        assert_eq!(lines.to_string(), "A*x + B*y = 1");
    }
}

//! Metrics, Levi-Civita connections and curvature in two and three
//! dimensions, plus the compatibility and flat-coordinate conditions for
//! two-dimensional geodesic systems.

use std::fmt;

use crate::cas::gcd::lcm;
use crate::cas::rational::total_diff;
use crate::cas::{ext, Poly, Var, Q, RF};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("metric determinant is identically zero")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
}

/// Coordinate variable for index `i` (0-based): x, y, z.
pub fn coord(i: usize) -> Var {
    [Var::X, Var::Y, Var::Z][i]
}

/// Symmetric metric tensor `g_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    dim: usize,
    g: Vec<Vec<RF>>,
}

impl Metric {
    pub fn new(g: Vec<Vec<RF>>) -> Result<Metric, GeometryError> {
        let dim = g.len();
        if !(2..=3).contains(&dim) {
            return Err(GeometryError::UnsupportedDimension(dim));
        }
        for (i, row) in g.iter().enumerate() {
            if row.len() != dim {
                return Err(GeometryError::DimensionMismatch(dim, row.len()));
            }
            for j in 0..i {
                assert_eq!(g[i][j], g[j][i], "metric must be symmetric");
            }
        }
        let m = Metric { dim, g };
        if m.det().is_zero() {
            return Err(GeometryError::Singular);
        }
        Ok(m)
    }

    /// Two-dimensional metric `p dx^2 + 2 q dx dy + r dy^2`.
    pub fn two(p: RF, q: RF, r: RF) -> Result<Metric, GeometryError> {
        Metric::new(vec![vec![p, q.clone()], vec![q, r]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RF {
        &self.g[i][j]
    }

    /// `(p, q, r)` for a two-dimensional metric.
    pub fn pqr(&self) -> (RF, RF, RF) {
        assert_eq!(self.dim, 2);
        (self.g[0][0].clone(), self.g[0][1].clone(), self.g[1][1].clone())
    }

    pub fn det(&self) -> RF {
        det(&self.g)
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Vec<Vec<RF>> {
        let d = self.det();
        let n = self.dim;
        let mut inv = vec![vec![RF::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor = minor(&self.g, j, i);
                let c = det(&minor);
                let c = if (i + j) % 2 == 0 { c } else { -c };
                inv[i][j] = &c / &d;
            }
        }
        inv
    }
}

fn minor(m: &[Vec<RF>], row: usize, col: usize) -> Vec<Vec<RF>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

fn det(m: &[Vec<RF>]) -> RF {
    match m.len() {
        0 => RF::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = RF::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = &m[0][j] * &det(&minor(m, 0, j));
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Connection coefficients `gamma[i][j][k] = Γ^i_jk`, symmetric in j, k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    gamma: Vec<Vec<Vec<RF>>>,
}

impl Connection {
    pub fn new(gamma: Vec<Vec<Vec<RF>>>) -> Connection {
        let dim = gamma.len();
        for g in &gamma {
            for j in 0..dim {
                for k in 0..j {
                    assert_eq!(g[j][k], g[k][j], "connection must be symmetric");
                }
            }
        }
        Connection { dim, gamma }
    }

    pub fn zero(dim: usize) -> Connection {
        Connection {
            dim,
            gamma: vec![vec![vec![RF::zero(); dim]; dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RF {
        &self.gamma[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(RF::is_zero)
    }
}

/// The six coefficients of `x'' + a x'^2 + 2b x'y' + c y'^2 = 0`,
/// `y'' + d x'^2 + 2e x'y' + f y'^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeodesicSystem2 {
    pub a: RF,
    pub b: RF,
    pub c: RF,
    pub d: RF,
    pub e: RF,
    pub f: RF,
}

impl GeodesicSystem2 {
    pub fn zero() -> GeodesicSystem2 {
        GeodesicSystem2::default()
    }

    pub fn connection(&self) -> Connection {
        let n = |v: &RF| -v;
        let g1 = vec![
            vec![n(&self.a), n(&self.b)],
            vec![n(&self.b), n(&self.c)],
        ];
        let g2 = vec![
            vec![n(&self.d), n(&self.e)],
            vec![n(&self.e), n(&self.f)],
        ];
        Connection::new(vec![g1, g2])
    }

    pub fn from_connection(conn: &Connection) -> GeodesicSystem2 {
        assert_eq!(conn.dim(), 2);
        GeodesicSystem2 {
            a: -conn.get(0, 0, 0),
            b: -conn.get(0, 0, 1),
            c: -conn.get(0, 1, 1),
            d: -conn.get(1, 0, 0),
            e: -conn.get(1, 0, 1),
            f: -conn.get(1, 1, 1),
        }
    }

    pub fn entries(&self) -> [(&'static str, &RF); 6] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("e", &self.e),
            ("f", &self.f),
        ]
    }
}

impl fmt::Display for GeodesicSystem2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .iter()
            .map(|(n, v)| format!("{n} = {v}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Levi-Civita connection of a metric.
pub fn christoffel(metric: &Metric) -> Connection {
    let n = metric.dim();
    let inv = metric.inverse();
    let dg: Vec<Vec<Vec<RF>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| metric.get(i, j).diff(coord(k))).collect())
                .collect()
        })
        .collect();
    // Γ^i_jk = ½ g^im (g_mj,k + g_mk,j - g_jk,m), summed over a common
    // denominator so each component is canonicalized once.
    let (inv_n, inv_d) = over_common_denominator(&inv.concat());
    let (dg_n, dg_d) = over_common_denominator(&dg.iter().flatten().flatten().cloned().collect::<Vec<_>>());
    let den = (&inv_d * &dg_d).scale(&Q::from_integer(2.into()));
    let dgn = |i: usize, j: usize, k: usize| &dg_n[(i * n + j) * n + k];
    let mut gamma = vec![vec![vec![RF::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let mut s = Poly::zero();
                for m in 0..n {
                    let t = &(dgn(j, m, k) + dgn(k, m, j)) - dgn(j, k, m);
                    s = &s + &(&inv_n[i * n + m] * &t);
                }
                let v = RF::new(s, den.clone());
                gamma[i][k][j] = v.clone();
                gamma[i][j][k] = v;
            }
        }
    }
    Connection::new(gamma)
}

/// Riemann tensor `R^i_jkl` and optionally its lowered form `R_ijkl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannTensor {
    dim: usize,
    mixed: Vec<RF>,
    covariant: Option<Vec<RF>>,
}

impl RiemannTensor {
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mixed(&self, i: usize, j: usize, k: usize, l: usize) -> &RF {
        &self.mixed[self.idx(i, j, k, l)]
    }

    pub fn covariant(&self, i: usize, j: usize, k: usize, l: usize) -> Option<&RF> {
        let n = self.idx(i, j, k, l);
        self.covariant.as_ref().map(|c| &c[n])
    }

    /// Overwrites one mixed component. Intended for falsification tests.
    pub fn set_mixed(&mut self, i: usize, j: usize, k: usize, l: usize, v: RF) {
        let n = self.idx(i, j, k, l);
        self.mixed[n] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.mixed.iter().all(RF::is_zero)
    }

    /// `R^i_jkl = -R^i_jlk`.
    pub fn antisymmetry_holds(&self) -> bool {
        let n = self.dim;
        indices4(n).all(|(i, j, k, l)| *self.mixed(i, j, k, l) == -self.mixed(i, j, l, k))
    }

    /// `R^i_jkl + R^i_klj + R^i_ljk = 0`.
    pub fn first_bianchi_holds(&self) -> bool {
        let n = self.dim;
        let (p, _) = over_common_denominator(&self.mixed);
        indices4(n).all(|(i, j, k, l)| {
            let s = &(&p[self.idx(i, j, k, l)] + &p[self.idx(i, k, l, j)]) + &p[self.idx(i, l, j, k)];
            ext::reduce(&s).is_zero()
        })
    }

    /// `R_ijkl = -R_jikl`; false when the tensor has not been lowered.
    pub fn covariant_antisymmetry_holds(&self) -> bool {
        let Some(c) = &self.covariant else {
            return false;
        };
        let n = self.dim;
        indices4(n).all(|(i, j, k, l)| c[self.idx(i, j, k, l)] == -&c[self.idx(j, i, k, l)])
    }
}

/// Numerators of `values` over their least common denominator, and that
/// denominator.
fn over_common_denominator(values: &[RF]) -> (Vec<Poly>, Poly) {
    let mut l = Poly::one();
    for v in values {
        if l.div_exact(v.denom()).is_none() {
            l = lcm(&l, v.denom());
        }
    }
    let nums = values
        .iter()
        .map(|v| v.numer() * &l.div_exact(v.denom()).expect("common multiple"))
        .collect();
    (nums, l)
}

fn poly_diff(p: &Poly, m: usize) -> Option<Poly> {
    let d = total_diff(p, coord(m));
    d.denom().is_one().then(|| d.numer().clone())
}

fn indices4(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))
    })
}

/// `R^i_jkl = Γ^i_jl,k − Γ^i_jk,l + Γ^i_mk Γ^m_jl − Γ^i_ml Γ^m_jk`.
pub fn riemann(conn: &Connection) -> RiemannTensor {
    let n = conn.dim();
    let mut out = RiemannTensor {
        dim: n,
        mixed: vec![RF::zero(); n * n * n * n],
        covariant: None,
    };
    let flat: Vec<RF> = conn.gamma.iter().flatten().flatten().cloned().collect();
    let (nn, den) = over_common_denominator(&flat);
    let cleared = nn
        .iter()
        .flat_map(|p| (0..n).map(move |m| poly_diff(p, m)))
        .collect::<Option<Vec<Poly>>>()
        .zip((0..n).map(|m| poly_diff(&den, m)).collect::<Option<Vec<Poly>>>());
    let den2 = &den * &den;
    for (i, j, k, l) in indices4(n) {
        if k == l {
            continue;
        }
        if k > l {
            let v = -out.mixed(i, j, l, k).clone();
            let ix = out.idx(i, j, k, l);
            out.mixed[ix] = v;
            continue;
        }
        let v = match &cleared {
            // With Γ = N / L: R = P / L^2.
            Some((dn, dl)) => {
                let g = |a: usize, b: usize, c: usize| &nn[(a * n + b) * n + c];
                let dg = |a: usize, b: usize, c: usize, m: usize| &dn[((a * n + b) * n + c) * n + m];
                let mut p = &(&(dg(i, j, l, k) * &den) - &(g(i, j, l) * &dl[k]))
                    - &(&(dg(i, j, k, l) * &den) - &(g(i, j, k) * &dl[l]));
                for m in 0..n {
                    p = &p + &(&(g(i, m, k) * g(m, j, l)) - &(g(i, m, l) * g(m, j, k)));
                }
                RF::new(p, den2.clone())
            }
            None => {
                let mut s = &conn.get(i, j, l).diff(coord(k)) - &conn.get(i, j, k).diff(coord(l));
                for m in 0..n {
                    let t1 = conn.get(i, m, k) * conn.get(m, j, l);
                    let t2 = conn.get(i, m, l) * conn.get(m, j, k);
                    s = &s + &(&t1 - &t2);
                }
                s
            }
        };
        let ix = out.idx(i, j, k, l);
        out.mixed[ix] = v;
    }
    out
}

/// Fills `R_ijkl = g_im R^m_jkl`.
pub fn lower(r: &RiemannTensor, metric: &Metric) -> Result<RiemannTensor, GeometryError> {
    if r.dim != metric.dim() {
        return Err(GeometryError::DimensionMismatch(r.dim, metric.dim()));
    }
    let n = r.dim;
    let (pn, pd) = over_common_denominator(&r.mixed);
    let (gn, gd) = over_common_denominator(&metric.g.concat());
    let den = &pd * &gd;
    let mut cov = vec![RF::zero(); n * n * n * n];
    for (i, j, k, l) in indices4(n) {
        if k >= l {
            if k > l {
                cov[r.idx(i, j, k, l)] = -&cov[r.idx(i, j, l, k)];
            }
            continue;
        }
        let mut s = Poly::zero();
        for m in 0..n {
            s = &s + &(&gn[i * n + m] * &pn[r.idx(m, j, k, l)]);
        }
        cov[r.idx(i, j, k, l)] = RF::new(s, den.clone());
    }
    let mut out = r.clone();
    out.covariant = Some(cov);
    Ok(out)
}

/// Cyclic sum `R^i_jkl;m + R^i_jlm;k + R^i_jmk;l` vanishes for all indices.
pub fn check_bianchi2(r: &RiemannTensor, conn: &Connection) -> bool {
    bianchi2_cleared(r, conn).unwrap_or_else(|| bianchi2_rational(r, conn))
}

/// With `Γ = N / L` for the common denominator `L`, `R = P / L^2` and
/// `R_;m = Q / L^3` with polynomial `Q`, so the cyclic sums need no gcds.
/// `None` when a component does not clear.
fn bianchi2_cleared(r: &RiemannTensor, conn: &Connection) -> Option<bool> {
    let n = r.dim;
    let mut l = Poly::one();
    for g in conn.gamma.iter().flatten().flatten() {
        l = lcm(&l, g.denom());
    }
    let lift = |f: &RF, by: &RF| -> Option<Poly> {
        let p = f * by;
        p.denom().is_one().then(|| p.numer().clone())
    };
    let diff = poly_diff;
    let l1 = RF::from_poly(l.clone());
    let l2 = &l1 * &l1;
    let mut nn = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                nn.push(lift(conn.get(i, j, k), &l1)?);
            }
        }
    }
    let mut pp = Vec::with_capacity(n * n * n * n);
    for (i, j, k, l) in indices4(n) {
        pp.push(lift(r.mixed(i, j, k, l), &l2)?);
    }
    let lm: Vec<Poly> = (0..n).map(|m| diff(&l, m)).collect::<Option<_>>()?;
    let gam = |i: usize, j: usize, k: usize| &nn[(i * n + j) * n + k];
    let rie = |i: usize, j: usize, k: usize, l: usize| &pp[((i * n + j) * n + k) * n + l];
    let two = Q::from_integer(2.into());
    let cd = |i: usize, j: usize, k: usize, l_: usize, m: usize| -> Option<Poly> {
        let p = rie(i, j, k, l_);
        let mut s = &(&diff(p, m)? * &l) - &(p * &lm[m]).scale(&two);
        for q in 0..n {
            s = &s + &(gam(i, q, m) * rie(q, j, k, l_));
            s = &s - &(gam(q, j, m) * rie(i, q, k, l_));
            s = &s - &(gam(q, k, m) * rie(i, j, q, l_));
            s = &s - &(gam(q, l_, m) * rie(i, j, k, q));
        }
        Some(s)
    };
    let mut table = Vec::with_capacity(n.pow(5));
    for (i, j, k, l_) in indices4(n) {
        for m in 0..n {
            table.push(cd(i, j, k, l_, m)?);
        }
    }
    let at = |i: usize, j: usize, k: usize, l_: usize, m: usize| &table[(((i * n + j) * n + k) * n + l_) * n + m];
    for (i, j, k, l_) in indices4(n) {
        for m in 0..n {
            let s = &(at(i, j, k, l_, m) + at(i, j, l_, m, k)) + at(i, j, m, k, l_);
            if !ext::reduce(&s).is_zero() {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn bianchi2_rational(r: &RiemannTensor, conn: &Connection) -> bool {
    let n = r.dim;
    let cd = |i: usize, j: usize, k: usize, l: usize, m: usize| -> RF {
        let mut s = r.mixed(i, j, k, l).diff(coord(m));
        for p in 0..n {
            s = &s + &(conn.get(i, p, m) * r.mixed(p, j, k, l));
            s = &s - &(conn.get(p, j, m) * r.mixed(i, p, k, l));
            s = &s - &(conn.get(p, k, m) * r.mixed(i, j, p, l));
            s = &s - &(conn.get(p, l, m) * r.mixed(i, j, k, p));
        }
        s
    };
    for (i, j, k, l) in indices4(n) {
        for m in 0..n {
            let s = &(cd(i, j, k, l, m) + cd(i, j, l, m, k)) + cd(i, j, m, k, l);
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Flatness of a two-dimensional connection: the components `R^i_j12`.
pub fn is_flat(conn: &Connection) -> bool {
    if conn.dim() != 2 {
        return riemann(conn).is_zero();
    }
    let r = riemann(conn);
    (0..2).all(|i| (0..2).all(|j| r.mixed(i, j, 0, 1).is_zero()))
}

/// Residuals of the metric compatibility system for a geodesic system:
/// each vanishes iff `(p, q, r)` is parallel for the connection.
pub fn metric_residuals(sys: &GeodesicSystem2, p: &RF, q: &RF, r: &RF) -> [RF; 6] {
    let GeodesicSystem2 { a, b, c, d, e, f } = sys;
    let two = RF::int(2);
    [
        &p.dx() + &(&two * &(&(a * p) + &(d * q))),
        &(&(&q.dx() + &(b * p)) + &(&(a + e) * q)) + &(d * r),
        &r.dx() + &(&two * &(&(b * q) + &(e * r))),
        &p.dy() + &(&two * &(&(b * p) + &(e * q))),
        &(&(&q.dy() + &(c * p)) + &(&(b + f) * q)) + &(e * r),
        &r.dy() + &(&two * &(&(c * q) + &(f * r))),
    ]
}

/// Covariant Hessian `H_ij = u_,ij − Γ^k_ij u_,k` for `(ij) = 11, 12, 22`.
pub fn covariant_hessian(conn: &Connection, u: &RF) -> [RF; 3] {
    assert_eq!(conn.dim(), 2);
    let du = [u.dx(), u.dy()];
    let h = |i: usize, j: usize| -> RF {
        let mut s = du[i].diff(coord(j));
        for (k, duk) in du.iter().enumerate() {
            if !duk.is_zero() {
                s = &s - &(conn.get(k, i, j) * duk);
            }
        }
        s
    };
    [h(0, 0), h(0, 1), h(1, 1)]
}

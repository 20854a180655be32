//! Projection of geodesic systems to a scalar second-order equation, the
//! two third-order forms obtained by differentiating it, and the inverse
//! extraction of the second-order coefficients from a third-order equation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::cas::ansatz::{combine, Collector};
use crate::cas::{AnsatzWindow, Monomial, Poly, Var, Q, RF};
use crate::geometry::Connection;

/// `y'' + c y'^3 - g y'^2 + h y' - d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SecondOrderCubic {
    pub c: RF,
    pub g: RF,
    pub h: RF,
    pub d: RF,
}

/// `y''' - α y'^5 + β y'^4 - γ y'^3 + δ y'^2 - ε y' + φ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuinticForm {
    pub alpha: RF,
    pub beta: RF,
    pub gamma: RF,
    pub delta: RF,
    pub epsilon: RF,
    pub phi: RF,
}

/// `y''' + (A2 y'^2 - A1 y' + A0) y'' + B4 y'^4 - B3 y'^3 + B2 y'^2 - B1 y' + B0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SemilinearForm {
    pub a2: RF,
    pub a1: RF,
    pub a0: RF,
    pub b4: RF,
    pub b3: RF,
    pub b2: RF,
    pub b1: RF,
    pub b0: RF,
}

/// Polynomial in y', y'', y''' with rational-function coefficients.
///
/// Keys are monomials in the jet variables only. Printing walks the keys
/// from the largest down, which is lexicographic with y''' > y'' > y'.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JetEquation {
    terms: BTreeMap<Monomial, RF>,
}

pub fn jet(k: u8) -> Monomial {
    Monomial::var(Var::Jet(k))
}

/// `y'^i y''^j y'''^k`.
pub fn jets(i: u32, j: u32, k: u32) -> Monomial {
    Monomial::from_pairs([(Var::Jet(1), i), (Var::Jet(2), j), (Var::Jet(3), k)])
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("derivative of y appears in a denominator")]
    JetInDenominator,
    #[error("equation does not involve y'' or y'''")]
    NoDerivative,
    #[error("unsupported term {0}")]
    UnsupportedTerm(String),
    #[error("coefficient of the highest derivative is identically zero")]
    ZeroLeading,
}

impl JetEquation {
    pub fn zero() -> JetEquation {
        JetEquation::default()
    }

    /// Splits an expression in the jets into its jet monomials.
    pub fn from_rf(rf: &RF) -> Result<JetEquation, ShapeError> {
        if rf.denom().any_var(|v| v.is_jet()) {
            return Err(ShapeError::JetInDenominator);
        }
        let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in rf.numer().terms() {
            let jm = m.restrict(|v| v.is_jet());
            let rest = m.restrict(|v| !v.is_jet());
            groups.entry(jm).or_default().add_term(rest, c.clone());
        }
        let mut eq = JetEquation::zero();
        for (m, p) in groups {
            eq.add(m, &RF::new(p, rf.denom().clone()));
        }
        Ok(eq)
    }

    pub fn add(&mut self, m: Monomial, c: &RF) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(RF::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: &Monomial) -> RF {
        self.terms.get(m).cloned().unwrap_or_else(RF::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RF)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present (0 when none).
    pub fn order(&self) -> u8 {
        self.terms
            .keys()
            .flat_map(|m| m.vars())
            .filter_map(|v| match v {
                Var::Jet(k) => Some(k),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, f: &RF) -> JetEquation {
        let mut out = JetEquation::zero();
        for (m, c) in &self.terms {
            out.add(m.clone(), &(c * f));
        }
        out
    }

    /// Divides by the coefficient of the highest derivative.
    pub fn normalize(&self) -> Result<JetEquation, ShapeError> {
        let k = self.order();
        if k < 2 {
            return Err(ShapeError::NoDerivative);
        }
        let lead = self.coeff(&jet(k));
        let Some(inv) = lead.inv() else {
            return Err(ShapeError::ZeroLeading);
        };
        Ok(self.scale(&inv))
    }

    pub fn to_rf(&self) -> RF {
        self.terms
            .iter()
            .map(|(m, c)| c * &RF::from_poly(Poly::term(m.clone(), Q::one())))
            .sum()
    }

    /// Substitutes values for the jets.
    pub fn evaluate(&self, y1: &RF, y2: &RF, y3: &RF) -> RF {
        let mut acc = RF::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let base = match v {
                    Var::Jet(1) => y1,
                    Var::Jet(2) => y2,
                    _ => y3,
                };
                t = &t * &base.pow(e as i32);
            }
            acc = &acc + &t;
        }
        acc
    }
}

fn write_jet_monomial(m: &Monomial, out: &mut String) {
    let mut first = true;
    for &(v, e) in m.pairs() {
        if !first {
            out.push('*');
        }
        first = false;
        if e == 1 {
            out.push_str(&v.to_string());
        } else {
            out.push_str(&format!("{v}^{e}"));
        }
    }
}

impl fmt::Display for JetEquation {
    /// `y''' - (3*x^2/y^4)*y'^5 + ... = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0 = 0");
        }
        let key = |m: &Monomial| {
            [3, 2, 1].map(|k| std::cmp::Reverse(m.exponent(Var::Jet(k))))
        };
        let mut terms: Vec<(&Monomial, &RF)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| key(m));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let c = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                let s = c.to_string();
                if c.is_polynomial() && c.numer().len() > 1 {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
                continue;
            }
            if !c.is_one() {
                if c.is_polynomial() && c.numer().len() == 1 {
                    out.push_str(&format!("{c}*"));
                } else {
                    out.push_str(&format!("({c})*"));
                }
            }
            write_jet_monomial(m, &mut out);
        }
        out.push_str(" = 0");
        f.write_str(&out)
    }
}

impl SecondOrderCubic {
    pub fn zero() -> SecondOrderCubic {
        SecondOrderCubic::default()
    }

    pub fn to_jets(&self) -> JetEquation {
        let mut e = JetEquation::zero();
        e.add(jet(2), &RF::one());
        e.add(jets(3, 0, 0), &self.c);
        e.add(jets(2, 0, 0), &-&self.g);
        e.add(jets(1, 0, 0), &self.h);
        e.add(Monomial::one(), &-&self.d);
        e
    }

    /// Reads a normalized equation of order two. Terms outside the cubic
    /// shape are rejected.
    pub fn from_jets(eq: &JetEquation) -> Result<SecondOrderCubic, ShapeError> {
        check_support(eq, &[jet(2), jets(3, 0, 0), jets(2, 0, 0), jets(1, 0, 0), Monomial::one()])?;
        Ok(SecondOrderCubic {
            c: eq.coeff(&jets(3, 0, 0)),
            g: -eq.coeff(&jets(2, 0, 0)),
            h: eq.coeff(&jets(1, 0, 0)),
            d: -eq.coeff(&Monomial::one()),
        })
    }

    pub fn entries(&self) -> [(&'static str, &RF); 4] {
        [("c", &self.c), ("g", &self.g), ("h", &self.h), ("d", &self.d)]
    }
}

impl QuinticForm {
    pub fn to_jets(&self) -> JetEquation {
        let mut e = JetEquation::zero();
        e.add(jet(3), &RF::one());
        e.add(jets(5, 0, 0), &-&self.alpha);
        e.add(jets(4, 0, 0), &self.beta);
        e.add(jets(3, 0, 0), &-&self.gamma);
        e.add(jets(2, 0, 0), &self.delta);
        e.add(jets(1, 0, 0), &-&self.epsilon);
        e.add(Monomial::one(), &self.phi);
        e
    }

    pub fn from_jets(eq: &JetEquation) -> Result<QuinticForm, ShapeError> {
        let mut support = vec![jet(3), Monomial::one()];
        support.extend((1..=5).map(|k| jets(k, 0, 0)));
        check_support(eq, &support)?;
        Ok(QuinticForm {
            alpha: -eq.coeff(&jets(5, 0, 0)),
            beta: eq.coeff(&jets(4, 0, 0)),
            gamma: -eq.coeff(&jets(3, 0, 0)),
            delta: eq.coeff(&jets(2, 0, 0)),
            epsilon: -eq.coeff(&jets(1, 0, 0)),
            phi: eq.coeff(&Monomial::one()),
        })
    }

    pub fn entries(&self) -> [(&'static str, &RF); 6] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("phi", &self.phi),
        ]
    }
}

impl SemilinearForm {
    pub fn to_jets(&self) -> JetEquation {
        let mut e = JetEquation::zero();
        e.add(jet(3), &RF::one());
        e.add(jets(2, 1, 0), &self.a2);
        e.add(jets(1, 1, 0), &-&self.a1);
        e.add(jet(2), &self.a0);
        e.add(jets(4, 0, 0), &self.b4);
        e.add(jets(3, 0, 0), &-&self.b3);
        e.add(jets(2, 0, 0), &self.b2);
        e.add(jets(1, 0, 0), &-&self.b1);
        e.add(Monomial::one(), &self.b0);
        e
    }

    pub fn from_jets(eq: &JetEquation) -> Result<SemilinearForm, ShapeError> {
        let mut support = vec![jet(3), jets(2, 1, 0), jets(1, 1, 0), jet(2), Monomial::one()];
        support.extend((1..=4).map(|k| jets(k, 0, 0)));
        check_support(eq, &support)?;
        Ok(SemilinearForm {
            a2: eq.coeff(&jets(2, 1, 0)),
            a1: -eq.coeff(&jets(1, 1, 0)),
            a0: eq.coeff(&jet(2)),
            b4: eq.coeff(&jets(4, 0, 0)),
            b3: -eq.coeff(&jets(3, 0, 0)),
            b2: eq.coeff(&jets(2, 0, 0)),
            b1: -eq.coeff(&jets(1, 0, 0)),
            b0: eq.coeff(&Monomial::one()),
        })
    }

    /// True when no y'' term is present.
    pub fn is_quintic_shaped(&self) -> bool {
        self.a2.is_zero() && self.a1.is_zero() && self.a0.is_zero()
    }

    pub fn entries(&self) -> [(&'static str, &RF); 8] {
        [
            ("A2", &self.a2),
            ("A1", &self.a1),
            ("A0", &self.a0),
            ("B4", &self.b4),
            ("B3", &self.b3),
            ("B2", &self.b2),
            ("B1", &self.b1),
            ("B0", &self.b0),
        ]
    }
}

fn check_support(eq: &JetEquation, allowed: &[Monomial]) -> Result<(), ShapeError> {
    for (m, _) in eq.terms() {
        if !allowed.contains(m) {
            let mut s = String::new();
            write_jet_monomial(m, &mut s);
            return Err(ShapeError::UnsupportedTerm(s));
        }
    }
    Ok(())
}

/// Coefficients of the geodesic equations after eliminating the parameter,
/// with `x` as the new independent variable. Index 0 is unused for the
/// upper and lower indices that range over the remaining coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedSystem {
    pub dim: usize,
    /// `a[b][c]`
    pub a: Vec<Vec<RF>>,
    /// `b[a][b][c]`
    pub b: Vec<Vec<Vec<RF>>>,
    /// `c[a][b]`
    pub c: Vec<Vec<RF>>,
    /// `d[a]`
    pub d: Vec<RF>,
}

pub fn project(conn: &Connection) -> ProjectedSystem {
    let n = conn.dim();
    assert!(n >= 2);
    let delta = |i: usize, j: usize| if i == j { RF::one() } else { RF::zero() };
    let mut p = ProjectedSystem {
        dim: n,
        a: vec![vec![RF::zero(); n]; n],
        b: vec![vec![vec![RF::zero(); n]; n]; n],
        c: vec![vec![RF::zero(); n]; n],
        d: vec![RF::zero(); n],
    };
    for b in 1..n {
        for c in 1..n {
            p.a[b][c] = -conn.get(0, b, c);
        }
    }
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let sym = &(&delta(a, c) * conn.get(0, b, 0)) + &(&delta(a, b) * conn.get(0, c, 0));
                p.b[a][b][c] = conn.get(a, b, c) - &sym;
            }
            p.c[a][b] = &(&RF::int(2) * conn.get(a, 0, b)) - &(&delta(a, b) * conn.get(0, 0, 0));
        }
        p.d[a] = conn.get(a, 0, 0).clone();
    }
    p
}

pub fn scalar_of(p: &ProjectedSystem) -> SecondOrderCubic {
    assert_eq!(p.dim, 2);
    SecondOrderCubic {
        c: p.a[1][1].clone(),
        g: -&p.b[1][1][1],
        h: p.c[1][1].clone(),
        d: -&p.d[1],
    }
}

/// Total x-derivative of the second-order equation, kept linear in y''.
pub fn third_semilinear(e: &SecondOrderCubic) -> SemilinearForm {
    let SecondOrderCubic { c, g, h, d } = e;
    SemilinearForm {
        a2: &RF::int(3) * c,
        a1: &RF::int(2) * g,
        a0: h.clone(),
        b4: c.dy(),
        b3: &g.dy() - &c.dx(),
        b2: &h.dy() - &g.dx(),
        b1: &d.dy() - &h.dx(),
        b0: -d.dx(),
    }
}

/// The semilinear form with y'' eliminated through the second-order equation.
pub fn third_quintic(e: &SecondOrderCubic) -> QuinticForm {
    let SecondOrderCubic { c, g, h, d } = e;
    let n = |k: i64| RF::int(k);
    QuinticForm {
        alpha: &n(3) * &c.pow(2),
        beta: &(&n(5) * &(c * g)) + &c.dy(),
        gamma: &(&(&(&n(4) * &(c * h)) + &(&n(2) * &g.pow(2))) + &g.dy()) - &c.dx(),
        delta: &(&(&(&n(3) * &(c * d)) + &(&n(3) * &(g * h))) + &h.dy()) - &g.dx(),
        epsilon: epsilon_of(e),
        phi: phi_of(e),
    }
}

fn epsilon_of(e: &SecondOrderCubic) -> RF {
    let SecondOrderCubic { g, h, d, .. } = e;
    &(&(&(&RF::int(2) * &(d * g)) + &h.pow(2)) + &d.dy()) - &h.dx()
}

fn phi_of(e: &SecondOrderCubic) -> RF {
    &(&e.d * &e.h) - &e.d.dx()
}

/// How a candidate second-order equation was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
    Hint,
    Search,
    Semilinear,
    Given,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
            Branch::Hint => "hint",
            Branch::Search => "search",
            Branch::Semilinear => "semilinear",
            Branch::Given => "given",
        })
    }
}

/// A named expression that must vanish identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub value: RF,
}

impl Residual {
    pub fn new(name: &str, value: RF) -> Residual {
        Residual {
            name: name.to_string(),
            value,
        }
    }

    pub fn holds(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub eq2: SecondOrderCubic,
    pub branch: Branch,
    pub checks: Vec<Residual>,
}

impl Candidate {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(Residual::holds)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Residual> {
        self.checks.iter().filter(|r| !r.holds())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    /// One candidate per sign of c, `+` first.
    Candidates(Vec<Candidate>),
    NotInClass(String),
    /// `α = β = 0`: c vanishes and the inversion is not unique.
    Degenerate,
}

fn consistency_checks(q: &QuinticForm, e: &SecondOrderCubic) -> Vec<Residual> {
    vec![
        Residual::new("epsilon-consistency", &q.epsilon - &epsilon_of(e)),
        Residual::new("phi-consistency", &q.phi - &phi_of(e)),
    ]
}

/// Inverts the quintic coefficients for both signs of `c`.
pub fn extract_quintic(q: &QuinticForm) -> Extraction {
    if q.alpha.is_zero() {
        if q.beta.is_zero() {
            return Extraction::Degenerate;
        }
        return Extraction::NotInClass(
            "alpha vanishes but beta does not, so c = 0 cannot reproduce beta".into(),
        );
    }
    let Some(root) = (&q.alpha / &RF::int(3)).sqrt_exact() else {
        return Extraction::NotInClass(format!(
            "alpha/3 = {} is not the square of a rational function",
            &q.alpha / &RF::int(3)
        ));
    };
    let mut out = Vec::new();
    for (branch, c) in [(Branch::Plus, root.clone()), (Branch::Minus, -root)] {
        let g = &(&q.beta - &c.dy()) / &(&RF::int(5) * &c);
        let h = &(&(&(&q.gamma - &(&RF::int(2) * &g.pow(2))) - &g.dy()) + &c.dx()) / &(&RF::int(4) * &c);
        let d = &(&(&(&q.delta - &(&RF::int(3) * &(&g * &h))) - &h.dy()) + &g.dx()) / &(&RF::int(3) * &c);
        let eq2 = SecondOrderCubic { c, g, h, d };
        let checks = consistency_checks(q, &eq2);
        out.push(Candidate { eq2, branch, checks });
    }
    Extraction::Candidates(out)
}

/// Checks of the four matching conditions when `c = 0`.
pub fn degenerate_checks(q: &QuinticForm, e: &SecondOrderCubic) -> Vec<Residual> {
    let SecondOrderCubic { g, h, .. } = e;
    let mut v = vec![
        Residual::new("gamma-consistency", &(&q.gamma - &(&RF::int(2) * &g.pow(2))) - &g.dy()),
        Residual::new(
            "delta-consistency",
            &(&(&q.delta - &(&RF::int(3) * &(g * h))) - &h.dy()) + &g.dx(),
        ),
    ];
    v.extend(consistency_checks(q, e));
    v
}

/// Symbols other than coordinates appearing in the coefficients; an ansatz
/// must be allowed to use them.
fn constant_symbols(fs: &[&RF]) -> Vec<Var> {
    let mut out: Vec<Var> = Vec::new();
    for f in fs {
        for v in f.vars() {
            if matches!(v, Var::Const(_)) && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Solves `sum_i L(m_i) k_i = rhs` for the ansatz coefficients, where `op`
/// applies the linear operator to one basis function. Returns the particular
/// solution with free unknowns zero, and the homogeneous basis.
fn solve_linear_ansatz(
    basis: &[RF],
    ops: &[&dyn Fn(&RF) -> RF],
    rhs: &[RF],
) -> Option<(RF, Vec<RF>)> {
    let mut col = Collector::new(basis.len());
    for (op, r) in ops.iter().zip(rhs) {
        let terms: Vec<(usize, RF)> = basis.iter().enumerate().map(|(i, m)| (i, op(m))).collect();
        col.add_identity(&terms, &-r);
    }
    let sys = col.finish();
    let particular = sys.solve_particular()?;
    let hom = sys
        .solve_nullspace()
        .iter()
        .map(|v| combine(v, basis))
        .collect();
    Some((combine(&particular, basis), hom))
}

const MAX_SEARCH_CANDIDATES: usize = 8;

/// Extraction for `α = β = 0`. With a hint its four matching conditions are
/// checked; otherwise `g` is searched among rational solutions of
/// `g_y + 2 g^2 = γ` (via `g = w_y / (2w)`, `w_yy = 2 γ w`), followed by
/// linear solves for `h` and `d`.
pub fn extract_degenerate(
    q: &QuinticForm,
    hint: Option<&SecondOrderCubic>,
    window: &AnsatzWindow,
) -> Vec<Candidate> {
    if let Some(hint) = hint {
        let mut eq2 = hint.clone();
        eq2.c = RF::zero();
        let checks = degenerate_checks(q, &eq2);
        return vec![Candidate {
            eq2,
            branch: Branch::Hint,
            checks,
        }];
    }
    let consts = constant_symbols(&[&q.gamma, &q.delta, &q.epsilon, &q.phi]);
    let mut w = *window;
    w.ext_degree = if consts.is_empty() { 0 } else { 2 };
    let basis = w.monomials_with(&consts);

    let two_gamma = &RF::int(2) * &q.gamma;
    let riccati = |m: &RF| &m.dy().dy() - &(&two_gamma * m);
    let Some((_, ws)) = solve_linear_ansatz(&basis, &[&riccati], &[RF::zero()]) else {
        return Vec::new();
    };
    let mut gs: Vec<RF> = Vec::new();
    for wv in &ws {
        let g = &wv.dy() / &(&RF::int(2) * wv);
        if !gs.contains(&g) {
            gs.push(g);
        }
        if gs.len() >= MAX_SEARCH_CANDIDATES {
            break;
        }
    }

    let mut out = Vec::new();
    for g in gs {
        // h_y + 3 g h = δ + g_x
        let three_g = &RF::int(3) * &g;
        let op_h = |m: &RF| &m.dy() + &(&three_g * m);
        let Some((h, _)) = solve_linear_ansatz(&basis, &[&op_h], &[&q.delta + &g.dx()]) else {
            continue;
        };
        // d_y + 2 g d = ε - h^2 + h_x, then φ = d h - d_x fixes the
        // homogeneous part where possible.
        let two_g = &RF::int(2) * &g;
        let op_d = |m: &RF| &m.dy() + &(&two_g * m);
        let rhs_d = &(&q.epsilon - &h.pow(2)) + &h.dx();
        let Some((dp, dh)) = solve_linear_ansatz(&basis, &[&op_d], &[rhs_d]) else {
            continue;
        };
        let d = if dh.is_empty() {
            dp
        } else {
            let target = &(&q.phi - &(&dp * &h)) + &dp.dx();
            let op_phi = |m: &RF| &(m * &h) - &m.dx();
            match solve_linear_ansatz(&dh, &[&op_phi], &[target]) {
                Some((shift, _)) => &dp + &shift,
                None => dp,
            }
        };
        let eq2 = SecondOrderCubic {
            c: RF::zero(),
            g,
            h,
            d,
        };
        let checks = degenerate_checks(q, &eq2);
        out.push(Candidate {
            eq2,
            branch: Branch::Search,
            checks,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemilinearExtraction {
    /// `d` is determined up to an additive constant; the candidate carries
    /// the representative whose constant part is zero.
    Found(Candidate),
    NotInClass(String, Vec<Residual>),
    /// No rational `d` in the ansatz window.
    Undecided(String, Candidate),
}

pub fn extract_semilinear(s: &SemilinearForm, windows: &[AnsatzWindow]) -> SemilinearExtraction {
    let c = &s.a2 / &RF::int(3);
    let g = &s.a1 / &RF::int(2);
    let h = s.a0.clone();
    let mut checks = vec![
        Residual::new("semilinear-B4", &s.b4 - &c.dy()),
        Residual::new("semilinear-B3", &s.b3 - &(&g.dy() - &c.dx())),
        Residual::new("semilinear-B2", &s.b2 - &(&h.dy() - &g.dx())),
    ];
    // d_x = -B0 and d_y = B1 + h_x must be compatible.
    let dx = -&s.b0;
    let dy = &s.b1 + &h.dx();
    let integrability = Residual::new("d-integrability", &dx.dy() - &dy.dx());
    if !integrability.holds() {
        checks.push(integrability);
        return SemilinearExtraction::NotInClass(
            "no function d has the required partial derivatives".into(),
            checks,
        );
    }
    checks.push(integrability);
    let consts = constant_symbols(&[&dx, &dy]);
    let mut found = None;
    if dx.is_zero() && dy.is_zero() {
        found = Some(RF::zero());
    } else {
        for w in windows {
            let mut w = *w;
            w.ext_degree = if consts.is_empty() { 0 } else { 2 };
            let basis = w.monomials_with(&consts);
            let op_x = |m: &RF| m.dx();
            let op_y = |m: &RF| m.dy();
            if let Some((d, _)) = solve_linear_ansatz(&basis, &[&op_x, &op_y], &[dx.clone(), dy.clone()]) {
                found = Some(d);
                break;
            }
        }
    }
    let mk = |d: RF, checks: Vec<Residual>| Candidate {
        eq2: SecondOrderCubic {
            c: c.clone(),
            g: g.clone(),
            h: h.clone(),
            d,
        },
        branch: Branch::Semilinear,
        checks,
    };
    match found {
        Some(d) => SemilinearExtraction::Found(mk(d, checks)),
        None => SemilinearExtraction::Undecided(
            "no rational antiderivative for d in the ansatz window".into(),
            mk(RF::zero(), checks),
        ),
    }
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

    fn trig_seed() -> SecondOrderCubic {
        SecondOrderCubic {
            c: x(),
            g: RF::zero(),
            h: &RF::int(2) / &x(),
            d: RF::zero(),
        }
    }

    #[test]
    fn quintic_of_trig_seed() {
        let q = third_quintic(&trig_seed());
        assert_eq!(q.alpha, &RF::int(3) * &x().pow(2));
        assert!(q.beta.is_zero());
        assert_eq!(q.gamma, RF::int(7));
        assert!(q.delta.is_zero());
        assert_eq!(q.epsilon, &RF::int(6) / &x().pow(2));
        assert!(q.phi.is_zero());
    }

    #[test]
    fn semilinear_of_trig_seed() {
        let s = third_semilinear(&trig_seed());
        assert_eq!(s.a2, &RF::int(3) * &x());
        assert_eq!(s.a0, &RF::int(2) / &x());
        assert_eq!(s.b1, &RF::int(2) / &x().pow(2));
        assert_eq!(s.b3, RF::int(-1));
        assert!(s.b4.is_zero() && s.b2.is_zero() && s.b0.is_zero());
        // y''' = -y'^3 - 3x y'^2 y'' + (2/x^2) y' - (2/x) y'' by hand
        assert_eq!(
            s.to_jets().to_string(),
            "y''' + 3*x*y'^2*y'' + (2/x)*y'' + y'^3 - (2/x^2)*y' = 0"
        );
    }

    #[test]
    fn jet_printing_signs() {
        let q = third_quintic(&trig_seed());
        assert_eq!(
            q.to_jets().to_string(),
            "y''' - 3*x^2*y'^5 - 7*y'^3 - (6/x^2)*y' = 0"
        );
    }

    #[test]
    fn projection_reads_gauge() {
        use crate::geometry::GeodesicSystem2;
        let sys = GeodesicSystem2 {
            a: RF::zero(),
            b: RF::zero(),
            c: -(&x() / &y().pow(2)),
            d: RF::zero(),
            e: -x().inv().unwrap(),
            f: y().inv().unwrap(),
        };
        let e = scalar_of(&project(&sys.connection()));
        assert_eq!(e.c, -(&x() / &y().pow(2)));
        assert_eq!(e.g, y().inv().unwrap());
        assert_eq!(e.h, &RF::int(2) / &x());
        assert!(e.d.is_zero());
    }
}

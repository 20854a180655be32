use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::ext;
use super::gcd::gcd;
use super::monomial::Monomial;
use super::poly::{q, Poly, Q};
use super::var::Var;
use super::CasError;

/// Reduced quotient of polynomials.
///
/// Invariants: the denominator is nonzero, integral, primitive and has a
/// positive leading coefficient; numerator and denominator are coprime and
/// in normal form modulo the extension relations. Equal functions therefore
/// have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

pub type RF = RationalFunction;

impl RationalFunction {
    /// Builds and canonicalizes `num / den`.
    ///
    /// Panics when `den` is zero; use [`RationalFunction::try_new`] for input
    /// that has not been checked.
    pub fn new(num: Poly, den: Poly) -> RF {
        RF::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Poly, den: Poly) -> Result<RF, CasError> {
        let (num, den) = if ext::has_ext(&num) || ext::has_ext(&den) {
            (ext::reduce(&num), ext::reduce(&den))
        } else {
            (num, den)
        };
        if den.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RF::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(RF {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(RF::normalized(num, den))
    }

    /// Scales a coprime pair so the denominator is primitive and positive.
    fn normalized(num: Poly, den: Poly) -> RF {
        if let Some(c) = den.as_constant() {
            return RF {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let c = den.content();
        if c.is_one() {
            RF { num, den }
        } else {
            let inv = c.recip();
            RF {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> RF {
        if ext::has_ext(&p) {
            RF {
                num: ext::reduce(&p),
                den: Poly::one(),
            }
        } else {
            RF {
                num: p,
                den: Poly::one(),
            }
        }
    }

    pub fn zero() -> RF {
        RF {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RF {
        RF::int(1)
    }

    pub fn int(n: i64) -> RF {
        RF::constant(q(n))
    }

    pub fn frac(n: i64, d: i64) -> RF {
        RF::constant(super::poly::q_frac(n, d))
    }

    pub fn constant(c: Q) -> RF {
        RF {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> RF {
        RF::from_poly(Poly::var(v))
    }

    pub fn x() -> RF {
        RF::var(Var::X)
    }

    pub fn y() -> RF {
        RF::var(Var::Y)
    }

    /// Laurent monomial `c * prod v^e` with signed exponents.
    pub fn laurent(c: Q, exps: &[(Var, i32)]) -> RF {
        let mut num = Monomial::one();
        let mut den = Monomial::one();
        for &(v, e) in exps {
            if e > 0 {
                num = num.mul(&Monomial::power(v, e as u32));
            } else if e < 0 {
                den = den.mul(&Monomial::power(v, (-e) as u32));
            }
        }
        RF::new(Poly::term(num, c), Poly::term(den, Q::one()))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    /// Exact zero test. Canonical form makes this a structural check.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn any_var<F: Fn(Var) -> bool + Copy>(&self, pred: F) -> bool {
        self.num.any_var(pred) || self.den.any_var(pred)
    }

    /// True when every derivative with respect to the coordinates vanishes.
    pub fn is_coordinate_free(&self) -> bool {
        !self.any_var(|v| v.is_coordinate() || v.is_ext() || v.is_jet())
    }

    /// Sign of the leading numerator coefficient, used for printing and for
    /// choosing representatives up to sign.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn inv(&self) -> Option<RF> {
        if self.is_zero() {
            return None;
        }
        Some(RF::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i32) -> RF {
        if n == 0 {
            return RF::one();
        }
        let base = if n < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let e = n.unsigned_abs();
        let num = base.num.pow(e);
        let den = base.den.pow(e);
        if ext::has_ext(&num) || ext::has_ext(&den) {
            RF::new(num, den)
        } else {
            RF::normalized(num, den)
        }
    }

    pub fn scale(&self, c: &Q) -> RF {
        RF {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Partial derivative, applying the chain rule through extension symbols.
    pub fn diff(&self, v: Var) -> RF {
        if self.num.is_constant() && self.den.is_one() {
            return RF::zero();
        }
        let has_ext = ext::has_ext(&self.num) || ext::has_ext(&self.den);
        if !has_ext {
            let dn = self.num.diff(v);
            let dd = self.den.diff(v);
            if dd.is_zero() {
                return RF::new(dn, self.den.clone());
            }
            let num = &(&dn * &self.den) - &(&self.num * &dd);
            return RF::new(num, self.den.pow(2));
        }
        let dn = total_diff(&self.num, v);
        let dd = total_diff(&self.den, v);
        let n = RF::from_poly(self.num.clone());
        let d = RF::from_poly(self.den.clone());
        &(&(&dn * &d) - &(&n * &dd)) / &(&d * &d)
    }

    pub fn dx(&self) -> RF {
        self.diff(Var::X)
    }

    pub fn dy(&self) -> RF {
        self.diff(Var::Y)
    }

    /// Exact value at a point assigning every variable that occurs.
    pub fn evaluate(&self, point: &dyn Fn(Var) -> Option<Q>) -> Result<Q, CasError> {
        let d = self
            .den
            .evaluate(point)
            .ok_or(CasError::UnassignedVariable)?;
        if d.is_zero() {
            return Err(CasError::Pole);
        }
        let n = self
            .num
            .evaluate(point)
            .ok_or(CasError::UnassignedVariable)?;
        Ok(n / d)
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &RF) -> RF {
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.den, v, value);
        &n / &d
    }

    /// Square root when numerator and denominator are perfect squares.
    /// The representative has a positive leading numerator coefficient.
    pub fn sqrt_exact(&self) -> Option<RF> {
        if self.is_zero() {
            return Some(RF::zero());
        }
        let n = sqrt_poly(&self.num)?;
        let d = sqrt_poly(&self.den)?;
        let r = RF::new(n, d);
        Some(if r.is_negative() { -r } else { r })
    }
}

pub(crate) fn total_diff(p: &Poly, v: Var) -> RF {
    let mut acc = RF::from_poly(p.diff(v));
    let exts: Vec<Var> = p.vars().into_iter().filter(|w| w.is_ext()).collect();
    for e in exts {
        let Var::Ext(id) = e else { unreachable!() };
        let de = ext::derivative(id, v);
        if de.is_zero() {
            continue;
        }
        acc = &acc + &(&RF::from_poly(p.diff(e)) * &de);
    }
    acc
}

fn subst_poly(p: &Poly, v: Var, value: &RF) -> RF {
    if !p.contains_var(v) {
        return RF::from_poly(p.clone());
    }
    let coeffs = p.coeffs_in(v);
    // Horner evaluation in v.
    let mut acc = RF::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RF::from_poly(c.clone());
    }
    acc
}

/// Square root of a polynomial by successive leading-term matching.
fn sqrt_poly(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let (lm, lc) = p.leading_term()?;
    let root_c = sqrt_rational(lc)?;
    let root_m = sqrt_monomial(lm)?;
    let min_deg = p.min_total_degree();
    let lead = Poly::term(root_m.clone(), root_c.clone());
    let two_lead_c = &root_c * q(2);
    let mut root = lead;
    let mut rem = p - &root.pow(2);
    while let Some((rm, rc)) = rem.leading_term() {
        let tm = rm.div(&root_m)?;
        if 2 * tm.degree() < min_deg {
            return None;
        }
        let tc = rc / &two_lead_c;
        let t = Poly::term(tm, tc);
        rem = &(&rem - &(&(&root * &t) * &Poly::int(2))) - &t.pow(2);
        root = &root + &t;
    }
    Some(root)
}

fn sqrt_monomial(m: &Monomial) -> Option<Monomial> {
    let mut pairs = Vec::new();
    for &(v, e) in m.pairs() {
        if e % 2 != 0 {
            return None;
        }
        pairs.push((v, e / 2));
    }
    Some(Monomial::from_pairs(pairs))
}

fn sqrt_rational(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

impl Add<&RF> for &RF {
    type Output = RF;
    fn add(self, rhs: &RF) -> RF {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RF::from_poly(num);
            }
            return RF::new(num, self.den.clone());
        }
        if self.den.is_one() {
            return RF::new(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RF::new(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RF::new(num, den);
        }
        let bd = self.den.div_exact(&g).expect("gcd divides");
        let dd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &bd);
        let den = &bd * &rhs.den;
        RF::new(num, den)
    }
}

impl Sub<&RF> for &RF {
    type Output = RF;
    fn sub(self, rhs: &RF) -> RF {
        self + &(-rhs)
    }
}

impl Mul<&RF> for &RF {
    type Output = RF;
    fn mul(self, rhs: &RF) -> RF {
        if self.is_zero() || rhs.is_zero() {
            return RF::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let has_ext = ext::has_ext(&self.num)
            || ext::has_ext(&rhs.num)
            || ext::has_ext(&self.den)
            || ext::has_ext(&rhs.den);
        if has_ext {
            return RF::new(&self.num * &rhs.num, &self.den * &rhs.den);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).unwrap(),
                rhs.den.div_exact(&g1).unwrap(),
            )
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).unwrap(),
                self.den.div_exact(&g2).unwrap(),
            )
        };
        RF::normalized(&a * &c, &b * &d)
    }
}

impl Div<&RF> for &RF {
    type Output = RF;
    fn div(self, rhs: &RF) -> RF {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RF {
    type Output = RF;
    fn neg(self) -> RF {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RF> for RF {
            type Output = RF;
            fn $method(self, rhs: RF) -> RF {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RF> for RF {
            type Output = RF;
            fn $method(self, rhs: &RF) -> RF {
                (&self).$method(rhs)
            }
        }
        impl $tr<RF> for &RF {
            type Output = RF;
            fn $method(self, rhs: RF) -> RF {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RF {
    fn sum<I: Iterator<Item = RF>>(iter: I) -> RF {
        iter.fold(RF::zero(), |a, b| &a + &b)
    }
}

impl Default for RF {
    fn default() -> Self {
        RF::zero()
    }
}

impl From<Poly> for RF {
    fn from(p: Poly) -> RF {
        RF::from_poly(p)
    }
}

impl From<i64> for RF {
    fn from(n: i64) -> RF {
        RF::int(n)
    }
}

fn needs_parens_as_factor(p: &Poly) -> bool {
    match p.single_term() {
        None => true,
        Some((m, c)) => {
            // "x*y" or "2*x" would bind wrongly after a division sign.
            !(c.is_one() && m.pairs().len() <= 1) && !(m.is_one() && c.is_integer())
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.den.is_one() {
            self.num.write_terms(&mut out);
            return f.write_str(&out);
        }
        if let Some((m, c)) = self.num.single_term().filter(|(_, c)| !c.denom().is_one()) {
            // 3/(2*x) rather than 3/2/x
            Poly::term(m.clone(), Q::from_integer(c.numer().clone())).write_terms(&mut out);
            let _ = write!(out, "/({}*", c.denom());
            if self.den.len() > 1 {
                out.push('(');
                self.den.write_terms(&mut out);
                out.push(')');
            } else {
                self.den.write_terms(&mut out);
            }
            out.push(')');
            return f.write_str(&out);
        }
        if self.num.len() > 1 {
            out.push('(');
            self.num.write_terms(&mut out);
            out.push(')');
        } else {
            self.num.write_terms(&mut out);
        }
        out.push('/');
        if needs_parens_as_factor(&self.den) {
            out.push('(');
            self.den.write_terms(&mut out);
            out.push(')');
        } else {
            self.den.write_terms(&mut out);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

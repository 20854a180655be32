//! Input language for equations, metrics, maps and solution families.
//!
//! ```text
//! # a rational quintic with its flat coordinates
//! ode: y''' - (3*x^2/y^4)*y'^5 - (3*x/y^3)*y'^4 + (6/y^2)*y'^3
//!      + (6/(x*y))*y'^2 - (6/x^2)*y' = 0;
//! map: u = x*y; v = x/y;
//! solution: A*x*y + B*x/y = 1;
//! ```
//!
//! Declarations come first: `const k;`, `ext s(y): d/dy = c;` and
//! `rel s^2 + c^2 = 1;`. Products need an explicit `*` and exponents are
//! integers. [`print`] emits the canonical text of a [`Document`], which
//! parses back to the same document.

mod lexer;
mod printer;

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::cas::{ext, Poly, Var, RF};
use crate::criteria::Gauge;
use crate::geometry::GeodesicSystem2;
use crate::reduction::{JetEquation, QuinticForm, SecondOrderCubic, SemilinearForm, ShapeError};
use crate::solver::{constant_a, constant_b, MetricTriple, PointMap, SolutionFamily};

use lexer::{tokenize, Tok};
pub use printer::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// The equation does not have the expected shape; carries the
    /// offending term.
    Shape(String),
    Undeclared(String),
    NonIntegerExponent,
    DivisionByZero,
    Declaration(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError { pos, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.pos.line, self.pos.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::Shape(m) => write!(f, "shape mismatch: {m}"),
            ParseErrorKind::Undeclared(n) => write!(f, "undeclared identifier '{n}'"),
            ParseErrorKind::NonIntegerExponent => f.write_str("exponent must be an integer"),
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
            ParseErrorKind::Declaration(m) => write!(f, "invalid declaration: {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeForm {
    Quintic,
    Semilinear,
    Second,
}

impl OdeForm {
    pub fn name(&self) -> &'static str {
        match self {
            OdeForm::Quintic => "quintic",
            OdeForm::Semilinear => "semilinear",
            OdeForm::Second => "second",
        }
    }

    pub fn from_name(s: &str) -> Option<OdeForm> {
        [OdeForm::Quintic, OdeForm::Semilinear, OdeForm::Second]
            .into_iter()
            .find(|f| f.name() == s)
    }
}

/// A normalized equation in one of the three supported shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ode {
    Quintic(QuinticForm),
    Semilinear(SemilinearForm),
    Second(SecondOrderCubic),
}

impl Ode {
    pub fn form(&self) -> OdeForm {
        match self {
            Ode::Quintic(_) => OdeForm::Quintic,
            Ode::Semilinear(_) => OdeForm::Semilinear,
            Ode::Second(_) => OdeForm::Second,
        }
    }

    pub fn equation(&self) -> JetEquation {
        match self {
            Ode::Quintic(q) => q.to_jets(),
            Ode::Semilinear(s) => s.to_jets(),
            Ode::Second(e) => e.to_jets(),
        }
    }

    /// Reads a normalized equation. Without `form` the shape is chosen from
    /// the order and from whether `y''` occurs.
    pub fn from_equation(eq: &JetEquation, form: Option<OdeForm>) -> Result<Ode, ShapeError> {
        let eq = eq.normalize()?;
        let order = eq.order();
        let has_y2 = order == 3 && eq.terms().any(|(m, _)| m.contains(Var::Jet(2)));
        let form = form.unwrap_or(match (order, has_y2) {
            (2, _) => OdeForm::Second,
            (_, true) => OdeForm::Semilinear,
            _ => OdeForm::Quintic,
        });
        match (form, order) {
            (OdeForm::Second, 2) => SecondOrderCubic::from_jets(&eq).map(Ode::Second),
            (OdeForm::Quintic, 3) => QuinticForm::from_jets(&eq).map(Ode::Quintic),
            (OdeForm::Semilinear, 3) => SemilinearForm::from_jets(&eq).map(Ode::Semilinear),
            (f, k) => Err(ShapeError::UnsupportedTerm(format!(
                "a {} equation cannot have order {k}",
                f.name()
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Const(String),
    Ext {
        var: Var,
        deps: Vec<Var>,
        derivatives: Vec<(Var, RF)>,
    },
    /// Relation `poly = 0`.
    Rel(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ode(Ode),
    Metric(MetricTriple),
    Map(PointMap),
    Solution(SolutionFamily),
    Geodesic(GeodesicSystem2),
    Gauge(Gauge),
}

impl Statement {
    fn keyword(&self) -> &'static str {
        match self {
            Statement::Ode(_) => "ode",
            Statement::Metric(_) => "metric",
            Statement::Map(_) => "map",
            Statement::Solution(_) => "solution",
            Statement::Geodesic(_) => "geodesic",
            Statement::Gauge(_) => "gauge",
        }
    }
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub decls: Vec<Decl>,
    pub statements: Vec<Statement>,
}

impl Document {
    pub fn ode(&self) -> Option<&Ode> {
        self.statements.iter().find_map(|s| match s {
            Statement::Ode(o) => Some(o),
            _ => None,
        })
    }

    pub fn metric(&self) -> Option<&MetricTriple> {
        self.statements.iter().find_map(|s| match s {
            Statement::Metric(m) => Some(m),
            _ => None,
        })
    }

    pub fn map(&self) -> Option<&PointMap> {
        self.statements.iter().find_map(|s| match s {
            Statement::Map(m) => Some(m),
            _ => None,
        })
    }

    pub fn solution(&self) -> Option<&SolutionFamily> {
        self.statements.iter().find_map(|s| match s {
            Statement::Solution(m) => Some(m),
            _ => None,
        })
    }

    pub fn geodesic(&self) -> Option<&GeodesicSystem2> {
        self.statements.iter().find_map(|s| match s {
            Statement::Geodesic(m) => Some(m),
            _ => None,
        })
    }

    pub fn gauge(&self) -> Option<&Gauge> {
        self.statements.iter().find_map(|s| match s {
            Statement::Gauge(m) => Some(m),
            _ => None,
        })
    }

    pub fn has_extensions(&self) -> bool {
        self.decls.iter().any(|d| matches!(d, Decl::Ext { .. }))
    }
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser::new(toks);
    p.document()
}

/// Parses a single expression in `x`, `y` and the given constants.
pub fn parse_expr(src: &str, constants: &[&str]) -> Result<RF, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser::new(toks);
    for c in constants {
        p.scope.insert((*c).to_string(), Var::constant(c));
    }
    p.allow_jets = true;
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    Ok(e)
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    scope: HashMap<String, Var>,
    allow_jets: bool,
}

const RESERVED: [&str; 8] = ["x", "y", "const", "ext", "rel", "ode", "map", "solution"];

impl Parser {
    fn new(toks: Vec<(Tok, Pos)>) -> Parser {
        let mut scope = HashMap::new();
        scope.insert("x".to_string(), Var::X);
        scope.insert("y".to_string(), Var::Y);
        Parser {
            toks,
            i: 0,
            scope,
            allow_jets: false,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: String) -> PResult<T> {
        Err(ParseError::new(self.pos(), ParseErrorKind::Syntax(msg)))
    }

    fn expect(&mut self, t: &Tok) -> PResult<Pos> {
        if self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.syntax(format!("expected {}, found {}", t.describe(), self.peek().describe()))
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.bump().1;
                Ok((s, p))
            }
            t => self.syntax(format!("expected identifier, found {}", t.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().1),
            t => self.syntax(format!("expected '{kw}', found {}", t.describe())),
        }
    }

    fn document(&mut self) -> PResult<Document> {
        self.predeclare()?;
        let mut doc = Document::default();
        let mut relations = Vec::new();
        loop {
            match self.peek() {
                Tok::Ident(s) if s == "const" => doc.decls.push(self.const_decl()?),
                Tok::Ident(s) if s == "ext" => doc.decls.push(self.ext_decl()?),
                Tok::Ident(s) if s == "rel" => {
                    let (poly, pos) = self.rel_decl()?;
                    relations.push((poly.clone(), pos));
                    doc.decls.push(Decl::Rel(poly));
                }
                _ => break,
            }
        }
        // Relations are checked against the derivatives, so they go last.
        for (poly, pos) in relations {
            ext::add_relation(&poly)
                .map_err(|e| ParseError::new(pos, ParseErrorKind::Declaration(e.to_string())))?;
        }
        while self.peek() != &Tok::Eof {
            let pos = self.pos();
            let st = self.statement()?;
            if doc.statements.iter().any(|s| s.keyword() == st.keyword()) {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Syntax(format!("duplicate '{}' statement", st.keyword())),
                ));
            }
            doc.statements.push(st);
        }
        if doc.statements.is_empty() {
            return self.syntax("expected at least one statement".into());
        }
        Ok(doc)
    }

    /// Registers every declared name up front so that extension symbols may
    /// refer to each other regardless of order.
    fn predeclare(&mut self) -> PResult<()> {
        let mut k = 0;
        while k + 1 < self.toks.len() {
            let at_decl_start = k == 0 || self.toks[k - 1].0 == Tok::Semi;
            if let (true, Tok::Ident(kw), Tok::Ident(name)) =
                (at_decl_start, &self.toks[k].0, &self.toks[k + 1].0)
            {
                let pos = self.toks[k + 1].1;
                let var = match kw.as_str() {
                    "const" => Some(Var::constant(name)),
                    "ext" => Some(ext::declare(name)),
                    _ => None,
                };
                if let Some(var) = var {
                    if RESERVED.contains(&name.as_str()) || self.scope.contains_key(name) {
                        return Err(ParseError::new(
                            pos,
                            ParseErrorKind::Declaration(format!("'{name}' is already defined")),
                        ));
                    }
                    self.scope.insert(name.clone(), var);
                }
            }
            k += 1;
        }
        Ok(())
    }

    fn const_decl(&mut self) -> PResult<Decl> {
        self.keyword("const")?;
        let (name, _) = self.ident()?;
        self.expect(&Tok::Semi)?;
        Ok(Decl::Const(name))
    }

    fn coordinate(&mut self) -> PResult<Var> {
        let (name, pos) = self.ident()?;
        match name.as_str() {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            _ => Err(ParseError::new(
                pos,
                ParseErrorKind::Declaration(format!("'{name}' is not a coordinate")),
            )),
        }
    }

    fn ext_decl(&mut self) -> PResult<Decl> {
        self.keyword("ext")?;
        let (name, _) = self.ident()?;
        let var = self.scope[&name];
        self.expect(&Tok::LParen)?;
        let mut deps = vec![self.coordinate()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            deps.push(self.coordinate()?);
        }
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::Colon)?;
        let mut derivatives: Vec<(Var, RF)> = Vec::new();
        loop {
            self.keyword("d")?;
            self.expect(&Tok::Slash)?;
            let (dv, pos) = self.ident()?;
            let wrt = match dv.as_str() {
                "dx" => Var::X,
                "dy" => Var::Y,
                _ => return self.syntax(format!("expected d/dx or d/dy, found d/{dv}")),
            };
            if !deps.contains(&wrt) || derivatives.iter().any(|(v, _)| *v == wrt) {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Declaration(format!("unexpected derivative d/{dv} of {name}")),
                ));
            }
            self.expect(&Tok::Eq)?;
            let value = self.expr()?;
            ext::set_derivative(var, wrt, value.clone())
                .map_err(|e| ParseError::new(pos, ParseErrorKind::Declaration(e.to_string())))?;
            derivatives.push((wrt, value));
            if self.peek() == &Tok::Comma {
                self.bump();
                continue;
            }
            break;
        }
        self.expect(&Tok::Semi)?;
        Ok(Decl::Ext {
            var,
            deps,
            derivatives,
        })
    }

    fn rel_decl(&mut self) -> PResult<(Poly, Pos)> {
        let pos = self.keyword("rel")?;
        let lhs = self.expr()?;
        self.expect(&Tok::Eq)?;
        let rhs = self.expr()?;
        self.expect(&Tok::Semi)?;
        let r = &lhs - &rhs;
        if !r.denom().is_one() {
            return Err(ParseError::new(
                pos,
                ParseErrorKind::Declaration("relations must be polynomial".into()),
            ));
        }
        Ok((r.numer().clone(), pos))
    }

    fn statement(&mut self) -> PResult<Statement> {
        let (kw, pos) = self.ident()?;
        match kw.as_str() {
            "ode" => self.ode_statement(pos),
            "metric" => {
                self.expect(&Tok::Colon)?;
                let v = self.assignments(&["p", "q", "r"], &[])?;
                Ok(Statement::Metric(MetricTriple::new(v[0].clone(), v[1].clone(), v[2].clone())))
            }
            "map" => {
                self.expect(&Tok::Colon)?;
                let v = self.assignments(&["u", "v"], &["u", "v"])?;
                Ok(Statement::Map(PointMap::new(v[0].clone(), v[1].clone())))
            }
            "geodesic" => {
                self.expect(&Tok::Colon)?;
                let v = self.assignments(&["a", "b", "c", "d", "e", "f"], &[])?;
                let [a, b, c, d, e, f] = <[RF; 6]>::try_from(v).expect("six entries");
                Ok(Statement::Geodesic(GeodesicSystem2 { a, b, c, d, e, f }))
            }
            "gauge" => {
                self.expect(&Tok::Colon)?;
                let v = self.assignments(&["a", "b", "e", "f"], &[])?;
                let [a, b, e, f] = <[RF; 4]>::try_from(v).expect("four entries");
                Ok(Statement::Gauge(Gauge { a, b, e, f }))
            }
            "solution" => self.solution_statement(pos),
            _ => Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax(format!("unknown statement '{kw}'")),
            )),
        }
    }

    fn ode_statement(&mut self, pos: Pos) -> PResult<Statement> {
        let mut form = None;
        if self.peek() == &Tok::LParen {
            self.bump();
            let (f, fpos) = self.ident()?;
            form = Some(OdeForm::from_name(&f).ok_or_else(|| {
                ParseError::new(fpos, ParseErrorKind::Syntax(format!("unknown equation form '{f}'")))
            })?);
            self.expect(&Tok::RParen)?;
        }
        self.expect(&Tok::Colon)?;
        self.allow_jets = true;
        let lhs = self.expr();
        let rhs = match lhs {
            Ok(_) if self.peek() == &Tok::Eq => {
                self.bump();
                self.expr()
            }
            _ => Ok(RF::zero()),
        };
        self.allow_jets = false;
        let (lhs, rhs) = (lhs?, rhs?);
        self.expect(&Tok::Semi)?;
        let shape = |e: ShapeError| ParseError::new(pos, ParseErrorKind::Shape(e.to_string()));
        let eq = JetEquation::from_rf(&(&lhs - &rhs)).map_err(shape)?;
        Ode::from_equation(&eq, form).map(Statement::Ode).map_err(shape)
    }

    fn solution_statement(&mut self, pos: Pos) -> PResult<Statement> {
        self.expect(&Tok::Colon)?;
        let (a, b) = (constant_a(), constant_b());
        let saved: Vec<_> = ["A", "B"].iter().map(|n| self.scope.get(*n).copied()).collect();
        self.scope.insert("A".into(), a);
        self.scope.insert("B".into(), b);
        let lhs = self.expr();
        let rhs = match lhs {
            Ok(_) => self.expect(&Tok::Eq).and_then(|_| self.expr()),
            Err(ref e) => Err(e.clone()),
        };
        for (n, old) in ["A", "B"].iter().zip(saved) {
            match old {
                Some(v) => self.scope.insert((*n).into(), v),
                None => self.scope.remove(*n),
            };
        }
        let f = &lhs? - &rhs?;
        self.expect(&Tok::Semi)?;
        let bad = |m: &str| ParseError::new(pos, ParseErrorKind::Shape(m.to_string()));
        if f.denom().contains_var(a) || f.denom().contains_var(b) {
            return Err(bad("A and B may not appear in a denominator"));
        }
        let num = f.numer();
        if num.degree_in(a) > 1 || num.degree_in(b) > 1 {
            return Err(bad("solution must be affine in A and B"));
        }
        let ca = num.coeffs_in(a);
        let part = |cs: &[Poly], k: usize| cs.get(k).cloned().unwrap_or_else(Poly::zero);
        let u_num = part(&ca, 1);
        let rest = part(&ca, 0);
        let cb = rest.coeffs_in(b);
        let v_num = part(&cb, 1);
        let w_num = part(&cb, 0);
        if u_num.contains_var(b) {
            return Err(bad("solution must not contain a product of A and B"));
        }
        if w_num.is_zero() {
            return Err(bad("solution needs a nonzero constant side"));
        }
        let den = f.denom().clone();
        let w = -RF::new(w_num, den.clone());
        let u = &RF::new(u_num, den.clone()) / &w;
        let v = &RF::new(v_num, den) / &w;
        Ok(Statement::Solution(SolutionFamily { u, v }))
    }

    /// `key = expr` entries separated by `,` or `;`; missing keys are zero.
    fn assignments(&mut self, keys: &[&str], required: &[&str]) -> PResult<Vec<RF>> {
        let mut vals: Vec<Option<RF>> = vec![None; keys.len()];
        loop {
            let (k, kpos) = self.ident()?;
            let Some(idx) = keys.iter().position(|x| *x == k) else {
                return Err(ParseError::new(
                    kpos,
                    ParseErrorKind::Syntax(format!("unexpected key '{k}', expected one of {}", keys.join(", "))),
                ));
            };
            if vals[idx].is_some() {
                return Err(ParseError::new(kpos, ParseErrorKind::Syntax(format!("duplicate key '{k}'"))));
            }
            self.expect(&Tok::Eq)?;
            vals[idx] = Some(self.expr()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    let more = matches!(self.peek(), Tok::Ident(s) if keys.contains(&s.as_str()))
                        && self.peek_at(1) == &Tok::Eq;
                    if !more {
                        break;
                    }
                }
                t => return self.syntax(format!("expected ',' or ';', found {}", t.describe())),
            }
        }
        for r in required {
            let idx = keys.iter().position(|k| k == r).expect("required key listed");
            if vals[idx].is_none() {
                return self.syntax(format!("missing entry '{r}'"));
            }
        }
        Ok(vals.into_iter().map(Option::unwrap_or_default).collect())
    }

    fn expr(&mut self) -> PResult<RF> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<RF> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let pos = self.bump().1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ParseError::new(pos, ParseErrorKind::DivisionByZero));
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<RF> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<RF> {
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        let pos = self.bump().1;
        let n = self.exponent()?;
        if n < 0 && base.is_zero() {
            return Err(ParseError::new(pos, ParseErrorKind::DivisionByZero));
        }
        Ok(base.pow(n))
    }

    fn exponent(&mut self) -> PResult<i32> {
        let pos = self.pos();
        let bad = || ParseError::new(pos, ParseErrorKind::NonIntegerExponent);
        let paren = self.peek() == &Tok::LParen;
        if paren {
            self.bump();
        }
        let mut sign = 1i64;
        match self.peek() {
            Tok::Minus => {
                sign = -1;
                self.bump();
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let n = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_i64().and_then(|v| i32::try_from(sign * v).ok()).ok_or_else(bad)?
            }
            _ => return Err(bad()),
        };
        if paren && self.expect(&Tok::RParen).is_err() {
            return Err(bad());
        }
        if self.peek() == &Tok::Caret {
            return self.syntax("chained exponents need parentheses".into());
        }
        Ok(n)
    }

    fn atom(&mut self) -> PResult<RF> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(RF::constant(num_rational::BigRational::from_integer(n))),
            Tok::Jet(k) => {
                if !self.allow_jets {
                    return Err(ParseError::new(
                        pos,
                        ParseErrorKind::Syntax("derivatives of y are only allowed in ode statements".into()),
                    ));
                }
                Ok(RF::var(Var::Jet(k)))
            }
            Tok::Ident(name) => match self.scope.get(&name) {
                Some(v) => Ok(RF::var(*v)),
                None => Err(ParseError::new(pos, ParseErrorKind::Undeclared(name))),
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            t => Err(ParseError::new(
                pos,
                ParseErrorKind::Syntax(format!("expected an expression, found {}", t.describe())),
            )),
        }
    }
}

//! Extension symbols: opaque functions of the coordinates with declared
//! partial derivatives and optional polynomial rewrite relations.
//!
//! `ext s(y): d/dy = c; ext c(y): d/dy = -s; rel s^2 + c^2 = 1;` models
//! `sin y` and `cos y`. Every declaration gets a fresh id, so independent
//! inputs may reuse names without interfering.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::monomial::Monomial;
use super::poly::Poly;
use super::rational::RationalFunction;
use super::var::{ExtId, Sym, Var};
use super::CasError;

#[derive(Clone)]
struct Rule {
    lhs: Monomial,
    rhs: Poly,
}

#[derive(Default)]
struct Registry {
    next_id: u32,
    derivatives: BTreeMap<(ExtId, Var), RationalFunction>,
    rules: Arc<Vec<Rule>>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Registry::default()))
}

/// Allocates a new extension symbol with the given display name.
pub fn declare(name: &str) -> Var {
    let mut reg = registry().write().expect("extension registry poisoned");
    let id = reg.next_id;
    reg.next_id += 1;
    Var::Ext(ExtId {
        name: Sym::new(name),
        id,
    })
}

/// Records `d ext / d wrt = value`. Unset derivatives are zero.
pub fn set_derivative(ext: Var, wrt: Var, value: RationalFunction) -> Result<(), CasError> {
    let Var::Ext(id) = ext else {
        return Err(CasError::NotExtension(ext.to_string()));
    };
    if !wrt.is_coordinate() {
        return Err(CasError::InvalidDerivative(format!(
            "{ext} may only depend on coordinates, not {wrt}"
        )));
    }
    let mut reg = registry().write().expect("extension registry poisoned");
    reg.derivatives.insert((id, wrt), value);
    Ok(())
}

pub fn derivative(ext: ExtId, wrt: Var) -> RationalFunction {
    let reg = registry().read().expect("extension registry poisoned");
    reg.derivatives
        .get(&(ext, wrt))
        .cloned()
        .unwrap_or_else(RationalFunction::zero)
}

/// Adds the relation `poly = 0`, oriented as a rewrite of its leading
/// monomial. The relation must be consistent with the declared
/// derivatives: its derivatives have to reduce to zero.
pub fn add_relation(poly: &Poly) -> Result<(), CasError> {
    let Some((lm, lc)) = poly.leading_term() else {
        return Err(CasError::InvalidRelation("relation is identically zero".into()));
    };
    if !lm.vars().any(|v| v.is_ext()) {
        return Err(CasError::InvalidRelation(format!(
            "leading monomial {lm} of a relation must involve an extension symbol"
        )));
    }
    let lhs = lm.clone();
    let mut rest = poly.clone();
    rest.add_term(lhs.clone(), -lc.clone());
    let rhs = rest.scale(&(-lc.recip()));
    {
        let mut reg = registry().write().expect("extension registry poisoned");
        let mut rules = (*reg.rules).clone();
        rules.push(Rule {
            lhs: lhs.clone(),
            rhs,
        });
        reg.rules = Arc::new(rules);
    }
    let rf = RationalFunction::from_poly(poly.clone());
    if !rf.is_zero() {
        remove_rule(&lhs);
        return Err(CasError::InvalidRelation(format!(
            "relation {poly} does not reduce to zero under its own rule"
        )));
    }
    for wrt in [Var::X, Var::Y, Var::Z] {
        let d = super::rational::total_diff(poly, wrt);
        if !d.is_zero() {
            remove_rule(&lhs);
            return Err(CasError::InvalidRelation(format!(
                "relation {poly} is not preserved by d/d{wrt}: derivative reduces to {d}"
            )));
        }
    }
    Ok(())
}

fn remove_rule(lhs: &Monomial) {
    let mut reg = registry().write().expect("extension registry poisoned");
    let rules: Vec<Rule> = reg
        .rules
        .iter()
        .filter(|r| &r.lhs != lhs)
        .cloned()
        .collect();
    reg.rules = Arc::new(rules);
}

/// Normal form of `p` modulo the declared relations.
pub fn reduce(p: &Poly) -> Poly {
    let rules = {
        let reg = registry().read().expect("extension registry poisoned");
        Arc::clone(&reg.rules)
    };
    if rules.is_empty() {
        return p.clone();
    }
    let mut current = p.clone();
    loop {
        let mut changed = false;
        let mut next = Poly::zero();
        for (m, c) in current.terms() {
            let rule = if m.vars().any(|v| v.is_ext()) {
                rules.iter().find(|r| r.lhs.divides(m))
            } else {
                None
            };
            match rule {
                Some(r) => {
                    let cof = m.div(&r.lhs).expect("divides");
                    next = &next + &r.rhs.mul_term(&cof, c);
                    changed = true;
                }
                None => next.add_term(m.clone(), c.clone()),
            }
        }
        current = next;
        if !changed {
            return current;
        }
    }
}

pub(crate) fn has_ext(p: &Poly) -> bool {
    p.any_var(|v| v.is_ext())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::rational::RationalFunction as RF;

    #[test]
    fn trig_pair_relation() {
        let s = declare("s");
        let c = declare("c");
        set_derivative(s, Var::Y, RF::var(c)).unwrap();
        set_derivative(c, Var::Y, -RF::var(s)).unwrap();
        let rel = &(&Poly::var(s).pow(2) + &Poly::var(c).pow(2)) - &Poly::one();
        add_relation(&rel).unwrap();
        let e = &RF::var(s).pow(2) + &RF::var(c).pow(2);
        assert!(e.is_one());
        // d/dy (s*c) = c^2 - s^2, and s^2 rewrites to 1 - c^2
        let d = (&RF::var(s) * &RF::var(c)).diff(Var::Y);
        let expected = &(&RF::int(2) * &RF::var(c).pow(2)) - &RF::one();
        assert_eq!(d, expected);
        assert!(RF::var(s).diff(Var::X).is_zero());
    }

    #[test]
    fn inconsistent_relation_rejected() {
        let s = declare("s");
        let c = declare("c");
        set_derivative(s, Var::Y, RF::var(c)).unwrap();
        set_derivative(c, Var::Y, RF::var(s)).unwrap();
        let rel = &(&Poly::var(s).pow(2) + &Poly::var(c).pow(2)) - &Poly::one();
        assert!(add_relation(&rel).is_err());
        // rejected rule is not applied afterwards
        let e = &RF::var(s).pow(2) + &RF::var(c).pow(2);
        assert!(!e.is_one());
    }
}

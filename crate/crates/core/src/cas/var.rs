//! Variables of the symbolic kernel.
//!
//! Names are interned once and compared by content, so the ordering of
//! variables is independent of the order in which names are first seen.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Sym {
    pub fn new(name: &str) -> Sym {
        let mut table = interner().lock().expect("symbol table poisoned");
        if let Some(existing) = table.get(name) {
            return Sym(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.insert(leaked);
        Sym(leaked)
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Handle to a declared extension symbol. Ordered by name first so that
/// canonical forms do not depend on declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtId {
    pub name: Sym,
    pub id: u32,
}

/// A variable of the polynomial ring.
///
/// The derived ordering is the global variable order used by the monomial
/// order: `x < y < z < constants < extension symbols < jets`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X,
    Y,
    /// Third coordinate, only used by three-dimensional geometry.
    Z,
    /// Named constant with zero derivatives.
    Const(Sym),
    /// Extension symbol with declared derivatives (see [`super::ext`]).
    Ext(ExtId),
    /// Jet variable `y'`, `y''`, `y'''` (order 1..=3).
    Jet(u8),
}

impl Var {
    pub fn constant(name: &str) -> Var {
        Var::Const(Sym::new(name))
    }

    pub fn is_coordinate(&self) -> bool {
        matches!(self, Var::X | Var::Y | Var::Z)
    }

    pub fn is_ext(&self) -> bool {
        matches!(self, Var::Ext(_))
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, Var::Jet(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y => f.write_str("y"),
            Var::Z => f.write_str("z"),
            Var::Const(s) => write!(f, "{s}"),
            Var::Ext(e) => write!(f, "{}", e.name),
            Var::Jet(n) => {
                f.write_str("y")?;
                for _ in 0..*n {
                    f.write_str("'")?;
                }
                Ok(())
            }
        }
    }
}

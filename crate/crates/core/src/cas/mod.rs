//! Exact symbolic kernel: sparse polynomials and rational functions over the
//! rationals, differentiation, extension symbols and linear algebra.

pub mod ansatz;
pub mod ext;
pub mod gcd;
pub mod linear;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod var;

pub use ansatz::AnsatzWindow;
pub use linear::LinearSystem;
pub use monomial::Monomial;
pub use poly::{q, q_frac, Poly, Q};
pub use rational::{RationalFunction, RF};
pub use var::{ExtId, Sym, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CasError {
    #[error("division by an identically zero expression")]
    DivisionByZero,
    #[error("evaluation point is a pole")]
    Pole,
    #[error("evaluation point leaves a variable unassigned")]
    UnassignedVariable,
    #[error("{0} is not an extension symbol")]
    NotExtension(String),
    #[error("invalid derivative rule: {0}")]
    InvalidDerivative(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
}

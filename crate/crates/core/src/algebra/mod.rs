//! Monomials, the prime field, the ring configuration, and polynomials.

mod field;
mod monomial;
mod poly;
mod ring;

pub use field::{Coeff, PrimeField};
pub use monomial::{Monomial, MonomialDisplay};
pub use poly::{Polynomial, Term};
pub use ring::{MonomialOrder, Ring, Signature};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("exponent overflow in variable {var}")]
    ExponentOverflow { var: usize },
    #[error("monomial does not divide")]
    NotDivisible,
    #[error("modulus {0} is not a prime in [2, 65536)")]
    InvalidModulus(u32),
    #[error("cannot make the zero polynomial monic")]
    ZeroPolynomial,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
}

//! Exact arithmetic over `GF(p)`: field elements, monomials and their orders,
//! sparse polynomials, and classical normal forms.

mod field;
mod monomial;
mod polynomial;
mod ring;

pub use field::{is_prime, FieldElement, PrimeField};
pub use monomial::{quotient_cmp, Monomial, MonomialDisplay, MonomialOrder, MonomialQuotient};
pub use polynomial::{PolyDisplay, Polynomial, Term};
pub use ring::{DivisionStep, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    NonPrimeModulus(u64),
}

//! Exact arithmetic foundation: prime fields, monomials, sparse polynomials.

mod context;
mod field;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use context::RingContext;
pub use field::{PrimeField, MAX_CHARACTERISTIC};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{frobenius_power, poly_mul, Polynomial};
pub use rational::RationalParam;

/// Compares two exponent vectors under `order`.
pub fn compare_monomials(
    a: &[u32],
    b: &[u32],
    order: MonomialOrder,
) -> crate::Result<std::cmp::Ordering> {
    order.compare(a, b)
}

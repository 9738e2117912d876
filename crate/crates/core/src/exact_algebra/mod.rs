//! Exact arithmetic in cyclotomic fields, roots of unity, integer polynomials and
//! the small number-theoretic bounds used by the case analysis.

mod cyclotomic;
mod expr;
mod laurent;
mod numtheory;
mod polynomial;
mod root_of_unity;

use thiserror::Error;

pub use cyclotomic::{invert, CyclotomicField, CyclotomicNumber, FieldAccumulator, Rational};
pub use expr::parse_cyclotomic;
pub use laurent::{LaurentPoly, TwistSymbol};
pub use numtheory::{
    canonical_conductor, cyclotomic_degree_bound, distinct_primes, divisors, euler_phi, factorize, gcd,
    is_prime, lcm, mod_inv, mod_pow, primitive_root, roots_of_unity_with_degree_at_most,
    sylvester_landau_bound, units,
};
pub use polynomial::{root_of_unity_solutions, IntPolynomial};
pub use root_of_unity::RootOfUnity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor must be positive, got {0}")]
    BadConductor(u64),
    #[error("conductor {conductor} needs {expected} coefficients, got {got}")]
    CoefficientLength { conductor: u64, expected: usize, got: usize },
    #[error("expected a rational number, got {0}")]
    NotRational(String),
    #[error("cannot parse expression {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub fn galois_conjugates(a: &CyclotomicNumber) -> Vec<CyclotomicNumber> {
    a.galois_conjugates()
}

pub fn minimal_polynomial(a: &CyclotomicNumber) -> IntPolynomial {
    a.minimal_polynomial()
}

pub fn is_algebraic_integer(a: &CyclotomicNumber) -> bool {
    a.is_algebraic_integer()
}

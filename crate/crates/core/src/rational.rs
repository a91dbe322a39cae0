//! Fraction types used across the crate.
//!
//! Candidate ratios p/q (and therefore θ and η*) have numerator and
//! denominator bounded by |E|, so they fit in machine words. Aggregates such
//! as Σ η*² and the modulus can grow well past 64 bits and use big integers.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

/// A vulnerability value or edge usage probability.
pub type Theta = Ratio<u64>;

/// Arbitrary precision rational.
pub type Rational = BigRational;

pub fn to_big(t: &Theta) -> Rational {
    Rational::new(BigInt::from(*t.numer()), BigInt::from(*t.denom()))
}

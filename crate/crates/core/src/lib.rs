//! Exact-arithmetic commutative differential graded algebras over the rationals.
//!
//! The crate is `no_std` and only needs `alloc`. It covers free graded-commutative
//! algebras with Koszul signs ([`algebra`]), differentials on them ([`cdga`]),
//! exact sparse linear algebra ([`linalg`]), degree-wise cohomology and finite
//! cup-product rings ([`cohomology`], [`ring`]), Sullivan-model constructions
//! ([`sullivan`]), Betti-level obstructions for Sasakian and Kähler structures
//! ([`obstructions`]) and a catalog of ready-made models ([`spaces`]).
//!
//! Every enumeration is truncated at an explicit maximal degree, since a free
//! graded-commutative algebra is infinite-dimensional.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod cdga;
pub mod cohomology;
mod error;
pub mod linalg;
pub mod obstructions;
pub mod ring;
pub mod spaces;
pub mod sullivan;

pub use algebra::{Element, FreeAlgebra, Generator, Monomial};
pub use cdga::Cdga;
pub use cohomology::{class_is_zero, cohomology_table, extract_ring, is_cocycle, CohomologyTable};
pub use error::{Error, Result};
pub use linalg::{RationalMatrix, SubspaceBasis};
pub use ring::{FiniteRing, RingBasisElement};

/// Exact rational coefficients with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Convenience constructor for integers as rationals.
pub fn integer(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

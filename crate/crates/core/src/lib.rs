//! Exact real feasibility for sparse integer polynomials with few terms.
//!
//! An `n`-variate polynomial whose exponent vectors affinely span dimension
//! `d` is handled here when it has at most `d + 2` terms. Supports with
//! `d + 1` points (simplices) are decided by sign patterns and parity alone;
//! supports with `d + 2` points (circuits) need the circuit relation `b` and
//! a certified comparison of two integer power products.
//!
//! Everything is exact: integers are arbitrary precision, logarithms are
//! enclosed in rigorous dyadic intervals, and zero tests never depend on
//! floating point.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature turns on
//! concurrent evaluation of the orthant/subspace branches over `ℝⁿ`.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod arith;
pub mod circuit;
mod error;
pub mod feasibility;
pub mod lattice;
pub mod oracle;
mod parse;
pub mod poly;
pub mod reductions;

pub use error::{Error, ParseError, ParseErrorKind};
pub use parse::parse_polynomial;
pub use poly::{size_of, ExponentVector, SizeMetric, SparsePolynomial, Term};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

//! Core algorithms for studying primitive-root count biases of prime pairs.
//!
//! For an even `k` and a prime pair `p, p+k`, the difference between the
//! number of primitive roots of the two moduli is
//! `T(p) = phi(p-1) - phi(p+k-1)`, and its normalized counterpart is
//! `S(p) = phi(p-1)/(p-1) - phi(p+k-1)/(p+k-1)`.  This crate provides
//!
//! * a segmented sieve producing exact Euler-totient windows over large
//!   ranges ([`primes`]),
//! * exact sign censuses of `T` and `S` over all prime pairs in a scope,
//!   mergeable across windows and therefore trivially parallel ([`census`]),
//! * high-precision evaluation of the pair-correlation constants `C_k`
//!   and of the auxiliary quantities `Q`, `L_k`, `R_k`, `R_k'` behind the
//!   conditional density lower bounds for each sign class, every series
//!   carrying a rigorous truncation tail ([`constants`]).
//!
//! All sign decisions are made in integer arithmetic; series and products
//! are accumulated in double-double (roughly 106-bit) precision ([`dd`]).
//!
//! The crate is `no_std` (it allocates, but performs no IO); the companion
//! CLI crate adds file formats, threading and verification drivers.

#![no_std]
// Divisibility tests stay in the canonical `n % q == 0` form.
#![allow(clippy::manual_is_multiple_of)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod census;
pub mod constants;
pub mod dd;
pub mod error;
pub mod primes;

pub use error::{Error, Result};

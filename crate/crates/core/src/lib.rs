//! Exact arithmetic for weighted labeled posets and their quasisymmetric
//! generating functions.
//!
//! The crate computes the weighted `(P, ω)`-partition generating function
//! `K^d_{(P,ω)}` two ways:
//!
//! - by brute force in the monomial quasisymmetric basis
//!   ([`surjections::monomial_expansion`]), and
//! - by the signed border-strip rule in the unnormalized quasisymmetric power
//!   sum basis ([`mn_rule::mn_expansion`]),
//!
//! together with the two structural recurrences ([`rewrites`]), the classical
//! Murnaghan–Nakayama specialization to Schur functions ([`schur`]) and the
//! coarsening identities for weighted chains ([`identities`]).
//!
//! Everything here is `no_std` + `alloc`. File formats and the command line
//! live in the companion `qmn` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod compositions;
pub mod error;
pub mod identities;
pub mod mn_rule;
pub mod poset;
pub mod qsym;
pub mod rewrites;
pub mod schur;
pub mod surjections;

pub use compositions::{Composition, Partition};
pub use error::Error;
pub use mn_rule::{mn_expansion, natural_mn_expansion, StripData, Tag};
pub use poset::{EdgeKind, LabeledPoset};
pub use qsym::{Basis, QsymExpr};
pub use surjections::{monomial_expansion, OrderSurjection, SizeGuard};

/// Arbitrary precision integer used for all exact coefficients.
pub type Int = num_bigint::BigInt;
/// Arbitrary precision rational used for all exact coefficients.
pub type Rational = num_rational::BigRational;

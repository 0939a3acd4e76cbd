//! Exact commutative-algebra kernel for integrality certificates.
//!
//! The crate provides a tower of computable commutative rings (integers,
//! modular residues, rationals, polynomial and monic-quotient extensions),
//! division-free linear algebra over those rings, and a certificate data
//! model for `n`-integrality claims: a claim "`u` is `n`-integral over `A`"
//! is witnessed by a monic degree-`n` polynomial over `A` vanishing at `u`,
//! and every constructive closure property (sums, products, transitivity,
//! Rees-algebra reductions for ideal semifiltrations, the Lombardi-style
//! joint constructions) is implemented as a transformation on such
//! certificates.
//!
//! The crate is `no_std` (with `alloc`); IO and file formats live in the
//! companion `integra` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cert;
pub mod constructive;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod lombardi;
pub mod rees;
pub mod ring;
pub mod semifil;

pub use cert::{ModulePresentation, RingCertificate, SemifilCertificate, SfVerdict, Verdict};
pub use error::{Error, Result};
pub use ideal::{Ideal, Membership};
pub use linalg::Matrix;
pub use ring::{Element, Ring};
pub use semifil::{ReesHandle, Semifiltration, Validity};

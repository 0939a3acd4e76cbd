//! File formats and command plumbing for the integrality-certificate CLI.

pub mod json;

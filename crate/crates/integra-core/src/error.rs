use alloc::string::String;
use core::fmt;

/// Errors shared by all kernel operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different rings.
    RingMismatch,
    /// No canonical homomorphism from the source ring into the target.
    NoCanonicalMap,
    /// Matrix dimensions are incompatible with the requested operation.
    DimensionMismatch,
    /// Ring construction violated an invariant (modulus < 2, non-monic
    /// quotient modulus, duplicate variable along a tower path, ...).
    InvalidRing(String),
    /// A certificate is structurally broken (empty coefficient list,
    /// non-monic leading coefficient, coefficient outside the base ring).
    MalformedCertificate(String),
    /// `pad` was asked to shrink a certificate.
    DegreeTooSmall,
    /// A transformer was handed an input certificate that does not verify.
    UnverifiedInput,
    /// A tower-certificate coefficient has degree >= the tower relation.
    CoefficientDegreeTooHigh,
    /// A stated relation does not hold in the ambient algebra.
    RelationFailed(String),
    /// A truncation index k lies outside {0, ..., n}.
    BadIndex,
    /// A hypothesis identity of a two-sided construction fails.
    HypothesisFailed(String),
    /// Rees extraction found a leading coefficient with constant term != 1.
    NotMonicAfterExtraction,
    /// A Rees certificate's monomial exponent disagrees with the requested
    /// acceleration factor.
    BadLambda,
    /// A module presentation's action equations fail in the algebra.
    ActionMismatch(String),
    /// Lemma-18 witness indices out of range, or mu + nu = 0.
    InvalidWitness(String),
    /// normal_form was called with an x-exponent >= mu + nu.
    IndexOutOfRange,
    /// A derived certificate failed its own re-verification (paranoid mode).
    InternalVerificationFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::NoCanonicalMap => write!(f, "no canonical homomorphism into the target ring"),
            Error::DimensionMismatch => write!(f, "matrix dimension mismatch"),
            Error::InvalidRing(m) => write!(f, "invalid ring: {m}"),
            Error::MalformedCertificate(m) => write!(f, "malformed certificate: {m}"),
            Error::DegreeTooSmall => write!(f, "target degree is smaller than the certificate degree"),
            Error::UnverifiedInput => write!(f, "input certificate does not verify"),
            Error::CoefficientDegreeTooHigh => {
                write!(f, "coefficient degree exceeds the tower relation degree")
            }
            Error::RelationFailed(m) => write!(f, "relation does not hold: {m}"),
            Error::BadIndex => write!(f, "index k outside 0..=n"),
            Error::HypothesisFailed(m) => write!(f, "hypothesis does not hold: {m}"),
            Error::NotMonicAfterExtraction => {
                write!(f, "leading Rees coefficient has constant term != 1")
            }
            Error::BadLambda => write!(f, "acceleration exponent mismatch"),
            Error::ActionMismatch(m) => write!(f, "action equation fails: {m}"),
            Error::InvalidWitness(m) => write!(f, "invalid membership witness: {m}"),
            Error::IndexOutOfRange => write!(f, "x-exponent outside 0..mu+nu"),
            Error::InternalVerificationFailed(m) => {
                write!(f, "derived certificate failed re-verification: {m}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

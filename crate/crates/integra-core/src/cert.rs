//! Certificates of `n`-integrality and their verification.
//!
//! A [`RingCertificate`] packages the full context of the claim "`u` in `B`
//! is `n`-integral over `A`": the rings, the element, and the monic witness
//! coefficients. Verification evaluates the witness at `u`; nothing is
//! trusted. A [`SemifilCertificate`] additionally pins each coefficient
//! `a_i` inside the ideal `I_{n-i}` of an ideal semifiltration, checked by
//! the tri-state membership oracle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::Membership;
use crate::linalg::Matrix;
use crate::ring::{poly_eval_subst, Element, Ring};
use crate::semifil::Semifiltration;

/// Verification outcome for a plain ring certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Verified,
    /// Carries the nonzero value of the witness polynomial at `u`.
    Refuted(Element),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Verification outcome for a semifiltration certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SfVerdict {
    Verified,
    /// The evaluation vanishes but some membership oracle abstained.
    VerifiedModuloMembership,
    /// Carries a human-readable reason (nonzero evaluation or a definite
    /// membership failure).
    Refuted(String),
}

impl SfVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SfVerdict::Refuted(_))
    }
}

/// Monic polynomial witness that `element` is `degree`-integral over
/// `base`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingCertificate {
    base: Ring,
    algebra: Ring,
    element: Element,
    coeffs: Vec<Element>,
}

impl RingCertificate {
    pub fn new(base: Ring, algebra: Ring, element: Element, coeffs: Vec<Element>) -> Result<RingCertificate> {
        if element.ring() != &algebra {
            return Err(Error::MalformedCertificate("element outside the algebra".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::MalformedCertificate("empty coefficient list".into()));
        }
        if coeffs.iter().any(|c| c.ring() != &base) {
            return Err(Error::MalformedCertificate("coefficient outside the base ring".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::MalformedCertificate("leading coefficient is not 1".into()));
        }
        Ok(RingCertificate { base, algebra, element, coeffs })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn algebra(&self) -> &Ring {
        &self.algebra
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the witness at `u` over the algebra; `Verified` iff the
    /// value is zero.
    pub fn verify(&self) -> Result<Verdict> {
        self.verify_subst(&BTreeMap::new())
    }

    /// Like [`verify`](Self::verify), but free polynomial variables of the
    /// base ring are read through `subst` (e.g. `t -> xy` for certificates
    /// over `A[t]`).
    pub fn verify_subst(&self, subst: &BTreeMap<String, Element>) -> Result<Verdict> {
        let v = poly_eval_subst(&self.coeffs, subst, &self.element)?;
        Ok(if v.is_zero() { Verdict::Verified } else { Verdict::Refuted(v) })
    }

    /// Degree padding: multiplies the witness by `X^(p - n)`.
    pub fn pad(&self, p: usize) -> Result<RingCertificate> {
        let n = self.degree();
        if p < n {
            return Err(Error::DegreeTooSmall);
        }
        let mut coeffs = Vec::with_capacity(p + 1);
        for _ in 0..p - n {
            coeffs.push(self.base.zero());
        }
        coeffs.extend(self.coeffs.iter().cloned());
        RingCertificate::new(self.base.clone(), self.algebra.clone(), self.element.clone(), coeffs)
    }

    /// Attaches a semifiltration without touching the coefficients.
    pub fn with_semifiltration(&self, sf: Semifiltration) -> Result<SemifilCertificate> {
        if sf.ring() != &self.base {
            return Err(Error::RingMismatch);
        }
        Ok(SemifilCertificate { cert: self.clone(), semifiltration: sf })
    }
}

/// A ring certificate whose coefficients additionally satisfy
/// `a_i in I_{n-i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemifilCertificate {
    cert: RingCertificate,
    semifiltration: Semifiltration,
}

impl SemifilCertificate {
    pub fn new(
        base: Ring,
        algebra: Ring,
        element: Element,
        coeffs: Vec<Element>,
        semifiltration: Semifiltration,
    ) -> Result<SemifilCertificate> {
        RingCertificate::new(base, algebra, element, coeffs)?.with_semifiltration(semifiltration)
    }

    pub fn ring_cert(&self) -> &RingCertificate {
        &self.cert
    }

    /// Drops the membership refinement (integrality over a semifiltration
    /// is stronger than integrality over the ring).
    pub fn forget_semifiltration(&self) -> RingCertificate {
        self.cert.clone()
    }

    pub fn semifiltration(&self) -> &Semifiltration {
        &self.semifiltration
    }

    pub fn degree(&self) -> usize {
        self.cert.degree()
    }

    pub fn verify(&self) -> Result<SfVerdict> {
        self.verify_subst(&BTreeMap::new())
    }

    pub fn verify_subst(&self, subst: &BTreeMap<String, Element>) -> Result<SfVerdict> {
        if let Verdict::Refuted(v) = self.cert.verify_subst(subst)? {
            return Ok(SfVerdict::Refuted(format!("evaluation at u is nonzero: {v}")));
        }
        let n = self.degree();
        let mut abstained = false;
        for (i, a) in self.cert.coeffs().iter().enumerate() {
            let ideal = self.semifiltration.ideal_at(n - i)?;
            match ideal.membership(a)? {
                Membership::Member => {}
                Membership::Unknown => abstained = true,
                Membership::NotMember => {
                    return Ok(SfVerdict::Refuted(format!(
                        "coefficient a_{i} = {a} is not a member of I_{}",
                        n - i
                    )));
                }
            }
        }
        Ok(if abstained {
            SfVerdict::VerifiedModuloMembership
        } else {
            SfVerdict::Verified
        })
    }
}

/// Nilpotency as integrality: the certificate `X^n` over the powers of the
/// zero ideal verifies exactly when `u^n = 0`.
pub fn nilpotency_cert(ring: &Ring, u: &Element, n: usize) -> Result<SemifilCertificate> {
    if u.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let mut coeffs = alloc::vec![ring.zero(); n];
    coeffs.push(ring.one());
    let sf = Semifiltration::powers(crate::ideal::Ideal::zero(ring.clone()))?;
    SemifilCertificate::new(ring.clone(), ring.clone(), u.clone(), coeffs, sf)
}

/// An `n`-generated module presentation: generators `m_1..m_n` of a module
/// over `algebra`, an action matrix over `base` with
/// `u * m_k = sum_i action[k][i] * m_i`, and the element `u` itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModulePresentation {
    base: Ring,
    algebra: Ring,
    generators: Vec<Element>,
    action: Matrix,
    element: Element,
}

impl ModulePresentation {
    /// Validates shape and the action equations in the algebra.
    pub fn new(
        base: Ring,
        algebra: Ring,
        generators: Vec<Element>,
        action: Matrix,
        element: Element,
    ) -> Result<ModulePresentation> {
        let n = generators.len();
        if !action.is_square() || action.rows() != n {
            return Err(Error::DimensionMismatch);
        }
        if action.ring() != &base {
            return Err(Error::RingMismatch);
        }
        if element.ring() != &algebra || generators.iter().any(|g| g.ring() != &algebra) {
            return Err(Error::RingMismatch);
        }
        for (k, m_k) in generators.iter().enumerate() {
            let lhs = element.mul(m_k)?;
            let mut rhs = algebra.zero();
            for (i, m_i) in generators.iter().enumerate() {
                let c = crate::ring::embed(action.at(k, i), &algebra)?;
                rhs = rhs.add(&c.mul(m_i)?)?;
            }
            if lhs != rhs {
                return Err(Error::ActionMismatch(format!(
                    "u*m_{k} = {lhs} but the action row gives {rhs}"
                )));
            }
        }
        Ok(ModulePresentation { base, algebra, generators, action, element })
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// The characteristic polynomial of the action matrix as a certificate
    /// (the faithful-module implication). Output is monic of degree
    /// exactly `n`; it verifies whenever the presentation is faithful
    /// (in particular when `1` lies in the generated module).
    pub fn to_certificate(&self) -> Result<RingCertificate> {
        let coeffs = self.action.charpoly()?;
        RingCertificate::new(
            self.base.clone(),
            self.algebra.clone(),
            self.element.clone(),
            coeffs,
        )
    }
}

//! Ideal semifiltrations as lazy rule trees, plus Rees-algebra membership.
//!
//! A semifiltration is a sequence of ideals `(I_0, I_1, ...)` with
//! `I_0 = A` and `I_a I_b` contained in `I_{a+b}`. Rules keep the sequence
//! total: powers of an ideal, a constant tail, the trivial sequence, an
//! explicit prefix, products, index acceleration `I_{lambda * rho}`, and
//! extension of scalars into a larger ring.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Membership};
use crate::ring::{embed, Element, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Rule {
    Powers(Ideal),
    Constant(Ideal),
    Trivial,
    Explicit { prefix: Vec<Ideal>, tail: Arc<Semifiltration> },
    Product(Arc<Semifiltration>, Arc<Semifiltration>),
    Accelerated { inner: Arc<Semifiltration>, lambda: usize },
    Extended { inner: Arc<Semifiltration>, target: Ring },
}

/// Outcome of the bounded semifiltration axiom check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Validity {
    Valid,
    /// A pairwise product of generators escaped `I_{a+b}`.
    Invalid { a: usize, b: usize, witness: Element },
    /// Some membership query abstained.
    Unknown,
}

/// An ideal semifiltration of `ring`, evaluated lazily through its rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Semifiltration {
    ring: Ring,
    rule: Rule,
}

impl Semifiltration {
    /// The powers `(I^rho)` of an ideal.
    pub fn powers(ideal: Ideal) -> Result<Semifiltration> {
        Ok(Semifiltration { ring: ideal.ring().clone(), rule: Rule::Powers(ideal) })
    }

    /// The sequence `(A, I, I, ...)`.
    pub fn constant(ideal: Ideal) -> Result<Semifiltration> {
        Ok(Semifiltration { ring: ideal.ring().clone(), rule: Rule::Constant(ideal) })
    }

    /// The trivial sequence `(A, A, A, ...)`.
    pub fn trivial(ring: Ring) -> Semifiltration {
        Semifiltration { ring, rule: Rule::Trivial }
    }

    /// Explicit leading ideals, falling back to `tail` at absolute indices
    /// past the prefix.
    pub fn explicit(prefix: Vec<Ideal>, tail: Semifiltration) -> Result<Semifiltration> {
        if prefix.iter().any(|i| i.ring() != tail.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(Semifiltration {
            ring: tail.ring().clone(),
            rule: Rule::Explicit { prefix, tail: Arc::new(tail) },
        })
    }

    /// The index-wise product `(I_rho J_rho)`.
    pub fn product(left: Semifiltration, right: Semifiltration) -> Result<Semifiltration> {
        if left.ring != right.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Semifiltration {
            ring: left.ring.clone(),
            rule: Rule::Product(Arc::new(left), Arc::new(right)),
        })
    }

    /// The `lambda`-acceleration `(I_{lambda * rho})`.
    pub fn accelerated(inner: Semifiltration, lambda: usize) -> Semifiltration {
        Semifiltration {
            ring: inner.ring.clone(),
            rule: Rule::Accelerated { inner: Arc::new(inner), lambda },
        }
    }

    /// Extension of scalars: `(I_rho A')` for an algebra `A'` over the
    /// inner ring.
    pub fn extended(inner: Semifiltration, target: Ring) -> Result<Semifiltration> {
        embed(&inner.ring.one(), &target)?;
        Ok(Semifiltration {
            ring: target.clone(),
            rule: Rule::Extended { inner: Arc::new(inner), target },
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.rule, Rule::Trivial)
    }

    /// The two factors of a product rule, if that is what this is.
    pub fn product_parts(&self) -> Option<(Semifiltration, Semifiltration)> {
        match &self.rule {
            Rule::Product(l, r) => Some(((**l).clone(), (**r).clone())),
            _ => None,
        }
    }

    /// The inner semifiltration of an acceleration by exactly `lambda`.
    pub fn accel_inner(&self, lambda: usize) -> Option<Semifiltration> {
        match &self.rule {
            Rule::Accelerated { inner, lambda: l } if *l == lambda => Some((**inner).clone()),
            _ => None,
        }
    }

    /// The inner semifiltration of an extension of scalars.
    pub fn extended_inner(&self) -> Option<Semifiltration> {
        match &self.rule {
            Rule::Extended { inner, .. } => Some((**inner).clone()),
            _ => None,
        }
    }

    /// Acceleration rule parts `(inner, lambda)`, if applicable.
    pub fn accel_parts(&self) -> Option<(Semifiltration, usize)> {
        match &self.rule {
            Rule::Accelerated { inner, lambda } => Some(((**inner).clone(), *lambda)),
            _ => None,
        }
    }

    /// The generating ideal of a powers rule.
    pub fn powers_ideal(&self) -> Option<Ideal> {
        match &self.rule {
            Rule::Powers(i) => Some(i.clone()),
            _ => None,
        }
    }

    /// The repeated ideal of a constant rule.
    pub fn constant_ideal(&self) -> Option<Ideal> {
        match &self.rule {
            Rule::Constant(i) => Some(i.clone()),
            _ => None,
        }
    }

    /// Prefix and tail of an explicit rule.
    pub fn explicit_parts(&self) -> Option<(Vec<Ideal>, Semifiltration)> {
        match &self.rule {
            Rule::Explicit { prefix, tail } => Some((prefix.clone(), (**tail).clone())),
            _ => None,
        }
    }

    /// The `rho`-th ideal. Index 0 always normalizes to the unit ideal.
    pub fn ideal_at(&self, rho: usize) -> Result<Ideal> {
        if rho == 0 {
            return Ok(Ideal::unit(self.ring.clone()));
        }
        match &self.rule {
            Rule::Powers(ideal) => {
                let mut acc = ideal.clone();
                for _ in 1..rho {
                    acc = acc.product(ideal)?;
                }
                Ok(acc)
            }
            Rule::Constant(ideal) => Ok(ideal.clone()),
            Rule::Trivial => Ok(Ideal::unit(self.ring.clone())),
            Rule::Explicit { prefix, tail } => match prefix.get(rho) {
                Some(i) => Ok(i.clone()),
                None => tail.ideal_at(rho),
            },
            Rule::Product(left, right) => left.ideal_at(rho)?.product(&right.ideal_at(rho)?),
            Rule::Accelerated { inner, lambda } => inner.ideal_at(lambda * rho),
            Rule::Extended { inner, target } => {
                let src = inner.ideal_at(rho)?;
                let gens = src
                    .generators()
                    .iter()
                    .map(|g| embed(g, target))
                    .collect::<Result<Vec<_>>>()?;
                Ideal::new(target.clone(), gens)
            }
        }
    }

    /// Bounded axiom check: every pairwise generator product of `I_a` and
    /// `I_b` must be a member of `I_{a+b}`, for all `a + b <= bound`.
    pub fn validate(&self, bound: usize) -> Result<Validity> {
        let mut abstained = false;
        for a in 1..bound {
            for b in a..=bound.saturating_sub(a) {
                let ia = self.ideal_at(a)?;
                let ib = self.ideal_at(b)?;
                let iab = self.ideal_at(a + b)?;
                for ga in ia.generators() {
                    for gb in ib.generators() {
                        let prod = ga.mul(gb)?;
                        match iab.membership(&prod)? {
                            Membership::Member => {}
                            Membership::Unknown => abstained = true,
                            Membership::NotMember => {
                                return Ok(Validity::Invalid { a, b, witness: prod });
                            }
                        }
                    }
                }
            }
        }
        Ok(if abstained { Validity::Unknown } else { Validity::Valid })
    }
}

/// Handle on the Rees algebra `A[(I_rho)*Y]`, the subring of `A[Y]` whose
/// `i`-th coefficients lie in `I_i`. Membership is decided coefficient-wise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReesHandle {
    semifil: Semifiltration,
    var: String,
}

impl ReesHandle {
    pub fn new(semifil: Semifiltration, var: &str) -> Result<ReesHandle> {
        // the ambient polynomial ring must be constructible
        Ring::polynomial(semifil.ring(), var)?;
        Ok(ReesHandle { semifil, var: var.to_string() })
    }

    pub fn semifiltration(&self) -> &Semifiltration {
        &self.semifil
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The ambient polynomial ring `A[Y]` the Rees algebra lives in.
    pub fn ambient(&self) -> Ring {
        Ring::polynomial(self.semifil.ring(), &self.var).expect("validated at construction")
    }

    /// Coefficient-wise membership of a polynomial in the Rees algebra.
    pub fn member(&self, p: &Element) -> Result<Membership> {
        if p.ring() != &self.ambient() {
            return Err(Error::RingMismatch);
        }
        let mut acc = Membership::Member;
        for (i, c) in p.coeffs_in_base()?.iter().enumerate() {
            acc = acc.and(self.semifil.ideal_at(i)?.membership(c)?);
            if acc == Membership::NotMember {
                return Ok(acc);
            }
        }
        Ok(acc)
    }

    /// Closure-under-products check: requires both inputs to be members,
    /// then reports membership of `p * q` (always `Member` over a valid
    /// semifiltration).
    pub fn product_witness(&self, p: &Element, q: &Element) -> Result<Membership> {
        if self.member(p)? == Membership::NotMember || self.member(q)? == Membership::NotMember {
            return Err(Error::UnverifiedInput);
        }
        self.member(&p.mul(q)?)
    }
}

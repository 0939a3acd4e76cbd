//! Finitely generated ideals with a tri-state membership oracle.
//!
//! The oracle answers exactly over Euclidean base rings (integers, modular
//! residues, rationals, univariate polynomials over a decidable field) and
//! over polynomial rings whose generators are all constants; everywhere
//! else it abstains. It never returns a wrong `Member` or `NotMember`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{field_inv, is_decidable_field, Element, Ring, RingKind, Value};

/// Outcome of a membership query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    Member,
    NotMember,
    /// The oracle abstains; the query ring is outside its decidable
    /// fragment.
    Unknown,
}

impl Membership {
    /// Three-valued conjunction: one certain failure refutes, otherwise an
    /// abstention is contagious.
    pub fn and(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::NotMember, _) | (_, Membership::NotMember) => Membership::NotMember,
            (Membership::Unknown, _) | (_, Membership::Unknown) => Membership::Unknown,
            _ => Membership::Member,
        }
    }
}

/// A finitely generated ideal, generators deduplicated; the zero ideal is
/// `<0>` and an ideal containing the literal unit is `<1>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Element>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Element>) -> Result<Ideal> {
        if gens.is_empty() {
            return Err(Error::InvalidRing("ideal needs at least one generator".into()));
        }
        if gens.iter().any(|g| g.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal::normalized(ring, gens))
    }

    fn normalized(ring: Ring, gens: Vec<Element>) -> Ideal {
        let mut out: Vec<Element> = Vec::new();
        for g in gens {
            if g.is_zero() || out.contains(&g) {
                continue;
            }
            if g.is_one() {
                return Ideal { ring: ring.clone(), gens: vec![ring.one()] };
            }
            out.push(g);
        }
        if out.is_empty() {
            out.push(ring.zero());
        }
        Ideal { ring, gens: out }
    }

    pub fn zero(ring: Ring) -> Ideal {
        let z = ring.zero();
        Ideal { ring, gens: vec![z] }
    }

    pub fn unit(ring: Ring) -> Ideal {
        let o = ring.one();
        Ideal { ring, gens: vec![o] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Product ideal: all pairwise generator products, renormalized.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Ideal::normalized(self.ring.clone(), gens))
    }

    /// Tri-state membership test.
    pub fn membership(&self, x: &Element) -> Result<Membership> {
        if x.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if x.is_zero() {
            return Ok(Membership::Member);
        }
        if self.gens.iter().any(|g| g.is_one()) {
            return Ok(Membership::Member);
        }
        if self.is_zero_ideal() {
            // x != 0 was handled above
            return Ok(Membership::NotMember);
        }
        match self.ring.kind() {
            RingKind::Integers => {
                let g = self.int_gcd();
                Ok(divides_int(&g, &as_int(x)))
            }
            RingKind::Modular(m) => {
                // the ideal lifts to <gcd(gens, m)> in Z
                let mut g = BigInt::from_biguint(Sign::Plus, m.clone());
                for gen in &self.gens {
                    g = g.gcd(&as_mod_lift(gen));
                }
                Ok(divides_int(&g, &as_mod_lift(x)))
            }
            RingKind::Rationals => {
                // a field: any nonzero generator spans everything
                Ok(Membership::Member)
            }
            RingKind::Polynomial { base, .. } => self.poly_membership(base, x),
            RingKind::MonicQuotient { .. } => Ok(Membership::Unknown),
        }
    }

    fn int_gcd(&self) -> BigInt {
        let mut g = BigInt::zero();
        for gen in &self.gens {
            g = g.gcd(&as_int(gen));
        }
        g
    }

    fn poly_membership(&self, base: &Ring, x: &Element) -> Result<Membership> {
        // Constant generators span exactly the polynomials whose
        // coefficients lie in the base ideal they generate.
        if let Some(consts) = self.constant_generators() {
            let inner = Ideal::new(base.clone(), consts)?;
            let mut acc = Membership::Member;
            for c in x.coeffs_in_base()? {
                acc = acc.and(inner.membership(&c)?);
                if acc == Membership::NotMember {
                    return Ok(Membership::NotMember);
                }
            }
            return Ok(acc);
        }
        if is_decidable_field(base) {
            // univariate Euclidean domain: reduce to gcd divisibility
            let mut g: Vec<Element> = Vec::new();
            for gen in &self.gens {
                g = poly_gcd(base, &g, &gen.coeffs_in_base()?)?;
            }
            let (_, rem) = poly_divmod(base, &x.coeffs_in_base()?, &g)?;
            Ok(if rem.is_empty() { Membership::Member } else { Membership::NotMember })
        } else {
            Ok(Membership::Unknown)
        }
    }

    /// When every generator is a degree-0 polynomial, returns them as base
    /// ring elements.
    fn constant_generators(&self) -> Option<Vec<Element>> {
        let mut out = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            match g.poly_degree().ok()? {
                None => out.push(g.ring().base()?.zero()),
                Some(0) => out.push(g.coeff_at(0).ok()?),
                Some(_) => return None,
            }
        }
        Some(out)
    }
}

fn as_int(x: &Element) -> BigInt {
    match x.value() {
        Value::Int(n) => n.clone(),
        _ => unreachable!("integer element"),
    }
}

fn as_mod_lift(x: &Element) -> BigInt {
    match x.value() {
        Value::Mod(n) => BigInt::from_biguint(Sign::Plus, n.clone()),
        _ => unreachable!("modular element"),
    }
}

fn divides_int(g: &BigInt, x: &BigInt) -> Membership {
    if g.is_zero() {
        if x.is_zero() {
            Membership::Member
        } else {
            Membership::NotMember
        }
    } else if (x % g).is_zero() {
        Membership::Member
    } else {
        Membership::NotMember
    }
}

/// Euclidean division of dense coefficient vectors over a decidable field;
/// returns `(quotient, remainder)` with the remainder stripped.
fn poly_divmod(base: &Ring, num: &[Element], den: &[Element]) -> Result<(Vec<Element>, Vec<Element>)> {
    if den.is_empty() {
        // division by zero polynomial: remainder is the numerator
        return Ok((Vec::new(), num.to_vec()));
    }
    let lead_inv = field_inv(den.last().unwrap()).ok_or(Error::NoCanonicalMap)?;
    let mut rem: Vec<Element> = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![base.zero(); num.len().saturating_sub(dd)];
    while rem.len() > dd {
        let lead = rem.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let q = lead.mul(&lead_inv)?;
        let shift = rem.len() - dd;
        quo[shift] = q.clone();
        for i in 0..dd {
            let t = q.mul(&den[i])?;
            rem[shift + i] = rem[shift + i].sub(&t)?;
        }
    }
    while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
        rem.pop();
    }
    Ok((quo, rem))
}

/// Monic gcd of dense coefficient vectors over a decidable field.
fn poly_gcd(base: &Ring, a: &[Element], b: &[Element]) -> Result<Vec<Element>> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let (_, r) = poly_divmod(base, &a, &b)?;
        a = b;
        b = r;
    }
    if let Some(lead) = a.last() {
        let inv = field_inv(lead).ok_or(Error::NoCanonicalMap)?;
        for c in a.iter_mut() {
            *c = c.mul(&inv)?;
        }
    }
    Ok(a)
}

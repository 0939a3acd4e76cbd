//! Computable commutative rings with unity and their canonical element
//! encodings.
//!
//! A [`Ring`] is a finite acyclic tower built from five constructors:
//! the integers, `Z/m` for `m >= 2`, the rationals, univariate polynomial
//! extensions, and quotients by a monic polynomial. Multivariate rings are
//! realized as nested univariate towers. Elements are kept in canonical
//! form at all times, so structural equality coincides with ring equality.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Descriptor of a computable commutative ring with unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingKind {
    /// The ring of integers.
    Integers,
    /// Residues modulo `m`, canonical representatives in `[0, m)`.
    Modular(BigUint),
    /// The field of rational numbers, reduced fractions.
    Rationals,
    /// Univariate polynomials over `base` in the named variable.
    Polynomial { base: Ring, var: String },
    /// `base[var]/(modulus)` for a monic `modulus` of degree >= 1.
    /// Representatives have degree < deg(modulus).
    MonicQuotient {
        base: Ring,
        modulus: Vec<Element>,
        var: String,
    },
}

/// A shared, immutable ring descriptor.
#[derive(Clone, Eq, Debug)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

/// Canonical payload of a ring element.
///
/// The interpretation depends on the ring: `Poly` is used both for
/// polynomial rings (trailing zeros stripped) and monic quotients
/// (additionally reduced below the modulus degree). The zero polynomial
/// is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Int(BigInt),
    Mod(BigUint),
    Rat(BigRational),
    Poly(Vec<Value>),
}

/// An element of a [`Ring`], always in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn modular(m: impl Into<BigUint>) -> Result<Ring> {
        let m = m.into();
        if m < BigUint::from(2u32) {
            return Err(Error::InvalidRing("modulus must be >= 2".into()));
        }
        Ok(Ring(Arc::new(RingKind::Modular(m))))
    }

    pub fn polynomial(base: &Ring, var: &str) -> Result<Ring> {
        check_var(base, var)?;
        Ok(Ring(Arc::new(RingKind::Polynomial {
            base: base.clone(),
            var: var.to_string(),
        })))
    }

    /// Quotient of `base[var]` by a monic modulus of degree >= 1, given
    /// lowest-degree-first with coefficients in `base`.
    pub fn monic_quotient(base: &Ring, modulus: Vec<Element>, var: &str) -> Result<Ring> {
        check_var(base, var)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidRing("quotient modulus must have degree >= 1".into()));
        }
        for c in &modulus {
            if c.ring != *base {
                return Err(Error::InvalidRing("modulus coefficient outside the base ring".into()));
            }
        }
        if !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidRing("quotient modulus must be monic".into()));
        }
        Ok(Ring(Arc::new(RingKind::MonicQuotient {
            base: base.clone(),
            modulus,
            var: var.to_string(),
        })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// The base ring of a polynomial or quotient layer.
    pub fn base(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Polynomial { base, .. } | RingKind::MonicQuotient { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn var(&self) -> Option<&str> {
        match self.kind() {
            RingKind::Polynomial { var, .. } | RingKind::MonicQuotient { var, .. } => Some(var),
            _ => None,
        }
    }

    /// All variable names along the tower path, innermost last.
    pub fn tower_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Some(v) = cur.var() {
            out.push(v.to_string());
            cur = cur.base().unwrap().clone();
        }
        out
    }

    /// A variable name not yet used anywhere in this ring's tower.
    pub fn fresh_var(&self, preferred: &str) -> String {
        let used = self.tower_vars();
        if !used.iter().any(|v| v == preferred) {
            return preferred.to_string();
        }
        let mut i = 1usize;
        loop {
            let cand = alloc::format!("{preferred}{i}");
            if !used.iter().any(|v| v == &cand) {
                return cand;
            }
            i += 1;
        }
    }

    pub fn zero(&self) -> Element {
        let value = match self.kind() {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Modular(_) => Value::Mod(BigUint::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::Polynomial { .. } | RingKind::MonicQuotient { .. } => Value::Poly(Vec::new()),
        };
        Element { ring: self.clone(), value }
    }

    pub fn one(&self) -> Element {
        self.from_int(BigInt::one())
    }

    /// The image of an integer under the unique map `Z -> self`, `n . 1`.
    pub fn from_int(&self, n: impl Into<BigInt>) -> Element {
        let n = n.into();
        let value = match self.kind() {
            RingKind::Integers => Value::Int(n),
            RingKind::Modular(m) => Value::Mod(int_mod(&n, m)),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n)),
            RingKind::Polynomial { base, .. } | RingKind::MonicQuotient { base, .. } => {
                let c = base.from_int(n);
                if c.is_zero() {
                    Value::Poly(Vec::new())
                } else {
                    Value::Poly(vec![c.value])
                }
            }
        };
        Element { ring: self.clone(), value }
    }

    /// A reduced fraction in the rationals.
    pub fn rational(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Element> {
        match self.kind() {
            RingKind::Rationals => {
                let den = den.into();
                if den.is_zero() {
                    return Err(Error::InvalidRing("zero denominator".into()));
                }
                Ok(Element {
                    ring: self.clone(),
                    value: Value::Rat(BigRational::new(num.into(), den)),
                })
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// Builds a polynomial (or quotient-class) element from coefficients in
    /// the base ring, lowest degree first; the result is canonicalized.
    pub fn poly_from_coeffs(&self, coeffs: Vec<Element>) -> Result<Element> {
        let base = self.base().ok_or(Error::RingMismatch)?;
        let mut vals = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.ring != *base {
                return Err(Error::RingMismatch);
            }
            vals.push(c.value);
        }
        Ok(Element {
            ring: self.clone(),
            value: self.canon_poly(vals),
        })
    }

    /// The class of the layer variable of a polynomial or quotient ring.
    pub fn var_elem(&self) -> Result<Element> {
        let base = self.base().ok_or(Error::RingMismatch)?;
        self.poly_from_coeffs(vec![base.zero(), base.one()])
    }

    fn canon_poly(&self, vals: Vec<Value>) -> Value {
        let base = self.base().expect("polynomial layer");
        let reduced = match self.kind() {
            RingKind::MonicQuotient { modulus, .. } => {
                let m: Vec<&Value> = modulus.iter().map(|e| &e.value).collect();
                poly_reduce(base, vals, &m)
            }
            _ => vals,
        };
        Value::Poly(strip(base, reduced))
    }

    fn is_zero_value(&self, v: &Value) -> bool {
        match v {
            Value::Int(n) => n.is_zero(),
            Value::Mod(n) => n.is_zero(),
            Value::Rat(r) => r.is_zero(),
            Value::Poly(c) => c.is_empty(),
        }
    }

    fn v_add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::Modular(m), Value::Mod(x), Value::Mod(y)) => Value::Mod((x + y) % m),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (_, Value::Poly(x), Value::Poly(y)) => {
                let base = self.base().expect("polynomial layer");
                let n = x.len().max(y.len());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let xi = x.get(i);
                    let yi = y.get(i);
                    out.push(match (xi, yi) {
                        (Some(p), Some(q)) => base.v_add(p, q),
                        (Some(p), None) => p.clone(),
                        (None, Some(q)) => q.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                Value::Poly(strip(base, out))
            }
            _ => unreachable!("non-canonical value"),
        }
    }

    fn v_neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::Modular(m), Value::Mod(x)) => {
                if x.is_zero() {
                    Value::Mod(BigUint::zero())
                } else {
                    Value::Mod(m - x)
                }
            }
            (RingKind::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (_, Value::Poly(x)) => {
                let base = self.base().expect("polynomial layer");
                Value::Poly(x.iter().map(|c| base.v_neg(c)).collect())
            }
            _ => unreachable!("non-canonical value"),
        }
    }

    fn v_mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::Modular(m), Value::Mod(x), Value::Mod(y)) => Value::Mod((x * y) % m),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (_, Value::Poly(x), Value::Poly(y)) => {
                let base = self.base().expect("polynomial layer");
                let prod = poly_mul(base, x, y);
                self.canon_poly(prod)
            }
            _ => unreachable!("non-canonical value"),
        }
    }
}

fn check_var(base: &Ring, var: &str) -> Result<()> {
    if var.is_empty() {
        return Err(Error::InvalidRing("empty variable name".into()));
    }
    if base.tower_vars().iter().any(|v| v == var) {
        return Err(Error::InvalidRing(alloc::format!(
            "variable {var} already used in the tower"
        )));
    }
    Ok(())
}

fn int_mod(n: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let r = ((n % &m_int) + &m_int) % &m_int;
    r.to_biguint().expect("nonnegative residue")
}

fn strip(base: &Ring, mut v: Vec<Value>) -> Vec<Value> {
    while let Some(last) = v.last() {
        if base.is_zero_value(last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

fn poly_mul(base: &Ring, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero().value; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero_value(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = base.v_mul(x, y);
            out[i + j] = base.v_add(&out[i + j], &t);
        }
    }
    out
}

/// Reduces `v` modulo a monic `modulus` (no division beyond subtracting
/// leading-coefficient multiples, which is exact for monic divisors).
fn poly_reduce(base: &Ring, mut v: Vec<Value>, modulus: &[&Value]) -> Vec<Value> {
    let d = modulus.len() - 1;
    while v.len() > d {
        let lead = v.pop().unwrap();
        if base.is_zero_value(&lead) {
            continue;
        }
        let shift = v.len() - d;
        for (i, m) in modulus.iter().take(d).enumerate() {
            let t = base.v_mul(&lead, m);
            let cur = &v[shift + i];
            v[shift + i] = base.v_add(cur, &base.v_neg(&t));
        }
    }
    v
}

impl Element {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Read-only view of the canonical payload (used by serializers).
    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero_value(&self.value)
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn add(&self, rhs: &Element) -> Result<Element> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Element {
            ring: self.ring.clone(),
            value: self.ring.v_add(&self.value, &rhs.value),
        })
    }

    pub fn sub(&self, rhs: &Element) -> Result<Element> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Element) -> Result<Element> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Element {
            ring: self.ring.clone(),
            value: self.ring.v_mul(&self.value, &rhs.value),
        })
    }

    pub fn neg(&self) -> Element {
        Element {
            ring: self.ring.clone(),
            value: self.ring.v_neg(&self.value),
        }
    }

    pub fn pow(&self, mut e: u64) -> Element {
        let mut result = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        result
    }

    /// Coefficients of a polynomial-layer element in its base ring,
    /// lowest degree first, trailing zeros stripped.
    pub fn coeffs_in_base(&self) -> Result<Vec<Element>> {
        let base = self.ring.base().ok_or(Error::RingMismatch)?;
        match &self.value {
            Value::Poly(c) => Ok(c
                .iter()
                .map(|v| Element { ring: base.clone(), value: v.clone() })
                .collect()),
            _ => unreachable!("non-canonical value"),
        }
    }

    /// The coefficient of the `i`-th power of the layer variable (zero if
    /// `i` exceeds the stored degree).
    pub fn coeff_at(&self, i: usize) -> Result<Element> {
        let base = self.ring.base().ok_or(Error::RingMismatch)?;
        match &self.value {
            Value::Poly(c) => Ok(c
                .get(i)
                .map(|v| Element { ring: base.clone(), value: v.clone() })
                .unwrap_or_else(|| base.zero())),
            _ => unreachable!("non-canonical value"),
        }
    }

    /// Degree of a polynomial-layer element; `None` for the zero polynomial.
    pub fn poly_degree(&self) -> Result<Option<usize>> {
        self.ring.base().ok_or(Error::RingMismatch)?;
        match &self.value {
            Value::Poly(c) => Ok(if c.is_empty() { None } else { Some(c.len() - 1) }),
            _ => unreachable!("non-canonical value"),
        }
    }
}

/// The canonical homomorphism of an element into `target`, when one exists.
///
/// Supported maps: identity; the base of a polynomial or quotient chain
/// into the chain (constant images); the integers into any ring via
/// `n . 1`; and the coefficient-wise lift `A[Y] -> B[Y]` induced by a
/// canonical map `A -> B` (same variable name on both sides).
pub fn embed(a: &Element, target: &Ring) -> Result<Element> {
    eval_subst(a, &BTreeMap::new(), target)
}

/// Like [`embed`], but polynomial layers whose variable appears in `subst`
/// are evaluated (by Horner) at the substituted value instead of being
/// lifted. Used to read certificates over free polynomial rings like
/// `A[t]` at a concrete `t`.
pub fn eval_subst(a: &Element, subst: &BTreeMap<String, Element>, target: &Ring) -> Result<Element> {
    if a.ring == *target {
        return Ok(a.clone());
    }
    if let RingKind::Polynomial { var, .. } = a.ring.kind() {
        if let Some(v) = subst.get(var) {
            let x = if v.ring == *target { v.clone() } else { embed(v, target)? };
            let coeffs = a.coeffs_in_base()?;
            let mut acc = target.zero();
            for c in coeffs.iter().rev() {
                acc = acc.mul(&x)?.add(&eval_subst(c, subst, target)?)?;
            }
            return Ok(acc);
        }
        if let RingKind::Polynomial { base: tb, var: tv } = target.kind() {
            if tv == var {
                let coeffs = a.coeffs_in_base()?;
                let mapped = coeffs
                    .iter()
                    .map(|c| eval_subst(c, subst, tb))
                    .collect::<Result<Vec<_>>>()?;
                return target.poly_from_coeffs(mapped);
            }
        }
    }
    if let Some(tb) = target.base() {
        if let Ok(c) = eval_subst(a, subst, tb) {
            return target.poly_from_coeffs(vec![c]);
        }
    }
    match a.ring.kind() {
        RingKind::Integers => match &a.value {
            Value::Int(n) => Ok(target.from_int(n.clone())),
            _ => unreachable!("non-canonical value"),
        },
        _ => Err(Error::NoCanonicalMap),
    }
}

/// Evaluates a polynomial given by coefficients over `A` at `u` in an
/// `A`-algebra `B`, by Horner's scheme (coefficients pass through
/// [`embed`]).
pub fn poly_eval(coeffs: &[Element], u: &Element) -> Result<Element> {
    let target = u.ring();
    let mut acc = target.zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(u)?.add(&embed(c, target)?)?;
    }
    Ok(acc)
}

/// [`poly_eval`] with substitution of free polynomial variables in the
/// coefficients.
pub fn poly_eval_subst(
    coeffs: &[Element],
    subst: &BTreeMap<String, Element>,
    u: &Element,
) -> Result<Element> {
    let target = u.ring();
    let mut acc = target.zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(u)?.add(&eval_subst(c, subst, target)?)?;
    }
    Ok(acc)
}

/// Swaps the two outermost polynomial layers: an element of `A[v1][v2]`
/// is rewritten as an element of `A[v2][v1]`.
pub fn transpose_vars(a: &Element) -> Result<Element> {
    let outer = a.ring();
    let (inner, outer_var) = match outer.kind() {
        RingKind::Polynomial { base, var } => (base, var.as_str()),
        _ => return Err(Error::NoCanonicalMap),
    };
    let (core, inner_var) = match inner.kind() {
        RingKind::Polynomial { base, var } => (base, var.as_str()),
        _ => return Err(Error::NoCanonicalMap),
    };
    let new_inner = Ring::polynomial(core, outer_var)?;
    let new_outer = Ring::polynomial(&new_inner, inner_var)?;
    // matrix of coefficients: rows = outer exponent, cols = inner exponent
    let rows = a.coeffs_in_base()?;
    let mut cols: Vec<Vec<Element>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.coeffs_in_base()?.into_iter().enumerate() {
            while cols.len() <= j {
                cols.push(Vec::new());
            }
            while cols[j].len() <= i {
                cols[j].push(core.zero());
            }
            cols[j][i] = c;
        }
    }
    let mapped = cols
        .into_iter()
        .map(|col| new_inner.poly_from_coeffs(col))
        .collect::<Result<Vec<_>>>()?;
    new_outer.poly_from_coeffs(mapped)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn fmt_value(ring: &Ring, v: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match v {
                Value::Int(n) => write!(f, "{n}"),
                Value::Mod(n) => write!(f, "{n}"),
                Value::Rat(r) => {
                    if r.denom().is_one() {
                        write!(f, "{}", r.numer())
                    } else {
                        write!(f, "{}/{}", r.numer(), r.denom())
                    }
                }
                Value::Poly(cs) => {
                    let base = ring.base().expect("polynomial layer");
                    write!(f, "[")?;
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        fmt_value(base, c, f)?;
                    }
                    write!(f, "]")
                }
            }
        }
        fmt_value(&self.ring, &self.value, f)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular(m) => write!(f, "Z/{m}"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::Polynomial { base, var } => write!(f, "{base}[{var}]"),
            RingKind::MonicQuotient { base, var, modulus } => {
                write!(f, "{base}[{var}]/(")?;
                for (i, c) in modulus.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Returns `true` when the ring is one of the two field cases the
/// membership oracle can divide in: the rationals, or `Z/p` with `p` prime.
pub(crate) fn is_decidable_field(ring: &Ring) -> bool {
    match ring.kind() {
        RingKind::Rationals => true,
        RingKind::Modular(m) => is_prime(m),
        _ => false,
    }
}

fn is_prime(m: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *m < two {
        return false;
    }
    // Trial division; moduli in this artifact are desk-scale. Anything too
    // large to test cheaply is treated as "not known prime", which only
    // makes the membership oracle abstain.
    if let Some(n) = m.to_u64_digits().first().copied().filter(|_| m.bits() <= 32) {
        if n % 2 == 0 {
            return n == 2;
        }
        let mut d = 3u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    } else {
        false
    }
}

/// Multiplicative inverse in the decidable fields (rationals, `Z/p`).
pub(crate) fn field_inv(a: &Element) -> Option<Element> {
    if a.is_zero() {
        return None;
    }
    match (a.ring().kind(), a.value()) {
        (RingKind::Rationals, Value::Rat(r)) => Some(Element {
            ring: a.ring().clone(),
            value: Value::Rat(r.recip()),
        }),
        (RingKind::Modular(m), Value::Mod(x)) => {
            let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
            let x_int = BigInt::from_biguint(Sign::Plus, x.clone());
            let (g, inv) = ext_gcd(&x_int, &m_int);
            if g.is_one() {
                Some(Element {
                    ring: a.ring().clone(),
                    value: Value::Mod(int_mod(&inv, m)),
                })
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Returns `(gcd, s)` with `s*a = gcd (mod b)`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = core::mem::replace(&mut s1, s2);
    }
    if r0.is_negative() {
        (-r0, -s0)
    } else {
        (r0, s0)
    }
}

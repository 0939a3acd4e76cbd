//! Certificate transformers for plain-ring integrality: sums, products,
//! scalars, negation, difference, transitivity, truncated relations and
//! the two-sided construction.
//!
//! The workhorse is [`BivariateFrame`]: the free module of rank `m * n`
//! underlying `R[X, Y] / (P(X), Q(X, Y))` for a monic `P` of degree `m`
//! and a `Q` monic of degree `n` in `Y` with `X`-reduced coefficients.
//! The characteristic polynomial of a multiplication operator on that
//! basis annihilates the operator's image in any algebra where both
//! relations hold, which is exactly the faithful-module argument; a single
//! matrix engine therefore serves sums, products and tower transitivity,
//! and produces the advertised degrees on the nose.

use alloc::vec;
use alloc::vec::Vec;

use crate::cert::RingCertificate;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{embed, poly_eval, Element, Ring};

/// Dense polynomial helpers over an explicit coefficient ring.
pub(crate) fn xstrip(mut v: Vec<Element>) -> Vec<Element> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

pub(crate) fn xadd(base: &Ring, a: &[Element], b: &[Element]) -> Result<Vec<Element>> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| base.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| base.zero());
        out.push(x.add(&y)?);
    }
    Ok(xstrip(out))
}

pub(crate) fn xmul(base: &Ring, a: &[Element], b: &[Element]) -> Result<Vec<Element>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y)?)?;
        }
    }
    Ok(xstrip(out))
}

pub(crate) fn xneg(a: &[Element]) -> Vec<Element> {
    a.iter().map(|c| c.neg()).collect()
}

/// Remainder of `a` modulo a monic `modulus` (valid over any ring).
pub(crate) fn reduce_mod_monic(mut a: Vec<Element>, modulus: &[Element]) -> Result<Vec<Element>> {
    debug_assert!(modulus.last().map(|c| c.is_one()).unwrap_or(false));
    let d = modulus.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for (i, m) in modulus.iter().take(d).enumerate() {
            a[shift + i] = a[shift + i].sub(&lead.mul(m)?)?;
        }
    }
    Ok(xstrip(a))
}

/// A bivariate element during frame computations: `rows[i]` holds the
/// `X`-coefficients of the `Y^i` part.
type Bivar = Vec<Vec<Element>>;

/// The free rank-`m*n` module underlying `R[X, Y] / (P(X), Q(X, Y))`.
///
/// `x_rel` is `P`, monic of degree `m` over `R`; `y_rel` is `Q`, monic of
/// degree `n` in `Y`, each coefficient a dense `X`-polynomial over `R` of
/// degree `< m`. The basis is the set of monomials `Y^i X^j` with `i < n`,
/// `j < m`, enumerated row-major (`index = i * m + j`).
pub struct BivariateFrame {
    base: Ring,
    x_rel: Vec<Element>,
    y_rel: Vec<Vec<Element>>,
}

impl BivariateFrame {
    pub fn new(base: Ring, x_rel: Vec<Element>, y_rel: Vec<Vec<Element>>) -> Result<BivariateFrame> {
        if x_rel.is_empty() || !x_rel.last().unwrap().is_one() {
            return Err(Error::MalformedCertificate("x-relation must be monic".into()));
        }
        if y_rel.is_empty()
            || y_rel.last().unwrap().len() != 1
            || !y_rel.last().unwrap()[0].is_one()
        {
            return Err(Error::MalformedCertificate("y-relation must be monic".into()));
        }
        let m = x_rel.len() - 1;
        for q in &y_rel {
            if q.len() > m.max(1) && q.len() > m {
                return Err(Error::CoefficientDegreeTooHigh);
            }
            if q.iter().any(|c| c.ring() != &base) {
                return Err(Error::RingMismatch);
            }
        }
        if x_rel.iter().any(|c| c.ring() != &base) {
            return Err(Error::RingMismatch);
        }
        Ok(BivariateFrame { base, x_rel, y_rel })
    }

    pub fn x_degree(&self) -> usize {
        self.x_rel.len() - 1
    }

    pub fn y_degree(&self) -> usize {
        self.y_rel.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.x_degree() * self.y_degree()
    }

    fn xreduce(&self, row: Vec<Element>) -> Result<Vec<Element>> {
        reduce_mod_monic(row, &self.x_rel)
    }

    /// Rewrites a bivariate element on the frame basis and returns its
    /// coordinate vector.
    fn coords(&self, mut b: Bivar) -> Result<Vec<Element>> {
        let m = self.x_degree();
        let n = self.y_degree();
        for row in b.iter_mut() {
            let taken = core::mem::take(row);
            *row = self.xreduce(taken)?;
        }
        while b.len() > n {
            let top = b.pop().unwrap();
            if top.is_empty() {
                continue;
            }
            let e = b.len();
            for i in 0..n {
                let prod = self.xreduce(xmul(&self.base, &top, &xneg(&self.y_rel[i]))?)?;
                let merged = xadd(&self.base, &b[e - n + i], &prod)?;
                b[e - n + i] = merged;
            }
        }
        let mut out = vec![self.base.zero(); n * m];
        for (i, row) in b.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out[i * m + j] = c.clone();
            }
        }
        Ok(out)
    }

    /// The matrix of multiplication by `w` on the frame basis, rows indexed
    /// by basis monomials (`row k` = coordinates of `w * basis_k`).
    pub fn mult_matrix(&self, w: &[(usize, usize, Element)]) -> Result<Matrix> {
        let m = self.x_degree();
        let n = self.y_degree();
        let mut rows = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                // w * Y^i X^j, term by term
                let mut shifted: Bivar = Vec::new();
                for (yi, xj, c) in w {
                    let ry = yi + i;
                    let rx = xj + j;
                    while shifted.len() <= ry {
                        shifted.push(Vec::new());
                    }
                    while shifted[ry].len() <= rx {
                        shifted[ry].push(self.base.zero());
                    }
                    shifted[ry][rx] = shifted[ry][rx].add(c)?;
                }
                rows.push(self.coords(shifted)?);
            }
        }
        Matrix::from_rows(self.base.clone(), rows)
    }
}

fn ensure_verified(c: &RingCertificate) -> Result<()> {
    if c.verify()?.is_verified() {
        Ok(())
    } else {
        Err(Error::UnverifiedInput)
    }
}

/// The degree-1 certificate `X - a` for a scalar image `a * 1_B`.
pub fn scalar_cert(base: &Ring, algebra: &Ring, a: &Element) -> Result<RingCertificate> {
    if a.ring() != base {
        return Err(Error::RingMismatch);
    }
    RingCertificate::new(
        base.clone(),
        algebra.clone(),
        embed(a, algebra)?,
        vec![a.neg(), base.one()],
    )
}

/// Shifts a monic polynomial: returns the coefficients of `P(X - x)` over
/// the ring of `x`. Monic of the same degree.
pub fn shift_monic(coeffs: &[Element], x: &Element) -> Result<Vec<Element>> {
    if coeffs.is_empty() || !coeffs.last().unwrap().is_one() {
        return Err(Error::MalformedCertificate("shift of a non-monic polynomial".into()));
    }
    let ring = x.ring();
    // Horner in the outer variable: acc <- acc * (X - x) + c_i
    let mut acc: Vec<Element> = Vec::new();
    for c in coeffs.iter().rev() {
        let shifted_up = {
            let mut v = vec![ring.zero()];
            v.extend(acc.iter().cloned());
            v
        };
        let scaled = xmul(ring, &acc, &[x.neg()])?;
        acc = xadd(ring, &shifted_up, &scaled)?;
        acc = xadd(ring, &acc, &[embed(c, ring)?])?;
    }
    Ok(acc)
}

fn frame_for_pair(cx: &RingCertificate, cy: &RingCertificate) -> Result<BivariateFrame> {
    if cx.base() != cy.base() || cx.algebra() != cy.algebra() {
        return Err(Error::RingMismatch);
    }
    ensure_verified(cx)?;
    ensure_verified(cy)?;
    let base = cx.base().clone();
    let y_rel = cy.coeffs().iter().map(|c| {
        if c.is_zero() { Vec::new() } else { vec![c.clone()] }
    }).collect();
    BivariateFrame::new(base, cx.coeffs().to_vec(), y_rel)
}

fn charpoly_cert(
    frame: &BivariateFrame,
    w: &[(usize, usize, Element)],
    algebra: &Ring,
    element: Element,
) -> Result<RingCertificate> {
    let coeffs = frame.mult_matrix(w)?.charpoly()?;
    RingCertificate::new(frame.base.clone(), algebra.clone(), element, coeffs)
}

/// Certificate for `x + y` of degree exactly `deg(cx) * deg(cy)`.
pub fn sum_cert(cx: &RingCertificate, cy: &RingCertificate) -> Result<RingCertificate> {
    let frame = frame_for_pair(cx, cy)?;
    let one = frame.base.one();
    let w = [(0usize, 1usize, one.clone()), (1usize, 0usize, one)];
    let element = cx.element().add(cy.element())?;
    charpoly_cert(&frame, &w, cx.algebra(), element)
}

/// Certificate for `x * y` of degree exactly `deg(cx) * deg(cy)`.
pub fn product_cert(cx: &RingCertificate, cy: &RingCertificate) -> Result<RingCertificate> {
    let frame = frame_for_pair(cx, cy)?;
    let w = [(1usize, 1usize, frame.base.one())];
    let element = cx.element().mul(cy.element())?;
    charpoly_cert(&frame, &w, cx.algebra(), element)
}

/// Certificate for `-x` of the same degree: flips the sign of every
/// coefficient at odd distance from the top.
pub fn negate_cert(c: &RingCertificate) -> Result<RingCertificate> {
    ensure_verified(c)?;
    let m = c.degree();
    let coeffs = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| if (m - i).is_multiple_of(2) { a.clone() } else { a.neg() })
        .collect();
    RingCertificate::new(
        c.base().clone(),
        c.algebra().clone(),
        c.element().neg(),
        coeffs,
    )
}

/// Certificate for `x - y` of degree exactly `deg(cx) * deg(cy)`.
pub fn diff_cert(cx: &RingCertificate, cy: &RingCertificate) -> Result<RingCertificate> {
    sum_cert(cx, &negate_cert(cy)?)
}

/// Transitivity: `cv` certifies `v` over `A` with degree `m`; `cu_coeffs`
/// are the coefficients of a monic degree-`n` relation for `u` over
/// `A[v]`, each given as a dense polynomial in `v` over `A` of degree
/// `< m`. Returns a degree-`n*m` certificate for `u` over `A`.
pub fn transitivity_cert(
    cv: &RingCertificate,
    u: &Element,
    cu_coeffs: &[Vec<Element>],
) -> Result<RingCertificate> {
    ensure_verified(cv)?;
    if u.ring() != cv.algebra() {
        return Err(Error::RingMismatch);
    }
    let m = cv.degree();
    if cu_coeffs.is_empty()
        || cu_coeffs.last().unwrap().len() != 1
        || !cu_coeffs.last().unwrap()[0].is_one()
    {
        return Err(Error::MalformedCertificate("tower relation must be monic".into()));
    }
    for q in cu_coeffs {
        if q.len() > m {
            return Err(Error::CoefficientDegreeTooHigh);
        }
    }
    // the tower relation must hold at (v, u) in the common algebra
    let v = cv.element();
    let mut acc = cv.algebra().zero();
    for q in cu_coeffs.iter().rev() {
        acc = acc.mul(u)?.add(&poly_eval(q, v)?)?;
    }
    if !acc.is_zero() {
        return Err(Error::UnverifiedInput);
    }
    let frame = BivariateFrame::new(cv.base().clone(), cv.coeffs().to_vec(), cu_coeffs.to_vec())?;
    let w = [(1usize, 0usize, frame.base.one())];
    charpoly_cert(&frame, &w, cv.algebra(), u.clone())
}

/// The action matrix of `u = sum a_{i+k} v^i` on the basis `v^0..v^{n-1}`,
/// read off the relation `sum a_i v^i = 0` (no monicity required).
pub(crate) fn truncation_matrix(base: &Ring, coeffs: &[Element], k: usize) -> Result<Matrix> {
    let n = coeffs.len() - 1;
    let mut rows = vec![vec![base.zero(); n]; n];
    for (s, row) in rows.iter_mut().enumerate() {
        if s < k {
            for i in 0..=n - k {
                row[i + s] = row[i + s].add(&coeffs[i + k])?;
            }
        } else {
            for i in 0..k {
                row[i + s - k] = row[i + s - k].sub(&coeffs[i])?;
            }
        }
    }
    Matrix::from_rows(base.clone(), rows)
}

/// Truncated-relation certificate: given `sum a_i v^i = 0` with `n >= 1`
/// and `k` in `0..=n`, certifies that `u = sum a_{i+k} v^i` is
/// `n`-integral over the base.
pub fn truncation_cert(
    base: &Ring,
    algebra: &Ring,
    v: &Element,
    coeffs: &[Element],
    k: usize,
) -> Result<RingCertificate> {
    if coeffs.len() < 2 {
        return Err(Error::MalformedCertificate("relation needs degree >= 1".into()));
    }
    let n = coeffs.len() - 1;
    if k > n {
        return Err(Error::BadIndex);
    }
    if v.ring() != algebra || coeffs.iter().any(|c| c.ring() != base) {
        return Err(Error::RingMismatch);
    }
    let rel = poly_eval(coeffs, v)?;
    if !rel.is_zero() {
        return Err(Error::RelationFailed(alloc::format!(
            "sum a_i v^i = {rel}, expected 0"
        )));
    }
    let u = poly_eval(&coeffs[k..], v)?;
    let action = truncation_matrix(base, coeffs, k)?;
    RingCertificate::new(base.clone(), algebra.clone(), u, action.charpoly()?)
}

/// Two-sided construction: from `u = sum s_i v^i` and
/// `u v^beta = sum t_i v^(beta-i)` derives a certificate for `u` of degree
/// exactly `alpha + beta`.
pub fn two_sided_cert(
    base: &Ring,
    algebra: &Ring,
    v: &Element,
    u: &Element,
    s: &[Element],
    t: &[Element],
) -> Result<RingCertificate> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::HypothesisFailed("empty coefficient list".into()));
    }
    let alpha = s.len() - 1;
    let beta = t.len() - 1;
    let n = alpha + beta;
    if n == 0 {
        return Err(Error::HypothesisFailed("alpha + beta must be >= 1".into()));
    }
    let sv = poly_eval(s, v)?;
    if sv != *u {
        return Err(Error::HypothesisFailed(alloc::format!(
            "sum s_i v^i = {sv} differs from u = {u}"
        )));
    }
    let mut tv = algebra.zero();
    for (i, ti) in t.iter().enumerate() {
        tv = tv.add(&embed(ti, algebra)?.mul(&v.pow((beta - i) as u64))?)?;
    }
    let uvb = u.mul(&v.pow(beta as u64))?;
    if tv != uvb {
        return Err(Error::HypothesisFailed(alloc::format!(
            "sum t_i v^(beta-i) = {tv} differs from u v^beta = {uvb}"
        )));
    }
    // a_i: t_{beta-i} below beta, t_0 - s_0 at beta, -s_{i-beta} above
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..=n {
        a.push(if i < beta {
            t[beta - i].clone()
        } else if i == beta {
            t[0].sub(&s[0])?
        } else {
            s[i - beta].neg()
        });
    }
    // truncation at k = beta annihilates t_0 - u; recenter by the scalar
    let c1 = truncation_cert(base, algebra, v, &a, beta)?;
    let recentred = negate_cert(&c1)?;
    sum_cert(&scalar_cert(base, algebra, &t[0])?, &recentred)
}

/// From `u = sum b_i v^i` and an `m`-certificate for the product `v*u`,
/// derives an `n*m`-certificate for `u` (the generalized inverse trick).
pub fn inverse_like_cert(
    base: &Ring,
    algebra: &Ring,
    v: &Element,
    b: &[Element],
    vu_cert: &RingCertificate,
) -> Result<RingCertificate> {
    if b.is_empty() {
        return Err(Error::HypothesisFailed("need n >= 1 coefficients".into()));
    }
    let n = b.len();
    if v.ring() != algebra || b.iter().any(|c| c.ring() != base) {
        return Err(Error::RingMismatch);
    }
    ensure_verified(vu_cert)?;
    let u = poly_eval(b, v)?;
    let vu = v.mul(&u)?;
    if vu != *vu_cert.element() {
        return Err(Error::HypothesisFailed(alloc::format!(
            "vu = {vu} differs from the certified element {}",
            vu_cert.element()
        )));
    }
    // relation over A[w] with w standing for vu: a_0 = -w, a_i = b_{i-1}
    let wvar = base.fresh_var("w");
    let aw = Ring::polynomial(base, &wvar)?;
    let mut rel = Vec::with_capacity(n + 1);
    rel.push(aw.var_elem()?.neg());
    for c in b {
        rel.push(embed(c, &aw)?);
    }
    let action = truncation_matrix(&aw, &rel, 1)?;
    let raw = action.charpoly()?;
    // read w at the concrete product: reduce mod the vu-relation, then chain
    let cu_coeffs = raw
        .into_iter()
        .map(|c| {
            let dense = c.coeffs_in_base()?;
            reduce_mod_monic(dense, vu_cert.coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    transitivity_cert(vu_cert, &u, &cu_coeffs)
}

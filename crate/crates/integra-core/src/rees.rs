//! Reductions between semifiltration-integrality and ring-integrality over
//! Rees algebras, and the combinators built on top of them.
//!
//! The forward map sends a witness `(a_0, ..., a_n)` for `u` over
//! `(A, (I_rho))` to the witness `p_k = a_k Y^(lambda (n-k))` for
//! `u Y^lambda` over the Rees algebra inside `A[Y]`; the backward map reads
//! each `a_k` off the `Y^(lambda (n-k))` coefficient of `p_k`. Sums,
//! products and transitivity over semifiltrations are obtained by lifting,
//! running the plain-ring transformer, and dropping back.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cert::{RingCertificate, SemifilCertificate, SfVerdict};
use crate::constructive::{product_cert, sum_cert, transitivity_cert, truncation_cert};
use crate::error::{Error, Result};
use crate::ideal::Membership;
use crate::ring::{embed, poly_eval, transpose_vars, Element, Ring};
use crate::semifil::{ReesHandle, Semifiltration};

/// Whether a combinator re-verifies its own output before returning.
/// `Check` is the default throughout the CLI; `Skip` exists for callers
/// that verify separately.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Paranoia {
    Check,
    Skip,
}

/// A certificate for `u * Y^lambda` over the Rees algebra of a
/// semifiltration: coefficients are polynomials in `Y`, each a member of
/// the Rees subring; an optional second semifiltration carries the
/// `J`-part constraints of the half-reduced form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReesCertificate {
    handle: ReesHandle,
    jpart: Option<Semifiltration>,
    algebra: Ring,
    element: Element,
    lambda: usize,
    coeffs: Vec<Element>,
}

impl ReesCertificate {
    pub fn new(
        handle: ReesHandle,
        jpart: Option<Semifiltration>,
        algebra: Ring,
        element: Element,
        lambda: usize,
        coeffs: Vec<Element>,
    ) -> Result<ReesCertificate> {
        let ambient = handle.ambient();
        if coeffs.is_empty() {
            return Err(Error::MalformedCertificate("empty coefficient list".into()));
        }
        if coeffs.iter().any(|c| c.ring() != &ambient) {
            return Err(Error::MalformedCertificate(
                "coefficient outside the Rees ambient ring".into(),
            ));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::MalformedCertificate("leading coefficient is not 1".into()));
        }
        if element.ring() != &algebra {
            return Err(Error::MalformedCertificate("element outside the algebra".into()));
        }
        if let Some(j) = &jpart {
            if j.ring() != handle.semifiltration().ring() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(ReesCertificate { handle, jpart, algebra, element, lambda, coeffs })
    }

    pub fn handle(&self) -> &ReesHandle {
        &self.handle
    }

    pub fn jpart(&self) -> Option<&Semifiltration> {
        self.jpart.as_ref()
    }

    pub fn algebra(&self) -> &Ring {
        &self.algebra
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The plain ring certificate over the ambient `A[Y]`: the element is
    /// `u * Y^lambda` in `B[Y]`.
    pub fn as_ring_certificate(&self) -> Result<RingCertificate> {
        let by = Ring::polynomial(&self.algebra, self.handle.var())?;
        let u = embed(&self.element, &by)?;
        let y = by.var_elem()?;
        let element = u.mul(&y.pow(self.lambda as u64))?;
        RingCertificate::new(self.handle.ambient(), by, element, self.coeffs.clone())
    }

    /// Full verification: the evaluation over `B[Y]` must vanish, every
    /// coefficient must be a Rees member, and (when a `J`-part is present)
    /// each `Y^i` coefficient of `p_k` must lie in `I_i J_{n-k}`.
    pub fn verify(&self) -> Result<SfVerdict> {
        match self.as_ring_certificate()?.verify()? {
            crate::cert::Verdict::Refuted(v) => {
                return Ok(SfVerdict::Refuted(format!("evaluation at u Y^lambda is nonzero: {v}")));
            }
            crate::cert::Verdict::Verified => {}
        }
        let n = self.degree();
        let mut abstained = false;
        for (k, p) in self.coeffs.iter().enumerate() {
            match self.handle.member(p)? {
                Membership::Member => {}
                Membership::Unknown => abstained = true,
                Membership::NotMember => {
                    return Ok(SfVerdict::Refuted(format!(
                        "coefficient p_{k} is not a member of the Rees algebra"
                    )));
                }
            }
            if let Some(j) = &self.jpart {
                let jideal = j.ideal_at(n - k)?;
                for (i, c) in p.coeffs_in_base()?.iter().enumerate() {
                    let slot = self.handle.semifiltration().ideal_at(i)?.product(&jideal)?;
                    match slot.membership(c)? {
                        Membership::Member => {}
                        Membership::Unknown => abstained = true,
                        Membership::NotMember => {
                            return Ok(SfVerdict::Refuted(format!(
                                "coefficient of Y^{i} in p_{k} escapes I_{i} J_{}",
                                n - k
                            )));
                        }
                    }
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

fn ensure_not_refuted(c: &SemifilCertificate) -> Result<()> {
    if c.verify()?.is_refuted() {
        Err(Error::UnverifiedInput)
    } else {
        Ok(())
    }
}

fn reverify(c: &SemifilCertificate, paranoia: Paranoia) -> Result<()> {
    if paranoia == Paranoia::Check {
        if let SfVerdict::Refuted(reason) = c.verify()? {
            return Err(Error::InternalVerificationFailed(reason));
        }
    }
    Ok(())
}

/// A `Y` name unused by the base ring, the algebra, and any extra names.
fn pick_var(base: &Ring, algebra: &Ring, extra: &[&str]) -> String {
    let mut used: Vec<String> = base.tower_vars();
    used.extend(algebra.tower_vars());
    used.extend(extra.iter().map(|s| s.to_string()));
    let mut cand = "Y".to_string();
    let mut i = 1usize;
    while used.iter().any(|v| v == &cand) {
        cand = format!("Y{i}");
        i += 1;
    }
    cand
}

fn lift_with(
    c: &SemifilCertificate,
    ipart: Semifiltration,
    jpart: Option<Semifiltration>,
    lambda: usize,
) -> Result<ReesCertificate> {
    ensure_not_refuted(c)?;
    let rc = c.ring_cert();
    let base = rc.base();
    let var = pick_var(base, rc.algebra(), &[]);
    let handle = ReesHandle::new(ipart, &var)?;
    let ambient = handle.ambient();
    let y = ambient.var_elem()?;
    let n = rc.degree();
    let coeffs = rc
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| embed(a, &ambient)?.mul(&y.pow((lambda * (n - k)) as u64)))
        .collect::<Result<Vec<_>>>()?;
    ReesCertificate::new(
        handle,
        jpart,
        rc.algebra().clone(),
        rc.element().clone(),
        lambda,
        coeffs,
    )
}

/// Forward reduction: a certificate over `(A, (I_rho))` becomes a
/// certificate for `uY` over the Rees algebra, via `p_k = a_k Y^(n-k)`.
pub fn lift(c: &SemifilCertificate) -> Result<ReesCertificate> {
    lift_with(c, c.semifiltration().clone(), None, 1)
}

/// Extracts `a_k` as the `Y^(lambda (n-k))` coefficient of `p_k`.
fn extract_coeffs(rees_coeffs: &[Element], lambda: usize) -> Result<Vec<Element>> {
    let n = rees_coeffs.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for (k, p) in rees_coeffs.iter().enumerate() {
        out.push(p.coeff_at(lambda * (n - k))?);
    }
    if !out.last().unwrap().is_one() {
        return Err(Error::NotMonicAfterExtraction);
    }
    Ok(out)
}

/// Backward reduction for `lambda = 1`: reads the certificate over
/// `target` off the `Y^(n-k)` coefficients.
pub fn drop(rc: &ReesCertificate, target: &Semifiltration) -> Result<SemifilCertificate> {
    if rc.lambda != 1 {
        return Err(Error::BadLambda);
    }
    drop_accel(rc, 1, target)
}

/// Backward reduction for a general acceleration exponent.
pub fn drop_accel(
    rc: &ReesCertificate,
    lambda: usize,
    target: &Semifiltration,
) -> Result<SemifilCertificate> {
    if rc.lambda != lambda {
        return Err(Error::BadLambda);
    }
    let base = rc.handle.semifiltration().ring().clone();
    if target.ring() != &base {
        return Err(Error::RingMismatch);
    }
    let coeffs = extract_coeffs(&rc.coeffs, lambda)?;
    SemifilCertificate::new(
        base,
        rc.algebra.clone(),
        rc.element.clone(),
        coeffs,
        target.clone(),
    )
}

/// Splits a product-rule semifiltration into its two factors.
fn split_product(sf: &Semifiltration) -> Result<(Semifiltration, Semifiltration)> {
    sf.product_parts().ok_or_else(|| {
        Error::HypothesisFailed("expected a product-rule semifiltration".into())
    })
}

fn strip_accel(sf: &Semifiltration, lambda: usize) -> Result<Semifiltration> {
    if lambda == 1 {
        return Ok(sf.clone());
    }
    sf.accel_inner(lambda).ok_or_else(|| {
        Error::HypothesisFailed(format!(
            "expected a semifiltration accelerated by lambda = {lambda}"
        ))
    })
}

/// Half-reduction forward: a certificate over `(A, (I_rho J_rho))` becomes
/// a certificate for `uY` over the `I`-Rees algebra whose coefficients
/// satisfy the extended `J` constraints.
pub fn lift_two(c: &SemifilCertificate) -> Result<ReesCertificate> {
    let (ipart, jpart) = split_product(c.semifiltration())?;
    lift_with(c, ipart, Some(jpart), 1)
}

/// Half-reduction backward: rebuilds the certificate over the product
/// semifiltration.
pub fn drop_two(rc: &ReesCertificate, target: &Semifiltration) -> Result<SemifilCertificate> {
    if rc.lambda != 1 {
        return Err(Error::BadLambda);
    }
    if rc.jpart.is_none() {
        return Err(Error::HypothesisFailed("certificate carries no J-part".into()));
    }
    drop_accel(rc, 1, target)
}

/// Accelerated forward reduction: a certificate over
/// `(A, (I_(lambda rho) J_rho))` (or `(A, (I_(lambda rho)))` when no
/// product is involved) becomes a certificate for `u Y^lambda` via
/// `p_k = a_k Y^(lambda (n-k))`.
pub fn lift_accel(c: &SemifilCertificate, lambda: usize) -> Result<ReesCertificate> {
    let (ipart, jpart) = match split_product(c.semifiltration()) {
        Ok((l, r)) => (strip_accel(&l, lambda)?, Some(r)),
        Err(_) => (strip_accel(c.semifiltration(), lambda)?, None),
    };
    lift_with(c, ipart, jpart, lambda)
}

/// Attaches the trivial semifiltration; membership checks become vacuous.
pub fn trivial_attach(c: &RingCertificate) -> Result<SemifilCertificate> {
    c.with_semifiltration(Semifiltration::trivial(c.base().clone()))
}

/// Detaches a trivial semifiltration, recovering the plain certificate.
pub fn trivial_detach(c: &SemifilCertificate) -> Result<RingCertificate> {
    if !c.semifiltration().is_trivial() {
        return Err(Error::HypothesisFailed("semifiltration is not the trivial one".into()));
    }
    Ok(c.forget_semifiltration())
}

/// Decision of 1-integrality over `(A, (I_rho))`: membership of `u * 1_B`
/// in the ideal generated by `I_1` inside `B`.
pub fn degree_one_test(
    base: &Ring,
    algebra: &Ring,
    sf: &Semifiltration,
    u: &Element,
) -> Result<Membership> {
    if sf.ring() != base || u.ring() != base {
        return Err(Error::RingMismatch);
    }
    let i1 = sf.ideal_at(1)?;
    if algebra == base {
        return i1.membership(u);
    }
    let gens = i1
        .generators()
        .iter()
        .map(|g| embed(g, algebra))
        .collect::<Result<Vec<_>>>()?;
    crate::ideal::Ideal::new(algebra.clone(), gens)?.membership(&embed(u, algebra)?)
}

fn common_context(cx: &SemifilCertificate, cy: &SemifilCertificate) -> Result<()> {
    if cx.ring_cert().base() != cy.ring_cert().base()
        || cx.ring_cert().algebra() != cy.ring_cert().algebra()
    {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Sum over a shared semifiltration: lift both, add over the Rees ring,
/// drop back. Output degree is exactly `deg(cx) * deg(cy)`.
pub fn semifil_sum(
    cx: &SemifilCertificate,
    cy: &SemifilCertificate,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    common_context(cx, cy)?;
    if cx.semifiltration() != cy.semifiltration() {
        return Err(Error::RingMismatch);
    }
    let rx = lift(cx)?.as_ring_certificate()?;
    let ry = lift(cy)?.as_ring_certificate()?;
    let s = sum_cert(&rx, &ry)?;
    let u = cx.ring_cert().element().add(cy.ring_cert().element())?;
    let out = SemifilCertificate::new(
        cx.ring_cert().base().clone(),
        cx.ring_cert().algebra().clone(),
        u,
        extract_coeffs(s.coeffs(), 1)?,
        cx.semifiltration().clone(),
    )?;
    reverify(&out, paranoia)?;
    Ok(out)
}

/// Mixed product: `x` integral over the semifiltration, `y` integral over
/// the plain ring. Output stays over `(A, (I_rho))`.
pub fn semifil_mixed_product(
    cx: &SemifilCertificate,
    cy: &RingCertificate,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    if cx.ring_cert().base() != cy.base() || cx.ring_cert().algebra() != cy.algebra() {
        return Err(Error::RingMismatch);
    }
    let rx = lift(cx)?.as_ring_certificate()?;
    // view the plain certificate over the Rees base (scalar extension)
    let cy_lifted = RingCertificate::new(
        rx.base().clone(),
        rx.algebra().clone(),
        embed(cy.element(), rx.algebra())?,
        cy.coeffs()
            .iter()
            .map(|c| embed(c, rx.base()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let p = product_cert(&rx, &cy_lifted)?;
    let u = cx.ring_cert().element().mul(cy.element())?;
    let out = SemifilCertificate::new(
        cx.ring_cert().base().clone(),
        cx.ring_cert().algebra().clone(),
        u,
        extract_coeffs(p.coeffs(), 1)?,
        cx.semifiltration().clone(),
    )?;
    reverify(&out, paranoia)?;
    Ok(out)
}

/// Product across two semifiltrations: the result lives over the product
/// semifiltration `(I_rho J_rho)`. Realized as a two-layer Rees pipeline
/// (one fresh variable per semifiltration).
pub fn semifil_product(
    cx: &SemifilCertificate,
    cy: &SemifilCertificate,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    common_context(cx, cy)?;
    ensure_not_refuted(cy)?;
    let base = cx.ring_cert().base().clone();
    let algebra = cx.ring_cert().algebra().clone();
    let rx = lift(cx)?.as_ring_certificate()?;
    // lift cy over a second variable, on top of the first Rees layer
    let zvar = pick_var(rx.base(), rx.algebra(), &[]);
    let ayz = Ring::polynomial(rx.base(), &zvar)?;
    let byz = Ring::polynomial(rx.algebra(), &zvar)?;
    let z = ayz.var_elem()?;
    let n = cy.degree();
    let cy_coeffs = cy
        .ring_cert()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| embed(a, &ayz)?.mul(&z.pow((n - k) as u64)))
        .collect::<Result<Vec<_>>>()?;
    let zy = byz.var_elem()?;
    let cy_elem = embed(cy.ring_cert().element(), &byz)?.mul(&zy)?;
    let ry = RingCertificate::new(ayz.clone(), byz.clone(), cy_elem, cy_coeffs)?;
    // the x-side certificate, viewed constant in the second variable
    let rx_up = RingCertificate::new(
        ayz.clone(),
        byz.clone(),
        embed(rx.element(), &byz)?,
        rx.coeffs()
            .iter()
            .map(|c| embed(c, &ayz))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let p = product_cert(&rx_up, &ry)?;
    // peel the two Rees layers in turn
    let once = extract_coeffs(p.coeffs(), 1)?;
    let twice = extract_coeffs(&once, 1)?;
    let u = cx.ring_cert().element().mul(cy.ring_cert().element())?;
    let target = Semifiltration::product(cx.semifiltration().clone(), cy.semifiltration().clone())?;
    let out = SemifilCertificate::new(base, algebra, u, twice, target)?;
    reverify(&out, paranoia)?;
    Ok(out)
}

/// Transitivity over a semifiltration: `cv` certifies `v` over `A`, `cu`
/// certifies `u` over `(A[v], (I_rho A[v]))` with coefficients reduced to
/// `v`-degree < deg(cv), given over the free polynomial ring `A[v]`.
/// Output lives over `(A, (I_rho))`.
pub fn semifil_transitivity(
    cv: &RingCertificate,
    cu: &SemifilCertificate,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    let a = cv.base().clone();
    let algebra = cv.algebra().clone();
    // cu's base must be the free polynomial ring A[vvar], its
    // semifiltration the extension of one over A
    let avx = cu.ring_cert().base().clone();
    let vvar = match avx.kind() {
        crate::ring::RingKind::Polynomial { base, var } if *base == a => var.clone(),
        _ => return Err(Error::RingMismatch),
    };
    let inner = cu
        .semifiltration()
        .extended_inner()
        .ok_or_else(|| Error::HypothesisFailed("expected an extended semifiltration".into()))?;
    if inner.ring() != &a {
        return Err(Error::RingMismatch);
    }
    if cu.ring_cert().algebra() != &algebra {
        return Err(Error::RingMismatch);
    }
    let m = cv.degree();
    let subst: BTreeMap<String, Element> =
        [(vvar.clone(), cv.element().clone())].into_iter().collect();
    if cu.verify_subst(&subst)?.is_refuted() {
        return Err(Error::UnverifiedInput);
    }
    if !cv.verify()?.is_verified() {
        return Err(Error::UnverifiedInput);
    }
    // lift: p_i = q_i(v) Y^(n-i) inside (A[Y])[v]
    let yvar = pick_var(&avx, &algebra, &[]);
    let avxy = Ring::polynomial(&avx, &yvar)?;
    let y = avxy.var_elem()?;
    let n = cu.degree();
    let mut tower_coeffs: Vec<Vec<Element>> = Vec::with_capacity(n + 1);
    for (i, q) in cu.ring_cert().coeffs().iter().enumerate() {
        if q.poly_degree()?.map(|d| d >= m).unwrap_or(false) {
            return Err(Error::CoefficientDegreeTooHigh);
        }
        let lifted = embed(q, &avxy)?.mul(&y.pow((n - i) as u64))?;
        // rewrite A[v][Y] as A[Y][v] and record the dense v-coefficients
        tower_coeffs.push(transpose_vars(&lifted)?.coeffs_in_base()?);
    }
    // cv over the Rees base A[Y], with the algebra extended to B[Y]
    let ay = Ring::polynomial(&a, &yvar)?;
    let by = Ring::polynomial(&algebra, &yvar)?;
    let cv_up = RingCertificate::new(
        ay.clone(),
        by.clone(),
        embed(cv.element(), &by)?,
        cv.coeffs()
            .iter()
            .map(|c| embed(c, &ay))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let uy = embed(cu.ring_cert().element(), &by)?.mul(&by.var_elem()?)?;
    let t = transitivity_cert(&cv_up, &uy, &tower_coeffs)?;
    let out = SemifilCertificate::new(
        a,
        algebra,
        cu.ring_cert().element().clone(),
        extract_coeffs(t.coeffs(), 1)?,
        inner,
    )?;
    reverify(&out, paranoia)?;
    Ok(out)
}

/// Truncation over a semifiltration: from `sum a_i v^i = 0` with
/// `a_i` in `I_(n-i)`, certifies `u = sum a_(i+k) v^i` over the
/// `(n-k)`-accelerated semifiltration.
pub fn semifil_truncation(
    base: &Ring,
    algebra: &Ring,
    sf: &Semifiltration,
    v: &Element,
    coeffs: &[Element],
    k: usize,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    if sf.ring() != base {
        return Err(Error::RingMismatch);
    }
    if coeffs.len() < 2 {
        return Err(Error::MalformedCertificate("relation needs degree >= 1".into()));
    }
    let n = coeffs.len() - 1;
    if k > n {
        return Err(Error::BadIndex);
    }
    // membership hypotheses a_i in I_(n-i); an abstaining oracle is fine
    for (i, a) in coeffs.iter().enumerate() {
        if sf.ideal_at(n - i)?.membership(a)? == Membership::NotMember {
            return Err(Error::HypothesisFailed(format!(
                "coefficient a_{i} is not a member of I_{}",
                n - i
            )));
        }
    }
    let yvar = pick_var(base, algebra, &[]);
    let ay = Ring::polynomial(base, &yvar)?;
    let by = Ring::polynomial(algebra, &yvar)?;
    let yb = by.var_elem()?;
    let ya = ay.var_elem()?;
    let v_rees = embed(v, &by)?.mul(&yb)?;
    let lifted = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| embed(a, &ay)?.mul(&ya.pow((n - i) as u64)))
        .collect::<Result<Vec<_>>>()?;
    let c1 = truncation_cert(&ay, &by, &v_rees, &lifted, k)?;
    let lambda = n - k;
    let u = poly_eval(&coeffs[k..], v)?;
    let out = SemifilCertificate::new(
        base.clone(),
        algebra.clone(),
        u,
        extract_coeffs(c1.coeffs(), lambda)?,
        Semifiltration::accelerated(sf.clone(), lambda),
    )?;
    reverify(&out, paranoia)?;
    Ok(out)
}

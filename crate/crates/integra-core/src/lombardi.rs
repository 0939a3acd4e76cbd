//! The joint-integrality machinery: a terminating rewriting engine over
//! the mixed monomial basis, its certificate constructor, and the derived
//! theorems (`u` integral over `A[x]` and `A[y]` with `xy` scalar, or
//! formal, or relative to a semifiltration).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cert::{RingCertificate, SemifilCertificate};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rees::Paranoia;
use crate::ring::{embed, eval_subst, transpose_vars, Element, Ring, RingKind};
use crate::semifil::Semifiltration;

type Coeffs = BTreeMap<(usize, usize), Element>;

/// Sparse relation data: `(u-exponent, x-exponent, coefficient)` triples.
pub type RelTriples = Vec<(usize, usize, Element)>;

/// Explicit coefficient data realizing the two module-membership
/// hypotheses
///
/// ```text
/// u^n       = sum c_(i,j) u^i x^j   (i < n, j <= nu)
/// u^m x^mu  = sum d_(i,j) u^i x^j   ((i < m, j <= mu) or (i <= m, j < mu))
/// ```
///
/// with `mu + nu >= 1`. The witness pins `u` as `(n mu + m nu)`-integral.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipWitness {
    base: Ring,
    n: usize,
    m: usize,
    mu: usize,
    nu: usize,
    rel1: Coeffs,
    rel2: Coeffs,
}

fn collect_rel(
    base: &Ring,
    triples: Vec<(usize, usize, Element)>,
    ok: impl Fn(usize, usize) -> bool,
    which: &str,
) -> Result<Coeffs> {
    let mut out = Coeffs::new();
    for (i, j, c) in triples {
        if !ok(i, j) {
            return Err(Error::InvalidWitness(format!(
                "{which} index ({i}, {j}) outside the allowed range"
            )));
        }
        if c.ring() != base {
            return Err(Error::RingMismatch);
        }
        let entry = match out.remove(&(i, j)) {
            Some(prev) => prev.add(&c)?,
            None => c,
        };
        out.insert((i, j), entry);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

impl MembershipWitness {
    pub fn new(
        base: Ring,
        n: usize,
        m: usize,
        mu: usize,
        nu: usize,
        rel1: Vec<(usize, usize, Element)>,
        rel2: Vec<(usize, usize, Element)>,
    ) -> Result<MembershipWitness> {
        if mu + nu == 0 {
            return Err(Error::InvalidWitness("mu + nu must be positive".into()));
        }
        let rel1 = collect_rel(&base, rel1, |i, j| i < n && j <= nu, "rel1")?;
        let rel2 = collect_rel(
            &base,
            rel2,
            |i, j| (i < m && j <= mu) || (i <= m && j < mu),
            "rel2",
        )?;
        Ok(MembershipWitness { base, n, m, mu, nu, rel1, rel2 })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn exponents(&self) -> (usize, usize, usize, usize) {
        (self.n, self.m, self.mu, self.nu)
    }

    pub fn rel1(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        self.rel1.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn rel2(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        self.rel2.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// The mixed monomial basis
    /// `S = ({0..n} x {0..mu}) u ({0..m} x {mu..mu+nu})`, enumerated in
    /// lexicographic order; `|S| = n mu + m nu`.
    pub fn basis(&self) -> Vec<(usize, usize)> {
        let mut s = Vec::with_capacity(self.n * self.mu + self.m * self.nu);
        for i in 0..self.n.max(self.m) {
            for j in 0..self.mu + self.nu {
                if self.in_basis(i, j) {
                    s.push((i, j));
                }
            }
        }
        s
    }

    fn in_basis(&self, i: usize, j: usize) -> bool {
        (i < self.n && j < self.mu) || (i < self.m && self.mu <= j && j < self.mu + self.nu)
    }

    /// Expresses `u^i x^j` on the basis by the two rewriting rules:
    /// high `u`-powers fall to `rel1`, high mixed powers to `rel2`; every
    /// rewriting step is lexicographically decreasing in `(i, j)`, so the
    /// worklist terminates.
    pub fn normal_form(&self, i: usize, j: usize) -> Result<Coeffs> {
        if j >= self.mu + self.nu {
            return Err(Error::IndexOutOfRange);
        }
        let mut acc = Coeffs::new();
        let mut pending = Coeffs::new();
        pending.insert((i, j), self.base.one());
        while let Some(((pi, pj), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            if self.in_basis(pi, pj) {
                merge(&mut acc, (pi, pj), c)?;
            } else if pi >= self.m && pj >= self.mu {
                for (&(di, dj), d) in &self.rel2 {
                    let key = (pi - self.m + di, pj - self.mu + dj);
                    debug_assert!(key < (pi, pj));
                    merge(&mut pending, key, c.mul(d)?)?;
                }
            } else {
                // not basic and pj < mu forces pi >= n
                debug_assert!(pi >= self.n && pj < self.mu);
                for (&(ci, cj), d) in &self.rel1 {
                    let key = (pi - self.n + ci, pj + cj);
                    debug_assert!(key < (pi, pj));
                    merge(&mut pending, key, c.mul(d)?)?;
                }
            }
        }
        Ok(acc)
    }

    /// Checks both relations at concrete `u`, `x` (coefficients read
    /// through `subst` when the base has formal variables).
    pub fn check_model(
        &self,
        u: &Element,
        x: &Element,
        subst: &BTreeMap<String, Element>,
    ) -> Result<()> {
        let algebra = u.ring();
        if x.ring() != algebra {
            return Err(Error::RingMismatch);
        }
        let eval = |rel: &Coeffs| -> Result<Element> {
            let mut acc = algebra.zero();
            for (&(i, j), c) in rel {
                let term = eval_subst(c, subst, algebra)?
                    .mul(&u.pow(i as u64))?
                    .mul(&x.pow(j as u64))?;
                acc = acc.add(&term)?;
            }
            Ok(acc)
        };
        let lhs1 = u.pow(self.n as u64);
        let rhs1 = eval(&self.rel1)?;
        if lhs1 != rhs1 {
            return Err(Error::RelationFailed(format!(
                "u^n = {lhs1} but rel1 evaluates to {rhs1}"
            )));
        }
        let lhs2 = u.pow(self.m as u64).mul(&x.pow(self.mu as u64))?;
        let rhs2 = eval(&self.rel2)?;
        if lhs2 != rhs2 {
            return Err(Error::RelationFailed(format!(
                "u^m x^mu = {lhs2} but rel2 evaluates to {rhs2}"
            )));
        }
        Ok(())
    }

    /// The action matrix of `u` on the basis, one `normal_form(i+1, j)`
    /// per basis monomial.
    pub fn action_matrix(&self) -> Result<Matrix> {
        let basis = self.basis();
        let index: BTreeMap<(usize, usize), usize> =
            basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let mut rows = Vec::with_capacity(basis.len());
        for &(i, j) in &basis {
            let nf = self.normal_form(i + 1, j)?;
            let mut row = alloc::vec![self.base.zero(); basis.len()];
            for ((bi, bj), c) in nf {
                row[index[&(bi, bj)]] = c;
            }
            rows.push(row);
        }
        Matrix::from_rows(self.base.clone(), rows)
    }

    /// The certificate of degree exactly `n mu + m nu` for `u`, after
    /// checking both relations in the model.
    pub fn to_certificate(&self, u: &Element, x: &Element) -> Result<RingCertificate> {
        self.to_certificate_subst(u, x, &BTreeMap::new())
    }

    pub fn to_certificate_subst(
        &self,
        u: &Element,
        x: &Element,
        subst: &BTreeMap<String, Element>,
    ) -> Result<RingCertificate> {
        self.check_model(u, x, subst)?;
        let coeffs = self.action_matrix()?.charpoly()?;
        RingCertificate::new(self.base.clone(), u.ring().clone(), u.clone(), coeffs)
    }
}

fn merge(map: &mut Coeffs, key: (usize, usize), c: Element) -> Result<()> {
    let entry = match map.remove(&key) {
        Some(prev) => prev.add(&c)?,
        None => c,
    };
    if !entry.is_zero() {
        map.insert(key, entry);
    }
    Ok(())
}

/// Converts a `y`-side membership relation (`u^m` expressed through powers
/// of `y`) into the `x`-side relation required by the witness, using
/// `x y = c`: a term `a y^j` contributes `a c^j` on `x^(mu - j)`.
pub fn adapt_y_to_x(
    y_rel: &[(usize, usize, Element)],
    m: usize,
    mu: usize,
    c: &Element,
) -> Result<RelTriples> {
    let mut out = Vec::with_capacity(y_rel.len());
    for (i, j, a) in y_rel {
        let valid = (*i < m && *j <= mu) || (*i <= m && (1..=mu).contains(j));
        if !valid {
            return Err(Error::InvalidWitness(format!(
                "y-relation index ({i}, {j}) outside the allowed range"
            )));
        }
        if a.ring() != c.ring() {
            return Err(Error::RingMismatch);
        }
        out.push((*i, mu - j, a.mul(&c.pow(*j as u64))?));
    }
    Ok(out)
}

/// Reads a certificate of `u` over `A[x]` (base ring a free polynomial
/// layer) into Lemma-20 form: returns `nu >= 1` and the `rel1` triples of
/// `u^n = sum c_(i,j) u^i x^j`.
pub fn extract_nu(cert: &RingCertificate, x: &Element) -> Result<(usize, RelTriples)> {
    let xvar = match cert.base().kind() {
        RingKind::Polynomial { var, .. } => var.clone(),
        _ => return Err(Error::RingMismatch),
    };
    let subst: BTreeMap<String, Element> = [(xvar, x.clone())].into_iter().collect();
    if !cert.verify_subst(&subst)?.is_verified() {
        return Err(Error::UnverifiedInput);
    }
    let n = cert.degree();
    let mut nu = 1usize;
    for alpha in &cert.coeffs()[..n] {
        if let Some(d) = alpha.poly_degree()? {
            nu = nu.max(d);
        }
    }
    let mut rel1 = Vec::new();
    for (i, alpha) in cert.coeffs()[..n].iter().enumerate() {
        for (j, c) in alpha.coeffs_in_base()?.into_iter().enumerate() {
            if !c.is_zero() {
                rel1.push((i, j, c.neg()));
            }
        }
    }
    Ok((nu, rel1))
}

fn split_free_base(cert: &RingCertificate) -> Result<(Ring, String)> {
    match cert.base().kind() {
        RingKind::Polynomial { base, var } => Ok((base.clone(), var.clone())),
        _ => Err(Error::RingMismatch),
    }
}

/// Joint integrality with a scalar product: `u` integral over `A[x]` and
/// over `A[y]`, and `x y = c` in `A`, give a certificate for `u` over `A`
/// of degree exactly `n mu + m nu`.
pub fn joint_cert(
    cx: &RingCertificate,
    cy: &RingCertificate,
    x: &Element,
    y: &Element,
    xy_value: &Element,
) -> Result<RingCertificate> {
    let (a, _) = split_free_base(cx)?;
    let (a2, _) = split_free_base(cy)?;
    if a != a2 || cx.algebra() != cy.algebra() || cx.element() != cy.element() {
        return Err(Error::RingMismatch);
    }
    if xy_value.ring() != &a {
        return Err(Error::RingMismatch);
    }
    let algebra = cx.algebra();
    if x.ring() != algebra || y.ring() != algebra {
        return Err(Error::RingMismatch);
    }
    if x.mul(y)? != embed(xy_value, algebra)? {
        return Err(Error::HypothesisFailed("x y differs from the declared scalar".into()));
    }
    let (nu, rel1) = extract_nu(cx, x)?;
    let (mu, y_rel) = extract_nu(cy, y)?;
    let n = cx.degree();
    let m = cy.degree();
    let rel2 = adapt_y_to_x(&y_rel, m, mu, xy_value)?;
    let witness = MembershipWitness::new(a, n, m, mu, nu, rel1, rel2)?;
    witness.to_certificate(cx.element(), x)
}

/// Joint integrality over `A[xy]`: like [`joint_cert`] but with the
/// product kept formal. The output certificate lives over the free
/// polynomial ring `A[t]`, to be read through `t -> xy`.
pub fn product_base_cert(
    cx: &RingCertificate,
    cy: &RingCertificate,
    x: &Element,
    y: &Element,
    tvar: &str,
) -> Result<RingCertificate> {
    let (a, _) = split_free_base(cx)?;
    let (a2, _) = split_free_base(cy)?;
    if a != a2 || cx.algebra() != cy.algebra() || cx.element() != cy.element() {
        return Err(Error::RingMismatch);
    }
    let algebra = cx.algebra();
    if x.ring() != algebra || y.ring() != algebra {
        return Err(Error::RingMismatch);
    }
    let (nu, rel1) = extract_nu(cx, x)?;
    let (mu, y_rel) = extract_nu(cy, y)?;
    let n = cx.degree();
    let m = cy.degree();
    let c_ring = Ring::polynomial(&a, tvar)?;
    let t = c_ring.var_elem()?;
    let rel1 = rel1
        .into_iter()
        .map(|(i, j, c)| Ok((i, j, embed(&c, &c_ring)?)))
        .collect::<Result<Vec<_>>>()?;
    let y_rel = y_rel
        .into_iter()
        .map(|(i, j, c)| Ok((i, j, embed(&c, &c_ring)?)))
        .collect::<Result<Vec<_>>>()?;
    let rel2 = adapt_y_to_x(&y_rel, m, mu, &t)?;
    let witness = MembershipWitness::new(c_ring, n, m, mu, nu, rel1, rel2)?;
    let subst: BTreeMap<String, Element> =
        [(tvar.into(), x.mul(y)?)].into_iter().collect();
    witness.to_certificate_subst(cx.element(), x, &subst)
}

/// The relative version: both inputs are certificates over extended
/// semifiltrations `(A[x], (I_rho A[x]))` resp. `(A[y], (I_rho A[y]))`;
/// the output certifies `u` over `(A[t], (I_rho A[t]))` with the reading
/// `t -> xy`. Realized by lifting both sides to `uY` certificates over
/// `(A[Y])[x]` resp. `(A[Y])[y]`, running [`product_base_cert`] over the
/// Rees base, and extracting the `Y`-diagonal.
pub fn relative_joint_cert(
    cx: &SemifilCertificate,
    cy: &SemifilCertificate,
    x: &Element,
    y: &Element,
    tvar: &str,
    paranoia: Paranoia,
) -> Result<SemifilCertificate> {
    let (a, xvar) = split_free_base(cx.ring_cert())?;
    let (a2, yvar) = split_free_base(cy.ring_cert())?;
    if a != a2
        || cx.ring_cert().algebra() != cy.ring_cert().algebra()
        || cx.ring_cert().element() != cy.ring_cert().element()
    {
        return Err(Error::RingMismatch);
    }
    let inner = cx
        .semifiltration()
        .extended_inner()
        .ok_or_else(|| Error::HypothesisFailed("expected an extended semifiltration".into()))?;
    let inner_y = cy
        .semifiltration()
        .extended_inner()
        .ok_or_else(|| Error::HypothesisFailed("expected an extended semifiltration".into()))?;
    if inner != inner_y || inner.ring() != &a {
        return Err(Error::HypothesisFailed(
            "the two sides extend different semifiltrations".into(),
        ));
    }
    let algebra = cx.ring_cert().algebra().clone();
    let sx: BTreeMap<String, Element> = [(xvar.clone(), x.clone())].into_iter().collect();
    let sy: BTreeMap<String, Element> = [(yvar.clone(), y.clone())].into_iter().collect();
    if cx.verify_subst(&sx)?.is_refuted() || cy.verify_subst(&sy)?.is_refuted() {
        return Err(Error::UnverifiedInput);
    }
    // one shared Rees variable, fresh across everything in sight
    let taken: Vec<&str> = alloc::vec![xvar.as_str(), yvar.as_str(), tvar];
    let yv = {
        let mut used: Vec<String> = a.tower_vars();
        used.extend(algebra.tower_vars());
        used.extend(taken.iter().map(|s| String::from(*s)));
        let mut cand = String::from("Y");
        let mut i = 1usize;
        while used.iter().any(|v| v == &cand) {
            cand = format!("Y{i}");
            i += 1;
        }
        cand
    };
    let ay = Ring::polynomial(&a, &yv)?;
    let by = Ring::polynomial(&algebra, &yv)?;
    let lift_side = |c: &SemifilCertificate, var: &str| -> Result<RingCertificate> {
        let n = c.degree();
        let up = Ring::polynomial(c.ring_cert().base(), &yv)?;
        let yup = up.var_elem()?;
        let base = Ring::polynomial(&ay, var)?;
        let mut coeffs = Vec::with_capacity(n + 1);
        for (i, q) in c.ring_cert().coeffs().iter().enumerate() {
            let lifted = embed(q, &up)?.mul(&yup.pow((n - i) as u64))?;
            coeffs.push(embed(&transpose_vars(&lifted)?, &base)?);
        }
        let uy = embed(c.ring_cert().element(), &by)?.mul(&by.var_elem()?)?;
        RingCertificate::new(base, by.clone(), uy, coeffs)
    };
    let cx_up = lift_side(cx, &xvar)?;
    let cy_up = lift_side(cy, &yvar)?;
    let p = product_base_cert(&cx_up, &cy_up, &embed(x, &by)?, &embed(y, &by)?, tvar)?;
    // coefficients live in (A[Y])[t]; swap to (A[t])[Y] and read the diagonal
    let at = Ring::polynomial(&a, tvar)?;
    let deg = p.degree();
    let mut coeffs = Vec::with_capacity(deg + 1);
    for (k, r) in p.coeffs().iter().enumerate() {
        let swapped = transpose_vars(r)?;
        let c = swapped.coeff_at(deg - k)?;
        coeffs.push(embed(&c, &at)?);
    }
    if !coeffs.last().unwrap().is_one() {
        return Err(Error::NotMonicAfterExtraction);
    }
    let target = Semifiltration::extended(inner, at.clone())?;
    let out = SemifilCertificate::new(
        at,
        algebra,
        cx.ring_cert().element().clone(),
        coeffs,
        target,
    )?;
    if paranoia == Paranoia::Check {
        let subst: BTreeMap<String, Element> =
            [(String::from(tvar), x.mul(y)?)].into_iter().collect();
        if let crate::cert::SfVerdict::Refuted(reason) = out.verify_subst(&subst)? {
            return Err(Error::InternalVerificationFailed(reason));
        }
    }
    Ok(out)
}

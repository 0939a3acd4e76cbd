//! Rees lifts and drops (round-trip exactness), and the semifiltration
//! combinators built on them.

use integra_core::constructive::{product_cert, scalar_cert, sum_cert, truncation_cert};
use integra_core::rees::{
    degree_one_test, drop, drop_accel, drop_two, lift, lift_accel, lift_two, semifil_mixed_product,
    semifil_product, semifil_sum, semifil_transitivity, semifil_truncation, trivial_attach,
    trivial_detach, Paranoia, ReesCertificate,
};
use integra_core::{
    Element, Ideal, Membership, ReesHandle, Ring, RingCertificate, SemifilCertificate,
    Semifiltration, SfVerdict,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn z() -> Ring {
    Ring::integers()
}

fn ints(ring: &Ring, cs: &[i64]) -> Vec<Element> {
    cs.iter().map(|&c| ring.from_int(c)).collect()
}

fn principal(ring: &Ring, g: i64) -> Ideal {
    Ideal::new(ring.clone(), vec![ring.from_int(g)]).unwrap()
}

fn pow2() -> Semifiltration {
    Semifiltration::powers(principal(&z(), 2)).unwrap()
}

/// The running example: u = 2 over (Z, (2^rho)) with witness X - 2.
fn base_example() -> SemifilCertificate {
    SemifilCertificate::new(z(), z(), z().from_int(2), ints(&z(), &[-2, 1]), pow2()).unwrap()
}

#[test]
fn lift_builds_the_translated_witness() {
    let rc = lift(&base_example()).unwrap();
    let ay = rc.handle().ambient();
    let y = ay.var_elem().unwrap();
    assert_eq!(rc.lambda(), 1);
    assert_eq!(rc.coeffs()[0], y.mul(&ay.from_int(-2)).unwrap());
    assert!(rc.coeffs()[1].is_one());
    assert_eq!(rc.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn lift_on_the_trivial_semifiltration() {
    let sf = Semifiltration::trivial(z());
    let c = SemifilCertificate::new(z(), z(), z().from_int(5), ints(&z(), &[-5, 1]), sf).unwrap();
    let rc = lift(&c).unwrap();
    assert_eq!(rc.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn lift_of_zero() {
    let sf = pow2();
    let c = SemifilCertificate::new(z(), z(), z().zero(), ints(&z(), &[0, 1]), sf).unwrap();
    let rc = lift(&c).unwrap();
    assert!(rc.coeffs()[0].is_zero());
    assert!(rc.coeffs()[1].is_one());
}

#[test]
fn drop_inverts_lift() {
    let c = base_example();
    let rc = lift(&c).unwrap();
    let back = drop(&rc, c.semifiltration()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn drop_reads_only_the_diagonal_coefficient() {
    // noise away from the Y^(n-k) slot does not corrupt extraction
    let sf = pow2();
    let h = ReesHandle::new(sf.clone(), "Y").unwrap();
    let ay = h.ambient();
    let p0 = ay
        .poly_from_coeffs(ints(&z(), &[0, -2, 0, 4]))
        .unwrap(); // -2Y + 4Y^3
    let rc = ReesCertificate::new(h, None, z(), z().from_int(2), 1, vec![p0, ay.one()]).unwrap();
    let dropped = drop(&rc, &sf).unwrap();
    assert_eq!(dropped.ring_cert().coeffs(), &ints(&z(), &[-2, 1])[..]);
    assert_eq!(dropped.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn drop_of_zero_certificate() {
    let sf = pow2();
    let c = SemifilCertificate::new(z(), z(), z().zero(), ints(&z(), &[0, 0, 1]), sf.clone())
        .unwrap();
    let back = drop(&lift(&c).unwrap(), &sf).unwrap();
    assert_eq!(back.ring_cert().coeffs(), &ints(&z(), &[0, 0, 1])[..]);
}

fn random_semifil_cert(rng: &mut StdRng) -> SemifilCertificate {
    // certificates whose roots all lie in I_1, so coefficients lie in the
    // right slots automatically
    let kind = rng.gen_range(0usize..3);
    let (sf, gen1) = match kind {
        0 => {
            let g = rng.gen_range(2i64..=5);
            (Semifiltration::powers(principal(&z(), g)).unwrap(), g)
        }
        1 => {
            let g = rng.gen_range(2i64..=4);
            let h = rng.gen_range(2i64..=4);
            (
                Semifiltration::product(
                    Semifiltration::powers(principal(&z(), g)).unwrap(),
                    Semifiltration::powers(principal(&z(), h)).unwrap(),
                )
                .unwrap(),
                g * h,
            )
        }
        _ => {
            let g = rng.gen_range(2i64..=3);
            let lambda = rng.gen_range(1usize..=2);
            (
                Semifiltration::accelerated(
                    Semifiltration::powers(principal(&z(), g)).unwrap(),
                    lambda,
                ),
                g.pow(lambda as u32),
            )
        }
    };
    let deg = rng.gen_range(1usize..=3);
    let roots: Vec<i64> = (0..deg).map(|_| gen1 * rng.gen_range(-3i64..=3)).collect();
    SemifilCertificate::new(z(), z(), z().from_int(roots[0]), expand_roots(&roots), sf).unwrap()
}

/// Lowest-first coefficients of prod (X - r_i) over the integers.
fn expand_roots(roots: &[i64]) -> Vec<Element> {
    let mut acc = vec![z().one()];
    for &r in roots {
        let mut next = vec![z().zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c).unwrap();
            next[i] = next[i].add(&c.mul(&z().from_int(-r)).unwrap()).unwrap();
        }
        acc = next;
    }
    acc
}

#[test]
fn random_round_trips_are_exact() {
    let mut rng = StdRng::seed_from_u64(50);
    for _ in 0..120 {
        let c = random_semifil_cert(&mut rng);
        assert!(!c.verify().unwrap().is_refuted(), "generator produced a bad certificate");
        let rc = lift(&c).unwrap();
        assert_eq!(drop(&rc, c.semifiltration()).unwrap(), c);
    }
}

#[test]
fn accel_round_trips_for_small_lambda() {
    let mut rng = StdRng::seed_from_u64(51);
    for lambda in 0usize..=3 {
        for _ in 0..30 {
            let g = rng.gen_range(2i64..=3);
            let inner = Semifiltration::powers(principal(&z(), g)).unwrap();
            let sf = Semifiltration::accelerated(inner, lambda);
            let deg = rng.gen_range(1usize..=3);
            let step = g.pow(lambda as u32);
            let roots: Vec<i64> = (0..deg).map(|_| step * rng.gen_range(-2i64..=2)).collect();
            let c = SemifilCertificate::new(
                z(),
                z(),
                z().from_int(roots[0]),
                expand_roots(&roots),
                sf.clone(),
            )
            .unwrap();
            let rc = lift_accel(&c, lambda).unwrap();
            assert_eq!(rc.lambda(), lambda);
            let back = drop_accel(&rc, lambda, &sf).unwrap();
            assert_eq!(back.ring_cert().coeffs(), c.ring_cert().coeffs());
            assert_eq!(back, c);
        }
    }
}

#[test]
fn accel_lift_forms_the_monomial_coefficients() {
    // lambda = 2, I = powers of 2, u = 4, witness X - 4 over (I_(2 rho))
    let inner = pow2();
    let sf = Semifiltration::accelerated(inner, 2);
    let c = SemifilCertificate::new(z(), z(), z().from_int(4), ints(&z(), &[-4, 1]), sf.clone())
        .unwrap();
    let rc = lift_accel(&c, 2).unwrap();
    let ay = rc.handle().ambient();
    let y = ay.var_elem().unwrap();
    assert_eq!(rc.coeffs()[0], y.pow(2).mul(&ay.from_int(-4)).unwrap());
    assert_eq!(rc.verify().unwrap(), SfVerdict::Verified);
    assert_eq!(drop_accel(&rc, 2, &sf).unwrap(), c);
}

#[test]
fn accel_lambda_zero_keeps_constants() {
    let inner = pow2();
    let sf = Semifiltration::accelerated(inner, 0);
    let c = SemifilCertificate::new(z(), z(), z().from_int(7), ints(&z(), &[-7, 1]), sf.clone())
        .unwrap();
    let rc = lift_accel(&c, 0).unwrap();
    assert_eq!(rc.lambda(), 0);
    let consts = rc.coeffs();
    assert_eq!(consts[0].coeff_at(0).unwrap(), z().from_int(-7));
    assert_eq!(consts[0].poly_degree().unwrap(), Some(0));
    assert_eq!(drop_accel(&rc, 0, &sf).unwrap(), c);
}

#[test]
fn lambda_mismatch_is_rejected() {
    let rc = lift(&base_example()).unwrap();
    assert!(matches!(
        drop_accel(&rc, 2, &pow2()),
        Err(integra_core::Error::BadLambda)
    ));
}

#[test]
fn two_semifiltration_lift_round_trip() {
    let prod = Semifiltration::product(
        pow2(),
        Semifiltration::powers(principal(&z(), 3)).unwrap(),
    )
    .unwrap();
    let c = SemifilCertificate::new(z(), z(), z().from_int(6), ints(&z(), &[-6, 1]), prod).unwrap();
    let rc = lift_two(&c).unwrap();
    // b_0 = -6Y must be a member of J_1 * A_[I] (checked by verify)
    assert_eq!(rc.verify().unwrap(), SfVerdict::Verified);
    let back = drop_two(&rc, c.semifiltration()).unwrap();
    assert_eq!(back, c);
    // the same certificate also reduces J-free, treating the whole
    // product as the I-part
    let rc7 = lift(&c).unwrap();
    assert_eq!(rc7.verify().unwrap(), SfVerdict::Verified);
    assert_eq!(drop(&rc7, c.semifiltration()).unwrap(), c);
}

#[test]
fn lift_two_requires_a_product() {
    assert!(lift_two(&base_example()).is_err());
}

#[test]
fn lift_two_with_trivial_jpart_mirrors_plain_lift() {
    let prod = Semifiltration::product(pow2(), Semifiltration::trivial(z())).unwrap();
    let c = SemifilCertificate::new(z(), z(), z().from_int(2), ints(&z(), &[-2, 1]), prod).unwrap();
    let rc2 = lift_two(&c).unwrap();
    let rc7 = lift(&c).unwrap();
    // same monomial coefficients; only the recorded J-part differs
    assert_eq!(rc2.coeffs()[0].coeff_at(1).unwrap(), z().from_int(-2));
    assert_eq!(rc2.verify().unwrap(), SfVerdict::Verified);
    assert_eq!(rc7.verify().unwrap(), SfVerdict::Verified);
    assert_eq!(drop_two(&rc2, c.semifiltration()).unwrap(), c);
}

#[test]
fn semifil_product_with_trivial_right_matches_mixed() {
    // multiplying against a trivial-semifiltration certificate agrees with
    // the mixed product up to the recorded semifiltration
    let cx = base_example();
    let cy_plain = scalar_cert(&z(), &z(), &z().from_int(3)).unwrap();
    let cy = cy_plain
        .with_semifiltration(Semifiltration::trivial(z()))
        .unwrap();
    let full = semifil_product(&cx, &cy, Paranoia::Check).unwrap();
    let mixed = semifil_mixed_product(&cx, &cy_plain, Paranoia::Check).unwrap();
    assert_eq!(full.ring_cert().coeffs(), mixed.ring_cert().coeffs());
    assert_eq!(full.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_sum_of_two_and_two() {
    let c = base_example();
    let s = semifil_sum(&c, &c, Paranoia::Check).unwrap();
    assert_eq!(s.degree(), 1);
    assert_eq!(s.ring_cert().coeffs(), &ints(&z(), &[-4, 1])[..]);
    assert_eq!(s.ring_cert().element(), &z().from_int(4));
    assert_eq!(s.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_sum_with_zero() {
    let c = base_example();
    let zero =
        SemifilCertificate::new(z(), z(), z().zero(), ints(&z(), &[0, 1]), pow2()).unwrap();
    let s = semifil_sum(&c, &zero, Paranoia::Check).unwrap();
    assert_eq!(s.ring_cert().element(), &z().from_int(2));
    assert_eq!(s.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_sum_matches_plain_sum_on_trivial() {
    let sf = Semifiltration::trivial(z());
    let cx = SemifilCertificate::new(z(), z(), z().from_int(3), ints(&z(), &[-3, 1]), sf.clone())
        .unwrap();
    let cy = SemifilCertificate::new(z(), z(), z().from_int(5), ints(&z(), &[-5, 1]), sf).unwrap();
    let s = semifil_sum(&cx, &cy, Paranoia::Check).unwrap();
    let plain = sum_cert(&trivial_detach(&cx).unwrap(), &trivial_detach(&cy).unwrap()).unwrap();
    assert_eq!(s.ring_cert().coeffs(), plain.coeffs());
    // and attach/detach is the identity
    let reattached = trivial_attach(&plain).unwrap();
    assert_eq!(trivial_detach(&reattached).unwrap(), plain);
}

#[test]
fn semifil_mixed_product_example() {
    let cx = base_example();
    let cy = scalar_cert(&z(), &z(), &z().from_int(3)).unwrap();
    let p = semifil_mixed_product(&cx, &cy, Paranoia::Check).unwrap();
    assert_eq!(p.degree(), 1);
    assert_eq!(p.ring_cert().coeffs(), &ints(&z(), &[-6, 1])[..]);
    assert_eq!(p.ring_cert().element(), &z().from_int(6));
    assert_eq!(p.verify().unwrap(), SfVerdict::Verified);

    // multiplying by the scalar one keeps the element
    let one = scalar_cert(&z(), &z(), &z().one()).unwrap();
    let p1 = semifil_mixed_product(&cx, &one, Paranoia::Check).unwrap();
    assert_eq!(p1.ring_cert().element(), &z().from_int(2));
    assert_eq!(p1.verify().unwrap(), SfVerdict::Verified);

    // and by zero gives a certificate at zero
    let zero = scalar_cert(&z(), &z(), &z().zero()).unwrap();
    let p0 = semifil_mixed_product(&cx, &zero, Paranoia::Check).unwrap();
    assert!(p0.ring_cert().element().is_zero());
    assert_eq!(p0.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_product_lands_on_the_product_semifiltration() {
    let cx = base_example();
    let sf3 = Semifiltration::powers(principal(&z(), 3)).unwrap();
    let cy = SemifilCertificate::new(z(), z(), z().from_int(3), ints(&z(), &[-3, 1]), sf3).unwrap();
    let p = semifil_product(&cx, &cy, Paranoia::Check).unwrap();
    assert_eq!(p.degree(), 1);
    assert_eq!(p.ring_cert().coeffs(), &ints(&z(), &[-6, 1])[..]);
    assert_eq!(
        p.semifiltration().ideal_at(1).unwrap().generators(),
        &[z().from_int(6)]
    );
    assert_eq!(p.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_product_with_zero() {
    let zero =
        SemifilCertificate::new(z(), z(), z().zero(), ints(&z(), &[0, 1]), pow2()).unwrap();
    let sf3 = Semifiltration::powers(principal(&z(), 3)).unwrap();
    let cy = SemifilCertificate::new(z(), z(), z().from_int(3), ints(&z(), &[-3, 1]), sf3).unwrap();
    let p = semifil_product(&zero, &cy, Paranoia::Check).unwrap();
    assert!(p.ring_cert().element().is_zero());
    assert!(!p.verify().unwrap().is_refuted());
}

#[test]
fn semifil_transitivity_doubling_sqrt2() {
    // v = sqrt2 in Z[X]/(X^2-2); u = 2v over (A[v], powers of 2 extended)
    let zr = z();
    let q = Ring::monic_quotient(&zr, ints(&zr, &[-2, 0, 1]), "X").unwrap();
    let v = q.var_elem().unwrap();
    let cv = RingCertificate::new(zr.clone(), q.clone(), v.clone(), ints(&zr, &[-2, 0, 1]))
        .unwrap();
    let av = Ring::polynomial(&zr, "X").unwrap();
    let ext = Semifiltration::extended(pow2(), av.clone()).unwrap();
    // u = 2v: witness U - 2v with coefficient -2v in A[v]
    let u = v.mul(&q.from_int(2)).unwrap();
    let minus_2v = av.poly_from_coeffs(ints(&zr, &[0, -2])).unwrap();
    let cu = SemifilCertificate::new(av.clone(), q.clone(), u.clone(), vec![minus_2v, av.one()], ext)
        .unwrap();
    let out = semifil_transitivity(&cv, &cu, Paranoia::Check).unwrap();
    assert_eq!(out.degree(), 2);
    assert_eq!(out.ring_cert().element(), &u);
    // (2v)^2 = 8: the constant coefficient must sit in I_2 = <4>
    assert_eq!(out.ring_cert().coeffs(), &ints(&zr, &[-8, 0, 1])[..]);
    assert_eq!(out.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_transitivity_scalar_tower_collapses() {
    // v scalar (m = 1): reduces to a substituted lift/drop
    let zr = z();
    let cv = scalar_cert(&zr, &zr, &zr.from_int(3)).unwrap();
    let av = Ring::polynomial(&zr, "v").unwrap();
    let ext = Semifiltration::extended(pow2(), av.clone()).unwrap();
    // u = 2 with witness U - 2 (constant coefficients)
    let cu = SemifilCertificate::new(
        av.clone(),
        zr.clone(),
        zr.from_int(2),
        vec![av.from_int(-2), av.one()],
        ext,
    )
    .unwrap();
    let out = semifil_transitivity(&cv, &cu, Paranoia::Check).unwrap();
    assert_eq!(out.degree(), 1);
    assert_eq!(out.ring_cert().coeffs(), &ints(&zr, &[-2, 1])[..]);
    assert_eq!(out.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_transitivity_trivial_matches_plain() {
    let zr = z();
    let q = Ring::monic_quotient(&zr, ints(&zr, &[-2, 0, 1]), "X").unwrap();
    let v = q.var_elem().unwrap();
    let cv = RingCertificate::new(zr.clone(), q.clone(), v.clone(), ints(&zr, &[-2, 0, 1]))
        .unwrap();
    let av = Ring::polynomial(&zr, "X").unwrap();
    let ext = Semifiltration::extended(Semifiltration::trivial(zr.clone()), av.clone()).unwrap();
    let minus_v = av.poly_from_coeffs(ints(&zr, &[0, -1])).unwrap();
    let cu = SemifilCertificate::new(
        av.clone(),
        q.clone(),
        v.clone(),
        vec![minus_v.clone(), av.one()],
        ext,
    )
    .unwrap();
    let out = semifil_transitivity(&cv, &cu, Paranoia::Check).unwrap();
    // plain transitivity on the same data
    let plain = integra_core::constructive::transitivity_cert(
        &cv,
        &v,
        &[ints(&zr, &[0, -1]), ints(&zr, &[1])],
    )
    .unwrap();
    assert_eq!(out.ring_cert().coeffs(), plain.coeffs());
    assert!(!out.verify().unwrap().is_refuted());
}

#[test]
fn semifil_truncation_double_root() {
    // 4 - 4v + v^2 = 0 with v the double root 2; k = 1
    let zr = z();
    let q = Ring::monic_quotient(&zr, ints(&zr, &[4, -4, 1]), "X").unwrap();
    let v = q.var_elem().unwrap();
    let out = semifil_truncation(
        &zr,
        &q,
        &pow2(),
        &v,
        &ints(&zr, &[4, -4, 1]),
        1,
        Paranoia::Check,
    )
    .unwrap();
    assert_eq!(out.degree(), 2);
    // u = -4 + v; certificate (X + 2)^2 over the 1-accelerated powers
    assert_eq!(out.ring_cert().coeffs(), &ints(&zr, &[4, 4, 1])[..]);
    assert_eq!(out.verify().unwrap(), SfVerdict::Verified);
}

#[test]
fn semifil_truncation_extremes() {
    let zr = z();
    let q = Ring::monic_quotient(&zr, ints(&zr, &[4, -4, 1]), "X").unwrap();
    let v = q.var_elem().unwrap();
    let rel = ints(&zr, &[4, -4, 1]);
    // k = n: lambda = 0, all ideals collapse to the unit ideal
    let top = semifil_truncation(&zr, &q, &pow2(), &v, &rel, 2, Paranoia::Check).unwrap();
    assert!(top.ring_cert().element().is_one());
    assert_eq!(
        top.semifiltration().ideal_at(3).unwrap().generators(),
        &[zr.one()]
    );
    assert!(!top.verify().unwrap().is_refuted());
    // trivial semifiltration: agrees with the plain truncation
    let plain = truncation_cert(&zr, &q, &v, &rel, 1).unwrap();
    let triv = semifil_truncation(
        &zr,
        &q,
        &Semifiltration::trivial(zr.clone()),
        &v,
        &rel,
        1,
        Paranoia::Check,
    )
    .unwrap();
    assert_eq!(triv.ring_cert().coeffs(), plain.coeffs());
    // membership hypothesis failures are caught
    assert!(semifil_truncation(&zr, &q, &pow2(), &v, &ints(&zr, &[4, -3, 1]), 1, Paranoia::Check)
        .is_err());
}

#[test]
fn degree_one_decisions() {
    let sf = pow2();
    assert_eq!(
        degree_one_test(&z(), &z(), &sf, &z().from_int(2)).unwrap(),
        Membership::Member
    );
    assert_eq!(
        degree_one_test(&z(), &z(), &sf, &z().one()).unwrap(),
        Membership::NotMember
    );
    assert_eq!(
        degree_one_test(&z(), &z(), &sf, &z().zero()).unwrap(),
        Membership::Member
    );
    // pushing through to B can turn a non-member into a member
    let r3 = Ring::modular(3u32).unwrap();
    assert_eq!(
        degree_one_test(&z(), &r3, &sf, &z().one()).unwrap(),
        Membership::Member
    );
}

#[test]
fn trivial_equiv_membership_is_vacuous() {
    let q = Ring::monic_quotient(&z(), ints(&z(), &[-2, 0, 1]), "X").unwrap();
    let c = RingCertificate::new(z(), q.clone(), q.var_elem().unwrap(), ints(&z(), &[-2, 0, 1]))
        .unwrap();
    let attached = trivial_attach(&c).unwrap();
    assert_eq!(attached.verify().unwrap(), SfVerdict::Verified);
    assert_eq!(trivial_detach(&attached).unwrap(), c);
    // detaching a non-trivial semifiltration is refused
    assert!(trivial_detach(&base_example()).is_err());
}

#[test]
fn paranoia_catches_drift() {
    // manufacture a pair whose sum the engine would accept but whose
    // membership refutes: u = 1 over powers of 2 is already refuted at
    // input validation
    let sf = pow2();
    let bad = SemifilCertificate::new(z(), z(), z().one(), ints(&z(), &[-1, 1]), sf).unwrap();
    assert!(matches!(
        semifil_sum(&bad, &base_example(), Paranoia::Check),
        Err(integra_core::Error::UnverifiedInput)
    ));
}

#[test]
fn product_certs_on_rees_layers_mirror_plain_products() {
    // consistency: with trivial semifiltrations the rees pipeline agrees
    // coefficient-for-coefficient with the plain product
    let sf = Semifiltration::trivial(z());
    let cx = SemifilCertificate::new(z(), z(), z().from_int(3), ints(&z(), &[-3, 1]), sf.clone())
        .unwrap();
    let cy = SemifilCertificate::new(z(), z(), z().from_int(5), ints(&z(), &[-5, 1]), sf.clone())
        .unwrap();
    let mixed = semifil_mixed_product(&cx, &trivial_detach(&cy).unwrap(), Paranoia::Check).unwrap();
    let plain = product_cert(&trivial_detach(&cx).unwrap(), &trivial_detach(&cy).unwrap()).unwrap();
    assert_eq!(mixed.ring_cert().coeffs(), plain.coeffs());
}

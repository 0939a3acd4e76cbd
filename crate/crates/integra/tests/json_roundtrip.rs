//! Canonical-serialization invariants: parse . serialize is the identity
//! on every value type, and serialize . parse is the identity on
//! canonically formatted text.

use integra::json;
use integra_core::{
    Ideal, Matrix, Ring, RingCertificate, SemifilCertificate, Semifiltration,
};

fn z() -> Ring {
    Ring::integers()
}

fn ints(ring: &Ring, cs: &[i64]) -> Vec<integra_core::Element> {
    cs.iter().map(|&c| ring.from_int(c)).collect()
}

fn ring_zoo() -> Vec<Ring> {
    let q = Ring::rationals();
    let z8 = Ring::modular(8u32).unwrap();
    let zx = Ring::polynomial(&z(), "X").unwrap();
    let quot = Ring::monic_quotient(&z(), ints(&z(), &[-2, 0, 1]), "X").unwrap();
    let tower = Ring::monic_quotient(&quot, vec![quot.from_int(-3), quot.zero(), quot.one()], "Y")
        .unwrap();
    let qpoly = Ring::polynomial(&q, "T").unwrap();
    let zmodpoly = Ring::polynomial(&z8, "W").unwrap();
    vec![z(), q, z8, zx, quot, tower, qpoly, zmodpoly]
}

#[test]
fn rings_round_trip() {
    for r in ring_zoo() {
        let v = json::ring_to_json(&r);
        let back = json::ring_from_json(&v, "$").unwrap();
        assert_eq!(back, r);
        // canonical text survives a reparse byte-exactly
        let text = json::to_canonical_string(&v);
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json::to_canonical_string(&reparsed), text);
    }
}

#[test]
fn elements_round_trip() {
    for r in ring_zoo() {
        let samples = match r.base() {
            Some(base) => vec![
                r.zero(),
                r.one(),
                r.from_int(-7),
                r.poly_from_coeffs(vec![base.from_int(3), base.from_int(-4), base.one()])
                    .unwrap(),
            ],
            None => vec![r.zero(), r.one(), r.from_int(-7), r.from_int(123456)],
        };
        for e in samples {
            let v = json::elem_to_json(&e);
            assert_eq!(json::elem_from_json(&v, &r, "$").unwrap(), e);
        }
    }
    // reduced fractions keep their shape
    let q = Ring::rationals();
    let half = q.rational(1, 2).unwrap();
    let v = json::elem_to_json(&half);
    assert_eq!(v, serde_json::json!([1, 2]));
    assert_eq!(json::elem_from_json(&v, &q, "$").unwrap(), half);
    // big integers fall back to decimal strings
    let big = z().from_int(i64::MAX).mul(&z().from_int(1000)).unwrap();
    let v = json::elem_to_json(&big);
    assert!(v.is_string());
    assert_eq!(json::elem_from_json(&v, &z(), "$").unwrap(), big);
}

#[test]
fn ideals_and_matrices_round_trip() {
    let i = Ideal::new(z(), ints(&z(), &[4, 10])).unwrap();
    let v = json::ideal_to_json(&i);
    assert_eq!(json::ideal_from_json(&v, "$").unwrap(), i);

    let m = Matrix::from_rows(
        z(),
        vec![ints(&z(), &[1, 2, 3]), ints(&z(), &[4, 5, 6])],
    )
    .unwrap();
    let v = json::matrix_to_json(&m);
    assert_eq!(json::matrix_from_json(&v, "$").unwrap(), m);
}

fn semifil_zoo() -> Vec<Semifiltration> {
    let p2 = Semifiltration::powers(Ideal::new(z(), ints(&z(), &[2])).unwrap()).unwrap();
    let c3 = Semifiltration::constant(Ideal::new(z(), ints(&z(), &[3])).unwrap()).unwrap();
    let zt = Ring::polynomial(&z(), "t").unwrap();
    vec![
        p2.clone(),
        c3.clone(),
        Semifiltration::trivial(z()),
        Semifiltration::product(p2.clone(), c3.clone()).unwrap(),
        Semifiltration::accelerated(p2.clone(), 3),
        Semifiltration::extended(p2.clone(), zt).unwrap(),
        Semifiltration::explicit(
            vec![Ideal::unit(z()), Ideal::new(z(), ints(&z(), &[6])).unwrap()],
            c3,
        )
        .unwrap(),
    ]
}

#[test]
fn semifiltrations_round_trip() {
    for sf in semifil_zoo() {
        let v = json::semifil_to_json(&sf);
        assert_eq!(json::semifil_from_json(&v, "$").unwrap(), sf);
    }
}

#[test]
fn certificates_round_trip() {
    let quot = Ring::monic_quotient(&z(), ints(&z(), &[-2, 0, 1]), "X").unwrap();
    let plain = RingCertificate::new(
        z(),
        quot.clone(),
        quot.var_elem().unwrap(),
        ints(&z(), &[-2, 0, 1]),
    )
    .unwrap();
    let v = json::ring_cert_to_json(&plain);
    match json::cert_from_json(&v, "$").unwrap() {
        json::CertFile::Plain(c) => assert_eq!(c, plain),
        json::CertFile::Semifil(_) => panic!("unexpected semifiltration"),
    }

    for sf in semifil_zoo() {
        if sf.ring() != &z() {
            continue;
        }
        let sc = SemifilCertificate::new(z(), z(), z().zero(), ints(&z(), &[0, 1]), sf).unwrap();
        let v = json::semifil_cert_to_json(&sc);
        assert_eq!(json::semifil_cert_from_json(&v, "$").unwrap(), sc);
    }
}

#[test]
fn rees_certificates_round_trip() {
    let p2 = Semifiltration::powers(Ideal::new(z(), ints(&z(), &[2])).unwrap()).unwrap();
    let c = SemifilCertificate::new(z(), z(), z().from_int(2), ints(&z(), &[-2, 1]), p2).unwrap();
    for rc in [
        integra_core::rees::lift(&c).unwrap(),
        integra_core::rees::lift_accel(
            &SemifilCertificate::new(
                z(),
                z(),
                z().from_int(4),
                ints(&z(), &[-4, 1]),
                Semifiltration::accelerated(
                    Semifiltration::powers(Ideal::new(z(), ints(&z(), &[2])).unwrap()).unwrap(),
                    2,
                ),
            )
            .unwrap(),
            2,
        )
        .unwrap(),
    ] {
        let v = json::rees_cert_to_json(&rc);
        assert_eq!(json::rees_cert_from_json(&v, "$").unwrap(), rc);
    }
}

#[test]
fn malformed_inputs_fail_gracefully() {
    use serde_json::json;
    let bad_rings = [
        json!({"ring": "Zp"}),
        json!({"ring": "Zmod"}),
        json!({"ring": "Zmod", "m": 1}),
        json!({"ring": "Zmod", "m": -4}),
        json!({"ring": "Poly", "base": {"ring": "Z"}}),
        json!({"ring": "QuotMonic", "base": {"ring": "Z"}, "mod": [1, 2], "var": "X"}),
        json!({"ring": "QuotMonic", "base": {"ring": "Z"}, "mod": [3], "var": "X"}),
        json!({"ring": "Poly", "base": {"ring": "Poly", "base": {"ring": "Z"}, "var": "X"}, "var": "X"}),
        json!([1, 2, 3]),
        json!(null),
    ];
    for v in bad_rings {
        assert!(json::ring_from_json(&v, "$").is_err(), "accepted {v}");
    }
    let q = Ring::rationals();
    let bad_elems = [
        (json!([1, 0]), q.clone()),
        (json!([1, 2, 3]), q.clone()),
        (json!(1.5), z()),
        (json!("12x"), z()),
        (json!({"n": 1}), z()),
    ];
    for (v, ring) in bad_elems {
        assert!(json::elem_from_json(&v, &ring, "$").is_err(), "accepted {v}");
    }
    // certificates: missing pieces and broken invariants
    let quot = Ring::monic_quotient(&z(), ints(&z(), &[-2, 0, 1]), "X").unwrap();
    let good = json::ring_cert_to_json(
        &RingCertificate::new(z(), quot.clone(), quot.var_elem().unwrap(), ints(&z(), &[-2, 0, 1]))
            .unwrap(),
    );
    for key in ["base", "algebra", "element", "coeffs"] {
        let mut v = good.clone();
        v.as_object_mut().unwrap().remove(key);
        assert!(json::cert_from_json(&v, "$").is_err(), "missing {key} accepted");
    }
    let mut nonmonic = good.clone();
    nonmonic["coeffs"] = json!([-2, 0, 3]);
    assert!(json::cert_from_json(&nonmonic, "$").is_err());
}

#[test]
fn witnesses_round_trip() {
    let w = integra_core::lombardi::MembershipWitness::new(
        z(),
        2,
        2,
        1,
        1,
        vec![(0, 0, z().one()), (1, 1, z().from_int(2))],
        vec![(1, 0, z().from_int(4)), (0, 1, z().one())],
    )
    .unwrap();
    let v = json::witness_to_json(&w);
    assert_eq!(json::witness_from_json(&v, "$").unwrap(), w);
}

use proptest::prelude::*;

use super::*;

fn qq() -> Ring {
    Ring::grevlex(Field::Rationals, ["x", "y", "z"]).unwrap()
}

fn fp(p: u32) -> Ring {
    Ring::grevlex(Field::prime(p).unwrap(), ["x", "y", "z"]).unwrap()
}

fn mon(e: &[u16]) -> Monomial {
    Monomial::from_exps(e)
}

#[test]
fn normalize_cancels() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    let f = r.field();
    let p = Poly::normalize(
        &r,
        vec![
            (mon(&[2, 0]), f.from_i64(3)),
            (mon(&[2, 0]), f.from_i64(-3)),
        ],
    )
    .unwrap();
    assert!(p.is_zero());
}

#[test]
fn normalize_sorts_by_grevlex() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    let f = r.field();
    let p = Poly::normalize(&r, vec![(mon(&[1, 1]), f.one()), (mon(&[2, 0]), f.one())]).unwrap();
    assert_eq!(p.to_string(), "x^2 + x*y");
    assert_eq!(p.lm(), Some(&mon(&[2, 0])));
}

#[test]
fn normalize_reduces_fractions() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    let c = r.parse_coeff("2/4").unwrap();
    let p = Poly::normalize(&r, vec![(mon(&[0, 0]), c)]).unwrap();
    assert_eq!(p.to_string(), "1/2");
}

#[test]
fn normalize_rejects_length_mismatch() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    assert!(matches!(
        Poly::normalize(&r, vec![(mon(&[1]), r.field().one())]),
        Err(crate::Error::MalformedInput(_))
    ));
}

#[test]
fn arithmetic_examples() {
    let r = Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap();
    let a = r.parse_poly("x+y").unwrap();
    assert!(a.add(&r.parse_poly("-x-y").unwrap()).is_zero());
    assert_eq!(
        a.mul(&r.parse_poly("x-y").unwrap()).to_string(),
        "x^2 - y^2"
    );

    let r5 = Ring::grevlex(Field::prime(5).unwrap(), ["x", "y"]).unwrap();
    let two_x = r5.parse_poly("2x").unwrap();
    let three = r5.field().from_i64(3);
    assert_eq!(
        two_x.arith(ArithOp::ScalarMul(&three)).unwrap().to_string(),
        "x"
    );
}

#[test]
fn mixed_contexts_are_rejected() {
    let a = qq().parse_poly("x").unwrap();
    let b = fp(7).parse_poly("x").unwrap();
    assert!(matches!(
        a.arith(ArithOp::Add(&b)),
        Err(crate::Error::ContextMismatch(_))
    ));
    let c = fp(7).field().one();
    assert!(a.arith(ArithOp::ScalarMul(&c)).is_err());
}

#[test]
fn exact_division() {
    let r = qq();
    let f = r.parse_poly("x^3 - y^3").unwrap();
    let g = r.parse_poly("x - y").unwrap();
    assert_eq!(f.exact_div(&g).unwrap().to_string(), "x^2 + x*y + y^2");
    assert!(f.exact_div(&r.parse_poly("x + z").unwrap()).is_none());
}

fn arb_poly(ring: Ring) -> impl Strategy<Value = Poly> {
    let field = ring.field();
    proptest::collection::vec((proptest::collection::vec(0u16..3, 3), -20i64..20), 0..6).prop_map(
        move |terms| {
            Poly::normalize(
                &ring,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exps(&e), field.from_i64(c)))
                    .collect(),
            )
            .unwrap()
        },
    )
}

fn ring_axioms(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert!(a.sub(a).is_zero());
    let renorm = Poly::normalize(
        a.ring(),
        a.terms()
            .iter()
            .map(|t| (t.mon.clone(), t.coeff.clone()))
            .collect(),
    )
    .unwrap();
    prop_assert_eq!(&renorm, a);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_over_rationals(a in arb_poly(qq()), b in arb_poly(qq()), c in arb_poly(qq())) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_over_prime_field(a in arb_poly(fp(7)), b in arb_poly(fp(7)), c in arb_poly(fp(7))) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn text_form_round_trips(a in arb_poly(fp(32003))) {
        prop_assert_eq!(a.ring().parse_poly(&a.to_string()).unwrap(), a);
    }
}

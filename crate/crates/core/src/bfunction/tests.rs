use super::*;
use crate::parse::parse_operator;
use crate::twist::build_localizing_ideal;
use num_bigint::BigInt;

fn aux1() -> WeylContext {
    WeylContext::new(&["x"]).unwrap().with_aux()
}

#[test]
fn projection_examples() {
    let aux = aux1();
    let p = |s: &str| theta_projection(&parse_operator(s, &aux).unwrap()).unwrap();
    assert_eq!(p("v^2*Dv"), UPoly::from_integers(&[0, 1, 1]));
    assert_eq!(p("v*Dv"), UPoly::var());
    assert_eq!(p("Dv"), UPoly::var());
    assert_eq!(p("v"), UPoly::from_integers(&[1, 1]));
    assert_eq!(p("v^2*Dv^2-3"), UPoly::from_integers(&[-3, -1, 1]));
    let bad = parse_operator("x*v*Dv", &aux).unwrap();
    assert_eq!(theta_projection(&bad), Err(BFunctionError::NotInSubalgebra));
    let bad = parse_operator("v*Dv+v", &aux).unwrap();
    assert_eq!(theta_projection(&bad), Err(BFunctionError::NotHomogeneous));
}

#[test]
fn operator_round_trip() {
    let aux = aux1();
    let t = UPoly::from_integers(&[2, 3, 1]);
    let op = theta_to_operator(&aux, &t).unwrap();
    assert_eq!(op, parse_operator("v^2*Dv^2+4*v*Dv+2", &aux).unwrap());
    assert_eq!(theta_projection(&op).unwrap(), t);
}

fn monomial_b(lambda: &str) -> BFunctionReport {
    let ctx = WeylContext::new(&["x"]).unwrap();
    let f = parse_operator("x", &ctx).unwrap();
    let j = parse_operator(&format!("x*Dx+({lambda})"), &ctx).unwrap();
    let li = build_localizing_ideal(&f, &[j]).unwrap();
    integration_b_function(&li, &TermOrder::Grevlex, Limits::default()).unwrap()
}

#[test]
fn monomial_b_functions() {
    let r = monomial_b("-7");
    assert_eq!(r.b, BPolynomial::from_integers(&[0, -6, 1]).unwrap());
    assert_eq!(
        r.b.largest_nonneg_integer_root().unwrap(),
        Some(BigInt::from(6))
    );
    let r = monomial_b("1/2");
    assert_eq!(r.b.to_string(), "2*s^2+3*s");
    assert_eq!(
        r.b.largest_nonneg_integer_root().unwrap(),
        Some(BigInt::from(0))
    );
    let r = monomial_b("3");
    assert_eq!(r.b.to_string(), "s^2+4*s");
    assert_eq!(
        r.b.largest_nonneg_integer_root().unwrap(),
        Some(BigInt::from(0))
    );
}

#[test]
fn monomial_certificate_and_minimality() {
    let r = monomial_b("-7");
    assert!(r.contains_theta(&r.theta).unwrap());
    let factors = [
        UPoly::from_integers(&[1, 1]),
        UPoly::from_integers(&[-(-7), 1]),
    ];
    assert_eq!(r.theta, factors[0].mul(&UPoly::from_integers(&[7, 1])));
    for f in [
        UPoly::one(),
        UPoly::from_integers(&[1, 1]),
        UPoly::from_integers(&[7, 1]),
    ] {
        assert!(!r.contains_theta(&f).unwrap(), "{}", f.render("t"));
    }
}

#[test]
fn identity_and_unit() {
    let ctx = WeylContext::new(&["x", "y"]).unwrap();
    let f = parse_operator("1", &ctx).unwrap();
    let gens = vec![
        parse_operator("Dx", &ctx).unwrap(),
        parse_operator("Dy", &ctx).unwrap(),
    ];
    let li = build_localizing_ideal(&f, &gens).unwrap();
    let r = integration_b_function(&li, &TermOrder::Grevlex, Limits::default()).unwrap();
    assert_eq!(r.b.to_string(), "s");
}

#[test]
fn zero_b_function() {
    // D_v·(x) has in_w ∩ K[θ] = 0
    let aux = aux1();
    let gens = vec![parse_operator("x", &aux).unwrap()];
    let err = b_function_of_ideal(&gens, &TermOrder::Grevlex, Limits::default()).unwrap_err();
    assert_eq!(err, BFunctionError::Zero);
}

#[test]
fn cusp_b_function() {
    let ctx = WeylContext::new(&["x", "y"]).unwrap();
    let f = parse_operator("x^2-y^3", &ctx).unwrap();
    let gens: Vec<WeylElement> = ["(x^2-y^3)*Dx+2*x", "(x^2-y^3)*Dy-3*y^2"]
        .iter()
        .map(|s| parse_operator(s, &ctx).unwrap())
        .collect();
    let li = build_localizing_ideal(&f, &gens).unwrap();
    let r = integration_b_function(&li, &TermOrder::Grevlex, Limits::default()).unwrap();
    // reported up to a positive scalar; the primitive form drops the content 6
    assert_eq!(
        r.b,
        BPolynomial::from_integers(&[0, 1716, 2586, 1296, 216]).unwrap()
    );
    assert_eq!(r.b.to_string(), "36*s^4+216*s^3+431*s^2+286*s");
    assert!(r.contains_theta(&r.theta).unwrap());
}

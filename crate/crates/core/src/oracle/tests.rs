use super::*;
use crate::parse::parse_operator;
use crate::weyl::WeylContext;

fn check(ctx: &WeylContext, op: &str, func: &str) -> TwistedFunction {
    let p = parse_operator(op, ctx).unwrap();
    let f = parse_function(func, ctx.spatial_names()).unwrap();
    apply_operator(&p, &f).unwrap()
}

#[test]
fn quotient_rule() {
    let ctx = WeylContext::new(&["x"]).unwrap();
    let out = check(&ctx, "Dx", "1/x");
    let expected = parse_function("-1/x^2", &["x"]).unwrap();
    assert!(out.equals(&expected));
    assert!(!out.is_zero());
}

#[test]
fn annihilation_examples() {
    let ctx = WeylContext::new(&["x"]).unwrap();
    let f = parse_function("1/x", &["x"]).unwrap();
    let yes = [parse_operator("x*Dx+1", &ctx).unwrap()];
    let no = [parse_operator("Dx", &ctx).unwrap()];
    assert!(is_annihilated(&yes, &f).unwrap());
    assert!(!is_annihilated(&no, &f).unwrap());

    let ctx = WeylContext::new(&["x", "y"]).unwrap();
    assert!(check(&ctx, "(x^2-y^3)*Dx+2*x", "1/(x^2-y^3)").is_zero());
    assert!(check(&ctx, "(x^2-y^3)*Dy-3*y^2", "1/(x^2-y^3)").is_zero());

    let ctx = WeylContext::new(&["x", "y", "z"]).unwrap();
    let e = "exp(1/(x^3-y^2*z^2))";
    assert!(check(&ctx, "(x^3-y^2*z^2)^2*Dx+3*x^2", e).is_zero());
    assert!(check(&ctx, "(x^3-y^2*z^2)^2*Dy-2*y*z^2", e).is_zero());
    assert!(check(&ctx, "(x^3-y^2*z^2)^2*Dz-2*y^2*z", e).is_zero());
    assert!(!check(&ctx, "Dx", e).is_zero());
}

#[test]
fn commutation_on_functions() {
    let ctx = WeylContext::new(&["x", "y"]).unwrap();
    let src = "y/(x+y^2)^2*exp(x/(1-y))";
    let f = parse_function(src, &["x", "y"]).unwrap();
    let out = check(&ctx, "Dx*x-x*Dx", src);
    assert!(out.equals(&f));
}

#[test]
fn parse_errors() {
    assert!(parse_function("1/(x-x)", &["x"]).is_err());
    assert!(parse_function("sin(x)", &["x"]).is_err());
    assert!(parse_function("exp(x)+1", &["x"]).is_err());
    assert!(parse_function("exp(exp(x))", &["x"]).is_err());
    assert!(parse_function("y", &["x"]).is_err());
    let f = parse_function("exp(x)*exp(-x)", &["x"]).unwrap();
    assert!(f.equals(&parse_function("1", &["x"]).unwrap()));
}

#[test]
fn variable_mismatch() {
    let ctx = WeylContext::new(&["x"]).unwrap();
    let p = parse_operator("Dx", &ctx).unwrap();
    let f = parse_function("y", &["y"]).unwrap();
    assert!(matches!(
        apply_operator(&p, &f),
        Err(OracleError::VariableMismatch { .. })
    ));
}

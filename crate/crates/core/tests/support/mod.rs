//! Randomized invariant suites shared by the property and acceptance
//! test targets. Each runs 256 cases.

use dloc::bfunction::integration_b_function;
use dloc::groebner::{buchberger_left, GroebnerError, Limits};
use dloc::order::{initial_form_w, is_w_homogeneous, max_w_degree, w_degree};
use dloc::twist::{build_localizing_ideal, normal_form_mod_right_dv, phi};
use dloc::weyl::{anti_normal_order_v, Monomial};
use dloc::{
    apply_operator, parse_function, parse_operator, TermOrder, WeightVector, WeylContext,
    WeylElement,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn xy() -> WeylContext {
    WeylContext::new(&["x", "y"]).unwrap()
}

/// Random element with at most `terms` terms and exponents `<= max_exp`;
/// generators listed in `frozen` keep exponent 0.
fn element(
    ctx: WeylContext,
    max_exp: u32,
    terms: usize,
    frozen: Vec<usize>,
) -> impl Strategy<Value = WeylElement> {
    let n = ctx.num_gens();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -4i64..=4),
        0..=terms,
    )
    .prop_map(move |ts| {
        WeylElement::from_terms(
            &ctx,
            ts.into_iter().map(|(mut e, c)| {
                for &i in &frozen {
                    e[i] = 0;
                }
                (
                    Monomial::from_exponents(&e),
                    BigRational::from_integer(c.into()),
                )
            }),
        )
    })
}

fn operator(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    element(xy(), max_exp, terms, vec![])
}

fn polynomial(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    let ctx = xy();
    let frozen = vec![ctx.d(0), ctx.d(1)];
    element(ctx, max_exp, terms, frozen)
}

fn aux_element(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    element(xy().with_aux(), max_exp, terms, vec![])
}

fn gen(ctx: &WeylContext, name: &str) -> WeylElement {
    parse_operator(name, ctx).unwrap()
}

fn ok_or_skip<T>(r: Result<T, GroebnerError>) -> Result<T, TestCaseError> {
    match r {
        Ok(t) => Ok(t),
        Err(GroebnerError::ResourceLimit(_)) => Err(TestCaseError::reject("resource cap")),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    fn multiplication_is_associative(a in operator(2, 3), b in operator(2, 3), c in operator(2, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    fn commutation_relations(a in operator(2, 3), b in operator(2, 3), i in 0usize..2, j in 0usize..2) {
        let ctx = xy();
        let names = ["x", "y"];
        let xi = gen(&ctx, names[i]);
        let xj = gen(&ctx, names[j]);
        let di = gen(&ctx, &format!("D{}", names[i]));
        let dj = gen(&ctx, &format!("D{}", names[j]));
        let delta = WeylElement::from_integer(&ctx, i64::from(i == j));
        prop_assert_eq!(di.commutator(&xj).unwrap(), delta);
        prop_assert!(xi.commutator(&xj).unwrap().is_zero());
        prop_assert!(di.commutator(&dj).unwrap().is_zero());
        // ∂ acts as a derivation
        let lhs = di.commutator(&(&a * &b)).unwrap();
        let rhs = &(&di.commutator(&a).unwrap() * &b) + &(&a * &di.commutator(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    fn phi_is_a_homomorphism(p in operator(2, 3), q in operator(2, 3), f in polynomial(2, 3)) {
        prop_assert_eq!(phi(&(&p * &q), &f).unwrap(), &phi(&p, &f).unwrap() * &phi(&q, &f).unwrap());
        prop_assert_eq!(phi(&(&p + &q), &f).unwrap(), &phi(&p, &f).unwrap() + &phi(&q, &f).unwrap());
    }

    fn phi_preserves_commutators(f in polynomial(3, 4), i in 0usize..2, j in 0usize..2) {
        let ctx = xy();
        let aux = ctx.with_aux();
        let names = ["x", "y"];
        let pi = phi(&gen(&ctx, &format!("D{}", names[i])), &f).unwrap();
        let pj = phi(&gen(&ctx, &format!("D{}", names[j])), &f).unwrap();
        prop_assert!(pi.commutator(&pj).unwrap().is_zero());
        let xj = gen(&aux, names[j]);
        prop_assert_eq!(pi.commutator(&xj).unwrap(), WeylElement::from_integer(&aux, i64::from(i == j)));
    }

    fn anti_normal_order_round_trip(g in aux_element(3, 5)) {
        let ctx = g.context().clone();
        let words = anti_normal_order_v(&g).unwrap();
        let back = words.iter().fold(WeylElement::zero(&ctx), |acc, w| &acc + &w.to_element(&ctx));
        prop_assert_eq!(back, g);
    }

    fn right_normal_form_ignores_dv_multiples(g in aux_element(2, 4), q in aux_element(2, 4)) {
        let ctx = g.context().clone();
        let dv = WeylElement::generator(&ctx, ctx.dv().unwrap());
        let shifted = &g + &(&dv * &q);
        let a = normal_form_mod_right_dv(&g).unwrap();
        let b = normal_form_mod_right_dv(&shifted).unwrap();
        let rank = a.rank().max(b.rank());
        let pad = |m: &dloc::FreeModuleElement| {
            let mut c = m.components().to_vec();
            c.resize(rank, WeylElement::zero(m.context()));
            c
        };
        prop_assert_eq!(pad(&a), pad(&b));
    }

    fn groebner_idempotent_and_sound(
        a in element(WeylContext::new(&["x"]).unwrap(), 2, 3, vec![]),
        b in element(WeylContext::new(&["x"]).unwrap(), 2, 3, vec![]),
        p in element(WeylContext::new(&["x"]).unwrap(), 2, 2, vec![]),
        q in element(WeylContext::new(&["x"]).unwrap(), 2, 2, vec![]),
    ) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let limits = Limits { max_steps: Some(400), max_degree: Some(24) };
        for order in [TermOrder::Grevlex, TermOrder::Lex] {
            let gb = ok_or_skip(buchberger_left(&[a.clone(), b.clone()], &order, limits))?;
            let again = ok_or_skip(buchberger_left(gb.elements(), &order, limits))?;
            prop_assert_eq!(gb.elements(), again.elements());
            prop_assert!(gb.contains(&a).unwrap());
            prop_assert!(gb.contains(&b).unwrap());
            let combo = &(&p * &a) + &(&q * &b);
            prop_assert!(gb.contains(&combo).unwrap());
        }
    }

    fn w_homogeneity_is_preserved(a in aux_element(2, 4), b in aux_element(2, 4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ctx = a.context().clone();
        let w = WeightVector::integration(&ctx).unwrap();
        let ia = initial_form_w(&w, &a).unwrap();
        let ib = initial_form_w(&w, &b).unwrap();
        prop_assert!(is_w_homogeneous(&w, &ia));
        let prod = &ia * &ib;
        prop_assert!(is_w_homogeneous(&w, &prod));
        let da = max_w_degree(&w, &ia).unwrap();
        let db = max_w_degree(&w, &ib).unwrap();
        for (m, _) in prod.terms() {
            prop_assert_eq!(w_degree(&w, m), da + db);
        }
        prop_assert_eq!(initial_form_w(&w, &(&a * &b)).unwrap(), prod);
    }

    fn b_function_certificate(
        lead in prop::collection::vec(-3i64..=3, 1..=3),
        tail in prop::collection::vec(-3i64..=3, 1..=2),
        fc in prop::collection::vec(-2i64..=2, 1..=3),
    ) {
        let ctx = WeylContext::new(&["x"]).unwrap();
        let poly = |cs: &[i64]| {
            WeylElement::from_terms(&ctx, cs.iter().enumerate().map(|(i, &c)| {
                (Monomial::from_exponents(&[i as u32, 0]), BigRational::from_integer(c.into()))
            }))
        };
        let a = poly(&lead);
        let f = poly(&fc);
        prop_assume!(!a.is_zero() && !f.is_zero());
        let p = &(&a * &gen(&ctx, "Dx")) + &poly(&tail);
        let ideal = build_localizing_ideal(&f, &[p]).unwrap();
        let limits = Limits { max_steps: Some(2000), max_degree: None };
        let report = match integration_b_function(&ideal, &TermOrder::Grevlex, limits) {
            Err(dloc::bfunction::BFunctionError::Groebner(GroebnerError::ResourceLimit(_))) => {
                return Err(TestCaseError::reject("resource cap"));
            }
            other => other.unwrap(),
        };
        prop_assert!(report.contains_theta(&report.theta).unwrap());
        for g in &report.survivors {
            prop_assert!(report.elimination.contains(g).unwrap());
        }
    }

    fn oracle_leibniz(p in operator(2, 3), q in operator(2, 3), shift in 1i64..4, e in 1i64..3) {
        let src = format!("(x-y^2)/(x+{shift})^{e}*exp(y/(x+{shift}))");
        let func = parse_function(&src, &["x", "y"]).unwrap();
        let lhs = apply_operator(&(&p * &q), &func).unwrap();
        let rhs = apply_operator(&p, &apply_operator(&q, &func).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
        let c = apply_operator(&(&gen(&xy(), "Dx*x") - &gen(&xy(), "x*Dx")), &func).unwrap();
        prop_assert!(c.equals(&func));
    }

    fn printed_operators_parse_back(p in aux_element(3, 5)) {
        let ctx = p.context().clone();
        prop_assert_eq!(parse_operator(&p.to_string(), &ctx).unwrap(), p);
    }
}

/// Every suite, by name; each panics on a counterexample.
pub fn suites() -> Vec<(&'static str, fn())> {
    vec![
        (
            "Weyl multiplication associativity",
            multiplication_is_associative,
        ),
        ("commutation relations", commutation_relations),
        ("phi homomorphism", phi_is_a_homomorphism),
        ("phi preserves commutators", phi_preserves_commutators),
        ("anti-normal order round trip", anti_normal_order_round_trip),
        (
            "normal form modulo Dv multiples",
            right_normal_form_ignores_dv_multiples,
        ),
        (
            "GB idempotence and membership soundness",
            groebner_idempotent_and_sound,
        ),
        ("w-homogeneity preservation", w_homogeneity_is_preserved),
        ("b-function membership certificate", b_function_certificate),
        ("oracle Leibniz consistency", oracle_leibniz),
        ("parser round trip", printed_operators_parse_back),
    ]
}

#[allow(dead_code)]
pub fn run(label: &str) {
    let (_, suite) = suites()
        .into_iter()
        .find(|(name, _)| *name == label)
        .unwrap_or_else(|| panic!("no suite named {label}"));
    suite();
}

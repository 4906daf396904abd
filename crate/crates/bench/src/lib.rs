//! Fixed inputs shared by the benchmarks.

use dloc::{parse_operator, WeylContext, WeylElement};

pub struct Problem {
    pub name: &'static str,
    pub f: WeylElement,
    pub gens: Vec<WeylElement>,
}

fn build(name: &'static str, vars: &[&str], f: &str, gens: &[&str]) -> Problem {
    let ctx = WeylContext::new(vars).expect("valid names");
    Problem {
        name,
        f: parse_operator(f, &ctx).expect("valid f"),
        gens: gens
            .iter()
            .map(|g| parse_operator(g, &ctx).expect("valid generator"))
            .collect(),
    }
}

pub fn monomial() -> Problem {
    build("monomial", &["x"], "x", &["x*Dx-7"])
}

pub fn cusp() -> Problem {
    build(
        "cusp",
        &["x", "y"],
        "x^2-y^3",
        &["(x^2-y^3)*Dx+2*x", "(x^2-y^3)*Dy-3*y^2"],
    )
}

pub fn exponential() -> Problem {
    build(
        "exponential",
        &["x", "y", "z"],
        "x",
        &[
            "(x^3-y^2*z^2)^2*Dx+3*x^2",
            "(x^3-y^2*z^2)^2*Dy-2*y*z^2",
            "(x^3-y^2*z^2)^2*Dz-2*y^2*z",
        ],
    )
}

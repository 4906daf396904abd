//! Exact Weyl algebra arithmetic, Gröbner bases and the localization of
//! cyclic D-modules `D/J` at a polynomial `f`.
//!
//! ```
//! use dloc::{localize_cyclic, parse_operator, LocalizeConfig, WeylContext};
//!
//! let ctx = WeylContext::new(&["x"]).unwrap();
//! let f = parse_operator("x", &ctx).unwrap();
//! let j = parse_operator("x*Dx-7", &ctx).unwrap();
//! let r = localize_cyclic(&f, &[j], &LocalizeConfig::default()).unwrap();
//! assert_eq!(r.k, Some(6));
//! assert_eq!(r.b.to_string(), "s^2-6*s");
//! ```

pub mod bfunction;
pub mod groebner;
pub mod integrate;
pub mod localize;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod poly;
pub mod twist;
pub mod weyl;

pub use bfunction::{BPolynomial, ThetaPolynomial};
pub use groebner::{FreeModuleElement, GroebnerBasis, Limits};
pub use localize::{localize_cyclic, LocalizationResult, LocalizeConfig, LocalizeError};
pub use oracle::{
    apply_operator, is_annihilated, parse_function, RationalFunction, TwistedFunction,
};
pub use order::{TermOrder, WeightVector};
pub use parse::{parse_operator, ParseError};
pub use poly::Polynomial;
pub use weyl::{WeylContext, WeylElement};

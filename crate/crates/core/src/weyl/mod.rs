//! Exact arithmetic in the Weyl algebra and its homogenized variant.
//!
//! Elements are kept in normal order: in every term the coordinate factors
//! stand to the left of the derivative factors. Multiplication reorders with
//! the closed form `∂^a x^b = Σ_j j! C(a,j) C(b,j) x^{b-j} ∂^{a-j} h^{2j}`
//! (with `h = 1` outside homogenized contexts).

mod context;
pub(crate) mod element;
pub(crate) mod monomial;
mod vorder;

pub use context::{Generator, WeylContext};
pub use element::WeylElement;
pub use monomial::Monomial;
pub use vorder::{anti_normal_order_v, AntiOrderedTerm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operands live in different Weyl contexts")]
    ContextMismatch,
    #[error(
        "invalid variable name `{0}`: use an identifier starting with a letter other than `D`"
    )]
    InvalidName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateName(String),
    #[error("context has no auxiliary pair")]
    MissingAux,
    #[error("generator `{0}` is not available in the target context")]
    MissingGenerator(String),
    #[error("element is already homogenized")]
    AlreadyHomogenized,
    #[error("element is not in a homogenized context")]
    NotHomogenized,
}

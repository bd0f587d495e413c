//! Modified Macdonald polynomials, `nabla`, Pieri coefficients, the `C`/`B`
//! operators with their star-adjoints, and the identity registry.

mod cache;
mod htilde;
mod identities;
mod nabla;
mod operators;
mod pieri;

use crate::qt::QtRational;
use crate::shapes::ShapeError;
use crate::symfunc::{plethysm, Alphabet, SymError, SymFunc};

pub use cache::{load_or_build, read_table, table_path, write_table, CacheError};
pub use htilde::{build_htilde, htilde, install_table, HTildeTable};
pub use identities::{
    check_identity, grid, render_sym, sort_reports, triples, IdentityCase, IdentityId, IdentityReport, Part, ReproKind,
};
pub use nabla::{nabla, nabla_inv, Sign};
pub use operators::{c_word, ehh, lhs_inner, nabla_c_word, op_adjoint, op_b, op_c, OpKind};
pub use pieri::{pieri, PieriData, PieriDirection};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MacError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("invariant failure at degree {degree}: {detail}")]
    Invariant { degree: usize, detail: String },
    #[error("size mismatch: composition of {size} against a + b + c = {abc}")]
    SizeMismatch { size: usize, abc: usize },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// `f[E]` for a scalar alphabet `E` in `q,t`.
pub fn eval_at(f: &SymFunc, e: &QtRational) -> QtRational {
    plethysm(f, &Alphabet::constant(e.clone())).coeff(&crate::shapes::Partition::empty())
}

/// `f* = f[X/M]`.
pub fn star(f: &SymFunc) -> SymFunc {
    plethysm(f, &Alphabet::x_times(m_inv()))
}

pub(crate) fn m_inv() -> QtRational {
    crate::shapes::recip_product(&[
        crate::qt::QtPolynomial::one().sub(&crate::qt::QtPolynomial::t()),
        crate::qt::QtPolynomial::one().sub(&crate::qt::QtPolynomial::q()),
    ])
}

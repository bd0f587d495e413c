//! The coefficient field `Q(q,t)`, Laurent polynomials in `z` over it, and
//! exact linear algebra.

mod factor;
mod gcd;
mod laurent;
mod poly;
mod rational;
mod render;

pub use gcd::gcd;
pub use laurent::ZLaurent;
pub use poly::{Monomial, QtPolynomial};
pub use rational::QtRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QtError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {q}, t = {t}")]
    Pole { q: String, t: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Substitutes `q -> q^k`, `t -> t^k` (and `z -> z^k` for Laurent values).
pub fn frobenius_scale(x: &ZLaurent, k: u32) -> ZLaurent {
    x.frobenius(k)
}

/// Coefficient of `z^k`.
pub fn z_extract(x: &ZLaurent, k: i32) -> QtRational {
    x.extract(k)
}

/// `[k]_x = 1 + x + ... + x^{k-1}` as a polynomial in `q`.
pub fn q_integer(k: u32) -> QtPolynomial {
    QtPolynomial::from_terms((0..k).map(|e| (Monomial::new(e, 0), 1.into())))
}

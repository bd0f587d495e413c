//! Symmetric functions over `Q(q,t)` (or `Q(q,t)[z, 1/z]`), stored in the
//! power-sum basis. Other bases are views produced by exact transition
//! matrices per degree.

mod basis;
mod plethysm;
mod qsym;
mod serial;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::qt::{QtPolynomial, QtRational, ZLaurent};
use crate::shapes::Partition;

pub use basis::{convert_basis, Basis, BasisExpansion};
pub use plethysm::{omega_series, plethysm, Alphabet};
pub use qsym::{fundamental_expand, gessel_q, monomial_restriction, DescentSet, QSymFunc};
pub use serial::{from_json, to_json};
pub use tables::{degree_cap, set_degree_cap, tables, Tables, DEFAULT_DEGREE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("expected a homogeneous symmetric function, found degrees {0:?}")]
    NotHomogeneous(Vec<usize>),
    #[error("malformed symmetric function JSON: {0}")]
    Json(String),
}

/// Coefficient rings the symmetric-function routines run over.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_qt(c: &QtRational) -> Self;
    fn scale_rational(&self, r: &BigRational) -> Self;
    /// The action of `p_k` on coefficients: `q -> q^k`, `t -> t^k`, `z -> z^k`.
    fn frobenius(&self, k: u32) -> Self;
}

impl Coeff for QtRational {
    fn zero() -> Self {
        QtRational::zero()
    }
    fn one() -> Self {
        QtRational::one()
    }
    fn is_zero(&self) -> bool {
        QtRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        QtRational::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QtRational::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QtRational::mul(self, o)
    }
    fn neg(&self) -> Self {
        QtRational::neg(self)
    }
    fn from_qt(c: &QtRational) -> Self {
        c.clone()
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        self.mul_rational(r)
    }
    fn frobenius(&self, k: u32) -> Self {
        QtRational::frobenius(self, k)
    }
}

impl Coeff for ZLaurent {
    fn zero() -> Self {
        ZLaurent::zero()
    }
    fn one() -> Self {
        ZLaurent::one()
    }
    fn is_zero(&self) -> bool {
        ZLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ZLaurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ZLaurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ZLaurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        ZLaurent::neg(self)
    }
    fn from_qt(c: &QtRational) -> Self {
        ZLaurent::constant(c.clone())
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&QtRational::from_bigrational(r))
    }
    fn frobenius(&self, k: u32) -> Self {
        ZLaurent::frobenius(self, k)
    }
}

/// Symmetric functions in a second alphabet serve as coefficients for
/// two-alphabet expressions; `p_k` acts on them plethystically.
impl Coeff for SymFunc<QtRational> {
    fn zero() -> Self {
        SymFunc::zero()
    }
    fn one() -> Self {
        SymFunc::one()
    }
    fn is_zero(&self) -> bool {
        SymFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        SymFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        SymFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        SymFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        SymFunc::neg(self)
    }
    fn from_qt(c: &QtRational) -> Self {
        SymFunc::constant(c.clone())
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        SymFunc::scale_rational(self, r)
    }
    fn frobenius(&self, k: u32) -> Self {
        let mut out = SymFunc::zero();
        for (lam, c) in &self.terms {
            let parts = lam.parts().iter().map(|p| p * k as usize).collect();
            out.add_term(Partition::from_parts(parts), c.frobenius(k));
        }
        out
    }
}

/// Finite sum of `c_lambda p_lambda`, possibly mixing degrees.
#[derive(Clone, PartialEq)]
pub struct SymFunc<R: Coeff = QtRational> {
    terms: BTreeMap<Partition, R>,
}

impl<R: Coeff> Default for SymFunc<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> SymFunc<R> {
    pub fn zero() -> Self {
        SymFunc {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(Partition::empty(), c)
    }

    pub fn term(lam: Partition, c: R) -> Self {
        let mut out = Self::zero();
        out.add_term(lam, c);
        out
    }

    /// `p_lambda`.
    pub fn power(lam: Partition) -> Self {
        Self::term(lam, R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `p_lambda`.
    pub fn coeff(&self, lam: &Partition) -> R {
        self.terms.get(lam).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, lam: Partition, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&lam) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&lam);
                }
            }
            None => {
                self.terms.insert(lam, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (lam, c) in &o.terms {
            out.add_term(lam.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (lam, c) in &o.terms {
            out.add_term(lam.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term(union(a, b), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (lam, x) in &self.terms {
            out.add_term(lam.clone(), x.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c.scale_rational(r))
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> SymFunc<S> {
        let mut out = SymFunc::zero();
        for (lam, c) in &self.terms {
            out.add_term(lam.clone(), f(c));
        }
        out
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|l| l.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The single degree of a nonzero homogeneous function; zero has none.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, SymError> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [d] => Ok(Some(*d)),
            ds => Err(SymError::NotHomogeneous(ds.to_vec())),
        }
    }

    pub fn component(&self, n: usize) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// `omega p_mu = (-1)^{|mu| - l(mu)} p_mu`.
    pub fn omega(&self) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), if l.sign() < 0 { c.neg() } else { c.clone() }))
                .collect(),
        }
    }

    /// The Hall adjoint of multiplication by `e_1 = p_1`.
    pub fn e1_perp(&self) -> Self {
        let mut out = Self::zero();
        for (lam, c) in &self.terms {
            let ones = lam.parts().iter().filter(|p| **p == 1).count();
            if ones == 0 {
                continue;
            }
            let mut parts = lam.parts().to_vec();
            parts.pop();
            out.add_term(Partition::from_parts(parts), c.scale_rational(&BigRational::from_integer(ones.into())));
        }
        out
    }
}

impl SymFunc<QtRational> {
    pub fn lift<S: Coeff>(&self) -> SymFunc<S> {
        self.map_coeffs(S::from_qt)
    }

    /// Substitutes `q <-> t` in every coefficient.
    pub fn swap_qt(&self) -> Self {
        self.map_coeffs(|c| c.swap_qt())
    }
}

impl SymFunc<ZLaurent> {
    /// Coefficient of `z^k`, as a symmetric function over `Q(q,t)`.
    pub fn z_extract(&self, k: i32) -> SymFunc<QtRational> {
        self.map_coeffs(|c| c.extract(k))
    }
}

pub(crate) fn union(a: &Partition, b: &Partition) -> Partition {
    let mut parts = Vec::with_capacity(a.len() + b.len());
    let (x, y) = (a.parts(), b.parts());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] >= y[j] {
            parts.push(x[i]);
            i += 1;
        } else {
            parts.push(y[j]);
            j += 1;
        }
    }
    parts.extend_from_slice(&x[i..]);
    parts.extend_from_slice(&y[j..]);
    Partition::new(parts).expect("merge of partitions")
}

/// `prod (1 - t^{mu_i})(1 - q^{mu_i})`.
fn star_weight(mu: &Partition) -> QtRational {
    let mut acc = QtPolynomial::one();
    for p in mu.parts() {
        let p = *p as u32;
        acc = acc.mul(&QtPolynomial::one().sub(&QtPolynomial::monomial(1, 0, p)));
        acc = acc.mul(&QtPolynomial::one().sub(&QtPolynomial::monomial(1, p, 0)));
    }
    QtRational::from_poly(acc)
}

/// Hall scalar product `<p_lambda, p_mu> = z_mu delta`.
pub fn hall_inner<R: Coeff>(f: &SymFunc<R>, g: &SymFunc<R>) -> R {
    let mut acc = R::zero();
    for (lam, c) in &f.terms {
        if let Some(d) = g.terms.get(lam) {
            acc = acc.add(&c.mul(d).scale_rational(&BigRational::from_integer(lam.z())));
        }
    }
    acc
}

/// Star scalar product
/// `<p_lambda, p_mu>_* = (-1)^{|mu| - l(mu)} prod (1 - t^{mu_i})(1 - q^{mu_i}) z_mu delta`.
pub fn star_inner<R: Coeff>(f: &SymFunc<R>, g: &SymFunc<R>) -> R {
    let mut acc = R::zero();
    for (lam, c) in &f.terms {
        if let Some(d) = g.terms.get(lam) {
            let mut w = star_weight(lam).mul_int(&lam.z());
            if lam.sign() < 0 {
                w = w.neg();
            }
            acc = acc.add(&c.mul(d).mul(&R::from_qt(&w)));
        }
    }
    acc
}

impl<R: Coeff> fmt::Debug for SymFunc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SymFunc{")?;
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "p{lam}: {c:?}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests;

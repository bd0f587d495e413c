//! Basis views and the standard generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::tables::tables;
use super::{Coeff, SymError, SymFunc};
use crate::qt::QtRational;
use crate::shapes::{partitions, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Power,
    Monomial,
    Homogeneous,
    Elementary,
    Schur,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Power => "power",
            Basis::Monomial => "monomial",
            Basis::Homogeneous => "homogeneous",
            Basis::Elementary => "elementary",
            Basis::Schur => "schur",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        Ok(match s {
            "power" | "p" => Basis::Power,
            "monomial" | "m" => Basis::Monomial,
            "homogeneous" | "h" => Basis::Homogeneous,
            "elementary" | "e" => Basis::Elementary,
            "schur" | "s" => Basis::Schur,
            _ => return Err(SymError::Json(format!("unknown basis {s:?}"))),
        })
    }
}

/// Coefficients of a symmetric function in a named basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion<R: Coeff = QtRational> {
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, R>,
}

impl<R: Coeff> BasisExpansion<R> {
    pub fn coeff(&self, lam: &Partition) -> R {
        self.coeffs.get(lam).cloned().unwrap_or_else(R::zero)
    }

    pub fn to_symfunc(&self) -> Result<SymFunc<R>, SymError> {
        let mut out = SymFunc::zero();
        let mut by_degree: BTreeMap<usize, Vec<(&Partition, &R)>> = BTreeMap::new();
        for (lam, c) in &self.coeffs {
            by_degree.entry(lam.size()).or_default().push((lam, c));
        }
        for (n, items) in by_degree {
            let t = tables(n)?;
            let m = t.to_power(self.basis);
            let mut acc: Vec<R> = vec![R::zero(); t.parts.len()];
            for (lam, c) in items {
                let row = &m[t.idx(lam)];
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        acc[j] = acc[j].add(&c.scale_rational(x));
                    }
                }
            }
            for (j, c) in acc.into_iter().enumerate() {
                out.add_term(t.parts[j].clone(), c);
            }
        }
        Ok(out)
    }
}

/// Expands `f` in `basis`.
pub fn convert_basis<R: Coeff>(f: &SymFunc<R>, basis: Basis) -> Result<BasisExpansion<R>, SymError> {
    let mut coeffs = BTreeMap::new();
    for n in f.degrees() {
        let t = tables(n)?;
        let m = t.from_power(basis);
        let mut acc: Vec<R> = vec![R::zero(); t.parts.len()];
        for (rho, c) in f.iter().filter(|(l, _)| l.size() == n) {
            let row = &m[t.idx(rho)];
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc[i] = acc[i].add(&c.scale_rational(x));
                }
            }
        }
        for (i, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(t.parts[i].clone(), c);
            }
        }
    }
    Ok(BasisExpansion { basis, coeffs })
}

fn generator<R: Coeff>(basis: Basis, lam: &Partition) -> SymFunc<R> {
    let t = tables(lam.size()).unwrap_or_else(|e| panic!("{e}"));
    let row = &t.to_power(basis)[t.idx(lam)];
    let mut out = SymFunc::zero();
    for (j, x) in row.iter().enumerate() {
        if !x.is_zero() {
            out.add_term(t.parts[j].clone(), R::one().scale_rational(x));
        }
    }
    out
}

impl<R: Coeff> SymFunc<R> {
    /// The basis element `b_lambda`.
    pub fn basis_element(basis: Basis, lam: &Partition) -> Self {
        generator(basis, lam)
    }

    pub fn s(lam: &Partition) -> Self {
        generator(Basis::Schur, lam)
    }

    pub fn m(lam: &Partition) -> Self {
        generator(Basis::Monomial, lam)
    }

    /// `h_n`, with `h_0 = 1` and `h_n = 0` for negative `n`.
    pub fn h(n: i64) -> Self {
        single(n, false)
    }

    /// `e_n`, with `e_0 = 1` and `e_n = 0` for negative `n`.
    pub fn e(n: i64) -> Self {
        single(n, true)
    }

    /// `p_k`.
    pub fn p(k: usize) -> Self {
        Self::power(Partition::from_parts(vec![k]))
    }

    /// Schur coefficients as a map.
    pub fn schur_coeffs(&self) -> Result<BTreeMap<Partition, R>, SymError> {
        Ok(convert_basis(self, Basis::Schur)?.coeffs)
    }
}

fn single<R: Coeff>(n: i64, signed: bool) -> SymFunc<R> {
    if n < 0 {
        return SymFunc::zero();
    }
    let mut out = SymFunc::zero();
    for rho in partitions(n as usize) {
        let mut c = BigRational::new(1.into(), rho.z());
        if signed && rho.sign() < 0 {
            c = -c;
        }
        out.add_term(rho, R::one().scale_rational(&c));
    }
    out
}

//! Pieri coefficients `e_1 H~_nu = sum d_{mu nu} H~_mu` and
//! `e_1^perp H~_mu = sum c_{mu nu} H~_nu`.

use std::collections::BTreeMap;

use super::{htilde, MacError};
use crate::qt::QtRational;
use crate::shapes::Partition;
use crate::symfunc::{star_inner, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieriDirection {
    /// `d_{mu nu}` for `mu` covering the given `nu`.
    Add,
    /// `c_{mu nu}` for `nu` covered by the given `mu`.
    Remove,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieriData {
    pub shape: Partition,
    pub direction: PieriDirection,
    /// Keyed by the other shape.
    pub coeffs: BTreeMap<Partition, QtRational>,
}

/// Coefficients of `f` in the `H~` basis of degree `n`, checking that only
/// the listed shapes occur.
fn expand(f: &SymFunc, n: usize, support: &[Partition]) -> Result<BTreeMap<Partition, QtRational>, MacError> {
    let table = htilde(n)?;
    let mut out = BTreeMap::new();
    for mu in table.shapes() {
        let c = star_inner(f, table.get(&mu)).mul(&table.invariants(&mu).w_recip());
        if support.contains(&mu) {
            out.insert(mu, c);
        } else if !c.is_zero() {
            return Err(MacError::Invariant {
                degree: n,
                detail: format!("Pieri expansion has a term at {mu} outside the expected support"),
            });
        }
    }
    Ok(out)
}

pub(crate) fn d_coeffs(nu: &Partition) -> Result<BTreeMap<Partition, QtRational>, MacError> {
    let h = htilde(nu.size())?.get(nu).clone();
    expand(&SymFunc::p(1).mul(&h), nu.size() + 1, &nu.addable())
}

pub(crate) fn c_coeffs(mu: &Partition) -> Result<BTreeMap<Partition, QtRational>, MacError> {
    if mu.size() == 0 {
        return Ok(BTreeMap::new());
    }
    let h = htilde(mu.size())?.get(mu).clone();
    expand(&h.e1_perp(), mu.size() - 1, &mu.removable())
}

/// `d_{mu nu} = M c_{mu nu} w_nu / w_mu`.
fn related(d: &QtRational, c: &QtRational, mu: &Partition, nu: &Partition) -> bool {
    let rhs = c
        .mul(&QtRational::m())
        .mul(&QtRational::from_poly(nu.invariants().w_mu))
        .mul(&mu.invariants().w_recip());
    *d == rhs
}

pub fn pieri(shape: &Partition, direction: PieriDirection) -> Result<PieriData, MacError> {
    let coeffs = match direction {
        PieriDirection::Add => {
            let d = d_coeffs(shape)?;
            for (mu, dv) in &d {
                let c = c_coeffs(mu)?.remove(shape).unwrap_or_default();
                if !related(dv, &c, mu, shape) {
                    return Err(MacError::Invariant {
                        degree: mu.size(),
                        detail: format!("d/c relation fails at ({mu}, {shape})"),
                    });
                }
            }
            d
        }
        PieriDirection::Remove => {
            let c = c_coeffs(shape)?;
            for (nu, cv) in &c {
                let d = d_coeffs(nu)?.remove(shape).unwrap_or_default();
                if !related(&d, cv, shape, nu) {
                    return Err(MacError::Invariant {
                        degree: shape.size(),
                        detail: format!("d/c relation fails at ({shape}, {nu})"),
                    });
                }
            }
            c
        }
    };
    Ok(PieriData {
        shape: shape.clone(),
        direction,
        coeffs,
    })
}

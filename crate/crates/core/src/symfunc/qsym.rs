//! Gessel fundamental quasisymmetric functions.

use std::collections::BTreeMap;

use super::basis::{convert_basis, Basis};
use super::{Coeff, SymError, SymFunc};
use crate::qt::QtRational;
use crate::shapes::Partition;

/// Subset of `{1, ..., n-1}`, sorted.
pub type DescentSet = Vec<usize>;

/// `sum c_{n,S} Q_{S,n}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QSymFunc {
    coeffs: BTreeMap<(usize, DescentSet), QtRational>,
}

impl QSymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, n: usize, set: DescentSet, c: QtRational) {
        if c.is_zero() {
            return;
        }
        let key = (n, set);
        let v = self.coeffs.remove(&key).unwrap_or_default().add(&c);
        if !v.is_zero() {
            self.coeffs.insert(key, v);
        }
    }

    pub fn coeff(&self, n: usize, set: &[usize]) -> QtRational {
        self.coeffs.get(&(n, set.to_vec())).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, DescentSet), &QtRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((n, s), c) in &o.coeffs {
            out.add_term(*n, s.clone(), c.neg());
        }
        out
    }

    /// Monomial expansion in `vars` variables.
    pub fn restrict(&self, vars: usize) -> BTreeMap<Vec<u32>, QtRational> {
        let mut out: BTreeMap<Vec<u32>, QtRational> = BTreeMap::new();
        for ((n, s), c) in &self.coeffs {
            for (mono, k) in gessel_q(s, *n, vars) {
                let e = out.entry(mono).or_default();
                *e = e.add(&c.mul_int(&k.into()));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Expansion `s_lambda = sum_T Q_{Des(T)}` over standard tableaux, applied to
/// the Schur expansion of `f`.
pub fn fundamental_expand(f: &SymFunc<QtRational>) -> Result<QSymFunc, SymError> {
    let s = convert_basis(f, Basis::Schur)?;
    let mut out = QSymFunc::zero();
    for (lam, c) in &s.coeffs {
        for set in tableau_descents(lam) {
            out.add_term(lam.size(), set, c.clone());
        }
    }
    Ok(out)
}

/// Descent sets of all standard tableaux of shape `lam`. A descent `i`
/// has `i + 1` in a higher row than `i`.
pub fn tableau_descents(lam: &Partition) -> Vec<DescentSet> {
    let n = lam.size();
    let mut filled = vec![0usize; lam.len()];
    let mut rows = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn rec(lam: &Partition, filled: &mut Vec<usize>, rows: &mut Vec<usize>, out: &mut Vec<DescentSet>) {
        if rows.len() == lam.size() {
            let des = (1..rows.len()).filter(|i| rows[*i] > rows[*i - 1]).collect();
            out.push(des);
            return;
        }
        for r in 0..lam.len() {
            let ok = filled[r] < lam.part(r) && (r == 0 || filled[r - 1] > filled[r]);
            if ok {
                filled[r] += 1;
                rows.push(r);
                rec(lam, filled, rows, out);
                rows.pop();
                filled[r] -= 1;
            }
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(lam, &mut filled, &mut rows, &mut out);
    out
}

/// Monomials of `Q_{S,n}(x_1, ..., x_vars)` with multiplicities.
pub fn gessel_q(set: &[usize], n: usize, vars: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    let mut seq = Vec::with_capacity(n);
    fn rec(set: &[usize], n: usize, vars: usize, seq: &mut Vec<usize>, out: &mut BTreeMap<Vec<u32>, i64>) {
        if seq.len() == n {
            let mut mono = vec![0u32; vars];
            for i in seq.iter() {
                mono[*i] += 1;
            }
            *out.entry(mono).or_insert(0) += 1;
            return;
        }
        let j = seq.len();
        let start = match seq.last() {
            None => 0,
            Some(&prev) => {
                if set.contains(&j) {
                    prev + 1
                } else {
                    prev
                }
            }
        };
        for i in start..vars {
            seq.push(i);
            rec(set, n, vars, seq, out);
            seq.pop();
        }
    }
    rec(set, n, vars, &mut seq, &mut out);
    out
}

/// Monomial expansion of a symmetric function in `vars` variables.
pub fn monomial_restriction<R: Coeff>(f: &SymFunc<R>, vars: usize) -> Result<BTreeMap<Vec<u32>, R>, SymError> {
    let m = convert_basis(f, Basis::Monomial)?;
    let mut out: BTreeMap<Vec<u32>, R> = BTreeMap::new();
    for (mu, c) in &m.coeffs {
        if mu.len() > vars {
            continue;
        }
        let mut padded: Vec<u32> = mu.parts().iter().map(|p| *p as u32).collect();
        padded.resize(vars, 0);
        padded.sort_unstable();
        loop {
            let e = out.entry(padded.clone()).or_insert_with(R::zero);
            *e = e.add(c);
            if !next_permutation(&mut padded) {
                break;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

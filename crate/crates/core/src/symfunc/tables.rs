//! Per-degree character tables and exact transition matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::basis::Basis;
use super::SymError;
use crate::shapes::{partitions, Partition};

pub const DEFAULT_DEGREE_CAP: usize = 12;

static CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

pub fn degree_cap() -> usize {
    CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    CAP.store(cap, Ordering::Relaxed);
}

pub type Matrix = Vec<Vec<BigRational>>;

/// Everything needed to change bases in one degree.
pub struct Tables {
    pub degree: usize,
    /// Partitions of the degree, largest first.
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `chi[lambda][rho]`.
    pub chi: Vec<Vec<i64>>,
    pub z: Vec<BigInt>,
    /// `to_power[b][i][j]`: coefficient of `p_{parts[j]}` in `b_{parts[i]}`.
    to_power: BTreeMap<Basis, Matrix>,
    /// `from_power[b][j][i]`: coefficient of `b_{parts[i]}` in `p_{parts[j]}`.
    from_power: BTreeMap<Basis, Matrix>,
}

impl Tables {
    pub fn to_power(&self, b: Basis) -> &Matrix {
        &self.to_power[&b]
    }

    pub fn from_power(&self, b: Basis) -> &Matrix {
        &self.from_power[&b]
    }

    pub fn idx(&self, lam: &Partition) -> usize {
        self.index[lam]
    }

    fn build(n: usize) -> Tables {
        let parts = partitions(n);
        let index: HashMap<Partition, usize> =
            parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut memo = HashMap::new();
        let chi: Vec<Vec<i64>> = parts
            .iter()
            .map(|lam| parts.iter().map(|rho| character(lam.parts(), rho.parts(), &mut memo)).collect())
            .collect();
        let z: Vec<BigInt> = parts.iter().map(|p| p.z()).collect();
        let k = parts.len();
        let mut to_power = BTreeMap::new();
        let mut from_power = BTreeMap::new();

        let ident: Matrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        to_power.insert(Basis::Power, ident.clone());
        from_power.insert(Basis::Power, ident);

        let s_to: Matrix = (0..k)
            .map(|i| (0..k).map(|j| BigRational::new(chi[i][j].into(), z[j].clone())).collect())
            .collect();
        let s_from: Matrix = (0..k)
            .map(|j| (0..k).map(|i| BigRational::from_integer(chi[i][j].into())).collect())
            .collect();
        to_power.insert(Basis::Schur, s_to);
        from_power.insert(Basis::Schur, s_from);

        let h_to = multiplicative(&parts, &index, false);
        let e_to = multiplicative(&parts, &index, true);
        // Coefficient of m_mu in f is <f, h_mu>.
        let m_from: Matrix = (0..k)
            .map(|j| (0..k).map(|i| &h_to[i][j] * BigRational::from_integer(z[j].clone())).collect())
            .collect();
        to_power.insert(Basis::Monomial, invert(&m_from));
        from_power.insert(Basis::Monomial, m_from);
        from_power.insert(Basis::Homogeneous, invert(&h_to));
        to_power.insert(Basis::Homogeneous, h_to);
        from_power.insert(Basis::Elementary, invert(&e_to));
        to_power.insert(Basis::Elementary, e_to);

        Tables {
            degree: n,
            parts,
            index,
            chi,
            z,
            to_power,
            from_power,
        }
    }
}

/// Tables for degree `n`, built once and shared. Construction is serialized.
pub fn tables(n: usize) -> Result<Arc<Tables>, SymError> {
    let cap = degree_cap();
    if n > cap {
        return Err(SymError::DegreeCap { degree: n, cap });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Tables>>>> = OnceLock::new();
    let mut guard = CACHE.get_or_init(Default::default).lock().expect("table cache");
    if let Some(t) = guard.get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(Tables::build(n));
    guard.insert(n, t.clone());
    Ok(t)
}

/// Murnaghan-Nakayama rule on beta-sets.
fn character(lam: &[usize], rho: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if rho.is_empty() {
        return if lam.is_empty() { 1 } else { 0 };
    }
    let key = (lam.to_vec(), rho.to_vec());
    if let Some(v) = memo.get(&key) {
        return *v;
    }
    let k = rho[0];
    let l = lam.len();
    let beta: Vec<usize> = lam.iter().enumerate().map(|(i, p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (pos, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let nb = b - k;
        let height = beta.iter().filter(|x| **x > nb && **x < b).count();
        let mut next = beta.clone();
        next[pos] = nb;
        next.sort_unstable_by(|a, c| c.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, x)| x - (l - 1 - i))
            .filter(|p| *p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * character(&shape, &rho[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Power expansion of `h_mu` (or `e_mu` when `signed`) for every `mu`.
fn multiplicative(parts: &[Partition], index: &HashMap<Partition, usize>, signed: bool) -> Matrix {
    let k = parts.len();
    let mut single: HashMap<usize, Vec<(Partition, BigRational)>> = HashMap::new();
    let mut out = Vec::with_capacity(k);
    for mu in parts {
        let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
        acc.insert(Partition::empty(), BigRational::one());
        for &p in mu.parts() {
            let factor = single.entry(p).or_insert_with(|| {
                partitions(p)
                    .into_iter()
                    .map(|rho| {
                        let mut c = BigRational::new(BigInt::one(), rho.z());
                        if signed && rho.sign() < 0 {
                            c = -c;
                        }
                        (rho, c)
                    })
                    .collect()
            });
            let mut next: BTreeMap<Partition, BigRational> = BTreeMap::new();
            for (a, ca) in &acc {
                for (b, cb) in factor.iter() {
                    *next.entry(super::union(a, b)).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
            acc = next;
        }
        let mut row = vec![BigRational::zero(); k];
        for (rho, c) in acc {
            row[index[&rho]] = c;
        }
        out.push(row);
    }
    out
}

/// Gauss-Jordan inverse over `Q`.
pub(crate) fn invert(m: &Matrix) -> Matrix {
    let k = m.len();
    let mut a: Matrix = m.to_vec();
    let mut inv: Matrix = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|r| !a[*r][col].is_zero()).expect("invertible transition matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_table_degree_three() {
        let t = tables(3).unwrap();
        // rows [3],[2,1],[1,1,1]; columns the same classes.
        assert_eq!(t.chi, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
    }

    #[test]
    fn column_orthogonality() {
        let t = tables(6).unwrap();
        let k = t.parts.len();
        for a in 0..k {
            for b in 0..k {
                let s: i64 = (0..k).map(|i| t.chi[i][a] * t.chi[i][b]).sum();
                let expect = if a == b { t.z[a].clone() } else { BigInt::zero() };
                assert_eq!(BigInt::from(s), expect);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(tables(DEFAULT_DEGREE_CAP + 1), Err(SymError::DegreeCap { .. })));
    }
}

//! `H~_mu` tables per degree, built by Gram-Schmidt over `s_lambda[X/(t-1)]`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::MacError;
use crate::qt::{QtPolynomial, QtRational};
use crate::shapes::{partitions, Invariants, Partition};
use crate::symfunc::{convert_basis, hall_inner, plethysm, star_inner, Alphabet, Basis, BasisExpansion, SymFunc};

#[derive(Clone, Debug)]
pub struct HTildeTable {
    degree: usize,
    entries: BTreeMap<Partition, SymFunc>,
    schur: BTreeMap<Partition, BTreeMap<Partition, QtRational>>,
    invariants: BTreeMap<Partition, Invariants>,
}

impl HTildeTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Shapes of the table, in the order of `partitions(n)`.
    pub fn shapes(&self) -> Vec<Partition> {
        partitions(self.degree)
    }

    /// `H~_mu` in the power basis.
    pub fn get(&self, mu: &Partition) -> &SymFunc {
        &self.entries[mu]
    }

    pub fn schur(&self, mu: &Partition) -> &BTreeMap<Partition, QtRational> {
        &self.schur[mu]
    }

    pub fn invariants(&self, mu: &Partition) -> &Invariants {
        &self.invariants[mu]
    }

    /// Builds a table from Schur coefficients and checks both invariants.
    pub fn from_schur(
        degree: usize,
        schur: BTreeMap<Partition, BTreeMap<Partition, QtRational>>,
    ) -> Result<Self, MacError> {
        let expected = partitions(degree);
        if schur.len() != expected.len() || expected.iter().any(|mu| !schur.contains_key(mu)) {
            return Err(MacError::Invariant {
                degree,
                detail: "entries do not match the partitions of the degree".into(),
            });
        }
        let mut entries = BTreeMap::new();
        for (mu, coeffs) in &schur {
            if let Some(bad) = coeffs.keys().find(|l| l.size() != degree) {
                return Err(MacError::Invariant {
                    degree,
                    detail: format!("H~{mu} has a Schur term {bad} of the wrong size"),
                });
            }
            let exp = BasisExpansion {
                basis: Basis::Schur,
                coeffs: coeffs.clone(),
            };
            entries.insert(mu.clone(), exp.to_symfunc()?);
        }
        let table = HTildeTable {
            degree,
            entries,
            schur,
            invariants: expected.iter().map(|mu| (mu.clone(), mu.invariants())).collect(),
        };
        table.validate()?;
        Ok(table)
    }

    /// Star-orthogonality with norms `w_mu` and `<H~_mu, h_n> = 1`.
    pub fn validate(&self) -> Result<(), MacError> {
        let n = self.degree;
        let fail = |detail: String| MacError::Invariant { degree: n, detail };
        let hn = SymFunc::h(n as i64);
        for (lam, hl) in &self.entries {
            let norm = hall_inner(hl, &hn);
            if !norm.is_one() {
                return Err(fail(format!("<H~{lam}, h_{n}> = {norm}")));
            }
            for (mu, hm) in &self.entries {
                if mu > lam {
                    continue;
                }
                let ip = star_inner(hl, hm);
                if lam == mu {
                    let w = QtRational::from_poly(self.invariants[mu].w_mu.clone());
                    if ip != w {
                        return Err(fail(format!("<H~{mu}, H~{mu}>_* = {ip}, expected w = {w}")));
                    }
                } else if !ip.is_zero() {
                    return Err(fail(format!("<H~{lam}, H~{mu}>_* = {ip}")));
                }
            }
        }
        Ok(())
    }
}

/// `s_lambda[X/(t-1)]`.
fn seed(lam: &Partition) -> SymFunc {
    let tm1 = QtPolynomial::t().sub(&QtPolynomial::one());
    let inv = QtRational::new(QtPolynomial::one(), tm1).expect("nonzero");
    plethysm(&SymFunc::s(lam), &Alphabet::x_times(inv))
}

/// Hall pairing with `h_n`: the sum of the power-basis coefficients.
fn pair_hn(f: &SymFunc) -> QtRational {
    f.iter().fold(QtRational::zero(), |acc, (_, c)| acc.add(c))
}

pub fn build_htilde(n: usize) -> Result<HTildeTable, MacError> {
    let mut shapes = partitions(n);
    shapes.reverse();
    let mut built: Vec<(Partition, SymFunc, QtRational)> = Vec::with_capacity(shapes.len());
    for mu in &shapes {
        let b = seed(mu);
        let mut u = b.clone();
        for (_, h, w_inv) in &built {
            let c = star_inner(&b, h).mul(w_inv);
            if !c.is_zero() {
                u = u.sub(&h.scale(&c));
            }
        }
        let norm = pair_hn(&u);
        let inv = norm.inv().map_err(|_| MacError::Invariant {
            degree: n,
            detail: format!("H~{mu} has zero pairing with h_{n} before normalization"),
        })?;
        let h = u.scale(&inv);
        built.push((mu.clone(), h, mu.invariants().w_recip()));
    }
    let mut entries = BTreeMap::new();
    let mut schur = BTreeMap::new();
    for (mu, h, _) in built {
        let s = convert_basis(&h, Basis::Schur)?;
        schur.insert(mu.clone(), s.coeffs);
        entries.insert(mu, h);
    }
    let table = HTildeTable {
        degree: n,
        entries,
        schur,
        invariants: shapes.iter().map(|mu| (mu.clone(), mu.invariants())).collect(),
    };
    table.validate()?;
    Ok(table)
}

struct Registry {
    tables: RwLock<BTreeMap<usize, Arc<HTildeTable>>>,
    builder: Mutex<()>,
}

fn registry() -> &'static Registry {
    static R: OnceLock<Registry> = OnceLock::new();
    R.get_or_init(|| Registry {
        tables: RwLock::new(BTreeMap::new()),
        builder: Mutex::new(()),
    })
}

/// The table for degree `n`, built on first use.
pub fn htilde(n: usize) -> Result<Arc<HTildeTable>, MacError> {
    let reg = registry();
    if let Some(t) = reg.tables.read().expect("registry lock").get(&n) {
        return Ok(t.clone());
    }
    let _guard = reg.builder.lock().expect("builder lock");
    if let Some(t) = reg.tables.read().expect("registry lock").get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_htilde(n)?);
    reg.tables.write().expect("registry lock").insert(n, t.clone());
    Ok(t)
}

/// Registers an already validated table, keeping any table already present.
pub fn install_table(table: HTildeTable) -> Arc<HTildeTable> {
    let reg = registry();
    let mut map = reg.tables.write().expect("registry lock");
    map.entry(table.degree).or_insert_with(|| Arc::new(table)).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn p(s: &str) -> QtRational {
        QtRational::parse(s).unwrap()
    }

    #[test]
    fn degree_zero_and_one() {
        let t0 = htilde(0).unwrap();
        assert_eq!(t0.get(&Partition::empty()), &SymFunc::one());
        let t1 = htilde(1).unwrap();
        assert_eq!(t1.get(&part(&[1])), &SymFunc::s(&part(&[1])));
    }

    #[test]
    fn degree_two_by_hand() {
        let t = htilde(2).unwrap();
        let s2 = SymFunc::s(&part(&[2]));
        let s11 = SymFunc::s(&part(&[1, 1]));
        assert_eq!(t.get(&part(&[2])), &s2.add(&s11.scale(&p("q"))));
        assert_eq!(t.get(&part(&[1, 1])), &s2.add(&s11.scale(&p("t"))));
        let h2 = t.get(&part(&[2]));
        assert_eq!(star_inner(h2, h2), QtRational::from_poly(part(&[2]).invariants().w_mu));
    }

    #[test]
    fn degree_three_schur_coefficients() {
        let t = htilde(3).unwrap();
        let s = t.schur(&part(&[2, 1]));
        assert!(s[&part(&[3])].is_one());
        assert_eq!(s[&part(&[2, 1])], p("q + t"));
        assert_eq!(s[&part(&[1, 1, 1])], p("q*t"));
        let s3 = t.schur(&part(&[3]));
        assert_eq!(s3[&part(&[2, 1])], p("q^2 + q"));
        assert_eq!(s3[&part(&[1, 1, 1])], p("q^3"));
    }

    #[test]
    fn schur_coefficients_are_polynomials_through_degree_five() {
        for n in 0..=5 {
            let t = htilde(n).unwrap();
            for mu in t.shapes() {
                for (lam, c) in t.schur(&mu) {
                    assert!(c.is_polynomial(), "H~{mu} at s{lam}: {c}");
                }
            }
        }
    }

    #[test]
    fn qt_symmetry_under_conjugation() {
        let t = htilde(4).unwrap();
        for mu in t.shapes() {
            assert_eq!(t.get(&mu).swap_qt(), *t.get(&mu.conjugate()), "{mu}");
        }
    }

    #[test]
    fn from_schur_rejects_tampering() {
        let t = htilde(2).unwrap();
        let mut s: BTreeMap<_, _> = t.shapes().iter().map(|m| (m.clone(), t.schur(m).clone())).collect();
        assert!(HTildeTable::from_schur(2, s.clone()).is_ok());
        s.get_mut(&part(&[2])).unwrap().insert(part(&[1, 1]), p("q + 1"));
        assert!(matches!(HTildeTable::from_schur(2, s), Err(MacError::Invariant { .. })));
    }
}

//! Enumeration by diagonal composition and the shuffle filters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{ParkingError, ParkingFunction, Shuffle};
use crate::qt::QtRational;
use crate::shapes::Composition;
use crate::symfunc::QSymFunc;

/// Diagonal vectors of one section of length `len`: `u_1 = 0`, later
/// entries positive and rising by at most one.
fn section_diags(len: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let prev = *cur.last().expect("section starts with 0");
        for u in 1..=prev + 1 {
            cur.push(u);
            go(len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, &mut vec![0], &mut out);
    out
}

fn diag_vectors(alpha: &Composition) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &p in alpha.parts() {
        let secs = section_diags(p);
        out = out
            .iter()
            .flat_map(|head| {
                secs.iter().map(move |s| {
                    let mut v = head.clone();
                    v.extend_from_slice(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// All car words for a fixed diagonal vector, in lex order.
fn fill_cars(diags: &[usize], out: &mut Vec<ParkingFunction>) {
    fn go(diags: &[usize], cars: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<ParkingFunction>) {
        let i = cars.len();
        if i == diags.len() {
            out.push(ParkingFunction::from_parts_unchecked(cars.clone(), diags.to_vec()));
            return;
        }
        let floor = if i > 0 && diags[i] == diags[i - 1] + 1 { cars[i - 1] + 1 } else { 1 };
        for v in floor..=diags.len() {
            if !used[v] {
                used[v] = true;
                cars.push(v);
                go(diags, cars, used, out);
                cars.pop();
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; diags.len() + 1];
    go(diags, &mut Vec::new(), &mut used, out);
}

/// Every parking function with diagonal composition `alpha`, sorted by
/// `(u, v)`. The empty composition yields the empty parking function.
pub fn enumerate_by_comp(alpha: &Composition) -> Arc<Vec<ParkingFunction>> {
    static CELL: OnceLock<Mutex<HashMap<Composition, Arc<Vec<ParkingFunction>>>>> = OnceLock::new();
    let memo = CELL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().expect("memo lock").get(alpha) {
        return v.clone();
    }
    let mut out = Vec::new();
    for diags in diag_vectors(alpha) {
        fill_cars(&diags, &mut out);
    }
    let out = Arc::new(out);
    memo.lock().expect("memo lock").insert(alpha.clone(), out.clone());
    out
}

/// One segment of consecutive letters and the direction it must appear in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub len: usize,
    pub reversed: bool,
}

/// Whether `sigma` is a shuffle of the successive segments of `1..n`.
pub fn in_shuffle(sigma: &[usize], segments: &[Segment]) -> bool {
    let n: usize = segments.iter().map(|s| s.len).sum();
    if sigma.len() != n {
        return false;
    }
    let mut seg_of = vec![0; n + 1];
    let mut start = 1;
    for (k, s) in segments.iter().enumerate() {
        seg_of[start..start + s.len].fill(k);
        start += s.len;
    }
    let mut last: Vec<Option<usize>> = vec![None; segments.len()];
    for &v in sigma {
        if v == 0 || v > n {
            return false;
        }
        let k = seg_of[v];
        if let Some(prev) = last[k] {
            let ordered = if segments[k].reversed { v < prev } else { v > prev };
            if !ordered {
                return false;
            }
        }
        last[k] = Some(v);
    }
    true
}

/// `sigma ∈ rev(1..a) ⧢ (a+1..a+b) ⧢ (a+b+1..n)`.
pub fn is_triple_shuffle(sigma: &[usize], a: usize, b: usize, c: usize) -> bool {
    in_shuffle(
        sigma,
        &[
            Segment { len: a, reversed: true },
            Segment { len: b, reversed: false },
            Segment { len: c, reversed: false },
        ],
    )
}

/// Parking functions with composition `alpha` whose diagonal word lies in
/// the shuffle `sh`.
pub fn gamma(alpha: &Composition, sh: Shuffle) -> Vec<ParkingFunction> {
    if alpha.size() != sh.n() {
        return Vec::new();
    }
    enumerate_by_comp(alpha)
        .iter()
        .filter(|pf| is_triple_shuffle(&pf.sigma(), sh.a, sh.b, sh.c))
        .cloned()
        .collect()
}

/// `sum t^area q^dinv` over `gamma(alpha, (a, b, c))`.
pub fn pi_poly(alpha: &Composition, a: usize, b: usize, c: usize) -> Result<QtRational, ParkingError> {
    if a + b + c != alpha.size() {
        return Err(ParkingError::Precondition(format!(
            "a + b + c = {} but |alpha| = {}",
            a + b + c,
            alpha.size()
        )));
    }
    Ok(pi_sum(alpha, Shuffle::new(a, b, c)))
}

pub(crate) fn pi_sum(alpha: &Composition, sh: Shuffle) -> QtRational {
    gamma(alpha, sh).iter().fold(QtRational::zero(), |acc, pf| acc.add(&pf.weight()))
}

/// `sum t^area q^dinv Q_{ides}` over parking functions with composition `p`.
pub fn rhs_quasisym(p: &Composition) -> QSymFunc {
    let mut out = QSymFunc::zero();
    for pf in enumerate_by_comp(p).iter() {
        out.add_term(pf.n(), pf.ides(), pf.weight());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::compositions;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let total: usize = compositions(3).iter().map(|a| enumerate_by_comp(a).len()).sum();
        assert_eq!(total, 16);
        assert_eq!(enumerate_by_comp(&comp(&[1, 1])).len(), 2);
        assert_eq!(gamma(&comp(&[3, 2]), Shuffle::new(1, 2, 2)).len(), 6);
        assert_eq!(enumerate_by_comp(&Composition::empty()).len(), 1);
    }

    /// Brute force over all `(u, v)` pairs checks completeness and order.
    #[test]
    fn matches_brute_force() {
        for n in 1..=4usize {
            let mut all = Vec::new();
            let words: Vec<Vec<usize>> = (0..n.pow(n as u32))
                .map(|mut k| {
                    (0..n)
                        .map(|_| {
                            let d = k % n;
                            k /= n;
                            d
                        })
                        .collect()
                })
                .collect();
            for u in &words {
                for v in &words {
                    let cars: Vec<usize> = v.iter().map(|x| x + 1).collect();
                    if let Ok(pf) = super::super::validate_pf(cars, u.clone()) {
                        all.push(pf);
                    }
                }
            }
            all.sort();
            let mut ours: Vec<ParkingFunction> = compositions(n as i64)
                .iter()
                .flat_map(|a| enumerate_by_comp(a).iter().cloned().collect::<Vec<_>>())
                .collect();
            ours.sort();
            assert_eq!(ours, all, "n = {n}");
            assert_eq!(all.len(), (n + 1).pow(n as u32 - 1));
        }
        let list = enumerate_by_comp(&comp(&[2, 2]));
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shuffle_filter() {
        assert!(is_triple_shuffle(&[4, 5, 9, 10, 3, 11, 6, 7, 12, 2, 8, 1], 3, 5, 4));
        assert!(is_triple_shuffle(&[1, 2], 0, 1, 1));
        assert!(!is_triple_shuffle(&[1, 2], 2, 0, 0));
        assert!(is_triple_shuffle(&[2, 1], 2, 0, 0));
        assert!(!is_triple_shuffle(&[1, 2], 1, 0, 0));
    }

    #[test]
    fn pi_examples() {
        let r = |s: &str| QtRational::parse(s).unwrap();
        assert_eq!(
            pi_poly(&comp(&[3, 2]), 1, 2, 2).unwrap(),
            r("t^4*q^2 + t^3*q^4 + 2*t^3*q^3 + 2*t^3*q^2")
        );
        assert_eq!(pi_poly(&comp(&[1, 1]), 0, 1, 1).unwrap(), r("1 + q"));
        assert_eq!(pi_poly(&comp(&[1]), 1, 0, 0).unwrap(), r("1"));
        assert!(pi_poly(&comp(&[2]), 1, 0, 0).is_err());
    }

    #[test]
    fn quasisym_examples() {
        let one_one = rhs_quasisym(&comp(&[1, 1]));
        assert_eq!(one_one.coeff(2, &[]), QtRational::one());
        assert_eq!(one_one.coeff(2, &[1]), QtRational::q());
        assert_eq!(one_one.iter().count(), 2);
        let two = rhs_quasisym(&comp(&[2]));
        assert_eq!(two.coeff(2, &[1]), QtRational::t());
        assert_eq!(two.iter().count(), 1);
    }
}

//! The operators `C_a`, `B_a` and their star-adjoints. Every operator is a
//! plethystic shift into `Q(q,t)[z, 1/z]` followed by a product with a
//! series in `z` and extraction of one power of `z`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use super::{nabla, MacError, Sign};
use crate::qt::{QtPolynomial, QtRational, ZLaurent};
use crate::shapes::Composition;
use crate::symfunc::{hall_inner, plethysm, Alphabet, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    C,
    B,
}

/// `P[X + c/z]` (or `P[X + eps c/z]`), grouped by the power of `z`.
fn shifted(p: &SymFunc, c: QtRational, eps: bool) -> BTreeMap<i32, SymFunc> {
    let mut shift = Alphabet::constant(ZLaurent::term(-1, c));
    if eps {
        shift = shift.eps();
    }
    let image = plethysm(&p.lift::<ZLaurent>(), &Alphabet::x().add(&shift));
    let mut out: BTreeMap<i32, SymFunc> = BTreeMap::new();
    for (lam, zl) in image.iter() {
        for (e, c) in zl.iter() {
            out.entry(e).or_default().add_term(lam.clone(), c.clone());
        }
    }
    out
}

/// Coefficient of `z^target` in `(sum_e G_e z^e)(sum_m s_m z^m)`.
fn contract(parts: &BTreeMap<i32, SymFunc>, target: i32, series: impl Fn(usize) -> SymFunc) -> SymFunc {
    let mut out = SymFunc::zero();
    for (e, g) in parts {
        let m = target - e;
        if m >= 0 {
            let s = series(m as usize);
            if !s.is_zero() {
                out = out.add(&g.mul(&s));
            }
        }
    }
    out
}

/// `(-1/q)^{a-1}`.
fn c_prefactor(a: i64) -> QtRational {
    QtRational::monomial(-1, -1, 0).pow((a - 1) as i32).expect("nonzero base")
}

fn poly(s: &str) -> QtPolynomial {
    QtPolynomial::parse(s).expect("constant expression")
}

fn frac(num: &str, den: &[&str]) -> QtRational {
    let d: Vec<QtPolynomial> = den.iter().map(|s| poly(s)).collect();
    QtRational::from_poly(poly(num)).mul(&crate::shapes::recip_product(&d))
}

/// `C_a P = (-1/q)^{a-1} P[X - (1 - 1/q)/z] sum z^m h_m |_{z^a}`, `a >= 0`.
pub fn op_c(a: i64, p: &SymFunc) -> Result<SymFunc, MacError> {
    if a < 0 {
        return Err(MacError::Params(format!("C_a needs a >= 0, got {a}")));
    }
    let parts = shifted(p, frac("1 - q", &["q"]), false);
    Ok(contract(&parts, a as i32, |m| SymFunc::h(m as i64)).scale(&c_prefactor(a)))
}

/// `B_a P = P[X + eps (1 - q)/z] sum z^m e_m |_{z^a}`, any integer `a`.
pub fn op_b(a: i64, p: &SymFunc) -> SymFunc {
    let parts = shifted(p, frac("1 - q", &[]), true);
    contract(&parts, a as i32, |m| SymFunc::e(m as i64))
}

/// The star-adjoints
/// `C*_a P = (-1/q)^{a-1} P[X - eps M/z] sum z^m e_m[X/(q(1-t))] |_{z^{-a}}` and
/// `B*_a P = P[X + M/z] sum (-z)^m e_m[X/(1-t)] |_{z^{-a}}`.
pub fn op_adjoint(kind: OpKind, a: i64, p: &SymFunc) -> Result<SymFunc, MacError> {
    let m = QtRational::m();
    match kind {
        OpKind::C => {
            if a < 0 {
                return Err(MacError::Params(format!("C*_a needs a >= 0, got {a}")));
            }
            let parts = shifted(p, m.neg(), true);
            let alpha = Alphabet::x_times(frac("1", &["q", "1 - t"]));
            let out = contract(&parts, -a as i32, |k| plethysm(&SymFunc::e(k as i64), &alpha));
            Ok(out.scale(&c_prefactor(a)))
        }
        OpKind::B => {
            let parts = shifted(p, m, false);
            let alpha = Alphabet::x_times(frac("1", &["1 - t"]));
            Ok(contract(&parts, -a as i32, |k| {
                let e = plethysm(&SymFunc::e(k as i64), &alpha);
                if k % 2 == 1 {
                    e.neg()
                } else {
                    e
                }
            }))
        }
    }
}

type Memo = Mutex<HashMap<Composition, SymFunc>>;

fn memo(cell: &'static OnceLock<Memo>) -> &'static Memo {
    cell.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C_{alpha_1} ... C_{alpha_l} 1`, memoized.
pub fn c_word(alpha: &Composition) -> SymFunc {
    static CELL: OnceLock<Memo> = OnceLock::new();
    let cache = memo(&CELL);
    if let Some(v) = cache.lock().expect("memo lock").get(alpha) {
        return v.clone();
    }
    let v = match alpha.parts().split_first() {
        None => SymFunc::one(),
        Some((first, rest)) => {
            let tail = c_word(&Composition::new(rest.to_vec()).expect("suffix of a composition"));
            op_c(*first as i64, &tail).expect("positive parts")
        }
    };
    cache.lock().expect("memo lock").insert(alpha.clone(), v.clone());
    v
}

/// `nabla C_alpha 1`, memoized.
pub fn nabla_c_word(alpha: &Composition) -> Result<SymFunc, MacError> {
    static CELL: OnceLock<Memo> = OnceLock::new();
    let cache = memo(&CELL);
    if let Some(v) = cache.lock().expect("memo lock").get(alpha) {
        return Ok(v.clone());
    }
    let v = nabla(&c_word(alpha), Sign::Plus)?;
    cache.lock().expect("memo lock").insert(alpha.clone(), v.clone());
    Ok(v)
}

/// `e_a h_b h_c`, zero when any index is negative.
pub fn ehh(a: i64, b: i64, c: i64) -> SymFunc {
    SymFunc::e(a).mul(&SymFunc::h(b)).mul(&SymFunc::h(c))
}

/// `<nabla C_alpha 1, e_a h_b h_c>`.
pub fn lhs_inner(alpha: &Composition, a: usize, b: usize, c: usize) -> Result<QtRational, MacError> {
    if a + b + c != alpha.size() {
        return Err(MacError::SizeMismatch {
            size: alpha.size(),
            abc: a + b + c,
        });
    }
    Ok(hall_inner(&nabla_c_word(alpha)?, &ehh(a as i64, b as i64, c as i64)))
}

/// `P[X + (1/q - q)/z] |_{z^k}`.
pub(crate) fn commutator_shift(p: &SymFunc, k: i64) -> SymFunc {
    shifted(p, frac("1 - q^2", &["q"]), false).remove(&(k as i32)).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::htilde;
    use crate::shapes::{compositions, partitions, Partition};
    use crate::symfunc::star_inner;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn q_inv() -> QtRational {
        QtRational::monomial(1, -1, 0)
    }

    #[test]
    fn c_on_one() {
        assert_eq!(op_c(1, &SymFunc::one()).unwrap(), SymFunc::h(1));
        for a in 0..=4 {
            assert_eq!(op_c(a, &SymFunc::one()).unwrap(), SymFunc::h(a).scale(&c_prefactor(a)));
        }
        assert!(op_c(-1, &SymFunc::one()).is_err());
    }

    #[test]
    fn b_on_one() {
        for a in 0..=4 {
            assert_eq!(op_b(a, &SymFunc::one()), SymFunc::e(a));
        }
        assert!(op_b(-1, &SymFunc::one()).is_zero());
    }

    #[test]
    fn words() {
        assert_eq!(c_word(&Composition::empty()), SymFunc::one());
        let h2 = htilde(2).unwrap().get(&part(&[2])).clone();
        assert_eq!(c_word(&comp(&[1, 1])), h2.scale(&q_inv()));
        assert_eq!(c_word(&comp(&[2])), SymFunc::h(2).scale(&q_inv()).neg());
        let sum = compositions(2).iter().fold(SymFunc::zero(), |acc, p| acc.add(&c_word(p)));
        assert_eq!(sum, SymFunc::e(2));
    }

    #[test]
    fn lhs_examples() {
        let r = |s: &str| QtRational::parse(s).unwrap();
        assert_eq!(lhs_inner(&comp(&[1]), 1, 0, 0).unwrap(), r("1"));
        assert_eq!(lhs_inner(&comp(&[1, 1]), 0, 1, 1).unwrap(), r("q + 1"));
        assert_eq!(
            lhs_inner(&comp(&[3, 2]), 1, 2, 2).unwrap(),
            r("t^4*q^2 + t^3*q^4 + 2*t^3*q^3 + 2*t^3*q^2")
        );
        assert!(matches!(lhs_inner(&comp(&[2]), 1, 0, 0), Err(MacError::SizeMismatch { .. })));
    }

    /// `<op f, g>_* = <f, op* g>_*` over Schur bases of both degrees.
    fn gram_adjoint(kind: OpKind, a: i64, max_deg: usize) {
        for d in 0..=max_deg {
            let up = d as i64 + a;
            if up < 0 {
                continue;
            }
            for f in partitions(d) {
                let f = SymFunc::s(&f);
                let of = match kind {
                    OpKind::C => op_c(a, &f).unwrap(),
                    OpKind::B => op_b(a, &f),
                };
                for g in partitions(up as usize) {
                    let g = SymFunc::s(&g);
                    let lhs = star_inner(&of, &g);
                    let rhs = star_inner(&f, &op_adjoint(kind, a, &g).unwrap());
                    assert_eq!(lhs, rhs, "{kind:?}_{a} at degree {d}");
                }
            }
        }
    }

    #[test]
    fn adjoint_c1_and_b2() {
        gram_adjoint(OpKind::C, 1, 3);
        gram_adjoint(OpKind::B, 2, 3);
    }

    #[test]
    fn adjoint_c_star_two_lands_in_degree_zero() {
        for lam in partitions(2) {
            let out = op_adjoint(OpKind::C, 2, &SymFunc::s(&lam)).unwrap();
            assert!(out.degrees().iter().all(|d| *d == 0), "{lam}");
        }
    }
}

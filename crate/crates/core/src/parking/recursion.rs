//! Exhaustive checks of the combinatorial recursion and of the bijections
//! that prove it.

use std::collections::BTreeSet;

use super::enumerate::pi_sum;
use super::{gamma, m1_split, phi_inverse, phi_map, sieve_expand, CarKind, FirstCar, ParkingError, ParkingFunction, Shuffle};
use crate::qt::QtRational;
use crate::shapes::{compositions, Composition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub m: usize,
    pub alpha: Composition,
    pub shuffle: Shuffle,
    pub lhs: QtRational,
    pub rhs: QtRational,
    pub pass: bool,
}

/// `Pi` with signed segment lengths, zero when one is negative.
fn pi_signed(alpha: &Composition, a: i64, b: i64, c: i64) -> QtRational {
    match Shuffle::signed(a, b, c) {
        Some(sh) if sh.n() == alpha.size() => pi_sum(alpha, sh),
        _ => QtRational::zero(),
    }
}

fn q_pow(k: usize) -> QtRational {
    QtRational::monomial(1, k as i64, 0)
}

/// Compares `Pi_{m,alpha}^{a,b,c}` by enumeration with the right side of
/// the `m > 1` or `m = 1` recursion built from smaller families.
pub fn verify_recursion(m: usize, alpha: &Composition, a: usize, b: usize, c: usize) -> Result<RecursionReport, ParkingError> {
    if m == 0 || a + b + c != m + alpha.size() {
        return Err(ParkingError::Precondition("needs m >= 1 and a + b + c = m + |alpha|".into()));
    }
    let sh = Shuffle::new(a, b, c);
    let lhs = pi_sum(&alpha.prepend(m), sh);
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let rhs = if m > 1 {
        let mut s = QtRational::zero();
        for beta in compositions(m as i64 - 1) {
            s = s.add(&pi_signed(&alpha.concat(&beta), a - 1, b, c));
        }
        for beta in compositions(m as i64 - 2) {
            s = s.add(&pi_signed(&alpha.concat(&beta), a, b - 1, c - 1));
        }
        s.mul(&QtRational::monomial(1, alpha.len() as i64, m as i64 - 1))
    } else {
        let mut s = pi_signed(alpha, a - 1, b, c)
            .mul(&q_pow(alpha.len()))
            .add(&pi_signed(alpha, a, b - 1, c))
            .add(&pi_signed(alpha, a, b, c - 1));
        let qm1 = QtRational::q().sub(&QtRational::one());
        for (i, &p) in alpha.parts().iter().enumerate() {
            if p == 1 {
                let hat = alpha.remove_part(i + 1).expect("index in range");
                s = s.add(&pi_signed(&hat, a, b - 1, c - 1).mul(&qm1).mul(&q_pow(i)));
            }
        }
        s
    };
    Ok(RecursionReport {
        m,
        alpha: alpha.clone(),
        shuffle: sh,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Column rules of a shuffle-valid parking function: at most one middle and
/// one big car per column, big cars only on top, middle cars only on top of
/// small cars.
pub fn check_structure(pf: &ParkingFunction, sh: Shuffle) -> bool {
    (1..pf.n()).all(|i| {
        if pf.column(i) != pf.column(i - 1) {
            return true;
        }
        let (below, above) = (sh.kind(pf.cars()[i - 1]), sh.kind(pf.cars()[i]));
        match above {
            CarKind::Small => below == CarKind::Small,
            CarKind::Middle => below == CarKind::Small,
            CarKind::Big => below != CarKind::Big,
        }
    })
}

/// Checks that the section-cycling map is a bijection from the family with
/// composition `(m, alpha)` onto the union of its two target families, with
/// area loss `m - 1`, dinv loss `l(alpha)` and a working inverse. Returns
/// the family size.
pub fn check_phi_bijection(m: usize, alpha: &Composition, sh: Shuffle) -> Result<usize, String> {
    if m < 2 || sh.n() != m + alpha.size() {
        return Err("needs m > 1 and a + b + c = m + |alpha|".into());
    }
    let family = gamma(&alpha.prepend(m), sh);
    let mut images = BTreeSet::new();
    for pf in &family {
        let img = phi_map(pf, sh).map_err(|e| e.to_string())?;
        let dcomp = img.image.dcomp();
        if !dcomp.parts().starts_with(alpha.parts()) {
            return Err(format!("{pf}: image {} does not start with {alpha}", img.image));
        }
        if pf.area() != img.image.area() + m - 1 || pf.dinv() != img.image.dinv() + alpha.len() {
            return Err(format!("{pf}: weight bookkeeping fails for image {}", img.image));
        }
        let back = phi_inverse(&img.image, img.rest_len, sh).map_err(|e| e.to_string())?;
        if back != *pf {
            return Err(format!("{pf}: inverse returns {back}"));
        }
        if !images.insert((img.target, img.image.clone())) {
            return Err(format!("{pf}: image {} repeats", img.image));
        }
    }
    let mut expected = BTreeSet::new();
    let mut add = |k: i64, a: i64, b: i64, c: i64| {
        if let Some(t) = Shuffle::signed(a, b, c) {
            for beta in compositions(k) {
                for pf in gamma(&alpha.concat(&beta), t) {
                    expected.insert((t, pf));
                }
            }
        }
    };
    let (a, b, c) = (sh.a as i64, sh.b as i64, sh.c as i64);
    add(m as i64 - 1, a - 1, b, c);
    add(m as i64 - 2, a, b - 1, c - 1);
    if images != expected {
        return Err(format!(
            "image has {} elements, target union has {}",
            images.len(),
            expected.len()
        ));
    }
    Ok(family.len())
}

/// Checks the `m = 1` weight laws term by term over the family with
/// composition `(1, alpha)`: small first car loses `q^{l(alpha)}`, big first
/// car loses nothing, and middle first car satisfies the sieve expansion of
/// `q^r`. Returns the number of middle-first parking functions checked.
pub fn check_m1_weights(alpha: &Composition, sh: Shuffle) -> Result<usize, String> {
    let qm1 = QtRational::q().sub(&QtRational::one());
    let mut middles = 0;
    for pf in gamma(&alpha.prepend(1), sh) {
        let split = m1_split(&pf, sh).map_err(|e| e.to_string())?;
        let w = pf.weight();
        let wi = split.image.weight();
        let ok = match split.first {
            FirstCar::Small => w == wi.mul(&q_pow(alpha.len())),
            FirstCar::Big => w == wi,
            FirstCar::Middle => {
                middles += 1;
                let mut rhs = wi.clone();
                for (i, img) in sieve_expand(&split.image, split.target) {
                    rhs = rhs.add(&img.weight().mul(&q_pow(i - 1)).mul(&qm1));
                }
                w == rhs && w == wi.mul(&q_pow(split.dinv_loss))
            }
        };
        if !ok {
            return Err(format!("{pf}: {:?} weight law fails", split.first));
        }
    }
    Ok(middles)
}

/// The sieve aggregate for parking functions of class `sh` with composition
/// `alpha`: summing `q^{i-1}` times the weights of the sieved images equals
/// `sum_{i: alpha_i = 1} q^{i-1} Pi_{alpha^(i)}` with one fewer big car, and
/// the sieved images cover each target family exactly once. Returns both
/// sides.
pub fn check_sieve_aggregate(alpha: &Composition, sh: Shuffle) -> Result<(QtRational, QtRational), String> {
    if sh.c == 0 || sh.n() != alpha.size() {
        return Err("needs c >= 1 and a + b + c = |alpha|".into());
    }
    let target = Shuffle::new(sh.a, sh.b, sh.c - 1);
    let mut lhs = QtRational::zero();
    let mut seen = BTreeSet::new();
    for pf in gamma(alpha, sh) {
        for (i, img) in sieve_expand(&pf, sh) {
            lhs = lhs.add(&img.weight().mul(&q_pow(i - 1)));
            if !seen.insert((i, img.clone())) {
                return Err(format!("({i}, {img}) reached twice"));
            }
        }
    }
    let mut rhs = QtRational::zero();
    let mut expected = BTreeSet::new();
    for (i, &p) in alpha.parts().iter().enumerate() {
        if p == 1 {
            let hat = alpha.remove_part(i + 1).expect("index in range");
            rhs = rhs.add(&pi_sum(&hat, target).mul(&q_pow(i)));
            for img in gamma(&hat, target) {
                expected.insert((i + 1, img));
            }
        }
    }
    if seen != expected {
        return Err(format!("sieve reaches {} images, targets hold {}", seen.len(), expected.len()));
    }
    if lhs != rhs {
        return Err(format!("{lhs} != {rhs}"));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn recursion_examples() {
        let r = verify_recursion(3, &comp(&[2]), 1, 2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, QtRational::parse("t^4*q^2 + t^3*q^4 + 2*t^3*q^3 + 2*t^3*q^2").unwrap());
        assert!(verify_recursion(1, &comp(&[1, 1]), 1, 1, 1).unwrap().pass);
        let base = verify_recursion(1, &Composition::empty(), 1, 0, 0).unwrap();
        assert!(base.pass && base.lhs.is_one());
        assert!(verify_recursion(2, &comp(&[1]), 1, 1, 1).unwrap().pass);
        assert!(verify_recursion(2, &comp(&[1]), 1, 1, 2).is_err());
    }

    #[test]
    fn phi_on_three_two() {
        assert_eq!(check_phi_bijection(3, &comp(&[2]), Shuffle::new(1, 2, 2)), Ok(6));
        assert_eq!(check_phi_bijection(2, &comp(&[1]), Shuffle::new(1, 1, 1)).map(|_| ()), Ok(()));
    }

    #[test]
    fn m1_and_sieve_small() {
        for sh in [Shuffle::new(1, 1, 1), Shuffle::new(0, 2, 1), Shuffle::new(1, 2, 0)] {
            check_m1_weights(&comp(&[1, 1]), sh).unwrap();
        }
        let (l, r) = check_sieve_aggregate(&comp(&[1, 1]), Shuffle::new(0, 1, 1)).unwrap();
        assert_eq!(l, r);
    }
}

use super::*;
use crate::shapes::partitions;

type F = SymFunc<QtRational>;

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat(n: i64, d: i64) -> QtRational {
    QtRational::from_bigrational(&ratio(n, d))
}

#[test]
fn schur_in_power_basis() {
    let s21 = F::s(&part(&[2, 1]));
    let expect = F::term(part(&[1, 1, 1]), rat(1, 3)).sub(&F::term(part(&[3]), rat(1, 3)));
    assert_eq!(s21, expect);
    let h2 = F::h(2);
    assert_eq!(h2.coeff(&part(&[2])), rat(1, 2));
    assert_eq!(F::e(2).coeff(&part(&[2])), rat(-1, 2));
    assert_eq!(F::h(0), F::one());
    assert!(F::h(-1).is_zero());
}

#[test]
fn schur_orthonormal_and_omega_conjugates() {
    for n in 1..=5 {
        let ps = partitions(n);
        for a in &ps {
            let sa = F::s(a);
            assert_eq!(sa.omega(), F::s(&a.conjugate()));
            for b in &ps {
                let ip = hall_inner(&sa, &F::s(b));
                assert_eq!(ip.is_one(), a == b);
                assert_eq!(ip.is_zero(), a != b);
            }
        }
    }
}

#[test]
fn basis_round_trips() {
    let f = F::s(&part(&[3, 1])).add(&F::h(4).scale(&QtRational::q()));
    for b in [Basis::Power, Basis::Monomial, Basis::Homogeneous, Basis::Elementary, Basis::Schur] {
        let exp = convert_basis(&f, b).unwrap();
        assert_eq!(exp.to_symfunc().unwrap(), f, "{b}");
    }
    let m = convert_basis(&F::h(2), Basis::Monomial).unwrap();
    assert!(m.coeff(&part(&[2])).is_one());
    assert!(m.coeff(&part(&[1, 1])).is_one());
    assert_eq!(F::m(&part(&[1, 1])), F::e(2));
}

#[test]
fn star_product_matches_hall_through_omega_and_star() {
    // <f, g> = <f, omega g*>_*, with g* = g[X/M].
    let m_inv = QtRational::one().div(&QtRational::m()).unwrap();
    let star = Alphabet::x_times(m_inv);
    for f in [F::s(&part(&[2, 1])), F::h(3), F::e(2).mul(&F::p(1))] {
        for g in [F::s(&part(&[1, 1, 1])), F::h(3).add(&F::s(&part(&[2, 1])))] {
            let lhs = hall_inner(&f, &g);
            let rhs = star_inner(&f, &plethysm(&g, &star).omega());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn e1_perp_is_adjoint() {
    let f = F::s(&part(&[3, 2]));
    for g in partitions(4) {
        let g = F::s(&g);
        assert_eq!(hall_inner(&f.e1_perp(), &g), hall_inner(&f, &F::p(1).mul(&g)));
    }
}

#[test]
fn plethysm_rules() {
    let x = Alphabet::<QtRational>::x();
    let neg = x.neg();
    let eps = x.eps();
    for k in 1..=4 {
        let pk = F::p(k);
        assert_eq!(plethysm(&pk, &neg), pk.neg());
        let sign = if k % 2 == 0 { pk.clone() } else { pk.neg() };
        assert_eq!(plethysm(&pk, &eps), sign);
    }
    // h_n[-eps X] = e_n[X].
    let me = x.eps().neg();
    for n in 0..=4 {
        assert_eq!(plethysm(&F::h(n), &me), F::e(n));
    }
    // p_2[q X] = q^2 p_2.
    let qx = Alphabet::x_times(QtRational::q());
    assert_eq!(plethysm(&F::p(2), &qx), F::p(2).scale(&QtRational::monomial(1, 2, 0)));
}

#[test]
fn omega_of_scalar_alphabet() {
    let a = Alphabet::constant(ZLaurent::z().scale(&QtRational::parse("1 - t").unwrap()));
    let om = omega_series(&a, 3);
    let c0 = om.coeff(&Partition::empty());
    assert_eq!(c0.extract(1), QtRational::parse("1 - t").unwrap());
    assert!(c0.extract(0).is_one());
    // Omega[z(1-t)] = (1 - tz)/(1 - z): every higher coefficient is 1 - t.
    assert_eq!(c0.extract(3), QtRational::parse("1 - t").unwrap());
}

#[test]
fn omega_of_zx_is_sum_of_h() {
    let om = omega_series(&Alphabet::x_times(ZLaurent::z()), 3);
    for n in 0..=3 {
        assert_eq!(om.z_extract(n), F::h(n as i64));
    }
}

#[test]
fn fundamental_expansion_and_restriction() {
    let q = fundamental_expand(&F::s(&part(&[2, 1]))).unwrap();
    assert!(q.coeff(3, &[1]).is_one());
    assert!(q.coeff(3, &[2]).is_one());
    assert!(q.coeff(3, &[]).is_zero());
    for lam in partitions(4) {
        let f = F::s(&lam).add(&F::h(4).scale(&QtRational::t()));
        let via_q = fundamental_expand(&f).unwrap().restrict(3);
        let direct = monomial_restriction(&f, 3).unwrap();
        assert_eq!(via_q, direct, "{lam}");
    }
}

#[test]
fn json_round_trip() {
    let f = F::s(&part(&[2, 1])).scale(&QtRational::parse("q|1 - t").unwrap());
    let js = to_json(&f, Basis::Schur).unwrap();
    assert_eq!(js, r#"{"basis":"schur","degree":3,"coeffs":{"[2,1]":"-q|t - 1"}}"#);
    assert_eq!(from_json(&js).unwrap(), f);
    assert!(to_json(&F::h(2).add(&F::h(1)), Basis::Schur).is_err());
}

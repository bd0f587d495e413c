use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qtshuffle::macdonald::{check_identity, nabla, nabla_inv, IdentityCase, Sign};
use qtshuffle::parking::{enumerate_by_comp, phi_inverse, phi_map, ParkingFunction, Shuffle};
use qtshuffle::qt::QtRational;
use qtshuffle::shapes::{compositions, partitions, Composition, Partition};
use qtshuffle::symfunc::{hall_inner, SymFunc};

const FACTORS: [&str; 6] = ["1 - q", "1 - t", "q - t", "1 - q*t", "q", "t"];

fn qt() -> impl Strategy<Value = QtRational> {
    let terms = prop::collection::vec((-3i64..=3, 0i64..=3, 0i64..=3), 0..4);
    let dens = prop::collection::vec(0..FACTORS.len(), 0..3);
    (terms, dens).prop_map(|(terms, dens)| {
        let num = terms
            .into_iter()
            .fold(QtRational::zero(), |acc, (c, a, b)| acc.add(&QtRational::monomial(c, a, b)));
        dens.into_iter().fold(num, |acc, i| {
            acc.div(&QtRational::parse(FACTORS[i]).unwrap()).unwrap()
        })
    })
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    let r = (-9i64..=9, 1i64..=5).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)));
    (r.clone(), r)
}

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let all = partitions(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn composition(lo: usize, hi: usize) -> impl Strategy<Value = Composition> {
    (lo..=hi).prop_flat_map(|n| {
        let all = compositions(n as i64);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// A random combination of Schur functions of degree at most `max`.
fn symfunc(max: usize) -> impl Strategy<Value = SymFunc> {
    prop::collection::vec((partition(max), -2i64..=2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(SymFunc::zero(), |acc, (lam, c)| {
            acc.add(&SymFunc::s(&lam).scale(&QtRational::from_int(c)))
        })
    })
}

fn parking_function(lo: usize, hi: usize) -> impl Strategy<Value = ParkingFunction> {
    composition(lo, hi).prop_flat_map(|alpha| {
        let family = enumerate_by_comp(&alpha);
        (0..family.len()).prop_map(move |i| family[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in qt(), y in qt(), z in qt()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        if !y.is_zero() {
            prop_assert_eq!(x.div(&y).unwrap().mul(&y), x.clone());
        }
    }

    #[test]
    fn canonical_text_round_trips(x in qt()) {
        prop_assert_eq!(QtRational::parse(&x.render()).unwrap(), x.clone());
        prop_assert_eq!(QtRational::parse(&x.render_tq()).unwrap(), x.clone());
        prop_assert_eq!(x.swap_qt().swap_qt(), x);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in qt(), y in qt(), (q, t) in point()) {
        if let (Ok(a), Ok(b)) = (x.eval(&q, &t), y.eval(&q, &t)) {
            prop_assert_eq!(x.add(&y).eval(&q, &t).unwrap(), &a + &b);
            prop_assert_eq!(x.mul(&y).eval(&q, &t).unwrap(), &a * &b);
        }
    }

    #[test]
    fn partition_shape_laws(mu in partition(8)) {
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(mu.conjugate().size(), mu.size());
        for nu in mu.removable() {
            prop_assert_eq!(nu.size() + 1, mu.size());
            prop_assert!(mu.removed_cell(&nu).is_some());
            prop_assert!(nu.addable().contains(&mu));
        }
        let inv = mu.invariants();
        let conj = mu.conjugate().invariants();
        prop_assert_eq!(conj.b_mu.swap_qt(), inv.b_mu);
        prop_assert_eq!(conj.t_mu.swap_qt(), inv.t_mu);
    }

    #[test]
    fn composition_text_round_trips(alpha in composition(0, 7)) {
        prop_assert_eq!(alpha.to_string().parse::<Composition>().unwrap(), alpha);
    }

    #[test]
    fn omega_is_an_isometric_involution(f in symfunc(5), g in symfunc(5)) {
        prop_assert_eq!(f.omega().omega(), f.clone());
        prop_assert_eq!(hall_inner(&f.omega(), &g.omega()), hall_inner(&f, &g));
        prop_assert_eq!(hall_inner(&f, &g), hall_inner(&g, &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nabla_is_linear_and_invertible(f in symfunc(4), g in symfunc(4), c in qt()) {
        let lhs = nabla(&f.add(&g.scale(&c)), Sign::Plus).unwrap();
        let rhs = nabla(&f, Sign::Plus).unwrap().add(&nabla(&g, Sign::Plus).unwrap().scale(&c));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(nabla_inv(&lhs).unwrap(), f.add(&g.scale(&c)));
    }

    #[test]
    fn creation_operators_commute_on_random_input(p in symfunc(3), a in -2i64..=2, b in 1i64..=2) {
        prop_assume!(a + b > 0);
        let rep = check_identity(&IdentityCase::Commute { a, b, p }).unwrap();
        prop_assert!(rep.pass, "{} vs {}", rep.lhs, rep.rhs);
    }

    #[test]
    fn commutator_holds_on_random_input(p in symfunc(3), a in -3i64..=2, b in 0i64..=2) {
        let rep = check_identity(&IdentityCase::Commutator { a, b, p }).unwrap();
        prop_assert!(rep.pass, "{} vs {}", rep.lhs, rep.rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parking_statistics(pf in parking_function(1, 7)) {
        let n = pf.n();
        prop_assert_eq!(pf.area(), pf.diags().iter().sum::<usize>());
        let mut sorted = pf.sigma();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        let zeros: Vec<usize> = (0..n).filter(|i| pf.diags()[*i] == 0).chain([n]).collect();
        let gaps: Vec<usize> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
        prop_assert_eq!(pf.dcomp().parts().to_vec(), gaps);
        prop_assert_eq!(pf.to_string().parse::<ParkingFunction>().unwrap(), pf.clone());
        let one = BigRational::from_integer(1.into());
        prop_assert_eq!(pf.weight().eval(&one, &one).unwrap(), one);
    }

    #[test]
    fn phi_round_trips(pf in parking_function(2, 7), split in 0usize..=7, big in 0usize..=7) {
        let n = pf.n();
        let a = split.min(n);
        let c = big.min(n - a);
        let sh = Shuffle::new(a, n - a - c, c);
        let first = pf.dcomp().parts()[0];
        prop_assume!(first > 1 && qtshuffle::parking::is_triple_shuffle(&pf.sigma(), sh.a, sh.b, sh.c));
        let img = phi_map(&pf, sh).unwrap();
        prop_assert_eq!(pf.area(), img.image.area() + first - 1);
        prop_assert_eq!(phi_inverse(&img.image, img.rest_len, sh).unwrap(), pf);
    }
}

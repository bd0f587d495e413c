//! Parameter grids for each suite. Cases are listed in a fixed order so the
//! report never depends on scheduling.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;

use super::{Case, Outcome, Suite};
use crate::macdonald::{check_identity, grid, htilde, lhs_inner, nabla_c_word, op_adjoint, op_b, op_c, triples, IdentityId, OpKind};
use crate::parking::{
    check_m1_weights, check_sieve_aggregate, check_phi_bijection, check_structure, gamma, pf_to_path, pi_poly, rhs_quasisym,
    verify_recursion, Shuffle, Step,
};
use crate::shapes::{compositions, partitions, Composition};
use crate::symfunc::{fundamental_expand, star_inner, SymFunc};

/// Every case of `suite` up to size `n_max`.
pub fn cases(suite: Suite, n_max: usize) -> Vec<Case> {
    match suite {
        Suite::Macdonald => macdonald(n_max),
        Suite::Operators => operators(n_max),
        Suite::Recursion => recursion(n_max),
        Suite::MainTheorem => main_theorem(n_max),
        Suite::ShuffleQsym => shuffle_qsym(n_max),
        Suite::Paths => paths(n_max),
        Suite::All => Suite::EACH.iter().flat_map(|s| cases(*s, n_max)).collect(),
    }
}

fn identity_cases(suite: Suite, ids: &[IdentityId], n_max: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for &id in ids {
        for case in grid(id, n_max) {
            let params = case.params();
            out.push(Case::new(
                suite,
                id.name(),
                params,
                Box::new(move || match check_identity(&case) {
                    Ok(r) => Outcome::verdict(r.pass, r.lhs, r.rhs),
                    Err(e) => Outcome::error(e),
                }),
            ));
        }
    }
    out
}

fn shuffles(n: usize) -> impl Iterator<Item = Shuffle> {
    triples(n).into_iter().map(|(a, b, c)| Shuffle::new(a, b, c))
}

fn all_compositions(lo: usize, n_max: usize) -> Vec<Composition> {
    (lo..=n_max).flat_map(|n| compositions(n as i64)).collect()
}

fn macdonald(n_max: usize) -> Vec<Case> {
    let mut out: Vec<Case> = (0..=n_max)
        .map(|n| {
            Case::new(
                Suite::Macdonald,
                "htilde",
                format!("n={n}"),
                Box::new(move || match htilde(n).and_then(|t| t.validate()) {
                    Ok(()) => Outcome::verdict(true, "valid".into(), "valid".into()),
                    Err(e) => Outcome::verdict(false, e.to_string(), "valid".into()),
                }),
            )
        })
        .collect();
    use IdentityId::*;
    out.extend(identity_cases(
        Suite::Macdonald,
        &[Cauchy, SymAb, PieriRel, SumC, SumD, ExpAbc, Reproducing, Erh],
        n_max,
    ));
    out
}

/// `<op f, g>_* = <f, op* g>_*` over Schur bases, one case per degree.
fn adjoint_case(kind: OpKind, a: i64, d: usize) -> Case {
    let name = match kind {
        OpKind::C => "adjoint-c",
        OpKind::B => "adjoint-b",
    };
    Case::new(
        Suite::Operators,
        name,
        format!("a={a} deg={d}"),
        Box::new(move || {
            let up = d as i64 + a;
            if up < 0 {
                return Outcome::verdict(true, String::new(), String::new());
            }
            for lam in partitions(d) {
                let f = SymFunc::s(&lam);
                let of = match kind {
                    OpKind::C => match op_c(a, &f) {
                        Ok(v) => v,
                        Err(e) => return Outcome::error(e),
                    },
                    OpKind::B => op_b(a, &f),
                };
                for mu in partitions(up as usize) {
                    let g = SymFunc::s(&mu);
                    let adj = match op_adjoint(kind, a, &g) {
                        Ok(v) => v,
                        Err(e) => return Outcome::error(e),
                    };
                    let lhs = star_inner(&of, &g);
                    let rhs = star_inner(&f, &adj);
                    if lhs != rhs {
                        return Outcome::verdict(
                            false,
                            format!("s{lam} s{mu}: {}", lhs.render()),
                            format!("s{lam} s{mu}: {}", rhs.render()),
                        );
                    }
                }
            }
            Outcome::verdict(true, String::new(), String::new())
        }),
    )
}

fn operators(n_max: usize) -> Vec<Case> {
    use IdentityId::*;
    let mut out = identity_cases(Suite::Operators, &[Commute, Commutator, EnDecomp], n_max);
    for d in 0..=n_max.min(4) {
        for a in 0..=2 {
            out.push(adjoint_case(OpKind::C, a, d));
        }
        for a in -1..=2 {
            out.push(adjoint_case(OpKind::B, a, d));
        }
    }
    out
}

fn recursion(n_max: usize) -> Vec<Case> {
    use IdentityId::*;
    let mut out = identity_cases(
        Suite::Recursion,
        &[Lemma31, Lemma32, Prop31, Thm31, Thm32, Thm21, RecM, Rec1],
        n_max,
    );
    let s = Suite::Recursion;
    for n in 1..=n_max {
        for m in 1..=n {
            for alpha in compositions((n - m) as i64) {
                for sh in shuffles(n) {
                    let alpha = alpha.clone();
                    out.push(Case::new(
                        s,
                        "comb-recursion",
                        format!("m={m} alpha={alpha} abc={sh}"),
                        Box::new(move || match verify_recursion(m, &alpha, sh.a, sh.b, sh.c) {
                            Ok(r) => Outcome::verdict(r.pass, r.lhs.render(), r.rhs.render()),
                            Err(e) => Outcome::error(e),
                        }),
                    ));
                }
            }
        }
    }
    for n in 2..=n_max {
        for m in 2..=n {
            for alpha in compositions((n - m) as i64) {
                for sh in shuffles(n) {
                    let alpha = alpha.clone();
                    out.push(Case::new(
                        s,
                        "phi-bijection",
                        format!("m={m} alpha={alpha} abc={sh}"),
                        Box::new(move || match check_phi_bijection(m, &alpha, sh) {
                            Ok(k) => Outcome::verdict(true, k.to_string(), k.to_string()),
                            Err(e) => Outcome::verdict(false, e, "bijection".into()),
                        }),
                    ));
                }
            }
        }
    }
    for n in 1..=n_max {
        for alpha in compositions((n - 1) as i64) {
            for sh in shuffles(n) {
                let alpha = alpha.clone();
                out.push(Case::new(
                    s,
                    "m1-weights",
                    format!("alpha={alpha} abc={sh}"),
                    Box::new(move || match check_m1_weights(&alpha, sh) {
                        Ok(k) => Outcome::verdict(true, k.to_string(), k.to_string()),
                        Err(e) => Outcome::verdict(false, e, "term-by-term".into()),
                    }),
                ));
            }
        }
    }
    for alpha in all_compositions(1, n_max) {
        if !alpha.parts().contains(&1) {
            continue;
        }
        for sh in shuffles(alpha.size()).filter(|sh| sh.c > 0) {
            let alpha = alpha.clone();
            out.push(Case::new(
                s,
                "sieve-aggregate",
                format!("alpha={alpha} abc={sh}"),
                Box::new(move || match check_sieve_aggregate(&alpha, sh) {
                    Ok((l, r)) => Outcome::compare(l.render(), r.render()),
                    Err(e) => Outcome::verdict(false, e, "exact cover".into()),
                }),
            ));
        }
    }
    out
}

fn main_theorem(n_max: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for alpha in all_compositions(1, n_max) {
        for sh in shuffles(alpha.size()) {
            let alpha = alpha.clone();
            out.push(Case::new(
                Suite::MainTheorem,
                "inner-vs-enumeration",
                format!("alpha={alpha} abc={sh}"),
                Box::new(move || {
                    let lhs = match lhs_inner(&alpha, sh.a, sh.b, sh.c) {
                        Ok(v) => v,
                        Err(e) => return Outcome::error(e),
                    };
                    match pi_poly(&alpha, sh.a, sh.b, sh.c) {
                        Ok(rhs) => Outcome::compare(lhs.render(), rhs.render()),
                        Err(e) => Outcome::error(e),
                    }
                }),
            ));
        }
    }
    out
}

fn shuffle_qsym(n_max: usize) -> Vec<Case> {
    all_compositions(1, n_max)
        .into_iter()
        .map(|p| {
            Case::new(
                Suite::ShuffleQsym,
                "fundamental-expansion",
                format!("p={p}"),
                Box::new(move || {
                    let lhs = match nabla_c_word(&p).map_err(|e| e.to_string()).and_then(|f| {
                        fundamental_expand(&f).map_err(|e| e.to_string())
                    }) {
                        Ok(v) => v,
                        Err(e) => return Outcome::error(e),
                    };
                    let rhs = rhs_quasisym(&p);
                    let render = |f: &crate::symfunc::QSymFunc| {
                        let terms: Vec<String> = f
                            .iter()
                            .map(|((n, set), c)| format!("({})*F[{n};{:?}]", c.render(), set))
                            .collect();
                        if terms.is_empty() {
                            "0".to_string()
                        } else {
                            terms.join(" + ")
                        }
                    };
                    Outcome::compare(render(&lhs), render(&rhs))
                }),
            )
        })
        .collect()
}

fn paths(n_max: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for alpha in all_compositions(1, n_max) {
        for sh in shuffles(alpha.size()) {
            let alpha = alpha.clone();
            out.push(Case::new(
                Suite::Paths,
                "path-conversion",
                format!("alpha={alpha} abc={sh}"),
                Box::new(move || path_check(&alpha, sh)),
            ));
        }
    }
    out
}

fn path_check(alpha: &Composition, sh: Shuffle) -> Outcome {
    let family = gamma(alpha, sh);
    let mut seen = BTreeSet::new();
    for pf in &family {
        if !check_structure(pf, sh) {
            return Outcome::verdict(false, format!("{pf}: shuffle structure"), "valid".into());
        }
        let path = pf_to_path(pf, sh);
        let s2 = path.count(Step::Slope2);
        let counts = (
            path.count(Step::North),
            path.count(Step::Red) + s2,
            path.count(Step::Blue) + s2,
            path.count(Step::East),
        );
        if counts != (sh.a, sh.b, sh.c, sh.n()) {
            return Outcome::verdict(
                false,
                format!("{pf}: {path}"),
                format!("N={} R+S2={} B+S2={} E={}", sh.a, sh.b, sh.c, sh.n()),
            );
        }
        if !seen.insert(path.to_string()) {
            return Outcome::verdict(false, format!("{pf}: repeated path {path}"), "injective".into());
        }
    }
    let one = BigRational::one();
    let lhs = lhs_inner(alpha, sh.a, sh.b, sh.c).map_err(|e| e.to_string()).and_then(|v| {
        v.eval(&one, &one).map_err(|e| e.to_string())
    });
    match lhs {
        Ok(v) => Outcome::compare(seen.len().to_string(), v.to_string()),
        Err(e) => Outcome::error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::MainTheorem, Suite::ShuffleQsym, Suite::Paths, Suite::Recursion] {
            for case in cases(suite, 3) {
                let r = case.run();
                assert_eq!(r.status, Status::Pass, "{} {} {}: {:?} {:?}", r.suite, r.id, r.params, r.lhs, r.rhs);
            }
        }
    }

    #[test]
    fn all_is_the_concatenation() {
        let total: usize = Suite::EACH.iter().map(|s| cases(*s, 2).len()).sum();
        assert_eq!(cases(Suite::All, 2).len(), total);
    }

    #[test]
    fn ids_are_unique_within_a_suite() {
        for suite in Suite::EACH {
            let cs = cases(suite, 3);
            let keys: BTreeSet<_> = cs.iter().map(|c| (c.id.clone(), c.params.clone())).collect();
            assert_eq!(keys.len(), cs.len(), "{suite}");
        }
    }
}

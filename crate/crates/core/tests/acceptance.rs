//! Runs the twelve acceptance criteria and prints one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qtshuffle::macdonald::{
    c_word, check_identity, grid, htilde, lhs_inner, nabla, nabla_c_word, write_table, read_table, IdentityCase,
    IdentityId, Sign,
};
use qtshuffle::parking::{
    check_m1_weights, check_sieve_aggregate, check_phi_bijection, enumerate_by_comp, gamma, is_triple_shuffle, pi_poly, verify_recursion,
    ParkingFunction, Shuffle,
};
use qtshuffle::qt::QtRational;
use qtshuffle::shapes::{compositions, partitions, Composition, Partition};
use qtshuffle::symfunc::{hall_inner, star_inner, SymFunc};
use qtshuffle::verify::{self, Format, Suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

fn r(s: &str) -> QtRational {
    QtRational::parse(s).unwrap()
}

fn shuffles(n: usize) -> Vec<Shuffle> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            out.push(Shuffle::new(a, b, n - a - b));
        }
    }
    out
}

fn all_pfs(n: usize) -> Vec<ParkingFunction> {
    compositions(n as i64).iter().flat_map(|a| enumerate_by_comp(a).as_ref().clone()).collect()
}

fn weight_sum<'a>(pfs: impl Iterator<Item = &'a ParkingFunction>) -> QtRational {
    pfs.fold(QtRational::zero(), |acc, pf| acc.add(&QtRational::monomial(1, pf.dinv() as i64, pf.area() as i64)))
}

fn suite_all_pass(suite: Suite, n_max: usize) -> Outcome {
    let report = verify::run(suite, n_max, 1);
    if let Some(bad) = report.cases.iter().find(|c| c.status != verify::Status::Pass) {
        return Err(format!("{} {}: lhs {:?} rhs {:?}", bad.id, bad.params, bad.lhs, bad.rhs));
    }
    Ok(format!("{} cases", report.cases.len()))
}

fn c1_worked_example() -> Outcome {
    let start = Instant::now();
    let alpha = comp(&[3, 2]);
    let expected = r("t^4*q^2 + t^3*q^4 + 2*t^3*q^3 + 2*t^3*q^2");
    let symbolic = lhs_inner(&alpha, 1, 2, 2).map_err(|e| e.to_string())?;
    let enumerated = pi_poly(&alpha, 1, 2, 2).map_err(|e| e.to_string())?;
    ensure(symbolic == expected, || format!("symbolic side {}", symbolic.render_tq()))?;
    ensure(enumerated == expected, || format!("enumeration side {}", enumerated.render_tq()))?;
    let family = gamma(&alpha, Shuffle::new(1, 2, 2));
    ensure(family.len() == 6, || format!("{} parking functions", family.len()))?;
    for pf in &family {
        ensure(pf.dcomp() == alpha && is_triple_shuffle(&pf.sigma(), 1, 2, 2), || format!("{pf} outside the class"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("6 parking functions, {:.2}s", elapsed.as_secs_f64()))
}

fn c2_main_theorem() -> Outcome {
    suite_all_pass(Suite::MainTheorem, 6)
}

fn c3_shuffle_qsym() -> Outcome {
    suite_all_pass(Suite::ShuffleQsym, 5)
}

fn c4_en_decomposition() -> Outcome {
    for n in 0..=7usize {
        let sum = compositions(n as i64).iter().fold(SymFunc::zero(), |acc, p| acc.add(&c_word(p)));
        ensure(sum == SymFunc::e(n as i64), || format!("n = {n}"))?;
    }
    Ok("n <= 7".into())
}

fn c5_htilde_table() -> Outcome {
    let mut shapes = 0;
    for n in 0..=6usize {
        let table = htilde(n).map_err(|e| e.to_string())?;
        table.validate().map_err(|e| e.to_string())?;
        let hn = SymFunc::h(n as i64);
        for mu in partitions(n) {
            let h = table.get(&mu);
            ensure(hall_inner(h, &hn).is_one(), || format!("<H~{mu}, h_{n}> != 1"))?;
            let w = QtRational::from_poly(mu.invariants().w_mu);
            ensure(star_inner(h, h) == w, || format!("Gram diagonal at {mu}"))?;
            for nu in partitions(n).into_iter().filter(|nu| *nu != mu) {
                ensure(star_inner(h, table.get(&nu)).is_zero(), || format!("<H~{mu}, H~{nu}>_* != 0"))?;
            }
            shapes += 1;
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn c6_identity_registry() -> Outcome {
    use IdentityId::*;
    let bounds = [
        (Cauchy, 4),
        (SymAb, 4),
        (PieriRel, 5),
        (SumC, 5),
        (SumD, 5),
        (ExpAbc, 5),
        (Reproducing, 5),
        (Erh, 6),
        (Commute, 3),
        (Commutator, 3),
        (Lemma31, 6),
        (Lemma32, 6),
        (Prop31, 6),
        (Thm31, 6),
        (Thm32, 6),
        (Thm21, 6),
    ];
    let mut total = 0;
    let mut regimes = [0usize; 3];
    let mut nonzero_negative = false;
    for (id, n) in bounds {
        for case in grid(id, n) {
            let rep = check_identity(&case).map_err(|e| format!("{id} {}: {e}", case.params()))?;
            ensure(rep.pass, || format!("{id} {}: {} vs {}", rep.params, rep.lhs, rep.rhs))?;
            if let IdentityCase::Commutator { a, b, .. } = &case {
                let k = match (a + b).signum() {
                    1 => 0,
                    0 => 1,
                    _ => 2,
                };
                regimes[k] += 1;
                nonzero_negative |= k == 2 && rep.rhs != "0";
            }
            total += 1;
        }
    }
    ensure(regimes.iter().all(|k| *k > 0) && nonzero_negative, || format!("commutator regimes {regimes:?}"))?;
    Ok(format!("{total} cases, commutator regimes {regimes:?}"))
}

fn c7_recursions() -> Outcome {
    let mut count = 0;
    for n in 1..=6usize {
        for m in 1..=n {
            for alpha in compositions((n - m) as i64) {
                for sh in shuffles(n) {
                    let (a, b, c) = (sh.a, sh.b, sh.c);
                    let case = if m > 1 {
                        IdentityCase::RecM { m, alpha: alpha.clone(), a, b, c }
                    } else {
                        IdentityCase::Rec1 { alpha: alpha.clone(), a, b, c }
                    };
                    let sym = check_identity(&case).map_err(|e| e.to_string())?;
                    let comb = verify_recursion(m, &alpha, a, b, c).map_err(|e| e.to_string())?;
                    let direct = lhs_inner(&alpha.prepend(m), a, b, c).map_err(|e| e.to_string())?.render();
                    let four = [sym.lhs.clone(), sym.rhs.clone(), comb.lhs.render(), comb.rhs.render()];
                    ensure(sym.pass && comb.pass && four.iter().all(|s| *s == direct), || {
                        format!("m={m} alpha={alpha} abc={sh}: {four:?} vs {direct}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn c8_bijection() -> Outcome {
    let (mut phi, mut m1, mut sieve) = (0, 0, 0);
    for n in 1..=7usize {
        for sh in shuffles(n) {
            for m in 2..=n {
                for alpha in compositions((n - m) as i64) {
                    check_phi_bijection(m, &alpha, sh).map_err(|e| format!("phi m={m} alpha={alpha} abc={sh}: {e}"))?;
                    phi += 1;
                }
            }
            for alpha in compositions((n - 1) as i64) {
                check_m1_weights(&alpha, sh).map_err(|e| format!("m=1 alpha={alpha} abc={sh}: {e}"))?;
                m1 += 1;
            }
            if n <= 6 && sh.c > 0 {
                for alpha in compositions(n as i64).into_iter().filter(|a| a.parts().contains(&1)) {
                    let (l, r) = check_sieve_aggregate(&alpha, sh).map_err(|e| format!("sieve alpha={alpha} abc={sh}: {e}"))?;
                    ensure(l == r, || format!("sieve alpha={alpha} abc={sh}: {} vs {}", l.render(), r.render()))?;
                    sieve += 1;
                }
            }
        }
    }
    Ok(format!("{phi} bijection, {m1} term-by-term, {sieve} aggregate cases"))
}

/// Cars `1..=k` in decreasing (or increasing) order and `k+1..=n` in increasing order.
fn two_segment(sigma: &[usize], k: usize, first_decreasing: bool) -> bool {
    let low: Vec<usize> = sigma.iter().copied().filter(|x| *x <= k).collect();
    let high: Vec<usize> = sigma.iter().copied().filter(|x| *x > k).collect();
    let low_ok = if first_decreasing {
        low.windows(2).all(|w| w[0] > w[1])
    } else {
        low.windows(2).all(|w| w[0] < w[1])
    };
    low_ok && high.windows(2).all(|w| w[0] < w[1])
}

fn c9_specializations() -> Outcome {
    for n in 1..=6usize {
        let pfs = all_pfs(n);
        let nabla_en = nabla(&SymFunc::e(n as i64), Sign::Plus).map_err(|e| e.to_string())?;
        let decreasing: Vec<usize> = (1..=n).rev().collect();
        let catalan = hall_inner(&nabla_en, &SymFunc::e(n as i64));
        let enumerated = weight_sum(pfs.iter().filter(|pf| pf.sigma() == decreasing));
        ensure(catalan == enumerated, || format!("catalan n={n}: {} vs {}", catalan.render(), enumerated.render()))?;
        ensure(catalan.swap_qt() == catalan, || format!("catalan n={n} not symmetric"))?;
        for k in 0..=n {
            let ki = k as i64;
            let ni = n as i64;
            let schroder = hall_inner(&nabla_en, &SymFunc::e(ki).mul(&SymFunc::h(ni - ki)));
            let enumerated = weight_sum(pfs.iter().filter(|pf| two_segment(&pf.sigma(), k, true)));
            ensure(schroder == enumerated, || format!("e_k h_(n-k) n={n} k={k}"))?;
            let two = hall_inner(&nabla_en, &SymFunc::h(ki).mul(&SymFunc::h(ni - ki)));
            let enumerated = weight_sum(pfs.iter().filter(|pf| two_segment(&pf.sigma(), k, false)));
            ensure(two == enumerated, || format!("h_k h_(n-k) n={n} k={k}"))?;
        }
    }
    Ok("n <= 6, all k".into())
}

fn c10_paths() -> Outcome {
    suite_all_pass(Suite::Paths, 6)
}

fn c11_base_cases() -> Outcome {
    for n in 1..=6usize {
        let ones = comp(&vec![1; n]);
        let v = hall_inner(&nabla_c_word(&ones).map_err(|e| e.to_string())?, &SymFunc::h(n as i64));
        ensure(v.is_one(), || format!("<nabla C_1^{n} 1, h_{n}> = {}", v.render()))?;
    }
    for n in 2..=3usize {
        let ones = comp(&vec![1; n]);
        let row = Partition::new(vec![n]).unwrap();
        let h = htilde(n).map_err(|e| e.to_string())?.get(&row).clone();
        let lhs = nabla_c_word(&ones).map_err(|e| e.to_string())?;
        ensure(lhs == h, || format!("nabla C_1^{n} 1 differs from H~{row}"))?;
    }
    let single = nabla_c_word(&comp(&[1])).map_err(|e| e.to_string())?;
    ensure(hall_inner(&single, &SymFunc::e(1)).is_one() && hall_inner(&single, &SymFunc::h(1)).is_one(), || {
        "single car".into()
    })?;
    Ok("n <= 6".into())
}

fn c12_engineering() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for n in 0..=5usize {
        let table = htilde(n).map_err(|e| e.to_string())?;
        let path = write_table(&table, dir.path()).map_err(|e| e.to_string())?;
        let first = std::fs::read(&path).map_err(|e| e.to_string())?;
        let back = read_table(dir.path(), n).map_err(|e| e.to_string())?.ok_or("missing table")?;
        for mu in partitions(n) {
            ensure(back.schur(&mu) == table.schur(&mu), || format!("degree {n} {mu} changed"))?;
        }
        write_table(&back, dir.path()).map_err(|e| e.to_string())?;
        ensure(std::fs::read(&path).map_err(|e| e.to_string())? == first, || format!("degree {n} rewrite differs"))?;
    }
    let path = dir.path().join("htilde-3.json");
    let body = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    std::fs::write(&path, body.replacen("q + t|", "q + 2*t|", 1)).map_err(|e| e.to_string())?;
    ensure(read_table(dir.path(), 3).is_err(), || "corrupted table was accepted".into())?;

    let one = verify::run(Suite::All, 3, 1);
    let eight = verify::run(Suite::All, 3, 8);
    for f in [Format::Plain, Format::Json, Format::Csv, Format::Latex] {
        ensure(verify::render(&one, f, false) == verify::render(&eight, f, false), || format!("{f:?} report differs"))?;
    }
    Ok(format!("{} cases identical across jobs 1 and 8", one.cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("worked (3,2) example on both sides", c1_worked_example),
        ("inner product equals parking enumeration, n <= 6", c2_main_theorem),
        ("fundamental expansion matches the shuffle sum, n <= 5", c3_shuffle_qsym),
        ("sum of C_p 1 over compositions is e_n, n <= 7", c4_en_decomposition),
        ("H~ orthogonality, normalization and norms, n <= 6", c5_htilde_table),
        ("identity registry", c6_identity_registry),
        ("symbolic and combinatorial recursions agree, m + |alpha| <= 6", c7_recursions),
        ("section-cycling bijection and m = 1 weight laws", c8_bijection),
        ("Catalan, Schroeder and two-segment specializations, n <= 6", c9_specializations),
        ("path conversion injective with matching counts, n <= 6", c10_paths),
        ("base cases", c11_base_cases),
        ("cache round trip and jobs-independent reports", c12_engineering),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

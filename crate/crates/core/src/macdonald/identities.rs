//! Registry of Macdonald-side identities. Each check evaluates both sides
//! through separate code paths and compares them exactly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::operators::{commutator_shift, ehh, nabla_c_word};
use super::pieri::{c_coeffs, d_coeffs};
use super::{eval_at, htilde, m_inv, nabla, op_adjoint, op_b, op_c, star, MacError, OpKind, Sign};
use crate::qt::{QtPolynomial, QtRational};
use crate::shapes::{compositions, partitions, Composition, Partition};
use crate::symfunc::{convert_basis, hall_inner, plethysm, Alphabet, Basis, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IdentityId {
    Cauchy,
    SymAb,
    PieriRel,
    SumC,
    SumD,
    ExpAbc,
    Reproducing,
    Erh,
    Commute,
    Commutator,
    Lemma31,
    Lemma32,
    Prop31,
    Thm31,
    Thm32,
    Thm21,
    RecM,
    Rec1,
    EnDecomp,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::Cauchy,
        IdentityId::SymAb,
        IdentityId::PieriRel,
        IdentityId::SumC,
        IdentityId::SumD,
        IdentityId::ExpAbc,
        IdentityId::Reproducing,
        IdentityId::Erh,
        IdentityId::Commute,
        IdentityId::Commutator,
        IdentityId::Lemma31,
        IdentityId::Lemma32,
        IdentityId::Prop31,
        IdentityId::Thm31,
        IdentityId::Thm32,
        IdentityId::Thm21,
        IdentityId::RecM,
        IdentityId::Rec1,
        IdentityId::EnDecomp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Cauchy => "cauchy",
            IdentityId::SymAb => "sym-ab",
            IdentityId::PieriRel => "pieri-rel",
            IdentityId::SumC => "sum-c",
            IdentityId::SumD => "sum-d",
            IdentityId::ExpAbc => "exp-abc",
            IdentityId::Reproducing => "reproducing",
            IdentityId::Erh => "erh",
            IdentityId::Commute => "commute",
            IdentityId::Commutator => "commutator",
            IdentityId::Lemma31 => "lemma31",
            IdentityId::Lemma32 => "lemma32",
            IdentityId::Prop31 => "prop31",
            IdentityId::Thm31 => "thm31",
            IdentityId::Thm32 => "thm32",
            IdentityId::Thm21 => "thm21",
            IdentityId::RecM => "rec-m",
            IdentityId::Rec1 => "rec-1",
            IdentityId::EnDecomp => "en-decomp",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = MacError;
    fn from_str(s: &str) -> Result<Self, MacError> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| MacError::UnknownIdentity(s.to_string()))
    }
}

type ShapeWeight = Box<dyn Fn(&Partition) -> QtRational>;

/// The function `f` of the reproducing-kernel check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReproKind {
    E(usize),
    H(usize),
    S(Partition),
}

impl ReproKind {
    fn function(&self) -> SymFunc {
        match self {
            ReproKind::E(r) => SymFunc::e(*r as i64),
            ReproKind::H(r) => SymFunc::h(*r as i64),
            ReproKind::S(lam) => SymFunc::s(lam),
        }
    }

    fn degree(&self) -> usize {
        match self {
            ReproKind::E(r) | ReproKind::H(r) => *r,
            ReproKind::S(lam) => lam.size(),
        }
    }
}

impl fmt::Display for ReproKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReproKind::E(r) => write!(f, "e{r}"),
            ReproKind::H(r) => write!(f, "h{r}"),
            ReproKind::S(lam) => write!(f, "s{lam}"),
        }
    }
}

/// Which of the two equalities of a paired statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    A,
    B,
}

/// One instance of a registered identity.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityCase {
    Cauchy { n: usize },
    SymAb { alpha: Partition, beta: Partition, part: Part },
    PieriRel { mu: Partition, nu: Partition },
    SumC { mu: Partition, k: usize },
    SumD { nu: Partition, k: usize },
    /// `k = None` covers `e_n[X/M]` (part A) and `h_n[X/M]` (part B);
    /// `Some(k)` the mixed product `h_k[X/M] e_{n-k}[X/M]`.
    ExpAbc { n: usize, part: Part, k: Option<usize> },
    Reproducing { f: ReproKind, mu: Partition },
    Erh { mu: Partition, r: usize },
    Commute { a: i64, b: i64, p: SymFunc },
    Commutator { a: i64, b: i64, p: SymFunc },
    Lemma31 { a: usize, b: usize, c: usize },
    Lemma32 { m: usize, n: usize, nu: Partition },
    Prop31 { m: usize, a: usize, b: usize, n: usize },
    Thm31 { m: usize, a: usize, b: usize, n: usize },
    Thm32 { m: usize, a: usize, b: usize, n: usize, part: Part },
    Thm21 { m: usize, a: usize, b: usize, c: usize },
    RecM { m: usize, alpha: Composition, a: usize, b: usize, c: usize },
    Rec1 { alpha: Composition, a: usize, b: usize, c: usize },
    EnDecomp { n: usize },
}

impl IdentityCase {
    pub fn id(&self) -> IdentityId {
        match self {
            IdentityCase::Cauchy { .. } => IdentityId::Cauchy,
            IdentityCase::SymAb { .. } => IdentityId::SymAb,
            IdentityCase::PieriRel { .. } => IdentityId::PieriRel,
            IdentityCase::SumC { .. } => IdentityId::SumC,
            IdentityCase::SumD { .. } => IdentityId::SumD,
            IdentityCase::ExpAbc { .. } => IdentityId::ExpAbc,
            IdentityCase::Reproducing { .. } => IdentityId::Reproducing,
            IdentityCase::Erh { .. } => IdentityId::Erh,
            IdentityCase::Commute { .. } => IdentityId::Commute,
            IdentityCase::Commutator { .. } => IdentityId::Commutator,
            IdentityCase::Lemma31 { .. } => IdentityId::Lemma31,
            IdentityCase::Lemma32 { .. } => IdentityId::Lemma32,
            IdentityCase::Prop31 { .. } => IdentityId::Prop31,
            IdentityCase::Thm31 { .. } => IdentityId::Thm31,
            IdentityCase::Thm32 { .. } => IdentityId::Thm32,
            IdentityCase::Thm21 { .. } => IdentityId::Thm21,
            IdentityCase::RecM { .. } => IdentityId::RecM,
            IdentityCase::Rec1 { .. } => IdentityId::Rec1,
            IdentityCase::EnDecomp { .. } => IdentityId::EnDecomp,
        }
    }

    /// Stable parameter string used in reports.
    pub fn params(&self) -> String {
        let part = |p: &Part| if *p == Part::A { "a" } else { "b" };
        match self {
            IdentityCase::Cauchy { n } => format!("n={n}"),
            IdentityCase::SymAb { alpha, beta, part: p } => format!("alpha={alpha} beta={beta} part={}", part(p)),
            IdentityCase::PieriRel { mu, nu } => format!("mu={mu} nu={nu}"),
            IdentityCase::SumC { mu, k } => format!("mu={mu} k={k}"),
            IdentityCase::SumD { nu, k } => format!("nu={nu} k={k}"),
            IdentityCase::ExpAbc { n, part: p, k } => match k {
                None => format!("n={n} part={}", part(p)),
                Some(k) => format!("n={n} part=c k={k}"),
            },
            IdentityCase::Reproducing { f, mu } => format!("f={f} mu={mu}"),
            IdentityCase::Erh { mu, r } => format!("mu={mu} r={r}"),
            IdentityCase::Commute { a, b, p } | IdentityCase::Commutator { a, b, p } => {
                format!("a={a} b={b} P={}", render_sym(p))
            }
            IdentityCase::Lemma31 { a, b, c } => format!("a={a} b={b} c={c}"),
            IdentityCase::Lemma32 { m, n, nu } => format!("m={m} n={n} nu={nu}"),
            IdentityCase::Prop31 { m, a, b, n } | IdentityCase::Thm31 { m, a, b, n } => {
                format!("m={m} a={a} b={b} n={n}")
            }
            IdentityCase::Thm32 { m, a, b, n, part: p } => format!("m={m} a={a} b={b} n={n} part={}", part(p)),
            IdentityCase::Thm21 { m, a, b, c } => format!("m={m} a={a} b={b} c={c}"),
            IdentityCase::RecM { m, alpha, a, b, c } => format!("m={m} alpha={alpha} a={a} b={b} c={c}"),
            IdentityCase::Rec1 { alpha, a, b, c } => format!("alpha={alpha} a={a} b={b} c={c}"),
            IdentityCase::EnDecomp { n } => format!("n={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

/// A computed side of an identity.
#[derive(Clone, Debug, PartialEq)]
enum Value {
    Scalar(QtRational),
    Func(SymFunc),
    TwoAlphabet(SymFunc<SymFunc>),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Scalar(c) => c.render(),
            Value::Func(f) => render_sym(f),
            Value::TwoAlphabet(f) => {
                if f.is_zero() {
                    return "0".into();
                }
                let terms: Vec<String> = f.iter().map(|(lam, c)| format!("p{lam}[X]*({})", render_sym(c))).collect();
                terms.join(" + ")
            }
        }
    }
}

/// Schur expansion, `c*s[lambda]` terms joined by ` + `.
pub fn render_sym(f: &SymFunc) -> String {
    let exp = convert_basis(f, Basis::Schur).expect("degree within the cap");
    if exp.coeffs.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = exp.coeffs.iter().map(|(lam, c)| format!("({c})*s{lam}")).collect();
    terms.join(" + ")
}

fn bad(msg: impl Into<String>) -> MacError {
    MacError::Params(msg.into())
}

fn rat(p: QtPolynomial) -> QtRational {
    QtRational::from_poly(p)
}

fn sign(k: i64) -> QtRational {
    if k.rem_euclid(2) == 0 {
        QtRational::one()
    } else {
        QtRational::one().neg()
    }
}

fn t_pow(k: usize) -> QtRational {
    QtRational::monomial(1, 0, k as i64)
}

fn q_pow(k: i64) -> QtRational {
    QtRational::monomial(1, k, 0)
}

/// `T_mu / T_nu`.
fn t_ratio(mu: &Partition, nu: &Partition) -> QtRational {
    rat(mu.invariants().t_mu).mul(&nu.invariants().t_recip())
}

fn sum_scalars(it: impl Iterator<Item = QtRational>) -> QtRational {
    it.fold(QtRational::zero(), |a, c| a.add(&c))
}

fn sum_funcs(it: impl Iterator<Item = SymFunc>) -> SymFunc {
    it.fold(SymFunc::zero(), |a, f| a.add(&f))
}

fn pow(c: &QtRational, k: usize) -> QtRational {
    c.pow(k as i32).expect("nonzero base")
}

/// `e_k[1/M]` and `h_k[1/M]`.
fn e_scalar_m(k: i64) -> QtRational {
    eval_at(&SymFunc::e(k), &m_inv())
}

fn h_scalar_m(k: i64) -> QtRational {
    eval_at(&SymFunc::h(k), &m_inv())
}

fn e_at(k: i64, alphabet: &QtPolynomial) -> QtRational {
    eval_at(&SymFunc::e(k), &rat(alphabet.clone()))
}

type Memo<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

/// Looks `key` up in `cell`, computing and storing it on a miss.
fn memoized<K, V, E>(cell: &'static Memo<K, V>, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<V, E>
where
    K: std::hash::Hash + Eq,
    V: Clone,
{
    let memo = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    memo.lock().expect("memo lock").insert(key, v.clone());
    Ok(v)
}

fn infallible<V>(v: V) -> Result<V, std::convert::Infallible> {
    Ok(v)
}

fn unwrap<V>(r: Result<V, std::convert::Infallible>) -> V {
    match r {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

/// `e_n[X D_nu / M]`.
fn e_xd(n: i64, nu: &Partition) -> SymFunc {
    if n < 0 {
        return SymFunc::zero();
    }
    static CELL: Memo<(i64, Partition), SymFunc> = OnceLock::new();
    unwrap(memoized(&CELL, (n, nu.clone()), || {
        let d = rat(nu.invariants().d_mu).mul(&m_inv());
        infallible(plethysm(&SymFunc::e(n), &Alphabet::x_times(d)))
    }))
}

/// `e_k[X/(1-t)]`.
fn e_x_over_1mt(k: i64) -> SymFunc {
    static CELL: Memo<i64, SymFunc> = OnceLock::new();
    unwrap(memoized(&CELL, k, || {
        let inv = QtRational::new(QtPolynomial::one(), QtPolynomial::one().sub(&QtPolynomial::t())).expect("nonzero");
        infallible(plethysm(&SymFunc::e(k), &Alphabet::x_times(inv)))
    }))
}

/// `e_i[X D_nu / M] e_j[X/(1-t)]`.
fn e_xd_times(i: i64, j: i64, nu: &Partition) -> SymFunc {
    static CELL: Memo<(i64, i64, Partition), SymFunc> = OnceLock::new();
    unwrap(memoized(&CELL, (i, j, nu.clone()), || infallible(e_xd(i, nu).mul(&e_x_over_1mt(j)))))
}

/// `nabla h_a* e_b* e_c*`, zero when an index is negative; memoized.
fn nabla_hee(a: i64, b: i64, c: i64) -> Result<SymFunc, MacError> {
    if a < 0 || b < 0 || c < 0 {
        return Ok(SymFunc::zero());
    }
    let (b, c) = (b.min(c), b.max(c));
    static CELL: Memo<(i64, i64, i64), SymFunc> = OnceLock::new();
    memoized(&CELL, (a, b, c), || {
        let f = star(&SymFunc::h(a).mul(&SymFunc::e(b)).mul(&SymFunc::e(c)));
        nabla(&f, Sign::Plus)
    })
}

/// `H~_mu / w_mu`.
fn htilde_over_w(mu: &Partition) -> Result<SymFunc, MacError> {
    let t = htilde(mu.size())?;
    Ok(t.get(mu).scale(&t.invariants(mu).w_recip()))
}

/// Evaluates both sides.
fn sides(case: &IdentityCase) -> Result<(Value, Value), MacError> {
    use IdentityCase as C;
    use Value::{Func, Scalar};
    Ok(match case {
        C::Cauchy { n } => {
            // e_n[XY/M] through plethysm against the Y-alphabet, and the
            // H~ double sum.
            let y_over_m = SymFunc::p(1).scale(&m_inv());
            let en: SymFunc<SymFunc> = SymFunc::<QtRational>::e(*n as i64).map_coeffs(|c: &QtRational| SymFunc::constant(c.clone()));
            let lhs = plethysm(&en, &Alphabet::x_times(y_over_m));
            let mut rhs: SymFunc<SymFunc> = SymFunc::zero();
            for mu in partitions(*n) {
                let hy = htilde_over_w(&mu)?;
                let hx = htilde(*n)?.get(&mu).clone();
                for (lam, c) in hx.iter() {
                    rhs.add_term(lam.clone(), hy.scale(c));
                }
            }
            (Value::TwoAlphabet(lhs), Value::TwoAlphabet(rhs))
        }
        C::SymAb { alpha, beta, part } => {
            let ha = htilde(alpha.size())?.get(alpha).clone();
            let hb = htilde(beta.size())?.get(beta).clone();
            let (ia, ib) = (alpha.invariants(), beta.invariants());
            match part {
                Part::A => {
                    let m = QtRational::m();
                    let lhs = eval_at(&ha, &m.mul(&rat(ib.b_mu.clone()))).mul(&ia.pi_recip());
                    let rhs = eval_at(&hb, &m.mul(&rat(ia.b_mu.clone()))).mul(&ib.pi_recip());
                    (Scalar(lhs), Scalar(rhs))
                }
                Part::B => {
                    let lhs = sign(alpha.size() as i64).mul(&eval_at(&ha, &rat(ib.d_mu.clone()))).mul(&ia.t_recip());
                    let rhs = sign(beta.size() as i64).mul(&eval_at(&hb, &rat(ia.d_mu.clone()))).mul(&ib.t_recip());
                    (Scalar(lhs), Scalar(rhs))
                }
            }
        }
        C::PieriRel { mu, nu } => {
            if mu.removed_cell(nu).is_none() {
                return Err(bad(format!("{nu} is not {mu} with one corner removed")));
            }
            let d = d_coeffs(nu)?.remove(mu).unwrap_or_default();
            let c = c_coeffs(mu)?.remove(nu).unwrap_or_default();
            let rhs = c.mul(&QtRational::m()).mul(&rat(nu.invariants().w_mu)).mul(&mu.invariants().w_recip());
            (Scalar(d), Scalar(rhs))
        }
        C::SumC { mu, k } => {
            if mu.size() == 0 {
                return Err(bad("sum-c needs a nonempty shape"));
            }
            let lhs = sum_scalars(c_coeffs(mu)?.into_iter().map(|(nu, c)| c.mul(&pow(&t_ratio(mu, &nu), *k))));
            let inv = mu.invariants();
            let rhs = if *k == 0 {
                rat(inv.b_mu)
            } else {
                let tq = QtRational::monomial(1, 1, 1);
                let alphabet = rat(inv.d_mu).mul(&QtRational::monomial(1, -1, -1));
                tq.mul(&m_inv()).mul(&eval_at(&SymFunc::h(*k as i64 + 1), &alphabet))
            };
            (Scalar(lhs), Scalar(rhs))
        }
        C::SumD { nu, k } => {
            let lhs = sum_scalars(d_coeffs(nu)?.into_iter().map(|(mu, d)| d.mul(&pow(&t_ratio(&mu, nu), *k))));
            let rhs = if *k == 0 {
                QtRational::one()
            } else {
                sign(*k as i64 - 1).mul(&e_at(*k as i64 - 1, &nu.invariants().d_mu))
            };
            (Scalar(lhs), Scalar(rhs))
        }
        C::ExpAbc { n, part, k } => {
            let xm = Alphabet::x_times(m_inv());
            let shapes = partitions(*n);
            let (lhs, weight): (SymFunc, ShapeWeight) = match (part, k) {
                (_, Some(k)) => {
                    if *k > *n {
                        return Err(bad("exp-abc needs k <= n"));
                    }
                    let f = plethysm(&SymFunc::h(*k as i64), &xm).mul(&plethysm(&SymFunc::e((*n - *k) as i64), &xm));
                    let k = *k as i64;
                    (f, Box::new(move |mu: &Partition| e_at(k, &mu.invariants().b_mu)))
                }
                (Part::A, None) => (plethysm(&SymFunc::e(*n as i64), &xm), Box::new(|_: &Partition| QtRational::one())),
                (Part::B, None) => (
                    plethysm(&SymFunc::h(*n as i64), &xm),
                    Box::new(|mu: &Partition| rat(mu.invariants().t_mu)),
                ),
            };
            let mut rhs = SymFunc::zero();
            for mu in &shapes {
                rhs = rhs.add(&htilde_over_w(mu)?.scale(&weight(mu)));
            }
            (Func(lhs), Func(rhs))
        }
        C::Reproducing { f, mu } => {
            let r = f.degree();
            let n = mu.size();
            if r > n {
                return Err(bad("reproducing needs deg f <= |mu|"));
            }
            let h = htilde(n)?.get(mu).clone();
            let lhs = hall_inner(&f.function().mul(&SymFunc::h((n - r) as i64)), &h);
            let rhs = eval_at(&repro_kernel(f)?, &rat(mu.invariants().d_mu));
            (Scalar(lhs), Scalar(rhs))
        }
        C::Erh { mu, r } => {
            let n = mu.size();
            if *r > n {
                return Err(bad("erh needs r <= |mu|"));
            }
            let h = htilde(n)?.get(mu).clone();
            let lhs = hall_inner(&h, &SymFunc::e(*r as i64).mul(&SymFunc::h((n - r) as i64)));
            (Scalar(lhs), Scalar(e_at(*r as i64, &mu.invariants().b_mu)))
        }
        C::Commute { a, b, p } => {
            if a + b <= 0 {
                return Err(bad("commute needs a + b > 0"));
            }
            let lhs = op_b(*a, &op_c(*b, p)?);
            let rhs = op_c(*b, &op_b(*a, p))?.scale(&QtRational::q());
            (Func(lhs), Func(rhs))
        }
        C::Commutator { a, b, p } => {
            let lhs = op_c(*b, &op_b(*a, p))?.scale(&QtRational::q()).sub(&op_b(*a, &op_c(*b, p)?));
            let pre = QtRational::parse("q - 1")
                .expect("literal")
                .mul(&sign(a + b - 1))
                .mul(&q_pow(1 - b));
            let body = match (a + b).cmp(&0) {
                std::cmp::Ordering::Greater => SymFunc::zero(),
                std::cmp::Ordering::Equal => p.clone(),
                std::cmp::Ordering::Less => commutator_shift(p, a + b),
            };
            (Func(lhs), Func(body.scale(&pre)))
        }
        C::Lemma31 { a, b, c } => {
            let lhs = nabla_hee(*a as i64, *b as i64, *c as i64)?;
            (Func(lhs), Func(lemma31_rhs(*a, *b, *c)?))
        }
        C::Lemma32 { m, n, nu } => {
            if *m == 0 {
                return Err(bad("lemma32 needs m >= 1"));
            }
            let lhs = op_adjoint(OpKind::C, *m as i64, &e_xd(*n as i64, nu))?;
            (Func(lhs), Func(lemma32_rhs(*m, *n, nu)?))
        }
        C::Prop31 { m, a, b, n } => {
            let c = gamma_params(*m, *a, *b, *n)?;
            let (mi, ai, bi) = (*m as i64, *a as i64, *b as i64);
            let lhs = op_adjoint(OpKind::C, mi, &nabla_hee(ai, bi, c)?)?;
            let mut rhs = gamma1(*m, *a, *b, *n)?;
            if *m == 1 {
                rhs = rhs.add(&nabla_hee(ai, bi, c - 1)?);
            }
            (Func(lhs), Func(rhs))
        }
        C::Thm31 { m, a, b, n } => {
            let c = gamma_params(*m, *a, *b, *n)?;
            if c == 0 {
                return Err(bad("thm31 needs n > a + b"));
            }
            let (mi, ai, bi) = (*m as i64, *a as i64, *b as i64);
            let lhs = op_adjoint(OpKind::C, mi, &nabla_hee(ai, bi, c)?)?;
            let tm = t_pow(m - 1);
            let mut rhs = phi1(*m, *a, *b, *n).add(&phi2(*m, *a, *b, *n)).scale(&tm);
            if *m == 1 {
                rhs = rhs.add(&nabla_hee(ai, bi, c - 1)?).add(&nabla_hee(ai, bi - 1, c)?);
            }
            (Func(lhs), Func(rhs))
        }
        C::Thm32 { m, a, b, n, part } => {
            let c = gamma_params(*m, *a, *b, *n)?;
            let (mi, ai, bi) = (*m as i64, *a as i64, *b as i64);
            match part {
                Part::A => {
                    let rhs = op_adjoint(OpKind::B, mi - 1, &nabla_hee(ai - 1, bi, c)?)?;
                    (Func(phi1(*m, *a, *b, *n)), Func(rhs))
                }
                Part::B => {
                    let rhs = op_adjoint(OpKind::B, mi - 2, &nabla_hee(ai, bi - 1, c - 1)?)?;
                    (Func(phi2(*m, *a, *b, *n)), Func(rhs))
                }
            }
        }
        C::Thm21 { m, a, b, c } => {
            if *m == 0 || a + b + c < *m {
                return Err(bad("thm21 needs 1 <= m <= a + b + c"));
            }
            let (mi, ai, bi, ci) = (*m as i64, *a as i64, *b as i64, *c as i64);
            let lhs = op_adjoint(OpKind::C, mi, &nabla_hee(ai, bi, ci)?)?;
            let tm = t_pow(m - 1);
            let mut rhs = op_adjoint(OpKind::B, mi - 1, &nabla_hee(ai - 1, bi, ci)?)?
                .add(&op_adjoint(OpKind::B, mi - 2, &nabla_hee(ai, bi - 1, ci - 1)?)?)
                .scale(&tm);
            if *m == 1 {
                rhs = rhs.add(&nabla_hee(ai, bi - 1, ci)?).add(&nabla_hee(ai, bi, ci - 1)?);
            }
            (Func(lhs), Func(rhs))
        }
        C::RecM { m, alpha, a, b, c } => {
            if *m < 2 || a + b + c != m + alpha.size() {
                return Err(bad("rec-m needs m > 1 and a + b + c = m + |alpha|"));
            }
            let (ai, bi, ci) = (*a as i64, *b as i64, *c as i64);
            let lhs = hall_inner(&nabla_c_word(&alpha.prepend(*m))?, &ehh(ai, bi, ci));
            let mut rhs = QtRational::zero();
            for (k, e) in [(*m as i64 - 1, ehh(ai - 1, bi, ci)), (*m as i64 - 2, ehh(ai, bi - 1, ci - 1))] {
                for beta in compositions(k) {
                    rhs = rhs.add(&hall_inner(&nabla_c_word(&alpha.concat(&beta))?, &e));
                }
            }
            let rhs = rhs.mul(&t_pow(m - 1)).mul(&q_pow(alpha.len() as i64));
            (Scalar(lhs), Scalar(rhs))
        }
        C::Rec1 { alpha, a, b, c } => {
            if a + b + c != 1 + alpha.size() {
                return Err(bad("rec-1 needs a + b + c = 1 + |alpha|"));
            }
            let (ai, bi, ci) = (*a as i64, *b as i64, *c as i64);
            let lhs = hall_inner(&nabla_c_word(&alpha.prepend(1))?, &ehh(ai, bi, ci));
            let base = nabla_c_word(alpha)?;
            let mut rhs = hall_inner(&base, &ehh(ai - 1, bi, ci))
                .mul(&q_pow(alpha.len() as i64))
                .add(&hall_inner(&base, &ehh(ai, bi - 1, ci).add(&ehh(ai, bi, ci - 1))));
            let qm1 = QtRational::parse("q - 1").expect("literal");
            for (i, part) in alpha.parts().iter().enumerate() {
                if *part == 1 {
                    let hat = alpha.remove_part(i + 1)?;
                    let v = hall_inner(&nabla_c_word(&hat)?, &ehh(ai, bi - 1, ci - 1));
                    rhs = rhs.add(&v.mul(&qm1).mul(&q_pow(i as i64)));
                }
            }
            (Scalar(lhs), Scalar(rhs))
        }
        C::EnDecomp { n } => {
            let mut lhs = SymFunc::zero();
            for p in compositions(*n as i64) {
                lhs = lhs.add(&super::c_word(&p));
            }
            (Func(lhs), Func(SymFunc::e(*n as i64)))
        }
    })
}

/// `nabla^{-1} (omega f)[(X - eps)/M]`.
fn repro_kernel(f: &ReproKind) -> Result<SymFunc, MacError> {
    static CELL: Memo<String, SymFunc> = OnceLock::new();
    memoized(&CELL, f.to_string(), || {
        let shift = Alphabet::x().sub(&Alphabet::constant(QtRational::one()).eps()).scale(&m_inv());
        nabla(&plethysm(&f.function().omega(), &shift), Sign::Minus)
    })
}

/// `c = n - a - b` after checking `1 <= m <= n` and `a + b <= n`.
fn gamma_params(m: usize, a: usize, b: usize, n: usize) -> Result<i64, MacError> {
    if m == 0 || m > n || a + b > n {
        return Err(bad("needs 1 <= m <= n and a + b <= n"));
    }
    Ok((n - a - b) as i64)
}

/// `sum_r sum_s e_{a-r}[1/M] h_{b-s}[1/M] (-1)^{n-r-s} sum_{nu |- r+s}
/// e_r[B_nu] e_n[X D_nu/M] / w_nu`.
fn lemma31_rhs(a: usize, b: usize, c: usize) -> Result<SymFunc, MacError> {
    let n = (a + b + c) as i64;
    let mut out = SymFunc::zero();
    for r in 0..=a {
        for s in 0..=b {
            let pre = e_scalar_m((a - r) as i64).mul(&h_scalar_m((b - s) as i64)).mul(&sign(n - (r + s) as i64));
            if pre.is_zero() {
                continue;
            }
            let inner = sum_funcs(partitions(r + s).into_iter().map(|nu| e_xd(n, &nu).scale(&erb_weight(r as i64, &nu))));
            out = out.add(&inner.scale(&pre));
        }
    }
    Ok(out)
}

/// `M sum_{tau -> nu} c_{nu tau} (T_nu/T_tau)^{u-1}`.
fn c_moment(nu: &Partition, u: usize) -> Result<QtRational, MacError> {
    if nu.size() == 0 {
        return Ok(QtRational::zero());
    }
    static CELL: Memo<(Partition, usize), QtRational> = OnceLock::new();
    memoized(&CELL, (nu.clone(), u), || {
        let s = sum_scalars(c_coeffs(nu)?.into_iter().map(|(tau, c)| c.mul(&pow(&t_ratio(nu, &tau), u - 1))));
        Ok(s.mul(&QtRational::m()))
    })
}

/// `sum_{u=m}^n e_{n-u}[X D_nu/M] e_{u-m}[X/(1-t)] t^{u-1} M sum_{tau -> nu}
/// c_{nu tau} (T_nu/T_tau)^{u-1}`.
fn c_series(m: usize, n: usize, nu: &Partition) -> Result<SymFunc, MacError> {
    static CELL: Memo<(usize, usize, Partition), SymFunc> = OnceLock::new();
    memoized(&CELL, (m, n, nu.clone()), || {
        let mut out = SymFunc::zero();
        for u in m..=n {
            let coeff = c_moment(nu, u)?.mul(&t_pow(u - 1));
            if !coeff.is_zero() {
                out = out.add(&e_xd_times((n - u) as i64, (u - m) as i64, nu).scale(&coeff));
            }
        }
        Ok(out)
    })
}

fn lemma32_rhs(m: usize, n: usize, nu: &Partition) -> Result<SymFunc, MacError> {
    let mut out = c_series(m, n, nu)?.scale(&sign(m as i64 - 1));
    if m == 1 {
        out = out.sub(&e_xd(n as i64 - 1, nu));
    }
    Ok(out)
}

/// `e_r[B_nu] / w_nu`.
fn erb_weight(r: i64, nu: &Partition) -> QtRational {
    let inv = nu.invariants();
    e_at(r, &inv.b_mu).mul(&inv.w_recip())
}

/// The first summand of `C*_m nabla h_a* e_b* e_{n-a-b}*`.
fn gamma1(m: usize, a: usize, b: usize, n: usize) -> Result<SymFunc, MacError> {
    let mut out = SymFunc::zero();
    for r in 0..=a {
        for s in 0..=b {
            let pre = e_scalar_m((a - r) as i64)
                .mul(&h_scalar_m((b - s) as i64))
                .mul(&sign((n - r - s) as i64 + m as i64 - 1));
            if pre.is_zero() {
                continue;
            }
            for nu in partitions(r + s) {
                let w = erb_weight(r as i64, &nu);
                if !w.is_zero() {
                    out = out.add(&c_series(m, n, &nu)?.scale(&w.mul(&pre)));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Phi {
    One,
    Two,
}

/// `sum_{v=m}^n e_{v-m}[X/(1-t)] e_{n-v}[X D_tau/M]` times
/// `(-1)^{v-1} e_{v-1}[D_tau]` or `(-1)^v e_{v-2}[D_tau]`.
fn d_series(which: Phi, m: usize, n: usize, tau: &Partition) -> SymFunc {
    static CELL: Memo<(Phi, usize, usize, Partition), SymFunc> = OnceLock::new();
    unwrap(memoized(&CELL, (which, m, n, tau.clone()), || {
        let d = tau.invariants().d_mu;
        let mut out = SymFunc::zero();
        for v in m..=n {
            let v = v as i64;
            let coeff = match which {
                Phi::One => sign(v - 1).mul(&e_at(v - 1, &d)),
                Phi::Two => sign(v).mul(&e_at(v - 2, &d)),
            };
            if !coeff.is_zero() {
                out = out.add(&e_xd_times(n as i64 - v, v - m as i64, tau).scale(&coeff));
            }
        }
        infallible(out)
    }))
}

/// Shared body of the two `Phi` sums over `r <= a_top`, `s <= b_top`.
fn phi_sum(which: Phi, m: usize, a_top: i64, b_top: i64, n: usize) -> SymFunc {
    let mut out = SymFunc::zero();
    if a_top < 0 || b_top < 0 {
        return out;
    }
    for r in 0..=a_top {
        for s in 0..=b_top {
            let pre = e_scalar_m(a_top - r)
                .mul(&h_scalar_m(b_top - s))
                .mul(&sign(n as i64 - 1 - r - s + m as i64 - 1));
            if pre.is_zero() {
                continue;
            }
            for tau in partitions((r + s) as usize) {
                let w = erb_weight(r, &tau);
                if !w.is_zero() {
                    out = out.add(&d_series(which, m, n, &tau).scale(&w.mul(&pre)));
                }
            }
        }
    }
    out
}

fn phi1(m: usize, a: usize, b: usize, n: usize) -> SymFunc {
    phi_sum(Phi::One, m, a as i64 - 1, b as i64, n)
}

fn phi2(m: usize, a: usize, b: usize, n: usize) -> SymFunc {
    phi_sum(Phi::Two, m, a as i64, b as i64 - 1, n)
}

/// Runs one case.
pub fn check_identity(case: &IdentityCase) -> Result<IdentityReport, MacError> {
    let (lhs, rhs) = sides(case)?;
    Ok(IdentityReport {
        id: case.id(),
        params: case.params(),
        pass: lhs == rhs,
        lhs: lhs.render(),
        rhs: rhs.render(),
    })
}

/// The parameter grid of an identity up to size `n_max`, in a fixed order.
pub fn grid(id: IdentityId, n_max: usize) -> Vec<IdentityCase> {
    use IdentityCase as C;
    let mut out = Vec::new();
    let shapes_upto = |lo: usize, hi: usize| (lo..=hi).flat_map(partitions).collect::<Vec<_>>();
    match id {
        IdentityId::Cauchy => out.extend((0..=n_max).map(|n| C::Cauchy { n })),
        IdentityId::SymAb => {
            let shapes = shapes_upto(1, n_max);
            for alpha in &shapes {
                for beta in &shapes {
                    for part in [Part::A, Part::B] {
                        out.push(C::SymAb {
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            part,
                        });
                    }
                }
            }
        }
        IdentityId::PieriRel => {
            for mu in shapes_upto(1, n_max) {
                for nu in mu.removable() {
                    out.push(C::PieriRel { mu: mu.clone(), nu });
                }
            }
        }
        IdentityId::SumC => {
            for mu in shapes_upto(1, n_max) {
                out.extend((0..=3).map(|k| C::SumC { mu: mu.clone(), k }));
            }
        }
        IdentityId::SumD => {
            for nu in shapes_upto(0, n_max.saturating_sub(1)) {
                out.extend((0..=3).map(|k| C::SumD { nu: nu.clone(), k }));
            }
        }
        IdentityId::ExpAbc => {
            for n in 1..=n_max {
                out.push(C::ExpAbc { n, part: Part::A, k: None });
                out.push(C::ExpAbc { n, part: Part::B, k: None });
                out.extend((0..=n).map(|k| C::ExpAbc {
                    n,
                    part: Part::A,
                    k: Some(k),
                }));
            }
        }
        IdentityId::Reproducing => {
            for mu in shapes_upto(1, n_max) {
                for r in 0..=mu.size() {
                    out.push(C::Reproducing { f: ReproKind::E(r), mu: mu.clone() });
                    out.push(C::Reproducing { f: ReproKind::H(r), mu: mu.clone() });
                    for lam in partitions(r).into_iter().filter(|l| r > 0 && l.len() > 1 && l.parts()[0] > 1) {
                        out.push(C::Reproducing {
                            f: ReproKind::S(lam),
                            mu: mu.clone(),
                        });
                    }
                }
            }
        }
        IdentityId::Erh => {
            for mu in shapes_upto(1, n_max) {
                out.extend((0..=mu.size()).map(|r| C::Erh { mu: mu.clone(), r }));
            }
        }
        IdentityId::Commute | IdentityId::Commutator => {
            let pmax = n_max.min(3);
            for p in shapes_upto(0, pmax) {
                let f = SymFunc::s(&p);
                for b in 0..=2i64 {
                    for a in -3..=2i64 {
                        if id == IdentityId::Commute {
                            if b >= 1 && a + b > 0 {
                                out.push(C::Commute { a, b, p: f.clone() });
                            }
                        } else {
                            out.push(C::Commutator { a, b, p: f.clone() });
                        }
                    }
                }
            }
        }
        IdentityId::Lemma31 => {
            for (a, b, c) in triples_upto(n_max) {
                out.push(C::Lemma31 { a, b, c });
            }
        }
        IdentityId::Lemma32 => {
            for n in 1..=n_max {
                for m in 1..=n {
                    for nu in shapes_upto(0, n) {
                        out.push(C::Lemma32 { m, n, nu });
                    }
                }
            }
        }
        IdentityId::Prop31 | IdentityId::Thm31 | IdentityId::Thm32 => {
            for n in 1..=n_max {
                for m in 1..=n {
                    for a in 0..=n {
                        for b in 0..=(n - a) {
                            if id != IdentityId::Prop31 && a + b == n {
                                continue;
                            }
                            match id {
                                IdentityId::Prop31 => out.push(C::Prop31 { m, a, b, n }),
                                IdentityId::Thm31 => out.push(C::Thm31 { m, a, b, n }),
                                _ => {
                                    out.push(C::Thm32 { m, a, b, n, part: Part::A });
                                    out.push(C::Thm32 { m, a, b, n, part: Part::B });
                                }
                            }
                        }
                    }
                }
            }
        }
        IdentityId::Thm21 => {
            for (a, b, c) in triples_upto(n_max) {
                for m in 1..=(a + b + c) {
                    out.push(C::Thm21 { m, a, b, c });
                }
            }
        }
        IdentityId::RecM => {
            for m in 2..=n_max {
                for k in 0..=(n_max - m) {
                    for alpha in compositions(k as i64) {
                        for (a, b, c) in triples(m + k) {
                            out.push(C::RecM {
                                m,
                                alpha: alpha.clone(),
                                a,
                                b,
                                c,
                            });
                        }
                    }
                }
            }
        }
        IdentityId::Rec1 => {
            for k in 0..n_max {
                for alpha in compositions(k as i64) {
                    for (a, b, c) in triples(k + 1) {
                        out.push(C::Rec1 {
                            alpha: alpha.clone(),
                            a,
                            b,
                            c,
                        });
                    }
                }
            }
        }
        IdentityId::EnDecomp => out.extend((0..=n_max).map(|n| C::EnDecomp { n })),
    }
    out
}

/// All `(a, b, c)` with `a + b + c = n`, lexicographic.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            out.push((a, b, n - a - b));
        }
    }
    out
}

fn triples_upto(n_max: usize) -> Vec<(usize, usize, usize)> {
    (1..=n_max).flat_map(triples).collect()
}

/// Reports keyed by id then parameter string, for stable aggregation.
pub fn sort_reports(reports: &mut [IdentityReport]) {
    reports.sort_by(|x, y| (x.id, &x.params).cmp(&(y.id, &y.params)));
}

//! Factored denominators.
//!
//! Almost every denominator met in this crate is a product of binomials
//! `q^a t^b - q^c t^d` and monomials. Such binomials split over `Z` into
//! cyclotomic pieces `Phi_d(W)` with `W` a primitive Laurent monomial, and
//! each piece is irreducible. Tracking denominators as products of these
//! pieces turns fraction reduction into trial division by known irreducible
//! factors. Anything that does not split this way falls back to the gcd.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, QtPolynomial};

/// `Phi_d(q^a t^b)`, with `(a, b)` primitive and its first nonzero entry positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Cyclo {
    pub d: u32,
    pub a: i64,
    pub b: i64,
}

impl Cyclo {
    fn normalized(d: u32, mut a: i64, mut b: i64) -> Cyclo {
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        Cyclo { d, a, b }
    }

    fn poly(&self) -> QtPolynomial {
        let coeffs = cyclotomic(self.d);
        let phi = (coeffs.len() - 1) as i64;
        let terms = coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| {
            let e = e as i64;
            let (qe, te) = if self.b >= 0 {
                (self.a * e, self.b * e)
            } else {
                (self.a * e, -self.b * (phi - e))
            };
            (Monomial::new(to_u32(qe), to_u32(te)), BigInt::from(*c))
        });
        QtPolynomial::from_terms(terms)
    }
}

fn to_u32(x: i64) -> u32 {
    u32::try_from(x).unwrap_or_else(|_| panic!("exponent overflow: {x} does not fit in u32"))
}

/// Integer coefficients of the cyclotomic polynomial `Phi_d`, low degree first.
fn cyclotomic(d: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cyclotomic cache").get(&d) {
        return v.clone();
    }
    // x^d - 1 divided by Phi_e for every proper divisor e.
    let mut num: Vec<i64> = vec![0; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            let div = cyclotomic(e);
            num = divide_monic(&num, &div);
        }
    }
    let v = Arc::new(num);
    cache.lock().expect("cyclotomic cache").insert(d, v.clone());
    v
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (j, b) in den.iter().enumerate() {
            r[k + j] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|x| *x == 0));
    q
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

struct Entry {
    poly: Arc<QtPolynomial>,
    cyclo: Cyclo,
    probe: BigInt,
}

#[derive(Default)]
struct Registry {
    entries: Vec<Entry>,
    index: HashMap<Cyclo, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

/// Evaluation point used to screen candidate divisors cheaply.
fn probe_point() -> (BigInt, BigInt) {
    (BigInt::from(1_000_003u64), BigInt::from(999_983u64))
}

pub(crate) fn probe(p: &QtPolynomial) -> BigInt {
    let (q0, t0) = probe_point();
    p.eval_int(&q0, &t0)
}

fn register(c: Cyclo) -> u32 {
    if let Some(id) = registry().read().expect("factor registry").index.get(&c) {
        return *id;
    }
    let poly = c.poly();
    let pr = probe(&poly);
    let mut reg = registry().write().expect("factor registry");
    if let Some(id) = reg.index.get(&c) {
        return *id;
    }
    let id = reg.entries.len() as u32;
    reg.entries.push(Entry {
        poly: Arc::new(poly),
        cyclo: c,
        probe: pr,
    });
    reg.index.insert(c, id);
    id
}

fn entry(id: u32) -> (Arc<QtPolynomial>, Cyclo, BigInt) {
    let reg = registry().read().expect("factor registry");
    let e = &reg.entries[id as usize];
    (e.poly.clone(), e.cyclo, e.probe.clone())
}

/// Positive denominator stored as `content * monomial * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Factored {
    pub content: BigInt,
    pub mono: Monomial,
    pub factors: Vec<(u32, u32)>,
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            content: BigInt::one(),
            mono: Monomial::ONE,
            factors: Vec::new(),
        }
    }

    pub fn expand(&self) -> QtPolynomial {
        static CACHE: OnceLock<Mutex<HashMap<Factored, QtPolynomial>>> = OnceLock::new();
        if self.factors.is_empty() {
            return QtPolynomial::monomial(self.content.clone(), self.mono.q, self.mono.t);
        }
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().expect("expansion cache").get(self) {
            return p.clone();
        }
        let mut acc = QtPolynomial::monomial(self.content.clone(), self.mono.q, self.mono.t);
        for (id, e) in &self.factors {
            let (p, _, _) = entry(*id);
            for _ in 0..*e {
                acc = acc.mul(&p);
            }
        }
        let mut guard = cache.lock().expect("expansion cache");
        if guard.len() > 1 << 14 {
            guard.clear();
        }
        guard.insert(self.clone(), acc.clone());
        acc
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (id, e) in &o.factors {
            match factors.binary_search_by_key(id, |(k, _)| *k) {
                Ok(i) => factors[i].1 += e,
                Err(i) => factors.insert(i, (*id, *e)),
            }
        }
        Factored {
            content: &self.content * &o.content,
            mono: self.mono.mul(o.mono),
            factors,
        }
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (id, e) in &o.factors {
            match factors.binary_search_by_key(id, |(k, _)| *k) {
                Ok(i) => factors[i].1 = factors[i].1.max(*e),
                Err(i) => factors.insert(i, (*id, *e)),
            }
        }
        Factored {
            content: self.content.lcm(&o.content),
            mono: self.mono.max(o.mono),
            factors,
        }
    }

    /// `self / o`, where `o` divides `self`.
    pub fn quotient(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (id, e) in &o.factors {
            let i = factors
                .binary_search_by_key(id, |(k, _)| *k)
                .expect("factor present in quotient");
            factors[i].1 -= e;
        }
        factors.retain(|(_, e)| *e > 0);
        Factored {
            content: &self.content / &o.content,
            mono: self.mono.div(o.mono),
            factors,
        }
    }

    /// Image under `q -> q^k, t -> t^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        let mut out = Factored {
            content: self.content.clone(),
            mono: self.mono.scale(k),
            factors: Vec::new(),
        };
        for (id, e) in &self.factors {
            let (_, c, _) = entry(*id);
            // Phi_d(W^k) is the product of Phi_m(W) over m | dk with m / gcd(m, k) = d.
            for m in divisors(c.d * k) {
                if m / m.gcd(&k) == c.d {
                    let f = Factored::single(register(Cyclo::normalized(m, c.a, c.b)), *e);
                    out = out.mul(&f);
                }
            }
        }
        out
    }

    /// Image under `q <-> t`, with the sign absorbed in the returned flag.
    pub fn swap_qt(&self) -> (bool, Self) {
        let mut out = Factored {
            content: self.content.clone(),
            mono: Monomial::new(self.mono.t, self.mono.q),
            factors: Vec::new(),
        };
        for (id, e) in &self.factors {
            let (_, c, _) = entry(*id);
            let f = Factored::single(register(Cyclo::normalized(c.d, c.b, c.a)), *e);
            out = out.mul(&f);
        }
        let direct = self.expand().swap_qt();
        let ours = out.expand();
        let negated = if direct == ours {
            false
        } else {
            debug_assert_eq!(direct, ours.neg());
            true
        };
        (negated, out)
    }

    fn single(id: u32, e: u32) -> Self {
        Factored {
            content: BigInt::one(),
            mono: Monomial::ONE,
            factors: vec![(id, e)],
        }
    }
}

/// Splits a primitive binomial `X + s*Y` (leading coefficient one) into
/// cyclotomic factors, or `None` if it is not of that shape.
fn binomial_factors(p: &QtPolynomial) -> Option<Vec<(u32, u32)>> {
    let [(x, cx), (y, cy)] = p.terms() else {
        return None;
    };
    if !cx.is_one() || cy.abs() != BigInt::one() {
        return None;
    }
    let a = x.q as i64 - y.q as i64;
    let b = x.t as i64 - y.t as i64;
    let g = a.abs().gcd(&b.abs()) as u32;
    let (wa, wb) = (a / g as i64, b / g as i64);
    let ds: Vec<u32> = if cy.is_negative() {
        divisors(g)
    } else {
        divisors(2 * g).into_iter().filter(|d| !g.is_multiple_of(*d)).collect()
    };
    let mut out: Vec<(u32, u32)> = ds
        .into_iter()
        .map(|d| (register(Cyclo::normalized(d, wa, wb)), 1))
        .collect();
    out.sort_unstable();
    Some(out)
}

/// Writes `p = sign * F` with `F` fully factored, when every irreducible
/// factor of `p` is a known cyclotomic piece or comes from a binomial.
pub(crate) fn factorize(p: &QtPolynomial) -> Option<(bool, Factored)> {
    if p.is_zero() {
        return None;
    }
    let (c, mono, mut rest) = p.primitive_split();
    let negated = c.is_negative();
    let mut f = Factored {
        content: c.abs(),
        mono,
        factors: Vec::new(),
    };
    if rest.is_one() {
        return Some((negated, f));
    }
    if let Some(fs) = binomial_factors(&rest) {
        f.factors = fs;
        return Some((negated, f));
    }
    let mut value = probe(&rest);
    let n = registry().read().expect("factor registry").entries.len() as u32;
    for id in 0..n {
        let (poly, _, pv) = entry(id);
        if poly.degree_q() > rest.degree_q() || poly.degree_t() > rest.degree_t() {
            continue;
        }
        let mut mult = 0;
        while !pv.is_zero() && (&value % &pv).is_zero() {
            match rest.div_exact(&poly) {
                Some(q) => {
                    rest = q;
                    value /= &pv;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            f = f.mul(&Factored::single(id, mult));
            if rest.is_one() {
                return Some((negated, f));
            }
            if let Some(fs) = binomial_factors(&rest) {
                for (id, e) in fs {
                    f = f.mul(&Factored::single(id, e));
                }
                return Some((negated, f));
            }
        }
    }
    None
}

/// Cancels `num / den` where `den` is given factored, returning the reduced
/// numerator and denominator.
pub(crate) fn reduce(mut num: QtPolynomial, mut den: Factored) -> (QtPolynomial, Factored) {
    let g = num.content().gcd(&den.content);
    if !g.is_one() {
        num = num.div_scalar(&g);
        den.content /= &g;
    }
    let m = num.monomial_content().min(den.mono);
    if m != Monomial::ONE {
        num = num.unshift(m);
        den.mono = den.mono.div(m);
    }
    if den.factors.is_empty() {
        return (num, den);
    }
    let mut value = probe(&num);
    for slot in den.factors.iter_mut() {
        let (poly, _, pv) = entry(slot.0);
        while slot.1 > 0 && !pv.is_zero() && (&value % &pv).is_zero() {
            match num.div_exact(&poly) {
                Some(q) => {
                    num = q;
                    value /= &pv;
                    slot.1 -= 1;
                }
                None => break,
            }
        }
    }
    den.factors.retain(|(_, e)| *e > 0);
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QtPolynomial {
        QtPolynomial::parse(s).unwrap()
    }

    #[test]
    fn cyclotomic_coefficients() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn binomials_factor_completely() {
        for s in ["q^6 - t^4", "q^3*t^3 - 1", "q^4 + t^2", "t^5 - 1", "q - t", "q^2 + 1"] {
            let poly = p(s);
            let (neg, f) = factorize(&poly).expect(s);
            let back = f.expand();
            assert_eq!(if neg { back.neg() } else { back }, poly, "{s}");
        }
        let (neg, f) = factorize(&p("1 - q")).unwrap();
        assert!(neg);
        assert_eq!(f.expand(), p("q - 1"));
    }

    #[test]
    fn products_factor_through_registry() {
        let a = p("q^2 - t^3").mul(&p("q*t - 1")).mul(&p("q*t - 1")).scale(&BigInt::from(6));
        factorize(&p("q^2 - t^3")).unwrap();
        factorize(&p("q*t - 1")).unwrap();
        let (neg, f) = factorize(&a.shift(Monomial::new(1, 2))).unwrap();
        assert!(!neg);
        assert_eq!(f.expand(), a.shift(Monomial::new(1, 2)));
        assert_eq!(f.content, BigInt::from(6));
    }

    #[test]
    fn frobenius_and_swap_match_direct() {
        let mut f = Factored::one();
        for s in ["q^2 - t", "q + 1", "t^3 - 1"] {
            f = f.mul(&factorize(&p(s)).unwrap().1);
        }
        assert_eq!(f.frobenius(3).expand(), f.expand().frobenius(3));
        let (neg, s) = f.swap_qt();
        let direct = f.expand().swap_qt();
        assert_eq!(if neg { s.expand().neg() } else { s.expand() }, direct);
    }

    #[test]
    fn reduce_cancels() {
        let (_, den) = factorize(&p("q^2 - 1").mul(&p("t - 1"))).unwrap();
        let (n, d) = reduce(p("q + 1").mul(&p("q + t")), den);
        assert_eq!(n, p("q + t"));
        assert_eq!(d.expand(), p("q*t - q - t + 1"));
    }
}

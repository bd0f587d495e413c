//! Sparse polynomials in `Z[q,t]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `q^q t^t`. Ordered lexicographically with `q` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        Monomial { q, t }
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            q: exp_add(self.q, other.q),
            t: exp_add(self.t, other.t),
        }
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.q <= other.q && self.t <= other.t
    }

    pub fn div(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q - other.q,
            t: self.t - other.t,
        }
    }

    pub fn min(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q.min(other.q),
            t: self.t.min(other.t),
        }
    }

    pub fn max(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q.max(other.q),
            t: self.t.max(other.t),
        }
    }

    pub fn scale(self, k: u32) -> Monomial {
        Monomial {
            q: exp_mul(self.q, k),
            t: exp_mul(self.t, k),
        }
    }
}

pub(crate) fn exp_add(a: u32, b: u32) -> u32 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("exponent overflow: {a} + {b} exceeds u32"))
}

pub(crate) fn exp_mul(a: u32, k: u32) -> u32 {
    a.checked_mul(k)
        .unwrap_or_else(|| panic!("exponent overflow: {a} * {k} exceeds u32"))
}

/// Polynomial with integer coefficients. Terms are kept sorted with the
/// leading (largest) monomial first and never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QtPolynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl QtPolynomial {
    pub fn zero() -> Self {
        QtPolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, qe: u32, te: u32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        QtPolynomial {
            terms: vec![(Monomial::new(qe, te), c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Self::from_map(map)
    }

    pub(crate) fn from_map(map: BTreeMap<Monomial, BigInt>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        QtPolynomial { terms }
    }

    /// Terms sorted from the leading monomial downwards.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        QtPolynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        match self.terms.binary_search_by(|(k, _)| m.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).max().unwrap_or(0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.min(*m)),
        }
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        QtPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        QtPolynomial { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(*m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(*m, c);
        }
        let dq = (self.degree_q() + other.degree_q()) as usize + 1;
        let dt = (self.degree_t() + other.degree_t()) as usize + 1;
        if dq.saturating_mul(dt) <= 1 << 18 {
            let mut buf = vec![BigInt::zero(); dq * dt];
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    let m = ma.mul(*mb);
                    buf[m.q as usize * dt + m.t as usize] += ca * cb;
                }
            }
            let mut terms = Vec::new();
            for idx in (0..buf.len()).rev() {
                if !buf[idx].is_zero() {
                    let m = Monomial::new((idx / dt) as u32, (idx % dt) as u32);
                    terms.push((m, std::mem::take(&mut buf[idx])));
                }
            }
            QtPolynomial { terms }
        } else {
            let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    *map.entry(ma.mul(*mb)).or_default() += ca * cb;
                }
            }
            Self::from_map(map)
        }
    }

    pub fn mul_term(&self, m: Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QtPolynomial {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(Monomial::ONE, c)
    }

    pub fn shift(&self, m: Monomial) -> Self {
        QtPolynomial {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d.clone())).collect(),
        }
    }

    /// Divides every exponent by `m`; `m` must divide each term.
    pub fn unshift(&self, m: Monomial) -> Self {
        QtPolynomial {
            terms: self.terms.iter().map(|(k, d)| (k.div(m), d.clone())).collect(),
        }
    }

    /// Divides every coefficient exactly by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        QtPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, d)| {
                    debug_assert!((d % c).is_zero());
                    (*k, d / c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `q -> q^k`, `t -> t^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        assert!(k >= 1, "frobenius scale must be positive");
        QtPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.scale(k), c.clone())).collect(),
        }
    }

    /// Swaps the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.t, m.q), c.clone())),
        )
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        let mut qp: BTreeMap<u32, BigRational> = BTreeMap::new();
        let mut tp: BTreeMap<u32, BigRational> = BTreeMap::new();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let a = qp
                .entry(m.q)
                .or_insert_with(|| num_traits::pow(q.clone(), m.q as usize))
                .clone();
            let b = tp
                .entry(m.t)
                .or_insert_with(|| num_traits::pow(t.clone(), m.t as usize))
                .clone();
            acc += a * b * BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, q: &BigInt, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(q.clone(), m.q as usize) * num_traits::pow(t.clone(), m.t as usize);
        }
        acc
    }

    /// Exact division; `None` if `divisor` does not divide `self` in `Z[q,t]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let (dm, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                let (qu, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((m.div(*dm), qu));
            }
            return Some(QtPolynomial { terms });
        }
        if self.degree_q() < divisor.degree_q() || self.degree_t() < divisor.degree_t() {
            return None;
        }
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem: BTreeMap<Monomial, BigInt> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut quot = Vec::new();
        while let Some((&m, _)) = rem.iter().next_back() {
            let c = rem.remove(&m).expect("present");
            if !lm.divides(m) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(lm);
            for (dm, dc) in &divisor.terms[1..] {
                let key = dm.mul(qm);
                let e = rem.entry(key).or_default();
                *e -= dc * &qc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Some(QtPolynomial { terms: quot })
    }

    /// Makes the leading coefficient positive, returning the sign used.
    pub fn normalize_sign(&mut self) -> bool {
        if self.leading_coeff().is_negative() {
            for (_, c) in &mut self.terms {
                *c = -std::mem::take(c);
            }
            true
        } else {
            false
        }
    }

    /// Positive-leading primitive part together with content and monomial factors.
    pub fn primitive_split(&self) -> (BigInt, Monomial, QtPolynomial) {
        let m = self.monomial_content();
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let p = if c.is_one() { self.unshift(m) } else { self.unshift(m).div_scalar(&c) };
        (c, m, p)
    }

    /// Canonical text: terms from the leading monomial down, e.g. `2*q^2*t - q + 1`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(m, c)| (*m, c)), false)
    }

    /// Display form with `t` written before `q`, constant term first, then
    /// terms by descending `t` degree and descending `q` degree.
    pub fn render_tq(&self) -> String {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        terms.sort_by(|(a, _), (b, _)| {
            let ka = (a != &Monomial::ONE, std::cmp::Reverse(a.t), std::cmp::Reverse(a.q));
            let kb = (b != &Monomial::ONE, std::cmp::Reverse(b.t), std::cmp::Reverse(b.q));
            ka.cmp(&kb)
        });
        render_terms(terms.into_iter(), true)
    }

    /// LaTeX form in the same order as [`render_tq`](Self::render_tq).
    pub fn render_latex(&self) -> String {
        let plain = self.render_tq();
        let mut out = String::with_capacity(plain.len());
        let mut chars = plain.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                '*' => {}
                '^' => {
                    out.push_str("^{");
                    while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                        out.push(d);
                        chars.next();
                    }
                    out.push('}');
                }
                _ => out.push(ch),
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        super::render::parse_polynomial(s)
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (Monomial, &'a BigInt)>, t_first: bool) -> String {
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        let var = |name: char, e: u32| -> Option<String> {
            match e {
                0 => None,
                1 => Some(name.to_string()),
                _ => Some(format!("{name}^{e}")),
            }
        };
        let (first, second) = if t_first {
            (var('t', m.t), var('q', m.q))
        } else {
            (var('q', m.q), var('t', m.t))
        };
        factors.extend(first);
        factors.extend(second);
        if factors.is_empty() || !abs.is_one() {
            factors.insert(0, abs.to_string());
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QtPolynomial {
        QtPolynomial::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_and_render() {
        let a = p("q + 1");
        let b = p("q - 1");
        assert_eq!(a.mul(&b).render(), "q^2 - 1");
        assert_eq!(p("t + q").render(), "q + t");
        assert_eq!(a.sub(&a), QtPolynomial::zero());
        assert_eq!(p("2*q*t^3 - t + 5").render(), "2*q*t^3 - t + 5");
    }

    #[test]
    fn exact_division() {
        let a = p("q^3 - t^3");
        let b = p("q - t");
        assert_eq!(a.div_exact(&b).unwrap().render(), "q^2 + q*t + t^2");
        assert!(p("q^2 + 1").div_exact(&b).is_none());
        assert!(p("3*q").div_exact(&p("2")).is_none());
    }

    #[test]
    fn tq_rendering() {
        let x = p("q^2*t^4 + q^4*t^3 + 2*q^3*t^3 + 2*q^2*t^3");
        assert_eq!(x.render_tq(), "t^4*q^2 + t^3*q^4 + 2*t^3*q^3 + 2*t^3*q^2");
        assert_eq!(p("q + 1").render_tq(), "1 + q");
        assert_eq!(x.render_latex(), "t^{4}q^{2} + t^{3}q^{4} + 2t^{3}q^{3} + 2t^{3}q^{2}");
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_panics() {
        let big = QtPolynomial::monomial(1, u32::MAX - 1, 0);
        let _ = big.mul(&big);
    }
}

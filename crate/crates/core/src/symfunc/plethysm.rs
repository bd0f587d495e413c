//! Plethystic substitution with an explicit sign marker `epsilon`.
//!
//! An alphabet is `a X + b eps X + c + d eps` with `a, b, c, d` in the
//! coefficient ring. The rules `p_k[-E] = -p_k[E]` and
//! `p_k[eps E] = (-1)^k p_k[E]` give
//! `p_k[A] = (F_k a + (-1)^k F_k b) p_k + F_k c + (-1)^k F_k d`
//! where `F_k` raises every variable to the `k`-th power.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Coeff, SymFunc};
use crate::shapes::Partition;

#[derive(Clone, Debug, PartialEq)]
pub struct Alphabet<R: Coeff> {
    pub x: R,
    pub x_eps: R,
    pub scalar: R,
    pub scalar_eps: R,
}

impl<R: Coeff> Alphabet<R> {
    pub fn zero() -> Self {
        Alphabet {
            x: R::zero(),
            x_eps: R::zero(),
            scalar: R::zero(),
            scalar_eps: R::zero(),
        }
    }

    /// The variable alphabet `X`.
    pub fn x() -> Self {
        Self::x_times(R::one())
    }

    /// `c X`.
    pub fn x_times(c: R) -> Self {
        Alphabet { x: c, ..Self::zero() }
    }

    /// The scalar alphabet `c`.
    pub fn constant(c: R) -> Self {
        Alphabet {
            scalar: c,
            ..Self::zero()
        }
    }

    /// `eps` times this alphabet.
    pub fn eps(&self) -> Self {
        Alphabet {
            x: self.x_eps.clone(),
            x_eps: self.x.clone(),
            scalar: self.scalar_eps.clone(),
            scalar_eps: self.scalar.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Alphabet {
            x: self.x.add(&o.x),
            x_eps: self.x_eps.add(&o.x_eps),
            scalar: self.scalar.add(&o.scalar),
            scalar_eps: self.scalar_eps.add(&o.scalar_eps),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Alphabet {
            x: self.x.neg(),
            x_eps: self.x_eps.neg(),
            scalar: self.scalar.neg(),
            scalar_eps: self.scalar_eps.neg(),
        }
    }

    /// Multiplies the whole alphabet by a plain coefficient.
    pub fn scale(&self, c: &R) -> Self {
        Alphabet {
            x: self.x.mul(c),
            x_eps: self.x_eps.mul(c),
            scalar: self.scalar.mul(c),
            scalar_eps: self.scalar_eps.mul(c),
        }
    }

    fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.x_eps.is_zero()
    }

    /// `(coefficient of p_k, constant term)` of `p_k[A]`.
    pub fn power_image(&self, k: usize) -> (R, R) {
        let kk = k as u32;
        let odd = k % 2 == 1;
        let signed = |plain: &R, marked: &R| {
            let a = plain.frobenius(kk);
            let b = marked.frobenius(kk);
            if odd {
                a.sub(&b)
            } else {
                a.add(&b)
            }
        };
        (signed(&self.x, &self.x_eps), signed(&self.scalar, &self.scalar_eps))
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow<R: Coeff>(x: &R, e: usize) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

/// `f[A]`. Coefficients of `f` are left untouched.
pub fn plethysm<R: Coeff>(f: &SymFunc<R>, a: &Alphabet<R>) -> SymFunc<R> {
    let mut images: BTreeMap<usize, (R, R)> = BTreeMap::new();
    let mut out = SymFunc::zero();
    for (lam, c) in f.iter() {
        // Expand prod over distinct parts k of (alpha_k p_k + beta_k)^{m_k}.
        let mut acc: Vec<(Vec<usize>, R)> = vec![(Vec::new(), c.clone())];
        let mult = lam.multiplicities();
        for (k, &m) in mult.iter().enumerate().skip(1).rev() {
            if m == 0 {
                continue;
            }
            let (alpha, beta) = images.entry(k).or_insert_with(|| a.power_image(k)).clone();
            let mut terms: Vec<(usize, R)> = Vec::new();
            for j in 0..=m {
                if j > 0 && alpha.is_zero() {
                    break;
                }
                if j < m && beta.is_zero() {
                    continue;
                }
                let coeff = pow(&alpha, j)
                    .mul(&pow(&beta, m - j))
                    .scale_rational(&BigRational::from_integer(binomial(m, j)));
                if !coeff.is_zero() {
                    terms.push((j, coeff));
                }
            }
            let mut next = Vec::with_capacity(acc.len() * terms.len());
            for (parts, x) in &acc {
                for (j, y) in &terms {
                    let mut p = parts.clone();
                    p.extend(std::iter::repeat_n(k, *j));
                    next.push((p, x.mul(y)));
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        for (parts, x) in acc {
            out.add_term(Partition::from_parts(parts), x);
        }
    }
    out
}

/// `Omega[A] = sum_n h_n[A]`, truncated after `h_{maxdeg}`.
pub fn omega_series<R: Coeff>(a: &Alphabet<R>, maxdeg: usize) -> SymFunc<R> {
    let mut out = SymFunc::zero();
    for n in 0..=maxdeg {
        out = out.add(&plethysm(&SymFunc::h(n as i64), a));
    }
    if a.is_scalar() {
        debug_assert!(out.degrees().iter().all(|d| *d == 0));
    }
    out
}

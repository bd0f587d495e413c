//! Polynomial gcd over `Z[q,t]` by recursive content and primitive-part
//! pseudo-remainder sequences, viewing polynomials as elements of `Z[t][q]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, QtPolynomial};

/// Dense univariate polynomial over `Z`, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UPoly(Vec<BigInt>);

impl UPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero")
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly(out).trim()
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_default();
            let b = o.0.get(i).cloned().unwrap_or_default();
            out.push(a - b);
        }
        UPoly(out).trim()
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_scalar(&self, c: &BigInt) -> Self {
        UPoly(self.0.iter().map(|x| x / c).collect())
    }

    fn scale(&self, c: &BigInt) -> Self {
        UPoly(self.0.iter().map(|x| x * c).collect()).trim()
    }

    fn shift_mul(&self, k: usize, c: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.0.iter().map(|x| x * c));
        UPoly(out).trim()
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn prem(&self, b: &Self) -> Self {
        let mut r = self.clone();
        let lb = b.lead().clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let k = r.deg() - b.deg();
            let lr = r.lead().clone();
            r = r.scale(&lb).sub(&b.shift_mul(k, &lr));
        }
        r
    }

    /// Exact division; `None` if not divisible over `Z`.
    fn div_exact(&self, b: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let mut r = self.0.clone();
        let db = b.deg();
        let lb = b.lead();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.0.iter().enumerate() {
                r[k + j] -= &qc * bj;
            }
            q[k] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly(q).trim())
    }

    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_signed();
        }
        if o.is_zero() {
            return self.primitive_signed();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return UPoly(vec![c]);
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    fn primitive_signed(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if self.lead().is_negative() {
            self.scale(&BigInt::from(-1))
        } else {
            self.clone()
        }
    }
}

/// Polynomial in `q` with coefficients in `Z[t]`, lowest `q` degree first.
#[derive(Clone, Debug)]
struct RPoly(Vec<UPoly>);

impl RPoly {
    fn from_poly(p: &QtPolynomial) -> Self {
        let dq = p.degree_q() as usize;
        let mut rows = vec![UPoly(Vec::new()); dq + 1];
        for (m, c) in p.terms() {
            let row = &mut rows[m.q as usize].0;
            if row.len() <= m.t as usize {
                row.resize(m.t as usize + 1, BigInt::zero());
            }
            row[m.t as usize] = c.clone();
        }
        RPoly(rows).trim()
    }

    fn to_poly(&self) -> QtPolynomial {
        let mut terms = Vec::new();
        for (qe, row) in self.0.iter().enumerate().rev() {
            for (te, c) in row.0.iter().enumerate().rev() {
                if !c.is_zero() {
                    terms.push((Monomial::new(qe as u32, te as u32), c.clone()));
                }
            }
        }
        QtPolynomial::from_sorted_unchecked(terms)
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &UPoly {
        self.0.last().expect("nonzero")
    }

    fn content(&self) -> UPoly {
        let mut g = UPoly(Vec::new());
        for c in &self.0 {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_coeff(&self, c: &UPoly) -> Self {
        if c.is_one() {
            return self.clone();
        }
        RPoly(
            self.0
                .iter()
                .map(|x| x.div_exact(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    fn mul_coeff(&self, c: &UPoly) -> Self {
        RPoly(self.0.iter().map(|x| x.mul(c)).collect()).trim()
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.div_coeff(&self.content())
    }

    fn prem(&self, b: &Self) -> Self {
        let mut r = self.clone();
        let lb = b.lead().clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let k = r.deg() - b.deg();
            let lr = r.lead().clone();
            let n = r.0.len().max(b.0.len() + k);
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let a = r.0.get(i).map(|x| x.mul(&lb)).unwrap_or(UPoly(Vec::new()));
                let s = if i >= k {
                    b.0.get(i - k).map(|x| x.mul(&lr)).unwrap_or(UPoly(Vec::new()))
                } else {
                    UPoly(Vec::new())
                };
                out.push(a.sub(&s));
            }
            r = RPoly(out).trim();
        }
        r
    }
}

/// Greatest common divisor in `Z[q,t]`, including the integer content,
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &QtPolynomial, b: &QtPolynomial) -> QtPolynomial {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let mono = a.monomial_content().min(b.monomial_content());
    let int = a.content().gcd(&b.content());
    let a1 = a.unshift(a.monomial_content());
    let b1 = b.unshift(b.monomial_content());
    if a1.is_constant() || b1.is_constant() {
        return QtPolynomial::monomial(int, mono.q, mono.t);
    }
    let (sa, sb) = (a1.div_scalar(&a1.content()), b1.div_scalar(&b1.content()));
    let core = if sa.div_exact(&sb).is_some() {
        sb
    } else if sb.div_exact(&sa).is_some() {
        sa
    } else {
        let ra = RPoly::from_poly(&sa);
        let rb = RPoly::from_poly(&sb);
        rgcd(&ra, &rb).to_poly()
    };
    positive(core.shift(mono).scale(&int))
}

fn rgcd(a: &RPoly, b: &RPoly) -> RPoly {
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let (mut x, mut y) = (a.div_coeff(&ca), b.div_coeff(&cb));
    if x.deg() < y.deg() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        if y.deg() == 0 {
            return RPoly(vec![c]);
        }
        let r = x.prem(&y);
        x = y;
        y = r.primitive();
    }
    x.primitive().mul_coeff(&c)
}

fn positive(mut p: QtPolynomial) -> QtPolynomial {
    p.normalize_sign();
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QtPolynomial {
        QtPolynomial::parse(s).unwrap()
    }

    #[test]
    fn common_factor_is_found() {
        let f = p("q - t");
        let a = f.mul(&p("q + 2*t + 1"));
        let b = f.mul(&p("q*t - 3"));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn includes_content_and_monomials() {
        assert_eq!(gcd(&p("6*q^2*t"), &p("4*q*t^3")).render(), "2*q*t");
        assert_eq!(gcd(&p("2*q + 2"), &p("-4*q - 4")).render(), "2*q + 2");
        assert_eq!(gcd(&p("q + 1"), &p("q - 1")).render(), "1");
    }

    #[test]
    fn univariate_in_t() {
        let a = p("t^4 - 1");
        let b = p("t^6 - 1");
        assert_eq!(gcd(&a, &b).render(), "t^2 - 1");
    }

    #[test]
    fn mixed_cofactors() {
        let g = p("q^2*t - t^3 + 2*q");
        let a = g.mul(&p("q^3 + t^2 + 1")).mul(&p("q - t"));
        let b = g.mul(&p("q*t + q + 7")).mul(&p("q - t"));
        assert_eq!(gcd(&a, &b), g.mul(&p("q - t")));
    }
}

//! Elements of `Q(q,t)` in canonical form.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::{self, Factored};
use super::gcd::gcd;
use super::poly::{Monomial, QtPolynomial};
use super::QtError;

/// Quotient `num / den` with coprime numerator and denominator (integer
/// content included) and a denominator whose leading term is positive.
/// Equal field elements are structurally equal.
#[derive(Clone)]
pub struct QtRational {
    num: QtPolynomial,
    den: QtPolynomial,
    fden: Option<Arc<Factored>>,
}

impl QtRational {
    pub fn zero() -> Self {
        Self::from_poly(QtPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QtPolynomial::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QtPolynomial::q())
    }

    pub fn t() -> Self {
        Self::from_poly(QtPolynomial::t())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(QtPolynomial::constant(c))
    }

    pub fn from_poly(p: QtPolynomial) -> Self {
        QtRational {
            num: p,
            den: QtPolynomial::one(),
            fden: Some(Arc::new(Factored::one())),
        }
    }

    pub fn from_bigrational(r: &BigRational) -> Self {
        Self::from_poly(QtPolynomial::constant(r.numer().clone()))
            .div_int(r.denom())
            .expect("nonzero denominator")
    }

    /// `c * q^a * t^b` for integer exponents of either sign.
    pub fn monomial(c: impl Into<BigInt>, a: i64, b: i64) -> Self {
        let c = c.into();
        let num = QtPolynomial::monomial(c, a.max(0) as u32, b.max(0) as u32);
        let den = QtPolynomial::monomial(1, (-a).max(0) as u32, (-b).max(0) as u32);
        Self::new(num, den).expect("monomial denominator")
    }

    /// `(1 - t)(1 - q)`.
    pub fn m() -> Self {
        Self::from_poly(QtPolynomial::parse("q*t - q - t + 1").expect("static"))
    }

    pub fn new(num: QtPolynomial, den: QtPolynomial) -> Result<Self, QtError> {
        if den.is_zero() {
            return Err(QtError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((neg, f)) = factor::factorize(&den) {
            let num = if neg { num.neg() } else { num };
            return Ok(Self::from_factored(num, f));
        }
        let g = gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        if d.normalize_sign() {
            n = n.neg();
        }
        Ok(QtRational { num: n, den: d, fden: None })
    }

    fn from_factored(num: QtPolynomial, den: Factored) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (n, f) = factor::reduce(num, den);
        QtRational {
            num: n,
            den: f.expand(),
            fden: Some(Arc::new(f)),
        }
    }

    pub fn numer(&self) -> &QtPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &QtPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&QtPolynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn neg(&self) -> Self {
        QtRational {
            num: self.num.neg(),
            den: self.den.clone(),
            fden: self.fden.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let join = |a: &QtPolynomial, b: &QtPolynomial| if negate { a.sub(b) } else { a.add(b) };
        if self.den == o.den {
            let num = join(&self.num, &o.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return match &self.fden {
                Some(f) => Self::from_factored(num, (**f).clone()),
                None => Self::new(num, self.den.clone()).expect("nonzero"),
            };
        }
        match (&self.fden, &o.fden) {
            (Some(fa), Some(fb)) => {
                let l = fa.lcm(fb);
                let ca = l.quotient(fa).expand();
                let cb = l.quotient(fb).expand();
                Self::from_factored(join(&self.num.mul(&ca), &o.num.mul(&cb)), l)
            }
            _ => {
                let num = join(&self.num.mul(&o.den), &o.num.mul(&self.den));
                Self::new(num, self.den.mul(&o.den)).expect("nonzero")
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        match (&self.fden, &o.fden) {
            (Some(fa), Some(fb)) => {
                // Cross-cancel before multiplying out.
                let (n1, f2) = factor::reduce(self.num.clone(), (**fb).clone());
                let (n2, f1) = factor::reduce(o.num.clone(), (**fa).clone());
                let f = f1.mul(&f2);
                QtRational {
                    num: n1.mul(&n2),
                    den: f.expand(),
                    fden: Some(Arc::new(f)),
                }
            }
            _ => Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero"),
        }
    }

    pub fn inv(&self) -> Result<Self, QtError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, QtError> {
        if o.is_zero() {
            return Err(QtError::DivisionByZero);
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.mul(&Self::from_int(c.clone()))
    }

    pub fn div_int(&self, c: &BigInt) -> Result<Self, QtError> {
        if c.is_zero() {
            return Err(QtError::DivisionByZero);
        }
        let mut f = Factored::one();
        f.content = c.abs();
        let num = if c.is_negative() { self.num.neg() } else { self.num.clone() };
        let base = match &self.fden {
            Some(fd) => (**fd).clone(),
            None => return Self::new(num, self.den.scale(&c.abs())),
        };
        Ok(Self::from_factored(num, base.mul(&f)))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul_int(r.numer()).div_int(r.denom()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: i32) -> Result<Self, QtError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^k`, `t -> t^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        if k == 1 {
            return self.clone();
        }
        let num = self.num.frobenius(k);
        match &self.fden {
            Some(f) => {
                let g = f.frobenius(k);
                QtRational {
                    num,
                    den: g.expand(),
                    fden: Some(Arc::new(g)),
                }
            }
            None => QtRational {
                num,
                den: self.den.frobenius(k),
                fden: None,
            },
        }
    }

    /// Exchanges `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        let num = self.num.swap_qt();
        match &self.fden {
            Some(f) => {
                let (neg, g) = f.swap_qt();
                QtRational {
                    num: if neg { num.neg() } else { num },
                    den: g.expand(),
                    fden: Some(Arc::new(g)),
                }
            }
            None => Self::new(num, self.den.swap_qt()).expect("nonzero"),
        }
    }

    /// Exact value at a rational point; errors at a pole.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational, QtError> {
        let d = self.den.eval(q, t);
        if d.is_zero() {
            return Err(QtError::Pole {
                q: q.to_string(),
                t: t.to_string(),
            });
        }
        Ok(self.num.eval(q, t) / d)
    }

    /// Canonical text `num|den`.
    pub fn render(&self) -> String {
        format!("{}|{}", self.num.render(), self.den.render())
    }

    /// Display form with `t` before `q`; fractions are written `(num)/(den)`.
    pub fn render_tq(&self) -> String {
        if self.den.is_one() {
            self.num.render_tq()
        } else {
            format!("({})/({})", self.num.render_tq(), self.den.render_tq())
        }
    }

    pub fn render_latex(&self) -> String {
        if self.den.is_one() {
            self.num.render_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.render_latex(), self.den.render_latex())
        }
    }

    pub fn parse(s: &str) -> Result<Self, QtError> {
        let (n, d) = super::render::split_fraction(s).map_err(QtError::Parse)?;
        Self::new(n, d)
    }

    /// Leading monomial of the denominator, for tests of the sign convention.
    pub fn denom_leading(&self) -> (Monomial, BigInt) {
        self.den.leading().cloned().expect("nonzero denominator")
    }
}

impl PartialEq for QtRational {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl Eq for QtRational {}

impl Hash for QtRational {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl fmt::Debug for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QtRational({})", self.render())
    }
}

impl fmt::Display for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for QtRational {
    type Err = QtError;
    fn from_str(s: &str) -> Result<Self, QtError> {
        Self::parse(s)
    }
}

impl Default for QtRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QtPolynomial> for QtRational {
    fn from(p: QtPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for QtRational {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Serialize for QtRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for QtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&QtRational> for &QtRational {
            type Output = QtRational;
            fn $m(self, o: &QtRational) -> QtRational {
                self.$f(o)
            }
        }
        impl std::ops::$tr<QtRational> for QtRational {
            type Output = QtRational;
            fn $m(self, o: QtRational) -> QtRational {
                (&self).$f(&o)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &QtRational {
    type Output = QtRational;
    fn neg(self) -> QtRational {
        QtRational::neg(self)
    }
}

impl std::ops::Neg for QtRational {
    type Output = QtRational;
    fn neg(self) -> QtRational {
        QtRational::neg(&self)
    }
}

impl One for QtRational {
    fn one() -> Self {
        QtRational::one()
    }
}

impl Zero for QtRational {
    fn zero() -> Self {
        QtRational::zero()
    }
    fn is_zero(&self) -> bool {
        QtRational::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> QtRational {
        QtRational::parse(s).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        let x = r("q^2 - 1|2*q - 2");
        assert_eq!(x.render(), "q + 1|2");
        let y = r("1|1 - q");
        assert_eq!(y.render(), "-1|q - 1");
        assert_eq!(r("q*t|q^2").render(), "t|q");
        assert_eq!(r("6|4").render(), "3|2");
    }

    #[test]
    fn gcd_path_for_non_binomial_denominators() {
        let x = r("q^2 + q*t + 1|q^2*t + q*t^2 + t").add(&r("1|q + t + 7"));
        let back = QtRational::parse(&x.render()).unwrap();
        assert_eq!(back, x);
        let z = x.sub(&r("1|q + t + 7"));
        assert_eq!(z.render(), "1|t");
    }

    #[test]
    fn field_operations() {
        let m = QtRational::m();
        let a = QtRational::one().div(&m).unwrap();
        let b = a.mul(&m);
        assert!(b.is_one());
        let c = r("1|1 - q").add(&r("q|q - 1"));
        assert_eq!(c.render(), "1|1");
        assert_eq!(QtRational::monomial(3, -2, 1).render(), "3*t|q^2");
    }

    #[test]
    fn frobenius_of_fraction() {
        let x = r("q|1 - q*t");
        assert_eq!(x.frobenius(2).render(), "-q^2|q^2*t^2 - 1");
        assert_eq!(x.swap_qt().render(), "-t|q*t - 1");
    }

    #[test]
    fn eval_detects_pole() {
        let x = r("q|1 - t");
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        assert!(x.eval(&two, &one).is_err());
        assert_eq!(x.eval(&two, &two).unwrap(), BigRational::from_integer((-2).into()));
    }
}

//! Finite Laurent polynomials in `z` over `Q(q,t)`.

use std::collections::BTreeMap;
use std::fmt;

use super::rational::QtRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZLaurent {
    coeffs: BTreeMap<i32, QtRational>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QtRational::one())
    }

    pub fn constant(c: QtRational) -> Self {
        Self::term(0, c)
    }

    /// `c * z^e`.
    pub fn term(e: i32, c: QtRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        ZLaurent { coeffs }
    }

    pub fn z() -> Self {
        Self::term(1, QtRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `z^e`.
    pub fn extract(&self, e: i32) -> QtRational {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// The value when no power of `z` other than `z^0` occurs.
    pub fn as_constant(&self) -> Option<QtRational> {
        match self.coeffs.len() {
            0 => Some(QtRational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &QtRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn insert_add(&mut self, e: i32, c: QtRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.insert_add(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ZLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                out.insert_add(a + b, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &QtRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZLaurent {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        ZLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k`, `t -> t^k`, `z -> z^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        ZLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * k as i32, c.frobenius(k)))
                .collect(),
        }
    }
}

impl From<QtRational> for ZLaurent {
    fn from(c: QtRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ZLaurent{")?;
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "z^{e}: {}", c.render())?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_extraction() {
        let a = ZLaurent::z().add(&ZLaurent::term(-1, QtRational::q()));
        let sq = a.mul(&a);
        assert_eq!(sq.extract(0), QtRational::q().mul_int(&2.into()));
        assert_eq!(sq.extract(2), QtRational::one());
        assert_eq!(sq.extract(-2), QtRational::q().mul(&QtRational::q()));
        assert!(sq.extract(1).is_zero());
    }

    #[test]
    fn frobenius_scales_z() {
        let a = ZLaurent::term(-2, QtRational::t());
        let f = a.frobenius(3);
        assert_eq!(f.extract(-6), QtRational::t().pow(3).unwrap());
    }
}

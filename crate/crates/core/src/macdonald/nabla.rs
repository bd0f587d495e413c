//! `nabla H~_mu = T_mu H~_mu`, extended linearly.

use super::{htilde, MacError};
use crate::qt::QtRational;
use crate::symfunc::{star_inner, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Expands each homogeneous component of `f` in the `H~` basis and scales
/// by `T_mu` or `1/T_mu`.
pub fn nabla(f: &SymFunc, sign: Sign) -> Result<SymFunc, MacError> {
    let mut out = SymFunc::zero();
    for d in f.degrees() {
        let fd = f.component(d);
        let table = htilde(d)?;
        for mu in table.shapes() {
            let h = table.get(&mu);
            let c = star_inner(&fd, h);
            if c.is_zero() {
                continue;
            }
            let inv = table.invariants(&mu);
            let eig = match sign {
                Sign::Plus => QtRational::from_poly(inv.t_mu.clone()),
                Sign::Minus => inv.t_recip(),
            };
            out = out.add(&h.scale(&c.mul(&inv.w_recip()).mul(&eig)));
        }
    }
    Ok(out)
}

pub fn nabla_inv(f: &SymFunc) -> Result<SymFunc, MacError> {
    nabla(f, Sign::Minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::Partition;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(nabla(&SymFunc::h(1), Sign::Plus).unwrap(), SymFunc::h(1));
        assert_eq!(nabla(&SymFunc::one(), Sign::Plus).unwrap(), SymFunc::one());
        let h2 = htilde(2).unwrap().get(&part(&[2])).clone();
        assert_eq!(nabla(&h2, Sign::Plus).unwrap(), h2.scale(&QtRational::q()));
        let expect = SymFunc::s(&part(&[2])).add(&SymFunc::s(&part(&[1, 1])).scale(&QtRational::parse("q + t").unwrap()));
        assert_eq!(nabla(&SymFunc::e(2), Sign::Plus).unwrap(), expect);
    }

    #[test]
    fn inverse_round_trip_mixed_degrees() {
        let f = SymFunc::e(3).add(&SymFunc::h(2).scale(&QtRational::t())).add(&SymFunc::one());
        let g = nabla(&f, Sign::Plus).unwrap();
        assert_eq!(nabla_inv(&g).unwrap(), f);
    }

    #[test]
    fn catalan_three() {
        let v = crate::symfunc::hall_inner(&nabla(&SymFunc::e(3), Sign::Plus).unwrap(), &SymFunc::e(3));
        assert_eq!(v, QtRational::parse("q^3 + q^2*t + q*t^2 + q*t + t^3").unwrap());
    }
}

//! The section-cycling map for `m > 1`, the first-car split for `m = 1`,
//! and the sieve that removes big diagonal cars from singleton sections.

use super::{is_triple_shuffle, standardize, validate_pf, CarKind, ParkingError, ParkingFunction, Shuffle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiCase {
    /// First car `1`: drop it, cycle the rest of the first section.
    SmallFirst,
    /// First car `a+b` under a big car, `m > 2`: drop the column, cycle.
    MiddleFirst,
    /// First car `a+b` under a big car, `m = 2`: drop the whole section.
    MiddleWhole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub image: ParkingFunction,
    pub case: PhiCase,
    /// Shuffle class of the image.
    pub target: Shuffle,
    /// Number of sections of the source after its first one.
    pub rest_len: usize,
}

fn pre(msg: impl Into<String>) -> ParkingError {
    ParkingError::Precondition(msg.into())
}

fn check_class(pf: &ParkingFunction, sh: Shuffle) -> Result<(), ParkingError> {
    if pf.n() != sh.n() || !is_triple_shuffle(&pf.sigma(), sh.a, sh.b, sh.c) {
        return Err(pre(format!("{pf} is not in the ({sh}) shuffle class")));
    }
    Ok(())
}

/// Concatenates rows `keep` then `cycled` (lowered by one diagonal) and
/// standardizes the cars.
fn reassemble(pf: &ParkingFunction, keep: std::ops::Range<usize>, cycled: std::ops::Range<usize>) -> ParkingFunction {
    let mut cars: Vec<usize> = pf.cars()[keep.clone()].to_vec();
    let mut diags: Vec<usize> = pf.diags()[keep].to_vec();
    cars.extend_from_slice(&pf.cars()[cycled.clone()]);
    diags.extend(pf.diags()[cycled].iter().map(|u| u - 1));
    ParkingFunction::from_parts_unchecked(standardize(&cars), diags)
}

/// The map for parking functions whose first section has length `m > 1`.
pub fn phi_map(pf: &ParkingFunction, sh: Shuffle) -> Result<PhiImage, ParkingError> {
    check_class(pf, sh)?;
    let secs = pf.sections();
    let m = secs[0].len();
    if m < 2 {
        return Err(pre("first section must have length > 1"));
    }
    let (cars, n) = (pf.cars(), pf.n());
    let rest_len = secs.len() - 1;
    if cars[0] == 1 && sh.a >= 1 {
        return Ok(PhiImage {
            image: reassemble(pf, m..n, 1..m),
            case: PhiCase::SmallFirst,
            target: Shuffle::new(sh.a - 1, sh.b, sh.c),
            rest_len,
        });
    }
    let mid = sh.a + sh.b;
    if sh.b >= 1 && cars[0] == mid && sh.kind(cars[1]) == CarKind::Big && pf.diags()[1] == 1 {
        return Ok(PhiImage {
            image: reassemble(pf, m..n, 2..m),
            case: if m == 2 { PhiCase::MiddleWhole } else { PhiCase::MiddleFirst },
            target: Shuffle::new(sh.a, sh.b - 1, sh.c - 1),
            rest_len,
        });
    }
    Err(pre(format!("first car {} is neither 1 nor a+b under a big car", cars[0])))
}

/// Inverts [`phi_map`] given the source class and the number of leading
/// sections of `image` that came from the source's tail.
pub fn phi_inverse(image: &ParkingFunction, rest_len: usize, sh: Shuffle) -> Result<ParkingFunction, ParkingError> {
    let secs = image.sections();
    if rest_len > secs.len() {
        return Err(pre("rest_len exceeds the number of sections"));
    }
    let split = if rest_len == 0 { 0 } else { secs[rest_len - 1].end };
    let (cars, diags) = (image.cars(), image.diags());
    let tail = split..image.n();
    let (mut new_cars, mut new_diags): (Vec<usize>, Vec<usize>);
    let relabel: Box<dyn Fn(usize) -> usize>;
    if image.n() + 1 == sh.n() && sh.a >= 1 {
        new_cars = vec![1];
        new_diags = vec![0];
        relabel = Box::new(|x| x + 1);
    } else if image.n() + 2 == sh.n() && sh.b >= 1 && sh.c >= 1 {
        let mid = sh.a + sh.b;
        let big = |x: usize| x >= mid;
        let lifted = (0..split).filter(|&i| diags[i] >= 1 && big(cars[i])).count();
        let cycled = tail.clone().filter(|&i| big(cars[i])).count();
        let u = mid + 1 + lifted + cycled;
        new_cars = vec![mid, u];
        new_diags = vec![0, 1];
        relabel = Box::new(move |x| {
            if x < mid {
                x
            } else if x + 2 <= u {
                x + 1
            } else {
                x + 2
            }
        });
    } else {
        return Err(pre(format!("image of size {} does not fit class ({sh})", image.n())));
    }
    for i in tail {
        new_cars.push(relabel(cars[i]));
        new_diags.push(diags[i] + 1);
    }
    for i in 0..split {
        new_cars.push(relabel(cars[i]));
        new_diags.push(diags[i]);
    }
    let pf = validate_pf(new_cars, new_diags)?;
    check_class(&pf, sh)?;
    Ok(pf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FirstCar {
    Small,
    Middle,
    Big,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M1Image {
    pub first: FirstCar,
    pub image: ParkingFunction,
    pub target: Shuffle,
    /// `dinv(pf) - dinv(image)`.
    pub dinv_loss: usize,
}

/// Removes the lone first car of a parking function with composition
/// `(1, alpha)` and classifies it.
pub fn m1_split(pf: &ParkingFunction, sh: Shuffle) -> Result<M1Image, ParkingError> {
    check_class(pf, sh)?;
    let secs = pf.sections();
    if secs[0].len() != 1 {
        return Err(pre("composition must start with 1"));
    }
    let n = pf.n();
    let car = pf.cars()[0];
    let image = ParkingFunction::from_parts_unchecked(standardize(&pf.cars()[1..]), pf.diags()[1..].to_vec());
    let (first, target, dinv_loss) = match sh.kind(car) {
        CarKind::Small if car == 1 => (FirstCar::Small, Shuffle::new(sh.a - 1, sh.b, sh.c), secs.len() - 1),
        CarKind::Big if car == n => (FirstCar::Big, Shuffle::new(sh.a, sh.b, sh.c - 1), 0),
        CarKind::Middle if car == sh.a + sh.b => {
            let target = Shuffle::new(sh.a, sh.b - 1, sh.c);
            let r = (0..image.n())
                .filter(|&i| image.diags()[i] == 0 && target.kind(image.cars()[i]) == CarKind::Big)
                .count();
            (FirstCar::Middle, target, r)
        }
        _ => return Err(pre(format!("first car {car} cannot start a ({sh}) parking function"))),
    };
    Ok(M1Image {
        first,
        image,
        target,
        dinv_loss,
    })
}

/// For each singleton section `i` (counted from 1) of `pf` holding a big
/// car of class `sh`, the parking function with that car removed.
pub fn sieve_expand(pf: &ParkingFunction, sh: Shuffle) -> Vec<(usize, ParkingFunction)> {
    let mut out = Vec::new();
    for (k, sec) in pf.sections().into_iter().enumerate() {
        if sec.len() == 1 && sh.kind(pf.cars()[sec.start]) == CarKind::Big {
            let keep: Vec<usize> = (0..pf.n()).filter(|&i| i != sec.start).collect();
            let cars: Vec<usize> = keep.iter().map(|&i| pf.cars()[i]).collect();
            let diags = keep.iter().map(|&i| pf.diags()[i]).collect();
            out.push((k + 1, ParkingFunction::from_parts_unchecked(standardize(&cars), diags)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::gamma;
    use super::*;
    use crate::shapes::Composition;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_one_loses_one_area_and_one_dinv() {
        let sh = Shuffle::new(1, 1, 1);
        let family = gamma(&comp(&[2, 1]), sh);
        assert!(!family.is_empty());
        for pf in &family {
            let img = phi_map(pf, sh).unwrap();
            assert_eq!(pf.area() - img.image.area(), 1, "{pf}");
            assert_eq!(pf.dinv() - img.image.dinv(), 1, "{pf}");
            assert_eq!(phi_inverse(&img.image, img.rest_len, sh).unwrap(), *pf);
        }
    }

    #[test]
    fn preconditions() {
        let sh = Shuffle::new(1, 0, 0);
        let pf = validate_pf(vec![1], vec![0]).unwrap();
        assert!(phi_map(&pf, sh).is_err());
        let pf = validate_pf(vec![1, 2], vec![0, 1]).unwrap();
        assert!(phi_map(&pf, Shuffle::new(0, 2, 0)).is_err());
        assert!(m1_split(&pf, Shuffle::new(0, 1, 1)).is_err());
    }

    #[test]
    fn m1_cases() {
        let sh = Shuffle::new(1, 1, 1);
        let small = validate_pf(vec![1, 3, 2], vec![0, 0, 0]).unwrap();
        let s = m1_split(&small, sh).unwrap();
        assert_eq!((s.first, s.dinv_loss), (FirstCar::Small, 2));
        assert_eq!(small.dinv() - s.image.dinv(), s.dinv_loss);
        let big = validate_pf(vec![3, 2, 1], vec![0, 0, 0]).unwrap();
        let b = m1_split(&big, sh).unwrap();
        assert_eq!((b.first, b.dinv_loss, b.image.dinv()), (FirstCar::Big, 0, big.dinv()));
        let mid = validate_pf(vec![2, 3, 1], vec![0, 0, 0]).unwrap();
        let m = m1_split(&mid, sh).unwrap();
        assert_eq!((m.first, m.dinv_loss), (FirstCar::Middle, 1));
        assert_eq!(mid.dinv() - m.image.dinv(), 1);
    }

    #[test]
    fn sieve_removes_big_singletons() {
        let pf = validate_pf(vec![2, 1], vec![0, 0]).unwrap();
        let out = sieve_expand(&pf, Shuffle::new(0, 1, 1));
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, 1);
        assert_eq!(out[0].1, validate_pf(vec![1], vec![0]).unwrap());
        assert!(sieve_expand(&validate_pf(vec![1, 2], vec![0, 0]).unwrap(), Shuffle::new(2, 0, 0)).is_empty());
    }
}

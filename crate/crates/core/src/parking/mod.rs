//! Parking functions as two-line arrays, their statistics, enumeration by
//! diagonal composition, the triple-shuffle filter, the section bijections
//! behind the combinatorial recursion, and the five-step path encoding.

mod bijection;
mod enumerate;
mod path;
mod recursion;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::qt::QtRational;
use crate::shapes::Composition;

pub use bijection::{m1_split, phi_inverse, phi_map, sieve_expand, FirstCar, M1Image, PhiCase, PhiImage};
pub use enumerate::{enumerate_by_comp, gamma, in_shuffle, is_triple_shuffle, pi_poly, rhs_quasisym, Segment};
pub use path::{pf_to_path, FiveStepPath, Step};
pub use recursion::{
    check_m1_weights, check_sieve_aggregate, check_phi_bijection, check_structure, verify_recursion, RecursionReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParkingError {
    #[error("cars and diags need the same positive length, got {cars} and {diags}")]
    Length { cars: usize, diags: usize },
    #[error("diagonal jump at position {index}: u must start at 0 and rise by at most 1")]
    DiagonalJump { index: usize },
    #[error("car {car} at position {index} does not exceed the car below it in its column")]
    ColumnRise { index: usize, car: usize },
    #[error("cars are not a permutation of 1..{n}")]
    NotPermutation { n: usize },
    #[error("cannot parse parking function: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Cars `v_1..v_n` read by rows bottom to top and their diagonal numbers
/// `u_1..u_n`. Ordering is lexicographic on `(u, v)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParkingFunction {
    diags: Vec<usize>,
    cars: Vec<usize>,
}

/// The three letter classes of the shuffle `rev(A) ⧢ B ⧢ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CarKind {
    Small,
    Middle,
    Big,
}

/// Segment lengths `(a, b, c)` of the triple shuffle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shuffle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Shuffle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Shuffle { a, b, c }
    }

    /// Builds a shuffle from signed lengths, `None` if any is negative.
    pub fn signed(a: i64, b: i64, c: i64) -> Option<Self> {
        (a >= 0 && b >= 0 && c >= 0).then(|| Shuffle::new(a as usize, b as usize, c as usize))
    }

    pub fn n(&self) -> usize {
        self.a + self.b + self.c
    }

    pub fn kind(&self, car: usize) -> CarKind {
        if car <= self.a {
            CarKind::Small
        } else if car <= self.a + self.b {
            CarKind::Middle
        } else {
            CarKind::Big
        }
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFStats {
    pub area: usize,
    pub dinv: usize,
    pub sigma: Vec<usize>,
    pub ides: Vec<usize>,
    pub dcomp: Composition,
}

pub fn validate_pf(cars: Vec<usize>, diags: Vec<usize>) -> Result<ParkingFunction, ParkingError> {
    let n = cars.len();
    if n == 0 || diags.len() != n {
        return Err(ParkingError::Length {
            cars: n,
            diags: diags.len(),
        });
    }
    if diags[0] != 0 {
        return Err(ParkingError::DiagonalJump { index: 1 });
    }
    for i in 1..n {
        if diags[i] > diags[i - 1] + 1 {
            return Err(ParkingError::DiagonalJump { index: i + 1 });
        }
    }
    let mut seen = vec![false; n + 1];
    for &v in &cars {
        if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
            return Err(ParkingError::NotPermutation { n });
        }
    }
    for i in 1..n {
        if diags[i] == diags[i - 1] + 1 && cars[i] < cars[i - 1] {
            return Err(ParkingError::ColumnRise {
                index: i + 1,
                car: cars[i],
            });
        }
    }
    Ok(ParkingFunction { diags, cars })
}

impl ParkingFunction {
    /// The parking function on zero cars.
    pub fn empty() -> Self {
        ParkingFunction {
            diags: Vec::new(),
            cars: Vec::new(),
        }
    }

    /// Skips validation; callers guarantee the two-line array conditions.
    pub(crate) fn from_parts_unchecked(cars: Vec<usize>, diags: Vec<usize>) -> Self {
        debug_assert!(cars.is_empty() || validate_pf(cars.clone(), diags.clone()).is_ok());
        ParkingFunction { diags, cars }
    }

    pub fn cars(&self) -> &[usize] {
        &self.cars
    }

    pub fn diags(&self) -> &[usize] {
        &self.diags
    }

    pub fn n(&self) -> usize {
        self.cars.len()
    }

    pub fn area(&self) -> usize {
        self.diags.iter().sum()
    }

    pub fn dinv(&self) -> usize {
        let (u, v) = (&self.diags, &self.cars);
        let mut d = 0;
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                if (u[i] == u[j] && v[i] < v[j]) || (u[i] == u[j] + 1 && v[i] > v[j]) {
                    d += 1;
                }
            }
        }
        d
    }

    /// Cars read right to left within each diagonal, highest diagonal first.
    pub fn sigma(&self) -> Vec<usize> {
        let top = self.diags.iter().copied().max().unwrap_or(0);
        let mut out = Vec::with_capacity(self.n());
        for d in (0..=top).rev() {
            for i in (0..self.n()).rev() {
                if self.diags[i] == d {
                    out.push(self.cars[i]);
                }
            }
        }
        out
    }

    /// Descent set of the inverse of `sigma`.
    pub fn ides(&self) -> Vec<usize> {
        let sigma = self.sigma();
        let mut pos = vec![0; self.n() + 1];
        for (i, &v) in sigma.iter().enumerate() {
            pos[v] = i;
        }
        (1..self.n()).filter(|&i| pos[i] > pos[i + 1]).collect()
    }

    /// Row ranges of the sections between successive zeros of `u`.
    pub fn sections(&self) -> Vec<Range<usize>> {
        let starts: Vec<usize> = (0..self.n()).filter(|&i| self.diags[i] == 0).collect();
        starts
            .iter()
            .enumerate()
            .map(|(k, &s)| s..starts.get(k + 1).copied().unwrap_or(self.n()))
            .collect()
    }

    pub fn dcomp(&self) -> Composition {
        Composition::new(self.sections().iter().map(|r| r.len()).collect()).expect("sections are nonempty")
    }

    /// Column of the car in row `i`.
    pub fn column(&self, i: usize) -> usize {
        i - self.diags[i]
    }

    /// `t^area q^dinv`.
    pub fn weight(&self) -> QtRational {
        QtRational::monomial(1, self.dinv() as i64, self.area() as i64)
    }

    pub fn stats(&self) -> PFStats {
        PFStats {
            area: self.area(),
            dinv: self.dinv(),
            sigma: self.sigma(),
            ides: self.ides(),
            dcomp: self.dcomp(),
        }
    }
}

pub fn stats(pf: &ParkingFunction) -> PFStats {
    pf.stats()
}

/// Relabels distinct positive integers to `1..=len` preserving order.
pub(crate) fn standardize(cars: &[usize]) -> Vec<usize> {
    let mut sorted = cars.to_vec();
    sorted.sort_unstable();
    cars.iter().map(|c| sorted.binary_search(c).expect("present") + 1).collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cars={}; diags={}", join(&self.cars), join(&self.diags))
    }
}

impl fmt::Debug for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ParkingFunction {
    type Err = ParkingError;

    /// Accepts `cars=4,6,8; diags=0,1,2` in either field order.
    fn from_str(s: &str) -> Result<Self, ParkingError> {
        let bad = || ParkingError::Parse(s.to_string());
        let list = |body: &str| -> Result<Vec<usize>, ParkingError> {
            body.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let (mut cars, mut diags) = (None, None);
        for field in s.split(';') {
            let (key, body) = field.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "cars" => cars = Some(list(body)?),
                "diags" => diags = Some(list(body)?),
                _ => return Err(bad()),
            }
        }
        validate_pf(cars.ok_or_else(bad)?, diags.ok_or_else(bad)?)
    }
}

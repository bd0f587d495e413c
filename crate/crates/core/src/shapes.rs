//! Partitions, compositions and French-convention cell statistics.
//!
//! Cells are `(col, row)` pairs counted from zero, with row 0 at the bottom.
//! Arm counts cells east of a cell, leg cells north of it, coarm cells to
//! the west and coleg cells to the south.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::qt::{Monomial, QtPolynomial, QtRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("not a composition: {0:?}")]
    InvalidComposition(Vec<usize>),
    #[error("index {index} out of range for {len} parts (indices start at 1)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cell ({col},{row}) is not in the shape")]
    NoSuchCell { col: usize, row: usize },
    #[error("cannot parse shape {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    pub arm: usize,
    pub leg: usize,
    pub coarm: usize,
    pub coleg: usize,
}

/// Shape invariants as polynomials in `q,t`.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub n_mu: usize,
    pub n_conj: usize,
    /// `t^{n(mu)} q^{n(mu')}`.
    pub t_mu: QtPolynomial,
    /// Sum of `t^{coleg} q^{coarm}` over cells.
    pub b_mu: QtPolynomial,
    /// Product of `1 - t^{coleg} q^{coarm}` over cells other than the origin.
    pub pi_mu: QtPolynomial,
    /// `M B_mu - 1`.
    pub d_mu: QtPolynomial,
    /// Product of `(q^a - t^{l+1})(t^l - q^{a+1})` over cells.
    pub w_mu: QtPolynomial,
    w_factors: Vec<QtPolynomial>,
    pi_factors: Vec<QtPolynomial>,
}

impl Invariants {
    pub fn w_recip(&self) -> QtRational {
        recip_product(&self.w_factors)
    }

    pub fn pi_recip(&self) -> QtRational {
        recip_product(&self.pi_factors)
    }

    pub fn t_recip(&self) -> QtRational {
        QtRational::new(QtPolynomial::one(), self.t_mu.clone()).expect("monomial")
    }
}

/// `1 / prod f_i`, built factor by factor so the denominator stays factored.
pub fn recip_product(fs: &[QtPolynomial]) -> QtRational {
    fs.iter().fold(QtRational::one(), |acc, f| {
        acc.mul(&QtRational::new(QtPolynomial::one(), f.clone()).expect("nonzero factor"))
    })
}

/// `(1 - t)(1 - q)` as a polynomial.
pub fn m_poly() -> QtPolynomial {
    QtRational::m().numer().clone()
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition, dropping zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|p| *p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((0..first).map(|c| self.0.iter().filter(|p| **p > c).count()).collect())
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.col < self.part(cell.row)
    }

    /// Cells row by row from the bottom, west to east.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(row, len)| (0..*len).map(move |col| Cell { col, row }))
    }

    pub fn cell_stats(&self, cell: Cell) -> Result<CellStats, ShapeError> {
        if !self.contains(cell) {
            return Err(ShapeError::NoSuchCell {
                col: cell.col,
                row: cell.row,
            });
        }
        let height = self.0.iter().filter(|p| **p > cell.col).count();
        Ok(CellStats {
            arm: self.0[cell.row] - cell.col - 1,
            leg: height - cell.row - 1,
            coarm: cell.col,
            coleg: cell.row,
        })
    }

    /// `n(mu) = sum (i-1) mu_i`.
    pub fn n(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Multiplicity of each part size `1..=max`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for p in &self.0 {
            m[*p] += 1;
        }
        m
    }

    /// `z_mu = prod i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=*m {
                z *= BigInt::from(i) * BigInt::from(k);
            }
        }
        z
    }

    /// `(-1)^{|mu| - l(mu)}`.
    pub fn sign(&self) -> i32 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn invariants(&self) -> Invariants {
        let n_mu = self.n();
        let n_conj = self.conjugate().n();
        let mut b = Vec::new();
        let mut pi = QtPolynomial::one();
        let mut pi_factors = Vec::new();
        let mut w = QtPolynomial::one();
        let mut w_factors = Vec::new();
        for cell in self.cells() {
            let s = self.cell_stats(cell).expect("own cell");
            let mono = Monomial::new(s.coarm as u32, s.coleg as u32);
            b.push((mono, BigInt::one()));
            if cell != (Cell { col: 0, row: 0 }) {
                let f = QtPolynomial::one().sub(&QtPolynomial::monomial(1, mono.q, mono.t));
                pi = pi.mul(&f);
                pi_factors.push(f);
            }
            let (a, l) = (s.arm as u32, s.leg as u32);
            let f1 = QtPolynomial::monomial(1, a, 0).sub(&QtPolynomial::monomial(1, 0, l + 1));
            let f2 = QtPolynomial::monomial(1, 0, l).sub(&QtPolynomial::monomial(1, a + 1, 0));
            w = w.mul(&f1).mul(&f2);
            w_factors.push(f1);
            w_factors.push(f2);
        }
        let b_mu = QtPolynomial::from_terms(b);
        let d_mu = m_poly().mul(&b_mu).sub(&QtPolynomial::one());
        Invariants {
            n_mu,
            n_conj,
            t_mu: QtPolynomial::monomial(1, n_conj as u32, n_mu as u32),
            b_mu,
            pi_mu: pi,
            d_mu,
            w_mu: w,
            w_factors,
            pi_factors,
        }
    }

    /// Partitions obtained by removing one corner cell, ordered by row.
    pub fn removable(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut p = self.0.clone();
                p[i] -= 1;
                out.push(Partition::from_parts(p));
            }
        }
        out
    }

    /// Partitions obtained by adding one cell, ordered by row.
    pub fn addable(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut p = self.0.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push(Partition(p));
            }
        }
        out
    }

    /// The diagram `mu / nu` as a cell when `nu` is `mu` with one corner removed.
    pub fn removed_cell(&self, nu: &Partition) -> Option<Cell> {
        if self.size() != nu.size() + 1 {
            return None;
        }
        let mut found = None;
        for row in 0..self.len() {
            match self.part(row).checked_sub(nu.part(row)) {
                Some(0) => {}
                Some(1) if found.is_none() => {
                    found = Some(Cell {
                        col: nu.part(row),
                        row,
                    })
                }
                _ => return None,
            }
        }
        found
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.contains(&0) {
            return Err(ShapeError::InvalidComposition(parts));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops part `i`, counting from 1.
    pub fn remove_part(&self, i: usize) -> Result<Composition, ShapeError> {
        if i == 0 || i > self.len() {
            return Err(ShapeError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let mut p = self.0.clone();
        p.remove(i - 1);
        Ok(Composition(p))
    }

    /// Prepends a part.
    pub fn prepend(&self, first: usize) -> Composition {
        assert!(first > 0, "composition parts are positive");
        let mut p = Vec::with_capacity(self.len() + 1);
        p.push(first);
        p.extend_from_slice(&self.0);
        Composition(p)
    }

    pub fn concat(&self, o: &Composition) -> Composition {
        let mut p = self.0.clone();
        p.extend_from_slice(&o.0);
        Composition(p)
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_parts(self.0.clone())
    }
}

/// Partitions of `n`, largest first in lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Compositions of `n` in lexicographic order; `()` for zero, none below zero.
pub fn compositions(n: i64) -> Vec<Composition> {
    if n < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    rec(n as usize, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    Below,
    Above,
    Incomparable,
}

impl Dominance {
    /// `Some(lambda <= mu)` when comparable, `None` otherwise.
    pub fn leq(self) -> Option<bool> {
        match self {
            Dominance::Equal | Dominance::Below => Some(true),
            Dominance::Above => Some(false),
            Dominance::Incomparable => None,
        }
    }
}

/// Compares `lambda` against `mu` in dominance order. Both must have the same size.
pub fn dominance(lambda: &Partition, mu: &Partition) -> Result<Dominance, ShapeError> {
    if lambda.size() != mu.size() {
        return Err(ShapeError::Parse(format!(
            "dominance needs equal sizes, got {lambda} and {mu}"
        )));
    }
    let (mut below, mut above) = (false, false);
    let (mut sl, mut sm) = (0, 0);
    for i in 0..lambda.len().max(mu.len()) {
        sl += lambda.part(i);
        sm += mu.part(i);
        match sl.cmp(&sm) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (below, above) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Below,
        (false, true) => Dominance::Above,
        (true, true) => Dominance::Incomparable,
    })
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize], open: char, close: char) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, "{close}")
}

fn parse_parts(s: &str, open: char, close: char) -> Result<Vec<usize>, ShapeError> {
    let inner = s
        .trim()
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| ShapeError::Parse(s.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| ShapeError::Parse(s.to_string())))
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0, '[', ']')
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0, '(', ')')
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, ShapeError> {
        Partition::new(parse_parts(s, '[', ']')?)
    }
}

impl FromStr for Composition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, ShapeError> {
        Composition::new(parse_parts(s, '(', ')')?)
    }
}

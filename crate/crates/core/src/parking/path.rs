//! Five-step lattice paths: east steps stay, north steps next to small cars
//! stay black, a big car directly over a middle car becomes one slope-2
//! step, and lone middle/big cars become red/blue slope-1 steps.

use std::fmt;

use super::{CarKind, ParkingFunction, Shuffle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    East,
    North,
    Red,
    Blue,
    Slope2,
}

impl Step {
    pub fn letter(self) -> &'static str {
        match self {
            Step::East => "E",
            Step::North => "N",
            Step::Red => "R",
            Step::Blue => "B",
            Step::Slope2 => "S2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiveStepPath(pub Vec<Step>);

impl FiveStepPath {
    pub fn count(&self, step: Step) -> usize {
        self.0.iter().filter(|s| **s == step).count()
    }
}

impl fmt::Display for FiveStepPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<&str> = self.0.iter().map(|s| s.letter()).collect();
        f.write_str(&letters.join(" "))
    }
}

pub fn pf_to_path(pf: &ParkingFunction, sh: Shuffle) -> FiveStepPath {
    let n = pf.n();
    let mut steps = Vec::with_capacity(2 * n);
    let mut row = 0;
    for col in 0..n {
        let mut column = Vec::new();
        while row < n && pf.column(row) == col {
            column.push(sh.kind(pf.cars()[row]));
            row += 1;
        }
        let mut k = 0;
        while k < column.len() {
            match column[k] {
                CarKind::Small => steps.push(Step::North),
                CarKind::Middle if column.get(k + 1) == Some(&CarKind::Big) => {
                    steps.push(Step::Slope2);
                    k += 1;
                }
                CarKind::Middle => steps.push(Step::Red),
                CarKind::Big => steps.push(Step::Blue),
            }
            k += 1;
        }
        steps.push(Step::East);
    }
    FiveStepPath(steps)
}

#[cfg(test)]
mod tests {
    use super::super::validate_pf;
    use super::*;

    #[test]
    fn small_examples() {
        let one = validate_pf(vec![1], vec![0]).unwrap();
        assert_eq!(pf_to_path(&one, Shuffle::new(1, 0, 0)).to_string(), "N E");
        let two = validate_pf(vec![2, 1], vec![0, 0]).unwrap();
        assert_eq!(pf_to_path(&two, Shuffle::new(0, 1, 1)).to_string(), "B E R E");
        let stacked = validate_pf(vec![1, 2, 3], vec![0, 1, 2]).unwrap();
        assert_eq!(pf_to_path(&stacked, Shuffle::new(1, 1, 1)).to_string(), "N S2 E E E");
    }
}

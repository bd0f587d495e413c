//! Verification suites: parameter grids of independent checks, run on a
//! bounded worker pool (or sequentially without the `parallel` feature) and
//! assembled into reports whose order never depends on scheduling.

mod emit;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use emit::{render, Format};
pub use suites::cases;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Macdonald,
    Operators,
    Recursion,
    MainTheorem,
    ShuffleQsym,
    Paths,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Macdonald,
        Suite::Operators,
        Suite::Recursion,
        Suite::MainTheorem,
        Suite::ShuffleQsym,
        Suite::Paths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Macdonald => "macdonald",
            Suite::Operators => "operators",
            Suite::Recursion => "recursion",
            Suite::MainTheorem => "main-theorem",
            Suite::ShuffleQsym => "shuffle-qsym",
            Suite::Paths => "paths",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of macdonald, operators, recursion, main-theorem, shuffle-qsym, paths, all")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// What a single check reports back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl Outcome {
    pub fn compare(lhs: String, rhs: String) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Outcome { status, lhs, rhs }
    }

    pub fn verdict(pass: bool, lhs: String, rhs: String) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Outcome { status, lhs, rhs }
    }

    pub fn error(msg: impl fmt::Display) -> Self {
        Outcome {
            status: Status::Error,
            lhs: msg.to_string(),
            rhs: String::new(),
        }
    }
}

type Check = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Case {
    pub suite: Suite,
    pub id: String,
    pub params: String,
    check: Check,
}

impl Case {
    pub fn new(suite: Suite, id: impl Into<String>, params: impl Into<String>, check: Check) -> Self {
        Case {
            suite,
            id: id.into(),
            params: params.into(),
            check,
        }
    }

    pub fn run(&self) -> CaseResult {
        let start = Instant::now();
        let out = (self.check)();
        let failed = out.status != Status::Pass;
        CaseResult {
            suite: self.suite,
            id: self.id.clone(),
            params: self.params.clone(),
            status: out.status,
            lhs: failed.then_some(out.lhs),
            rhs: failed.then_some(out.rhs),
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub suite: Suite,
    pub id: String,
    pub params: String,
    pub status: Status,
    /// Both sides are kept only for cases that did not pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub n_max: usize,
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases.len()
    }
}

/// Runs every case of `suite` up to `n_max` on `jobs` workers.
pub fn run(suite: Suite, n_max: usize, jobs: usize) -> VerificationReport {
    let cases = cases(suite, n_max);
    VerificationReport {
        suite,
        n_max,
        cases: execute(&cases, jobs),
    }
}

#[cfg(feature = "parallel")]
fn execute(cases: &[Case], jobs: usize) -> Vec<CaseResult> {
    use rayon::prelude::*;
    if jobs <= 1 {
        return cases.iter().map(Case::run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("worker pool");
    pool.install(|| cases.par_iter().map(Case::run).collect())
}

#[cfg(not(feature = "parallel"))]
fn execute(cases: &[Case], _jobs: usize) -> Vec<CaseResult> {
    cases.iter().map(Case::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn report_independent_of_jobs() {
        let one = run(Suite::Operators, 2, 1);
        let four = run(Suite::Operators, 2, 4);
        assert!(one.all_passed());
        for f in [Format::Plain, Format::Json, Format::Csv, Format::Latex] {
            assert_eq!(render(&one, f, false), render(&four, f, false));
        }
    }

    #[test]
    fn failures_keep_both_sides() {
        let case = Case::new(
            Suite::Macdonald,
            "demo",
            "x=1",
            Box::new(|| Outcome::compare("1|1".into(), "2|1".into())),
        );
        let r = case.run();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.lhs.as_deref(), Some("1|1"));
        assert_eq!(r.rhs.as_deref(), Some("2|1"));
    }
}

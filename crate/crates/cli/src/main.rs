use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qtshuffle::macdonald::{lhs_inner, load_or_build, table_path};
use qtshuffle::parking::{gamma, pf_to_path, Shuffle};
use qtshuffle::shapes::Composition;
use qtshuffle::verify::{self, Format, Suite};

#[derive(Parser)]
#[command(name = "qtshuffle", version, about = "Exact q,t shuffle identities: symbolic and parking-function sides")]
struct Cli {
    /// Directory of cached H~ tables.
    #[arg(long, global = true, env = "QTSHUFFLE_CACHE")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate H~ tables for degrees 0..=n-max.
    BuildCache {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Print <nabla C_comp 1, e_a h_b h_c>.
    Inner {
        /// Composition, e.g. 3,2
        comp: String,
        a: usize,
        b: usize,
        c: usize,
        #[arg(long, value_enum, default_value_t = InnerFormat::Plain)]
        format: InnerFormat,
    },
    /// Run a verification suite.
    Verify {
        /// macdonald, operators, recursion, main-theorem, shuffle-qsym, paths or all
        suite: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// plain, json, csv or latex
        #[arg(long, default_value = "plain")]
        format: String,
        /// Include per-case wall-clock seconds.
        #[arg(long)]
        timings: bool,
    },
    /// Enumerate the parking functions with diagonal composition comp in the
    /// (a, b, c) shuffle class.
    Enumerate {
        comp: String,
        a: usize,
        b: usize,
        c: usize,
        /// List each parking function with its statistics.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InnerFormat {
    Plain,
    Latex,
    Json,
}

/// Usage errors exit with status 2, failed checks with 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_comp(s: &str) -> Result<Composition> {
    let s = s.trim();
    let wrapped = if s.starts_with('(') { s.to_string() } else { format!("({s})") };
    wrapped.parse().map_err(|e| usage(format!("bad composition {s:?}: {e}")))
}

fn check_size(comp: &Composition, a: usize, b: usize, c: usize) -> Result<()> {
    if a + b + c != comp.size() {
        return Err(usage(format!(
            "a + b + c = {} but the composition {comp} has size {}",
            a + b + c,
            comp.size()
        )));
    }
    Ok(())
}

fn warm(cache: Option<&Path>, degrees: std::ops::RangeInclusive<usize>) -> Result<()> {
    if let Some(dir) = cache {
        for n in degrees {
            load_or_build(dir, n).with_context(|| format!("loading degree {n} from {}", dir.display()))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let cache = cli.cache.as_deref();
    match cli.command {
        Command::BuildCache { n_max } => {
            let Some(dir) = cache else {
                return Err(usage("build-cache needs --cache or QTSHUFFLE_CACHE"));
            };
            for n in 0..=n_max {
                let (_, built) = load_or_build(dir, n).with_context(|| format!("degree {n}"))?;
                let action = if built { "built" } else { "loaded" };
                println!("degree {n}: {action} {}", table_path(dir, n).display());
            }
            Ok(true)
        }
        Command::Inner { comp, a, b, c, format } => {
            let comp = parse_comp(&comp)?;
            check_size(&comp, a, b, c)?;
            warm(cache, 0..=comp.size())?;
            let v = lhs_inner(&comp, a, b, c)?;
            match format {
                InnerFormat::Plain => println!("{}", v.render_tq()),
                InnerFormat::Latex => println!("{}", v.render_latex()),
                InnerFormat::Json => println!(
                    "{}",
                    json!({
                        "comp": comp.parts(),
                        "a": a,
                        "b": b,
                        "c": c,
                        "value": v.render(),
                        "display": v.render_tq(),
                    })
                ),
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            n_max,
            jobs,
            format,
            timings,
        } => {
            let suite: Suite = suite.parse().map_err(|e| usage(format!("{e}")))?;
            let format: Format = format.parse().map_err(usage)?;
            if jobs == 0 {
                return Err(usage("--jobs must be at least 1"));
            }
            warm(cache, 0..=n_max)?;
            let report = verify::run(suite, n_max, jobs);
            print!("{}", verify::render(&report, format, timings));
            Ok(report.all_passed())
        }
        Command::Enumerate { comp, a, b, c, list } => {
            let comp = parse_comp(&comp)?;
            check_size(&comp, a, b, c)?;
            let sh = Shuffle::new(a, b, c);
            let family = gamma(&comp, sh);
            let total = family
                .iter()
                .fold(qtshuffle::qt::QtRational::zero(), |acc, pf| acc.add(&pf.weight()));
            println!("count: {}", family.len());
            println!("pi: {}", total.render_tq());
            if list {
                for pf in &family {
                    println!(
                        "{pf}; area={}; dinv={}; path={}",
                        pf.area(),
                        pf.dinv(),
                        pf_to_path(pf, sh)
                    );
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_with_or_without_parens() {
        assert_eq!(parse_comp("3,2").unwrap().parts(), &[3, 2]);
        assert_eq!(parse_comp("(1)").unwrap().parts(), &[1]);
        assert!(parse_comp("3,x").is_err());
        assert!(parse_comp("0,1").is_err());
    }

    #[test]
    fn size_mismatch_is_a_usage_error() {
        let e = check_size(&parse_comp("2").unwrap(), 1, 0, 0).unwrap_err();
        assert!(e.is::<Usage>());
    }
}

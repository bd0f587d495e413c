//! Report emitters. Timings are printed only on request so that reports
//! from different worker counts compare byte for byte.

use std::fmt::Write;
use std::str::FromStr;

use super::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format {s:?}; expected plain, json, csv or latex")),
        }
    }
}

pub fn render(report: &VerificationReport, format: Format, timings: bool) -> String {
    match format {
        Format::Plain => plain(report, timings),
        Format::Json => json(report, timings),
        Format::Csv => csv(report, timings),
        Format::Latex => latex(report, timings),
    }
}

fn summary(report: &VerificationReport) -> String {
    format!(
        "{} (n_max {}): {} cases, {} passed, {} failed",
        report.suite,
        report.n_max,
        report.cases.len(),
        report.passed(),
        report.cases.len() - report.passed()
    )
}

fn plain(report: &VerificationReport, timings: bool) -> String {
    let mut out = String::new();
    for c in &report.cases {
        let status = c.status.label().to_uppercase();
        write!(out, "{status:<5} {} {} {}", c.suite, c.id, c.params).unwrap();
        if timings {
            write!(out, " ({:.3}s)", c.seconds).unwrap();
        }
        out.push('\n');
        if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
            writeln!(out, "      lhs: {l}\n      rhs: {r}").unwrap();
        }
    }
    out.push_str(&summary(report));
    out.push('\n');
    out
}

fn json(report: &VerificationReport, timings: bool) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    if timings {
        for (entry, c) in value["cases"].as_array_mut().expect("array").iter_mut().zip(&report.cases) {
            entry["seconds"] = serde_json::json!(c.seconds);
        }
    }
    let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
    s.push('\n');
    s
}

fn csv(report: &VerificationReport, timings: bool) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "case-id", "params", "status", "seconds"]).expect("in-memory write");
    for c in &report.cases {
        let secs = if timings { format!("{:.6}", c.seconds) } else { String::new() };
        w.write_record([c.suite.name(), &c.id, &c.params, c.status.label(), &secs])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn latex(report: &VerificationReport, timings: bool) -> String {
    let cols = if timings { "lllll" } else { "llll" };
    let mut out = format!("\\begin{{tabular}}{{{cols}}}\n\\hline\nsuite & case & params & status");
    if timings {
        out.push_str(" & seconds");
    }
    out.push_str(" \\\\\n\\hline\n");
    for c in &report.cases {
        write!(
            out,
            "{} & {} & \\texttt{{{}}} & {}",
            c.suite,
            tex_escape(&c.id),
            tex_escape(&c.params),
            c.status.label()
        )
        .unwrap();
        if timings {
            write!(out, " & {:.3}", c.seconds).unwrap();
        }
        out.push_str(" \\\\\n");
        if c.status != Status::Pass {
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let span = if timings { 5 } else { 4 };
                writeln!(
                    out,
                    "\\multicolumn{{{span}}}{{l}}{{\\texttt{{lhs: {}}}}} \\\\\n\\multicolumn{{{span}}}{{l}}{{\\texttt{{rhs: {}}}}} \\\\",
                    tex_escape(l),
                    tex_escape(r)
                )
                .unwrap();
            }
        }
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    writeln!(out, "% {}", summary(report)).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::super::{CaseResult, Suite};
    use super::*;

    fn report() -> VerificationReport {
        VerificationReport {
            suite: Suite::Paths,
            n_max: 2,
            cases: vec![
                CaseResult {
                    suite: Suite::Paths,
                    id: "paths".into(),
                    params: "alpha=(1,1) abc=0,1,1".into(),
                    status: Status::Pass,
                    lhs: None,
                    rhs: None,
                    seconds: 0.5,
                },
                CaseResult {
                    suite: Suite::Paths,
                    id: "paths".into(),
                    params: "alpha=(2) abc=2,0,0".into(),
                    status: Status::Fail,
                    lhs: Some("q|1".into()),
                    rhs: Some("t|1".into()),
                    seconds: 0.25,
                },
            ],
        }
    }

    #[test]
    fn csv_quotes_params() {
        let s = render(&report(), Format::Csv, false);
        assert_eq!(
            s,
            "suite,case-id,params,status,seconds\npaths,paths,\"alpha=(1,1) abc=0,1,1\",pass,\npaths,paths,\"alpha=(2) abc=2,0,0\",fail,\n"
        );
        assert!(render(&report(), Format::Csv, true).contains(",pass,0.500000\n"));
    }

    #[test]
    fn plain_shows_both_sides_of_failures() {
        let s = render(&report(), Format::Plain, false);
        assert!(s.contains("FAIL  paths paths alpha=(2) abc=2,0,0\n      lhs: q|1\n      rhs: t|1\n"));
        assert!(s.ends_with("paths (n_max 2): 2 cases, 1 passed, 1 failed\n"));
    }

    #[test]
    fn json_omits_sides_of_passes() {
        let v: serde_json::Value = serde_json::from_str(&render(&report(), Format::Json, false)).unwrap();
        assert!(v["cases"][0].get("lhs").is_none());
        assert_eq!(v["cases"][1]["rhs"], "t|1");
        assert!(v["cases"][1].get("seconds").is_none());
        let v: serde_json::Value = serde_json::from_str(&render(&report(), Format::Json, true)).unwrap();
        assert_eq!(v["cases"][0]["seconds"], 0.5);
    }

    #[test]
    fn latex_escapes() {
        let s = render(&report(), Format::Latex, false);
        assert!(s.starts_with("\\begin{tabular}{llll}"));
        assert!(s.contains("\\texttt{lhs: q|1}"));
        assert_eq!("main-theorem".parse::<Format>().ok(), None);
    }
}

//! Check records and their text and JSON renderings.

use std::fmt::Write as _;

use nijenhuis::algebroid::{Residual, Vanishes};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub basis: String,
    pub coefficient: String,
}

/// One evaluated identity. `value` is the literal `"0"` exactly when the
/// identity holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualRecord {
    pub slot: String,
    pub args: Vec<String>,
    pub value: String,
    pub components: Vec<Component>,
}

impl ResidualRecord {
    pub fn from_residual<T: Vanishes>(r: &Residual<T>) -> Self {
        Self::new(&r.slot, r.args.clone(), &r.value)
    }

    pub fn new<T: Vanishes>(slot: &str, args: Vec<String>, value: &T) -> Self {
        let components: Vec<Component> =
            value.components().into_iter().map(|(basis, coefficient)| Component { basis, coefficient }).collect();
        let value = if components.is_empty() {
            "0".to_string()
        } else {
            components.iter().map(|c| format!("({}) {}", c.coefficient, c.basis)).collect::<Vec<_>>().join(" + ")
        };
        Self { slot: slot.to_string(), args, value, components }
    }

    pub fn is_zero(&self) -> bool {
        self.value == "0"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub construction: String,
    pub status: Status,
    pub message: Option<String>,
    pub residuals: Vec<ResidualRecord>,
}

impl Record {
    /// A record whose status follows from its residuals.
    pub fn judged(name: String, construction: String, residuals: Vec<ResidualRecord>) -> Self {
        let status = if residuals.iter().all(ResidualRecord::is_zero) { Status::Pass } else { Status::Fail };
        Self { name, construction, status, message: None, residuals }
    }

    pub fn error(name: String, construction: String, message: String, residuals: Vec<ResidualRecord>) -> Self {
        Self { name, construction, status: Status::Error, message: Some(message), residuals }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub probe_degree: u32,
    pub points: u32,
    pub checks: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(seed: u64, probe_degree: u32, points: u32, checks: Vec<Record>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), error: count(Status::Error) };
        Self { seed, probe_degree, points, checks, summary }
    }

    /// 0 when every check passes, 1 when some check fails, 2 when some
    /// check could not be carried out.
    pub fn exit_code(&self) -> i32 {
        exit_code_for(self.checks.iter().map(|c| c.status))
    }
}

pub fn exit_code_for(statuses: impl IntoIterator<Item = Status>) -> i32 {
    match statuses.into_iter().max() {
        None | Some(Status::Pass) => 0,
        Some(Status::Fail) => 1,
        Some(Status::Error) => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Pretty JSON with object keys in sorted order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report values serialize");
    let mut out = serde_json::to_string_pretty(&v).expect("JSON values print");
    out.push('\n');
    out
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Text => text(report),
    }
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    let name_w = report.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0).max(5);
    let cons_w = report.checks.iter().map(|c| c.construction.chars().count()).max().unwrap_or(0).max(12);
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
    let _ = writeln!(out, "{}  {}  status  residuals", pad("check", name_w), pad("construction", cons_w));
    for c in &report.checks {
        let nonzero = c.residuals.iter().filter(|r| !r.is_zero()).count();
        let _ = writeln!(
            out,
            "{}  {}  {}  {}/{} nonzero",
            pad(&c.name, name_w),
            pad(&c.construction, cons_w),
            pad(c.status.as_str(), 6),
            nonzero,
            c.residuals.len()
        );
        if let Some(m) = &c.message {
            let _ = writeln!(out, "    {m}");
        }
        for r in c.residuals.iter().filter(|r| !r.is_zero()) {
            let args = if r.args.is_empty() { String::new() } else { format!("({})", r.args.join(", ")) };
            let _ = writeln!(out, "    {}{args} = {}", r.slot, r.value);
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "\n{} passed, {} failed, {} errors (seed {}, probe degree {})",
        s.pass, s.fail, s.error, report.seed, report.probe_degree
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nijenhuis::calculus::{Chart, VectorField};

    #[test]
    fn zero_residual_renders_as_literal_zero() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let r = ResidualRecord::new("T", vec![], &VectorField::zero(&c));
        assert!(r.is_zero());
        let r = ResidualRecord::new("T", vec![], &VectorField::basis(&c, 0));
        assert_eq!(r.value, "(1) ∂x");
        assert_eq!(r.components, vec![Component { basis: "∂x".into(), coefficient: "1".into() }]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for([]), 0);
        assert_eq!(exit_code_for([Status::Pass, Status::Fail]), 1);
        assert_eq!(exit_code_for([Status::Error, Status::Fail]), 2);
    }

    #[test]
    fn json_keys_are_sorted() {
        let report = Report::new(0, 2, 5, vec![]);
        let json = to_json(&report);
        let keys: Vec<usize> = ["checks", "points", "probe_degree", "seed", "summary"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}

//! Verification reports and their JSON, CSV and text renderings.

use serde::Serialize;
use serde_json::{Map, Value};

/// At most this many witnesses are kept per report; `failure_count` keeps the
/// full tally.
pub const WITNESS_CAP: usize = 20;

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: String,
    pub path: Option<String>,
    pub mark: Option<u32>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Map<String, Value>,
    pub cases: u64,
    /// Exact counts as decimal strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<Vec<String>>,
    pub failures: Vec<Witness>,
    pub failure_count: u64,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// The report with `elapsed_ms` zeroed, for run-to-run comparisons.
    pub fn untimed(&self) -> Self {
        VerificationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Renders reports; JSON output is a single object for one report and an
/// array otherwise.
pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = if let [single] = reports {
                serde_json::to_string_pretty(single)
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialize");
            out.push('\n');
            out
        }
        Format::Csv => render_csv(reports),
        Format::Text => render_text(reports),
    }
}

fn status(report: &VerificationReport) -> &'static str {
    if report.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn flat_params(params: &Map<String, Value>) -> String {
    params
        .iter()
        .map(|(key, value)| match value {
            Value::String(s) => format!("{key}={s}"),
            other => format!("{key}={other}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    record: &'static str,
    suite: &'a str,
    params: String,
    cases: Option<u64>,
    bins: Option<String>,
    failure_count: Option<u64>,
    status: Option<&'static str>,
    elapsed_ms: Option<u64>,
    case: Option<&'a str>,
    path: Option<&'a str>,
    mark: Option<u32>,
    expected: Option<&'a str>,
    actual: Option<&'a str>,
}

/// One `report` row per report followed by one `witness` row per kept witness.
fn render_csv(reports: &[VerificationReport]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for report in reports {
        let params = flat_params(&report.params);
        writer
            .serialize(CsvRow {
                record: "report",
                suite: &report.suite,
                params: params.clone(),
                cases: Some(report.cases),
                bins: report.bins.as_ref().map(|b| b.join(";")),
                failure_count: Some(report.failure_count),
                status: Some(status(report)),
                elapsed_ms: Some(report.elapsed_ms),
                case: None,
                path: None,
                mark: None,
                expected: None,
                actual: None,
            })
            .expect("csv row");
        for w in &report.failures {
            writer
                .serialize(CsvRow {
                    record: "witness",
                    suite: &report.suite,
                    params: params.clone(),
                    cases: None,
                    bins: None,
                    failure_count: None,
                    status: None,
                    elapsed_ms: None,
                    case: Some(&w.case),
                    path: w.path.as_deref(),
                    mark: w.mark,
                    expected: Some(&w.expected),
                    actual: Some(&w.actual),
                })
                .expect("csv row");
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out += &format!(
            "{} {} cases={} failures={} elapsed_ms={} params[{}]",
            r.suite,
            status(r),
            r.cases,
            r.failure_count,
            r.elapsed_ms,
            flat_params(&r.params)
        );
        if let Some(bins) = &r.bins {
            out += &format!(" bins[{}]", bins.join(" "));
        }
        out.push('\n');
        for w in &r.failures {
            out += &format!("  witness case={}", w.case);
            if let Some(path) = &w.path {
                out += &format!(" path={path}");
            }
            if let Some(mark) = w.mark {
                out += &format!(" mark={mark}");
            }
            out += &format!(" expected={} actual={}\n", w.expected, w.actual);
        }
        if r.failure_count > r.failures.len() as u64 {
            out += &format!(
                "  ... {} more failures not shown\n",
                r.failure_count - r.failures.len() as u64
            );
        }
    }
    out
}

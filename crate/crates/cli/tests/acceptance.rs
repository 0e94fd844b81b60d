//! One PASS/FAIL line per acceptance criterion. All tolerances are exact;
//! runtime limits are checked as stated. Exits nonzero if any line fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kdiv::{run_suite, GridSpec, RunConfig, Suite, VerificationReport};
use kdiv_core::geometry::{kdiv_verdicts, statistic_x};
use kdiv_core::ne::{enumerate_ne_family, high_points, high_points_by_occurrence};
use kdiv_core::{FamilyParams, MarkedPath, NeParams, Side};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{} ms, limit {} ms", elapsed.as_millis(), limit.as_millis()))
}

fn summary(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}: {} cases, {} failures, params {}",
        r.suite,
        r.cases,
        r.failure_count,
        serde_json::Value::Object(r.params.clone())
    );
    if let Some(w) = r.failures.first() {
        s += &format!(
            "; first witness {} path={} expected={} actual={}",
            w.case,
            w.path.as_deref().unwrap_or("-"),
            w.expected,
            w.actual
        );
    }
    s
}

fn default_run(suite: Suite, cfg: &RunConfig) -> (VerificationReport, Duration) {
    let start = Instant::now();
    let report = run_suite(suite, &GridSpec::default(), cfg)
        .expect("default grid runs")
        .remove(0);
    (report, start.elapsed())
}

fn catalan() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_kdiv"))
        .args(["seq", "--k", "2", "--j", "1", "--n-max", "7"])
        .output()
        .expect("binary runs");
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let exact = out.status.success() && text == "1\n2\n5\n14\n42\n132\n429\n";
    outcome(exact && fast, format!("output {:?}; {time}", text.trim().replace('\n', ",")))
}

fn figure() -> Outcome {
    let start = Instant::now();
    let params = FamilyParams::new(5, 3, 1).unwrap();
    let marked = MarkedPath::new("UDDUDUUUDDDDDUD".parse().unwrap(), 1, &params).unwrap();
    let x = statistic_x(&marked, &params).unwrap();
    let above: Vec<usize> = kdiv_verdicts(&marked, &params)
        .unwrap()
        .into_iter()
        .filter(|&(_, side)| side == Side::Above)
        .map(|(label, _)| label)
        .collect();
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        x == 3 && above == [6, 9, 12] && fast,
        format!("X = {x}, above at {above:?}; {time}"),
    )
}

fn suite_line(report: &VerificationReport, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let (fast, time) = match limit {
        Some(limit) => within(elapsed, limit),
        None => (true, format!("{} ms", elapsed.as_millis())),
    };
    outcome(report.passed() && fast, format!("{}; {time}", summary(report)))
}

fn both(first: Outcome, second: Outcome) -> Outcome {
    outcome(first.pass && second.pass, format!("{} | {}", first.detail, second.detail))
}

/// Histogram of X over `NE(1,2,2) × [2]` under a given high-point reading.
fn ne_histogram(
    reading: fn(&kdiv_core::NePath, &NeParams) -> kdiv_core::Result<Vec<usize>>,
) -> Vec<u64> {
    let params = NeParams::new(1, 2, 2).unwrap();
    let mut bins = vec![0; params.len() as usize];
    for path in enumerate_ne_family(&params).unwrap() {
        for x in reading(&path, &params).unwrap() {
            bins[x - 1] += 1;
        }
    }
    bins
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut first_pass = Vec::new();
    let mut lines: Vec<(u32, &str, Outcome)> = vec![
        (1, "Catalan reproduction", catalan()),
        (2, "figure reproduction", figure()),
    ];

    let mut run = |suite: Suite| {
        let (report, elapsed) = default_run(suite, &cfg);
        first_pass.push(report.clone());
        (report, elapsed)
    };
    let (uniform, t) = run(Suite::Uniform);
    lines.push((3, "uniformity of X", suite_line(&uniform, t, Some(Duration::from_secs(300)))));
    let (lemma, t) = run(Suite::Lemma);
    lines.push((4, "no k-divisible point on a baseline", suite_line(&lemma, t, None)));
    let (corollary, tc) = run(Suite::Corollary);
    let (main_theorem, tm) = run(Suite::Main);
    lines.push((
        5,
        "corollary and shifted counts",
        both(suite_line(&corollary, tc, None), suite_line(&main_theorem, tm, None)),
    ));
    let (orbits, to) = run(Suite::Orbits);
    let (labels, tl) = run(Suite::Labels);
    lines.push((
        6,
        "orbits and labeling",
        both(suite_line(&orbits, to, None), suite_line(&labels, tl, None)),
    ));
    let (bijection, t) = run(Suite::Bijection);
    lines.push((7, "bijection roundtrips", suite_line(&bijection, t, None)));
    let (integrality, t) = run(Suite::Integrality);
    lines.push((8, "integrality identities", suite_line(&integrality, t, Some(Duration::from_secs(10)))));
    let (general_a, t) = run(Suite::GeneralA);
    lines.push((9, "generalization A counts", suite_line(&general_a, t, None)));
    let (general_b, t) = run(Suite::GeneralB);
    let distinct = ne_histogram(high_points);
    let by_occurrence = ne_histogram(high_points_by_occurrence);
    let falsified = distinct == [2, 2, 2, 2] && by_occurrence == [1, 2, 2, 3];
    lines.push((
        10,
        "generalization B",
        both(
            suite_line(&general_b, t, Some(Duration::from_secs(60))),
            outcome(
                falsified,
                format!("NE(1,2,2) histogram {distinct:?}, same-height reading {by_occurrence:?}"),
            ),
        ),
    ));

    let order = [
        Suite::Uniform,
        Suite::Lemma,
        Suite::Corollary,
        Suite::Main,
        Suite::Orbits,
        Suite::Labels,
        Suite::Bijection,
        Suite::Integrality,
        Suite::GeneralA,
        Suite::GeneralB,
    ];
    let serial = RunConfig {
        parallel: false,
        ..cfg
    };
    let mut differing = Vec::new();
    for (suite, first) in order.iter().zip(&first_pass) {
        let again = default_run(*suite, &cfg).0;
        let alone = default_run(*suite, &serial).0;
        if again.untimed() != first.untimed() || alone.untimed() != first.untimed() {
            differing.push(suite.name());
        }
    }
    lines.push((
        11,
        "determinism",
        outcome(
            differing.is_empty(),
            format!("{} suites rerun in parallel and serially; differing: {differing:?}", order.len()),
        ),
    ));

    let mut all = true;
    for (id, name, result) in &lines {
        all &= result.pass;
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name} (exact): {}", result.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! The verification suites.
//!
//! A family suite runs either on one family (all of `--n --k --j` single
//! values) or on a grid of families. Grid runs skip families above the
//! enumeration budget and record how many were skipped; a single family
//! above the budget is a usage error.

use std::collections::BTreeSet;
use std::time::Instant;

use kdiv_core::counting::{
    binomial, count_formula, count_general_a, count_ne, unified_formula,
};
use kdiv_core::geometry::{baseline_for, kdiv_verdicts, statistic_x, OriginLine};
use kdiv_core::ne::{
    enumerate_ne_family, enumerate_short_paths, is_weakly_above, ne_final_bijection,
    ne_statistic_x, weakly_above_count,
};
use kdiv_core::path::enumerate_range;
use kdiv_core::rotation::{
    bijection_inverse, bijection_to, is_canonical, label_class, orbit, primitive_decomposition,
    rotate_left_k,
};
use kdiv_core::{
    BigCount, DiagonalPath, FamilyParams, GeneralParams, MarkedNePath, MarkedPath, NeParams,
    NePath, Side,
};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::grid::{GridSpec, Span};
use crate::report::{VerificationReport, Witness, WITNESS_CAP};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Paths per unit of parallel work.
const CHUNK: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Uniform,
    Lemma,
    Orbits,
    Labels,
    Bijection,
    Corollary,
    Main,
    GeneralA,
    GeneralB,
    Integrality,
    All,
}

impl Suite {
    /// Every suite that `all` runs, in order.
    pub const EACH: [Suite; 10] = [
        Suite::Uniform,
        Suite::Lemma,
        Suite::Orbits,
        Suite::Labels,
        Suite::Bijection,
        Suite::Corollary,
        Suite::Main,
        Suite::GeneralA,
        Suite::GeneralB,
        Suite::Integrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Uniform => "uniform",
            Suite::Lemma => "lemma",
            Suite::Orbits => "orbits",
            Suite::Labels => "labels",
            Suite::Bijection => "bijection",
            Suite::Corollary => "corollary",
            Suite::Main => "main",
            Suite::GeneralA => "general-a",
            Suite::GeneralB => "general-b",
            Suite::Integrality => "integrality",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest family size enumerated.
    pub budget: u128,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("{family} has {size} paths, above the enumeration budget {budget}; raise --budget to run it")]
    OverBudget {
        family: String,
        size: String,
        budget: u128,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kdiv_core::Error),
}

type Result<T, E = SuiteError> = std::result::Result<T, E>;

/// Runs `suite` (every suite for [`Suite::All`]) and returns one report per
/// suite run.
pub fn run_suite(suite: Suite, grid: &GridSpec, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    if suite != Suite::All {
        return Ok(vec![run_one(suite, grid, cfg)?]);
    }
    if *grid != GridSpec::default() {
        return Err(SuiteError::Usage(
            "suite all runs the default grids and takes no range flags".into(),
        ));
    }
    Suite::EACH
        .iter()
        .map(|&s| run_one(s, grid, cfg))
        .collect()
}

fn run_one(suite: Suite, grid: &GridSpec, cfg: &RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let family_grid = [Span::new(1, 16), Span::new(2, 4), Span::new(1, 4)];
    let one_mark = [Span::new(1, 16), Span::new(2, 4), Span::single(1)];
    let mut report = match suite {
        Suite::Uniform => family_suite(suite, grid, cfg, family_grid, uniform),
        Suite::Lemma => family_suite(suite, grid, cfg, family_grid, lemma),
        Suite::Orbits => family_suite(suite, grid, cfg, family_grid, orbits),
        Suite::Labels => family_suite(suite, grid, cfg, family_grid, labels),
        Suite::Bijection => family_suite(
            suite,
            grid,
            cfg,
            [Span::new(1, 6), Span::new(2, 3), Span::single(1)],
            bijection,
        ),
        Suite::Corollary => family_suite(suite, grid, cfg, one_mark, corollary),
        Suite::Main => family_suite(suite, grid, cfg, family_grid, main_theorem),
        Suite::GeneralA => general_a_suite(grid, cfg),
        Suite::GeneralB => general_b_suite(grid, cfg),
        Suite::Integrality => integrality_suite(grid),
        Suite::All => unreachable!("expanded by run_suite"),
    }?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Counts, histogram and capped witnesses of one run.
#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    bins: Vec<u64>,
    failures: Vec<Witness>,
    failure_count: u64,
}

impl Tally {
    fn with_bins(len: usize) -> Self {
        Tally {
            bins: vec![0; len],
            ..Tally::default()
        }
    }

    fn fail(&mut self, witness: Witness) {
        self.failure_count += 1;
        if self.failures.len() < WITNESS_CAP {
            self.failures.push(witness);
        }
    }

    /// Adds `other`'s counts, keeping witnesses in order.
    fn absorb_counts(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        let room = WITNESS_CAP - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
    }

    fn bin_strings(&self) -> Vec<String> {
        self.bins.iter().map(u64::to_string).collect()
    }
}

/// Accumulators that can be merged in job order.
trait Absorb: Send {
    fn absorb(&mut self, other: Self);
}

impl Absorb for Tally {
    fn absorb(&mut self, other: Tally) {
        for (mine, theirs) in self.bins.iter_mut().zip(&other.bins) {
            *mine += theirs;
        }
        self.absorb_counts(other);
    }
}

impl Absorb for (Tally, Vec<NePath>) {
    fn absorb(&mut self, other: Self) {
        self.0.absorb(other.0);
        self.1.extend(other.1);
    }
}

/// Runs `work` on every job, in parallel if enabled, and merges the results
/// in job order so the outcome does not depend on scheduling.
fn fold<J, A>(
    jobs: &[J],
    cfg: &RunConfig,
    init: impl Fn() -> A + Sync,
    work: impl Fn(&mut A, &J) -> Result<()> + Sync,
) -> Result<A>
where
    J: Sync,
    A: Absorb,
{
    let run = |job: &J| {
        let mut acc = init();
        work(&mut acc, job).map(|()| acc)
    };
    let parts: Vec<Result<A>> = if cfg.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    let mut total = init();
    for part in parts {
        total.absorb(part?);
    }
    Ok(total)
}

fn rank_chunks(size: u128) -> Vec<(u128, u128)> {
    let mut chunks = Vec::new();
    let mut start = 0;
    while start < size {
        let count = CHUNK.min(size - start);
        chunks.push((start, count));
        start += count;
    }
    chunks
}

/// Folds over every member of `params`, split by rank.
fn fold_family(
    params: &FamilyParams,
    cfg: &RunConfig,
    bins: usize,
    visit: impl Fn(&mut Tally, DiagonalPath) -> Result<()> + Sync,
) -> Result<Tally> {
    let size = params.family_size_u128().ok_or_else(|| over_budget(params, cfg))?;
    fold(
        &rank_chunks(size),
        cfg,
        || Tally::with_bins(bins),
        |tally, &(start, count)| {
            for path in enumerate_range(params, start, count)? {
                visit(tally, path)?;
            }
            Ok(())
        },
    )
}

fn over_budget(params: &FamilyParams, cfg: &RunConfig) -> SuiteError {
    SuiteError::OverBudget {
        family: params.to_string(),
        size: params.family_size().to_string(),
        budget: cfg.budget,
    }
}

fn within_budget(size: &BigCount, cfg: &RunConfig) -> bool {
    u128::try_from(size).is_ok_and(|s| s <= cfg.budget)
}

fn witness(
    case: impl Into<String>,
    path: Option<&dyn ToString>,
    mark: Option<u32>,
    expected: impl ToString,
    actual: impl ToString,
) -> Witness {
    Witness {
        case: case.into(),
        path: path.map(ToString::to_string),
        mark,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn x_of(path: DiagonalPath, mark: u32, params: &FamilyParams) -> Result<u32> {
    Ok(statistic_x(&MarkedPath::new(path, mark, params)?, params)?)
}

fn span_value(span: Span) -> Value {
    if span.is_single() {
        Value::from(span.lo)
    } else if span.hi == u32::MAX {
        Value::from(format!("{}..", span.lo))
    } else {
        Value::from(span.to_string())
    }
}

fn new_report(suite: Suite, params: Map<String, Value>, tally: Tally, bins: Option<Vec<String>>) -> VerificationReport {
    VerificationReport {
        suite: suite.name().to_string(),
        params,
        cases: tally.cases,
        bins,
        failures: tally.failures,
        failure_count: tally.failure_count,
        elapsed_ms: 0,
    }
}

fn reject_flags(suite: Suite, flags: &[(&str, Option<Span>)]) -> Result<()> {
    match flags.iter().find(|(_, span)| span.is_some()) {
        Some((name, _)) => Err(SuiteError::Usage(format!(
            "--{name} does not apply to suite {}",
            suite.name()
        ))),
        None => Ok(()),
    }
}

/// Result of one family: its tally and, for single-family reports, bins.
struct Outcome {
    tally: Tally,
    bins: Option<Vec<String>>,
}

impl Outcome {
    fn with_bins(tally: Tally) -> Self {
        let bins = Some(tally.bin_strings());
        Outcome { tally, bins }
    }

    fn plain(tally: Tally) -> Self {
        Outcome { tally, bins: None }
    }
}

type FamilyCheck = fn(&FamilyParams, &RunConfig) -> Result<Outcome>;

/// Shared driver for suites over `P(n,k,j)` families. `defaults` are the
/// `[n, k, j]` ranges used for flags that were not given.
fn family_suite(
    suite: Suite,
    grid: &GridSpec,
    cfg: &RunConfig,
    defaults: [Span; 3],
    check: FamilyCheck,
) -> Result<VerificationReport> {
    reject_flags(suite, &[("a", grid.a), ("b", grid.b), ("c", grid.c), ("d", grid.d)])?;
    let n = grid.n.unwrap_or(defaults[0]);
    let k = grid.k.unwrap_or(defaults[1]);
    let j = grid.j.unwrap_or(defaults[2]);
    if defaults[2] == Span::single(1) && j != Span::single(1) {
        return Err(SuiteError::Usage(format!("suite {} needs j = 1", suite.name())));
    }

    if n.is_single() && k.is_single() && j.is_single() {
        let params = FamilyParams::new(n.lo, k.lo, j.lo)?;
        if !within_budget(&params.family_size(), cfg) {
            return Err(over_budget(&params, cfg));
        }
        let outcome = check(&params, cfg)?;
        let mut map = Map::new();
        map.insert("n".into(), n.lo.into());
        map.insert("k".into(), k.lo.into());
        map.insert("j".into(), j.lo.into());
        return Ok(new_report(suite, map, outcome.tally, outcome.bins));
    }

    let mut total = Tally::default();
    let (mut families, mut skipped) = (0u64, 0u64);
    for k in k.iter() {
        for n in n.iter() {
            for j in j.lo..=j.hi.min((k - 1).saturating_mul(n)) {
                let Ok(params) = FamilyParams::new(n, k, j) else {
                    continue;
                };
                if !within_budget(&params.family_size(), cfg) {
                    skipped += 1;
                    continue;
                }
                total.absorb_counts(check(&params, cfg)?.tally);
                families += 1;
            }
        }
    }
    if families == 0 && skipped == 0 {
        return Err(SuiteError::Usage(format!(
            "the grid n={n}, k={k}, j={j} contains no valid family"
        )));
    }
    let mut map = Map::new();
    map.insert("n".into(), span_value(n));
    map.insert("k".into(), span_value(k));
    map.insert("j".into(), span_value(j));
    map.insert("families".into(), families.into());
    map.insert("skipped".into(), skipped.into());
    map.insert("budget".into(), cfg.budget.to_string().into());
    Ok(new_report(suite, map, total, None))
}

/// The X-histogram over `P(n,k,j) × [j]` is flat at `j·C(kn, n+j)/n`.
fn uniform(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let j = params.j();
    let mut tally = fold_family(params, cfg, params.n() as usize, |t, path| {
        for mark in 1..=j {
            t.bins[x_of(path, mark, params)? as usize] += 1;
            t.cases += 1;
        }
        Ok(())
    })?;
    let expected = count_formula(params)?;
    for (x, value) in tally.bins.clone().into_iter().enumerate() {
        if BigCount::from(value) != expected {
            tally.fail(witness(format!("{params} bin {x}"), None, None, &expected, value));
        }
    }
    Ok(Outcome::with_bins(tally))
}

/// No interior k-divisible point lies on the baseline; for `j = 1` both
/// endpoints do.
fn lemma(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let (j, kn) = (params.j(), params.len() as i64);
    let single = baseline_for(params, 1)?;
    let tally = fold_family(params, cfg, 0, |t, path| {
        for mark in 1..=j {
            t.cases += 1;
            let marked = MarkedPath::new(path, mark, params)?;
            for (x, side) in kdiv_verdicts(&marked, params)? {
                if side == Side::On {
                    t.fail(witness(
                        format!("{params} label {x}"),
                        Some(&path),
                        Some(mark),
                        "above or below",
                        "on",
                    ));
                }
            }
        }
        if j == 1 {
            for (x, y) in [(0, 0), (kn, path.end_height())] {
                let side = single.side(x, y);
                if side != Side::On {
                    t.fail(witness(
                        format!("{params} endpoint {x}"),
                        Some(&path),
                        Some(1),
                        "on",
                        format!("{side:?}").to_lowercase(),
                    ));
                }
            }
        }
        Ok(())
    })?;
    Ok(Outcome::plain(tally))
}

/// Every orbit has size `n/r` with `r | gcd(n, j)`, is closed under rotation,
/// and the orbits partition the family. Bins count orbits by size `1..=n`.
fn orbits(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let (n, j) = (params.n(), params.j());
    let mut tally = fold_family(params, cfg, n as usize, |t, path| {
        t.cases += 1;
        if !is_canonical(&path, params) {
            return Ok(());
        }
        let class = orbit(&path, params)?;
        let r = primitive_decomposition(&path, params)?.power;
        let size = class.len();
        t.bins[size - 1] += 1;
        let case = format!("{params} orbit");
        if size as u32 * r != n || num_integer::gcd(n, j) % r != 0 {
            t.fail(witness(
                &case,
                Some(&path),
                None,
                "size n/r with r dividing gcd(n, j)",
                format!("size {size}, r = {r}"),
            ));
        }
        if *class.representative() != path {
            t.fail(witness(&case, Some(&path), None, path, class.representative()));
        }
        let members = class.members();
        for (t_index, member) in members.iter().enumerate() {
            let next = members[(t_index + 1) % size];
            let rotated = rotate_left_k(member, params)?;
            if rotated != next {
                t.fail(witness(&case, Some(member), None, next, rotated));
            }
        }
        let distinct: BTreeSet<_> = members.iter().collect();
        if distinct.len() != size {
            t.fail(witness(&case, Some(&path), None, format!("{size} distinct members"), distinct.len()));
        }
        Ok(())
    })?;
    let covered: u64 = tally
        .bins
        .iter()
        .enumerate()
        .map(|(i, count)| (i as u64 + 1) * count)
        .sum();
    let size = params.family_size();
    if BigCount::from(covered) != size {
        tally.fail(witness(format!("{params} orbit sizes"), None, None, size, covered));
    }
    Ok(Outcome::with_bins(tally))
}

/// Each label appears `j/r` times per class and every object's X equals its
/// label. Bins count objects by label.
fn labels(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let (n, j) = (params.n(), params.j());
    let tally = fold_family(params, cfg, n as usize, |t, path| {
        if !is_canonical(&path, params) {
            return Ok(());
        }
        let labeled = label_class(&orbit(&path, params)?);
        let share = j / labeled.class().power();
        for (label, count) in labeled.label_counts().into_iter().enumerate() {
            if count != share {
                t.fail(witness(
                    format!("{params} label {label} count"),
                    Some(&path),
                    None,
                    share,
                    count,
                ));
            }
        }
        for object in labeled.objects() {
            t.cases += 1;
            t.bins[object.label as usize] += 1;
            let member = *labeled.path_of(object);
            let x = x_of(member, object.mark, params)?;
            if x != object.label {
                t.fail(witness(
                    format!("{params} label"),
                    Some(&member),
                    Some(object.mark),
                    object.label,
                    x,
                ));
            }
        }
        Ok(())
    })?;
    Ok(Outcome::with_bins(tally))
}

/// For `j = 1`: the inverse lands on an `X = n-1` path and maps back, and
/// from every `X = n-1` path each target `i` is reached and inverted.
fn bijection(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let top = params.n() - 1;
    let tally = fold_family(params, cfg, 0, |t, q| {
        t.cases += 1;
        let case = format!("{params} roundtrip");
        let x = x_of(q, 1, params)?;
        let source = bijection_inverse(&q, params)?;
        let source_x = x_of(source, 1, params)?;
        if source_x != top {
            t.fail(witness(&case, Some(&q), Some(1), format!("inverse has X = {top}"), format!("X = {source_x}")));
        } else {
            let back = bijection_to(&source, params, x)?;
            if back != q {
                t.fail(witness(&case, Some(&q), Some(1), q, back));
            }
        }
        if x == top {
            for target in 0..params.n() {
                let image = bijection_to(&q, params, target)?;
                let image_x = x_of(image, 1, params)?;
                if image_x != target {
                    t.fail(witness(&case, Some(&q), Some(1), format!("X = {target}"), format!("X = {image_x}")));
                }
                let restored = bijection_inverse(&image, params)?;
                if restored != q {
                    t.fail(witness(&case, Some(&image), Some(1), q, restored));
                }
            }
        }
        Ok(())
    })?;
    Ok(Outcome::plain(tally))
}

/// For `j = 1`, paths with every interior k-divisible point above the
/// baseline number `(1/n)·C(kn, n+1)`. The single bin is that count.
fn corollary(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let top = params.n() - 1;
    let mut tally = fold_family(params, cfg, 1, |t, path| {
        t.cases += 1;
        if x_of(path, 1, params)? == top {
            t.bins[0] += 1;
        }
        Ok(())
    })?;
    let expected = count_formula(params)?;
    if BigCount::from(tally.bins[0]) != expected {
        tally.fail(witness(format!("{params} count"), None, None, &expected, tally.bins[0]));
    }
    Ok(Outcome::with_bins(tally))
}

/// Shifted starts `(0, -2i)` against the line through the origin: the counts
/// for `i < j` sum to the formula, and shifts `j` and `j+1` count nothing.
/// Bin `i` is the count at shift `i`.
fn main_theorem(params: &FamilyParams, cfg: &RunConfig) -> Result<Outcome> {
    let (n, j) = (params.n(), params.j());
    let line = OriginLine::for_family(params);
    let mut tally = fold_family(params, cfg, j as usize + 2, |t, path| {
        t.cases += 1;
        for shift in 0..j + 2 {
            let above = line.all_strictly_above(&path, shift);
            if above {
                t.bins[shift as usize] += 1;
            }
            if shift < j {
                let via_mark = x_of(path, shift + 1, params)? == n - 1;
                if via_mark != above {
                    t.fail(witness(
                        format!("{params} shift {shift} framing"),
                        Some(&path),
                        Some(shift + 1),
                        via_mark,
                        above,
                    ));
                }
            } else if above {
                t.fail(witness(
                    format!("{params} shift {shift}"),
                    Some(&path),
                    None,
                    "not counted",
                    "all interior points strictly above",
                ));
            }
        }
        Ok(())
    })?;
    let expected = count_formula(params)?;
    let sum: u64 = tally.bins[..j as usize].iter().sum();
    if BigCount::from(sum) != expected {
        tally.fail(witness(format!("{params} shifts below j"), None, None, &expected, sum));
    }
    Ok(Outcome::with_bins(tally))
}

/// Paths of `an` steps with `cn + d` up, shifts `0..d`, `a`-divisible
/// interior labels; the total must be `(d/n)·C(an, cn+d)`.
fn general_a_suite(grid: &GridSpec, cfg: &RunConfig) -> Result<VerificationReport> {
    let suite = Suite::GeneralA;
    reject_flags(suite, &[("k", grid.k), ("j", grid.j), ("b", grid.b)])?;
    let a = grid.a.unwrap_or(Span::new(2, 4));
    let c = grid.c.unwrap_or(Span::new(1, 3));
    let d = grid.d.unwrap_or(Span::new(1, 3));
    let n = grid.n.unwrap_or(Span::new(1, 16));

    let run = |a: u32, c: u32, d: u32, n: u32| -> Result<Outcome> {
        let line = OriginLine::for_general(a, c, n)?;
        // Same step counts as P(n, a, (c-1)n + d): an steps, cn + d up.
        let carrier = FamilyParams::new(n, a, (c - 1) * n + d)?;
        let mut tally = fold_family(&carrier, cfg, d as usize, |t, path| {
            t.cases += 1;
            for shift in 0..d {
                if line.all_strictly_above(&path, shift) {
                    t.bins[shift as usize] += 1;
                }
            }
            Ok(())
        })?;
        let expected = count_general_a(a, c, d, n)?;
        let sum: u64 = tally.bins.iter().sum();
        if BigCount::from(sum) != expected {
            tally.fail(witness(format!("a={a} c={c} d={d} n={n}"), None, None, &expected, sum));
        }
        Ok(Outcome::with_bins(tally))
    };
    let size = |a: u32, c: u32, d: u32, n: u32| {
        binomial(u64::from(a) * u64::from(n), i64::from(c) * i64::from(n) + i64::from(d))
    };
    let valid = |a: u32, c: u32, d: u32, n: u32| {
        a >= 2 && c >= 1 && d >= 1 && n >= 1 && u64::from(c) * u64::from(n) + u64::from(d) <= u64::from(a) * u64::from(n)
    };

    if a.is_single() && c.is_single() && d.is_single() && n.is_single() {
        let (a, c, d, n) = (a.lo, c.lo, d.lo, n.lo);
        if !valid(a, c, d, n) {
            return Err(SuiteError::Usage(format!(
                "need a >= 2, c >= 1, d >= 1, n >= 1 and cn + d <= an; got a={a} c={c} d={d} n={n}"
            )));
        }
        let s = size(a, c, d, n);
        if !within_budget(&s, cfg) {
            return Err(SuiteError::OverBudget {
                family: format!("a={a} c={c} d={d} n={n}"),
                size: s.to_string(),
                budget: cfg.budget,
            });
        }
        let outcome = run(a, c, d, n)?;
        let mut map = Map::new();
        for (key, v) in [("a", a), ("c", c), ("d", d), ("n", n)] {
            map.insert(key.into(), v.into());
        }
        return Ok(new_report(suite, map, outcome.tally, outcome.bins));
    }

    let mut total = Tally::default();
    let (mut families, mut skipped) = (0u64, 0u64);
    for a in a.iter() {
        for c in c.iter() {
            for d in d.iter() {
                for n in n.iter() {
                    if !valid(a, c, d, n) {
                        continue;
                    }
                    if !within_budget(&size(a, c, d, n), cfg) {
                        skipped += 1;
                        continue;
                    }
                    total.absorb_counts(run(a, c, d, n)?.tally);
                    families += 1;
                }
            }
        }
    }
    if families == 0 && skipped == 0 {
        return Err(SuiteError::Usage("the general-a grid contains no valid parameters".into()));
    }
    let mut map = Map::new();
    for (key, span) in [("a", a), ("c", c), ("d", d), ("n", n)] {
        map.insert(key.into(), span_value(span));
    }
    map.insert("families".into(), families.into());
    map.insert("skipped".into(), skipped.into());
    map.insert("budget".into(), cfg.budget.to_string().into());
    Ok(new_report(suite, map, total, None))
}

/// North/east paths: flat high-point histogram over `1..=kn+j`, the final
/// bijection is injective onto the weakly-above paths, and their count is
/// `(j/(kn+j))·C(kn+j, n)`. Bin `x-1` counts objects with `X = x`.
fn general_b(params: &NeParams, cfg: &RunConfig) -> Result<Outcome> {
    let len = params.len() as usize;
    let paths: Vec<NePath> = enumerate_ne_family(params)?.collect();
    let jobs: Vec<&[NePath]> = paths.chunks(CHUNK as usize).collect();
    let (mut tally, mut images) = fold(
        &jobs,
        cfg,
        || (Tally::with_bins(len), Vec::new()),
        |(t, images), chunk| {
            for &path in chunk.iter() {
                for mark in 1..=params.j() {
                    t.cases += 1;
                    let marked = MarkedNePath::new(path, mark, params)?;
                    let x = ne_statistic_x(&marked, params)?;
                    t.bins[x - 1] += 1;
                    if x == len {
                        images.push(ne_final_bijection(&marked, params)?);
                    }
                }
            }
            Ok(())
        },
    )?;
    let expected = count_ne(params.n(), params.k(), params.j())?;
    for (i, value) in tally.bins.clone().into_iter().enumerate() {
        if BigCount::from(value) != expected {
            tally.fail(witness(format!("{params} bin {}", i + 1), None, None, &expected, value));
        }
    }

    images.sort_unstable();
    for pair in images.windows(2).filter(|p| p[0] == p[1]) {
        tally.fail(witness(format!("{params} injectivity"), Some(&pair[0]), None, "one preimage", "several"));
    }
    images.dedup();
    let images: BTreeSet<NePath> = images.into_iter().collect();
    let target: BTreeSet<NePath> = enumerate_short_paths(params)?
        .filter(|p| is_weakly_above(p, params.k()))
        .collect();
    for missing in target.difference(&images) {
        tally.fail(witness(format!("{params} image"), Some(missing), None, "in image", "not in image"));
    }
    for extra in images.difference(&target) {
        tally.fail(witness(format!("{params} image"), Some(extra), None, "weakly above", "not weakly above"));
    }
    let counted = weakly_above_count(params)?;
    if counted != expected {
        tally.fail(witness(format!("{params} weakly-above count"), None, None, &expected, counted));
    }
    Ok(Outcome::with_bins(tally))
}

fn general_b_suite(grid: &GridSpec, cfg: &RunConfig) -> Result<VerificationReport> {
    let suite = Suite::GeneralB;
    reject_flags(suite, &[("a", grid.a), ("b", grid.b), ("c", grid.c), ("d", grid.d)])?;
    // The default grid is every family with kn + j <= 18.
    let default_grid = grid.n.is_none() && grid.k.is_none() && grid.j.is_none();
    let n = grid.n.unwrap_or(Span::new(1, 8));
    let k = grid.k.unwrap_or(Span::new(2, 5));
    let j = grid.j.unwrap_or(Span::new(1, 4));
    let size = |p: &NeParams| binomial(p.len(), i64::from(p.n()));

    if n.is_single() && k.is_single() && j.is_single() {
        let params = NeParams::new(n.lo, k.lo, j.lo)?;
        if !within_budget(&size(&params), cfg) {
            return Err(SuiteError::OverBudget {
                family: params.to_string(),
                size: size(&params).to_string(),
                budget: cfg.budget,
            });
        }
        let outcome = general_b(&params, cfg)?;
        let mut map = Map::new();
        for (key, v) in [("n", n.lo), ("k", k.lo), ("j", j.lo)] {
            map.insert(key.into(), v.into());
        }
        return Ok(new_report(suite, map, outcome.tally, outcome.bins));
    }

    let mut total = Tally::default();
    let (mut families, mut skipped) = (0u64, 0u64);
    for k in k.iter() {
        for n in n.iter() {
            for j in j.iter() {
                let Ok(params) = NeParams::new(n, k, j) else {
                    continue;
                };
                if default_grid && params.len() > 18 {
                    continue;
                }
                if !within_budget(&size(&params), cfg) {
                    skipped += 1;
                    continue;
                }
                total.absorb_counts(general_b(&params, cfg)?.tally);
                families += 1;
            }
        }
    }
    if families == 0 && skipped == 0 {
        return Err(SuiteError::Usage("the general-b grid contains no valid family".into()));
    }
    let mut map = Map::new();
    for (key, span) in [("n", n), ("k", k), ("j", j)] {
        map.insert(key.into(), span_value(span));
    }
    if default_grid {
        map.insert("max_len".into(), 18.into());
    }
    map.insert("families".into(), families.into());
    map.insert("skipped".into(), skipped.into());
    map.insert("budget".into(), cfg.budget.to_string().into());
    Ok(new_report(suite, map, total, None))
}

/// Exact-division sweep of both closed forms. Needs no enumeration, so the
/// budget does not apply.
fn integrality_suite(grid: &GridSpec) -> Result<VerificationReport> {
    let n = grid.n.unwrap_or(Span::new(1, 12));
    let k = grid.k.unwrap_or(Span::new(2, 5));
    let j = grid.j.unwrap_or(Span::new(1, u32::MAX));
    let a = grid.a.unwrap_or(Span::new(2, 5));
    let b = grid.b.unwrap_or(Span::new(0, 3));
    let c = grid.c.unwrap_or(Span::new(1, 3));
    let d = grid.d.unwrap_or(Span::new(1, 4));
    let unified_n = grid.n.unwrap_or(Span::new(1, 10));

    let mut tally = Tally::default();
    for k in k.iter() {
        for n in n.iter() {
            for j in j.lo..=j.hi.min((k.max(1) - 1).saturating_mul(n)) {
                tally.cases += 1;
                if let Err(e) = FamilyParams::new(n, k, j).and_then(|p| count_formula(&p)) {
                    tally.fail(witness(format!("n={n} k={k} j={j}"), None, None, "exact integer", e));
                }
            }
        }
    }
    for a in a.iter() {
        for b in b.iter() {
            for c in c.iter() {
                for d in d.iter() {
                    for n in unified_n.iter() {
                        let Ok(g) = GeneralParams::new(a, b, c, d, n) else {
                            continue;
                        };
                        tally.cases += 1;
                        if let Err(e) = unified_formula(&g) {
                            tally.fail(witness(
                                format!("a={a} b={b} c={c} d={d} n={n}"),
                                None,
                                None,
                                "exact integer",
                                e,
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut unified = Map::new();
    for (key, span) in [("a", a), ("b", b), ("c", c), ("d", d), ("n", unified_n)] {
        unified.insert(key.into(), span_value(span));
    }
    let mut map = Map::new();
    for (key, span) in [("n", n), ("k", k), ("j", j)] {
        map.insert(key.into(), span_value(span));
    }
    map.insert("unified".into(), Value::Object(unified));
    Ok(new_report(Suite::Integrality, map, tally, None))
}

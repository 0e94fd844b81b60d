//! Baselines and exact side tests.
//!
//! Coordinates put the path's initial point at the origin. The baseline for
//! mark `m` of a path in `P(n,k,j)` runs from `(0, 2(m-1))` to
//! `(kn, 2m - (k-2)n)`, so its slope is `-((k-2)n - 2) / kn`. Lines are kept
//! as unreduced integer `rise / run` plus an integer intercept, and a point is
//! classified by the sign of `run·(y - intercept) - rise·x`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::path::{check_mark, DiagonalPath, FamilyParams, MarkedPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    On,
    Below,
}

/// The line `y = intercept + (rise / run)·x`, with `run > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Baseline {
    rise: i64,
    run: i64,
    intercept: i64,
}

impl Baseline {
    pub fn new(rise: i64, run: i64, intercept: i64) -> Result<Self> {
        if run <= 0 {
            return Err(Error::InvalidParams(alloc::format!(
                "baseline run must be positive, got {run}"
            )));
        }
        Ok(Baseline {
            rise,
            run,
            intercept,
        })
    }

    pub fn rise(&self) -> i64 {
        self.rise
    }

    pub fn run(&self) -> i64 {
        self.run
    }

    pub fn intercept(&self) -> i64 {
        self.intercept
    }

    #[inline]
    pub fn side(&self, x: i64, y: i64) -> Side {
        let s = i128::from(self.run) * i128::from(y - self.intercept)
            - i128::from(self.rise) * i128::from(x);
        match s.signum() {
            1 => Side::Above,
            0 => Side::On,
            _ => Side::Below,
        }
    }
}

/// Rise numerator shared by every baseline of `P(n,k,j)`: `-((k-2)n - 2)`.
pub fn family_rise(params: &FamilyParams) -> i64 {
    -((i64::from(params.k()) - 2) * i64::from(params.n()) - 2)
}

pub fn baseline_for(params: &FamilyParams, mark: u32) -> Result<Baseline> {
    check_mark(mark, params)?;
    Baseline::new(
        family_rise(params),
        params.len() as i64,
        2 * (i64::from(mark) - 1),
    )
}

pub fn side_of_baseline(b: &Baseline, x: i64, y: i64) -> Side {
    b.side(x, y)
}

/// Interior point labels divisible by `k`: `k, 2k, …, (n-1)k`.
pub fn interior_kdiv_labels(params: &FamilyParams) -> Vec<usize> {
    let k = params.k() as usize;
    (1..params.n() as usize).map(|i| i * k).collect()
}

/// Side verdict at each interior `k`-divisible point of a marked path.
pub fn kdiv_verdicts(marked: &MarkedPath, params: &FamilyParams) -> Result<Vec<(usize, Side)>> {
    let line = checked_baseline(marked, params)?;
    let path = marked.path();
    Ok(interior_kdiv_labels(params)
        .into_iter()
        .map(|x| (x, line.side(x as i64, path.height_at(x))))
        .collect())
}

fn checked_baseline(marked: &MarkedPath, params: &FamilyParams) -> Result<Baseline> {
    marked.path().require_member(params)?;
    baseline_for(params, marked.mark())
}

/// The statistic X: interior `k`-divisible points strictly above the
/// baseline selected by the mark. Always in `0..n`.
pub fn statistic_x(marked: &MarkedPath, params: &FamilyParams) -> Result<u32> {
    let line = checked_baseline(marked, params)?;
    Ok(count_above(marked.path(), params, &line))
}

#[inline]
pub(crate) fn count_above(path: &DiagonalPath, params: &FamilyParams, line: &Baseline) -> u32 {
    let k = params.k() as usize;
    (1..params.n() as usize)
        .filter(|i| {
            let x = i * k;
            line.side(x as i64, path.height_at(x)) == Side::Above
        })
        .count() as u32
}

/// True iff no interior `k`-divisible point lies on the baseline.
pub fn lemma_no_kdiv_on_baseline(marked: &MarkedPath, params: &FamilyParams) -> Result<bool> {
    Ok(kdiv_verdicts(marked, params)?
        .into_iter()
        .all(|(_, side)| side != Side::On))
}

/// A line through the origin tested against a path shifted down by `2i`.
///
/// This is the "start at `(0, -2i)`" framing: for a family it agrees with
/// [`baseline_for`] at mark `i + 1`. With `stride = a` and rise
/// `-((a-2c)n - 2)` it also covers the `(d/n)·C(an, cn+d)` generalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OriginLine {
    stride: usize,
    interior: usize,
    line: Baseline,
}

impl OriginLine {
    pub fn for_family(params: &FamilyParams) -> Self {
        OriginLine {
            stride: params.k() as usize,
            interior: params.n() as usize - 1,
            line: Baseline {
                rise: family_rise(params),
                run: params.len() as i64,
                intercept: 0,
            },
        }
    }

    /// Paths of `an` steps, `cn + d` up; `a`-divisible interior points.
    pub fn for_general(a: u32, c: u32, n: u32) -> Result<Self> {
        if a < 2 || n == 0 {
            return Err(Error::InvalidParams(alloc::format!(
                "need a >= 2 and n >= 1, got a={a}, n={n}"
            )));
        }
        let (a, c, n) = (i64::from(a), i64::from(c), i64::from(n));
        Ok(OriginLine {
            stride: a as usize,
            interior: n as usize - 1,
            line: Baseline::new(-((a - 2 * c) * n - 2), a * n, 0)?,
        })
    }

    pub fn baseline(&self) -> &Baseline {
        &self.line
    }

    /// Labels `stride, 2·stride, …, interior·stride`.
    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.interior).map(move |i| i * self.stride)
    }

    /// All interior divisible points of `path`, started at `(0, -2·shift)`,
    /// lie strictly above the line.
    pub fn all_strictly_above(&self, path: &DiagonalPath, shift: u32) -> bool {
        let drop = 2 * i64::from(shift);
        self.labels()
            .all(|x| self.line.side(x as i64, path.height_at(x) - drop) == Side::Above)
    }
}

//! Diagonal lattice paths, the families `P(n,k,j)`, and their enumeration.
//!
//! Paths are immutable bit-packed values. Family membership is checked
//! against [`FamilyParams`] rather than encoded in the type, so one path can
//! be tested against several families.
//!
//! Enumeration order is lexicographic with `U < D`; [`rank`] and [`unrank`]
//! are 0-based positions in that order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::counting::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::word::{self, FixedWeightIter};

/// A diagonal step: `Up = (1, 1)`, `Down = (1, -1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::Up),
            'D' => Some(Step::Down),
            _ => None,
        }
    }
}

/// The triple `(n, k, j)` naming the family `P(n,k,j)` of paths with `kn`
/// steps of which `n+j` are up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    n: u32,
    k: u32,
    j: u32,
}

// `len` is the path length; a family is never empty.
#[allow(clippy::len_without_is_empty)]
impl FamilyParams {
    /// Requires `n >= 1`, `k >= 2`, `j >= 1` and `(k-1)n >= j`.
    pub fn new(n: u32, k: u32, j: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if k < 2 {
            return Err(Error::InvalidParams("k must be at least 2".into()));
        }
        if j == 0 {
            return Err(Error::InvalidParams("j must be at least 1".into()));
        }
        if u64::from(k - 1) * u64::from(n) < u64::from(j) {
            return Err(Error::InvalidParams(format!(
                "need (k-1)n >= j, got n={n}, k={k}, j={j}"
            )));
        }
        if u64::from(k) * u64::from(n) > i64::MAX as u64 / 4 {
            return Err(Error::InvalidParams(format!("kn too large: n={n}, k={k}")));
        }
        Ok(FamilyParams { n, k, j })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// Number of steps, `kn`.
    pub fn len(&self) -> u64 {
        u64::from(self.k) * u64::from(self.n)
    }

    pub fn up_steps(&self) -> u64 {
        u64::from(self.n) + u64::from(self.j)
    }

    pub fn down_steps(&self) -> u64 {
        self.len() - self.up_steps()
    }

    /// Height of every member's terminal point, `2(n+j) - kn`.
    pub fn terminal_height(&self) -> i64 {
        2 * self.up_steps() as i64 - self.len() as i64
    }

    /// `C(kn, n+j)`.
    pub fn family_size(&self) -> BigCount {
        binomial(self.len(), self.up_steps() as i64)
    }

    /// `C(kn, n+j)` when members fit in a [`DiagonalPath`].
    pub fn family_size_u128(&self) -> Option<u128> {
        self.storable()
            .then(|| word::binomial_u128(self.len() as usize, self.down_steps() as usize))
    }

    fn storable(&self) -> bool {
        self.len() <= crate::MAX_STEPS as u64
    }

    fn require_storable(&self) -> Result<usize> {
        if self.storable() {
            Ok(self.len() as usize)
        } else {
            Err(Error::PathTooLong(self.len() as usize))
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{})", self.n, self.k, self.j)
    }
}

/// A finite sequence of up/down steps starting at height 0.
///
/// Bit `len-1-t` is set iff step `t` is down, so numeric order of `bits`
/// agrees with lexicographic `U < D` order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalPath {
    len: u8,
    bits: u128,
}

impl DiagonalPath {
    pub fn from_steps<I: IntoIterator<Item = Step>>(steps: I) -> Result<Self> {
        let mut bits = 0u128;
        let mut len = 0usize;
        for step in steps {
            if len == crate::MAX_STEPS {
                return Err(Error::PathTooLong(len + 1));
            }
            bits = (bits << 1) | u128::from(step == Step::Down);
            len += 1;
        }
        Ok(DiagonalPath::from_bits(bits, len))
    }

    pub(crate) fn from_bits(bits: u128, len: usize) -> Self {
        debug_assert!(len <= crate::MAX_STEPS && bits & !word::mask(len) == 0);
        DiagonalPath {
            len: len as u8,
            bits,
        }
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Step `t`, 0-based. Panics if `t >= len`.
    pub fn step(&self, t: usize) -> Step {
        assert!(t < self.len(), "step index {t} out of range");
        if (self.bits >> (self.len() - 1 - t)) & 1 == 1 {
            Step::Down
        } else {
            Step::Up
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        (0..self.len()).map(move |t| self.step(t))
    }

    pub fn down_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn up_count(&self) -> usize {
        self.len() - self.down_count()
    }

    /// Height of point `x` (the point after `x` steps). Panics if `x > len`.
    #[inline]
    pub fn height_at(&self, x: usize) -> i64 {
        assert!(x <= self.len(), "point {x} beyond path end");
        let downs = word::shr(self.bits, self.len() - x).count_ones() as i64;
        x as i64 - 2 * downs
    }

    /// Heights of all `len + 1` points.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut h = 0i64;
        out.push(h);
        for step in self.steps() {
            h += step.delta();
            out.push(h);
        }
        out
    }

    pub fn end_height(&self) -> i64 {
        self.up_count() as i64 - self.down_count() as i64
    }

    /// Moves the first `by` steps to the end.
    pub fn rotate_left(&self, by: usize) -> Self {
        let len = self.len();
        if len == 0 {
            return *self;
        }
        let by = by % len;
        if by == 0 {
            return *self;
        }
        let bits = ((self.bits << by) | (self.bits >> (len - by))) & word::mask(len);
        DiagonalPath::from_bits(bits, len)
    }

    /// Splits into the first `x` steps and the rest. Panics if `x > len`.
    pub fn split_at(&self, x: usize) -> (Self, Self) {
        assert!(x <= self.len(), "split point {x} beyond path end");
        let tail = self.len() - x;
        (
            DiagonalPath::from_bits(word::shr(self.bits, tail), x),
            DiagonalPath::from_bits(self.bits & word::mask(tail), tail),
        )
    }

    pub fn concat(&self, other: &DiagonalPath) -> Result<Self> {
        let len = self.len() + other.len();
        if len > crate::MAX_STEPS {
            return Err(Error::PathTooLong(len));
        }
        Ok(DiagonalPath::from_bits(
            word::shl(self.bits, other.len()) | other.bits,
            len,
        ))
    }

    /// This path repeated `times` times.
    pub fn repeat(&self, times: usize) -> Result<Self> {
        let mut out = DiagonalPath::from_bits(0, 0);
        for _ in 0..times {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    pub fn is_member(&self, params: &FamilyParams) -> bool {
        self.len() as u64 == params.len() && self.up_count() as u64 == params.up_steps()
    }

    pub(crate) fn require_member(&self, params: &FamilyParams) -> Result<()> {
        if self.is_member(params) {
            Ok(())
        } else {
            Err(Error::NotInFamily {
                path: self.to_string(),
                family: params.to_string(),
            })
        }
    }
}

impl fmt::Display for DiagonalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in self.steps() {
            fmt::Write::write_char(f, step.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiagonalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalPath({self})")
    }
}

impl FromStr for DiagonalPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_path(text)
    }
}

/// Parses `U`/`D` text. Empty text and any other character are rejected.
pub fn parse_path(text: &str) -> Result<DiagonalPath> {
    if text.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut steps = Vec::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        match Step::from_char(c) {
            Some(step) => steps.push(step),
            None => {
                return Err(Error::InvalidStep {
                    found: c,
                    position,
                    expected: "'U', 'D'",
                })
            }
        }
    }
    DiagonalPath::from_steps(steps)
}

pub fn render(path: &DiagonalPath) -> String {
    path.to_string()
}

/// True iff the path has `kn` steps and `n+j` upsteps.
pub fn validate_family(path: &DiagonalPath, params: &FamilyParams) -> bool {
    path.is_member(params)
}

pub fn heights(path: &DiagonalPath) -> Vec<i64> {
    path.heights()
}

/// Lexicographic stream of paths of one length and one up-step count.
#[derive(Clone, Debug)]
pub struct PathIter {
    words: FixedWeightIter,
    len: usize,
}

impl Iterator for PathIter {
    type Item = DiagonalPath;

    fn next(&mut self) -> Option<DiagonalPath> {
        self.words
            .next()
            .map(|bits| DiagonalPath::from_bits(bits, self.len))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.words.size_hint()
    }
}

/// Every path with `len` steps and `ups` upsteps, in `U < D` order.
pub fn enumerate_paths(len: usize, ups: usize) -> Result<PathIter> {
    if len > crate::MAX_STEPS {
        return Err(Error::PathTooLong(len));
    }
    if ups > len {
        return Err(Error::InvalidParams(format!(
            "{ups} upsteps do not fit in {len} steps"
        )));
    }
    let downs = len - ups;
    Ok(PathIter {
        words: FixedWeightIter::new(word::mask(downs), word::binomial_u128(len, downs)),
        len,
    })
}

/// Every member of `P(n,k,j)` exactly once, in `U < D` order.
pub fn enumerate_family(params: &FamilyParams) -> Result<PathIter> {
    let len = params.require_storable()?;
    enumerate_paths(len, params.up_steps() as usize)
}

/// The members with ranks `start .. start + count` (clamped to the family).
///
/// Splitting `0..C(kn, n+j)` into ranges partitions the family, which is how
/// the verification suites fan out across workers.
pub fn enumerate_range(params: &FamilyParams, start: u128, count: u128) -> Result<PathIter> {
    let len = params.require_storable()?;
    let size = params.family_size_u128().unwrap_or(0);
    let downs = params.down_steps() as usize;
    if start >= size {
        return Ok(PathIter {
            words: FixedWeightIter::new(0, 0),
            len,
        });
    }
    let count = count.min(size - start);
    Ok(PathIter {
        words: FixedWeightIter::new(word::unrank(start, len, downs), count),
        len,
    })
}

/// 0-based lexicographic index among paths of the same length and up count.
pub fn rank(path: &DiagonalPath) -> u128 {
    word::rank(path.bits)
}

pub fn unrank(r: u128, params: &FamilyParams) -> Result<DiagonalPath> {
    let len = params.require_storable()?;
    let size = params.family_size_u128().unwrap_or(0);
    if r >= size {
        return Err(Error::RankOutOfRange { rank: r, size });
    }
    Ok(DiagonalPath::from_bits(
        word::unrank(r, len, params.down_steps() as usize),
        len,
    ))
}

/// A family path paired with a mark `m ∈ 1..=j` selecting its baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPath {
    path: DiagonalPath,
    mark: u32,
}

impl MarkedPath {
    pub fn new(path: DiagonalPath, mark: u32, params: &FamilyParams) -> Result<Self> {
        path.require_member(params)?;
        check_mark(mark, params)?;
        Ok(MarkedPath { path, mark })
    }

    pub fn path(&self) -> &DiagonalPath {
        &self.path
    }

    pub fn mark(&self) -> u32 {
        self.mark
    }
}

pub(crate) fn check_mark(mark: u32, params: &FamilyParams) -> Result<()> {
    if (1..=params.j()).contains(&mark) {
        Ok(())
    } else {
        Err(Error::MarkOutOfRange {
            mark,
            max: params.j(),
        })
    }
}

//! North/east paths measured against the line `y = (k-1)x`.
//!
//! A member of the family has `n` east and `(k-1)n + j` north steps, so its
//! terminal point sits at height `j` above the line. Its `j` high points are
//! the leftmost points at each of the `j` largest distinct heights; marking
//! one and reading off its point label gives a statistic uniform on
//! `1..=kn+j`. Marked paths whose mark sits at the terminal point map onto
//! the paths with one fewer north step that stay weakly above the line.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::counting::BigCount;
use crate::error::{Error, Result};
use crate::word::{self, FixedWeightIter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeStep {
    North,
    East,
}

impl NeStep {
    pub fn as_char(self) -> char {
        match self {
            NeStep::North => 'N',
            NeStep::East => 'E',
        }
    }

    pub fn from_char(c: char) -> Option<NeStep> {
        match c {
            'N' => Some(NeStep::North),
            'E' => Some(NeStep::East),
            _ => None,
        }
    }
}

/// `n` east steps, `(k-1)n + j` north steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeParams {
    n: u32,
    k: u32,
    j: u32,
}

#[allow(clippy::len_without_is_empty)]
impl NeParams {
    pub fn new(n: u32, k: u32, j: u32) -> Result<Self> {
        if n == 0 || k < 2 || j == 0 {
            return Err(Error::InvalidParams(format!(
                "need n >= 1, k >= 2, j >= 1; got n={n}, k={k}, j={j}"
            )));
        }
        if u64::from(k) * u64::from(n) + u64::from(j) > i64::MAX as u64 / 4 {
            return Err(Error::InvalidParams(format!("kn+j too large: n={n}, k={k}, j={j}")));
        }
        Ok(NeParams { n, k, j })
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

    /// `kn + j`, the number of steps and the largest point label.
    pub fn len(&self) -> u64 {
        u64::from(self.k) * u64::from(self.n) + u64::from(self.j)
    }

    pub fn north_steps(&self) -> u64 {
        self.len() - u64::from(self.n)
    }
}

impl fmt::Display for NeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NE({},{},{})", self.n, self.k, self.j)
    }
}

/// A north/east path from the origin; bit `len-1-t` is set iff step `t` is
/// east, so numeric order is lexicographic `N < E` order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NePath {
    len: u8,
    bits: u128,
}

impl NePath {
    pub fn from_steps<I: IntoIterator<Item = NeStep>>(steps: I) -> Result<Self> {
        let mut bits = 0u128;
        let mut len = 0usize;
        for step in steps {
            if len == crate::MAX_STEPS {
                return Err(Error::PathTooLong(len + 1));
            }
            bits = (bits << 1) | u128::from(step == NeStep::East);
            len += 1;
        }
        Ok(NePath {
            len: len as u8,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self, t: usize) -> NeStep {
        assert!(t < self.len(), "step index {t} out of range");
        if (self.bits >> (self.len() - 1 - t)) & 1 == 1 {
            NeStep::East
        } else {
            NeStep::North
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = NeStep> + '_ {
        (0..self.len()).map(move |t| self.step(t))
    }

    pub fn east_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn north_count(&self) -> usize {
        self.len() - self.east_count()
    }

    /// Coordinates of all `len + 1` points.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = (0i64, 0i64);
        out.push((x, y));
        for step in self.steps() {
            match step {
                NeStep::East => x += 1,
                NeStep::North => y += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// [`ne_height`] of every point.
    pub fn heights(&self, k: u32) -> Vec<i64> {
        self.points()
            .into_iter()
            .map(|(x, y)| ne_height(x, y, k))
            .collect()
    }

    /// The same steps in reverse order.
    pub fn reversed(&self) -> Self {
        if self.len == 0 {
            return *self;
        }
        NePath {
            len: self.len,
            bits: self.bits.reverse_bits() >> (crate::MAX_STEPS - self.len()),
        }
    }

    /// Drops the final step. Panics on an empty path.
    pub fn without_last(&self) -> Self {
        assert!(self.len > 0, "empty path has no last step");
        NePath {
            len: self.len - 1,
            bits: self.bits >> 1,
        }
    }

    pub fn is_member(&self, params: &NeParams) -> bool {
        self.len() as u64 == params.len() && self.east_count() as u64 == u64::from(params.n)
    }

    fn require_member(&self, params: &NeParams) -> Result<()> {
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

impl fmt::Display for NePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in self.steps() {
            fmt::Write::write_char(f, step.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NePath({self})")
    }
}

impl FromStr for NePath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_ne_path(text)
    }
}

/// Parses `N`/`E` text. Empty text and any other character are rejected.
pub fn parse_ne_path(text: &str) -> Result<NePath> {
    if text.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut steps = Vec::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        steps.push(NeStep::from_char(c).ok_or(Error::InvalidStep {
            found: c,
            position,
            expected: "'N', 'E'",
        })?);
    }
    NePath::from_steps(steps)
}

/// `y - (k-1)x`: a positive multiple of the signed distance to `y = (k-1)x`.
pub fn ne_height(x: i64, y: i64, k: u32) -> i64 {
    y - (i64::from(k) - 1) * x
}

/// Point labels of the `j` high points, highest first.
///
/// The `t`-th high point is the leftmost point at the `t`-th largest
/// distinct height. Heights `1..=j` all occur (north steps climb by one and
/// the path ends at height `j`), so all `j` lie strictly above the line.
pub fn high_points(path: &NePath, params: &NeParams) -> Result<Vec<usize>> {
    path.require_member(params)?;
    let heights = path.heights(params.k);
    let mut distinct = heights.clone();
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    let out: Vec<usize> = distinct
        .into_iter()
        .take(params.j as usize)
        .map(|h| heights.iter().position(|&v| v == h).expect("height occurs"))
        .collect();
    assert!(
        out.len() == params.j as usize && out.iter().all(|&label| heights[label] >= 1),
        "high points of {path} are not all above the line"
    );
    Ok(out)
}

/// The other reading of "next highest": the first `j` points in order of
/// decreasing height, leftmost first among equal heights. It does not give
/// a uniform statistic and exists so that can be demonstrated.
pub fn high_points_by_occurrence(path: &NePath, params: &NeParams) -> Result<Vec<usize>> {
    path.require_member(params)?;
    let heights = path.heights(params.k);
    let mut order: Vec<usize> = (0..heights.len()).collect();
    order.sort_by(|&a, &b| heights[b].cmp(&heights[a]).then(a.cmp(&b)));
    order.truncate(params.j as usize);
    Ok(order)
}

/// A family path with one of its high points marked (`mark ∈ 1..=j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedNePath {
    path: NePath,
    mark: u32,
}

impl MarkedNePath {
    pub fn new(path: NePath, mark: u32, params: &NeParams) -> Result<Self> {
        path.require_member(params)?;
        if !(1..=params.j).contains(&mark) {
            return Err(Error::MarkOutOfRange {
                mark,
                max: params.j,
            });
        }
        Ok(MarkedNePath { path, mark })
    }

    pub fn path(&self) -> &NePath {
        &self.path
    }

    pub fn mark(&self) -> u32 {
        self.mark
    }
}

/// Point label of the marked high point, in `1..=kn+j`.
pub fn ne_statistic_x(marked: &MarkedNePath, params: &NeParams) -> Result<usize> {
    Ok(high_points(&marked.path, params)?[marked.mark as usize - 1])
}

/// Deletes the final north step of a marked path with `X = kn + j` and
/// rotates the rest by 180°, which for north/east paths is step reversal.
pub fn ne_final_bijection(marked: &MarkedNePath, params: &NeParams) -> Result<NePath> {
    let x = ne_statistic_x(marked, params)?;
    if x as u64 != params.len() {
        return Err(Error::Precondition(format!(
            "{} with mark {} has X = {x}, expected {}",
            marked.path,
            marked.mark,
            params.len()
        )));
    }
    let path = marked.path;
    if path.step(path.len() - 1) != NeStep::North {
        return Err(Error::Precondition(format!("{path} does not end with a north step")));
    }
    Ok(path.without_last().reversed())
}

/// Every point satisfies `y >= (k-1)x`.
pub fn is_weakly_above(path: &NePath, k: u32) -> bool {
    path.heights(k).into_iter().all(|h| h >= 0)
}

#[derive(Clone, Debug)]
pub struct NePathIter {
    words: FixedWeightIter,
    len: usize,
}

impl Iterator for NePathIter {
    type Item = NePath;

    fn next(&mut self) -> Option<NePath> {
        self.words.next().map(|bits| NePath {
            len: self.len as u8,
            bits,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.words.size_hint()
    }
}

fn ne_paths(east: usize, north: usize) -> Result<NePathIter> {
    let len = east + north;
    if len > crate::MAX_STEPS {
        return Err(Error::PathTooLong(len));
    }
    Ok(NePathIter {
        words: FixedWeightIter::new(word::mask(east), word::binomial_u128(len, east)),
        len,
    })
}

/// All family members, `C(kn+j, n)` of them, in `N < E` order.
pub fn enumerate_ne_family(params: &NeParams) -> Result<NePathIter> {
    ne_paths(params.n as usize, params.north_steps() as usize)
}

/// All paths with `n` east and `(k-1)n + j - 1` north steps.
pub fn enumerate_short_paths(params: &NeParams) -> Result<NePathIter> {
    ne_paths(params.n as usize, params.north_steps() as usize - 1)
}

/// Exhaustive count of the short paths that stay weakly above the line.
pub fn weakly_above_count(params: &NeParams) -> Result<BigCount> {
    let count = enumerate_short_paths(params)?
        .filter(|p| is_weakly_above(p, params.k))
        .count();
    Ok(BigCount::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn ne(text: &str) -> NePath {
        text.parse().unwrap()
    }

    fn params(n: u32, k: u32, j: u32) -> NeParams {
        NeParams::new(n, k, j).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(ne("NENN").to_string(), "NENN");
        assert!(parse_ne_path("NU").is_err());
        assert_eq!(parse_ne_path(""), Err(Error::EmptyPath));
        assert_eq!(ne("NNEE").reversed(), ne("EENN"));
        assert_eq!(ne("NEE").without_last(), ne("NE"));
    }

    #[test]
    fn height_examples() {
        assert_eq!(ne_height(0, 0, 5), 0);
        assert_eq!(ne_height(1, 2, 2), 1);
        assert_eq!(ne("NENN").points()[4], (1, 3));
        assert_eq!(ne("NENN").heights(2)[4], 2);
    }

    #[test]
    fn high_point_examples() {
        let f = params(1, 2, 2);
        assert_eq!(ne("NNEN").heights(2), vec![0, 1, 2, 1, 2]);
        assert_eq!(high_points(&ne("NNEN"), &f).unwrap(), vec![2, 1]);
        assert_eq!(ne("ENNN").heights(2), vec![0, -1, 0, 1, 2]);
        assert_eq!(high_points(&ne("ENNN"), &f).unwrap(), vec![4, 3]);
        assert_eq!(high_points(&ne("NNNE"), &f).unwrap(), vec![3, 2]);
        assert_eq!(high_points(&ne("NENN"), &f).unwrap(), vec![4, 1]);
        assert!(high_points(&ne("NNN"), &f).is_err());
    }

    #[test]
    fn statistic_examples() {
        let f = params(1, 2, 2);
        let x = |mark| ne_statistic_x(&MarkedNePath::new(ne("NENN"), mark, &f).unwrap(), &f).unwrap();
        assert_eq!(x(1), 4);
        assert_eq!(x(2), 1);
        assert!(MarkedNePath::new(ne("NENN"), 3, &f).is_err());

        let mut histogram = vec![0; 5];
        let mut by_occurrence = vec![0; 5];
        for path in enumerate_ne_family(&f).unwrap() {
            for mark in 1..=2 {
                let m = MarkedNePath::new(path, mark, &f).unwrap();
                histogram[ne_statistic_x(&m, &f).unwrap()] += 1;
            }
            for label in high_points_by_occurrence(&path, &f).unwrap() {
                by_occurrence[label] += 1;
            }
        }
        assert_eq!(histogram, vec![0, 2, 2, 2, 2]);
        assert_eq!(by_occurrence, vec![0, 1, 2, 2, 3]);
    }

    fn images(f: &NeParams) -> BTreeSet<NePath> {
        let mut out = BTreeSet::new();
        for path in enumerate_ne_family(f).unwrap() {
            for mark in 1..=f.j() {
                let m = MarkedNePath::new(path, mark, f).unwrap();
                if ne_statistic_x(&m, f).unwrap() as u64 == f.len() {
                    let image = ne_final_bijection(&m, f).unwrap();
                    assert!(is_weakly_above(&image, f.k()));
                    assert!(out.insert(image));
                }
            }
        }
        out
    }

    #[test]
    fn final_bijection_examples() {
        let f = params(1, 2, 2);
        assert_eq!(images(&f), [ne("NNE"), ne("NEN")].into_iter().collect());
        let f = params(2, 2, 1);
        assert_eq!(images(&f), [ne("NNEE"), ne("NENE")].into_iter().collect());

        let f = params(1, 2, 2);
        let low = MarkedNePath::new(ne("NENN"), 2, &f).unwrap();
        assert!(matches!(ne_final_bijection(&low, &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn weakly_above_examples() {
        assert_eq!(weakly_above_count(&params(1, 2, 2)).unwrap(), BigCount::from(2u32));
        assert_eq!(weakly_above_count(&params(2, 2, 1)).unwrap(), BigCount::from(2u32));
        assert_eq!(weakly_above_count(&params(3, 2, 1)).unwrap(), BigCount::from(5u32));
        for (n, k, j) in [(3, 3, 2), (2, 4, 3), (4, 2, 3)] {
            let f = params(n, k, j);
            assert_eq!(
                weakly_above_count(&f).unwrap(),
                crate::counting::count_ne(n, k, j).unwrap()
            );
            let expected: BTreeSet<NePath> = enumerate_short_paths(&f)
                .unwrap()
                .filter(|p| is_weakly_above(p, k))
                .collect();
            assert_eq!(images(&f), expected);
        }
    }
}

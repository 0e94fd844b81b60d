//! Parameter ranges for grid runs.

use std::fmt;
use std::str::FromStr;

/// An inclusive range of parameter values, written `N`, `LO..HI` or `LO..=HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub const fn new(lo: u32, hi: u32) -> Self {
        Span { lo, hi }
    }

    pub const fn single(v: u32) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..={}", self.lo, self.hi)
        }
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let num = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid range bound {s:?} in {text:?}"))
        };
        let span = if let Some((lo, hi)) = text.split_once("..=") {
            Span::new(num(lo)?, num(hi)?)
        } else if let Some((lo, hi)) = text.split_once("..") {
            let hi = num(hi)?;
            if hi == 0 {
                return Err(format!("empty range {text:?}"));
            }
            Span::new(num(lo)?, hi - 1)
        } else {
            Span::single(num(text)?)
        };
        if span.lo > span.hi {
            return Err(format!("empty range {text:?}"));
        }
        Ok(span)
    }
}

/// Ranges supplied on the command line; `None` means "use the suite default".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GridSpec {
    pub n: Option<Span>,
    pub k: Option<Span>,
    pub j: Option<Span>,
    pub a: Option<Span>,
    pub b: Option<Span>,
    pub c: Option<Span>,
    pub d: Option<Span>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spans() {
        assert_eq!("3".parse::<Span>(), Ok(Span::single(3)));
        assert_eq!("1..=8".parse::<Span>(), Ok(Span::new(1, 8)));
        assert_eq!("1..8".parse::<Span>(), Ok(Span::new(1, 7)));
        assert!("5..=2".parse::<Span>().is_err());
        assert!("1..1".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
        assert_eq!(Span::new(2, 4).to_string(), "2..=4");
        assert_eq!(Span::single(7).to_string(), "7");
    }
}

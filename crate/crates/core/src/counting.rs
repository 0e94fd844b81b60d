//! Exact counts: binomials, `(j/n)·C(kn, n+j)` and its relatives.
//!
//! Every formula is evaluated twice, once as an exact quotient and once as a
//! difference of binomials, and the two must agree. A nonzero remainder or a
//! disagreement is reported as [`Error::IdentityFailure`], never truncated.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::path::FamilyParams;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(m, r)`; zero when `r < 0` or `r > m`.
pub fn binomial(m: u64, r: i64) -> BigCount {
    if r < 0 || r as u64 > m {
        return BigCount::zero();
    }
    let r = (r as u64).min(m - r as u64);
    let mut acc = BigCount::one();
    for i in 1..=r {
        // acc = C(m - r + i, i) after this step; the division is exact.
        acc *= m - r + i;
        acc /= i;
    }
    acc
}

fn exact_div(numerator: &BigCount, denominator: u64, what: &str) -> Result<BigCount> {
    if denominator == 0 {
        return Err(Error::IdentityFailure(format!("{what}: zero divisor")));
    }
    let (q, rem) = numerator.div_rem(&BigCount::from(denominator));
    if !rem.is_zero() {
        return Err(Error::IdentityFailure(format!(
            "{what}: {numerator} is not divisible by {denominator}"
        )));
    }
    Ok(q)
}

fn to_count(value: BigInt, what: &str) -> Result<BigCount> {
    match value.sign() {
        Sign::Minus => Err(Error::IdentityFailure(format!(
            "{what}: negative binomial difference {value}"
        ))),
        _ => Ok(value.magnitude().clone()),
    }
}

/// `(j/n)·C(kn, n+j)` computed as `(k-1)C(kn-1, n+j-1) - C(kn-1, n+j)` and
/// checked against the exact quotient `j·C(kn, n+j) / n`.
pub fn count_formula(params: &FamilyParams) -> Result<BigCount> {
    let (n, k, j) = (
        u64::from(params.n()),
        u64::from(params.k()),
        u64::from(params.j()),
    );
    let kn = k * n;
    let difference = BigInt::from(k - 1) * BigInt::from(binomial(kn - 1, (n + j - 1) as i64))
        - BigInt::from(binomial(kn - 1, (n + j) as i64));
    let what = format!("count for {params}");
    let difference = to_count(difference, &what)?;
    let quotient = exact_div(&(binomial(kn, (n + j) as i64) * j), n, &what)?;
    if quotient != difference {
        return Err(Error::IdentityFailure(format!(
            "{what}: quotient {quotient} != binomial difference {difference}"
        )));
    }
    Ok(quotient)
}

/// `count_formula(n, k, j)` for every `n <= n_max` with `(k-1)n >= j`.
pub fn sequence(k: u32, j: u32, n_max: u32) -> Result<Vec<(u32, BigCount)>> {
    if k < 2 || j == 0 {
        return Err(Error::InvalidParams(format!(
            "sequence needs k >= 2 and j >= 1, got k={k}, j={j}"
        )));
    }
    let first = j.div_ceil(k - 1).max(1);
    (first..=n_max)
        .map(|n| {
            let params = FamilyParams::new(n, k, j)?;
            Ok((n, count_formula(&params)?))
        })
        .collect()
}

/// Parameters of `((ad - bc)/(an + b))·C(an + b, cn + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneralParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub n: u32,
}

impl GeneralParams {
    /// Requires `a >= 2`, `c >= 1`, `d >= 1`, `n >= 1`, `an + b >= cn + d`
    /// and `ad - bc > 0`.
    pub fn new(a: u32, b: u32, c: u32, d: u32, n: u32) -> Result<Self> {
        let g = GeneralParams { a, b, c, d, n };
        if a < 2 || c == 0 || d == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "need a >= 2, c >= 1, d >= 1, n >= 1; got {g:?}"
            )));
        }
        if g.top() < g.bottom() {
            return Err(Error::InvalidParams(format!("need an+b >= cn+d; got {g:?}")));
        }
        if g.weight() <= 0 {
            return Err(Error::InvalidParams(format!("need ad-bc > 0; got {g:?}")));
        }
        Ok(g)
    }

    /// `an + b`
    pub fn top(&self) -> u64 {
        u64::from(self.a) * u64::from(self.n) + u64::from(self.b)
    }

    /// `cn + d`
    pub fn bottom(&self) -> u64 {
        u64::from(self.c) * u64::from(self.n) + u64::from(self.d)
    }

    /// `ad - bc`
    pub fn weight(&self) -> i64 {
        i64::from(self.a) * i64::from(self.d) - i64::from(self.b) * i64::from(self.c)
    }
}

/// `(a-c)C(an+b-1, cn+d-1) - c·C(an+b-1, cn+d)`, checked against
/// `(ad-bc)·C(an+b, cn+d) / (an+b)`.
pub fn unified_formula(g: &GeneralParams) -> Result<BigCount> {
    let what = format!("unified count for {g:?}");
    let (top, bottom) = (g.top(), g.bottom() as i64);
    let difference = (i64::from(g.a) - i64::from(g.c)) * BigInt::from(binomial(top - 1, bottom - 1))
        - i64::from(g.c) * BigInt::from(binomial(top - 1, bottom));
    let difference = to_count(difference, &what)?;
    let quotient = exact_div(&(binomial(top, bottom) * g.weight() as u64), top, &what)?;
    if quotient != difference {
        return Err(Error::IdentityFailure(format!(
            "{what}: quotient {quotient} != binomial difference {difference}"
        )));
    }
    Ok(quotient)
}

/// `(d/n)·C(an, cn+d)`: the unified formula with `b = 0`.
pub fn count_general_a(a: u32, c: u32, d: u32, n: u32) -> Result<BigCount> {
    unified_formula(&GeneralParams::new(a, 0, c, d, n)?)
}

/// `(j/(kn+j))·C(kn+j, n)`, the number of north/east paths with `n` east
/// and `(k-1)n + j - 1` north steps staying weakly above `y = (k-1)x`.
pub fn count_ne(n: u32, k: u32, j: u32) -> Result<BigCount> {
    if n == 0 || k < 2 || j == 0 {
        return Err(Error::InvalidParams(format!(
            "need n >= 1, k >= 2, j >= 1; got n={n}, k={k}, j={j}"
        )));
    }
    let total = u64::from(k) * u64::from(n) + u64::from(j);
    exact_div(
        &(binomial(total, i64::from(n)) * j),
        total,
        &format!("north/east count for n={n}, k={k}, j={j}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, k: u32, j: u32) -> FamilyParams {
        FamilyParams::new(n, k, j).unwrap()
    }

    fn values(seq: Vec<(u32, BigCount)>) -> Vec<u64> {
        seq.into_iter()
            .map(|(_, v)| u64::try_from(&v).unwrap())
            .collect()
    }

    // Independent oracle: additive Pascal rows.
    fn pascal(m: u64, r: i64) -> BigCount {
        let mut row = alloc::vec![BigCount::one()];
        for _ in 0..m {
            let mut next = alloc::vec![BigCount::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        if r < 0 || r as u64 > m {
            BigCount::zero()
        } else {
            row[r as usize].clone()
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 4), BigCount::from(15u32));
        assert_eq!(binomial(15, 6), BigCount::from(5005u32));
        assert_eq!(binomial(0, 0), BigCount::one());
        assert_eq!(binomial(1000, 0), BigCount::one());
        assert!(binomial(5, -1).is_zero());
        assert!(binomial(5, 6).is_zero());
        for m in 0..=60 {
            for r in -1..=m as i64 + 1 {
                assert_eq!(binomial(m, r), pascal(m, r), "C({m},{r})");
            }
        }
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(count_formula(&fam(3, 2, 1)).unwrap(), BigCount::from(5u32));
        assert_eq!(count_formula(&fam(5, 3, 1)).unwrap(), BigCount::from(1001u32));
        assert_eq!(count_formula(&fam(4, 3, 3)).unwrap(), BigCount::from(594u32));
        assert_eq!(count_formula(&fam(3, 2, 2)).unwrap(), BigCount::from(4u32));
    }

    #[test]
    fn sequences() {
        assert_eq!(
            values(sequence(2, 1, 7).unwrap()),
            [1, 2, 5, 14, 42, 132, 429]
        );
        assert_eq!(values(sequence(3, 1, 4).unwrap()), [3, 10, 42, 198]);
        assert_eq!(values(sequence(4, 1, 3).unwrap()), [6, 28, 165]);
        // j = 3, k = 2 starts at n = 3
        let seq = sequence(2, 3, 4).unwrap();
        assert_eq!(seq[0].0, 3);
        assert!(sequence(1, 1, 3).is_err());
    }

    #[test]
    fn unified_examples() {
        let u = |a, b, c, d, n| unified_formula(&GeneralParams::new(a, b, c, d, n).unwrap()).unwrap();
        assert_eq!(u(2, 0, 1, 1, 3), BigCount::from(5u32));
        assert_eq!(u(2, 1, 1, 1, 3), BigCount::from(5u32));
        assert_eq!(u(3, 0, 1, 2, 2), BigCount::from(15u32));
        assert!(GeneralParams::new(2, 2, 1, 1, 3).is_err()); // ad - bc = 0
        assert!(GeneralParams::new(2, 0, 3, 1, 3).is_err()); // cn + d > an + b
    }

    #[test]
    fn general_a_and_ne_examples() {
        assert_eq!(count_general_a(2, 1, 1, 3).unwrap(), BigCount::from(5u32));
        assert_eq!(count_general_a(3, 1, 2, 2).unwrap(), BigCount::from(15u32));
        assert_eq!(count_general_a(4, 1, 2, 1).unwrap(), BigCount::from(8u32));
        assert_eq!(count_ne(1, 2, 2).unwrap(), BigCount::from(2u32));
        assert_eq!(count_ne(2, 2, 1).unwrap(), BigCount::from(2u32));
        assert_eq!(count_ne(3, 2, 1).unwrap(), BigCount::from(5u32));
    }

    #[test]
    fn catalan_agreement() {
        for n in 1..=12 {
            let fc = count_formula(&fam(n, 2, 1)).unwrap();
            assert_eq!(fc, count_ne(n, 2, 1).unwrap());
            assert_eq!(fc, exact_div(&binomial(2 * u64::from(n), i64::from(n)), u64::from(n) + 1, "C_n").unwrap());
        }
    }

    #[test]
    fn unified_specializes_to_count_formula() {
        for k in 2..=5 {
            for n in 1..=8 {
                for j in 1..=(k - 1) * n {
                    assert_eq!(
                        count_general_a(k, 1, j, n).unwrap(),
                        count_formula(&fam(n, k, j)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn inexact_division_is_an_error() {
        assert!(matches!(
            exact_div(&BigCount::from(7u32), 2, "x"),
            Err(Error::IdentityFailure(_))
        ));
    }

    #[test]
    fn large_values_stay_exact() {
        let big = count_formula(&fam(200, 3, 7)).unwrap();
        assert_eq!(big * 200u32, binomial(600, 207) * 7u32);
    }
}

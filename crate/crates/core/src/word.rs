//! Fixed-length bit words with a fixed number of set bits.
//!
//! A word of length `len` stores its first symbol in bit `len - 1`, so the
//! numeric order of words equals the lexicographic order of their symbol
//! sequences when the clear bit stands for the smaller symbol.

pub(crate) const MAX_LEN: usize = 128;

#[inline]
pub(crate) fn mask(len: usize) -> u128 {
    if len >= MAX_LEN {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

#[inline]
pub(crate) fn shl(x: u128, by: usize) -> u128 {
    if by >= MAX_LEN {
        0
    } else {
        x << by
    }
}

#[inline]
pub(crate) fn shr(x: u128, by: usize) -> u128 {
    if by >= MAX_LEN {
        0
    } else {
        x >> by
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `C(m, r)` for `m <= 128`; every such value fits in a `u128`.
pub(crate) fn binomial_u128(m: usize, r: usize) -> u128 {
    debug_assert!(m <= MAX_LEN);
    if r > m {
        return 0;
    }
    let r = r.min(m - r);
    let mut c: u128 = 1;
    for i in 1..=r as u128 {
        let num = (m - r) as u128 + i;
        // i divides c*num and gcd(c/g, i/g) = 1, so i/g divides num.
        let g = gcd(c, i);
        c = (c / g) * (num / (i / g));
    }
    c
}

/// Position of `word` in the numeric order of `len`-bit words of equal weight.
pub(crate) fn rank(word: u128) -> u128 {
    let mut rest = word;
    let mut total = 0u128;
    let mut i = 0usize;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        i += 1;
        total += binomial_u128(p, i);
        rest &= rest - 1;
    }
    total
}

/// Inverse of [`rank`]; caller guarantees `r < C(len, weight)`.
pub(crate) fn unrank(mut r: u128, len: usize, weight: usize) -> u128 {
    let mut word = 0u128;
    let mut top = len;
    for i in (1..=weight).rev() {
        // largest p < top with C(p, i) <= r
        let mut p = top - 1;
        while binomial_u128(p, i) > r {
            p -= 1;
        }
        word |= 1u128 << p;
        r -= binomial_u128(p, i);
        top = p;
    }
    word
}

#[inline]
fn successor(x: u128) -> u128 {
    let low = x & x.wrapping_neg();
    let ripple = x.wrapping_add(low);
    (((ripple ^ x) >> 2) / low) | ripple
}

/// Iterates `count` consecutive words of one weight in increasing order.
#[derive(Clone, Debug)]
pub(crate) struct FixedWeightIter {
    current: u128,
    remaining: u128,
}

impl FixedWeightIter {
    pub(crate) fn new(start: u128, count: u128) -> Self {
        FixedWeightIter {
            current: start,
            remaining: count,
        }
    }
}

impl Iterator for FixedWeightIter {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.current = successor(out);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match usize::try_from(self.remaining) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(m: usize, r: usize) -> u128 {
        let mut row = alloc::vec![0u128; m + 1];
        row[0] = 1;
        for i in 1..=m {
            for c in (1..=i).rev() {
                row[c] += row[c - 1];
            }
        }
        if r > m {
            0
        } else {
            row[r]
        }
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for m in [0, 1, 5, 17, 63, 64, 100, 127, 128] {
            for r in 0..=m + 1 {
                assert_eq!(binomial_u128(m, r), pascal(m, r), "C({m},{r})");
            }
        }
    }

    #[test]
    fn rank_unrank_walks_every_word() {
        for len in 0..=10 {
            for w in 0..=len {
                let size = binomial_u128(len, w);
                let words: alloc::vec::Vec<u128> =
                    FixedWeightIter::new(mask(w), size).collect();
                assert_eq!(words.len() as u128, size);
                assert!(words.windows(2).all(|p| p[0] < p[1]));
                for (r, &word) in words.iter().enumerate() {
                    assert_eq!(word.count_ones() as usize, w);
                    assert!(word <= mask(len));
                    assert_eq!(rank(word), r as u128);
                    assert_eq!(unrank(r as u128, len, w), word);
                }
            }
        }
    }

    #[test]
    fn full_width_words() {
        let top = mask(64) << 64;
        assert_eq!(rank(top), binomial_u128(128, 64) - 1);
        assert_eq!(unrank(binomial_u128(128, 64) - 1, 128, 64), top);
        let all: alloc::vec::Vec<u128> = FixedWeightIter::new(u128::MAX, 1).collect();
        assert_eq!(all, [u128::MAX]);
    }
}

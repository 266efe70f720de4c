//! Suffix-range calculus: concatenating two ranged strings and trimming a
//! ranged string at either end, all in `O(log |T|)`.

use crate::error::{Error, Result};
use crate::text_index::{SuffixRange, TextIndex};

/// A string known only by its length and its suffix range.
///
/// When the range is non-empty, every suffix in it starts with the same
/// `len` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangedString {
    pub len: usize,
    pub range: SuffixRange,
}

impl RangedString {
    pub fn new(len: usize, range: SuffixRange) -> Self {
        RangedString { len, range }
    }
}

impl TextIndex {
    /// Suffix range of `a ∘ b`.
    ///
    /// The suffixes in `a.range`, with their first `a.len` symbols skipped,
    /// stay in suffix-array order, so the matches for `b` form a contiguous
    /// block found with two binary searches. Suffixes that become empty
    /// after the skip sort before everything else.
    pub fn concat(&self, a: RangedString, b: RangedString) -> Result<SuffixRange> {
        if a.range.is_empty() || b.range.is_empty() {
            return Err(Error::EmptyRange);
        }
        let n = self.len();
        let before = |rank: usize, bound: usize| {
            let next = self.sa_at(rank) + a.len;
            next == n || self.isa_at(next) < bound
        };
        let search = |bound: usize| {
            let (mut lo, mut hi) = (a.range.lo, a.range.hi);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if before(mid, bound) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let first = search(b.range.lo);
        let last = search(b.range.hi);
        Ok(SuffixRange::new(first, last))
    }

    /// Suffix range of `s` without its first `k` symbols.
    pub fn drop_front(&self, s: RangedString, k: usize) -> Result<SuffixRange> {
        check_drop(&s, k)?;
        let shifted = self.isa_at(self.sa_at(s.range.lo) + k);
        self.extend_range(shifted, s.len - k)
    }

    /// Suffix range of `s` without its last `k` symbols.
    pub fn drop_back(&self, s: RangedString, k: usize) -> Result<SuffixRange> {
        check_drop(&s, k)?;
        self.extend_range(s.range.lo, s.len - k)
    }
}

fn check_drop(s: &RangedString, k: usize) -> Result<()> {
    if s.range.is_empty() {
        return Err(Error::EmptyRange);
    }
    if k == 0 || k >= s.len {
        return Err(Error::InvalidDrop { k, len: s.len });
    }
    Ok(())
}

//! The static side: suffix array, inverse suffix array, LCP array and
//! constant-time LCP queries between arbitrary suffixes, plus suffix-range
//! searches for whole patterns.

mod rmq;
mod sais;

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

pub use rmq::RmqKind;
use rmq::Rmq;

/// Half-open interval `[lo, hi)` of suffix-array ranks.
///
/// The empty range is always normalized to `[0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SuffixRange {
    pub lo: usize,
    pub hi: usize,
}

impl SuffixRange {
    pub const EMPTY: SuffixRange = SuffixRange { lo: 0, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        if lo >= hi {
            Self::EMPTY
        } else {
            SuffixRange { lo, hi }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    /// Number of occurrences represented by the range.
    pub fn count(&self) -> usize {
        self.hi.saturating_sub(self.lo)
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.lo <= rank && rank < self.hi
    }

    /// Whether `self` lies inside `other`.
    pub fn is_within(&self, other: &SuffixRange) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }
}

impl fmt::Display for SuffixRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SaAlgorithm {
    #[default]
    InducedSorting,
    PrefixDoubling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IndexOptions {
    pub suffix_array: SaAlgorithm,
    pub rmq: RmqKind,
}

/// Immutable index over a text. Cheap to share between sessions and threads.
#[derive(Debug, Clone)]
pub struct TextIndex {
    text: Vec<u8>,
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    rmq: Rmq,
}

/// Outcome of the lcp-accelerated binary search over the suffix array.
struct FastSearch {
    /// Length of the longest prefix of the pattern occurring in the text.
    plcp: usize,
    /// A rank whose suffix starts with those `plcp` symbols.
    witness: usize,
}

impl TextIndex {
    pub fn build(text: &[u8]) -> Result<Self> {
        Self::build_with(text, IndexOptions::default())
    }

    pub fn build_with(text: &[u8], options: IndexOptions) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        if text.len() >= u32::MAX as usize {
            return Err(Error::TextTooLong(text.len()));
        }
        let sa = match options.suffix_array {
            SaAlgorithm::InducedSorting => sais::suffix_array(text),
            SaAlgorithm::PrefixDoubling => sais::suffix_array_doubling(text),
        };
        let mut isa = vec![0u32; sa.len()];
        for (rank, &pos) in sa.iter().enumerate() {
            isa[pos as usize] = rank as u32;
        }
        let lcp = sais::lcp_array(text, &sa, &isa);
        let rmq = Rmq::new(options.rmq, &lcp);
        Ok(TextIndex {
            text: text.to_vec(),
            sa,
            isa,
            lcp,
            rmq,
        })
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Text length `n`.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn isa(&self) -> &[u32] {
        &self.isa
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    pub fn rmq_kind(&self) -> RmqKind {
        self.rmq.kind()
    }

    #[inline]
    pub(crate) fn sa_at(&self, rank: usize) -> usize {
        self.sa[rank] as usize
    }

    #[inline]
    pub(crate) fn isa_at(&self, pos: usize) -> usize {
        self.isa[pos] as usize
    }

    /// The suffix stored at `rank`.
    pub fn suffix(&self, rank: usize) -> &[u8] {
        &self.text[self.sa_at(rank)..]
    }

    /// LCP of the suffixes at ranks `a < b`.
    #[inline]
    fn lcp_ranks(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        self.rmq.min(&self.lcp, a, b) as usize
    }

    /// Longest common prefix of the suffixes starting at text positions `i`
    /// and `j`. For `i == j` this is the suffix length.
    pub fn lcp_suffixes(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.len();
        for pos in [i, j] {
            if pos >= n {
                return Err(Error::OutOfRange { pos, len: n });
            }
        }
        if i == j {
            return Ok(n - i);
        }
        let (a, b) = (self.isa_at(i), self.isa_at(j));
        Ok(self.lcp_ranks(a.min(b), a.max(b)))
    }

    /// Suffix range by plain binary search with full string comparisons,
    /// `O(|P| log |T|)`. Kept as a reference for [`sr_fast`](Self::sr_fast).
    pub fn sr_slow(&self, pattern: &[u8]) -> SuffixRange {
        let n = self.len();
        if pattern.is_empty() {
            return SuffixRange::new(0, n);
        }
        let starts_with = |rank: usize| self.suffix(rank).starts_with(pattern);

        // First rank whose suffix is not smaller than the pattern; the answer
        // is kept in the open interval (lo, hi].
        let first = if starts_with(0) {
            0
        } else {
            let (mut lo, mut hi) = (0, n - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if pattern <= self.suffix(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if !starts_with(hi) {
                return SuffixRange::EMPTY;
            }
            hi
        };

        // First rank past the block of suffixes that start with the pattern.
        let (mut lo, mut hi) = (first, n);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let suffix = self.suffix(mid);
            let head = &suffix[..suffix.len().min(pattern.len())];
            if head <= pattern {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        SuffixRange::new(first, hi)
    }

    /// Binary search keeping the lcp of the pattern with both boundary
    /// suffixes, so that symbol comparisons total `O(plcp)`.
    fn search_fast(&self, pattern: &[u8]) -> FastSearch {
        let n = self.len();
        let p = pattern.len();
        let match_from = |rank: usize, from: usize| {
            let suffix = self.suffix(rank);
            from + pattern[from..]
                .iter()
                .zip(&suffix[from..])
                .take_while(|(a, b)| a == b)
                .count()
        };

        let mut left_lcp = match_from(0, 0);
        if left_lcp == p {
            return FastSearch {
                plcp: p,
                witness: 0,
            };
        }
        let mut right_lcp = match_from(n - 1, 0);
        let (mut lo, mut hi) = (0, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let m = if left_lcp >= right_lcp {
                let shared = self.lcp_ranks(lo, mid);
                if shared < left_lcp {
                    shared
                } else {
                    match_from(mid, left_lcp)
                }
            } else {
                let shared = self.lcp_ranks(mid, hi);
                if shared < right_lcp {
                    shared
                } else {
                    match_from(mid, right_lcp)
                }
            };
            let pos = self.sa_at(mid);
            if m == p || (pos + m < n && pattern[m] < self.text[pos + m]) {
                hi = mid;
                right_lcp = m;
            } else {
                lo = mid;
                left_lcp = m;
            }
        }
        if left_lcp >= right_lcp {
            FastSearch {
                plcp: left_lcp,
                witness: lo,
            }
        } else {
            FastSearch {
                plcp: right_lcp,
                witness: hi,
            }
        }
    }

    /// Suffix range in `O(|P| + log |T|)`.
    pub fn sr_fast(&self, pattern: &[u8]) -> SuffixRange {
        if pattern.is_empty() {
            return SuffixRange::new(0, self.len());
        }
        let found = self.search_fast(pattern);
        if found.plcp < pattern.len() {
            return SuffixRange::EMPTY;
        }
        self.extend_range(found.witness, pattern.len())
            .expect("witness suffix holds the whole pattern")
    }

    /// Length of the longest prefix of `pattern` that occurs in the text,
    /// with its suffix range. Returns `(0, EMPTY)` when the first symbol is
    /// absent from the text.
    pub fn longest_prefix_match(&self, pattern: &[u8]) -> (usize, SuffixRange) {
        if pattern.is_empty() {
            return (0, SuffixRange::EMPTY);
        }
        let found = self.search_fast(pattern);
        if found.plcp == 0 {
            return (0, SuffixRange::EMPTY);
        }
        let range = self
            .extend_range(found.witness, found.plcp)
            .expect("witness suffix holds the matched prefix");
        (found.plcp, range)
    }

    /// Suffix range of the one-symbol string `c`.
    pub fn sr_of_char(&self, c: u8) -> SuffixRange {
        let first = |rank: usize| self.text[self.sa_at(rank)];
        let lo = partition_point(0, self.len(), |r| first(r) < c);
        let hi = partition_point(lo, self.len(), |r| first(r) <= c);
        SuffixRange::new(lo, hi)
    }

    /// The maximal rank interval around `rank` whose suffixes share their
    /// first `len` symbols with the suffix at `rank`.
    pub fn extend_range(&self, rank: usize, len: usize) -> Result<SuffixRange> {
        let n = self.len();
        if rank >= n {
            return Err(Error::OutOfRange { pos: rank, len: n });
        }
        let available = n - self.sa_at(rank);
        if len > available {
            return Err(Error::OutOfRange {
                pos: len,
                len: available,
            });
        }
        if len == 0 {
            return Ok(SuffixRange::new(0, n));
        }
        let lo = partition_point(0, rank, |j| self.lcp_ranks(j, rank) < len);
        let hi = partition_point(rank + 1, n, |j| self.lcp_ranks(rank, j) >= len);
        Ok(SuffixRange::new(lo, hi))
    }

    /// Whitespace-separated suffix array on one line, LCP array on the next.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let join = |out: &mut String, values: &[u32]| {
            for (k, v) in values.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        };
        join(&mut out, &self.sa);
        join(&mut out, &self.lcp);
        out
    }
}

/// First index in `lo..hi` where `pred` turns false, assuming it is true on a
/// prefix of the interval and false afterwards.
fn partition_point(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

//! Naive reference implementations.
//!
//! Nothing here touches the suffix-array machinery: patterns are plain byte
//! vectors and counts come from a direct scan. Tests and the benchmark
//! baseline use these as ground truth.

use crate::error::{Error, Result};
use crate::ops::EditOp;
use crate::text_index::SuffixRange;

/// Occurrences of `pattern` in `text` by a prefix-function scan.
/// The empty pattern occurs `|text| + 1` times.
pub fn naive_count(text: &[u8], pattern: &[u8]) -> usize {
    if pattern.is_empty() {
        return text.len() + 1;
    }
    if pattern.len() > text.len() {
        return 0;
    }
    let m = pattern.len();
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut hits = 0;
    let mut k = 0;
    for &c in text {
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == m {
            hits += 1;
            k = fail[k - 1];
        }
    }
    hits
}

/// Quadratic position-by-position count.
pub fn quadratic_count(text: &[u8], pattern: &[u8]) -> usize {
    (0..=text.len())
        .filter(|&p| text[p..].starts_with(pattern))
        .count()
}

/// Suffix array by sorting all suffixes.
pub fn naive_suffix_array(text: &[u8]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..text.len() as u32).collect();
    sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
    sa
}

pub fn naive_lcp(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn naive_lcp_array(text: &[u8], sa: &[u32]) -> Vec<u32> {
    sa.windows(2)
        .map(|w| naive_lcp(&text[w[0] as usize..], &text[w[1] as usize..]) as u32)
        .collect()
}

/// Ranks (in sorted-suffix order) of the suffixes starting with `pattern`,
/// as a range. Panics if they are not contiguous.
pub fn naive_suffix_range(text: &[u8], pattern: &[u8]) -> SuffixRange {
    let sa = naive_suffix_array(text);
    let ranks: Vec<usize> = sa
        .iter()
        .enumerate()
        .filter(|(_, &p)| text[p as usize..].starts_with(pattern))
        .map(|(r, _)| r)
        .collect();
    match (ranks.first(), ranks.last()) {
        (Some(&lo), Some(&hi)) => {
            assert_eq!(hi - lo + 1, ranks.len(), "suffix range is not contiguous");
            SuffixRange::new(lo, hi + 1)
        }
        _ => SuffixRange::EMPTY,
    }
}

pub fn occurs(text: &[u8], s: &[u8]) -> bool {
    s.is_empty() || text.windows(s.len()).any(|w| w == s)
}

/// Length of the longest prefix of `pattern` occurring in `text`.
pub fn naive_longest_prefix(text: &[u8], pattern: &[u8]) -> usize {
    (0..=pattern.len())
        .rev()
        .find(|&l| occurs(text, &pattern[..l]))
        .unwrap_or(0)
}

/// Minimum occurrence-partition size of `pattern`, by dynamic programming
/// over prefix lengths. A piece must occur in the text or be a single
/// symbol the text lacks.
pub fn min_partition_size(text: &[u8], pattern: &[u8]) -> usize {
    let m = pattern.len();
    let mut best = vec![usize::MAX; m + 1];
    best[0] = 0;
    for start in 0..m {
        if best[start] == usize::MAX {
            continue;
        }
        let next = best[start] + 1;
        if !occurs(text, &pattern[start..start + 1]) {
            best[start + 1] = best[start + 1].min(next);
            continue;
        }
        // Occurrence is prefix-closed, so stop at the first miss.
        for end in start + 1..=m {
            if !occurs(text, &pattern[start..end]) {
                break;
            }
            best[end] = best[end].min(next);
        }
    }
    best[m]
}

/// The pattern as a plain vector, edited with the same semantics as
/// [`Session`](crate::Session).
#[derive(Debug, Clone)]
pub struct NaiveSession {
    text: Vec<u8>,
    pattern: Vec<u8>,
}

impl NaiveSession {
    pub fn new(text: &[u8]) -> Self {
        NaiveSession {
            text: text.to_vec(),
            pattern: Vec::new(),
        }
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn count(&self) -> usize {
        naive_count(&self.text, &self.pattern)
    }

    /// Apply `op` to the pattern without counting.
    pub fn edit(&mut self, op: &EditOp) -> Result<()> {
        let len = self.pattern.len();
        if op.resulting_len(len).is_none() {
            return Err(match *op {
                EditOp::Insert { pos, .. } | EditOp::Delete { pos } => {
                    Error::OutOfRange { pos, len }
                }
                EditOp::DeleteRange { start, end }
                | EditOp::Move { start, end, .. }
                | EditOp::Copy { start, end, .. }
                    if start > end || end > len =>
                {
                    Error::InvalidSpan { start, end, len }
                }
                EditOp::Move { start, end, dest } => Error::OutOfRange {
                    pos: dest,
                    len: len - (end - start),
                },
                EditOp::Copy { dest, .. } => Error::OutOfRange { pos: dest, len },
                _ => unreachable!("search and count are always valid"),
            });
        }
        let p = &mut self.pattern;
        match *op {
            EditOp::Search(ref q) => *p = q.clone(),
            EditOp::Insert { pos, symbol } => p.insert(pos, symbol),
            EditOp::Delete { pos } => {
                p.remove(pos);
            }
            EditOp::DeleteRange { start, end } => {
                p.drain(start..end);
            }
            EditOp::Move { start, end, dest } => {
                let moved: Vec<u8> = p.drain(start..end).collect();
                p.splice(dest..dest, moved);
            }
            EditOp::Copy { start, end, dest } => {
                let copied = p[start..end].to_vec();
                p.splice(dest..dest, copied);
            }
            EditOp::Count => {}
        }
        Ok(())
    }

    pub fn apply(&mut self, op: &EditOp) -> Result<usize> {
        self.edit(op)?;
        Ok(self.count())
    }
}

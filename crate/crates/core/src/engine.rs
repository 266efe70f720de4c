//! Editing sessions: the current pattern, bound to a text index, with the
//! occurrence count reported after every operation.

use crate::error::{Error, Result};
use crate::ops::EditOp;
use crate::partition::{PartitionTree, Piece};
use crate::text_index::TextIndex;

pub use crate::partition::OpStats;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Operations applied, including no-ops and counts.
    pub ops: u64,
    pub total: OpStats,
    /// Work done by the most recent operation.
    pub last: OpStats,
}

/// A pattern under edit, matched against one text.
///
/// Sessions borrow their index, so many sessions (on many threads) can share
/// one [`TextIndex`].
#[derive(Debug, Clone)]
pub struct Session<'a> {
    index: &'a TextIndex,
    tree: PartitionTree,
    stats: Stats,
}

impl<'a> Session<'a> {
    /// A session with the empty pattern.
    pub fn new(index: &'a TextIndex) -> Self {
        Session {
            index,
            tree: PartitionTree::new(),
            stats: Stats::default(),
        }
    }

    pub fn index(&self) -> &'a TextIndex {
        self.index
    }

    pub fn tree(&self) -> &PartitionTree {
        &self.tree
    }

    /// An `O(1)` persistent copy of the current state.
    pub fn snapshot(&self) -> PartitionTree {
        self.tree.clone()
    }

    /// Replace the current state with `tree`, typically an earlier
    /// [`snapshot`](Self::snapshot). The tree must be an occurrence
    /// partition over this session's text; maximality is not rechecked.
    pub fn restore(&mut self, tree: PartitionTree) {
        self.tree = tree;
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn pattern(&self) -> Vec<u8> {
        self.tree.pattern(self.index)
    }

    pub fn pattern_len(&self) -> usize {
        self.tree.len()
    }

    pub fn current_count(&self) -> usize {
        self.tree.occurrences(self.index)
    }

    fn begin(&mut self) -> OpStats {
        self.stats.ops += 1;
        self.stats.last = OpStats::default();
        OpStats::default()
    }

    fn commit(&mut self, tree: PartitionTree, work: OpStats) -> usize {
        self.tree = tree;
        self.stats.last = work;
        self.stats.total.add(work);
        self.current_count()
    }

    /// Replace the pattern, partitioning it greedily by longest occurring
    /// prefix. Symbols missing from the text become alien pieces.
    pub fn set_pattern(&mut self, pattern: &[u8]) -> usize {
        let work = self.begin();
        let mut pieces = Vec::new();
        let mut pos = 0;
        while pos < pattern.len() {
            let (len, range) = self.index.longest_prefix_match(&pattern[pos..]);
            if len == 0 {
                pieces.push(Piece::alien(pattern[pos]));
                pos += 1;
            } else {
                pieces.push(Piece::occurring(len, range));
                pos += len;
            }
        }
        self.commit(PartitionTree::from_pieces(&pieces), work)
    }

    /// Insert `c` so that it becomes the symbol at position `i`.
    pub fn insert_char(&mut self, i: usize, c: u8) -> Result<usize> {
        let len = self.tree.len();
        if i > len {
            return Err(Error::OutOfRange { pos: i, len });
        }
        let mut work = self.begin();
        let idx = self.index;
        let (left, right) = self.tree.split_at(idx, i)?;
        let tree = left.push_back(Piece::for_symbol(idx, c)).join(&right);
        let tree = tree.repair_seam(idx, i, &mut work)?;
        let tree = tree.repair_seam(idx, i + 1, &mut work)?;
        Ok(self.commit(tree, work))
    }

    pub fn delete_char(&mut self, i: usize) -> Result<usize> {
        let len = self.tree.len();
        if i >= len {
            return Err(Error::OutOfRange { pos: i, len });
        }
        self.delete_substring(i, i + 1)
    }

    /// Remove `[i, j)`.
    pub fn delete_substring(&mut self, i: usize, j: usize) -> Result<usize> {
        let len = self.tree.len();
        check_span(i, j, len)?;
        let mut work = self.begin();
        if i == j {
            return Ok(self.commit(self.tree.clone(), work));
        }
        let idx = self.index;
        let (left, rest) = self.tree.split_at(idx, i)?;
        let (_, right) = rest.split_at(idx, j - i)?;
        let tree = left.join(&right).repair_seam(idx, i, &mut work)?;
        Ok(self.commit(tree, work))
    }

    /// Cut `[i, j)` and reinsert it at position `k` of what remains.
    pub fn move_substring(&mut self, i: usize, j: usize, k: usize) -> Result<usize> {
        let len = self.tree.len();
        check_span(i, j, len)?;
        let moved = j - i;
        if k > len - moved {
            return Err(Error::OutOfRange {
                pos: k,
                len: len - moved,
            });
        }
        let mut work = self.begin();
        if moved == 0 || moved == len {
            return Ok(self.commit(self.tree.clone(), work));
        }
        let idx = self.index;
        let (left, rest) = self.tree.split_at(idx, i)?;
        let (middle, right) = rest.split_at(idx, moved)?;
        let remainder = left.join(&right).repair_seam(idx, i, &mut work)?;
        let (head, tail) = remainder.split_at(idx, k)?;
        let tree = head.join(&middle).join(&tail);
        let tree = tree.repair_seam(idx, k, &mut work)?;
        let tree = tree.repair_seam(idx, k + moved, &mut work)?;
        Ok(self.commit(tree, work))
    }

    /// Paste a copy of `[i, j)` at position `k`. The copied pieces are shared
    /// with the source, so the cost does not depend on `j - i`.
    pub fn copy_substring(&mut self, i: usize, j: usize, k: usize) -> Result<usize> {
        let len = self.tree.len();
        check_span(i, j, len)?;
        if k > len {
            return Err(Error::OutOfRange { pos: k, len });
        }
        let mut work = self.begin();
        if i == j {
            return Ok(self.commit(self.tree.clone(), work));
        }
        let idx = self.index;
        let (_, rest) = self.tree.split_at(idx, i)?;
        let (copied, _) = rest.split_at(idx, j - i)?;
        let (head, tail) = self.tree.split_at(idx, k)?;
        let tree = head.join(&copied).join(&tail);
        let tree = tree.repair_seam(idx, k, &mut work)?;
        let tree = tree.repair_seam(idx, k + (j - i), &mut work)?;
        Ok(self.commit(tree, work))
    }

    pub fn apply(&mut self, op: &EditOp) -> Result<usize> {
        match *op {
            EditOp::Search(ref p) => Ok(self.set_pattern(p)),
            EditOp::Insert { pos, symbol } => self.insert_char(pos, symbol),
            EditOp::Delete { pos } => self.delete_char(pos),
            EditOp::DeleteRange { start, end } => self.delete_substring(start, end),
            EditOp::Move { start, end, dest } => self.move_substring(start, end, dest),
            EditOp::Copy { start, end, dest } => self.copy_substring(start, end, dest),
            EditOp::Count => {
                self.begin();
                Ok(self.current_count())
            }
        }
    }
}

fn check_span(start: usize, end: usize, len: usize) -> Result<()> {
    if start > end || end > len {
        return Err(Error::InvalidSpan { start, end, len });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG: &[u8] = b"abacabababaaca";

    fn spell(s: &Session) -> Vec<String> {
        s.tree()
            .pieces()
            .iter()
            .map(|p| String::from_utf8_lossy(p.content(s.index())).into_owned())
            .collect()
    }

    #[test]
    fn greedy_search() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let mut s = Session::new(&idx);
        assert_eq!(s.set_pattern(b"abcaabb"), 0);
        assert_eq!(spell(&s), ["ab", "ca", "ab", "b"]);

        let idx = TextIndex::build(FIG).unwrap();
        let mut s = Session::new(&idx);
        assert_eq!(s.set_pattern(b"aba"), 4);
        assert_eq!(s.current_count(), 4);

        let idx = TextIndex::build(b"aabcaba").unwrap();
        let mut s = Session::new(&idx);
        assert_eq!(s.set_pattern(b"abaaba"), 0);
        assert_eq!(s.tree().piece_count(), 2);
    }

    #[test]
    fn worked_insert() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let mut s = Session::new(&idx);
        let start: Vec<Piece> = ["ab", "c", "aa", "b", "b"]
            .iter()
            .map(|p| Piece::occurring(p.len(), idx.sr_fast(p.as_bytes())))
            .collect();
        s.restore(PartitionTree::from_pieces(&start));
        assert_eq!(s.insert_char(4, b'b'), Ok(0));
        assert_eq!(spell(&s), ["ab", "cabab", "b"]);
        assert_eq!(s.stats().last.merges, 4);
        assert_eq!(s.pattern(), b"abcababb");

        // From the greedy partition (ab, ca, ab, b) the new symbol lands on a
        // piece boundary and only two merges are needed.
        s.set_pattern(b"abcaabb");
        assert_eq!(s.insert_char(4, b'b'), Ok(0));
        assert_eq!(spell(&s), ["ab", "cabab", "b"]);
        assert_eq!(s.stats().last.merges, 2);

        // Undo it again; the count matches a fresh search.
        assert_eq!(s.delete_char(4), Ok(0));
        assert_eq!(s.pattern(), b"abcaabb");
        assert!(s.tree().is_maximal(&idx));
    }

    #[test]
    fn character_edits() {
        let idx = TextIndex::build(FIG).unwrap();
        let mut s = Session::new(&idx);
        assert_eq!(s.current_count(), 15);
        s.set_pattern(b"ab");
        assert_eq!(s.insert_char(2, b'a'), Ok(4));
        s.set_pattern(b"abba");
        assert_eq!(s.delete_char(2), Ok(4));
        s.set_pattern(b"a");
        assert_eq!(s.delete_char(0), Ok(15));
        assert_eq!(s.insert_char(0, b'z'), Ok(0));
        assert_eq!(s.insert_char(2, b'a'), Err(Error::OutOfRange { pos: 2, len: 1 }));
        assert_eq!(s.delete_char(1), Err(Error::OutOfRange { pos: 1, len: 1 }));
        assert_eq!(s.pattern(), b"z");
    }

    #[test]
    fn substring_edits() {
        let idx = TextIndex::build(FIG).unwrap();
        let mut s = Session::new(&idx);
        s.set_pattern(b"abzzzba");
        assert_eq!(s.delete_substring(2, 5), Ok(0));
        assert_eq!(s.pattern(), b"abba");
        assert_eq!(s.delete_substring(1, 1), Ok(0));
        assert_eq!(s.delete_substring(0, 4), Ok(15));

        s.set_pattern(b"baa");
        assert_eq!(s.move_substring(0, 1, 2), Ok(0));
        assert_eq!(s.pattern(), b"aab");
        s.set_pattern(b"baa");
        assert_eq!(s.move_substring(0, 1, 1), Ok(4));
        assert_eq!(s.pattern(), b"aba");
        assert_eq!(s.move_substring(0, 3, 0), Ok(4));
        assert_eq!(s.move_substring(1, 2, 1), Ok(4));

        assert_eq!(s.copy_substring(1, 3, 3), Ok(2));
        assert_eq!(s.pattern(), b"ababa");
        assert_eq!(s.copy_substring(2, 2, 0), Ok(2));

        let idx = TextIndex::build(b"aabcaba").unwrap();
        let mut s = Session::new(&idx);
        s.set_pattern(b"aba");
        assert_eq!(s.copy_substring(0, 3, 3), Ok(0));
        assert_eq!(s.tree().piece_count(), 2);
    }

    #[test]
    fn rejects_bad_spans_without_changing_state() {
        let idx = TextIndex::build(FIG).unwrap();
        let mut s = Session::new(&idx);
        s.set_pattern(b"aba");
        assert!(s.delete_substring(2, 1).is_err());
        assert!(s.delete_substring(0, 4).is_err());
        assert!(s.move_substring(0, 2, 2).is_err());
        assert!(s.copy_substring(0, 1, 4).is_err());
        assert_eq!(s.pattern(), b"aba");
        assert_eq!(s.current_count(), 4);
    }

    #[test]
    fn snapshots_survive_edits() {
        let idx = TextIndex::build(FIG).unwrap();
        let mut s = Session::new(&idx);
        s.set_pattern(b"aba");
        let before = s.snapshot();
        s.copy_substring(0, 3, 3).unwrap();
        s.delete_char(0).unwrap();
        assert_eq!(before.occurrences(&idx), 4);
        assert_eq!(before.pattern(&idx), b"aba");
    }
}

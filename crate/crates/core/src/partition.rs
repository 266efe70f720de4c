//! Occurrence partitions stored in a persistent AVL tree.
//!
//! The pattern is kept as a sequence of pieces. Every piece either occurs in
//! the text (and carries its suffix range) or is a single symbol the text
//! does not contain. Adjacent pieces never concatenate to a string occurring
//! in the text, so the pattern occurs iff the partition is one occurring
//! piece.
//!
//! Nodes are immutable and shared through `Arc`; every update copies only the
//! root-to-leaf paths it touches. Old versions stay valid, and one subtree
//! may appear several times in the same tree.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::range::RangedString;
use crate::text_index::{SuffixRange, TextIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    len: usize,
    range: SuffixRange,
    alien: Option<u8>,
}

impl Piece {
    /// A piece occurring in the text. `range` must be non-empty.
    pub fn occurring(len: usize, range: SuffixRange) -> Self {
        debug_assert!(len > 0 && !range.is_empty());
        Piece {
            len,
            range,
            alien: None,
        }
    }

    /// A single symbol that does not occur in the text.
    pub fn alien(symbol: u8) -> Self {
        Piece {
            len: 1,
            range: SuffixRange::EMPTY,
            alien: Some(symbol),
        }
    }

    /// The one-symbol piece for `c`, alien if the text lacks it.
    pub fn for_symbol(idx: &TextIndex, c: u8) -> Self {
        let range = idx.sr_of_char(c);
        if range.is_empty() {
            Piece::alien(c)
        } else {
            Piece::occurring(1, range)
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn range(&self) -> SuffixRange {
        self.range
    }

    pub fn alien_symbol(&self) -> Option<u8> {
        self.alien
    }

    pub fn is_alien(&self) -> bool {
        self.alien.is_some()
    }

    pub fn as_ranged(&self) -> RangedString {
        RangedString::new(self.len, self.range)
    }

    /// The symbols this piece spells.
    pub fn content<'a>(&'a self, idx: &'a TextIndex) -> &'a [u8] {
        match &self.alien {
            Some(symbol) => std::slice::from_ref(symbol),
            None => &idx.suffix(self.range.lo)[..self.len],
        }
    }

    /// Divide an occurring piece at `offset`, `0 < offset < len`.
    fn split(&self, idx: &TextIndex, offset: usize) -> Result<(Piece, Piece)> {
        let whole = self.as_ranged();
        let left = idx.drop_back(whole, self.len - offset)?;
        let right = idx.drop_front(whole, offset)?;
        Ok((
            Piece::occurring(offset, left),
            Piece::occurring(self.len - offset, right),
        ))
    }
}

/// Concatenation attempts made while restoring maximality.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    /// Calls to suffix-range concatenation.
    pub concat_calls: u64,
    /// Concatenations that produced a non-empty range (pieces merged).
    pub merges: u64,
}

impl OpStats {
    pub fn add(&mut self, other: OpStats) {
        self.concat_calls += other.concat_calls;
        self.merges += other.merges;
    }
}

/// The merged piece if `a ∘ b` occurs in the text.
fn try_merge(idx: &TextIndex, a: &Piece, b: &Piece, stats: &mut OpStats) -> Option<Piece> {
    if a.is_alien() || b.is_alien() {
        return None;
    }
    stats.concat_calls += 1;
    let range = idx
        .concat(a.as_ranged(), b.as_ranged())
        .expect("occurring pieces carry non-empty ranges");
    if range.is_empty() {
        None
    } else {
        stats.merges += 1;
        Some(Piece::occurring(a.len + b.len, range))
    }
}

type Link = Option<Arc<Node>>;

#[derive(Debug)]
struct Node {
    piece: Piece,
    left: Link,
    right: Link,
    height: u32,
    /// Symbols in this subtree.
    len: usize,
    /// Pieces in this subtree.
    count: usize,
}

fn height(t: &Link) -> u32 {
    t.as_ref().map_or(0, |n| n.height)
}

fn symbols(t: &Link) -> usize {
    t.as_ref().map_or(0, |n| n.len)
}

fn count(t: &Link) -> usize {
    t.as_ref().map_or(0, |n| n.count)
}

fn node(left: Link, piece: Piece, right: Link) -> Link {
    Some(Arc::new(Node {
        height: 1 + height(&left).max(height(&right)),
        len: symbols(&left) + piece.len + symbols(&right),
        count: count(&left) + 1 + count(&right),
        piece,
        left,
        right,
    }))
}

/// Node construction when the child heights differ by at most two.
fn balance(left: Link, piece: Piece, right: Link) -> Link {
    let (hl, hr) = (height(&left), height(&right));
    if hl > hr + 1 {
        let l = left.as_ref().unwrap();
        if height(&l.left) >= height(&l.right) {
            node(l.left.clone(), l.piece, node(l.right.clone(), piece, right))
        } else {
            let lr = l.right.as_ref().unwrap();
            node(
                node(l.left.clone(), l.piece, lr.left.clone()),
                lr.piece,
                node(lr.right.clone(), piece, right),
            )
        }
    } else if hr > hl + 1 {
        let r = right.as_ref().unwrap();
        if height(&r.right) >= height(&r.left) {
            node(node(left, piece, r.left.clone()), r.piece, r.right.clone())
        } else {
            let rl = r.left.as_ref().unwrap();
            node(
                node(left, piece, rl.left.clone()),
                rl.piece,
                node(rl.right.clone(), r.piece, r.right.clone()),
            )
        }
    } else {
        node(left, piece, right)
    }
}

/// `left ++ [piece] ++ right` for arbitrary heights.
fn join3(left: Link, piece: Piece, right: Link) -> Link {
    let (hl, hr) = (height(&left), height(&right));
    if hl > hr + 1 {
        let l = left.as_ref().unwrap();
        balance(l.left.clone(), l.piece, join3(l.right.clone(), piece, right))
    } else if hr > hl + 1 {
        let r = right.as_ref().unwrap();
        balance(join3(left, piece, r.left.clone()), r.piece, r.right.clone())
    } else {
        node(left, piece, right)
    }
}

fn pop_last(t: &Arc<Node>) -> (Link, Piece) {
    match &t.right {
        None => (t.left.clone(), t.piece),
        Some(r) => {
            let (rest, last) = pop_last(r);
            (balance(t.left.clone(), t.piece, rest), last)
        }
    }
}

fn pop_first(t: &Arc<Node>) -> (Piece, Link) {
    match &t.left {
        None => (t.piece, t.right.clone()),
        Some(l) => {
            let (first, rest) = pop_first(l);
            (first, balance(rest, t.piece, t.right.clone()))
        }
    }
}

fn join2(left: Link, right: Link) -> Link {
    match (&left, &right) {
        (None, _) => right,
        (_, None) => left,
        (Some(l), _) => {
            let (rest, last) = pop_last(l);
            join3(rest, last, right)
        }
    }
}

/// First `k` pieces and the rest.
fn split_count(t: &Link, k: usize) -> (Link, Link) {
    let Some(n) = t else {
        return (None, None);
    };
    let lc = count(&n.left);
    if k <= lc {
        let (a, b) = split_count(&n.left, k);
        (a, join3(b, n.piece, n.right.clone()))
    } else {
        let (a, b) = split_count(&n.right, k - lc - 1);
        (join3(n.left.clone(), n.piece, a), b)
    }
}

/// Symbols `[0, i)` and `[i, len)`, dividing a piece when `i` falls inside it.
fn split_symbols(idx: &TextIndex, t: &Link, i: usize) -> Result<(Link, Link)> {
    let Some(n) = t else {
        return Ok((None, None));
    };
    let ll = symbols(&n.left);
    let piece_end = ll + n.piece.len;
    if i <= ll {
        let (a, b) = split_symbols(idx, &n.left, i)?;
        Ok((a, join3(b, n.piece, n.right.clone())))
    } else if i >= piece_end {
        let (a, b) = split_symbols(idx, &n.right, i - piece_end)?;
        Ok((join3(n.left.clone(), n.piece, a), b))
    } else {
        let (head, tail) = n.piece.split(idx, i - ll)?;
        Ok((
            join3(n.left.clone(), head, None),
            join3(None, tail, n.right.clone()),
        ))
    }
}

fn build(pieces: &[Piece]) -> Link {
    if pieces.is_empty() {
        return None;
    }
    let mid = pieces.len() / 2;
    node(build(&pieces[..mid]), pieces[mid], build(&pieces[mid + 1..]))
}

fn collect(t: &Link, out: &mut Vec<Piece>) {
    if let Some(n) = t {
        collect(&n.left, out);
        out.push(n.piece);
        collect(&n.right, out);
    }
}

/// Persistent sequence of pieces indexed by pattern position.
///
/// Cloning is `O(1)` and yields an independent version.
#[derive(Debug, Clone, Default)]
pub struct PartitionTree {
    root: Link,
}

impl PartitionTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pieces(pieces: &[Piece]) -> Self {
        PartitionTree {
            root: build(pieces),
        }
    }

    /// Pattern length in symbols.
    pub fn len(&self) -> usize {
        symbols(&self.root)
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn piece_count(&self) -> usize {
        count(&self.root)
    }

    pub fn height(&self) -> u32 {
        height(&self.root)
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.piece_count());
        collect(&self.root, &mut out);
        out
    }

    pub fn piece(&self, k: usize) -> Option<Piece> {
        let mut t = &self.root;
        let mut k = k;
        while let Some(n) = t {
            let lc = count(&n.left);
            if k < lc {
                t = &n.left;
            } else if k == lc {
                return Some(n.piece);
            } else {
                k -= lc + 1;
                t = &n.right;
            }
        }
        None
    }

    /// Index of the piece holding pattern position `i`, and `i`'s offset
    /// inside that piece.
    pub fn locate(&self, i: usize) -> Result<(usize, usize)> {
        let len = self.len();
        if i >= len {
            return Err(Error::OutOfRange { pos: i, len });
        }
        let (mut t, mut i, mut before) = (&self.root, i, 0);
        while let Some(n) = t {
            let ll = symbols(&n.left);
            if i < ll {
                t = &n.left;
            } else if i < ll + n.piece.len {
                return Ok((before + count(&n.left), i - ll));
            } else {
                i -= ll + n.piece.len;
                before += count(&n.left) + 1;
                t = &n.right;
            }
        }
        unreachable!("position checked against subtree length")
    }

    /// Cut the pattern before position `i`.
    pub fn split_at(&self, idx: &TextIndex, i: usize) -> Result<(Self, Self)> {
        let len = self.len();
        if i > len {
            return Err(Error::OutOfRange { pos: i, len });
        }
        let (a, b) = split_symbols(idx, &self.root, i)?;
        Ok((PartitionTree { root: a }, PartitionTree { root: b }))
    }

    /// The first `k` pieces and the remaining ones.
    pub fn split_pieces(&self, k: usize) -> (Self, Self) {
        let (a, b) = split_count(&self.root, k);
        (PartitionTree { root: a }, PartitionTree { root: b })
    }

    /// `self` followed by `other`. No pieces are merged.
    pub fn join(&self, other: &Self) -> Self {
        PartitionTree {
            root: join2(self.root.clone(), other.root.clone()),
        }
    }

    pub fn push_back(&self, piece: Piece) -> Self {
        PartitionTree {
            root: join3(self.root.clone(), piece, None),
        }
    }

    /// Restore maximality around the seam at pattern position `pos`.
    ///
    /// Pieces within two of the seam on either side are merged to a
    /// fixpoint. A merged piece at the edge of that window is then offered to
    /// its outer neighbour, which only succeeds when the neighbour itself is
    /// new; pieces that were maximal before the edit block any further
    /// cascade.
    pub fn repair_seam(&self, idx: &TextIndex, pos: usize, stats: &mut OpStats) -> Result<Self> {
        let len = self.len();
        if pos > len {
            return Err(Error::OutOfRange { pos, len });
        }
        let k = self.piece_count();
        if k <= 1 {
            return Ok(self.clone());
        }
        let (b, offset) = if pos == len { (k, 0) } else { self.locate(pos)? };
        let lo = b.saturating_sub(2);
        let hi = (b + if offset == 0 { 2 } else { 3 }).min(k);
        let (mut left, rest) = split_count(&self.root, lo);
        let (mid, mut right) = split_count(&rest, hi - lo);

        let mut window = Vec::with_capacity(hi - lo);
        collect(&mid, &mut window);
        // (piece, produced by a merge during this repair)
        let mut stack: Vec<(Piece, bool)> = Vec::with_capacity(window.len());
        for piece in window {
            stack.push((piece, false));
            while stack.len() >= 2 {
                let (a, _) = stack[stack.len() - 2];
                let (c, _) = stack[stack.len() - 1];
                match try_merge(idx, &a, &c, stats) {
                    Some(merged) => {
                        stack.truncate(stack.len() - 2);
                        stack.push((merged, true));
                    }
                    None => break,
                }
            }
        }

        while stack[0].1 {
            let Some(l) = &left else { break };
            let (rest, last) = pop_last(l);
            match try_merge(idx, &last, &stack[0].0, stats) {
                Some(merged) => {
                    stack[0].0 = merged;
                    left = rest;
                }
                None => break,
            }
        }
        while stack[stack.len() - 1].1 {
            let Some(r) = &right else { break };
            let (first, rest) = pop_first(r);
            let top = stack.len() - 1;
            match try_merge(idx, &stack[top].0, &first, stats) {
                Some(merged) => {
                    stack[top].0 = merged;
                    right = rest;
                }
                None => break,
            }
        }

        let window: Vec<Piece> = stack.into_iter().map(|(p, _)| p).collect();
        Ok(PartitionTree {
            root: join2(join2(left, build(&window)), right),
        })
    }

    /// Occurrences of the represented pattern in a text of length `n`.
    ///
    /// The empty pattern occurs `n + 1` times, once per position including
    /// the end.
    pub fn occurrences(&self, idx: &TextIndex) -> usize {
        match &self.root {
            None => idx.len() + 1,
            Some(n) if n.count == 1 && !n.piece.is_alien() => n.piece.range.count(),
            Some(_) => 0,
        }
    }

    /// The represented pattern, spelled out.
    pub fn pattern(&self, idx: &TextIndex) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        for piece in self.pieces() {
            out.extend_from_slice(piece.content(idx));
        }
        out
    }

    /// Whether no two adjacent pieces concatenate to an occurring string.
    pub fn is_maximal(&self, idx: &TextIndex) -> bool {
        let mut scratch = OpStats::default();
        self.pieces()
            .windows(2)
            .all(|w| try_merge(idx, &w[0], &w[1], &mut scratch).is_none())
    }

    /// One `(len, lo, hi, alien)` tuple per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in self.pieces() {
            let alien = match p.alien {
                Some(b) => format!("0x{b:02x}"),
                None => "-".to_string(),
            };
            let _ = writeln!(out, "({}, {}, {}, {})", p.len, p.range.lo, p.range.hi, alien);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_structure(t: &Link) -> (u32, usize, usize) {
        match t {
            None => (0, 0, 0),
            Some(n) => {
                let (hl, ll, cl) = check_structure(&n.left);
                let (hr, lr, cr) = check_structure(&n.right);
                assert!(hl.abs_diff(hr) <= 1, "unbalanced node");
                assert_eq!(n.height, 1 + hl.max(hr));
                assert_eq!(n.len, ll + lr + n.piece.len);
                assert_eq!(n.count, cl + cr + 1);
                (n.height, n.len, n.count)
            }
        }
    }

    fn spell(idx: &TextIndex, t: &PartitionTree) -> Vec<String> {
        t.pieces()
            .iter()
            .map(|p| String::from_utf8_lossy(p.content(idx)).into_owned())
            .collect()
    }

    fn partition(idx: &TextIndex, parts: &[&str]) -> PartitionTree {
        let pieces: Vec<Piece> = parts
            .iter()
            .map(|s| {
                let r = idx.sr_slow(s.as_bytes());
                if r.is_empty() {
                    assert_eq!(s.len(), 1);
                    Piece::alien(s.as_bytes()[0])
                } else {
                    Piece::occurring(s.len(), r)
                }
            })
            .collect();
        PartitionTree::from_pieces(&pieces)
    }

    #[test]
    fn locate_pieces() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let t = partition(&idx, &["ab", "c", "aa", "b", "b"]);
        assert_eq!(t.locate(4), Ok((2, 1)));
        assert_eq!(t.locate(0), Ok((0, 0)));
        assert_eq!(t.locate(7), Err(Error::OutOfRange { pos: 7, len: 7 }));

        let idx = TextIndex::build(b"aabcaba").unwrap();
        let t = partition(&idx, &["aba", "aba"]);
        assert_eq!(t.locate(3), Ok((1, 0)));
    }

    #[test]
    fn split_inside_piece() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let t = partition(&idx, &["ab", "c", "aa", "b", "b"]);
        let (l, r) = t.split_at(&idx, 4).unwrap();
        assert_eq!(spell(&idx, &l), ["ab", "c", "a"]);
        assert_eq!(spell(&idx, &r), ["a", "b", "b"]);
        // The original version is untouched.
        assert_eq!(spell(&idx, &t), ["ab", "c", "aa", "b", "b"]);

        let (l, r) = t.split_at(&idx, 0).unwrap();
        assert!(l.is_empty());
        assert_eq!(r.pieces(), t.pieces());
        assert!(t.split_at(&idx, 8).is_err());
    }

    #[test]
    fn split_on_boundary() {
        let idx = TextIndex::build(b"aabcaba").unwrap();
        let t = partition(&idx, &["aba", "aba"]);
        let (l, r) = t.split_at(&idx, 3).unwrap();
        assert_eq!(spell(&idx, &l), ["aba"]);
        assert_eq!(spell(&idx, &r), ["aba"]);
    }

    #[test]
    fn join_is_structural() {
        let idx = TextIndex::build(b"aabcaba").unwrap();
        let aba = partition(&idx, &["aba"]);
        let t = PartitionTree::new().join(&aba);
        assert_eq!(t.pieces(), aba.pieces());
        let both = aba.join(&aba);
        assert_eq!(spell(&idx, &both), ["aba", "aba"]);
        assert!(both.is_maximal(&idx));

        let idx = TextIndex::build(b"cababaa").unwrap();
        let t = partition(&idx, &["ca"]).join(&partition(&idx, &["b"]));
        assert_eq!(spell(&idx, &t), ["ca", "b"]);
        assert!(!t.is_maximal(&idx));
    }

    #[test]
    fn repair_after_insert() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let t = partition(&idx, &["ab", "c", "a", "b", "a", "b", "b"]);
        let mut stats = OpStats::default();
        let t = t.repair_seam(&idx, 4, &mut stats).unwrap();
        let t = t.repair_seam(&idx, 5, &mut stats).unwrap();
        assert_eq!(spell(&idx, &t), ["ab", "cabab", "b"]);
        assert_eq!(stats.merges, 4);
        assert!(t.is_maximal(&idx));
    }

    #[test]
    fn repair_leaves_maximal_trees_alone() {
        let idx = TextIndex::build(b"cababaa").unwrap();
        let t = partition(&idx, &["ab", "c", "aa", "b", "b"]);
        let mut stats = OpStats::default();
        let fixed = t.repair_seam(&idx, 3, &mut stats).unwrap();
        assert_eq!(fixed.pieces(), t.pieces());
        assert_eq!(stats.merges, 0);
        assert!(stats.concat_calls <= 4);

        let single = partition(&idx, &["cab"]);
        let fixed = single.repair_seam(&idx, 1, &mut stats).unwrap();
        assert_eq!(fixed.pieces(), single.pieces());
    }

    #[test]
    fn aliens_never_merge() {
        let idx = TextIndex::build(b"abab").unwrap();
        let t = partition(&idx, &["ab", "z", "ab"]);
        let mut stats = OpStats::default();
        let fixed = t.repair_seam(&idx, 2, &mut stats).unwrap();
        assert_eq!(spell(&idx, &fixed), ["ab", "z", "ab"]);
        assert_eq!(stats.concat_calls, 0);
        assert_eq!(fixed.occurrences(&idx), 0);
        assert_eq!(partition(&idx, &["z"]).occurrences(&idx), 0);
    }

    #[test]
    fn occurrence_counts() {
        let idx = TextIndex::build(b"abacabababaaca").unwrap();
        assert_eq!(partition(&idx, &["aba"]).occurrences(&idx), 4);
        assert_eq!(partition(&idx, &["ca", "ca"]).occurrences(&idx), 0);
        assert_eq!(PartitionTree::new().occurrences(&idx), 15);
    }

    #[test]
    fn stays_balanced_under_repeated_self_joins() {
        let idx = TextIndex::build(b"ab").unwrap();
        let mut t = partition(&idx, &["a", "b"]);
        for _ in 0..20 {
            t = t.join(&t);
            check_structure(&t.root);
        }
        assert_eq!(t.piece_count(), 2 << 20);
        assert!(t.height() <= 30);
        let (l, r) = t.split_at(&idx, 12345).unwrap();
        check_structure(&l.root);
        check_structure(&r.root);
        assert_eq!(l.len(), 12345);
        assert_eq!(t.piece(12345).unwrap(), l.join(&r).piece(12345).unwrap());
    }

    #[test]
    fn dump_lists_pieces() {
        let idx = TextIndex::build(b"abab").unwrap();
        let t = partition(&idx, &["ab", "z"]);
        assert_eq!(t.dump(), "(2, 0, 2, -)\n(1, 0, 0, 0x7a)\n");
    }
}

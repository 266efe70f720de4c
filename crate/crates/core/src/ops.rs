//! Pattern edit operations shared by the engine, the naive reference and the
//! script front end.
//!
//! Spans are half-open. `Copy::dest` indexes the pattern before the copy;
//! `Move::dest` indexes the pattern after the moved span has been removed.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditOp {
    /// Replace the pattern.
    Search(Vec<u8>),
    /// Insert `symbol` so that it ends up at position `pos`.
    Insert { pos: usize, symbol: u8 },
    /// Delete the symbol at `pos`.
    Delete { pos: usize },
    /// Delete `[start, end)`.
    DeleteRange { start: usize, end: usize },
    /// Cut `[start, end)` and paste it at `dest` of the remainder.
    Move { start: usize, end: usize, dest: usize },
    /// Paste a copy of `[start, end)` at `dest`.
    Copy { start: usize, end: usize, dest: usize },
    /// Report the current count without editing.
    Count,
}

impl EditOp {
    /// Pattern length after applying the op to a pattern of length `len`,
    /// or `None` when the op's positions are out of range.
    pub fn resulting_len(&self, len: usize) -> Option<usize> {
        match *self {
            EditOp::Search(ref p) => Some(p.len()),
            EditOp::Insert { pos, .. } => (pos <= len).then_some(len + 1),
            EditOp::Delete { pos } => (pos < len).then(|| len - 1),
            EditOp::DeleteRange { start, end } => {
                (start <= end && end <= len).then(|| len - (end - start))
            }
            EditOp::Move { start, end, dest } => {
                (start <= end && end <= len && dest <= len - (end - start)).then_some(len)
            }
            EditOp::Copy { start, end, dest } => {
                (start <= end && end <= len && dest <= len).then(|| len + (end - start))
            }
            EditOp::Count => Some(len),
        }
    }
}

/// Writes a byte string using the script token escapes: printable,
/// non-whitespace ASCII verbatim except `#` (which starts a comment),
/// `\\` for a backslash, `\xHH` otherwise.
pub fn escape_token(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        match b {
            b'\\' => out.push_str("\\\\"),
            b'!'..=b'~' if b != b'#' => out.push(b as char),
            _ => out.push_str(&format!("\\x{b:02x}")),
        }
    }
    out
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::Search(p) if p.is_empty() => write!(f, "search"),
            EditOp::Search(p) => write!(f, "search {}", escape_token(p)),
            EditOp::Insert { pos, symbol } => {
                write!(f, "insert {pos} {}", escape_token(&[*symbol]))
            }
            EditOp::Delete { pos } => write!(f, "delete {pos}"),
            EditOp::DeleteRange { start, end } => write!(f, "delsub {start} {end}"),
            EditOp::Move { start, end, dest } => write!(f, "move {start} {end} {dest}"),
            EditOp::Copy { start, end, dest } => write!(f, "copy {start} {end} {dest}"),
            EditOp::Count => write!(f, "count"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_script_grammar() {
        assert_eq!(EditOp::Search(b"a b\\".to_vec()).to_string(), "search a\\x20b\\\\");
        assert_eq!(EditOp::Insert { pos: 4, symbol: b'b' }.to_string(), "insert 4 b");
        assert_eq!(
            EditOp::Move { start: 0, end: 1, dest: 2 }.to_string(),
            "move 0 1 2"
        );
    }

    #[test]
    fn resulting_lengths() {
        assert_eq!(EditOp::Delete { pos: 3 }.resulting_len(3), None);
        assert_eq!(EditOp::Copy { start: 1, end: 3, dest: 3 }.resulting_len(3), Some(5));
        assert_eq!(EditOp::Move { start: 0, end: 2, dest: 2 }.resulting_len(3), None);
        assert_eq!(EditOp::Move { start: 0, end: 2, dest: 1 }.resulting_len(3), Some(3));
    }
}

//! Dynamic pattern matching against a static text.
//!
//! A [`TextIndex`] is built once over the text (suffix array, inverse suffix
//! array, LCP array and a range-minimum structure). A [`Session`] then keeps
//! the current pattern as an occurrence partition: a sequence of pieces, each
//! of which occurs in the text (or is a single symbol the text lacks), held in
//! a persistent balanced tree. Every edit touches a constant number of pieces,
//! so the occurrence count is available after each operation in
//! `O(log |T|)` time.
//!
//! ```
//! use dynpat::{Session, TextIndex};
//!
//! let index = TextIndex::build(b"abacabababaaca").unwrap();
//! let mut session = Session::new(&index);
//! assert_eq!(session.set_pattern(b"ab"), 4);
//! assert_eq!(session.insert_char(2, b'a').unwrap(), 4);
//! assert_eq!(session.copy_substring(1, 3, 3).unwrap(), 2);
//! assert_eq!(session.pattern(), b"ababa");
//! ```

mod error;

pub mod engine;
pub mod ops;
pub mod oracle;
pub mod partition;
pub mod range;
pub mod text_index;
pub mod workload;

pub use engine::{OpStats, Session, Stats};
pub use error::{Error, Result};
pub use ops::EditOp;
pub use partition::{PartitionTree, Piece};
pub use range::RangedString;
pub use text_index::{IndexOptions, RmqKind, SaAlgorithm, SuffixRange, TextIndex};

//! Line-oriented op scripts.
//!
//! One operation per line, whitespace-separated tokens:
//!
//! ```text
//! search <token>        # <token> may be omitted for the empty pattern
//! insert <i> <symbol>
//! delete <i>
//! delsub <i> <j>
//! move <i> <j> <k>
//! copy <i> <j> <k>
//! count
//! ```
//!
//! Blank lines and lines starting with `#` are ignored, as is anything after
//! a `#` token following a complete op. Tokens are raw bytes; `\xHH` writes
//! an arbitrary byte and `\\` a backslash.

use dynpat::EditOp;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    /// 1-based line number in the source.
    pub line: usize,
    pub op: EditOp,
}

pub fn parse_script(src: &[u8]) -> Result<Vec<ScriptLine>, ParseError> {
    let mut out = Vec::new();
    for (k, raw) in src.split(|&b| b == b'\n').enumerate() {
        let line = k + 1;
        match parse_line(raw) {
            Ok(Some(op)) => out.push(ScriptLine { line, op }),
            Ok(None) => {}
            Err(message) => return Err(ParseError { line, message }),
        }
    }
    Ok(out)
}

/// `Ok(None)` for blank and comment lines.
pub fn parse_line(raw: &[u8]) -> Result<Option<EditOp>, String> {
    let mut tokens: Vec<&[u8]> = raw
        .split(|b| b.is_ascii_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if let Some(pos) = tokens.iter().position(|t| t.starts_with(b"#")) {
        tokens.truncate(pos);
    }
    let Some((&name, args)) = tokens.split_first() else {
        return Ok(None);
    };
    let name = String::from_utf8_lossy(name);
    let expect = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("`{name}` takes {n} argument(s), got {}", args.len()))
        }
    };
    let op = match name.as_ref() {
        "search" => match args {
            [] => EditOp::Search(Vec::new()),
            [p] => EditOp::Search(unescape(p)?),
            _ => return Err(format!("`search` takes one token, got {}", args.len())),
        },
        "insert" => {
            expect(2)?;
            let symbol = match unescape(args[1])?.as_slice() {
                [b] => *b,
                _ => return Err("`insert` needs exactly one symbol".into()),
            };
            EditOp::Insert {
                pos: number(args[0])?,
                symbol,
            }
        }
        "delete" => {
            expect(1)?;
            EditOp::Delete {
                pos: number(args[0])?,
            }
        }
        "delsub" => {
            expect(2)?;
            EditOp::DeleteRange {
                start: number(args[0])?,
                end: number(args[1])?,
            }
        }
        "move" => {
            expect(3)?;
            EditOp::Move {
                start: number(args[0])?,
                end: number(args[1])?,
                dest: number(args[2])?,
            }
        }
        "copy" => {
            expect(3)?;
            EditOp::Copy {
                start: number(args[0])?,
                end: number(args[1])?,
                dest: number(args[2])?,
            }
        }
        "count" => {
            expect(0)?;
            EditOp::Count
        }
        other => return Err(format!("unknown operation `{other}`")),
    };
    Ok(Some(op))
}

fn number(token: &[u8]) -> Result<usize, String> {
    std::str::from_utf8(token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("expected a position, got `{}`", String::from_utf8_lossy(token)))
}

pub fn unescape(token: &[u8]) -> Result<Vec<u8>, String> {
    let mut out = Vec::with_capacity(token.len());
    let mut i = 0;
    while i < token.len() {
        if token[i] != b'\\' {
            out.push(token[i]);
            i += 1;
            continue;
        }
        match token.get(i + 1) {
            Some(b'\\') => {
                out.push(b'\\');
                i += 2;
            }
            Some(b'x') => {
                let hex = token
                    .get(i + 2..i + 4)
                    .and_then(|h| std::str::from_utf8(h).ok())
                    .and_then(|h| u8::from_str_radix(h, 16).ok())
                    .ok_or("`\\x` must be followed by two hex digits")?;
                out.push(hex);
                i += 4;
            }
            _ => return Err("unknown escape; use `\\xHH` or `\\\\`".into()),
        }
    }
    Ok(out)
}

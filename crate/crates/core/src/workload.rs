//! Random texts and edit scripts, lockstep fuzzing against the naive
//! reference, and the engine-versus-recount benchmark.
//!
//! Everything is driven by a seeded ChaCha generator, so a seed reproduces
//! the same text, script and outcome on every platform.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Session;
use crate::error::Result;
use crate::ops::EditOp;
use crate::oracle::{naive_count, NaiveSession};
use crate::text_index::TextIndex;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The first `alphabet` lowercase letters, `1 ≤ alphabet ≤ 26`.
pub fn alphabet_symbols(alphabet: usize) -> Vec<u8> {
    (b'a'..=b'z').take(alphabet.clamp(1, 26)).collect()
}

pub fn random_text(rng: &mut impl Rng, len: usize, alphabet: usize) -> Vec<u8> {
    let symbols = alphabet_symbols(alphabet);
    (0..len).map(|_| *symbols.choose(rng).unwrap()).collect()
}

/// Generates valid edit scripts against a text, tracking only the pattern
/// length.
#[derive(Debug, Clone)]
pub struct ScriptGen {
    text: Vec<u8>,
    symbols: Vec<u8>,
    aliens: Vec<u8>,
    /// Pattern length is kept at or below this.
    pub max_pattern_len: usize,
    /// Probability that a generated symbol is absent from the text.
    pub alien_rate: f64,
}

impl ScriptGen {
    pub fn new(text: &[u8], alphabet: usize) -> Self {
        let symbols = alphabet_symbols(alphabet);
        let aliens: Vec<u8> = b"#$%ZQ"
            .iter()
            .copied()
            .chain(b'a'..=b'z')
            .filter(|c| !text.contains(c))
            .collect();
        ScriptGen {
            text: text.to_vec(),
            symbols,
            aliens,
            max_pattern_len: 64,
            alien_rate: 0.05,
        }
    }

    fn symbol(&self, rng: &mut impl Rng) -> u8 {
        if !self.aliens.is_empty() && rng.gen_bool(self.alien_rate) {
            *self.aliens.choose(rng).unwrap()
        } else {
            *self.symbols.choose(rng).unwrap()
        }
    }

    fn search_pattern(&self, rng: &mut impl Rng) -> Vec<u8> {
        let n = self.text.len();
        let cap = self.max_pattern_len.max(1);
        match rng.gen_range(0..10) {
            // A substring of the text, so that counts are often non-zero.
            0..=5 => {
                let len = rng.gen_range(1..=n.min(20).min(cap));
                let start = rng.gen_range(0..=n - len);
                self.text[start..start + len].to_vec()
            }
            6 => Vec::new(),
            _ => {
                let len = rng.gen_range(1..=12.min(cap));
                (0..len).map(|_| self.symbol(rng)).collect()
            }
        }
    }

    fn span(rng: &mut impl Rng, len: usize, max: usize) -> (usize, usize) {
        let start = rng.gen_range(0..=len);
        let end = rng.gen_range(start..=len.min(start + max));
        (start, end)
    }

    /// One operation valid for a pattern of length `len`.
    pub fn next_op(&self, rng: &mut impl Rng, len: usize) -> EditOp {
        let room = self.max_pattern_len.saturating_sub(len);
        loop {
            let op = match rng.gen_range(0..100) {
                0..=5 => EditOp::Search(self.search_pattern(rng)),
                6..=35 if room > 0 => EditOp::Insert {
                    pos: rng.gen_range(0..=len),
                    symbol: self.symbol(rng),
                },
                36..=57 if len > 0 => EditOp::Delete {
                    pos: rng.gen_range(0..len),
                },
                58..=69 => {
                    let (start, end) = Self::span(rng, len, len.max(1));
                    EditOp::DeleteRange { start, end }
                }
                70..=81 => {
                    let (start, end) = Self::span(rng, len, len);
                    let dest = rng.gen_range(0..=len - (end - start));
                    EditOp::Move { start, end, dest }
                }
                82..=95 => {
                    let (start, end) = Self::span(rng, len, room);
                    let dest = rng.gen_range(0..=len);
                    EditOp::Copy { start, end, dest }
                }
                96..=99 => EditOp::Count,
                _ => continue,
            };
            return op;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub text_len: usize,
    pub ops: usize,
    pub alphabet: usize,
    pub seed: u64,
    pub max_pattern_len: usize,
    pub alien_rate: f64,
    /// Check every adjacent piece pair for maximality after each operation.
    pub check_maximality: bool,
}

impl FuzzConfig {
    pub fn new(text_len: usize, ops: usize, alphabet: usize, seed: u64) -> Self {
        FuzzConfig {
            text_len,
            ops,
            alphabet,
            seed,
            max_pattern_len: 64,
            alien_rate: 0.05,
            check_maximality: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub step: usize,
    pub op: EditOp,
    pub engine: Result<usize>,
    pub oracle: Result<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub text: Vec<u8>,
    pub ops_run: usize,
    /// Largest merge count seen for a single-symbol insert or delete.
    pub max_char_edit_merges: u64,
    /// Largest merge count seen for a substring delete, move or copy.
    pub max_substring_merges: u64,
    pub alien_ops: usize,
    pub empty_pattern_ops: usize,
    pub nonzero_counts: usize,
    pub divergence: Option<Divergence>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Run a random script through the engine and the naive reference in
/// lockstep, stopping at the first disagreement.
pub fn fuzz(config: &FuzzConfig) -> FuzzReport {
    let mut rng = rng(config.seed);
    let text = random_text(&mut rng, config.text_len.max(1), config.alphabet);
    let index = TextIndex::build(&text).expect("text is non-empty");
    let mut gen = ScriptGen::new(&text, config.alphabet);
    gen.max_pattern_len = config.max_pattern_len;
    gen.alien_rate = config.alien_rate;

    let mut engine = Session::new(&index);
    let mut naive = NaiveSession::new(&text);
    let mut report = FuzzReport {
        text: text.clone(),
        ..FuzzReport::default()
    };

    for step in 0..config.ops {
        let op = gen.next_op(&mut rng, naive.pattern().len());
        let got = engine.apply(&op);
        let want = naive.apply(&op);
        report.ops_run += 1;

        let merges = engine.stats().last.merges;
        match op {
            EditOp::Insert { .. } | EditOp::Delete { .. } => {
                report.max_char_edit_merges = report.max_char_edit_merges.max(merges)
            }
            EditOp::DeleteRange { .. } | EditOp::Move { .. } | EditOp::Copy { .. } => {
                report.max_substring_merges = report.max_substring_merges.max(merges)
            }
            _ => {}
        }
        if naive.pattern().is_empty() {
            report.empty_pattern_ops += 1;
        }
        if engine.tree().pieces().iter().any(|p| p.is_alien()) {
            report.alien_ops += 1;
        }
        if matches!(want, Ok(c) if c > 0) && !naive.pattern().is_empty() {
            report.nonzero_counts += 1;
        }

        let reason = if got != want {
            Some("count mismatch".to_string())
        } else if engine.pattern() != naive.pattern() {
            Some("pattern mismatch".to_string())
        } else if config.check_maximality && !engine.tree().is_maximal(&index) {
            Some("partition not maximal".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            report.divergence = Some(Divergence {
                step,
                op,
                engine: got,
                oracle: want,
                reason,
            });
            break;
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub text_len: usize,
    pub ops: usize,
    pub pattern_len: usize,
    pub alphabet: usize,
    pub seed: u64,
    /// Also time a full naive recount after every edit.
    pub naive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub build_time: Duration,
    pub search_time: Duration,
    pub engine_time: Duration,
    pub naive_time: Option<Duration>,
    /// Operations where the engine and the recount disagreed.
    pub mismatches: usize,
}

impl BenchReport {
    pub fn engine_per_op(&self) -> Duration {
        per_op(self.engine_time, self.config.ops)
    }

    pub fn naive_per_op(&self) -> Option<Duration> {
        self.naive_time.map(|t| per_op(t, self.config.ops))
    }

    /// Naive recount time over engine time.
    pub fn speedup(&self) -> Option<f64> {
        self.naive_time
            .map(|naive| naive.as_secs_f64() / self.engine_time.as_secs_f64().max(1e-9))
    }

    pub fn table(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "text {}  pattern {}  ops {}  alphabet {}  seed {}\n",
            c.text_len, c.pattern_len, c.ops, c.alphabet, c.seed
        );
        out += &format!("{:<16}{:>14}{:>14}\n", "phase", "total (s)", "per op (us)");
        let row = |name: &str, total: Duration, ops: usize| {
            format!(
                "{:<16}{:>14.6}{:>14.3}\n",
                name,
                total.as_secs_f64(),
                per_op(total, ops).as_secs_f64() * 1e6
            )
        };
        out += &row("index build", self.build_time, 1);
        out += &row("initial search", self.search_time, 1);
        out += &row("engine edits", self.engine_time, c.ops);
        if let Some(naive) = self.naive_time {
            out += &row("naive recount", naive, c.ops);
        }
        if let Some(s) = self.speedup() {
            out += &format!("speedup {s:.1}x\n");
        }
        out
    }
}

fn per_op(total: Duration, ops: usize) -> Duration {
    if ops == 0 {
        Duration::ZERO
    } else {
        total / ops as u32
    }
}

/// Random single-symbol edits that keep the pattern length near its start.
pub fn random_char_edits(
    rng: &mut impl Rng,
    start_len: usize,
    ops: usize,
    alphabet: usize,
) -> Vec<EditOp> {
    let symbols = alphabet_symbols(alphabet);
    let mut len = start_len;
    (0..ops)
        .map(|_| {
            let grow = match len.cmp(&start_len) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => len == 0 || rng.gen_bool(0.5),
            };
            if grow {
                let op = EditOp::Insert {
                    pos: rng.gen_range(0..=len),
                    symbol: *symbols.choose(rng).unwrap(),
                };
                len += 1;
                op
            } else {
                len -= 1;
                EditOp::Delete {
                    pos: rng.gen_range(0..=len),
                }
            }
        })
        .collect()
}

/// Time the engine, and optionally a naive recount, over the same random
/// character edits.
pub fn bench(config: &BenchConfig) -> BenchReport {
    let mut rng = rng(config.seed);
    let text = random_text(&mut rng, config.text_len.max(1), config.alphabet);
    let pattern = random_text(&mut rng, config.pattern_len, config.alphabet);
    let edits = random_char_edits(&mut rng, config.pattern_len, config.ops, config.alphabet);

    let start = Instant::now();
    let index = TextIndex::build(&text).expect("text is non-empty");
    let build_time = start.elapsed();

    let mut session = Session::new(&index);
    let start = Instant::now();
    session.set_pattern(&pattern);
    let search_time = start.elapsed();

    let mut counts = Vec::with_capacity(edits.len());
    let start = Instant::now();
    for op in &edits {
        counts.push(session.apply(op).expect("generated edits are in range"));
    }
    let engine_time = start.elapsed();

    let mut mismatches = 0;
    let naive_time = config.naive.then(|| {
        let mut naive = NaiveSession::new(&text);
        naive.edit(&EditOp::Search(pattern.clone())).unwrap();
        let start = Instant::now();
        for (op, &count) in edits.iter().zip(&counts) {
            naive.edit(op).unwrap();
            if naive_count(naive.text(), naive.pattern()) != count {
                mismatches += 1;
            }
        }
        start.elapsed()
    });

    BenchReport {
        config: *config,
        build_time,
        search_time,
        engine_time,
        naive_time,
        mismatches,
    }
}

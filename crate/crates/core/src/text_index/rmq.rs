//! Range-minimum queries over the LCP array.

/// Which range-minimum structure a [`TextIndex`](super::TextIndex) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmqKind {
    /// `O(n log n)` words, two table lookups per query.
    #[default]
    SparseTable,
    /// Linear space: 64-element blocks with in-block bitmask stacks and a
    /// sparse table over block minima.
    Blocked,
}

#[derive(Debug, Clone)]
pub(crate) enum Rmq {
    Sparse(SparseTable),
    Blocked(BlockedRmq),
}

impl Rmq {
    pub(crate) fn new(kind: RmqKind, values: &[u32]) -> Self {
        match kind {
            RmqKind::SparseTable => Rmq::Sparse(SparseTable::new(values)),
            RmqKind::Blocked => Rmq::Blocked(BlockedRmq::new(values)),
        }
    }

    /// Minimum of `values[lo..hi]`. Requires `lo < hi`.
    #[inline]
    pub(crate) fn min(&self, values: &[u32], lo: usize, hi: usize) -> u32 {
        debug_assert!(lo < hi && hi <= values.len());
        match self {
            Rmq::Sparse(t) => t.min(lo, hi),
            Rmq::Blocked(t) => t.min(values, lo, hi),
        }
    }

    pub(crate) fn kind(&self) -> RmqKind {
        match self {
            Rmq::Sparse(_) => RmqKind::SparseTable,
            Rmq::Blocked(_) => RmqKind::Blocked,
        }
    }
}

#[inline]
fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

/// `levels[k][i]` holds the minimum of `values[i..i + 2^k]`.
#[derive(Debug, Clone)]
pub(crate) struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub(crate) fn new(values: &[u32]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    #[inline]
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        let k = floor_log2(hi - lo);
        let row = &self.levels[k];
        row[lo].min(row[hi - (1 << k)])
    }
}

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct BlockedRmq {
    // Bit j of masks[i] is set when position (block start + j) is on the
    // increasing-minimum stack after scanning up to i within its block.
    masks: Vec<u64>,
    blocks: SparseTable,
}

impl BlockedRmq {
    pub(crate) fn new(values: &[u32]) -> Self {
        let mut masks = vec![0u64; values.len()];
        let mut block_min = Vec::with_capacity(values.len().div_ceil(BLOCK));
        for (b, chunk) in values.chunks(BLOCK).enumerate() {
            let mut stack: Vec<usize> = Vec::with_capacity(BLOCK);
            let mut cur = 0u64;
            for (j, &v) in chunk.iter().enumerate() {
                while let Some(&top) = stack.last() {
                    if chunk[top] >= v {
                        cur &= !(1u64 << top);
                        stack.pop();
                    } else {
                        break;
                    }
                }
                stack.push(j);
                cur |= 1u64 << j;
                masks[b * BLOCK + j] = cur;
            }
            block_min.push(*chunk.iter().min().unwrap());
        }
        BlockedRmq {
            masks,
            blocks: SparseTable::new(&block_min),
        }
    }

    // Minimum over the closed interval [l, r] inside a single block.
    #[inline]
    fn in_block(&self, values: &[u32], l: usize, r: usize) -> u32 {
        let start = l - l % BLOCK;
        let m = self.masks[r] & (!0u64 << (l - start));
        values[start + m.trailing_zeros() as usize]
    }

    #[inline]
    pub(crate) fn min(&self, values: &[u32], lo: usize, hi: usize) -> u32 {
        let (l, r) = (lo, hi - 1);
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(values, l, r);
        }
        let mut best = self
            .in_block(values, l, bl * BLOCK + BLOCK - 1)
            .min(self.in_block(values, br * BLOCK, r));
        if bl + 1 < br {
            best = best.min(self.blocks.min(bl + 1, br));
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn both_kinds_agree_with_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in [1usize, 2, 3, 63, 64, 65, 127, 128, 129, 500] {
            let values: Vec<u32> = (0..len).map(|_| rng.gen_range(0..20)).collect();
            let sparse = Rmq::new(RmqKind::SparseTable, &values);
            let blocked = Rmq::new(RmqKind::Blocked, &values);
            for lo in 0..len {
                for hi in lo + 1..=len {
                    let want = *values[lo..hi].iter().min().unwrap();
                    assert_eq!(sparse.min(&values, lo, hi), want, "sparse {lo}..{hi}");
                    assert_eq!(blocked.min(&values, lo, hi), want, "blocked {lo}..{hi}");
                }
            }
        }
    }
}

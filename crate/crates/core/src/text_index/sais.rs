//! Suffix array construction.
//!
//! The default builder is induced sorting (SA-IS), linear in the text length.
//! Prefix doubling is kept as an `O(n log n)` alternative that shares no code
//! with the induced sorter, which makes it a useful cross-check.

const NONE: u32 = u32::MAX;

/// Suffix array of a byte string by induced sorting.
pub fn suffix_array(text: &[u8]) -> Vec<u32> {
    let s: Vec<u32> = text.iter().map(|&b| u32::from(b)).collect();
    sa_is(&s, 255)
}

/// Induced sorting over an integer alphabet `0..=upper`.
///
/// No sentinel is appended; the virtual end-of-string symbol is treated as
/// smaller than every real symbol.
fn sa_is(s: &[u32], upper: u32) -> Vec<u32> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ if n < 10 => return naive(s),
        _ => {}
    }
    let upper = upper as usize;

    // ls[i]: suffix i is S-type (smaller than suffix i + 1).
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }

    // sum_l[c]: start of bucket c; sum_s[c]: start of the S part of bucket c.
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i] as usize] += 1;
        } else {
            sum_l[s[i] as usize + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let mut sa = vec![NONE; n];
    let induce = |sa: &mut Vec<u32>, lms: &[u32]| {
        sa.fill(NONE);
        let mut buf = sum_s.clone();
        for &d in lms {
            let c = s[d as usize] as usize;
            sa[buf[c]] = d;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c]] = (n - 1) as u32;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c]] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![NONE; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    let m = lms.len();

    induce(&mut sa, &lms);

    if m > 0 {
        let sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| lms_map[v as usize] != NONE)
            .collect();
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        for i in 1..m {
            let mut l = sorted_lms[i - 1] as usize;
            let mut r = sorted_lms[i] as usize;
            let next = |p: usize| {
                let k = lms_map[p] as usize + 1;
                if k < m {
                    lms[k] as usize
                } else {
                    n
                }
            };
            let end_l = next(l);
            let end_r = next(r);
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i] as usize] as usize] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        let sorted: Vec<u32> = rec_sa.iter().map(|&r| lms[r as usize]).collect();
        induce(&mut sa, &sorted);
    }
    sa
}

fn naive(s: &[u32]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..s.len() as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    sa
}

/// Suffix array by prefix doubling with radix-free comparison sorting.
pub fn suffix_array_doubling(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.iter().map(|&b| u32::from(b)).collect();
    let mut tmp = vec![0u32; n];
    if n <= 1 {
        return sa;
    }
    let mut k = 1;
    loop {
        // Missing second halves sort first.
        let key = |i: u32, rank: &[u32]| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as i64 } else { -1 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = key(sa[w - 1], &rank) < key(sa[w], &rank);
            tmp[sa[w] as usize] = tmp[sa[w - 1] as usize] + u32::from(bump);
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's LCP construction: `lcp[i]` is the common prefix length of the
/// suffixes at ranks `i` and `i + 1`.
pub fn lcp_array(text: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n.saturating_sub(1)];
    let mut h = 0usize;
    for i in 0..n {
        let rank = isa[i] as usize;
        if rank + 1 == n {
            h = 0;
            continue;
        }
        let j = sa[rank + 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[rank] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_suffixes(text: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    #[test]
    fn reference_text() {
        let text = b"abacabababaaca";
        let expected = [13, 10, 8, 6, 4, 0, 11, 2, 9, 7, 5, 1, 12, 3];
        assert_eq!(suffix_array(text), expected);
        assert_eq!(suffix_array_doubling(text), expected);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(suffix_array(b"a"), vec![0]);
        assert_eq!(suffix_array(b"ba"), vec![1, 0]);
        assert_eq!(suffix_array(b"aa"), vec![1, 0]);
        assert_eq!(suffix_array_doubling(b"a"), vec![0]);
        let run = vec![b'x'; 200];
        let expected: Vec<u32> = (0..200).rev().collect();
        assert_eq!(suffix_array(&run), expected);
        assert_eq!(suffix_array_doubling(&run), expected);
    }

    #[test]
    fn extreme_bytes() {
        let text = [0u8, 255, 0, 255, 255, 0, 0, 1, 254, 0, 255, 0, 0, 0];
        assert_eq!(suffix_array(&text), sorted_suffixes(&text));
    }

    #[test]
    fn fibonacci_word() {
        let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
        while b.len() < 3000 {
            let next = [b.clone(), a].concat();
            a = b;
            b = next;
        }
        assert_eq!(suffix_array(&b), sorted_suffixes(&b));
    }

    #[test]
    fn kasai_matches_reference() {
        let text = b"abacabababaaca";
        let sa = suffix_array(text);
        let mut isa = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize] = r as u32;
        }
        assert_eq!(
            lcp_array(text, &sa, &isa),
            [1, 1, 3, 5, 3, 1, 3, 0, 2, 4, 2, 0, 2]
        );
    }
}

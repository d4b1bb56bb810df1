//! Suffix ranking by prefix doubling with counting sorts.
//!
//! `O(n log n)` overall; each round sorts index pairs `(rank[i], rank[i+k])`
//! with two stable counting passes. Suffix order equals rotation order for
//! every text whose last symbol is unique, which holds everywhere this crate
//! sorts (a sentinel or a final terminator is always present).

/// Suffix array of `codes`: positions of suffixes in increasing order.
pub(crate) fn suffix_array(codes: &[u32]) -> Vec<u32> {
    let n = codes.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }

    // Initial single-symbol ranks, densified via one counting sort.
    let max_code = *codes.iter().max().unwrap() as usize;
    let mut count = vec![0u32; max_code.max(n) + 2];
    for &c in codes {
        count[c as usize] += 1;
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut sa = vec![0u32; n];
    for i in (0..n).rev() {
        let c = codes[i] as usize;
        count[c] -= 1;
        sa[count[c] as usize] = i as u32;
    }
    let mut rank = vec![0u32; n];
    let mut r = 0u32;
    rank[sa[0] as usize] = 0;
    for i in 1..n {
        if codes[sa[i] as usize] != codes[sa[i - 1] as usize] {
            r += 1;
        }
        rank[sa[i] as usize] = r;
    }

    let mut tmp = vec![0u32; n];
    let mut new_rank = vec![0u32; n];
    let mut k = 1usize;
    while (r as usize) < n - 1 && k < n {
        let second = |i: usize| -> u32 {
            if i + k < n {
                rank[i + k] + 1
            } else {
                0
            }
        };

        // Stable counting sort by the second key...
        count.iter_mut().for_each(|c| *c = 0);
        for i in 0..n {
            count[second(i) as usize] += 1;
        }
        for i in 1..=n {
            count[i] += count[i - 1];
        }
        for i in (0..n).rev() {
            let key = second(i) as usize;
            count[key] -= 1;
            tmp[count[key] as usize] = i as u32;
        }
        // ...then by the first key.
        count.iter_mut().for_each(|c| *c = 0);
        for i in 0..n {
            count[rank[i] as usize] += 1;
        }
        for i in 1..=n {
            count[i] += count[i - 1];
        }
        for &i in tmp.iter().rev() {
            let key = rank[i as usize] as usize;
            count[key] -= 1;
            sa[count[key] as usize] = i;
        }

        r = 0;
        new_rank[sa[0] as usize] = 0;
        for i in 1..n {
            let (a, b) = (sa[i - 1] as usize, sa[i] as usize);
            if rank[a] != rank[b] || second(a) != second(b) {
                r += 1;
            }
            new_rank[b] = r;
        }
        std::mem::swap(&mut rank, &mut new_rank);
        k *= 2;
    }
    sa
}

/// Inverse permutation of a suffix array.
pub(crate) fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; sa.len()];
    for (i, &p) in sa.iter().enumerate() {
        inv[p as usize] = i as u32;
    }
    inv
}

/// Kasai LCP array: `lcp[i]` is the longest common prefix of the suffixes at
/// `sa[i - 1]` and `sa[i]`; `lcp[0] = 0`.
pub(crate) fn lcp_array(codes: &[u32], sa: &[u32], inv: &[u32]) -> Vec<u32> {
    let n = codes.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = inv[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && codes[i + h] == codes[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(codes: &[u32]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..codes.len() as u32).collect();
        sa.sort_by(|&a, &b| codes[a as usize..].cmp(&codes[b as usize..]));
        sa
    }

    #[test]
    fn matches_naive_on_small_inputs() {
        let cases: Vec<Vec<u32>> = vec![
            vec![1],
            vec![2, 1],
            vec![1, 1, 1, 0],
            vec![3, 1, 4, 1, 5, 9, 2, 6, 0],
            b"mississippi\0".iter().map(|&b| b as u32).collect(),
            b"banana\0".iter().map(|&b| b as u32).collect(),
        ];
        for codes in cases {
            assert_eq!(suffix_array(&codes), naive_sa(&codes), "codes {codes:?}");
        }
    }

    #[test]
    fn matches_naive_on_random_inputs() {
        let mut state = 0x2545f491_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let len = (next() % 60 + 1) as usize;
            let sigma = next() % 4 + 1;
            let mut codes: Vec<u32> = (0..len).map(|_| (next() % sigma) as u32 + 1).collect();
            codes.push(0);
            assert_eq!(suffix_array(&codes), naive_sa(&codes));
        }
    }

    #[test]
    fn lcp_matches_direct_comparison() {
        let codes: Vec<u32> = b"mississippi\0".iter().map(|&b| b as u32).collect();
        let sa = suffix_array(&codes);
        let inv = inverse(&sa);
        let lcp = lcp_array(&codes, &sa, &inv);
        for i in 1..sa.len() {
            let a = &codes[sa[i - 1] as usize..];
            let b = &codes[sa[i] as usize..];
            let direct = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            assert_eq!(lcp[i] as usize, direct);
        }
    }
}

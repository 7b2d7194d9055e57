//! Bitmask subsets over small ground sets and exact enumeration helpers.
//!
//! Elements are indices `0..n` and subsets are `u64` bitmasks, so everything
//! here is limited to `n <= 63`. That is far beyond the exhaustive desk scale
//! the rest of the crate operates at.

/// A subset of the ground set, one bit per element.
pub type ElemSet = u64;

/// The full ground set `{0, .., n-1}`.
pub fn full_set(n: usize) -> ElemSet {
    debug_assert!(n < 64);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn contains(s: ElemSet, e: usize) -> bool {
    s >> e & 1 == 1
}

pub fn singleton(e: usize) -> ElemSet {
    1u64 << e
}

pub fn size(s: ElemSet) -> usize {
    s.count_ones() as usize
}

/// Iterate the elements of `s` in ascending order.
pub fn elems(s: ElemSet) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> ElemSet {
    it.into_iter().fold(0, |acc, e| acc | singleton(e))
}

/// All submasks of `mask` in ascending numeric order, including `0` and `mask`.
pub fn submasks(mask: ElemSet) -> impl Iterator<Item = ElemSet> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// All partitions of `{0,..,n-1}` into exactly `k` nonempty blocks.
///
/// Partitions are produced in lexicographic order of their restricted growth
/// string, and within each partition blocks are ordered by smallest element.
/// The first partition yielded is therefore the lexicographically smallest,
/// which is what the brute-force solvers rely on for deterministic tie-breaks.
pub fn partitions_into_k(n: usize, k: usize) -> Vec<Vec<ElemSet>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut assign = vec![0usize; n];
    fn rec(i: usize, max_used: usize, n: usize, k: usize, assign: &mut [usize], out: &mut Vec<Vec<ElemSet>>) {
        if i == n {
            if max_used + 1 == k {
                let mut blocks = vec![0u64; k];
                for (e, &b) in assign.iter().enumerate() {
                    blocks[b] |= 1u64 << e;
                }
                out.push(blocks);
            }
            return;
        }
        // Pruning: remaining elements must be able to open enough new blocks.
        let remaining = n - i;
        if max_used + 1 + remaining < k {
            return;
        }
        let cap = (max_used + 1).min(k - 1);
        for b in 0..=cap {
            assign[i] = b;
            rec(i + 1, max_used.max(b), n, k, assign, out);
        }
    }
    rec(1, 0, n, k, &mut assign, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration_is_ascending_and_complete() {
        let mask = 0b10110u64;
        let all: Vec<_> = submasks(mask).collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|&s| s & !mask == 0));
    }

    #[test]
    fn partition_counts_match_stirling_numbers() {
        // S(4,2) = 7, S(5,3) = 25, S(6,1) = 1, S(6,6) = 1
        assert_eq!(partitions_into_k(4, 2).len(), 7);
        assert_eq!(partitions_into_k(5, 3).len(), 25);
        assert_eq!(partitions_into_k(6, 1).len(), 1);
        assert_eq!(partitions_into_k(6, 6).len(), 1);
        assert_eq!(partitions_into_k(3, 4).len(), 0);
    }

    #[test]
    fn partition_blocks_are_disjoint_and_cover() {
        for blocks in partitions_into_k(6, 3) {
            let mut seen = 0u64;
            for &b in &blocks {
                assert_ne!(b, 0);
                assert_eq!(seen & b, 0);
                seen |= b;
            }
            assert_eq!(seen, full_set(6));
        }
    }
}

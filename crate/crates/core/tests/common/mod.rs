//! Brute-force oracles shared by the integration tests. Nothing here calls into
//! the library's own convolution or enumeration code.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `{i + j | i in a, j in b, i + j <= limit}` by double loop.
pub fn pairwise(a: &[usize], b: &[usize], limit: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &i in a {
        for &j in b {
            if i + j <= limit {
                out.insert(i + j);
            }
        }
    }
    out
}

/// Componentwise sums of two cell lists, by quadruple loop over coordinates.
pub fn pairwise_2d(
    a: &[(usize, usize)],
    b: &[(usize, usize)],
    sum_limit: usize,
    card_limit: usize,
) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &(s1, j1) in a {
        for &(s2, j2) in b {
            if s1 + s2 <= sum_limit && j1 + j2 <= card_limit {
                out.insert((s1 + s2, j1 + j2));
            }
        }
    }
    out
}

/// Sums of all `2^n` subsets, kept when `<= u`.
pub fn subset_sums(elements: &[usize], u: usize) -> BTreeSet<usize> {
    subset_pairs(elements, u).into_iter().map(|(s, _)| s).collect()
}

/// `(sum, size)` of all `2^n` subsets, kept when the sum is `<= u`.
pub fn subset_pairs(elements: &[usize], u: usize) -> BTreeSet<(usize, usize)> {
    let n = elements.len();
    assert!(n <= 20, "oracle enumeration is capped at 20 elements");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let sum: usize = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| elements[i]).sum();
        if sum <= u {
            out.insert((sum, mask.count_ones() as usize));
        }
    }
    out
}

/// Subset sums by a plain boolean table, one element at a time.
pub fn table_dp(elements: &[usize], u: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; u + 1];
    reach[0] = true;
    for &x in elements {
        for s in (x..=u).rev() {
            reach[s] |= reach[s - x];
        }
    }
    (0..=u).filter(|&s| reach[s]).collect()
}

//! Reference algorithms: the reachability DP and exhaustive enumeration.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sets::{CardSumSet, SumSet};

/// Largest input the exhaustive enumeration accepts.
pub const BRUTE_FORCE_MAX_ELEMENTS: usize = 24;

/// Reachability DP with word-packed shift-or: `reach |= reach << x` per element.
pub fn bellman_all_sums(inst: &Instance) -> SumSet {
    let u = inst.u();
    let mut reach = Bits::zeros(u + 1);
    reach.set(0);
    for &x in inst.elements() {
        reach.or_shift_self(x);
    }
    SumSet::from_bits(u, reach)
}

/// The same DP over one byte per sum, updated one entry at a time.
pub fn bellman_all_sums_scalar(inst: &Instance) -> SumSet {
    let u = inst.u();
    let mut reach = vec![false; u + 1];
    reach[0] = true;
    for &x in inst.elements() {
        for s in (x..=u).rev() {
            if reach[s - x] {
                reach[s] = true;
            }
        }
    }
    SumSet::from_members(u, reach.iter().enumerate().filter(|(_, &r)| r).map(|(s, _)| s))
}

/// Enumerates all `2^n` subsets and records `(sum, cardinality)` for those with
/// sum at most `u`. The cardinality bound of the result is `elements.len()`.
pub fn brute_force_all_sums_with_cardinality(elements: &[usize], u: usize) -> Result<CardSumSet> {
    let n = elements.len();
    if n > BRUTE_FORCE_MAX_ELEMENTS {
        return Err(Error::TooManyElements {
            n,
            max: BRUTE_FORCE_MAX_ELEMENTS,
        });
    }
    let mut out = CardSumSet::empty(u, n);
    // Depth-first over include/exclude decisions, pruning once the sum passes u.
    let mut stack = vec![(0usize, 0usize, 0usize)];
    while let Some((next, sum, card)) = stack.pop() {
        if next == n {
            out.insert(sum, card);
            continue;
        }
        stack.push((next + 1, sum, card));
        let with = sum + elements[next];
        if with <= u {
            stack.push((next + 1, with, card + 1));
        }
    }
    Ok(out)
}

/// [`brute_force_all_sums_with_cardinality`] projected onto sums.
pub fn brute_force_all_sums(elements: &[usize], u: usize) -> Result<SumSet> {
    brute_force_all_sums_with_cardinality(elements, u).map(|s| s.project_sums())
}

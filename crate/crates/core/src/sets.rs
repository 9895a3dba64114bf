//! Dense set types: subset sums up to a bound, and (sum, cardinality) pairs.

use crate::bits::Bits;

/// A subset of `{0, ..., bound}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SumSet {
    bound: usize,
    members: Bits,
}

impl SumSet {
    pub fn empty(bound: usize) -> Self {
        SumSet {
            bound,
            members: Bits::zeros(bound + 1),
        }
    }

    /// `{0}`, the subset sums of the empty set and the identity of pairwise addition.
    pub fn zero(bound: usize) -> Self {
        let mut s = SumSet::empty(bound);
        s.members.set(0);
        s
    }

    /// Builds a set from members, silently dropping any value above `bound`.
    pub fn from_members<I: IntoIterator<Item = usize>>(bound: usize, members: I) -> Self {
        let mut s = SumSet::empty(bound);
        for m in members {
            if m <= bound {
                s.members.set(m);
            }
        }
        s
    }

    /// Wraps a bit vector; bits at positions above `bound` are dropped.
    pub fn from_bits(bound: usize, mut members: Bits) -> Self {
        members.resize(bound + 1);
        SumSet { bound, members }
    }

    #[inline]
    pub fn bound(&self) -> usize {
        self.bound
    }

    #[inline]
    pub fn contains(&self, value: usize) -> bool {
        self.members.get(value)
    }

    pub fn insert(&mut self, value: usize) {
        self.members.set(value);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.any()
    }

    pub fn max(&self) -> Option<usize> {
        self.members.last_one()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(&self) -> &Bits {
        &self.members
    }

    pub fn into_bits(self) -> Bits {
        self.members
    }

    /// Same members restricted to `{0, ..., bound}`, with the new bound.
    pub fn truncated(&self, bound: usize) -> SumSet {
        SumSet::from_bits(bound, self.members.truncated(bound + 1))
    }

    pub fn is_subset_of(&self, other: &SumSet) -> bool {
        self.members.is_subset_of(&other.members)
    }

    pub fn union_with(&mut self, other: &SumSet) {
        self.members.union_with(&other.members);
    }
}

impl std::fmt::Debug for SumSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SumSet[<={}]", self.bound)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of `{0, ..., sum_bound} x {0, ..., card_bound}`, stored row-major by cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CardSumSet {
    sum_bound: usize,
    card_bound: usize,
    members: Bits,
}

impl CardSumSet {
    pub fn empty(sum_bound: usize, card_bound: usize) -> Self {
        CardSumSet {
            sum_bound,
            card_bound,
            members: Bits::zeros((sum_bound + 1) * (card_bound + 1)),
        }
    }

    /// `{(0, 0)}`: the empty subset.
    pub fn zero(sum_bound: usize, card_bound: usize) -> Self {
        let mut s = CardSumSet::empty(sum_bound, card_bound);
        s.insert(0, 0);
        s
    }

    /// Builds a set from pairs, dropping pairs outside the bounds.
    pub fn from_pairs<I>(sum_bound: usize, card_bound: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = CardSumSet::empty(sum_bound, card_bound);
        for (sum, card) in pairs {
            if sum <= sum_bound && card <= card_bound {
                s.insert(sum, card);
            }
        }
        s
    }

    #[inline]
    pub fn sum_bound(&self) -> usize {
        self.sum_bound
    }

    #[inline]
    pub fn card_bound(&self) -> usize {
        self.card_bound
    }

    #[inline]
    fn stride(&self) -> usize {
        self.sum_bound + 1
    }

    pub fn contains(&self, sum: usize, card: usize) -> bool {
        sum <= self.sum_bound && card <= self.card_bound && self.members.get(card * self.stride() + sum)
    }

    /// Panics if the pair is outside the bounds.
    pub fn insert(&mut self, sum: usize, card: usize) {
        assert!(
            sum <= self.sum_bound && card <= self.card_bound,
            "({sum}, {card}) outside [0, {}] x [0, {}]",
            self.sum_bound,
            self.card_bound
        );
        let stride = self.stride();
        self.members.set(card * stride + sum);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.any()
    }

    /// Pairs in order of increasing cardinality, then increasing sum.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let stride = self.stride();
        self.members.iter_ones().map(move |i| (i % stride, i / stride))
    }

    pub fn to_sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable();
        v
    }

    /// Largest sum and largest cardinality present, or `None` when empty.
    pub fn extents(&self) -> Option<(usize, usize)> {
        let mut max_sum = None;
        let mut max_card = None;
        for (s, j) in self.iter() {
            max_sum = max_sum.max(Some(s));
            max_card = max_card.max(Some(j));
        }
        max_sum.zip(max_card)
    }

    /// Forgets the cardinality coordinate.
    pub fn project_sums(&self) -> SumSet {
        let mut out = SumSet::empty(self.sum_bound);
        for (s, _) in self.iter() {
            out.insert(s);
        }
        out
    }

    /// Checks that every `j`-element pair has a sum no smaller than the smallest
    /// possible sum of `j` distinct admissible elements: `0 + 1 + ... + (j-1)` when
    /// zero may be an element, `1 + ... + j` otherwise.
    pub fn respects_cardinality_floor(&self, zero_allowed: bool) -> bool {
        self.iter().all(|(s, j)| {
            let floor = if zero_allowed {
                j * j.saturating_sub(1) / 2
            } else {
                j * (j + 1) / 2
            };
            s >= floor
        })
    }
}

impl std::fmt::Debug for CardSumSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CardSumSet[<={}, <={}]", self.sum_bound, self.card_bound)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumset_basics() {
        let s = SumSet::from_members(5, [0, 2, 5, 9]);
        assert_eq!(s.to_vec(), vec![0, 2, 5]);
        assert_eq!(s.max(), Some(5));
        assert_eq!(s.truncated(3).to_vec(), vec![0, 2]);
        assert!(SumSet::zero(0).contains(0));
        assert!(SumSet::empty(3).is_empty());
    }

    #[test]
    fn card_sumset_layout() {
        let s = CardSumSet::from_pairs(4, 2, [(0, 0), (3, 1), (4, 2), (5, 1), (1, 3)]);
        assert_eq!(s.to_sorted_pairs(), vec![(0, 0), (3, 1), (4, 2)]);
        assert_eq!(s.extents(), Some((4, 2)));
        assert_eq!(s.project_sums().to_vec(), vec![0, 3, 4]);
        assert!(s.contains(4, 2) && !s.contains(4, 1) && !s.contains(9, 0));
    }

    #[test]
    fn cardinality_floor() {
        let positive = CardSumSet::from_pairs(10, 3, [(0, 0), (1, 1), (3, 2), (6, 3)]);
        assert!(positive.respects_cardinality_floor(false));
        let with_zero = CardSumSet::from_pairs(10, 2, [(0, 0), (0, 1), (1, 2)]);
        assert!(with_zero.respects_cardinality_floor(true));
        assert!(!with_zero.respects_cardinality_floor(false));
    }
}

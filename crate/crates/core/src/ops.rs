//! Truncated pairwise sums of sets and point sets.

use crate::convolution::{BoolVec, ConvConfig, PackedGrid};
use crate::error::{Error, Result};
use crate::sets::{CardSumSet, SumSet};

/// `{x + y | x in a, y in b}` restricted to `[0, u]`.
pub fn oplus(conv: &ConvConfig, a: &SumSet, b: &SumSet, u: usize) -> Result<SumSet> {
    let fa = BoolVec::from_bits(a.bits().clone());
    let fb = BoolVec::from_bits(b.bits().clone());
    let g = conv.conv_support(&fa, &fb, u)?;
    Ok(SumSet::from_bits(u, g.into_bits()))
}

/// Left fold of [`oplus`], truncating at `u` after every step.
pub fn oplus_many(conv: &ConvConfig, sets: &[SumSet], u: usize) -> Result<SumSet> {
    let (first, rest) = sets.split_first().ok_or(Error::EmptySequence)?;
    let mut acc = first.truncated(u);
    for s in rest {
        acc = oplus(conv, &acc, s, u)?;
    }
    Ok(acc)
}

/// Componentwise pairwise sums of two point sets, keeping sums `<= u` and
/// cardinalities `<= c`.
pub fn oplus_2d(conv: &ConvConfig, a: &CardSumSet, b: &CardSumSet, u: usize, c: usize) -> Result<CardSumSet> {
    let (Some((sa, ja)), Some((sb, jb))) = (a.extents(), b.extents()) else {
        return Ok(CardSumSet::empty(u, c));
    };
    // Points beyond either limit cannot produce an admissible sum.
    let (sa, ja, sb, jb) = (sa.min(u), ja.min(c), sb.min(u), jb.min(c));
    let stride = sa + sb + 1;
    let ga = PackedGrid::from_cells(stride, sa, ja, a.iter())?;
    let gb = PackedGrid::from_cells(stride, sb, jb, b.iter())?;
    let g = conv.conv_support_2d(&ga, &gb, u.min(sa + sb), c.min(ja + jb))?;
    Ok(CardSumSet::from_pairs(u, c, g.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(a: &[usize], b: &[usize], u: usize) -> Vec<usize> {
        let mut v: Vec<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| x + y))
            .filter(|&s| s <= u)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn pairwise_examples() {
        let conv = ConvConfig::default();
        let a = SumSet::from_members(1, [0, 1]);
        let b = SumSet::from_members(2, [0, 2]);
        let r = oplus(&conv, &a, &b, 3).unwrap();
        assert_eq!(r.to_vec(), oracle(&[0, 1], &[0, 2], 3));
        assert_eq!(r.bound(), 3);

        let id = SumSet::zero(0);
        let b = SumSet::from_members(9, [1, 5, 9]);
        assert_eq!(oplus(&conv, &id, &b, 9).unwrap(), b);

        let a = SumSet::from_members(3, [2, 3]);
        let r = oplus(&conv, &a, &a, 4).unwrap();
        assert_eq!(r.to_vec(), oracle(&[2, 3], &[2, 3], 4));
        assert_eq!(r.to_vec(), vec![4]);
    }

    #[test]
    fn fold_examples() {
        let conv = ConvConfig::default();
        let sets = [
            SumSet::from_members(1, [0, 1]),
            SumSet::from_members(2, [0, 2]),
            SumSet::from_members(4, [0, 4]),
        ];
        // Every choice of one element per set: the binary expansions of 0..=7.
        let mut brute: Vec<usize> = (0..8usize)
            .map(|mask| (0..3).filter(|k| mask >> k & 1 == 1).map(|k| 1 << k).sum())
            .collect();
        brute.sort_unstable();
        let r = oplus_many(&conv, &sets, 7).unwrap();
        assert_eq!(r.to_vec(), brute);

        let b = SumSet::from_members(10, [0, 3, 10]);
        assert_eq!(
            oplus_many(&conv, std::slice::from_ref(&b), 5).unwrap().to_vec(),
            vec![0, 3]
        );

        let one = SumSet::from_members(1, [1]);
        assert!(oplus_many(&conv, &[one.clone(), one.clone(), one], 2)
            .unwrap()
            .is_empty());

        assert_eq!(oplus_many(&conv, &[], 3).unwrap_err(), Error::EmptySequence);
    }

    #[test]
    fn point_set_examples() {
        let conv = ConvConfig::default();
        let a = CardSumSet::from_pairs(3, 1, [(0, 0), (3, 1)]);
        let b = CardSumSet::from_pairs(4, 1, [(0, 0), (4, 1)]);
        let r = oplus_2d(&conv, &a, &b, 10, 2).unwrap();
        assert_eq!(r.to_sorted_pairs(), vec![(0, 0), (3, 1), (4, 1), (7, 2)]);
        assert_eq!((r.sum_bound(), r.card_bound()), (10, 2));

        let id = CardSumSet::zero(0, 0);
        let b = CardSumSet::from_pairs(8, 3, [(0, 0), (2, 1), (8, 3)]);
        assert_eq!(oplus_2d(&conv, &id, &b, 8, 3).unwrap(), b);
        assert_eq!(
            oplus_2d(&conv, &id, &b, 5, 2).unwrap().to_sorted_pairs(),
            vec![(0, 0), (2, 1)]
        );

        let a = CardSumSet::from_pairs(6, 1, [(6, 1)]);
        assert!(oplus_2d(&conv, &a, &a, 10, 2).unwrap().is_empty());
    }
}

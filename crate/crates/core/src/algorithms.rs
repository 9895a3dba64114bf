//! All subset sums up to a bound by congruence-class divide and conquer.
//!
//! The input is split by residue modulo `b`. Inside one class every element is
//! `q * b + l`, so a `j`-element subset with quotient sum `z` sums to `z * b + j * l`;
//! the (sum, cardinality) pairs of the quotients are computed by halving
//! recursion over 2D pairwise sums, then lifted back and combined across classes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convolution::ConvConfig;
use crate::error::{Error, Result};
use crate::instance::{decompose_by_residue, Instance};
use crate::ops::{oplus_2d, oplus_many};
use crate::sets::{CardSumSet, SumSet};

/// How the recursive step picks the half of the elements that goes left.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SplitStrategy {
    /// The first `floor(n / 2)` elements of the ascending working sequence.
    #[default]
    FirstHalf,
    /// A seeded random subset of size `floor(n / 2)` at every node.
    Seeded(u64),
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub conv: ConvConfig,
    /// Overrides the number of residue classes; `None` uses [`default_modulus`].
    pub modulus: Option<usize>,
    pub split: SplitStrategy,
    /// Solve residue classes on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

impl SolverConfig {
    pub fn with_conv(conv: ConvConfig) -> Self {
        SolverConfig {
            conv,
            ..SolverConfig::default()
        }
    }
}

/// `max(1, floor(sqrt(n * log2(max(n, 2)))))`.
pub fn default_modulus(n: usize) -> usize {
    let n = n as f64;
    let b = (n * n.max(2.0).log2()).sqrt().floor() as usize;
    b.max(1)
}

/// All pairs `(sum Y, |Y|)` over subsets `Y` of `elements` with `sum Y <= u`.
///
/// Zero is an admissible element here: quotient sets contain it whenever a class
/// holds its own residue. The cardinality bound of the result is `elements.len()`.
pub fn all_subset_sums_with_cardinality(elements: &[usize], u: usize, cfg: &SolverConfig) -> Result<CardSumSet> {
    let mut items = elements.to_vec();
    items.sort_unstable();
    if let Some(w) = items.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0]));
    }
    let mut rng = match cfg.split {
        SplitStrategy::FirstHalf => None,
        SplitStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let out = card_sums_rec(&mut items, u, &cfg.conv, rng.as_mut())?;
    debug_assert!(out.respects_cardinality_floor(true));
    debug_assert!(elements.contains(&0) || out.respects_cardinality_floor(false));
    Ok(out)
}

fn card_sums_rec(
    items: &mut [usize],
    u: usize,
    conv: &ConvConfig,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<CardSumSet> {
    match *items {
        [] => return Ok(CardSumSet::zero(u, 0)),
        [x] => {
            let mut s = CardSumSet::zero(u, 1);
            if x <= u {
                s.insert(x, 1);
            }
            return Ok(s);
        }
        _ => {}
    }
    if let Some(rng) = rng.as_deref_mut() {
        items.shuffle(rng);
    }
    let n = items.len();
    let (left, right) = items.split_at_mut(n / 2);
    let left = card_sums_rec(left, u, conv, rng.as_deref_mut())?;
    let right = card_sums_rec(right, u, conv, rng)?;
    oplus_2d(conv, &left, &right, u, n)
}

/// Subset sums up to `u` of a set whose elements are all `residue` modulo `modulus`.
pub fn subset_sums_of_congruence_class(
    class: &[usize],
    residue: usize,
    modulus: usize,
    u: usize,
    cfg: &SolverConfig,
) -> Result<SumSet> {
    if modulus == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if residue >= modulus {
        return Err(Error::ResidueOutOfRange { residue, modulus });
    }
    if let Some(&element) = class.iter().find(|&&x| x % modulus != residue) {
        return Err(Error::CongruenceViolation {
            element,
            residue,
            modulus,
        });
    }
    let quotients: Vec<usize> = class.iter().map(|&x| (x - residue) / modulus).collect();
    let pairs = all_subset_sums_with_cardinality(&quotients, u / modulus, cfg)?;

    let mut out = SumSet::empty(u);
    for (z, j) in pairs.iter() {
        let sum = z * modulus + j * residue;
        if sum <= u {
            out.insert(sum);
        }
    }
    Ok(out)
}

/// Every subset sum of the instance's elements that is at most `u`.
pub fn all_subset_sums(inst: &Instance, cfg: &SolverConfig) -> Result<SumSet> {
    let u = inst.u();
    if inst.n() == 0 {
        return Ok(SumSet::zero(u));
    }
    let b = cfg.modulus.unwrap_or_else(|| default_modulus(inst.n()));
    let decomposition = decompose_by_residue(inst, b as i64)?;
    let classes: Vec<_> = decomposition
        .classes()
        .iter()
        .filter(|c| !c.elements.is_empty())
        .collect();

    let solve = |c: &&crate::instance::ResidueClass| {
        let class_cfg = SolverConfig {
            split: match cfg.split {
                SplitStrategy::Seeded(seed) => SplitStrategy::Seeded(seed ^ (c.residue as u64).rotate_left(32)),
                s => s,
            },
            ..cfg.clone()
        };
        subset_sums_of_congruence_class(&c.elements, c.residue, b, u, &class_cfg)
    };
    let lifted: Vec<SumSet> = if cfg.parallel {
        classes.par_iter().map(solve).collect::<Result<_>>()?
    } else {
        classes.iter().map(solve).collect::<Result<_>>()?
    };
    oplus_many(&cfg.conv, &lifted, u)
}

/// Whether some subset sums exactly to the instance's target.
pub fn decide_subset_sum(inst: &Instance, cfg: &SolverConfig) -> Result<bool> {
    let t = inst.target().ok_or(Error::MissingTarget)?;
    Ok(all_subset_sums(inst, cfg)?.contains(t))
}

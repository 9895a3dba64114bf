//! All subset sums of a set of positive integers up to a bound `u`, computed by
//! splitting the set into residue classes, solving each class with a halving
//! recursion over (sum, cardinality) pairs, and combining the classes with exact
//! NTT-based pairwise sums. Runs in `O(sqrt(n log n) * u log u)` time.
//!
//! ```
//! use sumset_core::{all_subset_sums, Instance, SolverConfig};
//!
//! let inst = Instance::new(&[2, 4, 6], 7, None).unwrap();
//! let sums = all_subset_sums(&inst, &SolverConfig::default()).unwrap();
//! assert_eq!(sums.to_vec(), vec![0, 2, 4, 6]);
//! ```

pub mod algorithms;
pub mod baselines;
pub mod bits;
pub mod convolution;
pub mod error;
pub mod instance;
pub mod ops;
pub mod sets;

pub use algorithms::{
    all_subset_sums, all_subset_sums_with_cardinality, decide_subset_sum, default_modulus,
    subset_sums_of_congruence_class, SolverConfig, SplitStrategy,
};
pub use baselines::{
    bellman_all_sums, bellman_all_sums_scalar, brute_force_all_sums, brute_force_all_sums_with_cardinality,
};
pub use convolution::{conv_support, conv_support_2d, BoolVec, ConvConfig, PackedGrid};
pub use error::{Error, Result};
pub use instance::{decompose_by_residue, make_instance, Instance, Pruned, ResidueDecomposition};
pub use ops::{oplus, oplus_2d, oplus_many};
pub use sets::{CardSumSet, SumSet};

//! Seeded instance generator.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumset_core::Instance;

/// Distribution of generated elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Profile {
    /// `n` distinct values from `[1, u]`.
    Uniform,
    /// `n` distinct values from `[1, min(u, 4 * ceil(u / n))]`.
    SmallElements,
    /// `n` distinct values from `[1, u]`, all congruent to one seeded residue
    /// modulo `floor(sqrt(n)) + 1`.
    SingleResidue,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Uniform, Profile::SmallElements, Profile::SingleResidue];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Uniform => "uniform",
            Profile::SmallElements => "small-elements",
            Profile::SingleResidue => "single-residue",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown profile `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("u must be at least 1")]
    ZeroBound,
    #[error("profile {profile} offers only {available} distinct values, cannot draw {n}")]
    NotEnoughValues {
        profile: Profile,
        n: usize,
        available: usize,
    },
}

/// Deterministic in `(n, u, seed, profile)`. The instance has no target.
pub fn generate_instance(n: usize, u: usize, seed: u64, profile: Profile) -> Result<Instance, GenerateError> {
    if u == 0 {
        return Err(GenerateError::ZeroBound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Candidate values are `first + step * i` for `i < available`.
    let (first, step, available) = match profile {
        Profile::Uniform => (1, 1, u),
        Profile::SmallElements => (1, 1, u.div_ceil(n.max(1)).saturating_mul(4).min(u)),
        Profile::SingleResidue => {
            let m = n.isqrt() + 1;
            let r = rng.gen_range(0..m);
            let first = if r == 0 { m } else { r };
            let available = if u >= first { (u - first) / m + 1 } else { 0 };
            (first, m, available)
        }
    };
    if n > available {
        return Err(GenerateError::NotEnoughValues { profile, n, available });
    }
    let mut elements: Vec<usize> = index::sample(&mut rng, available, n)
        .into_iter()
        .map(|i| first + step * i)
        .collect();
    elements.sort_unstable();
    Ok(Instance::new(&elements, u, None).expect("generated values lie in [1, u]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnv1a64;

    fn checksum(inst: &Instance) -> u64 {
        let bytes: Vec<u8> = inst.elements().iter().flat_map(|&x| (x as u64).to_le_bytes()).collect();
        fnv1a64(&bytes)
    }

    #[test]
    fn fixed_points() {
        assert_eq!(generate_instance(0, 10, 7, Profile::Uniform).unwrap().n(), 0);
        for seed in 0..20 {
            let inst = generate_instance(5, 5, seed, Profile::Uniform).unwrap();
            assert_eq!(inst.elements(), &[1, 2, 3, 4, 5]);
        }
        assert_eq!(
            generate_instance(6, 5, 0, Profile::Uniform),
            Err(GenerateError::NotEnoughValues {
                profile: Profile::Uniform,
                n: 6,
                available: 5
            })
        );
        assert_eq!(
            generate_instance(1, 0, 0, Profile::Uniform),
            Err(GenerateError::ZeroBound)
        );
    }

    #[test]
    fn golden_uniform_instance() {
        let inst = generate_instance(100, 1_000_000, 42, Profile::Uniform).unwrap();
        assert_eq!(inst.n(), 100);
        assert_eq!(format!("{:016x}", checksum(&inst)), GOLDEN_UNIFORM_100);
    }

    const GOLDEN_UNIFORM_100: &str = "7df302ca1c36f2f9";

    #[test]
    fn profiles_respect_their_ranges() {
        for seed in 0..50 {
            let inst = generate_instance(40, 10_000, seed, Profile::SmallElements).unwrap();
            assert!(inst.elements().iter().all(|&x| (1..=1000).contains(&x)));

            let inst = generate_instance(40, 10_000, seed, Profile::SingleResidue).unwrap();
            let r = inst.elements()[0] % 7;
            assert!(inst.elements().iter().all(|&x| x % 7 == r && x <= 10_000));
            assert_eq!(inst.n(), 40);
        }
        let inst = generate_instance(3, 12, 3, Profile::SmallElements).unwrap();
        assert!(inst.elements().iter().all(|&x| x <= 12));
    }

    #[test]
    fn deterministic_per_seed() {
        for p in Profile::ALL {
            let a = generate_instance(50, 5000, 9, p).unwrap();
            assert_eq!(a, generate_instance(50, 5000, 9, p).unwrap());
            assert_ne!(a, generate_instance(50, 5000, 10, p).unwrap());
            assert_eq!(p.name().parse::<Profile>().unwrap(), p);
        }
    }
}

//! Validated problem instances and their partition into residue classes.

use crate::error::{Error, Result};

/// A set of positive integers, each at most `u`, with an optional target `t <= u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    elements: Vec<usize>,
    u: usize,
    target: Option<usize>,
}

/// What `make_instance` discarded while normalizing its input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pruned {
    pub duplicates: usize,
    pub over_bound: usize,
}

impl Pruned {
    pub fn is_clean(&self) -> bool {
        self.duplicates == 0 && self.over_bound == 0
    }
}

/// Validates raw input and normalizes it into an [`Instance`].
///
/// Elements are sorted and deduplicated, and elements above `u` are dropped since
/// no subset containing one can sum to at most `u`. Non-positive elements, a
/// negative bound, and a target outside `[0, u]` are rejected.
pub fn make_instance(raw: &[i64], u: i64, target: Option<i64>) -> Result<(Instance, Pruned)> {
    if u < 0 {
        return Err(Error::NegativeBound(u));
    }
    if let Some((index, &value)) = raw.iter().enumerate().find(|(_, &x)| x <= 0) {
        return Err(Error::NonPositiveElement { index, value });
    }
    match target {
        Some(t) if t < 0 => return Err(Error::NegativeTarget(t)),
        Some(t) if t > u => return Err(Error::TargetExceedsBound { t, u }),
        _ => {}
    }

    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    let before = sorted.len();
    sorted.dedup();
    let duplicates = before - sorted.len();

    let in_bound = sorted.partition_point(|&x| x <= u);
    let over_bound = sorted.len() - in_bound;
    sorted.truncate(in_bound);

    let instance = Instance {
        elements: sorted.into_iter().map(|x| x as usize).collect(),
        u: u as usize,
        target: target.map(|t| t as usize),
    };
    Ok((instance, Pruned { duplicates, over_bound }))
}

impl Instance {
    /// Convenience constructor for already-unsigned input; same rules as [`make_instance`].
    pub fn new(elements: &[usize], u: usize, target: Option<usize>) -> Result<Instance> {
        let raw: Vec<i64> = elements.iter().map(|&x| x as i64).collect();
        make_instance(&raw, u as i64, target.map(|t| t as i64)).map(|(inst, _)| inst)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn with_target(mut self, target: Option<usize>) -> Result<Instance> {
        if let Some(t) = target {
            if t > self.u {
                return Err(Error::TargetExceedsBound {
                    t: t as i64,
                    u: self.u as i64,
                });
            }
        }
        self.target = target;
        Ok(self)
    }
}

/// One congruence class: the elements `x` with `x mod b = residue`, and their
/// quotients `(x - residue) / b`, both ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub residue: usize,
    pub elements: Vec<usize>,
    pub quotients: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDecomposition {
    modulus: usize,
    classes: Vec<ResidueClass>,
}

impl ResidueDecomposition {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// All `b` classes, indexed by residue; empty classes included.
    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn class(&self, residue: usize) -> &ResidueClass {
        &self.classes[residue]
    }

    /// Rebuilds the element set as `q * b + residue` over every class.
    pub fn reconstruct(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .classes
            .iter()
            .flat_map(|c| c.quotients.iter().map(move |&q| q * self.modulus + c.residue))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn decompose_by_residue(inst: &Instance, b: i64) -> Result<ResidueDecomposition> {
    if b < 1 {
        return Err(Error::InvalidModulus(b));
    }
    let b = b as usize;
    let mut classes: Vec<ResidueClass> = (0..b)
        .map(|residue| ResidueClass {
            residue,
            elements: Vec::new(),
            quotients: Vec::new(),
        })
        .collect();
    for &x in &inst.elements {
        let class = &mut classes[x % b];
        class.elements.push(x);
        class.quotients.push(x / b);
    }
    Ok(ResidueDecomposition { modulus: b, classes })
}
